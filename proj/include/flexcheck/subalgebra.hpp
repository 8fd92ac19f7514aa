#ifndef FLEXCHECK_SUBALGEBRA_HPP
#define FLEXCHECK_SUBALGEBRA_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/config.hpp"
#include "flexcheck/lie_algebra.hpp"
#include "flexcheck/linalg.hpp"

namespace flexcheck {

/// A subspace of a model, stored as orthonormal coordinate columns. Since the
/// model basis is trace-orthonormal, these are trace-orthonormal matrices too.
class SubalgebraHandle {
public:
    SubalgebraHandle(ModelPtr parent, Eigen::MatrixXd basis, double tol = 1e-9)
        : parent_(std::move(parent)), basis_(std::move(basis)) {
        if (!parent_) throw DomainError("SubalgebraHandle: null parent");
        if (basis_.rows() != parent_->dim()) throw DomainError("SubalgebraHandle: basis rows != model dimension");
        closure_residual_ = compute_closure_residual();
        closed_ = closure_residual_ <= tol * std::max(1.0, bracket_scale());
    }

    /// Span of coordinate vectors (not necessarily orthonormal), orthonormalized.
    static SubalgebraHandle spanned_by(ModelPtr parent, const Eigen::MatrixXd& coords, double tol = 1e-9) {
        Eigen::MatrixXd q = orthonormal_span(coords, tol);
        if (q.cols() == 0) q.resize(parent->dim(), 0);
        return SubalgebraHandle(std::move(parent), std::move(q), tol);
    }
    static SubalgebraHandle whole(ModelPtr parent, double tol = 1e-9) {
        const auto d = parent->dim();
        return SubalgebraHandle(std::move(parent), Eigen::MatrixXd::Identity(d, d), tol);
    }

    const ModelPtr& parent() const noexcept { return parent_; }
    const LieAlgebraModel& model() const noexcept { return *parent_; }
    const Eigen::MatrixXd& basis() const noexcept { return basis_; }
    Eigen::Index dim() const noexcept { return basis_.cols(); }
    bool closed() const noexcept { return closed_; }
    double closure_residual() const noexcept { return closure_residual_; }

    Eigen::MatrixXd element(Eigen::Index i) const { return parent_->element(basis_.col(i)); }
    /// Distance of a coordinate vector from the subspace.
    double projection_residual(const Eigen::VectorXd& x) const {
        return (x - basis_ * (basis_.transpose() * x)).norm();
    }

private:
    double bracket_scale() const {
        double s = 0.0;
        for (Eigen::Index i = 0; i < parent_->dim(); ++i) s = std::max(s, parent_->ad_basis(i).cwiseAbs().maxCoeff());
        return s;
    }
    double compute_closure_residual() const {
        double r = 0.0;
        for (Eigen::Index i = 0; i < dim(); ++i) {
            const Eigen::MatrixXd a = parent_->ad(basis_.col(i));
            for (Eigen::Index j = i + 1; j < dim(); ++j) r = std::max(r, projection_residual(a * basis_.col(j)));
        }
        return r;
    }

    ModelPtr parent_;
    Eigen::MatrixXd basis_;
    bool closed_ = false;
    double closure_residual_ = 0.0;
};

enum class ElementKind { LieAlgebra, Group };

/// Centralizer of a set of ambient matrices: kernel of the stacked maps
/// X -> [s, X] (Lie elements) or X -> s X s^{-1} - X (group elements).
inline SubalgebraHandle centralizer(const ModelPtr& model, const std::vector<Eigen::MatrixXd>& elements,
                                    ElementKind kind, const Tolerances& tol = {}) {
    const Eigen::Index d = model->dim();
    const Eigen::Index n2 = model->real_size() * model->real_size();
    if (elements.empty()) return SubalgebraHandle::whole(model, tol.structure);
    Eigen::MatrixXd stacked(n2 * static_cast<Eigen::Index>(elements.size()), d);
    for (std::size_t k = 0; k < elements.size(); ++k) {
        const Eigen::MatrixXd& s = elements[k];
        if (s.rows() != model->real_size() || s.cols() != model->real_size())
            throw DomainError("centralizer: element size does not match the ambient matrix size");
        const Eigen::MatrixXd sinv = kind == ElementKind::Group ? Eigen::MatrixXd(s.inverse()) : Eigen::MatrixXd();
        for (Eigen::Index j = 0; j < d; ++j) {
            const Eigen::MatrixXd& x = model->basis(j);
            const Eigen::MatrixXd img = kind == ElementKind::LieAlgebra ? Eigen::MatrixXd(s * x - x * s)
                                                                        : Eigen::MatrixXd(s * x * sinv - x);
            stacked.block(n2 * static_cast<Eigen::Index>(k), j, n2, 1) = img.reshaped();
        }
    }
    Eigen::MatrixXd kernel;
    const double smax = operator_norm(stacked);
    if (smax == 0.0) kernel = Eigen::MatrixXd::Identity(d, d);
    else if (kind == ElementKind::Group) kernel = nullspace_unit(stacked, tol.rank);
    else kernel = nullspace(stacked, tol.rank);
    SubalgebraHandle h(model, kernel, tol.structure);
    if (!h.closed())
        throw NumericalError("centralizer: kernel not closed under bracket (residual " +
                             std::to_string(h.closure_residual()) + ")");
    return h;
}

/// {x in z : [x, z] = 0}.
inline SubalgebraHandle center_of(const SubalgebraHandle& sub, const Tolerances& tol = {}) {
    if (!sub.closed()) throw DomainError("center_of: subspace is not a subalgebra");
    const auto& model = sub.model();
    const Eigen::Index k = sub.dim();
    if (k == 0) return sub;
    Eigen::MatrixXd stacked(model.dim() * k, k);
    std::vector<Eigen::MatrixXd> ads;
    ads.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) ads.push_back(model.ad(sub.basis().col(i)));
    for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index i = 0; i < k; ++i)
            stacked.block(model.dim() * j, i, model.dim(), 1) = ads[static_cast<std::size_t>(i)] * sub.basis().col(j);
    // absolute threshold: brackets are compared with the size of ad on unit vectors
    double scale = 1.0;
    for (const auto& a : ads) scale = std::max(scale, operator_norm(a));
    const Eigen::MatrixXd c = nullspace_abs(stacked, tol.rank * scale);
    return SubalgebraHandle(sub.parent(), sub.basis() * c, tol.structure);
}

struct ReductivityCertificate {
    bool nondegenerate = true;
    double condition_number = 1.0;
    double min_singular_value = std::numeric_limits<double>::infinity();
};

/// Whether the ambient Killing form restricted to `sub` is nondegenerate.
inline ReductivityCertificate killing_restriction_nondegenerate(const SubalgebraHandle& sub,
                                                                const Tolerances& tol = {}) {
    ReductivityCertificate cert;
    if (!sub.closed()) throw DomainError("killing_restriction_nondegenerate: subspace is not a subalgebra");
    if (sub.dim() == 0) return cert;
    const Eigen::MatrixXd& b = sub.model().killing_matrix();
    const double scale = std::max(operator_norm(b), 1e-300);
    const Eigen::MatrixXd r = sub.basis().transpose() * b * sub.basis();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
    const auto& s = svd.singularValues();
    cert.min_singular_value = s(s.size() - 1);
    cert.condition_number =
        cert.min_singular_value > 0.0 ? s(0) / cert.min_singular_value : std::numeric_limits<double>::infinity();
    cert.nondegenerate = cert.min_singular_value > tol.rank * scale;
    return cert;
}

/// The limit of exp(-t u) g exp(t u) as t -> +infinity, for symmetric u.
/// In the eigenbasis of u, entry (i, j) scales by exp(t (d_j - d_i)): entries
/// with d_i > d_j vanish in the limit, entries within one eigenvalue cluster
/// are kept, and a nonzero entry with d_i < d_j makes the limit diverge.
inline Eigen::MatrixXd conjugation_limit(const Eigen::MatrixXd& g, const Eigen::MatrixXd& u,
                                         const Tolerances& tol = {}) {
    if (g.rows() != g.cols() || u.rows() != u.cols() || g.rows() != u.rows())
        throw DomainError("conjugation_limit: size mismatch");
    const double unorm = u.norm();
    if ((u - u.transpose()).norm() > tol.structure * std::max(1.0, unorm))
        throw DomainError("conjugation_limit: direction u must be symmetric");
    if (unorm == 0.0) return g;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(u));
    const Eigen::MatrixXd& q = es.eigenvectors();
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double merge = tol.cluster * ev.cwiseAbs().maxCoeff();
    Eigen::MatrixXd h = q.transpose() * g * q;
    const double gscale = std::max(g.norm(), 1e-300);
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            const double gap = ev(j) - ev(i);
            if (std::abs(gap) <= merge) continue;
            if (gap < 0.0) {
                h(i, j) = 0.0;
            } else if (std::abs(h(i, j)) > tol.group * gscale) {
                throw NumericalError("conjugation_limit: divergence, entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") grows like exp(" + std::to_string(gap) + " t)");
            } else {
                h(i, j) = 0.0;
            }
        }
    return q * h * q.transpose();
}

}  // namespace flexcheck

#endif  // FLEXCHECK_SUBALGEBRA_HPP
