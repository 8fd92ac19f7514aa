#ifndef FLEXCHECK_LIE_ALGEBRA_HPP
#define FLEXCHECK_LIE_ALGEBRA_HPP

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/config.hpp"
#include "flexcheck/linalg.hpp"
#include "flexcheck/scalar.hpp"

namespace flexcheck {

/// Classical real forms that can be built as matrix algebras.
enum class Family {
    SlReal,        ///< sl(n, R), n = p
    SlComplex,     ///< sl(n, C) viewed as a real Lie algebra, n = p
    SpecialUnitary,///< su(p, q)
    Unitary,       ///< u(p, q)
    Orthogonal,    ///< so(p, q)
    SpQuaternion,  ///< sp(p, q) over H
    SpReal,        ///< sp(2n, R), n = p
    Exceptional,   ///< octonionic / exceptional forms: never constructed
};

struct ClassicalSpec {
    Family family = Family::SlReal;
    int p = 2;
    int q = 0;
};

inline Field family_field(Family f) {
    switch (f) {
        case Family::SlReal:
        case Family::Orthogonal:
        case Family::SpReal: return Field::Real;
        case Family::SlComplex:
        case Family::SpecialUnitary:
        case Family::Unitary: return Field::Complex;
        case Family::SpQuaternion: return Field::Quaternion;
        case Family::Exceptional: break;
    }
    throw ExcludedError("exceptional/octonionic algebras are excluded from computation");
}

inline std::string classical_name(const ClassicalSpec& s) {
    const auto pq = std::to_string(s.p) + "," + std::to_string(s.q);
    switch (s.family) {
        case Family::SlReal: return "sl(" + std::to_string(s.p) + ",R)";
        case Family::SlComplex: return "sl(" + std::to_string(s.p) + ",C)";
        case Family::SpecialUnitary: return "su(" + pq + ")";
        case Family::Unitary: return "u(" + pq + ")";
        case Family::Orthogonal: return "so(" + pq + ")";
        case Family::SpQuaternion: return "sp(" + pq + ")";
        case Family::SpReal: return "sp(" + std::to_string(2 * s.p) + ",R)";
        case Family::Exceptional: return "exceptional";
    }
    return "?";
}

/// Ambient matrix size over the base field.
inline int classical_ambient(const ClassicalSpec& s) {
    switch (s.family) {
        case Family::SlReal:
        case Family::SlComplex: return s.p;
        case Family::SpReal: return 2 * s.p;
        default: return s.p + s.q;
    }
}

/// Dimension from the classical formulas; used as a construction self-check.
inline int classical_dimension(const ClassicalSpec& s) {
    const int n = classical_ambient(s);
    switch (s.family) {
        case Family::SlReal: return n * n - 1;
        case Family::SlComplex: return 2 * (n * n - 1);
        case Family::SpecialUnitary: return n * n - 1;
        case Family::Unitary: return n * n;
        case Family::Orthogonal: return n * (n - 1) / 2;
        case Family::SpQuaternion: return n * (2 * n + 1);
        case Family::SpReal: return s.p * (2 * s.p + 1);
        case Family::Exceptional: break;
    }
    throw ExcludedError("exceptional/octonionic algebras are excluded from computation");
}

/// A finite-dimensional real Lie algebra of realified matrices, with a basis
/// orthonormal for <X, Y> = Trace(X^T Y), its structure constants and Killing matrix.
class LieAlgebraModel {
public:
    /// Span of `generators` (realified matrices over `field`), orthonormalized.
    /// `group_form`, when given, is the realified e with g^T e g = e on the group.
    LieAlgebraModel(std::string name, Field field, const std::vector<Eigen::MatrixXd>& generators,
                    std::optional<Eigen::MatrixXd> group_form = std::nullopt, double tol = 1e-9)
        : name_(std::move(name)), field_(field), form_(std::move(group_form)), tol_(tol) {
        if (generators.empty()) throw DomainError("LieAlgebraModel: no generators");
        n_real_ = generators.front().rows();
        const int d = field_degree(field_);
        if (n_real_ % d != 0) throw DomainError("LieAlgebraModel: matrix size not a multiple of the field degree");
        Eigen::MatrixXd stacked(n_real_ * n_real_, static_cast<Eigen::Index>(generators.size()));
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (generators[i].rows() != n_real_ || generators[i].cols() != n_real_)
                throw DomainError("LieAlgebraModel: generator size mismatch");
            stacked.col(static_cast<Eigen::Index>(i)) = generators[i].reshaped();
        }
        const Eigen::MatrixXd q = orthonormal_span(stacked, tol);
        basis_.reserve(static_cast<std::size_t>(q.cols()));
        for (Eigen::Index i = 0; i < q.cols(); ++i) basis_.push_back(q.col(i).reshaped(n_real_, n_real_));
        flat_ = q;
        compute_structure();
    }

    const std::string& name() const noexcept { return name_; }
    Field field() const noexcept { return field_; }
    Eigen::Index real_size() const noexcept { return n_real_; }
    int ambient_size() const noexcept { return static_cast<int>(n_real_) / field_degree(field_); }
    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(basis_.size()); }

    const Eigen::MatrixXd& basis(Eigen::Index i) const { return basis_.at(static_cast<std::size_t>(i)); }
    const std::vector<Eigen::MatrixXd>& basis() const noexcept { return basis_; }
    /// Basis as columns of vec(X_i), (N^2 x D).
    const Eigen::MatrixXd& flat_basis() const noexcept { return flat_; }

    /// Structure constant c_{ijk}: [X_i, X_j] = sum_k c_{ijk} X_k.
    double structure_constant(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
        return ad_[static_cast<std::size_t>(i)](k, j);
    }
    /// Matrix of ad_{X_i} in the model basis.
    const Eigen::MatrixXd& ad_basis(Eigen::Index i) const { return ad_.at(static_cast<std::size_t>(i)); }
    Eigen::MatrixXd ad(const Eigen::VectorXd& x) const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim(), dim());
        for (Eigen::Index i = 0; i < dim(); ++i) a += x(i) * ad_[static_cast<std::size_t>(i)];
        return a;
    }
    const Eigen::MatrixXd& killing_matrix() const noexcept { return killing_; }
    const std::optional<Eigen::MatrixXd>& group_form() const noexcept { return form_; }
    double tolerance() const noexcept { return tol_; }

    /// Coordinates of an ambient matrix, by orthogonal projection.
    Eigen::VectorXd coords(const Eigen::MatrixXd& m) const { return flat_.transpose() * m.reshaped(); }
    /// Distance from `m` to the model's span.
    double span_residual(const Eigen::MatrixXd& m) const {
        return (m.reshaped() - flat_ * coords(m)).norm();
    }
    /// Coordinates, throwing when `m` is not in the span (relative to its norm).
    Eigen::VectorXd coords_checked(const Eigen::MatrixXd& m, double tol) const {
        const double r = span_residual(m);
        if (r > tol * std::max(1.0, m.norm()))
            throw DomainError(name_ + ": element outside the span (residual " + std::to_string(r) + ")");
        return coords(m);
    }
    Eigen::MatrixXd element(const Eigen::VectorXd& x) const { return (flat_ * x).reshaped(n_real_, n_real_); }

    static Eigen::MatrixXd bracket(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) { return x * y - y * x; }
    Eigen::VectorXd bracket_coords(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return ad(x) * y; }

    /// Trace(ad_X ad_Y) for coordinate vectors.
    double killing(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(killing_ * y); }

    /// Matrix of Ad(g) = g X g^{-1} in the model basis.
    Eigen::MatrixXd adjoint_action(const Eigen::MatrixXd& g) const {
        const Eigen::MatrixXd ginv = g.inverse();
        Eigen::MatrixXd a(dim(), dim());
        for (Eigen::Index j = 0; j < dim(); ++j) a.col(j) = coords(g * basis(j) * ginv);
        return a;
    }

    /// Max over basis pairs of |c_ijk + c_jik|.
    double antisymmetry_residual() const {
        double r = 0.0;
        for (Eigen::Index i = 0; i < dim(); ++i)
            for (Eigen::Index j = 0; j < dim(); ++j)
                r = std::max(r, (ad_[static_cast<std::size_t>(i)].col(j) + ad_[static_cast<std::size_t>(j)].col(i))
                                    .cwiseAbs()
                                    .maxCoeff());
        return r;
    }
    /// Jacobi identity, in the equivalent form ad_{[X_i, X_j]} = [ad_i, ad_j].
    double jacobi_residual() const {
        double r = 0.0;
        for (Eigen::Index i = 0; i < dim(); ++i)
            for (Eigen::Index j = i + 1; j < dim(); ++j) {
                const Eigen::MatrixXd lhs = ad(ad_basis(i).col(j));
                const Eigen::MatrixXd rhs = ad_basis(i) * ad_basis(j) - ad_basis(j) * ad_basis(i);
                r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        return r;
    }
    /// Max over basis triples of |B([Z,X],Y) + B(X,[Z,Y])|.
    double killing_invariance_residual() const {
        double r = 0.0;
        for (Eigen::Index z = 0; z < dim(); ++z) {
            const Eigen::MatrixXd& a = ad_basis(z);
            r = std::max(r, (a.transpose() * killing_ + killing_ * a).cwiseAbs().maxCoeff());
        }
        return r;
    }
    /// Residual of the defining group relation g^T e g = e (zero when no form is attached).
    double group_relation_residual(const Eigen::MatrixXd& g) const {
        if (!form_) return 0.0;
        return (g.transpose() * *form_ * g - *form_).cwiseAbs().maxCoeff();
    }

private:
    void compute_structure() {
        const Eigen::Index d = dim();
        ad_.assign(static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d));
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) {
                const Eigen::MatrixXd b = bracket(basis(i), basis(j));
                ad_[static_cast<std::size_t>(i)].col(j) = coords(b);
            }
        killing_.resize(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = i; j < d; ++j) {
                const double v = (ad_[static_cast<std::size_t>(i)].cwiseProduct(ad_[static_cast<std::size_t>(j)].transpose())).sum();
                killing_(i, j) = v;
                killing_(j, i) = v;
            }
    }

    std::string name_;
    Field field_ = Field::Real;
    Eigen::Index n_real_ = 0;
    std::vector<Eigen::MatrixXd> basis_;
    Eigen::MatrixXd flat_;
    std::vector<Eigen::MatrixXd> ad_;
    Eigen::MatrixXd killing_;
    std::optional<Eigen::MatrixXd> form_;
    double tol_ = 1e-9;
};

using ModelPtr = std::shared_ptr<const LieAlgebraModel>;

namespace detail {

/// The standard symplectic form [[0, I], [-I, 0]] on R^{2n}.
inline FieldMatrix symplectic_form(int n) {
    FieldMatrix j(Field::Real, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = Scalar(1.0);
        j(n + i, i) = Scalar(-1.0);
    }
    return j;
}

}  // namespace detail

/// Build one of the classical real matrix Lie algebras. The basis is the
/// solution space of the linear defining relations (M* e + e M = 0 and/or
/// tracelessness), parametrized entrywise over the base field.
inline ModelPtr build_classical(const ClassicalSpec& spec, const Config& cfg = {}) {
    if (spec.family == Family::Exceptional)
        throw ExcludedError("exceptional/octonionic algebras are excluded from computation");
    const Field f = family_field(spec.family);
    const int d = field_degree(f);
    const int n = classical_ambient(spec);
    if (spec.p < 1 || spec.q < 0) throw DomainError("build_classical: parameters must satisfy p >= 1, q >= 0");
    if (n < 1) throw DomainError("build_classical: empty ambient size");
    if (d * n > cfg.max_ambient)
        throw DomainError("build_classical: realified ambient size " + std::to_string(d * n) + " exceeds cap " +
                          std::to_string(cfg.max_ambient));

    std::optional<FieldMatrix> form;
    bool traceless = false;
    switch (spec.family) {
        case Family::SlReal:
        case Family::SlComplex: traceless = true; break;
        case Family::SpecialUnitary:
            traceless = true;
            form = FieldMatrix::signature_form(f, spec.p, spec.q);
            break;
        case Family::Unitary:
        case Family::Orthogonal:
        case Family::SpQuaternion: form = FieldMatrix::signature_form(f, spec.p, spec.q); break;
        case Family::SpReal: form = detail::symplectic_form(spec.p); break;
        case Family::Exceptional: break;
    }

    const int nparams = n * n * d;
    std::vector<Eigen::MatrixXd> elementary;
    elementary.reserve(static_cast<std::size_t>(nparams));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int u = 0; u < d; ++u) {
                FieldMatrix m(f, n, n);
                m(a, b) = Scalar::unit(f, u);
                elementary.push_back(realify(m).real);
            }

    const Eigen::MatrixXd e_real = form ? realify(*form).real : Eigen::MatrixXd();
    const Eigen::Index nr = d * n;
    const Eigen::Index rows = (form ? nr * nr : 0) + (traceless ? d : 0);
    Eigen::MatrixXd constraints = Eigen::MatrixXd::Zero(rows, nparams);
    for (int c = 0; c < nparams; ++c) {
        const auto& x = elementary[static_cast<std::size_t>(c)];
        Eigen::Index r0 = 0;
        if (form) {
            constraints.col(c).head(nr * nr) = (x.transpose() * e_real + e_real * x).reshaped();
            r0 = nr * nr;
        }
        if (traceless) {
            // base-field trace components: first column of each diagonal block
            for (int u = 0; u < d; ++u) {
                double t = 0.0;
                for (int a = 0; a < n; ++a) t += x(d * a + u, d * a);
                constraints(r0 + u, c) = t;
            }
        }
    }
    const Eigen::MatrixXd sol =
        rows == 0 ? Eigen::MatrixXd::Identity(nparams, nparams) : nullspace(constraints, cfg.tol.rank);
    std::vector<Eigen::MatrixXd> gens;
    gens.reserve(static_cast<std::size_t>(sol.cols()));
    for (Eigen::Index k = 0; k < sol.cols(); ++k) {
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(nr, nr);
        for (int c = 0; c < nparams; ++c) x += sol(c, k) * elementary[static_cast<std::size_t>(c)];
        gens.push_back(std::move(x));
    }
    auto model = std::make_shared<const LieAlgebraModel>(
        classical_name(spec), f, gens, form ? std::optional<Eigen::MatrixXd>(e_real) : std::nullopt, cfg.tol.rank);
    if (model->dim() != classical_dimension(spec))
        throw NumericalError("build_classical: dimension " + std::to_string(model->dim()) + " of " + model->name() +
                             " differs from the classical formula " + std::to_string(classical_dimension(spec)));
    return model;
}

/// Trace(ad_X ad_Y) for ambient matrices in the model's span.
inline double killing(const LieAlgebraModel& model, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                      double tol = 1e-9) {
    return model.killing(model.coords_checked(x, tol), model.coords_checked(y, tol));
}

/// Inertia (positive, negative, zero) of a symmetric matrix.
struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};

inline Inertia inertia(const Eigen::MatrixXd& sym, double tol = 1e-9) {
    Inertia in;
    if (sym.size() == 0) return in;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(sym), Eigen::EigenvaluesOnly);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()(i);
        if (v > tol * scale) ++in.positive;
        else if (v < -tol * scale) ++in.negative;
        else ++in.zero;
    }
    return in;
}

}  // namespace flexcheck

#endif  // FLEXCHECK_LIE_ALGEBRA_HPP
