#ifndef FLEXCHECK_ROOT_DECOMPOSITION_HPP
#define FLEXCHECK_ROOT_DECOMPOSITION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/config.hpp"
#include "flexcheck/lie_algebra.hpp"
#include "flexcheck/linalg.hpp"
#include "flexcheck/subalgebra.hpp"

namespace flexcheck {

enum class RootKind { Real, Imaginary, Mixed };

inline std::string root_kind_name(RootKind k) {
    switch (k) {
        case RootKind::Real: return "real";
        case RootKind::Imaginary: return "imaginary";
        case RootKind::Mixed: return "mixed";
    }
    return "?";
}

/// Real if every value has negligible imaginary part, imaginary if every
/// value has negligible real part, mixed otherwise.
inline RootKind classify_root(const Eigen::VectorXcd& values, double tol = 1e-9) {
    const double scale = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
    if (scale <= tol) throw DomainError("classify_root: zero root");
    const double band = tol * std::max(1.0, scale);
    if (values.imag().cwiseAbs().maxCoeff() <= band) return RootKind::Real;
    if (values.real().cwiseAbs().maxCoeff() <= band) return RootKind::Imaginary;
    return RootKind::Mixed;
}

/// One representative root and everything attached to its orbit {l, -l, conj l, -conj l}.
struct RootDatum {
    Eigen::VectorXcd values;                 ///< l on the torus basis
    RootKind kind = RootKind::Imaginary;
    std::vector<Eigen::VectorXcd> orbit;     ///< distinct members; orbit[0] == values, orbit[1] == -values
    std::vector<Eigen::MatrixXcd> spaces;    ///< complex root space of each orbit member (model coordinates)
    Eigen::MatrixXd real_space;              ///< orthonormal basis of g_{l,R} (model coordinates)
    Eigen::VectorXcd t;                      ///< root vector, coefficients on the torus basis
    Eigen::MatrixXcd omega;                  ///< Omega_l on the real_space basis
    Eigen::MatrixXd complex_structure;       ///< J_l on the real_space basis (mixed roots only)
    Eigen::MatrixXcd component_solver;       ///< maps a real_space vector to stacked orbit components

    Eigen::Index complex_dim() const { return spaces.empty() ? 0 : spaces.front().cols(); }
    Eigen::Index real_dim() const { return real_space.cols(); }
};

class TorusRootDecomposition;
TorusRootDecomposition decompose(const ModelPtr& model, const SubalgebraHandle& torus, const Tolerances& tol);

class TorusRootDecomposition {
public:
    const ModelPtr& model() const noexcept { return model_; }
    const Eigen::MatrixXd& torus_basis() const noexcept { return torus_; }
    Eigen::Index torus_dim() const noexcept { return torus_.cols(); }
    const Eigen::MatrixXd& torus_gram() const noexcept { return gram_; }
    const Eigen::MatrixXd& zero_space() const noexcept { return g0_; }
    const std::vector<RootDatum>& roots() const noexcept { return reps_; }
    const RootDatum& root(std::size_t i) const { return reps_.at(i); }
    /// Every nonzero root with its complex multiplicity.
    const std::vector<std::pair<Eigen::VectorXcd, Eigen::Index>>& all_roots() const noexcept { return all_; }
    double tolerance() const noexcept { return merge_; }

    /// Index of the representative whose orbit contains `values`, and the orbit slot.
    std::optional<std::pair<std::size_t, std::size_t>> locate(const Eigen::VectorXcd& values) const {
        for (std::size_t r = 0; r < reps_.size(); ++r)
            for (std::size_t k = 0; k < reps_[r].orbit.size(); ++k)
                if (values.size() == reps_[r].orbit[k].size() && (values - reps_[r].orbit[k]).norm() <= merge_)
                    return std::make_pair(r, k);
        return std::nullopt;
    }

    /// Components of a real_space vector along each orbit member's root space.
    std::vector<Eigen::VectorXcd> components(std::size_t r, const Eigen::VectorXd& x) const {
        const RootDatum& d = reps_.at(r);
        const Eigen::VectorXcd c = d.component_solver * x.cast<cplx>();
        std::vector<Eigen::VectorXcd> out;
        Eigen::Index off = 0;
        for (const auto& s : d.spaces) {
            out.push_back(s * c.segment(off, s.cols()));
            off += s.cols();
        }
        return out;
    }

    /// Killing-orthogonal projection onto the torus, as torus coefficients.
    Eigen::VectorXd torus_projection(const Eigen::VectorXd& z) const {
        if (torus_dim() == 0) return Eigen::VectorXd();
        return gram_.ldlt().solve(torus_.transpose() * model_->killing_matrix() * z);
    }
    /// The torus element (model coordinates) with complex coefficients `c`.
    Eigen::VectorXcd torus_element(const Eigen::VectorXcd& c) const { return torus_.cast<cplx>() * c; }

    /// Omega for any orbit member `values` of representative r, evaluated directly
    /// from the component formula (not from the stored representative matrix).
    Eigen::MatrixXcd omega_for(std::size_t r, std::size_t slot) const {
        const RootDatum& d = reps_.at(r);
        const Eigen::VectorXcd& mu = d.orbit.at(slot);
        const std::size_t plus = slot;
        const std::size_t minus = *find_slot(d, -mu);
        const Eigen::Index n = d.real_dim();
        Eigen::MatrixXcd diff(model_->dim(), n), sum(model_->dim(), n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto comp = components(r, d.real_space.col(j));
            diff.col(j) = comp[plus] - comp[minus];
            sum.col(j) = comp[plus] + comp[minus];
        }
        const double factor = d.kind == RootKind::Mixed ? 2.0 : 1.0;
        return factor * diff.transpose() * model_->killing_matrix().cast<cplx>() * sum;
    }

    /// J for orbit member `slot`: i on g_{+-mu}, -i on the conjugate pair.
    Eigen::MatrixXd complex_structure_for(std::size_t r, std::size_t slot) const {
        const RootDatum& d = reps_.at(r);
        if (d.kind != RootKind::Mixed) throw DomainError("complex_structure: root is not mixed");
        const Eigen::VectorXcd& mu = d.orbit.at(slot);
        const std::size_t a = slot, b = *find_slot(d, -mu);
        const Eigen::Index n = d.real_dim();
        Eigen::MatrixXd j(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto comp = components(r, d.real_space.col(c));
            Eigen::VectorXcd img = Eigen::VectorXcd::Zero(model_->dim());
            for (std::size_t k = 0; k < comp.size(); ++k) img += (k == a || k == b ? cplx(0, 1) : cplx(0, -1)) * comp[k];
            j.col(c) = d.real_space.transpose() * img.real();
        }
        return j;
    }

    /// Max |B(x, y)| between different summands (g_0 and each g_{l,R}).
    double killing_orthogonality_residual() const {
        std::vector<const Eigen::MatrixXd*> blocks{&g0_};
        for (const auto& d : reps_) blocks.push_back(&d.real_space);
        double r = 0.0;
        const Eigen::MatrixXd& b = model_->killing_matrix();
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j)
                if (blocks[i]->cols() > 0 && blocks[j]->cols() > 0)
                    r = std::max(r, (blocks[i]->transpose() * b * *blocks[j]).cwiseAbs().maxCoeff());
        return r;
    }

    Eigen::Index summed_dimension() const {
        Eigen::Index s = g0_.cols();
        for (const auto& d : reps_) s += d.real_dim();
        return s;
    }

private:
    friend TorusRootDecomposition decompose(const ModelPtr&, const SubalgebraHandle&, const Tolerances&);

    std::optional<std::size_t> find_slot(const RootDatum& d, const Eigen::VectorXcd& v) const {
        for (std::size_t k = 0; k < d.orbit.size(); ++k)
            if ((d.orbit[k] - v).norm() <= merge_) return k;
        return std::nullopt;
    }

    ModelPtr model_;
    Eigen::MatrixXd torus_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd g0_;
    std::vector<RootDatum> reps_;
    std::vector<std::pair<Eigen::VectorXcd, Eigen::Index>> all_;
    double merge_ = 1e-7;
};

namespace detail {

/// Lexicographic comparison of value tuples under (Re, Im) per coordinate.
inline bool lex_greater(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double tol) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a(i).real() - b(i).real()) > tol) return a(i).real() > b(i).real();
        if (std::abs(a(i).imag() - b(i).imag()) > tol) return a(i).imag() > b(i).imag();
    }
    return false;
}

}  // namespace detail

/// Joint eigenspace decomposition of g under ad(torus), grouped into orbits
/// {l, -l, conj l, -conj l} with one representative each.
inline TorusRootDecomposition decompose(const ModelPtr& model, const SubalgebraHandle& torus,
                                        const Tolerances& tol = {}) {
    if (torus.parent().get() != model.get() && torus.model().dim() != model->dim())
        throw DomainError("decompose: torus belongs to a different model");
    TorusRootDecomposition out;
    out.model_ = model;
    out.torus_ = torus.basis();
    const Eigen::Index k = torus.dim();

    std::vector<Eigen::MatrixXd> ads;
    double scale = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        ads.push_back(model->ad(out.torus_.col(i)));
        scale = std::max(scale, operator_norm(ads.back()));
    }
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j)
            if ((ads[static_cast<std::size_t>(i)] * out.torus_.col(j)).norm() > tol.structure * std::max(1.0, scale))
                throw DomainError("decompose: torus is not abelian");
    out.merge_ = tol.cluster * std::max(scale, 1.0);

    out.gram_ = out.torus_.transpose() * model->killing_matrix() * out.torus_;
    if (k > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.gram_);
        const auto& s = svd.singularValues();
        if (s(k - 1) <= tol.rank * std::max(s(0), 1e-300))
            throw NumericalError("decompose: Killing form is degenerate on the torus");
    }

    const auto spaces = simultaneous_eigenspaces(ads, model->dim(), tol.rank, tol.cluster);

    // zero eigenspace and the nonzero roots
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        const bool zero = spaces[i].values.size() == 0 || spaces[i].values.cwiseAbs().maxCoeff() <= out.merge_;
        if (zero) {
            Eigen::MatrixXd ri(model->dim(), 2 * spaces[i].basis.cols());
            ri << spaces[i].basis.real(), spaces[i].basis.imag();
            out.g0_ = orthonormal_span(ri, tol.rank);
        } else {
            nonzero.push_back(i);
            out.all_.emplace_back(spaces[i].values, spaces[i].basis.cols());
        }
    }
    if (out.g0_.size() == 0) out.g0_.resize(model->dim(), 0);

    auto find = [&](const Eigen::VectorXcd& v) -> std::optional<std::size_t> {
        for (std::size_t i : nonzero)
            if ((spaces[i].values - v).norm() <= out.merge_) return i;
        return std::nullopt;
    };

    std::vector<bool> used(spaces.size(), false);
    for (std::size_t i : nonzero) {
        if (used[i]) continue;
        const Eigen::VectorXcd lam = spaces[i].values;
        std::vector<Eigen::VectorXcd> candidates{lam, -lam, lam.conjugate(), -lam.conjugate()};
        std::vector<std::size_t> members;
        std::vector<Eigen::VectorXcd> member_values;
        for (const auto& c : candidates) {
            const auto idx = find(c);
            if (!idx)
                throw NumericalError("decompose: root orbit incomplete (roots must come in +- and conjugate pairs)");
            if (std::find(members.begin(), members.end(), *idx) == members.end()) {
                members.push_back(*idx);
                member_values.push_back(spaces[*idx].values);
            }
        }
        for (auto m : members) used[m] = true;

        // representative: lexicographically largest member
        std::size_t best = 0;
        for (std::size_t m = 1; m < members.size(); ++m)
            if (detail::lex_greater(member_values[m], member_values[best], out.merge_)) best = m;
        const Eigen::VectorXcd rep = member_values[best];

        RootDatum d;
        d.values = rep;
        d.kind = classify_root(rep, tol.cluster);
        // orbit order: rep, -rep, then the conjugate pair (mixed roots)
        std::vector<Eigen::VectorXcd> order{rep, -rep};
        if (d.kind == RootKind::Mixed) {
            order.push_back(rep.conjugate());
            order.push_back(-rep.conjugate());
        }
        Eigen::Index total = 0;
        for (const auto& v : order) {
            const auto idx = find(v);
            d.orbit.push_back(spaces[*idx].values);
            d.spaces.push_back(spaces[*idx].basis);
            total += spaces[*idx].basis.cols();
        }
        if (static_cast<std::size_t>(members.size()) != d.orbit.size())
            throw NumericalError("decompose: inconsistent root orbit size");

        Eigen::MatrixXcd stacked(model->dim(), total);
        Eigen::Index off = 0;
        for (const auto& s : d.spaces) {
            stacked.middleCols(off, s.cols()) = s;
            off += s.cols();
        }
        Eigen::MatrixXd ri(model->dim(), 2 * total);
        ri << stacked.real(), stacked.imag();
        d.real_space = orthonormal_span(ri, tol.rank);
        if (d.real_space.cols() != total)
            throw NumericalError("decompose: realified root space has dimension " +
                                 std::to_string(d.real_space.cols()) + ", expected " + std::to_string(total));
        d.component_solver = stacked.completeOrthogonalDecomposition().pseudoInverse();
        d.t = out.gram_.cast<cplx>().partialPivLu().solve(rep);
        out.reps_.push_back(std::move(d));
    }

    // deterministic order: by representative, lexicographically descending
    std::sort(out.reps_.begin(), out.reps_.end(), [&](const RootDatum& a, const RootDatum& b) {
        return detail::lex_greater(a.values, b.values, out.merge_);
    });
    for (std::size_t r = 0; r < out.reps_.size(); ++r) {
        out.reps_[r].omega = out.omega_for(r, 0);
        if (out.reps_[r].kind == RootKind::Mixed) out.reps_[r].complex_structure = out.complex_structure_for(r, 0);
    }
    if (out.summed_dimension() != model->dim())
        throw NumericalError("decompose: root spaces do not sum to the algebra");
    return out;
}

/// Omega_l for a root l of the decomposition (any orbit member).
inline Eigen::MatrixXcd omega_form(const TorusRootDecomposition& decomp, const Eigen::VectorXcd& lambda) {
    const auto loc = decomp.locate(lambda);
    if (!loc) throw DomainError("omega_form: not a root of this decomposition");
    return decomp.omega_for(loc->first, loc->second);
}

/// J_l for a mixed root l.
inline Eigen::MatrixXd complex_structure(const TorusRootDecomposition& decomp, const Eigen::VectorXcd& lambda) {
    const auto loc = decomp.locate(lambda);
    if (!loc) throw DomainError("complex_structure: not a root of this decomposition");
    return decomp.complex_structure_for(loc->first, loc->second);
}

/// Real vectors forming a complex basis of (R^n, J), J^2 = -1: columns v_k
/// such that {v_k, J v_k} is a real basis.
inline Eigen::MatrixXd complex_basis(const Eigen::MatrixXd& j, double tol = 1e-9) {
    const Eigen::Index n = j.rows();
    if (n % 2 != 0) throw DomainError("complex_basis: odd dimension");
    Eigen::MatrixXd chosen(n, 0), span(n, 0);
    for (Eigen::Index k = 0; k < n && chosen.cols() < n / 2; ++k) {
        const Eigen::VectorXd e = Eigen::VectorXd::Unit(n, k);
        Eigen::MatrixXd trial(n, span.cols() + 2);
        trial << span, e, j * e;
        if (rank(trial, tol) == trial.cols()) {
            span = trial;
            chosen.conservativeResize(n, chosen.cols() + 1);
            chosen.col(chosen.cols() - 1) = e;
        }
    }
    if (chosen.cols() != n / 2) throw NumericalError("complex_basis: J is not a complex structure");
    return chosen;
}

/// Matrix of Ad(g) restricted to the subspace with orthonormal basis `v`,
/// together with the invariance residual.
struct RestrictedAction {
    Eigen::MatrixXd matrix;
    double residual = 0.0;
};

inline RestrictedAction restrict_action(const Eigen::MatrixXd& ad_g, const Eigen::MatrixXd& v) {
    const Eigen::MatrixXd img = ad_g * v;
    RestrictedAction a;
    a.matrix = v.transpose() * img;
    a.residual = (img - v * a.matrix).norm();
    return a;
}

}  // namespace flexcheck

#endif  // FLEXCHECK_ROOT_DECOMPOSITION_HPP
