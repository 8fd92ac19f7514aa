#ifndef FLEXCHECK_COHOMOLOGY_HPP
#define FLEXCHECK_COHOMOLOGY_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/config.hpp"
#include "flexcheck/lie_algebra.hpp"
#include "flexcheck/linalg.hpp"
#include "flexcheck/surface_group.hpp"

namespace flexcheck {

/// A real coefficient module: one action matrix per generator.
struct Module {
    std::vector<Eigen::MatrixXd> actions;
    std::string name = "V";

    Eigen::Index dim() const { return actions.empty() ? 0 : actions.front().rows(); }
};

/// The adjoint module of a representation on its model.
inline Module adjoint_module(const SurfaceRepresentation& rep) {
    if (!rep.model()) throw DomainError("adjoint_module: representation has no model");
    Module m;
    m.name = "ad " + rep.model()->name();
    for (const auto& a : rep.images()) m.actions.push_back(rep.model()->adjoint_action(a));
    return m;
}

/// The module given by the generator images themselves.
inline Module standard_module(const SurfaceRepresentation& rep) {
    Module m;
    m.name = "standard";
    m.actions = rep.images();
    return m;
}

/// Restriction of Ad to an invariant subspace with orthonormal basis `v` (model coordinates).
inline Module restricted_adjoint_module(const SurfaceRepresentation& rep, const Eigen::MatrixXd& v,
                                        double tol = 1e-8, std::string name = "subspace") {
    if (!rep.model()) throw DomainError("restricted_adjoint_module: representation has no model");
    Module m;
    m.name = std::move(name);
    for (const auto& a : rep.images()) {
        const Eigen::MatrixXd img = rep.model()->adjoint_action(a) * v;
        const Eigen::MatrixXd r = v.transpose() * img;
        const double residual = (img - v * r).norm();
        if (residual > tol * std::max(1.0, img.norm()))
            throw DomainError("restricted_adjoint_module: subspace is not invariant (residual " +
                              std::to_string(residual) + ")");
        m.actions.push_back(r);
    }
    return m;
}

/// Z^1, B^1, H^1 and the duality counts for one coefficient module, plus the
/// evaluation of cup products on the fundamental class.
class CohomologyWorkspace {
public:
    CohomologyWorkspace(SurfaceGroupPresentation pres, Module module, const Tolerances& tol = {})
        : pres_(std::move(pres)), module_(std::move(module)), tol_(tol) {
        if (static_cast<int>(module_.actions.size()) != pres_.generator_count())
            throw DomainError("cohomology: module has " + std::to_string(module_.actions.size()) +
                              " action matrices, the presentation has " + std::to_string(pres_.generator_count()) +
                              " generators");
        n_ = module_.dim();
        if (n_ == 0) throw DomainError("cohomology: zero-dimensional module");
        for (const auto& a : module_.actions)
            if (a.rows() != n_ || a.cols() != n_) throw DomainError("cohomology: action size mismatch");
        for (const auto& a : module_.actions) inverses_.push_back(a.inverse());

        const Eigen::MatrixXd rel = module_relator();
        module_relator_residual_ = (rel - Eigen::MatrixXd::Identity(n_, n_)).cwiseAbs().maxCoeff();
        if (module_relator_residual_ > tol_.group * std::max(1.0, rel.cwiseAbs().maxCoeff()))
            throw DomainError("cohomology: the relator does not act trivially on the module (residual " +
                              std::to_string(module_relator_residual_) + ")");

        fox_ = detail::fox_jacobian(pres_, module_.actions);
        z1_ = nullspace_unit(fox_, tol_.rank);
        const Eigen::Index total = n_ * pres_.generator_count();

        Eigen::MatrixXd cob(total, n_);
        Eigen::MatrixXd stacked(total, n_);
        for (int s = 0; s < pres_.generator_count(); ++s) {
            const Eigen::MatrixXd d = module_.actions[static_cast<std::size_t>(s)] - Eigen::MatrixXd::Identity(n_, n_);
            cob.middleRows(n_ * s, n_) = d;
            stacked.middleRows(n_ * s, n_) = d;
        }
        b1_ = orthonormal_span_unit(cob, tol_.rank);
        if (b1_.cols() == 0) b1_.resize(total, 0);
        h0_ = nullspace_unit(stacked, tol_.rank);

        if (b1_.cols() == 0) {
            h1_ = z1_;
        } else {
            const Eigen::MatrixXd overlap = b1_.transpose() * z1_;
            const Eigen::MatrixXd c = nullspace_abs(overlap, 0.5);
            h1_ = z1_ * c;
        }

        Eigen::MatrixXd dual(total, n_);
        for (int s = 0; s < pres_.generator_count(); ++s)
            dual.middleRows(n_ * s, n_) =
                inverses_[static_cast<std::size_t>(s)].transpose() - Eigen::MatrixXd::Identity(n_, n_);
        h2_dim_ = nullspace_unit(dual, tol_.rank).cols();
        build_evaluation_chain();
    }

    const SurfaceGroupPresentation& presentation() const noexcept { return pres_; }
    const Module& module() const noexcept { return module_; }
    Eigen::Index module_dim() const noexcept { return n_; }
    const Eigen::MatrixXd& fox_matrix() const noexcept { return fox_; }
    const Eigen::MatrixXd& z1() const noexcept { return z1_; }
    const Eigen::MatrixXd& b1() const noexcept { return b1_; }
    const Eigen::MatrixXd& h1() const noexcept { return h1_; }
    /// Module invariants, a basis of H^0.
    const Eigen::MatrixXd& h0() const noexcept { return h0_; }
    Eigen::Index dim_z1() const noexcept { return z1_.cols(); }
    Eigen::Index dim_b1() const noexcept { return b1_.cols(); }
    Eigen::Index dim_h0() const noexcept { return h0_.cols(); }
    Eigen::Index dim_h1() const noexcept { return h1_.cols(); }
    /// Via duality: invariants of the contragredient module.
    Eigen::Index dim_h2() const noexcept { return h2_dim_; }
    double module_relator_residual() const noexcept { return module_relator_residual_; }

    /// |L_R u| relative to |u|.
    double cocycle_residual(const Eigen::VectorXd& u) const {
        return (fox_ * u).norm() / std::max(1.0, u.norm());
    }
    void require_cocycle(const Eigen::VectorXd& u) const {
        if (u.size() != fox_.cols()) throw DomainError("cohomology: cochain has the wrong length");
        const double r = cocycle_residual(u);
        if (r > tol_.cocycle * std::max(1.0, operator_norm(fox_)))
            throw DomainError("cohomology: not a cocycle (residual " + std::to_string(r) + ")");
    }

    /// Matrix K with <omega(u cup v), [Sigma]> = u^T K v for all cochains u, v.
    Eigen::MatrixXd pairing_kernel(const Eigen::MatrixXd& omega) const {
        if (omega.rows() != n_ || omega.cols() != n_) throw DomainError("cup_pairing: form size mismatch");
        const Eigen::Index total = fox_.cols();
        Eigen::MatrixXd k = Eigen::MatrixXd::Zero(total, total);
        for (const auto& term : chain_) k += term.left.transpose() * omega * term.right;
        return k;
    }

    /// <omega(u cup v), [Sigma]> for cocycles u, v.
    double cup_pairing(const Eigen::MatrixXd& omega, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
        require_cocycle(u);
        require_cocycle(v);
        return u.dot(pairing_kernel(omega) * v);
    }

    /// Gram matrix of the pairing on two families of cocycles (columns).
    Eigen::MatrixXd cup_gram(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& us, const Eigen::MatrixXd& vs) const {
        return us.transpose() * pairing_kernel(omega) * vs;
    }

private:
    /// One evaluation term: the 2-cochain c(g, h) = omega(u(g), rho(g) v(h)) at a
    /// pair (g, h) is u^T left^T omega right v for fixed matrices left, right.
    struct Term {
        Eigen::MatrixXd left;
        Eigen::MatrixXd right;
    };

    Eigen::MatrixXd module_relator() const {
        Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n_, n_);
        for (const Letter& x : pres_.relator())
            p = p * (x.inverse ? inverses_[static_cast<std::size_t>(x.generator)]
                               : module_.actions[static_cast<std::size_t>(x.generator)]);
        return p;
    }

    /// Linear map u -> u(x) for a single letter.
    Eigen::MatrixXd letter_map(const Letter& x) const {
        const Eigen::Index total = fox_.cols();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, total);
        const auto s = static_cast<std::size_t>(x.generator);
        if (!x.inverse) m.middleCols(n_ * x.generator, n_) = Eigen::MatrixXd::Identity(n_, n_);
        else m.middleCols(n_ * x.generator, n_) = -inverses_[s];
        return m;
    }

    /// The fan chain sum_{m>=2} [P_{m-1} | x_m] of the relator, corrected by
    /// -[s^{-1} | s] for every inverse letter so that it is a cycle.
    void build_evaluation_chain() {
        const auto& word = pres_.relator();
        const Eigen::Index total = fox_.cols();
        Eigen::MatrixXd prefix_u = Eigen::MatrixXd::Zero(n_, total);  // u -> u(P_m)
        Eigen::MatrixXd prefix_rho = Eigen::MatrixXd::Identity(n_, n_);
        for (std::size_t m = 0; m < word.size(); ++m) {
            const Letter& x = word[m];
            const Eigen::MatrixXd lm = letter_map(x);
            if (m >= 1) chain_.push_back({prefix_u, prefix_rho * lm});
            prefix_u += prefix_rho * lm;
            prefix_rho = prefix_rho * (x.inverse ? inverses_[static_cast<std::size_t>(x.generator)]
                                                 : module_.actions[static_cast<std::size_t>(x.generator)]);
        }
        for (const Letter& x : word) {
            if (!x.inverse) continue;
            const Letter pos{x.generator, false};
            const Eigen::MatrixXd& ai = inverses_[static_cast<std::size_t>(x.generator)];
            chain_.push_back({-letter_map(x), ai * letter_map(pos)});
        }
    }

    SurfaceGroupPresentation pres_;
    Module module_;
    Tolerances tol_;
    Eigen::Index n_ = 0;
    std::vector<Eigen::MatrixXd> inverses_;
    Eigen::MatrixXd fox_, z1_, b1_, h1_, h0_;
    Eigen::Index h2_dim_ = 0;
    double module_relator_residual_ = 0.0;
    std::vector<Term> chain_;
};

inline Eigen::MatrixXd cocycle_space(const CohomologyWorkspace& ws) { return ws.z1(); }
inline Eigen::MatrixXd coboundary_space(const CohomologyWorkspace& ws) { return ws.b1(); }

/// Class of [u cup u] in H^2(Gamma, g), as pairings with a basis xi of H^0 = invariants:
/// entry k is <B(xi_k, [u cup u]), [Sigma]>. `ws` must be built on the adjoint module of `model`.
inline Eigen::VectorXd cup_square(const CohomologyWorkspace& ws, const LieAlgebraModel& model, const Eigen::VectorXd& u) {
    if (ws.module_dim() != model.dim()) throw DomainError("cup_square: workspace is not on the adjoint module");
    ws.require_cocycle(u);
    Eigen::VectorXd out(ws.dim_h0());
    for (Eigen::Index k = 0; k < ws.dim_h0(); ++k) {
        // B(xi, [x, y]) = B([xi, x], y) = x^T ad_xi^T B y
        const Eigen::MatrixXd w = model.ad(ws.h0().col(k)).transpose() * model.killing_matrix();
        out(k) = u.dot(ws.pairing_kernel(w) * u);
    }
    return out;
}

/// Mixed term of the polarization: entries <B(xi_k, [u cup v] + [v cup u]), [Sigma]>.
inline Eigen::VectorXd cup_polar(const CohomologyWorkspace& ws, const LieAlgebraModel& model, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v) {
    ws.require_cocycle(u);
    ws.require_cocycle(v);
    Eigen::VectorXd out(ws.dim_h0());
    for (Eigen::Index k = 0; k < ws.dim_h0(); ++k) {
        const Eigen::MatrixXd w = model.ad(ws.h0().col(k)).transpose() * model.killing_matrix();
        const Eigen::MatrixXd kk = ws.pairing_kernel(w);
        out(k) = u.dot(kk * v) + v.dot(kk * u);
    }
    return out;
}

}  // namespace flexcheck

#endif  // FLEXCHECK_COHOMOLOGY_HPP
