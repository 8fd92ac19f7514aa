#ifndef FLEXCHECK_TOLEDO_HPP
#define FLEXCHECK_TOLEDO_HPP

#include <cmath>
#include <cstdlib>
#include <optional>
#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/cohomology.hpp"
#include "flexcheck/config.hpp"
#include "flexcheck/linalg.hpp"
#include "flexcheck/root_decomposition.hpp"
#include "flexcheck/surface_group.hpp"

namespace flexcheck {

/// Eigenvalue sign counts of a symmetric matrix against the band tol * |M|.
struct SignatureResult {
    int positive = 0;
    int negative = 0;
    int degenerate = 0;        ///< eigenvalues inside the band
    double min_abs_relative = 0.0;  ///< smallest |eigenvalue| / |M|

    int value() const noexcept { return positive - negative; }
};

inline SignatureResult signature_details(const Eigen::MatrixXd& m, double tol = 1e-8) {
    if (m.rows() != m.cols()) throw DomainError("signature: matrix is not square");
    SignatureResult r;
    if (m.rows() == 0) return r;
    const double scale = std::max(operator_norm(m), 1e-300);
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, scale))
        throw DomainError("signature: matrix is not symmetric");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(m), Eigen::EigenvaluesOnly);
    r.min_abs_relative = es.eigenvalues().cwiseAbs().minCoeff() / scale;
    for (const double e : es.eigenvalues()) {
        if (e > tol * scale) ++r.positive;
        else if (e < -tol * scale) ++r.negative;
        else ++r.degenerate;
    }
    return r;
}

inline int signature(const Eigen::MatrixXd& m, double tol = 1e-8) { return signature_details(m, tol).value(); }

/// Everything computed about one root's flat bundle.
struct RootFormReport {
    Eigen::VectorXcd root;
    RootKind kind = RootKind::Imaginary;
    std::size_t index = 0;          ///< representative index in the decomposition
    Eigen::Index root_dim = 0;      ///< dim g_{l,R}
    Eigen::Index h0_dim = 0;
    Eigen::Index h1_dim = 0;
    Eigen::Index h2_dim = 0;
    int euler_characteristic = 0;
    Eigen::MatrixXd gram;           ///< real symmetric form on H^1 (real and imaginary roots)
    Eigen::MatrixXcd complex_gram;  ///< complex-bilinear form on a complex basis of H^1 (mixed roots)
    bool has_signature = true;
    SignatureResult inertia;
    int signature = 0;
    int toledo = 0;
    bool meyer_consistent = true;   ///< signature divisible by 4
    bool definite = false;
    bool degenerate = false;        ///< Gram eigenvalues inside the tolerance band
    double nondegeneracy = 0.0;     ///< min |eigenvalue| (or singular value) relative to the norm
    double slack = 0.0;
    double invariance_residual = 0.0;
    double coboundary_residual = 0.0;
    std::vector<std::string> notes;
};

/// -chi dim g_{l,R} - 4 |T|.
inline double milnor_wood_check(const RootFormReport& r, double tol = 1e-9) {
    if (!r.has_signature) return static_cast<double>(-r.euler_characteristic * r.root_dim);
    const double slack = static_cast<double>(-r.euler_characteristic * r.root_dim) - 4.0 * std::abs(r.toledo);
    if (slack < -tol) throw NumericalError("milnor_wood_check: negative slack " + std::to_string(slack));
    return slack;
}

namespace detail {

inline Eigen::MatrixXd block_diagonal(const Eigen::MatrixXd& j, int copies) {
    const Eigen::Index n = j.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * copies, n * copies);
    for (int k = 0; k < copies; ++k) out.block(n * k, n * k, n, n) = j;
    return out;
}

/// Signature and flags of a real symmetric Gram matrix filled into `r`.
inline void fill_signature(RootFormReport& r, double tol) {
    r.inertia = signature_details(r.gram, tol);
    r.signature = r.inertia.value();
    r.nondegeneracy = r.inertia.min_abs_relative;
    r.degenerate = r.inertia.degenerate > 0;
    r.meyer_consistent = r.signature % 4 == 0;
    r.toledo = r.signature / 4;
    r.definite = !r.degenerate && std::abs(r.signature) == r.gram.rows() && r.gram.rows() > 0;
    if (r.degenerate) r.notes.push_back("numerically indefinite: Gram eigenvalue inside the tolerance band");
    if (!r.meyer_consistent) r.notes.push_back("signature not divisible by 4");
}

/// Gram matrix of the symmetrized pairing with an alternating form w on H^1, plus signature data.
inline void fill_real_form(RootFormReport& r, const CohomologyWorkspace& ws, const Eigen::MatrixXd& w,
                           const Tolerances& tol) {
    const Eigen::MatrixXd kernel = ws.pairing_kernel(w);
    if (ws.dim_b1() > 0) r.coboundary_residual = (ws.b1().transpose() * kernel * ws.z1()).cwiseAbs().maxCoeff();
    r.gram = symmetrized(ws.h1().transpose() * kernel * ws.h1());
    fill_signature(r, tol.signature);
    r.slack = milnor_wood_check(r);
}

}  // namespace detail

/// Form report for an arbitrary module with an invariant alternating form `omega`.
inline RootFormReport module_form(const SurfaceGroupPresentation& pres, const Module& module,
                                  const Eigen::MatrixXd& omega, const Tolerances& tol = {}) {
    if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > tol.structure * std::max(1.0, omega.cwiseAbs().maxCoeff()))
        throw DomainError("module_form: form is not alternating");
    RootFormReport r;
    r.root_dim = module.dim();
    r.euler_characteristic = pres.euler_characteristic();
    for (const auto& a : module.actions)
        r.invariance_residual = std::max(r.invariance_residual, (a.transpose() * omega * a - omega).cwiseAbs().maxCoeff());
    if (r.invariance_residual > tol.group * std::max(1.0, omega.cwiseAbs().maxCoeff()))
        throw DomainError("module_form: form is not invariant under the module");
    const CohomologyWorkspace ws(pres, module, tol);
    r.h0_dim = ws.dim_h0();
    r.h1_dim = ws.dim_h1();
    r.h2_dim = ws.dim_h2();
    detail::fill_real_form(r, ws, omega, tol);
    return r;
}

/// Real form on the root module: Im Omega for imaginary roots, Re Omega for real ones.
inline Eigen::MatrixXd root_module_form(RootKind kind, const Eigen::MatrixXcd& omega) {
    return kind == RootKind::Real ? Eigen::MatrixXd(omega.real()) : Eigen::MatrixXd(omega.imag());
}

/// The cup-product form of representative root `index` on H^1(Gamma, g_{l,R}),
/// taken with Omega of orbit member `slot` (0 is the representative itself).
inline RootFormReport root_form(const SurfaceRepresentation& rep, const TorusRootDecomposition& decomp,
                                std::size_t index, const Tolerances& tol = {}, std::size_t slot = 0) {
    if (!rep.model()) throw DomainError("root_form: representation has no model");
    if (rep.model()->dim() != decomp.model()->dim() || rep.model()->real_size() != decomp.model()->real_size())
        throw DomainError("root_form: representation and decomposition use different algebras");
    const RootDatum& d = decomp.root(index);
    if (slot >= d.orbit.size()) throw DomainError("root_form: orbit slot out of range");
    const Eigen::MatrixXcd omega = slot == 0 ? d.omega : decomp.omega_for(index, slot);
    RootFormReport r;
    r.root = d.orbit[slot];
    r.kind = d.kind;
    r.index = index;
    r.root_dim = d.real_dim();
    r.euler_characteristic = rep.presentation().euler_characteristic();

    Module module;
    module.name = "root " + std::to_string(index);
    for (const auto& a : rep.images()) {
        const RestrictedAction ra = restrict_action(rep.model()->adjoint_action(a), d.real_space);
        r.invariance_residual = std::max(r.invariance_residual, ra.residual);
        module.actions.push_back(ra.matrix);
    }
    if (r.invariance_residual > tol.group)
        throw DomainError("root_form: root space is not invariant under the representation (residual " +
                          std::to_string(r.invariance_residual) + "); the torus is not central");

    const CohomologyWorkspace ws(rep.presentation(), module, tol);
    r.h0_dim = ws.dim_h0();
    r.h1_dim = ws.dim_h1();
    r.h2_dim = ws.dim_h2();
    if (r.h0_dim != 0)
        throw DomainError("root_form: H^0 of a nonzero root space is nonzero (dimension " +
                          std::to_string(r.h0_dim) + ")");

    if (d.kind != RootKind::Mixed) {
        detail::fill_real_form(r, ws, root_module_form(d.kind, omega), tol);
        if (d.kind == RootKind::Real && r.signature != 0) r.notes.push_back("real root with nonzero signature");
        return r;
    }

    r.has_signature = false;
    const Eigen::MatrixXd kre = ws.pairing_kernel(omega.real());
    const Eigen::MatrixXd kim = ws.pairing_kernel(omega.imag());
    if (ws.dim_b1() > 0)
        r.coboundary_residual = std::max((ws.b1().transpose() * kre * ws.z1()).cwiseAbs().maxCoeff(),
                                         (ws.b1().transpose() * kim * ws.z1()).cwiseAbs().maxCoeff());
    const int gens = rep.presentation().generator_count();
    const Eigen::MatrixXd j = slot == 0 ? d.complex_structure : decomp.complex_structure_for(index, slot);
    const Eigen::MatrixXd jh = ws.h1().transpose() * detail::block_diagonal(j, gens) * ws.h1();
    const Eigen::MatrixXd cb = complex_basis(jh);
    const Eigen::MatrixXcd kc = kre.cast<cplx>() + cplx(0, 1) * kim.cast<cplx>();
    const Eigen::MatrixXcd h1 = (ws.h1() * cb).cast<cplx>();
    r.complex_gram = h1.transpose() * kc * h1;
    if (r.complex_gram.size() > 0) {
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r.complex_gram);
        const double top = svd.singularValues()(0);
        r.nondegeneracy = top > 0 ? svd.singularValues().minCoeff() / top : 0.0;
    }
    r.degenerate = r.complex_gram.size() > 0 && r.nondegeneracy <= tol.signature;
    if (r.degenerate) r.notes.push_back("complex-bilinear form is degenerate");
    r.notes.push_back("mixed root: no signature");
    r.slack = milnor_wood_check(r);
    return r;
}

/// All representative roots of the decomposition.
inline std::vector<RootFormReport> root_forms(const SurfaceRepresentation& rep, const TorusRootDecomposition& decomp,
                                              const Tolerances& tol = {}) {
    std::vector<RootFormReport> out;
    for (std::size_t k = 0; k < decomp.roots().size(); ++k) out.push_back(root_form(rep, decomp, k, tol));
    return out;
}

/// Outcome of testing a candidate pair of Lagrangians.
struct LagrangianPairResult {
    bool holds = false;
    bool complementary = false;
    double isotropy_residual = 0.0;
    double invariance_residual = 0.0;
};

inline double subspace_invariance_residual(const std::vector<Eigen::MatrixXd>& actions, const Eigen::MatrixXd& l) {
    const Eigen::MatrixXd q = orthonormal_span(l);
    double worst = 0.0;
    for (const auto& a : actions) {
        const Eigen::MatrixXd img = a * q;
        worst = std::max(worst, (img - q * (q.transpose() * img)).norm() / std::max(1.0, a.norm()));
    }
    return worst;
}

inline LagrangianPairResult lagrangian_pair_details(const std::vector<Eigen::MatrixXd>& actions,
                                                    const Eigen::MatrixXd& omega, const Eigen::MatrixXd& l1,
                                                    const Eigen::MatrixXd& l2, double tol = 1e-8) {
    const Eigen::Index n = omega.rows();
    if (omega.cols() != n || l1.rows() != n || l2.rows() != n)
        throw DomainError("lagrangian_pair_check: dimension mismatch");
    for (const auto& a : actions)
        if (a.rows() != n || a.cols() != n) throw DomainError("lagrangian_pair_check: action size mismatch");
    LagrangianPairResult r;
    Eigen::MatrixXd both(n, l1.cols() + l2.cols());
    both << l1, l2;
    r.complementary = l1.cols() + l2.cols() == n && rank(l1) == l1.cols() && rank(l2) == l2.cols() && rank(both) == n;
    const double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd q1 = orthonormal_span(l1), q2 = orthonormal_span(l2);
    if (q1.cols() > 0) r.isotropy_residual = (q1.transpose() * omega * q1).cwiseAbs().maxCoeff() / scale;
    if (q2.cols() > 0)
        r.isotropy_residual = std::max(r.isotropy_residual, (q2.transpose() * omega * q2).cwiseAbs().maxCoeff() / scale);
    r.invariance_residual =
        std::max(subspace_invariance_residual(actions, l1), subspace_invariance_residual(actions, l2));
    r.holds = r.complementary && r.isotropy_residual <= tol && r.invariance_residual <= tol;
    return r;
}

/// True iff L1, L2 are complementary, Omega-isotropic and invariant under every action.
inline bool lagrangian_pair_check(const std::vector<Eigen::MatrixXd>& actions, const Eigen::MatrixXd& omega,
                                  const Eigen::MatrixXd& l1, const Eigen::MatrixXd& l2, double tol = 1e-8) {
    return lagrangian_pair_details(actions, omega, l1, l2, tol).holds;
}

/// Heuristic search for an invariant Lagrangian pair: real eigenspaces of random
/// elements of the commutant of the action.
inline std::optional<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> find_lagrangian_pair(
    const std::vector<Eigen::MatrixXd>& actions, const Eigen::MatrixXd& omega, std::mt19937_64& rng,
    int attempts = 8, double tol = 1e-8) {
    const Eigen::Index n = omega.rows();
    if (n == 0 || n % 2 != 0) return std::nullopt;
    Eigen::MatrixXd eqs(n * n * static_cast<Eigen::Index>(actions.size()), n * n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t k = 0; k < actions.size(); ++k) {
        // vec(A X - X A) = (I (x) A - A^T (x) I) vec X
        Eigen::MatrixXd m(n * n, n * n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                m.block(i * n, j * n, n, n) = (i == j ? actions[k] : Eigen::MatrixXd::Zero(n, n)) -
                                              actions[k](j, i) * id;
        eqs.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = m;
    }
    const Eigen::MatrixXd commutant = nullspace(eqs);
    if (commutant.cols() < 2) return std::nullopt;
    std::normal_distribution<double> nd;
    for (int a = 0; a < attempts; ++a) {
        Eigen::VectorXd c(commutant.cols());
        for (auto& x : c) x = nd(rng);
        const Eigen::MatrixXd x = (commutant * c).reshaped(n, n);
        const Eigen::EigenSolver<Eigen::MatrixXd> es(x);
        const Eigen::VectorXcd ev = es.eigenvalues();
        if (ev.imag().cwiseAbs().maxCoeff() > 1e-7 * std::max(1.0, ev.cwiseAbs().maxCoeff())) continue;
        // split the real spectrum into two halves at a gap
        std::vector<std::pair<double, Eigen::Index>> order;
        for (Eigen::Index i = 0; i < n; ++i) order.emplace_back(ev(i).real(), i);
        std::sort(order.begin(), order.end());
        const double lo = order[static_cast<std::size_t>(n / 2 - 1)].first;
        const double hi = order[static_cast<std::size_t>(n / 2)].first;
        if (hi - lo <= 1e-6 * std::max(1.0, std::abs(hi) + std::abs(lo))) continue;
        const Eigen::MatrixXd vecs = es.eigenvectors().real();
        Eigen::MatrixXd l1(n, n / 2), l2(n, n / 2);
        for (Eigen::Index k = 0; k < n / 2; ++k) {
            l1.col(k) = vecs.col(order[static_cast<std::size_t>(k)].second);
            l2.col(k) = vecs.col(order[static_cast<std::size_t>(k + n / 2)].second);
        }
        if (lagrangian_pair_check(actions, omega, l1, l2, tol)) return std::make_pair(l1, l2);
    }
    return std::nullopt;
}

}  // namespace flexcheck

#endif  // FLEXCHECK_TOLEDO_HPP
