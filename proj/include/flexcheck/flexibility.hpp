#ifndef FLEXCHECK_FLEXIBILITY_HPP
#define FLEXCHECK_FLEXIBILITY_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/cohomology.hpp"
#include "flexcheck/config.hpp"
#include "flexcheck/linalg.hpp"
#include "flexcheck/root_decomposition.hpp"
#include "flexcheck/subalgebra.hpp"
#include "flexcheck/surface_group.hpp"
#include "flexcheck/toledo.hpp"

namespace flexcheck {

/// Point configuration in c^*: P-vectors and N-vectors as coordinates on a torus basis.
struct BalanceProblem {
    Eigen::Index dim = 0;
    std::vector<Eigen::VectorXd> p;
    std::vector<Eigen::VectorXd> n;
};

struct BalanceResult {
    bool balanced = false;
    bool spanning = false;          ///< quotient images of P span the quotient
    Eigen::Index quotient_dim = 0;  ///< dim c^* / span(N)
    Eigen::VectorXd multipliers;    ///< mu_i >= 1 with sum mu_i pbar_i = 0 (balanced)
    Eigen::VectorXd functional;     ///< f vanishing on N with f(p_i) >= 0, f != 0 (unbalanced)
    std::string reason;
};

namespace detail {

/// Phase-1 simplex for {A x = b, x >= 0} with Bland's rule. Returns x when
/// feasible; otherwise returns nothing and writes y with A^T y >= 0, b^T y < 0.
inline std::optional<Eigen::VectorXd> phase_one(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd& farkas,
                                                double eps = 1e-10) {
    const Eigen::Index m = a.rows(), n = a.cols();
    Eigen::VectorXd flip = Eigen::VectorXd::Ones(m);
    for (Eigen::Index i = 0; i < m; ++i)
        if (b(i) < 0) {
            a.row(i) *= -1;
            b(i) *= -1;
            flip(i) = -1;
        }
    // tableau: m constraint rows plus the objective row; columns x (n), artificials (m), rhs
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    t.topLeftCorner(m, n) = a;
    t.block(0, n, m, m).setIdentity();
    t.topRightCorner(m, 1) = b;
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;
    // reduced costs of min sum(artificials): row m holds c_j - c_B B^{-1} A_j
    for (Eigen::Index j = 0; j < n + m + 1; ++j) t(m, j) = (j >= n && j < n + m ? 1.0 : 0.0) - t.col(j).head(m).sum();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (int iter = 0; iter < 10000; ++iter) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n + m; ++j)
            if (t(m, j) < -eps * scale) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        Eigen::Index leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) {
            if (t(i, enter) <= eps * scale) continue;
            const double ratio = t(i, n + m) / t(i, enter);
            if (ratio < best - eps ||
                (std::abs(ratio - best) <= eps && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) break;  // cannot happen in phase 1: the objective is bounded below
        t.row(leave) /= t(leave, enter);
        for (Eigen::Index i = 0; i <= m; ++i)
            if (i != leave) t.row(i) -= t(i, enter) * t.row(leave);
        basis[static_cast<std::size_t>(leave)] = enter;
    }
    const double infeasibility = -t(m, n + m);
    if (infeasibility <= 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < m; ++i)
            if (basis[static_cast<std::size_t>(i)] < n) x(basis[static_cast<std::size_t>(i)]) = t(i, n + m);
        return x;
    }
    // duals y_i = 1 - reduced cost of artificial i; the certificate is -y in the unflipped rows
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) y(i) = 1.0 - t(m, n + i);
    farkas = -(flip.cwiseProduct(y));
    return std::nullopt;
}

}  // namespace detail

/// Whether 0 is interior to conv(P) + span(N), via the quotient by span(N),
/// a spanning test and the LP {mu >= 1, sum mu_i pbar_i = 0}.
inline BalanceResult balanced(const BalanceProblem& prob, double tol = 1e-9) {
    BalanceResult r;
    const Eigen::Index d = prob.dim;
    if (d < 0) throw DomainError("balanced: negative dimension");
    for (const auto& v : prob.p)
        if (v.size() != d) throw DomainError("balanced: P-vector has the wrong length");
    for (const auto& v : prob.n)
        if (v.size() != d) throw DomainError("balanced: N-vector has the wrong length");

    Eigen::MatrixXd nmat(d, static_cast<Eigen::Index>(prob.n.size()));
    for (std::size_t k = 0; k < prob.n.size(); ++k) nmat.col(static_cast<Eigen::Index>(k)) = prob.n[k];
    const Eigen::MatrixXd span = nmat.cols() == 0 ? Eigen::MatrixXd(d, 0) : orthonormal_span(nmat, tol);
    const Eigen::MatrixXd q = orthogonal_complement(span, d, tol);
    r.quotient_dim = q.cols();
    if (q.cols() == 0) {
        r.balanced = true;
        r.spanning = true;
        r.multipliers = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(prob.p.size()));
        r.reason = "span(N) is the whole space";
        return r;
    }
    const auto np = static_cast<Eigen::Index>(prob.p.size());
    Eigen::MatrixXd pbar(q.cols(), np);
    for (Eigen::Index k = 0; k < np; ++k) pbar.col(k) = q.transpose() * prob.p[static_cast<std::size_t>(k)];

    const Eigen::MatrixXd left = np == 0 ? Eigen::MatrixXd(q.cols(), 0) : pbar;
    const Eigen::MatrixXd perp = np == 0 ? Eigen::MatrixXd::Identity(q.cols(), q.cols())
                                         : nullspace(Eigen::MatrixXd(left.transpose()), tol);
    r.spanning = perp.cols() == 0;
    if (!r.spanning) {
        r.functional = q * perp.col(0);
        r.functional /= r.functional.norm();
        r.reason = np == 0 ? "P is empty and span(N) is a proper subspace"
                           : "P does not span the quotient by span(N)";
        return r;
    }

    Eigen::VectorXd farkas;
    const Eigen::VectorXd rhs = -(pbar * Eigen::VectorXd::Ones(np));
    const auto x = detail::phase_one(pbar, rhs, farkas);
    if (x) {
        r.balanced = true;
        r.multipliers = Eigen::VectorXd::Ones(np) + *x;
        const double res = (pbar * r.multipliers).norm();
        if (res > 1e-7 * std::max(1.0, r.multipliers.norm() * pbar.cwiseAbs().maxCoeff()))
            throw NumericalError("balanced: multiplier certificate fails verification");
        r.reason = "0 is interior to conv(P) + span(N)";
        return r;
    }
    Eigen::VectorXd f = farkas;
    if (f.norm() > 0) f /= f.norm();
    const Eigen::VectorXd values = pbar.transpose() * f;
    if (values.minCoeff() < -1e-8 || values.maxCoeff() <= 1e-10)
        throw NumericalError("balanced: separating functional fails verification");
    r.functional = q * f;
    r.reason = "a linear functional vanishing on N is nonnegative on P";
    return r;
}

/// P and N as torus-coordinate vectors, with the root values they came from.
struct PNClassification {
    std::vector<Eigen::VectorXd> p;
    std::vector<Eigen::VectorXd> n;
    std::vector<Eigen::VectorXcd> p_roots;  ///< representative with T > 0
    std::vector<Eigen::VectorXcd> n_roots;  ///< every orbit member not in +-P
};

/// P: imaginary roots with definite form, sign chosen so T > 0. N: everything else.
inline PNClassification classify_PN(const TorusRootDecomposition& decomp, const std::vector<RootFormReport>& reports) {
    if (reports.size() != decomp.roots().size()) throw DomainError("classify_PN: one report per root is required");
    PNClassification out;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const RootFormReport& r = reports[k];
        const RootDatum& d = decomp.root(k);
        if (r.degenerate) throw NumericalError("classify_PN: root " + std::to_string(k) + " is numerically indefinite");
        if (d.kind == RootKind::Imaginary && r.definite) {
            const Eigen::VectorXcd v = r.signature > 0 ? r.root : Eigen::VectorXcd(-r.root);
            out.p_roots.push_back(v);
            out.p.push_back(v.imag());
            continue;
        }
        for (const auto& mu : d.orbit) {
            out.n_roots.push_back(mu);
            if (mu.real().norm() > decomp.tolerance()) out.n.push_back(mu.real());
            if (mu.imag().norm() > decomp.tolerance()) out.n.push_back(mu.imag());
        }
    }
    return out;
}

/// Whether the roots carrying a nonzero component of u span c^* (x) C.
inline bool smooth_point_check(const std::vector<Eigen::VectorXcd>& roots, const std::vector<double>& component_norms,
                               Eigen::Index torus_dim, double tol = 1e-9) {
    if (roots.size() != component_norms.size()) throw DomainError("smooth_point_check: size mismatch");
    if (torus_dim == 0) return true;
    std::vector<Eigen::VectorXcd> active;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (roots[k].size() != torus_dim) throw DomainError("smooth_point_check: root has the wrong length");
        if (component_norms[k] > tol) active.push_back(roots[k]);
    }
    if (active.empty()) return false;
    Eigen::MatrixXcd m(torus_dim, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = active[k];
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    Eigen::Index rk = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * s(0)) ++rk;
    return rk == torus_dim;
}

/// (1 - chi) dim G + dim R with chi = 2 - 2 genus.
inline long virtual_dimension(int genus, long dim_g, long dim_radical) {
    if (genus < 2) throw DomainError("virtual_dimension: genus must be at least 2");
    const long chi = 2 - 2L * genus;
    return (1 - chi) * dim_g + dim_radical;
}

struct SmoothnessReport {
    Eigen::Index z1 = 0;
    Eigen::Index h0 = 0;
    Eigen::Index h2 = 0;
    long vdim = 0;
    bool smooth = false;
    bool duality_identity = false;  ///< dim Z^1 = dim H^2 + (1 - chi) dim G
};

inline SmoothnessReport smoothness_of_rep(const SurfaceRepresentation& rep, long dim_radical = 0,
                                          const Tolerances& tol = {}) {
    if (!rep.model()) throw DomainError("smoothness_of_rep: representation has no model");
    const CohomologyWorkspace ws(rep.presentation(), adjoint_module(rep), tol);
    SmoothnessReport s;
    s.z1 = ws.dim_z1();
    s.h0 = ws.dim_h0();
    s.h2 = ws.dim_h2();
    const long dim_g = static_cast<long>(rep.model()->dim());
    s.vdim = virtual_dimension(rep.genus(), dim_g, dim_radical);
    s.smooth = s.z1 == s.vdim;
    const long chi = rep.presentation().euler_characteristic();
    s.duality_identity = s.z1 == s.h2 + (1 - chi) * dim_g;
    return s;
}

enum class Verdict { Flexible, Rigid, Inconclusive };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Flexible: return "flexible";
        case Verdict::Rigid: return "rigid";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct RootSummary {
    RootFormReport form;
    bool lagrangian_pair = false;  ///< an invariant Lagrangian pair was found
};

struct FlexibilityReport {
    std::string algebra;
    int genus = 0;
    Eigen::Index dim_g = 0;
    Eigen::Index centralizer_dim = 0;
    ReductivityCertificate reductivity;
    Eigen::Index center_dim = 0;
    std::vector<RootSummary> roots;
    PNClassification pn;
    BalanceResult balance;
    Verdict verdict = Verdict::Inconclusive;
    long genus_threshold = 0;
    bool below_threshold = false;
    std::vector<std::string> notes;
    std::optional<std::string> tube_type_message;
};

/// Centralizer, reductivity, center, roots, forms, P/N, balanced, verdict.
inline FlexibilityReport verdict(const SurfaceRepresentation& rep, const Config& cfg = {}) {
    if (!rep.model()) throw DomainError("verdict: representation has no model");
    const ModelPtr& g = rep.model();
    const Tolerances& tol = cfg.tol;
    FlexibilityReport out;
    out.algebra = g->name();
    out.genus = rep.genus();
    out.dim_g = g->dim();
    out.genus_threshold = 2L * out.dim_g * out.dim_g;
    out.below_threshold = out.genus < out.genus_threshold;
    out.notes.push_back("the criterion is proved for genus >= " + std::to_string(out.genus_threshold) +
                        (out.below_threshold ? "; evaluated at genus " + std::to_string(out.genus) + " below it"
                                             : ""));

    const SubalgebraHandle z = centralizer(g, rep.images(), ElementKind::Group, tol);
    out.centralizer_dim = z.dim();
    out.reductivity = killing_restriction_nondegenerate(z, tol);
    if (!out.reductivity.nondegenerate) {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back("Killing form degenerate on the centralizer: the Zariski closure may not be reductive; "
                            "apply conjugation_limit along a fixed-point direction and rerun");
        return out;
    }
    const SubalgebraHandle c = center_of(z, tol);
    out.center_dim = c.dim();
    const TorusRootDecomposition decomp = decompose(g, c, tol);

    std::mt19937_64 rng(cfg.seed);
    bool degenerate = false;
    for (std::size_t k = 0; k < decomp.roots().size(); ++k) {
        RootSummary s{root_form(rep, decomp, k, tol), false};
        degenerate = degenerate || s.form.degenerate;
        if (s.form.has_signature && s.form.signature == 0 && !s.form.degenerate) {
            Module m;
            for (const auto& a : rep.images())
                m.actions.push_back(restrict_action(g->adjoint_action(a), decomp.root(k).real_space).matrix);
            const Eigen::MatrixXd w = root_module_form(s.form.kind, decomp.root(k).omega);
            if (find_lagrangian_pair(m.actions, w, rng)) {
                s.lagrangian_pair = true;
                s.form.notes.push_back("invariant Lagrangian pair found: Toledo must vanish");
            }
        }
        out.roots.push_back(std::move(s));
    }
    if (degenerate) {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back("numerically indefinite root form; P-membership is uncertain");
        return out;
    }
    std::vector<RootFormReport> forms;
    for (const auto& s : out.roots) forms.push_back(s.form);
    out.pn = classify_PN(decomp, forms);
    out.balance = balanced({decomp.torus_dim(), out.pn.p, out.pn.n});
    out.verdict = out.balance.balanced ? Verdict::Flexible : Verdict::Rigid;
    if (out.verdict == Verdict::Rigid)
        out.tube_type_message =
            "not flexible: the Zariski closure of the image acts transitively on a tube type Hermitian "
            "symmetric space, and the induced action of the surface group is a maximal representation";
    return out;
}

}  // namespace flexcheck

#endif  // FLEXCHECK_FLEXIBILITY_HPP
