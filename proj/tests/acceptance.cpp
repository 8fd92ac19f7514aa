// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flexcheck/catalog.hpp"
#include "flexcheck/flexibility.hpp"

using namespace flexcheck;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Pipeline {
    SurfaceRepresentation rep;
    TorusRootDecomposition decomp;
};

Pipeline pipeline(const std::string& name, int genus = 2) {
    SurfaceRepresentation rep = catalog_representation(*find_case(name), genus);
    const SubalgebraHandle z = centralizer(rep.model(), rep.images(), ElementKind::Group);
    return {rep, decompose(rep.model(), center_of(z))};
}

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(rng);
    return v;
}

Eigen::MatrixXd symplectic2() {
    Eigen::MatrixXd j(2, 2);
    j << 0, 1, -1, 0;
    return j;
}

/// Index of the representative root with the given real dimension.
std::size_t root_with_dim(const TorusRootDecomposition& d, Eigen::Index dim) {
    for (std::size_t k = 0; k < d.roots().size(); ++k)
        if (d.root(k).real_dim() == dim) return k;
    throw DomainError("no root of real dimension " + std::to_string(dim));
}

void criterion1(Outcome& o) {
    const Pipeline p = pipeline("su21-cline");
    o.require(p.decomp.roots().size() == 1, "exactly one root");
    const RootFormReport r = root_form(p.rep, p.decomp, 0);
    const FlexibilityReport v = verdict(p.rep);
    const double chi = p.rep.presentation().euler_characteristic();
    o.detail << "kind " << root_kind_name(r.kind) << ", dim " << r.root_dim << ", h1 " << r.h1_dim << ", sig "
             << r.signature << ", T " << r.toledo << ", slack " << r.slack << ", gap " << r.nondegeneracy
             << ", verdict " << verdict_name(v.verdict);
    o.require(r.kind == RootKind::Imaginary, "imaginary");
    o.require(r.root_dim == 4 && r.h1_dim == 8, "dims 4 and 8");
    o.require(r.definite && std::abs(r.signature) == 8, "definite form");
    o.require(std::abs(r.toledo) == 2 && std::abs(r.toledo) == -chi, "T = 2 = -chi");
    o.require(r.slack == 0.0, "slack 0");
    o.require(r.nondegeneracy >= 1e-6, "eigenvalue gap");
    o.require(v.verdict == Verdict::Rigid, "rigid");
}

void criterion2(Outcome& o) {
    const Pipeline p = pipeline("so41-rplane");
    o.require(p.decomp.roots().size() == 1, "unique root");
    const RootFormReport r = root_form(p.rep, p.decomp, 0);
    const SplitSo s = splitso(4, 1, CatalogField::Real, 2);
    const LieAlgebraModel& g = *p.rep.model();
    const Eigen::MatrixXd& v = p.decomp.root(0).real_space;
    Eigen::MatrixXd l1(v.cols(), 3), l2(v.cols(), 3);
    double outside = 0.0;
    for (int k = 0; k < 3; ++k) {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 2);
        b(k, 0) = 1;
        const Eigen::VectorXd x1 = g.coords(hom_element(s, b));
        b.setZero();
        b(k, 1) = 1;
        const Eigen::VectorXd x2 = g.coords(hom_element(s, b));
        l1.col(k) = v.transpose() * x1;
        l2.col(k) = v.transpose() * x2;
        outside = std::max({outside, (x1 - v * l1.col(k)).norm(), (x2 - v * l2.col(k)).norm()});
    }
    std::vector<Eigen::MatrixXd> actions;
    for (const auto& a : p.rep.images()) actions.push_back(restrict_action(g.adjoint_action(a), v).matrix);
    const bool pair = lagrangian_pair_check(actions, root_module_form(r.kind, p.decomp.root(0).omega), l1, l2);
    const FlexibilityReport f = verdict(p.rep);
    o.detail << "dim " << r.root_dim << ", Hom(R^2,R^3) residual " << outside << ", Lagrangian pair "
             << (pair ? "yes" : "no") << ", sig " << r.signature << ", T " << r.toledo << ", balanced "
             << (f.balance.balanced ? "yes" : "no") << ", verdict " << verdict_name(f.verdict);
    o.require(r.root_dim == 6 && outside <= 1e-9, "root space is Hom(R^2,R^3)");
    o.require(pair, "Lagrangian pair");
    o.require(r.signature == 0 && r.toledo == 0, "signature and T vanish");
    o.require(f.balance.balanced && f.pn.p.empty(), "balanced with N spanning");
    o.require(f.verdict == Verdict::Flexible, "flexible");
}

void criterion3(Outcome& o) {
    const Pipeline p = pipeline("sp21-cline");
    const FlexibilityReport f = verdict(p.rep);
    const std::size_t so = root_with_dim(p.decomp, 6), hom = root_with_dim(p.decomp, 8);
    const RootFormReport rs = root_form(p.rep, p.decomp, so), rh = root_form(p.rep, p.decomp, hom);
    // the 6-dimensional root should be the so(4,1) module: compare normalized Gram spectra
    const Pipeline q = pipeline("so41-rplane");
    const RootFormReport ref = root_form(q.rep, q.decomp, 0);
    const auto spectrum = [](const Eigen::MatrixXd& m) {
        Eigen::VectorXd e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
        return Eigen::VectorXd(e / e.cwiseAbs().maxCoeff());
    };
    const double match = (spectrum(rs.gram) - spectrum(ref.gram)).cwiseAbs().maxCoeff();
    o.detail << "verdict " << verdict_name(f.verdict) << "; 2l root: dim " << rs.root_dim << ", sig " << rs.signature
             << ", T " << rs.toledo << ", so(4,1) spectrum match " << match << "; Hom root: dim " << rh.root_dim
             << ", sig " << rh.signature << ", T " << rh.toledo;
    o.require(f.verdict == Verdict::Flexible, "flexible");
    o.require(rs.signature == 0 && rs.toledo == 0 && match <= 1e-6, "so(4,1) reduction");
    o.require(rh.toledo == 0, "Hom-block T = 0");
}

void criterion4(Outcome& o) {
    const Pipeline p2 = pipeline("su21-cline"), p3 = pipeline("su31-cline");
    const RootFormReport r2 = root_form(p2.rep, p2.decomp, 0), r3 = root_form(p3.rep, p3.decomp, 0);
    o.detail << "T(m=2) " << r2.toledo << ", T(m=3) " << r3.toledo;
    o.require(p2.decomp.roots().size() == 1 && p3.decomp.roots().size() == 1, "unique roots");
    o.require(std::abs(r3.toledo) == 2 * std::abs(r2.toledo) && r2.toledo != 0, "T(3) = 2 T(2)");
}

void criterion5(Outcome& o) {
    const SurfaceRepresentation rep = fuchsian_genus2();
    const RootFormReport base = module_form(rep.presentation(), standard_module(rep), symplectic2());
    std::mt19937_64 rng(5);
    int ok = 0;
    double min_slack = 1e9, worst_relator = 0.0;
    for (int k = 0; k < 50; ++k) {
        const SurfaceRepresentation q = perturbed(rep, 0.05, rng);
        worst_relator = std::max(worst_relator, q.relator_residual());
        const RootFormReport r = module_form(q.presentation(), standard_module(q), symplectic2());
        min_slack = std::min(min_slack, r.slack);
        if (r.slack >= 0.0 && r.signature % 4 == 0) ++ok;
    }
    o.detail << "|sig| " << std::abs(base.signature) << ", |T| " << std::abs(base.toledo) << "; perturbations "
             << ok << "/50 ok, min slack " << min_slack << ", max relator residual " << worst_relator;
    o.require(std::abs(base.signature) == 4 && std::abs(base.toledo) == 1, "|sig| 4, |T| 1");
    o.require(ok == 50, "all perturbations satisfy Milnor-Wood and Meyer");
    o.require(worst_relator <= 1e-10, "perturbations satisfy the relator");
}

void criterion6(Outcome& o) {
    std::mt19937_64 rng(6);
    double worst_bracket = 0.0, worst_dual = 0.0;
    for (const char* name : {"su21-cline", "so41-rplane", "sp21-cline"}) {
        const Pipeline p = pipeline(name);
        const LieAlgebraModel& g = *p.rep.model();
        const Eigen::MatrixXd& t = p.decomp.torus_basis();
        const Eigen::MatrixXd& b = g.killing_matrix();
        const Eigen::MatrixXd gram = t.transpose() * b * t;
        for (const auto& root : p.decomp.roots()) {
            const Eigen::VectorXcd tl = t.cast<cplx>() * root.t;
            for (Eigen::Index k = 0; k < t.cols(); ++k) {
                const cplx v = (tl.transpose() * b.cast<cplx>() * t.col(k).cast<cplx>())(0, 0);
                worst_dual = std::max(worst_dual, std::abs(v - root.values(k)));
            }
            for (int n = 0; n < 100; ++n) {
                const Eigen::VectorXd x = random_vector(root.real_dim(), rng), y = random_vector(root.real_dim(), rng);
                const Eigen::MatrixXd br =
                    LieAlgebraModel::bracket(g.element(root.real_space * x), g.element(root.real_space * y));
                const Eigen::VectorXd z = g.coords(br);
                const Eigen::VectorXd lhs = t * gram.inverse() * (t.transpose() * b * z);
                const cplx om = (x.transpose().cast<cplx>() * root.omega * y.cast<cplx>())(0, 0);
                worst_bracket = std::max(worst_bracket, (lhs - (om * tl).real()).cwiseAbs().maxCoeff());
            }
        }
    }
    o.detail << "bracket residual " << worst_bracket << ", B(t_l, t) - l(t) residual " << worst_dual;
    o.require(worst_bracket <= 1e-8, "bracket identity");
    o.require(worst_dual <= 1e-9, "root vectors");
}

void criterion7(Outcome& o) {
    struct Item {
        std::string name;
        SurfaceGroupPresentation pres;
        Module module;
        Eigen::MatrixXd form;
    };
    std::vector<Item> items;
    for (const char* name : {"su21-cline", "so41-rplane", "sp21-cline", "su31-cline"}) {
        const Pipeline p = pipeline(name);
        items.push_back({std::string(name) + " ad", p.rep.presentation(), adjoint_module(p.rep),
                         p.rep.model()->killing_matrix()});
        for (std::size_t k = 0; k < p.decomp.roots().size(); ++k) {
            const RootDatum& d = p.decomp.root(k);
            items.push_back({std::string(name) + " root " + std::to_string(k), p.rep.presentation(),
                             restricted_adjoint_module(p.rep, d.real_space), root_module_form(d.kind, d.omega)});
        }
    }
    const SurfaceRepresentation f = fuchsian_genus2();
    items.push_back({"sl2 standard", f.presentation(), standard_module(f), symplectic2()});
    int ok = 0;
    double worst = 0.0;
    for (const Item& it : items) {
        const CohomologyWorkspace ws(it.pres, it.module);
        const long chi = it.pres.euler_characteristic(), n = static_cast<long>(it.module.dim());
        const bool euler = static_cast<long>(ws.dim_h0() - ws.dim_h1() + ws.dim_h2()) == chi * n;
        const bool z1 = static_cast<long>(ws.dim_z1()) == static_cast<long>(ws.dim_h2()) + (1 - chi) * n;
        if (ws.dim_b1() > 0) {
            const double scale = std::max(1.0, it.form.cwiseAbs().maxCoeff());
            worst = std::max(worst, ws.cup_gram(it.form, ws.b1(), ws.z1()).cwiseAbs().maxCoeff() / scale);
            worst = std::max(worst, ws.cup_gram(it.form, ws.z1(), ws.b1()).cwiseAbs().maxCoeff() / scale);
        }
        if (euler && z1) ++ok;
        else o.detail << it.name << " identity mismatch; ";
    }
    o.detail << ok << "/" << items.size() << " modules satisfy both identities, coboundary pairing " << worst;
    o.require(ok == static_cast<int>(items.size()), "dimension identities");
    o.require(worst <= 1e-9, "coboundaries pair to zero");
}

void criterion8(Outcome& o) {
    const SplitSo s = splitso(4, 1, CatalogField::Real, 2);
    o.detail << "o(4,1) p=2: " << s.dim_compact() << "+" << s.dim_base() << "+" << s.dim_hom() << "="
             << s.model->dim();
    o.require(s.dim_compact() == 1 && s.dim_base() == 3 && s.dim_hom() == 6 && s.model->dim() == 10, "dims");
    std::mt19937_64 rng(8);
    struct Case {
        int m, q, p;
        CatalogField f;
        const char* label;
    };
    for (const Case c : {Case{4, 1, 2, CatalogField::Real, "o(4,1)"}, Case{2, 1, 1, CatalogField::Complex, "u(2,1)"},
                         Case{2, 1, 1, CatalogField::Quaternion, "sp(2,1)"}}) {
        const SplitSo sp = splitso(c.m, c.q, c.f, c.p);
        const int d = field_degree(sp.field);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const auto block = [&] {
                FieldMatrix m(sp.field, c.p + c.q, c.m - c.p);
                for (int i = 0; i < m.rows(); ++i)
                    for (int j = 0; j < m.cols(); ++j) {
                        const Eigen::VectorXd v = random_vector(d, rng);
                        m(i, j) = d == 1 ? Scalar::real(v(0))
                                  : d == 2 ? Scalar::complex(v(0), v(1))
                                           : Scalar::quaternion(v(0), v(1), v(2), v(3));
                    }
                return realify(m).real;
            };
            const Eigen::MatrixXd b = block(), cc = block();
            const Eigen::MatrixXd br = LieAlgebraModel::bracket(hom_element(sp, b), hom_element(sp, cc));
            worst = std::max(worst, (br - hom_bracket_closed_form(sp, b, cc)).cwiseAbs().maxCoeff());
        }
        o.detail << ", " << c.label << " closed form " << worst;
        o.require(worst <= 1e-10, std::string(c.label) + " closed form");
    }
}

Eigen::VectorXd v2(double a, double b) { return Eigen::Vector2d(a, b); }

void criterion9(Outcome& o) {
    const auto v1 = [](double a) { return Eigen::VectorXd::Constant(1, a); };
    struct Example {
        BalanceProblem prob;
        bool expected;
    };
    const std::vector<Example> examples = {
        {{1, {v1(3)}, {}}, false},
        {{1, {}, {v1(1)}}, true},
        {{2, {v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)}, {}}, true},
    };
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> pos(0.1, 10.0);
    int direct = 0, moved = 0, total = 0;
    for (const auto& e : examples) {
        const BalanceResult r = balanced(e.prob);
        if (r.balanced == e.expected) ++direct;
        for (int k = 0; k < 20; ++k) {
            Eigen::MatrixXd l;
            do l = Eigen::MatrixXd::NullaryExpr(e.prob.dim, e.prob.dim, [&] { return random_vector(1, rng)(0); });
            while (std::abs(l.determinant()) < 0.1);
            BalanceProblem m{e.prob.dim, {}, {}};
            for (const auto& p : e.prob.p) m.p.push_back(pos(rng) * (l * p));
            for (const auto& n : e.prob.n) m.n.push_back(l * n);
            ++total;
            if (balanced(m).balanced == e.expected) ++moved;
        }
    }
    o.detail << direct << "/3 examples, " << moved << "/" << total << " transformed instances";
    o.require(direct == 3 && moved == total, "balanced answers");
}

void criterion10(Outcome& o) {
    int checked = 0, matched = 0;
    for (const auto& c : catalog_cases()) {
        if (!c.computed) continue;
        const bool in_range = c.field == CatalogField::Quaternion ? c.m <= 3 : c.m <= 4;
        if (!in_range) continue;
        ++checked;
        const SurfaceRepresentation rep = catalog_representation(c, 2);
        const Eigen::Index dim = centralizer(rep.model(), rep.images(), ElementKind::Group).dim();
        if (dim == c.centralizer_dim) ++matched;
        else o.detail << c.name << " computed " << dim << " expected " << c.centralizer_dim << "; ";
    }
    o.detail << matched << "/" << checked << " classical cases match";
    o.require(checked > 0 && matched == checked, "centralizer table");
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        double budget_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"su(2,1) rigid example", 10, criterion1},
        {"so(4,1) flexible example", 10, criterion2},
        {"sp(2,1) C-line case", 30, criterion3},
        {"su(3,1) C-line scaling", 10, criterion4},
        {"Meyer/Milnor-Wood suite", 60, criterion5},
        {"torus bracket identity", 60, criterion6},
        {"cohomology dimensions", 60, criterion7},
        {"split decomposition of o(m,q,F)", 60, criterion8},
        {"balanced sets", 60, criterion9},
        {"centralizer table", 300, criterion10},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[k].run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > criteria[k].budget_s) o.require(false, "runtime budget");
        if (!o.pass) ++failures;
        std::printf("%s %2zu %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].title, secs,
                    o.detail.str().c_str());
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
