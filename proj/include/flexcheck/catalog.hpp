#ifndef FLEXCHECK_CATALOG_HPP
#define FLEXCHECK_CATALOG_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/config.hpp"
#include "flexcheck/lie_algebra.hpp"
#include "flexcheck/linalg.hpp"
#include "flexcheck/scalar.hpp"
#include "flexcheck/surface_group.hpp"

namespace flexcheck {

enum class Stabilized { RealPlane, ComplexLine };

inline std::string stabilized_name(Stabilized s) {
    return s == Stabilized::RealPlane ? "R-plane" : "C-line";
}

/// Ambient field including the documentation-only octonions.
enum class CatalogField { Real, Complex, Quaternion, Octonion };

struct CatalogCase {
    std::string name;
    CatalogField field = CatalogField::Real;
    int m = 2;  ///< ambient o(m, 1, F)
    Stabilized object = Stabilized::RealPlane;
    std::string centralizer_name;
    int centralizer_dim = 0;
    int center_dim = 0;
    std::string expected_verdict;
    bool computed = true;  ///< false for octonionic rows
    std::string note;

    std::string ambient_name() const {
        switch (field) {
            case CatalogField::Real: return "so(" + std::to_string(m) + ",1)";
            case CatalogField::Complex: return "su(" + std::to_string(m) + ",1)";
            case CatalogField::Quaternion: return "sp(" + std::to_string(m) + ",1)";
            case CatalogField::Octonion: return "f4(-20)";
        }
        return "?";
    }
    std::string base_name() const { return object == Stabilized::RealPlane ? "SO(2,1)" : "SU(1,1)"; }
};

inline Field to_field(CatalogField f) {
    switch (f) {
        case CatalogField::Real: return Field::Real;
        case CatalogField::Complex: return Field::Complex;
        case CatalogField::Quaternion: return Field::Quaternion;
        case CatalogField::Octonion: break;
    }
    throw ExcludedError("octonionic cases are documentation-only");
}

inline ClassicalSpec ambient_spec(const CatalogCase& c) {
    switch (c.field) {
        case CatalogField::Real: return {Family::Orthogonal, c.m, 1};
        case CatalogField::Complex: return {Family::SpecialUnitary, c.m, 1};
        case CatalogField::Quaternion: return {Family::SpQuaternion, c.m, 1};
        case CatalogField::Octonion: break;
    }
    throw ExcludedError("octonionic cases are documentation-only");
}

/// Expected centralizer and center of the base subgroup.
inline CatalogCase expected_table(CatalogField field, int m, Stabilized object) {
    CatalogCase c;
    c.field = field;
    c.m = m;
    c.object = object;
    const std::string tag = object == Stabilized::RealPlane ? "rplane" : "cline";
    const std::string ms = std::to_string(m);
    if (field == CatalogField::Octonion) {
        c.name = "f4-" + tag;
        c.computed = false;
        c.centralizer_name = object == Stabilized::RealPlane ? "G2" : "Spin(6)";
        c.centralizer_dim = object == Stabilized::RealPlane ? 14 : 15;
        c.center_dim = 0;
        c.expected_verdict = "flexible";
        c.note = "not computed: octonionic linear algebra is excluded; trivial center implies flexibility";
        return c;
    }
    if (m < 1) throw DomainError("expected_table: m must be positive");
    if (object == Stabilized::RealPlane) {
        if (m < 2) throw DomainError("expected_table: an R-plane needs m >= 2");
        switch (field) {
            case CatalogField::Real:
                c.name = "so" + ms + "1-rplane";
                c.centralizer_name = "O(" + std::to_string(m - 2) + ")";
                c.centralizer_dim = (m - 2) * (m - 3) / 2;
                c.center_dim = m == 4 ? 1 : 0;
                break;
            case CatalogField::Complex:
                c.name = "su" + ms + "1-rplane";
                c.centralizer_name = "S(U(1)xU(" + std::to_string(m - 2) + "))";
                c.centralizer_dim = (m - 2) * (m - 2);
                c.center_dim = m >= 3 ? 1 : 0;
                break;
            case CatalogField::Quaternion:
                c.name = "sp" + ms + "1-rplane";
                c.centralizer_name = "Sp(1)xSp(" + std::to_string(m - 2) + ")";
                c.centralizer_dim = 3 + (m - 2) * (2 * m - 3);
                c.center_dim = 0;
                break;
            case CatalogField::Octonion: break;
        }
        c.expected_verdict = "flexible";
        return c;
    }
    switch (field) {
        case CatalogField::Real: throw DomainError("expected_table: a C-line needs F = C or H");
        case CatalogField::Complex:
            if (m < 2) throw DomainError("expected_table: su(m,1) C-line cases need m >= 2");
            c.name = "su" + ms + "1-cline";
            c.centralizer_name = "S(U(1)xU(" + std::to_string(m - 1) + "))";
            c.centralizer_dim = (m - 1) * (m - 1);
            c.center_dim = 1;
            c.expected_verdict = "rigid";
            c.note = "rigid because the Fuchsian base representation is maximal";
            break;
        case CatalogField::Quaternion:
            c.name = "sp" + ms + "1-cline";
            c.centralizer_name = "U(1)xSp(" + std::to_string(m - 1) + ")";
            c.centralizer_dim = 1 + (m - 1) * (2 * m - 1);
            c.center_dim = 1;
            c.expected_verdict = "flexible";
            break;
        case CatalogField::Octonion: break;
    }
    return c;
}

/// Every catalog row: classical cases up to m = 4 (R, C) and m = 3 (H), then the octonionic rows.
inline std::vector<CatalogCase> catalog_cases() {
    std::vector<CatalogCase> out;
    for (int m = 2; m <= 4; ++m) out.push_back(expected_table(CatalogField::Real, m, Stabilized::RealPlane));
    for (int m = 2; m <= 4; ++m) out.push_back(expected_table(CatalogField::Complex, m, Stabilized::RealPlane));
    for (int m = 2; m <= 3; ++m) out.push_back(expected_table(CatalogField::Quaternion, m, Stabilized::RealPlane));
    for (int m = 2; m <= 4; ++m) out.push_back(expected_table(CatalogField::Complex, m, Stabilized::ComplexLine));
    for (int m = 1; m <= 3; ++m) out.push_back(expected_table(CatalogField::Quaternion, m, Stabilized::ComplexLine));
    out.push_back(expected_table(CatalogField::Octonion, 2, Stabilized::RealPlane));
    out.push_back(expected_table(CatalogField::Octonion, 2, Stabilized::ComplexLine));
    return out;
}

inline std::optional<CatalogCase> find_case(const std::string& name) {
    for (const auto& c : catalog_cases())
        if (c.name == name) return c;
    return std::nullopt;
}

/// Map SL(2,R) elements into the ambient group: through SO(2,1) on the last three
/// coordinates (R-plane) or through SU(1,1) = C SL(2,R) C^{-1} on the last two (C-line).
inline std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> embed_base(const CatalogCase& c) {
    const Field f = to_field(c.field);
    const int n = c.m + 1;
    if (c.object == Stabilized::RealPlane) {
        if (n < 3) throw DomainError("embed_base: ambient too small for an R-plane");
        return [n, f](const Eigen::MatrixXd& a) {
            Eigen::MatrixXd big = Eigen::MatrixXd::Identity(n, n);
            big.bottomRightCorner(3, 3) = sl2_to_so21(a);
            return realify(big, f);
        };
    }
    if (f == Field::Real) throw DomainError("embed_base: a C-line needs F = C or H");
    return [n, f](const Eigen::MatrixXd& a) {
        const Eigen::Matrix2cd cm = cayley();
        Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(n, n);
        big.bottomRightCorner(2, 2) = cm * a.cast<cplx>() * cm.inverse();
        return realify(big, f);
    };
}

/// The Fuchsian genus-g representation composed with the case's embedding.
inline SurfaceRepresentation catalog_representation(const CatalogCase& c, int genus, const Config& cfg = {}) {
    if (!c.computed) throw ExcludedError("catalog: " + c.name + " is documentation-only");
    const ModelPtr g = build_classical(ambient_spec(c), cfg);
    return fuchsian(genus).compose(embed_base(c), g, false, cfg.tol.group);
}

/// Lie algebra of the embedded base subgroup, as realified ambient matrices.
inline std::vector<Eigen::MatrixXd> base_algebra(const CatalogCase& c) {
    const Field f = to_field(c.field);
    const int n = c.m + 1;
    std::vector<Eigen::MatrixXd> out;
    if (c.object == Stabilized::RealPlane) {
        // so(2,1) for diag(1, 1, -1)
        const int idx[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (const auto& ij : idx) {
            Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
            const Eigen::Index i = n - 3 + ij[0], j = n - 3 + ij[1];
            const double sign = ij[1] == 2 ? 1.0 : -1.0;
            x(i, j) = sign;
            x(j, i) = 1.0;
            out.push_back(realify(x, f));
        }
        return out;
    }
    if (f == Field::Real) throw DomainError("base_algebra: a C-line needs F = C or H");
    // su(1,1) for diag(1, -1)
    const cplx i(0, 1);
    std::vector<Eigen::Matrix2cd> gens(3, Eigen::Matrix2cd::Zero());
    gens[0] << i, 0, 0, -i;
    gens[1] << 0, 1, 1, 0;
    gens[2] << 0, i, -i, 0;
    for (const auto& g : gens) {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
        x.bottomRightCorner(2, 2) = g;
        out.push_back(realify(x, f));
    }
    return out;
}

/// The three blocks of o(m, q, F) = o(m-p, F) + o(p, q, F) + Hom_F(F^{m-p}, F^{p+q}),
/// as orthonormal bases in model coordinates.
struct SplitSo {
    ModelPtr model;
    int m = 0, q = 0, p = 0;
    Field field = Field::Real;
    Eigen::MatrixXd compact;  ///< o(m-p, F), top-left block
    Eigen::MatrixXd base;     ///< o(p, q, F), bottom-right block
    Eigen::MatrixXd hom;      ///< off-diagonal blocks

    int dim_compact() const { return static_cast<int>(compact.cols()); }
    int dim_base() const { return static_cast<int>(base.cols()); }
    int dim_hom() const { return static_cast<int>(hom.cols()); }
};

namespace detail {

/// Model elements supported on `mask` (realified entries with mask == 1).
inline Eigen::MatrixXd supported_on(const LieAlgebraModel& g, const Eigen::MatrixXd& mask, double tol) {
    const Eigen::Index nr = g.real_size();
    Eigen::MatrixXd outside(nr * nr, g.dim());
    const Eigen::VectorXd keep = mask.reshaped();
    for (Eigen::Index k = 0; k < g.dim(); ++k)
        outside.col(k) = g.flat_basis().col(k).cwiseProduct((1.0 - keep.array()).matrix());
    return nullspace(outside, tol);
}

}  // namespace detail

inline SplitSo splitso(int m, int q, CatalogField field, int p, const Config& cfg = {}) {
    if (field == CatalogField::Octonion) throw ExcludedError("splitso: octonionic algebras are excluded");
    if (p <= 0 || p >= m) throw DomainError("splitso: need 0 < p < m");
    SplitSo s;
    s.m = m;
    s.q = q;
    s.p = p;
    s.field = to_field(field);
    const Family fam = field == CatalogField::Real      ? Family::Orthogonal
                       : field == CatalogField::Complex ? Family::Unitary
                                                        : Family::SpQuaternion;
    s.model = build_classical({fam, m, q}, cfg);
    const int d = field_degree(s.field);
    const Eigen::Index a = static_cast<Eigen::Index>(d) * (m - p);
    const Eigen::Index n = static_cast<Eigen::Index>(d) * (m + q);
    Eigen::MatrixXd top = Eigen::MatrixXd::Zero(n, n), bottom = top, off = top;
    top.topLeftCorner(a, a).setOnes();
    bottom.bottomRightCorner(n - a, n - a).setOnes();
    off.topRightCorner(a, n - a).setOnes();
    off.bottomLeftCorner(n - a, a).setOnes();
    s.compact = detail::supported_on(*s.model, top, cfg.tol.rank);
    s.base = detail::supported_on(*s.model, bottom, cfg.tol.rank);
    s.hom = detail::supported_on(*s.model, off, cfg.tol.rank);
    if (s.compact.cols() + s.base.cols() + s.hom.cols() != s.model->dim())
        throw NumericalError("splitso: block dimensions do not sum to dim " + std::to_string(s.model->dim()));
    return s;
}

/// Realified form diag(I_p, -I_q) of the second block.
inline Eigen::MatrixXd base_form(const SplitSo& s) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(s.p + s.q, s.p + s.q);
    for (int i = 0; i < s.p + s.q; ++i) e(i, i) = i < s.p ? 1.0 : -1.0;
    return realify(e, s.field);
}

/// The Hom-block element [[0, -B^* e], [B, 0]] for a realified B : F^{m-p} -> F^{p+q}.
inline Eigen::MatrixXd hom_element(const SplitSo& s, const Eigen::MatrixXd& b) {
    const int d = field_degree(s.field);
    const Eigen::Index a = static_cast<Eigen::Index>(d) * (s.m - s.p);
    const Eigen::Index rest = static_cast<Eigen::Index>(d) * (s.p + s.q);
    if (b.rows() != rest || b.cols() != a) throw DomainError("hom_element: block has the wrong size");
    const Eigen::MatrixXd e = base_form(s);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(a + rest, a + rest);
    x.topRightCorner(a, rest) = -b.transpose() * e;
    x.bottomLeftCorner(rest, a) = b;
    return x;
}

/// Closed form of [X_B, X_C]: diag(C^* e B - B^* e C, C B^* e - B C^* e).
inline Eigen::MatrixXd hom_bracket_closed_form(const SplitSo& s, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c) {
    const int d = field_degree(s.field);
    const Eigen::Index a = static_cast<Eigen::Index>(d) * (s.m - s.p);
    const Eigen::Index rest = static_cast<Eigen::Index>(d) * (s.p + s.q);
    const Eigen::MatrixXd e = base_form(s);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a + rest, a + rest);
    out.topLeftCorner(a, a) = c.transpose() * e * b - b.transpose() * e * c;
    out.bottomRightCorner(rest, rest) = c * b.transpose() * e - b * c.transpose() * e;
    return out;
}

}  // namespace flexcheck

#endif  // FLEXCHECK_CATALOG_HPP
