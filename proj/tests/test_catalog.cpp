#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "flexcheck/catalog.hpp"
#include "flexcheck/subalgebra.hpp"

using namespace flexcheck;

namespace {

/// Random realified F-matrix of the given size.
Eigen::MatrixXd random_block(Field f, int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    FieldMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            switch (f) {
                case Field::Real: m(i, j) = Scalar::real(nd(rng)); break;
                case Field::Complex: m(i, j) = Scalar::complex(nd(rng), nd(rng)); break;
                case Field::Quaternion: m(i, j) = Scalar::quaternion(nd(rng), nd(rng), nd(rng), nd(rng)); break;
            }
        }
    return realify(m).real;
}

/// Oracle centralizer dimension: the kernel of X -> A X A^{-1} - X for all images,
/// counted with a full-pivot LU rank instead of an SVD.
Eigen::Index centralizer_oracle(const ModelPtr& g, const std::vector<Eigen::MatrixXd>& images) {
    const Eigen::Index d = g->dim();
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(images.size()) * g->real_size() * g->real_size(), d);
    Eigen::Index row = 0;
    for (const auto& a : images) {
        const Eigen::MatrixXd ai = a.inverse();
        for (Eigen::Index k = 0; k < d; ++k) {
            const Eigen::MatrixXd x = g->basis(k);
            stacked.block(row, k, x.size(), 1) = (a * x * ai - x).reshaped();
        }
        row += g->real_size() * g->real_size();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu2(stacked);
    lu2.setThreshold(1e-8);
    return d - lu2.rank();
}

}  // namespace

TEST(Splitso, RealPlaneDims) {
    const SplitSo s = splitso(4, 1, CatalogField::Real, 2);
    EXPECT_EQ(s.dim_compact(), 1);
    EXPECT_EQ(s.dim_base(), 3);
    EXPECT_EQ(s.dim_hom(), 6);
    EXPECT_EQ(s.model->dim(), 10);
}

TEST(Splitso, UnitaryDims) {
    const SplitSo s = splitso(2, 1, CatalogField::Complex, 1);
    EXPECT_EQ(s.dim_compact(), 1);
    EXPECT_EQ(s.dim_base(), 4);
    EXPECT_EQ(s.dim_hom(), 4);
    EXPECT_EQ(s.model->dim(), 9);
}

TEST(Splitso, BlocksAreSubalgebras) {
    for (const auto f : {CatalogField::Real, CatalogField::Complex, CatalogField::Quaternion}) {
        const SplitSo s = splitso(f == CatalogField::Real ? 4 : 2, 1, f, f == CatalogField::Real ? 2 : 1);
        EXPECT_TRUE(SubalgebraHandle(s.model, s.compact).closed());
        EXPECT_TRUE(SubalgebraHandle(s.model, s.base).closed());
        EXPECT_FALSE(SubalgebraHandle(s.model, s.hom).closed());
    }
}

TEST(Splitso, HomBracketClosedForm) {
    std::mt19937_64 rng(51);
    struct Case {
        int m, q, p;
        CatalogField f;
    };
    for (const Case c : {Case{4, 1, 2, CatalogField::Real}, Case{2, 1, 1, CatalogField::Complex},
                         Case{2, 1, 1, CatalogField::Quaternion}}) {
        const SplitSo s = splitso(c.m, c.q, c.f, c.p);
        double worst = 0.0, member = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Eigen::MatrixXd b = random_block(s.field, c.p + c.q, c.m - c.p, rng);
            const Eigen::MatrixXd cc = random_block(s.field, c.p + c.q, c.m - c.p, rng);
            const Eigen::MatrixXd x = hom_element(s, b), y = hom_element(s, cc);
            member = std::max(member, s.model->span_residual(x));
            const Eigen::MatrixXd br = LieAlgebraModel::bracket(x, y);
            worst = std::max(worst, (br - hom_bracket_closed_form(s, b, cc)).cwiseAbs().maxCoeff());
        }
        EXPECT_LE(worst, 1e-10);
        EXPECT_LE(member, 1e-10);
    }
}

TEST(Splitso, Exclusions) {
    EXPECT_THROW(splitso(4, 1, CatalogField::Octonion, 2), ExcludedError);
    EXPECT_THROW(splitso(4, 1, CatalogField::Real, 4), DomainError);
    EXPECT_THROW(splitso(4, 1, CatalogField::Real, 0), DomainError);
}

TEST(Embedding, HomomorphismOnRandomWords) {
    std::mt19937_64 rng(52);
    const SurfaceRepresentation f = fuchsian_genus2();
    for (const char* name : {"su21-cline", "so41-rplane", "sp21-cline", "su31-rplane"}) {
        const CatalogCase c = *find_case(name);
        const auto embed = embed_base(c);
        const ModelPtr g = build_classical(ambient_spec(c));
        std::uniform_int_distribution<int> pick(0, 3);
        for (int k = 0; k < 20; ++k) {
            const Eigen::MatrixXd a = f.image(pick(rng)), b = f.image(pick(rng));
            EXPECT_LE((embed(a * b) - embed(a) * embed(b)).cwiseAbs().maxCoeff(), 1e-8) << name;
            EXPECT_LE(g->group_relation_residual(embed(a)), 1e-8) << name;
        }
        EXPECT_LE(catalog_representation(c, 2).relator_residual(), 1e-8) << name;
        // the base algebra lies in the ambient algebra and is 3-dimensional
        for (const auto& x : base_algebra(c)) EXPECT_LE(g->span_residual(x), 1e-10) << name;
    }
}

TEST(Catalog, TableMatchesComputation) {
    for (const auto& c : catalog_cases()) {
        if (!c.computed) {
            EXPECT_THROW(catalog_representation(c, 2), ExcludedError);
            continue;
        }
        const ModelPtr g = build_classical(ambient_spec(c));
        const std::vector<Eigen::MatrixXd> algebra = base_algebra(c);
        const SubalgebraHandle z = centralizer(g, algebra, ElementKind::LieAlgebra);
        EXPECT_EQ(z.dim(), c.centralizer_dim) << c.name;
        EXPECT_EQ(center_of(z).dim(), c.center_dim) << c.name;
        // group-level centralizer of the Fuchsian image and an independent rank count agree
        const SurfaceRepresentation rep = catalog_representation(c, 2);
        EXPECT_EQ(centralizer(g, rep.images(), ElementKind::Group).dim(), c.centralizer_dim) << c.name;
        EXPECT_EQ(centralizer_oracle(g, rep.images()), c.centralizer_dim) << c.name;
    }
}

TEST(Catalog, ExpectedValuesFromTheTables) {
    const CatalogCase so5 = expected_table(CatalogField::Real, 5, Stabilized::RealPlane);
    EXPECT_EQ(so5.centralizer_dim, 3);
    EXPECT_EQ(so5.center_dim, 0);
    EXPECT_EQ(so5.expected_verdict, "flexible");
    EXPECT_EQ(expected_table(CatalogField::Complex, 2, Stabilized::RealPlane).center_dim, 0);
    for (int m = 2; m <= 4; ++m) {
        const CatalogCase c = expected_table(CatalogField::Complex, m, Stabilized::ComplexLine);
        EXPECT_EQ(c.center_dim, 1);
        EXPECT_EQ(c.expected_verdict, "rigid");
    }
    EXPECT_THROW(expected_table(CatalogField::Real, 3, Stabilized::ComplexLine), DomainError);
    EXPECT_FALSE(find_case("f4-rplane")->computed);
    EXPECT_FALSE(find_case("nonexistent").has_value());
}
