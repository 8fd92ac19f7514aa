#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "flexcheck/lie_algebra.hpp"
#include "flexcheck/linalg.hpp"
#include "flexcheck/scalar.hpp"

using namespace flexcheck;

namespace {

Scalar random_quaternion(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return Scalar::quaternion(n(rng), n(rng), n(rng), n(rng));
}

double max_diff(const Scalar& a, const Scalar& b) {
    double r = 0.0;
    for (int k = 0; k < 4; ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return r;
}

}  // namespace

TEST(Quaternion, HamiltonRelations) {
    const Scalar i = Scalar::unit(Field::Quaternion, 1);
    const Scalar j = Scalar::unit(Field::Quaternion, 2);
    const Scalar k = Scalar::unit(Field::Quaternion, 3);
    const Scalar one = Scalar::unit(Field::Quaternion, 0);
    EXPECT_EQ(max_diff(quaternion_multiply(i, j), k), 0.0);
    EXPECT_EQ(max_diff(j * k, i), 0.0);
    EXPECT_EQ(max_diff(k * i, j), 0.0);
    EXPECT_EQ(max_diff(i * i, Scalar::quaternion(-1, 0, 0, 0)), 0.0);
    std::mt19937_64 rng(1);
    const Scalar q = random_quaternion(rng);
    EXPECT_EQ(max_diff(one * q, q), 0.0);
}

TEST(Quaternion, AssociativeAndConjugationReverses) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const Scalar p = random_quaternion(rng), q = random_quaternion(rng), r = random_quaternion(rng);
        EXPECT_LE(max_diff((p * q) * r, p * (q * r)), 1e-15 * 64);
        EXPECT_LE(max_diff((p * q).conj(), q.conj() * p.conj()), 1e-14);
    }
}

TEST(Quaternion, FieldMismatchThrows) {
    EXPECT_THROW(quaternion_multiply(Scalar::complex(1, 0), Scalar::unit(Field::Quaternion, 1)), DomainError);
    EXPECT_THROW(Scalar::complex(1, 1) * Scalar::unit(Field::Quaternion, 2), DomainError);
}

TEST(Realify, ComplexUnitBlock) {
    FieldMatrix m(Field::Complex, 1, 1);
    m(0, 0) = Scalar::complex(0, 1);
    Eigen::MatrixXd expected(2, 2);
    expected << 0, -1, 1, 0;
    EXPECT_EQ(realify(m).real, expected);
}

TEST(Realify, QuaternionBlockCount) {
    const RealizedMatrix r = realify(FieldMatrix::identity(Field::Quaternion, 3));
    EXPECT_EQ(r.real.rows(), 12);
    EXPECT_EQ(r.real.cols(), 12);
    EXPECT_EQ(r.field, Field::Quaternion);
}

TEST(Realify, ComplexProductAgainstStdComplex) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int size : {3, 5}) {
        Eigen::MatrixXcd a(size, size), b(size, size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) {
                a(i, j) = {n(rng), n(rng)};
                b(i, j) = {n(rng), n(rng)};
            }
        // oracle: product in std::complex, then realify entrywise by hand
        const Eigen::MatrixXcd ab = a * b;
        Eigen::MatrixXd oracle(2 * size, 2 * size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) oracle.block(2 * i, 2 * j, 2, 2) << ab(i, j).real(), -ab(i, j).imag(),
                    ab(i, j).imag(), ab(i, j).real();
        const double rel = (realify(a) * realify(b) - oracle).cwiseAbs().maxCoeff() / oracle.cwiseAbs().maxCoeff();
        EXPECT_LE(rel, 1e-12);
        EXPECT_LE((realify(Eigen::MatrixXcd(a + b)) - realify(a) - realify(b)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Realify, QuaternionHomomorphismAndTrace) {
    std::mt19937_64 rng(4);
    FieldMatrix a(Field::Quaternion, 5, 5), b(Field::Quaternion, 5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            a(i, j) = random_quaternion(rng);
            b(i, j) = random_quaternion(rng);
        }
    const Eigen::MatrixXd lhs = realify(a * b).real;
    const Eigen::MatrixXd rhs = realify(a).real * realify(b).real;
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(realify(a).real.trace(), 4.0 * a.trace()[0], 1e-12);
    EXPECT_LE((realify(a.conj_transpose()).real - realify(a).real.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Nullspace, ZeroIdentityAndOuterProduct) {
    EXPECT_EQ(nullspace(Eigen::MatrixXd::Zero(3, 3)).cols(), 3);
    EXPECT_EQ(nullspace(Eigen::MatrixXd::Identity(3, 3)).cols(), 0);
    Eigen::VectorXd u(4), v(4);
    u << 1, 2, -1, 0.5;
    v << 0.3, -1, 2, 1;
    const Eigen::MatrixXd k = nullspace(u * v.transpose());
    ASSERT_EQ(k.cols(), 3);
    EXPECT_LE((k.transpose() * v).norm(), 1e-12);
    EXPECT_LE((k.transpose() * k - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-12);
    EXPECT_THROW(nullspace(Eigen::MatrixXd(3, 0)), DomainError);
}

TEST(Nullspace, RankNullityOnRandomLowRank) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int r = 0; r <= 6; ++r) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(7, 6);
        for (int t = 0; t < r; ++t) {
            Eigen::VectorXd x(7), y(6);
            for (auto& c : x) c = n(rng);
            for (auto& c : y) c = n(rng);
            a += x * y.transpose();
        }
        EXPECT_EQ(rank(a) + nullspace(a).cols(), 6);
        EXPECT_EQ(rank(a), r);
    }
}

TEST(SimultaneousEigenspaces, Rotation) {
    Eigen::MatrixXd j(2, 2);
    j << 0, -1, 1, 0;
    const auto spaces = simultaneous_eigenspaces({j}, 2);
    ASSERT_EQ(spaces.size(), 2u);
    for (const auto& s : spaces) {
        EXPECT_EQ(s.basis.cols(), 1);
        EXPECT_NEAR(std::abs(s.values(0).imag()), 1.0, 1e-12);
        EXPECT_NEAR(s.values(0).real(), 0.0, 1e-12);
    }
}

TEST(SimultaneousEigenspaces, EmptyListGivesWholeSpace) {
    const auto spaces = simultaneous_eigenspaces({}, 4);
    ASSERT_EQ(spaces.size(), 1u);
    EXPECT_EQ(spaces[0].basis.cols(), 4);
    EXPECT_EQ(spaces[0].values.size(), 0);
}

TEST(SimultaneousEigenspaces, Errors) {
    Eigen::MatrixXd a(2, 2), b(2, 2), nil(2, 2);
    a << 1, 0, 0, 2;
    b << 0, 1, 1, 0;
    nil << 0, 1, 0, 0;
    EXPECT_THROW(simultaneous_eigenspaces({a, b}, 2), DomainError);
    EXPECT_THROW(simultaneous_eigenspaces({nil}, 2), NumericalError);
}

TEST(SimultaneousEigenspaces, AdZOnSu21) {
    const ModelPtr g = build_classical({Family::SpecialUnitary, 2, 1});
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
    z(0, 0) = {0, -2};
    z(1, 1) = {0, 1};
    z(2, 2) = {0, 1};
    const Eigen::VectorXd zc = g->coords_checked(realify(z), 1e-12);
    const auto spaces = simultaneous_eigenspaces({g->ad(zc)}, g->dim());
    int dim0 = 0, dim_plus = 0, dim_minus = 0;
    for (const auto& s : spaces) {
        const cplx v = s.values(0);
        EXPECT_NEAR(v.real(), 0.0, 1e-9);
        if (std::abs(v) < 1e-9) dim0 += static_cast<int>(s.basis.cols());
        else if (std::abs(v - cplx(0, 3)) < 1e-9) dim_plus += static_cast<int>(s.basis.cols());
        else if (std::abs(v - cplx(0, -3)) < 1e-9) dim_minus += static_cast<int>(s.basis.cols());
        else ADD_FAILURE() << "unexpected eigenvalue " << v;
    }
    EXPECT_EQ(dim0, 4);
    EXPECT_EQ(dim_plus, 2);
    EXPECT_EQ(dim_minus, 2);
    EXPECT_EQ(dim_plus + dim_minus, 4);  // the +-3i pair realifies to a 4-dimensional real space
}

TEST(SimultaneousEigenspaces, SpectralReconstruction) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> n;
    Eigen::MatrixXd s(5, 5);
    for (auto& c : s.reshaped()) c = n(rng);
    Eigen::VectorXd d(5);
    d << 1, 1, -2, 3, 3;
    const Eigen::MatrixXd a = s * d.asDiagonal() * s.inverse();
    Eigen::MatrixXd b = s * Eigen::VectorXd::LinSpaced(5, 0, 4).asDiagonal() * s.inverse();
    const auto spaces = simultaneous_eigenspaces({a, b}, 5);
    EXPECT_EQ(spaces.size(), 5u);
    const auto proj = spectral_projectors(spaces);
    Eigen::MatrixXcd recon = Eigen::MatrixXcd::Zero(5, 5);
    for (std::size_t k = 0; k < spaces.size(); ++k) recon += spaces[k].values(0) * proj[k];
    EXPECT_LE((recon - a.cast<cplx>()).norm(), 10 * 1e-9 * a.norm());
}
