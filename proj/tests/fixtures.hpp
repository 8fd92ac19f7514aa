#ifndef FLEXCHECK_TESTS_FIXTURES_HPP
#define FLEXCHECK_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/lie_algebra.hpp"
#include "flexcheck/subalgebra.hpp"

namespace fixtures {

using flexcheck::cplx;

/// su(1,1) generators (e = diag(1,-1)): i diag(1,-1), [[0,1],[1,0]], [[0,i],[-i,0]].
inline std::vector<Eigen::MatrixXcd> su11() {
    const cplx i(0, 1);
    std::vector<Eigen::MatrixXcd> g(3, Eigen::MatrixXcd::Zero(2, 2));
    g[0](0, 0) = i;
    g[0](1, 1) = -i;
    g[1](0, 1) = 1;
    g[1](1, 0) = 1;
    g[2](0, 1) = i;
    g[2](1, 0) = -i;
    return g;
}

/// so(2,1) generators for the form diag(1,1,-1).
inline std::vector<Eigen::MatrixXd> so21() {
    std::vector<Eigen::MatrixXd> g(3, Eigen::MatrixXd::Zero(3, 3));
    g[0](0, 1) = -1;
    g[0](1, 0) = 1;
    g[1](0, 2) = 1;
    g[1](2, 0) = 1;
    g[2](1, 2) = 1;
    g[2](2, 1) = 1;
    return g;
}

/// Realified su(1,1) placed in the last two rows/columns of an n x n matrix over F.
inline std::vector<Eigen::MatrixXd> su11_block(int n, flexcheck::Field f) {
    std::vector<Eigen::MatrixXd> out;
    for (const auto& x : su11()) {
        Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(n, n);
        big.bottomRightCorner(2, 2) = x;
        out.push_back(flexcheck::realify(big, f));
    }
    return out;
}

/// Realified so(2,1) placed in the last three rows/columns of an n x n matrix over F.
inline std::vector<Eigen::MatrixXd> so21_block(int n, flexcheck::Field f) {
    std::vector<Eigen::MatrixXd> out;
    for (const auto& x : so21()) {
        Eigen::MatrixXd big = Eigen::MatrixXd::Zero(n, n);
        big.bottomRightCorner(3, 3) = x;
        out.push_back(flexcheck::realify(big, f));
    }
    return out;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    Eigen::VectorXd v(n);
    for (auto& c : v) c = d(rng);
    return v;
}

}  // namespace fixtures

#endif
