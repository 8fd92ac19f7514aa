#ifndef FLEXCHECK_LINALG_HPP
#define FLEXCHECK_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/config.hpp"

namespace flexcheck {

using cplx = std::complex<double>;

namespace detail {

template <typename Matrix>
Matrix kernel_from_svd(const Matrix& l, double threshold) {
    const Eigen::Index n = l.cols();
    if (l.rows() == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(l, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > threshold) ++r;
    return svd.matrixV().rightCols(n - r);
}

template <typename Matrix>
double sigma_max(const Matrix& l) {
    if (l.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(l);
    return svd.singularValues()(0);
}

}  // namespace detail

template <typename Derived>
using PlainOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest singular value (spectral norm).
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& a) {
    return detail::sigma_max(PlainOf<Derived>(a));
}

/// Orthonormal basis of ker(L); singular values at or below tol * sigma_max are treated as zero.
template <typename Derived>
PlainOf<Derived> nullspace(const Eigen::MatrixBase<Derived>& expr, double tol = 1e-9) {
    const PlainOf<Derived> l(expr);
    if (l.cols() == 0) throw DomainError("nullspace: empty matrix");
    if (!l.allFinite()) throw DomainError("nullspace: non-finite entries");
    const double smax = detail::sigma_max(l);
    if (smax == 0.0) return PlainOf<Derived>::Identity(l.cols(), l.cols());
    return detail::kernel_from_svd(l, tol * smax);
}

/// Kernel with an absolute singular-value threshold.
template <typename Derived>
PlainOf<Derived> nullspace_abs(const Eigen::MatrixBase<Derived>& expr, double threshold) {
    const PlainOf<Derived> l(expr);
    if (l.cols() == 0) throw DomainError("nullspace: empty matrix");
    return detail::kernel_from_svd(l, threshold);
}

inline int rank(const Eigen::MatrixXd& l, double tol = 1e-9) {
    if (l.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(l);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    int r = 0;
    while (r < s.size() && s(r) > tol * s(0)) ++r;
    return r;
}

/// Orthonormal basis of the column span of `a`.
template <typename Matrix>
Matrix orthonormal_span(const Matrix& a, double tol = 1e-9) {
    if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return Matrix(a.rows(), 0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol * s(0)) ++r;
    return svd.matrixU().leftCols(r);
}

/// Span and kernel for operators of unit scale, such as A - I for group elements A.
/// The threshold is tol * max(1, sigma_max), so a matrix that is pure roundoff has rank 0.
template <typename Matrix>
Matrix orthonormal_span_unit(const Matrix& a, double tol = 1e-9) {
    if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double threshold = tol * std::max(1.0, s(0));
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > threshold) ++r;
    return svd.matrixU().leftCols(r);
}

template <typename Derived>
PlainOf<Derived> nullspace_unit(const Eigen::MatrixBase<Derived>& expr, double tol = 1e-9) {
    const PlainOf<Derived> l(expr);
    if (l.cols() == 0) throw DomainError("nullspace: empty matrix");
    if (!l.allFinite()) throw DomainError("nullspace: non-finite entries");
    return detail::kernel_from_svd(l, tol * std::max(1.0, detail::sigma_max(l)));
}

/// Orthonormal basis of the orthogonal complement of span(a) in R^n.
inline Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& a, Eigen::Index n, double tol = 1e-9) {
    if (a.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd q = orthonormal_span(a, tol);
    if (q.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
    return nullspace_abs(q.transpose(), 0.5);
}

/// Joint eigenvalue tuple and complex eigenspace of a commuting family.
struct JointEigenspace {
    Eigen::VectorXcd values;  ///< one eigenvalue per operator
    Eigen::MatrixXcd basis;   ///< orthonormal columns
};

/// Decompose C^n into joint eigenspaces of pairwise-commuting real operators.
/// Eigenvalues closer than cluster_tol * max||A|| are merged. Throws
/// DomainError for non-commuting input and NumericalError when an operator is
/// not diagonalizable.
inline std::vector<JointEigenspace> simultaneous_eigenspaces(const std::vector<Eigen::MatrixXd>& ops,
                                                             Eigen::Index n, double rank_tol = 1e-9,
                                                             double cluster_tol = 1e-7) {
    for (const auto& a : ops)
        if (a.rows() != n || a.cols() != n) throw DomainError("simultaneous_eigenspaces: operator size mismatch");

    double scale = 0.0;
    for (const auto& a : ops) scale = std::max(scale, operator_norm(a));

    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            const double c = (ops[i] * ops[j] - ops[j] * ops[i]).norm();
            if (c > std::max(rank_tol, cluster_tol) * std::max(scale * scale, 1.0))
                throw DomainError("simultaneous_eigenspaces: operators do not commute (residual " +
                                  std::to_string(c) + ")");
        }

    std::vector<Eigen::MatrixXcd> blocks{Eigen::MatrixXcd::Identity(n, n)};
    if (n == 0) blocks.clear();
    const double merge = cluster_tol * std::max(scale, 1e-300);

    for (const auto& real_op : ops) {
        const Eigen::MatrixXcd a = real_op.cast<cplx>();
        std::vector<Eigen::MatrixXcd> next;
        for (const auto& v : blocks) {
            const Eigen::Index k = v.cols();
            const Eigen::MatrixXcd m = v.adjoint() * a * v;
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
            std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + k);
            std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
                return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
            });
            // single-linkage clustering
            std::vector<std::vector<cplx>> clusters;
            std::vector<bool> used(ev.size(), false);
            for (std::size_t i = 0; i < ev.size(); ++i) {
                if (used[i]) continue;
                std::vector<cplx> c{ev[i]};
                used[i] = true;
                for (bool grew = true; grew;) {
                    grew = false;
                    for (std::size_t j = 0; j < ev.size(); ++j) {
                        if (used[j]) continue;
                        for (const auto& x : c)
                            if (std::abs(ev[j] - x) < merge) {
                                c.push_back(ev[j]);
                                used[j] = true;
                                grew = true;
                                break;
                            }
                    }
                }
                clusters.push_back(std::move(c));
            }
            Eigen::Index found = 0;
            for (const auto& c : clusters) {
                cplx mu = 0.0;
                for (const auto& x : c) mu += x;
                mu /= static_cast<double>(c.size());
                const Eigen::MatrixXcd shifted = m - mu * Eigen::MatrixXcd::Identity(k, k);
                Eigen::MatrixXcd w = nullspace_abs(shifted, merge);
                if (w.cols() != static_cast<Eigen::Index>(c.size()))
                    throw NumericalError("simultaneous_eigenspaces: defective operator (eigenvalue " +
                                         std::to_string(mu.real()) + "+" + std::to_string(mu.imag()) +
                                         "i has algebraic multiplicity " + std::to_string(c.size()) +
                                         ", geometric " + std::to_string(w.cols()) + ")");
                found += w.cols();
                next.push_back(v * w);
            }
            if (found != k) throw NumericalError("simultaneous_eigenspaces: eigenspaces do not exhaust the space");
        }
        blocks = std::move(next);
    }

    std::vector<JointEigenspace> out;
    out.reserve(blocks.size());
    for (auto& v : blocks) {
        JointEigenspace e;
        e.values.resize(static_cast<Eigen::Index>(ops.size()));
        for (std::size_t i = 0; i < ops.size(); ++i)
            e.values(static_cast<Eigen::Index>(i)) =
                (v.adjoint() * ops[i].cast<cplx>() * v).trace() / static_cast<double>(v.cols());
        e.basis = std::move(v);
        out.push_back(std::move(e));
    }
    return out;
}

/// Spectral projectors P_k onto each joint eigenspace along the others.
inline std::vector<Eigen::MatrixXcd> spectral_projectors(const std::vector<JointEigenspace>& spaces) {
    Eigen::Index n = 0;
    for (const auto& s : spaces) n += s.basis.cols();
    Eigen::MatrixXcd all(spaces.empty() ? 0 : spaces.front().basis.rows(), n);
    Eigen::Index c = 0;
    for (const auto& s : spaces) {
        all.middleCols(c, s.basis.cols()) = s.basis;
        c += s.basis.cols();
    }
    const Eigen::MatrixXcd inv = all.inverse();
    std::vector<Eigen::MatrixXcd> proj;
    c = 0;
    for (const auto& s : spaces) {
        proj.push_back(s.basis * inv.middleRows(c, s.basis.cols()));
        c += s.basis.cols();
    }
    return proj;
}

/// Symmetric part of a square matrix.
inline Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace flexcheck

#endif  // FLEXCHECK_LINALG_HPP
