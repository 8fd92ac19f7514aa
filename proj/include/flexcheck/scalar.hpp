#ifndef FLEXCHECK_SCALAR_HPP
#define FLEXCHECK_SCALAR_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "flexcheck/config.hpp"

namespace flexcheck {

enum class Field { Real, Complex, Quaternion };

/// Real dimension of the field: 1, 2 or 4.
constexpr int field_degree(Field f) noexcept {
    switch (f) {
        case Field::Real: return 1;
        case Field::Complex: return 2;
        case Field::Quaternion: return 4;
    }
    return 1;
}

inline std::string_view field_name(Field f) noexcept {
    switch (f) {
        case Field::Real: return "R";
        case Field::Complex: return "C";
        case Field::Quaternion: return "H";
    }
    return "?";
}

/// An element of R, C or H stored as (a, b, c, d) = a + bi + cj + dk.
/// Components beyond the field degree are always zero.
class Scalar {
public:
    constexpr Scalar() = default;
    constexpr explicit Scalar(double re) : field_(Field::Real), c_{re, 0.0, 0.0, 0.0} {}

    static constexpr Scalar real(double a) { return Scalar(a); }
    static constexpr Scalar complex(double a, double b) {
        Scalar s;
        s.field_ = Field::Complex;
        s.c_ = {a, b, 0.0, 0.0};
        return s;
    }
    static constexpr Scalar quaternion(double a, double b, double c, double d) {
        Scalar s;
        s.field_ = Field::Quaternion;
        s.c_ = {a, b, c, d};
        return s;
    }
    /// The unit of `f` at component index `k` (0 -> 1, 1 -> i, 2 -> j, 3 -> k).
    static Scalar unit(Field f, int k) {
        if (k < 0 || k >= field_degree(f)) throw DomainError("Scalar::unit: component out of range");
        Scalar s = zero(f);
        s.c_[static_cast<std::size_t>(k)] = 1.0;
        return s;
    }
    static constexpr Scalar zero(Field f) {
        Scalar s;
        s.field_ = f;
        return s;
    }

    constexpr Field field() const noexcept { return field_; }
    constexpr double operator[](int k) const noexcept { return c_[static_cast<std::size_t>(k)]; }
    constexpr const std::array<double, 4>& components() const noexcept { return c_; }

    /// Same value re-tagged in a larger field.
    Scalar promoted(Field f) const {
        if (field_degree(f) < field_degree(field_))
            throw DomainError("Scalar::promoted: cannot demote " + std::string(field_name(field_)));
        Scalar s = *this;
        s.field_ = f;
        return s;
    }

    constexpr Scalar conj() const noexcept {
        Scalar s = *this;
        s.c_[1] = -s.c_[1];
        s.c_[2] = -s.c_[2];
        s.c_[3] = -s.c_[3];
        return s;
    }

    friend Scalar operator+(const Scalar& p, const Scalar& q) {
        check_same(p, q);
        Scalar s = p;
        for (std::size_t i = 0; i < 4; ++i) s.c_[i] += q.c_[i];
        return s;
    }
    friend Scalar operator-(const Scalar& p, const Scalar& q) {
        check_same(p, q);
        Scalar s = p;
        for (std::size_t i = 0; i < 4; ++i) s.c_[i] -= q.c_[i];
        return s;
    }
    /// Hamilton product; reduces to complex/real multiplication on the subfields.
    friend Scalar operator*(const Scalar& p, const Scalar& q) {
        check_same(p, q);
        const auto& [a1, b1, c1, d1] = p.c_;
        const auto& [a2, b2, c2, d2] = q.c_;
        Scalar s;
        s.field_ = p.field_;
        s.c_ = {a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2};
        return s;
    }

    double norm2() const noexcept { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }

    /// 4x4 (or 2x2, 1x1) real matrix of x -> (*this) * x.
    Eigen::MatrixXd left_multiplication() const {
        const auto& [a, b, c, d] = c_;
        switch (field_) {
            case Field::Real: return Eigen::MatrixXd::Constant(1, 1, a);
            case Field::Complex: {
                Eigen::MatrixXd m(2, 2);
                m << a, -b, b, a;
                return m;
            }
            case Field::Quaternion: {
                Eigen::MatrixXd m(4, 4);
                m << a, -b, -c, -d,
                     b,  a, -d,  c,
                     c,  d,  a, -b,
                     d, -c,  b,  a;
                return m;
            }
        }
        return {};
    }

private:
    static void check_same(const Scalar& p, const Scalar& q) {
        if (p.field_ != q.field_)
            throw DomainError("Scalar: field-tag mismatch (" + std::string(field_name(p.field_)) + " vs " +
                              std::string(field_name(q.field_)) + ")");
    }

    Field field_ = Field::Real;
    std::array<double, 4> c_{0.0, 0.0, 0.0, 0.0};
};

/// Hamilton product of two quaternion-tagged scalars.
inline Scalar quaternion_multiply(const Scalar& p, const Scalar& q) {
    if (p.field() != Field::Quaternion || q.field() != Field::Quaternion)
        throw DomainError("quaternion_multiply: both operands must be tagged Quaternion");
    return p * q;
}

/// Dense row-major matrix with entries in one of R, C, H.
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(Field f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Scalar::zero(f)) {
        if (rows < 0 || cols < 0) throw DomainError("FieldMatrix: negative size");
    }

    static FieldMatrix identity(Field f, int n) {
        FieldMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Scalar::unit(f, 0);
        return m;
    }
    /// diag(I_p, -I_q), the Hermitian form of signature (p, q).
    static FieldMatrix signature_form(Field f, int p, int q) {
        FieldMatrix m(f, p + q, p + q);
        for (int i = 0; i < p + q; ++i) m(i, i) = Scalar(i < p ? 1.0 : -1.0).promoted(f);
        return m;
    }

    Field field() const noexcept { return field_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    Scalar& operator()(int i, int j) { return data_[index(i, j)]; }
    const Scalar& operator()(int i, int j) const { return data_[index(i, j)]; }

    void set(int i, int j, const Scalar& s) { data_[index(i, j)] = s.promoted(field_); }

    FieldMatrix conj_transpose() const {
        FieldMatrix m(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
        return m;
    }

    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.field_ != b.field_) throw DomainError("FieldMatrix: field-tag mismatch");
        if (a.cols_ != b.rows_) throw DomainError("FieldMatrix: inner dimension mismatch");
        FieldMatrix m(a.field_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) {
                Scalar acc = Scalar::zero(a.field_);
                for (int k = 0; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
                m(i, j) = acc;
            }
        return m;
    }
    friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
        check_shape(a, b);
        FieldMatrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
        return m;
    }
    friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
        check_shape(a, b);
        FieldMatrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
        return m;
    }
    FieldMatrix operator-() const {
        FieldMatrix m = *this;
        for (auto& s : m.data_) s = Scalar::zero(field_) - s;
        return m;
    }

    /// Sum of diagonal entries, over the base field.
    Scalar trace() const {
        Scalar acc = Scalar::zero(field_);
        for (int i = 0; i < std::min(rows_, cols_); ++i) acc = acc + (*this)(i, i);
        return acc;
    }

    /// Copy `block` into position (r0, c0).
    void set_block(int r0, int c0, const FieldMatrix& block) {
        if (block.field_ != field_) throw DomainError("FieldMatrix::set_block: field-tag mismatch");
        if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
            throw DomainError("FieldMatrix::set_block: block out of range");
        for (int i = 0; i < block.rows_; ++i)
            for (int j = 0; j < block.cols_; ++j) (*this)(r0 + i, c0 + j) = block(i, j);
    }
    FieldMatrix block(int r0, int c0, int nr, int nc) const {
        FieldMatrix m(field_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

    /// Same entries viewed in a larger field.
    FieldMatrix promoted(Field f) const {
        FieldMatrix m(f, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].promoted(f);
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& s : data_)
            for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(s[k]));
        return m;
    }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= rows_ || j >= cols_) throw DomainError("FieldMatrix: index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
    }
    static void check_shape(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.field_ != b.field_) throw DomainError("FieldMatrix: field-tag mismatch");
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("FieldMatrix: shape mismatch");
    }

    Field field_ = Field::Real;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> data_;
};

/// Real (d*n) x (d*m) image of an n x m matrix over a field of degree d.
struct RealizedMatrix {
    Field field = Field::Real;
    int rows = 0;  ///< rows over the base field
    int cols = 0;
    Eigen::MatrixXd real;
};

/// Replace each entry by its left-multiplication block. This is a ring
/// homomorphism, and realify(M*) = realify(M)^T.
inline RealizedMatrix realify(const FieldMatrix& m) {
    const int d = field_degree(m.field());
    RealizedMatrix r{m.field(), m.rows(), m.cols(), Eigen::MatrixXd::Zero(d * m.rows(), d * m.cols())};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.real.block(d * i, d * j, d, d) = m(i, j).left_multiplication();
    return r;
}

/// Inverse of realify for matrices that are realifications; the first
/// column of each d x d block carries the scalar's components.
inline FieldMatrix derealify(const Eigen::MatrixXd& real, Field f) {
    const int d = field_degree(f);
    if (real.rows() % d != 0 || real.cols() % d != 0) throw DomainError("derealify: size not a multiple of degree");
    FieldMatrix m(f, static_cast<int>(real.rows()) / d, static_cast<int>(real.cols()) / d);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Scalar s = Scalar::zero(f);
            switch (f) {
                case Field::Real: s = Scalar::real(real(i, j)); break;
                case Field::Complex: s = Scalar::complex(real(2 * i, 2 * j), real(2 * i + 1, 2 * j)); break;
                case Field::Quaternion:
                    s = Scalar::quaternion(real(4 * i, 4 * j), real(4 * i + 1, 4 * j), real(4 * i + 2, 4 * j),
                                           real(4 * i + 3, 4 * j));
                    break;
            }
            m(i, j) = s;
        }
    return m;
}

/// Realification of a complex Eigen matrix viewed inside M_n(F), F = C or H.
inline Eigen::MatrixXd realify(const Eigen::MatrixXcd& m, Field f = Field::Complex) {
    if (f == Field::Real) throw DomainError("realify: complex entries need F = C or H");
    const int d = field_degree(f);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d * m.rows(), d * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Scalar s = Scalar::complex(m(i, j).real(), m(i, j).imag()).promoted(f);
            r.block(d * i, d * j, d, d) = s.left_multiplication();
        }
    return r;
}

/// Embed a real matrix into M_n(F) and realify: each entry a becomes a * I_d.
inline Eigen::MatrixXd realify(const Eigen::MatrixXd& m, Field f) {
    const int d = field_degree(f);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d * m.rows(), d * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r.block(d * i, d * j, d, d).diagonal().setConstant(m(i, j));
    return r;
}

}  // namespace flexcheck

#endif  // FLEXCHECK_SCALAR_HPP
