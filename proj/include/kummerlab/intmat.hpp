// Exact integer and rational matrices.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kummerlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const T& fill = T(0)) : rows_(r), cols_(c), a_(r * c, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void append_row(const std::vector<T>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }
    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;
using IntVec = std::vector<BigInt>;
using RatVec = std::vector<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j))) throw std::domain_error("matrix is not integral");
            r(i, j) = boost::multiprecision::numerator(m(i, j));
        }
    return r;
}

inline BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    BigInt g = boost::multiprecision::gcd(a, b);
    BigInt r = a / g * b;
    return r < 0 ? BigInt(-r) : r;
}

/// Floor division for signed big integers.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

/// Rational reduced into [0, 1).
inline Rational frac_part(const Rational& q) {
    BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    return Rational(n - floor_div(n, d) * d, d);
}

/// Value reduced into [0, m).
inline Rational mod_rational(const Rational& q, const Rational& m) {
    Rational t = q / m;
    BigInt n = boost::multiprecision::numerator(t), d = boost::multiprecision::denominator(t);
    return q - Rational(floor_div(n, d)) * m;
}

/// Fraction-free Gaussian elimination (Bareiss).
inline BigInt determinant(IntMatrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Row-style Hermite normal form with the unimodular transform: U * A = H.
/// Pivots are positive, entries above a pivot are reduced into [0, pivot).
struct HermiteResult {
    IntMatrix h;
    IntMatrix u;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

inline HermiteResult hermite(const IntMatrix& a) {
    HermiteResult res;
    res.h = a;
    const std::size_t m = a.rows(), n = a.cols();
    res.u = IntMatrix::identity(m);
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;
    std::size_t r = 0;
    auto row_axpy = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        // dst -= f * src
        for (std::size_t k = 0; k < n; ++k) h(dst, k) -= f * h(src, k);
        for (std::size_t k = 0; k < m; ++k) u(dst, k) -= f * u(src, k);
    };
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // Euclid on column c among rows r..m-1.
        while (true) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == m) break;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                BigInt q = floor_div(h(i, c), h(r, c));
                row_axpy(i, r, q);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            for (std::size_t k = 0; k < n; ++k) h(r, k) = -h(r, k);
            for (std::size_t k = 0; k < m; ++k) u(r, k) = -u(r, k);
        }
        for (std::size_t i = 0; i < r; ++i) {
            BigInt q = floor_div(h(i, c), h(r, c));
            if (q != 0) row_axpy(i, r, q);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

/// Nonzero rows of the Hermite form: a canonical basis of the row lattice.
inline IntMatrix row_lattice_basis(const IntMatrix& a) {
    HermiteResult hr = hermite(a);
    IntMatrix b(0, a.cols());
    for (std::size_t i = 0; i < hr.rank; ++i) b.append_row(hr.h.row(i));
    return b;
}

/// Integer basis (as rows) of { x in Z^n : A x = 0 }.
inline IntMatrix integer_kernel(const IntMatrix& a) {
    HermiteResult hr = hermite(a.transpose());
    IntMatrix k(0, a.cols());
    for (std::size_t i = hr.rank; i < hr.u.rows(); ++i) k.append_row(hr.u.row(i));
    if (k.rows() == 0) return k;
    return row_lattice_basis(k);
}

/// Smith normal form U * A * V = D (diagonal, d_1 | d_2 | ..., nonnegative).
struct SmithResult {
    IntMatrix u, v;
    std::vector<BigInt> diag;
};

inline SmithResult smith(const IntMatrix& a0) {
    IntMatrix a = a0;
    const std::size_t m = a.rows(), n = a.cols();
    SmithResult s;
    s.u = IntMatrix::identity(m);
    s.v = IntMatrix::identity(n);
    auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t k = 0; k < n; ++k) a(dst, k) -= f * a(src, k);
        for (std::size_t k = 0; k < m; ++k) s.u(dst, k) -= f * s.u(src, k);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t k = 0; k < m; ++k) a(k, dst) -= f * a(k, src);
        for (std::size_t k = 0; k < n; ++k) s.v(k, dst) -= f * s.v(k, src);
    };
    const std::size_t lim = std::min(m, n);
    for (std::size_t t = 0; t < lim; ++t) {
        while (true) {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (bi == m || abs(a(i, j)) < abs(a(bi, bj)))) bi = i, bj = j;
            if (bi == m) break;
            a.swap_rows(t, bi);
            s.u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            s.v.swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (a(i, t) != 0) {
                    row_op(i, t, floor_div(a(i, t), a(t, t)));
                    if (a(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (a(t, j) != 0) {
                    col_op(j, t, floor_div(a(t, j), a(t, t)));
                    if (a(t, j) != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility of the remaining block
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_op(t, bad, BigInt(-1));
        }
        if (a(t, t) < 0) {
            for (std::size_t k = 0; k < n; ++k) a(t, k) = -a(t, k);
            for (std::size_t k = 0; k < m; ++k) s.u(t, k) = -s.u(t, k);
        }
    }
    for (std::size_t t = 0; t < lim; ++t) s.diag.push_back(a(t, t));
    return s;
}

/// Gauss-Jordan inverse over Q.
inline RatMatrix inverse(const RatMatrix& a0) {
    const std::size_t n = a0.rows();
    if (n != a0.cols()) throw std::invalid_argument("inverse of non-square matrix");
    RatMatrix a = a0, inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        Rational piv = a(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            a(c, k) /= piv;
            inv(c, k) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t k = 0; k < n; ++k) {
                a(i, k) -= f * a(c, k);
                inv(i, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

/// Coordinates x with x * B = v for B of full row rank (rows are basis vectors); nullopt-free:
/// throws when v is outside the row space.
inline RatVec solve_in_rowspace(const RatMatrix& b, const RatVec& v) {
    const std::size_t r = b.rows(), n = b.cols();
    // Solve B^T x = v by elimination on the augmented system.
    RatMatrix a(n, r + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) a(i, j) = b(j, i);
        a(i, r) = v[i];
    }
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < r && row < n; ++c) {
        std::size_t p = row;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) continue;
        a.swap_rows(row, p);
        Rational pv = a(row, c);
        for (std::size_t k = c; k <= r; ++k) a(row, k) /= pv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t k = c; k <= r; ++k) a(i, k) -= f * a(row, k);
        }
        piv.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (a(i, r) != 0) throw std::domain_error("vector not in row space");
    if (piv.size() != r) throw std::domain_error("rows are linearly dependent");
    RatVec x(r);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = a(i, r);
    return x;
}

/// Rank over Q.
inline std::size_t rank_of(const IntMatrix& a) { return hermite(a).rank; }

inline std::string to_string(const BigInt& x) { return x.str(); }
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

}  // namespace kummerlab
