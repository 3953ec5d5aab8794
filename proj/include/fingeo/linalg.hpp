#pragma once

#include "fingeo/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fingeo {

// Small dense row-major matrix. Everything in the exact stack runs on
// Matrix<Rational>; the spinor layer uses Matrix<Complex>.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }

    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = s * a.a_[i];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == T(0))) return false;
        return true;
    }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
    }

    // matrix * column vector
    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using RatMatrix = Matrix<Rational>;
using CMatrix = Matrix<Complex>;

// Reduced row echelon form. Pivot = first nonzero entry in the lowest
// unprocessed column, so the result is canonical for a given input.
struct Rref {
    RatMatrix mat;
    std::vector<std::size_t> pivot_cols;
    // transform * input == mat (present when requested)
    std::optional<RatMatrix> transform;
    std::size_t rank() const { return pivot_cols.size(); }
};

Rref rref(const RatMatrix& m, bool want_transform = false);

std::size_t rank(const RatMatrix& m);

// nullopt when singular or non-square
std::optional<RatMatrix> inverse(const RatMatrix& m);

// Columns form an echelon-ordered basis of {v : m v = 0}.
RatMatrix null_space(const RatMatrix& m);

struct LinearSolution {
    bool feasible = false;
    std::vector<Rational> particular;  // free variables set to zero
    RatMatrix null_basis;              // columns span the homogeneous space
    // On infeasibility: coefficients c with c^T A == 0 but c^T b != 0.
    std::vector<Rational> certificate;
};

LinearSolution solve_linear(const RatMatrix& a, const std::vector<Rational>& b);

// true iff the columns of sub span a subspace of the column span of big
bool column_span_contains(const RatMatrix& big, const RatMatrix& sub);

RatMatrix hcat(const RatMatrix& a, const RatMatrix& b);

}  // namespace fingeo
