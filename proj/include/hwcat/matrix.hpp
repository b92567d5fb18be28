#pragma once

// Dense matrices over an exact field, with the three workhorse kernels the
// whole tower rests on: reduced row echelon form, kernel bases and linear
// solves.  Pivoting is deterministic (first nonzero entry scanning rows top
// to bottom), so every caller sees reproducible bases.

#include "hwcat/field.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hwcat {

template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, FieldCtx<K> ctx)
        : rows_(rows), cols_(cols), ctx_(ctx), a_(rows * cols, ctx.zero()) {}

    static Matrix identity(std::size_t n, FieldCtx<K> ctx) {
        Matrix m(n, n, ctx);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ctx.one();
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<K>>& rows, FieldCtx<K> ctx) {
        std::size_t r = rows.size(), c = r == 0 ? 0 : rows[0].size();
        Matrix m(r, c, ctx);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_longs(const std::vector<std::vector<long>>& rows, FieldCtx<K> ctx) {
        std::size_t r = rows.size(), c = r == 0 ? 0 : rows[0].size();
        Matrix m(r, c, ctx);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = ctx.from_long(rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldCtx<K>& ctx() const { return ctx_; }

    K& at(std::size_t i, std::size_t j) {
        check(i, j);
        return a_[i * cols_ + j];
    }
    const K& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return a_[i * cols_ + j];
    }

    bool is_zero() const {
        for (const K& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (i == j && !at(i, j).is_one()) return false;
                if (i != j && !at(i, j).is_zero()) return false;
            }
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = r.a_[k] + o.a_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = r.a_[k] - o.a_[k];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (K& x : r.a_) x = -x;
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("Matrix: product shape mismatch " + shape_str() + " * " +
                                        o.shape_str());
        Matrix r(rows_, o.cols_, ctx_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const K& x = at(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    Matrix scaled(const K& c) const {
        Matrix r = *this;
        for (K& x : r.a_) x = x * c;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, ctx_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix hstack(const Matrix& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("Matrix: hstack row mismatch");
        Matrix r(rows_, cols_ + o.cols_, ctx_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    Matrix vstack(const Matrix& o) const {
        if (cols_ != o.cols_) throw std::invalid_argument("Matrix: vstack column mismatch");
        Matrix r(rows_ + o.rows_, cols_, ctx_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
        return r;
    }

    Matrix take_cols(const std::vector<std::size_t>& idx) const {
        Matrix r(rows_, idx.size(), ctx_);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] >= cols_) throw std::out_of_range("Matrix: take_cols index");
            for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
        }
        return r;
    }

    Matrix col(std::size_t j) const { return take_cols({j}); }

    struct Rref {
        Matrix reduced;
        std::vector<std::size_t> pivots; // pivot column per pivot row
        std::size_t rank = 0;
    };

    /// Reduced row echelon form with deterministic pivoting: for each column
    /// left to right, the first row (top down) with a nonzero entry becomes
    /// the pivot row.
    Rref rref() const {
        Matrix m = *this;
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t sel = rows_;
            for (std::size_t i = r; i < rows_; ++i)
                if (!m.at(i, c).is_zero()) { sel = i; break; }
            if (sel == rows_) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(r, j), m.at(sel, j));
            K inv = m.at(r, c).inv();
            for (std::size_t j = c; j < cols_; ++j) m.at(r, j) = m.at(r, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                K f = m.at(i, c);
                if (f.is_zero()) continue;
                for (std::size_t j = c; j < cols_; ++j)
                    m.at(i, j) = m.at(i, j) - f * m.at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return Rref{std::move(m), std::move(pivots), r};
    }

    std::size_t rank() const { return rref().rank; }

    /// Basis of the right kernel, one basis vector per column, ordered by the
    /// free column it normalizes: the free variable is set to 1 and pivot
    /// variables filled from the reduced form.
    Matrix kernel_basis() const {
        Rref e = rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : e.pivots) is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        Matrix basis(cols_, free_cols.size(), ctx_);
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            std::size_t f = free_cols[k];
            basis.at(f, k) = ctx_.one();
            for (std::size_t pr = 0; pr < e.pivots.size(); ++pr)
                basis.at(e.pivots[pr], k) = -e.reduced.at(pr, f);
        }
        return basis;
    }

    /// Indices of a column basis of the image (the pivot columns).
    std::vector<std::size_t> image_col_indices() const { return rref().pivots; }

    /// Basis of the column space, as columns of the original matrix.
    Matrix image_basis() const { return take_cols(image_col_indices()); }

    /// Rows spanning the left kernel (vectors v with v*M = 0).
    Matrix left_kernel_basis() const { return transpose().kernel_basis().transpose(); }

    /// Solve self * x = rhs columnwise; free variables are set to zero.
    /// Returns nullopt if any column is inconsistent.
    std::optional<Matrix> solve(const Matrix& rhs) const {
        if (rhs.rows_ != rows_) throw std::invalid_argument("Matrix: solve shape mismatch");
        Rref e = hstack(rhs).rref();
        Matrix x(cols_, rhs.cols_, ctx_);
        for (std::size_t pr = 0; pr < e.pivots.size(); ++pr) {
            std::size_t pc = e.pivots[pr];
            if (pc >= cols_) return std::nullopt; // pivot in the rhs block: inconsistent
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                x.at(pc, j) = e.reduced.at(pr, cols_ + j);
        }
        return x;
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        auto x = solve(identity(rows_, ctx_));
        if (!x) return std::nullopt;
        if (!((*this) * *x).is_identity()) return std::nullopt;
        return x;
    }

    bool invertible() const {
        return rows_ == cols_ && rank() == rows_;
    }

    /// Column-major flattening, for viewing a matrix as a plain vector.
    std::vector<K> flatten() const {
        std::vector<K> v;
        v.reserve(a_.size());
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
        return v;
    }

    static Matrix from_flat_col(const std::vector<K>& v, FieldCtx<K> ctx) {
        Matrix m(v.size(), 1, ctx);
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
        return m;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) os << "; ";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) os << " ";
                os << show(at(i, j));
            }
        }
        os << "]";
        return os.str();
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("Matrix: index (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") out of " + shape_str());
    }
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch " + shape_str() + " vs " +
                                        o.shape_str());
    }
    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    std::size_t rows_, cols_;
    FieldCtx<K> ctx_;
    std::vector<K> a_;
};

/// Extend a given independent set (columns of `inside`) to a basis of the
/// column space of `space`; returns the indices of columns of `space` that
/// complete the basis.  Used for choosing complements deterministically.
template <class K>
std::vector<std::size_t> complete_basis_indices(const Matrix<K>& inside, const Matrix<K>& space) {
    Matrix<K> acc = inside;
    std::vector<std::size_t> chosen;
    std::size_t want = space.rank();
    for (std::size_t j = 0; j < space.cols() && inside.cols() + chosen.size() < want; ++j) {
        Matrix<K> cand = acc.hstack(space.col(j));
        if (cand.rank() > acc.rank()) {
            acc = cand;
            chosen.push_back(j);
        }
    }
    return chosen;
}

} // namespace hwcat
