#ifndef TROPLIFT_MATRIX_HPP
#define TROPLIFT_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <troplift/puiseux.hpp>
#include <troplift/rational.hpp>

namespace troplift
{

inline bool is_zero(const Rational &a)
{
    return sgn(a) == 0;
}
inline bool is_zero(const PuiseuxRational &a)
{
    return a.is_zero();
}

// Valuation used to rank pivot candidates. Over the rationals every nonzero
// entry has valuation 0, so the rules reduce to "first nonzero".
inline Valuation pivot_valuation(const Rational &a)
{
    return is_zero(a) ? Valuation::infinity() : Valuation(0);
}
inline Valuation pivot_valuation(const PuiseuxRational &a)
{
    return a.valuation();
}

// Dense row-major matrix over a field F.
template <class F>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, i) = F(1);
        }
        return out;
    }

    std::size_t rows() const
    {
        return rows_;
    }
    std::size_t cols() const
    {
        return cols_;
    }
    F &operator()(std::size_t i, std::size_t j)
    {
        return data_[i * cols_ + j];
    }
    const F &operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * cols_ + j];
    }
    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a != b) {
            for (std::size_t j = 0; j < cols_; ++j) {
                std::swap((*this)(a, j), (*this)(b, j));
            }
        }
    }

    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <class F>
std::vector<F> multiply(const Matrix<F> &a, const std::vector<F> &x)
{
    if (a.cols() != x.size()) {
        throw std::invalid_argument("multiply: dimension mismatch");
    }
    std::vector<F> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!is_zero(a(i, j)) && !is_zero(x[j])) {
                out[i] += a(i, j) * x[j];
            }
        }
    }
    return out;
}

template <class F>
Matrix<F> multiply(const Matrix<F> &a, const Matrix<F> &b)
{
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: dimension mismatch");
    }
    Matrix<F> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (is_zero(a(i, k))) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (!is_zero(b(k, j))) {
                    out(i, j) += a(i, k) * b(k, j);
                }
            }
        }
    }
    return out;
}

enum class PivotRule {
    // Columns left to right; in each column the remaining row whose entry has
    // minimal valuation, ties to the smallest row.
    ColumnScan,
    // Complete pivoting on row-relative valuations: among the remaining
    // entries whose valuation equals the minimum of their row (over the
    // columns not yet pivoted), the one in the smallest column, ties to the
    // smallest row. Every entry of the reduced matrix then has valuation >= 0.
    MinValuation,
};

template <class F>
struct RrefResult {
    // Row k < rank has a 1 in column pivot_cols[k] and zeros in every other
    // pivot column; rows at and below rank are zero.
    Matrix<F> reduced_matrix;
    std::vector<F> reduced_rhs;
    std::vector<std::size_t> pivot_cols; // in row order
    std::vector<std::size_t> free_cols;  // ascending
    std::vector<std::size_t> pivot_rows; // original row index of each reduced row
    std::size_t rank = 0;
    bool consistent = true;
    // T with T * [A | b] = [reduced_matrix | reduced_rhs], when requested.
    std::optional<Matrix<F>> transform;
};

// Gauss-Jordan elimination of the augmented system [A | b].
template <class F>
RrefResult<F> rref_solve(const Matrix<F> &A, const std::vector<F> &b, PivotRule rule = PivotRule::ColumnScan,
                         bool record_transform = false)
{
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    if (b.size() != m) {
        throw std::invalid_argument("rref_solve: rhs length does not match row count");
    }
    RrefResult<F> out;
    Matrix<F> &W = out.reduced_matrix;
    W = A;
    std::vector<F> &rhs = out.reduced_rhs;
    rhs = b;
    std::vector<std::size_t> origin(m);
    for (std::size_t i = 0; i < m; ++i) {
        origin[i] = i;
    }
    std::optional<Matrix<F>> T;
    if (record_transform) {
        T = Matrix<F>::identity(m);
    }
    std::vector<bool> is_pivot(n, false);

    auto eliminate = [&](std::size_t r, std::size_t c) {
        W.swap_rows(r, out.rank);
        std::swap(rhs[r], rhs[out.rank]);
        std::swap(origin[r], origin[out.rank]);
        if (T) {
            T->swap_rows(r, out.rank);
        }
        r = out.rank;
        const F inv = F(1) / W(r, c);
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_zero(W(r, j))) {
                W(r, j) = j == c ? F(1) : W(r, j) * inv;
            }
        }
        if (!is_zero(rhs[r])) {
            rhs[r] = rhs[r] * inv;
        }
        if (T) {
            for (std::size_t j = 0; j < m; ++j) {
                if (!is_zero((*T)(r, j))) {
                    (*T)(r, j) = (*T)(r, j) * inv;
                }
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || is_zero(W(i, c))) {
                continue;
            }
            const F factor = W(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == c) {
                    W(i, j) = F();
                } else if (!is_zero(W(r, j))) {
                    W(i, j) -= factor * W(r, j);
                }
            }
            if (!is_zero(rhs[r])) {
                rhs[i] -= factor * rhs[r];
            }
            if (T) {
                for (std::size_t j = 0; j < m; ++j) {
                    if (!is_zero((*T)(r, j))) {
                        (*T)(i, j) -= factor * (*T)(r, j);
                    }
                }
            }
        }
        out.pivot_cols.push_back(c);
        out.pivot_rows.push_back(origin[r]);
        is_pivot[c] = true;
        ++out.rank;
    };

    if (rule == PivotRule::ColumnScan) {
        for (std::size_t c = 0; c < n && out.rank < m; ++c) {
            std::optional<std::size_t> best;
            Valuation best_val;
            for (std::size_t i = out.rank; i < m; ++i) {
                if (is_zero(W(i, c))) {
                    continue;
                }
                const Valuation val = pivot_valuation(W(i, c));
                if (!best || val < best_val || (val == best_val && origin[i] < origin[*best])) {
                    best = i;
                    best_val = val;
                }
            }
            if (best) {
                eliminate(*best, c);
            }
        }
    } else {
        while (out.rank < m) {
            // Valuations are compared relative to the minimum of their row,
            // which makes the choice independent of monomial row scalings.
            std::vector<Valuation> row_min(m);
            for (std::size_t i = out.rank; i < m; ++i) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (!is_pivot[c] && !is_zero(W(i, c))) {
                        const Valuation val = pivot_valuation(W(i, c));
                        if (val < row_min[i]) {
                            row_min[i] = val;
                        }
                    }
                }
            }
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t c = 0; c < n && !best; ++c) {
                if (is_pivot[c]) {
                    continue;
                }
                for (std::size_t i = out.rank; i < m; ++i) {
                    if (is_zero(W(i, c)) || pivot_valuation(W(i, c)) != row_min[i]) {
                        continue;
                    }
                    if (!best || origin[i] < origin[best->first]) {
                        best = std::make_pair(i, c);
                    }
                }
            }
            if (!best) {
                break;
            }
            eliminate(best->first, best->second);
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        if (!is_pivot[j]) {
            out.free_cols.push_back(j);
        }
    }
    for (std::size_t i = out.rank; i < m; ++i) {
        if (!is_zero(rhs[i])) {
            out.consistent = false;
        }
    }
    out.transform = std::move(T);
    return out;
}

} // namespace troplift

#endif
