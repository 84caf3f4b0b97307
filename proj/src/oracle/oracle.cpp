#include <troplift/oracle.hpp>

#include <algorithm>
#include <bit>
#include <string>

#include <troplift/lift.hpp>

namespace troplift
{

TooLarge::TooLarge(std::size_t cols, std::size_t max_cols)
    : std::runtime_error("oracle: " + std::to_string(cols) + " columns exceed the guard of " + std::to_string(max_cols))
{
}

Matrix<PuiseuxRational> homogenize(const Instance &inst)
{
    Matrix<PuiseuxRational> M(inst.rows(), inst.cols() + 1);
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        for (std::size_t j = 0; j < inst.cols(); ++j) {
            M(i, j) = inst.A(i, j);
        }
        M(i, inst.cols()) = -inst.b[i];
    }
    return M;
}

std::vector<Circuit> minimal_support_vectors(const Matrix<PuiseuxRational> &M, std::size_t max_cols)
{
    const std::size_t N = M.cols();
    if (N > max_cols) {
        throw TooLarge(N, max_cols);
    }
    // Basis B of the row space: a maximal independent set of rows of M, which
    // keeps the entries as small as the input.
    const auto rref = rref_solve(M, std::vector<PuiseuxRational>(M.rows()));
    const std::size_t r = rref.rank;
    std::vector<Circuit> out;
    if (r == 0) {
        return out;
    }
    std::vector<std::size_t> rows = rref.pivot_rows;
    rows.resize(r);
    std::sort(rows.begin(), rows.end());
    Matrix<PuiseuxRational> B(r, N);
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t j = 0; j < N; ++j) {
            B(k, j) = M(rows[k], j);
        }
    }

    // Row-space vectors vanishing outside S are y^T B with y in the left
    // kernel of B restricted to the complement of S. S is a minimal support
    // exactly when that kernel is a line whose vector has support S. Supports
    // are visited by size so that supersets of circuits are skipped; a line
    // needs at least r - 1 columns outside S.
    std::vector<std::size_t> masks;
    for (std::size_t mask = 1; mask < (std::size_t{1} << N); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) + r <= N + 1) {
            masks.push_back(mask);
        }
    }
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::size_t a, std::size_t b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::size_t> found;
    for (const std::size_t mask : masks) {
        if (std::any_of(found.begin(), found.end(), [&](std::size_t c) { return (mask & c) == c; })) {
            continue;
        }
        std::vector<std::size_t> outside;
        for (std::size_t j = 0; j < N; ++j) {
            if ((mask >> j & 1U) == 0) {
                outside.push_back(j);
            }
        }
        // Bt = (B restricted to the columns outside S)^T.
        Matrix<PuiseuxRational> Bt(outside.size(), r);
        for (std::size_t a = 0; a < outside.size(); ++a) {
            for (std::size_t k = 0; k < r; ++k) {
                Bt(a, k) = B(k, outside[a]);
            }
        }
        const auto red = rref_solve(Bt, std::vector<PuiseuxRational>(outside.size()));
        if (red.free_cols.size() != 1) {
            continue;
        }
        const std::size_t f = red.free_cols.front();
        std::vector<PuiseuxRational> y(r);
        y[f] = 1;
        for (std::size_t k = 0; k < red.rank; ++k) {
            y[red.pivot_cols[k]] = -red.reduced_matrix(k, f);
        }
        Circuit c;
        c.vector.assign(N, PuiseuxRational());
        bool full = true;
        for (std::size_t j = 0; j < N && full; ++j) {
            const bool inside = (mask >> j & 1U) != 0;
            PuiseuxRational z;
            for (std::size_t k = 0; k < r && inside; ++k) {
                if (!y[k].is_zero() && !B(k, j).is_zero()) {
                    z += y[k] * B(k, j);
                }
            }
            if (inside && z.is_zero()) {
                full = false;
            }
            if (inside) {
                c.support.push_back(j);
            }
            c.vector[j] = std::move(z);
        }
        if (full) {
            found.push_back(mask);
            out.push_back(std::move(c));
        }
    }
    return out;
}

bool min_attained_twice(const Circuit &c, const std::vector<Rational> &w)
{
    std::optional<Rational> best;
    std::size_t count = 0;
    for (const std::size_t j : c.support) {
        const Rational value = valuation(c.vector[j]).value() + w[j];
        if (!best || value < *best) {
            best = value;
            count = 1;
        } else if (value == *best) {
            ++count;
        }
    }
    return count >= 2;
}

bool member_oracle(const Instance &inst, const TropPoint &v, std::size_t max_cols)
{
    const StrippedInstance stripped = strip_infinite(inst, v);
    const Matrix<PuiseuxRational> M = homogenize(stripped.inst);
    std::vector<Rational> w;
    for (const auto &x : stripped.v.coords) {
        w.push_back(x.value());
    }
    w.emplace_back(0);
    for (const auto &c : minimal_support_vectors(M, max_cols)) {
        if (!min_attained_twice(c, w)) {
            return false;
        }
    }
    return true;
}

} // namespace troplift
