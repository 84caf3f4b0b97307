#include <troplift/series_reduce.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace troplift
{

namespace
{

constexpr std::int64_t exact_prec = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t add_prec(std::int64_t a, std::int64_t b)
{
    return (a >= exact_prec || b >= exact_prec) ? exact_prec : a + b;
}

// sum_i c[i] t^(low + i) + O(t^prec) with integer coefficients; prec ==
// exact_prec means no error term. c is empty or has a nonzero front and back,
// and holds no term at or above prec.
struct Ser {
    std::int64_t low = 0;
    std::vector<Integer> c;
    std::int64_t prec = exact_prec;

    static Ser one()
    {
        Ser out;
        out.c.emplace_back(1);
        return out;
    }

    bool known_nonzero() const
    {
        return !c.empty();
    }
    bool exact_zero() const
    {
        return c.empty() && prec >= exact_prec;
    }
    bool exact() const
    {
        return prec >= exact_prec;
    }
    bool is_one() const
    {
        return exact() && low == 0 && c.size() == 1 && c.front() == 1;
    }
    // Valuation if known, otherwise the lower bound prec.
    std::int64_t val_bound() const
    {
        return c.empty() ? prec : low;
    }
    std::int64_t high() const
    {
        return low + static_cast<std::int64_t>(c.size());
    }

    void normalize()
    {
        std::size_t lead = 0;
        while (lead < c.size() && sgn(c[lead]) == 0) {
            ++lead;
        }
        if (lead == c.size()) {
            c.clear();
            low = 0;
            return;
        }
        if (lead > 0) {
            c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
            low += static_cast<std::int64_t>(lead);
        }
        while (!c.empty() && sgn(c.back()) == 0) {
            c.pop_back();
        }
    }

    void truncate(std::int64_t cap)
    {
        if (cap < prec) {
            prec = cap;
        }
        if (!c.empty() && high() > prec) {
            if (low >= prec) {
                c.clear();
                low = 0;
            } else {
                c.resize(static_cast<std::size_t>(prec - low));
            }
        }
        normalize();
    }

    void shift(std::int64_t s)
    {
        if (!c.empty()) {
            low += s;
        }
        if (!exact()) {
            prec += s;
        }
    }
};

struct NeedPrecision {
    std::int64_t cap;
};

// Requires a polynomial with integer coefficients on the integer grid.
Ser from_poly(const LaurentPoly &p, std::int64_t cap)
{
    Ser out;
    if (p.is_zero()) {
        return out;
    }
    out.low = p.low();
    const auto &coeffs = p.integer_coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (out.low + static_cast<std::int64_t>(i) >= cap) {
            out.prec = cap;
            break;
        }
        out.c.push_back(coeffs[i]);
    }
    out.normalize();
    return out;
}

// a * b truncated below cap.
Ser mul(const Ser &a, const Ser &b, std::int64_t cap)
{
    if (a.is_one() || b.is_one()) {
        Ser out = a.is_one() ? b : a;
        out.truncate(cap);
        return out;
    }
    Ser out;
    if (a.exact_zero() || b.exact_zero()) {
        return out;
    }
    out.prec = std::min({add_prec(a.prec, b.val_bound()), add_prec(b.prec, a.val_bound()), cap});
    if (a.c.empty() || b.c.empty()) {
        return out;
    }
    out.low = a.low + b.low;
    std::int64_t high = a.high() + b.high() - 1;
    if (out.prec < exact_prec) {
        high = std::min(high, out.prec);
    }
    if (high <= out.low) {
        out.low = 0;
        return out;
    }
    out.c.resize(static_cast<std::size_t>(high - out.low));
    const auto len = out.c.size();
    for (std::size_t i = 0; i < a.c.size() && i < len; ++i) {
        if (sgn(a.c[i]) == 0) {
            continue;
        }
        const std::size_t stop = std::min(b.c.size(), len - i);
        for (std::size_t j = 0; j < stop; ++j) {
            mpz_addmul(out.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
        }
    }
    out.normalize();
    return out;
}

// a - b.
void sub_in_place(Ser &a, const Ser &b)
{
    if (b.exact_zero()) {
        return;
    }
    const std::int64_t prec = std::min(a.prec, b.prec);
    if (!b.c.empty()) {
        if (a.c.empty()) {
            a.low = b.low;
            a.c.assign(b.c.size(), Integer(0));
            for (std::size_t j = 0; j < b.c.size(); ++j) {
                a.c[j] = -b.c[j];
            }
        } else {
            const std::int64_t low = std::min(a.low, b.low);
            const std::int64_t high = std::max(a.high(), b.high());
            if (low < a.low) {
                a.c.insert(a.c.begin(), static_cast<std::size_t>(a.low - low), Integer(0));
                a.low = low;
            }
            a.c.resize(static_cast<std::size_t>(high - low));
            for (std::size_t j = 0; j < b.c.size(); ++j) {
                a.c[static_cast<std::size_t>(b.low - low) + j] -= b.c[j];
            }
        }
    }
    a.prec = prec;
    a.truncate(prec);
}

// a / d for a divisor d of valuation 0, knowing that the quotient has integer
// coefficients.
Ser div_exact(const Ser &a, const Ser &d, std::int64_t cap)
{
    if (d.is_one() || a.exact_zero()) {
        return a;
    }
    Ser out;
    out.prec = std::min(a.prec, cap);
    if (a.c.empty()) {
        return out;
    }
    out.prec = std::min(out.prec, add_prec(d.prec, a.low));
    out.low = a.low;
    std::int64_t count = static_cast<std::int64_t>(a.c.size());
    if (out.prec < exact_prec) {
        count = out.prec - a.low;
    } else if (d.c.size() > 1) {
        throw std::logic_error("exact series division by a non-monomial");
    }
    if (count <= 0) {
        out.low = 0;
        return out;
    }
    out.c.resize(static_cast<std::size_t>(count));
    const Integer &lead = d.c.front();
    Integer acc;
    for (std::size_t k = 0; k < out.c.size(); ++k) {
        acc = k < a.c.size() ? a.c[k] : Integer(0);
        for (std::size_t i = 1; i <= k && i < d.c.size(); ++i) {
            mpz_submul(acc.get_mpz_t(), d.c[i].get_mpz_t(), out.c[k - i].get_mpz_t());
        }
        mpz_divexact(out.c[k].get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    }
    out.normalize();
    return out;
}

// Terms up to order `count` of 1/d for d of valuation 0.
std::vector<Rational> rational_inverse(const Ser &d, std::size_t count)
{
    std::vector<Rational> out(count);
    const Rational lead_inv = Rational(1) / Rational(d.c.front());
    for (std::size_t k = 0; k < count; ++k) {
        Rational acc = k == 0 ? Rational(1) : Rational(0);
        for (std::size_t i = 1; i <= k && i < d.c.size(); ++i) {
            if (sgn(d.c[i]) != 0) {
                acc -= d.c[i] * out[k - i];
            }
        }
        out[k] = acc * lead_inv;
    }
    return out;
}

class SeriesEliminator
{
public:
    SeriesEliminator(const Matrix<PuiseuxRational> &A, const std::vector<PuiseuxRational> &b, PivotRule rule)
        : m_(A.rows()), n_(A.cols()), rule_(rule)
    {
        // Each row times the product of its distinct denominators, shifted to
        // exponents >= 0; E_r is its largest exponent.
        rows_.resize(m_);
        max_exp_.assign(m_, 0);
        offset_.assign(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            std::vector<LaurentPoly> dens;
            for (std::size_t j = 0; j <= n_; ++j) {
                const PuiseuxRational &x = j < n_ ? A(i, j) : b[i];
                if (!x.is_zero() && !x.is_laurent() && std::find(dens.begin(), dens.end(), x.den()) == dens.end()) {
                    dens.push_back(x.den());
                }
            }
            PuiseuxRational scale = 1;
            for (const auto &d : dens) {
                scale *= PuiseuxRational(d);
            }
            std::vector<LaurentPoly> row(n_ + 1);
            std::optional<Rational> lowest;
            std::optional<Rational> highest;
            for (std::size_t j = 0; j <= n_; ++j) {
                const PuiseuxRational &x = j < n_ ? A(i, j) : b[i];
                if (x.is_zero()) {
                    continue;
                }
                const PuiseuxRational y = dens.empty() ? x : x * scale;
                if (!y.is_laurent()) {
                    throw std::logic_error("row polynomialization failed");
                }
                row[j] = y.num();
                if (!lowest || row[j].min_exponent() < *lowest) {
                    lowest = row[j].min_exponent();
                }
                if (!highest || row[j].max_exponent() > *highest) {
                    highest = row[j].max_exponent();
                }
            }
            if (lowest) {
                Integer common = 1;
                for (const auto &p : row) {
                    if (!p.is_zero()) {
                        if (p.grid_den() != 1) {
                            throw std::logic_error("series reduction needs integer exponents");
                        }
                        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.denominator().get_mpz_t());
                    }
                }
                for (auto &p : row) {
                    if (!p.is_zero()) {
                        p = p.shifted(-*lowest).scaled(Rational(common));
                    }
                }
                max_exp_[i] = to_int64(Rational(*highest - *lowest).get_num());
                offset_[i] = -to_int64(Rational(*lowest).get_num());
            }
            rows_[i] = std::move(row);
        }
    }

    ReducedSystem run()
    {
        std::int64_t cap = rule_ == PivotRule::MinValuation ? 1 : 4;
        for (;;) {
            try {
                return attempt(cap);
            } catch (const NeedPrecision &need) {
                cap = std::max(need.cap, cap + 1);
            }
        }
    }

private:
    ReducedSystem attempt(std::int64_t cap)
    {
        cap_ = cap;
        W_.assign(m_, std::vector<Ser>(n_ + 1));
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j <= n_; ++j) {
                W_[i][j] = from_poly(rows_[i][j], cap);
            }
        }
        origin_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            origin_[i] = i;
        }
        sigma_.assign(m_, 0);
        is_pivot_.assign(n_, false);
        pivot_cols_.clear();
        rank_ = 0;
        pi_ = Ser::one();
        pivot_exp_sum_ = 0;
        unshifted_pivot_val_sum_ = 0;

        if (rule_ == PivotRule::ColumnScan) {
            for (std::size_t c = 0; c < n_ && rank_ < m_; ++c) {
                if (const auto r = column_scan_pivot(c)) {
                    eliminate(*r, c);
                }
            }
        } else {
            while (rank_ < m_) {
                const auto best = min_valuation_pivot();
                if (!best) {
                    break;
                }
                eliminate(best->first, best->second);
            }
        }
        return finish();
    }

    // Degree bound: a nonzero entry of a non-pivot row i has valuation at
    // most this value.
    std::int64_t schur_bound(std::size_t i) const
    {
        return pivot_exp_sum_ + max_exp_[origin_[i]] - unshifted_pivot_val_sum_ + sigma_[i];
    }
    std::int64_t reduced_bound() const
    {
        return pivot_exp_sum_ - unshifted_pivot_val_sum_;
    }

    // Turns an entry with no known term into an exact zero when its
    // precision exceeds the bound; otherwise asks for a higher order. The
    // order at most doubles per restart: an entry of high valuation usually
    // shows up long before the bound is reached.
    void certify_zero(Ser &x, std::int64_t bound) const
    {
        resolve(x, bound, bound + 1);
    }

    // An entry with no known term is either certified zero or known to have
    // valuation >= need; otherwise asks for a higher order.
    void resolve(Ser &x, std::int64_t bound, std::int64_t need) const
    {
        if (x.exact() || x.known_nonzero()) {
            return;
        }
        if (x.prec > bound) {
            x = Ser();
            return;
        }
        if (x.prec >= need) {
            return;
        }
        throw NeedPrecision{cap_ + std::min(need - x.prec, std::max<std::int64_t>(cap_, 1))};
    }

    // Valuations in row i are those of the input row plus the polynomialization
    // offset of its original row.
    std::int64_t row_offset(std::size_t i) const
    {
        return offset_[origin_[i]];
    }

    std::optional<std::size_t> column_scan_pivot(std::size_t c)
    {
        std::optional<std::size_t> best;
        std::int64_t best_val = 0;
        for (std::size_t i = rank_; i < m_; ++i) {
            const Ser &x = W_[i][c];
            if (!x.known_nonzero()) {
                continue;
            }
            const std::int64_t v = x.low - row_offset(i);
            if (!best || v < best_val || (v == best_val && origin_[i] < origin_[*best])) {
                best = i;
                best_val = v;
            }
        }
        // An entry without known terms must provably lose against the best.
        for (std::size_t i = rank_; i < m_; ++i) {
            Ser &x = W_[i][c];
            if (x.known_nonzero() || x.exact()) {
                continue;
            }
            if (best) {
                const std::int64_t p = x.prec - row_offset(i);
                if (p > best_val || (p == best_val && origin_[i] > origin_[*best])) {
                    continue;
                }
                resolve(x, schur_bound(i), best_val + row_offset(i) + 1);
                continue;
            }
            certify_zero(x, schur_bound(i));
        }
        return best;
    }

    std::optional<std::pair<std::size_t, std::size_t>> min_valuation_pivot()
    {
        for (std::size_t i = rank_; i < m_; ++i) {
            std::optional<std::int64_t> row_min;
            for (std::size_t c = 0; c < n_; ++c) {
                if (!is_pivot_[c] && W_[i][c].known_nonzero() && (!row_min || W_[i][c].low < *row_min)) {
                    row_min = W_[i][c].low;
                }
            }
            for (std::size_t c = 0; c < n_; ++c) {
                Ser &x = W_[i][c];
                if (is_pivot_[c] || x.known_nonzero() || x.exact()) {
                    continue;
                }
                if (!row_min) {
                    certify_zero(x, schur_bound(i));
                } else if (x.prec <= *row_min) {
                    resolve(x, schur_bound(i), *row_min + 1);
                }
            }
            if (row_min && *row_min != 0) {
                for (auto &x : W_[i]) {
                    x.shift(-*row_min);
                }
                sigma_[i] -= *row_min;
            }
        }
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t c = 0; c < n_ && !best; ++c) {
            if (is_pivot_[c]) {
                continue;
            }
            for (std::size_t i = rank_; i < m_; ++i) {
                const Ser &x = W_[i][c];
                if (x.known_nonzero() && x.low == 0 && (!best || origin_[i] < origin_[best->first])) {
                    best = std::make_pair(i, c);
                }
            }
        }
        return best;
    }

    // Fraction-free Gauss-Jordan step. Rows are stored scaled by the current
    // pivot series pi_ (valuation 0): every entry of a non-pivot row is pi_
    // times the Schur complement entry, and every entry of a pivot row is pi_
    // times the reduced entry, so valuations match the unscaled elimination
    // and all coefficients stay integral.
    void eliminate(std::size_t r, std::size_t c)
    {
        std::swap(W_[r], W_[rank_]);
        std::swap(origin_[r], origin_[rank_]);
        std::swap(sigma_[r], sigma_[rank_]);
        r = rank_;
        std::vector<Ser> &row = W_[r];
        const std::int64_t delta = row[c].low;
        unshifted_pivot_val_sum_ += delta - sigma_[r];
        pivot_exp_sum_ += max_exp_[origin_[r]];
        if (delta != 0) {
            for (auto &x : row) {
                x.shift(-delta);
                x.truncate(cap_);
            }
        }
        const Ser pivot = row[c];

        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) {
                continue;
            }
            const Ser factor = W_[i][c];
            for (std::size_t j = 0; j <= n_; ++j) {
                if (j == c || (j < n_ && is_pivot_[j])) {
                    continue;
                }
                Ser t = mul(pivot, W_[i][j], cap_);
                if (!factor.exact_zero() && !row[j].exact_zero()) {
                    sub_in_place(t, mul(factor, row[j], cap_));
                }
                W_[i][j] = div_exact(t, pi_, cap_);
            }
            W_[i][c] = Ser();
        }
        pi_ = pivot;
        is_pivot_[c] = true;
        pivot_cols_.push_back(c);
        ++rank_;
    }

    // Terms t^k, k <= 0, of the reduced entry x / pi_.
    SeriesHead head(Ser &x, std::int64_t bound) const
    {
        resolve(x, bound, 1);
        SeriesHead out;
        if (x.known_nonzero()) {
            out.valuation = Valuation(Rational(x.low));
            const std::int64_t prec = std::min(x.prec, add_prec(pi_.prec, x.low));
            if (prec < 1) {
                throw NeedPrecision{cap_ + (1 - prec)};
            }
            if (x.low <= 0) {
                const auto count = static_cast<std::size_t>(1 - x.low);
                const std::vector<Rational> inv = rational_inverse(pi_, count);
                for (std::size_t k = 0; k < count; ++k) {
                    Rational acc = 0;
                    for (std::size_t i = 0; i <= k && i < x.c.size(); ++i) {
                        if (sgn(x.c[i]) != 0) {
                            acc += x.c[i] * inv[k - i];
                        }
                    }
                    if (sgn(acc) != 0) {
                        out.terms.emplace_back(x.low + static_cast<std::int64_t>(k), std::move(acc));
                    }
                }
            }
        } else if (!x.exact()) {
            out.valuation = Valuation(Rational(x.prec));
            out.valuation_exact = false;
        }
        return out;
    }

    ReducedSystem finish()
    {
        ReducedSystem out;
        out.route = Reduction::Series;
        out.rank = rank_;
        out.pivot_cols = pivot_cols_;
        for (std::size_t k = 0; k < rank_; ++k) {
            out.pivot_rows.push_back(origin_[k]);
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (!is_pivot_[j]) {
                out.free_cols.push_back(j);
            }
        }
        // Remaining rows: zero matrix part; the right-hand side decides
        // consistency.
        for (std::size_t i = rank_; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (!is_pivot_[j]) {
                    if (W_[i][j].known_nonzero()) {
                        throw std::logic_error("series reduction left a nonzero entry below the rank");
                    }
                    certify_zero(W_[i][j], schur_bound(i));
                }
            }
            Ser &rhs = W_[i][n_];
            certify_zero(rhs, schur_bound(i));
            if (rhs.known_nonzero()) {
                out.consistent = false;
            }
        }
        const std::int64_t bound = reduced_bound();
        for (std::size_t k = 0; k < rank_; ++k) {
            for (const std::size_t j : out.free_cols) {
                out.entries.push_back(head(W_[k][j], bound));
            }
            out.rhs.push_back(head(W_[k][n_], bound));
        }
        return out;
    }

    std::size_t m_;
    std::size_t n_;
    PivotRule rule_;
    std::vector<std::vector<LaurentPoly>> rows_;
    std::vector<std::int64_t> max_exp_;
    std::vector<std::int64_t> offset_;

    std::int64_t cap_ = 1;
    std::vector<std::vector<Ser>> W_;
    std::vector<std::size_t> origin_;
    std::vector<std::int64_t> sigma_;
    std::vector<bool> is_pivot_;
    std::vector<std::size_t> pivot_cols_;
    std::size_t rank_ = 0;
    Ser pi_ = Ser::one();
    std::int64_t pivot_exp_sum_ = 0;
    std::int64_t unshifted_pivot_val_sum_ = 0;
};

} // namespace

ReducedSystem reduce_series(const Matrix<PuiseuxRational> &A, const std::vector<PuiseuxRational> &b, PivotRule rule)
{
    if (A.rows() != b.size()) {
        throw std::invalid_argument("reduce_series: rhs length does not match row count");
    }
    return SeriesEliminator(A, b, rule).run();
}

} // namespace troplift
