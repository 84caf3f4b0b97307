#include <troplift/laurent_poly.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace troplift
{

namespace
{

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("exponent overflow");
    }
    return out;
}

} // namespace

LaurentPoly LaurentPoly::from_raw(std::int64_t q, std::int64_t low, zpoly::ZPoly coeffs, Integer den)
{
    if (q <= 0) {
        throw std::invalid_argument("grid denominator must be positive");
    }
    if (den == 0) {
        throw DivisionByZero();
    }
    zpoly::trim(coeffs);
    const std::size_t zeros = zpoly::low_zeros(coeffs);
    LaurentPoly out;
    if (coeffs.empty()) {
        return out;
    }
    if (zeros != 0) {
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(zeros));
        low += static_cast<std::int64_t>(zeros);
    }
    if (den < 0) {
        den = -den;
        zpoly::negate(coeffs);
    }
    if (den != 1) {
        Integer g = zpoly::content(coeffs);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
        if (g != 1) {
            zpoly::divexact(coeffs, g);
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        }
    }
    std::int64_t g = std::gcd(q, low);
    for (std::size_t i = 1; i < coeffs.size() && g != 1; ++i) {
        if (coeffs[i] != 0) {
            g = std::gcd(g, static_cast<std::int64_t>(i));
        }
    }
    if (g > 1) {
        zpoly::ZPoly packed((coeffs.size() - 1) / static_cast<std::size_t>(g) + 1);
        for (std::size_t i = 0; i < packed.size(); ++i) {
            packed[i] = std::move(coeffs[i * static_cast<std::size_t>(g)]);
        }
        coeffs = std::move(packed);
        low /= g;
        q /= g;
    }
    out.q_ = q;
    out.low_ = low;
    out.coeffs_ = std::move(coeffs);
    out.den_ = std::move(den);
    return out;
}

LaurentPoly LaurentPoly::constant(const Rational &c)
{
    return from_raw(1, 0, {c.get_num()}, c.get_den());
}

LaurentPoly LaurentPoly::monomial(const Rational &c, const Rational &exponent)
{
    const std::int64_t q = to_int64(exponent.get_den());
    const std::int64_t k = to_int64(exponent.get_num());
    return from_raw(q, k, {c.get_num()}, c.get_den());
}

LaurentPoly LaurentPoly::from_terms(std::int64_t q, const std::vector<GridTerm> &terms)
{
    std::map<std::int64_t, Rational> merged;
    for (const auto &term : terms) {
        merged[term.k] += term.coefficient;
    }
    std::erase_if(merged, [](const auto &kv) { return kv.second == 0; });
    if (merged.empty()) {
        return {};
    }
    Integer den = 1;
    for (const auto &[k, c] : merged) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    const std::int64_t low = merged.begin()->first;
    const std::int64_t high = merged.rbegin()->first;
    zpoly::ZPoly coeffs(static_cast<std::size_t>(high - low) + 1);
    for (const auto &[k, c] : merged) {
        Integer scaled = c.get_num() * (den / c.get_den());
        coeffs[static_cast<std::size_t>(k - low)] = std::move(scaled);
    }
    return from_raw(q, low, std::move(coeffs), std::move(den));
}

bool LaurentPoly::is_one() const
{
    return q_ == 1 && low_ == 0 && coeffs_.size() == 1 && coeffs_[0] == 1 && den_ == 1;
}

std::size_t LaurentPoly::term_count() const
{
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer &c) { return c != 0; }));
}

Rational LaurentPoly::min_exponent() const
{
    if (is_zero()) {
        throw std::logic_error("min_exponent of zero polynomial");
    }
    Rational out(Integer(static_cast<long>(low_)), Integer(static_cast<long>(q_)));
    out.canonicalize();
    return out;
}

Rational LaurentPoly::max_exponent() const
{
    if (is_zero()) {
        throw std::logic_error("max_exponent of zero polynomial");
    }
    Rational out(Integer(static_cast<long>(low_ + static_cast<std::int64_t>(coeffs_.size()) - 1)),
                 Integer(static_cast<long>(q_)));
    out.canonicalize();
    return out;
}

std::vector<GridTerm> LaurentPoly::terms() const
{
    std::vector<GridTerm> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) {
            Rational c(coeffs_[i], den_);
            c.canonicalize();
            out.push_back({low_ + static_cast<std::int64_t>(i), std::move(c)});
        }
    }
    return out;
}

Rational LaurentPoly::coefficient(const Rational &exponent) const
{
    if (is_zero()) {
        return 0;
    }
    const Rational scaled = exponent * q_;
    if (!is_integer(scaled)) {
        return 0;
    }
    const Integer idx = scaled.get_num() - low_;
    if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) {
        return 0;
    }
    Rational c(coeffs_[idx.get_ui()], den_);
    c.canonicalize();
    return c;
}

Rational LaurentPoly::lowest_coefficient() const
{
    if (is_zero()) {
        throw std::logic_error("lowest_coefficient of zero polynomial");
    }
    Rational c(coeffs_.front(), den_);
    c.canonicalize();
    return c;
}

zpoly::ZPoly LaurentPoly::spread_coeffs(std::int64_t Q) const
{
    if (Q % q_ != 0) {
        throw std::logic_error("spread_coeffs: grid is not a refinement");
    }
    const auto stride = static_cast<std::size_t>(Q / q_);
    if (stride == 1 || coeffs_.empty()) {
        return coeffs_;
    }
    zpoly::ZPoly out((coeffs_.size() - 1) * stride + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i * stride] = coeffs_[i];
    }
    return out;
}

std::int64_t LaurentPoly::low_on_grid(std::int64_t Q) const
{
    return checked_mul(low_, Q / q_);
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly out = *this;
    zpoly::negate(out.coeffs_);
    return out;
}

namespace
{

LaurentPoly add_scaled(const LaurentPoly &a, const LaurentPoly &b, bool subtract)
{
    if (b.is_zero()) {
        return a;
    }
    if (a.is_zero()) {
        return subtract ? -b : b;
    }
    const std::int64_t Q = lcm_int64(a.grid_den(), b.grid_den());
    zpoly::ZPoly ca = a.spread_coeffs(Q);
    zpoly::ZPoly cb = b.spread_coeffs(Q);
    const std::int64_t la = a.low_on_grid(Q);
    const std::int64_t lb = b.low_on_grid(Q);
    const std::int64_t low = std::min(la, lb);
    // a / da + b / db = (a * db/g + b * da/g) / lcm
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
    const Integer fa = b.denominator() / g;
    const Integer fb = a.denominator() / g;
    const Integer den = fb * b.denominator();
    const auto off_a = static_cast<std::size_t>(la - low);
    const auto off_b = static_cast<std::size_t>(lb - low);
    zpoly::ZPoly out(std::max(off_a + ca.size(), off_b + cb.size()));
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i] != 0) {
            mpz_addmul(out[off_a + i].get_mpz_t(), ca[i].get_mpz_t(), fa.get_mpz_t());
        }
    }
    for (std::size_t i = 0; i < cb.size(); ++i) {
        if (cb[i] != 0) {
            if (subtract) {
                mpz_submul(out[off_b + i].get_mpz_t(), cb[i].get_mpz_t(), fb.get_mpz_t());
            } else {
                mpz_addmul(out[off_b + i].get_mpz_t(), cb[i].get_mpz_t(), fb.get_mpz_t());
            }
        }
    }
    return LaurentPoly::from_raw(Q, low, std::move(out), den);
}

} // namespace

LaurentPoly operator+(const LaurentPoly &a, const LaurentPoly &b)
{
    return add_scaled(a, b, false);
}

LaurentPoly operator-(const LaurentPoly &a, const LaurentPoly &b)
{
    return add_scaled(a, b, true);
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    const std::int64_t Q = lcm_int64(a.grid_den(), b.grid_den());
    zpoly::ZPoly prod = zpoly::mul(a.spread_coeffs(Q), b.spread_coeffs(Q));
    return LaurentPoly::from_raw(Q, a.low_on_grid(Q) + b.low_on_grid(Q), std::move(prod),
                                 a.denominator() * b.denominator());
}

LaurentPoly LaurentPoly::scaled(const Rational &c) const
{
    if (c == 0 || is_zero()) {
        return {};
    }
    zpoly::ZPoly out = coeffs_;
    zpoly::scale(out, c.get_num());
    return from_raw(q_, low_, std::move(out), den_ * c.get_den());
}

LaurentPoly LaurentPoly::shifted(const Rational &exponent) const
{
    if (is_zero()) {
        return {};
    }
    const std::int64_t Q = lcm_int64(q_, to_int64(exponent.get_den()));
    const std::int64_t extra = checked_mul(to_int64(exponent.get_num()), Q / to_int64(exponent.get_den()));
    return from_raw(Q, low_on_grid(Q) + extra, spread_coeffs(Q), den_);
}

LaurentPoly LaurentPoly::regridded(const Rational &factor) const
{
    if (factor <= 0) {
        throw std::invalid_argument("regrid factor must be positive");
    }
    if (is_zero()) {
        return {};
    }
    // Exponent k/q becomes k*a/(q*b) for factor a/b.
    const std::int64_t a = to_int64(factor.get_num());
    const std::int64_t b = to_int64(factor.get_den());
    const std::int64_t Q = checked_mul(q_, b);
    zpoly::ZPoly out;
    if (a == 1) {
        out = coeffs_;
    } else {
        out.assign((coeffs_.size() - 1) * static_cast<std::size_t>(a) + 1, Integer(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            out[i * static_cast<std::size_t>(a)] = coeffs_[i];
        }
    }
    return from_raw(Q, checked_mul(low_, a), std::move(out), den_);
}

} // namespace troplift
