#ifndef TROPLIFT_LAURENT_POLY_HPP
#define TROPLIFT_LAURENT_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <troplift/rational.hpp>
#include <troplift/zpoly.hpp>

namespace troplift
{

// A term coefficient * t^(k/q) on the grid of denominator q.
struct GridTerm {
    std::int64_t k;
    Rational coefficient;
};

// Finite sum of rational multiples of t^(k/q).
//
// Stored as (coeffs / den) * t^(low/q) * sum_i coeffs[i] t^(i/q) with integer
// coeffs, coeffs.front() and coeffs.back() nonzero, den > 0 and coprime to the
// content of coeffs, and q minimal for the exponents present. The zero
// polynomial has no coefficients, q = 1, low = 0 and den = 1.
class LaurentPoly
{
public:
    LaurentPoly() = default;

    static LaurentPoly constant(const Rational &c);
    static LaurentPoly monomial(const Rational &c, const Rational &exponent);
    // Terms given as (k, coefficient) on the grid 1/q; repeated k are summed.
    static LaurentPoly from_terms(std::int64_t q, const std::vector<GridTerm> &terms);
    // Normalizes an arbitrary raw representation.
    static LaurentPoly from_raw(std::int64_t q, std::int64_t low, zpoly::ZPoly coeffs, Integer den);

    bool is_zero() const
    {
        return coeffs_.empty();
    }
    bool is_one() const;
    std::int64_t grid_den() const
    {
        return q_;
    }
    std::int64_t low() const
    {
        return low_;
    }
    const zpoly::ZPoly &integer_coeffs() const
    {
        return coeffs_;
    }
    const Integer &denominator() const
    {
        return den_;
    }
    std::size_t term_count() const;

    // Lowest and highest exponent; the polynomial must be nonzero.
    Rational min_exponent() const;
    Rational max_exponent() const;

    // Nonzero terms in increasing exponent order on the polynomial's own grid.
    std::vector<GridTerm> terms() const;
    Rational coefficient(const Rational &exponent) const;
    // Coefficient of the lowest term; the polynomial must be nonzero.
    Rational lowest_coefficient() const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly &a, const LaurentPoly &b);
    friend LaurentPoly operator-(const LaurentPoly &a, const LaurentPoly &b);
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
    LaurentPoly scaled(const Rational &c) const;
    // Multiplication by t^exponent.
    LaurentPoly shifted(const Rational &exponent) const;
    // Substitution t -> t^factor for a positive rational factor.
    LaurentPoly regridded(const Rational &factor) const;

    friend bool operator==(const LaurentPoly &a, const LaurentPoly &b)
    {
        return a.q_ == b.q_ && a.low_ == b.low_ && a.den_ == b.den_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentPoly &a, const LaurentPoly &b)
    {
        return !(a == b);
    }

    // Raw view on a finer grid Q (a multiple of grid_den()): integer
    // coefficients spaced Q / q apart, and the low exponent in units of 1/Q.
    zpoly::ZPoly spread_coeffs(std::int64_t Q) const;
    std::int64_t low_on_grid(std::int64_t Q) const;

private:
    std::int64_t q_ = 1;
    std::int64_t low_ = 0;
    zpoly::ZPoly coeffs_;
    Integer den_ = 1;
};

} // namespace troplift

#endif
