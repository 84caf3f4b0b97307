#ifndef TROPLIFT_ZPOLY_HPP
#define TROPLIFT_ZPOLY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <troplift/rational.hpp>

// Dense univariate polynomials over the integers. Index i holds the
// coefficient of x^i; a normalized polynomial has a nonzero last entry and
// the zero polynomial is the empty vector.
namespace troplift::zpoly
{

using ZPoly = std::vector<Integer>;

void trim(ZPoly &f);

inline std::int64_t degree(const ZPoly &f)
{
    return static_cast<std::int64_t>(f.size()) - 1;
}

ZPoly add(const ZPoly &a, const ZPoly &b);
ZPoly sub(const ZPoly &a, const ZPoly &b);
ZPoly mul(const ZPoly &a, const ZPoly &b);
void negate(ZPoly &f);
void scale(ZPoly &f, const Integer &c);

// Nonnegative gcd of the coefficients; zero for the zero polynomial.
Integer content(const ZPoly &f);
void divexact(ZPoly &f, const Integer &c);

// Content removed and sign chosen so that the leading coefficient is positive.
ZPoly primitive_part(const ZPoly &f);

// Number of low-order zero coefficients (the power of x dividing f).
std::size_t low_zeros(const ZPoly &f);

// Quotient a / b when b divides a in Z[x]; nullopt otherwise.
std::optional<ZPoly> divide_exact(const ZPoly &a, const ZPoly &b);

// Greatest common divisor with positive leading coefficient; gcd(0, 0) = 0.
ZPoly gcd(const ZPoly &a, const ZPoly &b);

Integer evaluate(const ZPoly &f, const Integer &x);

// Largest coefficient magnitude in bits.
std::size_t max_bits(const ZPoly &f);

} // namespace troplift::zpoly

#endif
