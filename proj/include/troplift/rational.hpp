#ifndef TROPLIFT_RATIONAL_HPP
#define TROPLIFT_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace troplift
{

using Integer = mpz_class;
using Rational = mpq_class;

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

// Parses "p" or "p/r" with optional leading sign. Anything else (decimal
// points, exponents, whitespace) is rejected with std::invalid_argument.
Rational parse_rational(std::string_view text);

// Inverse of parse_rational: "p" for integers, "p/r" otherwise.
std::string format_rational(const Rational &value);

inline bool is_integer(const Rational &value)
{
    return value.get_den() == 1;
}

// Floor of a rational as a machine integer; throws std::overflow_error if it
// does not fit.
std::int64_t floor_to_int64(const Rational &value);

std::int64_t to_int64(const Integer &value);

std::int64_t lcm_int64(std::int64_t a, std::int64_t b);
std::int64_t gcd_int64(std::int64_t a, std::int64_t b);

} // namespace troplift

#endif
