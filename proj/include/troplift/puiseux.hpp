#ifndef TROPLIFT_PUISEUX_HPP
#define TROPLIFT_PUISEUX_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <troplift/laurent_poly.hpp>
#include <troplift/rational.hpp>

namespace troplift
{

using Exponent = Rational;

// Order of vanishing at t = 0: a rational number, or infinity for zero.
class Valuation
{
public:
    Valuation() : infinite_(true) {}
    explicit Valuation(Rational value) : infinite_(false), value_(std::move(value))
    {
        value_.canonicalize();
    }

    static Valuation infinity()
    {
        return {};
    }

    bool is_infinite() const
    {
        return infinite_;
    }
    // Finite value; must not be called on infinity.
    const Rational &value() const;

    friend bool operator==(const Valuation &a, const Valuation &b)
    {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const Valuation &a, const Valuation &b);

    friend Valuation operator+(const Valuation &a, const Valuation &b);

    std::string to_string() const;

private:
    bool infinite_;
    Rational value_;
};

std::ostream &operator<<(std::ostream &os, const Valuation &v);

// Element of Q(t^(1/q)): a ratio num / den of Laurent polynomials.
//
// Canonical form: den has valuation 0 and lowest coefficient 1, and num and
// den have no common factor once written on a common grid. Zero is 0 / 1.
class PuiseuxRational
{
public:
    PuiseuxRational() : den_(LaurentPoly::constant(1)) {}
    PuiseuxRational(const Rational &c); // NOLINT(google-explicit-constructor)
    PuiseuxRational(int c) : PuiseuxRational(Rational(c)) {} // NOLINT(google-explicit-constructor)
    explicit PuiseuxRational(LaurentPoly num);
    // Throws DivisionByZero when den is zero.
    PuiseuxRational(const LaurentPoly &num, const LaurentPoly &den);

    // c * t^exponent
    static PuiseuxRational monomial(const Rational &c, const Rational &exponent);

    const LaurentPoly &num() const
    {
        return num_;
    }
    const LaurentPoly &den() const
    {
        return den_;
    }
    bool is_zero() const
    {
        return num_.is_zero();
    }
    bool is_laurent() const
    {
        return den_.is_one();
    }
    // Common grid denominator of num and den.
    std::int64_t grid_den() const;

    Valuation valuation() const;
    PuiseuxRational inverse() const;

    PuiseuxRational operator-() const;
    friend PuiseuxRational operator+(const PuiseuxRational &a, const PuiseuxRational &b);
    friend PuiseuxRational operator-(const PuiseuxRational &a, const PuiseuxRational &b);
    friend PuiseuxRational operator*(const PuiseuxRational &a, const PuiseuxRational &b);
    friend PuiseuxRational operator/(const PuiseuxRational &a, const PuiseuxRational &b);
    PuiseuxRational &operator+=(const PuiseuxRational &b)
    {
        return *this = *this + b;
    }
    PuiseuxRational &operator-=(const PuiseuxRational &b)
    {
        return *this = *this - b;
    }
    PuiseuxRational &operator*=(const PuiseuxRational &b)
    {
        return *this = *this * b;
    }

    friend bool operator==(const PuiseuxRational &a, const PuiseuxRational &b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const PuiseuxRational &a, const PuiseuxRational &b)
    {
        return !(a == b);
    }

    std::string to_string() const;

private:
    struct Canonical {};
    PuiseuxRational(Canonical, LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {}
    static PuiseuxRational canonicalize(const LaurentPoly &num, const LaurentPoly &den, bool coprime);

    LaurentPoly num_;
    LaurentPoly den_;
};

std::ostream &operator<<(std::ostream &os, const PuiseuxRational &a);

enum class FieldOp { add, sub, mul, div, neg };

// Free-function surface of the scalar field.
Valuation valuation(const PuiseuxRational &a);
// For neg the second operand is ignored. Throws DivisionByZero on div by 0.
PuiseuxRational field_op(FieldOp kind, const PuiseuxRational &a, const PuiseuxRational &b);
// Coefficient of t^e in the expansion of a about t = 0.
Rational coefficient_at(const PuiseuxRational &a, const Exponent &e);
PuiseuxRational scale_by_monomial(const PuiseuxRational &a, const Exponent &e);
// Substitution t -> t^N.
PuiseuxRational regrid(const PuiseuxRational &a, std::int64_t N);
// Substitution t -> t^factor for any positive rational factor.
PuiseuxRational regrid_by(const PuiseuxRational &a, const Rational &factor);

struct ExpansionTerm {
    Exponent exponent;
    Rational coefficient;
};

// Nonzero terms of the expansion of a with exponent <= max_exponent, in
// increasing order.
std::vector<ExpansionTerm> expansion(const PuiseuxRational &a, const Exponent &max_exponent);

} // namespace troplift

#endif
