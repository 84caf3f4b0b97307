#include <troplift/puiseux.hpp>

#include <ostream>
#include <sstream>

namespace troplift
{

const Rational &Valuation::value() const
{
    if (infinite_) {
        throw std::logic_error("value() of infinite valuation");
    }
    return value_;
}

std::strong_ordering operator<=>(const Valuation &a, const Valuation &b)
{
    if (a.infinite_ || b.infinite_) {
        return a.infinite_ == b.infinite_ ? std::strong_ordering::equal
               : a.infinite_             ? std::strong_ordering::greater
                                         : std::strong_ordering::less;
    }
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Valuation operator+(const Valuation &a, const Valuation &b)
{
    if (a.infinite_ || b.infinite_) {
        return Valuation::infinity();
    }
    return Valuation(a.value_ + b.value_);
}

std::string Valuation::to_string() const
{
    return infinite_ ? std::string("inf") : format_rational(value_);
}

std::ostream &operator<<(std::ostream &os, const Valuation &v)
{
    return os << v.to_string();
}

PuiseuxRational::PuiseuxRational(const Rational &c) : num_(LaurentPoly::constant(c)), den_(LaurentPoly::constant(1)) {}

PuiseuxRational::PuiseuxRational(LaurentPoly num) : num_(std::move(num)), den_(LaurentPoly::constant(1)) {}

PuiseuxRational::PuiseuxRational(const LaurentPoly &num, const LaurentPoly &den)
{
    *this = canonicalize(num, den, false);
}

PuiseuxRational PuiseuxRational::monomial(const Rational &c, const Rational &exponent)
{
    return PuiseuxRational(LaurentPoly::monomial(c, exponent));
}

PuiseuxRational PuiseuxRational::canonicalize(const LaurentPoly &num, const LaurentPoly &den, bool coprime)
{
    if (den.is_zero()) {
        throw DivisionByZero();
    }
    if (num.is_zero()) {
        return {};
    }
    if (den.is_one()) {
        return PuiseuxRational(Canonical{}, num, den);
    }
    const std::int64_t Q = lcm_int64(num.grid_den(), den.grid_den());
    zpoly::ZPoly cn = num.spread_coeffs(Q);
    zpoly::ZPoly cd = den.spread_coeffs(Q);
    if (!coprime && cn.size() > 1 && cd.size() > 1) {
        const zpoly::ZPoly g = zpoly::gcd(cn, cd);
        if (g.size() > 1) {
            cn = *zpoly::divide_exact(cn, g);
            cd = *zpoly::divide_exact(cd, g);
        }
    }
    // Move the valuation and the lowest coefficient of den into num.
    const Integer lowest = cd.front();
    zpoly::scale(cn, den.denominator());
    LaurentPoly out_num = LaurentPoly::from_raw(Q, num.low_on_grid(Q) - den.low_on_grid(Q), std::move(cn),
                                                num.denominator() * lowest);
    LaurentPoly out_den = LaurentPoly::from_raw(Q, 0, std::move(cd), lowest);
    return PuiseuxRational(Canonical{}, std::move(out_num), std::move(out_den));
}

std::int64_t PuiseuxRational::grid_den() const
{
    return lcm_int64(num_.grid_den(), den_.grid_den());
}

Valuation PuiseuxRational::valuation() const
{
    if (is_zero()) {
        return Valuation::infinity();
    }
    return Valuation(num_.min_exponent());
}

PuiseuxRational PuiseuxRational::inverse() const
{
    if (is_zero()) {
        throw DivisionByZero();
    }
    return canonicalize(den_, num_, true);
}

PuiseuxRational PuiseuxRational::operator-() const
{
    return PuiseuxRational(Canonical{}, -num_, den_);
}

PuiseuxRational operator+(const PuiseuxRational &a, const PuiseuxRational &b)
{
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    if (a.is_laurent() && b.is_laurent()) {
        return PuiseuxRational(a.num_ + b.num_);
    }
    if (a.den_ == b.den_) {
        return PuiseuxRational::canonicalize(a.num_ + b.num_, a.den_, false);
    }
    return PuiseuxRational::canonicalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, false);
}

PuiseuxRational operator-(const PuiseuxRational &a, const PuiseuxRational &b)
{
    return a + (-b);
}

PuiseuxRational operator*(const PuiseuxRational &a, const PuiseuxRational &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    if (a.is_laurent() && b.is_laurent()) {
        return PuiseuxRational(a.num_ * b.num_);
    }
    // A monomial factor is a unit of the Laurent ring and cannot share a
    // factor with the other denominator.
    const bool coprime = (a.is_laurent() && a.num_.integer_coeffs().size() == 1) ||
                         (b.is_laurent() && b.num_.integer_coeffs().size() == 1);
    return PuiseuxRational::canonicalize(a.num_ * b.num_, a.den_ * b.den_, coprime);
}

PuiseuxRational operator/(const PuiseuxRational &a, const PuiseuxRational &b)
{
    if (b.is_zero()) {
        throw DivisionByZero();
    }
    return a * b.inverse();
}

namespace
{

std::string format_poly(const LaurentPoly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &term : p.terms()) {
        Rational exponent(Integer(static_cast<long>(term.k)), Integer(static_cast<long>(p.grid_den())));
        exponent.canonicalize();
        Rational c = term.coefficient;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            c = abs(c);
        } else if (c < 0 && exponent != 0 && c == -1) {
            os << "-";
            c = 1;
        }
        first = false;
        if (exponent == 0) {
            os << format_rational(c);
            continue;
        }
        if (c != 1) {
            os << format_rational(c) << "*";
        }
        os << "t";
        if (exponent != 1) {
            if (is_integer(exponent) && exponent > 0) {
                os << "^" << format_rational(exponent);
            } else {
                os << "^(" << format_rational(exponent) << ")";
            }
        }
    }
    return os.str();
}

} // namespace

std::string PuiseuxRational::to_string() const
{
    if (is_laurent()) {
        return format_poly(num_);
    }
    return "(" + format_poly(num_) + ")/(" + format_poly(den_) + ")";
}

std::ostream &operator<<(std::ostream &os, const PuiseuxRational &a)
{
    return os << a.to_string();
}

Valuation valuation(const PuiseuxRational &a)
{
    return a.valuation();
}

PuiseuxRational field_op(FieldOp kind, const PuiseuxRational &a, const PuiseuxRational &b)
{
    switch (kind) {
    case FieldOp::add:
        return a + b;
    case FieldOp::sub:
        return a - b;
    case FieldOp::mul:
        return a * b;
    case FieldOp::div:
        return a / b;
    case FieldOp::neg:
        return -a;
    }
    throw std::invalid_argument("unknown field operation");
}

std::vector<ExpansionTerm> expansion(const PuiseuxRational &a, const Exponent &max_exponent)
{
    std::vector<ExpansionTerm> out;
    if (a.is_zero()) {
        return out;
    }
    const LaurentPoly &num = a.num();
    const LaurentPoly &den = a.den();
    const std::int64_t Q = a.grid_den();
    const std::int64_t low = num.low_on_grid(Q);
    const std::int64_t top = floor_to_int64(max_exponent * Q);
    if (top < low) {
        return out;
    }
    const auto count = static_cast<std::size_t>(top - low) + 1;
    const zpoly::ZPoly cn = num.spread_coeffs(Q);
    const zpoly::ZPoly cd = den.spread_coeffs(Q);

    // 1 / den as a power series in s = t^(1/Q); den has constant term
    // cd[0] / den.denominator() = 1.
    std::vector<Rational> inv(count);
    inv[0] = 1;
    std::vector<Rational> dcoef(cd.size());
    for (std::size_t i = 0; i < cd.size(); ++i) {
        dcoef[i] = Rational(cd[i], cd[0]);
        dcoef[i].canonicalize();
    }
    for (std::size_t k = 1; k < count; ++k) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= k && i < dcoef.size(); ++i) {
            if (dcoef[i] != 0) {
                acc -= dcoef[i] * inv[k - i];
            }
        }
        inv[k] = acc;
    }
    for (std::size_t k = 0; k < count; ++k) {
        Rational acc = 0;
        for (std::size_t i = 0; i <= k && i < cn.size(); ++i) {
            if (cn[i] != 0 && inv[k - i] != 0) {
                acc += Rational(cn[i]) * inv[k - i];
            }
        }
        if (acc != 0) {
            acc /= num.denominator();
            Rational e(Integer(static_cast<long>(low + static_cast<std::int64_t>(k))), Integer(static_cast<long>(Q)));
            e.canonicalize();
            out.push_back({std::move(e), std::move(acc)});
        }
    }
    return out;
}

Rational coefficient_at(const PuiseuxRational &a, const Exponent &e)
{
    if (a.is_zero()) {
        return 0;
    }
    if (a.is_laurent()) {
        return a.num().coefficient(e);
    }
    if (!is_integer(e * a.grid_den())) {
        return 0;
    }
    const auto terms = expansion(a, e);
    if (!terms.empty() && terms.back().exponent == e) {
        return terms.back().coefficient;
    }
    return 0;
}

PuiseuxRational scale_by_monomial(const PuiseuxRational &a, const Exponent &e)
{
    if (a.is_zero()) {
        return {};
    }
    return a * PuiseuxRational::monomial(1, e);
}

PuiseuxRational regrid_by(const PuiseuxRational &a, const Rational &factor)
{
    if (a.is_zero()) {
        return {};
    }
    // The substitution is an injective ring map, so coprimality and the
    // normalization of den are preserved.
    return PuiseuxRational(a.num().regridded(factor), a.den().regridded(factor));
}

PuiseuxRational regrid(const PuiseuxRational &a, std::int64_t N)
{
    if (N <= 0) {
        throw std::invalid_argument("regrid factor must be positive");
    }
    return regrid_by(a, Rational(static_cast<long>(N)));
}

} // namespace troplift
