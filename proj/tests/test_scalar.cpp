#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <troplift/puiseux.hpp>

using namespace troplift;

namespace
{

Rational Q(const char *s)
{
    return parse_rational(s);
}

PuiseuxRational mono(const char *c, const char *e)
{
    return PuiseuxRational::monomial(Q(c), Q(e));
}

const PuiseuxRational t = mono("1", "1");
const PuiseuxRational one = 1;

PuiseuxRational random_element(std::mt19937_64 &rng)
{
    auto poly = [&rng](bool allow_zero) {
        std::uniform_int_distribution<int> count(allow_zero ? 0 : 1, 3);
        std::uniform_int_distribution<int> exponent(-6, 6);
        std::uniform_int_distribution<int> coeff(-9, 9);
        std::uniform_int_distribution<int> grid(1, 3);
        const int q = grid(rng);
        std::vector<GridTerm> terms;
        for (int i = count(rng); i > 0; --i) {
            int c = coeff(rng);
            terms.push_back({exponent(rng), Rational(c == 0 ? 1 : c, 1 + (i % 2))});
        }
        return LaurentPoly::from_terms(q, terms);
    };
    LaurentPoly num = poly(true);
    LaurentPoly den = poly(false);
    while (den.is_zero()) {
        den = poly(false);
    }
    return PuiseuxRational(num, den);
}

} // namespace

TEST_CASE("rational parsing is exact")
{
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK(format_rational(parse_rational("-3/9")) == "-1/3");
    CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(" 1"), std::invalid_argument);
}

TEST_CASE("valuation examples")
{
    CHECK(valuation(t.inverse() + 3 + t) == Valuation(-1));
    CHECK(valuation(PuiseuxRational()) == Valuation::infinity());
    CHECK(valuation(PuiseuxRational()).is_infinite());
    const PuiseuxRational a = (t * t + t * t * t) / (one - t);
    CHECK(valuation(a) == Valuation(2));
}

TEST_CASE("field_op examples")
{
    const PuiseuxRational half = mono("1", "1/2");
    CHECK(field_op(FieldOp::mul, half, half) == t);

    const PuiseuxRational q = field_op(FieldOp::div, one, one - t);
    CHECK(q.num() == LaurentPoly::constant(1));
    CHECK(q.den() == (one - t).num());

    CHECK(field_op(FieldOp::add, t.inverse() + 1, -t.inverse()) == one);
    CHECK_THROWS_AS(field_op(FieldOp::div, one, PuiseuxRational()), DivisionByZero);
    CHECK(field_op(FieldOp::neg, t, PuiseuxRational()) == -t);
    CHECK(field_op(FieldOp::sub, t, t).is_zero());
}

TEST_CASE("canonical form")
{
    // (t^2 - 1) / (t - 1) = t + 1
    const PuiseuxRational a(((t * t) - one).num(), (t - one).num());
    CHECK(a == t + one);
    CHECK(a.is_laurent());
    // den gets valuation 0 and lowest coefficient 1
    const PuiseuxRational b(LaurentPoly::constant(1), (mono("2", "1") + mono("4", "2")).num());
    CHECK(b.den().min_exponent() == 0);
    CHECK(b.den().lowest_coefficient() == 1);
    CHECK(valuation(b) == Valuation(-1));
    // mixed grids share a common factor only on the common grid
    const PuiseuxRational c = (t - one) / (mono("1", "1/2") - one);
    CHECK(c == mono("1", "1/2") + one);
    CHECK_THROWS_AS(PuiseuxRational(LaurentPoly::constant(1), LaurentPoly()), DivisionByZero);
}

TEST_CASE("coefficient_at examples")
{
    CHECK(coefficient_at(one / (one - t), 2) == 1);
    CHECK(coefficient_at(t.inverse() + 3 + t, 0) == 3);
    const PuiseuxRational a = t * t / (one + t);
    CHECK(coefficient_at(a, 3) == -1);
    CHECK(coefficient_at(a, 2) == 1);
    CHECK(coefficient_at(a, 1) == 0);
    CHECK(coefficient_at(a, Q("5/2")) == 0);
    // cross-check: multiply the truncated expansion back by (1 + t)
    PuiseuxRational s;
    for (const auto &term : expansion(a, 4)) {
        s += PuiseuxRational::monomial(term.coefficient, term.exponent);
    }
    CHECK(valuation(a - s) > Valuation(4));
    CHECK(valuation((one + t) * s - t * t) == Valuation(5));
}

TEST_CASE("scale_by_monomial examples")
{
    CHECK(scale_by_monomial(one + t, Q("1/2")) == mono("1", "1/2") + mono("1", "3/2"));
    CHECK(scale_by_monomial(PuiseuxRational(), 7).is_zero());
    CHECK(valuation(scale_by_monomial(t.inverse() + 1, 3)) == Valuation(2));
}

TEST_CASE("regrid examples")
{
    CHECK(regrid(mono("1", "1/2") + t, 2) == t + t * t);
    CHECK(regrid(one, 5) == one);
    CHECK(valuation(regrid(mono("1", "-1/3"), 3)) == Valuation(-1));
    const PuiseuxRational a = (one + mono("2", "1/3")) / (one - mono("1", "3/2"));
    CHECK(regrid_by(regrid(a, 6), Rational(1, 6)) == a);
}

TEST_CASE("to_string")
{
    CHECK(t.to_string() == "t");
    CHECK((one - t).to_string() == "1 - t");
    CHECK(mono("-3/2", "-1/2").to_string() == "-3/2*t^(-1/2)");
    CHECK((one / (one + t)).to_string() == "(1)/(1 + t)");
}

TEST_CASE("randomized field properties")
{
    std::mt19937_64 rng(20261018);
    for (int iter = 0; iter < 400; ++iter) {
        const PuiseuxRational a = random_element(rng);
        const PuiseuxRational b = random_element(rng);
        if (!a.is_zero() && !b.is_zero()) {
            CHECK(valuation(a * b) == valuation(a) + valuation(b));
            CHECK((a * b) / b == a);
        }
        const Valuation va = valuation(a);
        const Valuation vb = valuation(b);
        CHECK(valuation(a + b) >= std::min(va, vb));
        if (va != vb) {
            CHECK(valuation(a + b) == std::min(va, vb));
        }
        CHECK((a + b) - b == a);
        if (!a.is_zero()) {
            const Rational E = va.value() + 3;
            PuiseuxRational s;
            for (const auto &term : expansion(a, E)) {
                CHECK(coefficient_at(a, term.exponent) == term.coefficient);
                s += PuiseuxRational::monomial(term.coefficient, term.exponent);
            }
            CHECK(valuation(a - s) > Valuation(E));
        }
    }
}
