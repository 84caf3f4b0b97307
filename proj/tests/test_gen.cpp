#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <troplift/gen.hpp>
#include <troplift/lift.hpp>
#include <troplift/oracle.hpp>
#include <troplift/square_solve.hpp>

using namespace troplift;

namespace
{

TropPoint point(std::initializer_list<const char *> coords)
{
    TropPoint v;
    for (const char *c : coords) {
        v.coords.push_back(std::string(c) == "inf" ? Valuation::infinity() : Valuation(parse_rational(c)));
    }
    return v;
}

bool same(const Instance &a, const Instance &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.b != b.b) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.A(i, j) != b.A(i, j)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("generation is deterministic")
{
    GenConfig cfg;
    cfg.seed = 42;
    cfg.m = 3;
    cfg.n = 5;
    CHECK(same(gen_random(cfg), gen_random(cfg)));
    CHECK(gen_point(cfg) == gen_point(cfg));
    const auto a = gen_member(cfg);
    const auto b = gen_member(cfg);
    CHECK(same(a.inst, b.inst));
    CHECK(a.v == b.v);
    CHECK(a.planted == b.planted);
    GenConfig other = cfg;
    other.seed = 43;
    CHECK_FALSE(same(gen_random(cfg), gen_random(other)));
}

TEST_CASE("config validation")
{
    GenConfig cfg;
    cfg.m = 3;
    cfg.n = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n = 3;
    CHECK_NOTHROW(cfg.validate());
    cfg.exp_lo = 2;
    cfg.exp_hi = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.exp_hi = 2;
    cfg.coeff_bound = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("random instances respect the configuration")
{
    GenConfig cfg;
    cfg.m = 4;
    cfg.n = 6;
    cfg.grid_den = 2;
    cfg.terms_per_entry = 2;
    bool zero_seen = false;
    bool half_seen = false;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        cfg.seed = seed;
        const Instance inst = gen_random(cfg);
        CHECK(inst.rows() == 4);
        CHECK(inst.cols() == 6);
        for (std::size_t i = 0; i < inst.rows(); ++i) {
            for (std::size_t j = 0; j < inst.cols(); ++j) {
                const PuiseuxRational &x = inst.A(i, j);
                if (x.is_zero()) {
                    zero_seen = true;
                    continue;
                }
                CHECK(x.is_laurent());
                CHECK(x.num().term_count() <= 2);
                CHECK(2 % x.grid_den() == 0);
                half_seen = half_seen || x.grid_den() == 2;
                for (const auto &term : x.num().terms()) {
                    const Rational e = Rational(term.k, x.grid_den());
                    CHECK(e >= Rational(-3, 2));
                    CHECK(e <= Rational(3, 2));
                }
            }
        }
        for (const auto &c : gen_point(cfg).coords) {
            CHECK(2 % c.value().get_den() == 0);
        }
    }
    CHECK(zero_seen);
    CHECK(half_seen);
}

TEST_CASE("planted members verify by construction")
{
    GenConfig cfg;
    cfg.zero_probability = 0.3;
    bool infinite_seen = false;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        cfg.seed = seed;
        cfg.m = 1 + seed % 3;
        cfg.n = cfg.m + seed % 4;
        const auto p = gen_member(cfg);
        CHECK(verify_witness(p.inst, p.v, p.planted));
        for (std::size_t j = 0; j < p.v.size(); ++j) {
            CHECK(p.v.coords[j] == valuation(p.planted[j]));
            infinite_seen = infinite_seen || p.v.coords[j].is_infinite();
        }
    }
    CHECK(infinite_seen);
}

TEST_CASE("square planted systems have the planted solution as their unique solution")
{
    GenConfig cfg;
    cfg.zero_probability = 0;
    std::size_t regular = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        cfg.seed = seed;
        cfg.m = cfg.n = 2 + seed % 4;
        const auto p = gen_member(cfg);
        if (rref_solve(p.inst.A, p.inst.b).rank < cfg.n) {
            continue;
        }
        ++regular;
        const auto x = solve_square(p.inst.A, p.inst.b);
        CHECK(x == p.planted);
        for (std::size_t j = 0; j < x.size(); ++j) {
            CHECK(valuation(x[j]) == p.v.coords[j]);
        }
    }
    CHECK(regular >= 10);
}

TEST_CASE("perturb_point examples")
{
    const TropPoint v = point({"0", "0"});
    CHECK(perturb_point(v, 0, 0) == v);
    CHECK(perturb_point(v, 0, 1) == point({"1", "0"}));
    CHECK(perturb_point(perturb_point(v, 0, 3), 1, -1) == point({"3", "-1"}));
    CHECK_THROWS_AS(perturb_point(point({"inf", "0"}), 0, 1), std::invalid_argument);
    // Deltas built without canonicalization still land on canonical values.
    const TropPoint moved = perturb_point(v, 1, Rational(2, 2));
    CHECK(moved == point({"0", "1"}));
    CHECK(moved.coords[1].value().get_den() == 1);

    Matrix<PuiseuxRational> A(1, 2);
    A(0, 0) = 1;
    A(0, 1) = PuiseuxRational::monomial(1, 1);
    const Instance E1(A, {1});
    CHECK_FALSE(decide(E1, point({"1", "0"})).member);
    CHECK_FALSE(member_oracle(E1, point({"1", "0"})));
    CHECK(decide(E1, point({"3", "-1"})).member);
    CHECK(member_oracle(E1, point({"3", "-1"})));
}
