#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <troplift/gen.hpp>
#include <troplift/lift.hpp>
#include <troplift/oracle.hpp>

using namespace troplift;

namespace
{

const PuiseuxRational t = PuiseuxRational::monomial(1, 1);

TropPoint point(std::initializer_list<const char *> coords)
{
    TropPoint v;
    for (const char *c : coords) {
        v.coords.push_back(std::string(c) == "inf" ? Valuation::infinity() : Valuation(parse_rational(c)));
    }
    return v;
}

Instance E1()
{
    Matrix<PuiseuxRational> A(1, 2);
    A(0, 0) = 1;
    A(0, 1) = t;
    return Instance(A, {1});
}

Matrix<PuiseuxRational> matrix(std::vector<std::vector<PuiseuxRational>> rows)
{
    Matrix<PuiseuxRational> M(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            M(i, j) = rows[i][j];
        }
    }
    return M;
}

bool proportional(const std::vector<PuiseuxRational> &a, const std::vector<PuiseuxRational> &b)
{
    std::optional<PuiseuxRational> ratio;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].is_zero() != b[j].is_zero()) {
            return false;
        }
        if (a[j].is_zero()) {
            continue;
        }
        const PuiseuxRational r = a[j] / b[j];
        if (ratio && *ratio != r) {
            return false;
        }
        ratio = r;
    }
    return true;
}

} // namespace

TEST_CASE("homogenize examples")
{
    const auto M = homogenize(E1());
    REQUIRE(M.rows() == 1);
    REQUIRE(M.cols() == 3);
    CHECK(M(0, 0) == PuiseuxRational(1));
    CHECK(M(0, 1) == t);
    CHECK(M(0, 2) == PuiseuxRational(-1));

    Matrix<PuiseuxRational> A(1, 2);
    A(0, 0) = 2;
    A(0, 1) = t;
    const auto H = homogenize(Instance(A, {0}));
    CHECK(H(0, 2).is_zero());

    const auto Z = homogenize(Instance(Matrix<PuiseuxRational>(0, 3), {}));
    CHECK(Z.rows() == 0);
    CHECK(Z.cols() == 4);
    CHECK(minimal_support_vectors(Z).empty());
}

TEST_CASE("minimal_support_vectors examples")
{
    SUBCASE("one row")
    {
        const auto circuits = minimal_support_vectors(homogenize(E1()));
        REQUIRE(circuits.size() == 1);
        CHECK(circuits[0].support == std::vector<std::size_t>{0, 1, 2});
        CHECK(proportional(circuits[0].vector, {1, t, -1}));
    }
    SUBCASE("two rows")
    {
        const auto circuits = minimal_support_vectors(matrix({{1, 0, 1}, {0, 1, 1}}));
        std::vector<std::vector<std::size_t>> supports;
        for (const auto &c : circuits) {
            supports.push_back(c.support);
            // Every representative lies in the row space: (a, b, a + b).
            CHECK(c.vector[2] == c.vector[0] + c.vector[1]);
        }
        std::sort(supports.begin(), supports.end());
        CHECK(supports == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {1, 2}});
    }
    SUBCASE("zero column")
    {
        const auto circuits = minimal_support_vectors(matrix({{1, 0, t}, {0, 0, 1}}));
        REQUIRE_FALSE(circuits.empty());
        for (const auto &c : circuits) {
            CHECK(std::find(c.support.begin(), c.support.end(), 1) == c.support.end());
        }
    }
    SUBCASE("column guard")
    {
        Matrix<PuiseuxRational> M(1, 14);
        CHECK_THROWS_AS(minimal_support_vectors(M), TooLarge);
        CHECK_NOTHROW(minimal_support_vectors(Matrix<PuiseuxRational>(1, 13)));
    }
}

TEST_CASE("member_oracle examples")
{
    CHECK(member_oracle(E1(), point({"0", "0"})));
    CHECK_FALSE(member_oracle(E1(), point({"1", "0"})));
    CHECK(member_oracle(E1(), point({"3", "-1"})));
    // x_2 = 0 forces x_1 = 1.
    CHECK(member_oracle(E1(), point({"0", "inf"})));
    CHECK_FALSE(member_oracle(E1(), point({"1", "inf"})));
    CHECK_FALSE(member_oracle(E1(), point({"inf", "inf"})));
}

TEST_CASE("scaling a circuit vector keeps the predicate")
{
    std::mt19937_64 rng(21);
    GenConfig cfg;
    for (int iter = 0; iter < 30; ++iter) {
        cfg.seed = 100 + iter;
        cfg.m = 1 + iter % 3;
        cfg.n = cfg.m + 1 + iter % 3;
        const auto M = homogenize(gen_random(cfg));
        for (const auto &c : minimal_support_vectors(M)) {
            std::vector<Rational> w(M.cols());
            for (auto &x : w) {
                x = Rational(static_cast<int>(rng() % 7) - 3);
            }
            Circuit scaled = c;
            const PuiseuxRational s = PuiseuxRational::monomial(Rational(static_cast<int>(rng() % 5) + 1), Rational(static_cast<int>(rng() % 5) - 2));
            for (auto &x : scaled.vector) {
                x *= s;
            }
            CHECK(min_attained_twice(scaled, w) == min_attained_twice(c, w));
        }
    }
}

TEST_CASE("oracle verdict is invariant under row operations")
{
    std::mt19937_64 rng(22);
    for (int iter = 0; iter < 30; ++iter) {
        GenConfig cfg;
        cfg.seed = 200 + iter;
        cfg.m = 2 + iter % 2;
        cfg.n = cfg.m + 1 + iter % 3;
        const bool planted = iter % 2 == 0;
        Instance inst;
        TropPoint v;
        if (planted) {
            auto p = gen_member(cfg);
            inst = p.inst;
            v = p.v;
        } else {
            inst = gen_random(cfg);
            v = gen_point(cfg);
        }
        // Rows replaced by row_i + c * t^e * row_{i+1}, then reversed.
        Instance mixed = inst;
        for (std::size_t i = 0; i + 1 < inst.rows(); ++i) {
            const PuiseuxRational c = PuiseuxRational::monomial(Rational(static_cast<int>(rng() % 5) + 1), Rational(static_cast<int>(rng() % 3) - 1));
            for (std::size_t j = 0; j < inst.cols(); ++j) {
                mixed.A(i, j) = inst.A(i, j) + c * inst.A(i + 1, j);
            }
            mixed.b[i] = inst.b[i] + c * inst.b[i + 1];
        }
        CHECK(member_oracle(mixed, v) == member_oracle(inst, v));
    }
}

TEST_CASE("oracle accepts every verified witness of decide")
{
    int members = 0;
    for (int iter = 0; iter < 40; ++iter) {
        GenConfig cfg;
        cfg.seed = 300 + iter;
        cfg.m = 1 + iter % 3;
        cfg.n = cfg.m + 1 + iter % 3;
        const auto p = gen_member(cfg);
        const LiftResult r = decide(p.inst, p.v);
        REQUIRE(r.member);
        CHECK(verify_witness(p.inst, p.v, r.witness));
        CHECK(member_oracle(p.inst, p.v));
        ++members;
    }
    CHECK(members == 40);
}
