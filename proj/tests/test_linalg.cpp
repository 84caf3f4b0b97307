#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <troplift/affine.hpp>
#include <troplift/matrix.hpp>

using namespace troplift;

namespace
{

const PuiseuxRational t = PuiseuxRational::monomial(1, 1);

Rational random_rational(std::mt19937_64 &rng, int bound)
{
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

PuiseuxRational random_puiseux(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> terms(0, 2);
    std::uniform_int_distribution<int> exp(-2, 2);
    PuiseuxRational num;
    const int k = terms(rng);
    for (int i = 0; i < k; ++i) {
        num += PuiseuxRational::monomial(random_rational(rng, 5), exp(rng));
    }
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        PuiseuxRational den = PuiseuxRational::monomial(1, 0) + PuiseuxRational::monomial(random_rational(rng, 3), 1);
        if (!den.is_zero()) {
            return num / den;
        }
    }
    return num;
}

template <class F, class Gen>
Matrix<F> random_matrix(std::size_t m, std::size_t n, Gen &&gen)
{
    Matrix<F> A(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            A(i, j) = gen();
        }
    }
    return A;
}

template <class F>
void check_transform(const Matrix<F> &A, const std::vector<F> &b, PivotRule rule)
{
    const RrefResult<F> r = rref_solve(A, b, rule, true);
    REQUIRE(r.transform);
    const Matrix<F> &T = *r.transform;
    const Matrix<F> TA = multiply(T, A);
    const std::vector<F> Tb = multiply(T, b);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            CHECK(TA(i, j) == r.reduced_matrix(i, j));
        }
        CHECK(Tb[i] == r.reduced_rhs[i]);
    }
    // Shape: identity on the pivot columns, zero rows below the rank.
    for (std::size_t k = 0; k < r.rank; ++k) {
        for (std::size_t l = 0; l < r.rank; ++l) {
            CHECK(r.reduced_matrix(k, r.pivot_cols[l]) == F(k == l ? 1 : 0));
        }
    }
    bool any_bad_zero_row = false;
    for (std::size_t i = r.rank; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            CHECK(is_zero(r.reduced_matrix(i, j)));
        }
        any_bad_zero_row = any_bad_zero_row || !is_zero(r.reduced_rhs[i]);
    }
    CHECK(r.consistent == !any_bad_zero_row);
    CHECK(r.pivot_cols.size() + r.free_cols.size() == A.cols());
}

} // namespace

TEST_CASE("rref_solve examples")
{
    SUBCASE("[[t, t]] x = [1]")
    {
        Matrix<PuiseuxRational> A(1, 2);
        A(0, 0) = t;
        A(0, 1) = t;
        const auto r = rref_solve(A, std::vector<PuiseuxRational>{1});
        CHECK(r.rank == 1);
        CHECK(r.pivot_cols == std::vector<std::size_t>{0});
        CHECK(r.free_cols == std::vector<std::size_t>{1});
        CHECK(r.reduced_matrix(0, 0) == PuiseuxRational(1));
        CHECK(r.reduced_matrix(0, 1) == PuiseuxRational(1));
        CHECK(r.reduced_rhs[0] == t.inverse());
        CHECK(r.consistent);
    }
    SUBCASE("identity")
    {
        const auto r = rref_solve(Matrix<Rational>::identity(2), std::vector<Rational>{1, 2});
        CHECK(r.rank == 2);
        CHECK(r.consistent);
        CHECK(r.free_cols.empty());
        CHECK(r.reduced_rhs == std::vector<Rational>{1, 2});
    }
    SUBCASE("contradictory rows")
    {
        Matrix<Rational> A(2, 2);
        A(0, 0) = A(0, 1) = A(1, 0) = A(1, 1) = 1;
        const auto r = rref_solve(A, std::vector<Rational>{1, 2});
        CHECK(r.rank == 1);
        CHECK_FALSE(r.consistent);
    }
}

TEST_CASE("recorded row operations reproduce the reduced system")
{
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        const std::size_t m = 1 + rng() % 4;
        const std::size_t n = 1 + rng() % 5;
        const auto A = random_matrix<Rational>(m, n, [&] { return rng() % 3 == 0 ? Rational(0) : random_rational(rng, 6); });
        std::vector<Rational> b(m);
        for (auto &x : b) {
            x = random_rational(rng, 6);
        }
        check_transform(A, b, PivotRule::ColumnScan);
    }
    for (int iter = 0; iter < 30; ++iter) {
        const std::size_t m = 1 + rng() % 3;
        const std::size_t n = 1 + rng() % 4;
        const auto A = random_matrix<PuiseuxRational>(m, n, [&] { return random_puiseux(rng); });
        std::vector<PuiseuxRational> b(m);
        for (auto &x : b) {
            x = random_puiseux(rng);
        }
        check_transform(A, b, iter % 2 == 0 ? PivotRule::ColumnScan : PivotRule::MinValuation);
    }
}

TEST_CASE("rank is invariant under row permutation and scaling")
{
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 60; ++iter) {
        const std::size_t m = 1 + rng() % 4;
        const std::size_t n = 1 + rng() % 4;
        Matrix<PuiseuxRational> A = random_matrix<PuiseuxRational>(m, n, [&] { return random_puiseux(rng); });
        if (m >= 2 && rng() % 2 == 0) {
            // Force a dependent row.
            for (std::size_t j = 0; j < n; ++j) {
                A(m - 1, j) = A(0, j) * t;
            }
        }
        const std::vector<PuiseuxRational> zero(m);
        const std::size_t rank = rref_solve(A, zero).rank;
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix<PuiseuxRational> B(m, n);
        for (std::size_t i = 0; i < m; ++i) {
            PuiseuxRational s = random_puiseux(rng);
            if (s.is_zero()) {
                s = t;
            }
            for (std::size_t j = 0; j < n; ++j) {
                B(i, j) = A(perm[i], j) * s;
            }
        }
        CHECK(rref_solve(B, zero).rank == rank);
        CHECK(rref_solve(B, zero, PivotRule::MinValuation).rank == rank);
    }
}

TEST_CASE("solve_affine examples")
{
    SUBCASE("y_0 = 0")
    {
        Matrix<Rational> A(1, 2);
        A(0, 0) = 1;
        const auto S = solve_affine(A, {0});
        REQUIRE(S);
        CHECK(S->offset == std::vector<Rational>{0, 0});
        REQUIRE(S->dim() == 1);
        CHECK(S->basis[0] == std::vector<Rational>{0, 1});
    }
    SUBCASE("no constraints")
    {
        const auto S = solve_affine(Matrix<Rational>(0, 2), {});
        REQUIRE(S);
        CHECK(S->offset == std::vector<Rational>{0, 0});
        CHECK(S->basis == std::vector<std::vector<Rational>>{{1, 0}, {0, 1}});
    }
    SUBCASE("y_0 = 1 and y_0 = 2")
    {
        Matrix<Rational> A(2, 1);
        A(0, 0) = A(1, 0) = 1;
        CHECK_FALSE(solve_affine(A, {1, 2}));
    }
}

TEST_CASE("random points of a solution space solve the system")
{
    std::mt19937_64 rng(13);
    int feasible = 0;
    for (int iter = 0; iter < 30; ++iter) {
        const std::size_t m = 1 + rng() % 4;
        const std::size_t n = 1 + rng() % 5;
        const auto A = random_matrix<Rational>(m, n, [&] { return rng() % 3 == 0 ? Rational(0) : random_rational(rng, 5); });
        std::vector<Rational> b(m);
        for (auto &x : b) {
            x = random_rational(rng, 5);
        }
        const auto S = solve_affine(A, b);
        const auto r = rref_solve(A, b);
        CHECK(S.has_value() == r.consistent);
        if (!S) {
            continue;
        }
        ++feasible;
        CHECK(S->dim() == n - r.rank);
        for (int k = 0; k < 100; ++k) {
            std::vector<Rational> y = S->offset;
            for (const auto &w : S->basis) {
                const Rational c = random_rational(rng, 7);
                for (std::size_t j = 0; j < n; ++j) {
                    y[j] += c * w[j];
                }
            }
            CHECK(multiply(A, y) == b);
        }
    }
    CHECK(feasible > 5);
}

TEST_CASE("vanishes_identically examples")
{
    const VarId y0{0, 0};
    const VarId y1{1, 0};
    LinearForm f0;
    f0.add_term(y0, 1);

    SUBCASE("y_0 on {y_0 = 0}")
    {
        const auto S = solve_affine(std::vector<LinearForm>{f0}, {y0, y1});
        REQUIRE(S);
        CHECK(vanishes_identically(f0, *S));
    }
    SUBCASE("y_0 + y_1 - 1 on the plane")
    {
        const auto S = solve_affine(std::vector<LinearForm>{}, {y0, y1});
        REQUIRE(S);
        LinearForm f = f0;
        f.add_term(y1, 1);
        f.constant = -1;
        CHECK_FALSE(vanishes_identically(f, *S));
    }
    SUBCASE("y_{2,0} + y_{3,0} on its own zero set")
    {
        const VarId a{1, 0};
        const VarId b{2, 0};
        LinearForm f;
        f.add_term(a, 1);
        f.add_term(b, 1);
        const auto S = solve_affine(std::vector<LinearForm>{f}, {a, b});
        REQUIRE(S);
        CHECK(vanishes_identically(f, *S));
        CHECK(S->dim() == 1);
    }
}
