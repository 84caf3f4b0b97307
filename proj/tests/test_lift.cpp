#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <troplift/lift.hpp>
#include <troplift/series_reduce.hpp>

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

Instance row_instance(std::vector<PuiseuxRational> row, PuiseuxRational rhs)
{
    Matrix<PuiseuxRational> A(1, row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
        A(0, j) = row[j];
    }
    return Instance(A, {rhs});
}

TropPoint point(std::initializer_list<const char *> coords)
{
    TropPoint v;
    for (const char *c : coords) {
        v.coords.push_back(std::string(c) == "inf" ? Valuation::infinity() : Valuation(Q(c)));
    }
    return v;
}

Instance E1()
{
    return row_instance({one, t}, one);
}
Instance E2()
{
    return row_instance({one, one, one}, PuiseuxRational());
}
Instance E3()
{
    return row_instance({one, t.inverse() + one}, one);
}
Instance E4()
{
    return row_instance({one, t.inverse() + one, t.inverse()}, one);
}

VarId y(std::size_t col, std::int64_t l)
{
    return VarId{col - 1, l};
}

LinearForm form(const char *constant, std::initializer_list<std::pair<VarId, const char *>> terms)
{
    LinearForm f;
    f.constant = Q(constant);
    for (const auto &[id, c] : terms) {
        f.add_term(id, Q(c));
    }
    return f;
}

struct Pipeline {
    Subsystem sub;
    ReducedSystem reduced;
    UnknownLayout layout;
    Forms forms;
};

Pipeline run_single_class(const Instance &inst, const TropPoint &v)
{
    auto classes = normalize_and_partition(inst, v);
    REQUIRE(classes.size() == 1);
    Pipeline p{classes.front(), {}, {}, {}};
    p.reduced = reduce(p.sub, DecideOptions{});
    p.layout = attach_unknowns(p.sub, p.reduced);
    p.forms = build_forms(p.sub, p.reduced, p.layout);
    return p;
}

LaurentPoly random_poly(std::mt19937_64 &rng, int max_terms, int lo, int hi)
{
    std::uniform_int_distribution<int> count(0, max_terms);
    std::uniform_int_distribution<int> exponent(lo, hi);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::vector<GridTerm> terms;
    for (int i = count(rng); i > 0; --i) {
        terms.push_back({exponent(rng), Rational(coeff(rng))});
    }
    return LaurentPoly::from_terms(1, terms);
}

} // namespace

TEST_CASE("strip_infinite examples")
{
    const Instance inst = row_instance({one, one}, one);
    const StrippedInstance s = strip_infinite(inst, point({"0", "inf"}));
    CHECK(s.inst.cols() == 1);
    CHECK(s.inst.A(0, 0) == one);
    CHECK(s.v == point({"0"}));
    CHECK(s.pinned == std::vector<std::size_t>{1});
    CHECK(s.kept == std::vector<std::size_t>{0});

    const StrippedInstance same = strip_infinite(E1(), point({"3", "-1"}));
    CHECK(same.inst.A == E1().A);
    CHECK(same.pinned.empty());

    const StrippedInstance none = strip_infinite(inst, point({"inf", "inf"}));
    CHECK(none.inst.cols() == 0);
    const LiftResult r = decide(inst, point({"inf", "inf"}));
    CHECK_FALSE(r.member);
    CHECK(r.stage == Stage::InfeasibleOverK);
    const LiftResult z = decide(E2(), point({"inf", "inf", "inf"}));
    CHECK(z.member);
}

TEST_CASE("normalize_and_partition examples")
{
    Matrix<PuiseuxRational> A(1, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        A(0, j) = one;
    }
    const auto classes = normalize_and_partition(Instance(A, {one}), point({"1/2", "3/2", "0", "2"}));
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].class_residue == 0);
    CHECK(classes[0].columns == std::vector<std::size_t>{2, 3});
    CHECK(classes[0].rhs_c[0] == one);
    CHECK(classes[1].class_residue == Q("1/2"));
    CHECK(classes[1].columns == std::vector<std::size_t>{0, 1});
    CHECK(classes[1].rhs_c[0].is_zero());

    // E1 at (3, -1): the scaled row is [t^3, 1] with rhs 1.
    const auto e1 = normalize_and_partition(E1(), point({"3", "-1"}));
    REQUIRE(e1.size() == 1);
    CHECK(e1[0].A_c(0, 0) == t * t * t);
    CHECK(e1[0].A_c(0, 1) == one);
    CHECK(e1[0].rhs_c[0] == one);

    const auto half = normalize_and_partition(row_instance({one, one}, one), point({"1/2", "1/2"}));
    REQUIRE(half.size() == 2);
    CHECK(half[0].rhs_only);
    CHECK(half[0].columns.empty());
    const LiftResult r = decide(row_instance({one, one}, one), point({"1/2", "1/2"}));
    CHECK_FALSE(r.member);
    CHECK(r.stage == Stage::EmptyClassWithRhs);
}

TEST_CASE("attach_unknowns examples")
{
    const Pipeline e1 = run_single_class(E1(), point({"0", "0"}));
    REQUIRE(e1.layout.free.size() == 1);
    CHECK(e1.layout.free[0].col == 1);
    CHECK(e1.layout.free[0].kind == UnknownKind::FixedOne);

    const Pipeline e3 = run_single_class(E3(), point({"0", "0"}));
    REQUIRE(e3.layout.free.size() == 1);
    CHECK(e3.layout.free[0].degree() == 1);
    CHECK(e3.layout.variables == std::vector<VarId>{y(2, 0), y(2, 1)});

    const Pipeline e2 = run_single_class(E2(), point({"0", "0", "0"}));
    CHECK(e2.layout.variables == std::vector<VarId>{y(2, 0), y(3, 0)});
}

TEST_CASE("build_forms examples")
{
    const Pipeline e1 = run_single_class(E1(), point({"0", "0"}));
    CHECK(e1.layout.s[0] == Valuation(0));
    CHECK(e1.forms.system3.empty());
    REQUIRE(e1.forms.family.size() == 1);
    CHECK(e1.forms.family[0].name == "L_{1,0}");
    CHECK(e1.forms.family[0].form == form("-1", {}));

    const Pipeline e3 = run_single_class(E3(), point({"0", "0"}));
    REQUIRE(e3.forms.system3.size() == 1);
    CHECK(e3.forms.system3[0].name == "L_{1,-1}");
    CHECK(e3.forms.system3[0].form == form("0", {{y(2, 0), "1"}}));
    REQUIRE(e3.forms.family.size() == 2);
    CHECK(e3.forms.family[0].form == form("-1", {{y(2, 0), "1"}, {y(2, 1), "1"}}));
    CHECK(e3.forms.family[1].name == "y_{2,0}");
    CHECK(e3.forms.family[1].form == form("0", {{y(2, 0), "1"}}));

    const Pipeline e4 = run_single_class(E4(), point({"0", "0", "0"}));
    REQUIRE(e4.forms.system3.size() == 1);
    CHECK(e4.forms.system3[0].form == form("0", {{y(2, 0), "1"}, {y(3, 0), "1"}}));
    REQUIRE(e4.forms.family.size() == 3);
    CHECK(e4.forms.family[0].form == form("-1", {{y(2, 0), "1"}, {y(2, 1), "1"}, {y(3, 1), "1"}}));
    CHECK(e4.forms.family[1].form == form("0", {{y(2, 0), "1"}}));
    CHECK(e4.forms.family[2].form == form("0", {{y(3, 0), "1"}}));
}

TEST_CASE("solve_and_sweep examples")
{
    const Pipeline e2 = run_single_class(E2(), point({"0", "0", "0"}));
    const SweepResult s2 = solve_and_sweep(e2.forms, e2.layout.variables);
    REQUIRE(s2.ok);
    CHECK(s2.dim == 2);
    CHECK(s2.p == 1);
    CHECK(s2.y == std::vector<Rational>{1, 1});

    const Pipeline e3 = run_single_class(E3(), point({"0", "0"}));
    const SweepResult s3 = solve_and_sweep(e3.forms, e3.layout.variables);
    CHECK_FALSE(s3.ok);
    CHECK(s3.stage == Stage::FamilyLVanishes);
    CHECK(s3.failed_form == "y_{2,0}");

    const Pipeline e4 = run_single_class(E4(), point({"0", "0", "0"}));
    const SweepResult s4 = solve_and_sweep(e4.forms, e4.layout.variables);
    REQUIRE(s4.ok);
    CHECK(s4.p <= s4.bound);
    for (const auto &f : e4.forms.family) {
        CHECK(sgn(evaluate(f.form, e4.layout.variables, s4.y)) != 0);
    }
    for (const auto &f : e4.forms.system3) {
        CHECK(sgn(evaluate(f.form, e4.layout.variables, s4.y)) == 0);
    }
}

TEST_CASE("decide on the worked instances")
{
    const LiftResult a = decide(E1(), point({"0", "0"}));
    REQUIRE(a.member);
    CHECK(a.witness == std::vector<PuiseuxRational>{one - t, one});

    const LiftResult b = decide(E1(), point({"1", "0"}));
    CHECK_FALSE(b.member);
    CHECK(b.stage == Stage::System3Infeasible);

    // Column scanning pivots on t^3, leaving x'_2 = y_{2,0} + ... + y_{2,3} t^3;
    // the sweep picks y_{2,3} = 1.
    const LiftResult c = decide(E1(), point({"3", "-1"}));
    REQUIRE(c.member);
    CHECK(c.witness == std::vector<PuiseuxRational>{-(t * t * t), t.inverse() + t * t});
    // Pivoting on the entry of least valuation in the row fixes x'_1 = 1.
    const LiftResult c2 = decide(E1(), point({"3", "-1"}), DecideOptions{PivotRule::MinValuation, Reduction::Auto});
    REQUIRE(c2.member);
    CHECK(c2.witness == std::vector<PuiseuxRational>{t * t * t, t.inverse() - t * t});

    const LiftResult d = decide(E2(), point({"0", "0", "0"}));
    REQUIRE(d.member);
    CHECK(d.witness == std::vector<PuiseuxRational>{PuiseuxRational(-2), one, one});

    const LiftResult e = decide(E3(), point({"0", "0"}));
    CHECK_FALSE(e.member);
    CHECK(e.stage == Stage::FamilyLVanishes);
    CHECK(e.form_id == "y_{2,0}");

    const LiftResult f = decide(E4(), point({"0", "0", "0"}));
    REQUIRE(f.member);
    CHECK(verify_witness(E4(), point({"0", "0", "0"}), f.witness));
    // Deterministic: the first passing candidate, p = 2.
    CHECK(f.witness == std::vector<PuiseuxRational>{-5 - 2 * t, -4 + 2 * t, 4 + 8 * t});
    REQUIRE(f.classes.size() == 1);
    CHECK(f.classes[0].p == 2);
}

TEST_CASE("verify_witness examples")
{
    CHECK(verify_witness(E1(), point({"0", "0"}), {one - t, one}));
    CHECK_FALSE(verify_witness(E1(), point({"0", "0"}), {one, one}));
    CHECK_FALSE(verify_witness(E1(), point({"1", "0"}), {one - t, one}));
    CHECK(verify_witness(E4(), point({"0", "0", "0"}), {-1 - t, one + t, PuiseuxRational(-1)}));
}

TEST_CASE("series reduction agrees with exact reduction")
{
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 150; ++iter) {
        std::uniform_int_distribution<int> dim(1, 5);
        const std::size_t m = static_cast<std::size_t>(dim(rng));
        const std::size_t n = m + static_cast<std::size_t>(dim(rng)) - 1;
        Matrix<PuiseuxRational> A(m, n);
        std::vector<PuiseuxRational> b(m);
        const bool rational_entries = iter % 3 == 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                PuiseuxRational a(random_poly(rng, 2, -3, 3));
                if (rational_entries && !a.is_zero()) {
                    LaurentPoly den = random_poly(rng, 2, 0, 2);
                    if (!den.is_zero()) {
                        a = a / PuiseuxRational(den);
                    }
                }
                A(i, j) = a;
            }
            b[i] = PuiseuxRational(random_poly(rng, 2, -3, 3));
        }
        if (iter % 4 == 1 && m > 1) {
            // dependent rows
            for (std::size_t j = 0; j < n; ++j) {
                A(m - 1, j) = A(0, j) * t + A(1 % m, j);
            }
            b[m - 1] = iter % 8 == 1 ? b[0] * t + b[1 % m] : b[m - 1];
        }
        for (const PivotRule rule : {PivotRule::ColumnScan, PivotRule::MinValuation}) {
            CAPTURE(iter);
            CAPTURE(static_cast<int>(rule));
            const ReducedSystem exact = reduced_from_rref(rref_solve(A, b, rule));
            const ReducedSystem series = reduce_series(A, b, rule);
            REQUIRE(series.rank == exact.rank);
            CHECK(series.consistent == exact.consistent);
            CHECK(series.pivot_cols == exact.pivot_cols);
            CHECK(series.pivot_rows == exact.pivot_rows);
            CHECK(series.free_cols == exact.free_cols);
            for (std::size_t k = 0; k < exact.entries.size(); ++k) {
                CHECK(series.entries[k].terms == exact.entries[k].terms);
                if (exact.entries[k].valuation <= Valuation(0)) {
                    CHECK(series.entries[k].valuation == exact.entries[k].valuation);
                }
            }
            for (std::size_t k = 0; k < exact.rhs.size(); ++k) {
                CHECK(series.rhs[k].terms == exact.rhs[k].terms);
            }
        }
    }
}

TEST_CASE("routes and pivot rules agree on verdicts")
{
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 60; ++iter) {
        std::uniform_int_distribution<int> dim(1, 4);
        const std::size_t m = static_cast<std::size_t>(dim(rng));
        const std::size_t n = m + static_cast<std::size_t>(dim(rng));
        Matrix<PuiseuxRational> A(m, n);
        std::vector<PuiseuxRational> x(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = PuiseuxRational(random_poly(rng, 2, -2, 2));
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                A(i, j) = PuiseuxRational(random_poly(rng, 2, -2, 2));
            }
        }
        const Instance inst(A, multiply(A, x));
        TropPoint v;
        for (const auto &xj : x) {
            v.coords.push_back(valuation(xj));
        }
        if (iter % 2 == 1) {
            for (auto &c : v.coords) {
                if (!c.is_infinite()) {
                    c = c + Valuation(Rational(iter % 3 - 1));
                    break;
                }
            }
        }
        std::optional<bool> verdict;
        for (const Reduction route : {Reduction::Exact, Reduction::Series}) {
            for (const PivotRule rule : {PivotRule::ColumnScan, PivotRule::MinValuation}) {
                const LiftResult r = decide(inst, v, DecideOptions{rule, route});
                if (r.member) {
                    CHECK(verify_witness(inst, v, r.witness));
                }
                if (!verdict) {
                    verdict = r.member;
                }
                CHECK(r.member == *verdict);
                if (iter % 2 == 0) {
                    CHECK(r.member);
                }
            }
        }
    }
}
