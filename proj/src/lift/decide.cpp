#include <troplift/lift.hpp>

#include <chrono>
#include <stdexcept>

#include <troplift/series_reduce.hpp>

namespace troplift
{

namespace
{

class StageClock
{
public:
    explicit StageClock(std::vector<std::pair<std::string, double>> &sink) : sink_(sink) {}

    void lap(const std::string &name)
    {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        for (auto &[key, total] : sink_) {
            if (key == name) {
                total += ms;
                return;
            }
        }
        sink_.emplace_back(name, ms);
    }

private:
    std::vector<std::pair<std::string, double>> &sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Systems this small are reduced exactly over the rational function field.
constexpr std::size_t exact_route_max_cells = 16;

std::string class_label(const ClassReport &report)
{
    return "class with residue " + format_rational(report.residue) + (report.rhs_only ? " (right-hand side only)" : "");
}

} // namespace

ReducedSystem reduce(const Subsystem &sub, const DecideOptions &options)
{
    Reduction route = options.reduction;
    if (route == Reduction::Auto) {
        route = sub.A_c.rows() * sub.A_c.cols() <= exact_route_max_cells ? Reduction::Exact : Reduction::Series;
    }
    if (route == Reduction::Series) {
        return reduce_series(sub.A_c, sub.rhs_c, options.pivot);
    }
    return reduced_from_rref(rref_solve(sub.A_c, sub.rhs_c, options.pivot));
}

LiftResult decide(const Instance &inst, const TropPoint &v, const DecideOptions &options)
{
    LiftResult result;
    StageClock clock(result.timings_ms);
    const StrippedInstance stripped = strip_infinite(inst, v);
    const std::size_t n = stripped.inst.cols();
    result.witness.assign(inst.cols(), PuiseuxRational());

    if (n == 0) {
        for (const auto &bi : inst.b) {
            if (!bi.is_zero()) {
                result.witness.clear();
                result.stage = Stage::InfeasibleOverK;
                result.detail = "every coordinate is infinite, so x = 0, but b is nonzero";
                return result;
            }
        }
        result.member = true;
        return result;
    }

    const std::vector<Subsystem> subs = normalize_and_partition(stripped.inst, stripped.v);
    clock.lap("partition");
    std::vector<PuiseuxRational> combined(n);
    for (const Subsystem &sub : subs) {
        ClassReport report;
        report.residue = sub.class_residue / sub.grid_factor;
        report.rhs_only = sub.rhs_only;
        for (const std::size_t j : sub.columns) {
            report.equality_columns.push_back(stripped.kept[j]);
        }

        const ReducedSystem reduced = reduce(sub, options);
        clock.lap("reduce");
        report.route = reduced.route;
        report.rank = reduced.rank;
        for (const std::size_t j : reduced.pivot_cols) {
            report.pivot_cols.push_back(stripped.kept[j]);
        }
        if (!reduced.consistent) {
            result.classes.push_back(report);
            result.witness.clear();
            result.stage = Stage::InfeasibleOverK;
            result.detail = "A x = b has no solution over the Puiseux field (rank " + std::to_string(reduced.rank) +
                            ", inconsistent right-hand side)";
            return result;
        }

        const UnknownLayout layout = attach_unknowns(sub, reduced);
        const Forms forms = build_forms(sub, reduced, layout);
        clock.lap("forms");
        for (const FreeUnknown &u : layout.free) {
            report.column_min_valuation.emplace_back(stripped.kept[u.col], u.min_valuation);
        }
        report.s = layout.s;
        report.unknowns = layout.variable_count();
        report.system3_size = forms.system3.size();
        report.family_size = forms.family.size();

        const SweepResult sweep = solve_and_sweep(forms, layout.variables);
        clock.lap("sweep");
        report.dim = sweep.dim;
        report.swept = sweep.ok;
        report.p = sweep.p;
        report.bound = sweep.bound;
        result.classes.push_back(report);
        if (!sweep.ok) {
            result.witness.clear();
            result.stage = sub.rhs_only ? Stage::EmptyClassWithRhs : sweep.stage;
            result.form_id = sweep.failed_form;
            if (sub.rhs_only) {
                result.detail = "b is nonzero but no coordinate of v is congruent to 0, and the residue-0 part of "
                                "x (all coordinates above v) cannot produce b";
            } else if (sweep.stage == Stage::System3Infeasible) {
                result.detail = class_label(report) + ": the negative-order equations (3) have no rational solution";
            } else {
                result.detail =
                    class_label(report) + ": " + sweep.failed_form + " vanishes on every solution of system (3)";
            }
            return result;
        }

        const std::vector<PuiseuxRational> component = reconstruct_witness(sub, reduced, layout, sweep.y);
        for (std::size_t j = 0; j < n; ++j) {
            if (!component[j].is_zero()) {
                combined[j] += scale_by_monomial(component[j], sub.column_shift[j]);
            }
        }
        clock.lap("reconstruct");
    }

    const std::int64_t Q = subs.front().grid_factor;
    for (std::size_t j = 0; j < n; ++j) {
        result.witness[stripped.kept[j]] = Q == 1 ? combined[j] : regrid_by(combined[j], Rational(1, Q));
    }
    result.member = true;
    const bool verified = verify_witness(inst, v, result.witness);
    clock.lap("verify");
    if (!verified) {
        throw std::logic_error("internal error: reconstructed witness fails verification");
    }
    return result;
}

} // namespace troplift
