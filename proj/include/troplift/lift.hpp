#ifndef TROPLIFT_LIFT_HPP
#define TROPLIFT_LIFT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <troplift/affine.hpp>
#include <troplift/instance.hpp>
#include <troplift/matrix.hpp>

namespace troplift
{

enum class Stage {
    InfeasibleOverK,
    EmptyClassWithRhs,
    System3Infeasible,
    FamilyLVanishes,
};

std::string to_string(Stage stage);

// ---- preprocessing -------------------------------------------------------

struct StrippedInstance {
    Instance inst;
    TropPoint v;
    std::vector<std::size_t> kept;   // original index of each remaining column
    std::vector<std::size_t> pinned; // original columns with v_j = inf, x_j = 0
};

StrippedInstance strip_infinite(const Instance &inst, const TropPoint &v);

enum class ColumnRole {
    // Column of the class: the component of x_j must have valuation exactly v_j.
    Equality,
    // Column of another class: the component must vanish or have valuation
    // above v_j.
    Bounded,
};

// The part of A x = b seen by one residue class rho of v (after t -> t^Q):
// the component of x with exponents in rho + Z. Every column takes part;
// x_j = t^(column_shift[j]) x'_j and the rows are multiplied by t^(-rho), so
// that A_c x' = rhs_c has integer exponents and target valuations 0 (Equality)
// or >= 0 (Bounded).
struct Subsystem {
    Rational class_residue;           // rho in [0, 1) on the regridded scale
    std::vector<std::size_t> columns; // equality columns (the congruence class)
    std::vector<ColumnRole> roles;
    Matrix<PuiseuxRational> A_c;
    std::vector<PuiseuxRational> rhs_c; // b for rho = 0, zero otherwise
    std::vector<Rational> column_shift;
    Rational row_shift;
    std::int64_t grid_factor = 1; // Q, the common grid denominator of (A, b)
    // Residue-0 component required by b != 0 although no coordinate of v is
    // an integer multiple of 1/Q.
    bool rhs_only = false;
};

// Requires finite v. Classes are returned by ascending residue.
std::vector<Subsystem> normalize_and_partition(const Instance &inst, const TropPoint &v);

// ---- reduction -------------------------------------------------------------

enum class Reduction {
    Auto,   // Exact for small systems, Series otherwise
    Exact,  // Gauss-Jordan over the rational function field
    Series, // truncated power series with precision tracking
};

struct DecideOptions {
    PivotRule pivot = PivotRule::ColumnScan;
    Reduction reduction = Reduction::Auto;
};

// Low-order part of a reduced entry: every nonzero term t^k with k <= 0.
struct SeriesHead {
    std::vector<std::pair<std::int64_t, Rational>> terms; // ascending k
    // Exact when `terms` is nonempty or valuation_exact; otherwise only a
    // lower bound (>= 1).
    Valuation valuation;
    bool valuation_exact = true;

    Rational coefficient(std::int64_t k) const;
};

struct ReducedSystem {
    std::size_t rank = 0;
    bool consistent = true;
    std::vector<std::size_t> pivot_cols; // reduced row k has its pivot in pivot_cols[k]
    std::vector<std::size_t> pivot_rows; // original row of reduced row k
    std::vector<std::size_t> free_cols;  // ascending
    std::vector<SeriesHead> entries;     // rank x free_cols.size(), row-major
    std::vector<SeriesHead> rhs;         // rank
    Reduction route = Reduction::Exact;
    std::optional<RrefResult<PuiseuxRational>> exact;

    const SeriesHead &entry(std::size_t k, std::size_t f) const
    {
        return entries[k * free_cols.size() + f];
    }
};

ReducedSystem reduce(const Subsystem &sub, const DecideOptions &options);
ReducedSystem reduced_from_rref(RrefResult<PuiseuxRational> rref);

// ---- unknowns and forms ----------------------------------------------------

enum class UnknownKind {
    FixedOne,  // equality column with r_j < 0: x_j = 1
    FixedZero, // bounded column with r_j < 0: x_j = 0
    Poly,      // x_j = y_{j,0} + y_{j,1} t + ... + y_{j,r_j} t^{r_j}
};

struct FreeUnknown {
    std::size_t col = 0;
    ColumnRole role = ColumnRole::Equality;
    UnknownKind kind = UnknownKind::Poly;
    // min over reduced rows of the entry valuation; r_j = -min_valuation.
    Valuation min_valuation;
    bool min_valuation_exact = true;

    // r_j, meaningful when min_valuation is finite.
    std::int64_t degree() const;
};

struct UnknownLayout {
    std::vector<FreeUnknown> free; // parallel to ReducedSystem::free_cols
    std::vector<Valuation> s;      // per reduced row
    std::vector<bool> s_exact;
    std::vector<VarId> variables; // ascending

    std::size_t variable_count() const
    {
        return variables.size();
    }
};

UnknownLayout attach_unknowns(const Subsystem &sub, const ReducedSystem &reduced);

struct NamedForm {
    std::string name; // "L_{i,k}" (i the 1-based reduced row) or "y_{j,0}"
    LinearForm form;
};

struct Forms {
    std::vector<NamedForm> system3; // L_{i,k} = 0 for s_i <= k < 0
    std::vector<NamedForm> family;  // must all be nonzero
};

Forms build_forms(const Subsystem &sub, const ReducedSystem &reduced, const UnknownLayout &layout);

struct SweepResult {
    bool ok = false;
    Stage stage = Stage::System3Infeasible; // when !ok
    std::string failed_form;                // for FamilyLVanishes
    std::vector<Rational> y;                // indexed like the layout variables
    std::size_t dim = 0;                    // r, the dimension of the solution space of (3)
    std::size_t family_size = 0;
    std::size_t p = 0;     // first passing candidate
    std::size_t bound = 0; // family_size * dim + 1
};

SweepResult solve_and_sweep(const Forms &forms, const std::vector<VarId> &variables);

// Solution x' of A_c x' = rhs_c (one entry per column of A_c).
std::vector<PuiseuxRational> reconstruct_witness(const Subsystem &sub, const ReducedSystem &reduced,
                                                 const UnknownLayout &layout, const std::vector<Rational> &y);

// ---- driver ----------------------------------------------------------------

struct ClassReport {
    Rational residue; // on the original exponent scale
    std::vector<std::size_t> equality_columns;
    bool rhs_only = false;
    Reduction route = Reduction::Exact;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    std::vector<std::pair<std::size_t, Valuation>> column_min_valuation; // free column, min valuation
    std::vector<Valuation> s;
    std::size_t unknowns = 0;
    std::size_t system3_size = 0;
    std::size_t family_size = 0;
    std::size_t dim = 0;
    std::size_t p = 0;
    std::size_t bound = 0;
    bool swept = false;
};

struct LiftResult {
    bool member = false;
    std::vector<PuiseuxRational> witness; // when member
    Stage stage = Stage::InfeasibleOverK; // when not member
    std::string form_id;                  // for FamilyLVanishes
    std::string detail;
    std::vector<ClassReport> classes;
    std::vector<std::pair<std::string, double>> timings_ms;
};

LiftResult decide(const Instance &inst, const TropPoint &v, const DecideOptions &options = {});

// A x = b exactly and valuation(x_j) = v_j for every j.
bool verify_witness(const Instance &inst, const TropPoint &v, const std::vector<PuiseuxRational> &x);

} // namespace troplift

#endif
