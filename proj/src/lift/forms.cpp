#include <troplift/lift.hpp>
#include <troplift/square_solve.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace troplift
{

Rational SeriesHead::coefficient(std::int64_t k) const
{
    const auto it = std::lower_bound(terms.begin(), terms.end(), k,
                                     [](const std::pair<std::int64_t, Rational> &term, std::int64_t key) {
                                         return term.first < key;
                                     });
    if (it != terms.end() && it->first == k) {
        return it->second;
    }
    return 0;
}

namespace
{

SeriesHead head_of(const PuiseuxRational &a)
{
    SeriesHead out;
    out.valuation = a.valuation();
    for (auto &term : expansion(a, 0)) {
        if (!is_integer(term.exponent)) {
            throw std::logic_error("reduced entry off the integer grid");
        }
        out.terms.emplace_back(to_int64(term.exponent.get_num()), std::move(term.coefficient));
    }
    return out;
}

} // namespace

ReducedSystem reduced_from_rref(RrefResult<PuiseuxRational> rref)
{
    ReducedSystem out;
    out.rank = rref.rank;
    out.consistent = rref.consistent;
    out.pivot_cols = rref.pivot_cols;
    out.pivot_rows = rref.pivot_rows;
    out.free_cols = rref.free_cols;
    out.route = Reduction::Exact;
    for (std::size_t k = 0; k < rref.rank; ++k) {
        for (const std::size_t j : rref.free_cols) {
            out.entries.push_back(head_of(rref.reduced_matrix(k, j)));
        }
        out.rhs.push_back(head_of(rref.reduced_rhs[k]));
    }
    out.exact = std::move(rref);
    return out;
}

std::int64_t FreeUnknown::degree() const
{
    if (min_valuation.is_infinite()) {
        throw std::logic_error("r_j of an all-zero column");
    }
    return -to_int64(min_valuation.value().get_num());
}

UnknownLayout attach_unknowns(const Subsystem &sub, const ReducedSystem &reduced)
{
    UnknownLayout out;
    for (std::size_t f = 0; f < reduced.free_cols.size(); ++f) {
        FreeUnknown u;
        u.col = reduced.free_cols[f];
        u.role = sub.roles.at(u.col);
        for (std::size_t k = 0; k < reduced.rank; ++k) {
            const SeriesHead &e = reduced.entry(k, f);
            if (e.valuation < u.min_valuation) {
                u.min_valuation = e.valuation;
            }
        }
        // Inexact valuations are lower bounds >= 1; they decide the minimum
        // only when no exact entry reaches 0 or below.
        const bool nonpositive = !u.min_valuation.is_infinite() && u.min_valuation.value() <= 0;
        if (!nonpositive) {
            for (std::size_t k = 0; k < reduced.rank; ++k) {
                const SeriesHead &e = reduced.entry(k, f);
                u.min_valuation_exact = u.min_valuation_exact && (e.valuation_exact || !e.terms.empty());
            }
        }
        if (nonpositive) {
            u.kind = UnknownKind::Poly;
            for (std::int64_t l = 0; l <= u.degree(); ++l) {
                out.variables.push_back({u.col, l});
            }
        } else {
            u.kind = u.role == ColumnRole::Equality ? UnknownKind::FixedOne : UnknownKind::FixedZero;
        }
        out.free.push_back(u);
    }
    for (std::size_t k = 0; k < reduced.rank; ++k) {
        Valuation s = reduced.rhs[k].valuation;
        bool exact = reduced.rhs[k].valuation_exact || !reduced.rhs[k].terms.empty();
        for (std::size_t f = 0; f < reduced.free_cols.size(); ++f) {
            const SeriesHead &e = reduced.entry(k, f);
            if (e.valuation < s) {
                s = e.valuation;
            }
            exact = exact && (e.valuation_exact || !e.terms.empty());
        }
        const bool nonpositive = !s.is_infinite() && s.value() <= 0;
        out.s.push_back(s);
        out.s_exact.push_back(nonpositive || exact);
    }
    return out;
}

namespace
{

std::string form_name(std::size_t row, std::int64_t k)
{
    return "L_{" + std::to_string(row + 1) + "," + std::to_string(k) + "}";
}

// Coefficient of t^k in sum_j a_kj x_j - b_k with the unknown layout.
LinearForm residual_coefficient(const ReducedSystem &reduced, const UnknownLayout &layout, std::size_t row,
                                std::int64_t k)
{
    LinearForm form;
    for (std::size_t f = 0; f < reduced.free_cols.size(); ++f) {
        const FreeUnknown &u = layout.free[f];
        const SeriesHead &e = reduced.entry(row, f);
        if (u.kind == UnknownKind::FixedOne) {
            form.constant += e.coefficient(k);
        } else if (u.kind == UnknownKind::Poly) {
            const std::int64_t r = u.degree();
            for (const auto &[exp, c] : e.terms) {
                const std::int64_t l = k - exp;
                if (l >= 0 && l <= r) {
                    form.add_term({u.col, l}, c);
                }
            }
        }
    }
    form.constant -= reduced.rhs[row].coefficient(k);
    return form;
}

} // namespace

Forms build_forms(const Subsystem &sub, const ReducedSystem &reduced, const UnknownLayout &layout)
{
    Forms out;
    for (std::size_t row = 0; row < reduced.rank; ++row) {
        const Valuation &s = layout.s[row];
        if (!s.is_infinite() && s.value() < 0) {
            for (std::int64_t k = to_int64(s.value().get_num()); k < 0; ++k) {
                out.system3.push_back({form_name(row, k), residual_coefficient(reduced, layout, row, k)});
            }
        }
    }
    for (std::size_t row = 0; row < reduced.rank; ++row) {
        if (sub.roles.at(reduced.pivot_cols[row]) == ColumnRole::Equality) {
            out.family.push_back({form_name(row, 0), residual_coefficient(reduced, layout, row, 0)});
        }
    }
    for (const FreeUnknown &u : layout.free) {
        if (u.role == ColumnRole::Equality && u.kind == UnknownKind::Poly) {
            LinearForm y;
            y.add_term({u.col, 0}, 1);
            out.family.push_back({to_string(VarId{u.col, 0}), y});
        }
    }
    return out;
}

SweepResult solve_and_sweep(const Forms &forms, const std::vector<VarId> &variables)
{
    SweepResult out;
    std::vector<LinearForm> equations;
    for (const auto &f : forms.system3) {
        equations.push_back(f.form);
    }
    const std::optional<AffineSpace> space = solve_affine(equations, variables);
    if (!space) {
        out.stage = Stage::System3Infeasible;
        return out;
    }
    out.dim = space->dim();
    out.family_size = forms.family.size();
    for (const auto &f : forms.family) {
        if (vanishes_identically(f.form, *space)) {
            out.stage = Stage::FamilyLVanishes;
            out.failed_form = f.name;
            return out;
        }
    }
    out.bound = out.family_size * out.dim + 1;
    const std::size_t N = variables.size();
    for (std::size_t p = 1; p <= out.bound; ++p) {
        std::vector<Rational> y = space->offset;
        Rational power = 1;
        for (const auto &w : space->basis) {
            power *= static_cast<unsigned long>(p);
            for (std::size_t i = 0; i < N; ++i) {
                if (sgn(w[i]) != 0) {
                    y[i] += power * w[i];
                }
            }
        }
        const bool pass = std::all_of(forms.family.begin(), forms.family.end(), [&](const NamedForm &f) {
            return sgn(evaluate(f.form, variables, y)) != 0;
        });
        if (pass) {
            out.ok = true;
            out.p = p;
            out.y = std::move(y);
            return out;
        }
    }
    throw std::logic_error("Vandermonde sweep exhausted its bound without a passing candidate");
}

namespace
{

std::vector<PuiseuxRational> free_values(const UnknownLayout &layout, const std::vector<Rational> &y,
                                         std::size_t n)
{
    std::vector<PuiseuxRational> x(n);
    std::size_t next = 0;
    for (const FreeUnknown &u : layout.free) {
        if (u.kind == UnknownKind::FixedOne) {
            x[u.col] = 1;
        } else if (u.kind == UnknownKind::Poly) {
            std::vector<GridTerm> terms;
            for (std::int64_t l = 0; l <= u.degree(); ++l) {
                if (layout.variables.at(next) != VarId{u.col, l}) {
                    throw std::logic_error("unknown layout out of order");
                }
                terms.push_back({l, y.at(next)});
                ++next;
            }
            x[u.col] = PuiseuxRational(LaurentPoly::from_terms(1, terms));
        }
    }
    return x;
}

} // namespace

std::vector<PuiseuxRational> reconstruct_witness(const Subsystem &sub, const ReducedSystem &reduced,
                                                 const UnknownLayout &layout, const std::vector<Rational> &y)
{
    const std::size_t n = sub.A_c.cols();
    std::vector<PuiseuxRational> x = free_values(layout, y, n);
    if (reduced.exact) {
        const RrefResult<PuiseuxRational> &rref = *reduced.exact;
        for (std::size_t k = 0; k < rref.rank; ++k) {
            PuiseuxRational xk = rref.reduced_rhs[k];
            for (const std::size_t j : rref.free_cols) {
                if (!x[j].is_zero() && !rref.reduced_matrix(k, j).is_zero()) {
                    xk -= rref.reduced_matrix(k, j) * x[j];
                }
            }
            x[rref.pivot_cols[k]] = std::move(xk);
        }
        return x;
    }
    // Only the valuations and low-order terms of the reduced system are known:
    // solve the square pivot block exactly.
    const std::size_t r = reduced.rank;
    Matrix<PuiseuxRational> C(r, r);
    std::vector<PuiseuxRational> rhs(r);
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t i = reduced.pivot_rows[k];
        for (std::size_t c = 0; c < r; ++c) {
            C(k, c) = sub.A_c(i, reduced.pivot_cols[c]);
        }
        rhs[k] = sub.rhs_c[i];
        for (const std::size_t j : reduced.free_cols) {
            if (!x[j].is_zero() && !sub.A_c(i, j).is_zero()) {
                rhs[k] -= sub.A_c(i, j) * x[j];
            }
        }
    }
    std::vector<PuiseuxRational> xb = solve_square(C, rhs);
    for (std::size_t c = 0; c < r; ++c) {
        x[reduced.pivot_cols[c]] = std::move(xb[c]);
    }
    return x;
}

} // namespace troplift
