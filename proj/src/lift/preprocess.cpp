#include <troplift/lift.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace troplift
{

std::string to_string(Stage stage)
{
    switch (stage) {
    case Stage::InfeasibleOverK:
        return "InfeasibleOverK";
    case Stage::EmptyClassWithRhs:
        return "EmptyClassWithRhs";
    case Stage::System3Infeasible:
        return "System3Infeasible";
    case Stage::FamilyLVanishes:
        return "FamilyLVanishes";
    }
    return "unknown";
}

StrippedInstance strip_infinite(const Instance &inst, const TropPoint &v)
{
    if (v.size() != inst.cols()) {
        throw std::invalid_argument("point has " + std::to_string(v.size()) + " coordinates, instance has " +
                                    std::to_string(inst.cols()) + " columns");
    }
    StrippedInstance out;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v.coords[j].is_infinite()) {
            out.pinned.push_back(j);
        } else {
            out.kept.push_back(j);
            out.v.coords.push_back(v.coords[j]);
        }
    }
    Matrix<PuiseuxRational> A(inst.rows(), out.kept.size());
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        for (std::size_t k = 0; k < out.kept.size(); ++k) {
            A(i, k) = inst.A(i, out.kept[k]);
        }
    }
    out.inst = Instance(std::move(A), inst.b);
    return out;
}

namespace
{

Rational fractional_part(const Rational &x)
{
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational out = x - Rational(fl);
    out.canonicalize();
    return out;
}

} // namespace

std::vector<Subsystem> normalize_and_partition(const Instance &inst, const TropPoint &v)
{
    const std::size_t n = inst.cols();
    if (v.size() != n) {
        throw std::invalid_argument("point length does not match column count");
    }
    const std::int64_t Q = inst.grid_den();
    const Instance regridded = Q == 1 ? inst : regrid(inst, Q);
    std::vector<Rational> vq(n);
    std::vector<Rational> residue(n);
    std::set<Rational> classes;
    for (std::size_t j = 0; j < n; ++j) {
        if (v.coords[j].is_infinite()) {
            throw std::invalid_argument("normalize_and_partition needs a finite point");
        }
        vq[j] = v.coords[j].value() * Q;
        residue[j] = fractional_part(vq[j]);
        classes.insert(residue[j]);
    }
    const bool rhs_nonzero = std::any_of(inst.b.begin(), inst.b.end(), [](const PuiseuxRational &x) { return !x.is_zero(); });
    const bool rhs_only = rhs_nonzero && !classes.contains(Rational(0));
    if (rhs_only) {
        classes.insert(Rational(0));
    }

    std::vector<Subsystem> out;
    for (const Rational &rho : classes) {
        Subsystem sub;
        sub.class_residue = rho;
        sub.grid_factor = Q;
        sub.row_shift = -rho;
        sub.rhs_only = rhs_only && rho == 0;
        sub.A_c = Matrix<PuiseuxRational>(inst.rows(), n);
        for (std::size_t j = 0; j < n; ++j) {
            if (residue[j] == rho) {
                sub.columns.push_back(j);
                sub.roles.push_back(ColumnRole::Equality);
                sub.column_shift.push_back(vq[j]);
            } else {
                // Smallest element of rho + Z strictly above vq_j.
                sub.roles.push_back(ColumnRole::Bounded);
                Rational mu = vq[j] - fractional_part(vq[j] - rho) + 1;
                mu.canonicalize();
                sub.column_shift.push_back(mu);
            }
            const Rational e = sub.column_shift[j] - rho;
            for (std::size_t i = 0; i < inst.rows(); ++i) {
                sub.A_c(i, j) = scale_by_monomial(regridded.A(i, j), e);
            }
        }
        if (rho == 0) {
            sub.rhs_c = regridded.b;
        } else {
            sub.rhs_c.assign(inst.rows(), PuiseuxRational());
        }
        out.push_back(std::move(sub));
    }
    return out;
}

} // namespace troplift
