#include <troplift/lift.hpp>

namespace troplift
{

namespace
{

// Numerators summed per distinct denominator, so that no gcd is ever taken.
class FractionSum
{
public:
    void add(const PuiseuxRational &a, const PuiseuxRational &x)
    {
        if (a.is_zero() || x.is_zero()) {
            return;
        }
        LaurentPoly num = a.num() * x.num();
        LaurentPoly den = a.is_laurent() ? x.den() : x.is_laurent() ? a.den() : a.den() * x.den();
        accumulate(std::move(num), std::move(den));
    }
    void subtract(const PuiseuxRational &b)
    {
        if (!b.is_zero()) {
            accumulate(-b.num(), b.den());
        }
    }
    bool is_zero() const
    {
        if (groups_.empty()) {
            return true;
        }
        if (groups_.size() == 1) {
            return groups_.front().num.is_zero();
        }
        // sum_g N_g / D_g = 0  iff  sum_g N_g * prod_{h != g} D_h = 0
        const std::size_t count = groups_.size();
        std::vector<LaurentPoly> suffix(count + 1, LaurentPoly::constant(1));
        for (std::size_t g = count; g-- > 0;) {
            suffix[g] = groups_[g].den * suffix[g + 1];
        }
        LaurentPoly prefix = LaurentPoly::constant(1);
        LaurentPoly total;
        for (std::size_t g = 0; g < count; ++g) {
            if (!groups_[g].num.is_zero()) {
                total = total + groups_[g].num * prefix * suffix[g + 1];
            }
            prefix = prefix * groups_[g].den;
        }
        return total.is_zero();
    }

private:
    struct Group {
        LaurentPoly den;
        LaurentPoly num;
    };

    void accumulate(LaurentPoly num, LaurentPoly den)
    {
        for (auto &g : groups_) {
            if (g.den == den) {
                g.num = g.num + num;
                return;
            }
        }
        groups_.push_back({std::move(den), std::move(num)});
    }

    std::vector<Group> groups_;
};

} // namespace

bool verify_witness(const Instance &inst, const TropPoint &v, const std::vector<PuiseuxRational> &x)
{
    if (x.size() != inst.cols() || v.size() != inst.cols()) {
        return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (valuation(x[j]) != v.coords[j]) {
            return false;
        }
    }
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        FractionSum sum;
        for (std::size_t j = 0; j < inst.cols(); ++j) {
            sum.add(inst.A(i, j), x[j]);
        }
        sum.subtract(inst.b[i]);
        if (!sum.is_zero()) {
            return false;
        }
    }
    return true;
}

} // namespace troplift
