#ifndef TROPLIFT_GEN_HPP
#define TROPLIFT_GEN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <troplift/instance.hpp>

namespace troplift
{

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t m = 1;
    std::size_t n = 1;
    int terms_per_entry = 2; // each entry gets 0..terms_per_entry terms
    int exp_lo = -3;         // grid exponents k of the terms t^(k/grid_den)
    int exp_hi = 3;
    std::int64_t grid_den = 1;
    int coeff_bound = 9; // numerators in [-bound, bound], denominators in [1, bound]
    // Chance that a planted coordinate is zero (valuation infinity).
    double zero_probability = 0.05;

    // Throws std::invalid_argument unless m <= n, exp_lo <= exp_hi and the
    // bounds are positive.
    void validate() const;
};

struct PlantedInstance {
    Instance inst;
    TropPoint v;
    std::vector<PuiseuxRational> planted;
};

// Random A and b with Laurent polynomial entries.
Instance gen_random(const GenConfig &cfg);

// Random A and a random vector x* of Laurent polynomials; b := A x* and
// v := Trop(x*).
PlantedInstance gen_member(const GenConfig &cfg);

// v with coordinate j moved by delta; v_j must be finite.
TropPoint perturb_point(const TropPoint &v, std::size_t j, const Rational &delta);

// Random finite point with coordinates k/grid_den, k in [exp_lo, exp_hi].
TropPoint gen_point(const GenConfig &cfg);

} // namespace troplift

#endif
