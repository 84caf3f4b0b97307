#include <troplift/gen.hpp>

#include <random>
#include <stdexcept>

namespace troplift
{

namespace
{

class Sampler
{
public:
    explicit Sampler(const GenConfig &cfg) : cfg_(cfg), rng_(cfg.seed) {}

    Rational coefficient()
    {
        std::uniform_int_distribution<int> num(-cfg_.coeff_bound, cfg_.coeff_bound);
        std::uniform_int_distribution<int> den(1, cfg_.coeff_bound);
        int p = 0;
        while (p == 0) {
            p = num(rng_);
        }
        Rational out(p, den(rng_));
        out.canonicalize();
        return out;
    }

    LaurentPoly poly(int min_terms)
    {
        std::uniform_int_distribution<int> count(min_terms, std::max(min_terms, cfg_.terms_per_entry));
        std::uniform_int_distribution<int> exponent(cfg_.exp_lo, cfg_.exp_hi);
        std::vector<GridTerm> terms;
        for (int i = count(rng_); i > 0; --i) {
            terms.push_back({exponent(rng_), coefficient()});
        }
        LaurentPoly out = LaurentPoly::from_terms(cfg_.grid_den, terms);
        // Coinciding exponents may cancel; a required nonzero poly is redrawn.
        while (min_terms > 0 && out.is_zero()) {
            out = poly(min_terms);
        }
        return out;
    }

    PuiseuxRational entry()
    {
        return PuiseuxRational(poly(0));
    }

    bool chance(double p)
    {
        return std::bernoulli_distribution(p)(rng_);
    }

    std::mt19937_64 &rng()
    {
        return rng_;
    }

private:
    const GenConfig &cfg_;
    std::mt19937_64 rng_;
};

Matrix<PuiseuxRational> random_matrix(Sampler &s, std::size_t m, std::size_t n)
{
    Matrix<PuiseuxRational> A(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            A(i, j) = s.entry();
        }
    }
    return A;
}

} // namespace

void GenConfig::validate() const
{
    if (m > n) {
        throw std::invalid_argument("GenConfig: m must not exceed n");
    }
    if (exp_lo > exp_hi) {
        throw std::invalid_argument("GenConfig: empty exponent range");
    }
    if (terms_per_entry < 0 || grid_den < 1 || coeff_bound < 1) {
        throw std::invalid_argument("GenConfig: bounds must be positive");
    }
    if (!(zero_probability >= 0 && zero_probability <= 1)) {
        throw std::invalid_argument("GenConfig: zero_probability must lie in [0, 1]");
    }
}

Instance gen_random(const GenConfig &cfg)
{
    cfg.validate();
    Sampler s(cfg);
    Matrix<PuiseuxRational> A = random_matrix(s, cfg.m, cfg.n);
    std::vector<PuiseuxRational> b(cfg.m);
    for (auto &x : b) {
        x = s.entry();
    }
    return Instance(std::move(A), std::move(b));
}

PlantedInstance gen_member(const GenConfig &cfg)
{
    cfg.validate();
    Sampler s(cfg);
    Matrix<PuiseuxRational> A = random_matrix(s, cfg.m, cfg.n);
    std::vector<PuiseuxRational> x(cfg.n);
    for (auto &xj : x) {
        xj = s.chance(cfg.zero_probability) ? PuiseuxRational() : PuiseuxRational(s.poly(1));
    }
    PlantedInstance out;
    out.inst = Instance(A, multiply(A, x));
    for (const auto &xj : x) {
        out.v.coords.push_back(valuation(xj));
    }
    out.planted = std::move(x);
    return out;
}

TropPoint perturb_point(const TropPoint &v, std::size_t j, const Rational &delta)
{
    if (j >= v.size() || v.coords[j].is_infinite()) {
        throw std::invalid_argument("perturb_point: coordinate must exist and be finite");
    }
    TropPoint out = v;
    out.coords[j] = Valuation(v.coords[j].value() + delta);
    return out;
}

TropPoint gen_point(const GenConfig &cfg)
{
    cfg.validate();
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> exponent(cfg.exp_lo, cfg.exp_hi);
    TropPoint v;
    for (std::size_t j = 0; j < cfg.n; ++j) {
        Rational c(exponent(rng), cfg.grid_den);
        c.canonicalize();
        v.coords.push_back(Valuation(c));
    }
    return v;
}

} // namespace troplift
