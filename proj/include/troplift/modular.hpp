#ifndef TROPLIFT_MODULAR_HPP
#define TROPLIFT_MODULAR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <troplift/rational.hpp>

namespace troplift::modular
{

// Arithmetic in Z/pZ for an odd prime p < 2^62, values kept in Montgomery form.
class PrimeField
{
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t prime() const
    {
        return p_;
    }

    std::uint64_t to_mont(std::uint64_t a) const
    {
        return redc(static_cast<unsigned __int128>(a % p_) * r2_);
    }
    std::uint64_t from_mont(std::uint64_t a) const
    {
        return redc(a);
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const
    {
        return redc(static_cast<unsigned __int128>(a) * b);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const
    {
        const std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const
    {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const
    {
        return a == 0 ? 0 : p_ - a;
    }
    std::uint64_t one() const
    {
        return one_;
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    // Inverse of a nonzero Montgomery value.
    std::uint64_t inv(std::uint64_t a) const;

    // Reduction of an arbitrary integer into Montgomery form.
    std::uint64_t from_integer(const Integer &z) const;

private:
    std::uint64_t redc(unsigned __int128 t) const
    {
        const std::uint64_t m = static_cast<std::uint64_t>(t) * pinv_;
        const unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
        const auto r = static_cast<std::uint64_t>(u);
        return r >= p_ ? r - p_ : r;
    }

    std::uint64_t p_;
    std::uint64_t pinv_; // -p^{-1} mod 2^64
    std::uint64_t r2_;   // 2^128 mod p
    std::uint64_t one_;  // 2^64 mod p
};

// The i-th prime below 2^62 in decreasing order; generated lazily and cached.
std::uint64_t large_prime(std::size_t index);

// Dense polynomial over Z/pZ in Montgomery form, index = degree.
using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly &f);
ModPoly reduce(const PrimeField &field, const std::vector<Integer> &coeffs);
ModPoly gcd(const PrimeField &field, ModPoly a, ModPoly b);

// One Chinese remaindering step: value is known modulo `modulus` (symmetric
// representative) and is lifted to the symmetric representative modulo
// modulus * prime that reduces to `residue` (plain, not Montgomery form).
// `modulus_inverse` is modulus^{-1} mod prime (see inverse_mod). Returns true
// when value was left unchanged.
bool crt_lift(const Integer &modulus, std::uint64_t modulus_inverse, std::uint64_t prime, std::uint64_t residue,
              Integer &value);
std::uint64_t inverse_mod(const Integer &value, std::uint64_t prime);

} // namespace troplift::modular

#endif
