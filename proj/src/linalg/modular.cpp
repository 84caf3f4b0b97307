#include <troplift/modular.hpp>

#include <mutex>
#include <stdexcept>

namespace troplift::modular
{

PrimeField::PrimeField(std::uint64_t p) : p_(p)
{
    if (p < 3 || (p & 1U) == 0 || p >= (std::uint64_t{1} << 62)) {
        throw std::invalid_argument("PrimeField needs an odd modulus below 2^62");
    }
    // Newton iteration for p^{-1} mod 2^64.
    std::uint64_t inv = p;
    for (int i = 0; i < 6; ++i) {
        inv *= 2 - p * inv;
    }
    pinv_ = ~inv + 1;
    const unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % p;
    one_ = static_cast<std::uint64_t>(r);
    r2_ = static_cast<std::uint64_t>((r * r) % p);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const
{
    std::uint64_t result = one_;
    while (e != 0) {
        if ((e & 1U) != 0) {
            result = mul(result, a);
        }
        a = mul(a, a);
        e >>= 1U;
    }
    return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const
{
    if (a == 0) {
        throw DivisionByZero();
    }
    return pow(a, p_ - 2);
}

std::uint64_t PrimeField::from_integer(const Integer &z) const
{
    const unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), p_);
    return to_mont(r);
}

std::uint64_t large_prime(std::size_t index)
{
    static std::mutex mutex;
    static std::vector<std::uint64_t> primes;
    const std::lock_guard<std::mutex> lock(mutex);
    if (primes.empty()) {
        primes.reserve(64);
    }
    std::uint64_t candidate = primes.empty() ? (std::uint64_t{1} << 62) - 1 : primes.back() - 2;
    while (primes.size() <= index) {
        Integer z(std::to_string(candidate), 10);
        if (mpz_probab_prime_p(z.get_mpz_t(), 30) != 0) {
            primes.push_back(candidate);
        }
        candidate -= 2;
    }
    return primes[index];
}

void trim(ModPoly &f)
{
    while (!f.empty() && f.back() == 0) {
        f.pop_back();
    }
}

ModPoly reduce(const PrimeField &field, const std::vector<Integer> &coeffs)
{
    ModPoly out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out[i] = field.from_integer(coeffs[i]);
    }
    trim(out);
    return out;
}

ModPoly gcd(const PrimeField &field, ModPoly a, ModPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a <- a mod b
        const std::uint64_t lead_inv = field.inv(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t factor = field.mul(a.back(), lead_inv);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[shift + i] = field.sub(a[shift + i], field.mul(factor, b[i]));
            }
            a.pop_back();
            trim(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        const std::uint64_t lead_inv = field.inv(a.back());
        for (auto &c : a) {
            c = field.mul(c, lead_inv);
        }
    }
    return a;
}

std::uint64_t inverse_mod(const Integer &value, std::uint64_t prime)
{
    Integer inv;
    const Integer prime_z(std::to_string(prime), 10);
    const Integer reduced = value % prime_z;
    if (mpz_invert(inv.get_mpz_t(), reduced.get_mpz_t(), prime_z.get_mpz_t()) == 0) {
        throw DivisionByZero();
    }
    return inv.get_ui();
}

bool crt_lift(const Integer &modulus, std::uint64_t modulus_inverse, std::uint64_t prime, std::uint64_t residue,
              Integer &value)
{
    const unsigned long current = mpz_fdiv_ui(value.get_mpz_t(), prime);
    if (current == residue) {
        return true;
    }
    const auto diff = static_cast<unsigned __int128>(residue >= current ? residue - current : residue + prime - current);
    const auto k = static_cast<unsigned long>((diff * modulus_inverse) % prime);
    mpz_addmul_ui(value.get_mpz_t(), modulus.get_mpz_t(), k);
    // Back to the symmetric range modulo modulus * prime.
    Integer full;
    mpz_mul_ui(full.get_mpz_t(), modulus.get_mpz_t(), prime);
    Integer twice = value * 2;
    if (twice > full) {
        value -= full;
    } else if (twice <= -full) {
        value += full;
    }
    return false;
}

} // namespace troplift::modular
