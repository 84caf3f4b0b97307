#include <troplift/zpoly.hpp>

#include <algorithm>

#include <troplift/modular.hpp>

namespace troplift::zpoly
{

namespace
{

// Below this many coefficient products schoolbook multiplication wins.
constexpr std::size_t kronecker_threshold = 2048;

Integer pack(const ZPoly &f, std::size_t lo, std::size_t hi, std::size_t bits)
{
    if (hi - lo == 1) {
        return f[lo];
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    Integer high = pack(f, mid, hi, bits);
    mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), bits * (mid - lo));
    high += pack(f, lo, mid, bits);
    return high;
}

void unpack(const Integer &x, std::size_t count, std::size_t bits, Integer *out)
{
    if (count == 1) {
        *out = x;
        return;
    }
    const std::size_t half = count / 2;
    const std::size_t low_bits = bits * half;
    Integer low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), x.get_mpz_t(), low_bits);
    if (mpz_tstbit(low.get_mpz_t(), low_bits - 1) != 0) {
        Integer wrap;
        mpz_setbit(wrap.get_mpz_t(), low_bits);
        low -= wrap;
    }
    Integer high = x - low;
    mpz_fdiv_q_2exp(high.get_mpz_t(), high.get_mpz_t(), low_bits);
    unpack(low, half, bits, out);
    unpack(high, count - half, bits, out + half);
}

ZPoly mul_kronecker(const ZPoly &a, const ZPoly &b)
{
    const std::size_t len = std::min(a.size(), b.size());
    std::size_t len_bits = 0;
    while ((std::size_t{1} << len_bits) < len) {
        ++len_bits;
    }
    const std::size_t bits = max_bits(a) + max_bits(b) + len_bits + 2;
    const Integer pa = pack(a, 0, a.size(), bits);
    const Integer pb = pack(b, 0, b.size(), bits);
    const Integer prod = pa * pb;
    ZPoly out(a.size() + b.size() - 1);
    unpack(prod, out.size(), bits, out.data());
    trim(out);
    return out;
}

ZPoly pseudo_remainder(ZPoly r, const ZPoly &b)
{
    const Integer &lead = b.back();
    while (!r.empty() && r.size() >= b.size()) {
        const Integer factor = r.back();
        const std::size_t shift = r.size() - b.size();
        for (auto &c : r) {
            c *= lead;
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            mpz_submul(r[shift + i].get_mpz_t(), factor.get_mpz_t(), b[i].get_mpz_t());
        }
        trim(r);
    }
    return r;
}

ZPoly prs_gcd(ZPoly a, ZPoly b)
{
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    while (!b.empty()) {
        ZPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.empty() ? ZPoly{} : primitive_part(r);
    }
    return primitive_part(a);
}

Integer max_abs(const ZPoly &f)
{
    Integer best = 0;
    for (const auto &c : f) {
        if (mpz_cmpabs(c.get_mpz_t(), best.get_mpz_t()) > 0) {
            best = abs(c);
        }
    }
    return best;
}

ZPoly balanced_digits(Integer h, const Integer &x)
{
    ZPoly out;
    const Integer half = x / 2;
    while (h != 0) {
        Integer digit;
        mpz_fdiv_r(digit.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
        if (digit > half) {
            digit -= x;
        }
        out.push_back(digit);
        h -= digit;
        mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
    }
    return out;
}

bool coprime_modulo_prime(const ZPoly &a, const ZPoly &b)
{
    const modular::PrimeField field(modular::large_prime(0));
    const auto ra = modular::reduce(field, a);
    const auto rb = modular::reduce(field, b);
    if (ra.size() != a.size() || rb.size() != b.size()) {
        return false;
    }
    return modular::gcd(field, ra, rb).size() == 1;
}

std::optional<ZPoly> heuristic_gcd(const ZPoly &f, const ZPoly &g)
{
    const Integer f_norm = max_abs(f);
    const Integer g_norm = max_abs(g);
    const Integer bound = 2 * std::min(f_norm, g_norm) + 29;
    Integer x = std::min(bound, Integer(99 * sqrt(bound)));
    const Integer alt = 2 * std::min(f_norm / abs(f.back()), g_norm / abs(g.back())) + 2;
    x = std::max(x, alt);
    for (int attempt = 0; attempt < 6; ++attempt) {
        const Integer fx = evaluate(f, x);
        const Integer gx = evaluate(g, x);
        if (fx != 0 && gx != 0) {
            Integer h;
            mpz_gcd(h.get_mpz_t(), fx.get_mpz_t(), gx.get_mpz_t());
            ZPoly candidate = primitive_part(balanced_digits(h, x));
            if (!candidate.empty() && divide_exact(f, candidate) && divide_exact(g, candidate)) {
                return candidate;
            }
            const ZPoly cofactor_f = balanced_digits(fx / h, x);
            if (!cofactor_f.empty()) {
                if (auto q = divide_exact(f, cofactor_f); q && divide_exact(g, *q)) {
                    return primitive_part(*q);
                }
            }
            const ZPoly cofactor_g = balanced_digits(gx / h, x);
            if (!cofactor_g.empty()) {
                if (auto q = divide_exact(g, cofactor_g); q && divide_exact(f, *q)) {
                    return primitive_part(*q);
                }
            }
        }
        x = 73794 * x * Integer(sqrt(sqrt(x))) / 27011;
    }
    return std::nullopt;
}

} // namespace

void trim(ZPoly &f)
{
    while (!f.empty() && f.back() == 0) {
        f.pop_back();
    }
}

ZPoly add(const ZPoly &a, const ZPoly &b)
{
    ZPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size() && i < b.size()) {
            out[i] = a[i] + b[i];
        } else if (i < a.size()) {
            out[i] = a[i];
        } else {
            out[i] = b[i];
        }
    }
    trim(out);
    return out;
}

ZPoly sub(const ZPoly &a, const ZPoly &b)
{
    ZPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size() && i < b.size()) {
            out[i] = a[i] - b[i];
        } else if (i < a.size()) {
            out[i] = a[i];
        } else {
            out[i] = -b[i];
        }
    }
    trim(out);
    return out;
}

ZPoly mul(const ZPoly &a, const ZPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    if (a.size() * b.size() >= kronecker_threshold && std::min(a.size(), b.size()) >= 16) {
        return mul_kronecker(a, b);
    }
    ZPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    trim(out);
    return out;
}

void negate(ZPoly &f)
{
    for (auto &c : f) {
        c = -c;
    }
}

void scale(ZPoly &f, const Integer &c)
{
    if (c == 0) {
        f.clear();
        return;
    }
    for (auto &x : f) {
        x *= c;
    }
}

Integer content(const ZPoly &f)
{
    Integer g = 0;
    for (const auto &c : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    return g;
}

void divexact(ZPoly &f, const Integer &c)
{
    for (auto &x : f) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
}

ZPoly primitive_part(const ZPoly &f)
{
    ZPoly out = f;
    trim(out);
    if (out.empty()) {
        return out;
    }
    Integer c = content(out);
    if (out.back() < 0) {
        c = -c;
    }
    if (c != 1) {
        divexact(out, c);
    }
    return out;
}

std::size_t low_zeros(const ZPoly &f)
{
    std::size_t k = 0;
    while (k < f.size() && f[k] == 0) {
        ++k;
    }
    return k;
}

std::optional<ZPoly> divide_exact(const ZPoly &a, const ZPoly &b)
{
    if (b.empty()) {
        throw DivisionByZero();
    }
    if (a.empty()) {
        return ZPoly{};
    }
    if (a.size() < b.size()) {
        return std::nullopt;
    }
    ZPoly r = a;
    ZPoly q(a.size() - b.size() + 1);
    const Integer &lead = b.back();
    Integer rem;
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer &top = r[k + b.size() - 1];
        if (top == 0) {
            continue;
        }
        mpz_tdiv_qr(q[k].get_mpz_t(), rem.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        if (rem != 0) {
            return std::nullopt;
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            mpz_submul(r[k + i].get_mpz_t(), q[k].get_mpz_t(), b[i].get_mpz_t());
        }
    }
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        if (r[i] != 0) {
            return std::nullopt;
        }
    }
    trim(q);
    return q;
}

ZPoly gcd(const ZPoly &a_in, const ZPoly &b_in)
{
    ZPoly a = a_in;
    ZPoly b = b_in;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) {
        ZPoly out = a.empty() ? b : a;
        if (!out.empty() && out.back() < 0) {
            negate(out);
        }
        return out;
    }
    Integer c;
    const Integer ca = content(a);
    const Integer cb = content(b);
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = primitive_part(a);
    b = primitive_part(b);

    // x^k factors are handled separately; the remaining parts have nonzero
    // constant terms.
    const std::size_t za = low_zeros(a);
    const std::size_t zb = low_zeros(b);
    const std::size_t shared_zeros = std::min(za, zb);
    a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(za));
    b.erase(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(zb));

    ZPoly g;
    if (a.size() == 1 || b.size() == 1) {
        g = {Integer(1)};
    } else if (a == b) {
        g = a;
    } else if (coprime_modulo_prime(a, b)) {
        g = {Integer(1)};
    } else if (auto h = heuristic_gcd(a, b)) {
        g = std::move(*h);
    } else {
        g = prs_gcd(a, b);
    }
    if (shared_zeros != 0) {
        g.insert(g.begin(), shared_zeros, Integer(0));
    }
    scale(g, c);
    return g;
}

Integer evaluate(const ZPoly &f, const Integer &x)
{
    Integer acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
        acc *= x;
        acc += f[i];
    }
    return acc;
}

std::size_t max_bits(const ZPoly &f)
{
    std::size_t bits = 0;
    for (const auto &c : f) {
        bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    }
    return bits;
}

} // namespace troplift::zpoly
