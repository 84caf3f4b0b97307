#include <troplift/square_solve.hpp>

#include <algorithm>
#include <stdexcept>

#include <troplift/modular.hpp>
#include <troplift/zpoly.hpp>

namespace troplift
{

namespace
{

// Systems up to this size are solved by elimination over the field.
constexpr std::size_t elimination_max_size = 3;

struct SparseTerm {
    std::int64_t exp;
    Integer coeff;
};
using SparsePoly = std::vector<SparseTerm>;

// C x = r with C and r rescaled row by row into integer polynomials in t
// with exponents >= 0. Column k of `cols` is the right-hand side.
struct IntegerSystem {
    std::size_t k = 0;
    std::vector<std::vector<SparsePoly>> rows; // k rows of k + 1 entries
    std::int64_t max_exp = 0;
};

IntegerSystem integer_system(const Matrix<PuiseuxRational> &C, const std::vector<PuiseuxRational> &r)
{
    IntegerSystem out;
    out.k = C.rows();
    out.rows.resize(out.k);
    for (std::size_t i = 0; i < out.k; ++i) {
        std::vector<LaurentPoly> dens;
        for (std::size_t j = 0; j <= out.k; ++j) {
            const PuiseuxRational &x = j < out.k ? C(i, j) : r[i];
            if (!x.is_zero() && !x.is_laurent() && std::find(dens.begin(), dens.end(), x.den()) == dens.end()) {
                dens.push_back(x.den());
            }
        }
        LaurentPoly scale = LaurentPoly::constant(1);
        for (const auto &d : dens) {
            scale = scale * d;
        }
        std::vector<LaurentPoly> row(out.k + 1);
        Integer den_lcm = 1;
        std::optional<std::int64_t> low;
        for (std::size_t j = 0; j <= out.k; ++j) {
            const PuiseuxRational &x = j < out.k ? C(i, j) : r[i];
            if (x.is_zero()) {
                continue;
            }
            if (dens.empty()) {
                row[j] = x.num();
            } else {
                const PuiseuxRational y = x * PuiseuxRational(scale);
                if (!y.is_laurent()) {
                    throw std::logic_error("solve_square: row scaling failed");
                }
                row[j] = y.num();
            }
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), row[j].denominator().get_mpz_t());
            if (!low || row[j].low() < *low) {
                low = row[j].low();
            }
        }
        out.rows[i].resize(out.k + 1);
        for (std::size_t j = 0; j <= out.k; ++j) {
            const LaurentPoly &p = row[j];
            if (p.is_zero()) {
                continue;
            }
            const Integer factor = den_lcm / p.denominator();
            const auto &coeffs = p.integer_coeffs();
            for (std::size_t e = 0; e < coeffs.size(); ++e) {
                if (sgn(coeffs[e]) != 0) {
                    const std::int64_t exp = p.low() + static_cast<std::int64_t>(e) - *low;
                    out.rows[i][j].push_back({exp, coeffs[e] * factor});
                    out.max_exp = std::max(out.max_exp, exp);
                }
            }
        }
    }
    return out;
}

std::int64_t degree_of(const SparsePoly &p)
{
    return p.empty() ? -1 : p.back().exp;
}

// Degree bound shared by det(M) and every Cramer numerator: the smaller of
// the row-wise and column-wise sums of entry degrees.
std::int64_t degree_bound(const IntegerSystem &sys)
{
    const std::size_t k = sys.k;
    std::int64_t by_rows = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t d = 0;
        for (std::size_t j = 0; j <= k; ++j) {
            d = std::max(d, degree_of(sys.rows[i][j]));
        }
        by_rows += d;
    }
    std::vector<std::int64_t> col(k + 1, 0);
    for (std::size_t j = 0; j <= k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            col[j] = std::max(col[j], degree_of(sys.rows[i][j]));
        }
    }
    std::int64_t total = 0;
    for (std::size_t j = 0; j < k; ++j) {
        total += col[j];
    }
    std::int64_t by_cols = total;
    for (std::size_t j = 0; j < k; ++j) {
        by_cols = std::max(by_cols, total - col[j] + col[k]);
    }
    return std::min(by_rows, by_cols);
}

// Values of det(M(a)) and of the Cramer numerators det(M_i(a)) at the points
// a = 1, 2, ..., interpolated into polynomials mod p (Montgomery form). Returns
// false when p is unlucky (det vanishes identically mod p).
bool solve_mod_prime(const IntegerSystem &sys, std::int64_t bound, const modular::PrimeField &F,
                     std::vector<modular::ModPoly> &out)
{
    const std::size_t k = sys.k;
    const std::size_t npts = static_cast<std::size_t>(bound) + 1;
    std::vector<std::vector<std::vector<std::pair<std::int64_t, std::uint64_t>>>> terms(k);
    for (std::size_t i = 0; i < k; ++i) {
        terms[i].resize(k + 1);
        for (std::size_t j = 0; j <= k; ++j) {
            for (const auto &t : sys.rows[i][j]) {
                terms[i][j].emplace_back(t.exp, F.from_integer(t.coeff));
            }
        }
    }

    std::vector<std::uint64_t> xs;
    std::vector<std::vector<std::uint64_t>> values(k + 1); // [0..k-1] numerators, [k] det
    std::vector<std::uint64_t> powers(static_cast<std::size_t>(sys.max_exp) + 1);
    std::vector<std::uint64_t> M(k * (k + 1));
    std::uint64_t a_plain = 0;
    std::size_t failures = 0;
    while (xs.size() < npts) {
        ++a_plain;
        const std::uint64_t a = F.to_mont(a_plain);
        powers[0] = F.one();
        for (std::size_t e = 1; e < powers.size(); ++e) {
            powers[e] = F.mul(powers[e - 1], a);
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j <= k; ++j) {
                std::uint64_t v = 0;
                for (const auto &[e, c] : terms[i][j]) {
                    v = F.add(v, F.mul(c, powers[static_cast<std::size_t>(e)]));
                }
                M[i * (k + 1) + j] = v;
            }
        }
        // Gaussian elimination on [M | c] with the determinant.
        std::uint64_t det = F.one();
        bool singular = false;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = c;
            while (piv < k && M[piv * (k + 1) + c] == 0) {
                ++piv;
            }
            if (piv == k) {
                singular = true;
                break;
            }
            if (piv != c) {
                for (std::size_t j = c; j <= k; ++j) {
                    std::swap(M[piv * (k + 1) + j], M[c * (k + 1) + j]);
                }
                det = F.neg(det);
            }
            const std::uint64_t p = M[c * (k + 1) + c];
            det = F.mul(det, p);
            const std::uint64_t inv = F.inv(p);
            for (std::size_t j = c; j <= k; ++j) {
                M[c * (k + 1) + j] = F.mul(M[c * (k + 1) + j], inv);
            }
            for (std::size_t i = c + 1; i < k; ++i) {
                const std::uint64_t f = M[i * (k + 1) + c];
                if (f == 0) {
                    continue;
                }
                for (std::size_t j = c; j <= k; ++j) {
                    M[i * (k + 1) + j] = F.sub(M[i * (k + 1) + j], F.mul(f, M[c * (k + 1) + j]));
                }
            }
        }
        if (singular) {
            // At most `bound` roots of a nonzero det; more means p is unlucky.
            if (++failures > static_cast<std::size_t>(bound)) {
                return false;
            }
            continue;
        }
        std::vector<std::uint64_t> y(k);
        for (std::size_t c = k; c-- > 0;) {
            std::uint64_t v = M[c * (k + 1) + k];
            for (std::size_t j = c + 1; j < k; ++j) {
                v = F.sub(v, F.mul(M[c * (k + 1) + j], y[j]));
            }
            y[c] = v;
        }
        xs.push_back(a);
        for (std::size_t i = 0; i < k; ++i) {
            values[i].push_back(F.mul(y[i], det));
        }
        values[k].push_back(det);
    }

    // Newton interpolation, then conversion to the monomial basis.
    std::vector<std::vector<std::uint64_t>> inv_diff(npts);
    for (std::size_t i = 1; i < npts; ++i) {
        inv_diff[i].resize(i);
        for (std::size_t j = 0; j < i; ++j) {
            inv_diff[i][j] = F.inv(F.sub(xs[i], xs[j]));
        }
    }
    out.assign(k + 1, {});
    for (std::size_t idx = 0; idx <= k; ++idx) {
        std::vector<std::uint64_t> d = values[idx];
        for (std::size_t level = 1; level < npts; ++level) {
            for (std::size_t i = npts - 1; i >= level; --i) {
                d[i] = F.mul(F.sub(d[i], d[i - 1]), inv_diff[i][i - level]);
            }
        }
        modular::ModPoly poly(npts, 0);
        poly[0] = d[npts - 1];
        std::size_t deg = 0;
        for (std::size_t i = npts - 1; i-- > 0;) {
            // poly = poly * (x - xs[i]) + d[i]
            const std::uint64_t shift = F.neg(xs[i]);
            for (std::size_t e = deg + 1; e > 0; --e) {
                poly[e] = F.add(poly[e - 1], F.mul(poly[e], shift));
            }
            poly[0] = F.add(F.mul(poly[0], shift), d[i]);
            ++deg;
        }
        for (auto &c : poly) {
            c = F.from_mont(c);
        }
        out[idx] = std::move(poly);
    }
    return true;
}

bool check(const IntegerSystem &sys, const std::vector<zpoly::ZPoly> &numerators, const zpoly::ZPoly &det)
{
    for (std::size_t i = 0; i < sys.k; ++i) {
        zpoly::ZPoly lhs;
        for (std::size_t j = 0; j < sys.k; ++j) {
            const zpoly::ZPoly &x = numerators[j];
            if (x.empty()) {
                continue;
            }
            for (const auto &t : sys.rows[i][j]) {
                const std::size_t need = x.size() + static_cast<std::size_t>(t.exp);
                if (lhs.size() < need) {
                    lhs.resize(need);
                }
                for (std::size_t e = 0; e < x.size(); ++e) {
                    mpz_addmul(lhs[e + static_cast<std::size_t>(t.exp)].get_mpz_t(), t.coeff.get_mpz_t(),
                               x[e].get_mpz_t());
                }
            }
        }
        for (const auto &t : sys.rows[i][sys.k]) {
            const std::size_t need = det.size() + static_cast<std::size_t>(t.exp);
            if (lhs.size() < need) {
                lhs.resize(need);
            }
            for (std::size_t e = 0; e < det.size(); ++e) {
                mpz_submul(lhs[e + static_cast<std::size_t>(t.exp)].get_mpz_t(), t.coeff.get_mpz_t(),
                           det[e].get_mpz_t());
            }
        }
        zpoly::trim(lhs);
        if (!lhs.empty()) {
            return false;
        }
    }
    return true;
}

std::vector<PuiseuxRational> solve_multimodular(const Matrix<PuiseuxRational> &C, const std::vector<PuiseuxRational> &r)
{
    std::int64_t q = 1;
    for (std::size_t i = 0; i < C.rows(); ++i) {
        for (std::size_t j = 0; j < C.cols(); ++j) {
            q = lcm_int64(q, C(i, j).grid_den());
        }
        q = lcm_int64(q, r[i].grid_den());
    }
    if (q != 1) {
        Matrix<PuiseuxRational> Cq(C.rows(), C.cols());
        std::vector<PuiseuxRational> rq(r.size());
        for (std::size_t i = 0; i < C.rows(); ++i) {
            for (std::size_t j = 0; j < C.cols(); ++j) {
                Cq(i, j) = regrid(C(i, j), q);
            }
            rq[i] = regrid(r[i], q);
        }
        std::vector<PuiseuxRational> x = solve_multimodular(Cq, rq);
        for (auto &xi : x) {
            xi = regrid_by(xi, Rational(1, q));
        }
        return x;
    }

    const IntegerSystem sys = integer_system(C, r);
    const std::size_t k = sys.k;
    const std::int64_t bound = degree_bound(sys);
    const std::size_t ncoeffs = static_cast<std::size_t>(bound) + 1;

    // values[idx][e]: symmetric residue of coefficient e modulo `modulus`.
    std::vector<std::vector<Integer>> values(k + 1, std::vector<Integer>(ncoeffs));
    Integer modulus = 1;
    std::size_t used = 0;
    bool stable_once = false;
    for (std::size_t prime_index = 0;; ++prime_index) {
        if (prime_index > 64 + 4 * used) {
            throw std::domain_error("solve_square: singular matrix");
        }
        const std::uint64_t p = modular::large_prime(prime_index);
        const modular::PrimeField F(p);
        std::vector<modular::ModPoly> images;
        if (!solve_mod_prime(sys, bound, F, images)) {
            continue;
        }
        const std::uint64_t minv = modular::inverse_mod(modulus, p);
        bool unchanged = true;
        for (std::size_t idx = 0; idx <= k; ++idx) {
            for (std::size_t e = 0; e < ncoeffs; ++e) {
                if (!modular::crt_lift(modulus, minv, p, images[idx][e], values[idx][e])) {
                    unchanged = false;
                }
            }
        }
        modulus *= p;
        ++used;
        if (!unchanged || used < 2) {
            stable_once = false;
            continue;
        }
        std::vector<zpoly::ZPoly> numerators(k);
        for (std::size_t i = 0; i < k; ++i) {
            numerators[i] = values[i];
            zpoly::trim(numerators[i]);
        }
        zpoly::ZPoly det = values[k];
        zpoly::trim(det);
        if (det.empty()) {
            if (stable_once) {
                throw std::domain_error("solve_square: singular matrix");
            }
            stable_once = true;
            continue;
        }
        if (!check(sys, numerators, det)) {
            continue;
        }
        const LaurentPoly den = LaurentPoly::from_raw(1, 0, det, 1);
        std::vector<PuiseuxRational> x(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (!numerators[i].empty()) {
                x[i] = PuiseuxRational(LaurentPoly::from_raw(1, 0, numerators[i], 1), den);
            }
        }
        return x;
    }
}

} // namespace

std::vector<PuiseuxRational> solve_square_elimination(const Matrix<PuiseuxRational> &C,
                                                      const std::vector<PuiseuxRational> &r)
{
    if (C.rows() != C.cols() || r.size() != C.rows()) {
        throw std::invalid_argument("solve_square: dimension mismatch");
    }
    const RrefResult<PuiseuxRational> rref = rref_solve(C, r, PivotRule::MinValuation);
    if (rref.rank != C.rows()) {
        throw std::domain_error("solve_square: singular matrix");
    }
    std::vector<PuiseuxRational> x(C.cols());
    for (std::size_t k = 0; k < rref.rank; ++k) {
        x[rref.pivot_cols[k]] = rref.reduced_rhs[k];
    }
    return x;
}

std::vector<PuiseuxRational> solve_square(const Matrix<PuiseuxRational> &C, const std::vector<PuiseuxRational> &r)
{
    if (C.rows() != C.cols() || r.size() != C.rows()) {
        throw std::invalid_argument("solve_square: dimension mismatch");
    }
    if (C.rows() <= elimination_max_size) {
        return solve_square_elimination(C, r);
    }
    return solve_multimodular(C, r);
}

} // namespace troplift
