#include <troplift/rational.hpp>

#include <limits>
#include <numeric>

namespace troplift
{

namespace
{

bool valid_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num_part = body.substr(0, slash);
    const std::string_view den_part = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!valid_digits(num_part) || !valid_digits(den_part)) {
        throw std::invalid_argument("not an exact rational: \"" + std::string(text) + "\"");
    }
    Integer num(std::string(num_part), 10);
    Integer den(std::string(den_part), 10);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    }
    if (negative) {
        num = -num;
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

std::string format_rational(const Rational &value)
{
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::int64_t to_int64(const Integer &value)
{
    if (!value.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in 64 bits: " + value.get_str());
    }
    return static_cast<std::int64_t>(value.get_si());
}

std::int64_t floor_to_int64(const Rational &value)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return to_int64(q);
}

std::int64_t gcd_int64(std::int64_t a, std::int64_t b)
{
    return std::gcd(a, b);
}

std::int64_t lcm_int64(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    const std::int64_t g = std::gcd(a, b);
    const __int128 l = static_cast<__int128>(a / g) * b;
    if (l > std::numeric_limits<std::int64_t>::max() || l < -std::numeric_limits<std::int64_t>::max()) {
        throw std::overflow_error("grid denominator overflow");
    }
    return static_cast<std::int64_t>(l < 0 ? -l : l);
}

} // namespace troplift
