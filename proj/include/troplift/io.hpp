#ifndef TROPLIFT_IO_HPP
#define TROPLIFT_IO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <troplift/instance.hpp>
#include <troplift/lift.hpp>

namespace troplift::io
{

// Malformed input; `where` is a JSON pointer to the offending field or a byte
// offset for syntax errors.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::string where, const std::string &what);

    const std::string &where() const
    {
        return where_;
    }

private:
    std::string where_;
};

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Strict JSON text parsing (no comments, no trailing data).
Json parse_json(const std::string &text);
std::string read_file(const std::string &path);
// Writes through a temporary file and a rename.
void write_file(const std::string &path, const std::string &text);

// {"q": q, "num": [[k, "p/r"], ...], "den": [...]} with exponents k/q; "den"
// omitted means 1 and "q" omitted means default_q.
PuiseuxRational parse_entry(const Json &j, std::int64_t default_q, const std::string &path = "");
// On the grid q (a multiple of x.grid_den()); "q" is written when with_q.
OrderedJson serialize_entry(const PuiseuxRational &x, std::int64_t q, bool with_q);

// {"q", "m"?, "n"?, "A": m x n entries, "b": m entries}. m and n are required
// only to describe an instance without rows.
Instance parse_instance(const Json &j);
OrderedJson serialize_instance(const Instance &inst);

// {"v": ["p/r" | "inf", ...]}
TropPoint parse_point(const Json &j);
OrderedJson serialize_point(const TropPoint &v);

// Witness array from a result file ({"witness": [...], ...}).
std::vector<PuiseuxRational> parse_witness(const Json &j);
OrderedJson serialize_witness(const std::vector<PuiseuxRational> &x);

// {"verdict", "witness"?, "expansion"?, "reason"?, "form"?, "detail"?, "timings"}.
// With expand_order, every witness coordinate also gets its series terms up to
// that exponent as [exponent, coefficient] string pairs.
OrderedJson serialize_result(const LiftResult &result, const std::optional<Rational> &expand_order = std::nullopt);

} // namespace troplift::io

#endif
