#include <troplift/io.hpp>

#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace troplift::io
{

namespace
{

std::string child(const std::string &path, const std::string &key)
{
    return path + "/" + key;
}

std::string child(const std::string &path, std::size_t index)
{
    return path + "/" + std::to_string(index);
}

void reject_unknown(const Json &j, const std::string &path, const std::set<std::string> &allowed)
{
    for (const auto &item : j.items()) {
        if (allowed.count(item.key()) == 0) {
            throw ParseError(child(path, item.key()), "unknown field \"" + item.key() + "\"");
        }
    }
}

const Json &require(const Json &j, const std::string &path, const std::string &key)
{
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(path.empty() ? "/" : path, "missing field \"" + key + "\"");
    }
    return *it;
}

void require_object(const Json &j, const std::string &path)
{
    if (!j.is_object()) {
        throw ParseError(path.empty() ? "/" : path, "expected an object");
    }
}

void require_array(const Json &j, const std::string &path)
{
    if (!j.is_array()) {
        throw ParseError(path.empty() ? "/" : path, "expected an array");
    }
}

std::int64_t parse_int(const Json &j, const std::string &path)
{
    if (j.is_number_unsigned()) {
        const auto v = j.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            throw ParseError(path, "integer out of range");
        }
        return static_cast<std::int64_t>(v);
    }
    if (j.is_number_integer()) {
        return j.get<std::int64_t>();
    }
    throw ParseError(path, "expected an integer");
}

std::int64_t parse_positive(const Json &j, const std::string &path)
{
    const std::int64_t v = parse_int(j, path);
    if (v <= 0) {
        throw ParseError(path, "expected a positive integer");
    }
    return v;
}

Rational parse_rational_field(const Json &j, const std::string &path)
{
    if (!j.is_string()) {
        throw ParseError(path, "expected an exact rational string \"p/r\"");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument &e) {
        throw ParseError(path, e.what());
    }
}

LaurentPoly parse_terms(const Json &j, std::int64_t q, const std::string &path)
{
    require_array(j, path);
    std::vector<GridTerm> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = child(path, i);
        const Json &term = j[i];
        if (!term.is_array() || term.size() != 2) {
            throw ParseError(at, "expected a pair [k, \"p/r\"]");
        }
        terms.push_back({parse_int(term[0], child(at, 0)), parse_rational_field(term[1], child(at, 1))});
    }
    return LaurentPoly::from_terms(q, terms);
}

OrderedJson serialize_terms(const LaurentPoly &p, std::int64_t q)
{
    OrderedJson out = OrderedJson::array();
    if (p.is_zero()) {
        return out;
    }
    if (q % p.grid_den() != 0) {
        throw std::logic_error("serialize: grid does not refine the polynomial's grid");
    }
    const std::int64_t factor = q / p.grid_den();
    for (const auto &t : p.terms()) {
        out.push_back(OrderedJson::array({t.k * factor, format_rational(t.coefficient)}));
    }
    return out;
}

} // namespace

ParseError::ParseError(std::string where, const std::string &what)
    : std::runtime_error(where + ": " + what), where_(std::move(where))
{
}

Json parse_json(const std::string &text)
{
    try {
        return Json::parse(text, nullptr, true, false);
    } catch (const Json::parse_error &e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path, "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp);
        }
        out << text;
        if (!out.flush()) {
            throw std::runtime_error("cannot write " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

PuiseuxRational parse_entry(const Json &j, std::int64_t default_q, const std::string &path)
{
    require_object(j, path);
    reject_unknown(j, path, {"q", "num", "den"});
    std::int64_t q = default_q;
    if (const auto it = j.find("q"); it != j.end()) {
        q = parse_positive(*it, child(path, "q"));
    }
    const LaurentPoly num = parse_terms(require(j, path, "num"), q, child(path, "num"));
    if (const auto it = j.find("den"); it != j.end()) {
        const LaurentPoly den = parse_terms(*it, q, child(path, "den"));
        if (den.is_zero()) {
            throw ParseError(child(path, "den"), "zero denominator");
        }
        return PuiseuxRational(num, den);
    }
    return PuiseuxRational(num);
}

OrderedJson serialize_entry(const PuiseuxRational &x, std::int64_t q, bool with_q)
{
    OrderedJson out = OrderedJson::object();
    if (with_q) {
        out["q"] = q;
    }
    out["num"] = serialize_terms(x.num(), q);
    if (!x.is_laurent()) {
        out["den"] = serialize_terms(x.den(), q);
    }
    return out;
}

Instance parse_instance(const Json &j)
{
    require_object(j, "");
    reject_unknown(j, "", {"q", "m", "n", "A", "b"});
    std::int64_t q = 1;
    if (const auto it = j.find("q"); it != j.end()) {
        q = parse_positive(*it, "/q");
    }
    const Json &A = require(j, "", "A");
    const Json &b = require(j, "", "b");
    require_array(A, "/A");
    require_array(b, "/b");
    const std::size_t m = A.size();
    std::optional<std::size_t> n;
    if (const auto it = j.find("m"); it != j.end()) {
        if (parse_int(*it, "/m") != static_cast<std::int64_t>(m)) {
            throw ParseError("/m", "does not match the number of rows of A");
        }
    }
    if (const auto it = j.find("n"); it != j.end()) {
        const std::int64_t v = parse_int(*it, "/n");
        if (v < 0) {
            throw ParseError("/n", "expected a nonnegative integer");
        }
        n = static_cast<std::size_t>(v);
    }
    if (b.size() != m) {
        throw ParseError("/b", "expected " + std::to_string(m) + " entries");
    }
    if (m > 0) {
        require_array(A[0], "/A/0");
        if (n && *n != A[0].size()) {
            throw ParseError("/n", "does not match the number of columns of A");
        }
        n = A[0].size();
    } else if (!n) {
        throw ParseError("/", "an instance without rows needs \"n\"");
    }
    Matrix<PuiseuxRational> M(m, *n);
    std::vector<PuiseuxRational> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::string row_path = child("/A", i);
        require_array(A[i], row_path);
        if (A[i].size() != *n) {
            throw ParseError(row_path, "expected " + std::to_string(*n) + " entries");
        }
        for (std::size_t k = 0; k < *n; ++k) {
            M(i, k) = parse_entry(A[i][k], q, child(row_path, k));
        }
        rhs[i] = parse_entry(b[i], q, child("/b", i));
    }
    return Instance(std::move(M), std::move(rhs));
}

OrderedJson serialize_instance(const Instance &inst)
{
    const std::int64_t q = inst.grid_den();
    OrderedJson out = OrderedJson::object();
    out["q"] = q;
    out["m"] = inst.rows();
    out["n"] = inst.cols();
    OrderedJson A = OrderedJson::array();
    OrderedJson b = OrderedJson::array();
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (std::size_t k = 0; k < inst.cols(); ++k) {
            row.push_back(serialize_entry(inst.A(i, k), q, false));
        }
        A.push_back(std::move(row));
        b.push_back(serialize_entry(inst.b[i], q, false));
    }
    out["A"] = std::move(A);
    out["b"] = std::move(b);
    return out;
}

TropPoint parse_point(const Json &j)
{
    require_object(j, "");
    reject_unknown(j, "", {"v"});
    const Json &v = require(j, "", "v");
    require_array(v, "/v");
    TropPoint out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = child("/v", i);
        if (v[i].is_string() && v[i].get<std::string>() == "inf") {
            out.coords.push_back(Valuation::infinity());
        } else {
            out.coords.emplace_back(parse_rational_field(v[i], at));
        }
    }
    return out;
}

OrderedJson serialize_point(const TropPoint &v)
{
    OrderedJson coords = OrderedJson::array();
    for (const auto &x : v.coords) {
        coords.push_back(x.is_infinite() ? std::string("inf") : format_rational(x.value()));
    }
    OrderedJson out = OrderedJson::object();
    out["v"] = std::move(coords);
    return out;
}

std::vector<PuiseuxRational> parse_witness(const Json &j)
{
    require_object(j, "");
    reject_unknown(j, "", {"verdict", "witness", "expansion", "reason", "form", "detail", "timings"});
    const Json &w = require(j, "", "witness");
    require_array(w, "/witness");
    std::vector<PuiseuxRational> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.push_back(parse_entry(w[i], 1, child("/witness", i)));
    }
    return out;
}

OrderedJson serialize_witness(const std::vector<PuiseuxRational> &x)
{
    OrderedJson out = OrderedJson::array();
    for (const auto &xi : x) {
        out.push_back(serialize_entry(xi, xi.grid_den(), true));
    }
    return out;
}

OrderedJson serialize_result(const LiftResult &result, const std::optional<Rational> &expand_order)
{
    OrderedJson out = OrderedJson::object();
    out["verdict"] = result.member ? "member" : "not_member";
    if (result.member) {
        out["witness"] = serialize_witness(result.witness);
        if (expand_order) {
            OrderedJson expansions = OrderedJson::array();
            for (const auto &xi : result.witness) {
                OrderedJson terms = OrderedJson::array();
                for (const auto &t : expansion(xi, *expand_order)) {
                    terms.push_back(OrderedJson::array({format_rational(t.exponent), format_rational(t.coefficient)}));
                }
                expansions.push_back(std::move(terms));
            }
            out["expansion"] = std::move(expansions);
        }
    } else {
        out["reason"] = to_string(result.stage);
        if (!result.form_id.empty()) {
            out["form"] = result.form_id;
        }
        if (!result.detail.empty()) {
            out["detail"] = result.detail;
        }
    }
    OrderedJson timings = OrderedJson::object();
    for (const auto &[stage, ms] : result.timings_ms) {
        timings[stage] = ms;
    }
    out["timings"] = std::move(timings);
    return out;
}

} // namespace troplift::io
