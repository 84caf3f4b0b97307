#include <troplift/affine.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace troplift
{

namespace
{

std::size_t index_of(const std::vector<VarId> &variables, const VarId &id)
{
    const auto it = std::lower_bound(variables.begin(), variables.end(), id);
    if (it == variables.end() || *it != id) {
        throw std::invalid_argument("variable " + to_string(id) + " is not in the ambient space");
    }
    return static_cast<std::size_t>(it - variables.begin());
}

// Linear part of f applied to a direction vector.
Rational apply_linear(const LinearForm &f, const std::vector<VarId> &variables, const std::vector<Rational> &direction)
{
    Rational acc = 0;
    for (const auto &[id, c] : f.coeffs) {
        const Rational &x = direction[index_of(variables, id)];
        if (sgn(x) != 0) {
            acc += c * x;
        }
    }
    return acc;
}

} // namespace

std::string to_string(const VarId &id)
{
    return "y_{" + std::to_string(id.col + 1) + "," + std::to_string(id.l) + "}";
}

void LinearForm::add_term(const VarId &id, const Rational &c)
{
    if (sgn(c) == 0) {
        return;
    }
    auto [it, inserted] = coeffs.try_emplace(id, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) {
            coeffs.erase(it);
        }
    }
}

std::string to_string(const LinearForm &f)
{
    std::ostringstream os;
    bool first = true;
    auto emit = [&](Rational c, const std::string &symbol) {
        if (first) {
            if (sgn(c) < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        if (symbol.empty()) {
            os << format_rational(c);
        } else {
            if (c != 1) {
                os << format_rational(c) << "*";
            }
            os << symbol;
        }
    };
    for (const auto &[id, c] : f.coeffs) {
        emit(c, to_string(id));
    }
    if (sgn(f.constant) != 0 || first) {
        emit(f.constant, "");
    }
    return os.str();
}

std::optional<AffineSpace> solve_affine(const Matrix<Rational> &A, const std::vector<Rational> &b)
{
    const std::size_t n = A.cols();
    const RrefResult<Rational> rref = rref_solve(A, b);
    if (!rref.consistent) {
        return std::nullopt;
    }
    AffineSpace out;
    for (std::size_t j = 0; j < n; ++j) {
        out.variables.push_back({j, 0});
    }
    out.offset.assign(n, Rational(0));
    for (std::size_t k = 0; k < rref.rank; ++k) {
        out.offset[rref.pivot_cols[k]] = rref.reduced_rhs[k];
    }
    for (const std::size_t f : rref.free_cols) {
        std::vector<Rational> w(n, Rational(0));
        w[f] = 1;
        for (std::size_t k = 0; k < rref.rank; ++k) {
            const Rational &c = rref.reduced_matrix(k, f);
            if (sgn(c) != 0) {
                w[rref.pivot_cols[k]] = -c;
            }
        }
        out.basis.push_back(std::move(w));
    }
    return out;
}

std::optional<AffineSpace> solve_affine(const std::vector<LinearForm> &equations, const std::vector<VarId> &variables)
{
    if (!std::is_sorted(variables.begin(), variables.end())) {
        throw std::invalid_argument("solve_affine: variables must be ascending");
    }
    Matrix<Rational> A(equations.size(), variables.size());
    std::vector<Rational> b(equations.size());
    for (std::size_t i = 0; i < equations.size(); ++i) {
        for (const auto &[id, c] : equations[i].coeffs) {
            A(i, index_of(variables, id)) = c;
        }
        b[i] = -equations[i].constant;
    }
    auto out = solve_affine(A, b);
    if (out) {
        out->variables = variables;
    }
    return out;
}

Rational evaluate(const LinearForm &f, const std::vector<VarId> &variables, const std::vector<Rational> &point)
{
    return f.constant + apply_linear(f, variables, point);
}

bool vanishes_identically(const LinearForm &f, const AffineSpace &S)
{
    if (sgn(evaluate(f, S.variables, S.offset)) != 0) {
        return false;
    }
    return std::all_of(S.basis.begin(), S.basis.end(),
                       [&](const std::vector<Rational> &w) { return sgn(apply_linear(f, S.variables, w)) == 0; });
}

} // namespace troplift
