#ifndef TROPLIFT_AFFINE_HPP
#define TROPLIFT_AFFINE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <troplift/matrix.hpp>
#include <troplift/rational.hpp>

namespace troplift
{

// Unknown y_{col,l}: coefficient of t^l in the polynomial attached to a free
// column. Columns are 0-based internally and printed 1-based.
struct VarId {
    std::size_t col = 0;
    std::int64_t l = 0;

    friend auto operator<=>(const VarId &, const VarId &) = default;
};

std::string to_string(const VarId &id);

// Affine form constant + sum coeffs[id] * y_id over the rationals.
struct LinearForm {
    Rational constant;
    std::map<VarId, Rational> coeffs; // no zero values stored

    void add_term(const VarId &id, const Rational &c);
    bool is_constant() const
    {
        return coeffs.empty();
    }
    bool is_zero() const
    {
        return coeffs.empty() && sgn(constant) == 0;
    }
    friend bool operator==(const LinearForm &, const LinearForm &) = default;
};

// Human-readable rendering such as "y_{2,0} + y_{2,1} - 1".
std::string to_string(const LinearForm &f);

// offset + span(basis), coordinates indexed like `variables` (ascending).
struct AffineSpace {
    std::vector<VarId> variables;
    std::vector<Rational> offset;
    std::vector<std::vector<Rational>> basis;

    std::size_t dim() const
    {
        return basis.size();
    }
};

// Solution set of A y = b over the rationals, variables labelled y_{j,0};
// nullopt when infeasible.
std::optional<AffineSpace> solve_affine(const Matrix<Rational> &A, const std::vector<Rational> &b);

// Solution set of the equations f = 0 in the given (ascending) variables.
std::optional<AffineSpace> solve_affine(const std::vector<LinearForm> &equations, const std::vector<VarId> &variables);

Rational evaluate(const LinearForm &f, const std::vector<VarId> &variables, const std::vector<Rational> &point);

// True iff f is zero at every point of S.
bool vanishes_identically(const LinearForm &f, const AffineSpace &S);

} // namespace troplift

#endif
