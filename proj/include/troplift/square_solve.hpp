#ifndef TROPLIFT_SQUARE_SOLVE_HPP
#define TROPLIFT_SQUARE_SOLVE_HPP

#include <vector>

#include <troplift/matrix.hpp>
#include <troplift/puiseux.hpp>

namespace troplift
{

// Exact solution of C x = r for a square nonsingular C over the rational
// function field. Throws std::domain_error when C is singular.
std::vector<PuiseuxRational> solve_square(const Matrix<PuiseuxRational> &C, const std::vector<PuiseuxRational> &r);

// Same result, always by Gaussian elimination over the field.
std::vector<PuiseuxRational> solve_square_elimination(const Matrix<PuiseuxRational> &C,
                                                      const std::vector<PuiseuxRational> &r);

} // namespace troplift

#endif
