#ifndef TROPLIFT_ORACLE_HPP
#define TROPLIFT_ORACLE_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <troplift/instance.hpp>

namespace troplift
{

// Brute-force membership test through the circuits of the homogenized system.
// Independent of decide; meant for cross-checking small instances.

constexpr std::size_t default_oracle_max_cols = 13;

class TooLarge : public std::runtime_error
{
public:
    TooLarge(std::size_t cols, std::size_t max_cols);
};

// A support-minimal nonzero vector of the row space of a matrix.
struct Circuit {
    std::vector<std::size_t> support; // ascending column indices
    std::vector<PuiseuxRational> vector;
};

// M = [A | -b]; x solves A x = b iff (x, 1) lies in the kernel of M.
Matrix<PuiseuxRational> homogenize(const Instance &inst);

// Every support-minimal row-space vector of M, one representative per support,
// by exhaustive enumeration of the 2^cols supports. Throws TooLarge when M has
// more than max_cols columns.
std::vector<Circuit> minimal_support_vectors(const Matrix<PuiseuxRational> &M,
                                             std::size_t max_cols = default_oracle_max_cols);

// For weights w (one per column of the circuit's matrix): the minimum of
// valuation(c_j) + w_j over the support is attained at least twice.
bool min_attained_twice(const Circuit &c, const std::vector<Rational> &w);

// v is in the tropicalization of {x : A x = b}: after dropping the columns with
// v_j = inf, every circuit of [A | -b] attains its minimum twice at w = (v, 0).
// The column guard applies to the homogenized matrix after dropping.
bool member_oracle(const Instance &inst, const TropPoint &v, std::size_t max_cols = default_oracle_max_cols);

} // namespace troplift

#endif
