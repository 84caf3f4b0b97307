#ifndef TROPLIFT_INSTANCE_HPP
#define TROPLIFT_INSTANCE_HPP

#include <cstddef>
#include <vector>

#include <troplift/matrix.hpp>
#include <troplift/puiseux.hpp>

namespace troplift
{

// The linear system A x = b over the Puiseux field.
struct Instance {
    Matrix<PuiseuxRational> A;
    std::vector<PuiseuxRational> b;

    Instance() = default;
    Instance(Matrix<PuiseuxRational> a, std::vector<PuiseuxRational> rhs);

    std::size_t rows() const
    {
        return A.rows();
    }
    std::size_t cols() const
    {
        return A.cols();
    }
    // Least common grid denominator of all entries.
    std::int64_t grid_den() const;
};

// Candidate point v; an infinite coordinate stands for Trop(0).
struct TropPoint {
    std::vector<Valuation> coords;

    std::size_t size() const
    {
        return coords.size();
    }
    friend bool operator==(const TropPoint &, const TropPoint &) = default;
};

// Substitution t -> t^N in every entry.
Instance regrid(const Instance &inst, std::int64_t N);
TropPoint scale(const TropPoint &v, const Rational &factor);
// Columns reordered so that column k of the result is column perm[k] of the input.
Instance permute_columns(const Instance &inst, const std::vector<std::size_t> &perm);
TropPoint permute(const TropPoint &v, const std::vector<std::size_t> &perm);

} // namespace troplift

#endif
