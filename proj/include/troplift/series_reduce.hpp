#ifndef TROPLIFT_SERIES_REDUCE_HPP
#define TROPLIFT_SERIES_REDUCE_HPP

#include <vector>

#include <troplift/lift.hpp>

namespace troplift
{

// Gauss-Jordan reduction of [A | b] (entries on the integer grid) carried out
// on power series truncated at a working order, with exact bookkeeping of the
// known precision of every entry. Entries whose known part is empty are proven
// zero by a degree bound on the minors or resolved by restarting at a higher
// order, so the pivots, rank, consistency and every low-order term (t^k,
// k <= 0) of the reduced system are exact. Pivot choices coincide with
// rref_solve under the same rule.
ReducedSystem reduce_series(const Matrix<PuiseuxRational> &A, const std::vector<PuiseuxRational> &b, PivotRule rule);

} // namespace troplift

#endif
