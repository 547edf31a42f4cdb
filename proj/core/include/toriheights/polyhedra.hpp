#pragma once

#include <vector>

#include "toriheights/lattice.hpp"

namespace toriheights {

/// Extreme rays of the pointed cone { x in R^rank : <row, x> >= 0 for each row }.
///
/// Requires the inequality rows to have full rank (otherwise the cone contains
/// a line and has no extreme-ray description); throws DomainError("NotPointed").
/// Rays are returned as primitive integer vectors in ascending lexicographic
/// order, so the output is deterministic.
std::vector<IntVec> extreme_rays_of_inequalities(long rank, const std::vector<IntVec>& rows);

} // namespace toriheights
