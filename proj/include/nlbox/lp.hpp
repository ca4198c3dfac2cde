#pragma once

#include <optional>
#include <vector>

#include "nlbox/rational.hpp"

namespace nlbox {

/// Dense matrix of exact rationals, row major.
using RatMatrix = std::vector<std::vector<Rat>>;

/// Finds lambda >= 0 with A*lambda = b, or nullopt if the system is
/// infeasible. Phase-1 simplex over exact rationals with Bland's rule, so it
/// terminates and boundary instances classify deterministically.
std::optional<std::vector<Rat>> lp_feasible_point(const RatMatrix& a, const std::vector<Rat>& b);

/// Rank of a rational matrix by fraction-exact Gaussian elimination.
int rank(RatMatrix m);

}  // namespace nlbox
