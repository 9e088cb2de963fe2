#pragma once

#include <string>

#include "minkbill/solver.hpp"

namespace minkbill {

// Deterministic SVG picture of a 2-D solution: the table, the unit ball of
// the norm (polar of the norm body) at the origin, the directed trajectory
// and the contact normals at the bounce points. Pure function of the
// solution, so reruns are byte-identical.
std::string render_solution_svg(const BilliardSolution& sol);

}  // namespace minkbill
