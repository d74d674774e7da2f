#pragma once

#include "cot/transport_plan.hpp"

namespace cot {

// Exact Kantorovich optimum via the transportation simplex. Intended as the
// unregularized oracle at desk scale (n*m up to ~10,000). Returns the optimal
// plan, dual potentials with value == <u,a> + <v,b>, and converged = true.
// Throws on infeasible marginals or pivot-limit exhaustion.
OtResult exact_ot(const CostMatrix& cost, const DiscreteMeasure& a,
                  const DiscreteMeasure& b);

}  // namespace cot
