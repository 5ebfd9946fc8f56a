#ifndef PLIFT_SCENARIO_HPP
#define PLIFT_SCENARIO_HPP

#include "plift/model.hpp"

namespace plift {

// Deterministic scenario library. Names: so3, symplectic2, symplectic4,
// heisenberg, zero3, random-linear(seed), random-quadratic(seed).
// random-linear produces a Lie-Poisson bivector (a seeded change of basis of a
// fixed Lie algebra, hence always Poisson); random-quadratic seeds are
// non-Poisson controls.
Model scenario(const std::string& name);

std::vector<std::string> scenario_base_names();

} // namespace plift

#endif
