#pragma once

#include "mono/fibergeom.hpp"

#include <string>

namespace mono {

// Worked fiber-cutting example on A = {y > x} inside the unit box:
// derives the fiberwise critical equation of phi = (y - x)(1 - x^2)(1 - y^2),
// solves it in closed form and certifies, exactly in Q[sqrt(2)], that the
// critical set misses the polydisk of radius (sqrt2/4, sqrt2/3).
struct FiberCutDemo {
    Series equation;         // 3y^2 - 2xy - 1
    bool equation_matches = false;
    bool roots_verified = false;    // y = x/3 +- sqrt(x^2+3)/3 solves it, symbolically
    bool bound_certified = false;   // |y| > sqrt2/3 for |x| < sqrt2/4, exactly
    bool empty_intersection = false;
    std::string report;
};

FiberCutDemo run_fibercut_demo();

} // namespace mono
