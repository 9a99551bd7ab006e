#pragma once

#include <cmath>

namespace tightham {

// smallest integer k with k >= x, forgiving float noise such as 0.15*60 = 9.000000000000002
inline long ceil_count(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

// largest integer k with k <= x, same tolerance
inline long floor_count(double x) { return static_cast<long>(std::floor(x + 1e-9)); }

}  // namespace tightham
