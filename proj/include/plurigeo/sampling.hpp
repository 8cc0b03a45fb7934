#pragma once

#include <cstdint>
#include <vector>

#include "plurigeo/types.hpp"

namespace plurigeo {

// Deterministic pseudo-random chart points, coordinatewise uniform on the
// complex box [-box, box] x [-box, box], rejection-resampled against the
// exclusion radius.  Identical arguments always produce identical lists.
// Throws SamplerError after 10,000 consecutive rejections.
std::vector<ChartPoint> sample_points(int n, int count, std::uint64_t seed, double box,
                                      double exclusion_radius);

}  // namespace plurigeo
