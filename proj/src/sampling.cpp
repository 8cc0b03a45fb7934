#include "plurigeo/sampling.hpp"

#include <random>

#include "plurigeo/errors.hpp"

namespace plurigeo {

std::vector<ChartPoint> sample_points(int n, int count, std::uint64_t seed, double box,
                                      double exclusion_radius) {
  if (n < 1) throw SamplerError("sample_points: dimension must be >= 1");
  if (count < 1) throw SamplerError("sample_points: count must be >= 1");
  if (box <= 0.0) throw SamplerError("sample_points: box half-width must be positive");

  std::mt19937_64 rng(seed);
  // Uniform in [0,1) from the top 53 bits; avoids distribution objects whose
  // output is implementation-defined.
  auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  int rejections = 0;
  while (static_cast<int>(out.size()) < count) {
    ChartPoint p;
    p.z.resize(static_cast<std::size_t>(n));
    for (auto& c : p.z) {
      double re = box * (2.0 * u01() - 1.0);
      double im = box * (2.0 * u01() - 1.0);
      c = Complex(re, im);
    }
    if (p.norm() < exclusion_radius) {
      if (++rejections > 10000) throw SamplerError("sample_points: sampler exhausted (10,000 consecutive rejections)");
      continue;
    }
    rejections = 0;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace plurigeo
