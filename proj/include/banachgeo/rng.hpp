#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace banachgeo::rng {

// Counter-based generator: every draw is a pure function of
// (seed, counter, lane), so sample i is identical no matter how the sample
// range is chunked across workers.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t mix(uint64_t seed, uint64_t counter, uint64_t lane) {
  return splitmix64(splitmix64(splitmix64(seed) ^ counter) ^ lane);
}

// Derive an independent stream for a sub-task.
inline uint64_t derive(uint64_t seed, uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag + 0x632BE59BD9B4E019ULL));
}

// Uniform in (0, 1].
inline double uniform01(uint64_t seed, uint64_t counter, uint64_t lane) {
  return static_cast<double>((mix(seed, counter, lane) >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller; lanes 2k and 2k+1 feed gaussian lane k.
inline double gaussian(uint64_t seed, uint64_t counter, uint64_t lane) {
  const double u1 = uniform01(seed, counter, 2 * lane);
  const double u2 = uniform01(seed, counter, 2 * lane + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline void gaussian_fill(uint64_t seed, uint64_t counter, Eigen::VectorXd& out) {
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] = gaussian(seed, counter, static_cast<uint64_t>(i));
  }
}

inline Eigen::VectorXd gaussian_vector(uint64_t seed, uint64_t counter, int dim) {
  Eigen::VectorXd v(dim);
  gaussian_fill(seed, counter, v);
  return v;
}

// Uniform direction on the Euclidean sphere (Gaussian normalization).
inline void sphere_direction_fill(uint64_t seed, uint64_t counter, Eigen::VectorXd& out) {
  double s2;
  do {
    gaussian_fill(seed, counter, out);
    s2 = out.squaredNorm();
    counter = splitmix64(counter) | (1ULL << 63);  // retry lane, astronomically rare
  } while (s2 == 0.0);
  out /= std::sqrt(s2);
}

inline Eigen::VectorXd sphere_direction(uint64_t seed, uint64_t counter, int dim) {
  Eigen::VectorXd v(dim);
  sphere_direction_fill(seed, counter, v);
  return v;
}

// Uniform integer in [0, bound).
inline uint64_t uniform_index(uint64_t seed, uint64_t counter, uint64_t lane, uint64_t bound) {
  return mix(seed, counter, lane) % bound;
}

}  // namespace banachgeo::rng
