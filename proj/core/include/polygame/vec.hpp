#ifndef POLYGAME_VEC_HPP
#define POLYGAME_VEC_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace polygame {

// Points, directions and weight vectors over a ground set are plain dense vectors.
using Vec = std::vector<double>;

// Subsets of small ground sets travel as bitmasks (element e <-> bit e).
using Mask = std::uint64_t;

// Tolerances shared across the library.
inline constexpr double kFeasTol = 1e-9;   // feasibility / tightness slack
inline constexpr double kStepTol = 1e-7;   // step-size floor in iterative schemes
inline constexpr double kLevelTol = 1e-8;  // grouping of gradient levels
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double vec_sum(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

inline double vec_dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double mask_sum(const Vec& v, Mask s) {
  double acc = 0.0;
  for (; s != 0; s &= s - 1) acc += v[static_cast<int>(std::countr_zero(s))];
  return acc;
}

inline double linf_dist(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

inline double linf_norm(const Vec& a) {
  double d = 0.0;
  for (double x : a) d = std::max(d, std::fabs(x));
  return d;
}

inline std::vector<int> mask_to_indices(Mask s) {
  std::vector<int> out;
  for (; s != 0; s &= s - 1) out.push_back(static_cast<int>(std::countr_zero(s)));
  return out;
}

inline Mask indices_to_mask(const std::vector<int>& idx) {
  Mask s = 0;
  for (int e : idx) s |= (Mask{1} << e);
  return s;
}

}  // namespace polygame

#endif  // POLYGAME_VEC_HPP
