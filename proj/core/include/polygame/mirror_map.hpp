#ifndef POLYGAME_MIRROR_MAP_HPP
#define POLYGAME_MIRROR_MAP_HPP

#include <string>

#include "polygame/vec.hpp"

namespace polygame {

// The two mirror geometries the projection and descent code understand:
//   Euclidean: omega(x) = 1/2 ||x||^2           on all of R^E
//   Entropy:   omega(x) = sum x ln x - sum x     on R^E_{>=0} (0 ln 0 = 0)
// with the induced divergences
//   D(x, y) = 1/2 ||x - y||^2
//   D(x, y) = sum x ln(x/y) - sum x + sum y      (requires y > 0, x >= 0)
class MirrorMap {
 public:
  enum class Kind { Euclidean, Entropy };

  static MirrorMap euclidean() { return MirrorMap(Kind::Euclidean); }
  static MirrorMap entropy() { return MirrorMap(Kind::Entropy); }

  Kind kind() const { return kind_; }
  std::string name() const { return kind_ == Kind::Euclidean ? "euclidean" : "entropy"; }

  double omega(const Vec& x) const;
  double divergence(const Vec& x, const Vec& y) const;

  // grad omega: identity (Euclidean) or componentwise ln (entropy, x > 0).
  Vec gradient(const Vec& x) const;
  // (grad omega)^{-1}: identity (Euclidean) or componentwise exp (entropy).
  Vec gradient_inverse(const Vec& g) const;

 private:
  explicit MirrorMap(Kind kind) : kind_(kind) {}
  Kind kind_;
};

}  // namespace polygame

#endif  // POLYGAME_MIRROR_MAP_HPP
