#ifndef POLYGAME_ERRORS_HPP
#define POLYGAME_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace polygame {

// Instance too large for an enumeration-backed code path.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Two components disagree about the same object (e.g. a counting oracle
// returning marginals outside its polytope).
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A polytope or graph has no feasible 0/1 object at all.
struct NoBasesError : std::runtime_error {
  explicit NoBasesError(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver/CLI configuration that cannot be executed as requested.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A point that was required to lie in a convex hull does not; carries a
// separating hyperplane w with w.x > rhs >= w.u for every vertex u.
struct InfeasibleError : std::runtime_error {
  InfeasibleError(const std::string& msg, std::vector<double> separator, double rhs)
      : std::runtime_error(msg), separator(std::move(separator)), rhs(rhs) {}
  std::vector<double> separator;
  double rhs = 0.0;
};

}  // namespace polygame

#endif  // POLYGAME_ERRORS_HPP
