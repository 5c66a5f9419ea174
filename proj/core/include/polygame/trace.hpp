#ifndef POLYGAME_TRACE_HPP
#define POLYGAME_TRACE_HPP

#include <string>
#include <vector>

#include "polygame/vec.hpp"

namespace polygame {

// Per-round numeric trace of a solver run, one row per round, for CSV export.
struct TraceTable {
  std::vector<std::string> columns;
  std::vector<Vec> rows;

  // Deterministic CSV (max-precision doubles, '\n' line endings).
  std::string to_csv() const;
};

}  // namespace polygame

#endif  // POLYGAME_TRACE_HPP
