#include "polygame/trace.hpp"

#include <cstdio>

namespace polygame {

std::string TraceTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out += ',';
    out += columns[i];
  }
  out += '\n';
  char buf[64];
  for (const Vec& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace polygame
