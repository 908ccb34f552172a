#ifndef APHJ_TORUS_FIELD_HPP
#define APHJ_TORUS_FIELD_HPP

#include "aphj/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace aphj {

// Values on the unit torus T^rank, gridN cells per axis, cell i at
// coordinate i/gridN.  Row-major: axis 0 is the slowest stride.
struct TorusField {
  int rank = 0;
  int gridN = 0;
  double time = 0.0;
  std::vector<double> data;

  static std::size_t total_cells(int rank, int gridN) {
    std::size_t n = 1;
    for (int d = 0; d < rank; ++d) n *= static_cast<std::size_t>(gridN);
    return n;
  }

  static TorusField zeros(int rank, int gridN) {
    if (rank < 1 || gridN < 2)
      throw ConfigError("TorusField: rank >= 1 and gridN >= 2 required");
    TorusField f;
    f.rank = rank;
    f.gridN = gridN;
    f.data.assign(total_cells(rank, gridN), 0.0);
    return f;
  }

  std::size_t size() const { return data.size(); }
  double dy() const { return 1.0 / gridN; }

  // Multi-index <-> flat index, wrapping handled by the caller.
  std::size_t flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int d = 0; d < rank; ++d)
      f = f * static_cast<std::size_t>(gridN) + static_cast<std::size_t>(idx[d]);
    return f;
  }
  std::vector<int> unflat(std::size_t f) const {
    std::vector<int> idx(static_cast<std::size_t>(rank));
    for (int d = rank - 1; d >= 0; --d) {
      idx[static_cast<std::size_t>(d)] = static_cast<int>(f % static_cast<std::size_t>(gridN));
      f /= static_cast<std::size_t>(gridN);
    }
    return idx;
  }
};

inline double min_value(const TorusField& f) {
  if (f.data.empty()) throw EmptyInput("min_value: empty field");
  double m = f.data[0];
  for (double v : f.data) if (v < m) m = v;
  return m;
}
inline double max_value(const TorusField& f) {
  if (f.data.empty()) throw EmptyInput("max_value: empty field");
  double m = f.data[0];
  for (double v : f.data) if (v > m) m = v;
  return m;
}
inline double oscillation(const TorusField& f) {
  return max_value(f) - min_value(f);
}

inline double sup_distance(const TorusField& a, const TorusField& b) {
  if (a.rank != b.rank || a.gridN != b.gridN)
    throw GridMismatch("sup_distance: torus grids differ");
  double m = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] > b.data[i] ? a.data[i] - b.data[i]
                                           : b.data[i] - a.data[i];
    if (d > m) m = d;
  }
  return m;
}

} // namespace aphj

#endif
