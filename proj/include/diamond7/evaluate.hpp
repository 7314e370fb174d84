#pragma once

#include <cstdint>
#include <map>
#include <mutex>

#include "diamond7/module_elem.hpp"
#include "diamond7/qseries.hpp"

namespace diamond7 {

/// Caches the q-expansions of t^n, p0 t^n and p1 t^n through a fixed
/// window and evaluates ModuleElems from them. Thread-safe.
class ModuleEvaluator {
 public:
  explicit ModuleEvaluator(std::int64_t through);

  std::int64_t through() const { return through_; }

  /// q-series of c0 p0 + c1 p1 + c2 through the window.
  QSeries evaluate(const ModuleElem& m);

  /// Expansion of basis(o) * t^n through the window (zero when n is too large).
  QSeries basis_series(Out o, std::int64_t n);

 private:
  const QSeries& tpow(std::int64_t n);

  std::int64_t through_;
  std::mutex mu_;
  std::map<std::int64_t, QSeries> t_;
  std::map<std::pair<int, std::int64_t>, QSeries> basis_;
};

}  // namespace diamond7
