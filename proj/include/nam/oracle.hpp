#pragma once

/// @file oracle.hpp
/// @brief Exhaustive enumeration of ball measures on the p^{mn} cells of
///        Z_p^n with weights from a finite grid. Drives the brute-force
///        property suites.

#include <optional>
#include <vector>

#include "nam/measure.hpp"

namespace nam {

struct EnumerationSpec {
  long p = 2;
  int n = 1;
  long m = 1;
  std::vector<Rational> grid;
  ValueMode mode = ValueMode::real();
  bool probability_only = false;
  Integer cap = Integer(1000000);
};

/// Deterministic lexicographic walk over grid^{cells}: the last cell varies
/// fastest, grid entries in the order given. Duplicate grid entries are
/// rejected, so no measure is produced twice.
class MeasureEnumerator {
 public:
  explicit MeasureEnumerator(EnumerationSpec spec) : spec_(std::move(spec)) {
    require_prime(spec_.p);
    if (spec_.n < 1 || spec_.m < 0) throw InvalidArgument("enumeration needs n >= 1 and m >= 0");
    if (spec_.grid.empty()) throw InvalidArgument("weight grid is empty");
    for (std::size_t i = 0; i < spec_.grid.size(); ++i)
      for (std::size_t j = i + 1; j < spec_.grid.size(); ++j)
        if (spec_.grid[i] == spec_.grid[j]) throw InvalidArgument("weight grid has duplicate entries");
    // Cell count first: p^{mn} must itself stay small.
    const Integer cells = ipow(spec_.p, static_cast<unsigned long>(spec_.m * spec_.n));
    if (cells > spec_.cap) throw CapExceeded("p^{mn} = " + cells.get_str() + " cells exceeds the cap");
    Integer total(1);
    for (Integer i = 0; i < cells; ++i) {
      total *= static_cast<long>(spec_.grid.size());
      if (total > spec_.cap)
        throw CapExceeded("enumeration of " + std::to_string(spec_.grid.size()) + "^" + cells.get_str() +
                          " measures exceeds the cap " + spec_.cap.get_str());
    }
    candidates_ = total;
    cells_ = cells_in_ball(spec_.p, spec_.n, spec_.m, 0);
    index_.assign(cells_.size(), 0);
  }

  /// Number of weight vectors before the probability filter.
  const Integer& candidate_count() const noexcept { return candidates_; }
  const std::vector<Point>& cells() const noexcept { return cells_; }

  /// The next measure, or nullopt when exhausted.
  std::optional<BallMeasure> next() {
    while (!done_) {
      if (spec_.probability_only && !total_is_one()) {
        advance();
        continue;
      }
      BallMeasure mu(spec_.p, spec_.n, spec_.m, spec_.mode, false);
      for (std::size_t i = 0; i < cells_.size(); ++i) mu.insert_unique(cells_[i], spec_.grid[index_[i]]);
      advance();
      if (!spec_.probability_only || mu.is_probability()) return mu;
    }
    return std::nullopt;
  }

  std::vector<BallMeasure> all() {
    std::vector<BallMeasure> out;
    while (auto mu = next()) out.push_back(std::move(*mu));
    return out;
  }

 private:
  // Cheap necessary condition for a probability measure: μ(X) = 1.
  bool total_is_one() const {
    Rational total(0);
    for (std::size_t i : index_) total += spec_.grid[i];
    return total == 1;
  }

  void advance() {
    std::size_t k = index_.size();
    while (k > 0) {
      --k;
      if (++index_[k] < spec_.grid.size()) return;
      index_[k] = 0;
    }
    done_ = true;
  }

  EnumerationSpec spec_;
  Integer candidates_;
  std::vector<Point> cells_;
  std::vector<std::size_t> index_;
  bool done_ = false;
};

inline std::vector<BallMeasure> enumerate_measures(EnumerationSpec spec) { return MeasureEnumerator(std::move(spec)).all(); }

}  // namespace nam
