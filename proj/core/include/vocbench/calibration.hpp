#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "vocbench/dataset.hpp"

namespace vocbench {

/// Weighted fraction of records whose predicted class matches the label.
[[nodiscard]] double accuracy(const ScoredDataset& data);

/// Expected calibration error with `n_bins` equal-width bins on [0,1].
[[nodiscard]] double ece(const ScoredDataset& data, int n_bins = 15);

/// Non-decreasing step function on confidences. Inputs below the first
/// breakpoint map to the first output; otherwise the output of the largest
/// breakpoint input <= x is used.
class MonotoneRescale {
 public:
  struct Breakpoint {
    double input = 0.0;
    double output = 0.0;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  };

  /// Throws DataError unless inputs strictly increase, outputs do not
  /// decrease and every value lies in [0,1]. Needs at least one breakpoint.
  explicit MonotoneRescale(std::vector<Breakpoint> breakpoints);

  [[nodiscard]] const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }
  [[nodiscard]] double operator()(double confidence) const;

 private:
  std::vector<Breakpoint> breakpoints_;
};

/// Weighted pool-adjacent-violators fit of correctness on confidence.
[[nodiscard]] MonotoneRescale isotonic_rescale(const ScoredDataset& validation);

[[nodiscard]] ScoredDataset apply_rescale(const ScoredDataset& data, const MonotoneRescale& m);

/// Applies an arbitrary confidence map, e.g. c -> c*c. Throws DataError if the
/// map leaves [0,1].
[[nodiscard]] ScoredDataset apply_rescale(const ScoredDataset& data,
                                          const std::function<double(double)>& m);

struct DiscriminationReport {
  double discrimination = 0.0;  // sum w (1/2 - c)^2 / W
  double high_component = 0.0;  // sum w c^2 / W
  double low_component = 0.0;   // sum w (1 - c)^2 / W
};

/// Mean squared distance of the confidence from 1/2. Note that
/// (high + low) / 2 = discrimination + 1/4.
[[nodiscard]] DiscriminationReport discrimination(const ScoredDataset& data);

}  // namespace vocbench
