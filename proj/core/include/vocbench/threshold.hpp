#pragma once

#include <cstddef>
#include <vector>

#include "vocbench/dataset.hpp"

namespace vocbench {

/// Candidate that abstains on every record: strictly above any valid
/// confidence.
inline constexpr double kAlwaysAbstain = 1.0 + 0x1p-52;

/// 0, the sorted distinct confidences, then kAlwaysAbstain. Each achievable
/// accept/abstain partition corresponds to exactly one entry.
[[nodiscard]] std::vector<double> candidate_thresholds(const ScoredDataset& data);

/// Accepted correct and wrong weight at every candidate threshold.
///
/// `correct[k]` and `wrong[k]` are correctly rounded sums, so they are
/// bit-identical to what count_outcomes(apply_threshold(data, thresholds[k]))
/// reports.
struct ThresholdSweep {
  std::vector<double> thresholds;  // ascending
  std::vector<double> correct;
  std::vector<double> wrong;
  double total = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return thresholds.size(); }
  [[nodiscard]] double value_at(std::size_t k, double omega) const {
    return (correct[k] - omega * wrong[k]) / total;
  }
};

[[nodiscard]] ThresholdSweep sweep_thresholds(const ScoredDataset& data);

struct ThresholdResult {
  double threshold = 0.0;
  double achieved_value = 0.0;
  double accepted_weight = 0.0;
};

/// Penalty-aware threshold: argmax over candidates of the dimensionless value
/// on `validation`. Among maximizers the largest threshold wins.
[[nodiscard]] ThresholdResult optimize_threshold(const ScoredDataset& validation, Penalty omega);

/// omega / (omega + 1): the optimal threshold of a calibrated classifier.
[[nodiscard]] double calibrated_threshold(Penalty omega);

struct CalibrationGuard {
  double ece_bound = 0.1;
  int n_bins = 15;
};

/// Expected dimensionless value when confidences are read as probabilities of
/// being correct: sum over c_j >= t of w_j (c_j - omega (1 - c_j)) / W.
/// Correctness labels are ignored. Logs a warning when the dataset's ECE
/// exceeds `guard.ece_bound`.
[[nodiscard]] double calibrated_expected_value(const ScoredDataset& data, double t, Penalty omega,
                                               const CalibrationGuard& guard = {});

}  // namespace vocbench
