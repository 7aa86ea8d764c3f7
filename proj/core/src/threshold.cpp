#include "vocbench/threshold.hpp"

#include <sstream>

#include "vocbench/calibration.hpp"
#include "vocbench/errors.hpp"
#include "vocbench/exact_sum.hpp"
#include "vocbench/log.hpp"

namespace vocbench {

std::vector<double> candidate_thresholds(const ScoredDataset& data) {
  if (data.empty()) throw DataError("empty dataset");
  std::vector<double> out{0.0};
  const auto records = data.records();
  // canonical order is confidence descending
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->confidence != out.back()) out.push_back(it->confidence);
  }
  out.push_back(kAlwaysAbstain);
  return out;
}

ThresholdSweep sweep_thresholds(const ScoredDataset& data) {
  require_nonempty(data);
  ThresholdSweep sweep;
  sweep.thresholds = candidate_thresholds(data);
  sweep.total = data.total_weight();

  const std::size_t n_cand = sweep.thresholds.size();
  sweep.correct.assign(n_cand, 0.0);
  sweep.wrong.assign(n_cand, 0.0);

  // Walk records from the most confident down; candidate k (ascending) gets
  // the running sums once every record with confidence >= thresholds[k] has
  // been added.
  const auto records = data.records();
  ExactSum correct;
  ExactSum wrong;
  std::size_t pos = 0;
  for (std::size_t k = n_cand; k-- > 0;) {
    const double t = sweep.thresholds[k];
    while (pos < records.size() && records[pos].confidence >= t) {
      if (records[pos].correct()) {
        correct += records[pos].weight;
      } else {
        wrong += records[pos].weight;
      }
      ++pos;
    }
    sweep.correct[k] = correct.value();
    sweep.wrong[k] = wrong.value();
  }
  return sweep;
}

ThresholdResult optimize_threshold(const ScoredDataset& validation, Penalty omega) {
  const auto sweep = sweep_thresholds(validation);
  std::size_t best = 0;
  double best_value = sweep.value_at(0, omega.omega());
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    const double v = sweep.value_at(k, omega.omega());
    if (v >= best_value) {
      best = k;
      best_value = v;
    }
  }
  return {sweep.thresholds[best], best_value, sweep.correct[best] + sweep.wrong[best]};
}

double calibrated_threshold(Penalty omega) { return omega.omega() / (omega.omega() + 1.0); }

double calibrated_expected_value(const ScoredDataset& data, double t, Penalty omega,
                                 const CalibrationGuard& guard) {
  require_nonempty(data);
  const double calib_error = ece(data, guard.n_bins);
  if (calib_error > guard.ece_bound) {
    std::ostringstream msg;
    msg << "calibrated_expected_value: ECE " << calib_error << " exceeds " << guard.ece_bound
        << "; the calibration assumption does not hold for this dataset";
    warn(msg.str());
  }
  const double w = omega.omega();
  double sum = 0.0;
  for (const auto& r : data.records()) {
    if (r.confidence < t) break;
    sum += r.weight * (r.confidence - w * (1.0 - r.confidence));
  }
  return sum / data.total_weight();
}

}  // namespace vocbench
