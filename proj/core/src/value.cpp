#include "vocbench/value.hpp"

#include "vocbench/errors.hpp"
#include "vocbench/exact_sum.hpp"

namespace vocbench {

std::vector<AbstainingPrediction> apply_threshold(const ScoredDataset& data, double t) {
  std::vector<AbstainingPrediction> out;
  out.reserve(data.size());
  for (const auto& r : data.records()) {
    const int decided = r.confidence >= t ? r.predicted_class : 0;
    out.push_back({decided, r.true_label, r.weight});
  }
  return out;
}

OutcomeCounts count_outcomes(std::span<const AbstainingPrediction> preds) {
  if (preds.empty()) throw DataError("empty dataset");
  ExactSum correct, abstain, wrong, total;
  for (const auto& p : preds) {
    if (p.abstained()) {
      abstain += p.weight;
    } else if (p.decided_class == p.true_label) {
      correct += p.weight;
    } else {
      wrong += p.weight;
    }
    total += p.weight;
  }
  return {correct.value(), abstain.value(), wrong.value(), total.value()};
}

double raw_value(const OutcomeCounts& counts, const UseCase& usecase) {
  return usecase.v_correct() * counts.n_correct + usecase.v_abstain() * counts.n_abstain +
         usecase.v_wrong() * counts.n_wrong;
}

Penalty to_penalty(const UseCase& usecase) {
  // UseCase construction already rejects the degenerate regimes.
  return Penalty((usecase.v_abstain() - usecase.v_wrong()) /
                 (usecase.v_correct() - usecase.v_abstain()));
}

double dimensionless_value(const OutcomeCounts& counts, Penalty omega) {
  if (!(counts.total > 0.0)) throw DataError("empty dataset: total weight is zero");
  return (counts.n_correct - omega.omega() * counts.n_wrong) / counts.total;
}

double normalize_value(double raw, const UseCase& usecase, double total_weight) {
  if (!(total_weight > 0.0)) throw DataError("total weight must be > 0");
  return (raw - total_weight * usecase.v_abstain()) /
         (total_weight * (usecase.v_correct() - usecase.v_abstain()));
}

}  // namespace vocbench
