#pragma once

#include <span>
#include <vector>

#include "vocbench/dataset.hpp"

namespace vocbench {

/// g_{f,t}: keep the predicted class when confidence >= t, abstain otherwise.
/// Output is in the dataset's canonical order.
[[nodiscard]] std::vector<AbstainingPrediction> apply_threshold(const ScoredDataset& data,
                                                                double t);

/// Weighted N_correct / N_abstain / N_wrong, summed in the order given.
/// Throws DataError("empty dataset") on empty input.
[[nodiscard]] OutcomeCounts count_outcomes(std::span<const AbstainingPrediction> preds);

/// Total value V_correct*N_correct + V_abstain*N_abstain + V_wrong*N_wrong.
[[nodiscard]] double raw_value(const OutcomeCounts& counts, const UseCase& usecase);

/// omega = (v_abstain - v_wrong) / (v_correct - v_abstain).
[[nodiscard]] Penalty to_penalty(const UseCase& usecase);

/// (N_correct - omega*N_wrong) / total. Throws DataError on zero total weight.
[[nodiscard]] double dimensionless_value(const OutcomeCounts& counts, Penalty omega);

/// Maps a raw value back to the dimensionless scale:
/// (raw - W*v_abstain) / (W*(v_correct - v_abstain)).
[[nodiscard]] double normalize_value(double raw, const UseCase& usecase, double total_weight);

}  // namespace vocbench
