#include "vocbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vocbench/errors.hpp"
#include "vocbench/exact_sum.hpp"

namespace vocbench {

void validate(const PredictionRecord& record) {
  if (!(record.confidence >= 0.0 && record.confidence <= 1.0)) {
    throw DataError("confidence must lie in [0,1], got " + std::to_string(record.confidence));
  }
  if (record.predicted_class < 1) {
    throw DataError("predicted class must be >= 1 (0 is reserved for abstention)");
  }
  if (record.true_label < 1) {
    throw DataError("label must be >= 1 (0 is reserved for abstention)");
  }
  if (!(record.weight >= 0.0) || !std::isfinite(record.weight)) {
    throw DataError("weight must be finite and >= 0");
  }
}

ScoredDataset::ScoredDataset(std::vector<PredictionRecord> records) {
  for (const auto& r : records) validate(r);

  source_index_.resize(records.size());
  std::iota(source_index_.begin(), source_index_.end(), std::size_t{0});
  std::sort(source_index_.begin(), source_index_.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = records[a];
    const auto& rb = records[b];
    if (ra.confidence != rb.confidence) return ra.confidence > rb.confidence;
    if (ra.correct() != rb.correct()) return ra.correct();
    return a < b;
  });

  records_.reserve(records.size());
  ExactSum total;
  for (auto i : source_index_) {
    records_.push_back(records[i]);
    total += records[i].weight;
  }
  total_weight_ = total.value();
}

std::vector<PredictionRecord> ScoredDataset::input_order() const {
  std::vector<PredictionRecord> out(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) out[source_index_[i]] = records_[i];
  return out;
}

ScoredDataset ScoredDataset::with_confidences(
    const std::function<double(const PredictionRecord&)>& revise) const {
  auto records = input_order();
  for (auto& r : records) r.confidence = revise(r);
  return ScoredDataset(std::move(records));
}

void require_nonempty(const ScoredDataset& data) {
  if (data.empty()) throw DataError("empty dataset");
  if (!(data.total_weight() > 0.0)) throw DataError("empty dataset: total weight is zero");
}

UseCase::UseCase(double v_correct, double v_abstain, double v_wrong)
    : v_correct_(v_correct), v_abstain_(v_abstain), v_wrong_(v_wrong) {
  if (!std::isfinite(v_correct) || !std::isfinite(v_abstain) || !std::isfinite(v_wrong)) {
    throw DataError("use case values must be finite");
  }
  if (v_abstain >= v_correct) throw DataError("abstention dominates: no classifier needed");
  if (v_wrong > v_abstain) throw DataError("wrong beats abstain: never abstain regime");
}

Penalty::Penalty(double omega) : omega_(omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw DataError("penalty omega must be finite and >= 0");
  }
}

OutcomeCounts OutcomeCounts::of(double n_correct, double n_abstain, double n_wrong) {
  if (!(n_correct >= 0.0 && n_abstain >= 0.0 && n_wrong >= 0.0)) {
    throw DataError("outcome counts must be >= 0");
  }
  return {n_correct, n_abstain, n_wrong, n_correct + n_abstain + n_wrong};
}

}  // namespace vocbench
