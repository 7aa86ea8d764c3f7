#include "vocbench/discriminator.hpp"

#include <algorithm>

#include "vocbench/binning.hpp"
#include "vocbench/errors.hpp"

namespace vocbench {

Discriminator Discriminator::identity() { return {DiscriminatorKind::identity, 1, {}}; }

Discriminator::Discriminator(DiscriminatorKind kind, std::size_t n_bins, std::map<Key, double> table)
    : kind_(kind), n_bins_(n_bins), table_(std::move(table)) {
  if (n_bins_ < 1) throw DataError("discriminator needs n_bins >= 1");
  if (kind_ == DiscriminatorKind::identity && !table_.empty()) {
    throw DataError("identity discriminator takes no table");
  }
  for (const auto& [key, revised] : table_) {
    if (key.first >= n_bins_) throw DataError("discriminator bin index out of range");
    if (per_class() ? key.second < 1 : key.second != 0) {
      throw DataError("discriminator class key does not match its kind");
    }
    if (!(revised >= 0.0 && revised <= 1.0)) {
      throw DataError("revised confidence must lie in [0,1]");
    }
  }
}

double Discriminator::revise(int predicted_class, double confidence) const {
  if (kind_ == DiscriminatorKind::identity) return confidence;
  const Key key{confidence_bin(confidence, n_bins_), per_class() ? predicted_class : 0};
  const auto it = table_.find(key);
  return it == table_.end() ? confidence : it->second;
}

Discriminator train_bin_remap(const ScoredDataset& validation, std::size_t n_bins, bool per_class) {
  if (n_bins < 1) throw DataError("discriminator needs n_bins >= 1");
  require_nonempty(validation);
  std::map<Discriminator::Key, std::pair<double, double>> sums;  // weight, hits
  for (const auto& r : validation.records()) {
    auto& s = sums[{confidence_bin(r.confidence, n_bins), per_class ? r.predicted_class : 0}];
    s.first += r.weight;
    if (r.correct()) s.second += r.weight;
  }
  std::map<Discriminator::Key, double> table;
  for (const auto& [key, s] : sums) {
    if (s.first > 0.0) table.emplace(key, std::min(1.0, s.second / s.first));
  }
  return {per_class ? DiscriminatorKind::class_bin_remap : DiscriminatorKind::bin_remap, n_bins,
          std::move(table)};
}

ScoredDataset apply_discriminator(const ScoredDataset& data, const Discriminator& h) {
  return data.with_confidences(
      [&](const PredictionRecord& r) { return h.revise(r.predicted_class, r.confidence); });
}

}  // namespace vocbench
