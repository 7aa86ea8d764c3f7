#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "vocbench/dataset.hpp"

namespace vocbench {

enum class DiscriminatorKind { identity, bin_remap, class_bin_remap };

/// Revised-confidence model h(class, confidence). It only re-scores; the
/// predicted class is never touched.
class Discriminator {
 public:
  /// Key is (confidence bin, predicted class); class is 0 unless per-class.
  using Key = std::pair<std::size_t, int>;

  static Discriminator identity();

  /// Throws DataError when a revised confidence is outside [0,1], a key's bin
  /// is out of range, or the kind and keys disagree.
  Discriminator(DiscriminatorKind kind, std::size_t n_bins, std::map<Key, double> table);

  [[nodiscard]] DiscriminatorKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t n_bins() const noexcept { return n_bins_; }
  [[nodiscard]] bool per_class() const noexcept { return kind_ == DiscriminatorKind::class_bin_remap; }
  [[nodiscard]] const std::map<Key, double>& table() const noexcept { return table_; }

  /// Falls back to `confidence` for keys absent from the table.
  [[nodiscard]] double revise(int predicted_class, double confidence) const;

 private:
  DiscriminatorKind kind_;
  std::size_t n_bins_;
  std::map<Key, double> table_;
};

/// Revised confidence per bin (and per predicted class when `per_class`) is
/// the weighted accuracy of the validation records falling there.
[[nodiscard]] Discriminator train_bin_remap(const ScoredDataset& validation, std::size_t n_bins,
                                            bool per_class);

[[nodiscard]] ScoredDataset apply_discriminator(const ScoredDataset& data, const Discriminator& h);

}  // namespace vocbench
