#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vocbench {

/// One scored prediction: the top-class confidence of an upstream classifier,
/// the class it predicted and the ground-truth label. Class 0 is reserved for
/// abstention and never appears here.
struct PredictionRecord {
  double confidence = 0.0;
  int predicted_class = 1;
  int true_label = 1;
  double weight = 1.0;

  [[nodiscard]] bool correct() const noexcept { return predicted_class == true_label; }

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Throws DataError naming the offending field.
void validate(const PredictionRecord& record);

/// Immutable weighted dataset of scored predictions.
///
/// Records are stored in canonical order: confidence descending, correct
/// before wrong, then original index. Weight totals and outcome counts are
/// correctly rounded sums, so they do not depend on record order; the
/// remaining accumulations walk the canonical order. Results are therefore
/// bit-reproducible regardless of how the input was shuffled or how work is
/// scheduled.
class ScoredDataset {
 public:
  ScoredDataset() = default;

  /// `records` is taken in input order. Each record is validated.
  explicit ScoredDataset(std::vector<PredictionRecord> records);

  [[nodiscard]] std::span<const PredictionRecord> records() const noexcept { return records_; }
  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
  [[nodiscard]] bool empty() const noexcept { return records_.empty(); }

  /// Canonical-order sum of weights.
  [[nodiscard]] double total_weight() const noexcept { return total_weight_; }

  /// Position in the original input of the record at canonical position `i`.
  [[nodiscard]] std::size_t source_index(std::size_t i) const { return source_index_.at(i); }

  /// Records in the order they were supplied.
  [[nodiscard]] std::vector<PredictionRecord> input_order() const;

  /// New dataset with every confidence replaced by `revise(record)`; classes,
  /// labels, weights and input order are kept.
  [[nodiscard]] ScoredDataset with_confidences(
      const std::function<double(const PredictionRecord&)>& revise) const;

 private:
  std::vector<PredictionRecord> records_;
  std::vector<std::size_t> source_index_;
  double total_weight_ = 0.0;
};

/// Throws DataError("empty dataset") when there is nothing to evaluate, or
/// when every record has zero weight.
void require_nonempty(const ScoredDataset& data);

/// g(x) for one record: 0 means abstain.
struct AbstainingPrediction {
  int decided_class = 0;
  int true_label = 1;
  double weight = 1.0;

  [[nodiscard]] bool abstained() const noexcept { return decided_class == 0; }
};

/// Value triple of a use case, in utility units. Only the regime
/// v_wrong <= v_abstain < v_correct is representable.
class UseCase {
 public:
  UseCase(double v_correct, double v_abstain, double v_wrong);

  [[nodiscard]] double v_correct() const noexcept { return v_correct_; }
  [[nodiscard]] double v_abstain() const noexcept { return v_abstain_; }
  [[nodiscard]] double v_wrong() const noexcept { return v_wrong_; }

 private:
  double v_correct_;
  double v_abstain_;
  double v_wrong_;
};

/// Dimensionless cost of a wrong prediction, omega >= 0.
class Penalty {
 public:
  explicit Penalty(double omega);

  [[nodiscard]] double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

/// Weighted outcome counts of an abstaining classifier on a dataset.
/// Every field is a correctly rounded sum, so `total` is the dataset's total
/// weight and equals n_correct + n_abstain + n_wrong up to rounding.
struct OutcomeCounts {
  double n_correct = 0.0;
  double n_abstain = 0.0;
  double n_wrong = 0.0;
  double total = 0.0;

  /// Counts given directly; total = n_correct + n_abstain + n_wrong.
  static OutcomeCounts of(double n_correct, double n_abstain, double n_wrong);
};

}  // namespace vocbench
