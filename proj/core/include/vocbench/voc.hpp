#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "vocbench/dataset.hpp"

namespace vocbench {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Dimensionless value of one fixed abstaining classifier as a function of
/// the penalty: V(omega) = (correct - omega * wrong) / total.
///
/// The weighted counts are kept instead of the normalized coefficients so
/// that point evaluations agree bit for bit with dimensionless_value().
struct ValueLine {
  double correct = 0.0;
  double wrong = 0.0;
  double total = 1.0;
  double threshold = 0.0;  // provenance only

  [[nodiscard]] double intercept_a() const noexcept { return correct / total; }
  [[nodiscard]] double slope_b() const noexcept { return wrong / total; }
  [[nodiscard]] double at(double omega) const noexcept { return (correct - omega * wrong) / total; }
  /// Omega where the line crosses zero; +inf for a flat line.
  [[nodiscard]] double root() const noexcept;

  static ValueLine from_coefficients(double intercept_a, double slope_b, double threshold);
};

enum class CurveMode { fixed, omega_aware };

struct CurvePiece {
  double omega_start = 0.0;
  ValueLine line;
};

/// Piecewise-linear VOC curve on [0, inf). Piece i is active on
/// [omega_start_i, omega_start_{i+1}); the last piece extends to infinity.
class VocCurve {
 public:
  /// Throws DataError unless pieces start at 0 with strictly increasing starts.
  VocCurve(std::vector<CurvePiece> pieces, CurveMode mode);

  [[nodiscard]] const std::vector<CurvePiece>& pieces() const noexcept { return pieces_; }
  [[nodiscard]] CurveMode mode() const noexcept { return mode_; }
  /// End of piece i (start of i+1, or +inf).
  [[nodiscard]] double piece_end(std::size_t i) const noexcept;

 private:
  std::vector<CurvePiece> pieces_;
  CurveMode mode_;
};

/// A non-negative real or +infinity, reported symbolically.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal finite(double v) { return {v, false}; }
  static ExtendedReal infinity() { return {0.0, true}; }

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;
};

using ExtendedOmega = ExtendedReal;

/// Half-open penalty interval [lo, hi); hi may be kInfinity.
struct Band {
  double lo = 0.0;
  double hi = kInfinity;
};

/// Throws DataError unless 0 <= lo < hi.
void validate(const Band& band);

/// Single-line curve of a fixed abstaining classifier. `threshold` is only
/// recorded on the line.
[[nodiscard]] VocCurve fixed_voc(const OutcomeCounts& counts, double threshold = 0.0);

/// Upper envelope over all candidate thresholds: the curve of the
/// penalty-aware classifier g_{f, t_omega}. Convex and non-increasing.
[[nodiscard]] VocCurve omega_aware_voc(const ScoredDataset& validation);

/// sup{omega >= 0 : V(omega) > 0}; 0 when the curve is never positive.
[[nodiscard]] ExtendedOmega omega_sup(const VocCurve& curve);

/// Exact integral of max(V, 0) over the band. Infinite only when the band is
/// unbounded and the curve has a positive horizontal asymptote.
[[nodiscard]] ExtendedReal voc_auc(const VocCurve& curve, const Band& band = {});

[[nodiscard]] double evaluate_curve(const VocCurve& curve, Penalty omega);

struct DominanceResult {
  bool holds = true;
  /// Set when `holds` is false: a penalty where b exceeds a.
  std::optional<double> witness;
};

/// a(omega) >= b(omega) - tolerance on every omega of the closed band. Checked
/// on the merged knot set, which is sufficient for piecewise-linear curves.
[[nodiscard]] DominanceResult dominates(const VocCurve& a, const VocCurve& b, const Band& band = {},
                                        double tolerance = 1e-12);

}  // namespace vocbench
