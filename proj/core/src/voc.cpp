#include "vocbench/voc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vocbench/errors.hpp"
#include "vocbench/threshold.hpp"

namespace vocbench {

double ValueLine::root() const noexcept {
  if (wrong == 0.0) return kInfinity;
  return correct / wrong;
}

ValueLine ValueLine::from_coefficients(double intercept_a, double slope_b, double threshold) {
  if (!(slope_b >= 0.0)) throw DataError("VOC line slope_b must be >= 0");
  return {intercept_a, slope_b, 1.0, threshold};
}

VocCurve::VocCurve(std::vector<CurvePiece> pieces, CurveMode mode)
    : pieces_(std::move(pieces)), mode_(mode) {
  if (pieces_.empty()) throw DataError("VOC curve needs at least one piece");
  if (pieces_.front().omega_start != 0.0) throw DataError("VOC curve must start at omega = 0");
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (!(pieces_[i].omega_start > pieces_[i - 1].omega_start) ||
        !std::isfinite(pieces_[i].omega_start)) {
      throw DataError("VOC curve knots must be finite and strictly increasing");
    }
  }
}

double VocCurve::piece_end(std::size_t i) const noexcept {
  return i + 1 < pieces_.size() ? pieces_[i + 1].omega_start : kInfinity;
}

void validate(const Band& band) {
  if (!(band.lo >= 0.0) || !std::isfinite(band.lo) || !(band.hi > band.lo)) {
    throw DataError("malformed band: need 0 <= lo < hi");
  }
}

VocCurve fixed_voc(const OutcomeCounts& counts, double threshold) {
  if (!(counts.total > 0.0)) throw DataError("empty dataset: total weight is zero");
  return VocCurve({{0.0, {counts.n_correct, counts.n_wrong, counts.total, threshold}}},
                  CurveMode::fixed);
}

namespace {

// Lines here are unnormalized, y = correct - omega * wrong; all share the
// dataset total, so it cancels from every comparison.

double crossing(const ValueLine& steeper, const ValueLine& flatter) {
  return (steeper.correct - flatter.correct) / (steeper.wrong - flatter.wrong);
}

// True when `mid` is nowhere strictly above max(left, right), given
// left.wrong > mid.wrong > right.wrong.
bool redundant(const ValueLine& left, const ValueLine& mid, const ValueLine& right) {
  return (left.correct - right.correct) * (left.wrong - mid.wrong) <=
         (left.correct - mid.correct) * (left.wrong - right.wrong);
}

}  // namespace

VocCurve omega_aware_voc(const ScoredDataset& validation) {
  const auto sweep = sweep_thresholds(validation);

  std::vector<ValueLine> lines;
  lines.reserve(sweep.size());
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    lines.push_back({sweep.correct[k], sweep.wrong[k], sweep.total, sweep.thresholds[k]});
  }
  // Steepest first; among equal slopes the highest line, then the largest
  // threshold, comes first and the rest are dropped.
  std::sort(lines.begin(), lines.end(), [](const ValueLine& a, const ValueLine& b) {
    if (a.wrong != b.wrong) return a.wrong > b.wrong;
    if (a.correct != b.correct) return a.correct > b.correct;
    return a.threshold > b.threshold;
  });
  lines.erase(std::unique(lines.begin(), lines.end(),
                          [](const ValueLine& a, const ValueLine& b) { return a.wrong == b.wrong; }),
              lines.end());

  std::vector<ValueLine> hull;
  for (const auto& line : lines) {
    while (hull.size() >= 2 && redundant(hull[hull.size() - 2], hull.back(), line)) {
      hull.pop_back();
    }
    hull.push_back(line);
  }

  // Keep only the part of the envelope on omega > 0.
  std::size_t first = 0;
  while (first + 1 < hull.size() && crossing(hull[first], hull[first + 1]) <= 0.0) ++first;

  std::vector<CurvePiece> pieces;
  pieces.push_back({0.0, hull[first]});
  for (std::size_t i = first + 1; i < hull.size(); ++i) {
    // With non-integer weights the exact hull test and the rounded crossings
    // can disagree by an ulp; drop any piece that ends up with no width.
    double start = crossing(pieces.back().line, hull[i]);
    while (pieces.size() > 1 && start <= pieces.back().omega_start) {
      pieces.pop_back();
      start = crossing(pieces.back().line, hull[i]);
    }
    if (start <= 0.0) {
      pieces.back().line = hull[i];
      continue;
    }
    pieces.push_back({start, hull[i]});
  }
  return VocCurve(std::move(pieces), CurveMode::omega_aware);
}

ExtendedOmega omega_sup(const VocCurve& curve) {
  double sup = 0.0;
  const auto& pieces = curve.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& line = pieces[i].line;
    const double start = pieces[i].omega_start;
    const double end = curve.piece_end(i);
    double upper = 0.0;
    if (line.wrong == 0.0) {
      if (!(line.correct > 0.0)) continue;
      upper = end;
    } else {
      const double root = line.root();
      if (!(root > start)) continue;
      upper = std::min(root, end);
    }
    if (std::isinf(upper)) return ExtendedOmega::infinity();
    sup = std::max(sup, upper);
  }
  return ExtendedOmega::finite(sup);
}

ExtendedReal voc_auc(const VocCurve& curve, const Band& band) {
  validate(band);
  double area = 0.0;
  const auto& pieces = curve.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& line = pieces[i].line;
    const double lo = std::max(pieces[i].omega_start, band.lo);
    double hi = std::min(curve.piece_end(i), band.hi);
    if (!(hi > lo)) continue;
    if (line.wrong == 0.0) {
      const double v = line.at(lo);
      if (!(v > 0.0)) continue;
      if (std::isinf(hi)) return ExtendedReal::infinity();
      area += v * (hi - lo);
      continue;
    }
    hi = std::min(hi, line.root());
    if (!(hi > lo)) continue;
    // trapezoid is exact for a linear integrand
    area += 0.5 * (line.at(lo) + line.at(hi)) * (hi - lo);
  }
  return ExtendedReal::finite(area);
}

namespace {

std::size_t active_piece(const VocCurve& curve, double omega) {
  const auto& pieces = curve.pieces();
  auto it = std::upper_bound(pieces.begin(), pieces.end(), omega,
                             [](double w, const CurvePiece& p) { return w < p.omega_start; });
  return static_cast<std::size_t>(std::distance(pieces.begin(), it)) - 1;
}

double curve_at(const VocCurve& curve, double omega) {
  const auto& pieces = curve.pieces();
  const std::size_t i = active_piece(curve, omega);
  double v = pieces[i].line.at(omega);
  if (curve.mode() == CurveMode::omega_aware) {
    // The envelope is the max of its lines; checking the neighbours keeps
    // rounding in the knot positions from picking a line that is an ulp low.
    if (i > 0) v = std::max(v, pieces[i - 1].line.at(omega));
    if (i + 1 < pieces.size()) v = std::max(v, pieces[i + 1].line.at(omega));
  }
  return v;
}

}  // namespace

double evaluate_curve(const VocCurve& curve, Penalty omega) { return curve_at(curve, omega.omega()); }

DominanceResult dominates(const VocCurve& a, const VocCurve& b, const Band& band, double tolerance) {
  validate(band);
  std::vector<double> points{band.lo};
  for (const auto* c : {&a, &b}) {
    for (const auto& p : c->pieces()) {
      if (p.omega_start > band.lo && p.omega_start < band.hi) points.push_back(p.omega_start);
    }
  }
  if (std::isfinite(band.hi)) points.push_back(band.hi);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  DominanceResult result;
  double worst = tolerance;
  for (double w : points) {
    const double gap = curve_at(b, w) - curve_at(a, w);
    if (gap > worst) {
      worst = gap;
      result.holds = false;
      result.witness = w;
    }
  }
  if (!result.holds || std::isfinite(band.hi)) return result;

  // Unbounded band: beyond the last knot both curves are single lines.
  const double last = points.back();
  const auto& la = a.pieces()[active_piece(a, last)].line;
  const auto& lb = b.pieces()[active_piece(b, last)].line;
  const double slope_gap = la.slope_b() - lb.slope_b();  // growth rate of b - a
  if (slope_gap > 0.0) {
    const double gap = curve_at(b, last) - curve_at(a, last);
    result.holds = false;
    result.witness = last + (2.0 * tolerance - gap) / slope_gap + 1.0;
  }
  return result;
}

}  // namespace vocbench
