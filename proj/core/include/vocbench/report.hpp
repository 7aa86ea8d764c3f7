#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vocbench/discriminator.hpp"
#include "vocbench/io.hpp"
#include "vocbench/voc.hpp"

namespace vocbench {

/// Band whose upper edge may be tied to the curve's omega_sup.
struct BandSpec {
  double lo = 0.0;
  double hi = kInfinity;
  bool hi_is_omega_sup = false;
};

/// Parses "lo:hi" where hi may be a number, "inf" or "sup".
[[nodiscard]] BandSpec parse_band(std::string_view text);

/// Resolves `spec` against a curve; nullopt when the band collapses
/// (e.g. [1, omega_sup) with omega_sup <= 1).
[[nodiscard]] std::optional<Band> resolve_band(const BandSpec& spec, const VocCurve& curve);

struct ReportOptions {
  std::vector<double> omegas{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<BandSpec> bands{{0.0, 1.0, false}, {1.0, kInfinity, true}};
  int ece_bins = 15;
  double ece_bound = 0.1;
  unsigned jobs = 1;
  std::optional<Discriminator> discriminator;
};

/// JSON projection of a curve: mode, knots, omega_sup and banded AUC.
[[nodiscard]] nlohmann::json curve_summary(const VocCurve& curve, const std::vector<BandSpec>& bands);

/// JSON encoding of an extended real: a number, or the string "inf".
[[nodiscard]] nlohmann::json to_json(const ExtendedReal& x);

/// Every metric on `test`; thresholds are tuned on `validation` when given,
/// otherwise on `test` itself. When a discriminator is set it is applied to
/// both datasets first. Output is deterministic for any `jobs`.
[[nodiscard]] nlohmann::json build_report(const ScoredDataset& test,
                                          const std::optional<ScoredDataset>& validation,
                                          const std::optional<UseCaseSpec>& usecase,
                                          const ReportOptions& options);

}  // namespace vocbench
