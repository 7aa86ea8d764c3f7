#include "vocbench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <thread>

#include "vocbench/calibration.hpp"
#include "vocbench/errors.hpp"
#include "vocbench/log.hpp"
#include "vocbench/threshold.hpp"
#include "vocbench/value.hpp"

namespace vocbench {

using nlohmann::json;

namespace {

double parse_edge(std::string_view text, std::string_view band) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("band '" + std::string(band) + "': cannot parse '" + std::string(text) + "'");
  }
  return v;
}

json counts_json(const OutcomeCounts& c) {
  return {{"n_correct", c.n_correct}, {"n_abstain", c.n_abstain}, {"n_wrong", c.n_wrong},
          {"total", c.total}};
}

const char* mode_name(CurveMode mode) {
  return mode == CurveMode::fixed ? "fixed" : "omega_aware";
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each slot is written
// by exactly one task, so the result does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += jobs) fn(i);
    });
  }
}

}  // namespace

BandSpec parse_band(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("band '" + std::string(text) + "': expected lo:hi");
  }
  BandSpec spec;
  spec.lo = parse_edge(text.substr(0, colon), text);
  const auto hi = text.substr(colon + 1);
  if (hi == "inf") {
    spec.hi = kInfinity;
  } else if (hi == "sup") {
    spec.hi_is_omega_sup = true;
  } else {
    spec.hi = parse_edge(hi, text);
  }
  if (!(spec.lo >= 0.0) || (!spec.hi_is_omega_sup && !(spec.hi > spec.lo))) {
    throw DataError("malformed band '" + std::string(text) + "': need 0 <= lo < hi");
  }
  return spec;
}

std::optional<Band> resolve_band(const BandSpec& spec, const VocCurve& curve) {
  Band band{spec.lo, spec.hi};
  if (spec.hi_is_omega_sup) {
    const auto sup = omega_sup(curve);
    band.hi = sup.infinite ? kInfinity : sup.value;
  }
  if (!(band.hi > band.lo)) return std::nullopt;
  return band;
}

json to_json(const ExtendedReal& x) {
  if (x.infinite) return "inf";
  return x.value;
}

json curve_summary(const VocCurve& curve, const std::vector<BandSpec>& bands) {
  json knots = json::array();
  for (const auto& p : curve.pieces()) {
    knots.push_back({{"omega_start", p.omega_start},
                     {"intercept_a", p.line.intercept_a()},
                     {"slope_b", p.line.slope_b()},
                     {"threshold", p.line.threshold}});
  }
  json band_values = json::array();
  for (const auto& spec : bands) {
    json entry;
    entry["lo"] = spec.lo;
    const auto band = resolve_band(spec, curve);
    if (spec.hi_is_omega_sup) {
      entry["hi"] = "sup";
      entry["hi_resolved"] = band ? to_json(band->hi == kInfinity ? ExtendedReal::infinity()
                                                                   : ExtendedReal::finite(band->hi))
                                  : json(spec.lo);
    } else {
      entry["hi"] = to_json(std::isinf(spec.hi) ? ExtendedReal::infinity()
                                                : ExtendedReal::finite(spec.hi));
    }
    entry["auc"] = band ? to_json(voc_auc(curve, *band)) : json(0.0);
    band_values.push_back(std::move(entry));
  }
  return {{"mode", mode_name(curve.mode())},
          {"omega_sup", to_json(omega_sup(curve))},
          {"auc", to_json(voc_auc(curve))},
          {"auc_bands", std::move(band_values)},
          {"knots", std::move(knots)}};
}

json build_report(const ScoredDataset& test_in, const std::optional<ScoredDataset>& validation_in,
                  const std::optional<UseCaseSpec>& usecase, const ReportOptions& options) {
  require_nonempty(test_in);
  const auto revise = [&](const ScoredDataset& d) {
    return options.discriminator ? apply_discriminator(d, *options.discriminator) : d;
  };
  const ScoredDataset test = revise(test_in);
  const ScoredDataset validation = validation_in ? revise(*validation_in) : test;
  require_nonempty(validation);

  json report;
  report["records"] = test.size();
  report["total_weight"] = test.total_weight();
  report["discriminator"] =
      options.discriminator ? json::parse(discriminator_to_json(*options.discriminator)) : json();
  report["threshold_source"] = validation_in ? "validation" : "test";
  report["accuracy"] = accuracy(test);
  const double calib_error = ece(test, options.ece_bins);
  report["ece"] = {{"bins", options.ece_bins},
                   {"value", calib_error},
                   {"bound", options.ece_bound},
                   {"exceeds_bound", calib_error > options.ece_bound}};
  if (calib_error > options.ece_bound) {
    warn("ECE " + std::to_string(calib_error) + " exceeds the bound " + std::to_string(options.ece_bound) +
         "; calibrated thresholds may be unreliable");
  }
  const auto disc = discrimination(test);
  report["discrimination"] = {{"discrimination", disc.discrimination},
                              {"high_component", disc.high_component},
                              {"low_component", disc.low_component}};

  std::vector<double> omegas = options.omegas;
  if (usecase) omegas.push_back(usecase->penalty.omega());
  std::vector<json> rows(omegas.size());
  std::vector<OutcomeCounts> row_counts(omegas.size());
  parallel_for(omegas.size(), options.jobs, [&](std::size_t i) {
    const Penalty omega(omegas[i]);
    const auto best = optimize_threshold(validation, omega);
    const auto counts = count_outcomes(apply_threshold(test, best.threshold));
    row_counts[i] = counts;
    const double t_cal = calibrated_threshold(omega);
    const auto cal_counts = count_outcomes(apply_threshold(test, t_cal));
    rows[i] = {{"omega", omega.omega()},
               {"threshold", best.threshold},
               {"validation_value", best.achieved_value},
               {"value", dimensionless_value(counts, omega)},
               {"counts", counts_json(counts)},
               {"calibrated_threshold", t_cal},
               {"calibrated_threshold_value", dimensionless_value(cal_counts, omega)}};
  });
  if (usecase) {
    json uc = rows.back();
    rows.pop_back();
    uc["usecase"] = json::parse(usecase_to_json(*usecase));
    if (usecase->triple) {
      uc["raw_value"] = raw_value(row_counts.back(), *usecase->triple);
    }
    report["usecase"] = std::move(uc);
  }
  report["thresholds"] = rows;

  report["voc"] = curve_summary(omega_aware_voc(test), options.bands);
  return report;
}

}  // namespace vocbench
