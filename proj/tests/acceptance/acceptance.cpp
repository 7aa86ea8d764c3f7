// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every random input is seeded so a failure is reproducible.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "vocbench/binning.hpp"
#include "vocbench/calibration.hpp"
#include "vocbench/discriminator.hpp"
#include "vocbench/io.hpp"
#include "vocbench/synth.hpp"
#include "vocbench/threshold.hpp"
#include "vocbench/value.hpp"
#include "vocbench/voc.hpp"

namespace {

using namespace vocbench;
namespace fs = std::filesystem;
using testing::ConfidenceGrid;
using testing::DatasetShape;
using testing::WeightKind;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ << (failures_ > 1 ? "; " : "") << what;
  }
  [[nodiscard]] Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    std::ostringstream s;
    s << failures_ << " failure(s): " << messages_.str();
    return {false, s.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream messages_;
};

std::string str(double x) { return format_real(x); }

std::vector<std::size_t> accepted_sources(const ScoredDataset& d, double t) {
  std::vector<std::size_t> out;
  const auto records = d.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].confidence >= t) out.push_back(d.source_index(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome accuracy_recovery() {
  Check check;
  std::mt19937_64 rng(101);
  const std::array<WeightKind, 3> kinds{WeightKind::unit, WeightKind::dyadic, WeightKind::continuous};
  for (int i = 0; i < 100; ++i) {
    const auto d = testing::random_dataset(rng, {500, ConfidenceGrid::continuous, kinds[i % 3]});
    const double v = dimensionless_value(count_outcomes(apply_threshold(d, 0.0)), Penalty(0.0));
    const double a = accuracy(d);
    check.expect(v == a, "dataset " + std::to_string(i) + ": value " + str(v) + " != accuracy " + str(a));
  }
  return check.outcome("100 datasets, bitwise equal");
}

Outcome monotone_rescale_invariance() {
  Check check;
  std::mt19937_64 rng(102);
  const std::vector<std::pair<std::string, std::function<double(double)>>> maps{
      {"c^2", [](double c) { return c * c; }},
      {"sqrt", [](double c) { return std::sqrt(c); }},
      {"affine", [](double c) { return 0.1 + 0.8 * c; }},
      {"c^3", [](double c) { return c * c * c; }},
      {"sine", [](double c) { return std::sin(c * (M_PI / 2)); }},
  };
  const std::array<double, 4> omegas{0.0, 0.3, 1.0, 2.5};
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const auto d = testing::random_dataset(
        rng, {200, ConfidenceGrid::continuous, i % 2 ? WeightKind::continuous : WeightKind::unit});
    for (const auto& [name, m] : maps) {
      const auto r = apply_rescale(d, m);
      // A strictly increasing map can still merge two confidences after
      // rounding; such datasets are reported rather than skipped silently.
      const bool injective = candidate_thresholds(r).size() == candidate_thresholds(d).size();
      check.expect(injective, "dataset " + std::to_string(i) + " map " + name + " merged confidences");
      if (!injective) continue;
      for (double w : omegas) {
        const auto a = optimize_threshold(d, Penalty(w));
        const auto b = optimize_threshold(r, Penalty(w));
        ++compared;
        check.expect(std::abs(a.achieved_value - b.achieved_value) <= 1e-12,
                     "dataset " + std::to_string(i) + " map " + name + " omega " + str(w) + ": value " +
                         str(a.achieved_value) + " vs " + str(b.achieved_value));
        check.expect(accepted_sources(d, a.threshold) == accepted_sources(r, b.threshold),
                     "dataset " + std::to_string(i) + " map " + name + " omega " + str(w) +
                         ": partitions differ");
      }
    }
  }
  return check.outcome(std::to_string(compared) + " (dataset, map, omega) cases");
}

Outcome calibrated_threshold_closed_form() {
  Check check;
  std::mt19937_64 rng(103);
  const std::array<double, 5> omegas{0.25, 0.5, 1.0, 2.0, 4.0};
  for (int i = 0; i < 50; ++i) {
    const auto dist = testing::random_distribution(rng);
    const auto d = realize(dist, RealizeMode::population);
    for (double w : omegas) {
      const auto best = optimize_threshold(d, Penalty(w));
      const double t_cal = calibrated_threshold(Penalty(w));
      for (const auto& a : dist.atoms()) {
        const bool accepted = a.confidence >= best.threshold;
        const bool expected = a.confidence >= t_cal;
        check.expect(accepted == expected, "distribution " + std::to_string(i) + " omega " + str(w) +
                                               ": atom " + str(a.confidence) + " misclassified");
      }
      for (double t : candidate_thresholds(d)) {
        const double expected = calibrated_expected_value(d, t, Penalty(w));
        const double empirical = dimensionless_value(count_outcomes(apply_threshold(d, t)), Penalty(w));
        check.expect(std::abs(expected - empirical) <= 1e-12,
                     "distribution " + std::to_string(i) + " omega " + str(w) + " t " + str(t) + ": " +
                         str(expected) + " vs " + str(empirical));
      }
    }
  }
  return check.outcome("50 distributions x 5 penalties");
}

Outcome envelope_oracle() {
  Check check;
  std::mt19937_64 rng(104);
  std::size_t points = 0;
  for (int i = 0; i < 200; ++i) {
    const auto shape = DatasetShape{200, i % 2 ? ConfidenceGrid::continuous : ConfidenceGrid::millesimal,
                                    i % 3 == 0 ? WeightKind::continuous : WeightKind::unit};
    const auto records = testing::random_records(rng, shape);
    const ScoredDataset d(records);
    const auto curve = omega_aware_voc(d);

    // Independent line set: counts per threshold from input-order records.
    struct Line {
      long double correct, wrong;
    };
    std::vector<Line> lines;
    long double total = 0;
    for (const auto& r : records) total += r.weight;
    for (double t : testing::brute_thresholds(records)) {
      Line l{0, 0};
      for (const auto& r : records) {
        if (r.confidence >= t) (r.predicted_class == r.true_label ? l.correct : l.wrong) += r.weight;
      }
      lines.push_back(l);
    }
    for (int k = 0; k < 1000; ++k) {
      // Mostly the interesting region, with some large penalties.
      const double u = testing::uniform01(rng);
      const double w = k % 10 == 0 ? 1000.0 * u : 10.0 * u;
      long double best = -INFINITY;
      for (const auto& l : lines) best = std::max(best, (l.correct - w * l.wrong) / total);
      const double got = evaluate_curve(curve, Penalty(w));
      ++points;
      check.expect(std::abs(got - static_cast<double>(best)) <= 1e-9,
                   "dataset " + std::to_string(i) + " omega " + str(w) + ": " + str(got) + " vs " +
                       str(static_cast<double>(best)));
    }
    const auto& pieces = curve.pieces();
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      check.expect(pieces[p].line.slope_b() >= 0.0, "dataset " + std::to_string(i) + ": increasing piece");
      if (p == 0) continue;
      const double knot = pieces[p].omega_start;
      check.expect(pieces[p].line.slope_b() < pieces[p - 1].line.slope_b(),
                   "dataset " + std::to_string(i) + ": slopes not convex at " + str(knot));
      const double left = pieces[p - 1].line.at(knot);
      const double right = pieces[p].line.at(knot);
      check.expect(std::abs(left - right) <= 1e-12,
                   "dataset " + std::to_string(i) + ": jump at " + str(knot));
    }
  }
  return check.outcome("200 datasets, " + std::to_string(points) + " penalty points, convex and non-increasing");
}

Outcome worked_instance() {
  Check check;
  const auto d = read_predictions(fs::path(VOCBENCH_DATA_DIR) / "d1.csv");
  const auto best = optimize_threshold(d, Penalty(1.0));
  check.expect(best.threshold == 0.8, "threshold " + str(best.threshold));
  check.expect(std::abs(best.achieved_value - 0.4) <= 1e-15, "value " + str(best.achieved_value));
  const auto curve = omega_aware_voc(d);
  const auto& p = curve.pieces();
  check.expect(p.size() == 2, "knot count " + std::to_string(p.size()));
  if (p.size() == 2) {
    check.expect(p[0].omega_start == 0.0 && std::abs(p[0].line.intercept_a() - 0.6) <= 1e-15 &&
                     std::abs(p[0].line.slope_b() - 0.2) <= 1e-15,
                 "first piece");
    check.expect(p[1].omega_start == 1.0 && std::abs(p[1].line.intercept_a() - 0.4) <= 1e-15 &&
                     p[1].line.slope_b() == 0.0,
                 "second piece starts at " + str(p[1].omega_start));
  }
  check.expect(omega_sup(curve).infinite, "omega_sup finite");
  const auto auc = voc_auc(curve, {0.0, 1.0});
  check.expect(!auc.infinite && std::abs(auc.value - 0.5) <= 1e-15, "AUC[0,1) " + str(auc.value));
  // Same numbers from the brute-force oracle.
  const auto records = testing::d1_records();
  check.expect(std::abs(testing::brute_best_value(records, 1.0) - 0.4) <= 1e-15, "oracle value");
  return check.outcome("t=0.8, value 0.4, knots (0, 0.6-0.2w) and (1, 0.4), omega_sup inf, AUC[0,1)=0.5");
}

Outcome preset_dominance() {
  Check check;
  const auto curve = [](const char* name) { return omega_aware_voc(realize(preset(name), RealizeMode::population)); };
  const auto m1 = curve("m1");
  const auto m2 = curve("m2");
  const auto m3 = curve("m3");
  const Band band{0.0, 10.0};
  check.expect(dominates(m3, m2, band).holds, "m3 does not dominate m2");
  check.expect(dominates(m2, m1, band).holds, "m2 does not dominate m1");
  const std::array<double, 3> expected{0.2, 0.3, 0.5};
  const std::array<const VocCurve*, 3> curves{&m1, &m2, &m3};
  for (std::size_t i = 0; i < 3; ++i) {
    const double v = evaluate_curve(*curves[i], Penalty(1.0));
    check.expect(std::abs(v - expected[i]) <= 1e-12, "m" + std::to_string(i + 1) + " at omega 1: " + str(v));
  }
  return check.outcome("m3 >= m2 >= m1 on [0,10]; values at omega 1: 0.2, 0.3, 0.5");
}

Outcome discrimination_identity() {
  Check check;
  std::mt19937_64 rng(107);
  for (int i = 0; i < 100; ++i) {
    // Confidences on a 2^-10 grid so that 1 - c is exact.
    const auto d = testing::random_dataset(
        rng, {300, ConfidenceGrid::dyadic, i % 2 ? WeightKind::continuous : WeightKind::dyadic});
    const auto rep = discrimination(d);
    const std::string tag = "dataset " + std::to_string(i);
    check.expect(rep.discrimination >= 0.0 && rep.discrimination <= 0.25, tag + ": out of [0, 0.25]");
    check.expect(std::abs((rep.high_component + rep.low_component) / 2 - 0.25 - rep.discrimination) <= 1e-12,
                 tag + ": identity");
    const auto flipped = discrimination(apply_rescale(d, [](double c) { return 1.0 - c; }));
    check.expect(flipped.discrimination == rep.discrimination,
                 tag + ": flip " + str(flipped.discrimination) + " vs " + str(rep.discrimination));
    check.expect(flipped.high_component == rep.low_component && flipped.low_component == rep.high_component,
                 tag + ": flipped components");
  }
  return check.outcome("100 datasets; bounds, identity within 1e-12, flip exact");
}

Outcome discriminator_guarantees() {
  Check check;
  std::mt19937_64 rng(108);
  for (int i = 0; i < 100; ++i) {
    const auto d = testing::random_dataset(rng, {300, ConfidenceGrid::continuous, WeightKind::continuous});
    const double acc = accuracy(d);
    std::map<Discriminator::Key, double> random_table;
    for (std::size_t b = 0; b < 7; ++b) random_table[{b, 0}] = testing::uniform01(rng);
    const std::vector<Discriminator> hs{
        Discriminator::identity(), train_bin_remap(d, 10, false), train_bin_remap(d, 10, true),
        train_bin_remap(d, 3, true), Discriminator(DiscriminatorKind::bin_remap, 7, random_table)};
    for (std::size_t k = 0; k < hs.size(); ++k) {
      const double after = accuracy(apply_discriminator(d, hs[k]));
      check.expect(after == acc, "dataset " + std::to_string(i) + " discriminator " + std::to_string(k) +
                                     ": accuracy " + str(after) + " vs " + str(acc));
    }
  }

  const auto fixture = read_predictions(fs::path(VOCBENCH_DATA_DIR) / "per_class_fixture.csv");
  const Penalty omega(1.0);
  // A strictly increasing rescale leaves the tuned value unchanged and a
  // non-decreasing one can only merge partitions; take the best of several.
  double best_rescale = optimize_threshold(fixture, omega).achieved_value;
  const std::vector<std::function<double(double)>> maps{
      [](double c) { return c * c; }, [](double c) { return std::sqrt(c); },
      [](double c) { return 0.1 + 0.8 * c; }};
  for (const auto& m : maps) {
    best_rescale = std::max(best_rescale, optimize_threshold(apply_rescale(fixture, m), omega).achieved_value);
  }
  best_rescale = std::max(
      best_rescale, optimize_threshold(apply_rescale(fixture, isotonic_rescale(fixture)), omega).achieved_value);
  const auto h = train_bin_remap(fixture, 10, true);
  const double per_class = optimize_threshold(apply_discriminator(fixture, h), omega).achieved_value;
  check.expect(per_class - best_rescale >= 0.01,
               "fixture: per-class " + str(per_class) + " vs best rescale " + str(best_rescale));
  std::ostringstream summary;
  summary << "accuracy unchanged on 100 datasets x 5 discriminators; fixture per-class value " << per_class
          << " vs best rescale " << best_rescale;
  return check.outcome(summary.str());
}

Outcome ece_edge_cases() {
  Check check;
  std::vector<PredictionRecord> constant;
  for (int i = 0; i < 10; ++i) constant.push_back({0.7, 1, i < 7 ? 1 : 2, 1.0});
  const double e1 = ece(ScoredDataset(constant));
  check.expect(std::abs(e1) <= 1e-12, "constant confidence: " + str(e1));

  std::vector<ConfidenceDistribution::Atom> atoms;
  const int bins = 15;
  for (int b = 0; b < bins; ++b) atoms.push_back({bin_center(static_cast<std::size_t>(b), bins), 1.0 / bins});
  double acc = 0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) acc += atoms[i].mass;
  atoms.back().mass = 1.0 - acc;
  const double e2 = ece(realize(ConfidenceDistribution(atoms), RealizeMode::population), bins);
  check.expect(std::abs(e2) <= 1e-12, "atoms at bin centres: " + str(e2));
  return check.outcome("constant 0.7 with accuracy 0.7: " + str(e1) + "; bin-centre atoms: " + str(e2));
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome report_determinism() {
  Check check;
  const fs::path data(VOCBENCH_DATA_DIR);
  const std::vector<std::string> inputs{
      "--pred '" + (data / "m2_test.csv").string() + "' --val '" + (data / "m2_val.csv").string() +
          "' --usecase '" + (data / "usecase_triple.json").string() + "'",
      "--pred '" + (data / "d1.csv").string() + "' --usecase '" + (data / "usecase_omega1.json").string() +
          "' --omega 0 --omega 0.5 --omega 1 --omega 3 --band 0:1 --band 1:sup",
      "--pred '" + (data / "per_class_fixture.csv").string() + "' --omega 1"};
  std::size_t bytes = 0;
  for (const auto& in : inputs) {
    const std::string base = std::string("'") + VOCBENCH_BINARY + "' report " + in + " 2>/dev/null";
    int s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    const auto a = capture(base + "", s1);
    const auto b = capture(base + "", s2);
    const auto c = capture(base + " --jobs 4", s3);
    const auto e = capture(base + " --jobs 16", s4);
    check.expect(s1 == 0 && s2 == 0 && s3 == 0 && s4 == 0, "non-zero exit for: " + in);
    check.expect(!a.empty(), "empty output for: " + in);
    check.expect(a == b, "two runs differ for: " + in);
    check.expect(a == c && a == e, "jobs setting changes output for: " + in);
    bytes += a.size();
  }
  return check.outcome(std::to_string(inputs.size()) + " inputs, " + std::to_string(bytes) +
                       " bytes, identical across runs and --jobs 1/4/16");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"accuracy recovery", accuracy_recovery},
      {"monotone rescale invariance", monotone_rescale_invariance},
      {"calibrated threshold closed form", calibrated_threshold_closed_form},
      {"envelope oracle equivalence", envelope_oracle},
      {"worked D1 instance", worked_instance},
      {"preset dominance", preset_dominance},
      {"discrimination identity and bounds", discrimination_identity},
      {"discriminator guarantees", discriminator_guarantees},
      {"ECE edge cases", ece_edge_cases},
      {"report determinism", report_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
