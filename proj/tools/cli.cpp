#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vocbench/calibration.hpp"
#include "vocbench/discriminator.hpp"
#include "vocbench/errors.hpp"
#include "vocbench/io.hpp"
#include "vocbench/log.hpp"
#include "vocbench/report.hpp"
#include "vocbench/svg.hpp"
#include "vocbench/synth.hpp"
#include "vocbench/threshold.hpp"
#include "vocbench/value.hpp"
#include "vocbench/voc.hpp"

namespace vocbench::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

template <typename Writer>
void write_with(const fs::path& path, Writer&& writer) {
  std::ostringstream ss;
  writer(ss);
  write_file(path, ss.str());
}

bool same_file(const std::string& a, const std::string& b) {
  std::error_code ec;
  const bool same = fs::equivalent(a, b, ec);
  return !ec && same;
}

void warn_if_same(const std::string& val, const std::string& test) {
  if (!val.empty() && !test.empty() && same_file(val, test)) {
    warn("validation and test data are the same file; the threshold is tuned in-sample");
  }
}

json counts_json(const OutcomeCounts& c) {
  return {{"n_correct", c.n_correct}, {"n_abstain", c.n_abstain}, {"n_wrong", c.n_wrong},
          {"total", c.total}};
}

json evaluate_at(const ScoredDataset& data, double t, const UseCaseSpec& uc) {
  const auto counts = count_outcomes(apply_threshold(data, t));
  json doc{{"threshold", t},
           {"omega", uc.penalty.omega()},
           {"counts", counts_json(counts)},
           {"value", dimensionless_value(counts, uc.penalty)}};
  if (uc.triple) {
    const double raw = raw_value(counts, *uc.triple);
    doc["raw_value"] = raw;
    doc["normalized_raw_value"] = normalize_value(raw, *uc.triple, counts.total);
  }
  return doc;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("VOCBENCH_SEED")) {
    std::uint64_t seed = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError("VOCBENCH_SEED must be a non-negative integer");
    }
    return seed;
  }
  return 0;
}

std::vector<double> parse_tuple(const std::string& text, std::size_t n, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw ParseError(std::string(what) + ": cannot parse '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.size() != n) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " comma-separated numbers");
  }
  return out;
}

std::vector<BandSpec> parse_bands(const std::vector<std::string>& texts) {
  if (texts.empty()) return ReportOptions{}.bands;
  std::vector<BandSpec> bands;
  for (const auto& t : texts) bands.push_back(parse_band(t));
  return bands;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto previous_sink = set_warning_sink([&err](std::string_view msg) { err << "warning: " << msg << '\n'; });
  struct SinkRestore {
    WarningSink sink;
    ~SinkRestore() { set_warning_sink(std::move(sink)); }
  } restore{std::move(previous_sink)};

  CLI::App app{"Value-based evaluation of classifiers used with a reject option", "vocbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vocbench 0.1.0");

  // eval
  std::string pred_file, val_file, usecase_file, out_file, svg_file;
  double threshold = 0.0;
  auto* eval = app.add_subcommand("eval", "Counts and value of g_{f,t} at a fixed threshold");
  eval->add_option("--pred", pred_file, "Prediction CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--usecase", usecase_file, "Use-case JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--threshold,-t", threshold, "Confidence threshold")->capture_default_str();

  // optimize
  std::string test_file;
  auto* optimize = app.add_subcommand("optimize", "Penalty-aware threshold tuned on validation data");
  optimize->add_option("--val", val_file, "Validation prediction CSV")->required()->check(CLI::ExistingFile);
  optimize->add_option("--usecase", usecase_file, "Use-case JSON")->required()->check(CLI::ExistingFile);
  optimize->add_option("--test", test_file, "Optional test CSV evaluated at the tuned threshold")
      ->check(CLI::ExistingFile);

  // voc
  std::vector<std::string> pred_files, labels, band_texts, csv_outs;
  std::string mode_text = "omega-aware";
  double omega_max = 10.0;
  auto* voc = app.add_subcommand("voc", "VOC curves, omega_sup and banded AUC");
  voc->add_option("--pred", pred_files, "Prediction CSV (repeat to overlay)")->required()->check(CLI::ExistingFile);
  voc->add_option("--label", labels, "Legend label per --pred");
  voc->add_option("--mode", mode_text, "fixed | omega-aware")
      ->check(CLI::IsMember({"fixed", "omega-aware"}))
      ->capture_default_str();
  voc->add_option("--threshold,-t", threshold, "Threshold of the fixed classifier (fixed mode)")
      ->capture_default_str();
  voc->add_option("--omega-max", omega_max, "Plot range upper bound")->capture_default_str();
  voc->add_option("--band", band_texts, "AUC band lo:hi (hi may be inf or sup); repeatable");
  voc->add_option("--out-csv", csv_outs, "Knot CSV per --pred; metadata goes to <path>.json");
  voc->add_option("--out-svg", svg_file, "SVG plot of all curves");

  // report
  std::vector<double> omegas;
  std::string disc_file;
  int bins = 15;
  double ece_bound = 0.1;
  unsigned jobs = 1;
  auto* report = app.add_subcommand("report", "Every metric in one JSON document");
  report->add_option("--pred", pred_file, "Test prediction CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--val", val_file, "Validation CSV for threshold tuning")->check(CLI::ExistingFile);
  report->add_option("--usecase", usecase_file, "Use-case JSON")->check(CLI::ExistingFile);
  report->add_option("--omega", omegas, "Penalties to tabulate (repeatable)");
  report->add_option("--band", band_texts, "AUC band lo:hi (hi may be inf or sup); repeatable");
  report->add_option("--bins", bins, "ECE bins")->capture_default_str()->check(CLI::PositiveNumber);
  report->add_option("--ece-bound", ece_bound, "ECE above which calibration is flagged")->capture_default_str();
  report->add_option("--discriminator", disc_file, "Discriminator JSON applied before all metrics")
      ->check(CLI::ExistingFile);
  report->add_option("--jobs,-j", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  report->add_option("--out,-o", out_file, "Write the report here instead of stdout");
  report->add_option("--svg", svg_file, "Also plot the VOC curve");
  report->add_option("--omega-max", omega_max, "Plot range upper bound")->capture_default_str();

  // synth
  std::string preset_name, dist_file, dist_out, synth_mode = "population";
  std::size_t n_samples = 10000;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> polarize_ops, push_ops;
  auto* synth = app.add_subcommand("synth", "Calibrated synthetic predictions from a confidence distribution");
  auto* preset_opt = synth->add_option("--preset", preset_name, "m1 | m2 | m3")
                         ->check(CLI::IsMember({"m1", "m2", "m3"}));
  auto* dist_opt = synth->add_option("--dist", dist_file, "Distribution JSON")->check(CLI::ExistingFile);
  preset_opt->excludes(dist_opt);
  synth->add_option("--polarize", polarize_ops, "c0,fraction,c_hi,c_lo (repeatable, applied in order)");
  synth->add_option("--push-up", push_ops, "c0,delta_mass,c_target (repeatable, after --polarize)");
  synth->add_option("--mode", synth_mode, "population | sample")
      ->check(CLI::IsMember({"population", "sample"}))
      ->capture_default_str();
  synth->add_option("--n", n_samples, "Samples in sample mode")->capture_default_str();
  synth->add_option("--seed", seed, "RNG seed (default: $VOCBENCH_SEED or 0)");
  synth->add_option("--out,-o", out_file, "Prediction CSV output (default stdout)");
  synth->add_option("--dist-out", dist_out, "Write the final distribution JSON");

  // calibrate
  std::string rescale_in, rescale_out;
  auto* calibrate = app.add_subcommand("calibrate", "Fit and apply an isotonic confidence rescale");
  calibrate->add_option("--val", val_file, "CSV to fit the rescale on")->check(CLI::ExistingFile);
  calibrate->add_option("--pred", pred_file, "CSV to rescale (default: --val)")->check(CLI::ExistingFile);
  calibrate->add_option("--rescale", rescale_in, "Apply this rescale CSV instead of fitting")
      ->check(CLI::ExistingFile);
  calibrate->add_option("--out-rescale", rescale_out, "Write the fitted rescale CSV");
  calibrate->add_option("--out,-o", out_file, "Write the rescaled prediction CSV");

  // discriminate
  std::size_t disc_bins = 10;
  bool per_class = false;
  auto* discriminate = app.add_subcommand("discriminate", "Train or apply a revised-confidence discriminator");
  discriminate->require_subcommand(1);
  auto* train = discriminate->add_subcommand("train", "Fit a bin remap on validation data");
  train->add_option("--val", val_file, "Validation CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--bins", disc_bins, "Equal-width confidence bins")->capture_default_str();
  train->add_flag("--per-class", per_class, "Separate table per predicted class");
  train->add_option("--out,-o", out_file, "Discriminator JSON output (default stdout)");
  auto* apply = discriminate->add_subcommand("apply", "Re-score predictions");
  apply->add_option("--pred", pred_file, "Prediction CSV")->required()->check(CLI::ExistingFile);
  apply->add_option("--discriminator", disc_file, "Discriminator JSON")->required()->check(CLI::ExistingFile);
  apply->add_option("--out,-o", out_file, "Re-scored CSV output (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(e.what()) + "\n"
                                                            : app.help());
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*eval) {
      const auto data = read_predictions(pred_file);
      emit(out, evaluate_at(data, threshold, read_usecase(usecase_file)));
    } else if (*optimize) {
      warn_if_same(val_file, test_file);
      const auto uc = read_usecase(usecase_file);
      const auto best = optimize_threshold(read_predictions(val_file), uc.penalty);
      json doc{{"omega", uc.penalty.omega()},
               {"threshold", best.threshold},
               {"validation_value", best.achieved_value},
               {"accepted_weight", best.accepted_weight},
               {"calibrated_threshold", calibrated_threshold(uc.penalty)}};
      if (!test_file.empty()) doc["test"] = evaluate_at(read_predictions(test_file), best.threshold, uc);
      emit(out, doc);
    } else if (*voc) {
      if (!labels.empty() && labels.size() != pred_files.size()) {
        throw ParseError("--label must be given once per --pred");
      }
      if (!csv_outs.empty() && csv_outs.size() != pred_files.size()) {
        throw ParseError("--out-csv must be given once per --pred");
      }
      const auto bands = parse_bands(band_texts);
      std::vector<PlotSeries> series;
      json curves = json::array();
      for (std::size_t i = 0; i < pred_files.size(); ++i) {
        const auto data = read_predictions(pred_files[i]);
        require_nonempty(data);
        auto curve = mode_text == "fixed" ? fixed_voc(count_outcomes(apply_threshold(data, threshold)), threshold)
                                          : omega_aware_voc(data);
        auto summary = curve_summary(curve, bands);
        const std::string label = labels.empty() ? fs::path(pred_files[i]).stem().string() : labels[i];
        summary["label"] = label;
        if (mode_text == "fixed") summary["threshold"] = threshold;
        if (!csv_outs.empty()) {
          write_with(csv_outs[i], [&](std::ostream& os) { write_curve_csv(os, curve); });
          json meta = summary;
          meta.erase("knots");
          write_file(csv_outs[i] + ".json", meta.dump(2) + "\n");
        }
        curves.push_back(std::move(summary));
        series.push_back({label, std::move(curve)});
      }
      if (!svg_file.empty()) write_file(svg_file, render_voc_svg(series, omega_max));
      emit(out, json{{"curves", std::move(curves)}});
    } else if (*report) {
      warn_if_same(val_file, pred_file);
      ReportOptions options;
      if (!omegas.empty()) options.omegas = omegas;
      options.bands = parse_bands(band_texts);
      options.ece_bins = bins;
      options.ece_bound = ece_bound;
      options.jobs = jobs;
      if (!disc_file.empty()) options.discriminator = read_discriminator(disc_file);
      std::optional<ScoredDataset> validation;
      if (!val_file.empty()) validation = read_predictions(val_file);
      std::optional<UseCaseSpec> uc;
      if (!usecase_file.empty()) uc = read_usecase(usecase_file);
      const auto test = read_predictions(pred_file);
      const auto doc = build_report(test, validation, uc, options);
      const std::string text = doc.dump(2) + "\n";
      if (out_file.empty()) {
        out << text;
      } else {
        write_file(out_file, text);
      }
      if (!svg_file.empty()) {
        const auto shown = options.discriminator ? apply_discriminator(test, *options.discriminator) : test;
        const PlotSeries s{fs::path(pred_file).stem().string(), omega_aware_voc(shown)};
        write_file(svg_file, render_voc_svg(std::span(&s, 1), omega_max));
      }
    } else if (*synth) {
      if (preset_name.empty() && dist_file.empty()) throw ParseError("synth needs --preset or --dist");
      auto dist = preset_name.empty() ? read_distribution(dist_file) : preset(preset_name);
      for (const auto& op : polarize_ops) {
        const auto v = parse_tuple(op, 4, "--polarize");
        dist = polarize(dist, v[0], v[1], v[2], v[3]);
      }
      for (const auto& op : push_ops) {
        const auto v = parse_tuple(op, 3, "--push-up");
        dist = push_up(dist, v[0], v[1], v[2]);
      }
      const auto mode = synth_mode == "sample" ? RealizeMode::sample : RealizeMode::population;
      const auto data = realize(dist, mode, n_samples, seed ? *seed : default_seed());
      if (!dist_out.empty()) write_file(dist_out, distribution_to_json(dist));
      if (out_file.empty()) {
        write_predictions(out, data);
      } else {
        write_with(out_file, [&](std::ostream& os) { write_predictions(os, data); });
      }
    } else if (*calibrate) {
      if (val_file.empty() && rescale_in.empty()) throw ParseError("calibrate needs --val or --rescale");
      if (pred_file.empty() && val_file.empty()) throw ParseError("calibrate needs --pred to apply a rescale");
      const auto rescale = rescale_in.empty() ? isotonic_rescale(read_predictions(val_file))
                                              : read_rescale(rescale_in);
      if (!rescale_out.empty()) {
        write_with(rescale_out, [&](std::ostream& os) { write_rescale_csv(os, rescale); });
      }
      const auto data = read_predictions(pred_file.empty() ? val_file : pred_file);
      const auto rescaled = apply_rescale(data, rescale);
      if (!out_file.empty()) {
        write_with(out_file, [&](std::ostream& os) { write_predictions(os, rescaled); });
      }
      emit(out, json{{"breakpoints", rescale.breakpoints().size()},
                     {"ece_before", ece(data)},
                     {"ece_after", ece(rescaled)}});
    } else if (*train) {
      const auto h = train_bin_remap(read_predictions(val_file), disc_bins, per_class);
      if (out_file.empty()) {
        out << discriminator_to_json(h);
      } else {
        write_file(out_file, discriminator_to_json(h));
      }
    } else if (*apply) {
      const auto revised = apply_discriminator(read_predictions(pred_file), read_discriminator(disc_file));
      if (out_file.empty()) {
        write_predictions(out, revised);
      } else {
        write_with(out_file, [&](std::ostream& os) { write_predictions(os, revised); });
      }
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace vocbench::cli
