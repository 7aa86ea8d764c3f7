#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vocbench/calibration.hpp"
#include "vocbench/dataset.hpp"
#include "vocbench/discriminator.hpp"
#include "vocbench/synth.hpp"
#include "vocbench/voc.hpp"

namespace vocbench {

/// Reals are written with 17 significant digits so that reading them back
/// reproduces the same double.
[[nodiscard]] std::string format_real(double x);

// Prediction CSV: header `confidence,predicted,label[,weight]`.
[[nodiscard]] ScoredDataset parse_predictions(std::istream& in);
[[nodiscard]] ScoredDataset read_predictions(const std::filesystem::path& path);
/// Writes records in input order; the weight column is always present.
void write_predictions(std::ostream& out, const ScoredDataset& data);

/// Use-case file: either the value triple or a bare penalty.
struct UseCaseSpec {
  std::optional<UseCase> triple;
  Penalty penalty{0.0};
};

[[nodiscard]] UseCaseSpec parse_usecase(std::string_view json_text);
[[nodiscard]] UseCaseSpec read_usecase(const std::filesystem::path& path);
[[nodiscard]] std::string usecase_to_json(const UseCaseSpec& spec);

// Curve CSV: header `omega_start,intercept_a,slope_b,threshold`, one knot per row.
void write_curve_csv(std::ostream& out, const VocCurve& curve);
/// Lines read back carry the normalized coefficients (total = 1).
[[nodiscard]] VocCurve parse_curve_csv(std::istream& in, CurveMode mode);

// Rescale CSV: header `input,output`.
void write_rescale_csv(std::ostream& out, const MonotoneRescale& m);
[[nodiscard]] MonotoneRescale parse_rescale_csv(std::istream& in);
[[nodiscard]] MonotoneRescale read_rescale(const std::filesystem::path& path);

// Discriminator JSON: {kind, n_bins, per_class, table: [{bin, class, confidence}]}.
[[nodiscard]] std::string discriminator_to_json(const Discriminator& h);
[[nodiscard]] Discriminator parse_discriminator(std::string_view json_text);
[[nodiscard]] Discriminator read_discriminator(const std::filesystem::path& path);

// Distribution JSON: [{confidence, mass}, ...].
[[nodiscard]] std::string distribution_to_json(const ConfidenceDistribution& dist);
[[nodiscard]] ConfidenceDistribution parse_distribution(std::string_view json_text);
[[nodiscard]] ConfidenceDistribution read_distribution(const std::filesystem::path& path);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

}  // namespace vocbench
