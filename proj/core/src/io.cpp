#include "vocbench/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vocbench/errors.hpp"
#include "vocbench/value.hpp"

namespace vocbench {

using nlohmann::json;

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::string_view column, std::size_t line_no) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": column '" + std::string(column) +
                         "': cannot parse '" + std::string(field) + "'",
                     line_no);
  }
  return value;
}

// Reads a header line and then hands every non-blank row to `row`.
template <typename RowFn>
void read_csv(std::istream& in, const std::vector<std::string>& required,
              const std::vector<std::string>& optional, RowFn&& row) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_text;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    header_text = line;
    break;
  }
  if (header_text.empty()) throw ParseError("empty file: missing CSV header");
  header = split_commas(header_text);
  const bool ok_size = header.size() >= required.size() &&
                       header.size() <= required.size() + optional.size();
  bool ok_names = ok_size;
  for (std::size_t i = 0; ok_names && i < header.size(); ++i) {
    const auto& want = i < required.size() ? required[i] : optional[i - required.size()];
    ok_names = header[i] == want;
  }
  if (!ok_names) {
    std::string expected;
    for (const auto& c : required) expected += (expected.empty() ? "" : ",") + c;
    for (const auto& c : optional) expected += "[," + c + "]";
    throw ParseError("line " + std::to_string(line_no) + ": expected header '" + expected + "'",
                     line_no);
  }
  const std::size_t n_cols = header.size();
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != n_cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n_cols) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    row(fields, header, line_no);
  }
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

double json_real(const json& obj, const char* key, std::string_view what) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw ParseError(std::string(what) + ": field '" + key + "' must be a number");
  }
  return obj.at(key).get<double>();
}

}  // namespace

ScoredDataset parse_predictions(std::istream& in) {
  std::vector<PredictionRecord> records;
  read_csv(in, {"confidence", "predicted", "label"}, {"weight"},
           [&](const std::vector<std::string_view>& f, const std::vector<std::string_view>& header,
               std::size_t line_no) {
             PredictionRecord r;
             r.confidence = parse_number<double>(f[0], header[0], line_no);
             r.predicted_class = parse_number<int>(f[1], header[1], line_no);
             r.true_label = parse_number<int>(f[2], header[2], line_no);
             if (f.size() > 3) r.weight = parse_number<double>(f[3], header[3], line_no);
             try {
               validate(r);
             } catch (const DataError& e) {
               throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
             }
             records.push_back(r);
           });
  return ScoredDataset(std::move(records));
}

ScoredDataset read_predictions(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_predictions(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_predictions(std::ostream& out, const ScoredDataset& data) {
  out << "confidence,predicted,label,weight\n";
  for (const auto& r : data.input_order()) {
    out << format_real(r.confidence) << ',' << r.predicted_class << ',' << r.true_label << ','
        << format_real(r.weight) << '\n';
  }
}

UseCaseSpec parse_usecase(std::string_view json_text) {
  const auto doc = parse_json(json_text, "use case");
  if (!doc.is_object()) throw ParseError("use case: expected a JSON object");
  const bool has_omega = doc.contains("omega");
  const bool has_triple =
      doc.contains("v_correct") || doc.contains("v_abstain") || doc.contains("v_wrong");
  if (has_omega == has_triple) {
    throw ParseError(
        "use case: give either {\"omega\"} or {\"v_correct\",\"v_abstain\",\"v_wrong\"}, not both");
  }
  if (doc.size() != (has_omega ? 1u : 3u)) throw ParseError("use case: unexpected extra fields");
  if (has_omega) return {std::nullopt, Penalty(json_real(doc, "omega", "use case"))};
  UseCase triple(json_real(doc, "v_correct", "use case"), json_real(doc, "v_abstain", "use case"),
                 json_real(doc, "v_wrong", "use case"));
  return {triple, to_penalty(triple)};
}

UseCaseSpec read_usecase(const std::filesystem::path& path) {
  try {
    return parse_usecase(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string usecase_to_json(const UseCaseSpec& spec) {
  json doc;
  if (spec.triple) {
    doc["v_correct"] = spec.triple->v_correct();
    doc["v_abstain"] = spec.triple->v_abstain();
    doc["v_wrong"] = spec.triple->v_wrong();
  } else {
    doc["omega"] = spec.penalty.omega();
  }
  return doc.dump();
}

void write_curve_csv(std::ostream& out, const VocCurve& curve) {
  out << "omega_start,intercept_a,slope_b,threshold\n";
  for (const auto& p : curve.pieces()) {
    out << format_real(p.omega_start) << ',' << format_real(p.line.intercept_a()) << ','
        << format_real(p.line.slope_b()) << ',' << format_real(p.line.threshold) << '\n';
  }
}

VocCurve parse_curve_csv(std::istream& in, CurveMode mode) {
  std::vector<CurvePiece> pieces;
  read_csv(in, {"omega_start", "intercept_a", "slope_b", "threshold"}, {},
           [&](const auto& f, const auto& header, std::size_t line_no) {
             const double start = parse_number<double>(f[0], header[0], line_no);
             const double a = parse_number<double>(f[1], header[1], line_no);
             const double b = parse_number<double>(f[2], header[2], line_no);
             const double t = parse_number<double>(f[3], header[3], line_no);
             pieces.push_back({start, ValueLine::from_coefficients(a, b, t)});
           });
  return VocCurve(std::move(pieces), mode);
}

void write_rescale_csv(std::ostream& out, const MonotoneRescale& m) {
  out << "input,output\n";
  for (const auto& bp : m.breakpoints()) {
    out << format_real(bp.input) << ',' << format_real(bp.output) << '\n';
  }
}

MonotoneRescale parse_rescale_csv(std::istream& in) {
  std::vector<MonotoneRescale::Breakpoint> bps;
  read_csv(in, {"input", "output"}, {}, [&](const auto& f, const auto& header, std::size_t line_no) {
    bps.push_back({parse_number<double>(f[0], header[0], line_no),
                   parse_number<double>(f[1], header[1], line_no)});
  });
  return MonotoneRescale(std::move(bps));
}

MonotoneRescale read_rescale(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_rescale_csv(in);
}

namespace {

const char* kind_name(DiscriminatorKind kind) {
  switch (kind) {
    case DiscriminatorKind::identity: return "identity";
    case DiscriminatorKind::bin_remap: return "bin_remap";
    case DiscriminatorKind::class_bin_remap: return "class_bin_remap";
  }
  return "identity";
}

}  // namespace

std::string discriminator_to_json(const Discriminator& h) {
  json table = json::array();
  for (const auto& [key, revised] : h.table()) {
    json entry{{"bin", key.first}, {"confidence", revised}};
    if (h.per_class()) entry["class"] = key.second;
    table.push_back(std::move(entry));
  }
  json doc{{"kind", kind_name(h.kind())},
           {"n_bins", h.n_bins()},
           {"per_class", h.per_class()},
           {"table", std::move(table)}};
  return doc.dump(2) + "\n";
}

Discriminator parse_discriminator(std::string_view json_text) {
  const auto doc = parse_json(json_text, "discriminator");
  try {
    const auto kind_text = doc.at("kind").get<std::string>();
    DiscriminatorKind kind;
    if (kind_text == "identity") {
      kind = DiscriminatorKind::identity;
    } else if (kind_text == "bin_remap") {
      kind = DiscriminatorKind::bin_remap;
    } else if (kind_text == "class_bin_remap") {
      kind = DiscriminatorKind::class_bin_remap;
    } else {
      throw ParseError("discriminator: unknown kind '" + kind_text + "'");
    }
    const auto per_class = doc.at("per_class").get<bool>();
    if (per_class != (kind == DiscriminatorKind::class_bin_remap)) {
      throw ParseError("discriminator: per_class disagrees with kind");
    }
    std::map<Discriminator::Key, double> table;
    for (const auto& entry : doc.at("table")) {
      const int cls = per_class ? entry.at("class").get<int>() : 0;
      table[{entry.at("bin").get<std::size_t>(), cls}] = entry.at("confidence").get<double>();
    }
    return {kind, doc.at("n_bins").get<std::size_t>(), std::move(table)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("discriminator: ") + e.what());
  }
}

Discriminator read_discriminator(const std::filesystem::path& path) {
  return parse_discriminator(read_text_file(path));
}

std::string distribution_to_json(const ConfidenceDistribution& dist) {
  json doc = json::array();
  for (const auto& a : dist.atoms()) doc.push_back({{"confidence", a.confidence}, {"mass", a.mass}});
  return doc.dump(2) + "\n";
}

ConfidenceDistribution parse_distribution(std::string_view json_text) {
  const auto doc = parse_json(json_text, "distribution");
  if (!doc.is_array()) throw ParseError("distribution: expected a JSON array");
  std::vector<ConfidenceDistribution::Atom> atoms;
  for (const auto& entry : doc) {
    atoms.push_back({json_real(entry, "confidence", "distribution"),
                     json_real(entry, "mass", "distribution")});
  }
  return ConfidenceDistribution(std::move(atoms));
}

ConfidenceDistribution read_distribution(const std::filesystem::path& path) {
  return parse_distribution(read_text_file(path));
}

}  // namespace vocbench
