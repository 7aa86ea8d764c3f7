#include "vocbench/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vocbench/binning.hpp"
#include "vocbench/errors.hpp"
#include "vocbench/exact_sum.hpp"

namespace vocbench {

double accuracy(const ScoredDataset& data) {
  require_nonempty(data);
  ExactSum correct;
  for (const auto& r : data.records()) {
    if (r.correct()) correct += r.weight;
  }
  return correct.value() / data.total_weight();
}

double ece(const ScoredDataset& data, int n_bins) {
  if (n_bins < 1) throw DataError("ECE needs at least one bin");
  require_nonempty(data);
  const auto bins = static_cast<std::size_t>(n_bins);
  std::vector<double> weight(bins, 0.0);
  std::vector<double> conf(bins, 0.0);
  std::vector<double> hits(bins, 0.0);
  for (const auto& r : data.records()) {
    const auto b = confidence_bin(r.confidence, bins);
    weight[b] += r.weight;
    conf[b] += r.weight * r.confidence;
    if (r.correct()) hits[b] += r.weight;
  }
  double total = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (!(weight[b] > 0.0)) continue;
    total += (weight[b] / data.total_weight()) * std::abs(conf[b] / weight[b] - hits[b] / weight[b]);
  }
  return total;
}

MonotoneRescale::MonotoneRescale(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw DataError("rescale needs at least one breakpoint");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto& bp = breakpoints_[i];
    if (!(bp.input >= 0.0 && bp.input <= 1.0 && bp.output >= 0.0 && bp.output <= 1.0)) {
      throw DataError("rescale breakpoints must lie in [0,1]");
    }
    if (i > 0) {
      if (!(bp.input > breakpoints_[i - 1].input)) {
        throw DataError("rescale inputs must be strictly increasing");
      }
      if (bp.output < breakpoints_[i - 1].output) {
        throw DataError("rescale outputs must be non-decreasing");
      }
    }
  }
}

double MonotoneRescale::operator()(double confidence) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), confidence,
                             [](double c, const Breakpoint& bp) { return c < bp.input; });
  if (it == breakpoints_.begin()) return breakpoints_.front().output;
  return std::prev(it)->output;
}

MonotoneRescale isotonic_rescale(const ScoredDataset& validation) {
  require_nonempty(validation);

  struct Block {
    double weight;
    double hits;
    std::size_t first;  // index into `inputs`
    [[nodiscard]] double mean() const { return hits / weight; }
  };

  // One block per distinct positive-weight confidence, ascending.
  std::vector<double> inputs;
  std::vector<Block> stack;
  const auto records = validation.records();
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (!(it->weight > 0.0)) continue;
    const double hit = it->correct() ? it->weight : 0.0;
    if (!inputs.empty() && inputs.back() == it->confidence) {
      stack.back().weight += it->weight;
      stack.back().hits += hit;
      // pooling with predecessors happens once the group is complete
      continue;
    }
    // close the previous group before opening a new one
    while (stack.size() >= 2 && stack[stack.size() - 2].mean() > stack.back().mean()) {
      auto top = stack.back();
      stack.pop_back();
      stack.back().weight += top.weight;
      stack.back().hits += top.hits;
    }
    inputs.push_back(it->confidence);
    stack.push_back({it->weight, hit, inputs.size() - 1});
  }
  while (stack.size() >= 2 && stack[stack.size() - 2].mean() > stack.back().mean()) {
    auto top = stack.back();
    stack.pop_back();
    stack.back().weight += top.weight;
    stack.back().hits += top.hits;
  }

  std::vector<MonotoneRescale::Breakpoint> bps(inputs.size());
  for (std::size_t b = 0; b < stack.size(); ++b) {
    const std::size_t end = b + 1 < stack.size() ? stack[b + 1].first : inputs.size();
    const double out = std::clamp(stack[b].mean(), 0.0, 1.0);
    for (std::size_t i = stack[b].first; i < end; ++i) bps[i] = {inputs[i], out};
  }
  // pooled means are non-decreasing up to rounding in the running sums
  for (std::size_t i = 1; i < bps.size(); ++i) {
    bps[i].output = std::max(bps[i].output, bps[i - 1].output);
  }
  return MonotoneRescale(std::move(bps));
}

ScoredDataset apply_rescale(const ScoredDataset& data, const MonotoneRescale& m) {
  return data.with_confidences([&](const PredictionRecord& r) { return m(r.confidence); });
}

ScoredDataset apply_rescale(const ScoredDataset& data, const std::function<double(double)>& m) {
  return data.with_confidences([&](const PredictionRecord& r) {
    const double c = m(r.confidence);
    if (!(c >= 0.0 && c <= 1.0)) {
      throw DataError("rescaled confidence " + std::to_string(c) + " is outside [0,1]");
    }
    return c;
  });
}

DiscriminationReport discrimination(const ScoredDataset& data) {
  require_nonempty(data);
  ExactSum centered;
  ExactSum high;
  ExactSum low;
  for (const auto& r : data.records()) {
    const double c = r.confidence;
    centered += r.weight * (0.5 - c) * (0.5 - c);
    high += r.weight * c * c;
    low += r.weight * (1.0 - c) * (1.0 - c);
  }
  const double w = data.total_weight();
  return {centered.value() / w, high.value() / w, low.value() / w};
}

}  // namespace vocbench
