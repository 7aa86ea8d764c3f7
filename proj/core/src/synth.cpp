#include "vocbench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "vocbench/errors.hpp"

namespace vocbench {

namespace {

constexpr double kMassTolerance = 1e-12;

// Uniform in [0,1) with 53 random bits; independent of the standard
// library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

std::vector<ConfidenceDistribution::Atom>::iterator find_atom(
    std::vector<ConfidenceDistribution::Atom>& atoms, double c) {
  return std::find_if(atoms.begin(), atoms.end(),
                      [c](const auto& a) { return a.confidence == c; });
}

void add_mass(std::vector<ConfidenceDistribution::Atom>& atoms, double c, double mass) {
  if (!(mass > 0.0)) return;
  if (auto it = find_atom(atoms, c); it != atoms.end()) {
    it->mass += mass;
  } else {
    atoms.push_back({c, mass});
  }
}

void take_mass(std::vector<ConfidenceDistribution::Atom>& atoms,
               std::vector<ConfidenceDistribution::Atom>::iterator it, double mass) {
  if (mass >= it->mass) {
    atoms.erase(it);
  } else {
    it->mass -= mass;
  }
}

}  // namespace

ConfidenceDistribution::ConfidenceDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DataError("distribution needs at least one atom");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.confidence < b.confidence; });
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!(a.confidence >= 0.0 && a.confidence <= 1.0)) {
      throw DataError("atom confidence must lie in [0,1]");
    }
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw DataError("atom mass must be > 0");
    if (i > 0 && a.confidence == atoms_[i - 1].confidence) {
      throw DataError("atom confidences must be distinct");
    }
    total += a.mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw DataError("atom masses must sum to 1, got " + std::to_string(total));
  }
}

double ConfidenceDistribution::mean_confidence() const noexcept {
  double mean = 0.0;
  for (const auto& a : atoms_) mean += a.mass * a.confidence;
  return mean;
}

ScoredDataset realize(const ConfidenceDistribution& dist, RealizeMode mode, std::size_t n,
                      std::uint64_t seed) {
  std::vector<PredictionRecord> records;
  if (mode == RealizeMode::population) {
    for (const auto& a : dist.atoms()) {
      const double hit = a.mass * a.confidence;
      const double miss = a.mass * (1.0 - a.confidence);
      if (hit > 0.0) records.push_back({a.confidence, 1, 1, hit});
      if (miss > 0.0) records.push_back({a.confidence, 1, 2, miss});
    }
    return ScoredDataset(std::move(records));
  }

  if (n < 1) throw DataError("sample realization needs n >= 1");
  const auto& atoms = dist.atoms();
  std::vector<double> cdf;
  cdf.reserve(atoms.size());
  double acc = 0.0;
  for (const auto& a : atoms) cdf.push_back(acc += a.mass);

  std::mt19937_64 rng(seed);
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unit_uniform(rng) * acc;
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    idx = std::min(idx, atoms.size() - 1);
    const double c = atoms[idx].confidence;
    const bool hit = unit_uniform(rng) < c;
    records.push_back({c, 1, hit ? 1 : 2, 1.0});
  }
  return ScoredDataset(std::move(records));
}

ConfidenceDistribution polarize(const ConfidenceDistribution& dist, double c0, double fraction,
                                double c_hi, double c_lo) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DataError("polarize fraction must lie in (0,1]");
  if (!(c_lo < c0) || !(c_hi > c0)) throw DataError("polarize needs c_lo < c0 < c_hi");
  if (!(c_lo >= 0.0) || !(c_hi <= 1.0)) throw DataError("polarize targets must lie in [0,1]");

  auto atoms = dist.atoms();
  auto it = find_atom(atoms, c0);
  if (it == atoms.end()) throw DataError("no atom at c0 = " + std::to_string(c0));

  const double moved = fraction * it->mass;
  const double up = (c0 - c_lo) / (c_hi - c_lo);
  take_mass(atoms, it, fraction == 1.0 ? it->mass : moved);
  add_mass(atoms, c_hi, up * moved);
  add_mass(atoms, c_lo, (1.0 - up) * moved);
  return ConfidenceDistribution(std::move(atoms));
}

ConfidenceDistribution push_up(const ConfidenceDistribution& dist, double c0, double delta_mass,
                               double c_target) {
  if (!(c_target > c0)) throw DataError("push_up target must exceed c0 (pushing mass down is rejected)");
  if (!(c_target <= 1.0)) throw DataError("push_up target must be <= 1");
  if (!(delta_mass > 0.0)) throw DataError("push_up needs delta_mass > 0");

  auto atoms = dist.atoms();
  auto it = find_atom(atoms, c0);
  if (it == atoms.end()) throw DataError("no atom at c0 = " + std::to_string(c0));
  if (delta_mass > it->mass) throw DataError("insufficient mass at c0");

  take_mass(atoms, it, delta_mass);
  add_mass(atoms, c_target, delta_mass);
  return ConfidenceDistribution(std::move(atoms));
}

ConfidenceDistribution preset(std::string_view name) {
  const ConfidenceDistribution m1({{0.6, 1.0}});
  if (name == "m1") return m1;
  const auto m2 = polarize(m1, 0.6, 1.0, 0.8, 0.4);
  if (name == "m2") return m2;
  if (name == "m3") return polarize(polarize(m2, 0.4, 1.0, 1.0, 0.2), 0.8, 1.0, 1.0, 0.2);
  throw DataError("unknown preset '" + std::string(name) + "' (expected m1, m2 or m3)");
}

}  // namespace vocbench
