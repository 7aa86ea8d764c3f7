#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "vocbench/dataset.hpp"

namespace vocbench {

/// Discrete confidence distribution rho: atoms sorted by confidence with
/// distinct positions and positive masses summing to one.
class ConfidenceDistribution {
 public:
  struct Atom {
    double confidence = 0.0;
    double mass = 0.0;
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  /// Sorts the atoms and validates. Throws DataError.
  explicit ConfidenceDistribution(std::vector<Atom> atoms);

  [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] double mean_confidence() const noexcept;

 private:
  std::vector<Atom> atoms_;
};

enum class RealizeMode { population, sample };

/// Turns rho into a calibrated dataset. Records predict class 1; correct
/// records carry label 1 and wrong ones label 2.
///
/// population: each atom (c, m) becomes a correct record of weight m*c and a
/// wrong one of weight m*(1-c) (zero weights dropped). Exactly calibrated.
///
/// sample: n unit-weight draws. The atom is picked by inverse CDF and the
/// record is correct when a second uniform is < c. Uniforms come from
/// std::mt19937_64(seed) as (bits >> 11) * 2^-53, so the stream is fixed
/// across platforms.
[[nodiscard]] ScoredDataset realize(const ConfidenceDistribution& dist, RealizeMode mode,
                                    std::size_t n = 0, std::uint64_t seed = 0);

/// Moves `fraction` of the atom at c0 to c_lo and c_hi, split so the mean
/// confidence is unchanged: p = (c0 - c_lo) / (c_hi - c_lo) goes up.
[[nodiscard]] ConfidenceDistribution polarize(const ConfidenceDistribution& dist, double c0,
                                              double fraction, double c_hi, double c_lo);

/// Moves `delta_mass` from the atom at c0 up to c_target > c0.
[[nodiscard]] ConfidenceDistribution push_up(const ConfidenceDistribution& dist, double c0,
                                             double delta_mass, double c_target);

/// Stand-ins for three snapshots of a learning model with fixed accuracy 0.6:
///   m1 = {1 @ 0.6}
///   m2 = polarize(m1, 0.6 -> {0.4, 0.8})            = {0.5 @ 0.4, 0.5 @ 0.8}
///   m3 = polarize both m2 atoms -> {0.2, 1.0}       = {0.5 @ 0.2, 0.5 @ 1.0}
/// Throws DataError for any other name.
[[nodiscard]] ConfidenceDistribution preset(std::string_view name);

}  // namespace vocbench
