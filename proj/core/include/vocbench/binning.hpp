#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace vocbench {

/// Equal-width bin of a confidence in [0,1]; 1.0 falls in the last bin.
inline std::size_t confidence_bin(double confidence, std::size_t n_bins) {
  const auto raw = static_cast<std::size_t>(std::floor(confidence * static_cast<double>(n_bins)));
  return std::min(raw, n_bins - 1);
}

inline double bin_center(std::size_t bin, std::size_t n_bins) {
  return (static_cast<double>(bin) + 0.5) / static_cast<double>(n_bins);
}

}  // namespace vocbench
