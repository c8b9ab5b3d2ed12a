#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace stablemix {

// Deterministic shortest-roundtrip formatting for CSV/JSON output.
std::string format_double(double v);

// FNV-1a 64-bit, used for config/content hashes in run records.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double residual = 0.0;  // RMS of fit residuals
  std::size_t n = 0;
};

// Least-squares line through (x_i, y_i).
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Seeded engine; all randomized harnesses draw from this type.
using Rng = std::mt19937_64;

}  // namespace stablemix
