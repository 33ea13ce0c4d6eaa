// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/stats.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "rislink/errors.hpp"

namespace rislink {

MeanStderr mean_stderr(std::span<const double> samples) {
  MeanStderr ms;
  const std::size_t n = samples.size();
  if (n == 0) return ms;
  double sum = 0.0;
  for (double s : samples) sum += s;
  ms.mean = sum / static_cast<double>(n);
  if (n < 2) return ms;
  double ssq = 0.0;
  for (double s : samples) ssq += (s - ms.mean) * (s - ms.mean);
  const double variance = ssq / static_cast<double>(n - 1);
  ms.stderr_ = std::sqrt(variance / static_cast<double>(n));
  ms.defined = true;
  return ms;
}

double fit_slope_db_per_decade(std::span<const double> x, std::span<const double> y_db) {
  if (x.size() != y_db.size()) throw ConfigError("fit_slope: size mismatch");
  if (x.size() < 3) throw ConfigError("fit_slope: needs at least 3 points");
  const std::size_t n = x.size();
  double mean_lx = 0.0, mean_y = 0.0;
  std::vector<double> lx(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) throw ConfigError("fit_slope: x values must be positive");
    lx[i] = std::log10(x[i]);
    mean_lx += lx[i];
    mean_y += y_db[i];
  }
  mean_lx /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (lx[i] - mean_lx) * (y_db[i] - mean_y);
    den += (lx[i] - mean_lx) * (lx[i] - mean_lx);
  }
  if (!(den > 0.0)) throw ConfigError("fit_slope: degenerate abscissa");
  return num / den;
}

std::optional<double> find_drop_crossing(std::span<const double> x, std::span<const double> y_db,
                                         double drop_db) {
  if (x.size() != y_db.size()) throw ConfigError("find_drop_crossing: size mismatch");
  if (x.size() < 2) throw ConfigError("find_drop_crossing: needs at least 2 points");
  const double target = y_db[0] - drop_db;
  if (y_db[0] <= target) return x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (y_db[i] <= target) {
      const double dy = y_db[i] - y_db[i - 1];
      if (dy == 0.0) return x[i];
      const double t = (target - y_db[i - 1]) / dy;
      return x[i - 1] + t * (x[i] - x[i - 1]);
    }
  }
  return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("fnv1a64_file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a64(buf.str());
}

}  // namespace rislink
