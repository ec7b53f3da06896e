#include "anonylink/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace anonylink {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("no trials");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double chi_square_statistic(const std::vector<std::uint64_t>& table, std::size_t rows,
                            std::size_t cols) {
  if (table.size() != rows * cols || rows == 0 || cols == 0) {
    throw std::invalid_argument("bad contingency table shape");
  }
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = static_cast<double>(table[i * cols + j]);
      row_sum[i] += x;
      col_sum[j] += x;
      total += x;
    }
  }
  if (total <= 0.0) throw std::invalid_argument("empty contingency table");
  double stat = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double expected = row_sum[i] * col_sum[j] / total;
      if (expected <= 0.0) continue;
      const double diff = static_cast<double>(table[i * cols + j]) - expected;
      stat += diff * diff / expected;
    }
  }
  return stat;
}

}  // namespace anonylink
