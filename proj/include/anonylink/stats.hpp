#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace anonylink {

// two-sided 95%
constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return lo <= x && x <= hi; }
  double half_width() const { return (hi - lo) / 2.0; }
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

// Pearson chi-square statistic for an r x c contingency table (row-major).
double chi_square_statistic(const std::vector<std::uint64_t>& table, std::size_t rows,
                            std::size_t cols);

// Upper critical value of the chi-square distribution, alpha = 0.01,
// for the degrees of freedom used by the independence check below.
constexpr double kChiSquareCrit01Df49 = 74.91947430847816;

}  // namespace anonylink
