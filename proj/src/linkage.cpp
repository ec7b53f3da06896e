#include "anonylink/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace anonylink {

namespace {

void check_ids_unique(const std::vector<IoiId>& ids, const char* which) {
  std::set<IoiId> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) {
    throw std::invalid_argument(std::string("duplicate IOI ids in ") + which + " set");
  }
}

void check_simplex(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw std::invalid_argument(std::string(name) + " is empty");
  long double sum = 0.0L;
  for (double x : v) {
    if (!(x >= 0.0) || x > 1.0 + kRowSumTolerance) {
      throw std::invalid_argument(std::string(name) + " has an entry outside [0,1]");
    }
    sum += x;
  }
  if (std::fabs(static_cast<double>(sum) - 1.0) > kRowSumTolerance) {
    throw std::invalid_argument(std::string(name) + " does not sum to 1");
  }
}

}  // namespace

std::string_view ioi_kind_name(IoiKind k) {
  switch (k) {
    case IoiKind::Subject: return "subject";
    case IoiKind::Message: return "message";
    case IoiKind::Coin: return "coin";
    case IoiKind::Address: return "address";
    case IoiKind::Transaction: return "transaction";
    case IoiKind::Value: return "value";
    case IoiKind::Time: return "time";
  }
  return "?";
}

LinkageDistribution::LinkageDistribution(std::size_t rows, std::size_t cols,
                                         std::vector<double> probabilities,
                                         std::vector<IoiId> row_ids, std::vector<IoiId> col_ids)
    : rows_(rows), cols_(cols), p_(std::move(probabilities)),
      row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("empty linkage distribution");
  if (p_.size() != rows_ * cols_) throw std::invalid_argument("matrix size mismatch");
  if (!row_ids_.empty() && row_ids_.size() != rows_) {
    throw std::invalid_argument("row id count mismatch");
  }
  if (!col_ids_.empty() && col_ids_.size() != cols_) {
    throw std::invalid_argument("col id count mismatch");
  }
  check_ids_unique(row_ids_, "row");
  check_ids_unique(col_ids_, "col");
  for (std::size_t i = 0; i < rows_; ++i) {
    long double sum = 0.0L;
    for (std::size_t j = 0; j < cols_; ++j) {
      const double x = at(i, j);
      if (!(x >= 0.0) || x > 1.0 + kRowSumTolerance) {
        throw std::invalid_argument("probability outside [0,1]");
      }
      sum += x;
    }
    if (std::fabs(static_cast<double>(sum) - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("row does not sum to 1");
    }
  }
}

LinkageDistribution LinkageDistribution::uniform(std::size_t rows, std::size_t cols) {
  if (cols == 0) throw std::invalid_argument("empty column set");
  return LinkageDistribution(rows, cols, std::vector<double>(rows * cols, 1.0 / cols));
}

LinkageDistribution LinkageDistribution::identity(std::size_t n) {
  std::vector<double> p(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;
  return LinkageDistribution(n, n, std::move(p));
}

LinkageDistribution LinkageDistribution::renormalized(std::size_t rows, std::size_t cols,
                                                      std::vector<double> weights) {
  if (rows == 0 || cols == 0 || weights.size() != rows * cols) {
    throw std::invalid_argument("weight matrix size mismatch");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    long double sum = 0.0L;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!(weights[i * cols + j] >= 0.0)) {
        throw std::invalid_argument("weights must be nonnegative");
      }
      sum += weights[i * cols + j];
    }
    if (sum <= 0.0L) throw std::invalid_argument("row has no mass to normalize");
    for (std::size_t j = 0; j < cols; ++j) {
      weights[i * cols + j] = static_cast<double>(weights[i * cols + j] / sum);
    }
  }
  return LinkageDistribution(rows, cols, std::move(weights));
}

double deviation_from_uniform(const LinkageDistribution& dist, std::size_t row) {
  if (row >= dist.rows()) throw std::out_of_range("row index out of range");
  const double u = 1.0 / dist.cols();
  long double acc = 0.0L;
  for (std::size_t j = 0; j < dist.cols(); ++j) {
    acc += std::fabs(dist.at(row, j) - u);
  }
  return static_cast<double>(acc / 2.0L);
}

bool is_unlinkable(const LinkageDistribution& dist, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
  for (std::size_t i = 0; i < dist.rows(); ++i) {
    if (deviation_from_uniform(dist, i) >= epsilon) return false;
  }
  return true;
}

LinkageDistribution transpose_linkage(const LinkageDistribution& dist) {
  const std::size_t na = dist.rows(), nb = dist.cols();
  // With a uniform prior over the row set, the joint is p[i][j]/na and the
  // prior cancels out of the conditional, leaving column-mass normalization.
  std::vector<long double> col_mass(nb, 0.0L);
  for (std::size_t j = 0; j < nb; ++j) {
    for (std::size_t i = 0; i < na; ++i) col_mass[j] += dist.at(i, j);
  }
  std::vector<double> out(nb * na, 0.0);
  for (std::size_t j = 0; j < nb; ++j) {
    if (col_mass[j] <= 0.0L) {
      throw std::domain_error("column has zero mass; conditional undefined");
    }
    long double row_sum = 0.0L;
    for (std::size_t i = 0; i < na; ++i) row_sum += dist.at(i, j) / col_mass[j];
    for (std::size_t i = 0; i < na; ++i) {
      out[j * na + i] =
          static_cast<double>((dist.at(i, j) / col_mass[j]) / row_sum);
    }
  }
  return LinkageDistribution(nb, na, std::move(out), dist.col_ids(), dist.row_ids());
}

LinkageDistribution compose_linkage(const LinkageDistribution& ab, const LinkageDistribution& bc) {
  if (ab.cols() != bc.rows()) {
    throw std::invalid_argument("inner dimensions do not match");
  }
  const std::size_t na = ab.rows(), nb = ab.cols(), nc = bc.cols();
  std::vector<double> out(na * nc, 0.0);
  for (std::size_t i = 0; i < na; ++i) {
    std::vector<long double> row(nc, 0.0L);
    long double row_sum = 0.0L;
    for (std::size_t j = 0; j < nb; ++j) {
      const long double w = ab.at(i, j);
      if (w == 0.0L) continue;
      for (std::size_t k = 0; k < nc; ++k) row[k] += w * bc.at(j, k);
    }
    for (std::size_t k = 0; k < nc; ++k) row_sum += row[k];
    for (std::size_t k = 0; k < nc; ++k) {
      out[i * nc + k] = static_cast<double>(row[k] / row_sum);
    }
  }
  return LinkageDistribution(na, nc, std::move(out), ab.row_ids(), bc.col_ids());
}

double sender_unlinkability_product(const std::vector<double>& pa, const std::vector<double>& pb) {
  if (pa.size() != pb.size()) throw std::invalid_argument("vector length mismatch");
  check_simplex(pa, "pa");
  check_simplex(pb, "pb");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < pa.size(); ++i) acc += static_cast<long double>(pa[i]) * pb[i];
  return static_cast<double>(acc);
}

std::vector<ConverseCounterexample> converse_counterexample_search(std::size_t n,
                                                                   std::size_t grid_steps,
                                                                   std::size_t limit) {
  if (n < 2) throw std::invalid_argument("need at least two candidates");
  if (grid_steps < n) throw std::invalid_argument("grid too coarse for n");
  std::vector<ConverseCounterexample> found;
  const std::vector<double> u(n, 1.0 / n);
  const double target = 1.0 / n;

  // Enumerate compositions of grid_steps into n nonnegative parts, largest
  // first entry first. Every non-uniform simplex vector has product exactly
  // 1/n with the uniform vector, which is the whole point of the diagnostic;
  // the tolerance check keeps the search honest about float error.
  std::vector<std::size_t> parts(n, 0);
  auto emit = [&]() {
    bool is_uniform = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (parts[i] != parts[i + 1]) {
        is_uniform = false;
        break;
      }
    }
    if (is_uniform) return;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(parts[i]) / grid_steps;
    const double prod = sender_unlinkability_product(v, u);
    if (std::fabs(prod - target) <= 1e-12) {
      found.push_back({v, u, prod});
    }
  };
  auto recurse = [&](auto&& self, std::size_t slot, std::size_t remaining) -> void {
    if (found.size() >= limit) return;
    if (slot + 1 == n) {
      parts[slot] = remaining;
      emit();
      return;
    }
    for (std::size_t take = remaining + 1; take-- > 0;) {
      parts[slot] = take;
      self(self, slot + 1, remaining - take);
      if (found.size() >= limit) return;
    }
  };
  recurse(recurse, 0, grid_steps);
  return found;
}

AnonymitySet::AnonymitySet(std::vector<IoiId> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("anonymity set must be non-empty");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool AnonymitySet::contains(const IoiId& id) const {
  return std::binary_search(members_.begin(), members_.end(), id);
}

void AnonymitySet::restrict_to(const std::vector<IoiId>& still_possible) {
  std::vector<IoiId> sorted = still_possible;
  std::sort(sorted.begin(), sorted.end());
  std::vector<IoiId> next;
  std::set_intersection(members_.begin(), members_.end(), sorted.begin(), sorted.end(),
                        std::back_inserter(next));
  if (next.empty()) {
    throw std::invalid_argument("restriction would empty the anonymity set");
  }
  members_ = std::move(next);
}

}  // namespace anonylink
