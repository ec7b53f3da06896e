#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace anonylink {

enum class IoiKind : std::uint8_t { Subject, Message, Coin, Address, Transaction, Value, Time };

std::string_view ioi_kind_name(IoiKind k);

// An item of interest: anything an observer might try to relate to something
// else. (kind, index) pairs are unique within one set.
struct IoiId {
  IoiKind kind;
  std::uint32_t index;

  friend bool operator==(const IoiId&, const IoiId&) = default;
  friend auto operator<=>(const IoiId&, const IoiId&) = default;
};

constexpr double kRowSumTolerance = 1e-9;
constexpr double kDefaultUnlinkabilityEpsilon = 0.05;

// Row-stochastic matrix: p[i][j] is the probability that item i of the row
// set is related to item j of the column set. Each row describes one item's
// full linkage belief, so rows must sum to 1.
class LinkageDistribution {
 public:
  LinkageDistribution(std::size_t rows, std::size_t cols, std::vector<double> probabilities,
                      std::vector<IoiId> row_ids = {}, std::vector<IoiId> col_ids = {});

  static LinkageDistribution uniform(std::size_t rows, std::size_t cols);
  static LinkageDistribution identity(std::size_t n);
  // Explicit opt-in for inputs that are only proportional to probabilities:
  // scales each row to sum 1, then validates. Construction itself never
  // repairs a broken row silently.
  static LinkageDistribution renormalized(std::size_t rows, std::size_t cols,
                                          std::vector<double> weights);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t i, std::size_t j) const { return p_[i * cols_ + j]; }
  const std::vector<double>& flat() const { return p_; }
  const std::vector<IoiId>& row_ids() const { return row_ids_; }
  const std::vector<IoiId>& col_ids() const { return col_ids_; }

  friend bool operator==(const LinkageDistribution&, const LinkageDistribution&) = default;

 private:
  std::size_t rows_, cols_;
  std::vector<double> p_;
  std::vector<IoiId> row_ids_, col_ids_;
};

// Total-variation distance between one row and the uniform distribution over
// the column set. 0 means the row is indistinguishable from "no information";
// (cols-1)/cols means the row pins a single column.
double deviation_from_uniform(const LinkageDistribution& dist, std::size_t row);

// True iff every row stays within epsilon of uniform.
bool is_unlinkable(const LinkageDistribution& dist, double epsilon = kDefaultUnlinkabilityEpsilon);

// Bayes inversion of the relation under a uniform prior over the row set:
// result[j][i] = P(row item = i | column item = j). Rows of the result are
// renormalized so the row-stochastic invariant holds exactly.
LinkageDistribution transpose_linkage(const LinkageDistribution& dist);

// Chains two relations A->B and B->C into A->C assuming the two hops are
// independent: result[i][k] = sum_j ab[i][j] * bc[j][k].
LinkageDistribution compose_linkage(const LinkageDistribution& ab, const LinkageDistribution& bc);

// Inner product of two attribution vectors over the same candidate set: the
// probability that two observations point at the same candidate. Equals 1/n
// when both vectors are uniform over n candidates.
double sender_unlinkability_product(const std::vector<double>& pa, const std::vector<double>& pb);

// Diagnostic for the converse direction: an inner product of 1/n does NOT
// imply both vectors are uniform. Enumerates simplex vectors on a coarse grid
// (entries are multiples of 1/grid_steps) whose product with the uniform
// vector is exactly 1/n while the vector itself is not uniform.
struct ConverseCounterexample {
  std::vector<double> nonuniform;
  std::vector<double> uniform;
  double product;
};
std::vector<ConverseCounterexample> converse_counterexample_search(std::size_t n,
                                                                   std::size_t grid_steps = 10,
                                                                   std::size_t limit = 64);

// Set of subjects a given subject hides among. Can only shrink: an observer
// never un-learns an exclusion.
class AnonymitySet {
 public:
  explicit AnonymitySet(std::vector<IoiId> members);

  const std::vector<IoiId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const IoiId& id) const;

  // Intersects with `still_possible`; throws if the result would be empty or
  // if the argument would grow the set.
  void restrict_to(const std::vector<IoiId>& still_possible);

 private:
  std::vector<IoiId> members_;  // sorted, unique
};

}  // namespace anonylink
