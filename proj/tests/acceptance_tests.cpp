// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "anonylink/evaluator.hpp"
#include "anonylink/linkage.hpp"
#include "anonylink/stats.hpp"
#include "fuzz_common.hpp"

using namespace anonylink;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool g_all_ok = true;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  g_all_ok = g_all_ok && ok;
  std::printf("%s  criterion %d: %s  [%s]\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

constexpr std::uint64_t kSeed = 42;
constexpr std::uint32_t kTrials = 10000;

// 1. ring-spend tracing succeeds at exactly the inverse ring size
void criterion_ring_bound() {
  bool ok = true;
  std::ostringstream detail;
  for (std::uint32_t n : {2u, 4u, 8u, 16u}) {
    GameConfig cfg;
    cfg.scheme = SchemeKind::CryptoNote;
    cfg.attack = Attack::Slla;
    cfg.medium = Medium::CoinToCoin;
    cfg.trials = kTrials;
    cfg.seed = kSeed;
    cfg.ring_size = n;
    cfg.candidates = std::max(8u, n);
    const auto t0 = Clock::now();
    const AttackOutcome o = run_game(cfg);
    const double secs = seconds_since(t0);
    const bool in_ci = o.wilson_ci_95.contains(1.0 / n);
    const bool fast = secs < 60.0;
    ok = ok && in_ci && fast;
    detail << "n=" << n << ": rate " << o.success_rate << " ci [" << o.wilson_ci_95.lo << ","
           << o.wilson_ci_95.hi << "] " << (in_ci ? "contains" : "MISSES") << " 1/n, "
           << static_cast<int>(secs * 1000) << "ms; ";
  }
  report(1, "ring-spend trace rate equals 1/n within the 95% CI, 10^4 trials, <60s per n", ok,
         detail.str());
}

// 2. the full grid reproduces the expected verdict classes (verify exits 0)
EvaluationMatrix criterion_matrix() {
  GameConfig base;
  base.trials = kTrials;
  base.seed = kSeed;
  const auto t0 = Clock::now();
  EvaluationMatrix m = build_matrix(base);
  const double secs = seconds_since(t0);

  std::ifstream f(default_fixture_path());
  bool ok = f.good();
  std::ostringstream detail;
  if (!ok) {
    detail << "fixture not readable at " << default_fixture_path();
  } else {
    json fixture;
    f >> fixture;
    const auto diffs = verify_against_expected(m, fixture);
    ok = diffs.empty() && secs < 900.0;
    detail << m.rows.size() * matrix_columns().size() << " cells, " << diffs.size()
           << " mismatches, " << static_cast<int>(secs) << "s";
    for (const auto& d : diffs) {
      detail << "; " << scheme_name(d.scheme) << "/" << attack_name(d.attack) << "/"
             << medium_name(d.medium) << " expected " << d.expected << " got " << d.computed;
    }
  }
  report(2, "full matrix matches the expected verdict fixture, 10^4 trials/cell, <15min", ok,
         detail.str());
  return m;
}

// 3. linkage algebra: the two partial-equivalence theorems and the
//    attribution-product equivalence
void criterion_theorems() {
  bool uniform_ok = true;
  for (std::size_t na = 1; na <= 8; ++na) {
    for (std::size_t nb = 1; nb <= 8; ++nb) {
      uniform_ok = uniform_ok && transpose_linkage(LinkageDistribution::uniform(na, nb)).flat() ==
                                     LinkageDistribution::uniform(nb, na).flat();
      for (std::size_t nc = 1; nc <= 8; ++nc) {
        uniform_ok = uniform_ok &&
                     compose_linkage(LinkageDistribution::uniform(na, nb),
                                     LinkageDistribution::uniform(nb, nc))
                             .flat() == LinkageDistribution::uniform(na, nc).flat();
      }
    }
  }

  bool stochastic_ok = true;
  Rng rng(Rng::derive(kSeed, 0x737431ULL));
  for (int iter = 0; iter < 1000; ++iter) {
    const std::size_t n = 2 + rng.uniform(7), k = 2 + rng.uniform(7);
    std::vector<double> p(n * k);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0;
      for (std::size_t j = 0; j < k; ++j) {
        p[i * k + j] = rng.unit() + 1e-9;
        sum += p[i * k + j];
      }
      double run = 0;
      for (std::size_t j = 0; j + 1 < k; ++j) {
        p[i * k + j] /= sum;
        run += p[i * k + j];
      }
      p[i * k + k - 1] = 1.0 - run;
    }
    const LinkageDistribution d(n, k, p);
    for (const LinkageDistribution& result :
         {transpose_linkage(d), compose_linkage(d, LinkageDistribution::uniform(k, 3))}) {
      for (std::size_t i = 0; i < result.rows(); ++i) {
        long double s = 0;
        for (std::size_t j = 0; j < result.cols(); ++j) s += result.at(i, j);
        stochastic_ok = stochastic_ok && std::fabs(static_cast<double>(s) - 1.0) <= 1e-9;
      }
    }
  }

  bool forward_ok = true;
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::vector<double> u(n, 1.0 / n);
    forward_ok = forward_ok && sender_unlinkability_product(u, u) == 1.0 / n;
  }

  bool converse_ok = false;
  for (const auto& ce : converse_counterexample_search(3, 10)) {
    if (std::fabs(ce.nonuniform[0] - 0.6) < 1e-12 && std::fabs(ce.nonuniform[1] - 0.2) < 1e-12 &&
        std::fabs(ce.nonuniform[2] - 0.2) < 1e-12) {
      converse_ok = true;
    }
  }

  std::ostringstream detail;
  detail << "uniform transpose/compose exact dims<=8: " << (uniform_ok ? "yes" : "NO")
         << "; stochasticity 1e-9 over 1000 matrices: " << (stochastic_ok ? "yes" : "NO")
         << "; product=1/n exact n=2..6: " << (forward_ok ? "yes" : "NO")
         << "; (0.6,0.2,0.2)·uniform counterexample found: " << (converse_ok ? "yes" : "NO");
  report(3, "theorem suite: symmetry, transitivity, attribution product, converse diagnostic",
         uniform_ok && stochastic_ok && forward_ok && converse_ok, detail.str());
}

// 4. scheme algebra: commitment homomorphism, balance identity, identifier
//    independence, stealth uniqueness
void criterion_scheme_algebra() {
  std::ostringstream detail;
  const auto& grp = GroupParams::get(GroupProfile::Desk64);

  bool pedersen_ok = true;
  Rng rng(Rng::derive(kSeed, 0x616c67ULL));
  for (int i = 0; i < 1000; ++i) {
    const Scalar r1 = grp.random_scalar(rng), r2 = grp.random_scalar(rng);
    const std::uint64_t v1 = rng.uniform(1u << 20), v2 = rng.uniform(1u << 20);
    pedersen_ok = pedersen_ok && grp.mul(grp.pedersen(r1, v1), grp.pedersen(r2, v2)) ==
                                     grp.pedersen(grp.add_q(r1, r2), v1 + v2);
  }
  detail << "homomorphism over 1000 pairs: " << (pedersen_ok ? "exact" : "BROKEN");

  bool balance_ok = true;
  {
    WorldConfig wc;
    wc.scheme = SchemeKind::Mimblewimble;
    wc.subjects = 3;
    wc.seed = kSeed;
    World w(wc);
    for (int i = 0; i < 50; ++i) {
      const OutPoint c = w.scheme().mint(w, 0, 5 + rng.uniform(100));
      w.advance_round();
      TransferParams p;
      p.pay_value = 1 + rng.uniform(w.truth_of(c).value);
      PreparedTransfer pt = w.scheme().build_transfer(w, 0, 1, {c}, p);
      GroupElt product = 1;
      for (const auto& out : pt.tx.outputs) product = w.group().mul(product, *out.pedersen);
      for (const auto& in : pt.tx.inputs) {
        product = w.group().mul(product, w.group().inv(*in.commitment));
      }
      Scalar out_blind = 0;
      for (const auto& po : pt.pending) out_blind = w.group().add_q(out_blind, *po.secrets.blinding);
      const Scalar delta = w.group().sub_q(out_blind, *Scheme::find_wallet_coin(w, 0, c)->blinding);
      balance_ok = balance_ok && product == *pt.tx.kernel_excess &&
                   *pt.tx.kernel_excess == w.group().pedersen(delta, 0);
      w.submit_prepared(pt);
      w.advance_round();
      w.scheme().scan_and_receive(w, 0);
      w.scheme().scan_and_receive(w, 1);
    }
  }
  detail << "; balanced-transfer kernel identity over 50 transfers: "
         << (balance_ok ? "exact" : "BROKEN");

  // identifier independence: 3-bit buckets of the leading commitment byte
  // against the leading serial byte, 8x8 table, alpha = 0.01, df = 49
  double chi = 0;
  {
    WorldConfig wc;
    wc.scheme = SchemeKind::Zerocash;
    wc.subjects = 2;
    wc.seed = kSeed;
    World w(wc);
    std::vector<std::uint64_t> table(64, 0);
    for (int i = 0; i < 1000; ++i) {
      const OutPoint op = w.scheme().mint(w, 0, 1 + rng.uniform(1000));
      const auto& coin = w.wallet(0).coins.back();
      const auto cm = *w.ledger().output_at(op).commitment;
      const auto sn = *coin.serial;
      table[(cm[0] >> 5) * 8 + (sn[0] >> 5)]++;
    }
    chi = chi_square_statistic(table, 8, 8);
  }
  const bool chi_ok = chi < kChiSquareCrit01Df49;
  detail << "; commitment/serial chi-square over 1000 coins: " << chi << " vs 74.919 "
         << (chi_ok ? "(independent)" : "(DEPENDENT)");

  bool stealth_ok = false;
  {
    WorldConfig wc;
    wc.scheme = SchemeKind::CryptoNote;
    wc.subjects = 4;
    wc.seed = kSeed;
    World w(wc);
    std::set<GroupElt> seen;
    for (int i = 0; i < 10000; ++i) {
      const OutPoint op = w.scheme().mint(w, 1, 10);
      seen.insert(*w.ledger().output_at(op).stealth_key);
    }
    stealth_ok = seen.size() == 10000;
    detail << "; stealth keys over 10^4 outputs to one recipient: " << seen.size() << " distinct";
  }

  report(4, "scheme algebra: homomorphism, balance identity, identifier independence, stealth uniqueness",
         pedersen_ok && balance_ok && chi_ok && stealth_ok, detail.str());
}

// 5. single-field mutations are always rejected, originals always accepted
void criterion_validator_fuzz() {
  bool ok = true;
  std::ostringstream detail;
  for (SchemeKind k : all_schemes()) {
    const auto stats = fuzz::run_validator_fuzz(k, 1000, Rng::derive(kSeed, 0x667a7aULL));
    const bool scheme_ok =
        stats.mutants == 1000 && stats.mutants_rejected == 1000 && stats.valid_accepted == 1000;
    ok = ok && scheme_ok;
    detail << scheme_name(k) << " " << stats.mutants_rejected << "/" << stats.mutants
           << " rejected, " << stats.valid_accepted << " originals accepted; ";
  }
  report(5, "validator soundness: 10^3 single-field mutations per scheme all rejected", ok,
         detail.str());
}

// 6. more capability never reads as less, and the ideal anonymizer collapses
//    transaction pairing to chance
void criterion_monotonicity() {
  bool ok = true;
  std::ostringstream detail;
  for (SchemeKind s : all_schemes()) {
    GameConfig cfg;
    cfg.scheme = s;
    cfg.attack = Attack::Slla;
    cfg.medium = Medium::CoinToCoin;
    cfg.trials = kTrials;
    cfg.seed = kSeed;
    const AttackOutcome slla = run_game(cfg);
    cfg.attack = Attack::Tlla;
    const AttackOutcome tlla = run_game(cfg);
    const bool mono = tlla.success_rate + tlla.wilson_ci_95.half_width() >=
                      slla.success_rate - slla.wilson_ci_95.half_width();
    ok = ok && mono;
    if (!mono) {
      detail << scheme_name(s) << " NOT monotone (" << slla.success_rate << " vs "
             << tlla.success_rate << "); ";
    }
  }
  detail << "transport >= ledger rate on coin-to-coin for all 7 schemes; ";

  GameConfig cfg;
  cfg.scheme = SchemeKind::Zerocash;
  cfg.attack = Attack::Tlla;
  cfg.medium = Medium::TranToTran;
  cfg.trials = kTrials;
  cfg.seed = kSeed;
  const AttackOutcome clear = run_game(cfg);
  cfg.mixnet = true;
  const AttackOutcome mixed = run_game(cfg);
  const bool collapse = mixed.wilson_ci_95.contains(mixed.baseline);
  ok = ok && clear.success_rate == 1.0 && collapse;
  detail << "anonymizer: pairing " << clear.success_rate << " -> " << mixed.success_rate
         << " (baseline " << mixed.baseline << ", ci contains baseline: "
         << (collapse ? "yes" : "NO") << ")";
  report(6, "capability monotonicity and anonymizer collapse to baseline", ok, detail.str());
}

// 7. the full grid is bit-reproducible for a fixed seed
void criterion_determinism(const EvaluationMatrix& first) {
  GameConfig base;
  base.trials = kTrials;
  base.seed = kSeed;
  const EvaluationMatrix again = build_matrix(base);
  const std::string a = render(first, RenderFormat::Json);
  const std::string b = render(again, RenderFormat::Json);
  const bool ok = a == b;
  std::ostringstream detail;
  detail << a.size() << " bytes, reports " << (ok ? "byte-identical" : "DIFFER");
  report(7, "two full matrix runs with one seed produce byte-identical JSON reports", ok,
         detail.str());
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_ring_bound();
  const EvaluationMatrix matrix = criterion_matrix();
  criterion_theorems();
  criterion_scheme_algebra();
  criterion_validator_fuzz();
  criterion_monotonicity();
  criterion_determinism(matrix);
  std::printf("%s  acceptance suite finished in %ds\n", g_all_ok ? "PASS" : "FAIL",
              static_cast<int>(seconds_since(t0)));
  return g_all_ok ? 0 : 1;
}
