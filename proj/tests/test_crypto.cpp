#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "anonylink/group.hpp"
#include "anonylink/hash.hpp"
#include "anonylink/rng.hpp"
#include "anonylink/stats.hpp"

using namespace anonylink;

TEST_CASE("sha256 published vectors") {
  CHECK(hex(Sha256::of("")) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(hex(Sha256::of("abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(hex(Sha256::of("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")) ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  // block-boundary padding
  const std::string s55(55, 'a'), s56(56, 'a'), s64(64, 'a');
  CHECK(Sha256::of(s55) != Sha256::of(s56));
  Sha256 split;
  split.update(s64.substr(0, 13)).update(s64.substr(13));
  CHECK(split.finish() == Sha256::of(s64));
}

TEST_CASE("keyed hash separates domains, keys and inputs") {
  Digest32 k1 = Sha256::of("k1"), k2 = Sha256::of("k2"), x = Sha256::of("x");
  CHECK(prf("a", k1, x) == prf("a", k1, x));
  CHECK(prf("a", k1, x) != prf("b", k1, x));
  CHECK(prf("a", k1, x) != prf("a", k2, x));
  CHECK(prf("a", k1, x) != prf("a", k1, Sha256::of("y")));
  CHECK(prf_u64("n", k1, 1) != prf_u64("n", k1, 2));
}

TEST_CASE("group parameters are well formed in both profiles") {
  for (GroupProfile profile : {GroupProfile::Desk64, GroupProfile::Small32}) {
    const auto& g = GroupParams::get(profile);
    CHECK(miller_rabin_is_prime(g.p));
    CHECK(miller_rabin_is_prime(g.q));
    CHECK(g.p == 2 * g.q + 1);
    CHECK(g.pow(g.g, g.q) == 1);
    CHECK(g.pow(g.h, g.q) == 1);
    CHECK(g.g != g.h);
    CHECK(g.g != 1);
    CHECK(g.h != 1);
    CHECK(g.in_subgroup(g.g));
    CHECK(g.in_subgroup(g.h));
    // inverse really inverts
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      const GroupElt a = g.pow(g.g, g.random_scalar(rng));
      CHECK(g.mul(a, g.inv(a)) == 1);
    }
  }
}

TEST_CASE("hash_to_group lands in the subgroup and differs by tag") {
  const auto& g = GroupParams::get(GroupProfile::Desk64);
  const Digest32 seed = Sha256::of("seed");
  const GroupElt a = g.hash_to_group("one", seed);
  const GroupElt b = g.hash_to_group("two", seed);
  CHECK(g.in_subgroup(a));
  CHECK(g.in_subgroup(b));
  CHECK(a != b);
}

TEST_CASE("pedersen homomorphism over random scalar pairs, exact") {
  const auto& g = GroupParams::get(GroupProfile::Desk64);
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Scalar r1 = g.random_scalar(rng), r2 = g.random_scalar(rng);
    const std::uint64_t v1 = rng.uniform(1u << 20), v2 = rng.uniform(1u << 20);
    const GroupElt lhs = g.mul(g.pedersen(r1, v1), g.pedersen(r2, v2));
    const GroupElt rhs = g.pedersen(g.add_q(r1, r2), v1 + v2);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("pedersen hides values under fresh blindings") {
  const auto& g = GroupParams::get(GroupProfile::Desk64);
  Rng rng(5);
  std::set<GroupElt> seen;
  for (int i = 0; i < 200; ++i) {
    seen.insert(g.pedersen(g.random_scalar(rng), 7));
  }
  // same value, fresh blinding: all distinct commitments
  CHECK(seen.size() == 200);
}

TEST_CASE("wilson interval matches its defining quadratic, solved independently") {
  // the interval ends are the roots of (phat - p)^2 = z^2 p (1 - p) / n;
  // bisection on that equation is the oracle
  auto root = [](double phat, double n, double lo, double hi) {
    auto f = [&](double p) {
      return (phat - p) * (phat - p) - kZ95 * kZ95 * p * (1 - p) / n;
    };
    for (int i = 0; i < 200; ++i) {
      const double mid = (lo + hi) / 2;
      if ((f(lo) <= 0) == (f(mid) <= 0)) lo = mid; else hi = mid;
    }
    return (lo + hi) / 2;
  };
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t n = 10 + rng.uniform(100000);
    const std::uint64_t k = rng.uniform(n + 1);
    const double phat = double(k) / double(n);
    const Interval got = wilson_interval(k, n);
    if (k > 0) CHECK(got.lo == doctest::Approx(root(phat, n, 0.0, phat)).epsilon(1e-9));
    if (k < n) CHECK(got.hi == doctest::Approx(root(phat, n, phat, 1.0)).epsilon(1e-9));
  }
  // interval membership coincides with score-test acceptance on a grid
  for (std::uint64_t n = 1; n <= 20; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      const Interval ci = wilson_interval(k, n);
      const double phat = double(k) / double(n);
      for (int pi = 1; pi < 100; ++pi) {
        const double p = pi / 100.0;
        const bool in_ci = ci.contains(p);
        const bool accepted =
            (phat - p) * (phat - p) <= kZ95 * kZ95 * p * (1 - p) / n + 1e-12;
        if (std::fabs((phat - p) * (phat - p) - kZ95 * kZ95 * p * (1 - p) / n) > 1e-9) {
          CHECK(in_ci == accepted);
        }
      }
    }
  }
  // frozen reference values
  const Interval quarter = wilson_interval(2500, 10000);
  CHECK(quarter.lo == doctest::Approx(0.24161019318292498).epsilon(1e-12));
  CHECK(quarter.hi == doctest::Approx(0.2585818060024132).epsilon(1e-12));
  CHECK(quarter.hi - quarter.lo < 0.02);
  const Interval sure = wilson_interval(10000, 10000);
  CHECK(sure.hi == 1.0);
  CHECK(sure.lo > 0.999);
  CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
}

TEST_CASE("chi-square statistic against a hand-computed table") {
  // rows (10,20,30) and (20,20,20): statistic is 16/3 + ... = 5.3333...
  const std::vector<std::uint64_t> t{10, 20, 30, 20, 20, 20};
  CHECK(chi_square_statistic(t, 2, 3) == doctest::Approx(5.333333333333333).epsilon(1e-12));
  // independent table has statistic 0
  const std::vector<std::uint64_t> ind{10, 20, 20, 40};
  CHECK(chi_square_statistic(ind, 2, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(chi_square_statistic({1, 2, 3}, 2, 2), std::invalid_argument);
}

TEST_CASE("deterministic rng streams and unbiased bounded draws") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  bool differs = false;
  for (int i = 0; i < 10 && !differs; ++i) differs = a.next_u64() != c.next_u64();
  CHECK(differs);

  Rng r(7);
  std::vector<std::uint64_t> counts(5, 0);
  for (int i = 0; i < 50000; ++i) ++counts[r.uniform(5)];
  for (auto n : counts) {
    CHECK(n > 9500);
    CHECK(n < 10500);
  }
}
