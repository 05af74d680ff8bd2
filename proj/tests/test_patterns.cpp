#include <doctest.h>

#include <cmath>
#include <map>

#include "sam/pattern.hpp"

using namespace sam;

TEST_CASE("space invariants") {
  CHECK_THROWS_AS(NeuronSpace(1), std::invalid_argument);
  CHECK_THROWS_AS(NeuronSpace(1, 5), std::invalid_argument);  // c >= 2
  CHECK_THROWS_AS(NeuronSpace(2, 0), std::invalid_argument);
  NeuronSpace s(8, 256);
  CHECK(s.size() == 2048);
  CHECK(s.flat_index(3, 10) == 3 * 256 + 10);
  CHECK(s.cluster_of(777) == 3);
  CHECK(s.offset_of(777) == 9);
}

TEST_CASE("pattern validation") {
  NeuronSpace s(5);
  CHECK_THROWS_AS(Pattern(s, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Pattern(s, {5}), std::invalid_argument);
  Pattern p(s, {3, 1});
  CHECK(p.active() == std::vector<std::uint32_t>{1, 3});  // sorted
  CHECK(p.contains(3));
  CHECK(!p.contains(2));
}

TEST_CASE("gen_iid rejects boundary probabilities") {
  NeuronSpace s(4);
  RngStream rng(1);
  CHECK_THROWS_AS(gen_iid(s, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(gen_iid(s, 0.0, rng), std::invalid_argument);
}

TEST_CASE("gen_iid mean active count within 3 sigma") {
  const std::uint32_t n = 10000;
  const double p = std::log(double(n)) / n;  // ~9.21e-4
  NeuronSpace s(n);
  RngStream rng(7);
  const int draws = 10000;
  double total = 0;
  for (int i = 0; i < draws; ++i) total += gen_iid(s, p, rng).weight();
  const double sigma = std::sqrt(n * p * (1 - p) / draws);
  CHECK(std::abs(total / draws - n * p) <= 3 * sigma);
}

TEST_CASE("generators are pure functions of the seed") {
  NeuronSpace s(5);
  RngStream a(33), b(33);
  CHECK(gen_iid(s, 0.5, a) == gen_iid(s, 0.5, b));
  CHECK(gen_exact_count(s, 3, a) == gen_exact_count(s, 3, b));
  NeuronSpace g(3, 4);
  RngStream c(9), d(9);
  CHECK(gen_gb(g, c) == gen_gb(g, d));
}

TEST_CASE("gen_exact_count examples") {
  NeuronSpace s5(5);
  RngStream rng(2);
  CHECK(gen_exact_count(s5, 5, rng).active() ==
        std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  NeuronSpace s8(8);
  CHECK_THROWS_AS(gen_exact_count(s8, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(gen_exact_count(s8, 9, rng), std::invalid_argument);
}

TEST_CASE("gen_exact_count pair frequencies (3 sigma)") {
  NeuronSpace s(5);
  RngStream rng(77);
  const int draws = 100000;
  std::map<std::vector<std::uint32_t>, int> counts;
  for (int i = 0; i < draws; ++i) ++counts[gen_exact_count(s, 2, rng).active()];
  CHECK(counts.size() == 10);
  const double sigma = std::sqrt(0.1 * 0.9 / draws);
  for (auto& [pair, c] : counts)
    CHECK(std::abs(double(c) / draws - 0.1) <= 3 * sigma);
}

TEST_CASE("gen_gb fills one neuron per cluster") {
  RngStream rng(5);
  // single choice per cluster when l = 1
  NeuronSpace tiny(2, 1);
  CHECK(gen_gb(tiny, rng).active() == std::vector<std::uint32_t>{0, 1});

  NeuronSpace big(8, 256);
  for (int i = 0; i < 20; ++i) {
    Pattern p = gen_gb(big, rng);
    REQUIRE(p.weight() == 8);
    CHECK(p.is_gb_valid());
    for (std::uint32_t a = 0; a < 8; ++a)
      CHECK(big.cluster_of(p.active()[a]) == a);
  }
  NeuronSpace flat(16);
  CHECK_THROWS_AS(gen_gb(flat, rng), std::invalid_argument);
}

TEST_CASE("gen_gb is uniform over messages (3 sigma)") {
  NeuronSpace s(2, 2);
  RngStream rng(13);
  const int draws = 100000;
  std::map<std::vector<std::uint32_t>, int> counts;
  for (int i = 0; i < draws; ++i) ++counts[gen_gb(s, rng).active()];
  CHECK(counts.size() == 4);
  const double sigma = std::sqrt(0.25 * 0.75 / draws);
  for (auto& [msg, c] : counts)
    CHECK(std::abs(double(c) / draws - 0.25) <= 3 * sigma);
}

TEST_CASE("erase examples") {
  NeuronSpace s(6);
  Pattern p(s, {1, 2, 3});
  RngStream rng(3);
  CHECK(erase(p, ErasureSpec::count(0), rng) == p);
  CHECK(erase(p, ErasureSpec::count(3), rng).is_empty());
  CHECK_THROWS_AS(erase(p, ErasureSpec::count(4), rng),
                  std::invalid_argument);
}

TEST_CASE("erase keeps a subset of the requested size") {
  NeuronSpace s(40);
  RngStream rng(17);
  for (int i = 0; i < 200; ++i) {
    Pattern p = gen_exact_count(s, 1 + rng.below32(20), rng);
    const std::uint32_t f = rng.below32(p.weight() + 1);
    Pattern q = erase(p, ErasureSpec::count(f), rng);
    REQUIRE(q.weight() == p.weight() - f);
    for (auto idx : q.active()) CHECK(p.contains(idx));
  }
}

TEST_CASE("cluster-mode erase empties whole clusters") {
  NeuronSpace s(8, 256);
  RngStream rng(23);
  Pattern msg = gen_gb(s, rng);
  Pattern out =
      erase(msg, ErasureSpec::count(4, ErasureSpec::Mode::cluster), rng);
  CHECK(out.weight() == 4);
  // erased bits are whole-cluster losses; survivors are untouched
  std::uint32_t surviving_clusters = 0;
  for (auto i : out.active()) {
    CHECK(msg.contains(i));
    ++surviving_clusters;
  }
  CHECK(surviving_clusters == 4);
  // cluster mode needs a one-per-cluster pattern
  CHECK_THROWS_AS(
      erase(out, ErasureSpec::count(1, ErasureSpec::Mode::cluster), rng),
      std::invalid_argument);
}

TEST_CASE("fractional erasure rounds against the pattern weight") {
  NeuronSpace s(16);
  Pattern p(s, {0, 1, 2, 3, 4, 5, 6, 7});
  RngStream rng(4);
  CHECK(erase(p, ErasureSpec::fraction(0.5), rng).weight() == 4);
  CHECK(erase(p, ErasureSpec::fraction(0.0), rng) == p);
  CHECK_THROWS_AS(ErasureSpec::fraction(1.0), std::invalid_argument);
}
