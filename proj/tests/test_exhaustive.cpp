#include <doctest.h>

#include <cmath>
#include <map>

#include "sam/dynamics.hpp"
#include "sam/pattern.hpp"
#include "sam/selfcheck.hpp"

using namespace sam;

TEST_CASE("gb: the unique completion of a half-erased message is returned") {
  NeuronSpace s(8, 16);
  GBNetwork net(s);
  RngStream rng(41);
  Pattern msg = gen_gb(s, rng);
  net.store(msg);
  Pattern partial =
      erase(msg, ErasureSpec::count(4, ErasureSpec::Mode::cluster), rng);
  auto res = retrieve_exhaustive(AnyNetwork(net), partial, 8, 1000, rng);
  REQUIRE(res.status == ExhaustiveResult::Status::found);
  CHECK(res.completions == 1);
  CHECK(*res.pattern == msg);
}

TEST_CASE("willshaw: two completions are drawn uniformly (3 sigma)") {
  NeuronSpace s(6);
  WillshawNetwork net(s);
  net.store(Pattern(s, {0, 1, 2}));
  net.store(Pattern(s, {0, 3, 4}));
  RngStream rng(17);
  const int runs = 10000;
  std::map<std::vector<std::uint32_t>, int> counts;
  for (int i = 0; i < runs; ++i) {
    auto res =
        retrieve_exhaustive(AnyNetwork(net), Pattern(s, {0}), 3, 1000, rng);
    REQUIRE(res.status == ExhaustiveResult::Status::found);
    REQUIRE(res.completions == 2);
    ++counts[res.pattern->active()];
  }
  REQUIRE(counts.size() == 2);
  const double sigma = std::sqrt(0.25 / runs);
  for (auto& [act, n] : counts)
    CHECK(std::abs(double(n) / runs - 0.5) <= 3 * sigma);
}

TEST_CASE("amari: the heavier clique always wins") {
  NeuronSpace s(6);
  AmariNetwork net(s);
  // clique {0,1,2} has total edge weight 5, clique {0,3,4} only 4
  net.store(Pattern(s, {0, 1, 2}));
  net.store(Pattern(s, {1, 2}));
  net.store(Pattern(s, {1, 2}));
  net.store(Pattern(s, {0, 3, 4}));
  net.store(Pattern(s, {3, 4}));
  RngStream rng(29);
  for (int i = 0; i < 100; ++i) {
    auto res =
        retrieve_exhaustive(AnyNetwork(net), Pattern(s, {0}), 3, 1000, rng);
    REQUIRE(res.status == ExhaustiveResult::Status::found);
    CHECK(res.completions == 2);
    CHECK(*res.pattern == Pattern(s, {0, 1, 2}));
  }
}

TEST_CASE("failure modes are explicit") {
  NeuronSpace s(6);
  WillshawNetwork net(s);
  RngStream rng(5);

  SUBCASE("no completion") {
    net.store(Pattern(s, {0, 1}));
    auto res =
        retrieve_exhaustive(AnyNetwork(net), Pattern(s, {0}), 3, 1000, rng);
    CHECK(res.status == ExhaustiveResult::Status::not_found);
    // a partial that is no clique cannot be completed either
    auto res2 =
        retrieve_exhaustive(AnyNetwork(net), Pattern(s, {0, 2}), 3, 1000, rng);
    CHECK(res2.status == ExhaustiveResult::Status::not_found);
  }

  SUBCASE("budget blow-up is reported, not ignored") {
    for (std::uint32_t i = 0; i < 6; ++i)
      for (std::uint32_t j = i + 1; j < 6; ++j)
        net.store(Pattern(s, {i, j}));  // complete graph
    auto res =
        retrieve_exhaustive(AnyNetwork(net), Pattern(s, {0}), 4, 3, rng);
    CHECK(res.status == ExhaustiveResult::Status::capacity_exceeded);
  }
}

TEST_CASE("gb partial with a doubly occupied cluster is rejected") {
  NeuronSpace s(2, 2);
  GBNetwork net(s);
  net.store(Pattern(s, {0, 2}));
  RngStream rng(3);
  CHECK_THROWS_AS(
      retrieve_exhaustive(AnyNetwork(net), Pattern(s, {0, 1}), 2, 100, rng),
      std::invalid_argument);
}

TEST_CASE("gb: two-way ambiguity is drawn uniformly") {
  NeuronSpace s(3, 3);
  GBNetwork net(s);
  net.store(Pattern(s, {0, 3, 6}));
  net.store(Pattern(s, {0, 3, 7}));
  RngStream rng(11);
  const int runs = 10000;
  std::map<std::vector<std::uint32_t>, int> counts;
  for (int i = 0; i < runs; ++i) {
    auto res = retrieve_exhaustive(AnyNetwork(net), Pattern(s, {0, 3}), 3,
                                   1000, rng);
    REQUIRE(res.status == ExhaustiveResult::Status::found);
    ++counts[res.pattern->active()];
  }
  REQUIRE(counts.size() == 2);
  const double sigma = std::sqrt(0.25 / runs);
  for (auto& [act, n] : counts)
    CHECK(std::abs(double(n) / runs - 0.5) <= 3 * sigma);
}

TEST_CASE("exhaustive matches the subset-enumeration oracle") {
  CHECK(selfcheck::exhaustive_vs_bruteforce(100, 314).passed);
}
