#include <doctest.h>

#include <cmath>

#include "sam/experiments.hpp"
#include "sam/theory.hpp"

using namespace sam;

namespace {

/// Exact log2 C(n,k) oracle: the binomial fits 128 bits at the sizes used.
double log2_binom_exact(unsigned n, unsigned k) {
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);  // exact at every step for binomials
  }
  return std::log2(static_cast<long double>(r));
}

ExperimentSpec tiny_willshaw_spec() {
  ExperimentSpec spec;
  spec.model = ModelKind::willshaw;
  spec.space = NeuronSpace(128);
  spec.dist = PatternDist::exact_count;
  spec.active_count = 4;
  spec.pattern_counts = {20, 60};
  spec.erasure = ErasureSpec::count(2);
  spec.policy = RetrievalPolicy::wta_kth(4);
  spec.trials = 120;
  spec.batch_size = 30;
  spec.max_iters = 16;
  spec.seed = 99;
  spec.threads = 1;
  return spec;
}

}  // namespace

TEST_CASE("weight storage cost formulas") {
  CHECK(weight_storage_bits(ModelKind::willshaw, 2048, 8, 0, 5) == 2096128.0);
  CHECK(weight_storage_bits(ModelKind::gb, 2048, 8, 256, 5) == 1835008.0);
  CHECK(weight_storage_bits(ModelKind::amari, 2048, 8, 0, 3) ==
        2096128.0 * 2.0);
}

TEST_CASE("efficiency example values") {
  // clustered model, one message: 8*log2(256) / (28 * 256^2)
  CHECK(efficiency(ModelKind::gb, 2048, 8, 256, 1) ==
        doctest::Approx(64.0 / 1835008.0).epsilon(1e-12));
  CHECK(efficiency(ModelKind::willshaw, 2048, 8, 0, 0) == 0.0);
  const double h = log2_binom_exact(2048, 8);
  CHECK(h == doctest::Approx(72.67).epsilon(1e-3));
  CHECK(message_entropy_bits(ModelKind::amari, 2048, 8, 0) ==
        doctest::Approx(h).epsilon(1e-9));
  CHECK(efficiency(ModelKind::amari, 2048, 8, 0, 1) ==
        doctest::Approx(h / 2096128.0).epsilon(1e-9));
}

TEST_CASE("spec validation rejects inconsistent combinations") {
  ExperimentSpec spec = tiny_willshaw_spec();
  spec.policy = RetrievalPolicy::sum_of_max();
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = tiny_willshaw_spec();
  spec.erasure = ErasureSpec::count(1, ErasureSpec::Mode::cluster);
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = tiny_willshaw_spec();
  spec.pattern_counts.clear();
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = tiny_willshaw_spec();
  spec.dist = PatternDist::gb;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = tiny_willshaw_spec();
  spec.model = ModelKind::gb;  // flat space, gb model
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("single stored clustered message is always completed") {
  ExperimentSpec spec;
  spec.model = ModelKind::gb;
  spec.space = NeuronSpace(8, 256);
  spec.dist = PatternDist::gb;
  spec.pattern_counts = {1};
  spec.erasure = ErasureSpec::count(4, ErasureSpec::Mode::cluster);
  spec.policy = RetrievalPolicy::sum_of_max();
  spec.trials = 60;
  spec.batch_size = 20;
  spec.seed = 5;
  auto result = run_retrieval_sweep(spec);
  REQUIRE(result.points.size() == 1);
  CHECK(result.points[0].error_rate == 0.0);
  CHECK(result.points[0].alpha ==
        doctest::Approx(1.0 / (256.0 * 256.0 / 64.0)));
  CHECK(result.points[0].rho == doctest::Approx(0.5));
}

TEST_CASE("sweeps are deterministic across thread counts") {
  ExperimentSpec spec = tiny_willshaw_spec();
  auto one = run_retrieval_sweep(spec);
  spec.threads = 8;
  auto eight = run_retrieval_sweep(spec);
  REQUIRE(one.points.size() == eight.points.size());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    CHECK(one.points[i].error_rate == eight.points[i].error_rate);
    CHECK(one.points[i].mean_iterations == eight.points[i].mean_iterations);
    CHECK(one.points[i].cycle_rate == eight.points[i].cycle_rate);
    CHECK(one.points[i].notfound_rate == eight.points[i].notfound_rate);
  }
}

TEST_CASE("error rate grows with the load (3 sigma)") {
  ExperimentSpec spec = tiny_willshaw_spec();
  spec.space = NeuronSpace(256);
  spec.pattern_counts = {50, 400, 1600};
  spec.trials = 400;
  spec.batch_size = 100;
  auto result = run_retrieval_sweep(spec);
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    const auto& lo = result.points[i - 1];
    const auto& hi = result.points[i];
    const double slack =
        3.0 * std::hypot(lo.std_error, hi.std_error);
    CHECK(hi.error_rate >= lo.error_rate - slack);
  }
}

TEST_CASE("exhaustive policy reports not-found rates in the sweep") {
  ExperimentSpec spec;
  spec.model = ModelKind::willshaw;
  spec.space = NeuronSpace(64);
  spec.dist = PatternDist::exact_count;
  spec.active_count = 4;
  spec.pattern_counts = {5};
  spec.erasure = ErasureSpec::count(2);
  spec.policy = RetrievalPolicy::exhaustive(4);
  spec.trials = 50;
  spec.batch_size = 25;
  spec.seed = 8;
  auto result = run_retrieval_sweep(spec);
  // at M=5 in n=64 the completion is essentially always unique
  CHECK(result.points[0].error_rate <= 0.1);
  CHECK(result.points[0].notfound_rate == 0.0);
  CHECK(result.points[0].mean_iterations == 1.0);
}

TEST_CASE("stability probe trivial and directional cases") {
  NeuronSpace s(64);
  // one stored message is always a fixed point
  auto res = stability_probe(ModelKind::willshaw, s, PatternDist::exact_count,
                             0, 4, 1, RetrievalPolicy::wta_max(), 200, 3);
  CHECK(res.probability == 1.0);

  auto gb = stability_probe(ModelKind::gb, NeuronSpace(4, 16), PatternDist::gb,
                            0, 0, 30, RetrievalPolicy::fixed(4), 200, 3);
  CHECK(gb.probability == 1.0);  // threshold c keeps stored messages fixed
}

TEST_CASE("wrong message probe: zero load and bound dominance") {
  CHECK(wrong_message_probe(8, 3, 0, 100, 1).probability == 0.0);
  for (std::uint64_t m : {20, 60, 150}) {
    auto res = wrong_message_probe(8, 3, m, 2000, 7);
    const double bound = theory::recognition_lower_bound(8, 3, m);
    CHECK(res.probability >= bound - 3 * res.std_error);
  }
  // agreement with the independent enumeration oracle at the tiny point
  auto mc = wrong_message_probe(2, 2, 1, 20000, 11);
  CHECK(std::abs(mc.probability - 0.25) <= 3 * mc.std_error);
}

TEST_CASE("subclique probe: retention, realized rho, bound dominance") {
  auto full = subclique_probe(8, 4, 10, 1.0, 500, 3);
  CHECK(full.probability == 1.0);  // everything kept: the stored clique
  CHECK(full.realized_rho == 1.0);

  auto half = subclique_probe(8, 3, 40, 0.5, 2000, 5);
  CHECK(half.realized_rho == doctest::Approx(2.0 / 3.0));
  const double bound = theory::subclique_lower_bound(8, 3, 40, 2.0 / 3.0);
  CHECK(half.probability >= bound - 3 * half.std_error);

  auto none = subclique_probe(8, 3, 1, 0.0, 500, 5);
  // with one stored message, an all-wrong completion is essentially never
  // recognized
  CHECK(none.probability <= 0.05);
}

TEST_CASE("wrong message probe separates the loads (3 sigma)") {
  // M = alpha * l^2 * ln(c) at alpha 1.5 vs 2.5: the recognition
  // probability must be markedly larger at the heavier load
  const std::uint32_t l = 64, c = 4;
  const double scale = double(l) * l * std::log(double(c));
  const auto m_low = static_cast<std::uint64_t>(std::llround(1.5 * scale));
  const auto m_high = static_cast<std::uint64_t>(std::llround(2.5 * scale));
  auto low = wrong_message_probe(l, c, m_low, 3000, 19);
  auto high = wrong_message_probe(l, c, m_high, 3000, 19);
  CHECK(high.probability >
        low.probability + 3 * std::hypot(low.std_error, high.std_error));
}

TEST_CASE("supersaturation: recognition soaks, stability and retrieval die") {
  // far above the recognition transition everything is recognized and
  // nothing is retrievable any more
  const std::uint32_t l = 32, c = 4;
  const auto m = static_cast<std::uint64_t>(
      std::llround(6.0 * l * l * std::log(double(c))));

  auto wrong = wrong_message_probe(l, c, m, 500, 31);
  CHECK(wrong.probability >= 0.95);

  // the global max-score WTA loses its fixed points at this load
  auto flat = stability_probe(ModelKind::willshaw, NeuronSpace(c * l),
                              PatternDist::exact_count, 0, c, m,
                              RetrievalPolicy::wta_max(), 300, 31);
  CHECK(flat.probability <= 0.05);

  // the per-cluster WTA never does: a competitor cannot cover its own
  // cluster, so the self term keeps every stored message pinned
  NeuronSpace space(c, l);
  auto stab = stability_probe(ModelKind::gb, space, PatternDist::gb, 0, 0, m,
                              RetrievalPolicy::cluster_wta(), 300, 31);
  CHECK(stab.probability == 1.0);

  ExperimentSpec spec;
  spec.model = ModelKind::gb;
  spec.space = space;
  spec.dist = PatternDist::gb;
  spec.pattern_counts = {m};
  spec.erasure = ErasureSpec::count(2, ErasureSpec::Mode::cluster);
  spec.policy = RetrievalPolicy::sum_of_max();
  spec.trials = 300;
  spec.batch_size = 100;
  spec.seed = 31;
  auto sweep = run_retrieval_sweep(spec);
  CHECK(sweep.points[0].error_rate >= 0.95);
}

TEST_CASE("probes are deterministic across thread counts") {
  auto a = wrong_message_probe(8, 3, 50, 3000, 17, 1);
  auto b = wrong_message_probe(8, 3, 50, 3000, 17, 8);
  CHECK(a.probability == b.probability);
  auto c = subclique_probe(8, 3, 50, 0.5, 3000, 17, 1);
  auto d = subclique_probe(8, 3, 50, 0.5, 3000, 17, 8);
  CHECK(c.probability == d.probability);
}
