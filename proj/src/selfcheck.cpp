#include "sam/selfcheck.hpp"

#include <algorithm>
#include <sstream>

#include "sam/dynamics.hpp"
#include "sam/experiments.hpp"
#include "sam/serialize.hpp"

namespace sam::selfcheck {

namespace {

bool subset_of(const Pattern& a, const Pattern& b) {
  return std::includes(b.active().begin(), b.active().end(),
                       a.active().begin(), a.active().end());
}

struct WillshawInstance {
  NeuronSpace space;
  WillshawNetwork net;
  Pattern target;
  Pattern input;
};

WillshawInstance random_willshaw_instance(RngStream& rng,
                                          std::uint32_t max_n = 256,
                                          std::uint32_t max_m = 200) {
  const std::uint32_t n = 8 + rng.below32(max_n - 7);
  const std::uint32_t c = 2 + rng.below32(std::min<std::uint32_t>(6, n / 2));
  const std::uint64_t m = 1 + rng.below(max_m);
  NeuronSpace space(n);
  WillshawNetwork net(space, /*retain_stored=*/true);
  for (std::uint64_t mu = 0; mu < m; ++mu)
    net.store(gen_exact_count(space, c, rng));
  Pattern target = net.stored()[rng.below(m)];
  const std::uint32_t f = rng.below32(target.weight());  // not a full erase
  Pattern input = erase(target, ErasureSpec::count(f), rng);
  return {space, std::move(net), std::move(target), std::move(input)};
}

struct GBInstance {
  NeuronSpace space;
  GBNetwork net;
  Pattern target;
  Pattern input;
};

GBInstance random_gb_instance(RngStream& rng) {
  const std::uint32_t c = 2 + rng.below32(7);   // 2..8 clusters
  const std::uint32_t l = 2 + rng.below32(31);  // 2..32 per cluster
  const std::uint64_t m = 1 + rng.below(60);
  NeuronSpace space(c, l);
  GBNetwork net(space, /*retain_stored=*/true);
  for (std::uint64_t mu = 0; mu < m; ++mu) net.store(gen_gb(space, rng));
  Pattern target = net.stored()[rng.below(m)];
  const std::uint32_t f = rng.below32(c);
  Pattern input =
      erase(target, ErasureSpec::count(f, ErasureSpec::Mode::cluster), rng);
  return {space, std::move(net), std::move(target), std::move(input)};
}

CheckResult pass(std::string name, std::string detail = "ok") {
  return {std::move(name), true, std::move(detail)};
}

CheckResult fail(std::string name, std::string detail) {
  return {std::move(name), false, std::move(detail)};
}

/// Dense reference: weights as plain integer matrices, scores by definition.
struct DenseReference {
  std::uint32_t n;
  std::vector<std::uint64_t> counts;  // includes the diagonal usage counts

  explicit DenseReference(std::uint32_t n_) : n(n_), counts(n_ * n_, 0) {}

  void store(const Pattern& p) {
    for (auto i : p.active())
      for (auto j : p.active()) ++counts[std::size_t(i) * n + j];
  }
  std::uint64_t amari_field(const Pattern& s, std::uint32_t i) const {
    std::uint64_t v = 0;
    for (auto j : s.active())
      if (j != i) v += counts[std::size_t(i) * n + j];
    return v;
  }
  std::uint64_t willshaw_score(const Pattern& s, std::uint32_t i) const {
    std::uint64_t v = 0;
    for (auto j : s.active())
      if (counts[std::size_t(i) * n + j] > 0) ++v;
    return v;
  }
  std::uint64_t gb_field(const NeuronSpace& sp, const Pattern& s,
                         std::uint32_t i) const {
    std::uint64_t v = 0;
    for (auto j : s.active()) {
      const bool same_cluster = sp.cluster_of(i) == sp.cluster_of(j);
      if (same_cluster && i != j) continue;  // no intra-cluster edges
      if (counts[std::size_t(i) * n + j] > 0) ++v;
    }
    return v;
  }
  std::uint64_t gb_som(const NeuronSpace& sp, const Pattern& s,
                       std::uint32_t i) const {
    std::uint64_t v = 0;
    for (std::uint32_t b = 0; b < sp.clusters(); ++b) {
      bool covered = false;
      for (auto j : s.active()) {
        if (sp.cluster_of(j) != b) continue;
        const bool same_cluster = sp.cluster_of(i) == b;
        if (same_cluster && i != j) continue;
        if (counts[std::size_t(i) * n + j] > 0) covered = true;
      }
      if (covered) ++v;
    }
    return v;
  }
};

}  // namespace

CheckResult willshaw_fixed_convergence(std::uint32_t instances,
                                       std::uint64_t seed) {
  const std::string name = "willshaw-fixed-threshold-convergence";
  auto rng = RngStream::substream(seed, {0xf1});
  for (std::uint32_t k = 0; k < instances; ++k) {
    auto inst = random_willshaw_instance(rng);
    const std::uint64_t h = rng.below(inst.input.weight() + 1);
    auto traj = iterate(AnyNetwork(inst.net), inst.input,
                        RetrievalPolicy::fixed(h), inst.space.size() + 2);
    if (traj.outcome != Trajectory::Outcome::converged)
      return fail(name, "instance " + std::to_string(k) + ": not converged");
    if (traj.converged_at > inst.space.size())
      return fail(name, "instance " + std::to_string(k) + ": too slow");
    for (std::size_t t = 0; t + 1 < traj.states.size(); ++t)
      if (!subset_of(traj.states[t], traj.states[t + 1]))
        return fail(name,
                    "instance " + std::to_string(k) + ": active set shrank");
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult willshaw_wta_one_step_law(std::uint32_t instances,
                                      std::uint64_t seed) {
  const std::string name = "willshaw-wta-one-iteration-law";
  auto rng = RngStream::substream(seed, {0xf2});
  for (std::uint32_t k = 0; k < instances; ++k) {
    auto inst = random_willshaw_instance(rng);
    if (inst.input.is_empty()) continue;  // law is about partial erasures
    auto traj = iterate(AnyNetwork(inst.net), inst.input,
                        RetrievalPolicy::wta_max(), 10);
    const std::string tag = "instance " + std::to_string(k);
    if (traj.outcome == Trajectory::Outcome::converged) {
      if (traj.converged_at > 2)
        return fail(name, tag + ": converged only at step " +
                              std::to_string(traj.converged_at));
    } else if (traj.outcome == Trajectory::Outcome::cycle) {
      if (traj.cycle_period != 2 || traj.cycle_entry > 1)
        return fail(name, tag + ": unexpected cycle shape");
      if (traj.states[1] == traj.states[2])
        return fail(name, tag + ": cycle with equal states");
    } else {
      return fail(name, tag + ": truncated");
    }
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult gb_som_shrinkage(std::uint32_t instances, std::uint64_t seed) {
  const std::string name = "gb-sum-of-max-shrinkage";
  auto rng = RngStream::substream(seed, {0xf3});
  for (std::uint32_t k = 0; k < instances; ++k) {
    auto inst = random_gb_instance(rng);
    const std::uint32_t budget =
        inst.space.clusters() * inst.space.cluster_size() + 2;
    auto traj = iterate(AnyNetwork(inst.net), inst.input,
                        RetrievalPolicy::sum_of_max(), budget);
    const std::string tag = "instance " + std::to_string(k);
    if (traj.outcome != Trajectory::Outcome::converged)
      return fail(name, tag + ": not converged");
    for (std::size_t t = 1; t + 1 < traj.states.size(); ++t)
      if (!subset_of(traj.states[t + 1], traj.states[t]))
        return fail(name, tag + ": active set grew after the fill");
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult gb_fixed_stability(std::uint32_t instances, std::uint64_t seed) {
  const std::string name = "gb-threshold-c-stored-stability";
  auto rng = RngStream::substream(seed, {0xf4});
  for (std::uint32_t k = 0; k < instances; ++k) {
    auto inst = random_gb_instance(rng);
    for (const auto& msg : inst.net.stored()) {
      if (step_gb_threshold(inst.net, msg, inst.space.clusters()) != msg)
        return fail(name, "stored message moved, instance " +
                              std::to_string(k));
    }
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult clipping_equivalence(std::uint32_t instances,
                                 std::uint64_t seed) {
  const std::string name = "willshaw-equals-clipped-counts";
  auto rng = RngStream::substream(seed, {0xf5});
  for (std::uint32_t k = 0; k < instances; ++k) {
    const std::uint32_t n = 4 + rng.below32(61);
    const std::uint32_t c = 2 + rng.below32(std::min(5u, n - 2));
    const std::uint64_t m = 1 + rng.below(40);
    NeuronSpace space(n);
    AmariNetwork counts(space, false);
    WillshawNetwork clipped(space, false);
    for (std::uint64_t mu = 0; mu < m; ++mu) {
      Pattern p = gen_exact_count(space, c, rng);
      counts.store(p);
      clipped.store(p);
    }
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if ((counts.weight(i, j) > 0) != clipped.weight(i, j))
          return fail(name, "mismatch at instance " + std::to_string(k));
      }
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult gb_willshaw_restriction(std::uint32_t instances,
                                    std::uint64_t seed) {
  const std::string name = "gb-matches-willshaw-on-cluster-pairs";
  auto rng = RngStream::substream(seed, {0xf6});
  for (std::uint32_t k = 0; k < instances; ++k) {
    const std::uint32_t c = 2 + rng.below32(5);
    const std::uint32_t l = 2 + rng.below32(10);
    const std::uint64_t m = 1 + rng.below(40);
    NeuronSpace space(c, l);
    GBNetwork gb(space, false);
    WillshawNetwork flat(space, false);
    for (std::uint64_t mu = 0; mu < m; ++mu) {
      Pattern p = gen_gb(space, rng);
      gb.store(p);
      flat.store(p);
    }
    for (std::uint32_t i = 0; i < space.size(); ++i)
      for (std::uint32_t j = 0; j < space.size(); ++j) {
        if (space.cluster_of(i) == space.cluster_of(j)) continue;
        if (gb.weight(i, j) != flat.weight(i, j))
          return fail(name, "mismatch at instance " + std::to_string(k));
      }
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult dense_reference_equivalence(std::uint32_t instances,
                                        std::uint64_t seed) {
  const std::string name = "dense-reference-score-equivalence";
  auto rng = RngStream::substream(seed, {0xf7});
  for (std::uint32_t k = 0; k < instances; ++k) {
    const std::uint32_t c = 2 + rng.below32(3);  // clusters
    const std::uint32_t l = 2 + rng.below32(15);
    const std::uint32_t n = c * l;  // shared by flat and clustered models
    if (n > 64) continue;
    NeuronSpace flat_space(n);
    NeuronSpace gb_space(c, l);
    const std::uint64_t m = 1 + rng.below(30);

    AmariNetwork amari(flat_space, false);
    WillshawNetwork willshaw(flat_space, false);
    GBNetwork gb(gb_space, false);
    DenseReference ref(n);
    DenseReference gb_ref(n);
    for (std::uint64_t mu = 0; mu < m; ++mu) {
      const std::uint32_t w = 1 + rng.below32(std::min(8u, n));
      Pattern p(flat_space, rng.subset(n, w));
      amari.store(p);
      willshaw.store(p);
      ref.store(p);
      Pattern q = gen_gb(gb_space, rng);
      gb.store(q);
      gb_ref.store(Pattern(flat_space, q.active()));
    }

    const std::uint32_t sw = 1 + rng.below32(n);
    Pattern state(flat_space, rng.subset(n, sw));
    Pattern gb_state(gb_space, state.active());
    for (std::uint32_t i = 0; i < n; ++i) {
      if (amari.field(state, i) != ref.amari_field(state, i))
        return fail(name, "amari field mismatch");
      if (willshaw.score(state, i) != ref.willshaw_score(state, i))
        return fail(name, "willshaw score mismatch");
      if (gb.field(gb_state, i) != gb_ref.gb_field(gb_space, state, i))
        return fail(name, "gb field mismatch");
      if (gb.som_score(gb_state, i) != gb_ref.gb_som(gb_space, state, i))
        return fail(name, "gb som score mismatch");
    }
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult exhaustive_vs_bruteforce(std::uint32_t instances,
                                     std::uint64_t seed) {
  const std::string name = "exhaustive-matches-bruteforce";
  auto rng = RngStream::substream(seed, {0xf8});
  for (std::uint32_t k = 0; k < instances; ++k) {
    auto inst = random_willshaw_instance(rng, /*max_n=*/32, /*max_m=*/20);
    const std::uint32_t want = inst.target.weight();

    // oracle: scan every completion of the partial to `want` neurons
    std::vector<std::vector<std::uint32_t>> valid;
    const std::uint32_t n = inst.space.size();
    const std::uint32_t need = want - inst.input.weight();
    std::vector<std::uint32_t> extra;
    auto scan = [&](auto&& self, std::uint32_t from) -> void {
      if (extra.size() == need) {
        std::vector<std::uint32_t> all(inst.input.active());
        all.insert(all.end(), extra.begin(), extra.end());
        bool clique = true;
        for (std::size_t a = 0; a < all.size() && clique; ++a)
          for (std::size_t b = a + 1; b < all.size(); ++b)
            if (!inst.net.weight(all[a], all[b])) {
              clique = false;
              break;
            }
        if (clique) valid.push_back(all);
        return;
      }
      for (std::uint32_t i = from; i < n; ++i) {
        if (inst.input.contains(i)) continue;
        extra.push_back(i);
        self(self, i + 1);
        extra.pop_back();
      }
    };
    scan(scan, 0);

    auto res = retrieve_exhaustive(AnyNetwork(inst.net), inst.input, want,
                                   5'000'000, rng);
    const std::string tag = "instance " + std::to_string(k);
    if (valid.empty()) {
      if (res.status != ExhaustiveResult::Status::not_found)
        return fail(name, tag + ": oracle found nothing, search did");
    } else {
      if (res.status != ExhaustiveResult::Status::found)
        return fail(name, tag + ": search failed, oracle found " +
                              std::to_string(valid.size()));
      if (res.completions != valid.size())
        return fail(name, tag + ": completion count mismatch");
      std::vector<std::uint32_t> got(res.pattern->active());
      bool member = false;
      for (auto& v : valid) {
        auto sorted = v;
        std::sort(sorted.begin(), sorted.end());
        if (sorted == got) member = true;
      }
      if (!member) return fail(name, tag + ": returned non-completion");
      if (valid.size() == 1 && *res.pattern != inst.target &&
          Pattern(inst.space, valid[0]) == inst.target)
        return fail(name, tag + ": unique completion missed");
    }
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult store_order_independence(std::uint32_t instances,
                                     std::uint64_t seed) {
  const std::string name = "store-order-independence";
  auto rng = RngStream::substream(seed, {0xf9});
  for (std::uint32_t k = 0; k < instances; ++k) {
    const std::uint32_t n = 6 + rng.below32(59);
    const std::uint32_t c = 2 + rng.below32(4);
    const std::uint64_t m = 2 + rng.below(30);
    NeuronSpace space(n);
    std::vector<Pattern> msgs;
    for (std::uint64_t mu = 0; mu < m; ++mu)
      msgs.push_back(gen_exact_count(space, c, rng));
    auto shuffled = msgs;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);

    auto weights_of = [&](const std::vector<Pattern>& order) {
      AmariNetwork a(space, false);
      WillshawNetwork w(space, false);
      for (const auto& p : order) {
        a.store(p);
        w.store(p);
      }
      std::ostringstream sa, sw;
      save(AnyNetwork(a), sa, false);
      save(AnyNetwork(w), sw, false);
      return sa.str() + sw.str();
    };
    if (weights_of(msgs) != weights_of(shuffled))
      return fail(name, "instance " + std::to_string(k));
  }
  return pass(name, std::to_string(instances) + " instances");
}

CheckResult synchronous_update() {
  const std::string name = "synchronous-update";
  // stored {0,1} in n=3; state {0,2} at h=1 must yield {0,1}: a sequential
  // in-place pass would switch neuron 1 on and then keep neuron 2 alive
  NeuronSpace space(3);
  WillshawNetwork net(space, false);
  net.store(Pattern(space, {0, 1}));
  Pattern out = step_willshaw_threshold(net, Pattern(space, {0, 2}), 1);
  if (out != Pattern(space, {0, 1}))
    return fail(name, "step read its own output");
  return pass(name);
}

CheckResult stored_always_recognized(std::uint32_t instances,
                                     std::uint64_t seed) {
  const std::string name = "stored-messages-recognized";
  auto rng = RngStream::substream(seed, {0xfa});
  for (std::uint32_t k = 0; k < instances; ++k) {
    auto gb = random_gb_instance(rng);
    for (const auto& msg : gb.net.stored())
      if (!gb.net.recognize(msg))
        return fail(name, "gb instance " + std::to_string(k));
    auto w = random_willshaw_instance(rng, 64, 40);
    for (const auto& msg : w.net.stored())
      if (!w.net.recognize(msg))
        return fail(name, "willshaw instance " + std::to_string(k));
  }
  return pass(name, std::to_string(instances) + " instances");
}

std::vector<CheckResult> run_all(std::uint64_t seed, bool quick) {
  const std::uint32_t n = quick ? 40 : 200;
  std::vector<CheckResult> results;
  results.push_back(willshaw_fixed_convergence(n, seed));
  results.push_back(willshaw_wta_one_step_law(n, seed));
  results.push_back(gb_som_shrinkage(n, seed));
  results.push_back(gb_fixed_stability(quick ? 20 : 60, seed));
  results.push_back(clipping_equivalence(n, seed));
  results.push_back(gb_willshaw_restriction(n, seed));
  results.push_back(dense_reference_equivalence(n, seed));
  results.push_back(exhaustive_vs_bruteforce(quick ? 30 : 100, seed));
  results.push_back(store_order_independence(quick ? 30 : 100, seed));
  results.push_back(synchronous_update());
  results.push_back(stored_always_recognized(quick ? 20 : 60, seed));
  return results;
}

}  // namespace sam::selfcheck
