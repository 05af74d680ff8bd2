#include "sam/experiments.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sam/parallel.hpp"
#include "sam/rng.hpp"

namespace sam {

namespace {

// substream domains
constexpr std::uint64_t kDomainBuild = 0xb1;
constexpr std::uint64_t kDomainTrial = 0x7a;

double log2_binom(double n, double k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
          std::lgamma(n - k + 1.0)) /
         std::log(2.0);
}

struct BatchStats {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  std::uint64_t iterations = 0;
  std::uint64_t cycles = 0;
  std::uint64_t notfound = 0;

  void operator+=(const BatchStats& o) {
    trials += o.trials;
    errors += o.errors;
    iterations += o.iterations;
    cycles += o.cycles;
    notfound += o.notfound;
  }
};

bool policy_fits_model(RetrievalPolicy::Kind kind, ModelKind model) {
  using Kind = RetrievalPolicy::Kind;
  switch (kind) {
    case Kind::fixed_threshold:
    case Kind::input_count:
    case Kind::exhaustive:
      return true;
    case Kind::wta_max:
    case Kind::wta_kth:
      return model != ModelKind::gb;
    case Kind::gb_cluster_wta:
    case Kind::gb_sum_of_max:
      return model == ModelKind::gb;
  }
  return false;
}

}  // namespace

std::string to_string(PatternDist dist) {
  switch (dist) {
    case PatternDist::iid: return "iid";
    case PatternDist::exact_count: return "exact";
    case PatternDist::gb: return "gb";
  }
  return "?";
}

PatternDist pattern_dist_from_string(const std::string& name) {
  if (name == "iid") return PatternDist::iid;
  if (name == "exact") return PatternDist::exact_count;
  if (name == "gb") return PatternDist::gb;
  throw std::invalid_argument("unknown pattern distribution: " + name);
}

AnyNetwork build_network(ModelKind model, const NeuronSpace& space,
                         PatternDist dist, double iid_p,
                         std::uint32_t active_count, std::uint64_t m,
                         bool retain_stored, RngStream& rng) {
  auto draw = [&]() -> Pattern {
    switch (dist) {
      case PatternDist::iid: return gen_iid(space, iid_p, rng);
      case PatternDist::exact_count:
        return gen_exact_count(space, active_count, rng);
      case PatternDist::gb: return gen_gb(space, rng);
    }
    throw std::logic_error("bad dist");
  };
  auto fill = [&](auto& net) {
    for (std::uint64_t mu = 0; mu < m; ++mu) net.store(draw());
  };
  switch (model) {
    case ModelKind::amari: {
      AmariNetwork net(space, retain_stored);
      fill(net);
      return net;
    }
    case ModelKind::willshaw: {
      WillshawNetwork net(space, retain_stored);
      fill(net);
      return net;
    }
    case ModelKind::gb: {
      GBNetwork net(space, retain_stored);
      fill(net);
      return net;
    }
  }
  throw std::logic_error("bad model");
}

std::uint32_t ExperimentSpec::sparsity() const {
  if (model == ModelKind::gb || dist == PatternDist::gb)
    return space.clusters();
  return active_count;
}

double ExperimentSpec::load_scale() const {
  const double c = sparsity();
  if (model == ModelKind::gb) {
    const double l = space.cluster_size();
    return l * l / (c * c);
  }
  const double n = space.size();
  return (n / c) * (n / c);
}

double ExperimentSpec::resolved_iid_p() const {
  if (iid_p > 0.0) return iid_p;
  return std::log(double(space.size())) / double(space.size());
}

RetrievalPolicy ExperimentSpec::resolved_policy() const {
  RetrievalPolicy p = policy;
  if (p.kind == RetrievalPolicy::Kind::wta_kth && p.keep_count == 0)
    p.keep_count = sparsity();
  if (p.kind == RetrievalPolicy::Kind::exhaustive && p.target_size == 0 &&
      dist != PatternDist::iid)
    p.target_size = sparsity();
  return p;
}

double ExperimentSpec::nominal_rho() const {
  if (erasure.rho >= 0.0) return erasure.rho;
  const double c = sparsity();
  return c > 0 ? double(erasure.erase_count) / c : 0.0;
}

void ExperimentSpec::validate() const {
  if (pattern_counts.empty())
    throw std::invalid_argument("sweep needs at least one pattern count");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("max iterations must be >= 1");

  if (model == ModelKind::gb) {
    if (!space.has_layout())
      throw std::invalid_argument("gb model needs a cluster layout");
    if (dist != PatternDist::gb)
      throw std::invalid_argument("gb model needs the gb distribution");
  } else {
    if (dist == PatternDist::gb)
      throw std::invalid_argument(
          "gb distribution needs the gb model");
    if (dist == PatternDist::exact_count &&
        (active_count < 1 || active_count > space.size()))
      throw std::invalid_argument("active count out of range");
    if (dist == PatternDist::iid) {
      const double p = resolved_iid_p();
      if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("iid probability out of range");
    }
    if (active_count < 1)
      throw std::invalid_argument(
          "amari/willshaw sweeps need the message sparsity c");
  }

  if (!policy_fits_model(policy.kind, model))
    throw std::invalid_argument("policy " + policy.name() +
                                " is not valid for model " +
                                to_string(model));
  if (erasure.mode == ErasureSpec::Mode::cluster && model != ModelKind::gb)
    throw std::invalid_argument("cluster erasure needs the gb model");

  for (auto m : pattern_counts) {
    if (m < 1) throw std::invalid_argument("pattern counts must be >= 1");
    if (m > 1'000'000'000ULL)
      throw std::invalid_argument("pattern count beyond resource guard");
    if (double(m) * space.size() > 1e13)
      throw std::invalid_argument("n*M beyond resource guard");
  }
}

namespace {

BatchStats run_batch(const ExperimentSpec& spec, const RetrievalPolicy& policy,
                     std::uint64_t point, std::uint64_t m, std::uint64_t batch,
                     std::uint32_t batch_trials) {
  auto build_rng =
      RngStream::substream(spec.seed, {kDomainBuild, point, batch});
  AnyNetwork net =
      build_network(spec.model, spec.space, spec.dist, spec.resolved_iid_p(),
                    spec.active_count, m, /*retain_stored=*/true, build_rng);
  const auto& stored =
      std::visit([](const auto& n) -> const std::vector<Pattern>& {
        return n.stored();
      }, net);

  BatchStats stats;
  stats.trials = batch_trials;
  for (std::uint32_t t = 0; t < batch_trials; ++t) {
    auto rng =
        RngStream::substream(spec.seed, {kDomainTrial, point, batch, t});
    const Pattern& target = stored[rng.below(m)];
    const Pattern input = erase(target, spec.erasure, rng);

    if (policy.kind == RetrievalPolicy::Kind::exhaustive) {
      const std::uint32_t want =
          policy.target_size > 0 ? policy.target_size : target.weight();
      auto res = retrieve_exhaustive(net, input, want, policy.max_candidates,
                                     rng);
      stats.iterations += 1;
      if (res.status == ExhaustiveResult::Status::found) {
        if (*res.pattern != target) ++stats.errors;
      } else {
        ++stats.notfound;
        ++stats.errors;
      }
    } else {
      auto traj = iterate(net, input, policy, spec.max_iters);
      stats.iterations += traj.iterations();
      if (traj.outcome == Trajectory::Outcome::cycle) ++stats.cycles;
      if (traj.final_state() != target) ++stats.errors;
    }
  }
  return stats;
}

}  // namespace

ExperimentResult run_retrieval_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const RetrievalPolicy policy = spec.resolved_policy();
  ExperimentResult result;
  result.points.reserve(spec.pattern_counts.size());

  for (std::size_t point = 0; point < spec.pattern_counts.size(); ++point) {
    const std::uint64_t m = spec.pattern_counts[point];
    const auto start = std::chrono::steady_clock::now();

    const std::uint64_t batches =
        (spec.trials + spec.batch_size - 1) / spec.batch_size;
    std::vector<BatchStats> slots(batches);
    parallel_for(batches, spec.threads, [&](std::uint64_t b) {
      const std::uint32_t batch_trials = static_cast<std::uint32_t>(
          std::min<std::uint64_t>(spec.batch_size,
                                  spec.trials - b * spec.batch_size));
      slots[b] = run_batch(spec, policy, point, m, b, batch_trials);
    });

    BatchStats total;
    for (const auto& s : slots) total += s;

    SweepPoint sp;
    sp.pattern_count = m;
    sp.alpha = double(m) / spec.load_scale();
    sp.rho = spec.nominal_rho();
    sp.trials = static_cast<std::uint32_t>(total.trials);
    sp.error_rate = double(total.errors) / double(total.trials);
    sp.std_error = std::sqrt(sp.error_rate * (1.0 - sp.error_rate) /
                             double(total.trials));
    sp.mean_iterations = double(total.iterations) / double(total.trials);
    sp.cycle_rate = double(total.cycles) / double(total.trials);
    sp.notfound_rate = double(total.notfound) / double(total.trials);
    const auto& layout = spec.space.layout();
    sp.efficiency = efficiency(
        spec.model, spec.space.size(), spec.sparsity(),
        layout ? layout->cluster_size : 0, m);
    sp.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    result.points.push_back(sp);
  }
  return result;
}

double message_entropy_bits(ModelKind model, std::uint32_t n, std::uint32_t c,
                            std::uint32_t l) {
  if (model == ModelKind::gb) return double(c) * std::log2(double(l));
  (void)n;
  return log2_binom(double(n), double(c));
}

double weight_storage_bits(ModelKind model, std::uint32_t n, std::uint32_t c,
                           std::uint32_t l, std::uint64_t m) {
  switch (model) {
    case ModelKind::amari:
      return double(n) * (double(n) - 1.0) / 2.0 *
             std::log2(double(m) + 1.0);
    case ModelKind::willshaw:
      return double(n) * (double(n) - 1.0) / 2.0;
    case ModelKind::gb:
      return double(c) * (double(c) - 1.0) / 2.0 * double(l) * double(l);
  }
  return 0.0;
}

double efficiency(ModelKind model, std::uint32_t n, std::uint32_t c,
                  std::uint32_t l, std::uint64_t m) {
  if (n < 2 || c < 1) throw std::invalid_argument("efficiency: bad sizes");
  if (model == ModelKind::gb && l < 2)
    throw std::invalid_argument("efficiency: bad cluster size");
  if (m == 0) return 0.0;
  const double cost = weight_storage_bits(model, n, c, l, m);
  return double(m) * message_entropy_bits(model, n, c, l) / cost;
}

ProbeResult stability_probe(ModelKind model, const NeuronSpace& space,
                            PatternDist dist, double iid_p,
                            std::uint32_t active_count, std::uint64_t m,
                            const RetrievalPolicy& policy,
                            std::uint64_t trials, std::uint64_t seed,
                            std::uint32_t batch_size, std::uint32_t threads) {
  if (trials < 1 || m < 1)
    throw std::invalid_argument("stability_probe: need trials and patterns");
  if (!policy_fits_model(policy.kind, model) ||
      policy.kind == RetrievalPolicy::Kind::exhaustive)
    throw std::invalid_argument("stability_probe: policy/model mismatch");

  const std::uint64_t batches = (trials + batch_size - 1) / batch_size;
  std::vector<std::uint64_t> stable(batches, 0);
  parallel_for(batches, threads, [&](std::uint64_t b) {
    auto build_rng = RngStream::substream(seed, {kDomainBuild, b});
    AnyNetwork net = build_network(model, space, dist, iid_p, active_count, m,
                                   /*retain_stored=*/true, build_rng);
    const auto& stored =
        std::visit([](const auto& n) -> const std::vector<Pattern>& {
          return n.stored();
        }, net);
    const std::uint64_t batch_trials =
        std::min<std::uint64_t>(batch_size, trials - b * batch_size);
    std::uint64_t ok = 0;
    for (std::uint64_t t = 0; t < batch_trials; ++t) {
      auto rng = RngStream::substream(seed, {kDomainTrial, b, t});
      const Pattern& target = stored[rng.below(m)];
      auto traj = iterate(net, target, policy, 1);
      if (traj.final_state() == target) ++ok;
    }
    stable[b] = ok;
  });

  std::uint64_t ok = 0;
  for (auto s : stable) ok += s;
  ProbeResult out;
  out.trials = trials;
  out.probability = double(ok) / double(trials);
  out.std_error =
      std::sqrt(out.probability * (1.0 - out.probability) / double(trials));
  return out;
}

namespace {

/// One fresh network of m random clustered messages per trial; `trial`
/// decides the hit given the network, the first stored message, and the
/// trial's stream.
template <typename Trial>
ProbeResult run_fresh_network_probe(std::uint32_t l, std::uint32_t c,
                                    std::uint64_t m, std::uint64_t trials,
                                    std::uint64_t seed, std::uint32_t threads,
                                    Trial&& trial) {
  if (l < 2 || c < 2)
    throw std::invalid_argument("probe: need l >= 2 and c >= 2");
  if (trials < 1) throw std::invalid_argument("probe: need trials");
  NeuronSpace space(c, l);

  constexpr std::uint64_t kChunk = 256;  // fixed, so threads don't matter
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, threads, [&](std::uint64_t ci) {
    GBNetwork net(space, /*retain_stored=*/false);
    const std::uint64_t begin = ci * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    std::uint64_t h = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      auto rng = RngStream::substream(seed, {kDomainTrial, t});
      net.reset();
      Pattern first = gen_gb(space, rng);
      net.store(first);
      for (std::uint64_t mu = 1; mu < m; ++mu) net.store(gen_gb(space, rng));
      if (trial(net, first, rng)) ++h;
    }
    hits[ci] = h;
  });

  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  ProbeResult out;
  out.trials = trials;
  out.probability = double(total) / double(trials);
  out.std_error =
      std::sqrt(out.probability * (1.0 - out.probability) / double(trials));
  return out;
}

}  // namespace

ProbeResult wrong_message_probe(std::uint32_t l, std::uint32_t c,
                                std::uint64_t m, std::uint64_t trials,
                                std::uint64_t seed, std::uint32_t threads) {
  if (m == 0) {
    ProbeResult out;
    out.trials = trials;
    return out;  // no edges stored, nothing is recognized
  }
  NeuronSpace space(c, l);
  return run_fresh_network_probe(
      l, c, m, trials, seed, threads,
      [&space](const GBNetwork& net, const Pattern&, RngStream& rng) {
        return net.recognize(gen_gb(space, rng));
      });
}

ProbeResult subclique_probe(std::uint32_t l, std::uint32_t c, std::uint64_t m,
                            double rho, std::uint64_t trials,
                            std::uint64_t seed, std::uint32_t threads) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::invalid_argument("subclique_probe: rho not in [0,1]");
  if (m == 0) throw std::invalid_argument("subclique_probe: need patterns");
  const std::uint32_t kept =
      static_cast<std::uint32_t>(std::lround(rho * double(c)));

  auto out = run_fresh_network_probe(
      l, c, m, trials, seed, threads,
      [&](const GBNetwork& net, const Pattern& first, RngStream& rng) {
        const auto& space = net.space();
        // keep the first `kept` clusters of the stored message, put one
        // wrong neuron in each remaining cluster
        std::vector<std::uint32_t> act(first.active());
        for (std::uint32_t a = kept; a < c; ++a) {
          const std::uint32_t true_k = space.offset_of(act[a]);
          const std::uint32_t wrong_k =
              (true_k + 1 + rng.below32(l - 1)) % l;
          act[a] = space.flat_index(a, wrong_k);
        }
        return net.recognize(Pattern(space, std::move(act)));
      });
  out.realized_rho = double(kept) / double(c);
  return out;
}

}  // namespace sam
