#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sam/dynamics.hpp"
#include "sam/network.hpp"
#include "sam/pattern.hpp"

namespace sam {

enum class PatternDist : std::uint8_t { iid, exact_count, gb };

std::string to_string(PatternDist dist);
PatternDist pattern_dist_from_string(const std::string& name);

/// A Monte Carlo retrieval sweep: for each stored-pattern count M, build
/// networks from fresh random messages (one network per batch of trials),
/// erase a uniformly chosen stored message, run the retrieval policy, and
/// count exact-retrieval failures.
struct ExperimentSpec {
  ModelKind model = ModelKind::willshaw;
  NeuronSpace space{2};
  PatternDist dist = PatternDist::exact_count;
  double iid_p = 0.0;              // <= 0: default log(n)/n
  std::uint32_t active_count = 0;  // message sparsity c (gb: clusters)
  std::vector<std::uint64_t> pattern_counts;
  ErasureSpec erasure = ErasureSpec::count(0);
  RetrievalPolicy policy = RetrievalPolicy::wta_max();
  std::uint32_t trials = 2000;
  std::uint32_t batch_size = 100;  // trials sharing one network
  std::uint32_t max_iters = 20;
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;

  /// Throws std::invalid_argument on any inconsistent combination.
  void validate() const;

  /// Sparsity c used for load, efficiency and kth-WTA defaults.
  std::uint32_t sparsity() const;

  /// Model load scale: (n/c)^2, or l^2/c^2 for the clustered model.
  double load_scale() const;

  double resolved_iid_p() const;
  RetrievalPolicy resolved_policy() const;
  double nominal_rho() const;
};

struct SweepPoint {
  std::uint64_t pattern_count = 0;
  double alpha = 0.0;
  double rho = 0.0;
  std::uint32_t trials = 0;
  double error_rate = 0.0;
  double std_error = 0.0;
  double mean_iterations = 0.0;
  double cycle_rate = 0.0;
  double notfound_rate = 0.0;  // exhaustive not-found + capacity-exceeded
  double efficiency = 0.0;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  std::vector<SweepPoint> points;
};

ExperimentResult run_retrieval_sweep(const ExperimentSpec& spec);

// Efficiency: stored-set entropy over the bit cost of the synaptic weights.

/// Entropy of one message in bits: log2 C(n, c), or c*log2(l) clustered.
double message_entropy_bits(ModelKind model, std::uint32_t n, std::uint32_t c,
                            std::uint32_t l);

/// Weight storage cost in bits: C(n,2)*log2(M+1), C(n,2), or C(c,2)*l^2.
double weight_storage_bits(ModelKind model, std::uint32_t n, std::uint32_t c,
                           std::uint32_t l, std::uint64_t m);

double efficiency(ModelKind model, std::uint32_t n, std::uint32_t c,
                  std::uint32_t l, std::uint64_t m);

struct ProbeResult {
  double probability = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  double realized_rho = 0.0;  // subclique probe: kept fraction actually used
};

/// Fraction of trials in which one step of the policy maps an uncorrupted
/// stored message to itself exactly.
ProbeResult stability_probe(ModelKind model, const NeuronSpace& space,
                            PatternDist dist, double iid_p,
                            std::uint32_t active_count, std::uint64_t m,
                            const RetrievalPolicy& policy,
                            std::uint64_t trials, std::uint64_t seed,
                            std::uint32_t batch_size = 100,
                            std::uint32_t threads = 1);

/// P(a fresh random message is recognized as stored) in the clustered model;
/// a fresh network of M random messages is built for every trial.
ProbeResult wrong_message_probe(std::uint32_t l, std::uint32_t c,
                                std::uint64_t m, std::uint64_t trials,
                                std::uint64_t seed,
                                std::uint32_t threads = 1);

/// P(event G): a stored message with the first round(rho*c) clusters kept and
/// one wrong neuron in every remaining cluster is recognized as stored.
ProbeResult subclique_probe(std::uint32_t l, std::uint32_t c, std::uint64_t m,
                            double rho, std::uint64_t trials,
                            std::uint64_t seed, std::uint32_t threads = 1);

/// Network built from M fresh random messages (shared by sweep and probes).
AnyNetwork build_network(ModelKind model, const NeuronSpace& space,
                         PatternDist dist, double iid_p,
                         std::uint32_t active_count, std::uint64_t m,
                         bool retain_stored, RngStream& rng);

}  // namespace sam
