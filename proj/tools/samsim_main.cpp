// samsim: simulator for three sparse associative memory models.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sam/dynamics.hpp"
#include "sam/experiments.hpp"
#include "sam/parallel.hpp"
#include "sam/report.hpp"
#include "sam/selfcheck.hpp"
#include "sam/serialize.hpp"
#include "sam/theory.hpp"

namespace {

using namespace sam;

std::uint32_t env_default_threads() {
  if (const char* v = std::getenv("SAMSIM_THREADS")) {
    const long parsed = std::strtol(v, nullptr, 10);
    if (parsed > 0) return static_cast<std::uint32_t>(parsed);
  }
  return default_thread_count();
}

/// Inclusive start:stop:step range, a comma list, or a single value.
std::vector<std::uint64_t> parse_counts(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.find(':') != std::string::npos) {
    std::uint64_t start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' ||
        c2 != ':' || step == 0 || stop < start)
      throw std::invalid_argument("bad range: " + text);
    for (std::uint64_t m = start; m <= stop; m += step) out.push_back(m);
    return out;
  }
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stoull(item));
  if (out.empty()) throw std::invalid_argument("empty pattern list");
  return out;
}

std::vector<double> parse_alpha_range(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' ||
        c2 != ':' || step <= 0 || stop < start)
      throw std::invalid_argument("bad alpha range: " + text);
    for (double a = start; a <= stop + 1e-12; a += step) out.push_back(a);
    return out;
  }
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("empty alpha list");
  return out;
}

struct SpaceFlags {
  std::uint32_t neurons = 0;
  std::uint32_t clusters = 0;
  std::uint32_t per_cluster = 0;

  NeuronSpace build(ModelKind model) const {
    if (clusters > 0 || per_cluster > 0) {
      if (clusters == 0 || per_cluster == 0)
        throw std::invalid_argument(
            "--clusters and --per-cluster go together");
      if (neurons > 0 && neurons != clusters * per_cluster)
        throw std::invalid_argument("--neurons contradicts the layout");
      return NeuronSpace(clusters, per_cluster);
    }
    if (model == ModelKind::gb)
      throw std::invalid_argument(
          "gb model needs --clusters and --per-cluster");
    if (neurons == 0)
      throw std::invalid_argument("need --neurons (or a cluster layout)");
    return NeuronSpace(neurons);
  }
};

struct PolicyFlags {
  std::string name = "wta-max";
  std::int64_t threshold = -1;
  std::uint32_t kth = 0;
  std::string wta_score = "som";
  std::uint32_t target_size = 0;
  std::uint64_t max_candidates = 1'000'000;

  RetrievalPolicy build() const {
    RetrievalPolicy p;
    if (name == "fixed") {
      if (threshold < 0)
        throw std::invalid_argument("--policy fixed needs --threshold");
      p = RetrievalPolicy::fixed(static_cast<std::uint64_t>(threshold));
    } else if (name == "input-count") {
      p = RetrievalPolicy::input_count();
    } else if (name == "wta-max") {
      p = RetrievalPolicy::wta_max();
    } else if (name == "wta-kth") {
      p = RetrievalPolicy::wta_kth(kth);  // 0 resolves to the sparsity c
    } else if (name == "cluster-wta") {
      p = RetrievalPolicy::cluster_wta(wta_score != "field");
    } else if (name == "som") {
      p = RetrievalPolicy::sum_of_max();
    } else if (name == "exhaustive") {
      p = RetrievalPolicy::exhaustive(target_size, max_candidates);
    } else {
      throw std::invalid_argument("unknown policy: " + name);
    }
    return p;
  }
};

struct ErasureFlags {
  std::int64_t count = -1;
  double rho = -1.0;
  std::string mode;  // "", "active", "cluster"

  ErasureSpec build(ModelKind model) const {
    auto m = mode.empty()
                 ? (model == ModelKind::gb ? ErasureSpec::Mode::cluster
                                           : ErasureSpec::Mode::active)
                 : (mode == "cluster" ? ErasureSpec::Mode::cluster
                                      : ErasureSpec::Mode::active);
    if (count >= 0 && rho >= 0)
      throw std::invalid_argument("--erase and --erase-frac conflict");
    if (rho >= 0) return ErasureSpec::fraction(rho, m);
    return ErasureSpec::count(count < 0 ? 0 : std::uint32_t(count), m);
  }
};

std::string describe_erasure(const ErasureSpec& e) {
  std::ostringstream os;
  if (e.rho >= 0)
    os << "erase-frac=" << e.rho;
  else
    os << "erase=" << e.erase_count;
  os << " erase-mode="
     << (e.mode == ErasureSpec::Mode::cluster ? "cluster" : "active");
  return os.str();
}

std::string describe_spec(const ExperimentSpec& spec, const std::string& cmd) {
  std::ostringstream os;
  os << cmd << " model=" << to_string(spec.model)
     << " dist=" << to_string(spec.dist) << " n=" << spec.space.size();
  if (spec.space.has_layout())
    os << " clusters=" << spec.space.clusters()
       << " per-cluster=" << spec.space.cluster_size();
  os << " c=" << spec.sparsity();
  if (spec.dist == PatternDist::iid) os << " iid-p=" << spec.resolved_iid_p();
  os << ' ' << describe_erasure(spec.erasure)
     << " policy=" << spec.resolved_policy().name();
  const RetrievalPolicy resolved = spec.resolved_policy();
  if (resolved.kind == RetrievalPolicy::Kind::fixed_threshold)
    os << " threshold=" << resolved.threshold;
  if (resolved.kind == RetrievalPolicy::Kind::wta_kth)
    os << " kth=" << resolved.keep_count;
  if (resolved.kind == RetrievalPolicy::Kind::gb_cluster_wta)
    os << " wta-score=" << (resolved.wta_uses_som ? "som" : "field");
  if (resolved.kind == RetrievalPolicy::Kind::exhaustive)
    os << " target-size=" << resolved.target_size
       << " max-candidates=" << resolved.max_candidates;
  os << " patterns=";
  for (std::size_t i = 0; i < spec.pattern_counts.size(); ++i)
    os << (i ? "," : "") << spec.pattern_counts[i];
  os << " trials=" << spec.trials << " batch=" << spec.batch_size
     << " max-iters=" << spec.max_iters << " threads=" << spec.threads
     << " seed=" << spec.seed;
  return os.str();
}

int run_sweep(const ExperimentSpec& spec_in, const std::string& out_path,
              bool append, const std::string& plot_path) {
  ExperimentSpec spec = spec_in;
  spec.validate();
  const std::string config = describe_spec(spec, "sweep");
  std::cout << "# " << config << std::endl;

  auto result = run_retrieval_sweep(spec);
  auto rows = rows_from_result(spec, result);
  for (const auto& p : result.points)
    std::cout << "M=" << p.pattern_count << " alpha=" << p.alpha
              << " error_rate=" << p.error_rate << " stderr=" << p.std_error
              << " mean_iters=" << p.mean_iterations
              << " cycles=" << p.cycle_rate
              << " notfound=" << p.notfound_rate
              << " efficiency=" << p.efficiency << " (" << p.wall_seconds
              << "s)" << std::endl;
  if (!out_path.empty()) {
    write_results(out_path, config, rows, append);
    std::cout << "wrote " << out_path << std::endl;
    if (!plot_path.empty()) {
      emit_plot_script({out_path}, plot_path);
      std::cout << "wrote " << plot_path << std::endl;
    }
  } else if (!plot_path.empty()) {
    throw std::invalid_argument("--plot-script needs --out");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "samsim: storage and retrieval simulator for sparse associative "
      "memories (integer-count, binary, and clustered binary models)"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--threads may follow the subcommand

  std::uint64_t seed = 1;
  std::uint32_t threads = env_default_threads();
  app.add_option("--seed", seed, "master random seed")->capture_default_str();
  app.add_option("--threads", threads,
                 "worker threads (default: SAMSIM_THREADS or hardware)")
      ->capture_default_str();

  // ---- sweep ----
  auto* sweep = app.add_subcommand(
      "sweep", "Monte Carlo retrieval error-rate sweep over pattern counts");
  std::string sw_model = "willshaw";
  SpaceFlags sw_space;
  std::string sw_dist;
  double sw_iid_p = 0.0;
  std::uint32_t sw_active = 0;
  std::string sw_patterns;
  std::string sw_alpha;
  ErasureFlags sw_erase;
  PolicyFlags sw_policy;
  std::uint32_t sw_trials = 2000;
  std::uint32_t sw_batch = 100;
  std::uint32_t sw_max_iters = 20;
  std::string sw_out, sw_plot;
  bool sw_append = false;
  sweep->add_option("--model", sw_model, "amari|willshaw|gb")
      ->required()
      ->check(CLI::IsMember({"amari", "willshaw", "gb"}));
  sweep->add_option("--neurons", sw_space.neurons, "neuron count N");
  sweep->add_option("--clusters", sw_space.clusters, "cluster count c");
  sweep->add_option("--per-cluster", sw_space.per_cluster,
                    "neurons per cluster l");
  sweep->add_option("--dist", sw_dist,
                    "pattern distribution: iid|exact|gb (default exact, or "
                    "gb for the gb model)");
  sweep->add_option("--iid-p", sw_iid_p,
                    "activation probability for --dist iid "
                    "(default log(N)/N)");
  sweep->add_option("--active-count", sw_active,
                    "active neurons per message c (amari/willshaw)");
  sweep->add_option("--patterns", sw_patterns,
                    "stored counts: start:stop:step (inclusive) or list");
  sweep->add_option("--alpha-range", sw_alpha,
                    "loads as alpha (times the model scale) instead of "
                    "--patterns");
  sweep->add_option("--erase", sw_erase.count, "number of 1s to delete");
  sweep->add_option("--erase-frac", sw_erase.rho, "fraction of 1s to delete");
  sweep->add_option("--erase-mode", sw_erase.mode, "active|cluster")
      ->check(CLI::IsMember({"active", "cluster"}));
  sweep->add_option("--policy", sw_policy.name,
                    "fixed|input-count|wta-max|wta-kth|cluster-wta|som|"
                    "exhaustive")
      ->required();
  sweep->add_option("--threshold", sw_policy.threshold,
                    "threshold h for --policy fixed");
  sweep->add_option("--kth", sw_policy.kth,
                    "k for --policy wta-kth (default: c)");
  sweep->add_option("--wta-score", sw_policy.wta_score,
                    "cluster-wta score: som|field")
      ->check(CLI::IsMember({"som", "field"}));
  sweep->add_option("--target-size", sw_policy.target_size,
                    "completion size for --policy exhaustive (default: c)");
  sweep->add_option("--max-candidates", sw_policy.max_candidates,
                    "search budget for --policy exhaustive")
      ->capture_default_str();
  sweep->add_option("--trials", sw_trials, "trials per sweep point")
      ->capture_default_str();
  sweep->add_option("--batch", sw_batch, "trials sharing one network")
      ->capture_default_str();
  sweep->add_option("--max-iters", sw_max_iters, "iteration cap per trial")
      ->capture_default_str();
  sweep->add_option("--out", sw_out, "results CSV path");
  sweep->add_flag("--append", sw_append, "append rows to an existing CSV");
  sweep->add_option("--plot-script", sw_plot,
                    "also write a gnuplot script for the emitted CSV");

  // ---- stability ----
  auto* stab = app.add_subcommand(
      "stability", "one-step fixed-point probability of stored messages");
  std::string st_model = "willshaw";
  SpaceFlags st_space;
  std::string st_dist;
  double st_iid_p = 0.0;
  std::uint32_t st_active = 0;
  std::string st_patterns, st_alpha;
  PolicyFlags st_policy;
  std::uint32_t st_trials = 1000;
  std::uint32_t st_batch = 100;
  stab->add_option("--model", st_model, "amari|willshaw|gb")
      ->required()
      ->check(CLI::IsMember({"amari", "willshaw", "gb"}));
  stab->add_option("--neurons", st_space.neurons, "neuron count N");
  stab->add_option("--clusters", st_space.clusters, "cluster count c");
  stab->add_option("--per-cluster", st_space.per_cluster,
                   "neurons per cluster l");
  stab->add_option("--dist", st_dist, "iid|exact|gb");
  stab->add_option("--iid-p", st_iid_p, "iid activation probability");
  stab->add_option("--active-count", st_active, "message sparsity c");
  stab->add_option("--patterns", st_patterns, "stored counts (range or list)");
  stab->add_option("--alpha", st_alpha, "loads as alpha (range or list)");
  stab->add_option("--policy", st_policy.name, "retrieval policy")
      ->required();
  stab->add_option("--threshold", st_policy.threshold, "h for fixed policy");
  stab->add_option("--kth", st_policy.kth, "k for wta-kth");
  stab->add_option("--wta-score", st_policy.wta_score, "som|field");
  stab->add_option("--trials", st_trials, "trials per point")
      ->capture_default_str();
  stab->add_option("--batch", st_batch, "trials sharing one network")
      ->capture_default_str();

  // ---- wrong-message ----
  auto* wrong = app.add_subcommand(
      "wrong-message",
      "probability that a fresh random message is recognized as stored");
  std::uint32_t wm_clusters = 0, wm_per_cluster = 0;
  std::string wm_patterns, wm_alpha;
  std::uint64_t wm_trials = 10000;
  wrong->add_option("--clusters", wm_clusters, "cluster count c")->required();
  wrong->add_option("--per-cluster", wm_per_cluster, "neurons per cluster l")
      ->required();
  wrong->add_option("--patterns", wm_patterns, "stored counts");
  wrong->add_option("--alpha", wm_alpha,
                    "loads as alpha (times l^2 * ln c)");
  wrong->add_option("--trials", wm_trials, "Monte Carlo trials")
      ->capture_default_str();

  // ---- subclique ----
  auto* sub = app.add_subcommand(
      "subclique",
      "probability that a partially kept message completed with wrong "
      "neurons is recognized");
  std::uint32_t sc_clusters = 0, sc_per_cluster = 0;
  std::string sc_patterns, sc_alpha;
  double sc_rho = 0.5;
  std::uint64_t sc_trials = 10000;
  sub->add_option("--clusters", sc_clusters, "cluster count c")->required();
  sub->add_option("--per-cluster", sc_per_cluster, "neurons per cluster l")
      ->required();
  sub->add_option("--patterns", sc_patterns, "stored counts");
  sub->add_option("--alpha", sc_alpha, "loads as alpha (times l^2 * ln c)");
  sub->add_option("--rho", sc_rho, "fraction of clusters kept true")
      ->capture_default_str();
  sub->add_option("--trials", sc_trials, "Monte Carlo trials")
      ->capture_default_str();

  // ---- theory ----
  auto* theory_cmd = app.add_subcommand(
      "theory", "closed-form constants, bounds, and the exact tiny oracle");
  std::string th_constant;
  std::optional<double> th_rho;
  double th_rho_val = 0.0;
  bool th_recognition = false, th_subclique = false, th_exact = false,
       th_mc = false;
  std::uint32_t th_clusters = 0, th_per_cluster = 0;
  std::uint64_t th_patterns = 0;
  std::uint64_t th_mc_trials = 100000;
  theory_cmd->add_option("--constant", th_constant,
                         "amari-stability|amari-erasure|amari-upper|"
                         "willshaw-wta|gb-wta|wrong-message-alpha");
  auto* rho_opt =
      theory_cmd->add_option("--rho", th_rho_val, "erasure/keep fraction");
  theory_cmd->add_flag("--recognition-bound", th_recognition,
                       "print the positive-association bound d^L");
  theory_cmd->add_flag("--subclique-bound", th_subclique,
                       "print the completion bound d^r(c,rho)");
  theory_cmd->add_flag("--exact-recognition", th_exact,
                       "enumerate the exact recognition probability");
  theory_cmd->add_flag("--mc-recognition", th_mc,
                       "Monte Carlo recognition probability");
  theory_cmd->add_option("--clusters", th_clusters, "cluster count c");
  theory_cmd->add_option("--per-cluster", th_per_cluster,
                         "neurons per cluster l");
  theory_cmd->add_option("--patterns", th_patterns, "stored count M");
  theory_cmd->add_option("--mc-trials", th_mc_trials, "Monte Carlo trials")
      ->capture_default_str();

  // ---- store ----
  auto* store_cmd = app.add_subcommand(
      "store", "build a network from random messages and save it");
  std::string so_model = "willshaw";
  SpaceFlags so_space;
  std::string so_dist;
  double so_iid_p = 0.0;
  std::uint32_t so_active = 0;
  std::uint64_t so_patterns = 0;
  std::string so_out;
  bool so_drop_stored = false;
  store_cmd->add_option("--model", so_model, "amari|willshaw|gb")
      ->required()
      ->check(CLI::IsMember({"amari", "willshaw", "gb"}));
  store_cmd->add_option("--neurons", so_space.neurons, "neuron count N");
  store_cmd->add_option("--clusters", so_space.clusters, "cluster count c");
  store_cmd->add_option("--per-cluster", so_space.per_cluster,
                        "neurons per cluster l");
  store_cmd->add_option("--dist", so_dist, "iid|exact|gb");
  store_cmd->add_option("--iid-p", so_iid_p, "iid activation probability");
  store_cmd->add_option("--active-count", so_active, "message sparsity c");
  store_cmd->add_option("--patterns", so_patterns, "messages to store")
      ->required();
  store_cmd->add_option("--out", so_out, "network file path")->required();
  store_cmd->add_flag("--drop-stored", so_drop_stored,
                      "do not keep the stored set in the file");

  // ---- recall ----
  auto* recall_cmd = app.add_subcommand(
      "recall", "load a network and retrieve from a partial input");
  std::string rc_network;
  std::string rc_input;
  std::int64_t rc_stored_index = -1;
  ErasureFlags rc_erase;
  PolicyFlags rc_policy;
  std::uint32_t rc_max_iters = 20;
  recall_cmd->add_option("--network", rc_network, "network file")->required();
  recall_cmd->add_option("--input", rc_input,
                         "comma list of active neuron indices");
  recall_cmd->add_option("--stored-index", rc_stored_index,
                         "use stored message #i as the target");
  recall_cmd->add_option("--erase", rc_erase.count,
                         "delete this many 1s from the target");
  recall_cmd->add_option("--erase-frac", rc_erase.rho, "fraction to delete");
  recall_cmd->add_option("--erase-mode", rc_erase.mode, "active|cluster");
  recall_cmd->add_option("--policy", rc_policy.name, "retrieval policy")
      ->required();
  recall_cmd->add_option("--threshold", rc_policy.threshold,
                         "h for fixed policy");
  recall_cmd->add_option("--kth", rc_policy.kth, "k for wta-kth");
  recall_cmd->add_option("--wta-score", rc_policy.wta_score, "som|field");
  recall_cmd->add_option("--target-size", rc_policy.target_size,
                         "completion size for exhaustive");
  recall_cmd->add_option("--max-candidates", rc_policy.max_candidates,
                         "search budget for exhaustive");
  recall_cmd->add_option("--max-iters", rc_max_iters, "iteration cap")
      ->capture_default_str();

  // ---- plot ----
  auto* plot_cmd = app.add_subcommand(
      "plot", "write a gnuplot script for one or more result CSVs");
  std::vector<std::string> pl_csvs;
  std::string pl_out;
  plot_cmd->add_option("--csv", pl_csvs, "input results CSV (repeatable)")
      ->required();
  plot_cmd->add_option("--out", pl_out, "script path")->required();

  // ---- selftest ----
  auto* self_cmd = app.add_subcommand(
      "selftest", "run the built-in property and oracle-equivalence suites");
  bool quick = false;
  self_cmd->add_flag("--quick", quick, "smaller instance counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      ExperimentSpec spec;
      spec.model = model_kind_from_string(sw_model);
      spec.space = sw_space.build(spec.model);
      spec.dist = sw_dist.empty()
                      ? (spec.model == ModelKind::gb ? PatternDist::gb
                                                     : PatternDist::exact_count)
                      : pattern_dist_from_string(sw_dist);
      spec.iid_p = sw_iid_p;
      spec.active_count = sw_active;
      spec.erasure = sw_erase.build(spec.model);
      spec.policy = sw_policy.build();
      spec.trials = sw_trials;
      spec.batch_size = sw_batch;
      spec.max_iters = sw_max_iters;
      spec.seed = seed;
      spec.threads = threads;
      if (!sw_patterns.empty() == !sw_alpha.empty())
        throw std::invalid_argument(
            "give exactly one of --patterns and --alpha-range");
      if (!sw_patterns.empty()) {
        spec.pattern_counts = parse_counts(sw_patterns);
      } else {
        const double scale = spec.load_scale();
        std::cout << "# alpha scale: one unit = " << scale << " patterns"
                  << std::endl;
        for (double a : parse_alpha_range(sw_alpha))
          spec.pattern_counts.push_back(
              static_cast<std::uint64_t>(std::llround(a * scale)));
      }
      return run_sweep(spec, sw_out, sw_append, sw_plot);
    }

    if (*stab) {
      ExperimentSpec spec;  // reused for validation and load scale
      spec.model = model_kind_from_string(st_model);
      spec.space = st_space.build(spec.model);
      spec.dist = st_dist.empty()
                      ? (spec.model == ModelKind::gb ? PatternDist::gb
                                                     : PatternDist::exact_count)
                      : pattern_dist_from_string(st_dist);
      spec.iid_p = st_iid_p;
      spec.active_count = st_active;
      spec.policy = st_policy.build();
      spec.trials = st_trials;
      spec.batch_size = st_batch;
      spec.seed = seed;
      spec.threads = threads;
      if (!st_patterns.empty() == !st_alpha.empty())
        throw std::invalid_argument(
            "give exactly one of --patterns and --alpha");
      if (!st_patterns.empty()) {
        spec.pattern_counts = parse_counts(st_patterns);
      } else {
        const double scale = spec.load_scale();
        std::cout << "# alpha scale: one unit = " << scale << " patterns"
                  << std::endl;
        for (double a : parse_alpha_range(st_alpha))
          spec.pattern_counts.push_back(
              static_cast<std::uint64_t>(std::llround(a * scale)));
      }
      spec.validate();
      std::cout << "# " << describe_spec(spec, "stability") << std::endl;
      for (auto m : spec.pattern_counts) {
        auto res = stability_probe(spec.model, spec.space, spec.dist,
                                   spec.resolved_iid_p(), spec.active_count,
                                   m, spec.resolved_policy(), spec.trials,
                                   spec.seed, spec.batch_size, spec.threads);
        std::cout << "M=" << m << " alpha=" << double(m) / spec.load_scale()
                  << " stability=" << res.probability
                  << " stderr=" << res.std_error << " trials=" << res.trials
                  << std::endl;
      }
      return 0;
    }

    if (*wrong) {
      std::vector<std::uint64_t> counts;
      if (!wm_patterns.empty() == !wm_alpha.empty())
        throw std::invalid_argument(
            "give exactly one of --patterns and --alpha");
      const double scale = double(wm_per_cluster) * wm_per_cluster *
                           std::log(double(wm_clusters));
      if (!wm_patterns.empty())
        counts = parse_counts(wm_patterns);
      else
        for (double a : parse_alpha_range(wm_alpha))
          counts.push_back(
              static_cast<std::uint64_t>(std::llround(a * scale)));
      std::cout << "# wrong-message clusters=" << wm_clusters
                << " per-cluster=" << wm_per_cluster
                << " trials=" << wm_trials << " threads=" << threads
                << " seed=" << seed << " (alpha scale " << scale << ")"
                << std::endl;
      for (auto m : counts) {
        auto res = wrong_message_probe(wm_per_cluster, wm_clusters, m,
                                       wm_trials, seed, threads);
        std::cout << "M=" << m << " alpha=" << double(m) / scale
                  << " probability=" << res.probability
                  << " stderr=" << res.std_error << " bound="
                  << theory::recognition_lower_bound(wm_per_cluster,
                                                     wm_clusters, m)
                  << std::endl;
      }
      return 0;
    }

    if (*sub) {
      std::vector<std::uint64_t> counts;
      if (!sc_patterns.empty() == !sc_alpha.empty())
        throw std::invalid_argument(
            "give exactly one of --patterns and --alpha");
      const double scale = double(sc_per_cluster) * sc_per_cluster *
                           std::log(double(sc_clusters));
      if (!sc_patterns.empty())
        counts = parse_counts(sc_patterns);
      else
        for (double a : parse_alpha_range(sc_alpha))
          counts.push_back(
              static_cast<std::uint64_t>(std::llround(a * scale)));
      std::cout << "# subclique clusters=" << sc_clusters
                << " per-cluster=" << sc_per_cluster << " rho=" << sc_rho
                << " trials=" << sc_trials << " threads=" << threads
                << " seed=" << seed << " (alpha scale " << scale << ")"
                << std::endl;
      for (auto m : counts) {
        auto res = subclique_probe(sc_per_cluster, sc_clusters, m, sc_rho,
                                   sc_trials, seed, threads);
        std::cout << "M=" << m << " alpha=" << double(m) / scale
                  << " probability=" << res.probability
                  << " stderr=" << res.std_error
                  << " realized-rho=" << res.realized_rho << " bound="
                  << theory::subclique_lower_bound(sc_per_cluster, sc_clusters,
                                                   m, res.realized_rho)
                  << std::endl;
      }
      return 0;
    }

    if (*theory_cmd) {
      if (rho_opt->count() > 0) th_rho = th_rho_val;
      const int picked = int(!th_constant.empty()) + int(th_recognition) +
                         int(th_subclique) + int(th_exact) + int(th_mc);
      if (picked != 1)
        throw std::invalid_argument(
            "pick exactly one of --constant, --recognition-bound, "
            "--subclique-bound, --exact-recognition, --mc-recognition");
      std::cout.precision(12);
      if (!th_constant.empty()) {
        std::cout << "# theory constant=" << th_constant;
        if (th_rho) std::cout << " rho=" << *th_rho;
        std::cout << std::endl;
        std::cout << theory::eval_constant(th_constant, th_rho) << std::endl;
        return 0;
      }
      if (th_clusters == 0 || th_per_cluster == 0)
        throw std::invalid_argument(
            "bounds need --clusters and --per-cluster");
      if (th_recognition) {
        std::cout << "# theory recognition-bound clusters=" << th_clusters
                  << " per-cluster=" << th_per_cluster
                  << " patterns=" << th_patterns << std::endl;
        std::cout << theory::recognition_lower_bound(th_per_cluster,
                                                     th_clusters, th_patterns)
                  << std::endl;
      } else if (th_subclique) {
        std::cout << "# theory subclique-bound clusters=" << th_clusters
                  << " per-cluster=" << th_per_cluster
                  << " patterns=" << th_patterns << " rho=" << th_rho_val
                  << std::endl;
        std::cout << theory::subclique_lower_bound(
                         th_per_cluster, th_clusters, th_patterns, th_rho_val)
                  << std::endl;
      } else if (th_exact) {
        auto res = theory::exact_recognition_probability(
            th_per_cluster, th_clusters, th_patterns);
        std::cout << "# theory exact-recognition cases=" << res.trials
                  << std::endl;
        std::cout << res.probability << std::endl;
      } else {
        auto res = theory::mc_recognition_probability(
            th_per_cluster, th_clusters, th_patterns, th_mc_trials, seed);
        std::cout << "# theory mc-recognition trials=" << res.trials
                  << " stderr=" << res.std_error << std::endl;
        std::cout << res.probability << std::endl;
      }
      return 0;
    }

    if (*store_cmd) {
      const ModelKind model = model_kind_from_string(so_model);
      NeuronSpace space = so_space.build(model);
      PatternDist dist =
          so_dist.empty()
              ? (model == ModelKind::gb ? PatternDist::gb
                                        : PatternDist::exact_count)
              : pattern_dist_from_string(so_dist);
      double p = so_iid_p > 0
                     ? so_iid_p
                     : std::log(double(space.size())) / space.size();
      std::cout << "# store model=" << so_model << " dist=" << to_string(dist)
                << " n=" << space.size() << " patterns=" << so_patterns
                << " keep-stored=" << (so_drop_stored ? "false" : "true")
                << " seed=" << seed << " out=" << so_out << std::endl;
      auto rng = RngStream::substream(seed, {0xb1, 0, 0});
      AnyNetwork net = build_network(model, space, dist, p, so_active,
                                     so_patterns, !so_drop_stored, rng);
      save(net, std::filesystem::path(so_out), !so_drop_stored);
      std::cout << "wrote " << so_out << std::endl;
      return 0;
    }

    if (*recall_cmd) {
      AnyNetwork net = load(std::filesystem::path(rc_network));
      const NeuronSpace& space = space_of(net);
      const ModelKind model = model_of(net);
      RetrievalPolicy policy = rc_policy.build();
      auto rng = RngStream::substream(seed, {0x7a, 0, 0, 0});

      std::optional<Pattern> target;
      Pattern input = Pattern::empty(space);
      if (!rc_input.empty() && rc_stored_index >= 0)
        throw std::invalid_argument("--input and --stored-index conflict");
      if (!rc_input.empty()) {
        std::vector<std::uint32_t> act;
        std::istringstream is(rc_input);
        std::string item;
        while (std::getline(is, item, ',')) act.push_back(std::stoul(item));
        input = Pattern(space, std::move(act));
      } else if (rc_stored_index >= 0) {
        const auto& stored = std::visit(
            [](const auto& n) -> const std::vector<Pattern>& {
              return n.stored();
            },
            net);
        if (std::size_t(rc_stored_index) >= stored.size())
          throw std::invalid_argument("--stored-index out of range "
                                      "(was the file saved with the stored "
                                      "set?)");
        target = stored[rc_stored_index];
        input = erase(*target, rc_erase.build(model), rng);
      } else {
        throw std::invalid_argument("need --input or --stored-index");
      }

      std::cout << "# recall network=" << rc_network << " model="
                << to_string(model) << " n=" << space.size()
                << " policy=" << policy.name() << " input-size="
                << input.weight() << " seed=" << seed << std::endl;

      auto print_pattern = [&](const Pattern& p) {
        std::cout << '{';
        for (std::size_t i = 0; i < p.active().size(); ++i)
          std::cout << (i ? "," : "") << p.active()[i];
        std::cout << '}';
      };

      if (policy.kind == RetrievalPolicy::Kind::exhaustive) {
        std::uint32_t want = policy.target_size;
        if (want == 0 && target) want = target->weight();
        if (want == 0 && space.has_layout()) want = space.clusters();
        if (want == 0)
          throw std::invalid_argument("exhaustive recall needs --target-size");
        auto res =
            retrieve_exhaustive(net, input, want, policy.max_candidates, rng);
        switch (res.status) {
          case ExhaustiveResult::Status::found:
            std::cout << "found (" << res.completions << " completions): ";
            print_pattern(*res.pattern);
            std::cout << std::endl;
            if (target)
              std::cout << "matches stored target: "
                        << (*res.pattern == *target ? "yes" : "no")
                        << std::endl;
            break;
          case ExhaustiveResult::Status::not_found:
            std::cout << "not-found: no completion spans a stored clique"
                      << std::endl;
            break;
          case ExhaustiveResult::Status::capacity_exceeded:
            std::cout << "capacity-exceeded: candidate space beyond budget"
                      << std::endl;
            break;
        }
        return 0;
      }

      auto traj = iterate(net, input, policy, rc_max_iters);
      for (std::size_t t = 0; t < traj.states.size(); ++t) {
        std::cout << "t=" << t << " |active|=" << traj.states[t].weight()
                  << ' ';
        if (traj.states[t].weight() <= 32) print_pattern(traj.states[t]);
        std::cout << std::endl;
      }
      switch (traj.outcome) {
        case Trajectory::Outcome::converged:
          std::cout << "converged at step " << traj.converged_at << std::endl;
          break;
        case Trajectory::Outcome::cycle:
          std::cout << "cycle: entry " << traj.cycle_entry << ", period "
                    << traj.cycle_period << std::endl;
          break;
        case Trajectory::Outcome::truncated:
          std::cout << "truncated after " << traj.iterations() << " steps"
                    << std::endl;
          break;
      }
      if (target)
        std::cout << "matches stored target: "
                  << (traj.final_state() == *target ? "yes" : "no")
                  << std::endl;
      return 0;
    }

    if (*plot_cmd) {
      std::cout << "# plot out=" << pl_out << " csv=";
      for (std::size_t i = 0; i < pl_csvs.size(); ++i)
        std::cout << (i ? "," : "") << pl_csvs[i];
      std::cout << std::endl;
      std::vector<std::filesystem::path> paths(pl_csvs.begin(),
                                               pl_csvs.end());
      emit_plot_script(paths, pl_out);
      std::cout << "wrote " << pl_out << std::endl;
      return 0;
    }

    if (*self_cmd) {
      std::cout << "# selftest seed=" << seed << " quick="
                << (quick ? "true" : "false") << std::endl;
      auto results = selfcheck::run_all(seed, quick);
      bool all_ok = true;
      for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " ("
                  << r.detail << ")" << std::endl;
        all_ok = all_ok && r.passed;
      }
      return all_ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
