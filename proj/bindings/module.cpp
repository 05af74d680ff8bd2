#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "sam/dynamics.hpp"
#include "sam/experiments.hpp"
#include "sam/report.hpp"
#include "sam/selfcheck.hpp"
#include "sam/serialize.hpp"
#include "sam/theory.hpp"

namespace py = pybind11;
using namespace sam;

namespace {

/// Python-facing wrapper: owns a stream and exposes the sampling surface.
struct PyRng {
  RngStream stream;
  explicit PyRng(std::uint64_t seed) : stream(seed) {}
};

template <typename Net>
void bind_common_network(py::class_<Net>& cls) {
  cls.def("store", &Net::store, py::arg("pattern"))
      .def_property_readonly("space", &Net::space)
      .def_property_readonly("stored_count", &Net::stored_count)
      .def_property_readonly(
          "stored", [](const Net& n) { return n.stored(); })
      .def("reset", &Net::reset)
      .def("save",
           [](const Net& n, const std::filesystem::path& path,
              bool include_stored) {
             save(AnyNetwork(n), path, include_stored);
           },
           py::arg("path"), py::arg("include_stored") = true)
      .def("save_bytes",
           [](const Net& n, bool include_stored) {
             std::ostringstream out;
             save(AnyNetwork(n), out, include_stored);
             return py::bytes(out.str());
           },
           py::arg("include_stored") = true)
      .def("__eq__", [](const Net& a, const Net& b) { return a == b; });
}

AnyNetwork load_any(py::object src) {
  if (py::isinstance<py::bytes>(src)) {
    std::istringstream in(src.cast<std::string>());
    return load(in);
  }
  return load(src.cast<std::filesystem::path>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Sparse associative memory models (integer-count, binary, clustered "
      "binary), their retrieval dynamics, capacity theory, and Monte Carlo "
      "experiment harness.";

  py::register_exception<SerializeError>(m, "SerializeError");

  py::class_<NeuronSpace>(m, "NeuronSpace")
      .def(py::init<std::uint32_t>(), py::arg("n"))
      .def(py::init<std::uint32_t, std::uint32_t>(), py::arg("clusters"),
           py::arg("cluster_size"))
      .def_property_readonly("size", &NeuronSpace::size)
      .def_property_readonly("has_layout", &NeuronSpace::has_layout)
      .def_property_readonly(
          "clusters",
          [](const NeuronSpace& s) -> py::object {
            return s.has_layout() ? py::cast(s.clusters()) : py::none();
          })
      .def_property_readonly(
          "cluster_size",
          [](const NeuronSpace& s) -> py::object {
            return s.has_layout() ? py::cast(s.cluster_size()) : py::none();
          })
      .def("flat_index", &NeuronSpace::flat_index)
      .def("cluster_of", &NeuronSpace::cluster_of)
      .def("offset_of", &NeuronSpace::offset_of)
      .def("__eq__",
           [](const NeuronSpace& a, const NeuronSpace& b) { return a == b; })
      .def("__repr__", [](const NeuronSpace& s) {
        std::ostringstream os;
        os << "NeuronSpace(n=" << s.size();
        if (s.has_layout())
          os << ", clusters=" << s.clusters()
             << ", cluster_size=" << s.cluster_size();
        os << ")";
        return os.str();
      });

  py::class_<Pattern>(m, "Pattern")
      .def(py::init<NeuronSpace, std::vector<std::uint32_t>>(),
           py::arg("space"), py::arg("active"))
      .def_static("empty", &Pattern::empty)
      .def_property_readonly("space", &Pattern::space)
      .def_property_readonly("active",
                             [](const Pattern& p) { return p.active(); })
      .def_property_readonly("weight", &Pattern::weight)
      .def_property_readonly("is_gb_valid", &Pattern::is_gb_valid)
      .def("contains", &Pattern::contains)
      .def("__len__", &Pattern::weight)
      .def("__eq__",
           [](const Pattern& a, const Pattern& b) { return a == b; })
      .def("__repr__", [](const Pattern& p) {
        std::ostringstream os;
        os << "Pattern({";
        for (std::size_t i = 0; i < p.active().size(); ++i)
          os << (i ? "," : "") << p.active()[i];
        os << "})";
        return os.str();
      });

  py::class_<PyRng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("substream",
                  [](std::uint64_t master, std::vector<std::uint64_t> path) {
                    PyRng r(0);
                    std::uint64_t s = mix64(master ^ 0x53414d53494d2121ULL);
                    for (auto p : path) s = mix64(s ^ mix64(p));
                    r.stream = RngStream(s);
                    return r;
                  },
                  py::arg("master"), py::arg("path"))
      .def("below",
           [](PyRng& r, std::uint64_t bound) { return r.stream.below(bound); })
      .def("unit", [](PyRng& r) { return r.stream.unit(); });

  py::enum_<ErasureSpec::Mode>(m, "ErasureMode")
      .value("ACTIVE", ErasureSpec::Mode::active)
      .value("CLUSTER", ErasureSpec::Mode::cluster);

  py::class_<ErasureSpec>(m, "ErasureSpec")
      .def_static("count", &ErasureSpec::count, py::arg("f"),
                  py::arg("mode") = ErasureSpec::Mode::active)
      .def_static("fraction", &ErasureSpec::fraction, py::arg("rho"),
                  py::arg("mode") = ErasureSpec::Mode::active);

  m.def("gen_iid",
        [](const NeuronSpace& s, double p, PyRng& rng) {
          return gen_iid(s, p, rng.stream);
        },
        py::arg("space"), py::arg("p"), py::arg("rng"));
  m.def("gen_exact_count",
        [](const NeuronSpace& s, std::uint32_t c, PyRng& rng) {
          return gen_exact_count(s, c, rng.stream);
        },
        py::arg("space"), py::arg("count"), py::arg("rng"));
  m.def("gen_gb",
        [](const NeuronSpace& s, PyRng& rng) { return gen_gb(s, rng.stream); },
        py::arg("space"), py::arg("rng"));
  m.def("erase",
        [](const Pattern& p, const ErasureSpec& spec, PyRng& rng) {
          return erase(p, spec, rng.stream);
        },
        py::arg("pattern"), py::arg("spec"), py::arg("rng"));

  auto amari = py::class_<AmariNetwork>(m, "AmariNetwork");
  amari.def(py::init<NeuronSpace, bool>(), py::arg("space"),
            py::arg("retain_stored") = true)
      .def("field", &AmariNetwork::field, py::arg("state"), py::arg("i"))
      .def("weight", &AmariNetwork::weight, py::arg("i"), py::arg("j"));
  bind_common_network(amari);

  auto willshaw = py::class_<WillshawNetwork>(m, "WillshawNetwork");
  willshaw
      .def(py::init<NeuronSpace, bool>(), py::arg("space"),
           py::arg("retain_stored") = true)
      .def("score",
           py::overload_cast<const Pattern&, std::uint32_t>(
               &WillshawNetwork::score, py::const_),
           py::arg("state"), py::arg("i"))
      .def("recognize", &WillshawNetwork::recognize, py::arg("pattern"))
      .def("weight", &WillshawNetwork::weight, py::arg("i"), py::arg("j"));
  bind_common_network(willshaw);

  auto gb = py::class_<GBNetwork>(m, "GBNetwork");
  gb.def(py::init<NeuronSpace, bool>(), py::arg("space"),
         py::arg("retain_stored") = true)
      .def("field",
           py::overload_cast<const Pattern&, std::uint32_t>(
               &GBNetwork::field, py::const_),
           py::arg("state"), py::arg("i"))
      .def("som_score",
           py::overload_cast<const Pattern&, std::uint32_t>(
               &GBNetwork::som_score, py::const_),
           py::arg("state"), py::arg("i"))
      .def("recognize", &GBNetwork::recognize, py::arg("pattern"))
      .def("weight", &GBNetwork::weight, py::arg("i"), py::arg("j"));
  bind_common_network(gb);

  m.def("load", &load_any, py::arg("source"),
        "Load a network from a path or bytes; returns the concrete model.");

  py::class_<RetrievalPolicy> policy(m, "RetrievalPolicy");
  policy.def_static("fixed", &RetrievalPolicy::fixed, py::arg("h"))
      .def_static("input_count", &RetrievalPolicy::input_count)
      .def_static("wta_max", &RetrievalPolicy::wta_max)
      .def_static("wta_kth", &RetrievalPolicy::wta_kth, py::arg("k"))
      .def_static("cluster_wta", &RetrievalPolicy::cluster_wta,
                  py::arg("use_som") = true)
      .def_static("sum_of_max", &RetrievalPolicy::sum_of_max)
      .def_static("exhaustive", &RetrievalPolicy::exhaustive,
                  py::arg("target_size"),
                  py::arg("max_candidates") = 1'000'000)
      .def_property_readonly("name", &RetrievalPolicy::name);

  py::enum_<Trajectory::Outcome>(m, "Outcome")
      .value("CONVERGED", Trajectory::Outcome::converged)
      .value("CYCLE", Trajectory::Outcome::cycle)
      .value("TRUNCATED", Trajectory::Outcome::truncated);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("states", &Trajectory::states)
      .def_readonly("outcome", &Trajectory::outcome)
      .def_readonly("converged_at", &Trajectory::converged_at)
      .def_readonly("cycle_entry", &Trajectory::cycle_entry)
      .def_readonly("cycle_period", &Trajectory::cycle_period)
      .def_property_readonly("final_state", &Trajectory::final_state)
      .def_property_readonly("iterations", &Trajectory::iterations);

  m.def("step_amari", &step_amari, py::arg("network"), py::arg("state"),
        py::arg("h"));
  m.def("step_willshaw_threshold", &step_willshaw_threshold,
        py::arg("network"), py::arg("state"), py::arg("h"));
  m.def("step_willshaw_wta", &step_willshaw_wta, py::arg("network"),
        py::arg("state"), py::arg("policy"));
  m.def("step_gb_threshold", &step_gb_threshold, py::arg("network"),
        py::arg("state"), py::arg("h"));
  m.def("step_gb_wta", &step_gb_wta, py::arg("network"), py::arg("state"),
        py::arg("use_som") = true);
  m.def("step_gb_som", &step_gb_som, py::arg("network"), py::arg("state"));

  auto do_iterate = [](py::object net, const Pattern& input,
                       const RetrievalPolicy& pol, std::uint32_t max_iters) {
    if (py::isinstance<AmariNetwork>(net))
      return iterate(AnyNetwork(net.cast<AmariNetwork&>()), input, pol,
                     max_iters);
    if (py::isinstance<WillshawNetwork>(net))
      return iterate(AnyNetwork(net.cast<WillshawNetwork&>()), input, pol,
                     max_iters);
    return iterate(AnyNetwork(net.cast<GBNetwork&>()), input, pol, max_iters);
  };
  m.def("iterate", do_iterate, py::arg("network"), py::arg("input"),
        py::arg("policy"), py::arg("max_iters") = 20);

  py::enum_<ExhaustiveResult::Status>(m, "ExhaustiveStatus")
      .value("FOUND", ExhaustiveResult::Status::found)
      .value("NOT_FOUND", ExhaustiveResult::Status::not_found)
      .value("CAPACITY_EXCEEDED", ExhaustiveResult::Status::capacity_exceeded);

  py::class_<ExhaustiveResult>(m, "ExhaustiveResult")
      .def_readonly("status", &ExhaustiveResult::status)
      .def_readonly("pattern", &ExhaustiveResult::pattern)
      .def_readonly("completions", &ExhaustiveResult::completions);

  m.def("retrieve_exhaustive",
        [](py::object net, const Pattern& partial, std::uint32_t target_size,
           std::uint64_t max_candidates, PyRng& rng) {
          AnyNetwork any = [&]() -> AnyNetwork {
            if (py::isinstance<AmariNetwork>(net))
              return net.cast<AmariNetwork&>();
            if (py::isinstance<WillshawNetwork>(net))
              return net.cast<WillshawNetwork&>();
            return net.cast<GBNetwork&>();
          }();
          return retrieve_exhaustive(any, partial, target_size,
                                     max_candidates, rng.stream);
        },
        py::arg("network"), py::arg("partial"), py::arg("target_size"),
        py::arg("max_candidates") = 1'000'000, py::arg("rng"));

  // theory
  auto th = m.def_submodule("theory", "closed-form constants and bounds");
  th.def("amari_stability", &theory::amari_stability);
  th.def("amari_erasure", &theory::amari_erasure, py::arg("rho"));
  th.def("amari_upper", &theory::amari_upper);
  th.def("willshaw_wta", &theory::willshaw_wta, py::arg("rho"));
  th.def("gb_wta", &theory::gb_wta, py::arg("rho"));
  th.def("wrong_message_alpha", &theory::wrong_message_alpha);
  th.def("eval_constant", &theory::eval_constant, py::arg("name"),
         py::arg("rho") = py::none());
  th.def("edge_density", &theory::edge_density, py::arg("l"), py::arg("m"));
  th.def("recognition_lower_bound", &theory::recognition_lower_bound,
         py::arg("l"), py::arg("c"), py::arg("m"));
  th.def("subclique_edge_count", &theory::subclique_edge_count, py::arg("c"),
         py::arg("rho"));
  th.def("subclique_lower_bound", &theory::subclique_lower_bound,
         py::arg("l"), py::arg("c"), py::arg("m"), py::arg("rho"));

  py::class_<theory::RecognitionEstimate>(m, "RecognitionEstimate")
      .def_readonly("probability", &theory::RecognitionEstimate::probability)
      .def_readonly("std_error", &theory::RecognitionEstimate::std_error)
      .def_readonly("exact", &theory::RecognitionEstimate::exact)
      .def_readonly("trials", &theory::RecognitionEstimate::trials);
  th.def("exact_recognition_probability",
         &theory::exact_recognition_probability, py::arg("l"), py::arg("c"),
         py::arg("m"), py::arg("case_guard") = 200'000'000);
  th.def("mc_recognition_probability", &theory::mc_recognition_probability,
         py::arg("l"), py::arg("c"), py::arg("m"), py::arg("trials"),
         py::arg("seed"));

  // experiments
  py::enum_<ModelKind>(m, "ModelKind")
      .value("AMARI", ModelKind::amari)
      .value("WILLSHAW", ModelKind::willshaw)
      .value("GB", ModelKind::gb);

  py::enum_<PatternDist>(m, "PatternDist")
      .value("IID", PatternDist::iid)
      .value("EXACT", PatternDist::exact_count)
      .value("GB", PatternDist::gb);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("model", &ExperimentSpec::model)
      .def_readwrite("space", &ExperimentSpec::space)
      .def_readwrite("dist", &ExperimentSpec::dist)
      .def_readwrite("iid_p", &ExperimentSpec::iid_p)
      .def_readwrite("active_count", &ExperimentSpec::active_count)
      .def_readwrite("pattern_counts", &ExperimentSpec::pattern_counts)
      .def_readwrite("erasure", &ExperimentSpec::erasure)
      .def_readwrite("policy", &ExperimentSpec::policy)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("batch_size", &ExperimentSpec::batch_size)
      .def_readwrite("max_iters", &ExperimentSpec::max_iters)
      .def_readwrite("seed", &ExperimentSpec::seed)
      .def_readwrite("threads", &ExperimentSpec::threads)
      .def("validate", &ExperimentSpec::validate);

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("pattern_count", &SweepPoint::pattern_count)
      .def_readonly("alpha", &SweepPoint::alpha)
      .def_readonly("rho", &SweepPoint::rho)
      .def_readonly("trials", &SweepPoint::trials)
      .def_readonly("error_rate", &SweepPoint::error_rate)
      .def_readonly("std_error", &SweepPoint::std_error)
      .def_readonly("mean_iterations", &SweepPoint::mean_iterations)
      .def_readonly("cycle_rate", &SweepPoint::cycle_rate)
      .def_readonly("notfound_rate", &SweepPoint::notfound_rate)
      .def_readonly("efficiency", &SweepPoint::efficiency)
      .def_readonly("wall_seconds", &SweepPoint::wall_seconds);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("points", &ExperimentResult::points);

  m.def("run_retrieval_sweep", &run_retrieval_sweep, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("efficiency", &efficiency, py::arg("model"), py::arg("n"),
        py::arg("c"), py::arg("l"), py::arg("m"));
  m.def("message_entropy_bits", &message_entropy_bits, py::arg("model"),
        py::arg("n"), py::arg("c"), py::arg("l"));
  m.def("weight_storage_bits", &weight_storage_bits, py::arg("model"),
        py::arg("n"), py::arg("c"), py::arg("l"), py::arg("m"));

  py::class_<ProbeResult>(m, "ProbeResult")
      .def_readonly("probability", &ProbeResult::probability)
      .def_readonly("std_error", &ProbeResult::std_error)
      .def_readonly("trials", &ProbeResult::trials)
      .def_readonly("realized_rho", &ProbeResult::realized_rho);

  m.def("stability_probe", &stability_probe, py::arg("model"),
        py::arg("space"), py::arg("dist"), py::arg("iid_p"),
        py::arg("active_count"), py::arg("m"), py::arg("policy"),
        py::arg("trials"), py::arg("seed"), py::arg("batch_size") = 100,
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("wrong_message_probe", &wrong_message_probe, py::arg("l"),
        py::arg("c"), py::arg("m"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("subclique_probe", &subclique_probe, py::arg("l"), py::arg("c"),
        py::arg("m"), py::arg("rho"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

  // reports
  py::class_<CsvRow>(m, "CsvRow")
      .def_readonly("model", &CsvRow::model)
      .def_readonly("policy", &CsvRow::policy)
      .def_readonly("pattern_count", &CsvRow::pattern_count)
      .def_readonly("error_rate", &CsvRow::error_rate)
      .def_readonly("std_error", &CsvRow::std_error)
      .def_readonly("efficiency", &CsvRow::efficiency);
  m.def("rows_from_result", &rows_from_result, py::arg("spec"),
        py::arg("result"));
  m.def("write_results", &write_results, py::arg("path"),
        py::arg("config_comment"), py::arg("rows"),
        py::arg("append") = false);
  m.def("read_results", &read_results, py::arg("path"));
  m.def("emit_plot_script", &emit_plot_script, py::arg("csv_paths"),
        py::arg("out_path"));

  // selfcheck
  py::class_<selfcheck::CheckResult>(m, "CheckResult")
      .def_readonly("name", &selfcheck::CheckResult::name)
      .def_readonly("passed", &selfcheck::CheckResult::passed)
      .def_readonly("detail", &selfcheck::CheckResult::detail);
  m.def("selfcheck", &selfcheck::run_all, py::arg("seed"),
        py::arg("quick") = false);
}
