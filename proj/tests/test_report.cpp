#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "sam/report.hpp"

using namespace sam;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("samsim_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

ExperimentSpec small_spec(std::uint64_t seed) {
  ExperimentSpec spec;
  spec.model = ModelKind::willshaw;
  spec.space = NeuronSpace(64);
  spec.dist = PatternDist::exact_count;
  spec.active_count = 4;
  spec.pattern_counts = {40, 10};
  spec.erasure = ErasureSpec::count(2);
  spec.policy = RetrievalPolicy::wta_max();
  spec.trials = 40;
  spec.batch_size = 20;
  spec.seed = seed;
  return spec;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("csv write/read round trip at 9 significant digits") {
  TempDir tmp;
  auto spec = small_spec(21);
  auto result = run_retrieval_sweep(spec);
  auto rows = rows_from_result(spec, result);
  const auto csv = tmp.path / "a.csv";
  write_results(csv, "config line", rows, false);

  auto back = read_results(csv);
  REQUIRE(back.size() == rows.size());
  auto g9 = [](double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.9g", v);
    return std::string(b);
  };
  // rows come back sorted by M
  CHECK(back[0].pattern_count == 10);
  CHECK(back[1].pattern_count == 40);
  for (const auto& r : back) {
    const auto& orig =
        rows[rows[0].pattern_count == r.pattern_count ? 0 : 1];
    CHECK(r.model == orig.model);
    CHECK(r.policy == orig.policy);
    CHECK(r.n == orig.n);
    CHECK(r.trials == orig.trials);
    CHECK(g9(r.error_rate) == g9(orig.error_rate));
    CHECK(g9(r.efficiency) == g9(orig.efficiency));
    CHECK(g9(r.alpha) == g9(orig.alpha));
    CHECK(r.seed == orig.seed);
  }

  const std::string text = slurp(csv);
  CHECK(text.rfind("# config line\n", 0) == 0);
  CHECK(text.find(kCsvHeader) != std::string::npos);
}

TEST_CASE("empty result writes a header-only file") {
  TempDir tmp;
  const auto csv = tmp.path / "empty.csv";
  write_results(csv, "nothing", {}, false);
  CHECK(read_results(csv).empty());
  const std::string text = slurp(csv);
  CHECK(text == std::string("# nothing\n") + kCsvHeader + "\n");
}

TEST_CASE("append concatenates rows under a single header") {
  TempDir tmp;
  const auto csv = tmp.path / "appended.csv";
  auto spec = small_spec(3);
  auto rows = rows_from_result(spec, run_retrieval_sweep(spec));
  write_results(csv, "first", rows, false);
  auto spec2 = small_spec(4);
  auto rows2 = rows_from_result(spec2, run_retrieval_sweep(spec2));
  write_results(csv, "second", rows2, true);

  CHECK(read_results(csv).size() == rows.size() + rows2.size());
  const std::string text = slurp(csv);
  std::size_t headers = 0, pos = 0;
  while ((pos = text.find("model,policy", pos)) != std::string::npos) {
    ++headers;
    pos += 1;
  }
  CHECK(headers == 1);
}

TEST_CASE("plot script covers every series and only emitted columns") {
  TempDir tmp;
  std::vector<std::filesystem::path> csvs;
  const char* policies[] = {"wta-max", "wta-kth", "input-count", "fixed"};
  for (int i = 0; i < 4; ++i) {
    auto spec = small_spec(50 + i);
    if (std::string(policies[i]) == "wta-kth")
      spec.policy = RetrievalPolicy::wta_kth(4);
    else if (std::string(policies[i]) == "input-count")
      spec.policy = RetrievalPolicy::input_count();
    else if (std::string(policies[i]) == "fixed")
      spec.policy = RetrievalPolicy::fixed(2);
    auto rows = rows_from_result(spec, run_retrieval_sweep(spec));
    auto p = tmp.path / (std::string("s") + std::to_string(i) + ".csv");
    write_results(p, "series", rows, false);
    csvs.push_back(p);
  }
  const auto script = tmp.path / "plot.gp";
  emit_plot_script(csvs, script);
  const std::string text = slurp(script);

  // one series per csv and per panel
  std::size_t uses = 0, pos = 0;
  while ((pos = text.find("using", pos)) != std::string::npos) {
    ++uses;
    pos += 1;
  }
  CHECK(uses == 8);

  // every quoted column reference is an emitted column name
  std::set<std::string> columns;
  {
    std::stringstream hs(kCsvHeader);
    std::string col;
    while (std::getline(hs, col, ',')) columns.insert(col);
  }
  pos = 0;
  while ((pos = text.find("using \"", pos)) != std::string::npos) {
    pos += 7;
    const auto mid = text.find('"', pos);          // ...using "M":"err..."
    const auto open2 = text.find('"', mid + 1);
    const auto close2 = text.find('"', open2 + 1);
    CHECK(columns.count(text.substr(pos, mid - pos)) == 1);
    CHECK(columns.count(text.substr(open2 + 1, close2 - open2 - 1)) == 1);
  }

  // regeneration is byte-identical
  const auto script2 = tmp.path / "plot2.gp";
  emit_plot_script(csvs, script2);
  CHECK(slurp(script2) == text);

  CHECK_THROWS(emit_plot_script({tmp.path / "missing.csv"},
                                tmp.path / "x.gp"));
}
