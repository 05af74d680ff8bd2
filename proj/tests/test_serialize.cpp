#include <doctest.h>

#include <sstream>

#include "sam/experiments.hpp"
#include "sam/serialize.hpp"

using namespace sam;

namespace {

AnyNetwork sample_network(ModelKind model, bool retain = true) {
  RngStream rng(31 + static_cast<int>(model));
  if (model == ModelKind::gb) {
    NeuronSpace s(4, 16);
    return build_network(model, s, PatternDist::gb, 0, 0, 25, retain, rng);
  }
  NeuronSpace s(48);
  return build_network(model, s, PatternDist::exact_count, 0, 5, 25, retain,
                       rng);
}

std::string bytes_of(const AnyNetwork& net, bool with_stored = true) {
  std::ostringstream out;
  save(net, out, with_stored);
  return out.str();
}

}  // namespace

TEST_CASE("round trip reproduces each model exactly") {
  for (auto model :
       {ModelKind::amari, ModelKind::willshaw, ModelKind::gb}) {
    AnyNetwork net = sample_network(model);
    std::stringstream io(bytes_of(net));
    AnyNetwork back = load(io);
    CHECK(net == back);
    // and the full byte stream is reproduced as well
    CHECK(bytes_of(back) == bytes_of(net));
  }
}

TEST_CASE("round trip without the stored set keeps the weights") {
  AnyNetwork net = sample_network(ModelKind::willshaw);
  std::stringstream io(bytes_of(net, false));
  AnyNetwork back = load(io);
  CHECK(stored_count_of(back) == stored_count_of(net));
  const auto& w0 = std::get<WillshawNetwork>(net);
  const auto& w1 = std::get<WillshawNetwork>(back);
  CHECK(w1.stored().empty());
  for (std::uint32_t i = 0; i < w0.space().size(); ++i)
    CHECK(w0.row(i).size() == w1.row(i).size());
  CHECK(bytes_of(w1, false) == bytes_of(w0, false));
}

TEST_CASE("each load failure has its own error kind") {
  using Kind = SerializeError::Kind;
  const std::string good = bytes_of(sample_network(ModelKind::willshaw));

  auto expect_kind = [](std::string data, Kind kind) {
    std::stringstream io(std::move(data));
    try {
      load(io);
      FAIL_CHECK("load unexpectedly succeeded");
    } catch (const SerializeError& e) {
      CHECK(e.kind() == kind);
    }
  };

  SUBCASE("magic mismatch") {
    std::string bad = good;
    bad[0] = 'X';
    expect_kind(bad, Kind::magic_mismatch);
  }
  SUBCASE("version mismatch") {
    std::string bad = good;
    bad[4] = 9;
    expect_kind(bad, Kind::version_mismatch);
  }
  SUBCASE("truncation") {
    expect_kind(good.substr(0, good.size() / 2), Kind::truncated);
    expect_kind(good.substr(0, 10), Kind::truncated);
  }
  SUBCASE("trailing bytes") {
    expect_kind(good + "junk", Kind::dimension_mismatch);
  }
  SUBCASE("inconsistent layout") {
    std::string bad = good;
    bad[15] = 3;  // first byte of the c field: c*l no longer equals n
    expect_kind(bad, Kind::dimension_mismatch);
  }
  SUBCASE("io error on a missing path") {
    CHECK_THROWS_AS(load(std::filesystem::path("/nonexistent/p.samn")),
                    SerializeError);
  }
}

TEST_CASE("willshaw file size follows the packed-triangle arithmetic") {
  const std::uint32_t n = 2048;
  NeuronSpace s(n);
  WillshawNetwork net(s, /*retain_stored=*/false);
  RngStream rng(8);
  for (int i = 0; i < 100; ++i) net.store(gen_exact_count(s, 8, rng));

  const std::string bytes = bytes_of(AnyNetwork(net), false);
  // header: magic + version + model + flags + 4 u64 fields
  std::size_t expect = 4 + 1 + 1 + 1 + 4 * 8;
  for (std::uint32_t i = 0; i < n; ++i) expect += (n - i + 7) / 8;
  CHECK(bytes.size() == expect);
}

TEST_CASE("gb file size follows the block arithmetic") {
  NeuronSpace s(8, 256);
  GBNetwork net(s, false);
  RngStream rng(9);
  for (int i = 0; i < 50; ++i) net.store(gen_gb(s, rng));
  const std::string bytes = bytes_of(AnyNetwork(net), false);
  const std::size_t header = 4 + 1 + 1 + 1 + 4 * 8;
  const std::size_t blocks = 28 * (256 * 256 / 8);
  const std::size_t self_bits = 2048 / 8;
  CHECK(bytes.size() == header + blocks + self_bits);
}
