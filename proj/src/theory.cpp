#include "sam/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sam/gb.hpp"
#include "sam/pattern.hpp"
#include "sam/rng.hpp"
#include "sam/space.hpp"

namespace sam::theory {

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw std::invalid_argument("rho must be in [0,1)");
}

}  // namespace

double amari_stability() { return std::exp(-2.0); }

double amari_erasure(double rho) {
  check_rho(rho);
  return (1.0 - rho) * std::exp(-(1.0 + 1.0 / (1.0 + rho)));
}

double amari_upper() { return -std::log1p(-std::exp(-1.0)); }

double willshaw_wta(double rho) {
  check_rho(rho);
  return -std::log1p(-std::exp(-1.0 / (1.0 - rho)));
}

double gb_wta(double rho) { return willshaw_wta(rho); }

double wrong_message_alpha() { return 2.0; }

double eval_constant(const std::string& name, std::optional<double> rho) {
  auto need_rho = [&]() -> double {
    if (!rho) throw std::invalid_argument(name + " needs --rho");
    return *rho;
  };
  if (name == "amari-stability") return amari_stability();
  if (name == "amari-erasure") return amari_erasure(need_rho());
  if (name == "amari-upper") return amari_upper();
  if (name == "willshaw-wta") return willshaw_wta(rho.value_or(0.0));
  if (name == "gb-wta") return gb_wta(rho.value_or(0.0));
  if (name == "wrong-message-alpha") return wrong_message_alpha();
  throw std::invalid_argument("unknown constant: " + name);
}

double edge_density(std::uint32_t l, std::uint64_t m) {
  if (l < 2) throw std::invalid_argument("edge_density: l < 2");
  if (m == 0) return 0.0;
  const double q = 1.0 / (double(l) * double(l));
  return -std::expm1(double(m) * std::log1p(-q));
}

double recognition_lower_bound(std::uint32_t l, std::uint32_t c,
                               std::uint64_t m) {
  if (c < 2) throw std::invalid_argument("recognition_lower_bound: c < 2");
  const double d = edge_density(l, m);
  const double edges = double(c) * (double(c) - 1.0) / 2.0;
  if (d == 0.0) return 0.0;
  return std::exp(edges * std::log(d));
}

double subclique_edge_count(std::uint32_t c, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::invalid_argument("subclique_edge_count: rho not in [0,1]");
  const double wrong = (1.0 - rho) * c;
  return rho * (1.0 - rho) * double(c) * double(c) +
         wrong * (wrong - 1.0) / 2.0;
}

double subclique_lower_bound(std::uint32_t l, std::uint32_t c, std::uint64_t m,
                             double rho) {
  const double r = subclique_edge_count(c, rho);
  if (r == 0.0) return 1.0;  // nothing left to complete
  const double d = edge_density(l, m);
  if (d == 0.0) return 0.0;
  return std::exp(r * std::log(d));
}

RecognitionEstimate exact_recognition_probability(std::uint32_t l,
                                                  std::uint32_t c,
                                                  std::uint64_t m,
                                                  std::uint64_t case_guard) {
  if (l < 2 || c < 2)
    throw std::invalid_argument("exact_recognition: need l >= 2, c >= 2");
  RecognitionEstimate out;
  out.exact = true;
  if (m == 0) return out;  // no edges stored, c >= 2 needs at least one

  // message space size l^c; total cases (l^c)^(m+1)
  double msgs_d = std::pow(double(l), double(c));
  if (msgs_d > double(case_guard))
    throw std::invalid_argument("exact_recognition: case space too large");
  const std::uint64_t msgs = static_cast<std::uint64_t>(msgs_d + 0.5);
  double total_d = std::pow(msgs_d, double(m) + 1.0);
  if (total_d > double(case_guard))
    throw std::invalid_argument("exact_recognition: case space too large");

  NeuronSpace space(c, l);
  auto decode = [&](std::uint64_t code) {
    std::vector<std::uint32_t> act(c);
    for (std::uint32_t a = 0; a < c; ++a) {
      act[a] = space.flat_index(a, static_cast<std::uint32_t>(code % l));
      code /= l;
    }
    return Pattern(space, std::move(act));
  };

  GBNetwork net(space, /*retain_stored=*/false);
  std::vector<std::uint64_t> odometer(m, 0);
  std::uint64_t recognized = 0;
  std::uint64_t total = 0;
  for (;;) {
    net.reset();
    for (auto code : odometer) net.store(decode(code));
    for (std::uint64_t q = 0; q < msgs; ++q) {
      ++total;
      if (net.recognize(decode(q))) ++recognized;
    }
    // advance the mixed-radix stored-set counter
    std::size_t pos = 0;
    while (pos < odometer.size() && ++odometer[pos] == msgs) {
      odometer[pos] = 0;
      ++pos;
    }
    if (pos == odometer.size()) break;
  }
  out.probability = double(recognized) / double(total);
  out.trials = total;
  return out;
}

RecognitionEstimate mc_recognition_probability(std::uint32_t l,
                                               std::uint32_t c,
                                               std::uint64_t m,
                                               std::uint64_t trials,
                                               std::uint64_t seed) {
  if (l < 2 || c < 2)
    throw std::invalid_argument("mc_recognition: need l >= 2, c >= 2");
  if (trials == 0) throw std::invalid_argument("mc_recognition: no trials");
  NeuronSpace space(c, l);
  GBNetwork net(space, /*retain_stored=*/false);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = RngStream::substream(seed, {0x6f7261636c65ULL, t});
    net.reset();
    for (std::uint64_t mu = 0; mu < m; ++mu) net.store(gen_gb(space, rng));
    if (net.recognize(gen_gb(space, rng))) ++hits;
  }
  RecognitionEstimate out;
  out.probability = double(hits) / double(trials);
  out.std_error = std::sqrt(out.probability * (1.0 - out.probability) /
                            double(trials));
  out.trials = trials;
  return out;
}

}  // namespace sam::theory
