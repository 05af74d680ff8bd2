#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sam/theory.hpp"

#if SAMSIM_HAVE_MPFR
#include <gmp.h>
#include <mpfr.h>
#endif

using namespace sam;

TEST_CASE("constant values frozen from high-precision arithmetic") {
  CHECK(theory::amari_upper() == doctest::Approx(0.45867515).epsilon(1e-7));
  CHECK(std::abs(theory::amari_upper() - 0.4586751453870818910) < 1e-15);
  CHECK(theory::amari_stability() ==
        doctest::Approx(0.13533528).epsilon(1e-7));
  CHECK(std::abs(theory::amari_stability() - 0.1353352832366126919) < 1e-15);
  // identity at rho = 0, bit-exact
  CHECK(theory::willshaw_wta(0.0) == theory::amari_upper());
  CHECK(theory::gb_wta(0.25) == theory::willshaw_wta(0.25));
  CHECK(theory::wrong_message_alpha() == 2.0);
  CHECK(theory::eval_constant("willshaw-wta", 0.5) ==
        doctest::Approx(-std::log(1.0 - std::exp(-2.0))).epsilon(1e-14));
  CHECK_THROWS_AS(theory::eval_constant("no-such-constant", {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(theory::willshaw_wta(1.0), std::invalid_argument);
  CHECK_THROWS_AS(theory::amari_erasure(-0.1), std::invalid_argument);
}

TEST_CASE("constants stay positive and finite over the rho range") {
  for (double rho = 0.0; rho < 0.999; rho += 0.037) {
    for (double v : {theory::amari_erasure(rho), theory::willshaw_wta(rho),
                     theory::gb_wta(rho)}) {
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
    }
  }
}

#if SAMSIM_HAVE_MPFR
namespace {

/// All closed forms recomputed at 256-bit precision.
double mpfr_constant(const std::string& name, double rho) {
  mpfr_t r, t, u;
  mpfr_inits2(256, r, t, u, nullptr);
  if (name == "amari-stability") {
    mpfr_set_d(t, -2.0, MPFR_RNDN);
    mpfr_exp(r, t, MPFR_RNDN);
  } else if (name == "amari-upper" || name == "willshaw-wta") {
    // -log(1 - e^{-1/(1-rho)})
    mpfr_set_d(t, 1.0 - rho, MPFR_RNDN);
    mpfr_d_div(t, -1.0, t, MPFR_RNDN);
    mpfr_exp(t, t, MPFR_RNDN);
    mpfr_d_sub(t, 1.0, t, MPFR_RNDN);
    mpfr_log(r, t, MPFR_RNDN);
    mpfr_neg(r, r, MPFR_RNDN);
  } else if (name == "amari-erasure") {
    // (1-rho) e^{-(1 + 1/(1+rho))}
    mpfr_set_d(t, 1.0 + rho, MPFR_RNDN);
    mpfr_d_div(t, 1.0, t, MPFR_RNDN);
    mpfr_add_d(t, t, 1.0, MPFR_RNDN);
    mpfr_neg(t, t, MPFR_RNDN);
    mpfr_exp(t, t, MPFR_RNDN);
    mpfr_mul_d(r, t, 1.0 - rho, MPFR_RNDN);
  } else {
    REQUIRE(false);
  }
  double out = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clears(r, t, u, nullptr);
  return out;
}

}  // namespace

TEST_CASE("256-bit cross-check of the closed forms") {
  CHECK(std::abs(theory::amari_stability() -
                 mpfr_constant("amari-stability", 0)) < 1e-16);
  CHECK(std::abs(theory::amari_upper() - mpfr_constant("amari-upper", 0)) <
        1e-16);
  for (double rho : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9}) {
    CHECK(std::abs(theory::willshaw_wta(rho) -
                   mpfr_constant("willshaw-wta", rho)) <=
          2e-16 * theory::willshaw_wta(rho) + 1e-18);
    CHECK(std::abs(theory::amari_erasure(rho) -
                   mpfr_constant("amari-erasure", rho)) <=
          2e-16 * theory::amari_erasure(rho) + 1e-18);
  }
}

TEST_CASE("d^L against exact rational arithmetic") {
  // d = 1 - (1 - 1/l^2)^M as an exact fraction, then d^L
  auto exact_bound = [](unsigned l, unsigned c, unsigned m) {
    mpq_t q, one;
    mpq_inits(q, one, nullptr);
    mpq_set_ui(q, l * l - 1, l * l);  // 1 - 1/l^2
    mpz_pow_ui(mpq_numref(q), mpq_numref(q), m);
    mpz_pow_ui(mpq_denref(q), mpq_denref(q), m);
    mpq_canonicalize(q);
    mpq_set_ui(one, 1, 1);
    mpq_sub(q, one, q);  // d
    mpz_pow_ui(mpq_numref(q), mpq_numref(q), c * (c - 1) / 2);
    mpz_pow_ui(mpq_denref(q), mpq_denref(q), c * (c - 1) / 2);
    mpq_canonicalize(q);
    double out = mpq_get_d(q);
    mpq_clears(q, one, nullptr);
    return out;
  };
  CHECK(std::abs(theory::recognition_lower_bound(10, 3, 100) -
                 exact_bound(10, 3, 100)) < 1e-14);
  CHECK(std::abs(theory::recognition_lower_bound(16, 4, 500) -
                 exact_bound(16, 4, 500)) < 1e-14);
  CHECK(std::abs(theory::recognition_lower_bound(3, 5, 7) -
                 exact_bound(3, 5, 7)) < 1e-14);
}
#endif  // SAMSIM_HAVE_MPFR

TEST_CASE("recognition bound examples") {
  CHECK(theory::recognition_lower_bound(10, 3, 0) == 0.0);
  const double d = theory::edge_density(10, 100);
  CHECK(d == doctest::Approx(1.0 - std::pow(0.99, 100)).epsilon(1e-14));
  CHECK(theory::recognition_lower_bound(10, 3, 100) ==
        doctest::Approx(d * d * d).epsilon(1e-14));
  // c = 2 is the single-edge case
  CHECK(theory::recognition_lower_bound(10, 2, 100) ==
        doctest::Approx(d).epsilon(1e-14));
}

TEST_CASE("recognition bound is monotone in M and c") {
  double prev = -1;
  for (std::uint64_t m : {1, 10, 100, 1000, 10000}) {
    double v = theory::recognition_lower_bound(16, 4, m);
    CHECK(v > prev);
    prev = v;
  }
  for (std::uint32_t c = 2; c < 10; ++c)
    CHECK(theory::recognition_lower_bound(16, c + 1, 500) <
          theory::recognition_lower_bound(16, c, 500));
}

TEST_CASE("subclique bound examples") {
  CHECK(theory::subclique_lower_bound(10, 4, 100, 0.0) ==
        doctest::Approx(theory::recognition_lower_bound(10, 4, 100))
            .epsilon(1e-14));
  CHECK(theory::subclique_lower_bound(10, 4, 100, 1.0) == 1.0);
  // r(4, 0.5) = 0.25*16 + 2*1/2 = 5
  CHECK(theory::subclique_edge_count(4, 0.5) == doctest::Approx(5.0));
  const double d = theory::edge_density(10, 100);
  CHECK(theory::subclique_lower_bound(10, 4, 100, 0.5) ==
        doctest::Approx(std::pow(d, 5.0)).epsilon(1e-13));
}

TEST_CASE("r(c, rho) boundary identities and tail monotonicity") {
  for (std::uint32_t c = 2; c <= 9; ++c) {
    CHECK(theory::subclique_edge_count(c, 0.0) ==
          doctest::Approx(c * (c - 1) / 2.0));
    CHECK(theory::subclique_edge_count(c, 1.0) == doctest::Approx(0.0));
    // r is unimodal with its peak at rho = 1/(2c); it decreases beyond that
    double prev = theory::subclique_edge_count(c, 1.0 / (2.0 * c));
    for (double rho = 1.0 / (2.0 * c) + 0.05; rho <= 1.0; rho += 0.05) {
      double cur = theory::subclique_edge_count(c, rho);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("exact enumeration oracle") {
  auto res = theory::exact_recognition_probability(2, 2, 1);
  CHECK(res.exact);
  CHECK(res.probability == 0.25);  // 4 of the 16 cases recognize
  CHECK(res.trials == 16);

  auto zero = theory::exact_recognition_probability(2, 2, 0);
  CHECK(zero.probability == 0.0);

  // the two-message single-edge case: P = 1 - (3/4)^2
  auto two = theory::exact_recognition_probability(2, 2, 2);
  CHECK(two.probability == doctest::Approx(7.0 / 16.0).epsilon(1e-14));

  CHECK_THROWS_AS(theory::exact_recognition_probability(64, 8, 1000),
                  std::invalid_argument);
}

TEST_CASE("enumeration dominates the positive-association bound") {
  for (unsigned m : {1, 2, 3, 4}) {
    auto res = theory::exact_recognition_probability(2, 2, m);
    CHECK(res.probability >= theory::recognition_lower_bound(2, 2, m) - 1e-12);
    auto res3 = theory::exact_recognition_probability(2, 3, m);
    CHECK(res3.probability >=
          theory::recognition_lower_bound(2, 3, m) - 1e-12);
  }
  auto big = theory::exact_recognition_probability(3, 3, 3);
  CHECK(big.probability >= theory::recognition_lower_bound(3, 3, 3) - 1e-12);
}

TEST_CASE("monte carlo agrees with the enumerator at the tiny point") {
  auto exact = theory::exact_recognition_probability(2, 2, 1);
  auto mc = theory::mc_recognition_probability(2, 2, 1, 20000, 99);
  CHECK(std::abs(mc.probability - exact.probability) <= 3 * mc.std_error);
}

TEST_CASE("d^L trend at the critical load scaling") {
  // M = alpha * l^2 * ln(c) with c = round(ln l): below the transition the
  // bound sinks toward 0, above it climbs toward 1
  auto bound_at = [](double alpha, std::uint32_t l) {
    const std::uint32_t c =
        static_cast<std::uint32_t>(std::lround(std::log(double(l))));
    const auto m = static_cast<std::uint64_t>(
        std::llround(alpha * double(l) * double(l) * std::log(double(c))));
    return theory::recognition_lower_bound(l, c, m);
  };
  const std::uint32_t grid[] = {64, 256, 1024, 4096};
  double low_prev = 1.0, high_prev = 0.0;
  for (auto l : grid) {
    double low = bound_at(1.5, l);
    double high = bound_at(2.5, l);
    CHECK(low < low_prev);
    CHECK(high > high_prev);
    low_prev = low;
    high_prev = high;
  }
  CHECK(low_prev < 0.30);
  CHECK(high_prev > 0.80);
}
