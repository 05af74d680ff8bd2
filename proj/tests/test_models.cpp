#include <doctest.h>

#include "sam/network.hpp"
#include "sam/selfcheck.hpp"

using namespace sam;

TEST_CASE("willshaw store writes the clique and the self loops") {
  NeuronSpace s(5);
  WillshawNetwork net(s);
  net.store(Pattern(s, {0, 1}));
  CHECK(net.weight(0, 1));
  CHECK(net.weight(1, 0));
  CHECK(net.weight(0, 0));
  CHECK(net.weight(1, 1));
  for (std::uint32_t i = 0; i < 5; ++i)
    for (std::uint32_t j = 0; j < 5; ++j)
      if (i > 1 || j > 1) CHECK(!net.weight(i, j));
  CHECK(net.stored_count() == 1);
}

TEST_CASE("willshaw weights are monotone under further stores") {
  NeuronSpace s(5);
  WillshawNetwork net(s);
  net.store(Pattern(s, {0, 1}));
  net.store(Pattern(s, {1, 2}));
  CHECK(net.weight(0, 1));
  CHECK(net.weight(1, 2));
  CHECK(!net.weight(0, 2));
  CHECK(net.weight(0, 0));
  CHECK(net.weight(1, 1));
  CHECK(net.weight(2, 2));
}

TEST_CASE("amari counts accumulate") {
  NeuronSpace s(5);
  AmariNetwork net(s);
  net.store(Pattern(s, {0, 1}));
  net.store(Pattern(s, {0, 1}));
  CHECK(net.weight(0, 1) == 2);
  CHECK(net.weight(1, 0) == 2);
  CHECK(net.weight(0, 0) == 0);  // diagonal excluded by definition
}

TEST_CASE("store rejects foreign spaces and malformed gb patterns") {
  NeuronSpace a(5), b(6);
  WillshawNetwork net(a);
  CHECK_THROWS_AS(net.store(Pattern(b, {0})), std::invalid_argument);

  NeuronSpace g(2, 2);
  GBNetwork gb(g);
  CHECK_THROWS_AS(gb.store(Pattern(g, {0, 1})), std::invalid_argument);
  gb.store(Pattern(g, {0, 2}));  // one per cluster: fine
}

TEST_CASE("amari field examples") {
  NeuronSpace s(5);
  AmariNetwork net(s);
  CHECK(net.field(Pattern(s, {1}), 0) == 0);  // empty network
  net.store(Pattern(s, {0, 1}));
  CHECK(net.field(Pattern(s, {1}), 0) == 1);
  net.store(Pattern(s, {0, 1}));
  CHECK(net.field(Pattern(s, {1}), 0) == 2);
  // the self term never contributes
  CHECK(net.field(Pattern(s, {0, 1}), 0) == 2);
}

TEST_CASE("willshaw score includes the self term") {
  NeuronSpace s(5);
  WillshawNetwork net(s);
  net.store(Pattern(s, {0, 1}));
  CHECK(net.score(Pattern(s, {0}), 0) == 1);
  CHECK(net.score(Pattern(s, {0, 1}), 0) == 2);
  net.store(Pattern(s, {1, 2}));
  CHECK(net.score(Pattern(s, {0, 2}), 1) == 2);
}

TEST_CASE("gb field and som score hand values") {
  NeuronSpace s(2, 2);
  GBNetwork net(s);
  CHECK(net.field(Pattern(s, {0, 2}), 0) == 0);  // empty network

  net.store(Pattern(s, {0, 2}));  // {(0,0),(1,0)}
  // state = message: every member sees the full clique plus itself
  CHECK(net.field(Pattern(s, {0, 2}), 0) == 2);
  CHECK(net.field(Pattern(s, {0, 2}), 2) == 2);

  // second message sharing neuron (0,0)
  net.store(Pattern(s, {0, 3}));
  Pattern state(s, {0, 2, 3});
  CHECK(net.field(state, 0) == 3);  // (1,0), (1,1) and the self term
  CHECK(net.field(state, 1) == 0);  // (0,1) never stored

  SUBCASE("som score counts covered clusters") {
    Pattern all(s, {0, 1, 2, 3});
    CHECK(net.som_score(all, 0) == 2);
    CHECK(net.som_score(all, 1) == 0);  // never stored
    CHECK(net.som_score(Pattern::empty(s), 0) == 0);
  }
}

TEST_CASE("recognition examples") {
  NeuronSpace s(2, 2);
  GBNetwork net(s);
  net.store(Pattern(s, {0, 2}));
  CHECK(net.recognize(Pattern(s, {0, 2})));
  CHECK(!net.recognize(Pattern(s, {0, 3})));  // missing edge

  NeuronSpace f(5);
  WillshawNetwork w(f);
  w.store(Pattern(f, {0, 1, 2}));
  CHECK(w.recognize(Pattern(f, {0, 1, 2})));
  CHECK(w.recognize(Pattern(f, {0, 1})));   // sub-clique of a stored message
  CHECK(w.recognize(Pattern::empty(f)));    // vacuous
  CHECK(!w.recognize(Pattern(f, {0, 3})));
}

TEST_CASE("model property suites") {
  CHECK(selfcheck::clipping_equivalence(150, 2024).passed);
  CHECK(selfcheck::gb_willshaw_restriction(150, 2024).passed);
  CHECK(selfcheck::store_order_independence(80, 2024).passed);
  CHECK(selfcheck::dense_reference_equivalence(150, 2024).passed);
  CHECK(selfcheck::stored_always_recognized(50, 2024).passed);
}
