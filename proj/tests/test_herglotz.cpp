#include <doctest.h>

#include <cmath>

#include "entkit/errors.hpp"
#include "entkit/herglotz.hpp"
#include "entkit/testfns.hpp"

using namespace entkit;

TEST_CASE("additive constant reference points") {
  // value at order 1 vanishes; the small-order limit is ln 2
  CHECK(b_alpha(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b_alpha(1e-6) == doctest::Approx(std::log(2.0)).epsilon(1e-4));
  // half log of 1 + 2^(2/3) at order two thirds: cos term vanishes there
  const double want = 0.5 * std::log(1.0 + std::pow(2.0, 2.0 / 3.0));
  CHECK(b_alpha(2.0 / 3.0) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("boundary phase is bounded and monotone") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    double prev = -1.0;
    for (double lambda : {0.5, 0.6, 1.0, 3.0, 50.0}) {
      const double v = f_alpha(alpha, lambda);
      CHECK(v >= 0.0);
      CHECK(v <= alpha / 2.0 + 1e-15);
      CHECK(v >= prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(f_alpha(0.5, 0.3), argument_error);
}

TEST_CASE("resolvent pair and pole rejection") {
  const auto [rp, rm] = resolvent_pair(0.3, 2.0);
  CHECK(rp == doctest::Approx(1.0 / (0.3 - 0.5 + 2.0)).epsilon(1e-14));
  CHECK(rm == doctest::Approx(1.0 / (0.3 - 0.5 - 2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(resolvent_pair(0.0, 1.0), argument_error);
  CHECK_THROWS_AS(resolvent_pair(1.0, 1.0), argument_error);
}

TEST_CASE("spectral average reproduces the entropy density") {
  for (double alpha : {0.2, 0.5, 0.8}) {
    const TestFunction f = make_renyi(alpha);
    for (double t : {0.1, 0.5, 0.9}) {
      // the semi-infinite tail converges slowest for small alpha
      CHECK(herglotz_eval(alpha, t) ==
            doctest::Approx(f.eval(t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("von neumann specialization matches the direct density") {
  const TestFunction h1 = make_renyi(1.0);
  for (double t : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    CHECK(von_neumann_eval(t) == doctest::Approx(h1.eval(t)).epsilon(1e-9));
  }
}

TEST_CASE("representation domain is enforced") {
  CHECK_THROWS_AS(herglotz_eval(0.01, 0.5), argument_error);
  CHECK_THROWS_AS(herglotz_eval(1.5, 0.5), argument_error);
  CHECK_THROWS_AS(herglotz_eval(0.5, 0.0), argument_error);
  CHECK_THROWS_AS(herglotz_eval(0.5, 1.0), argument_error);
  CHECK_THROWS_AS(von_neumann_eval(-0.1), argument_error);
}
