#include <doctest.h>

#include <cmath>
#include <sstream>

#include "entkit/errors.hpp"
#include "entkit/specops.hpp"
#include "entkit/testfns.hpp"

using namespace entkit;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kLn43 = std::log(4.0 / 3.0);
}  // namespace

TEST_CASE("cutoff projector trace equals the phase-space count") {
  const IntervalSet s =
      make_interval_set({make_interval(0.0, 1.0), make_interval(2.0, 3.0)});
  const double kappa = 40.0;
  const SpectralSystem sys = assemble_cutoff_projector(s, 2.0 * kappa);
  CHECK(sys.matrix.rows() == sys.matrix.cols());
  CHECK(sys.complex_dim == 0);
  CHECK(sys.matrix.trace() ==
        doctest::Approx(kappa * 2.0 / kPi).epsilon(1e-12));
  const SpectrumResult spec = sym_eig(sys);
  CHECK(spec.residual_norm < 1e-10);
  CHECK(spec.eigenvalues(0) <= 1.0 + 1e-8);
  CHECK(spec.eigenvalues(spec.eigenvalues.size() - 1) >= -1e-8);
}

TEST_CASE("projector spectrum is translation invariant") {
  const IntervalSet s = make_interval_set({make_interval(0.0, 1.5)});
  const IntervalSet t = make_interval_set({make_interval(10.0, 11.5)});
  const double k = 70.0;
  const Eigen::VectorXd e1 = sym_eig(assemble_cutoff_projector(s, k)).eigenvalues;
  const Eigen::VectorXd e2 = sym_eig(assemble_cutoff_projector(t, k)).eigenvalues;
  REQUIRE(e1.size() == e2.size());
  CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("projector spectrum is scale invariant at matched cutoff") {
  const IntervalSet s = make_interval_set({make_interval(0.0, 1.0)});
  const IntervalSet w = make_interval_set({make_interval(0.0, 2.0)});
  const Eigen::VectorXd e1 = sym_eig(assemble_cutoff_projector(s, 80.0)).eigenvalues;
  const Eigen::VectorXd e2 = sym_eig(assemble_cutoff_projector(w, 40.0)).eigenvalues;
  REQUIRE(e1.size() == e2.size());
  CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("nonsymmetric input is rejected by the eigensolver") {
  SpectralSystem sys;
  sys.matrix = Eigen::MatrixXd::Zero(3, 3);
  sys.matrix(0, 1) = 1.0;
  CHECK_THROWS_AS(sym_eig(sys), argument_error);
}

TEST_CASE("node caps are enforced") {
  const IntervalSet s = make_interval_set({make_interval(0.0, 1.0)});
  NodesPolicy p;
  p.kind = NodesPolicy::Kind::fixed;
  p.fixed_n = kMaxNodesPerInterval + 1;
  CHECK_THROWS_AS(assemble_cutoff_projector(s, 10.0, p), resource_error);
  // oscillatory policy trips the cap at absurd cutoffs
  CHECK_THROWS_AS(assemble_cutoff_projector(s, 1e5), resource_error);
}

TEST_CASE("cross block singular values reproduce the overlap norm") {
  const CrossBlock block = assemble_cross_block(
      make_interval(0.0, 1.0), make_interval(2.0, 3.0), 160, 160);
  const double s2 = schatten_norm(block, 2.0);
  const double want = kLn43 / (4.0 * kPi * kPi);
  CHECK(s2 * s2 == doctest::Approx(want).epsilon(1e-7));

  // refinement improves the value
  const CrossBlock fine = assemble_cross_block(
      make_interval(0.0, 1.0), make_interval(2.0, 3.0), 220, 220);
  const double s2f = schatten_norm(fine, 2.0);
  CHECK(std::abs(s2f * s2f - want) <= std::abs(s2 * s2 - want) + 1e-15);
}

TEST_CASE("one-point cross block carries the midpoint kernel") {
  const CrossBlock block = assemble_cross_block(
      make_interval(0.0, 1.0), make_interval(2.0, 3.0), 1, 1);
  // single Gauss node sits at each midpoint with weight = length
  const double want = 1.0 / (2.0 * kPi * (0.5 - 2.5));
  CHECK(block.matrix(0, 0) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("cross block rejects touching and overlapping pairs") {
  try {
    assemble_cross_block(make_interval(0.0, 1.0), make_interval(1.0, 2.0), 8, 8);
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::touching);
  }
  try {
    assemble_cross_block(make_interval(0.0, 1.5), make_interval(1.0, 2.0), 8, 8);
    CHECK(false);
  } catch (const geometry_error& e) {
    CHECK(e.which() == geometry_error::kind::overlapping);
  }
}

TEST_CASE("schatten tail decays geometrically") {
  const CrossBlock block = assemble_cross_block(
      make_interval(0.0, 1.0), make_interval(2.0, 3.0), 120, 120);
  const SchattenResult r = schatten_norm_detailed(block, 1.0);
  CHECK(r.value > 0.0);
  CHECK(r.tail_bound >= 0.0);
  CHECK(r.tail_bound < 1e-8 * r.value + 1e-14);
}

TEST_CASE("half-space block is an embedded hermitian operator") {
  const SpectralSystem sys = assemble_pv_block(make_interval(0.0, 1.0), 64);
  CHECK(sys.complex_dim == 64);
  CHECK(sys.matrix.rows() == 128);
  // embedding must itself be symmetric
  CHECK((sys.matrix - sys.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  const Eigen::MatrixXd y = pv_antisymmetric_part(sys);
  CHECK((y + y.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(y.diagonal().cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXcd op = complex_operator(sys);
  CHECK(op.rows() == 64);
  CHECK((op - op.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("half-space block action on constants") {
  // applying to the constant vector approximates 1/2 + i/(2 pi) ln((x-a)/(b-x))
  const int n = 160;
  const SpectralSystem sys = assemble_pv_block(make_interval(0.0, 1.0), n);
  const Eigen::MatrixXcd op = complex_operator(sys);
  Eigen::VectorXcd ones = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    ones(i) = std::sqrt(sys.rules[0].weights[i]);
  }
  const Eigen::VectorXcd img = op * ones;
  // compare on the middle third where the quadrature transform is accurate
  double worst = 0.0;
  for (int i = n / 3; i < 2 * n / 3; ++i) {
    const double x = sys.rules[0].nodes[i];
    const double sw = std::sqrt(sys.rules[0].weights[i]);
    const std::complex<double> want(
        0.5 * sw, sw * std::log(x / (1.0 - x)) / (2.0 * kPi));
    worst = std::max(worst, std::abs(img(i) - want));
  }
  CHECK(worst < 5e-3);
}

TEST_CASE("entropy sums clip rounding excursions and refuse garbage") {
  SpectrumResult spec;
  spec.eigenvalues = Eigen::VectorXd(4);
  spec.eigenvalues << 1.0 + 1e-9, 0.7, 0.2, -1e-9;
  const TestFunction h1 = make_renyi(1.0);
  const EntropySumResult r = entropy_sum_detailed(spec, h1);
  CHECK(r.clipped_low == 1);
  CHECK(r.clipped_high == 1);
  CHECK_FALSE(r.warn);
  CHECK(r.value == doctest::Approx(h1.eval(0.7) + h1.eval(0.2)).epsilon(1e-12));

  spec.eigenvalues << 1.0 + 1e-5, 0.7, 0.2, 0.0;
  CHECK(entropy_sum_detailed(spec, h1).warn);

  spec.eigenvalues << 1.5, 0.7, 0.2, 0.0;
  CHECK_THROWS_AS(entropy_sum(spec, h1), numerical_error);
}

TEST_CASE("spectrum csv has the versioned header") {
  SpectrumResult spec;
  spec.eigenvalues = Eigen::VectorXd(2);
  spec.eigenvalues << 0.75, 0.25;
  std::ostringstream os;
  write_spectrum_csv(os, spec);
  const std::string text = os.str();
  CHECK(text.rfind("# entkit-spectrum-csv v1\n", 0) == 0);
  CHECK(text.find("index,eigenvalue\n") != std::string::npos);
  CHECK(text.find("0,0.75") != std::string::npos);
}
