#include <doctest.h>

#include <random>

#include "dcs/curvature.hpp"
#include "dcs/errors.hpp"
#include "dcs/flow.hpp"
#include "support.hpp"

namespace {

using dcs::Background;

const double kClosedForm = 0.5 * std::log(1 + std::sqrt(3.0));

dcs::WeightedSurface uniform_tet(double eta) {
  const auto s = dcs::make_tetrahedron();
  return dcs::WeightedSurface(s, dcs::WeightScheme::uniform(s, 1, eta));
}

dcs::ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const dcs::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return dcs::ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("option validation and name parsing") {
  dcs::FlowOptions o;
  CHECK_NOTHROW(o.validate());
  o.dt = 0;
  CHECK_THROWS_AS(o.validate(), dcs::Error);
  CHECK(dcs::parse_flow_method("rk4") == dcs::FlowMethod::Rk4);
  CHECK(dcs::parse_flow_method("implicit-euler") == dcs::FlowMethod::ImplicitEuler);
  CHECK_THROWS_AS(dcs::parse_flow_method("euler"), dcs::Error);
  CHECK(dcs::flow_status_name(dcs::FlowStatus::Converged) == "Converged");
}

TEST_CASE("hyperbolic closed form by every method") {
  const auto ws = uniform_tet(1.0);
  const Eigen::VectorXd k_bar = Eigen::VectorXd::Constant(4, 1.5 * ref::kPi);
  const dcs::ConformalState s0{Background::Hyperbolic, Eigen::VectorXd::Zero(4)};
  dcs::FlowOptions opts;

  SUBCASE("rk4") {
    const auto tr = dcs::run_extended_ricci(ws, s0, k_bar, opts);
    CHECK(tr.status == dcs::FlowStatus::Converged);
    CHECK(tr.final_error < 1e-9);
    CHECK((tr.final_state.f.array() - kClosedForm).abs().maxCoeff() < 1e-8);
  }
  SUBCASE("implicit euler") {
    opts.method = dcs::FlowMethod::ImplicitEuler;
    opts.dt = 0.5;
    const auto tr = dcs::run_extended_ricci(ws, s0, k_bar, opts);
    CHECK(tr.status == dcs::FlowStatus::Converged);
    CHECK((tr.final_state.f.array() - kClosedForm).abs().maxCoeff() < 1e-8);
  }
  SUBCASE("calabi") {
    const auto tr = dcs::run_calabi(ws, s0, k_bar, opts);
    CHECK(tr.status == dcs::FlowStatus::Converged);
    CHECK((tr.final_state.f.array() - kClosedForm).abs().maxCoeff() < 1e-8);
  }
  SUBCASE("newton") {
    const auto r = dcs::newton_solve(ws, s0, k_bar, opts);
    CHECK(r.converged);
    CHECK(r.iterations <= 10);
    CHECK((r.state.f.array() - kClosedForm).abs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Euclidean flow conserves the sum of u and reaches constant curvature") {
  const auto ws = uniform_tet(1.0);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(4);
  f[0] = std::log(1.2);
  const auto tr = dcs::run_extended_ricci(ws, {Background::Euclidean, f}, Eigen::VectorXd::Constant(4, ref::kPi), {});
  CHECK(tr.status == dcs::FlowStatus::Converged);
  for (double s : tr.sum_u) CHECK(std::abs(s - f.sum()) < 1e-10);
  const Eigen::VectorXd d = tr.final_state.f.array() - tr.final_state.f.mean();
  CHECK(d.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("ordinary flow halts on degeneracy, extended flow goes through") {
  const auto ws = uniform_tet(2.0);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(4);
  f[0] = std::log(0.1);
  const dcs::ConformalState s0{Background::Euclidean, f};
  const Eigen::VectorXd k_bar = Eigen::VectorXd::Constant(4, ref::kPi);
  dcs::FlowOptions opts;
  opts.extended = false;
  CHECK(error_of([&] { dcs::run_extended_ricci(ws, s0, k_bar, opts); }) == dcs::ErrorCode::DegenerateFace);
  CHECK(error_of([&] { dcs::run_calabi(ws, s0, k_bar, opts); }) == dcs::ErrorCode::DegenerateStart);
  CHECK(error_of([&] { dcs::newton_solve(ws, s0, k_bar, opts); }) == dcs::ErrorCode::DegenerateStart);
  opts.extended = true;
  const auto tr = dcs::run_extended_ricci(ws, s0, k_bar, opts);
  CHECK(tr.status == dcs::FlowStatus::Converged);
  CHECK(dcs::evaluate_surface(ws, tr.final_state, false).degenerate_faces.empty());
}

TEST_CASE("infeasible targets are rejected before integrating") {
  const auto ws = uniform_tet(1.0);
  const dcs::ConformalState s0{Background::Euclidean, Eigen::VectorXd::Zero(4)};
  CHECK(error_of([&] { dcs::run_extended_ricci(ws, s0, Eigen::VectorXd::Constant(4, 1.0), {}); }) ==
        dcs::ErrorCode::BadTarget);
  CHECK(error_of([&] { dcs::newton_solve(ws, s0, Eigen::VectorXd::Constant(4, 1.0), {}); }) ==
        dcs::ErrorCode::BadTarget);
}

TEST_CASE("a short t_max ends with TMaxReached and the last sample recorded") {
  const auto ws = uniform_tet(1.0);
  dcs::FlowOptions opts;
  opts.t_max = 0.05;
  const dcs::ConformalState s0{Background::Hyperbolic, Eigen::VectorXd::Zero(4)};
  const auto tr = dcs::run_extended_ricci(ws, s0, Eigen::VectorXd::Constant(4, 1.5 * ref::kPi), opts);
  CHECK(tr.status == dcs::FlowStatus::TMaxReached);
  CHECK(tr.times.back() == doctest::Approx(0.05));
  CHECK(tr.times.size() == tr.states.size());
  CHECK(tr.errors.back() == tr.final_error);
}

TEST_CASE("repeated runs are bitwise identical") {
  const auto s = dcs::make_icosahedron();
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> eta(0.5, 2.0), ff(-0.3, 0.3);
  dcs::WeightScheme scheme = dcs::WeightScheme::uniform(s, 1, 1.0);
  for (const auto& e : s.edges()) scheme.set_eta(e.a, e.b, eta(rng));
  const dcs::WeightedSurface ws(s, scheme);
  Eigen::VectorXd f(12);
  for (int i = 0; i < 12; ++i) f[i] = ff(rng);
  const Eigen::VectorXd k_bar = Eigen::VectorXd::Constant(12, 4 * ref::kPi / 12);
  const auto a = dcs::run_extended_ricci(ws, {Background::Euclidean, f}, k_bar, {});
  const auto b = dcs::run_extended_ricci(ws, {Background::Euclidean, f}, k_bar, {});
  REQUIRE(a.times.size() == b.times.size());
  CHECK(a.final_state.f == b.final_state.f);
  CHECK(a.errors == b.errors);
}
