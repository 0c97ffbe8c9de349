#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mqec/protocol.hpp"

using namespace mqec;

TEST_CASE("gamma = 0 keeps fidelity at one") {
  ProtocolConfig cfg;
  cfg.gamma = 0.0;
  cfg.cycles = 10;
  cfg.seed = 5;
  auto res = run_protocol(LogicalQubit{0.6, 0.8, 0.0, 0.0}, cfg);
  REQUIRE(int(res.cycles.size()) == 10);
  for (const auto& c : res.cycles) {
    CHECK(c.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(c.failed);
    CHECK(c.jumps_x + c.jumps_y == 0);
  }
  CHECK(res.failures == 0);
}

TEST_CASE("detected jumps are corrected back to unit fidelity") {
  ProtocolConfig cfg;
  cfg.gamma = 1.0;
  cfg.tau = 0.05;
  cfg.cycles = 60;
  cfg.seed = 7;
  auto res = run_protocol(LogicalQubit{1.0, 0.0, 0.0, 0.0}, cfg);
  int corrected = 0;
  bool lost = false;  // a multi-jump failure is absorbing
  for (const auto& c : res.cycles) {
    if (c.failed) lost = true;
    if (lost) continue;
    CHECK(c.fidelity == doctest::Approx(1.0).epsilon(1e-8));
    if (c.x_detected || c.y_detected) ++corrected;
    CHECK((c.jumps_x + c.jumps_y > 0) == (c.x_detected || c.y_detected));
  }
  CHECK(corrected > 0);  // at gamma tau = 0.05 jumps certainly occur in 60 cycles
}

TEST_CASE("determinism: identical seeds give identical fidelity sequences") {
  ProtocolConfig cfg;
  cfg.gamma = 1.0;
  cfg.tau = 0.05;
  cfg.cycles = 20;
  cfg.seed = 4242;
  auto a = run_protocol(LogicalQubit{0.6, 0.8, 0.0, 0.0}, cfg);
  auto b = run_protocol(LogicalQubit{0.6, 0.8, 0.0, 0.0}, cfg);
  REQUIRE(a.cycles.size() == b.cycles.size());
  for (size_t i = 0; i < a.cycles.size(); ++i)
    CHECK(a.cycles[i].fidelity == b.cycles[i].fidelity);
}

TEST_CASE("finite temperature is evolution-only") {
  ProtocolConfig cfg;
  cfg.n_bar = 0.2;
  CHECK_THROWS(run_protocol(LogicalQubit{}, cfg));
}

TEST_CASE("unprotected decay curve") {
  ProtocolConfig cfg;
  cfg.gamma = 1.0;
  auto curve =
      run_unprotected(LogicalQubit{1.0, 0.0, 0.0, 0.0}, cfg, {0.0, 0.1, 0.3});
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].second == doctest::Approx(1.0));
  CHECK(curve[1].second < 1.0);
  CHECK(curve[2].second < curve[1].second);
  // lower bound: fidelity can never fall below the no-jump weight alone
  CHECK(curve[1].second > std::exp(-4.0 * 0.1));
}

TEST_CASE("thermal decay is faster at higher occupation") {
  ProtocolConfig cold;
  cold.gamma = 1.0;
  ProtocolConfig warm = cold;
  warm.n_bar = 0.2;
  warm.mode_cutoff = 12;
  cold.mode_cutoff = 12;
  auto fc = run_unprotected(LogicalQubit{1.0, 0.0, 0.0, 0.0}, cold, {0.2});
  auto fw = run_unprotected(LogicalQubit{1.0, 0.0, 0.0, 0.0}, warm, {0.2});
  CHECK(fw[0].second < fc[0].second);
}

TEST_CASE("figure of merit on a small ensemble") {
  ProtocolConfig cfg;
  cfg.gamma = 1.0;
  cfg.seed = 7;
  auto fom = figure_of_merit(LogicalQubit{1.0, 0.0, 0.0, 0.0}, cfg,
                             {0.02, 0.05, 0.1}, 4000);
  // loose bounds: the dedicated acceptance run uses 1e4 trajectories
  CHECK(fom.slope > 1.4);
  CHECK(fom.slope < 2.5);
  CHECK(fom.suppression_ratio > 1.0);
  for (size_t i = 0; i < fom.gamma_taus.size(); ++i) {
    CHECK(fom.failure_probabilities[i] >= 0.0);
    CHECK(fom.dyson_deficits[i] ==
          doctest::Approx(6.0 * fom.gamma_taus[i] * fom.gamma_taus[i])
              .epsilon(0.2));
  }
}
