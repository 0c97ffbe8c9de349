#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mqec/encoding.hpp"
#include "mqec/serialize.hpp"

using namespace mqec;

TEST_CASE("state JSON round trip") {
  SpaceSpec s;
  s.mode_cutoffs = {3, 3};
  s.electronic_levels = 2;
  StateVector psi = basis_state(s, {1, 2}, 1);
  psi.amps[0] = cplx(0.25, -0.5);
  auto back = state_from_json(state_to_json(psi));
  CHECK(back.space == psi.space);
  CHECK((back.amps - psi.amps).norm() == 0.0);
}

TEST_CASE("operator JSON round trip") {
  SpaceSpec s;
  s.mode_cutoffs = {2};
  auto a = ladder(s, 0, LadderKind::Lower);
  auto back = operator_from_json(operator_to_json(a));
  CHECK(back.space == a.space);
  CHECK((back.mat - a.mat).norm() == 0.0);
}

TEST_CASE("csv numbers carry 12 significant digits") {
  CHECK(csv_number(1.0) == "1");
  CHECK(csv_number(0.1234567890123456) == "0.123456789012");
  CHECK(csv_row({"a", "b", "c"}) == "a,b,c");
}

TEST_CASE("code fixtures survive a round trip") {
  SpaceSpec s;
  s.mode_cutoffs = {8, 8};
  auto code = build_code(s);
  auto back = state_from_json(state_to_json(code.h0[0]));
  CHECK(fidelity(back, code.h0[0]) == doctest::Approx(1.0));
}
