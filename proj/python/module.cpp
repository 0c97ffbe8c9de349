#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mqec/presets.hpp"
#include "mqec/protocol.hpp"
#include "mqec/serialize.hpp"

namespace py = pybind11;
using namespace mqec;

namespace {

std::vector<cplx> amplitudes(const StateVector& psi) {
  return {psi.amps.data(), psi.amps.data() + psi.amps.size()};
}

}  // namespace

PYBIND11_MODULE(_motionalqec, m) {
  m.doc() = "Two-mode motional qubit stabilization simulator";

  py::class_<SpaceSpec>(m, "SpaceSpec")
      .def(py::init([](std::vector<int> cutoffs, int levels) {
             SpaceSpec s;
             s.mode_cutoffs = std::move(cutoffs);
             s.electronic_levels = levels;
             return s;
           }),
           py::arg("mode_cutoffs"), py::arg("electronic_levels") = 1)
      .def_readonly("mode_cutoffs", &SpaceSpec::mode_cutoffs)
      .def_readonly("electronic_levels", &SpaceSpec::electronic_levels)
      .def("dim", &SpaceSpec::dim)
      .def("index",
           [](const SpaceSpec& s, std::vector<int> modes, int electronic) {
             return s.index(modes, electronic);
           },
           py::arg("modes"), py::arg("electronic") = 0);

  py::class_<StateVector>(m, "StateVector")
      .def_readonly("space", &StateVector::space)
      .def("norm", &StateVector::norm)
      .def("normalized", &StateVector::normalized)
      .def("amplitudes", &amplitudes)
      .def("to_json", &state_to_json);
  m.def("state_from_json", &state_from_json);

  py::class_<LogicalQubit>(m, "LogicalQubit")
      .def(py::init([](cplx cp, cplx cm, double phi1, double phi2) {
             return LogicalQubit{cp, cm, phi1, phi2};
           }),
           py::arg("c_plus"), py::arg("c_minus") = cplx(0, 0),
           py::arg("phi1") = 0.0, py::arg("phi2") = 0.0)
      .def_readonly("c_plus", &LogicalQubit::c_plus)
      .def_readonly("c_minus", &LogicalQubit::c_minus);

  py::class_<CodeSubspaces>(m, "CodeSubspaces")
      .def_readonly("space", &CodeSubspaces::space)
      .def_property_readonly(
          "h0", [](const CodeSubspaces& c) { return c.h0; })
      .def_property_readonly(
          "h1x", [](const CodeSubspaces& c) { return c.h1x; })
      .def_property_readonly(
          "h1y", [](const CodeSubspaces& c) { return c.h1y; });

  m.def("build_code", &build_code, py::arg("space"), py::arg("phi1") = 0.0,
        py::arg("phi2") = 0.0);
  m.def("encode", &encode);
  m.def("decode",
        [](const StateVector& psi, const std::array<StateVector, 2>& basis) {
          auto r = decode(psi, basis);
          return py::make_tuple(r.c_plus, r.c_minus, r.residual);
        });
  m.def("fidelity", &fidelity);
  m.def("jump", [](const StateVector& psi, int mode) {
    return apply(ladder(psi.space, mode, LadderKind::Lower), psi).normalized();
  });

  py::enum_<StageMode>(m, "StageMode")
      .value("Ideal", StageMode::Ideal)
      .value("Pulsed", StageMode::Pulsed);

  py::class_<SyndromeOutcome>(m, "SyndromeOutcome")
      .def_readonly("x_jump", &SyndromeOutcome::x_jump)
      .def_readonly("y_jump", &SyndromeOutcome::y_jump)
      .def_readonly("post_state", &SyndromeOutcome::post_state)
      .def_readonly("frame_flipped", &SyndromeOutcome::frame_flipped)
      .def("to_json", &syndrome_to_json);

  m.def(
      "detect",
      [](const StateVector& state, const CodeSubspaces& code,
         std::uint64_t seed) {
        DetectConfig cfg;
        auto rng = make_stream(seed, 0);
        return detect(state, code, cfg, rng);
      },
      py::arg("state"), py::arg("code"), py::arg("seed") = 0);

  m.def(
      "restore",
      [](const StateVector& state, const SyndromeOutcome& outcome) {
        RestorePlan plan;
        return restore(state, outcome, plan);
      });
  m.def("reset_electronic", &reset_electronic);

  py::class_<CycleReport>(m, "CycleReport")
      .def_readonly("cycle", &CycleReport::cycle)
      .def_readonly("jumps_x", &CycleReport::jumps_x)
      .def_readonly("jumps_y", &CycleReport::jumps_y)
      .def_readonly("x_detected", &CycleReport::x_detected)
      .def_readonly("y_detected", &CycleReport::y_detected)
      .def_readonly("failed", &CycleReport::failed)
      .def_readonly("fidelity", &CycleReport::fidelity)
      .def_readonly("leakage", &CycleReport::leakage);

  py::class_<ProtocolResult>(m, "ProtocolResult")
      .def_readonly("cycles", &ProtocolResult::cycles)
      .def_readonly("final_fidelity", &ProtocolResult::final_fidelity)
      .def_readonly("failures", &ProtocolResult::failures);

  py::class_<ProtocolConfig>(m, "ProtocolConfig")
      .def(py::init<>())
      .def_readwrite("gamma", &ProtocolConfig::gamma)
      .def_readwrite("n_bar", &ProtocolConfig::n_bar)
      .def_readwrite("tau", &ProtocolConfig::tau)
      .def_readwrite("cycles", &ProtocolConfig::cycles)
      .def_readwrite("seed", &ProtocolConfig::seed)
      .def_readwrite("mode_cutoff", &ProtocolConfig::mode_cutoff)
      .def_readwrite("stage_mode", &ProtocolConfig::stage_mode);

  m.def("run_protocol", &run_protocol);
  m.def("run_unprotected", &run_unprotected);

  py::class_<PhysicalPreset>(m, "PhysicalPreset")
      .def_readonly("name", &PhysicalPreset::name)
      .def_readonly("nu", &PhysicalPreset::nu)
      .def_readonly("eta", &PhysicalPreset::eta)
      .def_readonly("g1", &PhysicalPreset::g1)
      .def_readonly("kappa", &PhysicalPreset::kappa);
  m.def("load_preset", &load_preset);

  py::class_<TimescaleRow>(m, "TimescaleRow")
      .def_readonly("name", &TimescaleRow::name)
      .def_readonly("computed", &TimescaleRow::computed)
      .def_readonly("quoted", &TimescaleRow::quoted)
      .def_readonly("rel_deviation", &TimescaleRow::rel_deviation)
      .def_readonly("unit", &TimescaleRow::unit);
  m.def("timescale_report", &timescale_report);
}
