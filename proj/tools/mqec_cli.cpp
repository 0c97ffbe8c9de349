// Batch front-end: verify | timescales | evolve | protocol | sweep.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"

#include "mqec/presets.hpp"
#include "mqec/serialize.hpp"

namespace {

using namespace mqec;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitConfigError = 2;

struct RunConfig {
  std::string command;
  std::string preset_name = "be_plus";
  std::uint64_t seed = 20260826;
  std::string out_dir;
  std::string format = "csv";
  std::map<std::string, std::string> overrides;

  static const std::map<std::string, std::string>& defaults() {
    static const std::map<std::string, std::string> d = {
        {"gamma", "1.0"},          {"n_bar", "0.0"},
        {"tau", "0.05"},           {"cycles", "100"},
        {"mode_cutoff", "8"},      {"stage_mode", "ideal"},
        {"detector_efficiency", "1.0"}, {"leakage_tol", "1e-6"},
        {"stirap_area", "50.0"},   {"c_plus", "1.0"},
        {"c_minus", "0.0"},        {"phi1", "0.0"},
        {"phi2", "0.0"},           {"t_max", "1.0"},
        {"samples", "50"},         {"trajectories", "1000"},
        {"sweep.parameter", "tau"},
        {"sweep.values", "0.01,0.02,0.05,0.1"},
    };
    return d;
  }

  std::string get(const std::string& key) const {
    auto it = overrides.find(key);
    if (it != overrides.end()) return it->second;
    return defaults().at(key);
  }
  double get_num(const std::string& key) const { return std::stod(get(key)); }

  void check_keys() const {
    for (const auto& [key, value] : overrides)
      if (!defaults().count(key))
        throw CLI::ValidationError("unknown configuration key: " + key);
  }

  ProtocolConfig protocol() const {
    ProtocolConfig cfg;
    cfg.gamma = get_num("gamma");
    cfg.n_bar = get_num("n_bar");
    cfg.tau = get_num("tau");
    cfg.cycles = int(get_num("cycles"));
    cfg.mode_cutoff = int(get_num("mode_cutoff"));
    cfg.stage_mode =
        get("stage_mode") == "pulsed" ? StageMode::Pulsed : StageMode::Ideal;
    cfg.detector_efficiency = get_num("detector_efficiency");
    cfg.leakage_tol = get_num("leakage_tol");
    cfg.seed = seed;
    cfg.restore_plan.mode = cfg.stage_mode;
    cfg.restore_plan.stirap_area = get_num("stirap_area");
    return cfg;
  }

  LogicalQubit qubit() const {
    LogicalQubit q{get_num("c_plus"), get_num("c_minus"), get_num("phi1"),
                   get_num("phi2")};
    const double n = std::sqrt(std::norm(q.c_plus) + std::norm(q.c_minus));
    q.c_plus /= n;
    q.c_minus /= n;
    return q;
  }

  json manifest() const {
    json m;
    m["command"] = command;
    m["preset"] = preset_name;
    m["seed"] = seed;
    m["format"] = format;
    json resolved;
    for (const auto& [key, value] : defaults()) resolved[key] = get(key);
    m["config"] = std::move(resolved);
    return m;
  }
};

class Emitter {
 public:
  Emitter(const RunConfig& cfg, const std::string& stem) : cfg_(cfg) {
    if (!cfg.out_dir.empty()) {
      std::filesystem::create_directories(cfg.out_dir);
      std::ofstream manifest(cfg.out_dir + "/manifest.json");
      manifest << cfg.manifest().dump(2) << "\n";
      path_ = cfg.out_dir + "/" + stem + "." + cfg.format;
      file_.open(path_);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
  ~Emitter() {
    if (file_.is_open()) std::cerr << "wrote " << path_ << "\n";
  }

 private:
  const RunConfig& cfg_;
  std::ofstream file_;
  std::string path_;
};

int check(std::ostream& os, const std::string& name, bool pass) {
  os << (pass ? "PASS" : "FAIL") << "  " << name << "\n";
  return pass ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  std::ostream& os = std::cout;
  int failures = 0;

  SpaceSpec space;
  space.mode_cutoffs = {8, 8};
  const auto code = build_code(space, cfg.get_num("phi1"),
                               cfg.get_num("phi2"));
  const auto ax = ladder(space, 0, LadderKind::Lower);
  const auto ay = ladder(space, 1, LadderKind::Lower);

  // jump algebra a_x |psi+->_0 = sqrt2 |psi+->_x (phi1 = phi2 = 0 only)
  if (cfg.get_num("phi1") == 0.0 && cfg.get_num("phi2") == 0.0) {
    double dev = 0.0;
    for (int s = 0; s < 2; ++s) {
      dev = std::max(dev, (apply(ax, code.h0[s]).amps -
                           std::sqrt(2.0) * code.h1x[s].amps)
                              .norm());
      dev = std::max(dev, (apply(ay, code.h0[s]).amps -
                           std::sqrt(2.0) * code.h1y[s].amps)
                              .norm());
    }
    failures += check(os, "jump algebra", dev < 1e-12);
  }

  // mutual orthogonality of the three subspaces
  double ortho = 0.0;
  std::vector<StateVector> all = {code.h0[0],  code.h0[1],  code.h1x[0],
                                  code.h1x[1], code.h1y[0], code.h1y[1]};
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      ortho = std::max(ortho, std::abs(inner(all[i], all[j])));
  failures += check(os, "subspace orthogonality", ortho < 1e-12);

  // reversibility of all four thermal channels on H0
  const double n_bar = cfg.get_num("n_bar");
  std::vector<StateVector> h0 = {code.h0[0], code.h0[1]};
  bool reversible = true;
  for (const auto& op : {ax, ay, ax.dagger(), ay.dagger()}) {
    if (op.mat.isZero()) continue;
    reversible = reversible && check_reversibility(op, h0).reversible;
  }
  (void)n_bar;  // rates scale mu^2 but not the reversibility property
  failures += check(os, "channel reversibility on the code space",
                    reversible);

  // Bogolyubov-rotated channels generate the same dissipator
  {
    SpaceSpec small;
    small.mode_cutoffs = {4, 4};
    auto [a_g, a_d] = bogolyubov(small, {kPi / 4.0, kPi / 2.0});
    const auto bx = ladder(small, 0, LadderKind::Lower);
    const auto by = ladder(small, 1, LadderKind::Lower);
    auto dissipator = [&](const LinearOperator& l, const Mat& rho) -> Mat {
      const Mat ldl = l.mat.adjoint() * l.mat;
      return l.mat * rho * l.mat.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    };
    // compare on a randomized truncation-safe density operator
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal;
    const int d = small.dim();
    Mat m = Mat::Zero(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        // keep total occupation below the cutoff to avoid edge artifacts
        m(r, c) = cplx(normal(rng), normal(rng));
      }
    Mat rho = m * m.adjoint();
    rho /= rho.trace();
    const Mat orig = dissipator(bx, rho) + dissipator(by, rho);
    const Mat rot = dissipator(a_g, rho) + dissipator(a_d, rho);
    failures += check(os, "mode-rotation invariance of the dissipator",
                      (orig - rot).cwiseAbs().maxCoeff() < 1e-10);
  }

  // first-order mixture vs the master equation
  {
    LogicalQubit q = cfg.qubit();
    const double gamma = 1.0, tau = 0.05;
    auto mix = dyson_first_order(q, code, gamma, tau);
    const auto model = thermal_two_mode_model(space, gamma, 0.0);
    const Mat exact = evolve_lindblad(model, density_of(encode(q, code)),
                                      0.0, tau);
    const double resid = trace_distance(mixture_density(mix), exact);
    failures += check(os, "first-order mixture residual",
                      resid <= 10.0 * tau * tau);
  }

  return failures == 0 ? kExitOk : kExitInvariantFailure;
}

int cmd_timescales(const RunConfig& cfg) {
  const auto preset = load_preset(cfg.preset_name);
  const auto rows = timescale_report(preset);
  Emitter emitter(cfg, "timescales");
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back({{"name", row.name},
                     {"computed", row.computed},
                     {"quoted", row.quoted},
                     {"rel_deviation", row.rel_deviation},
                     {"unit", row.unit}});
    emitter.out() << arr.dump(2) << "\n";
  } else {
    emitter.out() << "name,computed,quoted,rel_deviation,unit\n";
    for (const auto& row : rows)
      emitter.out() << csv_row({row.name, csv_number(row.computed),
                                csv_number(row.quoted),
                                csv_number(row.rel_deviation), row.unit})
                    << "\n";
  }
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg) {
  ProtocolConfig pcfg = cfg.protocol();
  const int samples = int(cfg.get_num("samples"));
  const double t_max = cfg.get_num("t_max");
  std::vector<double> times;
  for (int i = 0; i <= samples; ++i) times.push_back(t_max * i / samples);
  const auto curve = run_unprotected(cfg.qubit(), pcfg, times);

  Emitter emitter(cfg, "evolve");
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& [t, f] : curve)
      arr.push_back({{"t", t}, {"fidelity", f}});
    emitter.out() << arr.dump(2) << "\n";
  } else {
    emitter.out() << "t,fidelity\n";
    for (const auto& [t, f] : curve)
      emitter.out() << csv_row({csv_number(t), csv_number(f)}) << "\n";
  }
  return kExitOk;
}

int cmd_protocol(const RunConfig& cfg) {
  const auto result = run_protocol(cfg.qubit(), cfg.protocol());
  Emitter emitter(cfg, "protocol");
  if (cfg.format == "json") {
    json j;
    j["final_fidelity"] = result.final_fidelity;
    j["failures"] = result.failures;
    json arr = json::array();
    for (const auto& c : result.cycles)
      arr.push_back({{"cycle", c.cycle},
                     {"jumps_x", c.jumps_x},
                     {"jumps_y", c.jumps_y},
                     {"x_detected", c.x_detected},
                     {"y_detected", c.y_detected},
                     {"failed", c.failed},
                     {"fidelity", c.fidelity},
                     {"leakage", c.leakage}});
    j["cycles"] = std::move(arr);
    emitter.out() << j.dump(2) << "\n";
  } else {
    emitter.out()
        << "cycle,jumps_x,jumps_y,x_detected,y_detected,failed,fidelity,"
           "leakage\n";
    for (const auto& c : result.cycles)
      emitter.out() << csv_row({std::to_string(c.cycle),
                                std::to_string(c.jumps_x),
                                std::to_string(c.jumps_y),
                                std::to_string(int(c.x_detected)),
                                std::to_string(int(c.y_detected)),
                                std::to_string(int(c.failed)),
                                csv_number(c.fidelity),
                                csv_number(c.leakage)})
                    << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const std::string parameter = cfg.get("sweep.parameter");
  std::vector<double> values;
  {
    std::string list = cfg.get("sweep.values");
    size_t pos = 0;
    while (pos < list.size()) {
      size_t next = list.find(',', pos);
      if (next == std::string::npos) next = list.size();
      values.push_back(std::stod(list.substr(pos, next - pos)));
      pos = next + 1;
    }
  }

  Emitter emitter(cfg, "sweep");
  emitter.out() << "parameter,value,metric,result\n";
  for (double value : values) {
    RunConfig point = cfg;
    point.overrides[parameter] = csv_number(value);
    const auto result = run_protocol(point.qubit(), point.protocol());
    double mean = 0.0;
    for (const auto& c : result.cycles) mean += c.fidelity;
    mean /= double(result.cycles.size());
    const std::string v = csv_number(value);
    emitter.out() << csv_row({parameter, v, "final_fidelity",
                              csv_number(result.final_fidelity)})
                  << "\n";
    emitter.out() << csv_row({parameter, v, "mean_fidelity",
                              csv_number(mean)})
                  << "\n";
    emitter.out() << csv_row({parameter, v, "failures",
                              std::to_string(result.failures)})
                  << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motional qubit stabilization simulator"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> sets;
  for (const std::string name :
       {"verify", "timescales", "evolve", "protocol", "sweep"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--preset", cfg.preset_name, "parameter preset name");
    sub->add_option("--set", sets, "override key=value (repeatable)");
    sub->add_option("--seed", cfg.seed, "master RNG seed");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    for (const auto& kv : sets) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--set expects key=value: " + kv);
      cfg.overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    cfg.check_keys();

    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "timescales") return cmd_timescales(cfg);
    if (cfg.command == "evolve") return cmd_evolve(cfg);
    if (cfg.command == "protocol") return cmd_protocol(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    return kExitConfigError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
}
