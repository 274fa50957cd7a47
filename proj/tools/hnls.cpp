#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hnls/admissibility.hpp"
#include "hnls/boundary.hpp"
#include "hnls/closedform.hpp"
#include "hnls/dressing.hpp"
#include "hnls/error.hpp"
#include "hnls/io.hpp"
#include "hnls/pipeline.hpp"
#include "hnls/spectral.hpp"
#include "hnls/verify.hpp"

using namespace hnls;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;
constexpr int kNotAdmissible = 3;
constexpr int kSingular = 4;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PairInput {
  std::string file;
  double alpha = kUnset, omega = kUnset, c_re = kUnset, c_im = 0.0;

  void add(CLI::App* app) {
    app->add_option("--pair", file, "boundary pair JSON file");
    app->add_option("--alpha", alpha, "exponential pair: amplitude");
    app->add_option("--omega", omega, "exponential pair: frequency");
    app->add_option("--c-re", c_re, "exponential pair: Re c");
    app->add_option("--c-im", c_im, "exponential pair: Im c");
  }
  bool triple_given() const { return !std::isnan(alpha) || !std::isnan(omega) || !std::isnan(c_re); }
  ExponentialTriple triple() const {
    if (std::isnan(alpha) || std::isnan(omega) || std::isnan(c_re))
      throw InputError("need --alpha, --omega and --c-re (and optionally --c-im)");
    return {alpha, omega, Complex(c_re, c_im)};
  }
  PeriodicPair pair() const {
    if (!file.empty()) {
      if (triple_given()) throw InputError("give either --pair or an inline triple, not both");
      return pair_from_json(read_json(file));
    }
    const ExponentialTriple t = triple();
    return PeriodicPair::exponential(t.alpha, t.omega, t.c);
  }
  static json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw InputError(path + ": " + e.what());
    }
  }
};

struct GridInput {
  double x0 = 0.0, x1 = 5.0, t0 = 0.0, t1 = kUnset;
  int nx = 51, nt = 41;

  void add(CLI::App* app) {
    app->add_option("--x0", x0, "first x (>= 0)")->capture_default_str();
    app->add_option("--x1", x1, "last x")->capture_default_str();
    app->add_option("--nx", nx, "x points (>= 2)")->capture_default_str();
    app->add_option("--t0", t0, "first t (>= 0)")->capture_default_str();
    app->add_option("--t1", t1, "last t; default two periods");
    app->add_option("--nt", nt, "t points (>= 2)")->capture_default_str();
  }
  Grid grid(double tau) const {
    if (nx < 2 || nt < 2) throw InputError("grid needs nx, nt >= 2");
    if (x0 < 0.0) throw InputError("x0 < 0 lies outside the quarter plane");
    if (t0 < 0.0) throw InputError("t0 < 0 lies outside the quarter plane");
    Grid g{x0, x1, nx, t0, std::isnan(t1) ? 2.0 * tau : t1, nt};
    if (!(g.x1 > g.x0) || !(g.t1 > g.t0)) throw InputError("grid needs x1 > x0 and t1 > t0");
    return g;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const std::string& path, const json& j) {
  Output out(path);
  out.stream() << j.dump(2) << '\n';
}

// Closed-form evaluators selectable by name.
struct ClosedInput {
  std::string name = "family-d";
  double alpha = 1.0, omega = 1.0;

  void add(CLI::App* app, bool required) {
    auto* o = app->add_option("--solution", name, "family-d or two-pole")
                  ->check(CLI::IsMember({"family-d", "two-pole"}));
    if (required) o->required();
    app->add_option("--sol-alpha", alpha, "family-d amplitude")->capture_default_str();
    app->add_option("--sol-omega", omega, "family-d frequency")->capture_default_str();
  }
  Field field() const {
    if (name == "family-d") {
      if (!(alpha > 0.0) || !(omega > 0.0)) throw InputError("family-d needs alpha > 0 and omega > 0");
      const double a = alpha, w = omega;
      return [a, w](double x, double t) { return u_family_d(a, w, x, t); };
    }
    return [](double x, double t) { return u_section5(x, t); };
  }
  double tau() const { return name == "family-d" ? 2.0 * kPi / omega : kPi / 2.0; }
  std::optional<PeriodicPair> pair() const {
    if (name != "family-d") return std::nullopt;
    return make_exponential_family_d(alpha, omega);
  }
};

json cj(Complex z) { return json::array({z.real(), z.imag()}); }

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidArgument: return kInputError;
    case ErrorKind::GateNotPassed: return kNotAdmissible;
    case ErrorKind::SingularSystem:
    case ErrorKind::EvalAtPole:
    case ErrorKind::SingularPoint: return kSingular;
    default: return kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-line defocusing NLS with periodic boundary data: admissibility and dressing"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for grid and lattice scans")->capture_default_str();
  std::string output;
  app.add_option("-o,--output", output, "output file (default stdout)");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "closed-form family and verdict of an exponential triple");
  PairInput cls_in;
  double cls_tol = 1e-9;
  classify_cmd->add_option("--alpha", cls_in.alpha)->required();
  classify_cmd->add_option("--omega", cls_in.omega)->required();
  classify_cmd->add_option("--c-re", cls_in.c_re)->required();
  classify_cmd->add_option("--c-im", cls_in.c_im)->capture_default_str();
  classify_cmd->add_option("--tol", cls_tol, "membership tolerance")->capture_default_str();

  // gate
  auto* gate_cmd = app.add_subcommand("gate", "numerical admissibility verdict for any pair");
  PairInput gate_in;
  gate_in.add(gate_cmd);
  AdmissibilityOptions gate_opts;
  bool all_gates = false;
  gate_cmd->add_option("--n-max", gate_opts.n_max, "largest lattice index scanned")->capture_default_str();
  gate_cmd->add_option("--margin", gate_opts.a3.margin, "strictness margin for sup |Q^b| < 1")->capture_default_str();
  gate_cmd->add_option("--radius-factor", gate_opts.radius_factor, "residue contour radius / lattice gap")
      ->capture_default_str();
  gate_cmd->add_flag("--all-gates", all_gates, "run every gate even after a failure");
  bool full_scan = false;
  gate_cmd->add_flag("--full-scan", full_scan, "scan the lattice to n-max instead of stopping at 2 N0");

  // spectral
  auto* spectral_cmd = app.add_subcommand("spectral", "G, Q^b, P^b, (A^b)^2 at one k");
  PairInput spec_in;
  spec_in.add(spectral_cmd);
  double k_re = 0.0, k_im = 0.0, spec_tol = 1e-10;
  bool use_limit = false;
  spectral_cmd->add_option("--k-re", k_re)->required();
  spectral_cmd->add_option("--k-im", k_im)->capture_default_str();
  spectral_cmd->add_option("--tol", spec_tol, "monodromy tolerance")->capture_default_str();
  spectral_cmd->add_flag("--limit", use_limit, "circle-mean value (removable limits at lattice points)");

  // poles
  auto* poles_cmd = app.add_subcommand("poles", "lattice residues of P^b");
  PairInput poles_in;
  poles_in.add(poles_cmd);
  int poles_nmax = 32;
  double poles_radius = 0.25;
  PoleOptions poles_opts;
  bool poles_all = false;
  poles_cmd->add_option("--n-max", poles_nmax)->capture_default_str();
  poles_cmd->add_option("--radius-factor", poles_radius)->capture_default_str();
  poles_cmd->add_option("--residue-tol", poles_opts.residue_tol)->capture_default_str();
  poles_cmd->add_flag("--all", poles_all, "list every scanned lattice point, not only poles");

  // build
  auto* build_cmd = app.add_subcommand("build", "pole/residue descriptor of the dressed solution");
  PairInput build_in;
  build_in.add(build_cmd);
  BuildOptions build_opts;
  bool build_report = false;
  build_cmd->add_option("--model-tol", build_opts.model_tol, "allowed P^b model mismatch")->capture_default_str();
  build_cmd->add_flag("--report", build_report, "emit the full build report instead of the descriptor");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a descriptor on a grid (CSV)");
  std::string descriptor;
  eval_cmd->add_option("--descriptor", descriptor, "descriptor JSON from build")->required();
  GridInput eval_grid;
  eval_grid.add(eval_cmd);

  // eval-closed
  auto* closed_cmd = app.add_subcommand("eval-closed", "evaluate a closed-form solution on a grid (CSV)");
  ClosedInput closed_in;
  closed_in.add(closed_cmd, true);
  GridInput closed_grid;
  closed_grid.add(closed_cmd);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "PDE residual, boundary, periodicity and decay checks (JSON)");
  std::string verify_desc;
  ClosedInput verify_closed;
  PairInput verify_pair;
  GridInput verify_grid;
  VerifyTolerances vtol;
  verify_cmd->add_option("--descriptor", verify_desc, "descriptor JSON from build");
  verify_closed.add(verify_cmd, false);
  verify_pair.add(verify_cmd);
  verify_grid.add(verify_cmd);
  verify_cmd->add_option("--residual-tol", vtol.pde_residual)->capture_default_str();
  verify_cmd->add_option("--g0-tol", vtol.boundary_g0)->capture_default_str();
  verify_cmd->add_option("--g1-tol", vtol.boundary_g1)->capture_default_str();
  verify_cmd->add_option("--periodicity-tol", vtol.periodicity)->capture_default_str();
  verify_cmd->add_option("--fd-step", vtol.h, "finite-difference step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (threads < 1) throw InputError("--threads must be >= 1");

    if (*classify_cmd) {
      const ExponentialTriple t = cls_in.triple();
      if (!(t.alpha > 0.0)) throw InputError("alpha must be positive");
      const Classification c = classify(t, cls_tol);
      emit(output, {{"alpha", t.alpha},
                    {"omega", t.omega},
                    {"c", cj(t.c)},
                    {"family", to_string(c.family)},
                    {"verdict", to_string(c.verdict)},
                    {"K", c.K},
                    {"residual", c.residual}});
      return c.verdict == ClassVerdict::EventuallyAdmissible ? kOk : kNotAdmissible;
    }

    if (*gate_cmd) {
      gate_opts.threads = threads;
      gate_opts.early_exit = !all_gates;
      gate_opts.adaptive_scan = !full_scan;
      const AdmissibilityReport r = verdict(gate_in.pair(), gate_opts);
      emit(output, r);
      return r.verdict == Verdict::Admissible ? kOk : kNotAdmissible;
    }

    if (*spectral_cmd) {
      const PeriodicPair p = spec_in.pair();
      SpectralOptions so;
      so.monodromy.tol = spec_tol;
      const Complex k(k_re, k_im);
      const SpectralSample s = use_limit ? spectral_limit(p, k, -1.0, 32, so) : spectral_sample(p, k, so);
      emit(output, {{"k", cj(s.k)},
                    {"G", cj(s.g)},
                    {"sqrt_G", cj(s.sqrt_g)},
                    {"Qb", cj(s.qb)},
                    {"Pb", cj(s.pb)},
                    {"Ab2", cj(s.ab2)},
                    {"near_singular", s.near_singular},
                    {"est_error", s.est_error}});
      return kOk;
    }

    if (*poles_cmd) {
      poles_opts.threads = threads;
      const auto scan = locate_poles(poles_in.pair(), poles_nmax, poles_radius, poles_opts);
      json arr = json::array();
      for (const auto& c : scan) {
        if (!poles_all && !c.nonzero) continue;
        const char* side = c.side == LatticeSide::Upper ? "upper" : c.side == LatticeSide::Lower ? "lower" : "real";
        arr.push_back({{"k", cj(c.k)}, {"n", c.n}, {"side", side}, {"residue", cj(c.residue)}, {"nonzero", c.nonzero}});
      }
      emit(output, {{"poles", arr}});
      return kOk;
    }

    if (*build_cmd) {
      build_opts.admissibility.threads = threads;
      const PeriodicPair p = build_in.pair();
      AdmissibilityReport rep = verdict(p, build_opts.admissibility);
      if (rep.verdict != Verdict::Admissible) {
        emit(output, {{"error", "pair is not admissible"}, {"admissibility", rep}});
        return kNotAdmissible;
      }
      const BuildResult r = build_from_report(p, std::move(rep), build_opts);
      if (build_report) {
        emit(output, r);
      } else {
        emit(output, r.poles);
      }
      return kOk;
    }

    if (*eval_cmd) {
      const PoleData pd = pole_data_from_json(PairInput::read_json(descriptor));
      const DressedSolution sol(pd);
      const Grid g = eval_grid.grid(sol.tau());
      const auto values = evaluate_grid([&](double x, double t) { return sol.u(x, t); }, g, threads);
      Output out(output);
      write_csv(out.stream(), g, values);
      return kOk;
    }

    if (*closed_cmd) {
      const Grid g = closed_grid.grid(closed_in.tau());
      const auto values = evaluate_grid(closed_in.field(), g, threads);
      Output out(output);
      write_csv(out.stream(), g, values);
      return kOk;
    }

    if (*verify_cmd) {
      Field u;
      double tau = 0.0;
      std::optional<PeriodicPair> pair;
      std::optional<DressedSolution> sol;
      if (!verify_desc.empty()) {
        if (verify_cmd->count("--solution")) throw InputError("give either --descriptor or --solution");
        sol.emplace(pole_data_from_json(PairInput::read_json(verify_desc)));
        tau = sol->tau();
        u = [&sol](double x, double t) { return sol->u(x, t); };
      } else if (verify_cmd->count("--solution")) {
        u = verify_closed.field();
        tau = verify_closed.tau();
        pair = verify_closed.pair();
      } else {
        throw InputError("verify needs --descriptor or --solution");
      }
      if (!verify_pair.file.empty() || verify_pair.triple_given()) pair = verify_pair.pair();
      const Grid g = verify_grid.grid(tau);
      const VerificationReport r = verify_solution(u, tau, g, pair, vtol);
      emit(output, r);
      return r.pass ? kOk : kFailed;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SingularSystemError& e) {
    std::cerr << "error: " << e.what() << " at x=" << format_double(e.x()) << " t=" << format_double(e.t()) << '\n';
    return kSingular;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
