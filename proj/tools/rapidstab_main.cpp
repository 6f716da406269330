// rapidstab: weighted-Gramian feedback synthesis and certification.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rapidstab/csv.hpp"
#include "rapidstab/demo_systems.hpp"
#include "rapidstab/errors.hpp"
#include "rapidstab/feedback.hpp"
#include "rapidstab/gramian.hpp"
#include "rapidstab/sim.hpp"
#include "rapidstab/system_io.hpp"
#include "rapidstab/verify.hpp"

namespace {

using namespace rapidstab;

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;

struct CommonArgs {
  std::string systemPath;
  std::string demoName;
  std::uint64_t seed = 0;
  double omega = 0.5;
  double T0 = 0.0;
  std::optional<double> T;
  std::string variant = "standard";
  std::optional<int> quadNodes;
  std::string out;
};

struct SimArgs {
  std::string x0;
  double tFinal = 20.0;
  double dt = 1e-3;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_system_options(CLI::App* cmd, CommonArgs& a) {
  auto* sys = cmd->add_option("--system", a.systemPath, "JSON system file");
  auto* demo = cmd->add_option("--demo", a.demoName,
                               "built-in system: oscillator, scalar, string:N[:W], skew:N[:SEED]");
  sys->excludes(demo);
  cmd->add_option("--seed", a.seed, "seed for random demo systems");
}

void add_synthesis_options(CLI::App* cmd, CommonArgs& a, bool withVariant) {
  cmd->add_option("--omega", a.omega, "target decay rate")->check(CLI::PositiveNumber);
  cmd->add_option("--T0", a.T0, "observability horizon")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--T", a.T, "plateau end (defaults to T0)");
  if (withVariant) {
    cmd->add_option("--variant", a.variant, "Gramian variant")
        ->check(CLI::IsMember({"standard", "truncated", "infinite"}));
  }
  cmd->add_option("--quad-nodes", a.quadNodes, "fixed Gauss-Legendre nodes per panel")
      ->check(CLI::Range(1, 1024));
}

void add_sim_options(CLI::App* cmd, SimArgs& s) {
  cmd->add_option("--x0", s.x0, "initial state as a comma-separated list (default all ones)");
  cmd->add_option("--t-final", s.tFinal, "integration horizon")->check(CLI::PositiveNumber);
  cmd->add_option("--dt", s.dt, "RK4 step")->check(CLI::PositiveNumber);
}

LtiSystem resolve_system(const CommonArgs& a) {
  if (!a.systemPath.empty()) return load_system(a.systemPath);
  if (!a.demoName.empty()) return demo_system(a.demoName, a.seed);
  throw UsageError("one of --system or --demo is required");
}

QuadratureOptions resolve_quadrature(const CommonArgs& a) {
  return a.quadNodes ? QuadratureOptions::fixed(*a.quadNodes) : QuadratureOptions::from_environment();
}

double resolve_T(const CommonArgs& a) {
  const double T = a.T.value_or(a.T0);
  if (T < a.T0) throw UsageError("--T must not be smaller than --T0");
  return T;
}

Eigen::VectorXd resolve_x0(const std::string& text, Eigen::Index n) {
  if (text.empty()) return Eigen::VectorXd::Ones(n);
  std::vector<double> values;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (cell.empty() || used != cell.size() || !std::isfinite(v)) {
      throw UsageError("--x0: cannot parse '" + cell + "'");
    }
    values.push_back(v);
  }
  if (static_cast<Eigen::Index>(values.size()) != n) {
    throw UsageError(fmt::format("--x0 has {} entries, system has n = {}", values.size(), n));
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), n);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

void add_matrix_rows(CsvTable& t, const std::string& name, const Eigen::MatrixXd& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      t.add_row({name, std::to_string(i), std::to_string(j), csv_number(M(i, j))});
    }
  }
}

int run_synth(const CommonArgs& a) {
  const LtiSystem sys = resolve_system(a);
  const double T = resolve_T(a);
  const GramianVariant variant = parse_variant(a.variant);
  const GramianBundle g = build_gramian(sys, a.omega, a.T0, T, variant, resolve_quadrature(a));
  const FeedbackLaw law = synthesize(sys, g);

  CsvTable t;
  t.header = {"quantity", "row", "col", "value"};
  add_matrix_rows(t, "F", law.gain);
  add_matrix_rows(t, "A_U", law.closed_loop);
  add_matrix_rows(t, "Lambda", g.lambda);
  t.add_row({"spectral_abscissa", "", "", csv_number(spectral_abscissa(law.closed_loop))});
  if (sys.n() == 2) {
    t.add_row({"discriminant", "", "", csv_number(eigen_discriminant_2x2(law.closed_loop))});
  }
  t.add_row({"condition_number", "", "", csv_number(g.condition_number)});
  if (g.lambda_prime) {
    t.add_row({"riccati_residual", "", "", csv_number(riccati_residual(sys, g))});
  }
  emit(t.str(), a.out);
  return 0;
}

int run_simulate(const CommonArgs& a, const SimArgs& s) {
  const LtiSystem sys = resolve_system(a);
  const double T = resolve_T(a);
  const Eigen::VectorXd x0 = resolve_x0(s.x0, sys.n());
  const GramianBundle g =
      build_gramian(sys, a.omega, a.T0, T, parse_variant(a.variant), resolve_quadrature(a));
  const FeedbackLaw law = synthesize(sys, g);
  const Trajectory traj = integrate(law.closed_loop, x0, s.tFinal, s.dt);
  const LyapunovProfile p = lyapunov_profile(traj, g, a.omega);

  CsvTable t;
  t.header.push_back("t");
  for (Eigen::Index i = 0; i < sys.n(); ++i) t.header.push_back(fmt::format("x{}", i));
  t.header.insert(t.header.end(), {"V", "envelope"});
  std::vector<double> row;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    row.assign(1, traj.times[k]);
    row.insert(row.end(), traj.states[k].begin(), traj.states[k].end());
    row.push_back(p.values[k]);
    row.push_back(p.envelope[k]);
    t.add_numeric_row(row);
  }
  emit(t.str(), a.out);
  if (traj.diverged) {
    std::cerr << "rapidstab: trajectory diverged\n";
    return kExitCheckFailed;
  }
  return 0;
}

int run_sweep(const CommonArgs& a, const std::vector<double>& TsArg) {
  const LtiSystem sys = resolve_system(a);
  std::vector<double> Ts = TsArg;
  if (Ts.empty()) {
    for (int i = 0; i <= 8; ++i) Ts.push_back(a.T0 + i);
  }
  const auto rows = sweep_T(sys, a.omega, a.T0, Ts, resolve_quadrature(a));
  CsvTable t;
  t.header = {"T", "spectral_abscissa", "bound_exponent", "condition_of_lambda"};
  for (const auto& r : rows) {
    t.add_numeric_row({r.T, r.spectralAbscissa, r.boundExponent, r.conditionOfLambda});
  }
  emit(t.str(), a.out);
  return 0;
}

int run_verify_cmd(const CommonArgs& a, const SimArgs& s) {
  const LtiSystem sys = resolve_system(a);
  VerifyOptions opts;
  opts.quad = resolve_quadrature(a);
  if (!s.x0.empty()) opts.x0 = resolve_x0(s.x0, sys.n());
  opts.tFinal = s.tFinal;
  opts.dt = s.dt;
  const VerifyReport report = run_verify(sys, a.omega, a.T0, resolve_T(a), opts);
  emit(report.to_table().str(), a.out);
  if (const VerifyCheck* bad = report.first_failure()) {
    std::cerr << fmt::format("rapidstab: check '{}' failed ({:.6g} {} {:.6g})\n", bad->name,
                             bad->value, bad->relation, bad->threshold);
    return kExitCheckFailed;
  }
  return report.passed() ? 0 : kExitCheckFailed;
}

int run_demo(const CommonArgs& a) {
  if (a.demoName.empty()) throw UsageError("demo requires --demo NAME");
  emit(serialize_system(demo_system(a.demoName, a.seed)) + "\n", a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted-Gramian rapid stabilization toolkit"};
  app.require_subcommand(1);

  CommonArgs synthArgs, simArgs, sweepArgs, verifyArgs, demoArgs;
  SimArgs simulateOpts, verifyOpts;
  std::vector<double> Ts;

  auto* synth = app.add_subcommand("synth", "synthesize the feedback and print F, A_U, Lambda");
  add_system_options(synth, synthArgs);
  add_synthesis_options(synth, synthArgs, true);
  synth->add_option("--out", synthArgs.out, "output CSV path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "integrate the closed loop and its Lyapunov profile");
  add_system_options(simulate, simArgs);
  add_synthesis_options(simulate, simArgs, true);
  add_sim_options(simulate, simulateOpts);
  simulate->add_option("--out", simArgs.out, "output CSV path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "spectral abscissa and decay bound over plateau ends T");
  add_system_options(sweep, sweepArgs);
  add_synthesis_options(sweep, sweepArgs, false);
  sweep->add_option("--Ts", Ts, "plateau ends (default T0, T0+1, ..., T0+8)")->delimiter(',');
  sweep->add_option("--out", sweepArgs.out, "output CSV path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the certificate checks");
  add_system_options(verify, verifyArgs);
  add_synthesis_options(verify, verifyArgs, false);
  add_sim_options(verify, verifyOpts);
  verify->add_option("--out", verifyArgs.out, "output CSV path (default stdout)");

  auto* demo = app.add_subcommand("demo", "print a built-in system as JSON");
  demo->add_option("--demo", demoArgs.demoName, "oscillator, scalar, string:N[:W], skew:N[:SEED]")
      ->required();
  demo->add_option("--seed", demoArgs.seed, "seed for random demo systems");
  demo->add_option("--out", demoArgs.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*synth) return run_synth(synthArgs);
    if (*simulate) return run_simulate(simArgs, simulateOpts);
    if (*sweep) return run_sweep(sweepArgs, Ts);
    if (*verify) return run_verify_cmd(verifyArgs, verifyOpts);
    if (*demo) return run_demo(demoArgs);
  } catch (const NotControllableError& e) {
    std::cerr << "rapidstab: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const QuadratureError& e) {
    std::cerr << "rapidstab: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "rapidstab: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
