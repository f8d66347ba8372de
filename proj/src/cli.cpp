#include "decorr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "decorr/cloning.hpp"
#include "decorr/gaussian.hpp"

namespace decorr {
namespace cli {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Mode parse_mode(const std::string& s) {
  return s == "identical" ? Mode::identical : Mode::independent;
}

// exit code 2 on failure
bool write_file(const std::string& path, const std::string& content,
                std::ostream& err) {
  std::ofstream ofs(path, std::ios::binary);
  if (!ofs) {
    err << "cannot open " << path << " for writing\n";
    return false;
  }
  ofs << content;
  ofs.flush();
  if (!ofs.good()) {
    err << "write to " << path << " failed\n";
    return false;
  }
  return true;
}

void print_matrix(std::ostream& out, const std::string& label, const RMat& m) {
  out << label << ":\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j)
      out << (j ? " " : "") << fmt(m(i, j));
    out << "\n";
  }
}

int cmd_solve(Mode mode, double eta, double lam, double p, std::ostream& out) {
  Solution sol = (mode == Mode::independent)
                     ? solve_indep(SeedIndep{eta, lam})
                     : solve_identical(SeedSym{p, eta, lam});
  out << "eta_tilde=" << fmt(sol.eta_tilde) << "\n";
  static const char* abc[] = {"a", "b", "c"};
  for (size_t k = 0; k < sol.params.size(); ++k) {
    if (mode == Mode::independent)
      out << abc[k] << "=" << fmt(sol.params[k]) << "\n";
    else
      out << "s" << k + 1 << "=" << fmt(sol.params[k]) << "\n";
  }
  out << "residual=" << fmt(sol.residual) << "\n";
  out << "verdict=" << (sol.feasible_nontrivial ? "DECORRELABLE" : "NON-DECORRELABLE")
      << "\n";
  return 0;
}

int cmd_sweep(const SweepGrid& grid, const std::string& csv_path,
              const std::string& pgm_path, std::ostream& err) {
  SweepResult res = sweep(grid);
  if (!write_file(csv_path, sweep_csv(res), err)) return 2;
  if (!pgm_path.empty() && !write_file(pgm_path, sweep_pgm(res), err)) return 2;
  return 0;
}

int cmd_clone(int max_n, double eta, std::ostream& out) {
  for (int n = 1; n <= max_n; ++n) {
    DegreeReport rep = fourier_degree_report(n, eta);
    out << "N=" << n << " input_degree=" << rep.input_degree
        << " target_degree=" << rep.target_degree << " obstruction="
        << (rep.obstruction ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_gauss(double lam, double slack, std::ostream& out) {
  GaussianState state = twin_beam(lam);
  NoiseSpec noise = solve_noise(state, slack);
  GaussianState decorrelated = apply_displacement_noise(state, noise);
  print_matrix(out, "M", state.M);
  print_matrix(out, "Sigma", noise.sigma);
  print_matrix(out, "G", noise.g);
  print_matrix(out, "M_tilde", decorrelated.M);
  out << "n_bar=" << fmt(marginal_occupation(decorrelated, 0)) << "\n";
  return 0;
}

}  // namespace

std::string sweep_csv(const SweepResult& result) {
  const int n_params = result.grid.mode == Mode::independent ? 3 : 6;
  std::string s = "eta,lambda,eta_tilde";
  for (int k = 1; k <= n_params; ++k) s += ",param" + std::to_string(k);
  s += "\n";
  for (const SweepCell& cell : result.cells) {
    s += fmt(cell.eta);
    s += ",";
    s += fmt(cell.lam);
    if (cell.valid) {
      s += ",";
      s += fmt(cell.eta_tilde);
      for (int k = 0; k < n_params; ++k) {
        s += ",";
        s += fmt(cell.params[k]);
      }
    } else {
      for (int k = 0; k <= n_params; ++k) s += ",";
    }
    s += "\n";
  }
  return s;
}

std::string sweep_pgm(const SweepResult& result) {
  std::string s = "P2\n";
  s += std::to_string(result.grid.eta_steps) + " " +
       std::to_string(result.grid.lam_steps) + "\n255\n";
  for (int il = result.grid.lam_steps - 1; il >= 0; --il) {
    for (int ie = 0; ie < result.grid.eta_steps; ++ie) {
      const SweepCell& cell = result.at(il, ie);
      int pixel = 0;
      if (cell.valid) {
        pixel = static_cast<int>(std::lround(255.0 * cell.eta_tilde));
        pixel = std::min(std::max(pixel, 0), 255);
      }
      s += (ie ? " " : "") + std::to_string(pixel);
    }
    s += "\n";
  }
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"covariant decorrelation toolkit"};
  app.require_subcommand(1);

  std::string mode_str = "independent";
  double eta = 0.0, lam = 0.0, p = 0.0;
  double eta_min = 0.0, eta_max = 1.0, lam_min = -1.0, lam_max = 1.0;
  int eta_steps = 51, lam_steps = 51;
  std::string csv_path, pgm_path;
  int max_n = 3;
  double shrink = 2.0 / 3.0;
  double g_lam = 0.0, slack = 1e-6;

  CLI::App* sw = app.add_subcommand("qubit-sweep",
                                    "solve on a grid and write CSV/PGM");
  sw->add_option("--mode", mode_str, "independent or identical")
      ->check(CLI::IsMember({"independent", "identical"}));
  sw->add_option("--eta-steps", eta_steps, "grid steps along eta");
  sw->add_option("--lambda-steps", lam_steps, "grid steps along lambda");
  sw->add_option("--eta-min", eta_min);
  sw->add_option("--eta-max", eta_max);
  sw->add_option("--lambda-min", lam_min);
  sw->add_option("--lambda-max", lam_max);
  sw->add_option("--p", p, "singlet admixture (identical mode)");
  sw->add_option("--out", csv_path, "CSV output path")->required();
  sw->add_option("--pgm", pgm_path, "optional PGM output path");

  CLI::App* qs = app.add_subcommand("qubit-solve", "solve a single seed");
  qs->add_option("--mode", mode_str, "independent or identical")
      ->check(CLI::IsMember({"independent", "identical"}));
  qs->add_option("--eta", eta, "signal length")->required();
  qs->add_option("--lambda", lam, "correlation parameter")->required();
  qs->add_option("--p", p, "singlet admixture (identical mode)");

  CLI::App* cc = app.add_subcommand("clone-check",
                                    "phase-degree obstruction per copy count");
  cc->add_option("--max-n", max_n, "largest input copy count")
      ->check(CLI::Range(1, 6));
  cc->add_option("--eta", shrink, "clone shrink factor");

  CLI::App* ga = app.add_subcommand("gauss",
                                    "decorrelate a twin beam with minimal noise");
  ga->add_option("--lambda", g_lam, "squeeze parameter")->required();
  ga->add_option("--slack", slack, "extra isotropic noise, must be > 0");

  try {
    std::vector<const char*> argv;
    argv.push_back("decorr");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (sw->parsed()) {
      SweepGrid grid;
      grid.mode = parse_mode(mode_str);
      grid.eta_min = eta_min;
      grid.eta_max = eta_max;
      grid.eta_steps = eta_steps;
      grid.lam_min = lam_min;
      grid.lam_max = lam_max;
      grid.lam_steps = lam_steps;
      grid.p = p;
      return cmd_sweep(grid, csv_path, pgm_path, err);
    }
    if (qs->parsed()) return cmd_solve(parse_mode(mode_str), eta, lam, p, out);
    if (cc->parsed()) return cmd_clone(max_n, shrink, out);
    if (ga->parsed()) return cmd_gauss(g_lam, slack, out);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cli
}  // namespace decorr
