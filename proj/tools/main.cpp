#include <CLI11.hpp>

#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "kerrpair/config.hpp"
#include "kerrpair/errors.hpp"

namespace {

using namespace kerrpair;

double parse_value(const std::string& text) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("bad number '" + text + "'");
  return v;
}

void apply_overrides(ModelParams& p, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects name=value, got '" + s + "'");
    set_model_param(p, s.substr(0, eq), parse_value(s.substr(eq + 1)));
  }
}

void print_params(const ModelParams& p, const HilbertSpec& space) {
  std::cout << "# params: delta1=" << p.delta1 << " delta2=" << p.delta2
            << " u1=" << p.u1 << " u2=" << p.u2 << " j_hop=" << p.j_hop
            << " e1=" << p.e1 << " e2=" << p.e2 << " theta1=" << p.theta1
            << " theta2=" << p.theta2 << " kappa1=" << p.kappa1
            << " kappa2=" << p.kappa2 << " gamma=" << p.gamma << " n_th=" << p.n_th
            << " omega_m=" << p.omega_m << " g_om=" << p.g_om
            << " include_mechanics=" << (p.include_mechanics ? "true" : "false") << "\n";
  std::cout << "# space:";
  for (int k = 0; k < space.n_modes(); ++k)
    std::cout << ' ' << space.mode_labels[k] << ':' << space.mode_dims[k];
  std::cout << "\n";
}

struct PointArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string engine = "both";
  int cutoff = 0;
  bool json = false;
};

int run_point(const PointArgs& a) {
  Config cfg;
  if (!a.config.empty()) cfg = load_config(a.config);
  ModelParams p = cfg.params;
  apply_overrides(p, a.sets);
  HilbertSpec space = cfg.space;
  if (space.n_modes() == 0)
    space = p.include_mechanics ? HilbertSpec::with_mechanics() : HilbertSpec::two_mode();
  if (a.cutoff > 0)
    space = p.include_mechanics
                ? HilbertSpec::with_mechanics(a.cutoff, space.mode_dims.back())
                : HilbertSpec::two_mode(a.cutoff);

  SweepSpec spec;
  spec.fixed = p;
  spec.space = space;
  spec.engine = engine_from_name(a.engine);
  spec.workers = 1;
  const SweepResult res = run_sweep(spec);

  if (a.json) {
    std::cout << to_json_string(res) << "\n";
  } else {
    print_params(p, space);
    for (const auto& row : res.rows) {
      std::cout << "engine=" << row.engine << "\n";
      for (size_t i = 0; i < res.output_names.size(); ++i) {
        std::cout << "  " << res.output_names[i] << " = ";
        if (row.outputs[i])
          std::cout << *row.outputs[i];
        else
          std::cout << "NA";
        std::cout << "\n";
      }
    }
  }
  for (const auto& row : res.rows)
    if (!row.valid) {
      std::cerr << "solver failure (" << row.engine << "): " << row.note << "\n";
      return 2;
    }
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::string json;
  int workers = -1;
};

int run_sweep_cmd(const SweepArgs& a) {
  Config cfg = load_config(a.config);
  if (a.workers >= 0) cfg.sweep.workers = a.workers;
  const SweepResult res = run_sweep(cfg.sweep);
  write_csv(res, a.out);
  if (!a.json.empty()) write_json(res, a.json);
  size_t failed = 0;
  for (const auto& row : res.rows)
    if (!row.valid) ++failed;
  std::cout << res.rows.size() << " rows written to " << a.out;
  if (failed) std::cout << " (" << failed << " failed rows flagged)";
  std::cout << "\n";
  return 0;
}

struct FigArgs {
  std::string preset;
  std::string out;
  std::string json;
  bool me_spot_check = false;
  int workers = 0;
};

int run_fig(const FigArgs& a) {
  PresetOptions opts;
  opts.me_spot_check = a.me_spot_check;
  opts.workers = a.workers;
  const SweepResult res = figure_preset(a.preset, opts);
  write_csv(res, a.out);
  if (!a.json.empty()) write_json(res, a.json);
  size_t failed = 0;
  for (const auto& row : res.rows)
    if (!row.valid) ++failed;
  std::cout << res.rows.size() << " rows written to " << a.out;
  if (failed) std::cout << " (" << failed << " failed rows flagged)";
  std::cout << "\n";
  return 0;
}

DensityMatrix random_density(std::mt19937& rng, int dim) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

int run_validate() {
  bool all_ok = true;
  auto check = [&all_ok](const std::string& name, bool pass, double worst) {
    std::cout << (pass ? "ok   " : "FAIL ") << name << "  (worst " << worst << ")\n";
    all_ok = all_ok && pass;
  };

  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  double worst = 0.0;
  for (int k = 0; k < 10; ++k)
    worst = std::max(worst,
                     mode_transformation_check(angle(rng), angle(rng)).max_deviation());
  check("mode transformation sum rules and difference forms", worst <= 1e-13, worst);

  const HilbertSpec spec3 = HilbertSpec::two_mode(3);
  double worst_diff = 0.0, max_b = 0.0;
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho = random_density(rng, spec3.total_dim());
    const double b_sum = chsh_from_state(rho, spec3);
    const double b_closed = chsh_closed_form(rho, spec3);
    worst_diff = std::max(worst_diff, std::abs(b_sum - b_closed));
    max_b = std::max(max_b, b_sum);
  }
  check("CHSH angle sum equals closed form on random states", worst_diff <= 1e-10,
        worst_diff);
  check("Tsirelson bound respected", max_b <= 2.0 * std::numbers::sqrt2 + 1e-9, max_b);

  const DensityMatrix phi_plus =
      DensityMatrix::pure(bell_state(BellLabel::PhiPlus, spec3));
  const double b_phi = chsh_from_state(phi_plus, spec3);
  const double dev_phi = std::abs(b_phi - 2.0 * std::numbers::sqrt2);
  check("maximally entangled state reaches 2*sqrt(2)", dev_phi <= 1e-12, dev_phi);

  ModelParams p;
  p.j_hop = 0.75;
  p.set_u(1.0);
  p.set_delta(0.97);
  const HilbertSpec space = HilbertSpec::two_mode();
  const DensityMatrix rho_ss =
      steady_state(liouvillian(build_effective_hamiltonian(p, space),
                               collapse_operators(p, space)));
  const double csi_direct = csi_witness(rho_ss, space);
  const double csi_ratio = g2_cross(rho_ss, 0, 1, space) /
                           std::sqrt(g2_auto(rho_ss, 0, space) * g2_auto(rho_ss, 1, space));
  const double csi_dev = std::abs(csi_direct - csi_ratio);
  check("CSI witness consistent with its g2 ratio", csi_dev <= 1e-12, csi_dev);

  ModelParams h;
  h.set_u(0.0);
  h.j_hop = 0.7;
  h.set_delta(0.3);
  const AnalyticG2 hg = analytic_g2(h);
  const double hdev = std::max({std::abs(hg.g2_a1 - 1.0), std::abs(hg.g2_a2 - 1.0),
                                std::abs(analytic_csi(h) - 1.0)});
  check("harmonic limit gives g2 = CSI = 1", hdev <= 1e-9, hdev);

  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photon blockade, Cauchy-Schwarz and Bell-CHSH toolkit for two coupled Kerr cavities"};
  app.require_subcommand(1);

  PointArgs point_args;
  auto* point = app.add_subcommand("point", "correlation report at a single parameter point");
  point->add_option("--config", point_args.config, "config file (defaults used otherwise)");
  point->add_option("--set", point_args.sets, "parameter override name=value, repeatable");
  point->add_option("--engine", point_args.engine, "master_equation, analytic or both");
  point->add_option("--cutoff", point_args.cutoff, "optical cutoff override");
  point->add_flag("--json", point_args.json, "emit JSON instead of text");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep from a config file");
  sweep->add_option("--config", sweep_args.config, "config file")->required();
  sweep->add_option("--out", sweep_args.out, "output CSV path")->required();
  sweep->add_option("--json", sweep_args.json, "optional JSON mirror path");
  sweep->add_option("--workers", sweep_args.workers, "worker threads (0 = auto)");

  FigArgs fig_args;
  auto* fig = app.add_subcommand("fig", "figure-reproduction presets");
  fig->add_option("preset", fig_args.preset, "fig2a fig2bcd fig3ab fig3c fig4 fig5 fig6")
      ->required();
  fig->add_option("--out", fig_args.out, "output CSV path")->required();
  fig->add_option("--json", fig_args.json, "optional JSON mirror path");
  fig->add_flag("--me-spot-check", fig_args.me_spot_check,
                "add a 5x5 master-equation subgrid to fig4/fig5");
  fig->add_option("--workers", fig_args.workers, "worker threads (0 = auto)");

  auto* validate = app.add_subcommand("validate", "run the internal identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (point->parsed()) return run_point(point_args);
    if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    if (fig->parsed()) return run_fig(fig_args);
    if (validate->parsed()) return run_validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
