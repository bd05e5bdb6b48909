#include "kerrpair/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <thread>

#include "kerrpair/errors.hpp"

namespace kerrpair {

namespace {

constexpr const char* kMasterTag = "master_equation";
constexpr const char* kAnalyticTag = "analytic";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// keep notes single-cell safe for the CSV
std::string sanitize_note(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return s;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k)
    v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return v;
}

// columns presets may add on top of the sweepable outputs
const std::set<std::string>& output_universe() {
  static const std::set<std::string> u = [] {
    std::set<std::string> s(known_outputs().begin(), known_outputs().end());
    s.insert("g2_tau_a1");
    s.insert("g2_tau_a2");
    return s;
  }();
  return u;
}

double me_observable(const std::string& name, const DensityMatrix& rho,
                     const HilbertSpec& space) {
  if (name == "n1") return mean_photon(rho, 0, space);
  if (name == "n2") return mean_photon(rho, 1, space);
  if (name == "g2_a1") return g2_auto(rho, 0, space);
  if (name == "g2_a2") return g2_auto(rho, 1, space);
  if (name == "g2_cross") return g2_cross(rho, 0, 1, space);
  if (name == "csi") return csi_witness(rho, space);
  if (name == "chsh") return chsh_from_state(rho, space);
  if (name == "f_phi_plus") return bell_fidelity(rho, BellLabel::PhiPlus, space);
  if (name == "f_phi_minus") return bell_fidelity(rho, BellLabel::PhiMinus, space);
  if (name == "f_psi_plus") return bell_fidelity(rho, BellLabel::PsiPlus, space);
  if (name == "f_psi_minus") return bell_fidelity(rho, BellLabel::PsiMinus, space);
  throw ConfigError("unknown output '" + name + "'");
}

// fidelities have no amplitude-level counterpart and stay empty
std::optional<double> analytic_observable(const std::string& name, const AmplitudeSet& amps,
                                          ChshCrossTerm cross) {
  try {
    if (name == "n1") return std::norm(amps.c10);
    if (name == "n2") return std::norm(amps.c01);
    if (name == "g2_a1") return g2_auto_from_amplitudes(amps, 0);
    if (name == "g2_a2") return g2_auto_from_amplitudes(amps, 1);
    if (name == "g2_cross") return g2_cross_from_amplitudes(amps);
    if (name == "csi") return csi_from_amplitudes(amps);
    if (name == "chsh") return chsh_from_amplitudes(amps, cross);
  } catch (const UndefinedCorrelation&) {
  }
  return std::nullopt;
}

ResultRow me_row(const ModelParams& p, const HilbertSpec& space,
                 const std::vector<std::string>& names) {
  ResultRow row;
  row.engine = kMasterTag;
  row.outputs.assign(names.size(), std::nullopt);
  try {
    const Operator h = p.include_mechanics ? build_lab_hamiltonian(p, space)
                                           : build_effective_hamiltonian(p, space);
    const auto collapses = collapse_operators(p, space);
    const Superoperator l = liouvillian(h, collapses);
    const DensityMatrix rho = steady_state(l);
    for (size_t i = 0; i < names.size(); ++i) {
      try {
        row.outputs[i] = me_observable(names[i], rho, space);
      } catch (const UndefinedCorrelation&) {
      }
    }
  } catch (const std::exception& e) {
    row.valid = false;
    row.note = sanitize_note(e.what());
    row.outputs.assign(names.size(), std::nullopt);
  }
  return row;
}

ResultRow analytic_row(const ModelParams& p, const std::vector<std::string>& names,
                       ChshCrossTerm cross = ChshCrossTerm::PhaseAware) {
  ResultRow row;
  row.engine = kAnalyticTag;
  row.outputs.assign(names.size(), std::nullopt);
  try {
    const AmplitudeSet amps = steady_amplitudes(p);
    for (size_t i = 0; i < names.size(); ++i)
      row.outputs[i] = analytic_observable(names[i], amps, cross);
  } catch (const std::exception& e) {
    row.valid = false;
    row.note = sanitize_note(e.what());
    row.outputs.assign(names.size(), std::nullopt);
  }
  return row;
}

// index-addressed pool; rows land in fixed slots so output bytes cannot
// depend on the worker count
void parallel_for(size_t n, int workers, const std::function<void(size_t)>& fn) {
  size_t w = workers > 0 ? static_cast<size_t>(workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  w = std::min(w, std::max<size_t>(n, 1));
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  const auto body = [&] {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(w - 1);
  for (size_t k = 0; k + 1 < w; ++k) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

std::vector<std::string> normalized_outputs(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

bool wants_two_photon(const std::vector<std::string>& names) {
  for (const auto& n : names)
    if (n.starts_with("g2") || n == "csi" || n == "chsh") return true;
  return false;
}

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::MasterEquation: return kMasterTag;
    case Engine::Analytic: return kAnalyticTag;
    case Engine::Both: return "both";
  }
  throw ConfigError("unknown engine");
}

Engine engine_from_name(const std::string& name) {
  if (name == kMasterTag) return Engine::MasterEquation;
  if (name == kAnalyticTag) return Engine::Analytic;
  if (name == "both") return Engine::Both;
  throw ConfigError("unknown engine '" + name + "', expected master_equation, analytic or both");
}

void SweepAxis::validate() const {
  if (!is_model_param(name))
    throw ConfigError("axis '" + name + "' is not a sweepable parameter");
  if (points < 2)
    throw ConfigError("axis '" + name + "' needs at least 2 points");
  if (!(min < max)) throw ConfigError("axis '" + name + "' needs min < max");
  if (log_spacing && !(min > 0.0))
    throw ConfigError("axis '" + name + "' uses log spacing but min <= 0");
}

std::vector<double> SweepAxis::values() const {
  validate();
  std::vector<double> v(points);
  if (log_spacing) {
    const double llo = std::log(min), lhi = std::log(max);
    for (int k = 0; k < points; ++k)
      v[k] = std::exp(llo + (lhi - llo) * static_cast<double>(k) /
                                static_cast<double>(points - 1));
  } else {
    v = linspace(min, max, points);
  }
  return v;
}

bool is_model_param(const std::string& name) {
  static const std::set<std::string> names{
      "delta1", "delta2", "delta", "u1", "u2",     "u",      "j_hop",
      "e1",     "e2",     "theta1", "theta2", "theta", "kappa1", "kappa2",
      "kappa",  "gamma",  "n_th",  "omega_m", "g_om"};
  return names.contains(name);
}

void set_model_param(ModelParams& p, const std::string& name, double value) {
  if (name == "delta1") p.delta1 = value;
  else if (name == "delta2") p.delta2 = value;
  else if (name == "delta") p.set_delta(value);
  else if (name == "u1") p.u1 = value;
  else if (name == "u2") p.u2 = value;
  else if (name == "u") p.set_u(value);
  else if (name == "j_hop") p.j_hop = value;
  else if (name == "e1") p.e1 = value;
  else if (name == "e2") p.e2 = value;
  else if (name == "theta1") p.theta1 = value;
  else if (name == "theta2") p.theta2 = value;
  else if (name == "theta") p.theta1 = value;
  else if (name == "kappa1") p.kappa1 = value;
  else if (name == "kappa2") p.kappa2 = value;
  else if (name == "kappa") p.set_kappa(value);
  else if (name == "gamma") p.gamma = value;
  else if (name == "n_th") p.n_th = value;
  else if (name == "omega_m") p.omega_m = value;
  else if (name == "g_om") p.g_om = value;
  else throw ConfigError("unknown parameter '" + name + "'");
}

const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> names{
      "chsh", "csi",   "f_phi_minus", "f_phi_plus", "f_psi_minus", "f_psi_plus",
      "g2_a1", "g2_a2", "g2_cross",   "n1",         "n2"};
  return names;
}

void SweepSpec::validate() const {
  fixed.validate();
  space.validate(2);
  if (axes.size() > 2) throw ConfigError("at most 2 sweep axes are supported");
  std::set<std::string> seen;
  for (const auto& ax : axes) {
    ax.validate();
    if (!seen.insert(ax.name).second)
      throw ConfigError("axis '" + ax.name + "' appears twice");
  }
  if (outputs.empty()) throw ConfigError("no outputs requested");
  for (const auto& name : outputs)
    if (std::find(known_outputs().begin(), known_outputs().end(), name) ==
        known_outputs().end())
      throw ConfigError("unknown output '" + name + "'");
  if (wants_two_photon(outputs) && (space.mode_dims[0] < 3 || space.mode_dims[1] < 3))
    throw ConfigError("two-photon outputs need optical cutoffs >= 3");
  if (workers < 0) throw ConfigError("workers must be >= 0");
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult res;
  for (const auto& ax : spec.axes) res.axis_names.push_back(ax.name);
  res.output_names = normalized_outputs(spec.outputs);

  std::vector<std::vector<double>> axvals;
  size_t npoints = 1;
  for (const auto& ax : spec.axes) {
    axvals.push_back(ax.values());
    npoints *= axvals.back().size();
  }
  const size_t per_point = spec.engine == Engine::Both ? 2 : 1;
  res.rows.assign(npoints * per_point, ResultRow{});

  parallel_for(npoints, spec.workers, [&](size_t idx) {
    std::vector<double> vals(spec.axes.size());
    size_t rem = idx;
    for (size_t a = spec.axes.size(); a-- > 0;) {
      vals[a] = axvals[a][rem % axvals[a].size()];
      rem /= axvals[a].size();
    }
    ModelParams p = spec.fixed;
    for (size_t a = 0; a < spec.axes.size(); ++a)
      set_model_param(p, spec.axes[a].name, vals[a]);

    size_t slot = idx * per_point;
    if (spec.engine != Engine::Analytic) {
      res.rows[slot] = me_row(p, spec.space, res.output_names);
      res.rows[slot].axis_values = vals;
      ++slot;
    }
    if (spec.engine != Engine::MasterEquation) {
      res.rows[slot] = analytic_row(p, res.output_names);
      res.rows[slot].axis_values = vals;
    }
  });
  return res;
}

namespace {

// the three (J, U) operating regimes the figure presets cycle through
const std::vector<std::pair<double, double>>& regimes() {
  static const std::vector<std::pair<double, double>> r{
      {1.5, 0.09}, {1.0, 0.5}, {0.75, 1.0}};
  return r;
}

ModelParams preset_base() { return ModelParams{}; }

struct PresetTask {
  ModelParams params;
  std::vector<double> axis_values;
  bool analytic = false;
  ChshCrossTerm cross = ChshCrossTerm::PhaseAware;
};

void fill_rows(SweepResult& res, const std::vector<PresetTask>& tasks, int workers,
               const HilbertSpec& space) {
  res.rows.assign(tasks.size(), ResultRow{});
  parallel_for(tasks.size(), workers, [&](size_t i) {
    res.rows[i] = tasks[i].analytic
                      ? analytic_row(tasks[i].params, res.output_names, tasks[i].cross)
                      : me_row(tasks[i].params, space, res.output_names);
    res.rows[i].axis_values = tasks[i].axis_values;
  });
}

SweepResult preset_fig2a(const PresetOptions& opts) {
  SweepResult res;
  res.axis_names = {"j_hop", "u", "delta"};
  res.output_names = {"csi", "g2_a1", "g2_a2", "g2_cross", "n1", "n2"};
  const auto deltas = linspace(-2.0, 2.0, 161);
  std::vector<PresetTask> tasks;
  for (const auto& [j, u] : regimes())
    for (double d : deltas) {
      ModelParams p = preset_base();
      p.j_hop = j;
      p.set_u(u);
      p.set_delta(d);
      tasks.push_back({p, {j, u, d}, false});
      tasks.push_back({p, {j, u, d}, true});
    }
  fill_rows(res, tasks, opts.workers, HilbertSpec::two_mode());
  return res;
}

// master-equation argmin of g2_a1 over the fig2a delta grid for one regime
double optimal_delta(double j, double u, int workers) {
  const auto deltas = linspace(-2.0, 2.0, 161);
  std::vector<std::optional<double>> g2(deltas.size());
  const HilbertSpec space = HilbertSpec::two_mode();
  const std::vector<std::string> names{"g2_a1"};
  parallel_for(deltas.size(), workers, [&](size_t i) {
    ModelParams p = preset_base();
    p.j_hop = j;
    p.set_u(u);
    p.set_delta(deltas[i]);
    const ResultRow row = me_row(p, space, names);
    if (row.valid) g2[i] = row.outputs[0];
  });
  size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < deltas.size(); ++i)
    if (g2[i] && *g2[i] < best_val) {
      best_val = *g2[i];
      best = i;
    }
  if (!std::isfinite(best_val))
    throw SolverError("no defined g2_a1 value on the delta grid");
  return deltas[best];
}

SweepResult preset_fig2bcd(const PresetOptions& opts) {
  SweepResult res;
  res.axis_names = {"j_hop", "u", "delta", "theta"};
  res.output_names = {"g2_a1"};
  std::vector<PresetTask> tasks;
  for (const auto& [j, u] : regimes()) {
    const double d = optimal_delta(j, u, opts.workers);
    for (int k = 0; k < 72; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / 72.0;
      ModelParams p = preset_base();
      p.j_hop = j;
      p.set_u(u);
      p.set_delta(d);
      p.theta1 = theta;
      tasks.push_back({p, {j, u, d, theta}, false});
    }
  }
  fill_rows(res, tasks, opts.workers, HilbertSpec::two_mode());
  return res;
}

SweepResult preset_fig3ab(const PresetOptions& opts) {
  SweepResult res;
  res.axis_names = {"j_hop", "u", "delta"};
  res.output_names = {"n1", "n2"};
  const auto deltas = linspace(-2.0, 2.0, 161);
  // panels (a) and (b) only; the middle regime is not part of this figure
  const std::vector<std::pair<double, double>> panels{{1.5, 0.09}, {0.75, 1.0}};
  std::vector<PresetTask> tasks;
  for (const auto& [j, u] : panels)
    for (double d : deltas) {
      ModelParams p = preset_base();
      p.j_hop = j;
      p.set_u(u);
      p.set_delta(d);
      tasks.push_back({p, {j, u, d}, false});
    }
  fill_rows(res, tasks, opts.workers, HilbertSpec::two_mode());
  return res;
}

SweepResult preset_fig3c(const PresetOptions&) {
  SweepResult res;
  res.axis_names = {"j_hop", "u", "delta", "tau"};
  res.output_names = {"g2_tau_a1", "g2_tau_a2"};
  ModelParams p = preset_base();
  p.j_hop = 0.75;
  p.set_u(1.0);
  p.set_delta(0.97);
  const HilbertSpec space = HilbertSpec::two_mode();
  const auto taus = linspace(0.0, 20.0, 201);
  res.rows.assign(taus.size(), ResultRow{});
  try {
    const Superoperator l =
        liouvillian(build_effective_hamiltonian(p, space), collapse_operators(p, space));
    const DensityMatrix rho = steady_state(l);
    const auto t1 = g2_tau(rho, l, 0, taus, space);
    const auto t2 = g2_tau(rho, l, 1, taus, space);
    for (size_t i = 0; i < taus.size(); ++i) {
      res.rows[i].axis_values = {p.j_hop, p.u1, p.delta1, taus[i]};
      res.rows[i].engine = kMasterTag;
      res.rows[i].outputs = {t1[i], t2[i]};
    }
  } catch (const std::exception& e) {
    for (size_t i = 0; i < taus.size(); ++i) {
      res.rows[i].axis_values = {p.j_hop, p.u1, p.delta1, taus[i]};
      res.rows[i].engine = kMasterTag;
      res.rows[i].outputs = {std::nullopt, std::nullopt};
      res.rows[i].valid = false;
      res.rows[i].note = sanitize_note(e.what());
    }
  }
  return res;
}

// shared (delta, u) contour machinery of fig4 and fig5
void contour_tasks(std::vector<PresetTask>& tasks, double j,
                   const std::vector<double>& us, const std::vector<double>& deltas,
                   bool analytic, ChshCrossTerm cross = ChshCrossTerm::PhaseAware) {
  for (double u : us)
    for (double d : deltas) {
      ModelParams p = preset_base();
      p.j_hop = j;
      p.set_u(u);
      p.set_delta(d);
      tasks.push_back({p, {j, u, d}, analytic, cross});
    }
}

SweepResult preset_fig4(const PresetOptions& opts) {
  SweepResult res;
  res.axis_names = {"j_hop", "u", "delta"};
  res.output_names = {"csi", "g2_a1", "g2_a2", "g2_cross"};
  std::vector<PresetTask> tasks;
  // line panels at the fixed regime nonlinearities
  for (const auto& [j, u] : regimes())
    for (double d : linspace(-2.0, 2.0, 161)) {
      ModelParams p = preset_base();
      p.j_hop = j;
      p.set_u(u);
      p.set_delta(d);
      tasks.push_back({p, {j, u, d}, true});
    }
  // contour panels over (delta, u)
  for (const auto& [j, u] : regimes()) {
    (void)u;
    contour_tasks(tasks, j, linspace(0.0, 2.0, 61), linspace(-2.0, 2.0, 61), true);
    if (opts.me_spot_check)
      contour_tasks(tasks, j, linspace(0.0, 2.0, 5), linspace(-2.0, 2.0, 5), false);
  }
  fill_rows(res, tasks, opts.workers, HilbertSpec::two_mode());
  return res;
}

SweepResult preset_fig5(const PresetOptions& opts) {
  SweepResult res;
  res.axis_names = {"j_hop", "u", "delta"};
  res.output_names = {"chsh", "csi"};
  // these panels use the printed-modulus cross term: it is the reading whose
  // J = 2 panel loses every violation while J = 0.5 still approaches 2.7
  std::vector<PresetTask> tasks;
  for (double j : {0.5, 1.0, 1.5, 2.0}) {
    contour_tasks(tasks, j, linspace(0.0, 1.5, 61), linspace(-2.0, 2.0, 61), true,
                  ChshCrossTerm::ModulusPrinted);
    if (opts.me_spot_check)
      contour_tasks(tasks, j, linspace(0.0, 1.5, 5), linspace(-2.0, 2.0, 5), false);
  }
  fill_rows(res, tasks, opts.workers, HilbertSpec::two_mode());
  return res;
}

SweepResult preset_fig6(const PresetOptions& opts) {
  SweepResult res;
  res.axis_names = {"j_hop", "e_ratio", "t"};
  res.output_names = {"f_phi_minus", "f_phi_plus", "f_psi_minus", "f_psi_plus"};
  const std::vector<double> js{1.0, 0.5};
  const std::vector<double> ratios{5.0, 15.0, 30.0, 50.0};
  const auto times = linspace(0.0, 20.0, 201);
  const HilbertSpec space = HilbertSpec::two_mode();
  const size_t block = times.size();
  res.rows.assign(js.size() * ratios.size() * block, ResultRow{});

  parallel_for(js.size() * ratios.size(), opts.workers, [&](size_t run) {
    const double j = js[run / ratios.size()];
    const double ratio = ratios[run % ratios.size()];
    ModelParams p = preset_base();
    p.j_hop = j;
    p.set_delta(1.0);
    p.set_u(1.0);
    p.e2 = p.e1 / ratio;
    const size_t base = run * block;
    for (size_t i = 0; i < block; ++i) {
      res.rows[base + i].axis_values = {j, ratio, times[i]};
      res.rows[base + i].engine = kMasterTag;
      res.rows[base + i].outputs.assign(4, std::nullopt);
    }
    try {
      const Superoperator l = liouvillian(build_effective_hamiltonian(p, space),
                                          collapse_operators(p, space));
      const auto traj = evolve(DensityMatrix::vacuum(space), l, times);
      for (size_t i = 0; i < block; ++i)
        res.rows[base + i].outputs = {
            bell_fidelity(traj[i], BellLabel::PhiMinus, space),
            bell_fidelity(traj[i], BellLabel::PhiPlus, space),
            bell_fidelity(traj[i], BellLabel::PsiMinus, space),
            bell_fidelity(traj[i], BellLabel::PsiPlus, space)};
    } catch (const std::exception& e) {
      for (size_t i = 0; i < block; ++i) {
        res.rows[base + i].valid = false;
        res.rows[base + i].note = sanitize_note(e.what());
      }
    }
  });
  return res;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2a", "fig2bcd", "fig3ab", "fig3c",
                                              "fig4",  "fig5",    "fig6"};
  return names;
}

SweepResult figure_preset(const std::string& name, const PresetOptions& opts) {
  if (name == "fig2a") return preset_fig2a(opts);
  if (name == "fig2bcd") return preset_fig2bcd(opts);
  if (name == "fig3ab") return preset_fig3ab(opts);
  if (name == "fig3c") return preset_fig3c(opts);
  if (name == "fig4") return preset_fig4(opts);
  if (name == "fig5") return preset_fig5(opts);
  if (name == "fig6") return preset_fig6(opts);
  throw ConfigError("unknown preset '" + name + "'; known: fig2a fig2bcd fig3ab fig3c fig4 fig5 fig6");
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
  bool first = true;
  auto emit = [&](const std::string& cell) {
    if (!first) f << ',';
    f << cell;
    first = false;
  };
  for (const auto& n : result.axis_names) emit(n);
  for (const auto& n : result.output_names) emit(n);
  emit("engine");
  emit("valid");
  emit("note");
  f << '\n';
  for (const auto& row : result.rows) {
    first = true;
    for (double v : row.axis_values) emit(format_double(v));
    for (const auto& v : row.outputs) emit(v ? format_double(*v) : "NA");
    emit(row.engine);
    emit(row.valid ? "1" : "0");
    emit(row.note);
    f << '\n';
  }
  f.flush();
  if (!f) throw ConfigError("write to '" + path.string() + "' failed");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_double_cell(const std::string& cell) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw ConfigError("bad numeric cell '" + cell + "'");
  return v;
}

}  // namespace

SweepResult read_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(f, line)) throw ConfigError("empty CSV '" + path.string() + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[header.size() - 3] != "engine" ||
      header[header.size() - 2] != "valid" || header.back() != "note")
    throw ConfigError("CSV header must end with engine,valid,note");

  SweepResult res;
  bool in_outputs = false;
  for (size_t i = 0; i + 3 < header.size(); ++i) {
    if (output_universe().contains(header[i])) {
      in_outputs = true;
      res.output_names.push_back(header[i]);
    } else {
      if (in_outputs)
        throw ConfigError("axis column '" + header[i] + "' after output columns");
      res.axis_names.push_back(header[i]);
    }
  }

  const size_t na = res.axis_names.size();
  const size_t no = res.output_names.size();
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ConfigError("CSV row has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
    ResultRow row;
    for (size_t i = 0; i < na; ++i) row.axis_values.push_back(parse_double_cell(cells[i]));
    for (size_t i = 0; i < no; ++i)
      row.outputs.push_back(cells[na + i] == "NA"
                                ? std::optional<double>{}
                                : std::optional<double>{parse_double_cell(cells[na + i])});
    row.engine = cells[na + no];
    const std::string& v = cells[na + no + 1];
    if (v != "0" && v != "1") throw ConfigError("bad valid flag '" + v + "'");
    row.valid = v == "1";
    row.note = cells[na + no + 2];
    res.rows.push_back(std::move(row));
  }
  return res;
}

std::string to_json_string(const SweepResult& result) {
  nlohmann::json j;
  j["axes"] = result.axis_names;
  j["outputs"] = result.output_names;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : result.rows) {
    nlohmann::json r;
    for (size_t a = 0; a < result.axis_names.size(); ++a)
      r[result.axis_names[a]] = row.axis_values[a];
    for (size_t o = 0; o < result.output_names.size(); ++o) {
      if (row.outputs[o])
        r[result.output_names[o]] = *row.outputs[o];
      else
        r[result.output_names[o]] = nullptr;
    }
    r["engine"] = row.engine;
    r["valid"] = row.valid;
    r["note"] = row.note;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2);
}

void write_json(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
  f << to_json_string(result) << '\n';
  f.flush();
  if (!f) throw ConfigError("write to '" + path.string() + "' failed");
}

}  // namespace kerrpair
