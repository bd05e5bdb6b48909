#include "kerrpair/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "kerrpair/errors.hpp"

namespace kerrpair {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("key '" + key + "': bad number '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("key '" + key + "': bad integer '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("key '" + key + "': bad boolean '" + value + "', expected true/false");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

Config parse_config(std::string_view text) {
  ModelParams params;
  int optical_cutoff = 5;
  int phonon_cutoff = 3;
  Engine engine = Engine::Both;
  std::vector<std::string> outputs = known_outputs();
  int workers = 0;
  std::vector<SweepAxis> axes;

  std::string section;
  std::istringstream stream{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("unterminated section header");
        section = trim(std::string_view(line).substr(1, line.size() - 2));
        if (section == "axis") {
          if (axes.size() >= 2) throw ConfigError("more than 2 [axis] sections");
          axes.emplace_back();
          axes.back().points = 2;  // placeholder until the key arrives
        } else if (section != "model" && section != "hilbert" && section != "sweep") {
          throw ConfigError("unknown section '" + section + "'");
        }
        continue;
      }

      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key = value");
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty() || value.empty()) throw ConfigError("expected key = value");

      if (section.empty()) {
        throw ConfigError("key '" + key + "' outside any section");
      } else if (section == "model") {
        if (key == "include_mechanics")
          params.include_mechanics = parse_bool(key, value);
        else if (is_model_param(key))
          set_model_param(params, key, parse_double(key, value));
        else
          throw ConfigError("unknown [model] key '" + key + "'");
      } else if (section == "hilbert") {
        if (key == "optical_cutoff") optical_cutoff = parse_int(key, value);
        else if (key == "phonon_cutoff") phonon_cutoff = parse_int(key, value);
        else throw ConfigError("unknown [hilbert] key '" + key + "'");
      } else if (section == "sweep") {
        if (key == "engine") engine = engine_from_name(value);
        else if (key == "outputs") outputs = split_list(value);
        else if (key == "workers") workers = parse_int(key, value);
        else throw ConfigError("unknown [sweep] key '" + key + "'");
      } else {  // axis
        SweepAxis& ax = axes.back();
        if (key == "name") ax.name = value;
        else if (key == "min") ax.min = parse_double(key, value);
        else if (key == "max") ax.max = parse_double(key, value);
        else if (key == "points") ax.points = parse_int(key, value);
        else if (key == "spacing") {
          if (value == "linear") ax.log_spacing = false;
          else if (value == "log") ax.log_spacing = true;
          else throw ConfigError("key 'spacing': expected linear or log");
        } else {
          throw ConfigError("unknown [axis] key '" + key + "'");
        }
      }
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
    }
  }

  if (optical_cutoff < 2) throw ConfigError("optical_cutoff must be >= 2");
  if (phonon_cutoff < 2) throw ConfigError("phonon_cutoff must be >= 2");

  Config cfg;
  cfg.params = params;
  cfg.space = params.include_mechanics
                  ? HilbertSpec::with_mechanics(optical_cutoff, phonon_cutoff)
                  : HilbertSpec::two_mode(optical_cutoff);
  cfg.sweep.axes = std::move(axes);
  cfg.sweep.fixed = params;
  cfg.sweep.space = cfg.space;
  cfg.sweep.outputs = std::move(outputs);
  cfg.sweep.engine = engine;
  cfg.sweep.workers = workers;
  cfg.sweep.validate();
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

}  // namespace kerrpair
