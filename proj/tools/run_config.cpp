#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "polariton/util.hpp"

namespace polariton::cli {

using nlohmann::json;

std::vector<double> AxisSpec::values() const {
  std::vector<double> v;
  if (points == 1) return {min};
  v.reserve(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    v.push_back(min + (max - min) * i / static_cast<double>(points - 1));
  }
  return v;
}

namespace {

struct Source {
  std::filesystem::path path;
  std::string text;

  int line_of_byte(size_t byte) const {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(),
                                           text.begin() + static_cast<long>(byte), '\n'));
  }
  // Locates a key by its first quoted occurrence; good enough for error
  // reporting since duplicate keys cannot both survive JSON parsing anyway.
  int line_of_key(const std::string& key) const {
    const auto pos = text.find("\"" + key + "\"");
    return pos == std::string::npos ? 0 : line_of_byte(pos);
  }
  [[noreturn]] void fail_at(int line, const std::string& msg) const {
    std::string where = path.string();
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(where + ": " + msg);
  }
  [[noreturn]] void fail_key(const std::string& key, const std::string& msg) const {
    fail_at(line_of_key(key), msg);
  }
};

void check_keys(const Source& src, const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return it.key() == k;
        }) == allowed.end()) {
      src.fail_key(it.key(), "unknown key \"" + it.key() + "\" in " + section);
    }
  }
}

double req_num(const Source& src, const json& obj, const char* key) {
  if (!obj.contains(key)) {
    src.fail_at(0, std::string("missing required key \"") + key + "\"");
  }
  if (!obj[key].is_number()) src.fail_key(key, std::string("\"") + key + "\" must be a number");
  return obj[key].get<double>();
}

double get_num(const Source& src, const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) src.fail_key(key, std::string("\"") + key + "\" must be a number");
  return obj[key].get<double>();
}

int get_int(const Source& src, const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    src.fail_key(key, std::string("\"") + key + "\" must be an integer");
  }
  return obj[key].get<int>();
}

std::string get_str(const Source& src, const json& obj, const char* key,
                    const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) src.fail_key(key, std::string("\"") + key + "\" must be a string");
  return obj[key].get<std::string>();
}

bool get_bool(const Source& src, const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) src.fail_key(key, std::string("\"") + key + "\" must be a boolean");
  return obj[key].get<bool>();
}

AxisSpec parse_axis(const Source& src, const json& parent, const char* key, bool required) {
  AxisSpec ax;
  if (!parent.contains(key)) {
    if (required) src.fail_at(0, std::string("missing required key \"") + key + "\"");
    return ax;
  }
  const json& obj = parent[key];
  if (!obj.is_object()) {
    src.fail_key(key, std::string("\"") + key + "\" must be {min, max, points}");
  }
  check_keys(src, obj, std::string("\"") + key + "\"", {"min", "max", "points"});
  ax.min = req_num(src, obj, "min");
  ax.max = req_num(src, obj, "max");
  ax.points = get_int(src, obj, "points", 0);
  if (ax.points < 1) src.fail_key(key, std::string("\"") + key + "\": points must be >= 1");
  if (ax.points == 1 && ax.max != ax.min) {
    src.fail_key(key, std::string("\"") + key + "\": single-point axis needs min == max");
  }
  if (ax.points > 1 && ax.max <= ax.min) {
    src.fail_key(key, std::string("\"") + key + "\": max must exceed min");
  }
  return ax;
}

void in_set(const Source& src, const char* key, const std::string& v,
            std::initializer_list<const char*> allowed) {
  if (std::find_if(allowed.begin(), allowed.end(),
                   [&](const char* s) { return v == s; }) == allowed.end()) {
    std::string opts;
    for (const char* s : allowed) opts += (opts.empty() ? "" : " | ") + std::string(s);
    src.fail_key(key, std::string("\"") + key + "\" must be one of: " + opts);
  }
}

PhysParams parse_physical(const Source& src, const json& obj) {
  check_keys(src, obj, "\"physical\"",
             {"electron_density_per_m2", "effective_mass_ratio", "lattice_a_um",
              "matter_linewidth_GHz"});
  PhysParams par;
  par.n_e = get_num(src, obj, "electron_density_per_m2", par.n_e);
  par.m_eff = get_num(src, obj, "effective_mass_ratio", par.m_eff / si::electron_mass) *
              si::electron_mass;
  par.a = get_num(src, obj, "lattice_a_um", par.a / units::um) * units::um;
  par.gamma_c = units::rad_per_s_from_ghz(
      get_num(src, obj, "matter_linewidth_GHz", par.gamma_c / (si::two_pi * units::ghz)));
  try {
    par.validate();
  } catch (const std::exception& e) {
    src.fail_key("physical", e.what());
  }
  return par;
}

ToyConfig parse_toy(const Source& src, const json& obj) {
  check_keys(src, obj, "\"toy\"",
             {"mode", "pattern_overlap", "grid_n", "terms", "b_sweep_T", "b_field_T",
              "path_points", "frequency_GHz", "polarization_in", "polarization_out"});
  ToyConfig t;
  t.mode = get_str(src, obj, "mode", "");
  if (t.mode.empty()) src.fail_at(0, "missing required key \"mode\" in \"toy\"");
  in_set(src, "mode", t.mode, {"dispersion", "collapse", "term-toggles", "transmission-map"});
  t.pattern_overlap = get_num(src, obj, "pattern_overlap", t.pattern_overlap);
  if (t.pattern_overlap < 0.0 || t.pattern_overlap > 1.0) {
    src.fail_key("pattern_overlap", "\"pattern_overlap\" must lie in [0,1]");
  }
  t.grid_n = get_int(src, obj, "grid_n", t.grid_n);
  if (t.grid_n < 4) src.fail_key("grid_n", "\"grid_n\" must be >= 4");
  t.terms = get_str(src, obj, "terms", t.terms);
  in_set(src, "terms", t.terms,
         {"full", "decoupled", "rwa", "antiresonant", "a2-only", "int-only"});
  const bool needs_sweep = t.mode != "collapse";
  t.b_sweep_t = parse_axis(src, obj, "b_sweep_T", needs_sweep);
  if (needs_sweep && t.b_sweep_t.min <= 0.0) {
    src.fail_key("b_sweep_T", "\"b_sweep_T\": min must be > 0");
  }
  t.b_field_t = get_num(src, obj, "b_field_T", t.b_field_t);
  if (t.b_field_t <= 0.0) src.fail_key("b_field_T", "\"b_field_T\" must be > 0");
  t.path_points = get_int(src, obj, "path_points", t.path_points);
  if (t.path_points < 2) src.fail_key("path_points", "\"path_points\" must be >= 2");
  t.frequency_ghz = parse_axis(src, obj, "frequency_GHz", t.mode == "transmission-map");
  if (t.mode == "transmission-map" && t.frequency_ghz.min <= 0.0) {
    src.fail_key("frequency_GHz", "\"frequency_GHz\": min must be > 0");
  }
  t.pol_in = get_str(src, obj, "polarization_in", t.pol_in);
  in_set(src, "polarization_in", t.pol_in, {"x", "y"});
  t.pol_out = get_str(src, obj, "polarization_out", t.pol_out);
  in_set(src, "polarization_out", t.pol_out, {"x", "y"});
  return t;
}

IngestConfig parse_ingest(const Source& src, const json& obj,
                          const std::filesystem::path& config_dir) {
  check_keys(src, obj, "\"ingest\"", {"manifests", "b_field_T", "z_ref_um"});
  IngestConfig g;
  if (!obj.contains("manifests") || !obj["manifests"].is_array() ||
      obj["manifests"].empty()) {
    src.fail_key("manifests", "\"manifests\" must be a non-empty array of paths");
  }
  for (const auto& item : obj["manifests"]) {
    if (!item.is_string()) {
      src.fail_key("manifests", "\"manifests\" entries must be strings");
    }
    const auto p = config_dir / item.get<std::string>();
    if (!std::filesystem::exists(p)) {
      src.fail_key("manifests", "profile manifest not found: " + p.string());
    }
    g.manifests.push_back(p);
  }
  g.b_field_t = get_num(src, obj, "b_field_T", g.b_field_t);
  if (g.b_field_t == 0.0) src.fail_key("b_field_T", "\"b_field_T\" must be nonzero");
  g.z_ref_um = get_num(src, obj, "z_ref_um", g.z_ref_um);
  return g;
}

FilmConfig parse_film(const Source& src, const json& obj) {
  check_keys(src, obj, "\"film\"",
             {"b_field_T", "scattering_rate_GHz", "sheet_thickness_um", "host_eps",
              "substrate_eps", "substrate_thickness_um", "frequency_GHz"});
  FilmConfig f;
  f.b_field_t = get_num(src, obj, "b_field_T", f.b_field_t);
  f.scattering_rate_ghz = get_num(src, obj, "scattering_rate_GHz", f.scattering_rate_ghz);
  if (f.scattering_rate_ghz < 0.0) {
    src.fail_key("scattering_rate_GHz", "\"scattering_rate_GHz\" must be >= 0");
  }
  f.sheet_thickness_um = get_num(src, obj, "sheet_thickness_um", f.sheet_thickness_um);
  if (f.sheet_thickness_um <= 0.0) {
    src.fail_key("sheet_thickness_um", "\"sheet_thickness_um\" must be > 0");
  }
  f.host_eps = get_num(src, obj, "host_eps", f.host_eps);
  f.substrate_eps = get_num(src, obj, "substrate_eps", f.substrate_eps);
  if (f.host_eps < 1.0 || f.substrate_eps < 1.0) {
    src.fail_key("host_eps", "permittivities must be >= 1");
  }
  f.substrate_thickness_um = get_num(src, obj, "substrate_thickness_um",
                                     f.substrate_thickness_um);
  if (f.substrate_thickness_um < 0.0) {
    src.fail_key("substrate_thickness_um", "\"substrate_thickness_um\" must be >= 0");
  }
  f.frequency_ghz = parse_axis(src, obj, "frequency_GHz", true);
  if (f.frequency_ghz.min <= 0.0) {
    src.fail_key("frequency_GHz", "\"frequency_GHz\": min must be > 0");
  }
  return f;
}

SpectroConfig parse_spectro(const Source& src, const json& obj) {
  check_keys(src, obj, "\"spectro\"",
             {"b_fields_T", "waveform", "line", "frequency_GHz", "noise_level", "seed",
              "mass_scan"});
  SpectroConfig s;
  s.b_fields_t = parse_axis(src, obj, "b_fields_T", true);
  if (s.b_fields_t.min <= 0.0) src.fail_key("b_fields_T", "\"b_fields_T\": min must be > 0");

  if (obj.contains("waveform")) {
    const json& w = obj["waveform"];
    if (!w.is_object()) src.fail_key("waveform", "\"waveform\" must be an object");
    check_keys(src, w, "\"waveform\"",
               {"n_samples", "dt_ps", "decay_time_ps", "echo_delay_ps", "echo_amplitude",
                "t_cut_ps", "pad_factor"});
    s.n_samples = get_int(src, w, "n_samples", s.n_samples);
    s.dt_ps = get_num(src, w, "dt_ps", s.dt_ps);
    s.decay_time_ps = get_num(src, w, "decay_time_ps", s.decay_time_ps);
    s.echo_delay_ps = get_num(src, w, "echo_delay_ps", s.echo_delay_ps);
    s.echo_amplitude = get_num(src, w, "echo_amplitude", s.echo_amplitude);
    s.t_cut_ps = get_num(src, w, "t_cut_ps", s.t_cut_ps);
    s.pad_factor = get_int(src, w, "pad_factor", s.pad_factor);
    if (s.n_samples < 16) src.fail_key("n_samples", "\"n_samples\" must be >= 16");
    if (s.dt_ps <= 0 || s.decay_time_ps <= 0 || s.echo_delay_ps <= 0 || s.t_cut_ps <= 0) {
      src.fail_key("waveform", "\"waveform\" time scales must be > 0");
    }
    if (s.echo_amplitude < 0) src.fail_key("echo_amplitude", "\"echo_amplitude\" must be >= 0");
    if (s.pad_factor < 1) src.fail_key("pad_factor", "\"pad_factor\" must be >= 1");
  }
  if (obj.contains("line")) {
    const json& l = obj["line"];
    if (!l.is_object()) src.fail_key("line", "\"line\" must be an object");
    check_keys(src, l, "\"line\"",
               {"fwhm_GHz", "amplitude", "baseline", "etalon_center_GHz",
                "etalon_width_GHz", "etalon_depth"});
    s.fwhm_ghz = get_num(src, l, "fwhm_GHz", s.fwhm_ghz);
    s.amplitude = get_num(src, l, "amplitude", s.amplitude);
    s.baseline = get_num(src, l, "baseline", s.baseline);
    s.etalon_center_ghz = get_num(src, l, "etalon_center_GHz", s.etalon_center_ghz);
    s.etalon_width_ghz = get_num(src, l, "etalon_width_GHz", s.etalon_width_ghz);
    s.etalon_depth = get_num(src, l, "etalon_depth", s.etalon_depth);
    if (s.fwhm_ghz <= 0 || s.amplitude <= 0 || s.etalon_width_ghz <= 0) {
      src.fail_key("line", "\"line\" widths and amplitude must be > 0");
    }
    if (s.etalon_depth < 0) src.fail_key("etalon_depth", "\"etalon_depth\" must be >= 0");
  }
  s.frequency_ghz = parse_axis(src, obj, "frequency_GHz", true);
  if (s.frequency_ghz.min <= 0.0 || s.frequency_ghz.points < 16) {
    src.fail_key("frequency_GHz", "\"frequency_GHz\": needs min > 0 and >= 16 points");
  }
  s.noise_level = get_num(src, obj, "noise_level", s.noise_level);
  if (s.noise_level < 0) src.fail_key("noise_level", "\"noise_level\" must be >= 0");
  if (obj.contains("seed")) {
    if (!obj["seed"].is_number_integer() || obj["seed"].get<long long>() < 0) {
      src.fail_key("seed", "\"seed\" must be a non-negative integer");
    }
    s.seed = obj["seed"].get<std::uint64_t>();
  }
  s.mass_scan = parse_axis(src, obj, "mass_scan", true);
  if (s.mass_scan.min <= 0.0) src.fail_key("mass_scan", "\"mass_scan\": min must be > 0");
  return s;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  Source src;
  src.path = path;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    src.text = ss.str();
  }

  json root;
  try {
    root = json::parse(src.text);
  } catch (const json::parse_error& e) {
    src.fail_at(src.line_of_byte(e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  if (!root.is_object()) src.fail_at(1, "config root must be a JSON object");

  RunConfig cfg;
  cfg.config_dir = path.has_parent_path() ? path.parent_path() : ".";
  cfg.scenario = get_str(src, root, "scenario", "");
  if (cfg.scenario.empty()) src.fail_at(0, "missing required key \"scenario\"");
  in_set(src, "scenario", cfg.scenario,
         {"toy", "ingest-profiles", "magnetofilm", "spectro-pipeline"});

  const char* section = cfg.scenario == "toy"               ? "toy"
                        : cfg.scenario == "ingest-profiles" ? "ingest"
                        : cfg.scenario == "magnetofilm"     ? "film"
                                                            : "spectro";
  check_keys(src, root,
             "the top level (scenario \"" + cfg.scenario + "\")",
             {"scenario", "physical", "output", section});
  if (!root.contains(section) || !root[section].is_object()) {
    src.fail_key("scenario", "scenario \"" + cfg.scenario + "\" requires a \"" +
                                 section + "\" object");
  }

  if (root.contains("physical")) {
    if (!root["physical"].is_object()) src.fail_key("physical", "\"physical\" must be an object");
    cfg.physical = parse_physical(src, root["physical"]);
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    if (!o.is_object()) src.fail_key("output", "\"output\" must be an object");
    check_keys(src, o, "\"output\"", {"directory", "plots"});
    cfg.out_directory = get_str(src, o, "directory", cfg.out_directory);
    if (cfg.out_directory.empty()) src.fail_key("directory", "\"directory\" is empty");
    cfg.plots = get_bool(src, o, "plots", cfg.plots);
  }

  if (cfg.scenario == "toy") {
    cfg.toy = parse_toy(src, root[section]);
  } else if (cfg.scenario == "ingest-profiles") {
    cfg.ingest = parse_ingest(src, root[section], cfg.config_dir);
  } else if (cfg.scenario == "magnetofilm") {
    cfg.film = parse_film(src, root[section]);
  } else {
    cfg.spectro = parse_spectro(src, root[section]);
  }
  return cfg;
}

}  // namespace polariton::cli
