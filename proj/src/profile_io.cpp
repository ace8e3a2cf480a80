#include "polariton/profile_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "polariton/params.hpp"
#include "polariton/util.hpp"

namespace polariton {

namespace {

static_assert(std::endian::native == std::endian::little,
              "profile payloads are little-endian; big-endian hosts unsupported");

[[noreturn]] void fail(const std::filesystem::path& p, int line, const std::string& msg) {
  throw std::runtime_error(p.string() + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

const char* kKnownKeys[] = {
    "format_version", "lattice_a_um", "omega_GHz",  "Q",
    "polarization",   "p_index",      "grid_nx",    "grid_ny",
    "grid_nz",        "z_samples_um", "components", "normalization_constant",
    "data_format",    "data_layout",  "data_file",  "eps_file",
};

}  // namespace

ProfileManifest read_profile_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile manifest " + path.string());

  std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        fail(path, lineno, "expected `key = value`");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                     [&](const char* k) { return key == k; }) == std::end(kKnownKeys)) {
      fail(path, lineno, "unknown key `" + key + "`");
    }
    if (kv.count(key)) fail(path, lineno, "duplicate key `" + key + "`");
    kv[key] = {val, lineno};
  }

  auto require = [&](const std::string& key) -> std::pair<std::string, int> {
    auto it = kv.find(key);
    if (it == kv.end()) fail(path, lineno, "missing required key `" + key + "`");
    return it->second;
  };
  auto to_double = [&](const std::string& key) {
    const auto [v, ln] = require(key);
    try {
      size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("");
      return d;
    } catch (...) {
      fail(path, ln, "key `" + key + "`: not a number: `" + v + "`");
    }
  };
  auto to_int = [&](const std::string& key) {
    const double d = to_double(key);
    if (d != static_cast<long long>(d)) {
      fail(path, kv[key].second, "key `" + key + "`: not an integer");
    }
    return static_cast<int>(d);
  };

  ProfileManifest m;
  m.format_version = to_int("format_version");
  if (m.format_version != 1) {
    fail(path, kv["format_version"].second, "unsupported format_version");
  }
  m.lattice_a_um = to_double("lattice_a_um");
  m.omega_ghz = to_double("omega_GHz");
  m.q = to_double("Q");
  const auto [polv, polln] = require("polarization");
  if (polv == "x") {
    m.polarization = Pol::x;
  } else if (polv == "y") {
    m.polarization = Pol::y;
  } else {
    fail(path, polln, "polarization must be x or y");
  }
  m.p_index = to_int("p_index");
  m.nx = to_int("grid_nx");
  m.ny = to_int("grid_ny");
  m.nz = kv.count("grid_nz") ? to_int("grid_nz") : 0;
  if (m.nx <= 0 || m.ny <= 0 || m.nz < 0) {
    fail(path, lineno, "grid dimensions must be positive (grid_nz >= 0)");
  }
  if (m.nz > 0) {
    const auto [zs, zln] = require("z_samples_um");
    for (const auto& tok : split_csv_list(zs)) {
      try {
        m.z_um.push_back(std::stod(tok));
      } catch (...) {
        fail(path, zln, "z_samples_um: not a number: `" + tok + "`");
      }
    }
    if (static_cast<int>(m.z_um.size()) != m.nz) {
      fail(path, zln, "z_samples_um count does not match grid_nz");
    }
  }
  const auto [comps, compln] = require("components");
  m.components = split_csv_list(comps);
  if (m.components.empty()) fail(path, compln, "components list is empty");
  for (const auto& c : m.components) {
    if (c != "ex" && c != "ey" && c != "ez") {
      fail(path, compln, "components must be from {ex,ey,ez}");
    }
    if (c == "ez" && m.nz == 0) {
      fail(path, compln, "ez component requires a z-resolved grid");
    }
  }
  m.normalization_constant =
      kv.count("normalization_constant") ? to_double("normalization_constant") : 1.0;
  if (m.normalization_constant <= 0) {
    fail(path, kv["normalization_constant"].second, "normalization_constant must be > 0");
  }
  m.data_format = require("data_format").first;
  if (m.data_format != "binary" && m.data_format != "csv") {
    fail(path, kv["data_format"].second, "data_format must be binary or csv");
  }
  m.data_layout = require("data_layout").first;
  if (m.data_layout != "row_major_float64_little_endian") {
    fail(path, kv["data_layout"].second, "unsupported data_layout");
  }
  m.data_file = require("data_file").first;
  if (m.data_file.empty()) fail(path, kv["data_file"].second, "data_file is empty");
  if (kv.count("eps_file")) m.eps_file = kv["eps_file"].first;
  return m;
}

void write_profile_manifest(const ProfileManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << "format_version = " << m.format_version << "\n"
      << "lattice_a_um = " << format_double(m.lattice_a_um) << "\n"
      << "omega_GHz = " << format_double(m.omega_ghz) << "\n"
      << "Q = " << format_double(m.q) << "\n"
      << "polarization = " << pol_name(m.polarization) << "\n"
      << "p_index = " << m.p_index << "\n"
      << "grid_nx = " << m.nx << "\n"
      << "grid_ny = " << m.ny << "\n";
  if (m.nz > 0) {
    out << "grid_nz = " << m.nz << "\n"
        << "z_samples_um = ";
    for (size_t i = 0; i < m.z_um.size(); ++i) {
      out << (i ? "," : "") << format_double(m.z_um[i]);
    }
    out << "\n";
  }
  out << "components = ";
  for (size_t i = 0; i < m.components.size(); ++i) {
    out << (i ? "," : "") << m.components[i];
  }
  out << "\n"
      << "normalization_constant = " << format_double(m.normalization_constant) << "\n"
      << "data_format = " << m.data_format << "\n"
      << "data_layout = " << m.data_layout << "\n"
      << "data_file = " << m.data_file << "\n";
  if (!m.eps_file.empty()) out << "eps_file = " << m.eps_file << "\n";
}

namespace {

std::vector<double> read_payload(const std::filesystem::path& file,
                                 const std::string& format, size_t expected) {
  std::vector<double> data;
  if (format == "binary") {
    std::ifstream in(file, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open payload " + file.string());
    const auto bytes = static_cast<size_t>(in.tellg());
    if (bytes != expected * sizeof(double)) {
      throw std::runtime_error("payload " + file.string() + ": expected " +
                               std::to_string(expected * sizeof(double)) +
                               " bytes, found " + std::to_string(bytes));
    }
    data.resize(expected);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(bytes));
    if (!in) throw std::runtime_error("short read on payload " + file.string());
  } else {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open payload " + file.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      try {
        data.push_back(std::stod(line));
      } catch (...) {
        fail(file, lineno, "not a number: `" + line + "`");
      }
    }
    if (data.size() != expected) {
      throw std::runtime_error("payload " + file.string() + ": expected " +
                               std::to_string(expected) + " values, found " +
                               std::to_string(data.size()));
    }
  }
  return data;
}

void write_payload(const std::vector<double>& data, const std::filesystem::path& file,
                   const std::string& format) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write payload " + file.string());
  if (format == "binary") {
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
  } else {
    for (double v : data) out << format_double(v) << "\n";
  }
}

}  // namespace

ModeProfile load_mode_profile(const std::filesystem::path& manifest_path, double z_ref_um) {
  const ProfileManifest m = read_profile_manifest(manifest_path);
  const auto dir = manifest_path.parent_path();
  const size_t plane = static_cast<size_t>(m.nx) * m.ny;
  const size_t per_comp = plane * std::max(m.nz, 1);
  const auto data = read_payload(dir / m.data_file, m.data_format,
                                 per_comp * m.components.size());

  // z-resolved input: take the slice nearest z_ref_um.
  size_t slice = 0;
  if (m.nz > 0) {
    size_t best = 0;
    for (size_t i = 1; i < m.z_um.size(); ++i) {
      if (std::abs(m.z_um[i] - z_ref_um) < std::abs(m.z_um[best] - z_ref_um)) best = i;
    }
    slice = best * plane;
  }

  ModeProfile mp;
  mp.p = m.p_index;
  mp.sigma = m.polarization;
  mp.omega = units::rad_per_s_from_ghz(m.omega_ghz);
  mp.quality = m.q;
  mp.a = m.lattice_a_um * units::um;
  for (size_t c = 0; c < m.components.size(); ++c) {
    if (m.components[c] == "ez") continue;  // out-of-plane: no in-plane coupling
    Grid2D g(m.nx, m.ny);
    for (size_t i = 0; i < plane; ++i) {
      g.v[i] = data[c * per_comp + slice + i] * m.normalization_constant;
    }
    if (m.components[c] == "ex") {
      mp.ex = std::move(g);
    } else {
      mp.ey = std::move(g);
    }
  }
  mp.validate();
  return mp;
}

VolumeProfile load_volume_profile(const std::filesystem::path& manifest_path) {
  const ProfileManifest m = read_profile_manifest(manifest_path);
  if (m.nz <= 0) {
    throw std::runtime_error(manifest_path.string() +
                             ": volume profile requires grid_nz > 0");
  }
  const auto dir = manifest_path.parent_path();
  const size_t per_comp = static_cast<size_t>(m.nx) * m.ny * m.nz;
  const auto data = read_payload(dir / m.data_file, m.data_format,
                                 per_comp * m.components.size());

  VolumeProfile vp;
  vp.omega = units::rad_per_s_from_ghz(m.omega_ghz);
  vp.a = m.lattice_a_um * units::um;
  vp.nx = m.nx;
  vp.ny = m.ny;
  for (double z : m.z_um) vp.z.push_back(z * units::um);
  for (size_t c = 0; c < m.components.size(); ++c) {
    std::vector<double> comp(data.begin() + static_cast<long>(c * per_comp),
                             data.begin() + static_cast<long>((c + 1) * per_comp));
    for (double& v : comp) v *= m.normalization_constant;
    if (m.components[c] == "ex") {
      vp.ex = std::move(comp);
    } else if (m.components[c] == "ey") {
      vp.ey = std::move(comp);
    } else {
      vp.ez = std::move(comp);
    }
  }
  if (!m.eps_file.empty()) {
    vp.eps = read_payload(dir / m.eps_file, m.data_format, per_comp);
  }
  vp.validate();
  return vp;
}

void save_mode_profile(const ModeProfile& mp, const std::filesystem::path& manifest_path,
                       const std::string& data_format) {
  mp.validate();
  if (!mp.has_grid()) {
    throw std::invalid_argument("save_mode_profile: grid representation required");
  }
  if (data_format != "binary" && data_format != "csv") {
    throw std::invalid_argument("save_mode_profile: format must be binary or csv");
  }

  ProfileManifest m;
  m.lattice_a_um = mp.a / units::um;
  m.omega_ghz = units::ghz_from_rad_per_s(mp.omega);
  m.q = mp.quality;
  m.polarization = mp.sigma;
  m.p_index = mp.p;
  const Grid2D& ref = mp.ex.empty() ? mp.ey : mp.ex;
  m.nx = ref.nx;
  m.ny = ref.ny;
  m.data_format = data_format;

  std::vector<double> data;
  if (!mp.ex.empty()) {
    m.components.push_back("ex");
    data.insert(data.end(), mp.ex.v.begin(), mp.ex.v.end());
  }
  if (!mp.ey.empty()) {
    m.components.push_back("ey");
    data.insert(data.end(), mp.ey.v.begin(), mp.ey.v.end());
  }

  const std::string ext = data_format == "binary" ? ".bin" : ".csv";
  m.data_file = manifest_path.stem().string() + ext;
  write_payload(data, manifest_path.parent_path() / m.data_file, data_format);
  write_profile_manifest(m, manifest_path);
}

std::filesystem::path convert_profile(const std::filesystem::path& manifest_path,
                                      const std::string& to_format,
                                      const std::filesystem::path& out_manifest) {
  if (to_format != "binary" && to_format != "csv") {
    throw std::invalid_argument("convert_profile: target must be binary or csv");
  }
  ProfileManifest m = read_profile_manifest(manifest_path);
  const auto dir = manifest_path.parent_path();
  const size_t per_comp = static_cast<size_t>(m.nx) * m.ny * std::max(m.nz, 1);
  const auto data = read_payload(dir / m.data_file, m.data_format,
                                 per_comp * m.components.size());

  const std::string ext = to_format == "binary" ? ".bin" : ".csv";
  const auto out_dir = out_manifest.parent_path();
  ProfileManifest mo = m;
  mo.data_format = to_format;
  mo.data_file = out_manifest.stem().string() + ext;
  write_payload(data, out_dir / mo.data_file, to_format);
  if (!m.eps_file.empty()) {
    const auto eps = read_payload(dir / m.eps_file, m.data_format, per_comp);
    mo.eps_file = out_manifest.stem().string() + "_eps" + ext;
    write_payload(eps, out_dir / mo.eps_file, to_format);
  }
  write_profile_manifest(mo, out_manifest);
  return out_manifest;
}

}  // namespace polariton
