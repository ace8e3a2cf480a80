#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "polariton/coupling.hpp"
#include "polariton/profile_io.hpp"
#include "polariton/util.hpp"

using namespace polariton;
namespace fs = std::filesystem;

namespace {

const fs::path kCli = POLARITON_CLI_PATH;
const fs::path kConfigs = POLARITON_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polariton_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CmdResult {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

CmdResult run_cli(const std::string& args, const fs::path& cwd) {
  static int counter = 0;
  const fs::path cap = fs::temp_directory_path() / "polariton_cli_tests" /
                       ("capture_" + std::to_string(counter++) + ".txt");
  const std::string cmd = "cd \"" + cwd.string() + "\" && \"" + kCli.string() + "\" " +
                          args + " > \"" + cap.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(cap, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(out);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

// Compares two directories file by file, byte for byte.
void check_identical_trees(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
  }
  REQUIRE(!rel.empty());
  size_t found = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    found += e.is_regular_file();
  }
  CHECK(found == rel.size());
  for (const auto& r : rel) {
    REQUIRE(fs::exists(b / r));
    CHECK_MESSAGE(slurp(a / r) == slurp(b / r), "differs: ", r.string());
  }
}

}  // namespace

TEST_CASE("list-scenarios names the four scenarios") {
  const auto dir = scratch("list");
  const auto human = run_cli("list-scenarios", dir);
  CHECK(human.code == 0);
  const auto machine = run_cli("list-scenarios --machine", dir);
  CHECK(machine.code == 0);
  const auto rows = lines_of(machine.output);
  REQUIRE(rows.size() == 4);
  const char* names[] = {"toy", "ingest-profiles", "magnetofilm", "spectro-pipeline"};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(rows[i].substr(0, rows[i].find('\t')) == names[i]);
    // name, required keys, description
    CHECK(std::count(rows[i].begin(), rows[i].end(), '\t') == 2);
    CHECK(human.output.find(names[i]) != std::string::npos);
  }
}

TEST_CASE("every shipped config passes validation") {
  const auto dir = scratch("validate");
  int n_configs = 0;
  for (const auto& e : fs::directory_iterator(kConfigs)) {
    if (e.path().extension() != ".json") continue;
    ++n_configs;
    const auto r = run_cli("validate-config --config \"" + e.path().string() + "\"", dir);
    CHECK_MESSAGE(r.code == 0, e.path().filename().string(), ": ", r.output);
    CHECK(r.output.find("ok: scenario") != std::string::npos);
  }
  CHECK(n_configs == 7);
}

TEST_CASE("schema violations exit nonzero with a line-referenced message") {
  const auto dir = scratch("schema");
  spit(dir / "bad.json",
       "{\n"
       "  \"scenario\": \"toy\",\n"
       "  \"toy\": {\n"
       "    \"mode\": \"dispersion\",\n"
       "    \"voltage\": 3,\n"
       "    \"b_sweep_T\": { \"min\": 0.1, \"max\": 1.0, \"points\": 5 }\n"
       "  }\n"
       "}\n");
  const auto r = run_cli("validate-config --config bad.json", dir);
  CHECK(r.code == 2);
  CHECK(r.output.find("unknown key \"voltage\"") != std::string::npos);
  CHECK(r.output.find("bad.json:5") != std::string::npos);

  spit(dir / "empty.json", "{}\n");
  const auto e = run_cli("run --config empty.json", dir);
  CHECK(e.code == 2);
  CHECK(e.output.find("missing required key \"scenario\"") != std::string::npos);

  spit(dir / "mangled.json", "{ \"scenario\": \n");
  const auto m = run_cli("validate-config --config mangled.json", dir);
  CHECK(m.code == 2);
  CHECK(m.output.find("mangled.json:") != std::string::npos);

  // A section that belongs to a different scenario is rejected too.
  spit(dir / "foreign.json",
       "{ \"scenario\": \"magnetofilm\",\n"
       "  \"film\": { \"frequency_GHz\": { \"min\": 500, \"max\": 900, \"points\": 20 } },\n"
       "  \"toy\": { \"mode\": \"dispersion\" } }\n");
  const auto f = run_cli("validate-config --config foreign.json", dir);
  CHECK(f.code == 2);
  CHECK(f.output.find("unknown key \"toy\"") != std::string::npos);

  const auto u = run_cli("frobnicate", dir);
  CHECK(u.code != 0);
}

TEST_CASE("run writes artifacts plus a manifest with matching hashes") {
  const auto dir = scratch("run_smoke");
  spit(dir / "disp.json",
       "{ \"scenario\": \"toy\",\n"
       "  \"toy\": { \"mode\": \"dispersion\",\n"
       "             \"b_sweep_T\": { \"min\": 0.05, \"max\": 2.0, \"points\": 60 } },\n"
       "  \"output\": { \"directory\": \"unused\", \"plots\": true } }\n");
  const auto r = run_cli("run --config disp.json --out-dir result", dir);
  REQUIRE_MESSAGE(r.code == 0, r.output);

  for (const char* name : {"branches.csv", "weights.csv", "crossing.json",
                           "dispersion.svg", "manifest.json"}) {
    CHECK_MESSAGE(fs::exists(dir / "result" / name), name);
  }
  CHECK(!fs::exists(dir / "unused"));  // --out-dir takes precedence
  CHECK(lines_of(slurp(dir / "result" / "branches.csv")).size() == 61);

  const auto manifest = nlohmann::json::parse(slurp(dir / "result" / "manifest.json"));
  CHECK(manifest["scenario"] == "toy");
  REQUIRE(manifest["artifacts"].size() == 4);
  for (const auto& item : manifest["artifacts"]) {
    const fs::path p = dir / "result" / item["path"].get<std::string>();
    REQUIRE(fs::exists(p));
    CHECK(item["bytes"].get<std::uintmax_t>() == fs::file_size(p));
    CHECK(item["fnv1a64"].get<std::string>() == fnv1a_file_hex(p));
  }

  const auto crossing = nlohmann::json::parse(slurp(dir / "result" / "crossing.json"));
  CHECK(crossing["found"] == true);

  // --no-plots drops exactly the figure artifacts.
  const auto np = run_cli("run --config disp.json --out-dir noplots --no-plots", dir);
  REQUIRE(np.code == 0);
  CHECK(fs::exists(dir / "noplots" / "branches.csv"));
  CHECK(!fs::exists(dir / "noplots" / "dispersion.svg"));
}

TEST_CASE("reruns and thread counts do not change a single byte") {
  const auto dir = scratch("determinism");
  spit(dir / "map.json",
       "{ \"scenario\": \"toy\",\n"
       "  \"toy\": { \"mode\": \"transmission-map\",\n"
       "             \"b_sweep_T\": { \"min\": 0.2, \"max\": 1.6, \"points\": 12 },\n"
       "             \"frequency_GHz\": { \"min\": 200, \"max\": 600, \"points\": 48 } } }\n");
  REQUIRE(run_cli("run --config map.json --out-dir one --threads 1", dir).code == 0);
  REQUIRE(run_cli("run --config map.json --out-dir many --threads 7", dir).code == 0);
  check_identical_trees(dir / "one", dir / "many");

  spit(dir / "spec.json",
       "{ \"scenario\": \"spectro-pipeline\",\n"
       "  \"spectro\": {\n"
       "    \"b_fields_T\": { \"min\": 0.6, \"max\": 1.4, \"points\": 9 },\n"
       "    \"frequency_GHz\": { \"min\": 150, \"max\": 900, \"points\": 300 },\n"
       "    \"mass_scan\": { \"min\": 0.062, \"max\": 0.072, \"points\": 21 } } }\n");
  REQUIRE(run_cli("run --config spec.json --out-dir s1 --seed 42", dir).code == 0);
  REQUIRE(run_cli("run --config spec.json --out-dir s2 --seed 42", dir).code == 0);
  check_identical_trees(dir / "s1", dir / "s2");

  // A different seed changes the noisy artifacts but stays valid.
  REQUIRE(run_cli("run --config spec.json --out-dir s3 --seed 43", dir).code == 0);
  CHECK(slurp(dir / "s1" / "fits.csv") != slurp(dir / "s3" / "fits.csv"));
  const auto summary = nlohmann::json::parse(slurp(dir / "s3" / "summary.json"));
  CHECK(summary["seed"] == 43);
  CHECK(std::abs(summary["best_mass_ratio"].get<double>() - 0.067) < 1.5e-3);
}

TEST_CASE("ingest scenario reports the same numbers as the library") {
  const auto dir = scratch("ingest");
  const auto r = run_cli("run --config \"" + (kConfigs / "ingest-profiles.json").string() +
                             "\" --out-dir result",
                         dir);
  REQUIRE_MESSAGE(r.code == 0, r.output);

  std::vector<ModeProfile> profs = {
      load_mode_profile(kConfigs / "sample_profile" / "mode1.manifest"),
      load_mode_profile(kConfigs / "sample_profile" / "mode2.manifest")};
  PhysParams par;
  const auto cs = build_couplings(profs, 0.81, par);

  const auto rows = lines_of(slurp(dir / "result" / "modes.csv"));
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 2; ++i) {
    std::istringstream ss(rows[static_cast<size_t>(i) + 1]);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    CHECK(std::stod(cells[6]) ==
          units::ghz_from_rad_per_s(effective_coupling(cs, i)));
    CHECK(std::stod(cells[7]) == fom_eta(cs, i, i).real());
  }
  const auto overlap_rows = lines_of(slurp(dir / "result" / "overlaps.csv"));
  REQUIRE(overlap_rows.size() == 2);
  std::istringstream ss(overlap_rows[1]);
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 6);
  CHECK(std::stod(cells[2]) == overlap_xi(cs, 0, 1).real());
  CHECK(std::stod(cells[4]) == fom_eta(cs, 0, 1).real());

  const auto summary = nlohmann::json::parse(slurp(dir / "result" / "summary.json"));
  CHECK(summary["omega_c_GHz"].get<double>() ==
        doctest::Approx(338.4166686).epsilon(1e-9));
  CHECK(summary.contains("lambda_y"));
}

TEST_CASE("convert-profile round trips through both encodings") {
  const auto dir = scratch("convert");
  const auto src = (kConfigs / "sample_profile" / "mode1.manifest").string();
  REQUIRE(run_cli("convert-profile --input \"" + src + "\" --to binary --output bin/m.manifest",
                  dir).code == 0);
  REQUIRE(run_cli("convert-profile --input bin/m.manifest --to csv --output csv/m.manifest",
                  dir).code == 0);

  const auto orig = load_mode_profile(src);
  const auto bin = load_mode_profile(dir / "bin" / "m.manifest");
  const auto csv = load_mode_profile(dir / "csv" / "m.manifest");
  REQUIRE(bin.ey.size() == orig.ey.size());
  REQUIRE(csv.ey.size() == orig.ey.size());
  for (size_t i = 0; i < orig.ey.size(); ++i) {
    CHECK(bin.ey.v[i] == orig.ey.v[i]);
    CHECK(csv.ey.v[i] == orig.ey.v[i]);
  }

  const auto bad = run_cli("convert-profile --input bin/m.manifest --to hdf5 --output x.manifest",
                           dir);
  CHECK(bad.code == 2);
}
