#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nlse/app/commands.hpp"
#include "nlse/app/config.hpp"
#include "nlse/snapshot.hpp"

using namespace nlse;
using namespace nlse::app;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "nlse");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nlse_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Value after a "key" column in the bound report.
std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " ", 0) == 0) {
      const auto start = line.find_first_not_of(' ', key.size());
      return line.substr(start);
    }
  }
  return {};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(line);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("four significant figures keep trailing zeros") {
  CHECK(sig4(0.0086496) == "0.008650");
  CHECK(sig4(0.0282843) == "0.02828");
  CHECK(sig4(0.00942809) == "0.009428");
  CHECK(sig4(0.0099996) == "0.01000");
  CHECK(sig4(-1.23456) == "-1.235");
  CHECK(sig4(0.0) == "0");
}

TEST_CASE("config parsing rejects unknown keys and wrong types") {
  CHECK_NOTHROW(parse_config(R"({"preset": "soliton1d", "k": 0.01, "region": {"order": 3}})"));
  CHECK_THROWS_AS(parse_config(R"({"presett": "soliton1d"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"dim": 1, "spacing": 0.2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"initial": {"kind": "zero", "phase": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"k": "small"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"dim": "two"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(load_config_file(scratch("missing.json").string()), IoError);

  const RunConfig c = parse_config(
      R"({"grid": {"dim": 2, "lo": [-1, -1], "hi": [1, 1], "h": 0.5},
          "initial": {"kind": "zero"}, "t_end": 3, "spectrum": {"n": 7}})");
  REQUIRE(c.grid);
  CHECK(c.grid->dim == 2);
  CHECK(c.grid->h == 0.5);
  CHECK(c.initial->kind == "zero");
  CHECK(c.t_end == 3.0);
  CHECK(c.spectrum_n == 7);
}

TEST_CASE("problems built from config") {
  RunConfig both = parse_config(R"({"preset": "soliton1d",
      "grid": {"dim": 1, "lo": [-1], "hi": [1], "h": 0.5}})");
  CHECK_THROWS_AS(build_problem(both), ConfigError);
  CHECK_THROWS_AS(build_problem(RunConfig{}), ConfigError);
  CHECK_THROWS_AS(build_problem(parse_config(R"({"preset": "nope"})")), ConfigError);

  const Preset sol = build_problem(parse_config(
      R"({"grid": {"dim": 1, "lo": [-5], "hi": [5], "h": 0.5},
          "initial": {"kind": "soliton", "omega": 1}, "a": 1, "s": 1})"));
  CHECK(sol.psi0.size() == 21);
  CHECK(std::abs(sol.psi0[10]) == doctest::Approx(std::sqrt(2.0)));

  const Preset trap = build_problem(parse_config(
      R"({"grid": {"dim": 1, "lo": [-2], "hi": [2], "h": 0.5}, "a": 2,
          "initial": {"kind": "kicked_gaussian"}})"));
  CHECK(trap.params.potential.front() == doctest::Approx(2.0));

  CHECK_THROWS_AS(build_problem(parse_config(
                      R"({"grid": {"dim": 1, "lo": [-2], "hi": [2], "h": 0.5},
                          "initial": {"kind": "zero"}, "potential": "box"})")),
                  ConfigError);
  CHECK_THROWS_AS(build_problem(parse_config(
                      R"({"grid": {"dim": 1, "lo": [-2], "hi": [2], "h": 0.3},
                          "initial": {"kind": "zero"}})")),
                  ConfigError);

  const auto snap = scratch("field.txt").string();
  write_snapshot_file(snap, sol.psi0);
  RunConfig from_file;
  from_file.initial = InitialConfig{"snapshot", 1.0, 1, 4.0, snap};
  from_file.s = 1.0;
  const Preset back = build_problem(from_file);
  CHECK(back.psi0.grid() == sol.psi0.grid());
  CHECK(back.psi0[10] == sol.psi0[10]);

  from_file.initial->path = scratch("no_such_field.txt").string();
  CHECK_THROWS_AS(build_problem(from_file), IoError);
}

TEST_CASE("bound reports reproduce the tabulated bounds") {
  const auto sol = run({"bound", "--preset", "soliton1d"});
  CHECK(sol.code == 0);
  CHECK(field(sol.out, "k_lin") == "0.02828");
  CHECK(field(sol.out, "k_linz") == "0.02828");
  CHECK(sol.out.find("suggested k") != std::string::npos);

  const auto gauss = run({"bound", "--preset", "gaussian3d"});
  CHECK(field(gauss.out, "k_linz") == "0.008650");
  CHECK(field(gauss.out, "binding").find("144/12") != std::string::npos);

  CHECK(field(run({"bound", "--preset", "gaussian3d", "--scheme", "shoc4"}).out, "k_linz") ==
        "0.006624");
  CHECK(field(run({"bound", "--preset", "vortexpair2d"}).out, "k_linz") == "0.01407");
  CHECK(field(run({"bound", "--preset", "vortexpair2d", "--scheme", "shoc4"}).out, "k_linz") ==
        "0.01057");

  const auto cfg = write_file("free2d.json",
                              R"({"grid": {"dim": 2, "lo": [-1, -1], "hi": [1, 1], "h": 0.2},
                                  "initial": {"kind": "zero"}, "scheme": "shoc4"})");
  const auto free2d = run({"bound", "--config", cfg});
  CHECK(free2d.code == 0);
  CHECK(field(free2d.out, "k_lin") == sig4(3.0 * std::sqrt(8.0) / 32.0 * 0.04));
  CHECK(field(free2d.out, "k_linz") == field(free2d.out, "k_lin"));
}

TEST_CASE("bound is deterministic and writes JSON") {
  const auto json_path = scratch("bound.json").string();
  const auto first = run({"bound", "--preset", "soliton1d", "--json", json_path});
  CHECK(first.code == 0);
  const std::string doc = read_file(json_path);
  CHECK(doc.find("\"k_linz\"") != std::string::npos);
  CHECK(doc.find("\"binding\"") != std::string::npos);
  CHECK(run({"bound", "--preset", "soliton1d", "--json", json_path}).out == first.out);
  CHECK(read_file(json_path) == doc);
}

TEST_CASE("config and I/O errors map to exit codes") {
  CHECK(run({"bound", "--preset", "soliton1d", "--scheme", "cd6"}).code == kExitConfig);
  CHECK(run({"bound", "--preset", "soliton1d", "--bc", "neumann"}).code == kExitConfig);
  CHECK(run({"bound", "--preset", "soliton2d"}).code == kExitConfig);
  CHECK(run({"bound", "--frobnicate"}).code == kExitConfig);
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"bound", "--config", scratch("absent.json").string()}).code == kExitIo);
  CHECK(run({"bound", "--config", write_file("bad.json", R"({"preset": 3})")}).code ==
        kExitConfig);
  CHECK(run({"bound", "--preset", "soliton1d", "--json", "/nonexistent/dir/r.json"}).code ==
        kExitIo);
  CHECK(run({"simulate", "--preset", "soliton1d"}).code == kExitConfig);
  CHECK(run({"simulate", "--preset", "soliton1d", "--k", "-1"}).code == kExitConfig);
  const auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("simulate classifies the soliton around its threshold") {
  const auto out = scratch("soliton.csv").string();
  CHECK(run({"simulate", "--preset", "soliton1d", "--k", "0.02832", "--tend", "100", "--out", out})
            .code == kExitOk);
  const std::string csv = read_file(out);
  CHECK(csv.rfind("t,max_psi_sq,l2_mass,diverged\n", 0) == 0);
  CHECK(run({"simulate", "--preset", "soliton1d", "--k", "0.02835", "--tend", "100", "--out", out})
            .code == kExitDiverged);
  CHECK(read_file(out).find(",1\n") != std::string::npos);
}

TEST_CASE("zero field simulates to an all-zero CSV") {
  const auto cfg = write_file("zero.json",
                              R"({"grid": {"dim": 1, "lo": [-2], "hi": [2], "h": 0.2},
                                  "initial": {"kind": "zero"}, "k": 0.01, "t_end": 0.1})");
  const auto r = run({"simulate", "--config", cfg});
  CHECK(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    const auto cols = split(line, ',');
    REQUIRE(cols.size() == 4);
    CHECK(std::stod(cols[1]) == 0.0);
    CHECK(std::stod(cols[2]) == 0.0);
    CHECK(cols[3] == "0");
    ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("simulate writes a snapshot that reads back") {
  const auto snap = scratch("final.txt").string();
  const auto r = run({"simulate", "--preset", "soliton1d", "--k", "0.01", "--tend", "0.05",
                      "--snapshot", snap});
  CHECK(r.code == kExitOk);
  std::ifstream in(snap);
  const ComplexField psi = read_snapshot(in);
  CHECK(psi.size() == 101);
  std::ostringstream again;
  write_snapshot(again, psi);
  CHECK(again.str() == read_file(snap));
  CHECK(run({"simulate", "--preset", "soliton1d", "--k", "0.01", "--tend", "0.05", "--out",
             "/nonexistent/dir/run.csv"})
            .code == kExitIo);
}

TEST_CASE("threshold reports percent differences") {
  const auto r = run({"threshold", "--preset", "soliton1d", "--tend", "100"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::istringstream cols(row);
  std::string scheme, k_lin, k_linz, k_num, diff_lin, diff_linz;
  cols >> scheme >> k_lin >> k_linz >> k_num >> diff_lin >> diff_linz;
  CHECK(scheme == "cd2");
  CHECK(k_lin == "0.02828");
  CHECK(std::stod(k_num) == doctest::Approx(0.02832).epsilon(0.005));
  CHECK(std::abs(std::stod(diff_lin) - 0.14) <= 0.4);
  const double expect = (std::stod(k_num) - 0.02828427) / 0.02828427 * 100.0;
  CHECK(std::stod(diff_lin) == doctest::Approx(expect).epsilon(0.02));

  CHECK(run({"threshold", "--preset", "soliton1d", "--tend", "0"}).code == kExitConfig);
}

TEST_CASE("threshold search failure exits 5") {
  const auto cfg = write_file("zero_threshold.json",
                              R"({"grid": {"dim": 1, "lo": [-1], "hi": [1], "h": 0.2},
                                  "initial": {"kind": "zero"}, "t_end": 1})");
  CHECK(run({"threshold", "--config", cfg}).code == kExitSearchFailed);
}

TEST_CASE("spectrum emits disks, radius and a coordinate dump") {
  const auto dump = scratch("matrix.txt").string();
  const auto r = run({"spectrum", "--dim", "1", "--n", "8", "--bc", "periodic", "--dump", dump});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("center,radius\n", 0) == 0);
  CHECK(r.out.find("-2,2\n") != std::string::npos);
  const auto at = r.out.find("# spectral_radius ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(r.out.substr(at + 18)) == doctest::Approx(4.0));
  std::istringstream in(read_file(dump));
  int entries = 0;
  std::size_t row = 0, col = 0;
  double value = 0.0;
  while (in >> row >> col >> value) ++entries;
  CHECK(entries == 24);

  const auto shoc = run({"spectrum", "--dim", "2", "--n", "7", "--scheme", "shoc4"});
  CHECK(shoc.code == kExitOk);
  CHECK(run({"spectrum", "--dim", "4"}).code == kExitConfig);
  CHECK(run({"spectrum", "--dim", "3", "--n", "40"}).code == kExitConfig);
}

TEST_CASE("verify passes on the published tables") {
  const auto r = run({"verify"});
  CHECK(r.code == kExitOk);
  int disks = 0, circulant = 0, failed = 0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("PASS  disks", 0) == 0) ++disks;
    if (line.rfind("PASS  circulant", 0) == 0) ++circulant;
    if (line.rfind("FAIL", 0) == 0) ++failed;
  }
  CHECK(disks == 6);
  CHECK(circulant == 2);
  CHECK(failed == 0);
}

TEST_CASE("verify names a corrupted table") {
  VerifyTables tables = VerifyTables::published();
  tables.g[{2, SchemeOrder::kShoc4}].front().num += 1;
  std::ostringstream out;
  CHECK(cmd_verify(out, tables) == kExitVerifyFailed);
  CHECK(out.str().find("FAIL  g-table 2d shoc4") != std::string::npos);
  CHECK(out.str().find("FAIL  disks") == std::string::npos);

  VerifyTables disks = VerifyTables::published();
  disks.disks[{3, SchemeOrder::kCd2}].erase(disks.disks[{3, SchemeOrder::kCd2}].begin());
  std::ostringstream out2;
  CHECK(cmd_verify(out2, disks) == kExitVerifyFailed);
  CHECK(out2.str().find("FAIL  disks 3d cd2") != std::string::npos);
}

TEST_CASE("region samples the amplification modulus") {
  auto sample = [](const std::string& order, double lo, double hi) {
    const auto cfg = write_file("region.json", R"({"region": {"re_min": -0.1, "re_max": 0.1, "im_min": )" +
                                                   std::to_string(lo) + R"(, "im_max": )" +
                                                   std::to_string(hi) + "}}");
    const auto r = run({"region", "--config", cfg, "--order", order, "--resolution", "3"});
    REQUIRE(r.code == kExitOk);
    std::vector<double> on_axis;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "re,im,abs_r");
    while (std::getline(in, line)) {
      const auto cols = split(line, ',');
      if (std::stod(cols[0]) == 0.0) on_axis.push_back(std::stod(cols[2]));
    }
    return on_axis;
  };
  const auto rk4 = sample("4", 2.8, 2.9);
  REQUIRE(rk4.size() == 3);
  CHECK(rk4[0] < 1.0);
  CHECK(rk4[2] > 1.0);
  const auto rk1 = sample("1", 0.0, 0.1);
  CHECK(rk1[0] == doctest::Approx(1.0));
  CHECK(rk1[2] > 1.0);
  CHECK(run({"region", "--order", "5"}).code == kExitConfig);
  CHECK(run({"region", "--resolution", "1"}).code == kExitConfig);
}

}
