#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "spectra/cli/cli.hpp"

using namespace spectra;
using namespace spectra::cli;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/spectra_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

const char* kGoodMeasure = R"({
  "group": "SO3",
  "symmetric": true,
  "atoms": [
    {"quaternion": ["4/5", "0", "0", "3/5"], "weight": "1/2"},
    {"quaternion": ["4/5", "0", "0", "-3/5"], "weight": "1/2"}
  ]
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("measure loading: good file") {
  TempFile f("good.json", kGoodMeasure);
  auto mu = load_measure(f.path);
  CHECK(mu.atoms.size() == 2);
  CHECK(mu.symmetric);
  CHECK(mu.all_exact());
  CHECK(*mu.atoms[0].weight_exact == Rat(1, 2));
}

TEST_CASE("measure loading: quadratic entries") {
  TempFile f("quad.json", R"({
    "group": "SO3",
    "atoms": [
      {"quaternion": [{"rat": [0, 1], "quad": {"d": 5, "p2": 2, "q2": 5}},
                      {"rat": [0, 1], "quad": {"d": 5, "p2": 1, "q2": 5}}, "0", "0"],
       "weight": "1"}
    ]
  })");
  auto mu = load_measure(f.path);
  CHECK(mu.all_exact());
  CHECK(mu.atoms[0].exact->w == QuadExt(Rat(0), Rat(2, 5), 5));
}

TEST_CASE("measure loading: exact matrix input") {
  TempFile f("mat.json", R"({
    "group": "SO3",
    "atoms": [
      {"matrix": [["3/5", "-4/5", "0"], ["4/5", "3/5", "0"], ["0", "0", "1"]],
       "weight": "1"}
    ]
  })");
  auto mu = load_measure(f.path);
  REQUIRE(mu.atoms.size() == 1);
  // rotation by arccos(3/5) about z: quaternion (2/sqrt5, 0, 0, 1/sqrt5)
  REQUIRE(mu.atoms[0].exact.has_value());
  CHECK(mu.atoms[0].exact->w == QuadExt(Rat(0), Rat(2, 5), 5));
  CHECK(mu.atoms[0].exact->z == QuadExt(Rat(0), Rat(1, 5), 5));
}

TEST_CASE("measure loading: error paths") {
  CHECK_THROWS_WITH_AS(load_measure("/nonexistent/m.json"),
                       doctest::Contains("cannot open"), Error);

  TempFile bad_weight("badw.json", R"({"atoms": [
    {"quaternion": ["1", "0", "0", "0"], "weight": "1/2"},
    {"quaternion": ["0", "1", "0", "0"], "weight": "1/3"}]})");
  CHECK_THROWS_AS(load_measure(bad_weight.path), Error);  // NotProbability

  TempFile bad_rat("badr.json", R"({"atoms": [
    {"quaternion": ["1/0", "0", "0", "0"], "weight": "1"}]})");
  try {
    load_measure(bad_rat.path);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.code()) == "ParseError");
  }

  TempFile not_sym("nsym.json", R"({"symmetric": true, "atoms": [
    {"quaternion": ["4/5", "0", "0", "3/5"], "weight": "1"}]})");
  try {
    load_measure(not_sym.path);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.code()) == "NotSymmetric");
  }
}

TEST_CASE("reports are byte-identical for identical config and seed") {
  ExperimentConfig cfg;
  cfg.command = "dio-profile";
  cfg.params["builtin"] = "free-pair";
  cfg.params["c1"] = 0.2;
  cfg.params["nmin"] = 2;
  cfg.params["nmax"] = 8;
  cfg.params["samples"] = 2000;
  cfg.params["seed"] = 7;
  auto a = run(cfg);
  auto b = run(cfg);
  CHECK(a.exit_code == 0);
  CHECK(render(a, "json") == render(b, "json"));
  CHECK(a.document.at("config").at("seed") == 7);
  CHECK(a.document.at("tool").at("version") == kToolVersion);
}

TEST_CASE("faces-verify command yields all-true verdicts for B4") {
  ExperimentConfig cfg;
  cfg.command = "faces-verify";
  cfg.params["family"] = "B";
  cfg.params["max_rank"] = 4;
  auto rep = run(cfg);
  REQUIRE(rep.exit_code == 0);
  for (const auto& row : rep.document.at("results")) {
    if (row.at("hypothesis_met").get<bool>()) CHECK(row.at("holds").get<bool>());
  }
}

TEST_CASE("tilde-classify can embed exported root-system data") {
  ExperimentConfig cfg;
  cfg.command = "tilde-classify";
  cfg.params["family"] = "G";
  cfg.params["rank"] = 2;
  cfg.params["export_roots"] = true;
  auto rep = run(cfg);
  REQUIRE(rep.exit_code == 0);
  const auto& rsj = rep.document.at("results").at(0).at("root_system");
  CHECK(rsj.at("family") == "G");
  CHECK(rsj.at("roots").size() == 12);
  // coordinates appear as exact [num, den] pairs
  CHECK(rsj.at("roots").at(0).at(0).size() == 2);
  CHECK(rsj.at("cartan").size() == 2);
}

TEST_CASE("kesten command matches the oracle") {
  ExperimentConfig cfg;
  cfg.command = "kesten";
  cfg.params["generators"] = 2;
  cfg.params["nmax"] = 30;
  auto rep = run(cfg);
  REQUIRE(rep.exit_code == 0);
  CHECK(rep.document.at("results").at("relative_error").get<double>() < 0.02);
}

TEST_CASE("unknown command and missing measure map to usage errors") {
  ExperimentConfig cfg;
  cfg.command = "no-such-command";
  auto rep = run(cfg);
  CHECK(rep.exit_code == 1);
  CHECK(rep.document.at("error").at("code") == "UnknownCommand");

  ExperimentConfig cfg2;
  cfg2.command = "harm-gap";
  cfg2.params["measure"] = "/nonexistent/m.json";
  auto rep2 = run(cfg2);
  CHECK(rep2.exit_code == 1);
}

TEST_CASE("domain errors exit with code 2") {
  ExperimentConfig cfg;
  cfg.command = "dio-profile";
  cfg.params["builtin"] = "free-pair";
  cfg.params["c1"] = -1.0;  // BadParameter
  cfg.params["samples"] = 10;
  auto rep = run(cfg);
  CHECK(rep.exit_code == 2);
  CHECK(rep.document.at("error").at("module") == "walkdio");
}

TEST_CASE("csv projection") {
  ExperimentConfig cfg;
  cfg.command = "kesten";
  cfg.params["generators"] = 2;
  cfg.params["nmax"] = 6;
  auto rep = run(cfg);
  std::string csv = to_csv(rep.document.at("results"));
  CHECK(csv.substr(0, csv.find('\n')) == "two_n,p_return");
  // one header + nmax rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("decay command round-trips an ensemble file") {
  TempFile ens("ens.json", R"({
    "field": "R",
    "matrices": [[["1","1"],["0","1"]], [["2","1"],["1","1"]]],
    "weights": ["1/2", "1/2"]
  })");
  ExperimentConfig cfg;
  cfg.command = "decay";
  cfg.params["ensemble"] = ens.path;
  cfg.params["v"] = "1,0";
  cfg.params["normal"] = "0,1";
  cfg.params["eps"] = 1e-4;
  cfg.params["nmin"] = 1;
  cfg.params["nmax"] = 8;
  cfg.params["samples"] = 4000;
  cfg.params["exact_nmax"] = 6;
  auto rep = run(cfg);
  REQUIRE(rep.exit_code == 0);
  CHECK(rep.document.at("results").at("kappa_hat").get<double>() > 0);
  CHECK(rep.document.at("results").at("exact_enumeration").size() == 6);
}

TEST_CASE("cert command certifies the block scenario") {
  TempFile gens("gens.json", R"({
    "matrices": [
      [["3/5","-4/5","0","0"],["4/5","3/5","0","0"],["0","0","1","0"],["0","0","0","1"]],
      [["3/5","4/5","0","0"],["-4/5","3/5","0","0"],["0","0","1","0"],["0","0","0","1"]],
      [["1","0","0","0"],["0","1","0","0"],["0","0","5/13","-12/13"],["0","0","12/13","5/13"]],
      [["1","0","0","0"],["0","1","0","0"],["0","0","5/13","12/13"],["0","0","-12/13","5/13"]]
    ]
  })");
  TempFile sub("sub.json", R"({"basis": [["1","0","0","0"], ["0","1","0","0"]]})");
  ExperimentConfig cfg;
  cfg.command = "cert";
  cfg.params["generators"] = gens.path;
  cfg.params["subspace"] = sub.path;
  cfg.params["radius"] = 2;
  cfg.params["threshold"] = 1e-9;
  auto rep = run(cfg);
  REQUIRE(rep.exit_code == 0);
  CHECK(rep.document.at("results").at("certified").get<bool>());
  CHECK_FALSE(rep.document.at("results").at("degenerate").get<bool>());
}

}  // TEST_SUITE
