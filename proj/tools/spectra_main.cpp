#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "spectra/cli/cli.hpp"

namespace {

using spectra::cli::ExperimentConfig;
using spectra::cli::Json;

int emit(const spectra::cli::Report& rep, const ExperimentConfig& cfg) {
  std::string text = spectra::cli::render(rep, cfg.format);
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) {
      std::cerr << "cannot write '" << cfg.out_path << "'\n";
      return 1;
    }
    out << text;
  }
  if (rep.exit_code != 0 && rep.document.contains("error"))
    std::cerr << rep.document.at("error").at("message").get<std::string>() << "\n";
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra: desk-scale workbench for spectral gaps, root-system faces, "
               "Diophantine walk profiling, and exact invariant-subspace certification"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  app.add_option("--out", cfg.out_path, "write the report to a file instead of stdout");
  app.add_option("--format", cfg.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timings", cfg.timings, "include wall-clock timings (breaks byte-stability)");

  // helpers to register typed options straight into the params json
  auto opt_int = [&](CLI::App* cmd, const char* flag, const char* key, const char* help) {
    cmd->add_option_function<long long>(
        flag, [&cfg, key = std::string(key)](long long v) { cfg.params[key] = v; }, help);
  };
  auto opt_dbl = [&](CLI::App* cmd, const char* flag, const char* key, const char* help) {
    cmd->add_option_function<double>(
        flag, [&cfg, key = std::string(key)](double v) { cfg.params[key] = v; }, help);
  };
  auto opt_str = [&](CLI::App* cmd, const char* flag, const char* key, const char* help) {
    cmd->add_option_function<std::string>(
        flag, [&cfg, key = std::string(key)](const std::string& v) { cfg.params[key] = v; },
        help);
  };
  auto opt_flag = [&](CLI::App* cmd, const char* flag, const char* key, const char* help) {
    cmd->add_flag_function(
        flag, [&cfg, key = std::string(key)](std::int64_t) { cfg.params[key] = true; }, help);
  };

  auto add_type_opts = [&](CLI::App* cmd) {
    opt_str(cmd, "--family", "family", "root-system family A..G");
    opt_int(cmd, "--rank", "rank", "rank (with --family)");
    opt_int(cmd, "--max-rank", "max_rank", "sweep all admissible types up to this rank");
  };
  auto add_measure_opts = [&](CLI::App* cmd) {
    opt_str(cmd, "--measure", "measure", "measure JSON file");
    opt_str(cmd, "--builtin", "builtin", "builtin measure: free-pair or torus");
    opt_int(cmd, "--seed", "seed", "RNG seed");
  };

  auto* faces = app.add_subcommand("faces-verify", "face-lemma verification over chamber faces");
  add_type_opts(faces);
  opt_int(faces, "--weyl-cap", "weyl_cap", "Weyl enumeration cap");

  auto* tilde = app.add_subcommand("tilde-classify", "highest-root dichotomy per type");
  add_type_opts(tilde);
  opt_flag(tilde, "--export-roots", "export_roots", "embed the full root-system data as JSON");

  auto* wedgeb = app.add_subcommand("wedge-build", "wedge subrepresentation of a face");
  add_type_opts(wedgeb);
  wedgeb->add_option_function<std::string>(
      "--support",
      [&cfg](const std::string& s) {
        std::vector<int> sup;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) sup.push_back(std::stoi(item));
        cfg.params["support"] = sup;
      },
      "comma-separated support indices (0-based); omit to sweep all faces");
  opt_int(wedgeb, "--rank-cap", "rank_cap", "wedge rank cap");

  auto* gap = app.add_subcommand("harm-gap", "spectral radius estimates per spin level");
  add_measure_opts(gap);
  opt_dbl(gap, "--jmax", "jmax", "largest spin level j");
  opt_int(gap, "--n", "n", "Gelfand power");

  auto* pars = app.add_subcommand("parseval", "Parseval and Wigner homomorphism checks");
  opt_int(pars, "--count", "count", "number of random band-limited spectra");
  opt_int(pars, "--two-jmax", "two_jmax", "band limit as 2j");
  opt_int(pars, "--pairs", "pairs", "random pairs for the homomorphism check");
  opt_int(pars, "--seed", "seed", "RNG seed");

  auto* dio = app.add_subcommand("dio-profile", "almost-Diophantine walk profile");
  add_measure_opts(dio);
  opt_dbl(dio, "--c1", "c1", "neighborhood exponent C1");
  opt_int(dio, "--nmin", "nmin", "first walk length");
  opt_int(dio, "--nmax", "nmax", "last walk length");
  opt_int(dio, "--samples", "samples", "Monte-Carlo chains");
  opt_flag(dio, "--no-finite", "no_finite", "drop the finite subgroups from the family");

  auto* kes = app.add_subcommand("kesten", "free-group return-probability baseline");
  opt_int(kes, "--generators", "generators", "number of free generators m");
  opt_int(kes, "--nmax", "nmax", "half-length of the longest return");

  auto* fla = app.add_subcommand("flatten", "L2-flattening ratio sweep");
  add_measure_opts(fla);
  opt_int(fla, "--emin", "emin", "smallest scale exponent (delta = 2^-e)");
  opt_int(fla, "--emax", "emax", "largest scale exponent");
  opt_dbl(fla, "--c", "c", "walk length factor n = ceil(c log(1/delta))");
  opt_int(fla, "--samples", "samples", "samples per scale");

  auto* ene = app.add_subcommand("energy", "multiplicative energy at a scale");
  add_measure_opts(ene);
  opt_dbl(ene, "--delta", "delta", "scale");
  opt_int(ene, "--n", "n", "walk length for the cloud");
  opt_int(ene, "--samples", "samples", "cloud samples");
  opt_str(ene, "--synthetic", "synthetic", "synthetic cloud: torus-net");
  opt_int(ene, "--points", "points", "synthetic cloud size");
  opt_int(ene, "--budget", "budget", "net-size budget");

  auto* dec = app.add_subcommand("decay", "hyperplane-avoidance decay for matrix products");
  opt_str(dec, "--ensemble", "ensemble", "ensemble JSON file");
  opt_str(dec, "--v", "v", "start vector, comma-separated rationals");
  opt_str(dec, "--normal", "normal", "hyperplane normal, comma-separated rationals");
  opt_dbl(dec, "--eps", "eps", "relative hit threshold");
  opt_int(dec, "--nmin", "nmin", "first length");
  opt_int(dec, "--nmax", "nmax", "last length");
  opt_int(dec, "--samples", "samples", "Monte-Carlo chains");
  opt_int(dec, "--exact-nmax", "exact_nmax", "also run the exact enumeration oracle up to n");
  opt_int(dec, "--seed", "seed", "RNG seed");

  auto* cer = app.add_subcommand("cert", "common-invariant-subspace certification");
  opt_str(cer, "--generators", "generators", "generator JSON file (symmetric set)");
  opt_str(cer, "--subspace", "subspace", "subspace JSON file");
  opt_int(cer, "--radius", "radius", "word-ball radius");
  opt_dbl(cer, "--threshold", "threshold", "near-set threshold");
  opt_int(cer, "--height-bits", "height_bits", "entry bit budget");

  // two-word forms matching the module-level interface descriptions
  auto* faces_grp = app.add_subcommand("faces", "face-lemma commands");
  faces_grp->require_subcommand(1);
  auto* faces_verify = faces_grp->add_subcommand("verify", "same as faces-verify");
  add_type_opts(faces_verify);
  opt_int(faces_verify, "--weyl-cap", "weyl_cap", "Weyl enumeration cap");

  auto* harm_grp = app.add_subcommand("harm", "harmonic-analysis commands");
  harm_grp->require_subcommand(1);
  auto* harm_gap = harm_grp->add_subcommand("gap", "same as harm-gap");
  add_measure_opts(harm_gap);
  opt_dbl(harm_gap, "--jmax", "jmax", "largest spin level j");
  opt_int(harm_gap, "--n", "n", "Gelfand power");

  // let the global --out/--format/--timings appear after the subcommand too
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands([](const CLI::App*) { return true; }))
      nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1 (help stays 0)
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (cfg.command == "faces") cfg.command = "faces-verify";
    if (cfg.command == "harm") cfg.command = "harm-gap";
  }

  auto rep = spectra::cli::run(cfg);
  return emit(rep, cfg);
}
