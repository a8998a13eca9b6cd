#include <chrono>
#include <set>
#include <sstream>

#include "spectra/cli/cli.hpp"
#include "spectra/core/rng.hpp"
#include "spectra/faces/faces.hpp"
#include "spectra/harm/su2harm.hpp"
#include "spectra/scale/multiscale.hpp"
#include "spectra/walk/walkdio.hpp"
#include "spectra/wedge/wedge.hpp"

namespace spectra::cli {

namespace {

const char* kModule = "cli";

using rootsys::Family;
using rootsys::RootSystem;
using rootsys::RootSystemSpec;

Json vec_fw_json(const VecR& fw) {
  Json a = Json::array();
  for (const auto& x : fw) a.push_back(rat_to_string(x));
  return a;
}

std::vector<RootSystemSpec> types_from_params(const Json& p) {
  if (p.contains("family") && p.contains("rank")) {
    return {{rootsys::family_from_char(p.at("family").get<std::string>().at(0)),
             p.at("rank").get<int>()}};
  }
  int max_rank = p.value("max_rank", 4);
  if (p.contains("family")) {
    Family f = rootsys::family_from_char(p.at("family").get<std::string>().at(0));
    std::vector<RootSystemSpec> out;
    for (auto spec : rootsys::irreducible_types_up_to_rank(max_rank))
      if (spec.family == f) out.push_back(spec);
    if (out.empty())
      throw Error(kModule, "InadmissibleSpec", "no admissible ranks for the family under max-rank");
    return out;
  }
  return rootsys::irreducible_types_up_to_rank(max_rank);
}

walk::MeasureSpec measure_from_params(const Json& p) {
  if (p.contains("measure")) return load_measure(p.at("measure").get<std::string>());
  if (p.value("builtin", "") == "free-pair") return walk::free_rational_pair_measure();
  if (p.value("builtin", "") == "torus") return walk::torus_supported_measure();
  throw Error(kModule, "InvalidMeasureFile",
              "no measure given: pass --measure FILE or --builtin free-pair|torus");
}

Json cmd_faces_verify(const Json& p, std::vector<std::string>&) {
  Json results = Json::array();
  for (auto spec : types_from_params(p)) {
    RootSystem rs = rootsys::build_root_system(spec);
    auto stab = rootsys::weyl_stabilizer(rs, rs.highest_root, p.value("weyl_cap", std::size_t(1000000)));
    for (const auto& face : faces::enumerate_faces(rs)) {
      auto fd = faces::face_of(rs, face.canonical_X);
      auto verdict = faces::verify_face_lemma(rs, face, stab);
      Json row;
      row["type"] = spec.name();
      row["support"] = face.support;
      row["m"] = fd.m;
      row["omega_X_fw"] = vec_fw_json(fd.omega_X_fw);
      row["intersection_size"] = verdict.intersection.size();
      row["hypothesis_met"] = verdict.hypothesis_met;
      row["holds"] = verdict.holds;
      results.push_back(std::move(row));
    }
  }
  return results;
}

Json cmd_tilde_classify(const Json& p, std::vector<std::string>&) {
  Json results = Json::array();
  for (auto spec : types_from_params(p)) {
    RootSystem rs = rootsys::build_root_system(spec);
    auto cls = rootsys::classify_highest_root(rs);
    Json row;
    row["type"] = spec.name();
    row["kind"] = cls.kind == rootsys::HighestRootClass::Kind::Fundamental ? "fundamental" : "sum_dual";
    row["distinct_pair"] = cls.distinct_pair();
    row["omega_fw"] = vec_fw_json(cls.omega.fw);
    if (cls.omega_star) row["omega_star_fw"] = vec_fw_json(cls.omega_star->fw);
    row["dim_lower_bound_c"] = rootsys::dim_lower_bound_constant(rs);
    if (p.value("export_roots", false)) row["root_system"] = rootsys::export_json(rs);
    results.push_back(std::move(row));
  }
  return results;
}

Json cmd_wedge_build(const Json& p, std::vector<std::string>&) {
  auto spec = RootSystemSpec{rootsys::family_from_char(p.at("family").get<std::string>().at(0)),
                             p.at("rank").get<int>()};
  RootSystem rs = rootsys::build_root_system(spec);
  auto alg = wedge::chevalley_basis(rs, p.value("rank_cap", 4));

  std::vector<faces::ChamberFace> face_list;
  if (p.contains("support")) {
    faces::ChamberFace f;
    f.canonical_X = VecR(rs.ambient_dim, Rat(0));
    for (int i : p.at("support").get<std::vector<int>>()) {
      f.support.push_back(i);
      f.canonical_X = vadd(f.canonical_X, rs.fundamental_weights[i]);
    }
    face_list.push_back(std::move(f));
  } else {
    face_list = faces::enumerate_faces(rs);
  }

  Json results = Json::array();
  for (const auto& face : face_list) {
    auto fd = faces::face_of(rs, face.canonical_X);
    auto xi = wedge::xi_vector(alg, fd);
    auto rep = wedge::generate_subrep(alg, xi);
    Json row;
    row["type"] = spec.name();
    row["support"] = face.support;
    row["m"] = fd.m;
    row["highest_weight_fw"] = vec_fw_json(rep.highest_weight.fw);
    row["dim"] = rep.dim();
    row["weyl_dim"] = rootsys::weyl_dimension(rs, rep.highest_weight.ambient).str();
    row["is_adjoint"] = rep.dim() == alg.dim();
    results.push_back(std::move(row));
  }
  return results;
}

Json cmd_harm_gap(const Json& p, std::vector<std::string>&) {
  auto mu = measure_from_params(p);
  int two_jmax = p.contains("jmax") ? static_cast<int>(std::lround(2 * p.at("jmax").get<double>()))
                                    : p.value("two_jmax", 20);
  int n = p.value("n", 64);
  auto rep = harm::spectral_radius_estimate(mu, harm::SpinLevel{two_jmax}, n);
  Json per = Json::array();
  for (const auto& [tj, v] : rep.per_twoj) {
    Json row;
    row["two_j"] = tj;
    row["gelfand"] = v;
    auto it = rep.eig_modulus.find(tj);
    if (it != rep.eig_modulus.end()) row["eig_modulus"] = it->second;
    per.push_back(std::move(row));
  }
  Json results;
  results["per_j"] = std::move(per);
  results["sup"] = rep.sup;
  results["n"] = rep.n;
  return results;
}

Json cmd_parseval(const Json& p, std::vector<std::string>&) {
  int count = p.value("count", 50);
  int two_jmax = p.value("two_jmax", 10);
  std::uint64_t seed = p.value("seed", std::uint64_t(1));
  CounterRng rng(seed, 0);
  double max_rel = 0;
  for (int t = 0; t < count; ++t) {
    harm::FourierSpectrum s;
    for (int tj = 0; tj <= two_jmax; ++tj) {
      Eigen::MatrixXcd b(tj + 1, tj + 1);
      for (int i = 0; i <= tj; ++i)
        for (int k = 0; k <= tj; ++k)
          b(i, k) = std::complex<double>(rng.next_uniform01() - 0.5, rng.next_uniform01() - 0.5);
      s.blocks[tj] = b;
    }
    auto r = harm::parseval_check(s);
    max_rel = std::max(max_rel, std::fabs(r.lhs - r.rhs) / r.rhs);
  }

  int pairs = p.value("pairs", 100);
  double max_defect = 0;
  for (int t = 0; t < pairs; ++t) {
    auto draw = [&]() {
      auto g = [&]() {
        double u1 = rng.next_uniform01(), u2 = rng.next_uniform01();
        return std::sqrt(-2 * std::log(u1 + 1e-300)) * std::cos(2 * M_PI * u2);
      };
      return Quatd(g(), g(), g(), g()).normalized();
    };
    Quatd g1 = draw(), g2 = draw();
    harm::SpinLevel j{p.value("two_j_hom", 6)};
    Eigen::MatrixXcd lhs = harm::wigner_matrix(g1 * g2, j).m;
    Eigen::MatrixXcd rhs = harm::wigner_matrix(g1, j).m * harm::wigner_matrix(g2, j).m;
    max_defect = std::max(max_defect, (lhs - rhs).operatorNorm());
  }

  Json results;
  results["count"] = count;
  results["two_jmax"] = two_jmax;
  results["max_relative_error"] = max_rel;
  results["homomorphism_pairs"] = pairs;
  results["max_homomorphism_defect"] = max_defect;
  return results;
}

Json cmd_dio_profile(const Json& p, std::vector<std::string>&) {
  auto mu = measure_from_params(p);
  double c1 = p.value("c1", 0.15);
  int nmin = p.value("nmin", 5), nmax = p.value("nmax", 40);
  std::size_t samples = p.value("samples", std::size_t(100000));
  std::uint64_t seed = p.value("seed", std::uint64_t(1));
  auto family = walk::default_subgroup_family(mu, !p.value("no_finite", false));
  auto prof = walk::diophantine_profile(mu, c1, nmin, nmax, samples, seed, family);
  Json rows = Json::array();
  for (const auto& r : prof.rows) {
    Json row;
    row["n"] = r.n;
    row["delta"] = r.delta;
    row["worst_probability"] = r.worst_probability;
    row["worst_subgroup"] = r.worst_subgroup;
    rows.push_back(std::move(row));
  }
  Json results;
  results["rows"] = std::move(rows);
  results["c1"] = c1;
  results["c2_hat"] = prof.c2_hat;
  results["r2"] = prof.r2;
  results["fit_points"] = prof.fit_points;
  results["family_size"] = family.size();
  return results;
}

Json cmd_kesten(const Json& p, std::vector<std::string>&) {
  auto rep = walk::kesten_baseline(p.value("generators", 2), p.value("nmax", 30));
  Json rows = Json::array();
  for (const auto& [tn, pv] : rep.p2n) {
    Json row;
    row["two_n"] = tn;
    row["p_return"] = pv;
    rows.push_back(std::move(row));
  }
  Json results;
  results["m"] = rep.m;
  results["n_max"] = rep.n_max;
  results["theory"] = rep.theory;
  results["empirical"] = rep.empirical;
  results["gelfand_max"] = rep.gelfand_max;
  results["relative_error"] = std::fabs(rep.empirical - rep.theory) / rep.theory;
  results["p2n"] = std::move(rows);
  return results;
}

Json cmd_flatten(const Json& p, std::vector<std::string>& warnings) {
  auto mu = measure_from_params(p);
  int emin = p.value("emin", 4), emax = p.value("emax", 8);
  double c = p.value("c", 2.0);
  std::size_t samples = p.value("samples", std::size_t(30000));
  std::uint64_t seed = p.value("seed", std::uint64_t(1));
  auto sweep = scale::flattening_sweep(mu, emin, emax, c, samples, seed);
  Json rows = Json::array();
  for (const auto& r : sweep.rows) {
    Json row;
    row["delta"] = r.delta;
    row["n"] = r.n;
    row["ratio"] = r.result.ratio;
    row["l2_norm"] = r.result.l2_norm;
    row["under_resolved"] = r.result.under_resolved;
    if (r.result.under_resolved)
      warnings.push_back("UnderResolved at delta = " + std::to_string(r.delta));
    rows.push_back(std::move(row));
  }
  Json results;
  results["rows"] = std::move(rows);
  results["epsilon_hat"] = sweep.epsilon_hat;
  results["r2"] = sweep.r2;
  return results;
}

Json cmd_energy(const Json& p, std::vector<std::string>&) {
  double delta = p.value("delta", 0.05);
  scale::PointCloud a;
  if (p.value("synthetic", "") == "torus-net") {
    int n = p.value("points", 100);
    std::vector<Quatd> pts;
    for (int k = 0; k < n; ++k) pts.push_back(axis_angle_quat(0, 0, 1, 2 * M_PI * k / n));
    a = scale::cloud_from_points(std::move(pts));
  } else {
    auto mu = measure_from_params(p);
    a = scale::cloud_from_walk(mu, p.value("n", 8), p.value("samples", std::size_t(2000)),
                               p.value("seed", std::uint64_t(1)));
  }
  auto rep = scale::multiplicative_energy(a, a, delta, p.value("budget", std::size_t(3000)));
  Json results;
  results["delta"] = rep.delta;
  results["n_a"] = rep.n_a;
  results["n_b"] = rep.n_b;
  results["energy"] = rep.energy;
  results["normalized_ratio"] = rep.normalized_ratio;
  results["bsg_K"] = rep.bsg_K;
  return results;
}

Json cmd_decay(const Json& p, std::vector<std::string>&) {
  auto ens = load_ensemble(p.at("ensemble").get<std::string>());
  auto parse_vec = [&](const std::string& key) {
    VecR v;
    std::stringstream ss(p.at(key).get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(rat_from_string(item));
    return v;
  };
  VecR v = parse_vec("v");
  VecR normal = parse_vec("normal");
  auto rep = prox::decay_estimate(ens, v, normal, p.value("eps", 1e-3), p.value("nmin", 1),
                                  p.value("nmax", 12), p.value("samples", std::size_t(20000)),
                                  p.value("seed", std::uint64_t(1)));
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row;
    row["n"] = r.n;
    row["hit_probability"] = r.hit_probability;
    rows.push_back(std::move(row));
  }
  Json results;
  results["rows"] = std::move(rows);
  results["kappa_hat"] = rep.kappa_hat;
  results["r2"] = rep.r2;
  if (p.value("exact_nmax", 0) > 0) {
    auto oracle = prox::decay_exact_enumeration(ens, v, normal, p.value("eps", 1e-3),
                                                p.at("exact_nmax").get<int>());
    Json orows = Json::array();
    for (const auto& r : oracle) {
      Json row;
      row["n"] = r.n;
      row["hit_probability"] = r.hit_probability;
      row["exact_membership"] = rat_to_string(r.exact_membership);
      orows.push_back(std::move(row));
    }
    results["exact_enumeration"] = std::move(orows);
  }
  return results;
}

Json cmd_cert(const Json& p, std::vector<std::string>& warnings) {
  auto gens = load_generators(p.at("generators").get<std::string>());
  auto l0 = load_subspace(p.at("subspace").get<std::string>());
  auto ball = cert::word_ball(gens, p.value("radius", 3),
                              p.value("height_bits", std::size_t(4096)));
  auto res = cert::certify_common_invariant_subspace(ball, l0, p.value("threshold", 1e-6));
  Json results;
  results["ball_size"] = ball.elements.size();
  if (!res) {
    results["certified"] = false;
    return results;
  }
  results["certified"] = true;
  results["near_set_size"] = res->near_set.size();
  results["sign"] = res->sign;
  results["degenerate"] = res->degenerate;
  if (res->degenerate) warnings.push_back("near set collapsed to the identity");
  Json basis = Json::array();
  for (const auto& row : res->l1.basis) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.str());
    basis.push_back(std::move(r));
  }
  results["subspace_basis"] = std::move(basis);
  return results;
}

}  // namespace

Report run(const ExperimentConfig& config) {
  Report rep;
  rep.document["schema_version"] = kSchemaVersion;
  rep.document["tool"] = Json{{"name", "spectra"}, {"version", kToolVersion}};
  rep.document["command"] = config.command;
  rep.document["config"] = config.params;
  if (!rep.document["config"].contains("seed")) rep.document["config"]["seed"] = 1;

  std::vector<std::string> warnings;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Json results;
    if (config.command == "faces-verify")
      results = cmd_faces_verify(config.params, warnings);
    else if (config.command == "tilde-classify")
      results = cmd_tilde_classify(config.params, warnings);
    else if (config.command == "wedge-build")
      results = cmd_wedge_build(config.params, warnings);
    else if (config.command == "harm-gap")
      results = cmd_harm_gap(config.params, warnings);
    else if (config.command == "parseval")
      results = cmd_parseval(config.params, warnings);
    else if (config.command == "dio-profile")
      results = cmd_dio_profile(config.params, warnings);
    else if (config.command == "kesten")
      results = cmd_kesten(config.params, warnings);
    else if (config.command == "flatten")
      results = cmd_flatten(config.params, warnings);
    else if (config.command == "energy")
      results = cmd_energy(config.params, warnings);
    else if (config.command == "decay")
      results = cmd_decay(config.params, warnings);
    else if (config.command == "cert")
      results = cmd_cert(config.params, warnings);
    else
      throw Error(kModule, "UnknownCommand", "no command '" + config.command + "'");
    rep.document["results"] = std::move(results);
    rep.exit_code = 0;
  } catch (const Error& e) {
    rep.document["error"] = Json{{"module", e.module()}, {"code", e.code()}, {"message", e.what()}};
    bool usage = e.code() == "UnknownCommand" || e.code() == "InvalidMeasureFile" ||
                 e.code() == "InvalidEnsembleFile" || e.code() == "InvalidGeneratorFile" ||
                 e.code() == "InvalidSubspaceFile" || e.code() == "ParseError";
    rep.exit_code = usage ? 1 : 2;
  }
  rep.document["warnings"] = warnings;
  if (config.timings) {
    auto t1 = std::chrono::steady_clock::now();
    rep.document["timings_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  } else {
    rep.document["timings_ms"] = nullptr;  // omitted for byte-stable reports
  }
  return rep;
}

std::string to_csv(const Json& results) {
  const Json* rows = &results;
  if (results.is_object()) {
    for (const auto& [k, v] : results.items()) {
      (void)k;
      if (v.is_array() && !v.empty() && v.front().is_object()) {
        rows = &v;
        break;
      }
    }
  }
  std::ostringstream out;
  auto cell = [](const Json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  if (rows->is_array() && !rows->empty() && rows->front().is_object()) {
    std::vector<std::string> header;
    for (const auto& [k, v] : rows->front().items()) {
      (void)v;
      header.push_back(k);
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : *rows) {
      for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << (row.contains(header[i]) ? cell(row.at(header[i])) : "");
      out << "\n";
    }
    return out.str();
  }
  // scalar projection: one header/value row
  if (results.is_object()) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : results.items())
      if (!v.is_structured()) keys.push_back(k);
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (std::size_t i = 0; i < keys.size(); ++i)
      out << (i ? "," : "") << cell(results.at(keys[i]));
    out << "\n";
  }
  return out.str();
}

std::string render(const Report& report, const std::string& format) {
  if (format == "csv" && report.document.contains("results"))
    return to_csv(report.document.at("results"));
  return report.document.dump(2) + "\n";
}

}  // namespace spectra::cli
