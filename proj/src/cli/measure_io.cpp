#include <fstream>

#include "spectra/cli/cli.hpp"

namespace spectra::cli {

namespace {

const char* kModule = "cli";

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(kModule, "ParseError", where + ": " + what);
}

Rat rat_field(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
  } catch (const Error& e) {
    parse_fail(where, e.what());
  }
  parse_fail(where, "expected a rational as \"p/q\" or integer");
}

QuadExt entry_field(const Json& j, const std::string& where) {
  if (j.is_object()) {
    if (!j.contains("rat")) parse_fail(where, "entry object needs \"rat\": [p, q]");
    const auto& r = j.at("rat");
    if (!r.is_array() || r.size() != 2) parse_fail(where + "/rat", "expected [p, q]");
    Rat a(Rat(r[0].get<long long>(), r[1].get<long long>()));
    if (r[1].get<long long>() == 0) parse_fail(where + "/rat", "zero denominator");
    if (!j.contains("quad")) return QuadExt(a);
    const auto& q = j.at("quad");
    long long d = q.at("d").get<long long>();
    long long p2 = q.at("p2").get<long long>();
    long long q2 = q.at("q2").get<long long>();
    if (q2 == 0) parse_fail(where + "/quad", "zero denominator");
    if (d < 2) parse_fail(where + "/quad", "need squarefree d >= 2");
    return QuadExt(a, Rat(p2, q2), d);
  }
  return QuadExt(rat_field(j, where));
}

/// Exact quaternion from an exact rotation matrix, staying inside a single
/// quadratic field when possible; nullopt when the conversion would mix
/// fields (the caller falls back to a float-only atom).
std::optional<QuatQ> quat_from_exact_matrix(const Mat<QuadExt>& r) {
  // rational trace path only: w^2 = (1 + tr)/4
  QuadExt tr = r(0, 0) + r(1, 1) + r(2, 2);
  auto sqrt_of = [](const QuadExt& x) -> std::optional<QuadExt> {
    // exact square root inside Q or a single Q(sqrt d)
    if (!x.is_rational()) return std::nullopt;
    if (x.a < 0) return std::nullopt;
    BigInt num = rat_num(x.a), den = rat_den(x.a);
    BigInt sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
    if (sn * sn == num && sd * sd == den) return QuadExt(Rat(sn, sd));
    // sqrt(num/den) = sqrt(num*den)/den = s*sqrt(d')/den
    BigInt nd = num * den, square = 1, sf = 1;
    for (BigInt p = 2; p * p <= nd; ++p) {
      int e = 0;
      while (nd % p == 0) {
        nd /= p;
        ++e;
      }
      for (int k = 0; k < e / 2; ++k) square *= p;
      if (e % 2) sf *= p;
    }
    sf *= nd;
    if (sf == 1) return QuadExt(Rat(square, den));
    return QuadExt(Rat(0), Rat(square, den), sf.convert_to<long long>());
  };
  QuadExt w2 = (QuadExt(Rat(1)) + tr) / QuadExt(Rat(4));
  if (!w2.is_rational()) return std::nullopt;
  if (w2.a > 0) {
    auto w = sqrt_of(w2);
    if (!w) return std::nullopt;
    QuadExt four_w = QuadExt(Rat(4)) * *w;
    try {
      QuadExt x = (r(2, 1) - r(1, 2)) / four_w;
      QuadExt y = (r(0, 2) - r(2, 0)) / four_w;
      QuadExt z = (r(1, 0) - r(0, 1)) / four_w;
      QuatQ q{*w, x, y, z};
      if (q.norm2() == QuadExt(Rat(1))) return q;
    } catch (const Error&) {
      return std::nullopt;  // mixed fields
    }
    return std::nullopt;
  }
  // w = 0 (half turn): x^2 = (1 + r00 - r11 - r22)/4, use the largest axis
  for (int axis = 0; axis < 3; ++axis) {
    QuadExt diag = r(axis, axis) - r((axis + 1) % 3, (axis + 1) % 3) -
                   r((axis + 2) % 3, (axis + 2) % 3);
    QuadExt comp2 = (QuadExt(Rat(1)) + diag) / QuadExt(Rat(4));
    if (!comp2.is_rational() || comp2.a <= 0) continue;
    auto c = sqrt_of(comp2);
    if (!c) continue;
    try {
      QuadExt four_c = QuadExt(Rat(4)) * *c;
      QuadExt others[3];
      others[axis] = *c;
      others[(axis + 1) % 3] = (r((axis + 1) % 3, axis) + r(axis, (axis + 1) % 3)) / four_c;
      others[(axis + 2) % 3] = (r((axis + 2) % 3, axis) + r(axis, (axis + 2) % 3)) / four_c;
      QuatQ q{QuadExt(Rat(0)), others[0], others[1], others[2]};
      if (q.norm2() == QuadExt(Rat(1))) return q;
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Json read_json_file(const std::string& path, const char* code) {
  std::ifstream in(path);
  if (!in) throw Error(kModule, code, "cannot open '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error(kModule, "ParseError", std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return doc;
}

}  // namespace

walk::MeasureSpec parse_measure(const Json& doc) {
  walk::MeasureSpec mu;
  std::string group = doc.value("group", "SO3");
  if (group == "SO3")
    mu.group = walk::GroupKind::SO3;
  else if (group == "SU2")
    mu.group = walk::GroupKind::SU2;
  else
    parse_fail("/group", "expected \"SO3\" or \"SU2\"");
  mu.symmetric = doc.value("symmetric", false);
  if (!doc.contains("atoms") || !doc.at("atoms").is_array() || doc.at("atoms").empty())
    parse_fail("/atoms", "expected a non-empty array");

  int idx = 0;
  for (const auto& aj : doc.at("atoms")) {
    std::string where = "/atoms/" + std::to_string(idx++);
    if (!aj.contains("weight")) parse_fail(where, "missing weight");
    Rat w = rat_field(aj.at("weight"), where + "/weight");

    if (aj.contains("quaternion")) {
      const auto& qj = aj.at("quaternion");
      if (!qj.is_array() || qj.size() != 4) parse_fail(where + "/quaternion", "expected 4 entries");
      QuadExt c[4];
      for (int k = 0; k < 4; ++k) c[k] = entry_field(qj[k], where + "/quaternion");
      try {
        mu.atoms.push_back(walk::exact_atom(QuatQ{c[0], c[1], c[2], c[3]}, w));
      } catch (const Error& e) {
        throw Error(kModule, e.code(), where + ": " + e.what());
      }
    } else if (aj.contains("matrix")) {
      const auto& mj = aj.at("matrix");
      if (!mj.is_array() || mj.size() != 3) parse_fail(where + "/matrix", "expected 3x3");
      Mat<QuadExt> r(3, 3);
      for (int i = 0; i < 3; ++i) {
        if (!mj[i].is_array() || mj[i].size() != 3) parse_fail(where + "/matrix", "expected 3x3");
        for (int j = 0; j < 3; ++j) r(i, j) = entry_field(mj[i][j], where + "/matrix");
      }
      auto q = quat_from_exact_matrix(r);
      if (q) {
        mu.atoms.push_back(walk::exact_atom(*q, w));
      } else {
        // float fallback: exact membership paths will refuse this atom
        auto rd = [&](int i, int j) { return r(i, j).to_double(); };
        double tr = rd(0, 0) + rd(1, 1) + rd(2, 2);
        double wq = std::sqrt(std::max(0.0, (1 + tr) / 4));
        Quatd qd;
        if (wq > 1e-8) {
          qd = Quatd(wq, (rd(2, 1) - rd(1, 2)) / (4 * wq), (rd(0, 2) - rd(2, 0)) / (4 * wq),
                     (rd(1, 0) - rd(0, 1)) / (4 * wq));
        } else {
          double x = std::sqrt(std::max(0.0, (1 + rd(0, 0) - rd(1, 1) - rd(2, 2)) / 4));
          qd = (x > 1e-8) ? Quatd(0, x, (rd(1, 0) + rd(0, 1)) / (4 * x),
                                  (rd(2, 0) + rd(0, 2)) / (4 * x))
                          : Quatd(0, 0, std::sqrt(std::max(0.0, (1 + rd(1, 1)) / 2)),
                                  rd(2, 1) / (2 * std::sqrt(std::max(1e-12, (1 + rd(1, 1)) / 2))));
        }
        walk::Atom a;
        a.q = qd.normalized();
        a.w = to_double(w);
        a.weight_exact = w;
        mu.atoms.push_back(a);
      }
    } else {
      parse_fail(where, "atom needs \"quaternion\" or \"matrix\"");
    }
  }
  mu.validate();  // NotProbability / NotSymmetric / NotUnit
  return mu;
}

walk::MeasureSpec load_measure(const std::string& path) {
  return parse_measure(read_json_file(path, "InvalidMeasureFile"));
}

prox::ProductEnsemble load_ensemble(const std::string& path) {
  Json doc = read_json_file(path, "InvalidEnsembleFile");
  prox::ProductEnsemble ens;
  if (doc.contains("field") && doc.at("field").is_object()) {
    ens.field = prox::FieldKind::Padic;
    ens.p = doc.at("field").at("p").get<long long>();
  } else {
    std::string f = doc.value("field", "R");
    if (f != "R") parse_fail("/field", "expected \"R\" or {\"p\": prime}");
    ens.field = prox::FieldKind::Real;
  }
  if (!doc.contains("matrices") || !doc.at("matrices").is_array())
    parse_fail("/matrices", "expected an array of square matrices");
  for (const auto& mj : doc.at("matrices")) {
    std::size_t n = mj.size();
    Mat<Rat> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mj[i].size() != n) parse_fail("/matrices", "matrix is not square");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rat_field(mj[i][j], "/matrices");
    }
    ens.matrices.push_back(std::move(m));
  }
  if (doc.contains("weights"))
    for (const auto& wj : doc.at("weights")) ens.weights.push_back(rat_field(wj, "/weights"));
  else
    ens.weights.assign(ens.matrices.size(), Rat(1, ens.matrices.size()));
  ens.validate();
  return ens;
}

std::vector<cert::MatQ> load_generators(const std::string& path) {
  Json doc = read_json_file(path, "InvalidGeneratorFile");
  if (!doc.contains("matrices") || !doc.at("matrices").is_array() || doc.at("matrices").empty())
    parse_fail("/matrices", "expected a non-empty array of matrices");
  std::vector<cert::MatQ> gens;
  for (const auto& mj : doc.at("matrices")) {
    std::size_t n = mj.size();
    cert::MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mj[i].size() != n) parse_fail("/matrices", "matrix is not square");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry_field(mj[i][j], "/matrices");
    }
    gens.push_back(std::move(m));
  }
  return gens;
}

SubspaceModel<QuadExt> load_subspace(const std::string& path) {
  Json doc = read_json_file(path, "InvalidSubspaceFile");
  if (!doc.contains("basis") || !doc.at("basis").is_array() || doc.at("basis").empty())
    parse_fail("/basis", "expected a non-empty array of vectors");
  std::vector<std::vector<QuadExt>> basis;
  for (const auto& row : doc.at("basis")) {
    std::vector<QuadExt> r;
    for (const auto& x : row) r.push_back(entry_field(x, "/basis"));
    basis.push_back(std::move(r));
  }
  return make_subspace<QuadExt>(basis, [](const QuadExt& v) { return std::fabs(v.to_double()); });
}

}  // namespace spectra::cli
