#pragma once

#include <fstream>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperocta/errors.hpp"
#include "hyperocta/kunneth.hpp"
#include "hyperocta/numeric.hpp"
#include "hyperocta/octagen.hpp"
#include "hyperocta/rewriter.hpp"
#include "hyperocta/subsets.hpp"
#include "hyperocta/sympoly.hpp"
#include "hyperocta/zlattice.hpp"

namespace hyperocta {

using nlohmann::json;

// ---- arbitrary-precision scalars: strings on the wire --------------------

inline json int_to_json(const Int& v) { return v.str(); }

inline Int int_from_json(const json& j) {
  if (j.is_string()) return int_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw DomainError("expected an integer or integer string");
}

inline json rat_to_json(const Rat& v) { return rat_to_string(v); }

inline Rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw DomainError("expected a rational string");
}

// ---- subsets and relations ------------------------------------------------

inline json subset_to_json(const Subset& s) {
  return json(s.elements());
}

inline Subset subset_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("subset must be an array");
  return Subset(j.get<std::vector<int>>());
}

// {"n":int,"m":int,"terms":[{"subset":[ints],"coeff":"int-string"}]}
inline json formal_sum_to_json(const FormalSum& fs) {
  json terms = json::array();
  for (const auto& [s, c] : fs.terms())
    terms.push_back({{"subset", subset_to_json(s)}, {"coeff", int_to_json(c)}});
  return {{"n", fs.n()}, {"m", fs.m()}, {"terms", std::move(terms)}};
}

inline FormalSum formal_sum_from_json(const json& j) {
  FormalSum fs(j.at("n").get<int>(), j.at("m").get<int>());
  for (const json& t : j.at("terms"))
    fs.add_term(subset_from_json(t.at("subset")), int_from_json(t.at("coeff")));
  return fs;
}

// ---- polynomials -----------------------------------------------------------

// list of {"exps": {"index": exponent}, "coeff": "p/q"}
inline json poly_to_json(const Poly& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) {
    json exps = json::object();
    for (const auto& [i, e] : m.exps()) exps[std::to_string(i)] = e;
    out.push_back({{"exps", std::move(exps)}, {"coeff", rat_to_json(c)}});
  }
  return out;
}

inline Poly poly_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("polynomial must be an array of terms");
  Poly p;
  for (const json& t : j) {
    std::vector<std::pair<int, int>> exps;
    for (const auto& [key, val] : t.at("exps").items())
      exps.push_back({std::stoi(key), val.get<int>()});
    std::sort(exps.begin(), exps.end());
    p.add_term(Monomial(std::move(exps)), rat_from_json(t.at("coeff")));
  }
  return p;
}

// ---- lattices ---------------------------------------------------------------

// {"ambient": N, "basis": [[int...]...]}, basis rows in canonical HNF
inline json lattice_to_json(const Lattice& l) {
  json basis = json::array();
  for (std::size_t i = 0; i < l.basis().rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < l.basis().cols(); ++j) {
      const Int& v = l.basis().at(i, j);
      if (v > Int(std::numeric_limits<long long>::max()) ||
          v < Int(std::numeric_limits<long long>::min()))
        row.push_back(v.str());
      else
        row.push_back(v.convert_to<long long>());
    }
    basis.push_back(std::move(row));
  }
  return {{"ambient", l.ambient()}, {"basis", std::move(basis)}};
}

inline Lattice lattice_from_json(const json& j) {
  const std::size_t ambient = j.at("ambient").get<std::size_t>();
  std::vector<std::vector<Int>> rows;
  for (const json& r : j.at("basis")) {
    std::vector<Int> row;
    for (const json& v : r) row.push_back(int_from_json(v));
    rows.push_back(std::move(row));
  }
  return lattice_from_rows(rows, ambient);
}

// ---- hyperoctahedral specs and certificates --------------------------------

// {"base":[...], "pairs":[[a,b],...]} plus context when standalone
inline json spec_to_json(const OctaSpec& s) {
  json pairs = json::array();
  for (const auto& [a, b] : s.pairs()) pairs.push_back({a, b});
  return {{"n", s.n()},
          {"m", s.m()},
          {"base", subset_to_json(s.base())},
          {"pairs", std::move(pairs)}};
}

inline OctaSpec spec_from_json(const json& j) {
  std::vector<std::pair<int, int>> pairs;
  for (const json& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw DomainError("pair must be [a,b]");
    pairs.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return OctaSpec(j.at("n").get<int>(), j.at("m").get<int>(),
                  subset_from_json(j.at("base")), std::move(pairs));
}

// {"n","m","k","entries":[{"coeff":"-3","base":[...],"pairs":[[a,b],...]}]}
inline json certificate_to_json(const Certificate& c) {
  json entries = json::array();
  for (const CertEntry& e : c.entries()) {
    json pairs = json::array();
    for (const auto& [a, b] : e.spec.pairs()) pairs.push_back({a, b});
    entries.push_back({{"coeff", int_to_json(e.coeff)},
                       {"base", subset_to_json(e.spec.base())},
                       {"pairs", std::move(pairs)}});
  }
  return {{"n", c.n()}, {"m", c.m()}, {"k", c.k()}, {"entries", std::move(entries)}};
}

inline Certificate certificate_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  const int k = j.at("k").get<int>();
  std::vector<CertEntry> entries;
  for (const json& e : j.at("entries")) {
    std::vector<std::pair<int, int>> pairs;
    for (const json& p : e.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw DomainError("pair must be [a,b]");
      pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    entries.push_back({int_from_json(e.at("coeff")),
                       OctaSpec(n, m, subset_from_json(e.at("base")),
                                std::move(pairs))});
  }
  return Certificate(n, m, k, std::move(entries));
}

// ---- kernel reports ---------------------------------------------------------

// {"n","m","k","kernel_rank","g_rank","equal","elapsed_ms"}
inline json report_to_json(const KernelReport& r) {
  return {{"n", r.n},
          {"m", r.m},
          {"k", r.k},
          {"kernel_rank", r.kernel_rank},
          {"g_rank", r.g_rank},
          {"equal", r.equal},
          {"elapsed_ms", r.elapsed_ms}};
}

inline KernelReport report_from_json(const json& j) {
  KernelReport r;
  r.n = j.at("n").get<int>();
  r.m = j.at("m").get<int>();
  r.k = j.at("k").get<int>();
  r.kernel_rank = j.at("kernel_rank").get<std::size_t>();
  r.g_rank = j.at("g_rank").get<std::size_t>();
  r.equal = j.at("equal").get<bool>();
  r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  return r;
}

// ---- model algebras and tensors ---------------------------------------------

// {"name","basis":[labels],"degrees":[ints],"unit":index,
//  "mul": [i][j] -> vector of rational strings, "integral":[rational strings]}
inline json algebra_to_json(const Algebra& a) {
  json basis = json::array(), degrees = json::array(), integral = json::array();
  for (int i = 0; i < a.dim(); ++i) {
    basis.push_back(a.name(i));
    degrees.push_back(a.degree(i));
    integral.push_back(rat_to_json(a.integral(i)));
  }
  json mul = json::array();
  for (int i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.dim(); ++j) {
      json vec = json::array();
      for (int l = 0; l < a.dim(); ++l) vec.push_back(rat_to_json(a.mul_vec(i, j)[l]));
      row.push_back(std::move(vec));
    }
    mul.push_back(std::move(row));
  }
  return {{"name", a.model_name()}, {"basis", std::move(basis)},
          {"degrees", std::move(degrees)}, {"unit", a.unit()},
          {"mul", std::move(mul)}, {"integral", std::move(integral)}};
}

inline std::shared_ptr<const Algebra> algebra_from_json(const json& j) {
  std::vector<std::string> names = j.at("basis").get<std::vector<std::string>>();
  std::vector<int> degrees = j.at("degrees").get<std::vector<int>>();
  const int unit = j.at("unit").get<int>();
  const std::size_t d = names.size();
  std::vector<std::vector<std::vector<Rat>>> mul(
      d, std::vector<std::vector<Rat>>(d, std::vector<Rat>(d, Rat(0))));
  const json& jm = j.at("mul");
  if (jm.size() != d) throw DomainError("mul table has wrong size");
  for (std::size_t a = 0; a < d; ++a) {
    if (jm[a].size() != d) throw DomainError("mul table has wrong size");
    for (std::size_t b = 0; b < d; ++b) {
      if (jm[a][b].size() != d) throw DomainError("mul table has wrong size");
      for (std::size_t l = 0; l < d; ++l) mul[a][b][l] = rat_from_json(jm[a][b][l]);
    }
  }
  std::vector<Rat> integral;
  for (const json& v : j.at("integral")) integral.push_back(rat_from_json(v));
  return std::make_shared<Algebra>(
      j.value("name", std::string("model")), std::move(names),
      std::move(degrees), unit, std::move(mul), std::move(integral));
}

// {"factors": f, "terms":[{"idx":[i1..if],"coeff":"p/q"}]}
inline json tensor_to_json(const Tensor& t) {
  json terms = json::array();
  for (const auto& [idx, c] : t.terms())
    terms.push_back({{"idx", idx}, {"coeff", rat_to_json(c)}});
  return {{"factors", t.factors()}, {"terms", std::move(terms)}};
}

inline Tensor tensor_from_json(std::shared_ptr<const Algebra> alg,
                               const json& j) {
  Tensor t(std::move(alg), j.at("factors").get<int>());
  for (const json& term : j.at("terms"))
    t.add_term(term.at("idx").get<std::vector<int>>(),
               rat_from_json(term.at("coeff")));
  return t;
}

// ---- file helpers -------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace hyperocta
