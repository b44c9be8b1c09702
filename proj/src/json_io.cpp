#include "pencilform/json_io.hpp"

#include <cctype>
#include <string>

#include "pencilform/error.hpp"

namespace pencilform {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ContractError((path.empty() ? std::string("input") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t natural(const Json& j, const std::string& path) {
  const auto v = integer(j, path);
  if (v < 0) bad(path, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

Residue residue(const Json& j, const Prime& p, const std::string& path) {
  const auto v = integer(j, path);
  if (v < 0 || v >= static_cast<std::int64_t>(p.value())) {
    bad(path, "entry " + std::to_string(v) + " is outside [0, p)");
  }
  return static_cast<Residue>(v);
}

Json residues(const Vec& v) {
  Json out = Json::array();
  for (auto r : v) out.push_back(r);
  return out;
}

}  // namespace

Prime prime_from_json(const Json& j, const char* path) {
  const auto v = integer(j, path);
  if (v < 2 || v > 0x7fffffff) bad(path, "not a prime");
  try {
    return Prime(static_cast<std::uint32_t>(v));
  } catch (const ContractError&) {
    bad(path, std::to_string(v) + " is not prime");
  }
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"p", m.modulus().value()}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j, const Prime* p, const std::string& path) {
  const Json* rows = &j;
  std::optional<Prime> own;
  if (j.is_object()) {
    own = prime_from_json(field(j, "p", path), join(path, "p").c_str());
    if (p && !(*own == *p)) bad(path, "prime differs from the enclosing object");
    rows = &field(j, "rows", path);
  } else if (!p) {
    bad(path, "a bare matrix needs an enclosing \"p\"");
  }
  const Prime field_p = own ? *own : *p;
  if (!rows->is_array()) bad(path, "rows must be an array");
  const std::size_t r = rows->size();
  const std::size_t c = r == 0 ? 0 : (*rows)[0].is_array() ? (*rows)[0].size() : 0;
  Matrix out(field_p, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const Json& row = (*rows)[i];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != c) bad(rp, "rows must be arrays of equal length");
    for (std::size_t k = 0; k < c; ++k) {
      out(i, k) = residue(row[k], field_p, rp + "[" + std::to_string(k) + "]");
    }
  }
  return out;
}

Json to_json(const SkewTuple& a) {
  Json mats = Json::array();
  for (const auto& m : a.mats()) mats.push_back(to_json(m));
  return {{"p", a.modulus().value()}, {"m", a.size()}, {"mats", std::move(mats)}};
}

SkewTuple skew_from_json(const Json& j, const std::string& path) {
  const Prime p = prime_from_json(field(j, "p", path), join(path, "p").c_str());
  const auto m = natural(field(j, "m", path), join(path, "m"));
  const Json& mats = field(j, "mats", path);
  if (!mats.is_array()) bad(join(path, "mats"), "expected an array");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const std::string mp = join(path, "mats") + "[" + std::to_string(k) + "]";
    Matrix a = matrix_from_json(mats[k], &p, mp);
    if (m == 0 && a.rows() == 0) a = Matrix(p, 0, 0);
    if (a.rows() != m || a.cols() != m) bad(mp, "expected a " + std::to_string(m) + "x" + std::to_string(m) + " matrix");
    out.push_back(std::move(a));
  }
  return {p, static_cast<std::size_t>(m), std::move(out)};
}

Json to_json(const BlockSpec& spec) {
  if (spec.point.is_eps()) return {{"kind", "eps"}, {"d", spec.d}};
  return {{"kind", "point"},
          {"g", residues(spec.point.form().coeffs())},
          {"label", spec.point.label()},
          {"d", spec.d}};
}

Json to_json(const ClassFunction& rho) {
  Json out = Json::array();
  for (const auto& [spec, mult] : rho.entries()) {
    Json e = to_json(spec);
    e["mult"] = mult;
    out.push_back(std::move(e));
  }
  return out;
}

HomPoly parse_form(Prime p, const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ContractError("empty form");
  // Terms: [coef][*]x1[^a][*x2[^b]] separated by '+'.
  std::vector<std::pair<unsigned, Residue>> terms;  // (x1-degree, coefficient), with total degree
  std::vector<unsigned> totals;
  std::size_t pos = 0;
  auto read_number = [&](std::size_t& at) {
    std::size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (start == at) throw ContractError("malformed form: " + text);
    return std::stoull(s.substr(start, at - start));
  };
  while (pos < s.size()) {
    std::uint64_t coef = 1;
    unsigned e1 = 0, e2 = 0;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coef = read_number(pos);
      any = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    while (pos + 1 < s.size() && s[pos] == 'x') {
      const char which = s[pos + 1];
      if (which != '1' && which != '2') throw ContractError("malformed form: " + text);
      pos += 2;
      unsigned e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        e = static_cast<unsigned>(read_number(pos));
      }
      (which == '1' ? e1 : e2) += e;
      any = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (!any) throw ContractError("malformed form: " + text);
    terms.emplace_back(e1, p.reduce(static_cast<std::int64_t>(coef % p.value())));
    totals.push_back(e1 + e2);
    if (pos < s.size()) {
      if (s[pos] != '+') throw ContractError("malformed form: " + text);
      ++pos;
    }
  }
  const unsigned d = totals.front();
  for (auto t : totals) {
    if (t != d) throw ContractError("form is not homogeneous: " + text);
  }
  std::vector<Residue> c(d + 1, 0);
  for (const auto& [e1, coef] : terms) c[e1] = p.add(c[e1], coef);
  return {p, d, std::move(c)};
}

ClassFunction class_function_from_json(const Json& j, Prime p, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of blocks");
  ClassFunction rho(p);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string ep = path + "[" + std::to_string(k) + "]";
    const Json& e = j[k];
    const Json& kind = field(e, "kind", ep);
    if (!kind.is_string()) bad(join(ep, "kind"), "expected a string");
    const auto d = natural(field(e, "d", ep), join(ep, "d"));
    if (d == 0) bad(join(ep, "d"), "must be >= 1");
    std::uint64_t mult = 1;
    if (e.contains("mult")) mult = natural(e["mult"], join(ep, "mult"));
    const auto kind_s = kind.get<std::string>();
    if (kind_s == "eps") {
      rho.add({ProjPoint::eps(p), static_cast<unsigned>(d)}, static_cast<unsigned>(mult));
    } else if (kind_s == "point") {
      const Json& g = field(e, "g", ep);
      HomPoly form(p, 0, {1});
      if (g.is_string()) {
        form = parse_form(p, g.get<std::string>());
      } else if (g.is_array()) {
        if (g.size() < 2) bad(join(ep, "g"), "a point needs degree >= 1");
        std::vector<Residue> c;
        for (std::size_t i = 0; i < g.size(); ++i) {
          c.push_back(residue(g[i], p, join(ep, "g") + "[" + std::to_string(i) + "]"));
        }
        const auto degree = static_cast<unsigned>(c.size() - 1);
        form = HomPoly(p, degree, std::move(c));
      } else {
        bad(join(ep, "g"), "expected a coefficient array or a form string");
      }
      rho.add({ProjPoint::point(form), static_cast<unsigned>(d)}, static_cast<unsigned>(mult));
    } else {
      bad(join(ep, "kind"), "must be \"eps\" or \"point\"");
    }
  }
  return rho;
}

Json to_json(const Presentation& pres) {
  Json rels = Json::array();
  for (const auto& r : pres.relations) {
    rels.push_back({{"block", r.block}, {"i", r.i}, {"j", r.j}, {"value", residues(r.value)}});
  }
  return {{"p", pres.p.value()}, {"n", pres.n}, {"blocks", pres.block_sizes}, {"relations", std::move(rels)}};
}

Presentation presentation_from_json(const Json& j, const std::string& path) {
  const Prime p = prime_from_json(field(j, "p", path), join(path, "p").c_str());
  const auto n = natural(field(j, "n", path), join(path, "n"));
  Presentation pres{p, static_cast<std::size_t>(n), {}, {}};
  const Json& blocks = field(j, "blocks", path);
  if (!blocks.is_array()) bad(join(path, "blocks"), "expected an array");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    pres.block_sizes.push_back(natural(blocks[k], join(path, "blocks") + "[" + std::to_string(k) + "]"));
  }
  const Json& rels = field(j, "relations", path);
  if (!rels.is_array()) bad(join(path, "relations"), "expected an array");
  for (std::size_t k = 0; k < rels.size(); ++k) {
    const std::string rp = join(path, "relations") + "[" + std::to_string(k) + "]";
    Relation r{natural(field(rels[k], "block", rp), join(rp, "block")),
               natural(field(rels[k], "i", rp), join(rp, "i")),
               natural(field(rels[k], "j", rp), join(rp, "j")),
               {}};
    const Json& v = field(rels[k], "value", rp);
    if (!v.is_array() || v.size() != n) bad(join(rp, "value"), "expected n coefficients");
    for (std::size_t c = 0; c < v.size(); ++c) r.value.push_back(residue(v[c], p, join(rp, "value")));
    if (r.i >= r.j) bad(rp, "relations need i < j");
    (void)pres.global_index(r.block, r.j);
    pres.relations.push_back(std::move(r));
  }
  return pres;
}

Json to_json(const Cocycle& mu) {
  Json table = Json::array();
  for (std::uint64_t x = 0; x < mu.points(); ++x) {
    Json row = Json::array();
    for (std::uint64_t y = 0; y < mu.points(); ++y) {
      auto v = mu.at(x, y);
      row.push_back(residues(Vec(v.begin(), v.end())));
    }
    table.push_back(std::move(row));
  }
  return {{"p", mu.modulus().value()},
          {"m", mu.top_rank()},
          {"n", mu.bottom_rank()},
          {"table", std::move(table)}};
}

Cocycle cocycle_from_json(const Json& j, const std::string& path) {
  const Prime p = prime_from_json(field(j, "p", path), join(path, "p").c_str());
  const auto m = natural(field(j, "m", path), join(path, "m"));
  const auto n = natural(field(j, "n", path), join(path, "n"));
  Cocycle mu(p, m, n);
  const Json& table = field(j, "table", path);
  const std::string tp = join(path, "table");
  if (!table.is_array() || table.size() != mu.points()) bad(tp, "expected p^m rows");
  for (std::uint64_t x = 0; x < mu.points(); ++x) {
    if (!table[x].is_array() || table[x].size() != mu.points()) bad(tp, "expected p^m columns");
    for (std::uint64_t y = 0; y < mu.points(); ++y) {
      const Json& v = table[x][y];
      const std::string vp = tp + "[" + std::to_string(x) + "][" + std::to_string(y) + "]";
      if (!v.is_array() || v.size() != n) bad(vp, "expected n values");
      for (std::size_t k = 0; k < n; ++k) mu.at(x, y)[k] = residue(v[k], p, vp);
    }
  }
  return mu;
}

Json partition_summary(const OrbitPartition& part) {
  Json reps = Json::array();
  for (const auto& o : part.orbits) reps.push_back(to_json(decode_pair(part.p, part.m, o.front())));
  return {{"p", part.p.value()}, {"m", part.m}, {"orbit_count", part.orbits.size()}, {"representatives", std::move(reps)}};
}

Json to_json(const VerificationReport& report) {
  Json out = {{"pass", report.pass}, {"message", report.message}};
  if (report.pair) out["pair"] = {report.pair->first, report.pair->second};
  return out;
}

}  // namespace pencilform
