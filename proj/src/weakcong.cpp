#include "pencilform/weakcong.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "pencilform/error.hpp"
#include "pencilform/guard.hpp"
#include "pencilform/pencil.hpp"
#include "pencilform/poly.hpp"

namespace pencilform {

ProjPoint act_point(const Invertible& Q, const ProjPoint& g) {
  if (g.is_eps()) return g;
  if (Q.size() != 2) throw ContractError("act_point: Q must be 2x2");
  const Matrix& q = Q.matrix();
  return ProjPoint::normalized(g.form().substitute(q(0, 0), q(0, 1), q(1, 0), q(1, 1)));
}

ClassFunction act_function(const Invertible& Q, const ClassFunction& rho) {
  // rho'(g) = rho(Q*g), so rho' puts the mass of h on the preimage of h.
  const Invertible qinv = Q.inverted();
  ClassFunction out(rho.modulus());
  for (const auto& [spec, mult] : rho.entries()) {
    out.add({act_point(qinv, spec.point), spec.d}, mult);
  }
  return out;
}

Invertible pair_action(const Invertible& Q) {
  // x1 A'_1 - x2 A'_2 = y1 A_1 - y2 A_2 with (y1, -y2) = Q (x1, -x2); the
  // divisor g of A becomes g(D Q D x) for D = diag(1, -1).
  const Matrix& q = Q.matrix();
  const Prime& p = q.modulus();
  Matrix l(p, 2, 2);
  l(0, 0) = q(0, 0);
  l(0, 1) = p.neg(q(0, 1));
  l(1, 0) = p.neg(q(1, 0));
  l(1, 1) = q(1, 1);
  return Invertible(l).inverted();
}

const std::vector<Invertible>& pgl2_representatives(Prime p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<Invertible>> cache;
  const std::uint64_t pv = p.value();
  check_guard("PGL(2) enumeration", saturating_mul(pv, pv * pv - 1), 10'000'000);
  std::lock_guard lock(mu);
  auto it = cache.find(p.value());
  if (it != cache.end()) return it->second;
  std::vector<Invertible> reps;
  reps.reserve(pv * (pv * pv - 1));
  for (Residue b = 0; b < pv; ++b) {
    for (Residue c = 0; c < pv; ++c) {
      for (Residue d = 0; d < pv; ++d) {
        if (d == p.mul(b, c)) continue;
        Matrix m(p, 2, 2);
        m(0, 0) = 1;
        m(0, 1) = b;
        m(1, 0) = c;
        m(1, 1) = d;
        reps.emplace_back(std::move(m));
      }
    }
  }
  for (Residue c = 1; c < pv; ++c) {
    for (Residue d = 0; d < pv; ++d) {
      Matrix m(p, 2, 2);
      m(0, 1) = 1;
      m(1, 0) = c;
      m(1, 1) = d;
      reps.emplace_back(std::move(m));
    }
  }
  return cache.emplace(p.value(), std::move(reps)).first->second;
}

ClassFunction orbit_canonical(const ClassFunction& rho) {
  require_odd(rho.modulus(), "orbit_canonical");
  const auto& group = pgl2_representatives(rho.modulus());
  bool only_eps = true;
  for (const auto& [spec, mult] : rho.entries()) only_eps = only_eps && spec.point.is_eps();
  if (only_eps) return rho;
  ClassFunction best = rho;
  for (const auto& q : group) {
    ClassFunction cand = act_function(q, rho);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

ClassFunction weak_canonicalize(const SkewTuple& a) {
  return orbit_canonical(skew_pair_invariants(a));
}

std::vector<BlockSpec> block_specs_up_to(Prime p, std::size_t m) {
  std::vector<BlockSpec> specs;
  for (unsigned d = 1; 2 * d - 1 <= m; ++d) specs.push_back({ProjPoint::eps(p), d});
  for (unsigned e = 1; 2 * e <= m; ++e) {
    std::vector<ProjPoint> points;
    if (e == 1) points.push_back(ProjPoint::infinity(p));
    for (const auto& f : irreducibles_up_to(p, e)) {
      if (f.degree() == static_cast<int>(e)) points.push_back(ProjPoint::finite(f));
    }
    for (const auto& g : points) {
      for (unsigned d = 1; 2 * d * e <= m; ++d) specs.push_back({g, d});
    }
  }
  std::sort(specs.begin(), specs.end());
  return specs;
}

namespace {

void extend(const std::vector<BlockSpec>& specs, std::size_t from, std::size_t remaining,
            ClassFunction& current, std::vector<ClassFunction>& out) {
  if (remaining == 0) {
    out.push_back(current);
    check_guard("class function enumeration", out.size(), 1'000'000);
    return;
  }
  for (std::size_t i = from; i < specs.size(); ++i) {
    const std::size_t s = specs[i].size();
    if (s > remaining) continue;
    ClassFunction saved = current;
    current.add(specs[i]);
    extend(specs, i, remaining - s, current, out);
    current = std::move(saved);
  }
}

}  // namespace

std::vector<ClassFunction> all_class_functions(Prime p, std::size_t m) {
  require_odd(p, "all_class_functions");
  const auto specs = block_specs_up_to(p, m);
  std::vector<ClassFunction> out;
  ClassFunction current(p);
  extend(specs, 0, m, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClassFunction> enumerate_classes(Prime p, std::size_t m) {
  require_odd(p, "enumerate_classes");
  std::set<ClassFunction> seen;
  for (const auto& rho : all_class_functions(p, m)) seen.insert(orbit_canonical(rho));
  return {seen.begin(), seen.end()};
}

std::size_t count_classes(Prime p, std::size_t m) { return enumerate_classes(p, m).size(); }

}  // namespace pencilform
