#include "pencilform/chernikov.hpp"

#include <algorithm>
#include <set>

#include "pencilform/error.hpp"
#include "pencilform/guard.hpp"
#include "pencilform/pencil.hpp"
#include "pencilform/weakcong.hpp"

namespace pencilform {

namespace {

constexpr std::uint64_t kMaxPower = std::uint64_t{1} << 62;

std::uint64_t prime_power(const Prime& p, unsigned k) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (out > kMaxPower / p.value()) throw ResourceGuardError("Prufer exponent too large");
    out *= p.value();
  }
  return out;
}

}  // namespace

PruferElem::PruferElem(Prime p, std::uint64_t a, unsigned k) : p_(p), a_(a), k_(k) {
  a_ %= prime_power(p_, k_);
  while (k_ > 0 && a_ % p_.value() == 0) {
    a_ /= p_.value();
    --k_;
  }
}

std::uint64_t PruferElem::order() const { return prime_power(p_, k_); }

PruferElem operator+(const PruferElem& x, const PruferElem& y) {
  if (!(x.p_ == y.p_)) throw ContractError("Prufer addition: prime mismatch");
  const unsigned k = std::max(x.k_, y.k_);
  const std::uint64_t a =
      x.a_ * prime_power(x.p_, k - x.k_) + y.a_ * prime_power(x.p_, k - y.k_);
  return {x.p_, a, k};
}

PruferElem PruferElem::operator-() const {
  if (k_ == 0) return *this;
  return {p_, prime_power(p_, k_) - a_, k_};
}

PruferElem operator-(const PruferElem& x, const PruferElem& y) { return x + (-y); }

PruferElem PruferElem::times(std::uint64_t c) const {
  if (k_ == 0) return *this;
  const std::uint64_t mod = prime_power(p_, k_);
  const auto prod = static_cast<unsigned __int128>(a_) * (c % mod);
  return {p_, static_cast<std::uint64_t>(prod % mod), k_};
}

std::string PruferElem::to_string() const {
  if (k_ == 0) return "0";
  return std::to_string(a_) + "/" + std::to_string(p_.value()) +
         (k_ > 1 ? "^" + std::to_string(k_) : "");
}

GroupModel::GroupModel(SkewTuple forms) : forms_(std::move(forms)) {
  require_odd(forms_.modulus(), "GroupModel");
}

GroupElement GroupModel::identity() const {
  return {PruferVector(bottom_rank(), PruferElem(modulus())), Vec(top_rank(), 0)};
}

GroupElement GroupModel::generator(std::size_t i) const {
  GroupElement u = identity();
  u.top.at(i) = 1;
  return u;
}

GroupElement GroupModel::bottom_unit(std::size_t k, unsigned e) const {
  GroupElement u = identity();
  u.bottom.at(k) = PruferElem(modulus(), 1, e);
  return u;
}

PruferVector GroupModel::mu(const Vec& x, const Vec& y) const {
  const Prime& p = modulus();
  PruferVector out(bottom_rank(), PruferElem(p));
  for (std::size_t c = 0; c < bottom_rank(); ++c) {
    Residue acc = 0;
    for (std::size_t i = 0; i < top_rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = i + 1; j < top_rank(); ++j) {
        acc = p.add(acc, p.mul(p.mul(x[i], y[j]), forms_[c](i, j)));
      }
    }
    out[c] = PruferElem::from_torsion(p, acc);
  }
  return out;
}

void GroupModel::check(const GroupElement& u) const {
  if (u.top.size() != top_rank() || u.bottom.size() != bottom_rank()) {
    throw ContractError("group element has the wrong shape");
  }
  for (const auto& b : u.bottom) {
    if (!(b.modulus() == modulus())) throw ContractError("group element over another prime");
  }
  for (Residue r : u.top) {
    if (r >= modulus().value()) throw ContractError("group element top is not reduced");
  }
}

GroupElement g_add(const GroupModel& g, const GroupElement& u, const GroupElement& v) {
  g.check(u);
  g.check(v);
  const Prime& p = g.modulus();
  GroupElement out{g.mu(u.top, v.top), Vec(g.top_rank())};
  for (std::size_t k = 0; k < g.bottom_rank(); ++k) {
    out.bottom[k] = out.bottom[k] + u.bottom[k] + v.bottom[k];
  }
  for (std::size_t i = 0; i < g.top_rank(); ++i) out.top[i] = p.add(u.top[i], v.top[i]);
  return out;
}

GroupElement g_neg(const GroupModel& g, const GroupElement& u) {
  g.check(u);
  const Prime& p = g.modulus();
  GroupElement out{PruferVector(g.bottom_rank(), PruferElem(p)), Vec(g.top_rank())};
  for (std::size_t i = 0; i < g.top_rank(); ++i) out.top[i] = p.neg(u.top[i]);
  // (b, h) + (b', -h) = 0 forces b' = -b - mu(h, -h).
  const PruferVector twist = g.mu(u.top, out.top);
  for (std::size_t k = 0; k < g.bottom_rank(); ++k) out.bottom[k] = -u.bottom[k] - twist[k];
  return out;
}

GroupElement g_times(const GroupModel& g, const GroupElement& u, std::uint64_t c) {
  GroupElement acc = g.identity();
  GroupElement base = u;
  while (c > 0) {
    if (c & 1) acc = g_add(g, acc, base);
    c >>= 1;
    if (c > 0) base = g_add(g, base, base);
  }
  return acc;
}

GroupElement commutator(const GroupModel& g, const GroupElement& u, const GroupElement& v) {
  return g_add(g, g_add(g, g_add(g, u, v), g_neg(g, u)), g_neg(g, v));
}

std::uint64_t element_order(const GroupModel& g, const GroupElement& u) {
  const GroupElement zero = g.identity();
  GroupElement cur = u;
  std::uint64_t order = 1;
  while (!(cur == zero)) {
    cur = g_times(g, cur, g.modulus().value());
    if (order > kMaxPower / g.modulus().value()) throw ResourceGuardError("element order too large");
    order *= g.modulus().value();
  }
  return order;
}

std::vector<GroupElement> bounded_elements(const GroupModel& g, unsigned e) {
  const Prime& p = g.modulus();
  const std::uint64_t per = prime_power(p, e);
  const std::uint64_t bottoms = saturating_pow(per, g.bottom_rank());
  const std::uint64_t tops = saturating_pow(p.value(), g.top_rank());
  check_guard("bounded subgroup enumeration", saturating_mul(bottoms, tops), 10'000'000);
  std::vector<GroupElement> out;
  out.reserve(bottoms * tops);
  for (std::uint64_t bcode = 0; bcode < bottoms; ++bcode) {
    PruferVector b;
    std::uint64_t c = bcode;
    for (std::size_t k = 0; k < g.bottom_rank(); ++k) {
      b.emplace_back(p, c % per, e);
      c /= per;
    }
    for (std::uint64_t tcode = 0; tcode < tops; ++tcode) {
      Vec h(g.top_rank());
      std::uint64_t t = tcode;
      for (auto& r : h) {
        r = static_cast<Residue>(t % p.value());
        t /= p.value();
      }
      out.push_back({b, std::move(h)});
    }
  }
  return out;
}

std::size_t Presentation::generator_count() const {
  std::size_t total = 0;
  for (auto s : block_sizes) total += s;
  return total;
}

std::size_t Presentation::global_index(std::size_t block, std::size_t i) const {
  if (block == 0 || block > block_sizes.size() || i == 0 || i > block_sizes[block - 1]) {
    throw ContractError("presentation: generator index out of range");
  }
  std::size_t offset = 0;
  for (std::size_t k = 0; k + 1 < block; ++k) offset += block_sizes[k];
  return offset + i - 1;
}

namespace {

Vec combo(const Prime& p, Residue c1, Residue c2) { return {c1 % p.value(), c2 % p.value()}; }

// Commutators of one canonical block, 1-based, i <= h < j where h is the
// size of the first half.
std::vector<Relation> block_relations(const BlockSpec& spec, std::size_t block) {
  const Prime p = spec.point.modulus();
  std::vector<Relation> out;
  auto push = [&](std::size_t i, std::size_t j, Vec v) {
    if (std::any_of(v.begin(), v.end(), [](Residue r) { return r != 0; })) {
      out.push_back({block, i, j, std::move(v)});
    }
  };
  if (spec.point.is_eps() || spec.point.is_infinity()) {
    const std::size_t h = spec.d;
    const std::size_t size = spec.size();
    const bool eps = spec.point.is_eps();
    for (std::size_t i = 1; i <= h; ++i) {
      for (std::size_t j = h + 1; j <= size; ++j) {
        if (j == h + i) push(i, j, eps ? combo(p, 1, 0) : combo(p, 0, 1));
        else if (j == h + i - 1) push(i, j, eps ? combo(p, 0, 1) : combo(p, 1, 0));
      }
    }
    return out;
  }
  Poly f = Poly::constant(p, 1);
  const Poly g = spec.point.form().dehomogenize();
  for (unsigned k = 0; k < spec.d; ++k) f = f * g;
  const auto h = static_cast<std::size_t>(f.degree());
  auto lambda = [&](std::size_t k) { return f.coeff(h - k); };  // f = x^h + lambda_1 x^{h-1} + ...
  for (std::size_t i = 1; i <= h; ++i) {
    for (std::size_t j = h + 1; j <= 2 * h; ++j) {
      if (j == h + i && j < 2 * h) push(i, j, combo(p, 1, 0));
      else if (j == h + i - 1) push(i, j, combo(p, 0, 1));
      else if (i < h && j == 2 * h) push(i, j, combo(p, 0, p.neg(lambda(h - i + 1))));
      else if (i == h && j == 2 * h) push(i, j, combo(p, 1, p.neg(lambda(1))));
    }
  }
  return out;
}

std::string generator_name(const Presentation& pres, std::size_t global) {
  std::size_t block = 1;
  while (global >= pres.block_sizes.at(block - 1)) {
    global -= pres.block_sizes[block - 1];
    ++block;
  }
  return "h" + std::to_string(block) + "_" + std::to_string(global + 1);
}

std::string bottom_string(const PruferVector& b) {
  std::string out = "(";
  for (std::size_t k = 0; k < b.size(); ++k) out += (k ? ", " : "") + b[k].to_string();
  return out + ")";
}

}  // namespace

Presentation build_presentation(const ClassFunction& rho) {
  require_odd(rho.modulus(), "build_presentation");
  Presentation pres{rho.modulus(), 2, {}, {}};
  for (const auto& [spec, mult] : rho.entries()) {
    for (unsigned c = 0; c < mult; ++c) {
      pres.block_sizes.push_back(spec.size());
      auto rel = block_relations(spec, pres.block_sizes.size());
      pres.relations.insert(pres.relations.end(), rel.begin(), rel.end());
    }
  }
  return pres;
}

Presentation presentation_n1(Prime p, std::size_t k, std::size_t l) {
  require_odd(p, "presentation_n1");
  Presentation pres{p, 1, {}, {}};
  if (2 * k + l == 0) return pres;
  pres.block_sizes.push_back(2 * k + l);
  for (std::size_t i = 1; i <= k; ++i) pres.relations.push_back({1, i, k + i, Vec{1}});
  return pres;
}

SkewTuple n1_tuple(Prime p, std::size_t k, std::size_t l) {
  require_odd(p, "n1_tuple");
  Matrix a(p, 2 * k + l, 2 * k + l);
  for (std::size_t i = 0; i < k; ++i) {
    a(i, k + i) = 1;
    a(k + i, i) = p.neg(1);
  }
  return {p, 2 * k + l, {a}};
}

SkewTuple presentation_forms(const Presentation& pres) {
  const std::size_t m = pres.generator_count();
  std::vector<Matrix> mats(pres.n, Matrix(pres.p, m, m));
  for (const auto& r : pres.relations) {
    if (r.i >= r.j) throw ContractError("presentation: relation needs i < j");
    if (r.value.size() != pres.n) throw ContractError("presentation: relation value has wrong length");
    const std::size_t gi = pres.global_index(r.block, r.i), gj = pres.global_index(r.block, r.j);
    for (std::size_t c = 0; c < pres.n; ++c) {
      mats[c](gi, gj) = r.value[c] % pres.p.value();
      mats[c](gj, gi) = pres.p.neg(mats[c](gi, gj));
    }
  }
  return {pres.p, m, std::move(mats)};
}

std::string presentation_text(const Presentation& pres) {
  std::string out = "p=" + std::to_string(pres.p.value()) + " n=" + std::to_string(pres.n) + "\n";
  for (std::size_t k = 0; k < pres.block_sizes.size(); ++k) {
    for (std::size_t i = 1; i <= pres.block_sizes[k]; ++i) {
      out += "gen h" + std::to_string(k + 1) + "_" + std::to_string(i) + "\n";
    }
  }
  auto rels = pres.relations;
  std::sort(rels.begin(), rels.end(), [](const Relation& a, const Relation& b) {
    return std::tie(a.block, a.i, a.j) < std::tie(b.block, b.i, b.j);
  });
  for (const auto& r : rels) {
    if (std::all_of(r.value.begin(), r.value.end(), [](Residue v) { return v == 0; })) continue;
    const std::string k = std::to_string(r.block);
    out += "rel [h" + k + "_" + std::to_string(r.i) + ", h" + k + "_" + std::to_string(r.j) + "] = ";
    for (std::size_t c = 0; c < r.value.size(); ++c) {
      if (c) out += " + ";
      out += std::to_string(r.value[c]) + "*a" + std::to_string(c + 1);
    }
    out += "\n";
  }
  return out;
}

VerificationReport verify_presentation(const GroupModel& g, const Presentation& pres) {
  VerificationReport report;
  auto fail = [&](std::string msg) {
    report.pass = false;
    report.message = std::move(msg);
    return report;
  };
  if (!(pres.p == g.modulus())) return fail("prime mismatch");
  if (pres.n != g.bottom_rank()) return fail("bottom rank mismatch");
  const std::size_t m = pres.generator_count();
  if (m != g.top_rank()) return fail("generator count mismatch");

  const GroupElement zero = g.identity();
  for (std::size_t i = 0; i < m; ++i) {
    if (!(g_times(g, g.generator(i), g.modulus().value()) == zero)) {
      return fail("generator " + generator_name(pres, i) + " does not have order p");
    }
  }
  std::vector<GroupElement> bottoms;
  for (std::size_t k = 0; k < g.bottom_rank(); ++k) {
    for (unsigned e = 1; e <= 3; ++e) bottoms.push_back(g.bottom_unit(k, e));
  }
  for (const auto& b : bottoms) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!(commutator(g, b, g.generator(i)) == zero)) {
        return fail("bottom element " + bottom_string(b.bottom) + " does not commute with " +
                    generator_name(pres, i));
      }
    }
  }

  std::vector<std::vector<Vec>> table(m, std::vector<Vec>(m, Vec(pres.n, 0)));
  for (const auto& r : pres.relations) {
    if (r.i >= r.j) return fail("relation with i >= j");
    if (r.value.size() != pres.n) return fail("relation value has the wrong length");
    table[pres.global_index(r.block, r.i)][pres.global_index(r.block, r.j)] = r.value;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const GroupElement c = commutator(g, g.generator(i), g.generator(j));
      GroupElement expected = zero;
      for (std::size_t k = 0; k < pres.n; ++k) {
        expected.bottom[k] = PruferElem::from_torsion(g.modulus(), table[i][j][k] % g.modulus().value());
      }
      if (!(c == expected)) {
        report.pair = std::make_pair(i, j);
        return fail("[" + generator_name(pres, i) + ", " + generator_name(pres, j) + "] = " +
                    bottom_string(c.bottom) + " but the table gives " +
                    bottom_string(expected.bottom));
      }
    }
  }
  return report;
}

namespace {

void require_comparable(const SkewTuple& a, const SkewTuple& b) {
  require_odd(a.modulus(), "decide_isomorphic");
  if (!(a.modulus() == b.modulus())) throw ContractError("decide_isomorphic: prime mismatch");
  if (a.length() != 2 || b.length() != 2) {
    throw ContractError("decide_isomorphic: expected pairs (n = 2)");
  }
}

}  // namespace

bool decide_isomorphic(const SkewTuple& a, const SkewTuple& b) {
  require_comparable(a, b);
  if (a.size() != b.size()) return false;
  return weak_canonicalize(a) == weak_canonicalize(b);
}

std::optional<WeakCertificate> find_certificate(const SkewTuple& a, const SkewTuple& b) {
  require_comparable(a, b);
  if (a.size() != b.size()) return std::nullopt;
  const ClassFunction rho_a = skew_pair_invariants(a);
  const ClassFunction rho_b = skew_pair_invariants(b);
  for (const auto& q : pgl2_representatives(a.modulus())) {
    if (!(act_function(pair_action(q), rho_a) == rho_b)) continue;
    const SkewTuple aq = tuple_act(a, q);
    const auto to_canon = congruence_transform(aq);
    const auto b_to_canon = congruence_transform(b);
    Invertible P = b_to_canon.P.inverted() * to_canon.P;
    if (!(congr_act(P, aq) == b)) throw VerificationError("find_certificate: check failed");
    return WeakCertificate{std::move(P), q};
  }
  return std::nullopt;
}

namespace {

Matrix strict_upper(const Matrix& a) {
  Matrix u(a.modulus(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) u(i, j) = a(i, j);
  return u;
}

}  // namespace

IsomorphismMap::IsomorphismMap(const GroupModel& from, const GroupModel& to, const Invertible& P,
                               const Invertible& Q)
    : from_(&from), to_(&to), theta_(P.inverse().transpose()), sigma_(Q.matrix().transpose()) {
  const Prime& p = from.modulus();
  if (!(to.modulus() == p)) throw ContractError("isomorphism_map: prime mismatch");
  if (from.top_rank() != to.top_rank() || P.size() != from.top_rank()) {
    throw ContractError("isomorphism_map: P has the wrong size");
  }
  if (from.bottom_rank() != to.bottom_rank() || Q.size() != from.bottom_rank()) {
    throw ContractError("isomorphism_map: Q has the wrong size");
  }
  const Matrix& q = Q.matrix();
  const Residue minus_half = p.neg(p.inv(2));
  for (std::size_t l = 0; l < to.bottom_rank(); ++l) {
    Matrix mixed(p, from.top_rank(), from.top_rank());
    Matrix mixed_upper = mixed;
    for (std::size_t k = 0; k < from.bottom_rank(); ++k) {
      mixed = mixed + from.forms()[k].scaled(q(k, l));
      mixed_upper = mixed_upper + strict_upper(from.forms()[k]).scaled(q(k, l));
    }
    if (!(theta_.transpose() * to.forms()[l] * theta_ == mixed)) {
      throw ContractError("isomorphism_map: invalid certificate");
    }
    const Matrix d = mixed_upper - theta_.transpose() * strict_upper(to.forms()[l]) * theta_;
    if (!(d == d.transpose())) throw VerificationError("isomorphism_map: correction is not symmetric");
    quad_.push_back(d.scaled(minus_half));
  }
}

GroupElement IsomorphismMap::operator()(const GroupElement& u) const {
  from_->check(u);
  const Prime& p = from_->modulus();
  GroupElement out{PruferVector(to_->bottom_rank(), PruferElem(p)), theta_.apply(u.top)};
  for (std::size_t l = 0; l < to_->bottom_rank(); ++l) {
    for (std::size_t k = 0; k < from_->bottom_rank(); ++k) {
      out.bottom[l] = out.bottom[l] + u.bottom[k].times(sigma_(l, k));
    }
    const Vec qx = quad_[l].apply(u.top);
    Residue gamma = 0;
    for (std::size_t i = 0; i < u.top.size(); ++i) gamma = p.add(gamma, p.mul(u.top[i], qx[i]));
    out.bottom[l] = out.bottom[l] + PruferElem::from_torsion(p, gamma);
  }
  return out;
}

HomomorphismCheck check_isomorphism_map(const IsomorphismMap& phi, const GroupModel& from,
                                        const GroupModel& to, unsigned e,
                                        std::uint64_t pair_limit) {
  HomomorphismCheck result;
  if (e == 0) throw ContractError("check_isomorphism_map: exponent bound must be >= 1");
  const auto elements = bounded_elements(from, e);
  std::vector<GroupElement> images;
  images.reserve(elements.size());
  for (const auto& u : elements) {
    GroupElement img = phi(u);
    for (const auto& b : img.bottom) {
      if (b.exponent() > e) {
        result.pass = false;
        result.message = "image leaves the bounded subgroup";
        return result;
      }
    }
    images.push_back(std::move(img));
  }
  if (std::set<GroupElement>(images.begin(), images.end()).size() != images.size()) {
    result.pass = false;
    result.message = "map is not injective";
    return result;
  }

  const std::uint64_t count = elements.size();
  std::vector<std::size_t> partners;
  if (saturating_mul(count, count) <= pair_limit) {
    result.exhaustive_pairs = true;
    partners.resize(count);
    for (std::size_t i = 0; i < count; ++i) partners[i] = i;
  } else {
    // Generators: the h_i and the a_k / p^e, located in the element list.
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < from.top_rank(); ++i) gens.push_back(from.generator(i));
    for (std::size_t k = 0; k < from.bottom_rank(); ++k) gens.push_back(from.bottom_unit(k, e));
    for (const auto& g : gens) {
      auto it = std::find(elements.begin(), elements.end(), g);
      partners.push_back(static_cast<std::size_t>(it - elements.begin()));
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j : partners) {
      const GroupElement lhs = phi(g_add(from, elements[i], elements[j]));
      const GroupElement rhs = g_add(to, images[i], images[j]);
      ++result.checked;
      if (!(lhs == rhs)) {
        result.pass = false;
        result.message = "phi(u + v) != phi(u) + phi(v) at element pair (" + std::to_string(i) +
                         ", " + std::to_string(j) + ")";
        return result;
      }
    }
  }
  return result;
}

FiniteSplit finite_factor_split(const ClassFunction& rho) {
  const Prime& p = rho.modulus();
  require_odd(p, "finite_factor_split");
  const BlockSpec finite{ProjPoint::eps(p), 1};
  FiniteSplit out{rho(finite), ClassFunction(p), std::nullopt};
  std::vector<std::pair<ProjPoint, unsigned>> linear;
  bool only_linear = true;
  for (const auto& [spec, mult] : rho.entries()) {
    if (spec == finite) continue;
    out.rest.add(spec, mult);
    if (spec.d == 1 && spec.point.degree() == 1) {
      linear.emplace_back(spec.point, mult);
    } else {
      only_linear = false;
    }
  }
  // Two distinct degree-one points can always be moved to x1 and x2.
  if (!only_linear || linear.size() > 2) return out;
  const ProjPoint x1 = ProjPoint::finite(Poly::x(p));
  const ProjPoint x2 = ProjPoint::infinity(p);
  unsigned k = 0, l = 0;
  bool literal = true;
  for (const auto& [pt, mult] : linear) {
    if (pt == x1) k = mult;
    else if (pt == x2) l = mult;
    else literal = false;
  }
  if (!literal) {
    k = linear.empty() ? 0 : linear[0].second;
    l = linear.size() < 2 ? 0 : linear[1].second;
  }
  out.special = std::make_pair(k, l);
  return out;
}

}  // namespace pencilform
