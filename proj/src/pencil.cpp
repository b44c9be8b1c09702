#include "pencilform/pencil.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "pencilform/error.hpp"
#include "pencilform/poly.hpp"

namespace pencilform {

namespace {

constexpr std::uint64_t kSearchSeed = 0x5eed'c0ffee'2024ULL;

// Diagonalizes a polynomial matrix by unimodular row and column operations
// and returns the nonzero diagonal entries. The prime-power factors of these
// entries are the elementary divisors; no divisibility chain is enforced.
std::vector<Poly> diagonal_form(PolyMatrix m, Prime p) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  std::vector<Poly> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest-degree nonzero entry of the trailing submatrix becomes the pivot.
    int best = std::numeric_limits<int>::max();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (!m[i][j].is_zero() && m[i][j].degree() < best) {
          best = m[i][j].degree();
          bi = i;
          bj = j;
        }
      }
    }
    if (best == std::numeric_limits<int>::max()) break;
    std::swap(m[t], m[bi]);
    for (auto& row : m) std::swap(row[t], row[bj]);

    for (bool clean = false; !clean;) {
      clean = true;
      for (std::size_t i = t + 1; i < rows && clean; ++i) {
        if (m[i][t].is_zero()) continue;
        auto [q, r] = m[i][t].divmod(m[t][t]);
        for (std::size_t j = t; j < cols; ++j) m[i][j] = m[i][j] - q * m[t][j];
        if (!r.is_zero()) {
          std::swap(m[i], m[t]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols && clean; ++j) {
        if (m[t][j].is_zero()) continue;
        auto [q, r] = m[t][j].divmod(m[t][t]);
        for (std::size_t i = t; i < rows; ++i) m[i][j] = m[i][j] - q * m[i][t];
        if (!r.is_zero()) {
          for (auto& row : m) std::swap(row[j], row[t]);
          clean = false;
        }
      }
    }
    diag.push_back(m[t][t]);
  }
  (void)p;
  return diag;
}

// Entry (i, j) = a * r0(i, j) + b * r1(i, j) where a, b are linear polynomials.
PolyMatrix linear_pencil(const Matrix& r0, const Poly& a, const Matrix& r1, const Poly& b) {
  const Prime& p = r0.modulus();
  PolyMatrix out(r0.rows(), std::vector<Poly>(r0.cols(), Poly(p)));
  for (std::size_t i = 0; i < r0.rows(); ++i) {
    for (std::size_t j = 0; j < r0.cols(); ++j) {
      out[i][j] = a.scaled(r0(i, j)) + b.scaled(r1(i, j));
    }
  }
  return out;
}

// Column minimal indices from dim ker of the degree-k inflation
// v(x) -> (x1 R1 - x2 R2) v(x) on homogeneous vectors of degree k.
std::vector<unsigned> column_minimal_indices(const Matrix& r1, const Matrix& r2, std::size_t count) {
  const Prime& p = r1.modulus();
  const std::size_t d2 = r1.rows();
  const std::size_t d1 = r1.cols();
  std::vector<unsigned> out;
  if (count == 0) return out;
  const Matrix neg_r2 = -r2;
  std::size_t prev_z = 0;
  std::size_t prev_c = 0;
  for (std::size_t k = 0; out.size() < count; ++k) {
    if (k > d1 + 1) throw VerificationError("minimal index search did not terminate");
    Matrix inflated(p, (k + 2) * d2, (k + 1) * d1);
    for (std::size_t s = 0; s <= k; ++s) {
      inflated.set_block(s * d2, s * d1, r1);
      inflated.set_block((s + 1) * d2, s * d1, neg_r2);
    }
    const std::size_t z = (k + 1) * d1 - rank(inflated);
    const std::size_t c = z - prev_z;  // number of indices <= k
    for (std::size_t i = prev_c; i < c; ++i) out.push_back(static_cast<unsigned>(k));
    prev_z = z;
    prev_c = c;
  }
  if (out.size() != count) throw VerificationError("minimal index count mismatch");
  return out;
}

}  // namespace

QuiverRep::QuiverRep(Prime p, std::size_t d1, std::size_t d2, std::vector<Matrix> maps)
    : p_(p), d1_(d1), d2_(d2), maps_(std::move(maps)) {
  for (const auto& m : maps_) {
    if (!(m.modulus() == p_)) throw ContractError("QuiverRep: prime mismatch");
    if (m.rows() != d2_ || m.cols() != d1_) throw ContractError("QuiverRep: map has wrong shape");
  }
}

QuiverRep as_rep(const SkewTuple& a) { return {a.modulus(), a.size(), a.size(), a.mats()}; }

QuiverRep dual(const QuiverRep& r) {
  std::vector<Matrix> maps;
  maps.reserve(r.arrows());
  for (const auto& m : r.maps()) maps.push_back(-m.transpose());
  return {r.modulus(), r.d2(), r.d1(), std::move(maps)};
}

SkewTuple self_dual_double(const QuiverRep& r) {
  require_odd(r.modulus(), "double");
  const std::size_t size = r.d1() + r.d2();
  std::vector<Matrix> mats;
  mats.reserve(r.arrows());
  for (const auto& m : r.maps()) {
    Matrix b(r.modulus(), size, size);
    b.set_block(0, r.d2(), m);
    b.set_block(r.d2(), 0, -m.transpose());
    mats.push_back(std::move(b));
  }
  return {r.modulus(), size, std::move(mats)};
}

QuiverRep indecomposable(const BlockSpec& spec) {
  const Prime p = spec.point.modulus();
  const std::size_t d = spec.d;
  if (d == 0) throw ContractError("indecomposable: d must be >= 1");
  if (spec.point.is_eps()) {
    Matrix a1(p, d - 1, d), a2(p, d - 1, d);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      a1(i, i) = 1;
      a2(i, i + 1) = 1;
    }
    return {p, d, d - 1, {a1, a2}};
  }
  if (spec.point.is_infinity()) {
    return {p, d, d, {frobenius_matrix(Poly::monomial(p, d)), Matrix::identity(p, d)}};
  }
  const Poly g = spec.point.form().dehomogenize();
  Poly f = Poly::constant(p, 1);
  for (std::size_t i = 0; i < d; ++i) f = f * g;
  const std::size_t size = static_cast<std::size_t>(f.degree());
  return {p, size, size, {Matrix::identity(p, size), frobenius_matrix(f)}};
}

QuiverRep plus_indecomposable(Prime p, unsigned d) {
  const QuiverRep minus = indecomposable({ProjPoint::eps(p), d});
  return {p, minus.d2(), minus.d1(), {minus[0].transpose(), minus[1].transpose()}};
}

HomPoly hom_char_poly(const QuiverRep& r) {
  if (r.arrows() != 2) throw ContractError("hom_char_poly: expected a pencil (n = 2)");
  if (r.d1() != r.d2()) throw ContractError("hom_char_poly: pencil is not square");
  const Prime& p = r.modulus();
  // det(x R1 - R2) = chi(x, 1); chi has total degree d.
  const Poly f = det(linear_pencil(r[0], Poly::x(p), r[1], Poly::constant(p, p.neg(1))), p);
  if (f.is_zero()) return {p, static_cast<unsigned>(r.d1()), std::vector<Residue>(r.d1() + 1, 0)};
  return HomPoly::homogenize(f, static_cast<unsigned>(r.d1()));
}

KroneckerData kronecker_invariants(const QuiverRep& r) {
  if (r.arrows() != 2) throw ContractError("kronecker_invariants: expected a pencil (n = 2)");
  const Prime& p = r.modulus();
  KroneckerData out;

  // Finite divisors: x R1 - R2.
  const auto finite = diagonal_form(
      linear_pencil(r[0], Poly::x(p), r[1], Poly::constant(p, p.neg(1))), p);
  const std::size_t normal_rank = finite.size();
  for (const auto& e : finite) {
    if (e.degree() < 1) continue;
    for (const auto& [h, mult] : poly_factor(e.monic())) {
      out.elem_divisors.emplace_back(ProjPoint::finite(h), mult);
    }
  }
  // Divisors at x2: R1 - y R2, y-adic valuations of the diagonal.
  const auto at_infinity = diagonal_form(
      linear_pencil(r[0], Poly::constant(p, 1), r[1], Poly::monomial(p, 1, p.neg(1))), p);
  if (at_infinity.size() != normal_rank) throw VerificationError("normal rank mismatch");
  for (const auto& e : at_infinity) {
    unsigned v = 0;
    while (e.coeff(v) == 0) ++v;
    if (v > 0) out.elem_divisors.emplace_back(ProjPoint::infinity(p), v);
  }
  std::sort(out.elem_divisors.begin(), out.elem_divisors.end(), [](const auto& a, const auto& b) {
    if (!(a.first == b.first)) return a.first < b.first;
    return a.second < b.second;
  });

  out.col_min_indices = column_minimal_indices(r[0], r[1], r.d1() - normal_rank);
  out.row_min_indices =
      column_minimal_indices(r[0].transpose(), r[1].transpose(), r.d2() - normal_rank);
  return out;
}

ClassFunction skew_pair_invariants(const SkewTuple& a) {
  require_odd(a.modulus(), "skew_pair_invariants");
  if (a.length() != 2) throw ContractError("skew_pair_invariants: expected a pair (n = 2)");
  const auto kd = kronecker_invariants(as_rep(a));
  if (kd.col_min_indices != kd.row_min_indices) {
    throw VerificationError("skew pair has unpaired minimal indices");
  }
  ClassFunction rho(a.modulus());
  for (auto idx : kd.col_min_indices) rho.add({ProjPoint::eps(a.modulus()), idx + 1});
  std::map<std::pair<ProjPoint, unsigned>, unsigned> counts;
  for (const auto& e : kd.elem_divisors) {
    ++counts[e];
  }
  for (const auto& [key, count] : counts) {
    if (count % 2 != 0) {
      throw VerificationError("skew pair has an unpaired elementary divisor " +
                              key.first.label() + "^" + std::to_string(key.second));
    }
    rho.add({key.first, key.second}, count / 2);
  }
  if (rho.total_size() != a.size()) throw VerificationError("block sizes do not add up");
  return rho;
}

SkewTuple canonical_block(const BlockSpec& spec) {
  require_odd(spec.point.modulus(), "canonical_block");
  if (spec.point.is_eps()) return self_dual_double(plus_indecomposable(spec.point.modulus(), spec.d));
  return self_dual_double(indecomposable(spec));
}

SkewTuple canonical_pair(const ClassFunction& rho) {
  require_odd(rho.modulus(), "canonical_pair");
  std::vector<SkewTuple> parts;
  for (const auto& [spec, mult] : rho.entries()) {
    const SkewTuple block = canonical_block(spec);
    for (unsigned k = 0; k < mult; ++k) parts.push_back(block);
  }
  return block_diag(parts, rho.modulus(), 2);
}

std::vector<std::pair<Matrix, Matrix>> hom_space(const QuiverRep& from, const QuiverRep& to) {
  if (!(from.modulus() == to.modulus())) throw ContractError("hom_space: prime mismatch");
  if (from.arrows() != to.arrows()) throw ContractError("hom_space: arrow count mismatch");
  const Prime& p = from.modulus();
  const std::size_t d1 = from.d1(), d2 = from.d2(), e1 = to.d1(), e2 = to.d2();
  // Unknowns: f1 (e1 x d1) then f2 (e2 x d2). Equation: f2 R_i - R'_i f1 = 0.
  const std::size_t n1 = e1 * d1;
  const std::size_t unknowns = n1 + e2 * d2;
  Matrix sys(p, from.arrows() * e2 * d1, unknowns);
  std::size_t row = 0;
  for (std::size_t k = 0; k < from.arrows(); ++k) {
    for (std::size_t r = 0; r < e2; ++r) {
      for (std::size_t c = 0; c < d1; ++c, ++row) {
        for (std::size_t b = 0; b < d2; ++b) sys(row, n1 + r * d2 + b) = from[k](b, c);
        for (std::size_t a = 0; a < e1; ++a) sys(row, a * d1 + c) = p.neg(to[k](r, a));
      }
    }
  }
  std::vector<std::pair<Matrix, Matrix>> basis;
  for (const auto& v : kernel(sys)) {
    Matrix f1(p, e1, d1), f2(p, e2, d2);
    for (std::size_t a = 0; a < e1; ++a)
      for (std::size_t c = 0; c < d1; ++c) f1(a, c) = v[a * d1 + c];
    for (std::size_t r = 0; r < e2; ++r)
      for (std::size_t b = 0; b < d2; ++b) f2(r, b) = v[n1 + r * d2 + b];
    basis.emplace_back(std::move(f1), std::move(f2));
  }
  return basis;
}

std::vector<std::pair<Matrix, Matrix>> endomorphism_space(const QuiverRep& r) {
  return hom_space(r, r);
}

namespace {

std::pair<Matrix, Matrix> random_combination(const std::vector<std::pair<Matrix, Matrix>>& basis,
                                             const QuiverRep& from, const QuiverRep& to,
                                             std::mt19937_64& rng) {
  const Prime& p = from.modulus();
  std::uniform_int_distribution<std::uint32_t> coef(0, p.value() - 1);
  Matrix f1(p, to.d1(), from.d1()), f2(p, to.d2(), from.d2());
  for (const auto& [b1, b2] : basis) {
    const Residue c = coef(rng);
    if (c == 0) continue;
    f1 = f1 + b1.scaled(c);
    f2 = f2 + b2.scaled(c);
  }
  return {std::move(f1), std::move(f2)};
}

std::optional<Invertible> try_invert(const Matrix& m) {
  if (!m.is_square() || det(m) == 0) return std::nullopt;
  return Invertible(m);
}

}  // namespace

std::optional<std::pair<Invertible, Invertible>> find_isomorphism(const QuiverRep& from,
                                                                  const QuiverRep& to) {
  if (from.d1() != to.d1() || from.d2() != to.d2()) return std::nullopt;
  const auto basis = hom_space(from, to);
  if (from.d1() == 0 && from.d2() == 0) {
    const Prime& p = from.modulus();
    return std::make_pair(Invertible::identity(p, 0), Invertible::identity(p, 0));
  }
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(kSearchSeed);
  for (int trial = 0; trial < 2000; ++trial) {
    auto [f1, f2] = random_combination(basis, from, to, rng);
    auto i1 = try_invert(f1);
    if (!i1) continue;
    auto i2 = try_invert(f2);
    if (!i2) continue;
    return std::make_pair(std::move(*i1), std::move(*i2));
  }
  return std::nullopt;
}

namespace {

// Square root of x in the field F_p[x]/(h) by Tonelli-Shanks.
std::optional<Poly> field_sqrt_of_x(const Poly& h) {
  const Prime& p = h.modulus();
  const auto deg = static_cast<std::uint64_t>(h.degree());
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < deg; ++i) {
    if (q > (std::numeric_limits<std::uint64_t>::max() >> 1) / p.value()) {
      throw ResourceGuardError("square root: residue field too large");
    }
    q *= p.value();
  }
  const Poly a = Poly::x(p) % h;
  const Poly one = Poly::constant(p, 1);
  const Poly minus_one = Poly::constant(p, p.neg(1));
  if (powmod(a, (q - 1) / 2, h) != one) return std::nullopt;

  std::uint64_t odd = q - 1;
  unsigned s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  // Deterministic search for a non-residue: enumerate field elements.
  Poly z(p);
  {
    std::vector<Residue> digits(deg, 0);
    for (;;) {
      std::size_t i = 0;
      while (i < deg && ++digits[i] == p.value()) digits[i++] = 0;
      if (i == deg) return std::nullopt;  // unreachable for odd q
      Poly cand(p, digits);
      if (powmod(cand, (q - 1) / 2, h) == minus_one) {
        z = cand;
        break;
      }
    }
  }
  unsigned m = s;
  Poly c = powmod(z, odd, h);
  Poly t = powmod(a, odd, h);
  Poly r = powmod(a, (odd + 1) / 2, h);
  while (t != one) {
    unsigned i = 0;
    Poly t2 = t;
    while (t2 != one) {
      t2 = (t2 * t2) % h;
      ++i;
      if (i == m) return std::nullopt;
    }
    Poly b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b = (b * b) % h;
    m = i;
    c = (b * b) % h;
    t = (t * c) % h;
    r = (r * b) % h;
  }
  return r;
}

}  // namespace

std::optional<Matrix> polynomial_sqrt(const Matrix& u) {
  const Prime& p = u.modulus();
  require_odd(p, "polynomial_sqrt");
  if (u.rows() == 0) return u;
  const Poly chi = char_poly(u);
  const Poly x = Poly::x(p);
  const Residue half = p.inv(2);
  Poly combined(p);
  for (const auto& [h, e] : poly_factor(chi)) {
    if (h == x) return std::nullopt;  // singular
    auto s = field_sqrt_of_x(h);
    if (!s) return std::nullopt;
    Poly mod = Poly::constant(p, 1);
    for (unsigned k = 0; k < e; ++k) mod = mod * h;
    // Newton iteration s <- (s + x/s) / 2 doubles the h-adic precision.
    Poly root = *s;
    for (unsigned prec = 1; prec < e; prec *= 2) {
      root = ((root + (x * inverse_mod(root, mod)) % mod) % mod).scaled(half);
    }
    if ((root * root - x) % mod != Poly(p)) throw VerificationError("Hensel lift failed");
    // CRT: root on this component, zero on the others.
    const Poly cofactor = chi / mod;
    const Poly idem = (cofactor * inverse_mod(cofactor, mod)) % chi;
    combined = (combined + root * idem) % chi;
  }
  Matrix sq = evaluate(combined, u);
  if (!(sq * sq == u)) throw VerificationError("polynomial square root check failed");
  return sq;
}

CongruenceTransform congruence_transform(const SkewTuple& a) {
  require_odd(a.modulus(), "congruence_transform");
  const Prime p = a.modulus();
  const std::size_t m = a.size();
  ClassFunction rho = skew_pair_invariants(a);
  const SkewTuple target = canonical_pair(rho);

  // Split off the common radical: it is exactly the (eps, 1) part, which the
  // canonical order places first.
  Matrix stacked(p, 2 * m, m);
  stacked.set_block(0, 0, a[0]);
  stacked.set_block(m, 0, a[1]);
  const auto radical = kernel(stacked);
  const std::size_t r = radical.size();
  if (r != rho({ProjPoint::eps(p), 1})) throw VerificationError("radical dimension mismatch");

  Matrix basis(p, m, m);  // rows are the new basis vectors
  std::size_t filled = 0;
  for (const auto& v : radical) {
    for (std::size_t j = 0; j < m; ++j) basis(filled, j) = v[j];
    ++filled;
  }
  for (std::size_t e = 0; e < m && filled < m; ++e) {
    Matrix trial = basis.block(0, 0, filled + 1, m);
    for (std::size_t j = 0; j < m; ++j) trial(filled, j) = (j == e) ? 1 : 0;
    if (rank(trial) == filled + 1) {
      basis.set_block(filled, 0, trial.block(filled, 0, 1, m));
      ++filled;
    }
  }
  const Invertible p0(basis);
  const SkewTuple split = congr_act(p0, a);
  const std::size_t rest = m - r;
  const SkewTuple core(p, rest, {split[0].block(r, r, rest, rest), split[1].block(r, r, rest, rest)});
  const SkewTuple core_target(
      p, rest, {target[0].block(r, r, rest, rest), target[1].block(r, r, rest, rest)});

  std::optional<Matrix> core_p;
  if (rest == 0) {
    core_p = Matrix(p, 0, 0);
  } else {
    const QuiverRep from = as_rep(core);
    const QuiverRep to = as_rep(core_target);
    const auto hom = hom_space(from, to);
    std::mt19937_64 rng(kSearchSeed);
    for (int trial = 0; trial < 4000 && !core_p; ++trial) {
      // X A Y = C with X = f2, Y = f1^{-1}; U = Y X^{-T} is self-adjoint for
      // A, so a polynomial square root S of U gives P = X S^T.
      auto [f1, f2] = random_combination(hom, from, to, rng);
      auto z = try_invert(f1);
      if (!z) continue;
      auto x = try_invert(f2);
      if (!x) continue;
      const Matrix u = z->inverse() * x->inverse().transpose();
      auto s = polynomial_sqrt(u);
      if (!s) continue;
      Matrix cand = f2 * s->transpose();
      if (congr_act(Invertible(cand), core) == core_target) core_p = std::move(cand);
    }
  }
  if (!core_p) throw VerificationError("congruence_transform: no transform found");

  Matrix lift = Matrix::identity(p, m);
  lift.set_block(r, r, *core_p);
  Invertible total(lift * p0.matrix());
  if (!(congr_act(total, a) == target)) {
    throw VerificationError("congruence_transform: postcondition failed");
  }
  return {std::move(total), std::move(rho)};
}

}  // namespace pencilform
