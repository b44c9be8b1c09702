#include "pencilform/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "pencilform/error.hpp"
#include "pencilform/guard.hpp"
#include "pencilform/matrix.hpp"

namespace pencilform {

namespace {

void require_same_field(const Prime& a, const Prime& b) {
  if (!(a == b)) throw ContractError("polynomials over different primes");
}

std::string term(Residue c, const std::string& mono, bool first) {
  std::string out = first ? "" : "+";
  if (mono.empty()) return out + std::to_string(c);
  if (c != 1) out += std::to_string(c) + "*";
  return out + mono;
}

std::string power(const std::string& var, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return var + "^" + std::to_string(k);
}

}  // namespace

Poly::Poly(Prime p, std::vector<Residue> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& v : c_) v %= p_.value();
  trim();
}

Poly Poly::monomial(Prime p, std::size_t degree, Residue c) {
  std::vector<Residue> coeffs(degree + 1, 0);
  coeffs[degree] = c;
  return {p, std::move(coeffs)};
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) throw ContractError("monic: zero polynomial");
  return scaled(p_.inv(leading()));
}

Residue Poly::eval(Residue at) const noexcept {
  Residue acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = p_.add(p_.mul(acc, at), *it);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a.p_, b.p_);
  std::vector<Residue> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.p_.add(a.coeff(i), b.coeff(i));
  return {a.p_, std::move(out)};
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_field(a.p_, b.p_);
  std::vector<Residue> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.p_.sub(a.coeff(i), b.coeff(i));
  return {a.p_, std::move(out)};
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a.p_, b.p_);
  if (a.is_zero() || b.is_zero()) return Poly(a.p_);
  const std::uint64_t p = a.p_.value();
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a.c_[i]) * b.c_[j]) % p;
    }
  }
  std::vector<Residue> out(acc.begin(), acc.end());
  return {a.p_, std::move(out)};
}

Poly Poly::scaled(Residue s) const {
  std::vector<Residue> out(c_);
  for (auto& v : out) v = p_.mul(v, s);
  return {p_, std::move(out)};
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  require_same_field(p_, divisor.p_);
  if (divisor.is_zero()) throw ContractError("polynomial division by zero");
  if (degree() < divisor.degree()) return {Poly(p_), *this};
  std::vector<Residue> rem(c_);
  const std::size_t dd = divisor.c_.size() - 1;
  std::vector<Residue> quot(rem.size() - dd, 0);
  const Residue lead_inv = p_.inv(divisor.leading());
  for (std::size_t i = rem.size(); i-- > dd;) {
    const Residue q = p_.mul(rem[i], lead_inv);
    quot[i - dd] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      rem[i - dd + j] = p_.sub(rem[i - dd + j], p_.mul(q, divisor.c_[j]));
    }
  }
  rem.resize(dd);
  return {Poly(p_, std::move(quot)), Poly(p_, std::move(rem))};
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  return a.c_ < b.c_;
}

std::string Poly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    out += term(c_[k], power(var, k), first);
    first = false;
  }
  return out;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  const Prime& p = a.modulus();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(p, 1), s1(p);
  Poly t0(p), t1 = Poly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Residue inv = p.inv(r0.leading());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  Poly result = Poly::constant(base.modulus(), 1) % modulus;
  Poly b = base % modulus;
  while (e > 0) {
    if (e & 1u) result = (result * b) % modulus;
    b = (b * b) % modulus;
    e >>= 1u;
  }
  return result;
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  auto eg = ext_gcd(a % m, m);
  if (eg.g.degree() != 0) throw ContractError("inverse_mod: not invertible");
  return eg.s % m;
}

const std::vector<Poly>& irreducibles_up_to(Prime p, unsigned d) {
  if (d == 0) throw ContractError("irreducibles_up_to: degree must be >= 1");
  check_guard("irreducibles_up_to", saturating_pow(p.value(), d), 1'000'000);

  static std::mutex mutex;
  static std::map<std::uint32_t, std::vector<std::vector<Poly>>> by_degree;
  static std::map<std::pair<std::uint32_t, unsigned>, std::vector<Poly>> flat;
  std::lock_guard lock(mutex);

  if (auto it = flat.find({p.value(), d}); it != flat.end()) return it->second;

  auto& table = by_degree[p.value()];
  if (table.empty()) table.emplace_back();  // degree 0 slot unused
  while (table.size() <= d) {
    const unsigned e = static_cast<unsigned>(table.size());
    std::vector<Poly> found;
    // Enumerate monic polynomials of degree e in increasing coefficient order.
    std::vector<Residue> low(e, 0);
    for (;;) {
      std::vector<Residue> coeffs(low);
      coeffs.push_back(1);
      Poly cand(p, std::move(coeffs));
      bool irreducible = true;
      for (unsigned k = 1; 2 * k <= e && irreducible; ++k) {
        for (const auto& g : table[k]) {
          if ((cand % g).is_zero()) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) found.push_back(std::move(cand));
      std::size_t i = 0;
      while (i < e && ++low[i] == p.value()) low[i++] = 0;
      if (i == e) break;
    }
    std::sort(found.begin(), found.end());
    table.push_back(std::move(found));
  }
  std::vector<Poly> all;
  for (unsigned e = 1; e <= d; ++e) all.insert(all.end(), table[e].begin(), table[e].end());
  return flat.emplace(std::make_pair(p.value(), d), std::move(all)).first->second;
}

Factorization poly_factor(const Poly& f) {
  if (f.is_zero() || !f.is_monic()) throw ContractError("poly_factor: input must be monic and nonzero");
  if (f.degree() < 1) throw ContractError("poly_factor: degree must be >= 1");
  Factorization out;
  Poly rem = f;
  const unsigned half = static_cast<unsigned>(f.degree()) / 2;
  if (half >= 1) {
    const auto& irr = irreducibles_up_to(f.modulus(), half);
    int current_degree = 0;
    for (const auto& g : irr) {
      if (g.degree() != current_degree) {
        current_degree = g.degree();
        if (2 * current_degree > rem.degree()) break;
      }
      unsigned mult = 0;
      for (;;) {
        auto [q, r] = rem.divmod(g);
        if (!r.is_zero()) break;
        rem = std::move(q);
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
    }
  }
  if (rem.degree() > 0) out.emplace_back(rem, 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fac = poly_factor(f.monic());
  return fac.size() == 1 && fac.front().second == 1;
}

Matrix frobenius_matrix(const Poly& f) {
  if (!f.is_monic() || f.degree() < 1) {
    throw ContractError("frobenius_matrix: polynomial must be monic of degree >= 1");
  }
  const auto d = static_cast<std::size_t>(f.degree());
  const Prime& p = f.modulus();
  Matrix m(p, d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) m(i + 1, i) = 1;
  for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = p.neg(f.coeff(i));
  return m;
}

Poly det(PolyMatrix m, Prime p) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(p, 1);
  for (const auto& row : m) {
    if (row.size() != n) throw ContractError("det: polynomial matrix is not square");
  }
  bool negate = false;
  Poly prev = Poly::constant(p, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t sel = k + 1;
      while (sel < n && m[sel][k].is_zero()) ++sel;
      if (sel == n) return Poly(p);
      std::swap(m[sel], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  return negate ? -d : d;
}

Poly char_poly(const Matrix& m) {
  if (!m.is_square()) throw ContractError("char_poly: matrix is not square");
  const Prime& p = m.modulus();
  const std::size_t n = m.rows();
  PolyMatrix pm(n, std::vector<Poly>(n, Poly(p)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pm[i][j] = Poly(p, {p.neg(m(i, j)), static_cast<Residue>(i == j ? 1 : 0)});
    }
  }
  return det(std::move(pm), p);
}

Matrix evaluate(const Poly& f, const Matrix& m) {
  if (!m.is_square()) throw ContractError("evaluate: matrix is not square");
  const Prime& p = m.modulus();
  Matrix acc(p, m.rows(), m.cols());
  const Matrix id = Matrix::identity(p, m.rows());
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    acc = acc * m + id.scaled(f.coeff(k));
  }
  return acc;
}

HomPoly::HomPoly(Prime p, unsigned degree, std::vector<Residue> by_x1_degree)
    : p_(p), d_(degree), c_(std::move(by_x1_degree)) {
  if (c_.size() != static_cast<std::size_t>(d_) + 1) {
    throw ContractError("HomPoly: expected " + std::to_string(d_ + 1) + " coefficients");
  }
  for (auto& v : c_) v %= p_.value();
}

HomPoly HomPoly::homogenize(const Poly& f, unsigned d) {
  if (f.degree() > static_cast<int>(d)) throw ContractError("homogenize: degree too large");
  std::vector<Residue> c(d + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) c[i] = f.coeffs()[i];
  return {f.modulus(), d, std::move(c)};
}

bool HomPoly::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](Residue v) { return v == 0; });
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  require_same_field(a.p_, b.p_);
  std::vector<Residue> out(a.d_ + b.d_ + 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] = a.p_.add(out[i + j], a.p_.mul(a.c_[i], b.c_[j]));
    }
  }
  return {a.p_, a.d_ + b.d_, std::move(out)};
}

HomPoly HomPoly::scaled(Residue s) const {
  std::vector<Residue> out(c_);
  for (auto& v : out) v = p_.mul(v, s);
  return {p_, d_, std::move(out)};
}

HomPoly HomPoly::substitute(Residue q11, Residue q12, Residue q21, Residue q22) const {
  const HomPoly l1(p_, 1, {q12 % p_.value(), q11 % p_.value()});
  const HomPoly l2(p_, 1, {q22 % p_.value(), q21 % p_.value()});
  std::vector<HomPoly> pow1{HomPoly(p_, 0, {1})};
  std::vector<HomPoly> pow2{HomPoly(p_, 0, {1})};
  for (unsigned k = 1; k <= d_; ++k) {
    pow1.push_back(pow1.back() * l1);
    pow2.push_back(pow2.back() * l2);
  }
  std::vector<Residue> acc(d_ + 1, 0);
  for (unsigned k = 0; k <= d_; ++k) {
    if (c_[k] == 0) continue;
    const HomPoly t = pow1[k] * pow2[d_ - k];
    for (unsigned i = 0; i <= d_; ++i) acc[i] = p_.add(acc[i], p_.mul(c_[k], t.c_[i]));
  }
  return {p_, d_, std::move(acc)};
}

bool operator<(const HomPoly& a, const HomPoly& b) {
  if (a.d_ != b.d_) return a.d_ < b.d_;
  return a.c_ < b.c_;
}

std::string HomPoly::to_string() const {
  std::string out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    std::string mono = power("x1", k);
    const std::string right = power("x2", d_ - k);
    if (!right.empty()) mono = mono.empty() ? right : mono + "*" + right;
    out += term(c_[k], mono, first);
    first = false;
  }
  return first ? "0" : out;
}

}  // namespace pencilform
