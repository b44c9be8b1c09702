#include "pencilform/cohomology.hpp"

#include <string>

#include "pencilform/error.hpp"
#include "pencilform/guard.hpp"

namespace pencilform {

namespace {

constexpr std::uint64_t kTableLimit = 6561;  // 3^8 table entries

}  // namespace

std::uint64_t top_count(Prime p, std::size_t m) { return saturating_pow(p.value(), m); }

Vec decode_top(Prime p, std::size_t m, std::uint64_t index) {
  Vec x(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = static_cast<Residue>(index % p.value());
    index /= p.value();
  }
  return x;
}

std::uint64_t encode_top(Prime p, const Vec& x) {
  std::uint64_t index = 0;
  for (std::size_t i = x.size(); i-- > 0;) index = index * p.value() + x[i];
  return index;
}

std::uint64_t add_top(Prime p, std::size_t m, std::uint64_t x, std::uint64_t y) {
  std::uint64_t out = 0, scale = 1;
  for (std::size_t i = 0; i < m; ++i) {
    out += scale * p.add(static_cast<Residue>(x % p.value()), static_cast<Residue>(y % p.value()));
    x /= p.value();
    y /= p.value();
    scale *= p.value();
  }
  return out;
}

Cocycle::Cocycle(Prime p, std::size_t m, std::size_t n) : p_(p), m_(m), n_(n) {
  q_ = top_count(p, m);
  check_guard("cocycle table", saturating_mul(q_, q_), kTableLimit);
  data_.assign(q_ * q_ * n_, 0);
}

std::span<const Residue> Cocycle::at(std::uint64_t x, std::uint64_t y) const {
  if (x >= q_ || y >= q_) throw ContractError("cocycle index out of range");
  return {data_.data() + (x * q_ + y) * n_, n_};
}

std::span<Residue> Cocycle::at(std::uint64_t x, std::uint64_t y) {
  if (x >= q_ || y >= q_) throw ContractError("cocycle index out of range");
  return {data_.data() + (x * q_ + y) * n_, n_};
}

Vec form_cocycle_value(const SkewTuple& t, const Vec& x, const Vec& y) {
  const Prime& p = t.modulus();
  Vec out(t.length(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (y[j] == 0) continue;
      const Residue c = p.mul(x[i], y[j]);
      for (std::size_t k = 0; k < t.length(); ++k) out[k] = p.add(out[k], p.mul(c, t[k](i, j)));
    }
  }
  return out;
}

Cocycle cocycle_from_form(const SkewTuple& t) {
  const Prime& p = t.modulus();
  Cocycle mu(p, t.size(), t.length());
  for (std::uint64_t x = 0; x < mu.points(); ++x) {
    const Vec xv = decode_top(p, t.size(), x);
    for (std::uint64_t y = 0; y < mu.points(); ++y) {
      const Vec v = form_cocycle_value(t, xv, decode_top(p, t.size(), y));
      std::copy(v.begin(), v.end(), mu.at(x, y).begin());
    }
  }
  return mu;
}

Cocycle antisymmetrization(const Cocycle& mu) {
  const Prime& p = mu.modulus();
  Cocycle out(p, mu.top_rank(), mu.bottom_rank());
  for (std::uint64_t x = 0; x < mu.points(); ++x) {
    for (std::uint64_t y = 0; y < mu.points(); ++y) {
      auto a = mu.at(x, y);
      auto b = mu.at(y, x);
      auto o = out.at(x, y);
      for (std::size_t k = 0; k < o.size(); ++k) o[k] = p.sub(a[k], b[k]);
    }
  }
  return out;
}

SkewTuple tau(const Cocycle& mu) {
  if (!is_normalized(mu)) throw ContractError("tau: table is not normalized");
  if (auto bad = cocycle_violation(mu)) {
    throw ContractError("tau: table is not a cocycle at (" + std::to_string((*bad)[0]) + ", " +
                        std::to_string((*bad)[1]) + ", " + std::to_string((*bad)[2]) + ")");
  }
  const Prime& p = mu.modulus();
  const std::size_t m = mu.top_rank();
  std::vector<Matrix> mats(mu.bottom_rank(), Matrix(p, m, m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const std::uint64_t hi = saturating_pow(p.value(), i), hj = saturating_pow(p.value(), j);
      auto a = mu.at(hi, hj);
      auto b = mu.at(hj, hi);
      for (std::size_t k = 0; k < mats.size(); ++k) mats[k](i, j) = p.sub(a[k], b[k]);
    }
  }
  return {p, m, std::move(mats)};
}

bool is_bilinear(const Cocycle& t) {
  const Prime& p = t.modulus();
  const std::size_t m = t.top_rank();
  for (std::uint64_t x = 0; x < t.points(); ++x) {
    for (std::uint64_t x2 = 0; x2 < t.points(); ++x2) {
      const std::uint64_t s = add_top(p, m, x, x2);
      for (std::uint64_t y = 0; y < t.points(); ++y) {
        auto a = t.at(x, y), b = t.at(x2, y), c = t.at(s, y);
        auto d = t.at(y, x), e = t.at(y, x2), f = t.at(y, s);
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (c[k] != p.add(a[k], b[k]) || f[k] != p.add(d[k], e[k])) return false;
        }
      }
    }
  }
  return true;
}

Cocycle coboundary(Prime p, std::size_t m, std::size_t n, const std::vector<Vec>& gamma) {
  Cocycle out(p, m, n);
  if (gamma.size() != out.points()) throw ContractError("coboundary: gamma has the wrong length");
  for (const auto& g : gamma) {
    if (g.size() != n) throw ContractError("coboundary: gamma value has the wrong length");
  }
  for (Residue v : gamma[0]) {
    if (v != 0) throw ContractError("coboundary: gamma(0) must be 0");
  }
  for (std::uint64_t x = 0; x < out.points(); ++x) {
    for (std::uint64_t y = 0; y < out.points(); ++y) {
      const auto& s = gamma[add_top(p, m, x, y)];
      auto o = out.at(x, y);
      for (std::size_t k = 0; k < n; ++k) o[k] = p.sub(p.add(gamma[x][k], gamma[y][k]), s[k]);
    }
  }
  return out;
}

std::optional<Triple> cocycle_violation(const Cocycle& mu) {
  const Prime& p = mu.modulus();
  const std::size_t m = mu.top_rank();
  for (std::uint64_t x = 0; x < mu.points(); ++x) {
    for (std::uint64_t y = 0; y < mu.points(); ++y) {
      const std::uint64_t xy = add_top(p, m, x, y);
      for (std::uint64_t z = 0; z < mu.points(); ++z) {
        const std::uint64_t yz = add_top(p, m, y, z);
        auto a = mu.at(y, z), b = mu.at(x, yz), c = mu.at(xy, z), d = mu.at(x, y);
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (p.add(a[k], b[k]) != p.add(c[k], d[k])) return Triple{x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_cocycle(const Cocycle& mu) { return !cocycle_violation(mu).has_value(); }

bool is_normalized(const Cocycle& mu) {
  for (std::uint64_t x = 0; x < mu.points(); ++x) {
    for (Residue v : mu.at(0, x)) {
      if (v != 0) return false;
    }
    for (Residue v : mu.at(x, 0)) {
      if (v != 0) return false;
    }
  }
  return true;
}

bool is_symmetric(const Cocycle& mu) {
  for (std::uint64_t x = 0; x < mu.points(); ++x) {
    for (std::uint64_t y = x + 1; y < mu.points(); ++y) {
      auto a = mu.at(x, y), b = mu.at(y, x);
      if (!std::equal(a.begin(), a.end(), b.begin())) return false;
    }
  }
  return true;
}

Cocycle coboundary(const PruferCochain& gamma) {
  const Prime& p = gamma.p;
  const std::uint64_t pv = p.value(), p2 = pv * pv;
  Cocycle out(p, gamma.m, gamma.n);
  if (gamma.values.size() != out.points()) throw ContractError("coboundary: wrong cochain length");
  for (std::uint64_t x = 0; x < out.points(); ++x) {
    for (std::uint64_t y = 0; y < out.points(); ++y) {
      const auto& s = gamma.values[add_top(p, gamma.m, x, y)];
      auto o = out.at(x, y);
      for (std::size_t k = 0; k < gamma.n; ++k) {
        const std::uint64_t v = (gamma.values[x][k] + gamma.values[y][k] + p2 - s[k] % p2) % p2;
        if (v % pv != 0) throw ContractError("coboundary: value outside the p-torsion");
        o[k] = static_cast<Residue>(v / pv);
      }
    }
  }
  return out;
}

std::optional<PruferCochain> coboundary_preimage(const Cocycle& mu) {
  const Prime& p = mu.modulus();
  const std::uint64_t pv = p.value();
  const std::size_t m = mu.top_rank(), n = mu.bottom_rank();
  const std::uint64_t q = mu.points();
  check_guard("homomorphism enumeration", saturating_pow(pv, m * n), 1'000'000);

  // Linear system d c1 = rhs over the unknowns c1(x), x != 0 (one coordinate).
  Matrix sys(p, q * q, q - 1);
  for (std::uint64_t x = 0; x < q; ++x) {
    for (std::uint64_t y = 0; y < q; ++y) {
      const std::uint64_t row = x * q + y, s = add_top(p, m, x, y);
      if (x) sys(row, x - 1) = p.add(sys(row, x - 1), 1);
      if (y) sys(row, y - 1) = p.add(sys(row, y - 1), 1);
      if (s) sys(row, s - 1) = p.sub(sys(row, s - 1), 1);
    }
  }

  const std::uint64_t homs = saturating_pow(pv, m * n);
  for (std::uint64_t code = 0; code < homs; ++code) {
    // c0(h_i)_k = digit (i * n + k) of code.
    std::vector<Vec> c0(q, Vec(n, 0));
    {
      std::uint64_t c = code;
      Vec img(m * n);
      for (auto& v : img) {
        v = static_cast<Residue>(c % pv);
        c /= pv;
      }
      for (std::uint64_t x = 0; x < q; ++x) {
        const Vec xv = decode_top(p, m, x);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t k = 0; k < n; ++k) c0[x][k] = p.add(c0[x][k], p.mul(xv[i], img[i * n + k]));
      }
    }
    PruferCochain gamma{p, m, n, std::vector<std::vector<std::uint64_t>>(q, std::vector<std::uint64_t>(n, 0))};
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      Vec rhs(q * q);
      for (std::uint64_t x = 0; x < q; ++x) {
        for (std::uint64_t y = 0; y < q; ++y) {
          const std::uint64_t carry = (c0[x][k] + c0[y][k] - c0[add_top(p, m, x, y)][k]) / pv;
          rhs[x * q + y] = p.sub(mu.at(x, y)[k], static_cast<Residue>(carry));
        }
      }
      auto c1 = solve(sys, rhs);
      if (!c1) {
        ok = false;
        break;
      }
      for (std::uint64_t x = 1; x < q; ++x) gamma.values[x][k] = c0[x][k] + pv * (*c1)[x - 1];
    }
    if (!ok) continue;
    if (!(coboundary(gamma) == mu)) throw VerificationError("coboundary_preimage: check failed");
    return gamma;
  }
  return std::nullopt;
}

std::vector<Cocycle> symmetric_cocycle_basis(Prime p, std::size_t m) {
  const Cocycle shape(p, m, 1);
  const std::uint64_t q = shape.points();
  const std::uint64_t unknowns = q * q;
  std::vector<Vec> rows;
  auto var = [q](std::uint64_t x, std::uint64_t y) { return x * q + y; };
  for (std::uint64_t x = 0; x < q; ++x) {
    Vec r(unknowns, 0);
    r[var(0, x)] = 1;
    rows.push_back(r);
    r.assign(unknowns, 0);
    r[var(x, 0)] = 1;
    rows.push_back(r);
    for (std::uint64_t y = x + 1; y < q; ++y) {
      r.assign(unknowns, 0);
      r[var(x, y)] = 1;
      r[var(y, x)] = p.neg(1);
      rows.push_back(r);
    }
  }
  for (std::uint64_t x = 0; x < q; ++x) {
    for (std::uint64_t y = 0; y < q; ++y) {
      const std::uint64_t xy = add_top(p, m, x, y);
      for (std::uint64_t z = 0; z < q; ++z) {
        const std::uint64_t yz = add_top(p, m, y, z);
        Vec r(unknowns, 0);
        auto bump = [&](std::uint64_t i, Residue s) { r[i] = p.add(r[i], s); };
        bump(var(y, z), 1);
        bump(var(x, yz), 1);
        bump(var(xy, z), p.neg(1));
        bump(var(x, y), p.neg(1));
        rows.push_back(std::move(r));
      }
    }
  }
  Matrix sys(p, rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::uint64_t j = 0; j < unknowns; ++j) sys(i, j) = rows[i][j];
  std::vector<Cocycle> basis;
  for (const auto& v : kernel(sys)) {
    Cocycle c(p, m, 1);
    for (std::uint64_t x = 0; x < q; ++x)
      for (std::uint64_t y = 0; y < q; ++y) c.at(x, y)[0] = v[var(x, y)];
    basis.push_back(std::move(c));
  }
  return basis;
}

}  // namespace pencilform
