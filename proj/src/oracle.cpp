#include "pencilform/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "pencilform/error.hpp"
#include "pencilform/guard.hpp"

namespace pencilform {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Invertible> congruence_generators(Prime p, std::size_t m) {
  std::vector<Invertible> gens;
  Matrix d = Matrix::identity(p, m);
  if (m > 0) d(0, 0) = p.primitive_root();
  gens.emplace_back(d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      Matrix t = Matrix::identity(p, m);
      t(i, j) = 1;
      gens.emplace_back(t);
    }
  }
  return gens;
}

std::vector<Invertible> all_gl2(Prime p) {
  std::vector<Invertible> out;
  const Residue pv = p.value();
  for (std::uint64_t code = 0; code < std::uint64_t{pv} * pv * pv * pv; ++code) {
    Matrix q(p, 2, 2);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < 4; ++i) {
      q(i / 2, i % 2) = static_cast<Residue>(c % pv);
      c /= pv;
    }
    if (det(q) != 0) out.emplace_back(q);
  }
  return out;
}

OrbitPartition collect(Prime p, std::size_t m, UnionFind& uf, std::uint64_t count) {
  std::map<std::size_t, std::vector<std::uint64_t>> groups;
  for (std::uint64_t c = 0; c < count; ++c) groups[uf.find(c)].push_back(c);
  OrbitPartition out{p, m, {}};
  for (auto& [root, codes] : groups) out.orbits.push_back(std::move(codes));
  std::sort(out.orbits.begin(), out.orbits.end());
  return out;
}

OrbitPartition orbits(Prime p, std::size_t m, bool weak) {
  require_odd(p, "oracle");
  const std::uint64_t count = skew_pair_count(p, m);
  check_guard("skew pair enumeration", count, 10'000'000);
  check_guard("GL(m) order", gl_order(p, m), 1'000'000);
  const auto gens = congruence_generators(p, m);
  const auto qs = weak ? all_gl2(p) : std::vector<Invertible>{};
  check_guard("orbit moves", saturating_mul(count, gens.size() + qs.size()), 100'000'000);
  UnionFind uf(count);
  for (std::uint64_t c = 0; c < count; ++c) {
    const SkewTuple a = decode_pair(p, m, c);
    for (const auto& g : gens) uf.unite(c, encode_pair(congr_act(g, a)));
    for (const auto& q : qs) uf.unite(c, encode_pair(tuple_act(a, q)));
  }
  return collect(p, m, uf, count);
}

}  // namespace

std::uint64_t skew_pair_count(Prime p, std::size_t m) {
  return saturating_pow(p.value(), m * (m - (m > 0 ? 1 : 0)));
}

std::uint64_t encode_pair(const SkewTuple& a) {
  if (a.length() != 2) throw ContractError("encode_pair: expected a pair");
  std::uint64_t code = 0, scale = 1;
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        code += scale * a[k](i, j);
        scale *= a.modulus().value();
      }
    }
  }
  return code;
}

SkewTuple decode_pair(Prime p, std::size_t m, std::uint64_t code) {
  std::vector<Matrix> mats(2, Matrix(p, m, m));
  for (auto& a : mats) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        a(i, j) = static_cast<Residue>(code % p.value());
        a(j, i) = p.neg(a(i, j));
        code /= p.value();
      }
    }
  }
  return {p, m, std::move(mats)};
}

std::vector<SkewTuple> all_skew_pairs(Prime p, std::size_t m) {
  const std::uint64_t count = skew_pair_count(p, m);
  check_guard("skew pair enumeration", count, 10'000'000);
  std::vector<SkewTuple> out;
  out.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) out.push_back(decode_pair(p, m, c));
  return out;
}

std::uint64_t gl_order(Prime p, std::size_t m) {
  const std::uint64_t pm = saturating_pow(p.value(), m);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < m; ++i) order = saturating_mul(order, pm - saturating_pow(p.value(), i));
  return order;
}

OrbitPartition brute_congruence_partition(Prime p, std::size_t m) { return orbits(p, m, false); }

OrbitPartition brute_weak_partition(Prime p, std::size_t m) { return orbits(p, m, true); }

OrbitPartition partition_by(Prime p, std::size_t m,
                            const std::function<std::string(const SkewTuple&)>& key) {
  const std::uint64_t count = skew_pair_count(p, m);
  check_guard("skew pair enumeration", count, 10'000'000);
  std::map<std::string, std::vector<std::uint64_t>> groups;
  for (std::uint64_t c = 0; c < count; ++c) groups[key(decode_pair(p, m, c))].push_back(c);
  OrbitPartition out{p, m, {}};
  for (auto& [k, codes] : groups) out.orbits.push_back(std::move(codes));
  std::sort(out.orbits.begin(), out.orbits.end());
  return out;
}

bool orbit_sizes_divide(const OrbitPartition& part, std::uint64_t group_order) {
  return std::all_of(part.orbits.begin(), part.orbits.end(),
                     [&](const auto& o) { return group_order % o.size() == 0; });
}

bool refines(const OrbitPartition& fine, const OrbitPartition& coarse) {
  std::map<std::uint64_t, std::size_t> block_of;
  for (std::size_t b = 0; b < coarse.orbits.size(); ++b) {
    for (auto c : coarse.orbits[b]) block_of[c] = b;
  }
  for (const auto& o : fine.orbits) {
    const auto first = block_of.find(o.front());
    if (first == block_of.end()) return false;
    for (auto c : o) {
      auto it = block_of.find(c);
      if (it == block_of.end() || it->second != first->second) return false;
    }
  }
  return true;
}

}  // namespace pencilform
