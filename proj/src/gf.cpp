#include "pencilform/gf.hpp"

#include <string>
#include <vector>

#include "pencilform/error.hpp"

namespace pencilform {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw ContractError("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw ContractError("modulus too large: " + std::to_string(p));
}

Residue Prime::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

Residue Prime::inv(Residue a) const {
  if (a % p_ == 0) throw ContractError("division by zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

Residue Prime::primitive_root() const {
  if (p_ == 2) return 1;
  std::vector<std::uint32_t> factors;
  std::uint32_t n = p_ - 1;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  for (Residue g = 2; g < p_; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (pow(g, (p_ - 1) / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

void require_odd(const Prime& p, const char* operation) {
  if (!p.is_odd()) {
    throw UnsupportedCharacteristic(std::string(operation) +
                                    ": characteristic 2 is not supported for classification");
  }
}

namespace {
void same_field(const FieldElem& a, const FieldElem& b) {
  if (!(a.modulus() == b.modulus())) throw ContractError("field elements over different primes");
}
}  // namespace

FieldElem operator+(FieldElem a, const FieldElem& b) {
  same_field(a, b);
  a.v_ = a.p_.add(a.v_, b.v_);
  return a;
}

FieldElem operator-(FieldElem a, const FieldElem& b) {
  same_field(a, b);
  a.v_ = a.p_.sub(a.v_, b.v_);
  return a;
}

FieldElem operator*(FieldElem a, const FieldElem& b) {
  same_field(a, b);
  a.v_ = a.p_.mul(a.v_, b.v_);
  return a;
}

FieldElem operator/(FieldElem a, const FieldElem& b) {
  same_field(a, b);
  a.v_ = a.p_.mul(a.v_, a.p_.inv(b.v_));
  return a;
}

}  // namespace pencilform
