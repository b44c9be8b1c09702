#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

namespace pencilform {

using Residue = std::uint32_t;

/// A prime modulus, validated by trial division at construction.
/// Characteristic 2 is accepted here; classification entry points reject it
/// separately through require_odd().
class Prime {
 public:
  explicit Prime(std::uint32_t p);

  [[nodiscard]] std::uint32_t value() const noexcept { return p_; }
  [[nodiscard]] bool is_odd() const noexcept { return p_ != 2; }

  [[nodiscard]] Residue reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  [[nodiscard]] Residue add(Residue a, Residue b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  [[nodiscard]] Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  /// Multiplicative inverse; throws ContractError for zero.
  [[nodiscard]] Residue inv(Residue a) const;
  [[nodiscard]] Residue pow(Residue a, std::uint64_t e) const noexcept;
  /// Smallest generator of the multiplicative group.
  [[nodiscard]] Residue primitive_root() const;

  friend bool operator==(const Prime&, const Prime&) = default;
  friend auto operator<=>(const Prime&, const Prime&) = default;

 private:
  std::uint32_t p_;
};

/// Throws UnsupportedCharacteristic for p = 2.
void require_odd(const Prime& p, const char* operation);

/// Value type for a single element of F_p. Bulk code works on raw Residues
/// with an explicit Prime; this wrapper is for API boundaries and tests.
class FieldElem {
 public:
  FieldElem(Prime p, std::int64_t v) : p_(p), v_(p.reduce(v)) {}

  [[nodiscard]] Residue value() const noexcept { return v_; }
  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }

  [[nodiscard]] FieldElem inverse() const { return {p_, p_.inv(v_)}; }

  friend FieldElem operator+(FieldElem a, const FieldElem& b);
  friend FieldElem operator-(FieldElem a, const FieldElem& b);
  friend FieldElem operator*(FieldElem a, const FieldElem& b);
  friend FieldElem operator/(FieldElem a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a) { return {a.p_, a.p_.neg(a.v_)}; }
  friend bool operator==(const FieldElem&, const FieldElem&) = default;

  friend std::ostream& operator<<(std::ostream& os, const FieldElem& e) { return os << e.v_; }

 private:
  Prime p_;
  Residue v_;
};

[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

}  // namespace pencilform
