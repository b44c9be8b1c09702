#include "pencilform/blocks.hpp"

#include <algorithm>

#include "pencilform/error.hpp"

namespace pencilform {

ProjPoint ProjPoint::point(HomPoly g) {
  const Prime p = g.modulus();
  if (g.degree() == 0) throw ContractError("point: constant form");
  const Residue lead = g.coeffs().back();
  if (lead == 0) {
    if (!(g == HomPoly::x2(p))) throw ContractError("point: form is not unital: " + g.to_string());
    return ProjPoint(p, std::move(g));
  }
  if (lead != 1) throw ContractError("point: form is not unital: " + g.to_string());
  if (!is_irreducible(g.dehomogenize())) {
    throw ContractError("point: form is not irreducible: " + g.to_string());
  }
  return ProjPoint(p, std::move(g));
}

ProjPoint ProjPoint::finite(const Poly& f) {
  return point(HomPoly::homogenize(f, static_cast<unsigned>(f.degree())));
}

ProjPoint ProjPoint::normalized(const HomPoly& g) {
  const Prime p = g.modulus();
  const Residue lead = g.coeffs().back();
  if (lead == 0) {
    // x2 divides g; an irreducible such form is a multiple of x2.
    if (g.degree() != 1 || g.coeffs()[0] == 0) {
      throw ContractError("normalized: form is reducible or zero: " + g.to_string());
    }
    return infinity(p);
  }
  return ProjPoint(p, g.scaled(p.inv(lead)));
}

bool ProjPoint::is_infinity() const noexcept { return g_ && *g_ == HomPoly::x2(p_); }

const HomPoly& ProjPoint::form() const {
  if (!g_) throw ContractError("eps has no form");
  return *g_;
}

std::string ProjPoint::label() const { return g_ ? g_->to_string() : "eps"; }

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  if (a.is_eps() || b.is_eps()) return a.is_eps() && !b.is_eps();
  return *a.g_ < *b.g_;
}

std::size_t BlockSpec::size() const noexcept {
  if (point.is_eps()) return 2 * static_cast<std::size_t>(d) - 1;
  return 2 * static_cast<std::size_t>(d) * point.degree();
}

void ClassFunction::add(const BlockSpec& spec, unsigned mult) {
  if (spec.d == 0) throw ContractError("block index d must be >= 1");
  if (!(spec.point.modulus() == p_)) throw ContractError("class function: prime mismatch");
  if (mult == 0) return;
  m_[spec] += mult;
}

unsigned ClassFunction::operator()(const BlockSpec& spec) const {
  auto it = m_.find(spec);
  return it == m_.end() ? 0 : it->second;
}

std::size_t ClassFunction::total_size() const noexcept {
  std::size_t s = 0;
  for (const auto& [spec, mult] : m_) s += spec.size() * mult;
  return s;
}

bool operator<(const ClassFunction& a, const ClassFunction& b) {
  return std::lexicographical_compare(a.m_.begin(), a.m_.end(), b.m_.begin(), b.m_.end(),
                                      [](const auto& x, const auto& y) {
                                        if (!(x.first == y.first)) return x.first < y.first;
                                        return x.second < y.second;
                                      });
}

std::string ClassFunction::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [spec, mult] : m_) {
    if (!first) out += ", ";
    first = false;
    out += "(" + spec.point.label() + "," + std::to_string(spec.d) + "):" + std::to_string(mult);
  }
  return out + "}";
}

}  // namespace pencilform
