#include "pencilform/guard.hpp"

#include <cstdlib>
#include <limits>
#include <mutex>
#include <string>

#include "pencilform/error.hpp"

namespace pencilform {

namespace {

std::mutex g_mutex;
bool g_initialized = false;
std::optional<std::uint64_t> g_override;

void init_from_env_locked() {
  if (g_initialized) return;
  g_initialized = true;
  if (const char* env = std::getenv("PENCILFORM_MAX_ENUM"); env != nullptr && *env != '\0') {
    try {
      g_override = std::stoull(env);
    } catch (const std::exception&) {
      throw ContractError(std::string("PENCILFORM_MAX_ENUM is not an integer: ") + env);
    }
  }
}

}  // namespace

void set_enum_limit_override(std::optional<std::uint64_t> limit) {
  std::lock_guard lock(g_mutex);
  g_initialized = true;
  g_override = limit;
}

std::optional<std::uint64_t> enum_limit_override() {
  std::lock_guard lock(g_mutex);
  init_from_env_locked();
  return g_override;
}

void check_guard(std::string_view what, std::uint64_t amount, std::uint64_t default_limit) {
  const auto limit = enum_limit_override().value_or(default_limit);
  if (amount > limit) {
    throw ResourceGuardError(std::string(what) + ": enumeration size " + std::to_string(amount) +
                             " exceeds limit " + std::to_string(limit));
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > max / a) return max;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = saturating_mul(r, base);
    if (r == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return r;
}

}  // namespace pencilform
