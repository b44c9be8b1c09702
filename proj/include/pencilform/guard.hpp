#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace pencilform {

// Enumeration guards. Every exhaustive routine states a default limit; a
// process-wide override (set by the CLI from --max-enum, or read once from
// the PENCILFORM_MAX_ENUM environment variable) replaces all defaults.

void set_enum_limit_override(std::optional<std::uint64_t> limit);
[[nodiscard]] std::optional<std::uint64_t> enum_limit_override();

/// Throws ResourceGuardError when `amount` exceeds the effective limit.
void check_guard(std::string_view what, std::uint64_t amount, std::uint64_t default_limit);

/// Saturating integer power, used to size enumerations before running them.
[[nodiscard]] std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);
[[nodiscard]] std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace pencilform
