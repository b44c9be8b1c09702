#pragma once

#include <iosfwd>

#include "pencilform/json_io.hpp"

namespace pencilform {

// Subcommand bodies: request JSON in, response JSON out. They throw the
// library errors; run_cli maps them to exit codes.
[[nodiscard]] Json cmd_canon(const Json& request);
[[nodiscard]] Json cmd_iso(const Json& request);
[[nodiscard]] Json cmd_classes(const Json& request);
/// JSON presentation; `text` receives the text rendering.
[[nodiscard]] Json cmd_present(const Json& request, std::string* text = nullptr);
[[nodiscard]] Json cmd_verify(const Json& request);
[[nodiscard]] Json cmd_cocycle(const Json& request);

/// The pencilform command line. Reads the request from `in` (or --input),
/// writes the response or an error object to `out`, returns the exit code.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& diag);

}  // namespace pencilform
