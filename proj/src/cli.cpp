#include "pencilform/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "pencilform/error.hpp"
#include "pencilform/guard.hpp"
#include "pencilform/pencil.hpp"
#include "pencilform/weakcong.hpp"

namespace pencilform {

namespace {

constexpr int kVersion = 1;

void check_version(const Json& request) {
  if (!request.is_object()) throw ContractError("request must be a JSON object");
  if (request.contains("version") && request["version"] != kVersion) {
    throw ContractError("unsupported request version");
  }
}

const Json& member(const Json& request, const char* key) {
  auto it = request.find(key);
  if (it == request.end()) throw ContractError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t size_field(const Json& request, const char* key) {
  const Json& v = member(request, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ContractError(std::string(key) + ": expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

SkewTuple pair_from(const Json& j, const std::string& path) {
  SkewTuple a = skew_from_json(j, path);
  if (a.length() != 2) throw ContractError(path + ": expected a pair (two matrices)");
  return a;
}

Json response() { return {{"version", kVersion}}; }

// Model and default presentation for a verify/present request.
struct Subject {
  SkewTuple forms;
  Presentation presentation;
};

Subject subject_from(const Json& request) {
  const Prime p = prime_from_json(member(request, "p"));
  if (request.contains("n1")) {
    const Json& n1 = request["n1"];
    const std::size_t k = size_field(n1, "k"), l = size_field(n1, "l");
    return {n1_tuple(p, k, l), presentation_n1(p, k, l)};
  }
  const ClassFunction rho = class_function_from_json(member(request, "rho"), p);
  return {canonical_pair(rho), build_presentation(rho)};
}

}  // namespace

Json cmd_canon(const Json& request) {
  check_version(request);
  const SkewTuple a = pair_from(request, "");
  const auto ct = congruence_transform(a);
  Json out = response();
  out["rho"] = to_json(ct.rho);
  out["rho_weak_canonical"] = to_json(orbit_canonical(ct.rho));
  out["transform"] = to_json(ct.P.matrix());
  return out;
}

Json cmd_iso(const Json& request) {
  check_version(request);
  const SkewTuple a = pair_from(member(request, "a"), "a");
  const SkewTuple b = pair_from(member(request, "b"), "b");
  Json out = response();
  const bool iso = decide_isomorphic(a, b);
  out["isomorphic"] = iso;
  if (!iso) return out;
  const auto cert = find_certificate(a, b);
  if (!cert) throw VerificationError("iso: no certificate for weakly congruent pairs");
  Json c = {{"P", to_json(cert->P.matrix())}, {"Q", to_json(cert->Q.matrix())}};
  const GroupModel ga(a), gb(b);
  const IsomorphismMap phi(ga, gb, cert->P, cert->Q);
  try {
    const auto check = check_isomorphism_map(phi, ga, gb, 2);
    c["homomorphism_check"] = {{"pass", check.pass},
                               {"mode", check.exhaustive_pairs ? "pairs" : "generators"},
                               {"bottom_exponent", 2},
                               {"checked", check.checked}};
    if (!check.pass) throw VerificationError("iso: certificate failed: " + check.message);
  } catch (const ResourceGuardError&) {
    c["homomorphism_check"] = {{"pass", nullptr}, {"mode", "skipped"}};
  }
  out["certificate"] = std::move(c);
  return out;
}

Json cmd_classes(const Json& request) {
  check_version(request);
  const Prime p = prime_from_json(member(request, "p"));
  const std::size_t m = size_field(request, "m");
  const auto classes = enumerate_classes(p, m);
  Json out = response();
  out["p"] = p.value();
  out["m"] = m;
  out["count"] = classes.size();
  Json list = Json::array();
  for (const auto& rho : classes) list.push_back(to_json(rho));
  out["classes"] = std::move(list);
  return out;
}

Json cmd_present(const Json& request, std::string* text) {
  check_version(request);
  const Subject s = subject_from(request);
  if (text) *text = presentation_text(s.presentation);
  Json out = response();
  out["presentation"] = to_json(s.presentation);
  return out;
}

Json cmd_verify(const Json& request) {
  check_version(request);
  const Subject s = subject_from(request);
  const Presentation pres = request.contains("presentation")
                                ? presentation_from_json(request["presentation"])
                                : s.presentation;
  const GroupModel g(s.forms);
  Json out = response();
  out["report"] = to_json(verify_presentation(g, pres));
  return out;
}

Json cmd_cocycle(const Json& request) {
  check_version(request);
  Json out = response();
  if (request.contains("mu")) {
    const Cocycle mu = cocycle_from_json(request["mu"]);
    const bool normalized = is_normalized(mu);
    const auto violation = cocycle_violation(mu);
    out["is_normalized"] = normalized;
    out["is_cocycle"] = !violation.has_value();
    if (violation) out["violation"] = {(*violation)[0], (*violation)[1], (*violation)[2]};
    if (normalized && !violation) out["tau"] = to_json(tau(mu));
    return out;
  }
  const SkewTuple t = skew_from_json(request, "");
  const Cocycle mu = cocycle_from_form(t);
  out["mu"] = to_json(mu);
  out["tau"] = to_json(tau(mu));
  out["is_cocycle"] = is_cocycle(mu);
  out["is_normalized"] = is_normalized(mu);
  return out;
}

namespace {

Json error_json(const char* kind, const std::string& message) {
  return {{"version", kVersion}, {"error", {{"kind", kind}, {"message", message}}}};
}

class GuardOverride {
 public:
  explicit GuardOverride(std::optional<std::uint64_t> limit) : active_(limit.has_value()) {
    if (active_) {
      saved_ = enum_limit_override();
      set_enum_limit_override(limit);
    }
  }
  ~GuardOverride() {
    if (active_) set_enum_limit_override(saved_);
  }
  GuardOverride(const GuardOverride&) = delete;
  GuardOverride& operator=(const GuardOverride&) = delete;

 private:
  bool active_;
  std::optional<std::uint64_t> saved_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& diag) {
  CLI::App app{"Classification of skew pairs and nilpotent Chernikov p-groups with elementary top"};
  app.require_subcommand(1);
  std::string input_path;
  std::optional<std::uint64_t> max_enum;
  bool accept_cost = false;
  bool text = false;
  app.add_option("--input", input_path, "Read the request from this file instead of stdin");
  app.add_option("--max-enum", max_enum, "Override every enumeration guard (needs --accept-cost)");
  app.add_flag("--accept-cost", accept_cost, "Acknowledge that --max-enum may run for a long time");
  app.add_subcommand("canon", "Congruence invariants, weak canonical form and transform of a pair");
  app.add_subcommand("iso", "Decide isomorphism of G(A) and G(B), with a certificate");
  app.add_subcommand("classes", "Enumerate weak-congruence classes of m x m pairs");
  app.add_subcommand("present", "Presentation of G(rho), or of G_k x H_l for n = 1")
      ->add_flag("--text", text, "Emit the text format instead of JSON");
  app.add_subcommand("verify", "Check a presentation against the group model");
  app.add_subcommand("cocycle", "Cocycle table of a form, or tau of a given table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, diag);
  } catch (const CLI::ParseError& e) {
    out << error_json("validation", e.what()).dump(2) << "\n";
    return static_cast<int>(ExitCode::validation);
  }

  try {
    if (max_enum && !accept_cost) {
      throw ContractError("--max-enum requires --accept-cost");
    }
    const GuardOverride guard(max_enum);
    std::string body;
    if (!input_path.empty()) {
      std::ifstream file(input_path);
      if (!file) throw ContractError("cannot open input file " + input_path);
      body.assign(std::istreambuf_iterator<char>(file), {});
    } else {
      body.assign(std::istreambuf_iterator<char>(in), {});
    }
    Json request;
    try {
      request = Json::parse(body);
    } catch (const Json::parse_error& e) {
      throw ContractError(std::string("invalid JSON: ") + e.what());
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    Json result;
    if (cmd == "canon") result = cmd_canon(request);
    else if (cmd == "iso") result = cmd_iso(request);
    else if (cmd == "classes") result = cmd_classes(request);
    else if (cmd == "verify") result = cmd_verify(request);
    else if (cmd == "cocycle") result = cmd_cocycle(request);
    else {
      std::string rendered;
      result = cmd_present(request, &rendered);
      if (text) {
        out << rendered;
        return 0;
      }
    }
    out << result.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    out << error_json(e.kind(), e.what()).dump(2) << "\n";
    return static_cast<int>(e.code());
  } catch (const Json::exception& e) {
    out << error_json("validation", e.what()).dump(2) << "\n";
    return static_cast<int>(ExitCode::validation);
  }
}

}  // namespace pencilform
