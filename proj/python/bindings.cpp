#include <pybind11/pybind11.h>

#include <string>

#include "json.hpp"
#include "pencilform/cli.hpp"
#include "pencilform/error.hpp"
#include "pencilform/json_io.hpp"
#include "pencilform/weakcong.hpp"

namespace py = pybind11;
using namespace pencilform;

namespace {

Json to_json_value(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    Json out = Json::object();
    for (const auto& [k, v] : obj.cast<py::dict>()) out[py::str(k).cast<std::string>()] = to_json_value(v);
    return out;
  }
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    Json out = Json::array();
    for (const auto& v : obj) out.push_back(to_json_value(v));
    return out;
  }
  throw ContractError("unsupported value of type " + py::str(py::type::of(obj)).cast<std::string>());
}

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return std::move(out);
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return std::move(out);
    }
    default: throw ContractError("unsupported JSON value");
  }
}

Json pair_request(int p, const py::object& mats) {
  Json req = {{"p", p}, {"mats", to_json_value(mats)}};
  req["m"] = req["mats"].empty() ? 0 : req["mats"][0].size();
  return req;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Skew pairs over F_p and nilpotent Chernikov p-groups with elementary top";

  py::register_exception_translator([](std::exception_ptr ptr) {
    if (!ptr) return;
    try {
      std::rethrow_exception(ptr);
    } catch (const Error& e) {
      py::object cls;
      switch (e.code()) {
        case ExitCode::validation: cls = py::module_::import("pencilform").attr("ValidationError"); break;
        case ExitCode::unsupported_characteristic:
          cls = py::module_::import("pencilform").attr("UnsupportedCharacteristic");
          break;
        case ExitCode::resource_guard: cls = py::module_::import("pencilform").attr("ResourceGuardError"); break;
        default: cls = py::module_::import("pencilform").attr("VerificationError"); break;
      }
      PyErr_SetString(cls.ptr(), e.what());
    }
  });

  m.def("canon", [](const py::object& req) { return to_python(cmd_canon(to_json_value(req))); },
        "Congruence invariants rho, its weak canonical form and a transform P.");
  m.def("iso", [](const py::object& a, const py::object& b) {
          return to_python(cmd_iso(Json{{"a", to_json_value(a)}, {"b", to_json_value(b)}}));
        }, "Whether G(a) and G(b) are isomorphic, with a certificate.");
  m.def("classes", [](int p, int size) { return to_python(cmd_classes(Json{{"p", p}, {"m", size}})); },
        py::arg("p"), py::arg("m"));
  m.def("present", [](const py::object& req) {
          std::string text;
          Json out = cmd_present(to_json_value(req), &text);
          out["text"] = text;
          return to_python(out);
        });
  m.def("verify", [](const py::object& req) { return to_python(cmd_verify(to_json_value(req))); });
  m.def("cocycle", [](const py::object& req) { return to_python(cmd_cocycle(to_json_value(req))); });

  m.def("invariants", [](int p, const py::object& mats) {
          return to_python(cmd_canon(pair_request(p, mats))["rho"]);
        }, py::arg("p"), py::arg("mats"), "rho for a pair given as [A1, A2].");
  m.def("count_classes", [](int p, std::size_t size) { return count_classes(prime_from_json(p), size); },
        py::arg("p"), py::arg("m"));
  m.def("is_isomorphic", [](int p, const py::object& a, const py::object& b) {
          return cmd_iso(Json{{"a", pair_request(p, a)}, {"b", pair_request(p, b)}})["isomorphic"].get<bool>();
        }, py::arg("p"), py::arg("a"), py::arg("b"));
}
