// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Python bindings. Key material, headers and envelopes cross the boundary as
// their JSON text; session keys and payloads as bytes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "abbe/abbe.hpp"
#include "abbe/content.hpp"
#include "abbe/errors.hpp"
#include "abbe/formats.hpp"
#include "abbe/rooms.hpp"

namespace py = pybind11;

namespace abbe {
namespace {

PyObject* g_error = nullptr;
PyObject* g_schema = nullptr;
PyObject* g_not_authorized = nullptr;

std::vector<std::uint8_t> to_vec(const py::bytes& b) {
  std::string_view s = b;
  return {s.begin(), s.end()};
}

py::bytes to_py(std::span<const std::uint8_t> v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

Rng make_rng(const std::optional<py::bytes>& seed) {
  if (!seed) return Rng::from_os();
  auto s = to_vec(*seed);
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "seed must not be empty");
  return Rng(s);
}

SessionKey session_key(const py::bytes& b) {
  auto v = to_vec(b);
  if (v.size() != 32) throw Error(ErrorCode::kInvalidArgument, "session key must be 32 bytes");
  SessionKey k;
  std::copy(v.begin(), v.end(), k.bytes.begin());
  return k;
}

AccessPolicy parse_policy(const std::string& text) { return formats::policy_from_json(formats::parse(text)); }

class Keys {
 public:
  explicit Keys(formats::KeysFile f) : f_(std::move(f)) {}

  static Keys from_json(const std::string& text) { return Keys(formats::load_keys(text)); }
  std::string to_json() const { return formats::save_keys(f_); }

  std::vector<std::string> users() const {
    std::vector<std::string> out;
    for (const auto& k : f_.user_keys) out.push_back(k.user_id);
    return out;
  }

  std::string curve_json() const { return formats::canonical(formats::curve_to_json(f_.mpk.curve->params())); }

  py::tuple encapsulate(const std::string& policy, const std::optional<py::bytes>& seed) const {
    Rng rng = make_rng(seed);
    auto [key, header] = abbe::encapsulate(f_.mpk, parse_policy(policy), rng);
    return py::make_tuple(to_py(key.bytes), formats::save_header(formats::header_file_from(header)));
  }

  std::optional<py::bytes> decapsulate(const std::string& header_json, const std::string& user) const {
    AbbeHeader header = formats::to_abbe_header(formats::load_header(header_json), *f_.mpk.curve);
    auto key = abbe::decapsulate(f_.mpk, find(user), header);
    if (!key) return std::nullopt;
    return to_py(key->bytes);
  }

  std::string post(const std::string& policy, const std::string& sender, const py::bytes& plaintext,
                   const std::optional<py::bytes>& seed, std::optional<std::int64_t> timestamp) const {
    Rng rng = make_rng(seed);
    auto body = to_vec(plaintext);
    return rooms::envelope_to_json(rooms::post_message(f_.mpk, parse_policy(policy), sender, body, rng, timestamp));
  }

  std::optional<py::dict> receive(const std::string& envelope, const std::string& user) const {
    auto env = rooms::envelope_from_json(envelope, *f_.mpk.curve);
    auto got = rooms::receive_message(env, find(user), f_.mpk);
    if (!got) return std::nullopt;
    py::dict d;
    d["room"] = got->room.hex();
    d["sender"] = got->sender_id;
    d["timestamp"] = got->timestamp;
    d["plaintext"] = to_py(got->plaintext);
    return d;
  }

 private:
  const UserPrivateKey& find(const std::string& user) const {
    const UserPrivateKey* k = f_.find_key(user);
    if (k == nullptr) throw Error(ErrorCode::kUnknownUser, "no key for user '" + user + "'");
    return *k;
  }

  formats::KeysFile f_;
};

void raise(PyObject* type, const Error& e) {
  py::object exc = py::reinterpret_borrow<py::object>(type)(e.what());
  exc.attr("code") = error_code_name(e.code());
  if (const auto* s = dynamic_cast<const SchemaViolation*>(&e)) exc.attr("path") = s->path();
  PyErr_SetObject(type, exc.ptr());
}

}  // namespace
}  // namespace abbe

PYBIND11_MODULE(_abbe, m) {
  using namespace abbe;
  m.doc() = "Attribute-based broadcast encryption over BN curves.";

  g_error = PyErr_NewException("abbe_ndn.AbbeError", PyExc_ValueError, nullptr);
  g_schema = PyErr_NewException("abbe_ndn.SchemaViolation", g_error, nullptr);
  g_not_authorized = PyErr_NewException("abbe_ndn.NotAuthorized", g_error, nullptr);
  m.add_object("AbbeError", py::handle(g_error));
  m.add_object("SchemaViolation", py::handle(g_schema));
  m.add_object("NotAuthorized", py::handle(g_not_authorized));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SchemaViolation& e) {
      raise(g_schema, e);
    } catch (const Error& e) {
      raise(e.code() == ErrorCode::kNotAuthorized ? g_not_authorized : g_error, e);
    }
  });

  m.def(
      "curve_json",
      [](const std::optional<py::bytes>& seed) {
        CurvePtr c = seed ? generate_curve(128, to_vec(*seed)) : default_curve();
        return formats::canonical(formats::curve_to_json(c->params()));
      },
      py::arg("seed") = py::none(), "Curve description; the pinned default curve when no seed is given.");

  py::class_<Keys>(m, "Keys")
      .def_static("from_json", &Keys::from_json, py::arg("text"))
      .def("to_json", &Keys::to_json)
      .def_property_readonly("users", &Keys::users)
      .def("curve_json", &Keys::curve_json)
      .def("encapsulate", &Keys::encapsulate, py::arg("policy"), py::arg("seed") = py::none(),
           "Returns (session_key, header_json) for a policy given as JSON.")
      .def("decapsulate", &Keys::decapsulate, py::arg("header"), py::arg("user"),
           "Session key, or None when the user is not a recipient.")
      .def("post_message", &Keys::post, py::arg("policy"), py::arg("sender"), py::arg("plaintext"),
           py::arg("seed") = py::none(), py::arg("timestamp") = py::none())
      .def("receive_message", &Keys::receive, py::arg("envelope"), py::arg("user"));

  m.def(
      "generate_keys",
      [](const std::string& config, const std::optional<py::bytes>& seed) {
        Rng rng = make_rng(seed);
        return Keys(formats::generate_keys(formats::load_config(config), rng));
      },
      py::arg("config"), py::arg("seed") = py::none());

  m.def(
      "policy_satisfies",
      [](const std::string& policy, const std::string& user, const std::vector<std::string>& attributes) {
        return abbe::policy_satisfies(parse_policy(policy), {user, {attributes.begin(), attributes.end()}});
      },
      py::arg("policy"), py::arg("user"), py::arg("attributes"));

  m.def(
      "room_id", [](const std::string& policy) { return rooms::room_id(parse_policy(policy)).hex(); },
      py::arg("policy"));

  m.def(
      "encrypt_object",
      [](const py::bytes& key, const py::bytes& plaintext, const std::string& header_name,
         const std::optional<py::bytes>& seed) {
        Rng rng = make_rng(seed);
        auto body = to_vec(plaintext);
        auto obj = content::encrypt_object(session_key(key), body, header_name, rng);
        return to_py(content::serialize(obj));
      },
      py::arg("key"), py::arg("plaintext"), py::arg("header_name"), py::arg("seed") = py::none(),
      "Encrypts into the on-disk .aes layout.");

  m.def(
      "decrypt_object",
      [](const py::bytes& key, const py::bytes& data) {
        auto raw = to_vec(data);
        auto obj = content::parse(raw);
        auto plain = content::decrypt_object(session_key(key), obj);
        return py::make_tuple(to_py(plain), obj.header_name);
      },
      py::arg("key"), py::arg("data"), "Returns (plaintext, header_name).");
}
