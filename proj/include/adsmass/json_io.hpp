#pragma once

// JSON schemas shared by the CLI:
//   ConservedCharges {"e": x, "p": [..], "c": [..], "j": [..]}
//   KillingField     {"A": x, "B": [..], "C": [..], "D": [..]}
//   Spinor           {"psi": [[re, im] x 4]}

#include "adsmass/rest_mass.hpp"
#include "adsmass/spinor_preimage.hpp"

#include <json.hpp>

#include <charconv>
#include <string>
#include <string_view>

namespace adsmass {

using json = nlohmann::json;

namespace detail {
inline Vec3 vec3_from(const json& j, const char* key) {
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != 3) throw Error(ErrorKind::BadIndex, std::string(key) + " must be a 3-vector");
  return {a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()};
}
inline json vec_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}
inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }
}  // namespace detail

inline json to_json(const KillingField& K) {
  return {{"A", K.A}, {"B", detail::vec_json(K.B)}, {"C", detail::vec_json(K.C)}, {"D", detail::vec_json(K.D)}};
}

inline KillingField killing_field_from_json(const json& j) {
  return {j.at("A").get<double>(), detail::vec3_from(j, "B"), detail::vec3_from(j, "C"), detail::vec3_from(j, "D")};
}

inline json to_json(const ConservedCharges& mu) {
  return {{"e", mu.e}, {"p", detail::vec_json(mu.p)}, {"c", detail::vec_json(mu.c)}, {"j", detail::vec_json(mu.j)}};
}

inline ConservedCharges charges_from_json(const json& j) {
  return {j.at("e").get<double>(), detail::vec3_from(j, "p"), detail::vec3_from(j, "c"), detail::vec3_from(j, "j")};
}

inline json to_json(const Spinor& psi) {
  json a = json::array();
  for (int i = 0; i < 4; ++i) a.push_back(detail::complex_json(psi[i]));
  return {{"psi", a}};
}

inline Spinor spinor_from_json(const json& j) {
  const json& a = j.at("psi");
  if (!a.is_array() || a.size() != 4) throw Error(ErrorKind::BadIndex, "psi must have four components");
  Spinor psi;
  for (int i = 0; i < 4; ++i) {
    const json& z = a.at(static_cast<std::size_t>(i));
    if (!z.is_array() || z.size() != 2) throw Error(ErrorKind::BadIndex, "spinor components are [re, im] pairs");
    psi[i] = Complex(z.at(0).get<double>(), z.at(1).get<double>());
  }
  return psi;
}

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (also with j for the unit).
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  auto bad = [&] { return Error(ErrorKind::BadIndex, "cannot parse complex number '" + std::string(text) + "'"); };
  auto number = [&](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    if (t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) throw bad();
    return v;
  };
  if (s.empty()) throw bad();
  if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
  const std::string_view body(s.data(), s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string_view::npos) return {0.0, number(body)};
  return {number(body.substr(0, split)), number(body.substr(split))};
}

/// Comma-separated list of four complex components.
inline Spinor parse_spinor(std::string_view text) {
  Spinor psi;
  int i = 0;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (i >= 4) throw Error(ErrorKind::BadIndex, "psi needs exactly four components");
    psi[i++] = parse_complex(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (i != 4) throw Error(ErrorKind::BadIndex, "psi needs exactly four components");
  return psi;
}

inline json to_json(const MembershipReport& r) {
  json res = json::object();
  for (const auto& x : r.residuals) res[x.name] = x.value;
  return {{"member", r.member}, {"residuals", res}, {"tolerance", r.tolerance}};
}

inline json to_json(const HullDecomposition& h) {
  json terms = json::array();
  for (const auto& t : h.terms) terms.push_back({{"lambda", t.lambda}, {"S", to_json(t.S)}});
  return {{"terms", terms}, {"reconstruction_error", h.reconstruction_error}};
}

inline json to_json(const MassReport& r) {
  json flags = json::array();
  for (RigidityFlag f : r.flags) flags.push_back(std::string(to_string(f)));
  return {{"m", r.m},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"attained", r.attained},
          {"optimal_observer", r.optimal_observer ? to_json(*r.optimal_observer) : json(nullptr)},
          {"flags", flags},
          {"q_min_eigenvalue", r.q_min_eigenvalue}};
}

inline json to_json(const EnergyMatrix& E) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(detail::complex_json(E.Q(r, c)));
    rows.push_back(row);
  }
  return {{"Q", rows}, {"eigenvalues", detail::vec_json(E.eigenvalues)}};
}

}  // namespace adsmass
