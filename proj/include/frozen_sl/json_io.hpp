#pragma once

// JSON schema shared by the command-line tool:
//   config    {"alpha": 0|1, "beta": 0|1, "k": int}
//   potential {"type": "grid", "values": [[re, im], ...]}            (k*m midpoint samples)
//             {"type": "fourier-cos", "values": [c_0, c_1, ...]}      (sum c_n cos(n x))
//             {"type": "fourier", "cos": [c_0, ...], "sin": [s_1, ...]}
//   spectrum  {"values": [[re, im], ...]}
// Complex entries may also be plain numbers.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "frozen_sl/forward.hpp"

namespace frozen_sl::io {

using json = nlohmann::json;

inline cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorKind::InvalidInput, "expected a number or [re, im], got " + j.dump());
}

inline std::vector<cplx> parse_complex_array(const json& j, const std::string& what) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, what + " must be an array");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(parse_complex(v));
  return out;
}

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json complex_array_to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back(complex_to_json(z));
  return out;
}

inline const json& member(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::InvalidInput, what + " is missing \"" + key + "\"");
  return j.at(key);
}

inline int integer_member(const json& j, const char* key, const std::string& what) {
  const json& v = member(j, key, what);
  if (!v.is_number_integer()) fail(ErrorKind::InvalidInput, what + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

inline ProblemConfig parse_config(const json& j) {
  return ProblemConfig(integer_member(j, "alpha", "config"), integer_member(j, "beta", "config"),
                       integer_member(j, "k", "config"));
}

inline json config_to_json(const ProblemConfig& cfg) {
  return {{"alpha", cfg.alpha()}, {"beta", cfg.beta()}, {"k", cfg.k()}};
}

/// A grid potential needs k so its samples can be split into blocks.
inline Potential parse_potential(const json& j, int k) {
  const std::string type = member(j, "type", "potential").is_string() ? j.at("type").get<std::string>() : "";
  if (type == "grid") {
    auto values = parse_complex_array(member(j, "values", "potential"), "potential values");
    if (values.empty() || values.size() % k != 0)
      fail(ErrorKind::InvalidInput, "grid potential length " + std::to_string(values.size()) +
                                        " is not a positive multiple of k = " + std::to_string(k));
    const BlockGrid grid(k, int(values.size()) / k);
    return Potential(GridSamples(grid, std::move(values)));
  }
  if (type == "fourier-cos") return Potential::fourier_cos(parse_complex_array(member(j, "values", "potential"), "potential values"));
  if (type == "fourier") {
    TrigSeries s;
    if (j.contains("cos")) s.cos_coeffs = parse_complex_array(j.at("cos"), "potential cos");
    if (j.contains("sin")) {
      s.sin_coeffs = parse_complex_array(j.at("sin"), "potential sin");
      s.sin_coeffs.insert(s.sin_coeffs.begin(), 0.0);
    }
    return Potential(std::move(s));
  }
  fail(ErrorKind::InvalidInput, "potential type must be \"grid\", \"fourier-cos\" or \"fourier\"");
}

inline json potential_to_json(const Potential& q) {
  if (q.is_grid()) {
    const auto& g = q.grid();
    return {{"type", "grid"}, {"k", g.grid.k}, {"m", g.grid.m}, {"values", complex_array_to_json(g.values)}};
  }
  const TrigSeries& s = q.series();
  if (s.sin_coeffs.size() <= 1) return {{"type", "fourier-cos"}, {"values", complex_array_to_json(s.cos_coeffs)}};
  return {{"type", "fourier"},
          {"cos", complex_array_to_json(s.cos_coeffs)},
          {"sin", complex_array_to_json(std::vector<cplx>(s.sin_coeffs.begin() + 1, s.sin_coeffs.end()))}};
}

inline Spectrum parse_spectrum(const json& j, const ProblemConfig& cfg) {
  auto values = parse_complex_array(member(j, "values", "spectrum"), "spectrum values");
  if (values.empty()) fail(ErrorKind::InvalidInput, "spectrum is empty");
  return Spectrum(cfg, std::move(values));
}

inline json spectrum_to_json(const Spectrum& spec) {
  return {{"config", config_to_json(spec.config())},
          {"values", complex_array_to_json(spec.values())},
          {"residuals", complex_array_to_json(spec.residuals())}};
}

namespace detail {

inline void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

inline void write(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      // Short arrays of scalars (complex pairs) stay on one line.
      const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (j.empty() || flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Deterministic text: sorted keys, every float with 17 significant digits.
inline std::string dump(const json& j) {
  std::ostringstream os;
  detail::write(os, j, 0);
  os << "\n";
  return os.str();
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, "malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
  out << dump(j);
}

}  // namespace frozen_sl::io
