#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "lcomm/spectral.hpp"

namespace lcomm::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolName = "lcomm";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Backend { exact, flt };

inline std::string_view backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

inline Backend parse_backend(const json& j) {
  if (!j.is_string()) throw Error(ErrorKind::ParseError, "\"backend\" must be a string");
  const auto s = j.get<std::string>();
  if (s == "exact") return Backend::exact;
  if (s == "float") return Backend::flt;
  throw Error(ErrorKind::ParseError, "unknown backend '" + s + "'");
}

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

inline json to_json(const GaussRational& z) {
  return json{{"re", rational_to_string(z.real())}, {"im", rational_to_string(z.imag())}};
}

inline json to_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

template <Field F>
F scalar_from_json(const json& j);

template <>
inline GaussRational scalar_from_json<GaussRational>(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_string() || !j["im"].is_string())
    throw Error(ErrorKind::ParseError, "exact scalar must be {\"re\":\"p/q\",\"im\":\"p/q\"}");
  return GaussRational::from_strings(j["re"].get<std::string>(), j["im"].get<std::string>());
}

template <>
inline Complex scalar_from_json<Complex>(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() || !j["im"].is_number())
    throw Error(ErrorKind::ParseError, "float scalar must be a number or {\"re\":x,\"im\":y}");
  return {j["re"].get<double>(), j["im"].get<double>()};
}

inline std::size_t dim_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw Error(ErrorKind::ParseError, std::string("missing or invalid \"") + key + "\"");
  return j[key].get<std::size_t>();
}

// ---------------------------------------------------------------------------
// Matrices and subspaces
// ---------------------------------------------------------------------------

template <Field F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"backend", FieldTraits<F>::backend}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline Backend matrix_backend(const json& j) {
  if (!j.is_object() || !j.contains("backend")) throw Error(ErrorKind::ParseError, "matrix file needs \"backend\"");
  return parse_backend(j["backend"]);
}

template <Field F>
Matrix<F> matrix_from_json(const json& j) {
  if (matrix_backend(j) != (is_exact_v<F> ? Backend::exact : Backend::flt))
    throw Error(ErrorKind::ParseError, "matrix backend differs from the expected one");
  const std::size_t rows = dim_from_json(j, "rows"), cols = dim_from_json(j, "cols");
  if (rows == 0 || cols == 0) throw Error(ErrorKind::ParseError, "matrix dimensions must be positive");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != rows)
    throw Error(ErrorKind::ParseError, "\"entries\" must hold exactly rows arrays");
  Matrix<F> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j["entries"][r];
    if (!row.is_array() || row.size() != cols) throw Error(ErrorKind::ParseError, "matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json<F>(row[c]);
  }
  return m;
}

template <Field F>
json subspace_to_json(const Subspace<F>& s) {
  json basis = json::array();
  for (const auto& v : s.basis()) {
    json col = json::array();
    for (const auto& x : v) col.push_back(to_json(x));
    basis.push_back(std::move(col));
  }
  return json{{"ambient_dim", s.ambient_dim()}, {"basis", std::move(basis)}};
}

template <Field F>
struct ParsedSubspace {
  Subspace<F> space;
  bool was_canonical = true;
};

template <Field F>
ParsedSubspace<F> subspace_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "subspace file must be an object");
  const std::size_t n = dim_from_json(j, "ambient_dim");
  if (!j.contains("basis") || !j["basis"].is_array()) throw Error(ErrorKind::ParseError, "\"basis\" must be an array");
  std::vector<Vector<F>> cols;
  for (const auto& col : j["basis"]) {
    if (!col.is_array() || col.size() != n)
      throw Error(ErrorKind::ParseError, "basis column length differs from ambient_dim");
    Vector<F> v;
    for (const auto& x : col) v.push_back(scalar_from_json<F>(x));
    cols.push_back(std::move(v));
  }
  ParsedSubspace<F> out{canonicalize(cols, n), true};
  if constexpr (is_exact_v<F>) out.was_canonical = out.space.basis() == cols;
  else out.was_canonical = out.space.dim() == cols.size();
  return out;
}

/// Exact iff some entry is a string-valued object; an empty basis defers to `fallback`.
inline Backend subspace_backend(const json& j, Backend fallback) {
  if (j.is_object() && j.contains("basis") && j["basis"].is_array())
    for (const auto& col : j["basis"])
      if (col.is_array())
        for (const auto& x : col) {
          if (x.is_object() && x.contains("re")) return x["re"].is_string() ? Backend::exact : Backend::flt;
          if (x.is_number()) return Backend::flt;
        }
  return fallback;
}

template <Field F>
json spectrum_to_json(const SpectrumSpec<F>& s) {
  json roots = json::array();
  for (const auto& r : s.roots) roots.push_back(json{{"value", to_json(r.value)}, {"multiplicity", r.multiplicity}});
  return json{{"roots", std::move(roots)}};
}

template <Field F>
SpectrumSpec<F> spectrum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("roots") || !j["roots"].is_array())
    throw Error(ErrorKind::ParseError, "spectrum file needs a \"roots\" array");
  SpectrumSpec<F> s;
  s.source = SpectrumSource::user_provided;
  for (const auto& r : j["roots"]) {
    if (!r.is_object() || !r.contains("value") || !r.contains("multiplicity") || !r["multiplicity"].is_number_unsigned())
      throw Error(ErrorKind::ParseError, "spectrum root needs \"value\" and positive \"multiplicity\"");
    s.roots.push_back({scalar_from_json<F>(r["value"]), r["multiplicity"].get<std::size_t>()});
  }
  return s;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// FNV-1a, 64 bit, as 16 lowercase hex digits.
inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, what + " is not valid JSON (byte " + std::to_string(e.byte) + ")");
  }
}

/// Writes to a sibling temp file, then renames over the target.
inline void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorKind::ParseError, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::ParseError, "cannot move output into '" + path + "'");
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lcomm::io
