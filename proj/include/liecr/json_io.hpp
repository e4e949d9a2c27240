#ifndef LIECR_JSON_IO_HPP
#define LIECR_JSON_IO_HPP

// Loading algebras and morphisms from JSON files or command-line strings.
//
// Algebra files:
//   { "name": "...", "field": "real" | "complex", "dim": n,
//     "basis": ["e1", ...],
//     "brackets": [[i, j, [[k, re, im], ...]], ...],   // 0-indexed, [b_i, b_j]
//     "torus": [[...], ...] }                             // optional, real coordinates
// Only one of [b_i, b_j], [b_j, b_i] needs to be listed.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <string>

#include "liecr/builtins.hpp"
#include "liecr/transversality.hpp"

namespace liecr {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ArgumentError("'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace detail {
inline bool small_integer(double x) {
  return std::isfinite(x) && std::abs(x) < 1e12 && x == std::round(x);
}
}  // namespace detail

inline LieAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("algebra spec must be a JSON object");
  const std::string field_s = j.value("field", std::string("real"));
  if (field_s != "real" && field_s != "complex") throw ArgumentError("field must be \"real\" or \"complex\"");
  const Field field = field_s == "real" ? Field::real : Field::complex;
  std::vector<std::string> names;
  if (j.contains("basis")) {
    names = j.at("basis").get<std::vector<std::string>>();
  } else if (j.contains("dim")) {
    const int n = j.at("dim").get<int>();
    if (n < 1) throw ArgumentError("dim must be positive");
    for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  } else {
    throw ArgumentError("algebra spec needs \"basis\" or \"dim\"");
  }
  if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(names.size())) {
    throw ArgumentError("dim does not match the number of basis names");
  }
  const int n = static_cast<int>(names.size());
  std::vector<StructureConstant<Complex>> cs;
  bool integral = true;
  if (j.contains("brackets")) {
    for (const auto& entry : j.at("brackets")) {
      if (!entry.is_array() || entry.size() != 3 || !entry[2].is_array()) {
        throw ArgumentError("each bracket entry must be [i, j, [[k, re, im], ...]]");
      }
      const int a = entry[0].get<int>();
      const int b = entry[1].get<int>();
      for (const auto& term : entry[2]) {
        if (!term.is_array() || term.size() < 2 || term.size() > 3) {
          throw ArgumentError("bracket terms must be [k, re] or [k, re, im]");
        }
        const int k = term[0].get<int>();
        const double re = term[1].get<double>();
        const double im = term.size() == 3 ? term[2].get<double>() : 0.0;
        if (a < 0 || a >= n || b < 0 || b >= n || k < 0 || k >= n) throw ArgumentError("bracket index out of range");
        integral = integral && detail::small_integer(re) && detail::small_integer(im);
        cs.push_back({a, b, k, Complex(re, im)});
      }
    }
  }
  const std::string name = j.value("name", std::string("custom"));
  LieAlgebra alg = [&] {
    if (!integral) return LieAlgebra::from_constants(field, names, cs, name);
    std::vector<StructureConstant<GaussianRational>> exact;
    for (const auto& c : cs) {
      exact.push_back({c.i, c.j, c.k,
                       GaussianRational(Rational(static_cast<std::int64_t>(c.value.real())),
                                        Rational(static_cast<std::int64_t>(c.value.imag())))});
    }
    return LieAlgebra::from_exact(field, names, exact, name);
  }();
  if (field == Field::complex) {
    // coordinates are taken to be the complexification of a real form
    alg = alg.with_conjugation(Eigen::MatrixXcd::Identity(n, n));
  }
  if (j.contains("torus")) {
    std::vector<Eigen::VectorXd> torus;
    for (const auto& t : j.at("torus")) {
      const auto v = t.get<std::vector<double>>();
      if (static_cast<int>(v.size()) != n) throw ArgumentError("torus vector has the wrong length");
      torus.emplace_back(Eigen::Map<const Eigen::VectorXd>(v.data(), n));
    }
    alg = alg.with_torus(std::move(torus));
  }
  return alg;
}

/// Built-in name ("su2", "su(3)", "so3", "u1") or path to an algebra file.
inline LieAlgebra load_algebra(const std::string& name_or_path) {
  if (is_builtin_name(name_or_path)) return builtin(name_or_path);
  if (std::filesystem::exists(name_or_path)) return algebra_from_json(read_json_file(name_or_path));
  throw ArgumentError("'" + name_or_path + "' is neither a built-in algebra nor a readable file");
}

/// Accepts "re", "re+imi", "re-imi", "imi", "i", "-i" or "[re,im]".
inline Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ArgumentError("empty complex number");
  if (s.front() == '[') {
    try {
      Json j = Json::parse(s);
      if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
      }
    } catch (const Json::exception&) {
    }
    throw ArgumentError("cannot parse complex number '" + raw + "'");
  }
  static const std::regex pure_real(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)$)");
  static const std::regex pure_imag(R"(^([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\*?i$)");
  static const std::regex full(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\*?i$)");
  std::smatch m;
  auto coeff = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (std::regex_match(s, m, pure_real)) return {std::stod(m[1].str()), 0.0};
  if (std::regex_match(s, m, pure_imag)) return {0.0, coeff(m[1].str())};
  if (std::regex_match(s, m, full)) return {std::stod(m[1].str()), coeff(m[2].str())};
  throw ArgumentError("cannot parse complex number '" + raw + "'");
}

/// Inline matrix "[[re,im],...]" listed row-major; q is fixed by the algebra's
/// rank and l by the number of entries. Nested rows of pairs are accepted too.
inline MorphismSpec parse_inline_morphism(const std::string& text, int q) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ArgumentError(std::string("--M is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ArgumentError("--M must be a nonempty JSON array");
  std::vector<Complex> entries;
  auto entry = [](const Json& e) -> Complex {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      return {e[0].get<double>(), e[1].get<double>()};
    }
    if (e.is_string()) return parse_complex(e.get<std::string>());
    throw ArgumentError("--M entries must be numbers, [re, im] pairs or complex strings");
  };
  const bool nested = j[0].is_array() && !j[0].empty() && (j[0][0].is_array() || j[0][0].is_string());
  if (nested) {
    for (const auto& row : j) {
      if (!row.is_array()) throw ArgumentError("--M rows must be arrays");
      for (const auto& e : row) entries.push_back(entry(e));
    }
  } else {
    for (const auto& e : j) entries.push_back(entry(e));
  }
  if (q < 1 || entries.size() % static_cast<std::size_t>(q) != 0) {
    throw ArgumentError("--M has " + std::to_string(entries.size()) + " entries, not a multiple of q = " +
                        std::to_string(q));
  }
  const int l = static_cast<int>(entries.size()) / q;
  Eigen::MatrixXcd M(q, l);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < l; ++c) M(r, c) = entries[static_cast<std::size_t>(r * l + c)];
  return MorphismSpec(q, l, std::move(M));
}

inline MorphismSpec load_morphism_file(const std::string& path) { return morphism_from_json(read_json_file(path)); }

}  // namespace liecr

#endif  // LIECR_JSON_IO_HPP
