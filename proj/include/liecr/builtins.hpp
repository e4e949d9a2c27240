#ifndef LIECR_BUILTINS_HPP
#define LIECR_BUILTINS_HPP

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "liecr/lie_algebra.hpp"

namespace liecr {

namespace detail {

using ExactMatrix = std::vector<GaussianRational>;  // row-major n x n

inline ExactMatrix exact_zero(int n) { return ExactMatrix(static_cast<std::size_t>(n) * n); }

inline ExactMatrix exact_commutator(const ExactMatrix& a, const ExactMatrix& b, int n) {
  ExactMatrix out = exact_zero(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      GaussianRational s;
      for (int m = 0; m < n; ++m) {
        s += a[r * n + m] * b[m * n + c];
        s -= b[r * n + m] * a[m * n + c];
      }
      out[r * n + c] = s;
    }
  }
  return out;
}

/// Basis of su(n) as traceless anti-Hermitian matrices: the diagonal
/// i(E_mm - E_{m+1,m+1}) first, then E_jk - E_kj and i(E_jk + E_kj) for j < k.
inline std::vector<ExactMatrix> su_basis_matrices(int n) {
  std::vector<ExactMatrix> basis;
  const GaussianRational i = GaussianRational::i();
  for (int m = 0; m + 1 < n; ++m) {
    ExactMatrix h = exact_zero(n);
    h[m * n + m] = i;
    h[(m + 1) * n + (m + 1)] = -i;
    basis.push_back(std::move(h));
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ExactMatrix x = exact_zero(n);
      x[j * n + k] = 1;
      x[k * n + j] = -1;
      basis.push_back(std::move(x));
      ExactMatrix y = exact_zero(n);
      y[j * n + k] = i;
      y[k * n + j] = i;
      basis.push_back(std::move(y));
    }
  }
  return basis;
}

/// Coordinates of a traceless anti-Hermitian matrix in su_basis_matrices order.
inline std::vector<GaussianRational> su_coordinates(const ExactMatrix& m, int n) {
  std::vector<GaussianRational> coords;
  Rational running;
  for (int k = 0; k + 1 < n; ++k) {
    running += m[k * n + k].im();  // diagonal entry is i*d_k
    coords.emplace_back(running);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      coords.emplace_back(m[j * n + k].re());
      coords.emplace_back(m[j * n + k].im());
    }
  }
  return coords;
}

}  // namespace detail

/// Compact su(n) over the reals with exact integer structure constants.
/// For n = 2 the basis is (e1, e2, e3) with [e1,e2] = 2e3, [e2,e3] = 2e1,
/// [e3,e1] = 2e2.
inline LieAlgebra su(int n) {
  if (n < 2) throw ArgumentError("su(n) needs n >= 2");
  const auto mats = detail::su_basis_matrices(n);
  const int dim = static_cast<int>(mats.size());
  std::vector<std::string> names;
  if (n == 2) {
    names = {"e1", "e2", "e3"};
  } else {
    for (int m = 0; m + 1 < n; ++m) names.push_back("h" + std::to_string(m + 1));
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        names.push_back("x" + std::to_string(j + 1) + std::to_string(k + 1));
        names.push_back("y" + std::to_string(j + 1) + std::to_string(k + 1));
      }
    }
  }
  std::vector<StructureConstant<GaussianRational>> cs;
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      const auto coords = detail::su_coordinates(detail::exact_commutator(mats[a], mats[b], n), n);
      for (int k = 0; k < dim; ++k) {
        if (!coords[k].is_zero()) cs.push_back({a, b, k, coords[k]});
      }
    }
  }
  std::vector<Eigen::VectorXd> torus;
  for (int m = 0; m + 1 < n; ++m) torus.push_back(Eigen::VectorXd::Unit(dim, m));
  return LieAlgebra::from_exact(Field::real, names, cs, "su(" + std::to_string(n) + ")")
      .with_torus(std::move(torus));
}

inline LieAlgebra su2() { return su(2); }

/// so(3) with [L1,L2] = L3, [L2,L3] = L1, [L3,L1] = L2.
inline LieAlgebra so3() {
  std::vector<StructureConstant<GaussianRational>> cs = {
      {0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}};
  return LieAlgebra::from_exact(Field::real, {"L1", "L2", "L3"}, cs, "so(3)")
      .with_torus({Eigen::VectorXd::Unit(3, 0)});
}

/// Abelian u(1); its generator plays the role of d/dt on a circle factor.
inline LieAlgebra u1() {
  return LieAlgebra::from_exact(Field::real, {"t"}, {}, "u(1)").with_torus({Eigen::VectorXd::Unit(1, 0)});
}

/// Looks up "su2", "su(3)", "so3", "u1", ... Throws UnsupportedError otherwise.
inline LieAlgebra builtin(const std::string& raw) {
  std::string key;
  for (char ch : raw) {
    if (ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch))) continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (key == "so3") return so3();
  if (key == "u1") return u1();
  if (key.size() > 2 && key.rfind("su", 0) == 0 &&
      std::all_of(key.begin() + 2, key.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    if (key.size() > 4) throw UnsupportedError("su(n) built-ins are limited to n <= 99");
    return su(std::stoi(key.substr(2)));
  }
  throw UnsupportedError("unknown built-in algebra '" + raw + "'");
}

inline bool is_builtin_name(const std::string& raw) {
  try {
    (void)builtin(raw);
    return true;
  } catch (const UnsupportedError&) {
    return false;
  }
}

}  // namespace liecr

#endif  // LIECR_BUILTINS_HPP
