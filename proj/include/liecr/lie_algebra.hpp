#ifndef LIECR_LIE_ALGEBRA_HPP
#define LIECR_LIE_ALGEBRA_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "liecr/errors.hpp"
#include "liecr/exact.hpp"
#include "liecr/report.hpp"
#include "liecr/tolerance.hpp"

namespace liecr {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

enum class Field { real, complex };

inline const char* to_string(Field f) { return f == Field::real ? "real" : "complex"; }

/// Coordinate vector over the basis of an ambient algebra.
class Element {
 public:
  Element() = default;
  explicit Element(Eigen::VectorXcd coords) : coords_(std::move(coords)) {}

  static Element zero(int dim) { return Element(Eigen::VectorXcd::Zero(dim)); }
  static Element unit(int dim, int i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(i) = 1.0;
    return Element(std::move(v));
  }

  const Eigen::VectorXcd& coords() const { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }
  Complex operator[](int i) const { return coords_(i); }
  double norm() const { return coords_.norm(); }

  friend Element operator+(const Element& a, const Element& b) {
    check_same(a, b);
    return Element(a.coords_ + b.coords_);
  }
  friend Element operator-(const Element& a, const Element& b) {
    check_same(a, b);
    return Element(a.coords_ - b.coords_);
  }
  friend Element operator*(Complex s, const Element& a) { return Element(s * a.coords_); }
  friend Element operator*(double s, const Element& a) { return Element(s * a.coords_); }

 private:
  static void check_same(const Element& a, const Element& b) {
    if (a.size() != b.size()) throw ArgumentError("element dimension mismatch");
  }
  Eigen::VectorXcd coords_;
};

/// One structure constant c(i,j,k): [b_i, b_j] has coefficient c on b_k.
template <typename Scalar>
struct StructureConstant {
  int i;
  int j;
  int k;
  Scalar value;
};

/// Finite-dimensional Lie algebra given by a basis and structure constants.
///
/// Built-ins carry exact Gaussian-rational constants alongside the floating
/// point table. A complex algebra may designate a compact real form through an
/// anti-linear involution v -> S * conj(v).
class LieAlgebra {
 public:
  static LieAlgebra from_constants(Field field, std::vector<std::string> names,
                                   const std::vector<StructureConstant<Complex>>& constants,
                                   std::string name = "custom") {
    LieAlgebra alg(field, std::move(names), std::move(name));
    const int n = alg.dim();
    std::vector<bool> explicit_pair(static_cast<std::size_t>(n) * n, false);
    for (const auto& c : constants) {
      alg.check_index(c.i);
      alg.check_index(c.j);
      alg.check_index(c.k);
      if (field == Field::real && c.value.imag() != 0.0) {
        throw ArgumentError("real algebra with non-real structure constant");
      }
      if (c.i == c.j) {
        if (c.value != 0.0) throw ArgumentError("nonzero [b_i, b_i] violates antisymmetry");
        continue;
      }
      explicit_pair[c.i * n + c.j] = true;
      alg.at(c.i, c.j, c.k) += c.value;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (explicit_pair[i * n + j] && explicit_pair[j * n + i]) {
          if (i < j) {
            for (int k = 0; k < n; ++k) {
              if (std::abs(alg.at(i, j, k) + alg.at(j, i, k)) > 1e-12) {
                throw ArgumentError("inconsistent brackets for pair (" + std::to_string(i) + "," +
                                    std::to_string(j) + "): not antisymmetric");
              }
            }
          }
        } else if (explicit_pair[i * n + j]) {
          for (int k = 0; k < n; ++k) alg.at(j, i, k) = -alg.at(i, j, k);
        }
      }
    }
    alg.rebuild_ad();
    return alg;
  }

  static LieAlgebra from_exact(Field field, std::vector<std::string> names,
                               const std::vector<StructureConstant<GaussianRational>>& constants,
                               std::string name) {
    std::vector<StructureConstant<Complex>> numeric;
    numeric.reserve(constants.size());
    for (const auto& c : constants) numeric.push_back({c.i, c.j, c.k, c.value.to_complex()});
    LieAlgebra alg = from_constants(field, std::move(names), numeric, std::move(name));
    const int n = alg.dim();
    std::vector<GaussianRational> table(static_cast<std::size_t>(n) * n * n);
    for (const auto& c : constants) {
      if (c.i == c.j) continue;
      table[(c.i * n + c.j) * n + c.k] += c.value;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          auto& ij = table[(i * n + j) * n + k];
          auto& ji = table[(j * n + i) * n + k];
          if (ij.is_zero()) ij = -ji;
          if (ji.is_zero()) ji = -ij;
        }
      }
    }
    alg.exact_ = std::move(table);
    return alg;
  }

  int dim() const { return static_cast<int>(names_.size()); }
  Field field() const { return field_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  bool is_exact() const { return exact_.has_value(); }

  Complex constant(int i, int j, int k) const { return table_[(i * dim() + j) * dim() + k]; }
  const GaussianRational& exact_constant(int i, int j, int k) const {
    if (!exact_) throw PreconditionError("algebra has no exact structure constants");
    return (*exact_)[(i * dim() + j) * dim() + k];
  }
  double max_constant() const {
    double m = 0.0;
    for (const auto& c : table_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Matrix of ad(b_i); column j holds the coordinates of [b_i, b_j].
  const Eigen::MatrixXcd& ad_basis(int i) const { return ad_[i]; }

  Eigen::MatrixXcd ad(const Element& x) const {
    check_element(x);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
      if (x[i] != 0.0) out += x[i] * ad_[i];
    }
    return out;
  }

  Element bracket(const Element& x, const Element& y) const {
    check_element(x);
    check_element(y);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim());
    for (int i = 0; i < dim(); ++i) {
      if (x[i] != 0.0) out += x[i] * (ad_[i] * y.coords());
    }
    return Element(std::move(out));
  }

  Complex killing(const Element& x, const Element& y) const { return (ad(x) * ad(y)).trace(); }

  const std::optional<Eigen::MatrixXcd>& conjugation() const { return conjugation_; }
  bool has_real_form() const { return conjugation_.has_value(); }

  /// Applies the real-form involution sigma(v) = S * conj(v).
  Element conjugate(const Element& x) const {
    if (!conjugation_) throw PreconditionError("algebra '" + name_ + "' has no designated real form");
    check_element(x);
    return Element(*conjugation_ * x.coords().conjugate());
  }

  /// Real coordinate vectors spanning a designated maximal torus of the compact form.
  const std::vector<Eigen::VectorXd>& torus_hint() const { return torus_; }

  LieAlgebra with_conjugation(Eigen::MatrixXcd s) const {
    if (field_ != Field::complex) throw ArgumentError("real form conjugation needs a complex algebra");
    if (s.rows() != dim() || s.cols() != dim()) throw ArgumentError("conjugation shape mismatch");
    LieAlgebra out = *this;
    out.conjugation_ = std::move(s);
    return out;
  }
  LieAlgebra with_torus(std::vector<Eigen::VectorXd> torus) const {
    for (const auto& t : torus) {
      if (t.size() != dim()) throw ArgumentError("torus vector dimension mismatch");
    }
    LieAlgebra out = *this;
    out.torus_ = std::move(torus);
    return out;
  }
  LieAlgebra with_name(std::string name) const {
    LieAlgebra out = *this;
    out.name_ = std::move(name);
    return out;
  }
  LieAlgebra with_field(Field field) const {
    LieAlgebra out = *this;
    out.field_ = field;
    if (field == Field::real) out.conjugation_.reset();
    return out;
  }

  void check_element(const Element& x) const {
    if (x.size() != dim()) {
      throw ArgumentError("element of length " + std::to_string(x.size()) +
                          " does not belong to algebra of dimension " + std::to_string(dim()));
    }
  }

 private:
  LieAlgebra(Field field, std::vector<std::string> names, std::string name)
      : field_(field), name_(std::move(name)), names_(std::move(names)) {
    if (names_.empty()) throw ArgumentError("algebra dimension must be positive");
    const auto n = static_cast<std::size_t>(dim());
    table_.assign(n * n * n, Complex{});
  }

  void check_index(int i) const {
    if (i < 0 || i >= dim()) throw ArgumentError("basis index " + std::to_string(i) + " out of range");
  }
  Complex& at(int i, int j, int k) { return table_[(i * dim() + j) * dim() + k]; }

  void rebuild_ad() {
    const int n = dim();
    ad_.assign(n, Eigen::MatrixXcd::Zero(n, n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) ad_[i](k, j) = constant(i, j, k);
      }
    }
  }

  Field field_;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<Complex> table_;
  std::optional<std::vector<GaussianRational>> exact_;
  std::vector<Eigen::MatrixXcd> ad_;
  std::optional<Eigen::MatrixXcd> conjugation_;
  std::vector<Eigen::VectorXd> torus_;

  friend LieAlgebra direct_sum(const LieAlgebra&, const LieAlgebra&);
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

inline AlgebraPtr share(LieAlgebra alg) { return std::make_shared<const LieAlgebra>(std::move(alg)); }

inline Element bracket(const LieAlgebra& alg, const Element& x, const Element& y) {
  return alg.bracket(x, y);
}

/// Max Jacobi residual over all basis triples i < j < k (repeated indices
/// vanish by antisymmetry). Exact algebras are checked in exact arithmetic.
inline VerificationReport check_jacobi(const LieAlgebra& alg) {
  VerificationReport rep("jacobi");
  const int n = alg.dim();
  double worst = 0.0;
  std::tuple<int, int, int> witness{-1, -1, -1};
  if (alg.is_exact()) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          for (int out = 0; out < n; ++out) {
            GaussianRational sum;
            for (int m = 0; m < n; ++m) {
              sum += alg.exact_constant(i, j, m) * alg.exact_constant(m, k, out);
              sum += alg.exact_constant(j, k, m) * alg.exact_constant(m, i, out);
              sum += alg.exact_constant(k, i, m) * alg.exact_constant(m, j, out);
            }
            double r = std::abs(sum.to_complex());
            if (r > worst) {
              worst = r;
              witness = {i, j, k};
            }
          }
        }
      }
    }
    rep.data["arithmetic"] = "exact";
  } else {
    const double scale = std::max(1.0, alg.max_constant() * alg.max_constant());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Element bij = alg.bracket(Element::unit(n, i), Element::unit(n, j));
        for (int k = j + 1; k < n; ++k) {
          const Element bk = Element::unit(n, k);
          const Element bjk = alg.bracket(Element::unit(n, j), bk);
          const Element bki = alg.bracket(bk, Element::unit(n, i));
          Element sum = alg.bracket(bij, bk) + alg.bracket(bjk, Element::unit(n, i)) +
                        alg.bracket(bki, Element::unit(n, j));
          double r = sum.coords().cwiseAbs().maxCoeff() / scale;
          if (r > worst) {
            worst = r;
            witness = {i, j, k};
          }
        }
      }
    }
    rep.data["arithmetic"] = "floating";
  }
  rep.data["residual"] = worst;
  rep.data["tolerance"] = kJacobiTolerance;
  if (worst > kJacobiTolerance) {
    const auto& names = alg.basis_names();
    auto [i, j, k] = witness;
    rep.data["witness"] = Json::array({i, j, k});
    rep.data["witness_names"] = Json::array({names[i], names[j], names[k]});
    std::ostringstream os;
    os << "Jacobi identity violated on (" << names[i] << ", " << names[j] << ", " << names[k]
       << "), residual " << worst;
    rep.fail(os.str());
  }
  return rep;
}

/// Complexification of a real algebra: same constants, coordinate-wise
/// conjugation as the real form involution.
inline LieAlgebra complexify(const LieAlgebra& k) {
  if (k.field() != Field::real) throw ArgumentError("complexify expects a real algebra");
  std::string name = k.name();
  return k.with_field(Field::complex)
      .with_conjugation(Eigen::MatrixXcd::Identity(k.dim(), k.dim()))
      .with_name(name + "^C");
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.field() != b.field()) throw ArgumentError("direct sum of algebras over different fields");
  const int na = a.dim();
  const int nb = b.dim();
  const int n = na + nb;
  std::vector<std::string> names = a.basis_names();
  for (const auto& s : b.basis_names()) names.push_back(s);
  // disambiguate repeated labels such as e1 (+) e1
  std::map<std::string, int> count;
  for (const auto& s : names) ++count[s];
  for (int i = na; i < n; ++i) {
    if (count[names[i]] > 1) names[i] += "'";
  }

  auto join_name = a.name() + "+" + b.name();
  LieAlgebra out = [&] {
    if (a.is_exact() && b.is_exact()) {
      std::vector<StructureConstant<GaussianRational>> cs;
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
          for (int k = 0; k < na; ++k)
            if (!a.exact_constant(i, j, k).is_zero()) cs.push_back({i, j, k, a.exact_constant(i, j, k)});
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
          for (int k = 0; k < nb; ++k)
            if (!b.exact_constant(i, j, k).is_zero())
              cs.push_back({na + i, na + j, na + k, b.exact_constant(i, j, k)});
      return LieAlgebra::from_exact(a.field(), names, cs, join_name);
    }
    std::vector<StructureConstant<Complex>> cs;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j)
        for (int k = 0; k < na; ++k)
          if (a.constant(i, j, k) != 0.0) cs.push_back({i, j, k, a.constant(i, j, k)});
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j)
        for (int k = 0; k < nb; ++k)
          if (b.constant(i, j, k) != 0.0) cs.push_back({na + i, na + j, na + k, b.constant(i, j, k)});
    return LieAlgebra::from_constants(a.field(), names, cs, join_name);
  }();

  if (a.conjugation() && b.conjugation()) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
    s.topLeftCorner(na, na) = *a.conjugation();
    s.bottomRightCorner(nb, nb) = *b.conjugation();
    out.conjugation_ = std::move(s);
  }
  if (!a.torus_hint().empty() && !b.torus_hint().empty()) {
    for (const auto& t : a.torus_hint()) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v.head(na) = t;
      out.torus_.push_back(std::move(v));
    }
    for (const auto& t : b.torus_hint()) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v.tail(nb) = t;
      out.torus_.push_back(std::move(v));
    }
  }
  return out;
}

/// Embeds an element of the left (offset 0) or right summand of a direct sum.
inline Element embed(const Element& x, int offset, int total) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total);
  v.segment(offset, x.size()) = x.coords();
  return Element(std::move(v));
}

}  // namespace liecr

#endif  // LIECR_LIE_ALGEBRA_HPP
