#ifndef LIECR_SUBSPACE_HPP
#define LIECR_SUBSPACE_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "liecr/lie_algebra.hpp"
#include "liecr/linalg.hpp"

namespace liecr {

/// Linear subspace of a Lie algebra, over R or C, given by a spanning set.
///
/// An orthonormal basis is computed once at construction. Complex subspaces
/// keep a unitary basis of C^n; real subspaces keep an orthonormal basis of
/// the realification R^(2n), so a real subspace of a complex algebra (such as
/// the compact form) is handled without special cases.
class Subspace {
 public:
  Subspace(AlgebraPtr ambient, std::vector<Element> span, Field field = Field::complex)
      : ambient_(std::move(ambient)), field_(field), span_(std::move(span)) {
    if (!ambient_) throw ArgumentError("subspace needs an ambient algebra");
    if (field_ == Field::complex && ambient_->field() == Field::real) {
      throw ArgumentError("complex subspace of a real algebra");
    }
    const int n = ambient_->dim();
    Eigen::MatrixXcd cols(n, static_cast<Eigen::Index>(span_.size()));
    for (std::size_t i = 0; i < span_.size(); ++i) {
      ambient_->check_element(span_[i]);
      cols.col(static_cast<Eigen::Index>(i)) = span_[i].coords();
    }
    if (field_ == Field::complex) {
      basis_ = linalg::orthonormal_columns(cols);
      real_basis_ = Eigen::MatrixXd(2 * n, 2 * basis_.cols());
      for (Eigen::Index c = 0; c < basis_.cols(); ++c) {
        real_basis_.col(2 * c) = linalg::realify(Eigen::VectorXcd(basis_.col(c)));
        real_basis_.col(2 * c + 1) = linalg::realify(Eigen::VectorXcd(kI * basis_.col(c)));
      }
    } else {
      real_basis_ = linalg::orthonormal_columns(linalg::realify(cols));
      basis_ = linalg::decomplexify(real_basis_);
    }
  }

  static Subspace zero(AlgebraPtr ambient, Field field = Field::complex) {
    return Subspace(std::move(ambient), {}, field);
  }

  /// The whole algebra over its own field.
  static Subspace whole(const AlgebraPtr& ambient) {
    std::vector<Element> span;
    for (int i = 0; i < ambient->dim(); ++i) span.push_back(Element::unit(ambient->dim(), i));
    return Subspace(ambient, std::move(span), ambient->field());
  }

  const AlgebraPtr& ambient() const { return ambient_; }
  Field field() const { return field_; }
  const std::vector<Element>& span() const { return span_; }

  /// Dimension over the subspace's own field.
  int dim() const { return static_cast<int>(basis_.cols()); }
  int real_dim() const { return static_cast<int>(real_basis_.cols()); }
  int complex_dim() const {
    if (field_ != Field::complex) throw PreconditionError("complex dimension of a real subspace");
    return dim();
  }
  bool is_zero() const { return dim() == 0; }

  /// Orthonormal basis columns in complex coordinates.
  const Eigen::MatrixXcd& basis_matrix() const { return basis_; }
  /// Orthonormal basis of the realification.
  const Eigen::MatrixXd& real_basis_matrix() const { return real_basis_; }

  std::vector<Element> basis() const {
    std::vector<Element> out;
    for (Eigen::Index c = 0; c < basis_.cols(); ++c) out.emplace_back(basis_.col(c));
    return out;
  }

  /// Distance from v to the subspace.
  double residual(const Element& v) const {
    ambient_->check_element(v);
    if (field_ == Field::complex) {
      Eigen::VectorXcd r = v.coords() - basis_ * (basis_.adjoint() * v.coords());
      return r.norm();
    }
    Eigen::VectorXd rv = linalg::realify(v.coords());
    return (rv - real_basis_ * (real_basis_.transpose() * rv)).norm();
  }

  double relative_residual(const Element& v) const {
    const double n = v.norm();
    return n == 0.0 ? 0.0 : residual(v) / n;
  }

  bool contains(const Element& v, double tol = tolerance()) const {
    return residual(v) <= tol * std::max(1.0, v.norm());
  }

  /// Worst residual of w's orthonormal basis against this subspace.
  double containment_residual(const Subspace& w) const {
    same_ambient(w);
    double worst = 0.0;
    const Eigen::MatrixXd& q = w.real_basis_matrix();
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      Eigen::VectorXd rv = q.col(c);
      worst = std::max(worst, (rv - real_basis_ * (real_basis_.transpose() * rv)).norm());
    }
    return worst;
  }

  bool contains(const Subspace& w, double tol = tolerance()) const {
    return containment_residual(w) <= tol;
  }

  /// Same underlying point set (a complex subspace equals its realification).
  bool equals(const Subspace& w, double tol = tolerance()) const {
    return real_dim() == w.real_dim() && contains(w, tol) && w.contains(*this, tol);
  }

  /// The same set viewed as a real subspace.
  Subspace as_real() const {
    std::vector<Element> vecs;
    for (Eigen::Index c = 0; c < real_basis_.cols(); ++c) {
      vecs.emplace_back(linalg::decomplexify(Eigen::MatrixXd(real_basis_.col(c))).col(0));
    }
    return Subspace(ambient_, std::move(vecs), Field::real);
  }

  /// Canonical spanning vectors (reduced row echelon form), for reports.
  std::vector<Element> canonical_span() const {
    std::vector<Element> out;
    if (dim() == 0) return out;
    if (field_ == Field::complex) {
      Eigen::MatrixXcd rows = linalg::rref(Eigen::MatrixXcd(basis_.transpose()));
      for (Eigen::Index r = 0; r < rows.rows(); ++r) out.emplace_back(clean(rows.row(r).transpose()));
    } else {
      Eigen::MatrixXd rows = linalg::rref(Eigen::MatrixXd(real_basis_.transpose()));
      for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        out.emplace_back(clean(linalg::decomplexify(Eigen::MatrixXd(rows.row(r).transpose())).col(0)));
      }
    }
    return out;
  }

  void same_ambient(const Subspace& w) const {
    if (ambient_ != w.ambient_) throw ArgumentError("subspaces live in different algebras");
  }

 private:
  static Eigen::VectorXcd clean(Eigen::VectorXcd v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v(i) = Complex(linalg::snap(v(i).real()), linalg::snap(v(i).imag()));
    }
    return v;
  }

  AlgebraPtr ambient_;
  Field field_;
  std::vector<Element> span_;
  Eigen::MatrixXcd basis_;
  Eigen::MatrixXd real_basis_;
};

inline std::vector<Element> concat(std::vector<Element> a, const std::vector<Element>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// V + W; complex when both are complex, real otherwise.
inline Subspace sum(const Subspace& v, const Subspace& w) {
  v.same_ambient(w);
  if (v.field() == Field::complex && w.field() == Field::complex) {
    return Subspace(v.ambient(), concat(v.basis(), w.basis()), Field::complex);
  }
  return Subspace(v.ambient(), concat(v.as_real().basis(), w.as_real().basis()), Field::real);
}

/// V ∩ W. Two complex subspaces intersect over C; if either is real the
/// intersection is taken over R. Dimension comes from the rank of the
/// stacked system [Q_V | -Q_W] with threshold tol * sigma_max.
inline Subspace intersect(const Subspace& v, const Subspace& w) {
  v.same_ambient(w);
  if (v.dim() == 0 || w.dim() == 0) {
    const bool cplx = v.field() == Field::complex && w.field() == Field::complex;
    return Subspace::zero(v.ambient(), cplx ? Field::complex : Field::real);
  }
  if (v.field() == Field::complex && w.field() == Field::complex) {
    Eigen::MatrixXcd stacked(v.ambient()->dim(), v.dim() + w.dim());
    stacked << v.basis_matrix(), -w.basis_matrix();
    Eigen::MatrixXcd null = linalg::nullspace(stacked);
    Eigen::MatrixXcd vecs = v.basis_matrix() * null.topRows(v.dim());
    std::vector<Element> span;
    for (Eigen::Index c = 0; c < vecs.cols(); ++c) span.emplace_back(vecs.col(c));
    return Subspace(v.ambient(), std::move(span), Field::complex);
  }
  const Eigen::MatrixXd& qv = v.real_basis_matrix();
  const Eigen::MatrixXd& qw = w.real_basis_matrix();
  Eigen::MatrixXd stacked(qv.rows(), qv.cols() + qw.cols());
  stacked << qv, -qw;
  Eigen::MatrixXd null = linalg::nullspace(stacked);
  Eigen::MatrixXd vecs = qv * null.topRows(qv.cols());
  std::vector<Element> span;
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    span.emplace_back(linalg::decomplexify(Eigen::MatrixXd(vecs.col(c))).col(0));
  }
  return Subspace(v.ambient(), std::move(span), Field::real);
}

/// Image of a complex subspace under the real form involution.
inline Subspace conjugate(const Subspace& v) {
  const auto& alg = *v.ambient();
  std::vector<Element> span;
  for (const auto& b : v.basis()) span.push_back(alg.conjugate(b));
  return Subspace(v.ambient(), std::move(span), v.field());
}

/// The designated compact real form: the whole algebra when it is real,
/// the fixed set of the conjugation when it is complex.
inline Subspace compact_form(const AlgebraPtr& g) {
  if (g->field() == Field::real) return Subspace::whole(g);
  if (!g->conjugation()) throw PreconditionError("algebra '" + g->name() + "' has no designated real form");
  const int n = g->dim();
  const Eigen::MatrixXcd& s = *g->conjugation();
  const Eigen::MatrixXd p = s.real();
  const Eigen::MatrixXd q = s.imag();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  // S conj(x + iy) = (Px + Qy) + i(Qx - Py) must equal x + iy.
  Eigen::MatrixXd system(2 * n, 2 * n);
  system << p - id, q, q, -p - id;
  Eigen::MatrixXd null = linalg::nullspace(system);
  std::vector<Element> span;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    span.emplace_back(linalg::decomplexify(Eigen::MatrixXd(null.col(c))).col(0));
  }
  return Subspace(g, std::move(span), Field::real);
}

/// Span (over V's field) of all brackets of basis pairs.
inline Subspace bracket_span(const Subspace& v, const Subspace& w) {
  v.same_ambient(w);
  const auto& alg = *v.ambient();
  std::vector<Element> span;
  const auto bv = v.basis();
  const auto bw = w.basis();
  // brackets that vanish relative to |x||y| max|c| are float noise, not directions
  const double floor = tolerance() * std::max(1.0, alg.max_constant());
  for (const auto& x : bv) {
    for (const auto& y : bw) {
      Element b = alg.bracket(x, y);
      if (b.norm() > floor * x.norm() * y.norm()) span.push_back(std::move(b));
    }
  }
  const Field f = (v.field() == Field::complex && w.field() == Field::complex) ? Field::complex : Field::real;
  return Subspace(v.ambient(), std::move(span), f);
}

inline Json element_to_json(const Element& e) {
  Json arr = Json::array();
  for (int i = 0; i < e.size(); ++i) {
    arr.push_back(Json::array({linalg::snap(e[i].real()), linalg::snap(e[i].imag())}));
  }
  return arr;
}

namespace detail {
/// Checks [x, y] in target for all basis pairs of (left, right).
inline VerificationReport closure_report(const std::string& name, const Subspace& left,
                                         const Subspace& right, const Subspace& target) {
  VerificationReport rep(name);
  const auto& alg = *left.ambient();
  const auto bl = left.basis();
  const auto br = right.basis();
  double worst = 0.0;
  int wi = -1;
  int wj = -1;
  Element worst_bracket;
  for (std::size_t i = 0; i < bl.size(); ++i) {
    for (std::size_t j = 0; j < br.size(); ++j) {
      Element b = alg.bracket(bl[i], br[j]);
      double r = target.residual(b) / std::max(1.0, b.norm());
      if (r > worst) {
        worst = r;
        wi = static_cast<int>(i);
        wj = static_cast<int>(j);
        worst_bracket = b;
      }
    }
  }
  rep.data["residual"] = worst;
  rep.data["tolerance"] = tolerance();
  if (worst > tolerance()) {
    rep.data["witness_pair"] = Json::array({element_to_json(bl[wi]), element_to_json(br[wj])});
    rep.data["witness_bracket"] = element_to_json(worst_bracket);
    rep.fail("bracket leaves the subspace (residual " + std::to_string(worst) + ")");
  }
  return rep;
}
}  // namespace detail

/// [V, V] ⊆ V.
inline VerificationReport is_subalgebra(const Subspace& v) {
  return detail::closure_report("is_subalgebra", v, v, v);
}

/// [V, W] ⊆ V, with V ⊆ W required.
inline VerificationReport is_ideal_in(const Subspace& v, const Subspace& w) {
  if (!w.contains(v)) throw PreconditionError("is_ideal_in: V is not contained in W");
  return detail::closure_report("is_ideal_in", v, w, v);
}

/// V ⊇ [V,V] ⊇ ... listed until the dimension stops dropping.
inline std::vector<Subspace> derived_series(const Subspace& v) {
  if (!is_subalgebra(v).pass) throw PreconditionError("derived_series: input is not a subalgebra");
  std::vector<Subspace> series{v};
  while (series.back().dim() > 0) {
    Subspace next = bracket_span(series.back(), series.back());
    if (next.real_dim() >= series.back().real_dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline bool is_solvable(const Subspace& v) { return derived_series(v).back().dim() == 0; }

inline Json subspace_to_json(const Subspace& v) {
  Json out;
  out["field"] = to_string(v.field());
  out["dim"] = v.dim();
  Json basis = Json::array();
  for (const auto& e : v.canonical_span()) basis.push_back(element_to_json(e));
  out["basis"] = std::move(basis);
  return out;
}

}  // namespace liecr

#endif  // LIECR_SUBSPACE_HPP
