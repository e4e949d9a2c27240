#ifndef LIECR_ROOTS_HPP
#define LIECR_ROOTS_HPP

// Cartan data, root space decomposition and Borel subalgebras.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "liecr/subspace.hpp"

namespace liecr {

/// A nonzero joint eigenvalue functional on the Cartan subalgebra, stored
/// by its values on CartanBorelData::cartan_basis.
struct Root {
  Eigen::VectorXcd values;

  /// Value on i * cartan_basis[k]; real for a compact torus.
  Eigen::VectorXd on_i_torus() const { return (kI * values).real(); }
};

struct CartanBorelData {
  AlgebraPtr algebra;
  std::optional<Subspace> torus_t;
  std::optional<Subspace> cartan_r;
  std::vector<Element> cartan_basis;
  std::vector<Root> roots;
  std::vector<Subspace> root_spaces;  // parallel to roots
  std::vector<int> positive;          // indices into roots
  std::optional<Subspace> borel_b;
  std::optional<Subspace> nilpotent_u;
  double eigen_residual = 0.0;

  int rank() const { return static_cast<int>(cartan_basis.size()); }
  const Subspace& cartan() const { return *cartan_r; }
  const Subspace& borel() const {
    if (!borel_b) throw PreconditionError("no positive system chosen yet");
    return *borel_b;
  }
  const Subspace& nilpotent() const {
    if (!nilpotent_u) throw PreconditionError("no positive system chosen yet");
    return *nilpotent_u;
  }
};

namespace detail {

inline double root_scale(const Eigen::VectorXcd& v) { return std::max(1.0, v.cwiseAbs().maxCoeff()); }

inline bool same_values(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kEigenClusterTolerance * std::max(root_scale(a), root_scale(b));
}

inline Eigen::VectorXcd snap_values(Eigen::VectorXcd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(linalg::snap(v(i).real()), linalg::snap(v(i).imag()));
  return v;
}

/// +1 / -1 by the first coordinate of on_i_torus() that is clearly nonzero.
inline int lexicographic_sign(const Root& r) {
  const Eigen::VectorXd key = r.on_i_torus();
  for (Eigen::Index k = 0; k < key.size(); ++k) {
    if (std::abs(key(k)) > kEigenClusterTolerance * root_scale(r.values)) return key(k) > 0 ? 1 : -1;
  }
  // purely real values on i*t: fall back to the imaginary part
  const Eigen::VectorXd alt = (kI * r.values).imag();
  for (Eigen::Index k = 0; k < alt.size(); ++k) {
    if (std::abs(alt(k)) > kEigenClusterTolerance * root_scale(r.values)) return alt(k) > 0 ? 1 : -1;
  }
  return 0;
}

struct Block {
  Eigen::MatrixXcd q;  // orthonormal columns spanning a joint invariant subspace
  std::vector<Complex> values;
};

}  // namespace detail

/// The designated maximal Abelian subalgebra of the compact form, as a real
/// subspace. Works on a compact built-in or on its complexification.
inline Subspace standard_torus(const AlgebraPtr& alg) {
  if (alg->torus_hint().empty()) {
    throw UnsupportedError("no designated torus for '" + alg->name() + "'; supply one explicitly");
  }
  std::vector<Element> span;
  for (const auto& t : alg->torus_hint()) span.emplace_back(t.cast<Complex>());
  Subspace t(alg, std::move(span), Field::real);
  if (!is_subalgebra(t).pass || !bracket_span(t, t).is_zero()) {
    throw PreconditionError("designated torus of '" + alg->name() + "' is not Abelian");
  }
  return t;
}

/// Index of the root with the given values, or -1.
inline int find_root(const CartanBorelData& data, const Eigen::VectorXcd& values) {
  for (std::size_t i = 0; i < data.roots.size(); ++i) {
    if (detail::same_values(data.roots[i].values, values)) return static_cast<int>(i);
  }
  return -1;
}

/// Joint eigendecomposition of ad(r) on g by sequential refinement over the
/// basis of r. Positive system and Borel are left unset.
inline CartanBorelData root_decomposition(const AlgebraPtr& g, const Subspace& r_in) {
  if (g->field() != Field::complex) throw ArgumentError("root_decomposition expects a complex algebra");
  if (r_in.ambient() != g) throw ArgumentError("Cartan subspace lives in a different algebra");
  Subspace r(g, r_in.field() == Field::real ? r_in.canonical_span() : r_in.basis(), Field::complex);
  if (r.is_zero()) throw PreconditionError("Cartan subspace is zero");
  if (!bracket_span(r, r).is_zero()) throw PreconditionError("Cartan subspace is not Abelian");

  CartanBorelData data;
  data.algebra = g;
  data.cartan_r = r;
  if (r_in.field() == Field::real) data.torus_t = r_in;
  data.cartan_basis = r.canonical_span();
  const int n = g->dim();

  std::vector<detail::Block> blocks{{Eigen::MatrixXcd::Identity(n, n), {}}};
  for (const auto& h : data.cartan_basis) {
    const Eigen::MatrixXcd adh = g->ad(h);
    const double scale = std::max(1.0, adh.norm());
    std::vector<detail::Block> next;
    for (const auto& blk : blocks) {
      const Eigen::MatrixXcd a = blk.q.adjoint() * adh * blk.q;
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
      if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
      std::vector<Complex> eig(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
      std::sort(eig.begin(), eig.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
      });
      // greedy clustering
      std::vector<std::vector<Complex>> clusters;
      for (Complex z : eig) {
        bool placed = false;
        for (auto& c : clusters) {
          if (std::abs(c.front() - z) <= kEigenClusterTolerance * scale) {
            c.push_back(z);
            placed = true;
            break;
          }
        }
        if (!placed) clusters.push_back({z});
      }
      for (const auto& c : clusters) {
        Complex mean = 0.0;
        for (Complex z : c) mean += z;
        mean /= static_cast<double>(c.size());
        const Eigen::MatrixXcd shifted = a - mean * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        int rk = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
          if (sv(i) > kEigenClusterTolerance * scale) ++rk;
        }
        const int null_dim = static_cast<int>(a.cols()) - rk;
        if (null_dim != static_cast<int>(c.size())) {
          throw NumericalError("defective adjoint action: eigenvalue multiplicity " + std::to_string(c.size()) +
                               " but eigenspace dimension " + std::to_string(null_dim));
        }
        detail::Block child;
        child.q = blk.q * svd.matrixV().rightCols(null_dim);
        child.values = blk.values;
        child.values.push_back(mean);
        next.push_back(std::move(child));
      }
    }
    blocks = std::move(next);
  }

  int total = 0;
  bool found_zero = false;
  for (const auto& blk : blocks) {
    Eigen::VectorXcd vals(static_cast<Eigen::Index>(blk.values.size()));
    for (std::size_t k = 0; k < blk.values.size(); ++k) vals(static_cast<Eigen::Index>(k)) = blk.values[k];
    vals = detail::snap_values(vals);
    std::vector<Element> span;
    for (Eigen::Index c = 0; c < blk.q.cols(); ++c) span.emplace_back(blk.q.col(c));
    Subspace space(g, std::move(span), Field::complex);
    total += space.dim();
    if (vals.cwiseAbs().maxCoeff() <= kEigenClusterTolerance * detail::root_scale(vals)) {
      found_zero = true;
      if (!space.equals(r, kEigenClusterTolerance)) {
        throw PreconditionError("Cartan subspace is not self-centralizing (zero weight space has dimension " +
                                std::to_string(space.dim()) + ", expected " + std::to_string(r.dim()) + ")");
      }
      continue;
    }
    data.roots.push_back(Root{vals});
    data.root_spaces.push_back(std::move(space));
  }
  if (!found_zero) throw PreconditionError("Cartan subspace is not self-centralizing (no zero weight space)");
  if (total != n) throw NumericalError("root decomposition is incomplete");

  // positive-looking roots first, then by descending lexicographic key
  std::vector<std::size_t> order(data.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Eigen::VectorXd kx = data.roots[x].on_i_torus();
    const Eigen::VectorXd ky = data.roots[y].on_i_torus();
    for (Eigen::Index k = 0; k < kx.size(); ++k) {
      if (std::abs(kx(k) - ky(k)) > kEigenClusterTolerance) return kx(k) > ky(k);
    }
    return false;
  });
  std::vector<Root> roots;
  std::vector<Subspace> spaces;
  for (std::size_t i : order) {
    roots.push_back(data.roots[i]);
    spaces.push_back(data.root_spaces[i]);
  }
  data.roots = std::move(roots);
  data.root_spaces = std::move(spaces);

  double worst = 0.0;
  for (std::size_t a = 0; a < data.roots.size(); ++a) {
    for (const auto& x : data.root_spaces[a].basis()) {
      for (int k = 0; k < data.rank(); ++k) {
        const Element hx = g->bracket(data.cartan_basis[k], x);
        const double scale = std::max(1.0, g->ad(data.cartan_basis[k]).norm());
        worst = std::max(worst, (hx - data.roots[a].values(k) * x).norm() / (scale * x.norm()));
      }
    }
  }
  data.eigen_residual = worst;
  if (worst > kEigenResidualTolerance) {
    throw NumericalError("root space eigen-residual " + std::to_string(worst) + " exceeds tolerance");
  }
  return data;
}

/// Roots whose lexicographic key on the torus is positive.
inline std::vector<int> default_positive_system(const CartanBorelData& data) {
  std::vector<int> out;
  for (std::size_t i = 0; i < data.roots.size(); ++i) {
    if (detail::lexicographic_sign(data.roots[i]) > 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

inline std::vector<int> opposite_positive_system(const CartanBorelData& data) {
  std::vector<int> out;
  for (std::size_t i = 0; i < data.roots.size(); ++i) {
    if (detail::lexicographic_sign(data.roots[i]) < 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

/// b = r (+) u with u the sum of the chosen root spaces.
inline CartanBorelData build_borel(CartanBorelData data, std::vector<int> positive) {
  const int m = static_cast<int>(data.roots.size());
  std::vector<bool> chosen(m, false);
  for (int i : positive) {
    if (i < 0 || i >= m) throw ArgumentError("root index " + std::to_string(i) + " out of range");
    if (chosen[i]) throw PreconditionError("root chosen twice");
    chosen[i] = true;
  }
  for (int i = 0; i < m; ++i) {
    const int neg = find_root(data, -data.roots[i].values);
    if (neg < 0) throw NumericalError("root without a negative partner");
    if (chosen[i] == chosen[neg]) {
      throw PreconditionError("positive choice must contain exactly one root of each +/- pair");
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!chosen[i] || !chosen[j]) continue;
      const int s = find_root(data, data.roots[i].values + data.roots[j].values);
      if (s >= 0 && !chosen[s]) throw PreconditionError("positive choice is not closed under addition");
    }
  }
  std::sort(positive.begin(), positive.end());
  Subspace u = Subspace::zero(data.algebra);
  for (int i : positive) u = sum(u, data.root_spaces[i]);
  Subspace b = sum(data.cartan(), u);
  if (!is_subalgebra(b).pass) throw NumericalError("Borel candidate is not closed under brackets");
  data.positive = std::move(positive);
  data.nilpotent_u = std::move(u);
  data.borel_b = std::move(b);
  return data;
}

/// Matches roots by value, for callers that hold Root objects.
inline CartanBorelData build_borel(CartanBorelData data, const std::vector<Root>& positive) {
  std::vector<int> idx;
  for (const auto& r : positive) {
    const int i = find_root(data, r.values);
    if (i < 0) throw ArgumentError("supplied root is not a root of the algebra");
    idx.push_back(i);
  }
  return build_borel(std::move(data), std::move(idx));
}

/// Complexifies a compact algebra with a designated torus and builds the
/// default Borel subalgebra.
inline CartanBorelData cartan_borel(const LieAlgebra& k, bool opposite = false) {
  AlgebraPtr g = share(k.field() == Field::real ? complexify(k) : k);
  Subspace t = standard_torus(g);
  CartanBorelData data = root_decomposition(g, t);
  auto pos = opposite ? opposite_positive_system(data) : default_positive_system(data);
  return build_borel(std::move(data), std::move(pos));
}

inline CartanBorelData cartan_borel(const AlgebraPtr& g, bool opposite = false) {
  if (g->field() != Field::complex) throw ArgumentError("cartan_borel on a shared algebra expects the complex form");
  CartanBorelData data = root_decomposition(g, standard_torus(g));
  auto pos = opposite ? opposite_positive_system(data) : default_positive_system(data);
  return build_borel(std::move(data), std::move(pos));
}

inline Json root_to_json(const Root& r) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < r.values.size(); ++k) {
    out.push_back(complex_to_json({linalg::snap(r.values(k).real()), linalg::snap(r.values(k).imag())}));
  }
  return out;
}

inline Json cartan_borel_to_json(const CartanBorelData& d) {
  Json out;
  out["rank"] = d.rank();
  if (d.torus_t) out["torus"] = subspace_to_json(*d.torus_t);
  out["cartan"] = subspace_to_json(d.cartan());
  Json basis = Json::array();
  for (const auto& h : d.cartan_basis) basis.push_back(element_to_json(h));
  out["cartan_basis"] = std::move(basis);
  Json roots = Json::array();
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    Json r;
    r["values"] = root_to_json(d.roots[i]);
    r["space"] = subspace_to_json(d.root_spaces[i]);
    r["positive"] = std::find(d.positive.begin(), d.positive.end(), static_cast<int>(i)) != d.positive.end();
    roots.push_back(std::move(r));
  }
  out["roots"] = std::move(roots);
  out["eigen_residual"] = d.eigen_residual;
  if (d.borel_b) {
    out["borel"] = subspace_to_json(*d.borel_b);
    out["nilpotent"] = subspace_to_json(*d.nilpotent_u);
  }
  return out;
}

}  // namespace liecr

#endif  // LIECR_ROOTS_HPP
