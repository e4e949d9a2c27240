#ifndef LIECR_STRUCTURES_HPP
#define LIECR_STRUCTURES_HPP

// Invariant CR / nacs structures: construction from a morphism matrix,
// verification, the nacs-extension test and product constructions.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "liecr/builtins.hpp"
#include "liecr/roots.hpp"
#include "liecr/transversality.hpp"

namespace liecr {

/// A complex subalgebra l, optionally inside l' with a transverse xi in k.
struct StructurePair {
  Subspace l;
  std::optional<Subspace> l_prime;
  std::optional<Element> xi;

  const AlgebraPtr& algebra() const { return l.ambient(); }
};

enum class ProductMode { nacs_times_circle, nacs_times_nacs, complex_times_circle };

inline const char* to_string(ProductMode m) {
  switch (m) {
    case ProductMode::nacs_times_circle:
      return "nacs_times_circle";
    case ProductMode::nacs_times_nacs:
      return "nacs_times_nacs";
    case ProductMode::complex_times_circle:
      return "complex_times_circle";
  }
  return "?";
}

/// n with dim_R k = 2n or 2n + 1.
inline int half_dimension(const LieAlgebra& g) { return g.dim() / 2; }

/// Unit length for -B (B the Killing form), Euclidean when B degenerates on
/// v (Abelian summands); sign makes the first nonzero coordinate positive.
inline Element normalize_xi(const LieAlgebra& g, Element v) {
  const double killing = -g.killing(v, v).real();
  const double len = killing > tolerance() * std::max(1.0, v.norm() * v.norm()) ? std::sqrt(killing) : v.norm();
  if (len == 0.0) throw NumericalError("cannot normalize a zero vector");
  v = (1.0 / len) * v;
  for (int i = 0; i < v.size(); ++i) {
    const Complex c = v[i];
    const double lead = std::abs(c.real()) > 1e-12 ? c.real() : c.imag();
    if (std::abs(lead) > 1e-12) {
      if (lead < 0) v = -1.0 * v;
      break;
    }
  }
  Eigen::VectorXcd snapped = v.coords();
  for (Eigen::Index i = 0; i < snapped.size(); ++i) {
    if (std::abs(snapped(i).real()) < 1e-15) snapped(i).real(0.0);
    if (std::abs(snapped(i).imag()) < 1e-15) snapped(i).imag(0.0);
  }
  return Element(snapped);
}

/// Image of c in C^q in the Cartan subalgebra: sum c_k (-i h_k). Real c
/// land in i t, imaginary c in t.
inline Element lambda0_target(const CartanBorelData& data, const Eigen::VectorXcd& c) {
  if (c.size() != data.rank()) throw ArgumentError("morphism target dimension does not match the rank");
  Element out = Element::zero(data.algebra->dim());
  for (int k = 0; k < data.rank(); ++k) out = out + (c(k) * Complex(0.0, -1.0)) * data.cartan_basis[k];
  return out;
}

/// l = Lambda0(C^l) + u in the even case; l = Lambda0({0} x C^r) + u and
/// l' = Lambda0(C^l) + u with xi spanning l' ∩ k in the odd case.
inline StructurePair build_invariant_pair(const MorphismSpec& spec, const CartanBorelData& data) {
  spec.validate();
  if (spec.q != data.rank()) {
    throw ArgumentError("q = " + std::to_string(spec.q) + " does not match rank " + std::to_string(data.rank()));
  }
  const ConditionReport cond = check_condition(spec);
  if (!cond.pass) throw PreconditionError("morphism fails condition " + cond.condition + ": " + cond.message);
  const AlgebraPtr& g = data.algebra;
  std::vector<Element> image;
  for (int j = 0; j < spec.l; ++j) image.push_back(lambda0_target(data, spec.M.col(j)));
  const auto u = data.nilpotent().basis();
  if (spec.parity() == Parity::even) {
    return StructurePair{Subspace(g, concat(image, u)), std::nullopt, std::nullopt};
  }
  std::vector<Element> tail(image.begin() + 1, image.end());
  StructurePair pair{Subspace(g, concat(tail, u)), Subspace(g, concat(image, u)), std::nullopt};
  Subspace cap = intersect(*pair.l_prime, compact_form(g));
  if (cap.real_dim() != 1) throw NumericalError("l' meets k in dimension " + std::to_string(cap.real_dim()));
  pair.xi = normalize_xi(*g, cap.canonical_span().front());
  return pair;
}

namespace detail {
inline VerificationReport dim_report(const std::string& name, int got, int want, const std::string& what) {
  VerificationReport rep(name);
  rep.data["dim"] = got;
  rep.data["expected"] = want;
  if (got != want) rep.fail(what + " has dimension " + std::to_string(got) + ", expected " + std::to_string(want));
  return rep;
}

inline VerificationReport contains_report(const std::string& name, const Subspace& big, const Subspace& small) {
  VerificationReport rep(name);
  const double r = big.containment_residual(small);
  rep.data["residual"] = r;
  if (r > tolerance()) rep.fail("containment residual " + std::to_string(r));
  return rep;
}
}  // namespace detail

/// l is a subalgebra, l ∩ k = {0} (cross-checked against l ∩ conj(l) = {0}),
/// and dim_C l = n.
inline VerificationReport verify_cr(const Subspace& l) {
  VerificationReport rep("verify_cr");
  const AlgebraPtr& g = l.ambient();
  if (l.field() != Field::complex) {
    rep.fail("l must be a complex subspace");
    return rep;
  }
  rep.add(is_subalgebra(l));
  const Subspace cap_k = intersect(l, compact_form(g));
  const Subspace cap_bar = intersect(l, conjugate(l));
  rep.add(detail::dim_report("l_cap_k", cap_k.real_dim(), 0, "l ∩ k"));
  VerificationReport agree("conjugate_agreement");
  agree.data["dim_l_cap_lbar"] = cap_bar.dim();
  if ((cap_k.real_dim() == 0) != (cap_bar.dim() == 0)) {
    agree.fail("l ∩ k and l ∩ conj(l) disagree on triviality");
  }
  rep.add(std::move(agree));
  rep.add(detail::dim_report("dimension", l.dim(), half_dimension(*g), "l"));
  return rep;
}

inline VerificationReport verify_cr(const StructurePair& pair) { return verify_cr(pair.l); }

/// CR conditions on l plus: dim_R(l' ∩ k) = 1, l ideal in l', dim l' = n + 1,
/// l' a subalgebra and g = l + conj(l) + <xi>_C.
inline VerificationReport verify_nacs(const StructurePair& pair) {
  if (!pair.l_prime) throw PreconditionError("verify_nacs needs l'");
  VerificationReport rep("verify_nacs");
  const Subspace& l = pair.l;
  const Subspace& lp = *pair.l_prime;
  const AlgebraPtr& g = l.ambient();
  l.same_ambient(lp);
  const int n = half_dimension(*g);
  rep.add(verify_cr(l));
  const Subspace cap = intersect(lp, compact_form(g));
  auto cap_rep = detail::dim_report("l_prime_cap_k", cap.real_dim(), 1, "l' ∩ k");
  rep.add(std::move(cap_rep));
  auto inside = detail::contains_report("l_in_l_prime", lp, l);
  const bool contained = inside.pass;
  rep.add(std::move(inside));
  if (contained) {
    rep.add(is_ideal_in(l, lp));
  } else {
    VerificationReport ideal("is_ideal_in");
    ideal.fail("skipped: l is not contained in l'");
    rep.add(std::move(ideal));
  }
  auto lp_closed = is_subalgebra(lp);
  lp_closed.check = "l_prime_subalgebra";
  rep.add(std::move(lp_closed));
  rep.add(detail::dim_report("l_prime_dimension", lp.dim(), n + 1, "l'"));

  // g = l (+) conj(l) (+) <xi>_C by a rank count
  std::optional<Element> xi = pair.xi;
  if (!xi && cap.real_dim() == 1) xi = cap.canonical_span().front();
  VerificationReport split("decomposition");
  if (!xi) {
    split.fail("no transverse vector xi");
  } else {
    std::vector<Element> cols = concat(l.basis(), conjugate(l).basis());
    cols.push_back(*xi);
    const int r = Subspace(g, cols).dim();
    split.data["rank"] = r;
    split.data["dim_l"] = l.dim();
    split.data["dim_lbar"] = conjugate(l).dim();
    split.data["expected"] = g->dim();
    if (r != g->dim() || 2 * l.dim() + 1 != g->dim()) split.fail("l + conj(l) + <xi> does not fill g");
    VerificationReport xi_in("xi_in_l_prime_cap_k");
    const double res = cap.residual(*xi) / std::max(1e-300, xi->norm());
    xi_in.data["residual"] = res;
    if (res > tolerance()) xi_in.fail("xi is not in l' ∩ k");
    rep.add(std::move(xi_in));
  }
  rep.add(std::move(split));
  return rep;
}

/// The derived series of l (and of l') reaches zero.
inline VerificationReport verify_solvable(const StructurePair& pair) {
  VerificationReport rep("verify_solvable");
  auto one = [](const std::string& name, const Subspace& v) {
    VerificationReport r(name);
    try {
      auto series = derived_series(v);
      Json dims = Json::array();
      for (const auto& s : series) dims.push_back(s.dim());
      r.data["derived_dims"] = std::move(dims);
      if (series.back().dim() != 0) r.fail("derived series stabilizes at dimension " + std::to_string(series.back().dim()));
    } catch (const PreconditionError& e) {
      r.fail(e.what());
    }
    return r;
  };
  rep.add(one("l", pair.l));
  if (pair.l_prime) rep.add(one("l_prime", *pair.l_prime));
  return rep;
}

/// u ⊆ l and l = (l ∩ r) (+) u, with the dimension counts
/// dim_R(l ∩ r) = rank (even) or rank - 1 and dim_R(l' ∩ r) = rank + 1 (odd).
inline VerificationReport verify_borel_decomposition(const StructurePair& pair, const CartanBorelData& data) {
  VerificationReport rep("verify_borel_decomposition");
  const Subspace& l = pair.l;
  const Subspace& u = data.nilpotent();
  const Subspace& r = data.cartan();
  rep.add(detail::contains_report("u_in_l", l, u));
  const Subspace cap = intersect(l, r);
  VerificationReport split("l_equals_cap_plus_u");
  split.data["dim_R_l_cap_r"] = cap.real_dim();
  split.data["dim_R_u"] = u.real_dim();
  split.data["dim_R_l"] = l.real_dim();
  if (cap.real_dim() + u.real_dim() != l.real_dim() || !sum(cap, u).equals(l)) {
    split.fail("(l ∩ r) + u does not span l");
  }
  rep.add(std::move(split));
  const bool odd = data.algebra->dim() % 2 == 1;
  const int rank = data.rank();
  rep.add(detail::dim_report("dim_l_cap_r", cap.real_dim(), odd ? rank - 1 : rank, "l ∩ r (real)"));
  if (pair.l_prime) {
    const Subspace cap_p = intersect(*pair.l_prime, r);
    rep.add(detail::dim_report("dim_l_prime_cap_r", cap_p.real_dim(), rank + 1, "l' ∩ r (real)"));
  }
  return rep;
}

/// Standard Borel and its opposite for the algebra g.
inline std::vector<CartanBorelData> standard_borel_candidates(const AlgebraPtr& g) {
  return {cartan_borel(g), cartan_borel(g, true)};
}

struct ExtensionResult {
  VerificationReport report;
  std::optional<StructurePair> pair;
  int candidate = -1;
};

/// Searches the supplied Borels b for one with l ⊆ b and u_b ⊆ l, then
/// extends by a torus vector: l' = l (+) <xi>_C. Failure only means no
/// supplied candidate works.
inline ExtensionResult nacs_extension_test(const Subspace& l, const std::vector<CartanBorelData>& candidates) {
  const AlgebraPtr& g = l.ambient();
  if (g->dim() % 2 == 0) throw PreconditionError("nacs extension needs an odd-dimensional algebra");
  if (!verify_cr(l).pass) throw PreconditionError("nacs extension needs a CR subalgebra");
  ExtensionResult out{VerificationReport("nacs_extension_test"), std::nullopt, -1};
  out.report.data["candidates"] = static_cast<int>(candidates.size());
  out.report.data["scope"] = "supplied candidates only";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& cand = candidates[i];
    VerificationReport c("candidate_" + std::to_string(i));
    if (cand.algebra != g) throw ArgumentError("candidate Borel lives in a different algebra");
    const bool in_b = cand.borel().contains(l);
    const bool has_u = l.contains(cand.nilpotent());
    c.data["l_in_b"] = in_b;
    c.data["u_in_l"] = has_u;
    if (!in_b) c.fail("l is not contained in this Borel");
    if (!has_u) c.fail("nilpotent part is not contained in l");
    if (c.pass) {
      bool built = false;
      for (const auto& t : cand.torus_t->canonical_span()) {
        if (l.contains(t)) continue;
        StructurePair p{l, sum(l, Subspace(g, {t})), std::nullopt};
        Subspace cap = intersect(*p.l_prime, compact_form(g));
        if (cap.real_dim() != 1) continue;
        p.xi = normalize_xi(*g, cap.canonical_span().front());
        auto check = verify_nacs(p);
        if (!check.pass) continue;
        c.add(std::move(check));
        if (!out.pair) {
          out.pair = std::move(p);
          out.candidate = static_cast<int>(i);
        }
        built = true;
        break;
      }
      if (!built) c.fail("no torus direction gives a verified l'");
    }
    out.report.add(std::move(c), false);
  }
  if (!out.pair) {
    out.report.fail("no extension among supplied Borels");
  } else {
    out.report.data["extended_by"] = out.candidate;
  }
  return out;
}

/// Products with a circle (modeled as u(1), generator d/dt) or with a second
/// nacs, on the direct sum of the complexified algebras.
inline StructurePair product_structure(const StructurePair& p1, const std::optional<StructurePair>& p2,
                                       ProductMode mode) {
  const AlgebraPtr& g1 = p1.algebra();
  auto require_nacs = [](const StructurePair& p, const char* which) {
    if (!p.l_prime || !p.xi || !verify_nacs(p).pass) {
      throw PreconditionError(std::string(which) + " is not a verified nacs");
    }
  };
  auto lift = [](const Subspace& v, const AlgebraPtr& target, int offset) {
    std::vector<Element> span;
    for (const auto& b : v.basis()) span.push_back(embed(b, offset, target->dim()));
    return Subspace(target, std::move(span), v.field());
  };

  if (mode == ProductMode::nacs_times_nacs) {
    if (!p2) throw PreconditionError("nacs_times_nacs needs two structures");
    require_nacs(p1, "first factor");
    require_nacs(*p2, "second factor");
    const AlgebraPtr& g2 = p2->algebra();
    AlgebraPtr g = share(direct_sum(*g1, *g2));
    Element mixed = embed(*p1.xi, 0, g->dim()) + kI * embed(*p2->xi, g1->dim(), g->dim());
    Subspace l = sum(sum(lift(p1.l, g, 0), lift(p2->l, g, g1->dim())), Subspace(g, {mixed}));
    return StructurePair{std::move(l), std::nullopt, std::nullopt};
  }

  if (p2) throw PreconditionError(std::string(to_string(mode)) + " takes a single structure");
  AlgebraPtr circle = share(complexify(u1()));
  AlgebraPtr g = share(direct_sum(*g1, *circle));
  const Element dt = Element::unit(g->dim(), g1->dim());
  if (mode == ProductMode::nacs_times_circle) {
    require_nacs(p1, "structure");
    Element mixed = embed(*p1.xi, 0, g->dim()) + kI * dt;
    return StructurePair{sum(lift(p1.l, g, 0), Subspace(g, {mixed})), std::nullopt, std::nullopt};
  }
  // complex_times_circle
  if (p1.l_prime || g1->dim() % 2 != 0 || !verify_cr(p1).pass) {
    throw PreconditionError("complex_times_circle needs a verified complex structure");
  }
  Subspace l = lift(p1.l, g, 0);
  Subspace lp = sum(l, Subspace(g, {dt}));
  return StructurePair{std::move(l), std::move(lp), normalize_xi(*g, dt)};
}

inline Json pair_to_json(const StructurePair& p) {
  Json out;
  out["algebra"] = p.algebra()->name();
  out["l"] = subspace_to_json(p.l);
  if (p.l_prime) out["l_prime"] = subspace_to_json(*p.l_prime);
  if (p.xi) out["xi"] = element_to_json(*p.xi);
  return out;
}

}  // namespace liecr

#endif  // LIECR_STRUCTURES_HPP
