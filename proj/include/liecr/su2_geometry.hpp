#ifndef LIECR_SU2_GEOMETRY_HPP
#define LIECR_SU2_GEOMETRY_HPP

// SL(2,C)/U = C^2 \ {0} with SU(2) as the unit sphere. A morphism
// t -> (e^{at}, e^{bt}) into H x H gives the C-action
// phi(t, (z, w)) = (e^{(a+b)t} z, e^{(b-a)t} w) with generator
// eta = (a+b) z d/dz + (b-a) w d/dw.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liecr/errors.hpp"
#include "liecr/report.hpp"
#include "liecr/tolerance.hpp"

namespace liecr::geom {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr int kDefaultSamples = 512;
inline constexpr int kMinSamples = 100;
inline constexpr int kInvarianceDraws = 50;

struct ActionParams {
  Complex a;
  Complex b;

  Complex sum() const { return a + b; }    // coefficient on z
  Complex diff() const { return b - a; }  // coefficient on w

  void validate() const {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag())) {
      throw ArgumentError("action parameters must be finite");
    }
    if (sum() == 0.0 && diff() == 0.0) throw PreconditionError("trivial action: a = b = 0");
  }
};

struct SpherePoint {
  Complex z;
  Complex w;
  double radius = 1.0;

  SpherePoint(Complex z_, Complex w_, double r) : z(z_), w(w_), radius(r) {
    if (!(r > 0.0)) throw ArgumentError("sphere radius must be positive");
    const double n2 = std::norm(z) + std::norm(w);
    if (std::abs(n2 - r * r) > kSphereTolerance * r * r) throw ArgumentError("point is not on the sphere");
  }
  /// Point from coordinates, radius taken from the norm.
  static SpherePoint from(Complex z, Complex w) { return SpherePoint(z, w, std::sqrt(std::norm(z) + std::norm(w))); }
  Vec2 vec() const { return Vec2(z, w); }
};

/// Distance to the origin; the fibers of C^2 \ {0} -> A are the spheres.
inline double project_to_A(Complex z, Complex w) {
  const double r = std::sqrt(std::norm(z) + std::norm(w));
  if (r == 0.0) throw ArgumentError("project_to_A: the origin is not in G/U");
  return r;
}
inline double project_to_A(const SpherePoint& p) { return project_to_A(p.z, p.w); }

inline Vec2 eta_field(const ActionParams& p, Complex z, Complex w) { return Vec2(p.sum() * z, p.diff() * w); }
inline Vec2 eta_field(const ActionParams& p, const SpherePoint& pt) { return eta_field(p, pt.z, pt.w); }

/// phi(t, x) in closed form.
inline Vec2 orbit(const ActionParams& p, Complex t, const Vec2& x) {
  return Vec2(std::exp(p.sum() * t) * x(0), std::exp(p.diff() * t) * x(1));
}

/// Lambda(t) = (diag(e^{at}, e^{-at}), diag(e^{bt}, e^{-bt})).
inline std::array<Mat2, 2> lambda_pair(const ActionParams& p, Complex t) {
  Mat2 h1 = Mat2::Zero();
  Mat2 h2 = Mat2::Zero();
  h1(0, 0) = std::exp(p.a * t);
  h1(1, 1) = std::exp(-p.a * t);
  h2(0, 0) = std::exp(p.b * t);
  h2(1, 1) = std::exp(-p.b * t);
  return {h1, h2};
}

/// (h1, h2) . gU = h1 g h2 U, read off on C^2 as the first column.
inline Vec2 hh_action(const Mat2& h1, const Mat2& h2, const Mat2& g) { return (h1 * g * h2).col(0); }

/// An SL(2,C) element with first column x (x != 0).
inline Mat2 section(const Vec2& x) {
  Mat2 g;
  const double n2 = x.squaredNorm();
  if (n2 == 0.0) throw ArgumentError("section of the origin");
  // second column orthogonal to x scaled so det = 1
  g.col(0) = x;
  g(0, 1) = -std::conj(x(1)) / n2;
  g(1, 1) = std::conj(x(0)) / n2;
  return g;
}

inline Mat2 su2_element(Complex p, Complex q) {
  Mat2 k;
  k << p, -std::conj(q), q, std::conj(p);
  return k;
}

/// Haar-random SU(2) element from a normalized Gaussian quaternion.
inline Mat2 random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double v[4];
  double len = 0.0;
  do {
    len = 0.0;
    for (double& x : v) {
      x = n(rng);
      len += x * x;
    }
  } while (len < 1e-12);
  len = std::sqrt(len);
  return su2_element(Complex(v[0] / len, v[1] / len), Complex(v[2] / len, v[3] / len));
}

/// Quasi-uniform points on the sphere of radius r: |z|^2 = u r^2 with u
/// running over [0, 1] including both coordinate circles, phases from the
/// plastic-number low-discrepancy sequence.
inline std::vector<SpherePoint> sphere_samples(int count, double r) {
  if (count < 2) throw ArgumentError("need at least two sample points");
  if (!(r > 0.0)) throw ArgumentError("sphere radius must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  const double plastic = 1.324717957244746;
  const double g1 = 1.0 / plastic;
  const double g2 = 1.0 / (plastic * plastic);
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / (count - 1);
    const double f1 = std::fmod(i * g1, 1.0);
    const double f2 = std::fmod(i * g2, 1.0);
    const double cz = std::sqrt(u) * r;
    const double cw = std::sqrt(1.0 - u) * r;
    const Complex z = std::polar(cz, two_pi * f1);
    const Complex w = std::polar(cw, two_pi * f2);
    // radius from the construction; rescale away rounding
    const double n = std::sqrt(std::norm(z) + std::norm(w));
    out.emplace_back(z * (r / n), w * (r / n), r);
  }
  return out;
}

/// (IV) holds iff b - a != 0 and (a+b)/(b-a) = mu is real and positive.
inline VerificationReport check_condition_IV_analytic(const ActionParams& p) {
  p.validate();
  VerificationReport rep("condition_IV_analytic");
  const double tol = tolerance();
  rep.data["a"] = complex_to_json(p.a);
  rep.data["b"] = complex_to_json(p.b);
  if (std::abs(p.diff()) <= tol * std::max(1.0, std::abs(p.sum()))) {
    rep.data["mu"] = nullptr;
    rep.data["one_dim_orbits"] = false;
    rep.fail("b - a = 0: eta vanishes on the circle z = 0 (non-locally-free on fiber)");
    return rep;
  }
  const Complex ratio = p.sum() / p.diff();
  const bool real = std::abs(ratio.imag()) <= tol * std::max(1.0, std::abs(ratio));
  rep.data["ratio"] = complex_to_json(ratio);
  rep.data["mu"] = real ? Json(ratio.real()) : Json(nullptr);
  // orbits meet the sphere in curves unless a + b = mu (b - a) with mu <= 0
  const bool negative_mu = real && ratio.real() <= tol;
  rep.data["one_dim_orbits"] = !negative_mu;
  const Complex lambda = Complex(0.0, 1.0) * std::conj(p.diff()) / std::abs(p.diff());
  rep.data["lambda"] = complex_to_json(lambda);
  if (!real) {
    rep.fail("(a+b)/(b-a) is not real");
  } else if (ratio.real() <= tol) {
    rep.fail("(a+b)/(b-a) = " + std::to_string(ratio.real()) + " is not positive");
  }
  return rep;
}

namespace detail {

struct FiberResult {
  bool pass = true;
  Complex lambda{0.0, 0.0};
  double residual = 0.0;
  double min_transversality = std::numeric_limits<double>::infinity();
  Json witnesses = Json::array();
  std::string reason;
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  std::vector<Eigen::Vector2d> normals;  // (Re c, -Im c) per transverse sample
};

inline Json point_json(const Vec2& x) { return Json::array({complex_to_json(x(0)), complex_to_json(x(1))}); }

/// Unit phase lambda minimizing sum (Re(lambda c_p))^2, oriented so that
/// Im(lambda c_p) sums positive; returns residual max |Re(lambda c_p)| and
/// whether Im(lambda c_p) changes sign.
inline void fit_lambda(const Eigen::Matrix2d& scatter, const std::vector<Eigen::Vector2d>& normals, Complex& lambda,
                       double& residual, bool& sign_change) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(scatter);
  Eigen::Vector2d v = es.eigenvectors().col(0);  // smallest eigenvalue
  double total = 0.0;
  for (const auto& n : normals) total += v(0) * (-n(1)) + v(1) * n(0);
  if (total < 0.0) v = -v;
  lambda = Complex(v(0), v(1));
  residual = 0.0;
  sign_change = false;
  for (const auto& n : normals) {
    residual = std::max(residual, std::abs(v.dot(n)));
    // Im(lambda c) with c = n(0) - i n(1)
    if (v(0) * (-n(1)) + v(1) * n(0) < 0.0) sign_change = true;
  }
}

inline FiberResult sample_fiber(const ActionParams& p, double radius, int samples) {
  FiberResult out;
  const double tol = tolerance();
  const double coeff = std::abs(p.sum()) + std::abs(p.diff());
  for (const auto& pt : sphere_samples(samples, radius)) {
    const Vec2 x = pt.vec();
    const Vec2 eta = eta_field(p, pt);
    const double eta_norm = eta.norm();
    // tangent system of F'_x: real span of eta and i eta in R^4
    Eigen::Matrix<double, 4, 2> t;
    t << eta(0).real(), -eta(0).imag(), eta(1).real(), -eta(1).imag(), eta(0).imag(), eta(0).real(),
        eta(1).imag(), eta(1).real();
    if (eta_norm <= tol * coeff * radius) {
      out.pass = false;
      if (out.reason.empty()) out.reason = "eta vanishes on the fiber";
      if (out.witnesses.size() < 5) out.witnesses.push_back({{"kind", "eta_zero"}, {"point", point_json(x)}});
      continue;
    }
    Eigen::Vector4d normal;
    normal << x(0).real(), x(1).real(), x(0).imag(), x(1).imag();
    normal /= radius;
    // radial components of eta and i eta, scaled by |eta|
    const Eigen::Vector2d nv = (normal.transpose() * t).transpose() / eta_norm;
    const double transversality = nv.norm();
    out.min_transversality = std::min(out.min_transversality, transversality);
    if (transversality <= tol) {
      // F'_x lies in the tangent space of the sphere: intersection is 2-dimensional
      out.pass = false;
      if (out.reason.empty()) out.reason = "orbit tangent to the fiber";
      if (out.witnesses.size() < 5) {
        out.witnesses.push_back({{"kind", "tangent_orbit"}, {"point", point_json(x)}, {"value", transversality}});
      }
      continue;
    }
    out.scatter += nv * nv.transpose();
    out.normals.push_back(nv);
  }
  if (out.normals.empty()) return out;
  bool sign_change = false;
  fit_lambda(out.scatter, out.normals, out.lambda, out.residual, sign_change);
  if (out.residual > kPhaseResidualTolerance) {
    out.pass = false;
    if (out.reason.empty()) out.reason = "no common lambda on the fiber";
  } else if (sign_change) {
    out.pass = false;
    if (out.reason.empty()) out.reason = "transverse direction flips orientation on the fiber";
  }
  return out;
}

}  // namespace detail

/// Samples each sphere of the given radii and checks that F'_x meets it in a
/// line, with one phase lambda making Re(lambda eta) tangent everywhere.
inline VerificationReport sample_transversality(const ActionParams& p, const std::vector<double>& radii,
                                                int samples = kDefaultSamples) {
  p.validate();
  if (samples < kMinSamples) throw ArgumentError("samples per sphere must be at least " + std::to_string(kMinSamples));
  if (radii.empty()) throw ArgumentError("need at least one radius");
  VerificationReport rep("condition_IV_sampled");
  rep.data["samples_per_sphere"] = samples;
  Json fibers = Json::array();
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  std::vector<Eigen::Vector2d> normals;
  Json witnesses = Json::array();
  for (double r : radii) {
    if (!(r > 0.0)) throw ArgumentError("radii must be positive");
    auto f = detail::sample_fiber(p, r, samples);
    Json fj;
    fj["radius"] = r;
    fj["pass"] = f.pass;
    fj["lambda"] = complex_to_json(f.lambda);
    fj["residual"] = f.residual;
    fj["min_transversality"] = std::isfinite(f.min_transversality) ? Json(f.min_transversality) : Json(nullptr);
    if (!f.pass) {
      fj["reason"] = f.reason;
      rep.fail("radius " + std::to_string(r) + ": " + f.reason);
    }
    for (auto& w : f.witnesses) {
      if (witnesses.size() < 5) {
        w["radius"] = r;
        witnesses.push_back(w);
      }
    }
    fibers.push_back(std::move(fj));
    scatter += f.scatter;
    normals.insert(normals.end(), f.normals.begin(), f.normals.end());
  }
  rep.data["fibers"] = std::move(fibers);
  if (!normals.empty()) {
    Complex lambda;
    double residual = 0.0;
    bool sign_change = false;
    detail::fit_lambda(scatter, normals, lambda, residual, sign_change);
    rep.data["lambda"] = complex_to_json(lambda);
    rep.data["residual"] = residual;
    if (rep.pass && (residual > kPhaseResidualTolerance || sign_change)) rep.fail("no common lambda across fibers");
  }
  rep.data["witnesses"] = std::move(witnesses);
  return rep;
}

/// Analytic verdict: invariant under left translations iff a = 0. The
/// numerical sweep compares k F'_x with F'_{kx} for random k and x through
/// |det[k eta(x), eta(kx)]|; the report passes when both verdicts agree.
inline VerificationReport check_invariance(const ActionParams& p, std::uint64_t seed = 0) {
  p.validate();
  if (!check_condition_IV_analytic(p).pass) throw PreconditionError("check_invariance needs condition IV");
  VerificationReport rep("invariance");
  const bool analytic = std::abs(p.a) <= tolerance();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  Json witness;
  for (int i = 0; i < kInvarianceDraws; ++i) {
    const Mat2 k = random_su2(rng);
    const Mat2 xg = random_su2(rng);
    const Vec2 x = xg.col(0);
    const Vec2 lhs = k * eta_field(p, x(0), x(1));
    const Vec2 kx = k * x;
    const Vec2 rhs = eta_field(p, kx(0), kx(1));
    const double denom = lhs.norm() * rhs.norm();
    const double res = denom == 0.0 ? 0.0 : std::abs(lhs(0) * rhs(1) - lhs(1) * rhs(0)) / denom;
    if (res > worst) {
      worst = res;
      witness = Json{{"k", Json::array({complex_to_json(k(0, 0)), complex_to_json(k(1, 0))})},
                     {"x", detail::point_json(x)}};
    }
  }
  const bool numeric = worst <= kPhaseResidualTolerance;
  rep.data["invariant"] = analytic;
  rep.data["numeric_invariant"] = numeric;
  rep.data["max_residual"] = worst;
  rep.data["draws"] = kInvarianceDraws;
  if (!numeric) rep.data["witness"] = witness;
  if (analytic != numeric) rep.fail("analytic and sampled invariance verdicts disagree");
  return rep;
}

/// nu = -I commutes with the action: nu phi(t, x) = phi(t, nu x).
inline VerificationReport center_invariance(const ActionParams& p, std::uint64_t seed = 0) {
  p.validate();
  VerificationReport rep("center_invariance");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  double involution = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec2 x = random_su2(rng).col(0);
    const Complex t(0.3 * n(rng), n(rng));
    const Vec2 a = -orbit(p, t, x);
    const Vec2 b = orbit(p, t, -x);
    worst = std::max(worst, (a - b).norm() / std::max(1.0, a.norm()));
    involution = std::max(involution, (-(-x) - x).norm());
  }
  rep.data["residual"] = worst;
  rep.data["involution_residual"] = involution;
  if (worst > 1e-10) rep.fail("nu does not commute with the action");
  if (involution > 1e-10) rep.fail("nu is not an involution");
  return rep;
}

struct Iwasawa {
  Mat2 k;
  Mat2 a;
  Mat2 u;
};

/// g = k a u with k in SU(2), a = diag(s, 1/s) with s > 0, u upper unipotent,
/// read off from the first column of g.
inline Iwasawa iwasawa_decompose(const Mat2& g) {
  if (std::abs(g.determinant() - 1.0) > 1e-12 * std::max(1.0, g.squaredNorm())) {
    throw ArgumentError("iwasawa_decompose needs det g = 1");
  }
  const double s = g.col(0).norm();
  const Complex p = g(0, 0) / s;
  const Complex q = g(1, 0) / s;
  Iwasawa out;
  out.k = su2_element(p, q);
  out.a = Mat2::Zero();
  out.a(0, 0) = s;
  out.a(1, 1) = 1.0 / s;
  Mat2 ainv = Mat2::Zero();
  ainv(0, 0) = 1.0 / s;
  ainv(1, 1) = s;
  out.u = ainv * out.k.adjoint() * g;
  return out;
}

/// Membership and round-trip residuals of a decomposition.
inline VerificationReport check_iwasawa(const Mat2& g, const Iwasawa& d) {
  VerificationReport rep("iwasawa");
  const double scale = std::max(1.0, g.squaredNorm());
  const double unitary = (d.k.adjoint() * d.k - Mat2::Identity()).norm();
  const double det_k = std::abs(d.k.determinant() - 1.0);
  const double a_off = std::abs(d.a(0, 1)) + std::abs(d.a(1, 0));
  const bool a_pos = std::abs(d.a(0, 0).imag()) == 0.0 && d.a(0, 0).real() > 0.0 &&
                     std::abs(d.a(0, 0) * d.a(1, 1) - 1.0) <= 1e-12;
  const double unip = std::max({std::abs(d.u(0, 0) - 1.0), std::abs(d.u(1, 1) - 1.0), std::abs(d.u(1, 0))});
  const double recon = (d.k * d.a * d.u - g).norm() / g.norm();
  rep.data["unitarity"] = unitary;
  rep.data["det_k"] = det_k;
  rep.data["unipotent"] = unip;
  rep.data["reconstruction"] = recon;
  if (unitary > 1e-12 || det_k > 1e-12) rep.fail("k is not in SU(2)");
  if (a_off != 0.0 || !a_pos) rep.fail("a is not in A");
  if (unip > 1e-12 * scale) rep.fail("u is not upper unipotent");
  if (recon > 1e-12) rep.fail("k a u does not reproduce g");
  return rep;
}

/// Random element of SL(2,C): Gaussian entries rescaled by a square root of the determinant.
inline Mat2 random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Mat2 g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = Complex(n(rng), n(rng));
    const Complex det = g.determinant();
    if (std::abs(det) < 1e-3) continue;
    return g / std::sqrt(det);
  }
}

}  // namespace liecr::geom

#endif  // LIECR_SU2_GEOMETRY_HPP
