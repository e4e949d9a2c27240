#ifndef LIECR_ACCEPTANCE_HPP
#define LIECR_ACCEPTANCE_HPP

// End-to-end acceptance suite, shared by the acceptance test binary and
// `liecr selftest`. Every tolerance and time budget is fixed here.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liecr/pipeline.hpp"

namespace liecr::acceptance {

inline constexpr double kVerifierResidual = 1e-10;
inline constexpr double kIwasawaResidual = 1e-12;
inline constexpr double kNearDegenerateShare = 0.02;
inline constexpr int kOracleDraws = 1000;
inline constexpr int kActionDraws = 500;
inline constexpr int kIwasawaDraws = 1000;
inline constexpr int kSubspacePairs = 500;
inline constexpr double kRealBandLow = 1e-12;  // below: counted as real
inline constexpr double kRealBandHigh = 1e-6;  // at or above: counted as non-real

struct Criterion {
  int id = 0;
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;  // 0: no limit

  void fail(const std::string& why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

namespace detail {

inline Element unit(int n, int i) { return Element::unit(n, i); }

inline Element vec(std::initializer_list<Complex> xs) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return Element(std::move(v));
}

inline Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

/// Largest "residual" value anywhere in a report tree.
inline double max_residual(const VerificationReport& r) {
  double worst = 0.0;
  if (r.data.is_object() && r.data.contains("residual") && r.data["residual"].is_number()) {
    worst = r.data["residual"].get<double>();
  }
  for (const auto& s : r.sub) worst = std::max(worst, max_residual(s));
  return worst;
}

inline Subspace subspace_from_json(const AlgebraPtr& g, const Json& j) {
  std::vector<Element> span;
  for (const auto& v : j.at("basis")) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) c(static_cast<Eigen::Index>(k)) = {v[k][0], v[k][1]};
    span.emplace_back(std::move(c));
  }
  return Subspace(g, std::move(span));
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << x;
  return os.str();
}

/// The action sweep: half generic complex (a, b), half on the real locus
/// a + b = mu (b - a) with |mu| in [0.05, 20] of either sign. Draws whose
/// ratio sits in the ambiguous band between rounding noise and 1e-6 are
/// dropped and counted.
struct ActionSweep {
  std::vector<geom::ActionParams> draws;
  int excluded = 0;
  int on_locus = 0;
};

inline ActionSweep action_sweep(std::uint64_t seed, int count) {
  ActionSweep out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(out.draws.size()) < count) {
    geom::ActionParams p;
    const bool locus = unif(rng) < 0.5;
    if (locus) {
      const Complex d = gaussian(rng);
      const double mag = 0.05 * std::pow(400.0, unif(rng));
      const double mu = unif(rng) < 0.5 ? mag : -mag;
      p = {(mu - 1.0) * d / 2.0, (mu + 1.0) * d / 2.0};
    } else {
      p = {gaussian(rng), gaussian(rng)};
    }
    if (std::abs(p.diff()) < 1e-3) continue;
    const double im = std::abs((p.sum() / p.diff()).imag());
    if (im > kRealBandLow * std::max(1.0, std::abs(p.sum() / p.diff())) && im < kRealBandHigh) {
      ++out.excluded;
      continue;
    }
    if (locus) ++out.on_locus;
    out.draws.push_back(p);
  }
  return out;
}

inline MorphismSpec random_morphism(std::mt19937_64& rng, int q, int l) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXcd m(q, l);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < l; ++j) m(i, j) = gaussian(rng);
  // a quarter of the draws are pushed onto the failure locus
  const double u = unif(rng);
  if (u < 0.1) {
    m.col(l - 1) = m.col(l - 1).real().cast<Complex>();
  } else if (u < 0.2) {
    m.col(0) *= 0.0;
  } else if (u < 0.25 && q > 1) {
    m.row(q - 1) = Complex(unif(rng) + 0.5, 0.0) * m.row(0);
  }
  return MorphismSpec(q, l, std::move(m));
}

}  // namespace detail

inline Criterion su2_invariant_nacs() {
  Criterion c{1, "SU(2) invariant nacs reproduction", true, "", 0.0, 1.0};
  PipelineConfig cfg;
  cfg.command = "build";
  cfg.algebra = "su2";
  cfg.morphism = "[[1,0]]";
  const RunReport run = run_pipeline(cfg);
  if (run.exit_code != kExitPass) c.fail("build exit code " + std::to_string(run.exit_code) + " " + run.error);
  if (!run.pass) return c;
  AlgebraPtr g = share(complexify(su2()));
  const Element e1 = detail::unit(3, 0);
  const Element up = detail::vec({0, 1, kI});
  const Json& pair = run.summary["pair"];
  if (!detail::subspace_from_json(g, pair["l"]).equals(Subspace(g, {up}))) c.fail("l != <e2 + i e3>");
  if (!pair.contains("l_prime") || !detail::subspace_from_json(g, pair["l_prime"]).equals(Subspace(g, {e1, up}))) {
    c.fail("l' != <e1, e2 + i e3>");
  }
  if (!pair.contains("xi")) {
    c.fail("no xi");
  } else {
    Eigen::VectorXcd xi(3);
    for (int k = 0; k < 3; ++k) xi(k) = {pair["xi"][k][0], pair["xi"][k][1]};
    if (std::abs(xi(1)) + std::abs(xi(2)) > kVerifierResidual || xi(0).real() <= 0.0) c.fail("xi not a positive multiple of e1");
  }
  double worst = 0.0;
  for (const char* name : {"verify_cr", "verify_nacs", "verify_solvable", "verify_borel_decomposition"}) {
    const VerificationReport* r = run.find(name);
    if (!r) {
      c.fail(std::string(name) + " missing");
      continue;
    }
    if (!r->pass) c.fail(std::string(name) + " failed");
    worst = std::max(worst, detail::max_residual(*r));
  }
  if (worst > kVerifierResidual) c.fail("verifier residual " + detail::fmt(worst));
  c.note("max verifier residual " + detail::fmt(worst));
  return c;
}

inline Criterion cr_without_nacs() {
  Criterion c{2, "CR structures l_alpha without nacs extension", true, "", 0.0, 1.0};
  const CartanBorelData data = cartan_borel(su2());
  const AlgebraPtr g = data.algebra;
  const auto candidates = standard_borel_candidates(g);
  const Element e1 = detail::unit(3, 0);
  const Element up = detail::vec({0, 1, kI});
  for (double alpha : {1.0, -2.0, 0.5}) {
    const Subspace l(g, {e1 + Complex(alpha) * up});
    const std::string tag = "alpha=" + detail::fmt(alpha);
    if (!verify_cr(l).pass) c.fail(tag + ": verify_cr failed");
    const ExtensionResult ext = nacs_extension_test(l, candidates);
    if (ext.report.pass) c.fail(tag + ": extension found");
    if (ext.report.sub.size() != 2) c.fail(tag + ": expected two candidates");
    for (const auto& s : ext.report.sub) {
      if (s.pass) c.fail(tag + ": " + s.check + " accepted");
    }
  }
  return c;
}

inline Criterion condition_oracle(std::uint64_t seed) {
  Criterion c{3, "condition I/II agrees with the kernel oracle", true, "", 0.0, 10.0};
  struct Case {
    const char* name;
    int q;
    int l;
  };
  for (const Case k : {Case{"su(2)", 1, 1}, Case{"su(3)", 2, 1}, Case{"su(4)", 3, 2}}) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k.q));
    int near = 0;
    int disagree = 0;
    int passing = 0;
    for (int t = 0; t < kOracleDraws; ++t) {
      const MorphismSpec spec = detail::random_morphism(rng, k.q, k.l);
      const ConditionReport cond = check_condition(spec);
      if (cond.near_degenerate) {
        ++near;
        continue;
      }
      passing += cond.pass ? 1 : 0;
      if (cond.pass != oracle_kernel_check(spec).pass) ++disagree;
    }
    if (disagree > 0) c.fail(std::string(k.name) + ": " + std::to_string(disagree) + " disagreements");
    if (near > kNearDegenerateShare * kOracleDraws) c.fail(std::string(k.name) + ": too many near-degenerate draws");
    c.note(std::string(k.name) + " " + std::to_string(passing) + " pass/" + std::to_string(kOracleDraws - near - passing) +
           " fail/" + std::to_string(near) + " near-degenerate");
  }
  return c;
}

inline Criterion su2_analytic_numeric(std::uint64_t seed) {
  Criterion c{4, "SU(2) model: sampled and analytic condition IV agree", true, "", 0.0, 60.0};
  const std::vector<double> radii{0.5, 1.0, 2.0};
  const auto sweep = detail::action_sweep(seed, kActionDraws);
  int disagree = 0;
  int passing = 0;
  for (const auto& p : sweep.draws) {
    const bool analytic = geom::check_condition_IV_analytic(p).pass;
    const bool sampled = geom::sample_transversality(p, radii, geom::kDefaultSamples).pass;
    passing += analytic ? 1 : 0;
    if (analytic != sampled) ++disagree;
  }
  if (disagree > 0) c.fail(std::to_string(disagree) + " disagreements");
  c.note(std::to_string(passing) + "/" + std::to_string(sweep.draws.size()) + " satisfy IV, " +
         std::to_string(sweep.excluded) + " draws in the ambiguous band skipped");

  struct Expect {
    Complex a;
    bool pass;
    bool invariant;
  };
  for (const Expect e : {Expect{0.0, true, true}, Expect{1.0 / 3.0, true, false}, Expect{kI, false, false}}) {
    PipelineConfig cfg;
    cfg.command = "su2-action";
    cfg.a = e.a;
    cfg.b = 1.0;
    cfg.seed = seed;
    const RunReport run = run_pipeline(cfg);
    const std::string tag = "a=" + liecr::detail::plain(complex_to_json(e.a));
    if (run.pass != e.pass) c.fail(tag + ": expected " + (e.pass ? "pass" : "fail"));
    const Json inv = run.summary.value("invariant", Json(nullptr));
    if (e.pass && (!inv.is_boolean() || inv.get<bool>() != e.invariant)) c.fail(tag + ": wrong invariance verdict");
    if (!e.pass && run.exit_code != kExitFail) c.fail(tag + ": expected exit 1");
  }
  return c;
}

inline Criterion fiber_propagation(std::uint64_t seed) {
  Criterion c{5, "condition IV on radius 1 propagates to every fiber", true, "", 0.0, 0.0};
  const auto sweep = detail::action_sweep(seed, kActionDraws);
  int checked = 0;
  int exceptions = 0;
  for (const auto& p : sweep.draws) {
    if (!geom::sample_transversality(p, {1.0}).pass) continue;
    ++checked;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      if (!geom::sample_transversality(p, {r}).pass) {
        ++exceptions;
        break;
      }
    }
  }
  if (exceptions > 0) c.fail(std::to_string(exceptions) + " draws fail on some radius");
  if (checked == 0) c.fail("no draw passes on radius 1");
  c.note(std::to_string(checked) + " passing draws checked on 5 radii");
  return c;
}

inline Criterion algebraic_invariants(std::uint64_t seed) {
  Criterion c{6, "algebraic invariant suite", true, "", 0.0, 0.0};
  for (const char* name : {"su2", "su3", "su4", "so3", "u1"}) {
    const auto jac = check_jacobi(builtin(name));
    if (jac.data["arithmetic"] != "exact" || jac.data["residual"].get<double>() != 0.0) {
      c.fail(std::string(name) + ": Jacobi residual not exactly 0");
    }
  }
  int pairs = 0;
  for (int n : {2, 3, 4}) {
    const LieAlgebra k = su(n);
    const CartanBorelData d = cartan_borel(k);
    const std::string tag = "su(" + std::to_string(n) + ")";
    if (d.eigen_residual > kEigenResidualTolerance) c.fail(tag + ": eigen residual " + detail::fmt(d.eigen_residual));
    if (d.borel().real_dim() != k.dim() + d.rank()) c.fail(tag + ": dim_R b != dim_R k + rank");
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      for (std::size_t j = 0; j < d.roots.size(); ++j) {
        ++pairs;
        const Subspace br = bracket_span(d.root_spaces[i], d.root_spaces[j]);
        const Eigen::VectorXcd s = d.roots[i].values + d.roots[j].values;
        const int target = find_root(d, s);
        bool ok = false;
        if (target >= 0) {
          ok = d.root_spaces[static_cast<std::size_t>(target)].contains(br);
        } else if (s.cwiseAbs().maxCoeff() <= kEigenClusterTolerance) {
          ok = d.cartan().contains(br) && !br.is_zero();
        } else {
          ok = br.is_zero();
        }
        if (!ok) c.fail(tag + ": bracket table wrong at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  // dim(V + W) + dim(V ∩ W) = dim V + dim W
  AlgebraPtr g = share(complexify(su(4)));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(0, 9);
  int bad = 0;
  auto draw = [&] {
    Eigen::VectorXcd v(g->dim());
    for (int i = 0; i < g->dim(); ++i) v(i) = detail::gaussian(rng);
    return Element(std::move(v));
  };
  for (int t = 0; t < kSubspacePairs; ++t) {
    std::vector<Element> shared;
    for (int i = count(rng) / 2; i > 0; --i) shared.push_back(draw());
    std::vector<Element> v = shared;
    std::vector<Element> w = shared;
    for (int i = count(rng); i > 0; --i) v.push_back(draw());
    for (int i = count(rng); i > 0; --i) w.push_back(draw());
    const Subspace V(g, v);
    const Subspace W(g, w);
    if (sum(V, W).dim() + intersect(V, W).dim() != V.dim() + W.dim()) ++bad;
  }
  if (bad > 0) c.fail(std::to_string(bad) + " subspace pairs break the Grassmann identity");
  c.note(std::to_string(pairs) + " root pairs, " + std::to_string(kSubspacePairs) + " subspace pairs");
  return c;
}

inline Criterion products() {
  Criterion c{7, "product constructions", true, "", 0.0, 1.0};
  Eigen::MatrixXcd one(1, 1);
  one << 1.0;
  const auto su2data = cartan_borel(su2());
  const StructurePair nacs = build_invariant_pair(MorphismSpec(one), su2data);
  const StructurePair hopf = product_structure(nacs, std::nullopt, ProductMode::nacs_times_circle);
  if (hopf.algebra()->dim() != 4 || !verify_cr(hopf).pass) c.fail("su(2) nacs x u(1) is not CR");
  const StructurePair twice = product_structure(nacs, nacs, ProductMode::nacs_times_nacs);
  if (twice.algebra()->dim() != 6 || !verify_cr(twice).pass) c.fail("su(2) x su(2) nacs product is not CR");
  Eigen::MatrixXcd col(2, 1);
  col << 1.0, kI;
  const StructurePair cplx = build_invariant_pair(MorphismSpec(col), cartan_borel(su(3)));
  const StructurePair ext = product_structure(cplx, std::nullopt, ProductMode::complex_times_circle);
  if (ext.algebra()->dim() != 9 || !verify_nacs(ext).pass) c.fail("su(3) complex x u(1) is not a nacs");
  return c;
}

inline Criterion iwasawa_round_trip(std::uint64_t seed) {
  Criterion c{8, "Iwasawa round trip on SL(2,C)", true, "", 0.0, 0.0};
  std::mt19937_64 rng(seed);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < kIwasawaDraws; ++t) {
    const geom::Mat2 g = geom::random_sl2(rng);
    const auto rep = geom::check_iwasawa(g, geom::iwasawa_decompose(g));
    const double recon = rep.data["reconstruction"].get<double>();
    worst = std::max(worst, recon);
    if (!rep.pass || recon > kIwasawaResidual) ++bad;
  }
  if (bad > 0) c.fail(std::to_string(bad) + " decompositions rejected");
  c.note("max reconstruction residual " + detail::fmt(worst));
  return c;
}

/// Runs all criteria at the default tolerance, one line per criterion.
inline bool run_all(std::ostream& out, std::uint64_t seed = 0) {
  ScopedTolerance scope(kDefaultTolerance);
  const std::vector<std::function<Criterion()>> suite{
      [] { return su2_invariant_nacs(); },
      [] { return cr_without_nacs(); },
      [seed] { return condition_oracle(seed); },
      [seed] { return su2_analytic_numeric(seed); },
      [seed] { return fiber_propagation(seed); },
      [seed] { return algebraic_invariants(seed); },
      [] { return products(); },
      [seed] { return iwasawa_round_trip(seed); },
  };
  bool all = true;
  int id = 0;
  for (const auto& run : suite) {
    ++id;
    const auto start = std::chrono::steady_clock::now();
    Criterion c{id, "criterion " + std::to_string(id), true, "", 0.0, 0.0};
    try {
      c = run();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0.0 && c.seconds >= c.budget) c.fail("over the " + detail::fmt(c.budget) + " s budget");
    all = all && c.pass;
    out << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " (" << std::fixed << std::setprecision(3)
        << c.seconds << " s)" << std::defaultfloat;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
  return all;
}

}  // namespace liecr::acceptance

#endif  // LIECR_ACCEPTANCE_HPP
