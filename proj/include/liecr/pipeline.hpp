#ifndef LIECR_PIPELINE_HPP
#define LIECR_PIPELINE_HPP

// Subcommand pipelines behind the liecr CLI. Each returns a RunReport; the
// caller renders it and exits with report.exit_code.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liecr/json_io.hpp"
#include "liecr/structures.hpp"
#include "liecr/su2_geometry.hpp"

namespace liecr {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

enum class OutputFormat { json, text };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "text"; }

inline const std::vector<std::string>& build_check_names() {
  static const std::vector<std::string> names{"conditions", "oracle", "cr", "nacs", "solvable", "borel"};
  return names;
}

struct PipelineConfig {
  std::string command;
  std::string algebra;
  std::string morphism;             // file path or inline matrix
  std::vector<std::string> checks;  // empty: every applicable check
  double tolerance = kDefaultTolerance;
  OutputFormat output = OutputFormat::json;
  std::uint64_t seed = 0;
  bool timing = false;
  // su2-action
  Complex a{0.0, 0.0};
  Complex b{1.0, 0.0};
  std::vector<double> radii{0.5, 1.0, 2.0};
  int samples = geom::kDefaultSamples;

  void validate() const {
    if (!(tolerance > 0.0 && tolerance < 1e-2)) {
      throw ArgumentError("tolerance must lie in (0, 1e-2), got " + std::to_string(tolerance));
    }
    if (command == "build") {
      for (const auto& c : checks) {
        const auto& known = build_check_names();
        if (std::find(known.begin(), known.end(), c) == known.end()) throw ArgumentError("unknown check '" + c + "'");
      }
    }
  }

  Json to_json() const {
    Json out;
    out["command"] = command;
    if (command == "describe" || command == "build") out["algebra"] = algebra;
    if (command == "build") out["morphism"] = morphism;
    out["checks"] = checks;
    out["tolerance"] = tolerance;
    out["output"] = to_string(output);
    out["seed"] = seed;
    if (command == "su2-action") {
      out["a"] = complex_to_json(a);
      out["b"] = complex_to_json(b);
      out["radii"] = radii;
      out["samples"] = samples;
    }
    return out;
  }
};

struct RunReport {
  Json config = Json::object();
  std::vector<VerificationReport> checks;
  Json summary = Json::object();
  bool pass = true;
  int exit_code = kExitPass;
  std::string error;
  std::optional<double> wall_seconds;

  void add(VerificationReport r) {
    pass = pass && r.pass;
    checks.push_back(std::move(r));
  }

  const VerificationReport* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (const auto* hit = c.find(name)) return hit;
    }
    return nullptr;
  }

  Json to_json() const {
    Json out;
    out["config"] = config;
    out["pass"] = pass;
    out["exit_code"] = exit_code;
    if (!error.empty()) out["error"] = error;
    out["summary"] = summary;
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    out["checks"] = std::move(arr);
    if (wall_seconds) out["wall_seconds"] = *wall_seconds;
    return out;
  }

  static RunReport from_json(const Json& j) {
    RunReport r;
    r.config = j.at("config");
    r.pass = j.at("pass").get<bool>();
    r.exit_code = j.at("exit_code").get<int>();
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    r.summary = j.at("summary");
    for (const auto& c : j.at("checks")) r.checks.push_back(VerificationReport::from_json(c));
    if (j.contains("wall_seconds")) r.wall_seconds = j["wall_seconds"].get<double>();
    return r;
  }
};

namespace detail {

inline std::string format_number(double x) {
  x = linalg::snap(x);
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

inline std::string format_complex(Complex z) {
  const double re = linalg::snap(z.real());
  const double im = linalg::snap(z.imag());
  if (im == 0.0) return format_number(re);
  if (re == 0.0) {
    if (im == 1.0) return "i";
    if (im == -1.0) return "-i";
    return format_number(im) + "i";
  }
  return "(" + format_number(re) + (im < 0 ? "-" : "+") + format_number(std::abs(im)) + "i)";
}

/// "e2 + i e3" style rendering against the algebra's basis names.
inline std::string format_element(const LieAlgebra& alg, const Element& x) {
  std::string out;
  for (int k = 0; k < x.size(); ++k) {
    const Complex c(linalg::snap(x[k].real()), linalg::snap(x[k].imag()));
    if (c == 0.0) continue;
    std::string coeff = format_complex(c);
    bool negative = false;
    if (!out.empty() && !coeff.empty() && coeff[0] == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    if (!out.empty()) out += negative ? " - " : " + ";
    if (coeff == "1") {
      coeff.clear();
    } else if (coeff == "-1") {
      coeff = "-";
    } else {
      coeff += " ";
    }
    out += coeff + alg.basis_names()[static_cast<std::size_t>(k)];
  }
  return out.empty() ? "0" : out;
}

inline Json basis_strings(const Subspace& v) {
  Json out = Json::array();
  for (const auto& e : v.canonical_span()) out.push_back(format_element(*v.ambient(), e));
  return out;
}

inline std::string format_root(const Root& r) {
  std::string out = "(";
  for (int k = 0; k < r.values.size(); ++k) {
    if (k) out += ", ";
    out += format_complex(r.values(k));
  }
  return out + ")";
}

inline VerificationReport root_report(const CartanBorelData& d) {
  VerificationReport rep("root_decomposition");
  rep.data["eigen_residual"] = d.eigen_residual;
  rep.data["tolerance"] = kEigenResidualTolerance;
  if (d.eigen_residual > kEigenResidualTolerance) rep.fail("eigen residual above tolerance");
  return rep;
}

inline AlgebraPtr checked_algebra(const std::string& spec, RunReport& run) {
  LieAlgebra alg = load_algebra(spec);
  VerificationReport jac = check_jacobi(alg);
  const bool ok = jac.pass;
  if (!ok) {
    run.summary["witness"] = jac.data["witness_names"];
    run.error = jac.message;
  }
  run.add(std::move(jac));
  if (!ok) {
    run.exit_code = kExitInput;
    return nullptr;
  }
  return share(std::move(alg));
}

inline CartanBorelData cartan_data(const AlgebraPtr& alg) {
  if (alg->field() == Field::real) return cartan_borel(*alg);
  if (!alg->has_real_form()) throw UnsupportedError("complex algebra '" + alg->name() + "' has no real form");
  return cartan_borel(alg);
}

}  // namespace detail

/// Dimension, rank, torus, roots and Borel data of an algebra.
inline RunReport cmd_describe(const PipelineConfig& cfg) {
  RunReport run;
  AlgebraPtr alg = detail::checked_algebra(cfg.algebra, run);
  if (!alg) return run;
  Json& s = run.summary;
  s["name"] = alg->name();
  s["field"] = to_string(alg->field());
  s["dim"] = alg->dim();
  s["basis"] = alg->basis_names();
  if (alg->torus_hint().empty()) {
    s["rank"] = nullptr;
    s["note"] = "no designated torus; root data skipped";
  } else {
    const CartanBorelData d = detail::cartan_data(alg);
    s["rank"] = d.rank();
    s["torus"] = detail::basis_strings(*d.torus_t);
    Json roots = Json::array();
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      Json r;
      r["values"] = root_to_json(d.roots[i]);
      r["positive"] = std::find(d.positive.begin(), d.positive.end(), static_cast<int>(i)) != d.positive.end();
      r["space"] = detail::basis_strings(d.root_spaces[i]);
      roots.push_back(std::move(r));
    }
    s["root_count"] = d.roots.size();
    s["roots"] = std::move(roots);
    s["borel"] = detail::basis_strings(d.borel());
    s["nilpotent"] = detail::basis_strings(d.nilpotent());
    run.add(detail::root_report(d));
  }
  run.exit_code = run.pass ? kExitPass : kExitFail;
  return run;
}

/// Conditions, oracle cross-check, invariant pair and the requested verifiers.
inline RunReport cmd_build(const PipelineConfig& cfg) {
  RunReport run;
  AlgebraPtr alg = detail::checked_algebra(cfg.algebra, run);
  if (!alg) return run;
  const CartanBorelData data = detail::cartan_data(alg);
  if (cfg.morphism.empty()) throw ArgumentError("build needs a morphism (--M or --morphism)");
  const bool inline_m = !cfg.morphism.empty() && cfg.morphism.front() == '[';
  const MorphismSpec spec =
      inline_m ? parse_inline_morphism(cfg.morphism, data.rank()) : load_morphism_file(cfg.morphism);
  spec.validate();
  if (spec.q != data.rank()) {
    throw ArgumentError("morphism has q = " + std::to_string(spec.q) + " rows but rank is " +
                        std::to_string(data.rank()));
  }
  const bool odd = spec.parity() == Parity::odd;
  std::vector<std::string> checks = cfg.checks;
  if (checks.empty()) {
    for (const auto& c : build_check_names()) {
      if (c != "nacs" || odd) checks.push_back(c);
    }
  }
  if (!odd && std::find(checks.begin(), checks.end(), "nacs") != checks.end()) {
    throw ArgumentError("nacs check needs odd l = (q+1)/2; this morphism is the even case");
  }
  auto wants = [&](const char* name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };
  run.config["checks"] = checks;

  run.summary["morphism"] = morphism_to_json(spec);
  run.summary["parity"] = odd ? "odd" : "even";
  const ConditionReport cond = check_condition(spec);
  const ConditionReport oracle = oracle_kernel_check(spec);
  // conditions always run: the pair is only defined when they hold
  run.add(cond.to_report());
  if (wants("oracle")) {
    // passes when the direct kernel computation reaches the same verdict
    VerificationReport rep("oracle");
    rep.data = oracle.to_json();
    rep.data["agrees"] = oracle.pass == cond.pass;
    if (oracle.pass != cond.pass) rep.fail("oracle disagrees with condition " + cond.condition);
    run.add(std::move(rep));
  }
  if (!cond.pass) {
    run.error = "condition " + cond.condition + " fails; pair not built";
    run.exit_code = kExitFail;
    return run;
  }

  const StructurePair pair = build_invariant_pair(spec, data);
  run.summary["l"] = detail::basis_strings(pair.l);
  if (pair.l_prime) run.summary["l_prime"] = detail::basis_strings(*pair.l_prime);
  if (pair.xi) run.summary["xi"] = detail::format_element(*alg, *pair.xi);
  run.summary["pair"] = pair_to_json(pair);
  if (wants("cr")) run.add(verify_cr(pair));
  if (wants("nacs")) run.add(verify_nacs(pair));
  if (wants("solvable")) run.add(verify_solvable(pair));
  if (wants("borel")) run.add(verify_borel_decomposition(pair, data));
  run.exit_code = run.pass ? kExitPass : kExitFail;
  return run;
}

/// The SU(2) model: analytic and sampled (IV), invariance, center invariance.
inline RunReport cmd_su2_action(const PipelineConfig& cfg) {
  RunReport run;
  const geom::ActionParams p{cfg.a, cfg.b};
  Json& s = run.summary;
  s["a"] = complex_to_json(p.a);
  s["b"] = complex_to_json(p.b);
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    VerificationReport rep("action");
    rep.fail(e.what());
    run.add(std::move(rep));
    run.error = e.what();
    run.exit_code = kExitFail;
    return run;
  }
  VerificationReport analytic = geom::check_condition_IV_analytic(p);
  VerificationReport sampled = geom::sample_transversality(p, cfg.radii, cfg.samples);
  s["mu"] = analytic.data.value("mu", Json(nullptr));
  s["analytic_pass"] = analytic.pass;
  s["sampled_pass"] = sampled.pass;
  s["witnesses"] = sampled.data["witnesses"];
  const bool analytic_pass = analytic.pass;
  run.add(std::move(analytic));
  run.add(std::move(sampled));
  if (analytic_pass) {
    VerificationReport inv = geom::check_invariance(p, cfg.seed);
    s["invariant"] = inv.data["invariant"];
    run.add(std::move(inv));
  } else {
    s["invariant"] = nullptr;
  }
  run.add(geom::center_invariance(p, cfg.seed));
  run.exit_code = run.pass ? kExitPass : kExitFail;
  return run;
}

/// Runs one subcommand under the configured tolerance. Input problems
/// become exit code 2 with the message in `error`.
inline RunReport run_pipeline(const PipelineConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunReport run;
  try {
    cfg.validate();
    ScopedTolerance scope(cfg.tolerance);
    if (cfg.command == "describe") {
      run = cmd_describe(cfg);
    } else if (cfg.command == "build") {
      run = cmd_build(cfg);
    } else if (cfg.command == "su2-action") {
      run = cmd_su2_action(cfg);
    } else {
      throw ArgumentError("unknown command '" + cfg.command + "'");
    }
  } catch (const Json::exception& e) {
    run = RunReport{};
    run.error = std::string("malformed JSON input: ") + e.what();
  } catch (const std::exception& e) {
    run = RunReport{};
    run.error = e.what();
  }
  if (!run.error.empty() && run.exit_code == kExitPass) run.exit_code = kExitInput;
  if (run.exit_code == kExitInput) run.pass = false;
  Json echo = cfg.to_json();
  if (run.config.contains("checks")) echo["checks"] = run.config["checks"];
  run.config = std::move(echo);
  if (cfg.timing) {
    run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return run;
}

// Rendering.

inline std::string render_json(const RunReport& r) { return r.to_json().dump(2) + "\n"; }

namespace detail {
inline void render_report(std::ostringstream& os, const VerificationReport& r, int depth) {
  os << std::string(static_cast<std::size_t>(2 * depth), ' ') << (r.pass ? "[pass] " : "[FAIL] ") << r.check;
  if (!r.message.empty()) os << ": " << r.message;
  os << "\n";
  for (const auto& s : r.sub) render_report(os, s, depth + 1);
}

inline std::string plain(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return format_complex({v[0].get<double>(), v[1].get<double>()});
  }
  if (v.is_array() && !v.empty() && v[0].is_string()) {
    std::string out = "<";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get<std::string>();
    return out + ">";
  }
  return v.dump();
}
}  // namespace detail

inline std::string render_text(const RunReport& r) {
  std::ostringstream os;
  os << r.config.value("command", std::string("run")) << ": " << (r.pass ? "PASS" : "FAIL") << " (exit " << r.exit_code
     << ")\n";
  if (!r.error.empty()) os << "error: " << r.error << "\n";
  for (const auto& [key, value] : r.summary.items()) {
    if (key == "pair" || key == "morphism" || key == "witnesses") continue;
    if (key == "roots") {
      os << "roots:\n";
      for (const auto& root : value) {
        os << "  " << (root["positive"].get<bool>() ? "+ " : "- ");
        std::string vals;
        for (const auto& v : root["values"]) vals += (vals.empty() ? "" : ", ") + detail::plain(v);
        os << "(" << vals << ")  space " << detail::plain(root["space"]) << "\n";
      }
    } else if (value.is_array() && !value.empty() && value[0].is_string()) {
      os << key << ": <";
      for (std::size_t i = 0; i < value.size(); ++i) os << (i ? ", " : "") << value[i].get<std::string>();
      os << ">\n";
    } else {
      os << key << ": " << detail::plain(value) << "\n";
    }
  }
  for (const auto& c : r.checks) detail::render_report(os, c, 0);
  if (r.wall_seconds) os << "wall time: " << *r.wall_seconds << " s\n";
  return os.str();
}

inline std::string render(const RunReport& r, OutputFormat f) {
  return f == OutputFormat::json ? render_json(r) : render_text(r);
}

}  // namespace liecr

#endif  // LIECR_PIPELINE_HPP
