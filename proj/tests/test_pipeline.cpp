// JSON loading, flag parsing, subcommand pipelines and report round trips.

#include <gtest/gtest.h>

#include "liecr/pipeline.hpp"

namespace liecr {
namespace {

using C = std::complex<double>;

const std::string kSamples = LIECR_SAMPLES_DIR;

PipelineConfig config(std::string command) {
  PipelineConfig cfg;
  cfg.command = std::move(command);
  return cfg;
}

TEST(ParseComplex, AcceptedForms) {
  EXPECT_EQ(parse_complex("2"), C(2, 0));
  EXPECT_EQ(parse_complex("-0.5"), C(-0.5, 0));
  EXPECT_EQ(parse_complex("1e-3"), C(1e-3, 0));
  EXPECT_EQ(parse_complex("i"), C(0, 1));
  EXPECT_EQ(parse_complex("-i"), C(0, -1));
  EXPECT_EQ(parse_complex("3i"), C(0, 3));
  EXPECT_EQ(parse_complex("1+2i"), C(1, 2));
  EXPECT_EQ(parse_complex("1-i"), C(1, -1));
  EXPECT_EQ(parse_complex(" 0.25 - 1.5i "), C(0.25, -1.5));
  EXPECT_EQ(parse_complex("[1, -2]"), C(1, -2));
  EXPECT_EQ(parse_complex("2e1+3e-1i"), C(20, 0.3));
}

TEST(ParseComplex, Rejects) {
  for (const char* bad : {"", "x", "1+", "1+2", "[1]", "[1,2,3]", "1+2j", "i1", "--1"}) {
    EXPECT_THROW(parse_complex(bad), ArgumentError) << bad;
  }
}

TEST(InlineMorphism, ShapesFromRank) {
  auto m = parse_inline_morphism("[[1,0],[0,1]]", 2);
  EXPECT_EQ(m.q, 2);
  EXPECT_EQ(m.l, 1);
  EXPECT_EQ(m.M(1, 0), C(0, 1));

  auto su4 = parse_inline_morphism("[[0,0],[1,0],[0,0],[0,1],[1,0],[0,0]]", 3);
  EXPECT_EQ(su4.l, 2);
  EXPECT_EQ(su4.M(1, 1), C(0, 1));
  EXPECT_EQ(su4.M(2, 0), C(1, 0));

  auto nested = parse_inline_morphism(R"([[[0,0],[1,0]],[[0,0],"i"],[1,0]])", 3);
  EXPECT_EQ(nested.M(1, 1), C(0, 1));
  EXPECT_EQ(nested.M(2, 0), C(1, 0));

  EXPECT_THROW(parse_inline_morphism("[[1,0],[2,0],[3,0]]", 2), ArgumentError);
  EXPECT_THROW(parse_inline_morphism("[[1,0]", 1), ArgumentError);
  EXPECT_THROW(parse_inline_morphism("[]", 1), ArgumentError);
}

TEST(LoadAlgebra, SampleFiles) {
  auto so3 = load_algebra(kSamples + "/so3_cartesian.json");
  EXPECT_EQ(so3.dim(), 3);
  EXPECT_TRUE(so3.is_exact());
  EXPECT_TRUE(check_jacobi(so3).pass);
  EXPECT_EQ(so3.torus_hint().size(), 1u);

  auto bad = load_algebra(kSamples + "/bad_jacobi.json");
  EXPECT_FALSE(bad.is_exact());
  EXPECT_FALSE(check_jacobi(bad).pass);

  EXPECT_EQ(load_algebra("su(3)").dim(), 8);
  EXPECT_THROW(load_algebra("nosuch"), ArgumentError);
  EXPECT_THROW(algebra_from_json(Json::parse(R"({"dim": 2, "brackets": [[0, 1, [[5, 1]]]]})")), ArgumentError);
  EXPECT_THROW(algebra_from_json(Json::parse(R"({"basis": ["a"], "field": "quaternion"})")), ArgumentError);
}

TEST(Describe, Examples) {
  auto cfg = config("describe");
  cfg.algebra = "su2";
  auto su2r = run_pipeline(cfg);
  EXPECT_EQ(su2r.exit_code, kExitPass);
  EXPECT_EQ(su2r.summary["rank"], 1);
  EXPECT_EQ(su2r.summary["root_count"], 2);
  EXPECT_EQ(su2r.summary["nilpotent"], Json::array({"e2 + i e3"}));

  cfg.algebra = "su3";
  auto su3r = run_pipeline(cfg);
  EXPECT_EQ(su3r.summary["rank"], 2);
  EXPECT_EQ(su3r.summary["root_count"], 6);

  cfg.algebra = kSamples + "/so3_cartesian.json";
  auto so3 = run_pipeline(cfg);
  EXPECT_EQ(so3.exit_code, kExitPass);
  EXPECT_EQ(so3.summary["root_count"], 2);

  cfg.algebra = kSamples + "/heisenberg.json";
  auto heis = run_pipeline(cfg);
  EXPECT_EQ(heis.exit_code, kExitPass);
  EXPECT_TRUE(heis.summary["rank"].is_null());

  cfg.algebra = kSamples + "/bad_jacobi.json";
  auto bad = run_pipeline(cfg);
  EXPECT_EQ(bad.exit_code, kExitInput);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.summary["witness"], Json::array({"e1", "e2", "e3"}));
}

TEST(Build, Examples) {
  auto cfg = config("build");
  cfg.algebra = "su2";
  cfg.morphism = "[[1,0]]";
  auto su2r = run_pipeline(cfg);
  EXPECT_EQ(su2r.exit_code, kExitPass);
  ASSERT_NE(su2r.find("verify_nacs"), nullptr);
  EXPECT_TRUE(su2r.find("verify_nacs")->pass);
  EXPECT_EQ(su2r.summary["l_prime"], Json::array({"e1", "e2 + i e3"}));

  cfg.algebra = "su3";
  cfg.morphism = "[[1,0],[0,1]]";
  auto su3r = run_pipeline(cfg);
  EXPECT_EQ(su3r.exit_code, kExitPass);
  EXPECT_EQ(su3r.find("verify_nacs"), nullptr);
  EXPECT_TRUE(su3r.find("verify_cr")->pass);

  cfg.morphism = "[[1,0],[2,0]]";
  auto degenerate = run_pipeline(cfg);
  EXPECT_EQ(degenerate.exit_code, kExitFail);
  const auto* cond = degenerate.find("condition_I");
  ASSERT_NE(cond, nullptr);
  EXPECT_EQ(cond->data["det"], 0.0);
  EXPECT_EQ(degenerate.find("verify_cr"), nullptr);
  EXPECT_TRUE(degenerate.find("oracle")->pass);

  cfg.morphism = kSamples + "/su3_complex.json";
  EXPECT_EQ(run_pipeline(cfg).exit_code, kExitPass);

  cfg.algebra = "su4";
  cfg.morphism = kSamples + "/su4_morphism.json";
  cfg.checks = {"nacs"};
  auto su4r = run_pipeline(cfg);
  EXPECT_EQ(su4r.exit_code, kExitPass);
  EXPECT_EQ(su4r.config["checks"], Json::array({"nacs"}));
}

TEST(Build, InputErrors) {
  auto cfg = config("build");
  cfg.algebra = "su3";
  cfg.morphism = "[[1,0],[0,1]]";
  cfg.checks = {"nacs"};
  EXPECT_EQ(run_pipeline(cfg).exit_code, kExitInput);  // even case has no nacs
  cfg.checks = {"bogus"};
  EXPECT_EQ(run_pipeline(cfg).exit_code, kExitInput);
  cfg.checks.clear();
  cfg.tolerance = 0.1;
  EXPECT_EQ(run_pipeline(cfg).exit_code, kExitInput);
  cfg.tolerance = kDefaultTolerance;
  cfg.algebra = kSamples + "/heisenberg.json";
  EXPECT_EQ(run_pipeline(cfg).exit_code, kExitInput);  // no torus
  cfg.algebra = "su2";
  cfg.morphism = kSamples + "/su4_morphism.json";
  EXPECT_EQ(run_pipeline(cfg).exit_code, kExitInput);  // q != rank
}

TEST(Su2Action, Examples) {
  auto cfg = config("su2-action");
  cfg.a = 0.0;
  auto inv = run_pipeline(cfg);
  EXPECT_EQ(inv.exit_code, kExitPass);
  EXPECT_EQ(inv.summary["invariant"], true);

  cfg.a = 0.3333333333;
  auto non = run_pipeline(cfg);
  EXPECT_EQ(non.exit_code, kExitPass);
  EXPECT_EQ(non.summary["invariant"], false);
  EXPECT_NEAR(non.summary["mu"].get<double>(), 2.0, 1e-9);

  cfg.a = C(0, 1);
  auto fail = run_pipeline(cfg);
  EXPECT_EQ(fail.exit_code, kExitFail);
  EXPECT_EQ(fail.summary["analytic_pass"], false);
  EXPECT_EQ(fail.summary["sampled_pass"], false);

  cfg.a = 0.0;
  cfg.b = 0.0;
  EXPECT_EQ(run_pipeline(cfg).exit_code, kExitFail);
}

TEST(Reports, JsonRoundTripIsByteIdentical) {
  std::vector<PipelineConfig> cfgs;
  auto b = config("build");
  b.algebra = "su4";
  b.morphism = kSamples + "/su4_morphism.json";
  cfgs.push_back(b);
  auto d = config("describe");
  d.algebra = "su3";
  cfgs.push_back(d);
  auto a = config("su2-action");
  a.a = C(0.2, 0.0);
  cfgs.push_back(a);
  auto bad = config("describe");
  bad.algebra = kSamples + "/bad_jacobi.json";
  cfgs.push_back(bad);
  for (const auto& cfg : cfgs) {
    const std::string once = render_json(run_pipeline(cfg));
    const std::string twice = render_json(RunReport::from_json(Json::parse(once)));
    EXPECT_EQ(once, twice) << cfg.command;
  }
}

TEST(Reports, DeterministicGivenSeed) {
  auto cfg = config("su2-action");
  cfg.a = C(0.4, 0.0);
  cfg.seed = 17;
  EXPECT_EQ(render_json(run_pipeline(cfg)), render_json(run_pipeline(cfg)));
  cfg.timing = true;
  EXPECT_TRUE(run_pipeline(cfg).wall_seconds.has_value());
  cfg.timing = false;
  EXPECT_FALSE(run_pipeline(cfg).to_json().contains("wall_seconds"));
}

TEST(Reports, ExitCodeMatchesPass) {
  auto cfg = config("su2-action");
  for (C a : {C(0, 0), C(0.5, 0), C(0, 1), C(-3, 0)}) {
    cfg.a = a;
    auto r = run_pipeline(cfg);
    EXPECT_EQ(r.exit_code == kExitPass, r.pass);
  }
}

TEST(Reports, TextRendering) {
  auto cfg = config("build");
  cfg.algebra = "su2";
  cfg.morphism = "[[1,0]]";
  const std::string text = render_text(run_pipeline(cfg));
  EXPECT_NE(text.find("build: PASS (exit 0)"), std::string::npos);
  EXPECT_NE(text.find("l: <e2 + i e3>"), std::string::npos);
  EXPECT_NE(text.find("[pass] verify_nacs"), std::string::npos);
}

}  // namespace
}  // namespace liecr
