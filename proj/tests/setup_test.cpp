#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nuframe/errors.hpp"
#include "nuframe/grid.hpp"
#include "nuframe/parser.hpp"
#include "nuframe/presets.hpp"
#include "nuframe/setup.hpp"

using namespace nuframe;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

GeneralSetup make(std::vector<const char*> filters, const char* psi0 = "chi[0,1/8]",
                  std::optional<const char*> theta = std::nullopt) {
  std::vector<FreqExpr> h;
  for (const char* f : filters) h.push_back(parse_expr(f));
  std::optional<FreqExpr> t;
  if (theta) t = parse_expr(*theta);
  return GeneralSetup(TranslationSet::create(2, 3), parse_expr(psi0), std::move(h), std::move(t));
}

double chi_closed(double x, double lo, double hi) { return (x >= lo && x <= hi) ? 1.0 : 0.0; }

// Brute-force OEP residual on the default midpoint grid over [0, 1/2] for
// filters (chi[0,1/32], c * (1 - chi[0,1/32])) and constant theta.
double oep_oracle_indicator_pair(double theta, double c) {
  const std::size_t n = std::size_t{1} << kDefaultGridLog2;
  const double h = 0.5 / static_cast<double>(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = (static_cast<double>(k) + 0.5) * h;
    const double h0 = chi_closed(x, 0.0, 1.0 / 32);
    const double h1 = c * (1.0 - h0);
    worst = std::max(worst, std::abs(theta * h0 * h0 + h1 * h1 - theta));
  }
  return worst;
}

}  // namespace

TEST(Presets, Load) {
  const GeneralSetup a = preset("ex5.1");
  EXPECT_EQ(a.generator_count(), 3u);
  EXPECT_EQ(a.ts().N(), 2);
  EXPECT_EQ(a.ts().r(), 3);
  EXPECT_TRUE(a.theta().has_value());
  EXPECT_EQ(preset("ex5.2").generator_count(), 1u);
  EXPECT_EQ(preset_names(), (std::vector<std::string>{"ex5.1", "ex5.2"}));
  EXPECT_EQ(code_of([] { (void)preset("ex5.3"); }), ErrorCode::InvalidArgument);
}

TEST(Presets, JsonErrors) {
  EXPECT_EQ(code_of([] { (void)setup_from_json("{"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)setup_from_json("[]"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)setup_from_json(R"({"N": 2, "r": 3, "filters": ["1", "0"]})"); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] {
              (void)setup_from_json(R"({"N": 2, "r": 2, "psi0_hat": "1", "filters": ["1", "0"]})");
            }),
            ErrorCode::RejectEvenR);
  EXPECT_EQ(code_of([] {
              (void)setup_from_json(R"({"N": 2, "r": 3, "psi0_hat": "1", "filters": ["1"]})");
            }),
            ErrorCode::TooFewFilters);
  EXPECT_EQ(code_of([] {
              (void)setup_from_json(R"({"N": 2, "r": 3, "psi0_hat": "sin(", "filters": ["1", "0"]})");
            }),
            ErrorCode::SyntaxError);
  const GeneralSetup s = setup_from_json(R"({"N": 1, "r": 1, "psi0": "chi[0,1/4]", "filters": ["1", "0"]})");
  EXPECT_FALSE(s.theta().has_value());
}

TEST(Validate, Example51) {
  const ConditionReport r = validate_setup(preset("ex5.1"));
  EXPECT_LE(r.refinement_residual, 1e-12);
  EXPECT_EQ(r.support_leak, 0.0);
  EXPECT_LE(r.limit_deviation, 1e-7);
  EXPECT_LE(*r.uep_residual, 1e-12);
  EXPECT_TRUE(r.passed());
}

TEST(Validate, Example52) {
  const ConditionReport r = validate_setup(preset("ex5.2"));
  EXPECT_EQ(r.refinement_residual, 0.0);
  EXPECT_EQ(r.support_leak, 0.0);
  EXPECT_EQ(r.limit_deviation, 0.0);
  EXPECT_EQ(*r.uep_residual, 0.0);
  EXPECT_EQ(*r.oep_residual, 0.0);
  EXPECT_TRUE(r.passed());
}

TEST(Validate, WideScalingSymbolLeaks) {
  const ConditionReport r = validate_setup(make({"chi[0,1/32]", "1 - chi[0,1/32]"}, "chi[0,1/2]"));
  EXPECT_EQ(r.support_leak, 1.0);
  EXPECT_FALSE(r.passed());
}

TEST(Validate, EvaluationErrorsBecomeFailures) {
  const ConditionReport r = validate_setup(make({"sqrt(0 - 1)", "1"}));
  EXPECT_TRUE(std::isinf(*r.uep_residual));
  EXPECT_FALSE(r.passed());
}

TEST(Validate, OptionChecks) {
  EXPECT_EQ(code_of([] { (void)validate_setup(preset("ex5.2"), {.grid_log2 = 8}); }), ErrorCode::BadGrid);
  EXPECT_EQ(code_of([] { (void)validate_setup(preset("ex5.2"), {.tol = 0.0}); }),
            ErrorCode::InvalidArgument);
}

TEST(DeriveGenerator, Example52) {
  const FreqExpr psi1 = derive_generator(preset("ex5.2"), 1);
  EXPECT_EQ(psi1(0.2).real(), 1.0);
  EXPECT_EQ(psi1(0.1).real(), 0.0);
  EXPECT_EQ(psi1(0.5).real(), 1.0);
  EXPECT_EQ(psi1(0.51).real(), 0.0);
}

TEST(DeriveGenerator, Example51ThirdGeneratorIsNotZero) {
  // psi3(g) = (1 - chi(0,1/32](g/4)) sinc(g/4) chi(0,1/8](g/4) = sinc(g/4) on (1/8, 1/2].
  const FreqExpr psi3 = derive_generator(preset("ex5.1"), 3);
  for (double g : {0.13, 0.3, 0.5}) {
    EXPECT_NEAR(psi3(g).real(), std::sin(g / 4) / (g / 4), 1e-15) << g;
  }
  for (double g : {0.01, 0.1, 0.125, 0.6}) EXPECT_EQ(psi3(g), std::complex<double>(0.0)) << g;
}

TEST(DeriveGenerator, SupportWithinHalf) {
  for (const auto& name : preset_names()) {
    const GeneralSetup s = preset(name);
    for (std::size_t l = 1; l <= s.generator_count(); ++l) {
      const FreqExpr psi = derive_generator(s, l);
      const FrequencyGrid outside(Rational(1, 2), 4, 12);
      for (std::size_t k = 0; k < outside.size(); ++k) {
        EXPECT_EQ(psi(outside.point(k)), std::complex<double>(0.0));
        EXPECT_EQ(psi(-outside.point(k)), std::complex<double>(0.0));
      }
    }
  }
}

TEST(DeriveGenerator, IndexRange) {
  const GeneralSetup s = preset("ex5.2");
  EXPECT_EQ(code_of([&] { (void)derive_generator(s, 0); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { (void)derive_generator(s, 2); }), ErrorCode::IndexOutOfRange);
}

TEST(Uep, Residuals) {
  EXPECT_LE(uep_residual(preset("ex5.1")), 1e-12);
  EXPECT_EQ(uep_residual(make({"chi[0,1/32]", "1 - chi[0,1/32]"})), 0.0);
  EXPECT_EQ(uep_residual(make({"chi[0,1/32]", "0"})), 1.0);
}

TEST(Uep, InvariantUnderUnimodularFactor) {
  const GeneralSetup s = preset("ex5.1");
  for (std::size_t l = 0; l < s.filters().size(); ++l) {
    for (const FreqExpr& c : {fx::imaginary_unit(), fx::constant(-1)}) {
      auto filters = s.filters();
      filters[l] = c * filters[l];
      const GeneralSetup t(s.ts(), s.psi0_hat(), filters, s.theta());
      EXPECT_EQ(uep_residual(t), uep_residual(s)) << l;
    }
  }
}

TEST(Oep, Example52) {
  const OepResult r = oep_residual(preset("ex5.2"));
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_EQ(r.theta_min, 1.0);
  EXPECT_EQ(r.theta_limit_deviation, 0.0);
}

TEST(Oep, UnitThetaMatchesUep) {
  const GeneralSetup s = preset("ex5.1");
  EXPECT_EQ(oep_residual(s).residual, uep_residual(s));
  const GeneralSetup broken = make({"chi[0,1/32]", "0"}, "chi[0,1/8]", "1");
  EXPECT_EQ(oep_residual(broken).residual, uep_residual(broken));
}

TEST(Oep, ConstantThetaTwoAgainstGridOracle) {
  const GeneralSetup s = make({"chi[0,1/32]", "1 - chi[0,1/32]"}, "chi[0,1/8]", "2");
  const double oracle = oep_oracle_indicator_pair(2.0, 1.0);
  EXPECT_EQ(oracle, 1.0);
  EXPECT_EQ(oep_residual(s).residual, oracle);
}

TEST(Oep, ThetaErrors) {
  EXPECT_EQ(code_of([] { (void)oep_residual(make({"1", "0"})); }), ErrorCode::ThetaMissing);
  EXPECT_EQ(code_of([] { (void)oep_residual(make({"1", "0"}, "chi[0,1/8]", "0 - 1")); }),
            ErrorCode::ThetaNotPositive);
  EXPECT_EQ(code_of([] { (void)oep_residual(make({"1", "0"}, "chi[0,1/8]", "chi[0,1/4]")); }),
            ErrorCode::ThetaNotPositive);
}

TEST(OepNormalize, UnitThetaLeavesFiltersUnchanged) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& name : preset_names()) {
    const GeneralSetup s = preset(name);
    const GeneralSetup t = oep_normalize(s);
    ASSERT_EQ(t.filters().size(), s.filters().size());
    for (int k = 0; k < 1000; ++k) {
      const double g = u(rng);
      for (std::size_t l = 0; l < s.filters().size(); ++l) {
        EXPECT_LE(std::abs(t.filters()[l](g) - s.filters()[l](g)), 1e-15);
      }
      EXPECT_LE(std::abs(t.psi0_hat()(g) - s.psi0_hat()(g)), 1e-15);
    }
  }
  EXPECT_EQ(uep_residual(oep_normalize(preset("ex5.2"))), 0.0);
}

TEST(OepNormalize, ResidualBoundAndGenerators) {
  const GeneralSetup s = make({"chi[0,1/32]", "1.00000001*sqrt(2)*(1 - chi[0,1/32])"}, "chi[0,1/8]", "2");
  const OepResult oep = oep_residual(s);
  EXPECT_NEAR(oep.residual, 2.0 * ((1 + 1e-8) * (1 + 1e-8) - 1), 1e-14);
  const GeneralSetup t = oep_normalize(s);
  EXPECT_LE(uep_residual(t), oep.residual / oep.theta_min * (1 + 1e-6));
  for (double g : {0.05, 0.2, 0.3, 0.45}) {
    EXPECT_LE(std::abs(derive_generator(t, 1)(g) - derive_generator(s, 1)(g)), 1e-15) << g;
  }
  EXPECT_EQ(code_of([] { (void)oep_normalize(make({"1", "0"})); }), ErrorCode::ThetaMissing);
}

TEST(Corollary, DegenerateLowPass) {
  const auto ts = TranslationSet::create(2, 3);
  const GeneralSetup s = corollary_two_generator(parse_expr("chi[0,1/8]"), FreqExpr(), fx::constant(1), ts);
  EXPECT_EQ(s.generator_count(), 2u);
  EXPECT_EQ(s.filters().size(), 3u);
  EXPECT_EQ(oep_residual(s).residual, 0.0);
}

TEST(Corollary, Example52ExposesResidual) {
  const GeneralSetup base = preset("ex5.2");
  const GeneralSetup s =
      corollary_two_generator(base.psi0_hat(), base.filters()[0], *base.theta(), base.ts());
  // Oracle: the identity's left side exceeds theta by 2 theta(4g) |H0(g)|^2.
  const std::size_t n = std::size_t{1} << kDefaultGridLog2;
  double oracle = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = (static_cast<double>(k) + 0.5) * (0.5 / static_cast<double>(n));
    oracle = std::max(oracle, 2.0 * chi_closed(x, 0.0, 1.0 / 32));
  }
  EXPECT_EQ(oracle, 2.0);
  EXPECT_NEAR(oep_residual(s).residual, oracle, 1e-10);
  EXPECT_EQ(code_of([&] {
              (void)corollary_two_generator(base.psi0_hat(), base.filters()[0], parse_expr("0 - 1"),
                                            base.ts());
            }),
            ErrorCode::ThetaNotPositive);
}
