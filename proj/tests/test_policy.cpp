#include <doctest.h>

#include <cmath>
#include <functional>

#include "cbal/authority.hpp"
#include "cbal/errors.hpp"
#include "cbal/policy.hpp"
#include "cbal/trade_matrix.hpp"
#include "helpers.hpp"

using namespace cbal;

namespace {

errc code_of(const std::function<void()>& run) {
  try {
    run();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return errc::bad_argument;
}

// Four-country network with integer flows. DDD ships nothing to AAA, so
// AAA has no import channel from DDD to cut.
PolicyAnalyzer make_analyzer() {
  BilateralFlowTable flows;
  flows.add("AAA", "BBB", 150.0);
  flows.add("AAA", "CCC", 100.0);
  flows.add("AAA", "DDD", 50.0);
  flows.add("BBB", "AAA", 100.0);
  flows.add("BBB", "CCC", 50.0);
  flows.add("BBB", "DDD", 25.0);
  flows.add("CCC", "AAA", 120.0);
  flows.add("CCC", "BBB", 80.0);
  flows.add("CCC", "DDD", 40.0);
  flows.add("DDD", "BBB", 60.0);
  flows.add("DDD", "CCC", 40.0);
  GdpTable gdp;
  gdp.values = {{"AAA", 1000.0}, {"BBB", 500.0}, {"CCC", 800.0},
                {"DDD", 400.0}};

  CountryIndex index = CountryIndex::sorted(flows.countries());
  TradeMatrix tm = build_matrix(flows, gdp, index);
  Eigen::VectorXd pi = authority_distribution(tm.P).pi;
  Eigen::VectorXd g(4);
  for (int k = 0; k < 4; ++k) g(k) = gdp.at(index.code(k));
  return PolicyAnalyzer(std::move(tm), std::move(pi), std::move(g));
}

}  // namespace

TEST_CASE("elasticity classification against the significance bar") {
  CHECK(classify(-0.051, 0.05) == PartnerStance::conflict);
  CHECK(classify(0.051, 0.05) == PartnerStance::cooperate);
  CHECK(classify(-0.05, 0.05) == PartnerStance::neutral);  // strict
  CHECK(classify(0.05, 0.05) == PartnerStance::neutral);
  CHECK(classify(0.0, 0.05) == PartnerStance::neutral);
  CHECK(classify(-1e-300, 0.0) == PartnerStance::conflict);
  CHECK(classify(0.0, 0.0) == PartnerStance::neutral);
  CHECK(code_of([] { classify(0.1, -0.01); }) == errc::bad_argument);

  CHECK(to_string(PartnerStance::conflict) == "conflict");
  CHECK(to_string(PartnerStance::cooperate) == "cooperate");
  CHECK(to_string(PartnerStance::neutral) == "neutral");
  CHECK(to_string(GlobalStance::globalize) == "globalize");
  CHECK(to_string(GlobalStance::protect) == "protect");
  CHECK(to_string(GlobalStance::indeterminate) == "indeterminate");
}

TEST_CASE("analyzer rejects misaligned or nonpositive gdp") {
  Eigen::MatrixXd P = fixtures::two_country();
  TradeMatrix tm;
  tm.index = CountryIndex::sorted({"AAA", "BBB"});
  tm.P = P;
  Eigen::VectorXd pi = authority_distribution(P).pi;

  Eigen::VectorXd short_gdp(1);
  short_gdp << 1.0;
  CHECK(code_of([&] { PolicyAnalyzer(tm, pi, short_gdp); }) ==
        errc::bad_argument);

  Eigen::VectorXd zero_gdp(2);
  zero_gdp << 1.0, 0.0;
  CHECK(code_of([&] { PolicyAnalyzer(tm, pi, zero_gdp); }) ==
        errc::bad_argument);
}

TEST_CASE("midpoint settlement arithmetic") {
  PolicyAnalyzer analyzer = make_analyzer();
  const Eigen::VectorXd& pi = analyzer.pi();
  int a = analyzer.index().position("AAA");
  int b = analyzer.index().position("BBB");

  MidpointResolution mid = analyzer.midpoint("AAA", "BBB");
  CHECK(mid.actor == "AAA");
  CHECK(mid.partner == "BBB");
  CHECK(mid.authority_ratio == pi(b) / pi(a));
  CHECK(mid.gdp_ratio == 0.5);  // 500 / 1000
  CHECK(mid.midpoint == (mid.authority_ratio + mid.gdp_ratio) / 2.0);
  CHECK(mid.dollar_for_dollar == mid.midpoint * 2.0);

  CHECK(code_of([&] { analyzer.midpoint("AAA", "AAA"); }) ==
        errc::same_country);
  CHECK(code_of([&] { analyzer.midpoint("AAA", "ZZZ"); }) ==
        errc::unknown_country);
}

TEST_CASE("matching retaliation is the status quo: nothing moves") {
  PolicyAnalyzer analyzer = make_analyzer();
  const ReactionRule rule{ReactionRule::Kind::authority_ratio, 0.0};

  PartnerClassification pc = analyzer.classify_partner("AAA", "BBB", rule);
  CHECK(pc.elasticity == 0.0);
  CHECK(pc.stance == PartnerStance::neutral);
  int a = analyzer.index().position("AAA");
  int b = analyzer.index().position("BBB");
  CHECK(pc.lambda == analyzer.pi()(b) / analyzer.pi()(a));

  SideEffectReport report = analyzer.side_effects("AAA", "BBB", rule);
  CHECK(report.zero_sum_residual == 0.0);
  for (const auto& row : report.rows) {
    CHECK(row.d_pi == 0.0);
    CHECK(row.elasticity == 0.0);
    CHECK(row.sign == 0);
  }
}

TEST_CASE("partner classification matches a direct derivative call") {
  PolicyAnalyzer analyzer = make_analyzer();
  const ReactionRule rule = ReactionRule::explicit_value_rule(2.5);
  int a = analyzer.index().position("AAA");
  int c = analyzer.index().position("CCC");

  PartnerClassification pc = analyzer.classify_partner("AAA", "CCC", rule);
  SensitivityResult direct =
      analyzer.engine().tradewar(a, c, rule, &analyzer.gdp());
  CHECK(pc.lambda == 2.5);
  CHECK(pc.elasticity == log_elasticity(direct, analyzer.pi())(a));
  CHECK(pc.stance == classify(pc.elasticity, kDefaultThreshold));

  SUBCASE("no import channel means no classification") {
    // DDD ships nothing to AAA.
    CHECK(code_of([&] { analyzer.classify_partner("AAA", "DDD", rule); }) ==
          errc::zero_base_entry);
  }
}

TEST_CASE("target ranking is deterministic and skips dead channels") {
  PolicyAnalyzer analyzer = make_analyzer();

  SUBCASE("authority rule ties break by code") {
    const ReactionRule rule{ReactionRule::Kind::authority_ratio, 0.0};
    auto ranked = analyzer.rank_targets("AAA", rule);
    REQUIRE(ranked.size() == 2);  // DDD omitted: zero base entry
    CHECK(ranked[0].partner == "BBB");
    CHECK(ranked[1].partner == "CCC");
    CHECK(ranked[0].elasticity == 0.0);
    CHECK(ranked[1].elasticity == 0.0);
  }

  SUBCASE("gdp rule sorts ascending by elasticity") {
    const ReactionRule rule{ReactionRule::Kind::gdp_ratio, 0.0};
    auto ranked = analyzer.rank_targets("DDD", rule);
    REQUIRE(ranked.size() == 3);  // everyone ships to DDD
    for (std::size_t k = 1; k < ranked.size(); ++k)
      CHECK(ranked[k - 1].elasticity <= ranked[k].elasticity);
    for (const auto& entry : ranked) {
      PartnerClassification direct =
          analyzer.classify_partner("DDD", entry.partner, rule);
      CHECK(entry.elasticity == direct.elasticity);
      CHECK(entry.stance == direct.stance);
    }
  }
}

TEST_CASE("side effect report covers everyone and balances to zero") {
  PolicyAnalyzer analyzer = make_analyzer();
  const ReactionRule rule{ReactionRule::Kind::gdp_ratio, 0.0};
  SideEffectReport report = analyzer.side_effects("BBB", "CCC", rule);

  CHECK(report.actor == "BBB");
  CHECK(report.target == "CCC");
  CHECK(report.lambda == 800.0 / 500.0);
  CHECK(report.theta == 80.0 / 800.0);  // CCC's exports to BBB over its GDP

  REQUIRE(static_cast<int>(report.rows.size()) == analyzer.index().size());
  double sum = 0.0;
  for (int k = 0; k < analyzer.index().size(); ++k) {
    const SideEffectRow& row = report.rows[k];
    CHECK(row.country == analyzer.index().code(k));
    sum += row.d_pi;
    if (row.d_pi > 0.0) CHECK(row.sign == 1);
    if (row.d_pi < 0.0) CHECK(row.sign == -1);
  }
  CHECK(std::abs(sum) <= 1e-10);
  CHECK(report.zero_sum_residual <= 1e-10);
}

TEST_CASE("globalization stance agrees with both extreme rules") {
  PolicyAnalyzer analyzer = make_analyzer();
  int i = analyzer.index().position("AAA");
  const ReactionRule authority{ReactionRule::Kind::authority_ratio, 0.0};
  const ReactionRule gdp{ReactionRule::Kind::gdp_ratio, 0.0};

  SensitivityResult at_a =
      analyzer.engine().globalization(i, authority, &analyzer.gdp());
  SensitivityResult at_g =
      analyzer.engine().globalization(i, gdp, &analyzer.gdp());
  double ea = log_elasticity(at_a, analyzer.pi())(i);
  double eg = log_elasticity(at_g, analyzer.pi())(i);

  GlobalizationStance stance = analyzer.stance("AAA");
  CHECK(stance.country == "AAA");
  CHECK(stance.elasticity_authority_rule == ea);
  CHECK(stance.elasticity_gdp_rule == eg);
  CHECK(stance.threshold == kDefaultThreshold);

  GlobalStance expected = GlobalStance::indeterminate;
  if (ea < -kDefaultThreshold && eg < -kDefaultThreshold)
    expected = GlobalStance::globalize;
  else if (ea > kDefaultThreshold && eg > kDefaultThreshold)
    expected = GlobalStance::protect;
  CHECK(stance.stance == expected);

  SUBCASE("an unreachable bar leaves the call open") {
    GlobalizationStance timid = analyzer.stance("AAA", 1e9);
    CHECK(timid.stance == GlobalStance::indeterminate);
  }
  SUBCASE("a zero bar decides whenever the signs agree") {
    GlobalizationStance bold = analyzer.stance("AAA", 0.0);
    if (ea < 0.0 && eg < 0.0) CHECK(bold.stance == GlobalStance::globalize);
    if (ea > 0.0 && eg > 0.0) CHECK(bold.stance == GlobalStance::protect);
  }
}
