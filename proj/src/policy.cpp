#include "cbal/policy.hpp"

#include <algorithm>
#include <utility>

#include "cbal/authority.hpp"
#include "cbal/errors.hpp"

namespace cbal {

std::string to_string(PartnerStance stance) {
  switch (stance) {
    case PartnerStance::conflict: return "conflict";
    case PartnerStance::cooperate: return "cooperate";
    case PartnerStance::neutral: return "neutral";
  }
  return "neutral";
}

std::string to_string(GlobalStance stance) {
  switch (stance) {
    case GlobalStance::globalize: return "globalize";
    case GlobalStance::protect: return "protect";
    case GlobalStance::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

PartnerStance classify(double elasticity, double threshold) {
  if (threshold < 0.0)
    raise(errc::bad_argument, "significance threshold must be nonnegative");
  if (elasticity < -threshold) return PartnerStance::conflict;
  if (elasticity > threshold) return PartnerStance::cooperate;
  return PartnerStance::neutral;
}

PolicyAnalyzer::PolicyAnalyzer(TradeMatrix matrix, Eigen::VectorXd pi,
                               Eigen::VectorXd gdp)
    : matrix_(std::move(matrix)),
      gdp_(std::move(gdp)),
      engine_(matrix_.P, std::move(pi)) {
  if (gdp_.size() != matrix_.size())
    raise(errc::bad_argument, "gdp vector does not match the country index");
  for (int k = 0; k < gdp_.size(); ++k)
    if (!(gdp_(k) > 0.0))
      raise(errc::bad_argument,
            "gdp must be positive for " + matrix_.index.code(k));
}

PartnerClassification PolicyAnalyzer::classify_partner(
    const std::string& actor, const std::string& partner,
    const ReactionRule& rule, double threshold) const {
  const int i = matrix_.index.position(actor);
  const int j = matrix_.index.position(partner);
  SensitivityResult result = engine_.tradewar(i, j, rule, &gdp_);
  Eigen::VectorXd elasticities = log_elasticity(result, engine_.pi());
  PartnerClassification out;
  out.actor = matrix_.index.code(i);
  out.partner = matrix_.index.code(j);
  out.elasticity = elasticities(i);
  out.lambda = result.lambda;
  out.threshold = threshold;
  out.stance = classify(out.elasticity, threshold);
  return out;
}

MidpointResolution PolicyAnalyzer::midpoint(const std::string& actor,
                                            const std::string& partner) const {
  const int i = matrix_.index.position(actor);
  const int j = matrix_.index.position(partner);
  RatioPair pair = ratios(engine_.pi(), gdp_, i, j);
  MidpointResolution out;
  out.actor = matrix_.index.code(i);
  out.partner = matrix_.index.code(j);
  out.authority_ratio = pair.authority_ratio;
  out.gdp_ratio = pair.gdp_ratio;
  out.midpoint = (pair.authority_ratio + pair.gdp_ratio) / 2.0;
  out.dollar_for_dollar = out.midpoint * gdp_(i) / gdp_(j);
  return out;
}

std::vector<PartnerClassification> PolicyAnalyzer::rank_targets(
    const std::string& actor, const ReactionRule& rule,
    double threshold) const {
  const int i = matrix_.index.position(actor);
  std::vector<PartnerClassification> out;
  for (int j = 0; j < matrix_.size(); ++j) {
    if (j == i || matrix_.P(j, i) == 0.0) continue;
    out.push_back(classify_partner(actor, matrix_.index.code(j), rule,
                                   threshold));
  }
  std::sort(out.begin(), out.end(),
            [](const PartnerClassification& a, const PartnerClassification& b) {
              if (a.elasticity != b.elasticity)
                return a.elasticity < b.elasticity;
              return a.partner < b.partner;
            });
  return out;
}

SideEffectReport PolicyAnalyzer::side_effects(const std::string& actor,
                                              const std::string& target,
                                              const ReactionRule& rule) const {
  const int i = matrix_.index.position(actor);
  const int j = matrix_.index.position(target);
  SensitivityResult result = engine_.tradewar(i, j, rule, &gdp_);
  Eigen::VectorXd elasticities = log_elasticity(result, engine_.pi());
  SideEffectReport out;
  out.actor = matrix_.index.code(i);
  out.target = matrix_.index.code(j);
  out.lambda = result.lambda;
  out.theta = result.theta;
  out.zero_sum_residual = result.zero_sum_residual;
  out.rows.reserve(matrix_.size());
  for (int k = 0; k < matrix_.size(); ++k) {
    SideEffectRow row;
    row.country = matrix_.index.code(k);
    row.d_pi = result.d_pi(k);
    row.elasticity = elasticities(k);
    row.sign = row.elasticity > 0.0 ? 1 : row.elasticity < 0.0 ? -1 : 0;
    out.rows.push_back(std::move(row));
  }
  return out;
}

GlobalizationStance PolicyAnalyzer::stance(const std::string& country,
                                           double threshold) const {
  const int i = matrix_.index.position(country);
  const ReactionRule authority{ReactionRule::Kind::authority_ratio, 0.0};
  const ReactionRule gdp{ReactionRule::Kind::gdp_ratio, 0.0};
  SensitivityResult at_authority = engine_.globalization(i, authority, &gdp_);
  SensitivityResult at_gdp = engine_.globalization(i, gdp, &gdp_);

  GlobalizationStance out;
  out.country = matrix_.index.code(i);
  out.threshold = threshold;
  out.elasticity_authority_rule =
      log_elasticity(at_authority, engine_.pi())(i);
  out.elasticity_gdp_rule = log_elasticity(at_gdp, engine_.pi())(i);
  const double a = out.elasticity_authority_rule;
  const double g = out.elasticity_gdp_rule;
  if (a < -threshold && g < -threshold)
    out.stance = GlobalStance::globalize;
  else if (a > threshold && g > threshold)
    out.stance = GlobalStance::protect;
  else
    out.stance = GlobalStance::indeterminate;
  return out;
}

}  // namespace cbal
