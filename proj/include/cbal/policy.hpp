#pragma once

#include <eigen3/Eigen/Dense>
#include <string>
#include <vector>

#include "cbal/sensitivity.hpp"
#include "cbal/trade_matrix.hpp"

namespace cbal {

/// Significance bar on log elasticities; moves sized below it are noise.
constexpr double kDefaultThreshold = 0.05;

enum class PartnerStance { conflict, cooperate, neutral };
enum class GlobalStance { globalize, protect, indeterminate };

std::string to_string(PartnerStance stance);
std::string to_string(GlobalStance stance);

/// conflict below -threshold, cooperate above +threshold, else neutral.
PartnerStance classify(double elasticity, double threshold);

/// Actor i's reading of partner j: the elasticity of i's own authority to
/// cutting imports from j, classified against the significance bar.
struct PartnerClassification {
  std::string actor;
  std::string partner;
  PartnerStance stance = PartnerStance::neutral;
  double elasticity = 0.0;  // raw log elasticity, not per-mille
  double lambda = 0.0;      // resolved reaction coefficient
  double threshold = kDefaultThreshold;
};

/// The even split between the two natural reaction coefficients, plus the
/// same settlement expressed in actor dollars per partner dollar.
struct MidpointResolution {
  std::string actor;
  std::string partner;
  double authority_ratio = 0.0;    // pi_partner / pi_actor
  double gdp_ratio = 0.0;          // gdp_partner / gdp_actor
  double midpoint = 0.0;           // their average
  double dollar_for_dollar = 0.0;  // midpoint * gdp_actor / gdp_partner
};

/// Self-exposure verdict: globalize only when shrinking the kept share
/// raises authority under both extreme reaction rules, protect only when
/// it lowers authority under both; mixed signs leave the call open.
struct GlobalizationStance {
  std::string country;
  GlobalStance stance = GlobalStance::indeterminate;
  double elasticity_authority_rule = 0.0;
  double elasticity_gdp_rule = 0.0;
  double threshold = kDefaultThreshold;
};

struct SideEffectRow {
  std::string country;
  double d_pi = 0.0;
  double elasticity = 0.0;
  int sign = 0;  // sign of the elasticity: -1, 0, +1
};

/// Everyone's authority response to one bilateral conflict, actor and
/// target rows included.
struct SideEffectReport {
  std::string actor;
  std::string target;
  double lambda = 0.0;
  double theta = 0.0;
  std::vector<SideEffectRow> rows;  // index order
  double zero_sum_residual = 0.0;
};

/// Decision rules over one solved trade network. Holds the matrix, its
/// equilibrium, aligned GDPs and a shared derivative engine; all queries
/// are const and safe to run concurrently.
class PolicyAnalyzer {
 public:
  PolicyAnalyzer(TradeMatrix matrix, Eigen::VectorXd pi, Eigen::VectorXd gdp);

  const CountryIndex& index() const { return matrix_.index; }
  const Eigen::VectorXd& pi() const { return engine_.pi(); }
  const Eigen::VectorXd& gdp() const { return gdp_; }
  const SensitivityEngine& engine() const { return engine_; }

  /// Raises zero_base_entry when the partner ships nothing to the actor;
  /// there is no import channel to cut.
  PartnerClassification classify_partner(const std::string& actor,
                                         const std::string& partner,
                                         const ReactionRule& rule,
                                         double threshold = kDefaultThreshold) const;

  MidpointResolution midpoint(const std::string& actor,
                              const std::string& partner) const;

  /// Every partner with a live import channel, sorted by elasticity
  /// ascending (most attractive conflict target first), ties broken by
  /// code. Partners with a zero base entry are omitted.
  std::vector<PartnerClassification> rank_targets(
      const std::string& actor, const ReactionRule& rule,
      double threshold = kDefaultThreshold) const;

  SideEffectReport side_effects(const std::string& actor,
                                const std::string& target,
                                const ReactionRule& rule) const;

  GlobalizationStance stance(const std::string& country,
                             double threshold = kDefaultThreshold) const;

 private:
  TradeMatrix matrix_;
  Eigen::VectorXd gdp_;
  SensitivityEngine engine_;
};

}  // namespace cbal
