#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbal/authority.hpp"
#include "cbal/country_index.hpp"
#include "cbal/oracle.hpp"
#include "cbal/policy.hpp"

namespace cbal::reports {

/// Key order is preserved so identical inputs serialize byte-identically.
using json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to exactly the same double.
std::string format_number(double v);

/// Fixed-point rendering for human tables; decimals in 1..12.
std::string format_fixed(double v, int decimals);

/// RFC-4180 quoting, applied only when the field needs it.
std::string csv_escape(const std::string& field);

/// Minimal aligned-column writer for terminal tables. The first column is
/// left-aligned, the rest right-aligned.
class Table {
 public:
  explicit Table(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  void print(std::ostream& out) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Equilibrium report. `gdp` may be null; when `ratio_grids` is set and
/// gdp is present, emits the full pairwise grids where entry [A][B] is A's
/// quantity over B's.
json authority_json(const CountryIndex& index, const AuthorityVector& result,
                    SolveMethod method, const Eigen::VectorXd* gdp,
                    bool ratio_grids);
std::string authority_csv(const CountryIndex& index,
                          const AuthorityVector& result,
                          const Eigen::VectorXd* gdp);

/// Bilateral conflict report: the derivative rows plus the decision blocks.
json tradewar_json(const SideEffectReport& effects,
                   const PartnerClassification& verdict,
                   const MidpointResolution& settlement,
                   const std::string& rule_name);
std::string tradewar_csv(const SideEffectReport& effects);

/// Ranked conflict targets for one actor.
json ranking_json(const std::string& actor,
                  const std::vector<PartnerClassification>& targets,
                  const std::string& rule_name, double threshold);
std::string ranking_csv(const std::vector<PartnerClassification>& targets);

/// Self-exposure report under both extreme reaction rules.
json globalization_json(const CountryIndex& index,
                        const GlobalizationStance& verdict, double theta,
                        const SensitivityResult& at_authority_rule,
                        const SensitivityResult& at_gdp_rule);
std::string globalization_csv(const CountryIndex& index,
                              const SensitivityResult& at_authority_rule,
                              const SensitivityResult& at_gdp_rule);

json verify_json(const oracle::OracleReport& report);
std::string verify_csv(const oracle::OracleReport& report);

}  // namespace cbal::reports
