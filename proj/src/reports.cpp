#include "cbal/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <utility>

#include "cbal/errors.hpp"

namespace cbal::reports {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string format_fixed(double v, int decimals) {
  if (decimals < 1 || decimals > 12)
    raise(errc::bad_argument, "decimal places must be in 1..12");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    raise(errc::bad_argument, "table row width does not match the header");
  rows_.push_back(std::move(cells));
}

void Table::print(std::ostream& out) const {
  std::vector<std::size_t> width(header_.size());
  for (std::size_t c = 0; c < header_.size(); ++c)
    width[c] = header_[c].size();
  for (const auto& row : rows_)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());

  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      if (c == 0) {
        out << row[c] << std::string(width[c] - row[c].size(), ' ');
      } else {
        out << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
    }
    out << '\n';
  };
  emit(header_);
  std::size_t total = 0;
  for (std::size_t c = 0; c < width.size(); ++c)
    total += width[c] + (c > 0 ? 2 : 0);
  out << std::string(total, '-') << '\n';
  for (const auto& row : rows_) emit(row);
}

json authority_json(const CountryIndex& index, const AuthorityVector& result,
                    SolveMethod method, const Eigen::VectorXd* gdp,
                    bool ratio_grids) {
  json out;
  out["command"] = "authority";
  out["method"] =
      method == SolveMethod::direct ? "direct" : "power_iteration";
  out["countries"] = json::array();
  for (int k = 0; k < index.size(); ++k)
    out["countries"].push_back(index.code(k));
  json pi = json::object();
  for (int k = 0; k < index.size(); ++k) pi[index.code(k)] = result.pi(k);
  out["pi"] = std::move(pi);
  if (gdp != nullptr) {
    json g = json::object();
    for (int k = 0; k < index.size(); ++k) g[index.code(k)] = (*gdp)(k);
    out["gdp"] = std::move(g);
  }
  out["residual"] = result.residual;
  out["iterations"] = result.iterations;
  if (ratio_grids && gdp != nullptr) {
    json authority = json::object();
    json gdp_grid = json::object();
    for (int a = 0; a < index.size(); ++a) {
      json arow = json::object();
      json grow = json::object();
      for (int b = 0; b < index.size(); ++b) {
        if (a == b) continue;
        arow[index.code(b)] = result.pi(a) / result.pi(b);
        grow[index.code(b)] = (*gdp)(a) / (*gdp)(b);
      }
      authority[index.code(a)] = std::move(arow);
      gdp_grid[index.code(a)] = std::move(grow);
    }
    out["ratios"] = json::object();
    out["ratios"]["authority"] = std::move(authority);
    out["ratios"]["gdp"] = std::move(gdp_grid);
  }
  return out;
}

std::string authority_csv(const CountryIndex& index,
                          const AuthorityVector& result,
                          const Eigen::VectorXd* gdp) {
  std::ostringstream out;
  out << (gdp != nullptr ? "country,pi,gdp\n" : "country,pi\n");
  for (int k = 0; k < index.size(); ++k) {
    out << csv_escape(index.code(k)) << ',' << format_number(result.pi(k));
    if (gdp != nullptr) out << ',' << format_number((*gdp)(k));
    out << '\n';
  }
  return out.str();
}

json tradewar_json(const SideEffectReport& effects,
                   const PartnerClassification& verdict,
                   const MidpointResolution& settlement,
                   const std::string& rule_name) {
  json out;
  out["command"] = "tradewar";
  out["actor"] = effects.actor;
  out["target"] = effects.target;
  out["lambda_rule"] = rule_name;
  out["lambda"] = effects.lambda;
  out["theta"] = effects.theta;
  out["classification"] = {
      {"stance", to_string(verdict.stance)},
      {"elasticity", verdict.elasticity},
      {"threshold", verdict.threshold},
  };
  out["midpoint"] = {
      {"authority_ratio", settlement.authority_ratio},
      {"gdp_ratio", settlement.gdp_ratio},
      {"midpoint", settlement.midpoint},
      {"dollar_for_dollar", settlement.dollar_for_dollar},
  };
  out["zero_sum_residual"] = effects.zero_sum_residual;
  json rows = json::array();
  for (const SideEffectRow& row : effects.rows)
    rows.push_back({{"country", row.country},
                    {"d_pi", row.d_pi},
                    {"elasticity", row.elasticity},
                    {"sign", row.sign}});
  out["side_effects"] = std::move(rows);
  return out;
}

std::string tradewar_csv(const SideEffectReport& effects) {
  std::ostringstream out;
  out << "country,d_pi,elasticity,sign\n";
  for (const SideEffectRow& row : effects.rows)
    out << csv_escape(row.country) << ',' << format_number(row.d_pi) << ','
        << format_number(row.elasticity) << ',' << row.sign << '\n';
  return out.str();
}

json ranking_json(const std::string& actor,
                  const std::vector<PartnerClassification>& targets,
                  const std::string& rule_name, double threshold) {
  json out;
  out["command"] = "tradewar";
  out["actor"] = actor;
  out["lambda_rule"] = rule_name;
  out["threshold"] = threshold;
  json rows = json::array();
  for (const PartnerClassification& target : targets)
    rows.push_back({{"partner", target.partner},
                    {"elasticity", target.elasticity},
                    {"lambda", target.lambda},
                    {"stance", to_string(target.stance)}});
  out["targets"] = std::move(rows);
  return out;
}

std::string ranking_csv(const std::vector<PartnerClassification>& targets) {
  std::ostringstream out;
  out << "partner,elasticity,lambda,stance\n";
  for (const PartnerClassification& target : targets)
    out << csv_escape(target.partner) << ','
        << format_number(target.elasticity) << ','
        << format_number(target.lambda) << ',' << to_string(target.stance)
        << '\n';
  return out.str();
}

json globalization_json(const CountryIndex& index,
                        const GlobalizationStance& verdict, double theta,
                        const SensitivityResult& at_authority_rule,
                        const SensitivityResult& at_gdp_rule) {
  json out;
  out["command"] = "globalization";
  out["country"] = verdict.country;
  out["theta"] = theta;
  out["stance"] = to_string(verdict.stance);
  out["elasticity_authority_rule"] = verdict.elasticity_authority_rule;
  out["elasticity_gdp_rule"] = verdict.elasticity_gdp_rule;
  out["threshold"] = verdict.threshold;
  json rows = json::array();
  for (int k = 0; k < index.size(); ++k) {
    json row;
    row["country"] = index.code(k);
    row["d_pi_authority_rule"] = at_authority_rule.d_pi(k);
    row["d_pi_gdp_rule"] = at_gdp_rule.d_pi(k);
    if (at_authority_rule.log_elasticities.size() > 0)
      row["elasticity_authority_rule"] = at_authority_rule.log_elasticities(k);
    if (at_gdp_rule.log_elasticities.size() > 0)
      row["elasticity_gdp_rule"] = at_gdp_rule.log_elasticities(k);
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

std::string globalization_csv(const CountryIndex& index,
                              const SensitivityResult& at_authority_rule,
                              const SensitivityResult& at_gdp_rule) {
  const bool with_elasticity = at_authority_rule.log_elasticities.size() > 0;
  std::ostringstream out;
  out << (with_elasticity ? "country,d_pi_authority_rule,elasticity_authority"
                            "_rule,d_pi_gdp_rule,elasticity_gdp_rule\n"
                          : "country,d_pi_authority_rule,d_pi_gdp_rule\n");
  for (int k = 0; k < index.size(); ++k) {
    out << csv_escape(index.code(k)) << ','
        << format_number(at_authority_rule.d_pi(k));
    if (with_elasticity)
      out << ',' << format_number(at_authority_rule.log_elasticities(k));
    out << ',' << format_number(at_gdp_rule.d_pi(k));
    if (with_elasticity)
      out << ',' << format_number(at_gdp_rule.log_elasticities(k));
    out << '\n';
  }
  return out.str();
}

json verify_json(const oracle::OracleReport& report) {
  json out;
  out["command"] = "verify";
  out["pass"] = report.pass;
  out["checked"] = report.checked;
  out["failures"] = report.failures;
  out["skipped"] = report.skipped;
  out["worst_rel_err"] = report.worst_rel;
  out["worst_abs_err"] = report.worst_abs;
  json cases = json::array();
  for (const oracle::OracleCase& one : report.cases) {
    json row;
    row["description"] = one.description;
    row["status"] = one.skipped ? "skip" : one.pass ? "pass" : "fail";
    if (!one.skipped) {
      row["h"] = one.h;
      row["max_rel_err"] = one.cmp.max_rel_err;
      row["max_abs_err"] = one.cmp.max_abs_err;
    }
    if (!one.reason.empty()) row["note"] = one.reason;
    cases.push_back(std::move(row));
  }
  out["cases"] = std::move(cases);
  return out;
}

std::string verify_csv(const oracle::OracleReport& report) {
  std::ostringstream out;
  out << "description,status,h,max_rel_err,max_abs_err,note\n";
  for (const oracle::OracleCase& one : report.cases) {
    out << csv_escape(one.description) << ','
        << (one.skipped ? "skip" : one.pass ? "pass" : "fail") << ',';
    if (!one.skipped)
      out << format_number(one.h) << ',' << format_number(one.cmp.max_rel_err)
          << ',' << format_number(one.cmp.max_abs_err);
    else
      out << ",,";
    out << ',' << csv_escape(one.reason) << '\n';
  }
  return out.str();
}

}  // namespace cbal::reports
