// cbal: command-line surface for trade-network authority analysis.
// Exit codes: 0 ok, 2 ingestion, 3 numerical, 4 bad country argument,
// 5 verification failure.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbal/authority.hpp"
#include "cbal/errors.hpp"
#include "cbal/oracle.hpp"
#include "cbal/policy.hpp"
#include "cbal/reports.hpp"
#include "cbal/sensitivity.hpp"
#include "cbal/trade_matrix.hpp"

namespace {

using namespace cbal;

struct Options {
  std::string trade_path;
  std::string gdp_path;
  std::string aggregate_path;
  std::string lambda = "gdp";
  double threshold = kDefaultThreshold;
  std::string format = "table";
  std::string order;
  int decimals = 4;
  std::string method = "direct";
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--trade", opt.trade_path,
                  "bilateral trade flows CSV (reporter_iso3, partner_iso3, "
                  "export_value)")
      ->required();
  cmd->add_option("--gdp", opt.gdp_path, "GDP CSV (iso3, gdp)")->required();
  cmd->add_option("--aggregate", opt.aggregate_path,
                  "region grouping config, lines like 'CHN = CHN HKG MAC'");
  cmd->add_option("--lambda", opt.lambda,
                  "reaction rule: gdp, authority, midpoint or a number");
  cmd->add_option("--threshold", opt.threshold,
                  "significance bar on log elasticities")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", opt.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--order", opt.order,
                  "comma-separated codes listed first in outputs");
  cmd->add_option("--decimals", opt.decimals, "decimal places in tables")
      ->check(CLI::Range(1, 12));
  cmd->add_option("--method", opt.method, "equilibrium solver")
      ->check(CLI::IsMember({"direct", "power"}));
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::file_not_found, "cannot open " + path);
  return in;
}

CountryIndex make_index(const std::vector<std::string>& codes,
                        const std::string& order) {
  if (order.empty()) return CountryIndex::sorted(codes);
  CountryIndex base = CountryIndex::sorted(codes);
  std::vector<std::string> front;
  std::string token;
  std::istringstream stream(order);
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    std::string code = CountryIndex::normalize(token);
    if (!base.contains(code))
      raise(errc::unknown_country, "--order lists unknown country " + code);
    front.push_back(code);
  }
  std::vector<std::string> rest;
  for (int k = 0; k < base.size(); ++k) {
    const std::string& code = base.code(k);
    if (std::find(front.begin(), front.end(), code) == front.end())
      rest.push_back(code);
  }
  front.insert(front.end(), rest.begin(), rest.end());
  return CountryIndex::ordered(front);
}

struct Loaded {
  TradeMatrix matrix;
  Eigen::VectorXd gdp;
  AuthorityVector eq;
  SolveMethod method = SolveMethod::direct;
};

// Warnings go to stderr as they are found so they survive a failed solve.
Loaded load_network(const Options& opt) {
  std::ifstream trade_stream = open_file(opt.trade_path);
  BilateralFlowTable flows = load_trade_flows(trade_stream, {}, opt.trade_path);
  std::ifstream gdp_stream = open_file(opt.gdp_path);
  GdpTable gdp = load_gdp(gdp_stream, {}, opt.gdp_path);

  Loaded out;
  if (!opt.aggregate_path.empty()) {
    std::ifstream agg_stream = open_file(opt.aggregate_path);
    AggregationMap groups = AggregationMap::parse(agg_stream,
                                                  opt.aggregate_path);
    AggregationOutcome merged = aggregate_regions(flows, gdp, groups);
    flows = std::move(merged.flows);
    gdp = std::move(merged.gdp);
    for (const std::string& warning : merged.warnings)
      std::cerr << "warning: " << warning << '\n';
  }

  CountryIndex index = make_index(flows.countries(), opt.order);
  out.matrix = build_matrix(flows, gdp, index);
  out.gdp.resize(out.matrix.size());
  for (int k = 0; k < out.matrix.size(); ++k)
    out.gdp(k) = gdp.at(out.matrix.index.code(k));

  ConnectivityReport connectivity = check_connectivity(out.matrix.P);
  if (!connectivity.strongly_connected)
    std::cerr << "warning: trade network is not strongly connected ("
              << connectivity.components.size()
              << " components); the equilibrium may concentrate on one block\n";

  AuthorityOptions solve;
  solve.method = opt.method == "power" ? SolveMethod::power_iteration
                                       : SolveMethod::direct;
  out.method = solve.method;
  out.eq = authority_distribution(out.matrix.P, solve);
  return out;
}

double per_mille(double elasticity) { return 1000.0 * elasticity; }

// ---------------------------------------------------------------- authority

int run_authority(const Options& opt, bool ratio_grids) {
  Loaded net = load_network(opt);
  const CountryIndex& index = net.matrix.index;

  if (opt.format == "json") {
    std::cout << reports::authority_json(index, net.eq, net.method, &net.gdp,
                                         ratio_grids)
                     .dump(2)
              << '\n';
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << reports::authority_csv(index, net.eq, &net.gdp);
    return 0;
  }

  reports::Table table({"country", "pi", "gdp"});
  for (int k = 0; k < index.size(); ++k)
    table.add_row({index.code(k),
                   reports::format_fixed(net.eq.pi(k), opt.decimals),
                   reports::format_number(net.gdp(k))});
  table.print(std::cout);
  std::cout << "method: " << (net.method == SolveMethod::direct
                                  ? "direct"
                                  : "power_iteration");
  if (net.eq.iterations > 0)
    std::cout << " (" << net.eq.iterations << " iterations)";
  std::cout << "  residual: " << reports::format_number(net.eq.residual)
            << '\n';

  if (ratio_grids) {
    auto grid = [&](const char* title, auto value) {
      std::cout << '\n' << title << " (row over column)\n";
      std::vector<std::string> header{"ratio"};
      for (int b = 0; b < index.size(); ++b) header.push_back(index.code(b));
      reports::Table ratios(header);
      for (int a = 0; a < index.size(); ++a) {
        std::vector<std::string> row{index.code(a)};
        for (int b = 0; b < index.size(); ++b)
          row.push_back(a == b ? "."
                               : reports::format_fixed(value(a, b),
                                                       opt.decimals));
        ratios.add_row(row);
      }
      ratios.print(std::cout);
    };
    grid("authority ratios",
         [&](int a, int b) { return net.eq.pi(a) / net.eq.pi(b); });
    grid("gdp ratios", [&](int a, int b) { return net.gdp(a) / net.gdp(b); });
  }
  return 0;
}

// ----------------------------------------------------------------- tradewar

int run_ranking(const Options& opt, const Loaded& net,
                const PolicyAnalyzer& policy, const std::string& actor) {
  ReactionRule rule = ReactionRule::parse(opt.lambda);
  std::vector<PartnerClassification> targets =
      policy.rank_targets(actor, rule, opt.threshold);

  if (opt.format == "json") {
    std::cout << reports::ranking_json(CountryIndex::normalize(actor), targets,
                                       rule.describe(), opt.threshold)
                     .dump(2)
              << '\n';
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << reports::ranking_csv(targets);
    return 0;
  }

  std::cout << "conflict targets for " << CountryIndex::normalize(actor)
            << "  (lambda rule " << rule.describe() << ", threshold "
            << reports::format_number(per_mille(opt.threshold))
            << " per-mille)\n";
  reports::Table table({"partner", "elasticity_per_mille", "lambda",
                        "stance"});
  for (const PartnerClassification& target : targets)
    table.add_row({target.partner,
                   reports::format_fixed(per_mille(target.elasticity),
                                         opt.decimals),
                   reports::format_fixed(target.lambda, opt.decimals),
                   to_string(target.stance)});
  table.print(std::cout);
  (void)net;
  return 0;
}

int run_tradewar(const Options& opt, const std::string& actor,
                 const std::string& target) {
  Loaded net = load_network(opt);
  PolicyAnalyzer policy(net.matrix, net.eq.pi, net.gdp);

  if (target.empty()) return run_ranking(opt, net, policy, actor);

  ReactionRule rule = ReactionRule::parse(opt.lambda);
  SideEffectReport effects = policy.side_effects(actor, target, rule);
  PartnerClassification verdict =
      policy.classify_partner(actor, target, rule, opt.threshold);
  MidpointResolution settlement = policy.midpoint(actor, target);

  if (opt.format == "json") {
    std::cout << reports::tradewar_json(effects, verdict, settlement,
                                        rule.describe())
                     .dump(2)
              << '\n';
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << reports::tradewar_csv(effects);
    return 0;
  }

  std::cout << "trade war: " << effects.actor << " cuts imports from "
            << effects.target << '\n'
            << "lambda rule: " << rule.describe()
            << " (lambda = " << reports::format_fixed(effects.lambda, 6)
            << ")\n"
            << "base entry: P(" << effects.target << "," << effects.actor
            << ") = " << reports::format_number(effects.theta) << '\n'
            << "stance: " << to_string(verdict.stance) << "  (actor "
            << "elasticity "
            << reports::format_fixed(per_mille(verdict.elasticity),
                                     opt.decimals)
            << " per-mille, threshold "
            << reports::format_number(per_mille(opt.threshold))
            << " per-mille)\n"
            << "settlement: authority ratio "
            << reports::format_fixed(settlement.authority_ratio, opt.decimals)
            << ", gdp ratio "
            << reports::format_fixed(settlement.gdp_ratio, opt.decimals)
            << ", midpoint "
            << reports::format_fixed(settlement.midpoint, opt.decimals)
            << ", dollar for dollar "
            << reports::format_fixed(settlement.dollar_for_dollar,
                                     opt.decimals)
            << "\n\n";

  reports::Table table({"country", "d_pi", "elasticity_per_mille"});
  for (const SideEffectRow& row : effects.rows)
    table.add_row({row.country, reports::format_number(row.d_pi),
                   reports::format_fixed(per_mille(row.elasticity),
                                         opt.decimals)});
  table.print(std::cout);
  std::cout << "zero-sum residual: "
            << reports::format_number(effects.zero_sum_residual) << '\n';
  return 0;
}

// ------------------------------------------------------------ globalization

int run_globalization(const Options& opt, const std::string& country,
                      bool lambda_requested) {
  Loaded net = load_network(opt);
  PolicyAnalyzer policy(net.matrix, net.eq.pi, net.gdp);
  const CountryIndex& index = policy.index();
  const int i = index.position(CountryIndex::normalize(country));

  GlobalizationStance verdict = policy.stance(index.code(i), opt.threshold);
  const ReactionRule authority_rule{ReactionRule::Kind::authority_ratio, 0.0};
  const ReactionRule gdp_rule{ReactionRule::Kind::gdp_ratio, 0.0};
  SensitivityResult at_authority =
      policy.engine().globalization(i, authority_rule, &policy.gdp());
  SensitivityResult at_gdp =
      policy.engine().globalization(i, gdp_rule, &policy.gdp());

  if (opt.format == "json") {
    reports::json out = reports::globalization_json(
        index, verdict, at_gdp.theta, at_authority, at_gdp);
    if (lambda_requested) {
      ReactionRule rule = ReactionRule::parse(opt.lambda);
      SensitivityResult extra =
          policy.engine().globalization(i, rule, &policy.gdp());
      out["requested_rule"] = {
          {"rule", rule.describe()},
          {"elasticity", extra.log_elasticities.size() > 0
                             ? reports::json(extra.log_elasticities(i))
                             : reports::json()},
      };
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << reports::globalization_csv(index, at_authority, at_gdp);
    return 0;
  }

  std::cout << "self-exposure analysis for " << verdict.country
            << "  (base entry P(" << verdict.country << ","
            << verdict.country
            << ") = " << reports::format_number(at_gdp.theta) << ")\n"
            << "stance: " << to_string(verdict.stance) << "  (threshold "
            << reports::format_number(per_mille(opt.threshold))
            << " per-mille)\n"
            << "diagonal elasticity per-mille: "
            << reports::format_fixed(
                   per_mille(verdict.elasticity_authority_rule), opt.decimals)
            << " under the authority rule, "
            << reports::format_fixed(per_mille(verdict.elasticity_gdp_rule),
                                     opt.decimals)
            << " under the gdp rule\n";
  if (lambda_requested) {
    ReactionRule rule = ReactionRule::parse(opt.lambda);
    SensitivityResult extra =
        policy.engine().globalization(i, rule, &policy.gdp());
    if (extra.log_elasticities.size() > 0)
      std::cout << "requested rule " << rule.describe() << ": "
                << reports::format_fixed(per_mille(extra.log_elasticities(i)),
                                         opt.decimals)
                << " per-mille\n";
  }
  std::cout << '\n';
  reports::Table table({"country", "d_pi_authority_rule",
                        "elasticity_pm_authority", "d_pi_gdp_rule",
                        "elasticity_pm_gdp"});
  for (int k = 0; k < index.size(); ++k)
    table.add_row(
        {index.code(k), reports::format_number(at_authority.d_pi(k)),
         reports::format_fixed(per_mille(at_authority.log_elasticities(k)),
                               opt.decimals),
         reports::format_number(at_gdp.d_pi(k)),
         reports::format_fixed(per_mille(at_gdp.log_elasticities(k)),
                               opt.decimals)});
  table.print(std::cout);
  return 0;
}

// ------------------------------------------------------------------- verify

int run_verify(const Options& opt, std::uint64_t seed, int instances,
               bool lambda_requested, bool corrupt_equilibrium) {
  Loaded net = load_network(opt);

  Eigen::VectorXd pi = net.eq.pi;
  if (corrupt_equilibrium) {
    // Test hook: feeds the analytic path a slightly wrong equilibrium while
    // the reference differences keep using the true one.
    pi(0) *= 1.01;
    pi /= pi.sum();
  }

  oracle::VerifyOptions options;
  options.seed = seed;
  options.random_instances = instances;
  if (lambda_requested)
    options.rules = {ReactionRule::parse(opt.lambda)};
  for (int k = 0; k < net.matrix.size(); ++k)
    options.labels.push_back(net.matrix.index.code(k));

  oracle::OracleReport report =
      oracle::verify_all(net.matrix.P, pi, net.gdp, options);

  if (opt.format == "json") {
    std::cout << reports::verify_json(report).dump(2) << '\n';
  } else if (opt.format == "csv") {
    std::cout << reports::verify_csv(report);
  } else {
    std::cout << "verification: " << report.checked << " checked, "
              << report.failures << " failures, " << report.skipped
              << " skipped\n"
              << "worst relative error "
              << reports::format_number(report.worst_rel)
              << ", worst absolute error "
              << reports::format_number(report.worst_abs) << '\n';
    for (const oracle::OracleCase& one : report.cases) {
      if (one.skipped)
        std::cout << "  [skip] " << one.description << ": " << one.reason
                  << '\n';
      else if (!one.pass)
        std::cout << "  [fail] " << one.description << " (rel "
                  << reports::format_number(one.cmp.max_rel_err) << ", abs "
                  << reports::format_number(one.cmp.max_abs_err) << ")\n";
    }
    std::cout << "result: " << (report.pass ? "PASS" : "FAIL") << '\n';
  }
  return report.pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trade-network authority: equilibrium influence, trade-war "
               "and self-exposure sensitivities, policy stances"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file");

  Options opt;

  CLI::App* authority =
      app.add_subcommand("authority", "equilibrium authority per country");
  bool ratio_grids = false;
  add_common(authority, opt);
  authority->add_flag("--ratios", ratio_grids,
                      "include pairwise authority and gdp ratio grids");

  CLI::App* tradewar = app.add_subcommand(
      "tradewar", "authority response to cutting imports from a partner");
  std::string actor;
  std::string target;
  add_common(tradewar, opt);
  tradewar->add_option("--actor", actor, "country cutting its imports")
      ->required();
  tradewar->add_option("--target", target,
                       "partner whose exports are cut; omit to rank all "
                       "partners");

  CLI::App* globalization = app.add_subcommand(
      "globalization", "authority response to a country's self-exposure");
  std::string country;
  add_common(globalization, opt);
  globalization->add_option("--country", country, "country under analysis")
      ->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "check analytic derivatives against finite differences");
  std::uint64_t seed = 91;
  int instances = 12;
  bool corrupt_equilibrium = false;
  add_common(verify, opt);
  verify->add_option("--seed", seed, "random fixture seed");
  verify->add_option("--instances", instances, "number of random fixtures")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--corrupt-equilibrium", corrupt_equilibrium)->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (authority->parsed()) return run_authority(opt, ratio_grids);
    if (tradewar->parsed()) return run_tradewar(opt, actor, target);
    if (globalization->parsed())
      return run_globalization(opt, country,
                               globalization->count("--lambda") > 0);
    if (verify->parsed())
      return run_verify(opt, seed, instances, verify->count("--lambda") > 0,
                        corrupt_equilibrium);
  } catch (const error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    switch (e.category()) {
      case error_category::ingestion: return 2;
      case error_category::numerical: return 3;
      case error_category::argument: return 4;
      case error_category::verification: return 5;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
