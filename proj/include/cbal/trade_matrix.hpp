#pragma once

#include <eigen3/Eigen/Dense>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cbal/country_index.hpp"

namespace cbal {

/// Column names for bilateral flow CSVs.
struct FlowSchema {
  std::string reporter = "reporter_iso3";
  std::string partner = "partner_iso3";
  std::string value = "export_value";
};

/// Column names for GDP CSVs.
struct GdpSchema {
  std::string code = "iso3";
  std::string gdp = "gdp";
};

/// Bilateral export values keyed by (reporter, partner). Duplicate rows are
/// summed on insert; self flows and negative values are rejected.
class BilateralFlowTable {
public:
  using Key = std::pair<std::string, std::string>;

  void add(const std::string& reporter, const std::string& partner,
           double value, const std::string& context = "");

  double value(const std::string& reporter, const std::string& partner) const;
  double total() const;
  double total_exports(const std::string& reporter) const;

  /// Sorted union of all reporter and partner codes.
  std::vector<std::string> countries() const;

  const std::map<Key, double>& flows() const { return flows_; }
  std::size_t size() const { return flows_.size(); }

private:
  std::map<Key, double> flows_;
};

/// Reads reporter/partner/value rows. Flow values are interpreted in the
/// same currency unit as the GDP table they are later combined with.
BilateralFlowTable load_trade_flows(std::istream& in,
                                    const FlowSchema& schema = {},
                                    const std::string& source = "<stream>");

struct GdpTable {
  std::map<std::string, double> values;

  bool contains(const std::string& code) const {
    return values.count(code) > 0;
  }
  double at(const std::string& code) const;
};

GdpTable load_gdp(std::istream& in, const GdpSchema& schema = {},
                  const std::string& source = "<stream>");

/// Region grouping: each group code owns a member list. A member may belong
/// to at most one group. Config lines look like "CHN = CHN HKG MAC".
class AggregationMap {
public:
  static AggregationMap parse(std::istream& in,
                              const std::string& source = "<stream>");

  /// Group code for a member, or the code itself when ungrouped.
  const std::string& resolve(const std::string& code) const;

  const std::map<std::string, std::vector<std::string>>& groups() const {
    return groups_;
  }
  bool empty() const { return groups_.empty(); }

private:
  std::map<std::string, std::vector<std::string>> groups_;
  std::map<std::string, std::string> owner_;
};

struct AggregationOutcome {
  BilateralFlowTable flows;
  GdpTable gdp;
  std::vector<std::string> warnings;
};

/// Re-keys flows and GDPs onto group codes. Flows between members of one
/// group disappear (they become domestic); everything else is summed.
/// External value is conserved exactly for integer-valued inputs.
AggregationOutcome aggregate_regions(const BilateralFlowTable& flows,
                                     const GdpTable& gdp,
                                     const AggregationMap& map);

/// Row-stochastic exposure matrix aligned to an index. P(i,j) is the share
/// of i's GDP exported to j; P(i,i) is the non-exported remainder.
struct TradeMatrix {
  CountryIndex index;
  Eigen::MatrixXd P;

  int size() const { return index.size(); }
};

/// Builds the exposure matrix. Every index country needs a GDP; flows
/// touching countries outside the index are dropped, so their value is
/// retained in the reporter's diagonal entry.
TradeMatrix build_matrix(const BilateralFlowTable& flows, const GdpTable& gdp,
                         const CountryIndex& index);

struct ConnectivityReport {
  bool strongly_connected = false;
  bool has_positive_diagonal = false;
  /// Strongly connected components over positive off-diagonal entries,
  /// each sorted by position, listed by smallest member.
  std::vector<std::vector<int>> components;
  /// Components with no exports leaving them. The fixed point is unique
  /// exactly when there is one such component.
  std::vector<int> closed_components;
  int giant = 0;  // index into components of the largest one
  std::vector<int> not_reaching_giant;
  std::vector<int> not_reached_from_giant;
};

ConnectivityReport check_connectivity(const Eigen::MatrixXd& P);

}  // namespace cbal
