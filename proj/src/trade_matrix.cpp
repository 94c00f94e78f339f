#include "cbal/trade_matrix.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cbal/csv.hpp"
#include "cbal/errors.hpp"

namespace cbal {

void BilateralFlowTable::add(const std::string& reporter,
                             const std::string& partner, double value,
                             const std::string& context) {
  std::string where = context.empty() ? "" : context + ": ";
  if (reporter == partner)
    raise(errc::self_flow, where + "self flow for " + reporter);
  if (value < 0.0)
    raise(errc::negative_flow,
          where + "negative flow " + reporter + "->" + partner);
  flows_[{reporter, partner}] += value;
}

double BilateralFlowTable::value(const std::string& reporter,
                                 const std::string& partner) const {
  auto it = flows_.find({reporter, partner});
  return it == flows_.end() ? 0.0 : it->second;
}

double BilateralFlowTable::total() const {
  double sum = 0.0;
  for (const auto& [key, v] : flows_) sum += v;
  return sum;
}

double BilateralFlowTable::total_exports(const std::string& reporter) const {
  double sum = 0.0;
  auto it = flows_.lower_bound({reporter, ""});
  for (; it != flows_.end() && it->first.first == reporter; ++it)
    sum += it->second;
  return sum;
}

std::vector<std::string> BilateralFlowTable::countries() const {
  std::set<std::string> set;
  for (const auto& [key, v] : flows_) {
    set.insert(key.first);
    set.insert(key.second);
  }
  return {set.begin(), set.end()};
}

BilateralFlowTable load_trade_flows(std::istream& in, const FlowSchema& schema,
                                    const std::string& source) {
  csv::Table table = csv::read(in, source);
  std::size_t rcol = table.column(schema.reporter);
  std::size_t pcol = table.column(schema.partner);
  std::size_t vcol = table.column(schema.value);

  BilateralFlowTable flows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::string where = source + ":" + std::to_string(table.line_numbers[r]);
    std::string reporter = CountryIndex::normalize(row[rcol]);
    std::string partner = CountryIndex::normalize(row[pcol]);
    double value = csv::parse_number(row[vcol], source, table.line_numbers[r]);
    flows.add(reporter, partner, value, where);
  }
  return flows;
}

double GdpTable::at(const std::string& code) const {
  auto it = values.find(code);
  if (it == values.end())
    raise(errc::missing_gdp, "no GDP for " + code);
  return it->second;
}

GdpTable load_gdp(std::istream& in, const GdpSchema& schema,
                  const std::string& source) {
  csv::Table table = csv::read(in, source);
  std::size_t ccol = table.column(schema.code);
  std::size_t gcol = table.column(schema.gdp);

  GdpTable gdp;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::string where = source + ":" + std::to_string(table.line_numbers[r]);
    std::string code = CountryIndex::normalize(table.rows[r][ccol]);
    double value =
        csv::parse_number(table.rows[r][gcol], source, table.line_numbers[r]);
    if (value <= 0.0)
      raise(errc::malformed_csv, where + ": GDP must be positive for " + code);
    if (!gdp.values.emplace(code, value).second)
      raise(errc::malformed_csv, where + ": duplicate GDP row for " + code);
  }
  return gdp;
}

AggregationMap AggregationMap::parse(std::istream& in,
                                     const std::string& source) {
  AggregationMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string where = source + ":" + std::to_string(line_no);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(errc::bad_aggregation, where + ": expected 'GROUP = members'");
    std::istringstream left(line.substr(0, eq));
    std::string group;
    left >> group;
    std::string extra;
    if (!(left >> extra).fail() || group.empty())
      raise(errc::bad_aggregation, where + ": expected one group code");
    group = CountryIndex::normalize(group);
    if (map.groups_.count(group))
      raise(errc::bad_aggregation, where + ": group " + group + " redefined");

    std::istringstream right(line.substr(eq + 1));
    std::vector<std::string> members;
    std::string token;
    while (right >> token) {
      if (token == ",") continue;
      while (!token.empty() && token.back() == ',') token.pop_back();
      if (token.empty()) continue;
      members.push_back(CountryIndex::normalize(token));
    }
    if (members.empty())
      raise(errc::bad_aggregation, where + ": group " + group + " is empty");
    for (const auto& m : members) {
      auto [it, fresh] = map.owner_.emplace(m, group);
      if (!fresh)
        raise(errc::bad_aggregation, where + ": member " + m +
                                         " already belongs to " + it->second);
    }
    map.groups_.emplace(group, std::move(members));
  }
  return map;
}

const std::string& AggregationMap::resolve(const std::string& code) const {
  auto it = owner_.find(code);
  return it == owner_.end() ? code : it->second;
}

AggregationOutcome aggregate_regions(const BilateralFlowTable& flows,
                                     const GdpTable& gdp,
                                     const AggregationMap& map) {
  AggregationOutcome out;

  std::set<std::string> present;
  for (const auto& c : flows.countries()) present.insert(c);
  for (const auto& [code, v] : gdp.values) present.insert(code);

  for (const auto& [group, members] : map.groups()) {
    std::set<std::string> member_set(members.begin(), members.end());
    if (present.count(group) && !member_set.count(group))
      raise(errc::group_code_collision,
            "group code " + group + " collides with country " + group +
                " present in the data");
    for (const auto& m : members)
      if (!present.count(m))
        out.warnings.push_back("aggregation member " + m + " of group " +
                               group + " not present in the data");
  }

  for (const auto& [key, value] : flows.flows()) {
    const std::string& reporter = map.resolve(key.first);
    const std::string& partner = map.resolve(key.second);
    if (reporter == partner) continue;  // now domestic
    out.flows.add(reporter, partner, value);
  }
  for (const auto& [code, value] : gdp.values) {
    const std::string& target = map.resolve(code);
    out.gdp.values[target] += value;
  }
  return out;
}

TradeMatrix build_matrix(const BilateralFlowTable& flows, const GdpTable& gdp,
                         const CountryIndex& index) {
  const int n = index.size();
  if (n < 1) raise(errc::bad_argument, "empty country index");

  std::vector<std::string> missing;
  for (int i = 0; i < n; ++i)
    if (!gdp.contains(index.code(i))) missing.push_back(index.code(i));
  if (!missing.empty()) {
    std::string list;
    for (const auto& c : missing) list += (list.empty() ? "" : ", ") + c;
    raise(errc::missing_gdp, "no GDP for: " + list);
  }

  TradeMatrix tm;
  tm.index = index;
  tm.P = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, value] : flows.flows()) {
    if (!index.contains(key.first) || !index.contains(key.second)) continue;
    int i = index.position(key.first);
    int j = index.position(key.second);
    tm.P(i, j) = value / gdp.at(key.first);
  }
  for (int i = 0; i < n; ++i) {
    double exported = tm.P.row(i).sum();
    double kept = 1.0 - exported;
    // Rounding noise around an exports-equal-GDP row is not an error.
    if (kept < -1e-12) {
      std::ostringstream msg;
      msg << index.code(i) << " exports exceed GDP (share "
          << exported << "); consider aggregating entrepot economies";
      raise(errc::exports_exceed_gdp, msg.str());
    }
    tm.P(i, i) = kept < 0.0 ? 0.0 : kept;
  }
  return tm;
}

namespace {

// Iterative Tarjan over positive off-diagonal entries.
std::vector<std::vector<int>> strongly_connected_components(
    const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  std::vector<std::vector<int>> adjacency(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && P(i, j) > 0.0) adjacency[i].push_back(j);

  std::vector<int> indices(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> components;
  int counter = 0;

  struct Frame {
    int node;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (indices[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    indices[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < adjacency[f.node].size()) {
        int next = adjacency[f.node][f.next++];
        if (indices[next] == -1) {
          indices[next] = low[next] = counter++;
          stack.push_back(next);
          on_stack[next] = true;
          frames.push_back({next, 0});
        } else if (on_stack[next]) {
          low[f.node] = std::min(low[f.node], indices[next]);
        }
      } else {
        if (low[f.node] == indices[f.node]) {
          std::vector<int> component;
          int popped;
          do {
            popped = stack.back();
            stack.pop_back();
            on_stack[popped] = false;
            component.push_back(popped);
          } while (popped != f.node);
          std::sort(component.begin(), component.end());
          components.push_back(std::move(component));
        }
        int done = f.node;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().node] =
              std::min(low[frames.back().node], low[done]);
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

}  // namespace

ConnectivityReport check_connectivity(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  ConnectivityReport report;
  report.components = strongly_connected_components(P);
  report.strongly_connected = report.components.size() == 1;
  for (int i = 0; i < n; ++i)
    if (P(i, i) > 0.0) report.has_positive_diagonal = true;

  std::vector<int> component_of(n, -1);
  for (std::size_t k = 0; k < report.components.size(); ++k)
    for (int v : report.components[k]) component_of[v] = static_cast<int>(k);
  for (std::size_t k = 0; k < report.components.size(); ++k) {
    bool closed = true;
    for (int v : report.components[k]) {
      for (int w = 0; w < n && closed; ++w)
        if (w != v && P(v, w) > 0.0 &&
            component_of[w] != static_cast<int>(k))
          closed = false;
      if (!closed) break;
    }
    if (closed) report.closed_components.push_back(static_cast<int>(k));
  }

  std::size_t giant = 0;
  for (std::size_t k = 1; k < report.components.size(); ++k)
    if (report.components[k].size() > report.components[giant].size())
      giant = k;
  report.giant = static_cast<int>(giant);
  if (report.strongly_connected) return report;

  std::vector<bool> in_giant(n, false);
  for (int v : report.components[giant]) in_giant[v] = true;

  auto reach = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<int> queue;
    for (int v : report.components[giant]) {
      seen[v] = true;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w = 0; w < n; ++w) {
        double edge = forward ? P(v, w) : P(w, v);
        if (w != v && edge > 0.0 && !seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    return seen;
  };
  std::vector<bool> reached_from_giant = reach(true);
  std::vector<bool> reaches_giant = reach(false);
  for (int v = 0; v < n; ++v) {
    if (in_giant[v]) continue;
    if (!reaches_giant[v]) report.not_reaching_giant.push_back(v);
    if (!reached_from_giant[v]) report.not_reached_from_giant.push_back(v);
  }
  return report;
}

}  // namespace cbal
