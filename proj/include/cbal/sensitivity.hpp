#pragma once

#include <eigen3/Eigen/Dense>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>

namespace cbal {

/// Blocks of P used by the reduced linear systems: Z is the transpose of P
/// with row and column `dropped` removed, alpha is row `dropped` of P with
/// that entry removed. Reduced position r maps to original index r when
/// r < dropped, else r + 1.
struct ReducedBlocks {
  Eigen::MatrixXd Z;
  Eigen::VectorXd alpha;
  int dropped = -1;
};

ReducedBlocks reduced_blocks(const Eigen::MatrixXd& P, int i);

/// How a country converts a counterpart's exposure change into its own
/// reaction: a change dP(a,b) triggers dP(b,a) = lambda_ab * dP(a,b), and
/// the ratio rules resolve lambda_ab as quantity(a) over quantity(b). Under
/// the gdp rule the reaction then matches the initiating move dollar for
/// dollar, in a trade war (initiating entry P(target, actor)) and in a
/// self-exposure move (initiating entries on the actor's own row) alike.
/// In a trade war the authority-ratio lambda is the exact status quo: it
/// zeroes the actor's derivative.
struct ReactionRule {
  enum class Kind { explicit_value, gdp_ratio, authority_ratio, midpoint };

  Kind kind = Kind::explicit_value;
  double value = 0.0;  // used by explicit_value

  /// Accepts "gdp", "authority", "midpoint" or a numeric literal.
  static ReactionRule parse(const std::string& text);

  static ReactionRule explicit_value_rule(double v) {
    return {Kind::explicit_value, v};
  }

  bool needs_gdp() const {
    return kind == Kind::gdp_ratio || kind == Kind::midpoint;
  }

  /// lambda_ab for the initiating entry P(a,b): the coefficient applied by
  /// country b when it mirrors a change of P(a,b) onto P(b,a). `gdp` may be
  /// null for rules that do not need it; raises missing_gdp otherwise.
  double resolve(const Eigen::VectorXd& pi, const Eigen::VectorXd* gdp, int a,
                 int b) const;

  std::string describe() const;
};

/// One derivative of the equilibrium: either authority response to a trade
/// war entry P(target, actor), or to the actor's self-exposure P(actor,
/// actor) with proportional rescaling and partner reactions.
struct SensitivityResult {
  enum class Kind { trade_war, globalization };

  Kind kind = Kind::trade_war;
  int actor = -1;
  int target = -1;             // trade_war only
  double lambda = 0.0;         // trade_war only
  Eigen::VectorXd lambdas;     // globalization only: per-partner reactions
  double theta = 0.0;          // base entry the derivative is taken at
  Eigen::VectorXd d_pi;        // d pi_k / d theta for every k
  Eigen::VectorXd log_elasticities;  // empty when theta == 0
  double zero_sum_residual = 0.0;    // |sum_k d_pi_k|, identity check
};

/// Direction matrix of a self-exposure change for actor i: dP = dP_ii * M.
/// Row i rescales i's exports proportionally; every other row s carries
/// partner s's reaction in column i and spreads the compensation over its
/// remaining entries, diagonal included. All rows sum to 0 and M(i,i) = 1.
/// Raises degenerate_denominator when the actor's export share 1 - P(i,i)
/// or a reacting partner's kept share 1 - P(s,i) falls below 1e-9.
Eigen::MatrixXd globalization_M(const Eigen::MatrixXd& P, int i,
                                const Eigen::VectorXd& lambdas);

/// Shared-state derivative calculator. One reduced factorization is built
/// per dropped country and reused across every partner and both derivative
/// kinds; the cache is safe for concurrent readers.
class SensitivityEngine {
public:
  SensitivityEngine(Eigen::MatrixXd P, Eigen::VectorXd pi);

  const Eigen::MatrixXd& P() const { return P_; }
  const Eigen::VectorXd& pi() const { return pi_; }
  int size() const { return n_; }

  /// d pi / d P(j,i) with reaction dP(i,j) = lambda dP(j,i).
  SensitivityResult tradewar(int i, int j, double lambda) const;
  SensitivityResult tradewar(int i, int j, const ReactionRule& rule,
                             const Eigen::VectorXd* gdp) const;

  SensitivityResult globalization(int i, Eigen::VectorXd lambdas) const;
  SensitivityResult globalization(int i, const ReactionRule& rule,
                                  const Eigen::VectorXd* gdp) const;

  /// Per-partner lambdas a rule resolves to for actor i (entry i is 0).
  Eigen::VectorXd resolve_lambdas(int i, const ReactionRule& rule,
                                  const Eigen::VectorXd* gdp) const;

private:
  struct Reduced {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;  // of I - Z_i
    Eigen::VectorXd u;        // (I - Z_i)^{-T} 1
    Eigen::VectorXd w_alpha;  // (I - Z_i)^{-1} alpha_i
    double denom = 0.0;       // 1 + 1' (I - Z_i)^{-1} alpha_i
  };

  const Reduced& reduced(int i) const;
  SensitivityResult tradewar_core(int i, int j, double lambda,
                                  double factor) const;

  int n_ = 0;
  Eigen::MatrixXd P_;
  Eigen::VectorXd pi_;
  mutable std::shared_mutex mutex_;
  mutable std::map<int, std::unique_ptr<const Reduced>> cache_;
};

/// One-shot wrappers over a temporary engine.
SensitivityResult tradewar_derivative(const Eigen::MatrixXd& P,
                                      const Eigen::VectorXd& pi, int i, int j,
                                      double lambda);
SensitivityResult globalization_derivative(const Eigen::MatrixXd& P,
                                           const Eigen::VectorXd& pi, int i,
                                           const Eigen::VectorXd& lambdas);

/// (theta / pi_k) * d pi_k / d theta for every k. Raises zero_base_entry
/// when the result's base entry is 0.
Eigen::VectorXd log_elasticity(const SensitivityResult& result,
                               const Eigen::VectorXd& pi);

}  // namespace cbal
