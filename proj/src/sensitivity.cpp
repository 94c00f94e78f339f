#include "cbal/sensitivity.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "cbal/authority.hpp"
#include "cbal/errors.hpp"

namespace cbal {

namespace {

constexpr double kDenomTol = 1e-9;

void check_actor(int n, int i) {
  if (i < 0 || i >= n) raise(errc::bad_argument, "country position out of range");
}

int reduced_position(int original, int dropped) {
  return original < dropped ? original : original - 1;
}

}  // namespace

ReducedBlocks reduced_blocks(const Eigen::MatrixXd& P, int i) {
  const int n = static_cast<int>(P.rows());
  if (n < 2) raise(errc::matrix_too_small, "need at least two countries");
  check_actor(n, i);

  ReducedBlocks blocks;
  blocks.dropped = i;
  blocks.Z.resize(n - 1, n - 1);
  blocks.alpha.resize(n - 1);
  for (int r = 0; r < n - 1; ++r) {
    int orig_r = r < i ? r : r + 1;
    blocks.alpha(r) = P(i, orig_r);
    for (int c = 0; c < n - 1; ++c) {
      int orig_c = c < i ? c : c + 1;
      // Z is the transpose of P restricted to the kept countries.
      blocks.Z(r, c) = P(orig_c, orig_r);
    }
  }
  return blocks;
}

ReactionRule ReactionRule::parse(const std::string& text) {
  if (text == "gdp") return {Kind::gdp_ratio, 0.0};
  if (text == "authority") return {Kind::authority_ratio, 0.0};
  if (text == "midpoint") return {Kind::midpoint, 0.0};
  double v = 0.0;
  const char* begin = text.c_str();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    raise(errc::bad_argument,
          "reaction rule must be gdp, authority, midpoint or a number: '" +
              text + "'");
  if (v < 0.0)
    raise(errc::bad_argument, "reaction coefficient must be nonnegative");
  return {Kind::explicit_value, v};
}

double ReactionRule::resolve(const Eigen::VectorXd& pi,
                             const Eigen::VectorXd* gdp, int a, int b) const {
  if (a == b) raise(errc::same_country, "reaction of a country with itself");
  if (needs_gdp() && (gdp == nullptr || gdp->size() != pi.size()))
    raise(errc::missing_gdp, "reaction rule needs GDP data");
  switch (kind) {
    case Kind::explicit_value:
      return value;
    case Kind::gdp_ratio:
      return (*gdp)(a) / (*gdp)(b);
    case Kind::authority_ratio:
      return pi(a) / pi(b);
    case Kind::midpoint:
      return 0.5 * (pi(a) / pi(b) + (*gdp)(a) / (*gdp)(b));
  }
  raise(errc::bad_argument, "invalid reaction rule");
}

std::string ReactionRule::describe() const {
  switch (kind) {
    case Kind::gdp_ratio: return "gdp";
    case Kind::authority_ratio: return "authority";
    case Kind::midpoint: return "midpoint";
    case Kind::explicit_value: {
      std::ostringstream out;
      out << value;
      return out.str();
    }
  }
  return "?";
}

Eigen::MatrixXd globalization_M(const Eigen::MatrixXd& P, int i,
                                const Eigen::VectorXd& lambdas) {
  const int n = static_cast<int>(P.rows());
  if (n < 2) raise(errc::matrix_too_small, "need at least two countries");
  check_actor(n, i);
  if (lambdas.size() != n)
    raise(errc::bad_argument, "need one reaction coefficient per country");

  // Each denominator is the relevant row sum with column i (or the
  // diagonal) excluded, summed directly rather than taken as 1 - entry so
  // every constructed row cancels to zero at working precision.
  auto row_sum_excluding = [&](int r, int skip) {
    double s = 0.0;
    for (int t = 0; t < n; ++t)
      if (t != skip) s += P(r, t);
    return s;
  };

  const double s_i = row_sum_excluding(i, i);
  if (s_i <= kDenomTol)
    raise(errc::degenerate_denominator,
          "actor exports a vanishing share of GDP");

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  M(i, i) = 1.0;
  for (int t = 0; t < n; ++t)
    if (t != i) M(i, t) = -P(i, t) / s_i;

  // Partner s pulls coeff out of its exposure to i and restores its row
  // sum proportionally across everything it keeps outside column i.
  for (int s = 0; s < n; ++s) {
    if (s == i) continue;
    double coeff = lambdas(s) * P(i, s) / s_i;
    if (coeff == 0.0) continue;
    double d_s = row_sum_excluding(s, i);
    if (d_s <= kDenomTol)
      raise(errc::degenerate_denominator,
            "reacting partner ships its whole GDP to the actor");
    M(s, i) = -coeff;
    for (int t = 0; t < n; ++t)
      if (t != i) M(s, t) = coeff * P(s, t) / d_s;
  }
  return M;
}

SensitivityEngine::SensitivityEngine(Eigen::MatrixXd P, Eigen::VectorXd pi)
    : n_(static_cast<int>(P.rows())), P_(std::move(P)), pi_(std::move(pi)) {
  validate_exposure_matrix(P_);
  if (n_ < 2) raise(errc::matrix_too_small, "need at least two countries");
  if (pi_.size() != n_)
    raise(errc::bad_argument, "authority vector does not match the matrix");
}

const SensitivityEngine::Reduced& SensitivityEngine::reduced(int i) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(i);
    if (it != cache_.end()) return *it->second;
  }
  auto built = std::make_unique<Reduced>();
  ReducedBlocks blocks = reduced_blocks(P_, i);
  Eigen::MatrixXd A =
      Eigen::MatrixXd::Identity(n_ - 1, n_ - 1) - blocks.Z;
  built->lu.compute(A);
  if (built->lu.rcond() < 1e-14)
    raise(errc::singular_system,
          "reduced system is singular; the trade network is not "
          "well connected");
  built->u = built->lu.transpose().solve(Eigen::VectorXd::Ones(n_ - 1));
  built->w_alpha = built->lu.solve(blocks.alpha);
  built->denom = 1.0 + built->u.dot(blocks.alpha);

  std::unique_lock lock(mutex_);
  auto [it, fresh] = cache_.emplace(i, std::move(built));
  (void)fresh;  // a racing builder may have inserted first; keep theirs
  return *it->second;
}

SensitivityResult SensitivityEngine::tradewar_core(int i, int j, double lambda,
                                                   double factor) const {
  const Reduced& red = reduced(i);
  const int jr = reduced_position(j, i);

  SensitivityResult result;
  result.kind = SensitivityResult::Kind::trade_war;
  result.actor = i;
  result.target = j;
  result.lambda = lambda;
  result.theta = P_(j, i);
  result.d_pi = Eigen::VectorXd::Zero(n_);

  if (factor != 0.0) {
    double s_gamma = red.u(jr);
    double self = -factor * s_gamma / red.denom;
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n_ - 1);
    gamma(jr) = 1.0;
    Eigen::VectorXd rest =
        factor * (red.lu.solve(gamma) - (s_gamma / red.denom) * red.w_alpha);
    result.d_pi(i) = self;
    for (int r = 0; r < n_ - 1; ++r)
      result.d_pi(r < i ? r : r + 1) = rest(r);
  }
  result.zero_sum_residual = std::abs(result.d_pi.sum());
  if (result.theta > 0.0) result.log_elasticities = log_elasticity(result, pi_);
  return result;
}

SensitivityResult SensitivityEngine::tradewar(int i, int j,
                                              double lambda) const {
  check_actor(n_, i);
  check_actor(n_, j);
  if (i == j) raise(errc::same_country, "trade war of a country with itself");
  return tradewar_core(i, j, lambda, lambda * pi_(i) - pi_(j));
}

SensitivityResult SensitivityEngine::tradewar(int i, int j,
                                              const ReactionRule& rule,
                                              const Eigen::VectorXd* gdp) const {
  check_actor(n_, i);
  check_actor(n_, j);
  if (i == j) raise(errc::same_country, "trade war of a country with itself");
  // The initiating entry is P(j,i): actor i cuts imports from target j.
  double lambda = rule.resolve(pi_, gdp, j, i);
  // The authority-ratio rule is the partner's status quo: the derivative
  // vanishes identically, so the factor is pinned to zero rather than left
  // to roundoff.
  double factor = rule.kind == ReactionRule::Kind::authority_ratio
                      ? 0.0
                      : lambda * pi_(i) - pi_(j);
  return tradewar_core(i, j, lambda, factor);
}

Eigen::VectorXd SensitivityEngine::resolve_lambdas(
    int i, const ReactionRule& rule, const Eigen::VectorXd* gdp) const {
  check_actor(n_, i);
  Eigen::VectorXd lambdas = Eigen::VectorXd::Zero(n_);
  // Here the initiating entries sit on the actor's own row: raising P(i,i)
  // shrinks every P(i,s), and partner s mirrors its entry's change.
  for (int s = 0; s < n_; ++s)
    if (s != i) lambdas(s) = rule.resolve(pi_, gdp, i, s);
  return lambdas;
}

SensitivityResult SensitivityEngine::globalization(
    int i, Eigen::VectorXd lambdas) const {
  check_actor(n_, i);
  Eigen::MatrixXd M = globalization_M(P_, i, lambdas);
  const Reduced& red = reduced(i);

  Eigen::RowVectorXd piM = pi_.transpose() * M;
  Eigen::VectorXd m(n_ - 1);
  for (int r = 0; r < n_ - 1; ++r) m(r) = piM(r < i ? r : r + 1);

  double s_m = red.u.dot(m);
  double self = -s_m / red.denom;
  Eigen::VectorXd rest = red.lu.solve(m) - (s_m / red.denom) * red.w_alpha;

  SensitivityResult result;
  result.kind = SensitivityResult::Kind::globalization;
  result.actor = i;
  result.lambda = std::numeric_limits<double>::quiet_NaN();
  result.lambdas = std::move(lambdas);
  result.theta = P_(i, i);
  result.d_pi = Eigen::VectorXd::Zero(n_);
  result.d_pi(i) = self;
  for (int r = 0; r < n_ - 1; ++r)
    result.d_pi(r < i ? r : r + 1) = rest(r);
  result.zero_sum_residual = std::abs(result.d_pi.sum());
  if (result.theta > 0.0) result.log_elasticities = log_elasticity(result, pi_);
  return result;
}

SensitivityResult SensitivityEngine::globalization(
    int i, const ReactionRule& rule, const Eigen::VectorXd* gdp) const {
  return globalization(i, resolve_lambdas(i, rule, gdp));
}

SensitivityResult tradewar_derivative(const Eigen::MatrixXd& P,
                                      const Eigen::VectorXd& pi, int i, int j,
                                      double lambda) {
  return SensitivityEngine(P, pi).tradewar(i, j, lambda);
}

SensitivityResult globalization_derivative(const Eigen::MatrixXd& P,
                                           const Eigen::VectorXd& pi, int i,
                                           const Eigen::VectorXd& lambdas) {
  return SensitivityEngine(P, pi).globalization(i, lambdas);
}

Eigen::VectorXd log_elasticity(const SensitivityResult& result,
                               const Eigen::VectorXd& pi) {
  if (result.theta == 0.0)
    raise(errc::zero_base_entry,
          "log elasticity undefined: base exposure entry is zero");
  if (pi.size() != result.d_pi.size())
    raise(errc::bad_argument, "authority vector does not match the result");
  Eigen::VectorXd e(pi.size());
  for (int k = 0; k < pi.size(); ++k) {
    if (!(pi(k) > 0.0))
      raise(errc::bad_argument, "log elasticity needs positive authority");
    e(k) = result.theta * result.d_pi(k) / pi(k);
  }
  return e;
}

}  // namespace cbal
