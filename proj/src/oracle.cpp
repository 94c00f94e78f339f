#include "cbal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>

#include "cbal/authority.hpp"
#include "cbal/errors.hpp"
#include "cbal/trade_matrix.hpp"

namespace cbal::oracle {

namespace {

// The reference path runs in 113-bit floats so central differences at
// h = 1e-7 are truncation limited instead of cancellation limited.
using quad = __float128;

quad qabs(quad x) { return x < 0 ? -x : x; }

// x = xP with unit sum, solved by elimination on the transposed system
// whose first equation is replaced by the normalization constraint.
std::vector<quad> stationary_quad(const std::vector<quad>& P, int n) {
  std::vector<quad> B(static_cast<std::size_t>(n) * n);
  std::vector<quad> rhs(n, quad(0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      B[r * n + c] = r == 0 ? quad(1)
                            : P[c * n + r] - (r == c ? quad(1) : quad(0));
  rhs[0] = 1;

  for (int k = 0; k < n; ++k) {
    int pivot = k;
    quad best = qabs(B[k * n + k]);
    for (int r = k + 1; r < n; ++r) {
      quad cand = qabs(B[r * n + k]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < quad(1e-30))
      raise(errc::singular_system,
            "reference equilibrium: no unique fixed point");
    if (pivot != k) {
      for (int c = k; c < n; ++c)
        std::swap(B[pivot * n + c], B[k * n + c]);
      std::swap(rhs[pivot], rhs[k]);
    }
    for (int r = k + 1; r < n; ++r) {
      quad f = B[r * n + k] / B[k * n + k];
      if (f == 0) continue;
      B[r * n + k] = 0;
      for (int c = k + 1; c < n; ++c) B[r * n + c] -= f * B[k * n + c];
      rhs[r] -= f * rhs[k];
    }
  }
  std::vector<quad> x(n);
  for (int r = n - 1; r >= 0; --r) {
    quad s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= B[r * n + c] * x[c];
    x[r] = s / B[r * n + r];
  }
  quad sum = 0;
  for (int k = 0; k < n; ++k) sum += x[k];
  if (!(sum > 0))
    raise(errc::singular_system, "reference equilibrium: zero mass");
  for (int k = 0; k < n; ++k) x[k] /= sum;
  return x;
}

std::vector<quad> to_quad(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  std::vector<quad> entries(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) entries[r * n + c] = P(r, c);
  return entries;
}

void check_range(double v, const char* what) {
  if (v < 0.0 || v > 1.0) {
    std::ostringstream msg;
    msg << what << " leaves [0, 1]: " << v << "; reduce the step";
    raise(errc::step_too_large, msg.str());
  }
}

}  // namespace

Eigen::VectorXd reference_equilibrium(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  if (n < 1 || P.cols() != n)
    raise(errc::bad_argument, "exposure matrix must be square and non-empty");
  std::vector<quad> x = stationary_quad(to_quad(P), n);
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) out(k) = static_cast<double>(x[k]);
  return out;
}

Eigen::MatrixXd perturb_tradewar(const Eigen::MatrixXd& P, int i, int j,
                                 double lambda, double h) {
  const int n = static_cast<int>(P.rows());
  if (i < 0 || j < 0 || i >= n || j >= n)
    raise(errc::bad_argument, "country position out of range");
  if (i == j) raise(errc::same_country, "trade war of a country with itself");
  Eigen::MatrixXd out = P;
  out(j, i) += h;
  out(j, j) -= h;
  out(i, j) += lambda * h;
  out(i, i) -= lambda * h;
  check_range(out(j, i), "perturbed import entry");
  check_range(out(j, j), "perturbed target diagonal");
  check_range(out(i, j), "perturbed reaction entry");
  check_range(out(i, i), "perturbed actor diagonal");
  return out;
}

Eigen::MatrixXd perturb_direction(const Eigen::MatrixXd& P,
                                  const Eigen::MatrixXd& direction, double h) {
  if (direction.rows() != P.rows() || direction.cols() != P.cols())
    raise(errc::bad_argument, "direction shape does not match the matrix");
  Eigen::MatrixXd out = P + h * direction;
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c)
      if (direction(r, c) != 0.0) check_range(out(r, c), "perturbed entry");
  return out;
}

Eigen::MatrixXd perturb_globalization(const Eigen::MatrixXd& P, int i,
                                      const Eigen::VectorXd& lambdas,
                                      double h) {
  return perturb_direction(P, globalization_M(P, i, lambdas), h);
}

namespace {

double room(double entry) { return std::min(entry, 1.0 - entry); }

}  // namespace

double pick_step_tradewar(const Eigen::MatrixXd& P, int i, int j,
                          double lambda, double h0) {
  double h = h0;
  h = std::min(h, room(P(j, i)) / 10.0);
  h = std::min(h, room(P(j, j)) / 10.0);
  double l = std::abs(lambda);
  if (l > 0.0) {
    h = std::min(h, room(P(i, j)) / (10.0 * l));
    h = std::min(h, room(P(i, i)) / (10.0 * l));
  }
  return std::max(h, 0.0);
}

double pick_step_direction(const Eigen::MatrixXd& P,
                           const Eigen::MatrixXd& direction, double h0) {
  double h = h0;
  for (int r = 0; r < P.rows(); ++r)
    for (int c = 0; c < P.cols(); ++c) {
      double d = std::abs(direction(r, c));
      if (d > 0.0) h = std::min(h, room(P(r, c)) / (10.0 * d));
    }
  return std::max(h, 0.0);
}

Eigen::VectorXd fd_derivative(const Eigen::MatrixXd& P,
                              const Eigen::MatrixXd& direction, double h) {
  const int n = static_cast<int>(P.rows());
  if (direction.rows() != n || direction.cols() != n)
    raise(errc::bad_argument, "direction shape does not match the matrix");
  if (!(h > 0.0)) raise(errc::bad_argument, "step must be positive");

  std::vector<quad> plus(static_cast<std::size_t>(n) * n);
  std::vector<quad> minus(static_cast<std::size_t>(n) * n);
  const quad hq = h;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      quad base = P(r, c);
      quad move = hq * quad(direction(r, c));
      quad up = base + move;
      quad down = base - move;
      if (move != 0 && (up < 0 || up > 1 || down < 0 || down > 1))
        raise(errc::step_too_large,
              "perturbed entry leaves [0, 1]; reduce the step");
      plus[r * n + c] = up;
      minus[r * n + c] = down;
    }

  std::vector<quad> xp = stationary_quad(plus, n);
  std::vector<quad> xm = stationary_quad(minus, n);
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k)
    out(k) = static_cast<double>((xp[k] - xm[k]) / (2 * hq));
  return out;
}

Comparison compare(const Eigen::VectorXd& analytic,
                   const Eigen::VectorXd& numeric) {
  Comparison cmp;
  if (analytic.size() != numeric.size())
    raise(errc::bad_argument, "comparison vectors differ in length");
  for (int k = 0; k < analytic.size(); ++k) {
    double err = std::abs(numeric(k) - analytic(k));
    if (std::abs(analytic(k)) > kRelFloor) {
      double rel = err / std::abs(analytic(k));
      if (rel > cmp.max_rel_err) {
        cmp.max_rel_err = rel;
        if (rel > kRelTol) cmp.worst_entry = k;
      }
    } else if (err > cmp.max_abs_err) {
      cmp.max_abs_err = err;
      if (err > kAbsTol) cmp.worst_entry = k;
    }
  }
  cmp.pass = cmp.max_rel_err <= kRelTol && cmp.max_abs_err <= kAbsTol;
  return cmp;
}

Eigen::MatrixXd random_exposure_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double kept = 0.3 + 0.55 * unif(rng);
    double total = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) {
        P(i, j) = 0.05 + unif(rng);
        total += P(i, j);
      }
    double scale = (1.0 - kept) / total;
    double exported = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) {
        P(i, j) *= scale;
        exported += P(i, j);
      }
    P(i, i) = 1.0 - exported;
  }
  return P;
}

Eigen::VectorXd random_gdp(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(0.5, 2.0);
  Eigen::VectorXd gdp(n);
  for (int k = 0; k < n; ++k) gdp(k) = unif(rng);
  return gdp;
}

namespace {

std::vector<ReactionRule> default_rules() {
  return {ReactionRule::explicit_value_rule(0.0),
          ReactionRule{ReactionRule::Kind::gdp_ratio, 0.0},
          ReactionRule{ReactionRule::Kind::authority_ratio, 0.0},
          ReactionRule::explicit_value_rule(2.5)};
}

struct CaseContext {
  const VerifyOptions& options;
  OracleReport& report;
};

std::string label_of(const VerifyOptions& options, int position) {
  if (position < static_cast<int>(options.labels.size()))
    return options.labels[position];
  return "#" + std::to_string(position);
}

void record(OracleReport& report, OracleCase one) {
  if (one.skipped)
    ++report.skipped;
  else {
    ++report.checked;
    report.worst_rel = std::max(report.worst_rel, one.cmp.max_rel_err);
    report.worst_abs = std::max(report.worst_abs, one.cmp.max_abs_err);
    if (!one.pass) {
      ++report.failures;
      report.pass = false;
    }
  }
  report.cases.push_back(std::move(one));
}

// Compares one analytic result against the reference difference, retrying
// once with Richardson extrapolation when allowed.
void run_case(CaseContext& ctx, const Eigen::MatrixXd& P,
              const SensitivityResult& analytic,
              const Eigen::MatrixXd& direction, double h,
              std::string description) {
  OracleCase one;
  one.description = std::move(description);
  if (h < 1e-12) {
    one.skipped = true;
    one.reason = "entry too close to the [0, 1] boundary";
    record(ctx.report, std::move(one));
    return;
  }
  one.h = h;
  Eigen::VectorXd fd = fd_derivative(P, direction, h);
  one.cmp = compare(analytic.d_pi, fd);
  one.pass = one.cmp.pass;
  if (!one.pass && ctx.options.refine) {
    Eigen::VectorXd fd_half = fd_derivative(P, direction, h / 2.0);
    Eigen::VectorXd extrapolated = (4.0 * fd_half - fd) / 3.0;
    Comparison refined = compare(analytic.d_pi, extrapolated);
    if (refined.pass) {
      one.cmp = refined;
      one.pass = true;
      one.reason = "required Richardson extrapolation (steep curvature)";
    }
  }
  record(ctx.report, std::move(one));
}

Eigen::MatrixXd tradewar_direction(int n, int i, int j, double lambda) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  D(j, i) = 1.0;
  D(j, j) = -1.0;
  D(i, j) = lambda;
  D(i, i) = -lambda;
  return D;
}

template <typename T>
std::vector<T> sample(std::vector<T> all, std::size_t want,
                      std::mt19937_64& rng) {
  if (all.size() <= want) return all;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(want);
  return all;
}

void run_matrix(CaseContext& ctx, const Eigen::MatrixXd& P,
                const Eigen::VectorXd& pi, const Eigen::VectorXd& gdp,
                const std::string& tag,
                const std::vector<ReactionRule>& rules, std::mt19937_64& rng,
                bool labelled) {
  const int n = static_cast<int>(P.rows());
  ConnectivityReport connectivity = check_connectivity(P);
  if (!connectivity.strongly_connected) {
    OracleCase one;
    one.description = tag;
    one.skipped = true;
    one.reason = "matrix is not strongly connected";
    record(ctx.report, std::move(one));
    return;
  }

  SensitivityEngine engine(P, pi);
  auto name = [&](int k) {
    return labelled ? label_of(ctx.options, k) : "#" + std::to_string(k);
  };

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  pairs = sample(std::move(pairs),
                 static_cast<std::size_t>(ctx.options.max_pairs), rng);

  for (auto [i, j] : pairs) {
    for (const ReactionRule& rule : rules) {
      if (rule.needs_gdp() && gdp.size() != n) continue;
      SensitivityResult analytic = engine.tradewar(i, j, rule, &gdp);
      std::ostringstream desc;
      desc << tag << ": trade war " << name(i) << " vs " << name(j)
           << ", lambda=" << rule.describe() << " (" << analytic.lambda
           << ")";
      double h = pick_step_tradewar(P, i, j, analytic.lambda, ctx.options.h0);
      run_case(ctx, P, analytic,
               tradewar_direction(n, i, j, analytic.lambda), h, desc.str());
    }
  }

  std::vector<int> actors(n);
  for (int i = 0; i < n; ++i) actors[i] = i;
  actors = sample(std::move(actors),
                  static_cast<std::size_t>(ctx.options.max_actors), rng);
  for (int i : actors) {
    for (const ReactionRule& rule : rules) {
      if (rule.needs_gdp() && gdp.size() != n) continue;
      std::ostringstream desc;
      desc << tag << ": self exposure " << name(i)
           << ", lambda=" << rule.describe();
      try {
        SensitivityResult analytic = engine.globalization(i, rule, &gdp);
        Eigen::MatrixXd M = globalization_M(P, i, analytic.lambdas);
        double h = pick_step_direction(P, M, ctx.options.h0);
        run_case(ctx, P, analytic, M, h, desc.str());
      } catch (const error& e) {
        if (e.code() != errc::degenerate_denominator) throw;
        OracleCase one;
        one.description = desc.str();
        one.skipped = true;
        one.reason = e.what();
        record(ctx.report, std::move(one));
      }
    }
  }
}

}  // namespace

OracleReport verify_all(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                        const Eigen::VectorXd& gdp,
                        const VerifyOptions& options) {
  OracleReport report;
  std::vector<ReactionRule> rules =
      options.rules.empty() ? default_rules() : options.rules;
  std::mt19937_64 rng(options.seed);
  CaseContext ctx{options, report};

  run_matrix(ctx, P, pi, gdp, "input", rules, rng, true);

  for (int k = 0; k < options.random_instances; ++k) {
    int n = options.random_sizes.empty()
                ? 5
                : options.random_sizes[k % options.random_sizes.size()];
    Eigen::MatrixXd Pk = random_exposure_matrix(rng, n);
    Eigen::VectorXd pik = authority_distribution(Pk).pi;
    Eigen::VectorXd gdpk = random_gdp(rng, n);
    run_matrix(ctx, Pk, pik, gdpk, "random#" + std::to_string(k), rules, rng,
               false);
  }
  return report;
}

}  // namespace cbal::oracle
