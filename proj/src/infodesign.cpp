// SPDX-License-Identifier: Apache-2.0
#include "optsample/infodesign.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "optsample/csv.hpp"
#include "optsample/rng.hpp"

namespace optsample {

namespace {

// Rows of psi(t)^T stacked over a set of times.
Eigen::MatrixXcd psi_rows(const FrequencyBasis& basis, std::span<const double> times) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(times.size()), basis.dimension());
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    for (int i = 0; i < basis.dimension(); ++i)
      m(k, i) = std::polar(1.0, basis[i] * times[static_cast<std::size_t>(k)]);
  return m;
}

// Leverage values of all candidate rows against a Hermitian Q: entry l is
// rows_l Q rows_l^H, the regressor quadratic form in the Psi^H Psi convention
// used by every Gram matrix in the project.
Eigen::VectorXd leverage(const Eigen::MatrixXcd& rows, const Eigen::MatrixXcd& q) {
  return ((rows * q).cwiseProduct(rows.conjugate())).rowwise().sum().real();
}

// Regressor column of one candidate row: u = conj(psi(t)), so that
// sum_k u_k u_k^H reproduces Psi^H Psi.
Eigen::VectorXcd regressor_column(const Eigen::MatrixXcd& rows, Eigen::Index l) {
  return rows.row(l).adjoint();
}

// Relative tie tolerance for argmax scans; picks the earliest candidate among
// floating-point ties.
constexpr double kTieTol = 1e-12;

}  // namespace

std::vector<double> midpoint_grid(double horizon, int points) {
  if (!(horizon > 0.0)) throw std::invalid_argument("grid horizon must be positive");
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double h = horizon / points;
  for (int l = 0; l < points; ++l) grid[static_cast<std::size_t>(l)] = (l + 0.5) * h;
  return grid;
}

DesignMeasure::DesignMeasure(std::vector<double> grid, std::vector<double> weights,
                             double horizon)
    : grid_(std::move(grid)), weights_(std::move(weights)), horizon_(horizon) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw std::invalid_argument("design measure horizon must be positive and finite");
  if (grid_.empty() || grid_.size() != weights_.size())
    throw std::invalid_argument("design measure grid and weights must match and be nonempty");
  if (grid_.front() < 0.0 || grid_.back() > horizon_)
    throw std::invalid_argument("design measure grid must lie in [0, horizon]");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("design measure weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("design measure weights must sum to one");
  for (std::size_t l = 1; l < grid_.size(); ++l)
    if (!(grid_[l] > grid_[l - 1]))
      throw std::invalid_argument("design measure grid must be strictly increasing");
}

DesignMeasure DesignMeasure::uniform(double horizon, int points) {
  std::vector<double> weights(static_cast<std::size_t>(points), 1.0 / points);
  // fix the rounding residue so the sum is exactly one
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  weights.back() += 1.0 - sum;
  return DesignMeasure(midpoint_grid(horizon, points), std::move(weights), horizon);
}

InformationMatrix expected_info(const DesignMeasure& measure, const FrequencyBasis& basis,
                                double n) {
  if (!(n >= 1.0)) throw std::invalid_argument("expected_info needs a sample count >= 1");
  const int c = basis.dimension();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(c, c);
  Eigen::VectorXcd u(c);
  for (int l = 0; l < measure.size(); ++l) {
    const double w = measure.weights()[static_cast<std::size_t>(l)];
    if (w == 0.0) continue;
    const double t = measure.grid()[static_cast<std::size_t>(l)];
    for (int i = 0; i < c; ++i) u(i) = std::polar(1.0, -basis[i] * t);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(u, w);
  }
  Eigen::MatrixXcd r0 = Eigen::MatrixXcd(acc.selfadjointView<Eigen::Lower>()) * n;
  // |psi| == 1 identically, so the diagonal is exactly N for any measure.
  r0.diagonal().setConstant(n);
  return InformationMatrix(std::move(r0), n);
}

InformationMatrix schedule_info(const FrequencyBasis& basis, const SamplingSchedule& schedule) {
  const Eigen::MatrixXcd rows = psi_rows(basis, schedule.times());
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(basis.dimension(), basis.dimension());
  g.selfadjointView<Eigen::Lower>().rankUpdate(rows.adjoint(), 1.0);
  Eigen::MatrixXcd full = Eigen::MatrixXcd(g.selfadjointView<Eigen::Lower>());
  full.diagonal().setConstant(static_cast<double>(schedule.size()));
  return InformationMatrix(std::move(full), schedule.size());
}

DoptimalResult doptimal_density(const FrequencyBasis& basis, const std::vector<double>& grid,
                                double horizon, int max_iters, double kw_tol) {
  const int c = basis.dimension();
  const int l_count = static_cast<int>(grid.size());
  if (l_count < c)
    throw std::invalid_argument("design grid needs at least 2M+1 points");
  if (!(kw_tol > 0.0)) throw std::invalid_argument("Kiefer-Wolfowitz tolerance must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least one");

  const Eigen::MatrixXcd rows = psi_rows(basis, grid);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(l_count, 1.0 / l_count);
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(c, c);

  std::vector<double> history;
  double kw_stat = 0.0;
  double log_det = 0.0;
  bool converged = false;
  int iter = 0;

  const auto info_of = [&](const Eigen::VectorXd& weights) {
    Eigen::MatrixXcd m = rows.adjoint() * weights.asDiagonal() * rows;
    return Eigen::MatrixXcd(((m + m.adjoint()) / 2.0));  // kill rounding asymmetry
  };

  while (iter < max_iters) {
    ++iter;
    const Eigen::MatrixXcd m = info_of(w);
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("design information matrix lost positive definiteness");
    log_det = 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
    history.push_back(log_det);

    const Eigen::MatrixXcd m_inv = llt.solve(identity);
    const Eigen::VectorXd d = leverage(rows, m_inv);
    Eigen::Index best;
    kw_stat = d.maxCoeff(&best);
    if (kw_stat <= c * (1.0 + kw_tol)) {
      converged = true;
      break;
    }

    if (iter % 2 == 1) {
      // multiplicative reweighting w_l <- w_l d_l / C (monotone in log det)
      w = w.cwiseProduct(d) / static_cast<double>(c);
    } else {
      // vertex exchange: move mass from the worst supported point to the best
      // candidate, with the step length that maximizes the log-det gain
      Eigen::Index worst = -1;
      double d_worst = std::numeric_limits<double>::infinity();
      for (Eigen::Index l = 0; l < d.size(); ++l)
        if (w(l) > 0.0 && d(l) < d_worst) {
          d_worst = d(l);
          worst = l;
        }
      if (worst >= 0 && worst != best && d(best) > d_worst) {
        const Eigen::VectorXcd u_best = regressor_column(rows, best);
        const Eigen::VectorXcd u_worst = regressor_column(rows, worst);
        const std::complex<double> cross = u_best.dot(m_inv * u_worst);  // u_b^H M^-1 u_w
        const double denom = d(best) * d_worst - std::norm(cross);
        double step = denom > 0.0 ? (d(best) - d_worst) / (2.0 * denom)
                                  : std::numeric_limits<double>::infinity();
        step = std::min(step, w(worst));
        if (step > 0.0 && std::isfinite(step)) {
          w(worst) -= step;
          w(best) += step;
        }
      }
    }
    w = w.cwiseMax(0.0);
    w /= w.sum();
  }

  if (!converged) {
    // refresh the reported statistics so they describe the returned weights
    const Eigen::MatrixXcd m = info_of(w);
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("design information matrix lost positive definiteness");
    log_det = 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
    history.push_back(log_det);
    kw_stat = leverage(rows, llt.solve(identity)).maxCoeff();
  }

  std::vector<double> weights(w.data(), w.data() + w.size());
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& v : weights) v /= sum;
  sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  // nudge the largest weight so the simplex constraint holds exactly
  *std::max_element(weights.begin(), weights.end()) += 1.0 - sum;

  DesignMeasure measure(grid, std::move(weights), horizon);
  return DoptimalResult{std::move(measure), kw_stat, log_det, iter, converged,
                        std::move(history)};
}

SamplingSchedule greedy_schedule(const FrequencyBasis& basis, double horizon, int grid_points,
                                 int n, double ridge, GreedyTrace* trace) {
  const int c = basis.dimension();
  if (n <= 2 * basis.harmonic_count())
    throw std::invalid_argument("greedy schedule needs N > 2M samples");
  if (grid_points < n)
    throw std::invalid_argument("greedy schedule needs a grid at least as large as N");
  if (!(ridge > 0.0)) throw std::invalid_argument("greedy ridge must be positive");

  const std::vector<double> grid = midpoint_grid(horizon, grid_points);
  const Eigen::MatrixXcd rows = psi_rows(basis, grid);

  Eigen::MatrixXcd r = ridge * Eigen::MatrixXcd::Identity(c, c);
  Eigen::MatrixXcd r_inv = (1.0 / ridge) * Eigen::MatrixXcd::Identity(c, c);
  std::vector<bool> used(grid.size(), false);
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n));
  if (trace) *trace = GreedyTrace{};

  double log_det = static_cast<double>(c) * std::log(ridge);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd gains = leverage(rows, r_inv);
    int best = -1;
    double best_gain = 0.0;
    for (int l = 0; l < grid_points; ++l) {
      if (used[static_cast<std::size_t>(l)]) continue;
      // strictly-better comparison with a relative tie band, so equal-gain
      // candidates resolve to the earliest grid time
      if (best < 0 || gains(l) > best_gain * (1.0 + kTieTol)) {
        best_gain = gains(l);
        best = l;
      }
    }
    if (best < 0) throw std::logic_error("greedy selection exhausted the grid");

    used[static_cast<std::size_t>(best)] = true;
    times.push_back(grid[static_cast<std::size_t>(best)]);

    const Eigen::VectorXcd u = regressor_column(rows, best);
    const Eigen::VectorXcd r_inv_u = r_inv * u;
    r += u * u.adjoint();
    // Sherman-Morrison downdate of the inverse
    r_inv -= (r_inv_u * r_inv_u.adjoint()) / (1.0 + best_gain);

    log_det += std::log1p(best_gain);
    if (trace) {
      trace->selection_order.push_back(best);
      trace->gains.push_back(best_gain);
      trace->log_det.push_back(log_det);
    }

    if ((k + 1) % 50 == 0) {
      // periodic refactorization caps inverse drift
      Eigen::LLT<Eigen::MatrixXcd> llt(r);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("greedy information matrix lost positive definiteness");
      r_inv = llt.solve(Eigen::MatrixXcd::Identity(c, c));
      const double drift = (r * r_inv - Eigen::MatrixXcd::Identity(c, c)).norm();
      if (drift > 1e-8)
        throw std::runtime_error("greedy inverse drift exceeded tolerance");
    }
  }

  std::sort(times.begin(), times.end());
  return SamplingSchedule(std::move(times), horizon);
}

double logdet_gain(const InformationMatrix& r, const Eigen::VectorXcd& psi) {
  if (psi.size() != r.dimension())
    throw std::invalid_argument("regressor dimension does not match the information matrix");
  Eigen::LLT<Eigen::MatrixXcd> llt(r.entries());
  if (llt.info() != Eigen::Success || llt.matrixLLT().diagonal().real().minCoeff() <= 0.0)
    throw std::invalid_argument("information matrix must be positive definite");
  const double s = psi.dot(llt.solve(psi)).real();
  return std::log1p(s);
}

SamplingSchedule sample_schedule(const DesignMeasure& measure, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("schedule needs at least one sample");
  const int l_count = measure.size();
  const auto grid = measure.grid();
  const auto weights = measure.weights();

  // cell boundaries from neighbor midpoints, clamped to [0, horizon]
  std::vector<double> lo(static_cast<std::size_t>(l_count));
  std::vector<double> hi(static_cast<std::size_t>(l_count));
  if (l_count == 1) {
    lo[0] = hi[0] = grid[0];  // point mass
  } else {
    for (int l = 0; l < l_count; ++l) {
      const std::size_t i = static_cast<std::size_t>(l);
      const double left_gap = l > 0 ? (grid[i] - grid[i - 1]) / 2.0 : (grid[1] - grid[0]) / 2.0;
      const double right_gap =
          l + 1 < l_count ? (grid[i + 1] - grid[i]) / 2.0 : (grid[i] - grid[i - 1]) / 2.0;
      lo[i] = std::max(0.0, grid[i] - left_gap);
      hi[i] = std::min(measure.horizon(), grid[i] + right_gap);
    }
  }

  std::vector<double> cdf(static_cast<std::size_t>(l_count));
  double acc = 0.0;
  for (int l = 0; l < l_count; ++l) {
    acc += weights[static_cast<std::size_t>(l)];
    cdf[static_cast<std::size_t>(l)] = acc;
  }
  cdf.back() = 1.0;

  SplitMix64 rng(seed);
  std::vector<double> times(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t cell = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        std::distance(cdf.begin(), it), l_count - 1));
    times[static_cast<std::size_t>(k)] = lo[cell] + rng.next_double() * (hi[cell] - lo[cell]);
  }
  std::sort(times.begin(), times.end());
  return SamplingSchedule(std::move(times), measure.horizon());
}

void save_measure_csv(const DesignMeasure& measure, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(measure.size()) + 1);
  lines.emplace_back("time,weight");
  for (int l = 0; l < measure.size(); ++l)
    lines.push_back(csv::format_exact(measure.grid()[static_cast<std::size_t>(l)]) + "," +
                    csv::format_exact(measure.weights()[static_cast<std::size_t>(l)]));
  csv::write_lines(path, lines);
}

DesignMeasure load_measure_csv(const std::string& path, double horizon) {
  std::vector<double> grid;
  std::vector<double> weights;
  for (const auto& row : csv::read_rows(path)) {
    if (row.size() != 2) throw std::runtime_error("expected two columns in " + path);
    if (row[0] == "time") continue;  // header
    grid.push_back(csv::parse_double(row[0], path));
    weights.push_back(csv::parse_double(row[1], path));
  }
  return DesignMeasure(std::move(grid), std::move(weights), horizon);
}

}  // namespace optsample
