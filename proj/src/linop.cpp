#include "banachgeo/linop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banachgeo/rng.hpp"

namespace banachgeo {

LinOperator::LinOperator(Space dom, Space cod, Eigen::MatrixXd m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim()) {
    throw DimensionError("operator matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + " but spaces require " +
                         std::to_string(codomain.dim()) + "x" + std::to_string(domain.dim()));
  }
  if (!matrix.allFinite()) throw Error("operator matrix has non-finite entries");
}

Eigen::VectorXd LinOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != matrix.cols()) throw DimensionError("apply: dimension mismatch");
  return matrix * x;
}

double LinOperator::determinant() const {
  if (!square()) throw DimensionError("determinant requires equal domain and codomain dimensions");
  return matrix.determinant();
}

double LinOperator::log_abs_det(int* sign) const {
  if (!square()) throw DimensionError("determinant requires equal domain and codomain dimensions");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(matrix);
  const Eigen::MatrixXd& u = lu.matrixLU();
  double log_abs = 0.0;
  int s = lu.permutationP().determinant() > 0 ? 1 : -1;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double d = u(i, i);
    if (d == 0.0) {
      if (sign) *sign = 0;
      return -std::numeric_limits<double>::infinity();
    }
    if (d < 0) s = -s;
    log_abs += std::log(std::abs(d));
  }
  if (sign) *sign = s;
  return log_abs;
}

LinOperator LinOperator::adjoint() const {
  return LinOperator(codomain.dual(), domain.dual(), matrix.transpose());
}

LinOperator block_diagonal(const std::vector<LinOperator>& blocks,
                           const std::vector<double>& scalars, const Space& outer_domain,
                           const Space& outer_codomain) {
  if (blocks.empty()) throw DimensionError("block_diagonal needs at least one block");
  if (blocks.size() != scalars.size()) {
    throw DimensionError("block_diagonal: scalar list length != number of blocks");
  }
  std::vector<Space> doms, cods;
  int nr = 0, nc = 0;
  for (const auto& b : blocks) {
    doms.push_back(b.domain);
    cods.push_back(b.codomain);
    nr += b.rows();
    nc += b.cols();
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nr, nc);
  int r = 0, c = 0;
  for (size_t k = 0; k < blocks.size(); ++k) {
    m.block(r, c, blocks[k].rows(), blocks[k].cols()) = scalars[k] * blocks[k].matrix;
    r += blocks[k].rows();
    c += blocks[k].cols();
  }
  return LinOperator(Space::sum(outer_domain, std::move(doms)),
                     Space::sum(outer_codomain, std::move(cods)), std::move(m));
}

LinOperator block_diagonal(const std::vector<LinOperator>& blocks,
                           const std::vector<double>& scalars, const Space& outer) {
  return block_diagonal(blocks, scalars, outer, outer);
}

namespace {

// One projected-gradient ascent run for ||Tx|| over the domain unit sphere.
// Returns the best value; writes the final unit vector to x_out if non-null.
double ascend(const LinOperator& T, Eigen::VectorXd x, int iters, double tol,
              Eigen::VectorXd* x_out = nullptr) {
  const double nx = T.domain.norm(x);
  if (nx == 0.0) return 0.0;
  x /= nx;
  double val = T.codomain.norm(T.matrix * x);
  double step = 0.5;
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd g = T.matrix.transpose() * T.codomain.norm_subgradient(T.matrix * x);
    bool improved = false;
    for (int bt = 0; bt < 30; ++bt) {
      Eigen::VectorXd xt = x + step * g;
      const double nt = T.domain.norm(xt);
      if (nt == 0.0) break;
      xt /= nt;
      const double vt = T.codomain.norm(T.matrix * xt);
      if (vt > val * (1.0 + 1e-14)) {
        const double gain = vt - val;
        x = std::move(xt);
        val = vt;
        improved = true;
        step *= 1.5;
        if (gain < tol * std::max(val, 1e-300)) it = iters;  // converged
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  if (x_out) *x_out = x;
  return val;
}

}  // namespace

double operator_norm_lower(const LinOperator& T, const OptBudget& budget, Eigen::VectorXd* best_x) {
  const int n = T.cols();
  double best = 0.0;
  Eigen::VectorXd cand;

  auto try_start = [&](const Eigen::VectorXd& x0) {
    const double v = ascend(T, x0, budget.iters, budget.tol, best_x ? &cand : nullptr);
    if (v > best) {
      best = v;
      if (best_x) *best_x = cand;
    }
  };

  for (int i = 0; i < n; ++i) try_start(Eigen::VectorXd::Unit(n, i));
  try_start(Eigen::VectorXd::Ones(n));
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T.matrix, Eigen::ComputeThinV);
    if (svd.matrixV().cols() > 0) try_start(svd.matrixV().col(0));
  }
  const uint64_t seed = rng::derive(budget.seed, 0x6f70);
  for (int s = 0; s < budget.multistarts; ++s) {
    try_start(rng::gaussian_vector(seed, static_cast<uint64_t>(s), n));
  }
  return best;
}

NormBracket operator_norm(const LinOperator& T, const OptBudget& budget) {
  NormBracket out;
  if (T.matrix.isZero(0.0)) {
    out.certified = true;
    return out;
  }

  // Exact route 1: enumerable extreme points of the domain ball.
  {
    double best = 0.0;
    const bool done = for_each_ball_extreme_point(
        T.domain,
        [&](const Eigen::VectorXd& x) { best = std::max(best, T.codomain.norm(T.matrix * x)); },
        budget.enumeration_cap);
    if (done) {
      out.lower = out.upper = best;
      out.certified = true;
      return out;
    }
  }

  // Exact route 2: inner-product norms on both sides -> scaled spectral norm.
  if (T.domain.is_euclidean() && T.codomain.is_euclidean()) {
    const Eigen::VectorXd dd = T.domain.euclidean_scaling();
    const Eigen::VectorXd dc = T.codomain.euclidean_scaling();
    const Eigen::MatrixXd m = dc.asDiagonal() * T.matrix * dd.cwiseInverse().asDiagonal();
    const double s = m.jacobiSvd().singularValues()(0);
    out.lower = out.upper = s;
    out.certified = true;
    return out;
  }

  // Heuristic route: multistart projected gradient; the upper bound is the
  // best value inflated by a spread-based delta.
  const int n = T.cols();
  const uint64_t seed = rng::derive(budget.seed, 0x6f7032);
  std::vector<double> results;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    best = std::max(best, ascend(T, Eigen::VectorXd::Unit(n, i), budget.iters, budget.tol));
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T.matrix, Eigen::ComputeThinV);
    if (svd.matrixV().cols() > 0) {
      best = std::max(best, ascend(T, svd.matrixV().col(0), budget.iters, budget.tol));
    }
  }
  results.push_back(best);
  for (int s = 0; s < budget.multistarts; ++s) {
    results.push_back(ascend(T, rng::gaussian_vector(seed, static_cast<uint64_t>(s), n),
                             budget.iters, budget.tol));
    best = std::max(best, results.back());
  }

  int agreeing = 0;
  for (const double r : results) {
    if (r >= best * (1.0 - 1e-6)) ++agreeing;
  }
  const double spread_delta =
      agreeing >= std::max(2, static_cast<int>(results.size()) / 4) ? 1e-4 : 2e-2;
  out.lower = best;
  out.delta = std::max(10.0 * budget.tol, spread_delta);
  out.upper = best * (1.0 + out.delta);
  out.certified = false;
  return out;
}

}  // namespace banachgeo
