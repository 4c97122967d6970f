#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "banachgeo/space.hpp"

namespace banachgeo {

// Real matrix between two normed spaces, fixed coordinate bases throughout.
struct LinOperator {
  Space domain;
  Space codomain;
  Eigen::MatrixXd matrix;  // codomain.dim() x domain.dim()

  LinOperator(Space dom, Space cod, Eigen::MatrixXd m);

  int rows() const { return static_cast<int>(matrix.rows()); }
  int cols() const { return static_cast<int>(matrix.cols()); }
  bool square() const { return matrix.rows() == matrix.cols(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  // Defined only for square operators; det of the identity is 1.
  double determinant() const;
  // log|det| with separate sign; sign 0 means singular to working precision.
  double log_abs_det(int* sign = nullptr) const;

  // T*: codomain.dual() -> domain.dual(), matrix transposed.
  LinOperator adjoint() const;
};

// Assembles (+) alpha_k T_k between the sum spaces built from the block
// domains/codomains; off-block entries are exactly zero.
LinOperator block_diagonal(const std::vector<LinOperator>& blocks,
                           const std::vector<double>& scalars, const Space& outer_domain,
                           const Space& outer_codomain);
// Same outer space on both sides.
LinOperator block_diagonal(const std::vector<LinOperator>& blocks,
                           const std::vector<double>& scalars, const Space& outer);

struct OptBudget {
  int multistarts = 16;
  int iters = 300;
  uint64_t seed = 1001;
  double tol = 1e-9;
  long long enumeration_cap = 1LL << 20;
};

struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;  // lower == upper up to round-off
  bool converged = true;
  double delta = 0.0;  // heuristic inflation applied to lower
};

// Bracket on ||T||. Exact (certified) when the domain ball has enumerable
// extreme points or both sides are inner-product norms; otherwise the lower
// bound comes from projected-gradient multistarts and the upper bound is
// lower * (1 + delta) with delta from convergence diagnostics.
NormBracket operator_norm(const LinOperator& T, const OptBudget& budget = {});

// Lower-bound search only; also reports the best unit vector found.
double operator_norm_lower(const LinOperator& T, const OptBudget& budget, Eigen::VectorXd* best_x);

}  // namespace banachgeo
