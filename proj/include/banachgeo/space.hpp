#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "banachgeo/errors.hpp"
#include "banachgeo/exponent.hpp"

namespace banachgeo {

// A finite-dimensional 1-unconditional normed space: lp, weighted lp, or an
// unconditional direct sum (the outer norm applied to the vector of block
// norms). Immutable after construction; copies share the node.
class Space {
public:
  enum class Family { Lp, WeightedLp, Sum };

  static Space lp(Exponent p, int dim);
  static Space weighted_lp(Exponent p, Eigen::VectorXd weights);
  // The outer space must have unit basis vectors; weighted outers are
  // renormalized and the scale factors are folded into the parts, which
  // leaves the sum norm unchanged.
  static Space sum(const Space& outer, std::vector<Space> parts);

  Family family() const;
  int dim() const;
  Exponent p() const;                      // Lp / WeightedLp only
  const Eigen::VectorXd& weights() const;  // WeightedLp only
  Space outer() const;                     // Sum only
  const std::vector<Space>& parts() const; // Sum only
  const std::string& label() const;

  double norm(const Eigen::VectorXd& x) const;
  double dual_norm(const Eigen::VectorXd& f) const;
  Space dual() const;

  // A subgradient of the norm at x (the gradient wherever the norm is smooth).
  Eigen::VectorXd norm_subgradient(const Eigen::VectorXd& x) const;

  // The same space with its norm multiplied by c > 0.
  Space scaled(double c) const;

  Eigen::VectorXd basis_norms() const;
  bool is_normalized(double tol = 1e-12) const;

  bool has_infinite_piece() const;

  // Start offset of each block of a Sum (size m + 1, last entry = dim).
  std::vector<int> block_offsets() const;

  // True when the norm is an inner-product norm ||diag(d) x||_2; d returned
  // by euclidean_scaling.
  bool is_euclidean() const;
  Eigen::VectorXd euclidean_scaling() const;

  std::string to_string() const;

private:
  struct Node;
  explicit Space(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Visits every extreme point of the unit ball when the family admits a finite
// list (l1-type: +-e_i/w_i; linf-type: sign vectors; sums thereof). Returns
// false without visiting anything if the count would exceed cap or the family
// has no finite list (e.g. any Euclidean piece).
bool for_each_ball_extreme_point(const Space& space,
                                 const std::function<void(const Eigen::VectorXd&)>& fn,
                                 long long cap = (1LL << 20));

// Number of extreme points the visitor would produce; -1 if not enumerable,
// cap + 1 if above cap.
long long ball_extreme_point_count(const Space& space, long long cap = (1LL << 20));

}  // namespace banachgeo
