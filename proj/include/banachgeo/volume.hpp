#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "banachgeo/linop.hpp"
#include "banachgeo/space.hpp"

namespace banachgeo {

enum class VolumeMethod { Exact, RadialMc, HitOrMiss, ZonotopeExact };
std::string to_string(VolumeMethod m);

struct VolumeEstimate {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::Exact;
  long long samples = 0;
  uint64_t seed = 0;
  double stderr_ = 0.0;  // 0 for exact values
  bool degenerate = false;

  double rel_stderr() const { return value > 0.0 ? stderr_ / value : 0.0; }
  // stderr/value < 5% is required before an estimate may decide a verdict.
  bool usable_for_verdict() const { return degenerate || rel_stderr() < 0.05; }
  VolumeEstimate scaled(double factor) const;
};

struct McOptions {
  int threads = 0;
  long long chunk_size = 1LL << 16;
};

// |B_{l_p^n}| = 2^n Gamma(1+1/p)^n / Gamma(1+n/p); 2^n for p = inf.
VolumeEstimate lp_ball_volume_exact(int n, Exponent p);
double lp_ball_log_volume(int n, Exponent p);

// Closed-form ball volume where the family admits one: lp / weighted lp, and
// sums over l1- or linf-type outers (recursively). Generic sum outers have no
// closed form here and return nullopt.
std::optional<double> exact_log_volume(const Space& space);
std::optional<VolumeEstimate> exact_volume(const Space& space);

// |B_X| = |B_2^n| * mean ||u||_X^{-n} over uniform sphere directions.
// Deterministic given seed; requires dim <= 12 and samples >= 1e4.
VolumeEstimate radial_volume(const Space& space, long long samples, uint64_t seed,
                             const McOptions& opts = {});

// Rejection estimate inside the coordinate bounding box of the ball.
VolumeEstimate hit_or_miss_volume(const Space& space, long long samples, uint64_t seed,
                                  const McOptions& opts = {});
// Same for the image T(B_domain) of a square invertible T.
VolumeEstimate hit_or_miss_image_volume(const LinOperator& T, long long samples, uint64_t seed,
                                        const McOptions& opts = {});

// |T(B)| = |det T| * |B| for square T; det 0 flags the estimate degenerate.
VolumeEstimate image_volume(const LinOperator& T, const VolumeEstimate& base);

// |T(B_{linf^N})| = 2^n * sum over n-column subsets |det T_S|, exact.
VolumeEstimate zonotope_volume(const Eigen::MatrixXd& columns);

// Shared-seed ratio check of |B_X|/|B_Y| against the product of block ratios.
struct Lemma21Report {
  int n = 0;
  double mc_ratio = 0.0;
  double mc_sigma = 0.0;         // stderr of the ratio (covariance-aware)
  double block_product = 0.0;    // prod |B_{X_k}| / |B_{Y_k}|
  double block_sigma = 0.0;      // nonzero when a block needed MC
  double z_score = 0.0;
  double rel_discrepancy = 0.0;
  bool pass = false;
  long long samples = 0;
  uint64_t seed = 0;
};
Lemma21Report verify_lemma_2_1(const Space& E, const std::vector<Space>& x_parts,
                               const std::vector<Space>& y_parts, long long samples, uint64_t seed,
                               const McOptions& opts = {});

// n * (|B_X| |B_{X*}|)^(1/n); exact when both volumes have closed forms.
struct SantaloResult {
  double value = 0.0;
  bool exact = false;
  double rel_sigma = 0.0;
};
SantaloResult santalo_product(const Space& space, long long samples, uint64_t seed,
                              const McOptions& opts = {});

}  // namespace banachgeo
