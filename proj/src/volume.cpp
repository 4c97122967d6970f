#include "banachgeo/volume.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "banachgeo/parallel.hpp"
#include "banachgeo/rng.hpp"

namespace banachgeo {

std::string to_string(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::Exact: return "exact";
    case VolumeMethod::RadialMc: return "radial_mc";
    case VolumeMethod::HitOrMiss: return "hit_or_miss";
    case VolumeMethod::ZonotopeExact: return "zonotope_exact";
  }
  return "?";
}

VolumeEstimate VolumeEstimate::scaled(double factor) const {
  VolumeEstimate out = *this;
  out.value *= factor;
  out.stderr_ *= factor;
  return out;
}

double lp_ball_log_volume(int n, Exponent p) {
  if (n < 1) throw DimensionError("ball dimension must be >= 1");
  const double log2v = 0.6931471805599453094;
  if (p.is_infinite()) return n * log2v;
  const double pv = p.value();
  return n * log2v + n * std::lgamma(1.0 + 1.0 / pv) - std::lgamma(1.0 + n / pv);
}

VolumeEstimate lp_ball_volume_exact(int n, Exponent p) {
  return {std::exp(lp_ball_log_volume(n, p)), VolumeMethod::Exact, 0, 0, 0.0, false};
}

std::optional<double> exact_log_volume(const Space& space) {
  switch (space.family()) {
    case Space::Family::Lp:
      return lp_ball_log_volume(space.dim(), space.p());
    case Space::Family::WeightedLp: {
      // diagonal image of the plain lp ball
      double lv = lp_ball_log_volume(space.dim(), space.p());
      const Exponent p = space.p();
      for (int i = 0; i < space.dim(); ++i) {
        lv -= p.is_infinite() ? std::log(space.weights()[i])
                              : std::log(space.weights()[i]) / p.value();
      }
      return lv;
    }
    case Space::Family::Sum: {
      const auto& parts = space.parts();
      std::vector<double> block_logs;
      block_logs.reserve(parts.size());
      for (const auto& part : parts) {
        const auto lv = exact_log_volume(part);
        if (!lv) return std::nullopt;
        block_logs.push_back(*lv);
      }
      if (parts.size() == 1) return block_logs[0];  // same ball as the single part
      const Space outer = space.outer();
      if (outer.family() == Space::Family::Sum) return std::nullopt;
      const Exponent op = outer.p();
      double total = 0.0;
      for (const double lv : block_logs) total += lv;
      if (op.is_infinite()) return total;  // box of blocks
      if (op.is_one()) {
        // |B| = prod |B_k| * prod n_k! / n!   (Dirichlet integral over the simplex)
        int n = 0;
        for (const auto& part : parts) {
          total += std::lgamma(part.dim() + 1.0);
          n += part.dim();
        }
        total -= std::lgamma(n + 1.0);
        return total;
      }
      return std::nullopt;  // generic outers: estimate instead
    }
  }
  return std::nullopt;
}

std::optional<VolumeEstimate> exact_volume(const Space& space) {
  const auto lv = exact_log_volume(space);
  if (!lv) return std::nullopt;
  return VolumeEstimate{std::exp(*lv), VolumeMethod::Exact, 0, 0, 0.0, false};
}

namespace {

struct MomentSums {
  double s1 = 0.0, s2 = 0.0;
};

// mean and stderr of v_i over `samples` draws, chunk sums in fixed order
void mean_stderr(const std::vector<MomentSums>& chunks, long long samples, double& mean,
                 double& se) {
  double s1 = 0.0, s2 = 0.0;
  for (const auto& c : chunks) {
    s1 += c.s1;
    s2 += c.s2;
  }
  mean = s1 / static_cast<double>(samples);
  const double var =
      std::max(0.0, (s2 - static_cast<double>(samples) * mean * mean) / std::max(1.0, samples - 1.0));
  se = std::sqrt(var / static_cast<double>(samples));
}

void check_radial_pre(const Space& space, long long samples) {
  if (space.dim() > 12) {
    throw ConfigError("radial volume is capped at dimension 12 (variance guard); use the exact "
                      "formula or hit-or-miss for " +
                      space.to_string());
  }
  if (samples < 10000) throw ConfigError("radial volume requires at least 1e4 samples");
}

}  // namespace

VolumeEstimate radial_volume(const Space& space, long long samples, uint64_t seed,
                             const McOptions& opts) {
  check_radial_pre(space, samples);
  const int n = space.dim();
  const int n_chunks = static_cast<int>((samples + opts.chunk_size - 1) / opts.chunk_size);
  std::vector<MomentSums> chunks(static_cast<size_t>(n_chunks));
  for_each_chunk(samples, opts.chunk_size, opts.threads, [&](int c, long long b, long long e) {
    Eigen::VectorXd u(n);
    MomentSums acc;
    for (long long i = b; i < e; ++i) {
      rng::sphere_direction_fill(seed, static_cast<uint64_t>(i), u);
      const double v = std::pow(space.norm(u), -static_cast<double>(n));
      acc.s1 += v;
      acc.s2 += v * v;
    }
    chunks[static_cast<size_t>(c)] = acc;
  });
  double mean, se;
  mean_stderr(chunks, samples, mean, se);
  const double ball2 = std::exp(lp_ball_log_volume(n, Exponent::two()));
  return {ball2 * mean, VolumeMethod::RadialMc, samples, seed, ball2 * se, false};
}

namespace {

VolumeEstimate hit_or_miss_impl(int n, const Eigen::VectorXd& box_radii,
                                const std::function<bool(const Eigen::VectorXd&)>& inside,
                                long long samples, uint64_t seed, const McOptions& opts) {
  if (samples < 1000) throw ConfigError("hit-or-miss requires at least 1e3 samples");
  double log_box = 0.0;
  for (int i = 0; i < n; ++i) log_box += std::log(2.0 * box_radii[i]);
  const double box_vol = std::exp(log_box);

  const int n_chunks = static_cast<int>((samples + opts.chunk_size - 1) / opts.chunk_size);
  std::vector<long long> hits(static_cast<size_t>(n_chunks), 0);
  for_each_chunk(samples, opts.chunk_size, opts.threads, [&](int c, long long b, long long e) {
    Eigen::VectorXd x(n);
    long long h = 0;
    for (long long i = b; i < e; ++i) {
      for (int j = 0; j < n; ++j) {
        x[j] = (2.0 * rng::uniform01(seed, static_cast<uint64_t>(i), static_cast<uint64_t>(j)) -
                1.0) *
               box_radii[j];
      }
      if (inside(x)) ++h;
    }
    hits[static_cast<size_t>(c)] = h;
  });
  long long total_hits = 0;
  for (const long long h : hits) total_hits += h;
  const double frac = static_cast<double>(total_hits) / static_cast<double>(samples);
  const double se = box_vol * std::sqrt(std::max(0.0, frac * (1.0 - frac) /
                                                          static_cast<double>(samples)));
  return {box_vol * frac, VolumeMethod::HitOrMiss, samples, seed, se, false};
}

}  // namespace

VolumeEstimate hit_or_miss_volume(const Space& space, long long samples, uint64_t seed,
                                  const McOptions& opts) {
  const int n = space.dim();
  const Space dual = space.dual();
  Eigen::VectorXd radii(n);
  for (int i = 0; i < n; ++i) radii[i] = dual.norm(Eigen::VectorXd::Unit(n, i));
  return hit_or_miss_impl(
      n, radii, [&](const Eigen::VectorXd& x) { return space.norm(x) <= 1.0; }, samples, seed,
      opts);
}

VolumeEstimate hit_or_miss_image_volume(const LinOperator& T, long long samples, uint64_t seed,
                                        const McOptions& opts) {
  if (!T.square()) throw DimensionError("hit-or-miss image volume requires a square operator");
  const int n = T.rows();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(T.matrix);
  if (!lu.isInvertible()) {
    return {0.0, VolumeMethod::HitOrMiss, 0, seed, 0.0, true};
  }
  const Eigen::MatrixXd inv = lu.inverse();
  const Space dual = T.domain.dual();
  Eigen::VectorXd radii(n);
  for (int i = 0; i < n; ++i) radii[i] = dual.norm(T.matrix.row(i).transpose());
  return hit_or_miss_impl(
      n, radii, [&](const Eigen::VectorXd& x) { return T.domain.norm(inv * x) <= 1.0; }, samples,
      seed, opts);
}

VolumeEstimate image_volume(const LinOperator& T, const VolumeEstimate& base) {
  if (!T.square()) throw DimensionError("image volume requires a square operator");
  const double d = std::abs(T.determinant());
  VolumeEstimate out = base.scaled(d);
  if (d == 0.0) out.degenerate = true;
  return out;
}

VolumeEstimate zonotope_volume(const Eigen::MatrixXd& columns) {
  const int n = static_cast<int>(columns.rows());
  const int N = static_cast<int>(columns.cols());
  if (N < n) throw DimensionError("zonotope needs at least as many columns as rows");
  // subset count guard: C(N, n) <= 1e6
  double log_count = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
  if (log_count > std::log(1e6)) {
    throw ConfigError("zonotope volume: choose(" + std::to_string(N) + "," + std::to_string(n) +
                      ") exceeds the 1e6 subset cap");
  }

  double sum = 0.0;
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  Eigen::MatrixXd sub(n, n);
  while (true) {
    for (int i = 0; i < n; ++i) sub.col(i) = columns.col(idx[static_cast<size_t>(i)]);
    sum += std::abs(sub.determinant());
    // next combination
    int k = n - 1;
    while (k >= 0 && idx[static_cast<size_t>(k)] == N - n + k) --k;
    if (k < 0) break;
    ++idx[static_cast<size_t>(k)];
    for (int j = k + 1; j < n; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  const double value = std::pow(2.0, n) * sum;
  VolumeEstimate out{value, VolumeMethod::ZonotopeExact, 0, 0, 0.0, false};
  if (value == 0.0) out.degenerate = true;
  return out;
}

Lemma21Report verify_lemma_2_1(const Space& E, const std::vector<Space>& x_parts,
                               const std::vector<Space>& y_parts, long long samples, uint64_t seed,
                               const McOptions& opts) {
  if (x_parts.size() != y_parts.size()) {
    throw DimensionError("lemma 2.1 check needs matching part lists");
  }
  for (size_t k = 0; k < x_parts.size(); ++k) {
    if (x_parts[k].dim() != y_parts[k].dim()) {
      throw DimensionError("lemma 2.1 check: block " + std::to_string(k) + " dimensions differ");
    }
  }
  const Space X = Space::sum(E, x_parts);
  const Space Y = Space::sum(E, y_parts);
  check_radial_pre(X, samples);

  const int n = X.dim();
  struct PairSums {
    double a = 0, a2 = 0, b = 0, b2 = 0, ab = 0;
  };
  const int n_chunks = static_cast<int>((samples + opts.chunk_size - 1) / opts.chunk_size);
  std::vector<PairSums> chunks(static_cast<size_t>(n_chunks));
  for_each_chunk(samples, opts.chunk_size, opts.threads, [&](int c, long long b, long long e) {
    Eigen::VectorXd u(n);
    PairSums acc;
    for (long long i = b; i < e; ++i) {
      rng::sphere_direction_fill(seed, static_cast<uint64_t>(i), u);
      const double va = std::pow(X.norm(u), -static_cast<double>(n));
      const double vb = std::pow(Y.norm(u), -static_cast<double>(n));
      acc.a += va;
      acc.a2 += va * va;
      acc.b += vb;
      acc.b2 += vb * vb;
      acc.ab += va * vb;
    }
    chunks[static_cast<size_t>(c)] = acc;
  });
  PairSums t;
  for (const auto& c : chunks) {
    t.a += c.a;
    t.a2 += c.a2;
    t.b += c.b;
    t.b2 += c.b2;
    t.ab += c.ab;
  }
  const double S = static_cast<double>(samples);
  const double ma = t.a / S, mb = t.b / S;
  const double va = std::max(0.0, (t.a2 - S * ma * ma) / (S - 1.0));
  const double vb = std::max(0.0, (t.b2 - S * mb * mb) / (S - 1.0));
  const double cab = (t.ab - S * ma * mb) / (S - 1.0);
  const double ratio = ma / mb;
  // delta method with the shared-stream covariance term
  const double rel_var =
      std::max(0.0, va / (ma * ma) + vb / (mb * mb) - 2.0 * cab / (ma * mb)) / S;
  const double sigma_ratio = ratio * std::sqrt(rel_var);

  double product = 1.0;
  double block_rel_var = 0.0;
  for (size_t k = 0; k < x_parts.size(); ++k) {
    for (int side = 0; side < 2; ++side) {
      const Space& part = side == 0 ? x_parts[k] : y_parts[k];
      VolumeEstimate v;
      if (auto ex = exact_volume(part)) {
        v = *ex;
      } else {
        v = radial_volume(part, std::max<long long>(samples, 10000),
                          rng::derive(seed, 101 + 2 * k + side), opts);
        block_rel_var += v.rel_stderr() * v.rel_stderr();
      }
      product *= side == 0 ? v.value : 1.0 / v.value;
    }
  }

  Lemma21Report rep;
  rep.n = n;
  rep.mc_ratio = ratio;
  rep.mc_sigma = sigma_ratio;
  rep.block_product = product;
  rep.block_sigma = product * std::sqrt(block_rel_var);
  const double combined = std::sqrt(sigma_ratio * sigma_ratio + rep.block_sigma * rep.block_sigma);
  rep.z_score = combined > 0.0 ? std::abs(ratio - product) / combined : 0.0;
  rep.rel_discrepancy = std::abs(ratio - product) / product;
  rep.pass = rep.z_score <= 3.0;
  rep.samples = samples;
  rep.seed = seed;
  return rep;
}

SantaloResult santalo_product(const Space& space, long long samples, uint64_t seed,
                              const McOptions& opts) {
  const int n = space.dim();
  const Space dual = space.dual();
  SantaloResult out;
  const auto lv = exact_log_volume(space);
  const auto lvd = exact_log_volume(dual);
  if (lv && lvd) {
    out.value = n * std::exp((*lv + *lvd) / n);
    out.exact = true;
    return out;
  }
  const VolumeEstimate a = lv ? *exact_volume(space)
                              : radial_volume(space, samples, rng::derive(seed, 1), opts);
  const VolumeEstimate b = lvd ? *exact_volume(dual)
                               : radial_volume(dual, samples, rng::derive(seed, 2), opts);
  out.value = n * std::exp((std::log(a.value) + std::log(b.value)) / n);
  out.exact = false;
  out.rel_sigma = std::sqrt(a.rel_stderr() * a.rel_stderr() + b.rel_stderr() * b.rel_stderr()) /
                  static_cast<double>(n);
  return out;
}

}  // namespace banachgeo
