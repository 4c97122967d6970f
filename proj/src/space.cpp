#include "banachgeo/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace banachgeo {

namespace {

bool all_finite(const Eigen::VectorXd& x) { return x.allFinite(); }

double lp_norm(const Eigen::VectorXd& x, const Exponent& p) {
  if (p.is_infinite()) return x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  const double pv = p.value();
  if (pv == 1.0) return x.cwiseAbs().sum();
  if (pv == 2.0) return x.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), pv);
  return std::pow(s, 1.0 / pv);
}

double weighted_lp_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& w, const Exponent& p) {
  if (p.is_infinite()) return x.size() ? (w.array() * x.cwiseAbs().array()).maxCoeff() : 0.0;
  const double pv = p.value();
  if (pv == 1.0) return (w.array() * x.cwiseAbs().array()).sum();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += w[i] * std::pow(std::abs(x[i]), pv);
  return std::pow(s, 1.0 / pv);
}

}  // namespace

struct Space::Node {
  Family fam = Family::Lp;
  int dim = 0;
  Exponent p = Exponent::two();
  Eigen::VectorXd weights;       // WeightedLp
  std::vector<Space> parts;      // Sum
  std::shared_ptr<const Node> outer;  // Sum
  std::string label;
};

Space Space::lp(Exponent p, int dim) {
  if (dim < 1) throw DimensionError("space dimension must be >= 1");
  auto n = std::make_shared<Node>();
  n->fam = Family::Lp;
  n->dim = dim;
  n->p = p;
  n->label = "l_" + p.str() + "^" + std::to_string(dim);
  return Space(std::move(n));
}

Space Space::weighted_lp(Exponent p, Eigen::VectorXd weights) {
  if (weights.size() < 1) throw DimensionError("space dimension must be >= 1");
  if (!(weights.array() > 0.0).all() || !all_finite(weights)) {
    throw ConfigError("weighted lp weights must be positive and finite");
  }
  auto n = std::make_shared<Node>();
  n->fam = Family::WeightedLp;
  n->dim = static_cast<int>(weights.size());
  n->p = p;
  n->weights = std::move(weights);
  n->label = "wl_" + p.str() + "^" + std::to_string(n->dim);
  return Space(std::move(n));
}

Space Space::sum(const Space& outer, std::vector<Space> parts) {
  const int m = outer.dim();
  if (static_cast<int>(parts.size()) != m) {
    throw DimensionError("sum outer dimension " + std::to_string(m) + " != number of parts " +
                         std::to_string(parts.size()));
  }

  Space normalized_outer = outer;
  const Eigen::VectorXd b = outer.basis_norms();
  if ((b.array() - 1.0).abs().maxCoeff() > 1e-12) {
    // Renormalize the outer basis and fold the scales into the parts; the
    // resulting sum norm is identical.
    switch (outer.family()) {
      case Family::Lp:
        break;  // already normalized
      case Family::WeightedLp:
        normalized_outer = Space::lp(outer.p(), m);
        break;
      case Family::Sum:
        throw ConfigError("sum outer of family 'sum' must already have unit basis vectors");
    }
    for (int k = 0; k < m; ++k) parts[k] = parts[k].scaled(b[k]);
  }

  auto n = std::make_shared<Node>();
  n->fam = Family::Sum;
  n->p = normalized_outer.p();
  n->outer = normalized_outer.node_;
  n->dim = 0;
  std::ostringstream lbl;
  lbl << "sum_{" << normalized_outer.label() << "}(";
  for (size_t k = 0; k < parts.size(); ++k) {
    n->dim += parts[k].dim();
    lbl << (k ? "," : "") << parts[k].label();
  }
  lbl << ")";
  n->parts = std::move(parts);
  n->label = lbl.str();
  return Space(std::move(n));
}

Space::Family Space::family() const { return node_->fam; }
int Space::dim() const { return node_->dim; }

Exponent Space::p() const {
  if (node_->fam == Family::Sum) throw ConfigError("p() is undefined for sum spaces");
  return node_->p;
}

const Eigen::VectorXd& Space::weights() const {
  if (node_->fam != Family::WeightedLp) throw ConfigError("weights() requires a weighted lp space");
  return node_->weights;
}

Space Space::outer() const {
  if (node_->fam != Family::Sum) throw ConfigError("outer() requires a sum space");
  return Space(node_->outer);
}

const std::vector<Space>& Space::parts() const {
  if (node_->fam != Family::Sum) throw ConfigError("parts() requires a sum space");
  return node_->parts;
}

const std::string& Space::label() const { return node_->label; }

double Space::norm(const Eigen::VectorXd& x) const {
  if (x.size() != node_->dim) {
    throw DimensionError("norm: vector length " + std::to_string(x.size()) +
                         " != space dimension " + std::to_string(node_->dim));
  }
  if (!all_finite(x)) throw Error("norm: vector has non-finite entries");
  switch (node_->fam) {
    case Family::Lp:
      return lp_norm(x, node_->p);
    case Family::WeightedLp:
      return weighted_lp_norm(x, node_->weights, node_->p);
    case Family::Sum: {
      const auto off = block_offsets();
      Eigen::VectorXd block(static_cast<Eigen::Index>(node_->parts.size()));
      for (size_t k = 0; k < node_->parts.size(); ++k) {
        block[static_cast<Eigen::Index>(k)] =
            node_->parts[k].norm(x.segment(off[k], node_->parts[k].dim()));
      }
      return Space(node_->outer).norm(block);
    }
  }
  return 0.0;
}

Space Space::dual() const {
  switch (node_->fam) {
    case Family::Lp:
      return lp(node_->p.conjugate(), node_->dim);
    case Family::WeightedLp: {
      const Exponent q = node_->p.conjugate();
      Eigen::VectorXd v(node_->dim);
      if (node_->p.is_one() || node_->p.is_infinite()) {
        v = node_->weights.cwiseInverse();
      } else {
        // dual of (sum w|x|^p)^(1/p) is (sum w^(1-p') |f|^p')^(1/p')
        const double e = 1.0 - q.value();
        for (int i = 0; i < node_->dim; ++i) v[i] = std::pow(node_->weights[i], e);
      }
      return weighted_lp(q, std::move(v));
    }
    case Family::Sum: {
      std::vector<Space> dual_parts;
      dual_parts.reserve(node_->parts.size());
      for (const auto& part : node_->parts) dual_parts.push_back(part.dual());
      return sum(Space(node_->outer).dual(), std::move(dual_parts));
    }
  }
  throw Error("unreachable");
}

double Space::dual_norm(const Eigen::VectorXd& f) const { return dual().norm(f); }

Eigen::VectorXd Space::norm_subgradient(const Eigen::VectorXd& x) const {
  if (x.size() != node_->dim) throw DimensionError("norm_subgradient: dimension mismatch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(node_->dim);
  switch (node_->fam) {
    case Family::Lp:
    case Family::WeightedLp: {
      const bool weighted = node_->fam == Family::WeightedLp;
      const Exponent& p = node_->p;
      if (p.is_infinite()) {
        int arg = -1;
        double best = 0.0;
        for (int i = 0; i < node_->dim; ++i) {
          const double v = (weighted ? node_->weights[i] : 1.0) * std::abs(x[i]);
          if (v > best) {
            best = v;
            arg = i;
          }
        }
        if (arg >= 0) g[arg] = (weighted ? node_->weights[arg] : 1.0) * (x[arg] >= 0 ? 1.0 : -1.0);
        return g;
      }
      const double pv = p.value();
      if (pv == 1.0) {
        for (int i = 0; i < node_->dim; ++i) {
          if (x[i] != 0.0) g[i] = (weighted ? node_->weights[i] : 1.0) * (x[i] > 0 ? 1.0 : -1.0);
        }
        return g;
      }
      const double nx = norm(x);
      if (nx == 0.0) return g;
      for (int i = 0; i < node_->dim; ++i) {
        if (x[i] == 0.0) continue;
        g[i] = (weighted ? node_->weights[i] : 1.0) * std::pow(std::abs(x[i]), pv - 1.0) *
               (x[i] > 0 ? 1.0 : -1.0) / std::pow(nx, pv - 1.0);
      }
      return g;
    }
    case Family::Sum: {
      const auto off = block_offsets();
      const size_t m = node_->parts.size();
      Eigen::VectorXd block(static_cast<Eigen::Index>(m));
      for (size_t k = 0; k < m; ++k) {
        block[static_cast<Eigen::Index>(k)] =
            node_->parts[k].norm(x.segment(off[k], node_->parts[k].dim()));
      }
      const Eigen::VectorXd og = Space(node_->outer).norm_subgradient(block);
      for (size_t k = 0; k < m; ++k) {
        if (og[static_cast<Eigen::Index>(k)] == 0.0) continue;
        g.segment(off[k], node_->parts[k].dim()) =
            og[static_cast<Eigen::Index>(k)] *
            node_->parts[k].norm_subgradient(x.segment(off[k], node_->parts[k].dim()));
      }
      return g;
    }
  }
  return g;
}

Space Space::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("scale factor must be positive and finite");
  if (c == 1.0) return *this;
  switch (node_->fam) {
    case Family::Lp: {
      Eigen::VectorXd w(node_->dim);
      w.setConstant(node_->p.is_infinite() ? c : std::pow(c, node_->p.value()));
      return weighted_lp(node_->p, std::move(w));
    }
    case Family::WeightedLp: {
      const double f = node_->p.is_infinite() ? c : std::pow(c, node_->p.value());
      return weighted_lp(node_->p, (node_->weights * f).eval());
    }
    case Family::Sum: {
      // c * outer(block norms) = outer(c * block norms) by homogeneity.
      std::vector<Space> scaled_parts;
      scaled_parts.reserve(node_->parts.size());
      for (const auto& part : node_->parts) scaled_parts.push_back(part.scaled(c));
      return sum(Space(node_->outer), std::move(scaled_parts));
    }
  }
  throw Error("unreachable");
}

Eigen::VectorXd Space::basis_norms() const {
  Eigen::VectorXd b(node_->dim);
  switch (node_->fam) {
    case Family::Lp:
      b.setOnes();
      return b;
    case Family::WeightedLp:
      if (node_->p.is_infinite()) return node_->weights;
      for (int i = 0; i < node_->dim; ++i) b[i] = std::pow(node_->weights[i], 1.0 / node_->p.value());
      return b;
    case Family::Sum: {
      const auto off = block_offsets();
      for (size_t k = 0; k < node_->parts.size(); ++k) {
        // outer is normalized, so block basis norms pass through.
        b.segment(off[k], node_->parts[k].dim()) = node_->parts[k].basis_norms();
      }
      return b;
    }
  }
  return b;
}

bool Space::is_normalized(double tol) const {
  return (basis_norms().array() - 1.0).abs().maxCoeff() <= tol;
}

bool Space::has_infinite_piece() const {
  switch (node_->fam) {
    case Family::Lp:
    case Family::WeightedLp:
      return node_->p.is_infinite();
    case Family::Sum: {
      if (Space(node_->outer).has_infinite_piece()) return true;
      for (const auto& part : node_->parts) {
        if (part.has_infinite_piece()) return true;
      }
      return false;
    }
  }
  return false;
}

std::vector<int> Space::block_offsets() const {
  if (node_->fam != Family::Sum) throw ConfigError("block_offsets() requires a sum space");
  std::vector<int> off(node_->parts.size() + 1, 0);
  for (size_t k = 0; k < node_->parts.size(); ++k) off[k + 1] = off[k] + node_->parts[k].dim();
  return off;
}

bool Space::is_euclidean() const {
  switch (node_->fam) {
    case Family::Lp:
    case Family::WeightedLp:
      return node_->p == Exponent::two();
    case Family::Sum: {
      if (!(Space(node_->outer).is_euclidean())) return false;
      for (const auto& part : node_->parts) {
        if (!part.is_euclidean()) return false;
      }
      return true;
    }
  }
  return false;
}

Eigen::VectorXd Space::euclidean_scaling() const {
  if (!is_euclidean()) throw ConfigError("euclidean_scaling() requires an inner-product norm");
  Eigen::VectorXd d(node_->dim);
  switch (node_->fam) {
    case Family::Lp:
      d.setOnes();
      return d;
    case Family::WeightedLp:
      return node_->weights.cwiseSqrt();
    case Family::Sum: {
      const auto off = block_offsets();
      const Eigen::VectorXd os = Space(node_->outer).euclidean_scaling();
      for (size_t k = 0; k < node_->parts.size(); ++k) {
        d.segment(off[k], node_->parts[k].dim()) =
            os[static_cast<Eigen::Index>(k)] * node_->parts[k].euclidean_scaling();
      }
      return d;
    }
  }
  return d;
}

std::string Space::to_string() const { return node_->label; }

namespace {

long long extreme_count(const Space& s, long long cap) {
  const auto fam = s.family();
  if (fam == Space::Family::Lp || fam == Space::Family::WeightedLp) {
    if (s.p().is_one()) return 2LL * s.dim();
    if (s.p().is_infinite()) {
      if (s.dim() > 62) return cap + 1;
      const long long c = 1LL << s.dim();
      return c > cap ? cap + 1 : c;
    }
    return -1;
  }
  // Sum: l1-type outer -> union of embedded block extremes; linf-type outer ->
  // cartesian product of block extremes.
  const Space outer = s.outer();
  if (outer.family() == Space::Family::Sum) return -1;
  long long total = outer.p().is_one() ? 0 : 1;
  for (const auto& part : s.parts()) {
    const long long c = extreme_count(part, cap);
    if (c < 0) return -1;
    if (outer.p().is_one()) {
      total += c;
    } else if (outer.p().is_infinite()) {
      if (c > cap / std::max(1LL, total)) return cap + 1;
      total *= c;
    } else {
      return -1;
    }
    if (total > cap) return cap + 1;
  }
  return total;
}

// Visit extremes of s, scaled by `scale`, written into out[offset..).
void visit_extremes(const Space& s, double scale, Eigen::VectorXd& out, int offset,
                    const std::function<void()>& emit) {
  const auto fam = s.family();
  const int d = s.dim();
  if (fam == Space::Family::Lp || fam == Space::Family::WeightedLp) {
    const bool weighted = fam == Space::Family::WeightedLp;
    if (s.p().is_one()) {
      out.segment(offset, d).setZero();
      for (int i = 0; i < d; ++i) {
        const double v = scale / (weighted ? s.weights()[i] : 1.0);
        for (const double sgn : {1.0, -1.0}) {
          out[offset + i] = sgn * v;
          emit();
        }
        out[offset + i] = 0.0;
      }
      return;
    }
    // linf-type: all sign patterns.
    for (long long mask = 0; mask < (1LL << d); ++mask) {
      for (int i = 0; i < d; ++i) {
        const double v = scale / (weighted ? s.weights()[i] : 1.0);
        out[offset + i] = (mask >> i) & 1 ? v : -v;
      }
      emit();
    }
    return;
  }

  const Space outer = s.outer();
  const auto off = s.block_offsets();
  const auto& parts = s.parts();
  if (outer.p().is_one()) {
    out.segment(offset, d).setZero();
    for (size_t k = 0; k < parts.size(); ++k) {
      const double w =
          outer.family() == Space::Family::WeightedLp ? outer.weights()[static_cast<int>(k)] : 1.0;
      visit_extremes(parts[k], scale / w, out, offset + off[k], emit);
      out.segment(offset + off[k], parts[k].dim()).setZero();
    }
    return;
  }
  // linf-type outer: cartesian product over blocks.
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == parts.size()) {
      emit();
      return;
    }
    const double w =
        outer.family() == Space::Family::WeightedLp ? outer.weights()[static_cast<int>(k)] : 1.0;
    visit_extremes(parts[k], scale / w, out, offset + off[k], [&] { rec(k + 1); });
  };
  rec(0);
}

}  // namespace

long long ball_extreme_point_count(const Space& space, long long cap) {
  return extreme_count(space, cap);
}

bool for_each_ball_extreme_point(const Space& space,
                                 const std::function<void(const Eigen::VectorXd&)>& fn,
                                 long long cap) {
  const long long c = extreme_count(space, cap);
  if (c < 0 || c > cap) return false;
  Eigen::VectorXd buf = Eigen::VectorXd::Zero(space.dim());
  visit_extremes(space, 1.0, buf, 0, [&] { fn(buf); });
  return true;
}

}  // namespace banachgeo
