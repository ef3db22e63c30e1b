#include "textpart/sib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "textpart/error.hpp"
#include "textpart/parallel.hpp"
#include "textpart/random.hpp"

namespace textpart {

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error("distribution length mismatch");
  double s = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p[y] <= 0.0) continue;
    if (q[y] <= 0.0) {
      throw SupportError("KL divergence: q(y) = 0 where p(y) > 0 at y = " + std::to_string(y));
    }
    s += p[y] * std::log(p[y] / q[y]);
  }
  return s;
}

double js_divergence(std::span<const double> p, std::span<const double> q, double pi1,
                     double pi2) {
  if (pi1 < 0.0 || pi2 < 0.0 || std::abs(pi1 + pi2 - 1.0) > 1e-12) {
    throw Error("JS weights must be nonnegative and sum to 1");
  }
  if (p.size() != q.size()) throw Error("distribution length mismatch");
  std::vector<double> mix(p.size());
  for (std::size_t y = 0; y < p.size(); ++y) mix[y] = pi1 * p[y] + pi2 * q[y];
  double js = 0.0;
  if (pi1 > 0.0) js += pi1 * kl_divergence(p, mix);
  if (pi2 > 0.0) js += pi2 * kl_divergence(q, mix);
  return js;
}

double merge_cost(double px, std::span<const double> py_given_x, double pt,
                  std::span<const double> py_given_t) {
  if (pt <= 0.0) return 0.0;
  const double total = px + pt;
  return total * js_divergence(py_given_x, py_given_t, px / total, pt / total);
}

double merge_cost(double px, const RowView& py_given_x, double pt,
                  std::span<const double> cluster_mass) {
  if (pt <= 0.0) return 0.0;
  const double total = px + pt;
  const double pi1 = px / total;
  const double pi2 = pt / total;
  // Off the support of x the mixture is pi2 * q, so those terms of KL(q || m)
  // collapse to (remaining q mass) * log(1 / pi2).
  double kl_p = 0.0;
  double kl_q = 0.0;
  double q_on_support = 0.0;
  for (std::size_t k = 0; k < py_given_x.size(); ++k) {
    const double p = py_given_x.values[k];
    const double q = std::max(cluster_mass[py_given_x.indices[k]] / pt, 0.0);
    const double m = pi1 * p + pi2 * q;
    if (p > 0.0) kl_p += p * std::log(p / m);
    if (q > 0.0) {
      kl_q += q * std::log(q / m);
      q_on_support += q;
    }
  }
  kl_q -= std::max(1.0 - q_on_support, 0.0) * std::log(pi2);
  return px * kl_p + pt * kl_q;
}

namespace {

std::vector<double> marginal(const JointDistribution& joint) {
  std::vector<double> py(joint.n_terms(), 0.0);
  for (std::size_t x = 0; x < joint.n_docs(); ++x) {
    axpy(joint.px[x], joint.py_given_x.row(x), py);
  }
  return py;
}

double information(std::span<const double> pt, std::span<const double> mass,
                   std::span<const double> py) {
  const std::size_t n_terms = py.size();
  double info = 0.0;
  for (std::size_t t = 0; t < pt.size(); ++t) {
    if (pt[t] <= 0.0) continue;
    for (std::size_t y = 0; y < n_terms; ++y) {
      const double joint_ty = mass[t * n_terms + y];
      if (joint_ty > 0.0 && py[y] > 0.0) info += joint_ty * std::log(joint_ty / (pt[t] * py[y]));
    }
  }
  return info;
}

}  // namespace

double mutual_information(const JointDistribution& joint) {
  const auto py = marginal(joint);
  double info = 0.0;
  for (std::size_t x = 0; x < joint.n_docs(); ++x) {
    const auto r = joint.py_given_x.row(x);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r.values[k] > 0.0) {
        info += joint.px[x] * r.values[k] * std::log(r.values[k] / py[r.indices[k]]);
      }
    }
  }
  return info;
}

IBPartition ib_statistics(const JointDistribution& joint, const Partition& partition) {
  if (partition.assignment.size() != joint.n_docs()) {
    throw Error("partition does not cover the documents");
  }
  const std::size_t n_terms = joint.n_terms();
  std::vector<double> pt(partition.k, 0.0);
  std::vector<double> mass(partition.k * n_terms, 0.0);
  for (std::size_t x = 0; x < joint.n_docs(); ++x) {
    const auto t = partition.assignment[x];
    if (t >= partition.k) throw Error("cluster index out of range");
    pt[t] += joint.px[x];
    const auto r = joint.py_given_x.row(x);
    for (std::size_t k = 0; k < r.size(); ++k) {
      mass[t * n_terms + r.indices[k]] += joint.px[x] * r.values[k];
    }
  }
  IBPartition out;
  out.partition = partition;
  out.score = information(pt, mass, marginal(joint));
  out.py_given_t.assign(partition.k, std::vector<double>(n_terms, 0.0));
  for (std::size_t t = 0; t < partition.k; ++t) {
    if (pt[t] <= 0.0) continue;
    for (std::size_t y = 0; y < n_terms; ++y) out.py_given_t[t][y] = mass[t * n_terms + y] / pt[t];
  }
  out.pt = std::move(pt);
  return out;
}

double mutual_information(const Partition& partition, const JointDistribution& joint) {
  return ib_statistics(joint, partition).score;
}

SibState::SibState(const JointDistribution& joint, Partition initial)
    : joint_(&joint),
      k_(initial.k),
      n_terms_(joint.n_terms()),
      assignment_(std::move(initial.assignment)),
      sizes_(k_, 0),
      pt_(k_, 0.0),
      mass_(k_ * n_terms_, 0.0),
      py_(marginal(joint)) {
  if (k_ < 1) throw Error("K must be at least 1");
  if (assignment_.size() != joint.n_docs()) throw Error("partition does not cover the documents");
  for (std::size_t x = 0; x < assignment_.size(); ++x) {
    const auto t = assignment_[x];
    if (t >= k_) throw Error("cluster index out of range");
    ++sizes_[t];
    pt_[t] += joint.px[x];
    move_mass(x, t, 1.0);
  }
  if (std::find(sizes_.begin(), sizes_.end(), 0) != sizes_.end()) {
    throw Error("initial partition has an empty cluster");
  }
}

SibState SibState::random(const JointDistribution& joint, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = joint.n_docs();
  if (k < 1 || k > n) throw Error("K must be between 1 and the number of documents");
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  Partition p{k, HardAssignment(n)};
  for (auto& t : p.assignment) t = pick(rng);

  auto sizes = p.cluster_sizes();
  for (std::size_t t = 0; t < k; ++t) {
    if (sizes[t] != 0) continue;
    const auto donor = static_cast<std::size_t>(
        std::distance(sizes.begin(), std::max_element(sizes.begin(), sizes.end())));
    const auto x = static_cast<std::size_t>(std::distance(
        p.assignment.begin(), std::find(p.assignment.begin(), p.assignment.end(), donor)));
    p.assignment[x] = t;
    --sizes[donor];
    sizes[t] = 1;
  }
  return SibState(joint, std::move(p));
}

void SibState::move_mass(std::size_t x, std::size_t t, double sign) {
  const auto r = joint_->py_given_x.row(x);
  auto dst = mass(t);
  const double w = sign * joint_->px[x];
  for (std::size_t k = 0; k < r.size(); ++k) dst[r.indices[k]] += w * r.values[k];
}

SibState::Step SibState::draw_and_merge(std::size_t x) {
  Step step;
  step.from = step.to = assignment_[x];
  if (sizes_[step.from] == 1) {
    step.skipped = true;
    return step;
  }
  const double px = joint_->px[x];
  --sizes_[step.from];
  pt_[step.from] -= px;
  move_mass(x, step.from, -1.0);

  const auto row = joint_->py_given_x.row(x);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < k_; ++t) {
    const double cost = merge_cost(px, row, pt_[t], mass(t));
    if (cost < best) {
      best = cost;
      step.to = t;
    }
  }

  ++sizes_[step.to];
  pt_[step.to] += px;
  move_mass(x, step.to, 1.0);
  assignment_[x] = step.to;
  return step;
}

std::size_t SibState::sweep(std::mt19937_64& rng) {
  std::vector<std::size_t> order(assignment_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t changes = 0;
  for (auto x : order) {
    const auto step = draw_and_merge(x);
    if (step.to != step.from) ++changes;
  }
  return changes;
}

double SibState::score() const { return information(pt_, mass_, py_); }

std::size_t SibState::nonempty_clusters() const {
  return static_cast<std::size_t>(
      std::count_if(sizes_.begin(), sizes_.end(), [](std::size_t s) { return s > 0; }));
}

IBPartition SibState::snapshot() const {
  IBPartition out;
  out.partition = {k_, assignment_};
  out.pt = pt_;
  out.py_given_t.assign(k_, std::vector<double>(n_terms_, 0.0));
  for (std::size_t t = 0; t < k_; ++t) {
    const auto m = mass(t);
    for (std::size_t y = 0; y < n_terms_; ++y) out.py_given_t[t][y] = m[y] / pt_[t];
  }
  out.score = score();
  return out;
}

namespace {

void validate(const JointDistribution& joint, const SibOptions& o) {
  if (o.k < 1) throw Error("K must be at least 1");
  if (o.k > joint.n_docs()) {
    throw Error("K (" + std::to_string(o.k) + ") exceeds the number of documents (" +
                std::to_string(joint.n_docs()) + ")");
  }
  if (o.max_loops < 1) throw Error("maxL must be at least 1");
  if (!(o.eps >= 0.0 && o.eps < 1.0)) throw Error("eps must lie in [0, 1)");
}

IBPartition converge(const JointDistribution& joint, SibState state, std::mt19937_64& rng,
                     const SibOptions& o) {
  const double threshold = o.eps * static_cast<double>(joint.n_docs());
  std::size_t loops = 0;
  bool converged = false;
  while (loops < o.max_loops) {
    const auto changes = state.sweep(rng);
    ++loops;
    if (static_cast<double>(changes) <= threshold) {
      converged = true;
      break;
    }
  }
  // Final statistics from scratch so restarts compare without drift.
  auto out = ib_statistics(joint, {state.k(), state.assignment()});
  out.loops = loops;
  out.converged = converged;
  return out;
}

}  // namespace

IBPartition sib_refine(const JointDistribution& joint, const Partition& initial,
                       const SibOptions& options) {
  validate(joint, {initial.k, 1, options.max_loops, options.eps, options.seed});
  std::mt19937_64 rng(derive_seed(options.seed, 0));
  return converge(joint, SibState(joint, initial), rng, options);
}

IBPartition sib_run(const JointDistribution& joint, const SibOptions& options) {
  validate(joint, options);
  if (options.restarts < 1) throw Error("at least one restart is required");

  std::vector<IBPartition> results(options.restarts);
  parallel_for(options.restarts, [&](std::size_t r) {
    std::mt19937_64 rng(derive_seed(options.seed, r + 1));
    auto state = SibState::random(joint, options.k, rng);
    results[r] = converge(joint, std::move(state), rng, options);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].score > results[best].score) best = r;
  }
  return std::move(results[best]);
}

}  // namespace textpart
