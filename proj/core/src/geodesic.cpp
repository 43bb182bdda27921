#include "catmorph/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "catmorph/error.hpp"

namespace catmorph::geodesic {
namespace {

using QueueEntry = std::pair<double, std::size_t>;
// Smallest distance first, ties by pixel index.
using MinQueue =
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>>;

struct UpwindTerm {
  double weight;  // 1 for first order, 9/4 for second order
  double base;
};

// Largest root of sum_k w_k (u - b_k)^2 = 1, adding axes in order of
// increasing base while the root stays above the next base.
double solve_upwind(std::vector<UpwindTerm>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const UpwindTerm& a, const UpwindTerm& b) { return a.base < b.base; });
  double best = kUnreachable;
  double a = 0.0, b = 0.0, c = -1.0;
  for (std::size_t m = 0; m < terms.size(); ++m) {
    a += terms[m].weight;
    b += terms[m].weight * terms[m].base;
    c += terms[m].weight * terms[m].base * terms[m].base;
    const double disc = b * b - a * c;
    if (disc < 0.0) break;
    const double u = (b + std::sqrt(disc)) / a;
    if (u < terms[m].base) break;
    best = u;
    if (m + 1 == terms.size() || u <= terms[m + 1].base) break;
  }
  return best;
}

}  // namespace

DomainMask::DomainMask(Shape shape, bool fill)
    : shape_(std::move(shape)), inside_(shape_.pixel_count(), fill ? 1 : 0) {}

DomainMask::DomainMask(Shape shape, std::vector<std::uint8_t> inside)
    : shape_(std::move(shape)), inside_(std::move(inside)) {
  if (inside_.size() != shape_.pixel_count()) {
    throw ArgumentError("mask size does not match shape " + shape_.to_string());
  }
}

std::size_t DomainMask::count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(inside_.begin(), inside_.end(), [](std::uint8_t v) { return v != 0; }));
}

Metric metric_for(Norm norm) noexcept {
  switch (norm) {
    case Norm::city_block: return Metric::city_block;
    case Norm::chessboard: return Metric::chessboard;
    case Norm::euclidean: return Metric::octagonal;
  }
  return Metric::octagonal;
}

BallSearch::BallSearch(const DomainMask& mask, Solver solver, Metric metric)
    : mask_(&mask),
      solver_(solver),
      metric_(metric),
      dist_(mask.size(), kUnreachable),
      state_(mask.size(), kFar) {
  const std::size_t rank = mask.shape().rank();
  const std::ptrdiff_t r1 = rank > 1 ? 1 : 0;
  const std::ptrdiff_t r2 = rank > 2 ? 1 : 0;
  for (std::ptrdiff_t a = -1; a <= 1; ++a)
    for (std::ptrdiff_t b = -r1; b <= r1; ++b)
      for (std::ptrdiff_t c = -r2; c <= r2; ++c) {
        const int nonzero = (a != 0) + (b != 0) + (c != 0);
        if (nonzero == 0) continue;
        const bool axial = nonzero == 1;
        // FMM always needs the full box to keep 8/26-connectivity.
        if (solver_ == Solver::graph && metric_ == Metric::city_block && !axial) continue;
        double length = std::sqrt(static_cast<double>(nonzero));
        if (solver_ == Solver::graph && metric_ != Metric::octagonal) length = 1.0;
        steps_.push_back({Coord{a, b, c}, length, axial});
      }
}

void BallSearch::reset() {
  for (std::size_t p : touched_) {
    dist_[p] = kUnreachable;
    state_[p] = kFar;
  }
  touched_.clear();
  hits_.clear();
}

std::span<const BallSearch::Hit> BallSearch::query(std::size_t x, double radius) {
  if (x >= mask_->size()) throw ArgumentError("pixel index out of range");
  if (!(*mask_)[x]) {
    reset();
    return {};
  }
  const std::size_t seed[1] = {x};
  return propagate(seed, radius);
}

std::span<const BallSearch::Hit> BallSearch::propagate(std::span<const std::size_t> seeds,
                                                       double cap) {
  reset();
  for (std::size_t s : seeds) {
    if (s >= mask_->size() || !(*mask_)[s]) {
      throw ArgumentError("seed pixel " + std::to_string(s) + " is outside the domain");
    }
    if (state_[s] == kFar) touched_.push_back(s);
    dist_[s] = 0.0;
    state_[s] = kTrial;
  }
  if (solver_ == Solver::graph) {
    run_graph(cap);
  } else {
    run_fmm(cap);
  }
  return hits_;
}

void BallSearch::run_graph(double cap) {
  const Shape& shape = mask_->shape();
  MinQueue queue;
  for (std::size_t p : touched_) queue.emplace(0.0, p);
  while (!queue.empty()) {
    const auto [d, p] = queue.top();
    queue.pop();
    if (state_[p] == kAccepted || d > dist_[p]) continue;
    if (d > cap + kBallSlack) break;
    state_[p] = kAccepted;
    hits_.push_back({p, d});
    const Coord c = shape.coord(p);
    for (const Step& step : steps_) {
      const Coord qc = c + step.offset;
      if (!shape.contains(qc)) continue;
      const std::size_t q = shape.index(qc);
      if (!(*mask_)[q] || state_[q] == kAccepted) continue;
      const double nd = d + step.length;
      if (nd < dist_[q]) {
        if (state_[q] == kFar) {
          touched_.push_back(q);
          state_[q] = kTrial;
        }
        dist_[q] = nd;
        queue.emplace(nd, q);
      }
    }
  }
}

double BallSearch::eikonal_update(std::size_t q) const {
  const Shape& shape = mask_->shape();
  const Coord c = shape.coord(q);
  std::vector<UpwindTerm> terms;
  terms.reserve(kMaxRank);
  auto accepted_value = [&](const Coord& at, double& value) {
    if (!shape.contains(at)) return false;
    const std::size_t idx = shape.index(at);
    if (!(*mask_)[idx] || state_[idx] != kAccepted) return false;
    value = dist_[idx];
    return true;
  };
  for (std::size_t axis = 0; axis < shape.rank(); ++axis) {
    double best1 = kUnreachable;
    double best2 = kUnreachable;
    bool second = false;
    for (std::ptrdiff_t side : {-1, 1}) {
      Coord n1 = c;
      n1[axis] += side;
      double a1 = 0.0;
      if (!accepted_value(n1, a1) || a1 >= best1) continue;
      best1 = a1;
      Coord n2 = n1;
      n2[axis] += side;
      double a2 = 0.0;
      second = accepted_value(n2, a2) && a2 <= a1;
      best2 = a2;
    }
    if (best1 == kUnreachable) continue;
    if (second) {
      terms.push_back({9.0 / 4.0, (4.0 * best1 - best2) / 3.0});
    } else {
      terms.push_back({1.0, best1});
    }
  }
  if (terms.empty()) return kUnreachable;
  return solve_upwind(terms);
}

bool BallSearch::visible(const Coord& from, const Coord& offset) const {
  const Shape& shape = mask_->shape();
  std::ptrdiff_t span = 0;
  for (std::size_t a = 0; a < shape.rank(); ++a) span = std::max(span, std::abs(offset[a]));
  const std::ptrdiff_t samples = 4 * span;
  for (std::ptrdiff_t k = 1; k < samples; ++k) {
    Coord at = from;
    for (std::size_t a = 0; a < shape.rank(); ++a) {
      at[a] += static_cast<std::ptrdiff_t>(
          std::lround(static_cast<double>(offset[a] * k) / static_cast<double>(samples)));
    }
    if (!(*mask_)[shape.index(at)]) return false;
  }
  return true;
}

void BallSearch::seed_exact_disc() {
  const Shape& shape = mask_->shape();
  const std::ptrdiff_t r0 = static_cast<std::ptrdiff_t>(kExactRadius);
  const std::ptrdiff_t r1 = shape.rank() > 1 ? r0 : 0;
  const std::ptrdiff_t r2 = shape.rank() > 2 ? r0 : 0;
  const std::vector<std::size_t> seeds = touched_;
  for (std::size_t s : seeds) {
    const Coord c = shape.coord(s);
    for (std::ptrdiff_t a = -r0; a <= r0; ++a)
      for (std::ptrdiff_t b = -r1; b <= r1; ++b)
        for (std::ptrdiff_t e = -r2; e <= r2; ++e) {
          const Coord offset{a, b, e};
          const double length = std::sqrt(static_cast<double>(a * a + b * b + e * e));
          if (length == 0.0 || length > kExactRadius) continue;
          const Coord qc = c + offset;
          if (!shape.contains(qc)) continue;
          const std::size_t q = shape.index(qc);
          if (!(*mask_)[q] || length >= dist_[q] || !visible(c, offset)) continue;
          if (state_[q] == kFar) touched_.push_back(q);
          dist_[q] = length;
          state_[q] = kFixed;
        }
  }
}

void BallSearch::run_fmm(double cap) {
  const Shape& shape = mask_->shape();
  // The second-order stencil differences across the kink of a point
  // source; exact values on a small disc keep that error from spreading.
  seed_exact_disc();
  MinQueue queue;
  for (std::size_t p : touched_) queue.emplace(dist_[p], p);
  while (!queue.empty()) {
    const auto [d, p] = queue.top();
    queue.pop();
    if (state_[p] == kAccepted || d > dist_[p]) continue;
    if (d > cap + kBallSlack) break;
    state_[p] = kAccepted;
    hits_.push_back({p, d});
    const Coord c = shape.coord(p);
    for (const Step& step : steps_) {
      const Coord qc = c + step.offset;
      if (!shape.contains(qc)) continue;
      const std::size_t q = shape.index(qc);
      if (!(*mask_)[q] || state_[q] == kAccepted || state_[q] == kFixed) continue;
      // A straight step from p is always an admissible path; near the seeds
      // it is exact and it keeps corner-connected pixels reachable.
      const double candidate = std::min(eikonal_update(q), d + step.length);
      if (candidate < dist_[q]) {
        if (state_[q] == kFar) {
          touched_.push_back(q);
          state_[q] = kTrial;
        }
        dist_[q] = candidate;
        queue.emplace(candidate, q);
      }
    }
  }
}

namespace {

DistanceField full_field(BallSearch& search, std::size_t size, const Shape& shape,
                         std::span<const std::size_t> seeds, double cap) {
  DistanceField out(shape, kUnreachable);
  for (const auto& hit : search.propagate(seeds, cap)) out[hit.pixel] = hit.distance;
  (void)size;
  return out;
}

}  // namespace

DistanceField dijkstra_distance(std::span<const std::size_t> seeds, const DomainMask& mask,
                                Metric metric, double cap) {
  BallSearch search(mask, Solver::graph, metric);
  return full_field(search, mask.size(), mask.shape(), seeds, cap);
}

DistanceField fmm_distance(std::span<const std::size_t> seeds, const DomainMask& mask,
                           double cap) {
  BallSearch search(mask, Solver::fmm, Metric::octagonal);
  return full_field(search, mask.size(), mask.shape(), seeds, cap);
}

std::vector<std::size_t> geodesic_ball_query(std::size_t x, double r, const DomainMask& mask,
                                             Solver solver, Metric metric) {
  if (r < 0.0) throw ArgumentError("ball radius must be >= 0");
  BallSearch search(mask, solver, metric);
  std::vector<std::size_t> out;
  for (const auto& hit : search.query(x, r)) out.push_back(hit.pixel);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace catmorph::geodesic
