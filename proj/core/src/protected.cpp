#include "catmorph/protected.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>

#include "catmorph/error.hpp"
#include "catmorph/simplex.hpp"

namespace catmorph::protect {
namespace {

using categorical::kPlateauTolerance;
using categorical::OpStats;
using geodesic::BallSearch;
using geodesic::DomainMask;

enum class Role : unsigned char { operated, guarded, rest };

struct Context {
  const CategoricalImage& f;
  std::size_t i;
  double radius;
  std::vector<Role> role;
  std::vector<double> f_l;
  std::vector<double> f_j;
  DomainMask omega0;
  geodesic::Solver solver;
  geodesic::Metric metric;

  double room(std::size_t p) const { return 1.0 - f_l[p]; }

  // No unprotected mass to rescale at p.
  bool j_empty(std::size_t p) const {
    return !(f_j[p] > 0.0) || f.at(p, i) + f_l[p] > 1.0 - kPlateauTolerance;
  }
};

Context make_context(const CategoricalImage& f, CategoryIndex i, const StructuringElement& se,
                     const ProtectionSpec& spec) {
  f.require_category(i);
  if (!se.is_ball()) {
    throw ArgumentError("protected operators need a ball structuring element");
  }
  if (!(spec.wall_tol >= 0.0) || spec.plevels == 0) {
    throw ArgumentError("protection needs wall_tol >= 0 and plevels >= 1");
  }
  Context ctx{f, i.value, se.radius(), std::vector<Role>(f.channels(), Role::rest), {}, {}, {},
              geodesic::Solver::graph, geodesic::metric_for(se.norm())};
  ctx.role[i.value] = Role::operated;
  for (std::size_t k : spec.protected_channels) {
    if (k >= f.channels()) {
      throw ArgumentError("protected category " + std::to_string(k) + " out of range");
    }
    if (k == i.value) {
      throw ArgumentError("the operated category cannot be protected");
    }
    ctx.role[k] = Role::guarded;
  }
  if (auto bad = validate(f)) {
    throw DataError("input pixel " + std::to_string(bad->pixel) +
                    " is off the probability simplex (defect " +
                    std::to_string(bad->defect) + ")");
  }
  const bool use_fmm =
      spec.backend == Backend::fmm ||
      (spec.backend == Backend::automatic && se.norm() == Norm::euclidean &&
       f.pixel_count() > 128 * 128);
  if (use_fmm) {
    ctx.solver = geodesic::Solver::fmm;
    ctx.metric = geodesic::Metric::octagonal;
  }
  const std::size_t n = f.pixel_count();
  ctx.f_l.assign(n, 0.0);
  ctx.f_j.assign(n, 0.0);
  std::vector<std::uint8_t> inside(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    auto px = f.pixel(p);
    for (std::size_t k = 0; k < px.size(); ++k) {
      if (ctx.role[k] == Role::guarded) ctx.f_l[p] += px[k];
      if (ctx.role[k] == Role::rest) ctx.f_j[p] += px[k];
    }
    inside[p] = ctx.f_l[p] < 1.0 - spec.wall_tol ? 1 : 0;
  }
  ctx.omega0 = DomainMask(f.shape(), std::move(inside));
  return ctx;
}

// Capacity levels: the values of 1 - f_L are the only places where
// Omega_p changes, so they are exact; above `plevels` use k / plevels.
std::vector<double> capacity_levels(const Context& ctx, const ProtectionSpec& spec) {
  std::set<double> exact;
  for (std::size_t p = 0; p < ctx.f_l.size(); ++p) {
    const double t = std::min(1.0, ctx.room(p));
    if (t > spec.wall_tol) exact.insert(t);
    if (exact.size() > spec.plevels) break;
  }
  if (exact.size() <= spec.plevels) return {exact.begin(), exact.end()};
  std::vector<double> uniform(spec.plevels);
  for (std::size_t k = 0; k < spec.plevels; ++k) {
    uniform[k] = static_cast<double>(k + 1) / static_cast<double>(spec.plevels);
  }
  return uniform;
}

DomainMask level_domain(const Context& ctx, double level, double wall_tol) {
  std::vector<std::uint8_t> inside(ctx.f_l.size(), 0);
  for (std::size_t p = 0; p < inside.size(); ++p) {
    inside[p] = ctx.omega0[p] && ctx.room(p) >= level - wall_tol ? 1 : 0;
  }
  return DomainMask(ctx.f.shape(), std::move(inside));
}

// Max (or min) of f_i over each pixel's geodesic ball in `mask`; empty
// balls leave the entry as nullopt.
std::vector<std::optional<double>> ball_extreme(const Context& ctx, const DomainMask& mask,
                                                bool maximum) {
  std::vector<std::optional<double>> out(ctx.f.pixel_count());
  BallSearch search(mask, ctx.solver, ctx.metric);
  for (std::size_t x = 0; x < out.size(); ++x) {
    if (!mask[x]) continue;
    double v = ctx.f.at(x, ctx.i);
    for (const auto& hit : search.query(x, ctx.radius)) {
      const double fy = ctx.f.at(hit.pixel, ctx.i);
      v = maximum ? std::max(v, fy) : std::min(v, fy);
    }
    out[x] = v;
  }
  return out;
}

void rescale_rest(const Context& ctx, CategoricalImage& out, std::size_t p, double value_i) {
  const double residual = std::max(0.0, ctx.room(p) - value_i);
  const double scale = ctx.f_j[p] > 0.0 ? residual / ctx.f_j[p] : 0.0;
  for (std::size_t k = 0; k < ctx.role.size(); ++k) {
    if (ctx.role[k] == Role::rest) out.at(p, k) = ctx.f.at(p, k) * scale;
  }
}

// Rescales J so the pixel sums to one, leaving i and L bit-identical.
double renormalize_rest(const Context& ctx, CategoricalImage& out, std::size_t p) {
  double target = 1.0 - out.at(p, ctx.i) - ctx.f_l[p];
  double sum = 0.0;
  double drift = 0.0;
  for (std::size_t k = 0; k < ctx.role.size(); ++k) {
    if (ctx.role[k] != Role::rest) continue;
    double& v = out.at(p, k);
    if (v < 0.0) {
      drift = std::max(drift, -v);
      v = 0.0;
    }
    sum += v;
  }
  target = std::max(target, 0.0);
  if (!(sum > 0.0)) return std::max(drift, target);
  const double scale = target / sum;
  for (std::size_t k = 0; k < ctx.role.size(); ++k) {
    if (ctx.role[k] != Role::rest) continue;
    double& v = out.at(p, k);
    const double nv = v * scale;
    drift = std::max(drift, std::abs(nv - v));
    v = nv;
  }
  return drift;
}

void finish(const Context& ctx, CategoricalImage& out, const std::vector<char>& changed,
            OpStats* stats, std::size_t theta_pixels) {
  double drift = 0.0;
  for (std::size_t p = 0; p < changed.size(); ++p) {
    if (changed[p]) drift = std::max(drift, renormalize_rest(ctx, out, p));
  }
  if (stats) {
    stats->renormalization_drift = std::max(stats->renormalization_drift, drift);
    stats->theta_pixels += theta_pixels;
  }
}

bool reaches_rest_mass(const Context& ctx, std::span<const BallSearch::Hit> hits) {
  return std::any_of(hits.begin(), hits.end(),
                     [&](const BallSearch::Hit& h) { return !ctx.j_empty(h.pixel); });
}

// Protected theta from the Omega_0 ball around x (hits sorted by distance).
bool theta_from_hits(const Context& ctx, std::size_t x, std::span<const BallSearch::Hit> hits,
                     std::vector<double>& weights, double& radius) {
  const double limit = ctx.room(x) - kPlateauTolerance;
  std::size_t start = hits.size();
  for (std::size_t h = 0; h < hits.size(); ++h) {
    if (ctx.f.at(hits[h].pixel, ctx.i) < limit) {
      start = h;
      break;
    }
  }
  if (start == hits.size()) return false;
  // Grow r* until the ball holds J mass.
  const auto first_mass = std::find_if(hits.begin(), hits.end(), [&](const BallSearch::Hit& h) {
    return !ctx.j_empty(h.pixel);
  });
  if (first_mass == hits.end()) return false;
  radius = std::max(hits[start].distance, first_mass->distance);
  weights.assign(ctx.role.size(), 0.0);
  double total = 0.0;
  for (const auto& hit : hits) {
    if (hit.distance > radius + kBallSlack) break;
    for (std::size_t k = 0; k < ctx.role.size(); ++k) {
      if (ctx.role[k] != Role::rest) continue;
      weights[k] = std::max(weights[k], ctx.f.at(hit.pixel, k));
    }
  }
  for (double w : weights) total += w;
  return total > 0.0;
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  return mode == Mode::literal ? "literal" : "capacity";
}

Mode parse_mode(std::string_view text) {
  if (text == "literal") return Mode::literal;
  if (text == "capacity") return Mode::capacity;
  throw ArgumentError("unknown protection mode '" + std::string(text) + "'");
}

geodesic::DomainMask free_domain(const CategoricalImage& f, const ProtectionSpec& spec) {
  std::vector<std::uint8_t> inside(f.pixel_count(), 1);
  for (std::size_t p = 0; p < inside.size(); ++p) {
    double f_l = 0.0;
    for (std::size_t k : spec.protected_channels) {
      if (k >= f.channels()) {
        throw ArgumentError("protected category " + std::to_string(k) + " out of range");
      }
      f_l += f.at(p, k);
    }
    inside[p] = f_l < 1.0 - spec.wall_tol ? 1 : 0;
  }
  return DomainMask(f.shape(), std::move(inside));
}

CategoricalImage dilate(const CategoricalImage& f, CategoryIndex i,
                        const StructuringElement& se, const ProtectionSpec& spec,
                        OpStats* stats) {
  const Context ctx = make_context(f, i, se, spec);
  const std::size_t n = f.pixel_count();
  std::vector<double> reach(n, 0.0);
  if (spec.mode == Mode::literal) {
    const auto m = ball_extreme(ctx, ctx.omega0, true);
    for (std::size_t x = 0; x < n; ++x) reach[x] = m[x].value_or(0.0);
  } else {
    for (double level : capacity_levels(ctx, spec)) {
      const auto m = ball_extreme(ctx, level_domain(ctx, level, spec.wall_tol), true);
      for (std::size_t x = 0; x < n; ++x) {
        if (m[x]) reach[x] = std::max(reach[x], std::min(level, *m[x]));
      }
    }
  }
  CategoricalImage out = f;
  std::vector<char> changed(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (!ctx.omega0[x]) continue;
    const double value = std::max(f.at(x, ctx.i), std::min(ctx.room(x), reach[x]));
    out.at(x, ctx.i) = value;
    if (ctx.j_empty(x)) {
      rescale_rest(ctx, out, x, ctx.room(x));
    } else {
      rescale_rest(ctx, out, x, value);
    }
    changed[x] = 1;
  }
  finish(ctx, out, changed, stats, 0);
  return out;
}

CategoricalImage erode(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, const ProtectionSpec& spec,
                       OpStats* stats) {
  const Context ctx = make_context(f, i, se, spec);
  const std::size_t n = f.pixel_count();
  std::vector<double> low(n, 1.0);
  if (spec.mode == Mode::literal) {
    const auto m = ball_extreme(ctx, ctx.omega0, false);
    for (std::size_t x = 0; x < n; ++x) low[x] = m[x].value_or(f.at(x, ctx.i));
  } else {
    for (std::size_t x = 0; x < n; ++x) low[x] = f.at(x, ctx.i);
    for (double level : capacity_levels(ctx, spec)) {
      const auto m = ball_extreme(ctx, level_domain(ctx, level, spec.wall_tol), false);
      for (std::size_t x = 0; x < n; ++x) {
        if (m[x]) low[x] = std::min(low[x], *m[x]);
      }
    }
  }
  CategoricalImage out = f;
  std::vector<char> changed(n, 0);
  std::vector<double> weights;
  std::size_t theta_pixels = 0;
  BallSearch search(ctx.omega0, ctx.solver, ctx.metric);
  for (std::size_t x = 0; x < n; ++x) {
    if (!ctx.omega0[x]) continue;
    const bool empty_here = ctx.j_empty(x);
    std::span<const BallSearch::Hit> hits;
    if (empty_here) {
      hits = search.query(x, ctx.radius);
      if (!reaches_rest_mass(ctx, hits)) continue;
    }
    const double value = low[x];
    if (!empty_here) {
      out.at(x, ctx.i) = value;
      rescale_rest(ctx, out, x, value);
      changed[x] = 1;
      continue;
    }
    const double residual = ctx.room(x) - value;
    if (!(residual > kPlateauTolerance)) continue;
    double radius = 0.0;
    if (!theta_from_hits(ctx, x, hits, weights, radius)) continue;
    double total = 0.0;
    for (double w : weights) total += w;
    out.at(x, ctx.i) = value;
    for (std::size_t k = 0; k < ctx.role.size(); ++k) {
      if (ctx.role[k] == Role::rest) out.at(x, k) = residual * weights[k] / total;
    }
    changed[x] = 1;
    ++theta_pixels;
  }
  finish(ctx, out, changed, stats, theta_pixels);
  return out;
}

CategoricalImage open(const CategoricalImage& f, CategoryIndex i,
                      const StructuringElement& se, const ProtectionSpec& erode_spec,
                      const ProtectionSpec& dilate_spec, OpStats* stats) {
  return dilate(erode(f, i, se, erode_spec, stats), i, se, dilate_spec, stats);
}

CategoricalImage open(const CategoricalImage& f, CategoryIndex i,
                      const StructuringElement& se, const ProtectionSpec& spec,
                      OpStats* stats) {
  return open(f, i, se, spec, spec, stats);
}

CategoricalImage close(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, const ProtectionSpec& dilate_spec,
                       const ProtectionSpec& erode_spec, OpStats* stats) {
  return erode(dilate(f, i, se, dilate_spec, stats), i, se, erode_spec, stats);
}

CategoricalImage close(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, const ProtectionSpec& spec,
                       OpStats* stats) {
  return close(f, i, se, spec, spec, stats);
}

categorical::ThetaWeights theta(const CategoricalImage& f, CategoryIndex i, std::size_t pixel,
                                const StructuringElement& se, const ProtectionSpec& spec) {
  const Context ctx = make_context(f, i, se, spec);
  if (pixel >= f.pixel_count()) throw ArgumentError("pixel index out of range");
  if (!ctx.omega0[pixel] || !ctx.j_empty(pixel)) {
    throw ArgumentError("protected theta needs a pixel with f_J = 0 outside the walls");
  }
  BallSearch search(ctx.omega0, ctx.solver, ctx.metric);
  const auto hits = search.query(pixel, ctx.radius);
  categorical::ThetaWeights result;
  if (!theta_from_hits(ctx, pixel, hits, result.weights, result.radius)) {
    throw ArgumentError("protected theta called where no unprotected mass is reachable");
  }
  return result;
}

}  // namespace catmorph::protect
