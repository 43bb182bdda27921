#include "catmorph/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catmorph/error.hpp"
#include "catmorph/grayscale.hpp"
#include "catmorph/simplex.hpp"

namespace catmorph::categorical {
namespace {

double rest_mass(const CategoricalImage& f, std::size_t p, std::size_t i) {
  double s = 0.0;
  auto px = f.pixel(p);
  for (std::size_t k = 0; k < px.size(); ++k) {
    if (k != i) s += px[k];
  }
  return s;
}

// omega_i(x) = 0, up to tolerance.
bool is_plateau(const CategoricalImage& f, std::size_t p, std::size_t i) {
  return f.at(p, i) > 1.0 - kPlateauTolerance || !(rest_mass(f, p, i) > 0.0);
}

void require_input(const CategoricalImage& f, CategoryIndex i,
                   const StructuringElement& se) {
  f.require_category(i);
  if (!se.contains_origin()) {
    throw ArgumentError("categorical operators need a structuring element containing the origin");
  }
  if (auto bad = validate(f)) {
    throw DataError("input pixel " + std::to_string(bad->pixel) +
                    " is off the probability simplex (defect " +
                    std::to_string(bad->defect) + ")");
  }
}

// Writes (1 - value_i) * f_k / omega_i into the non-i channels of `out`.
void rescale_rest(const CategoricalImage& f, CategoricalImage& out, std::size_t p,
                  std::size_t i, double value_i) {
  const double scale = (1.0 - value_i) / rest_mass(f, p, i);
  auto src = f.pixel(p);
  auto dst = out.pixel(p);
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (k != i) dst[k] = src[k] * scale;
  }
}

// theta over a pre-sorted ball; returns false when no rung of the ball
// reaches a non-plateau pixel.
bool theta_weights(const CategoricalImage& f, std::size_t i, std::size_t p,
                   const std::vector<Coord>& sorted_ball, Norm norm,
                   std::vector<double>& weights, double& radius) {
  const Shape& shape = f.shape();
  const Coord c = shape.coord(p);
  const std::size_t rank = shape.rank();
  bool found = false;
  for (const Coord& y : sorted_ball) {
    const Coord q = c + y;
    if (!shape.contains(q)) continue;
    if (!is_plateau(f, shape.index(q), i)) {
      radius = norm_of(y, norm, rank);
      found = true;
      break;
    }
  }
  if (!found) return false;
  weights.assign(f.channels(), 0.0);
  for (const Coord& y : sorted_ball) {
    if (norm_of(y, norm, rank) > radius + kBallSlack) break;
    const Coord q = c + y;
    if (!shape.contains(q)) continue;
    auto px = f.pixel(shape.index(q));
    for (std::size_t k = 0; k < px.size(); ++k) {
      if (k != i) weights[k] = std::max(weights[k], px[k]);
    }
  }
  return true;
}

void finish(CategoricalImage& out, CategoryIndex i, OpStats* stats,
            std::size_t theta_pixels) {
  const double drift = renormalize(out, i);
  if (stats) {
    stats->renormalization_drift = std::max(stats->renormalization_drift, drift);
    stats->theta_pixels += theta_pixels;
  }
}

}  // namespace

void OpStats::merge(const OpStats& other) noexcept {
  renormalization_drift = std::max(renormalization_drift, other.renormalization_drift);
  theta_pixels += other.theta_pixels;
}

CategoricalImage dilate(const CategoricalImage& f, CategoryIndex i,
                        const StructuringElement& se, OpStats* stats) {
  require_input(f, i, se);
  const ScalarField grown = gray::dilate(f.channel(i.value), se);
  CategoricalImage out(f.shape(), f.channels());
  for (std::size_t p = 0; p < f.pixel_count(); ++p) {
    out.at(p, i.value) = grown[p];
    if (!is_plateau(f, p, i.value)) {
      rescale_rest(f, out, p, i.value, grown[p]);
    }
    // Plateau: conditional undefined, the remaining mass 1 - grown is 0.
  }
  finish(out, i, stats, 0);
  return out;
}

CategoricalImage erode(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, OpStats* stats) {
  require_input(f, i, se);
  const ScalarField shrunk = gray::erode(f.channel(i.value), se);
  CategoricalImage out(f.shape(), f.channels());
  std::vector<Coord> sorted_ball;
  std::vector<double> weights;
  std::size_t theta_pixels = 0;
  for (std::size_t p = 0; p < f.pixel_count(); ++p) {
    const double e = shrunk[p];
    out.at(p, i.value) = e;
    if (!is_plateau(f, p, i.value)) {
      rescale_rest(f, out, p, i.value, e);
      continue;
    }
    if (e > 1.0 - kPlateauTolerance) {
      if (rest_mass(f, p, i.value) > 0.0) rescale_rest(f, out, p, i.value, e);
      continue;
    }
    if (!se.is_ball()) {
      throw ArgumentError("erosion of a fully occupied pixel needs a ball structuring element");
    }
    if (sorted_ball.empty()) sorted_ball = se.offsets(f.shape().rank());
    double radius = 0.0;
    if (!theta_weights(f, i.value, p, sorted_ball, se.norm(), weights, radius)) {
      continue;
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) continue;
    for (std::size_t k = 0; k < f.channels(); ++k) {
      if (k != i.value) out.at(p, k) = (1.0 - e) * weights[k] / total;
    }
    ++theta_pixels;
  }
  finish(out, i, stats, theta_pixels);
  return out;
}

CategoricalImage open(const CategoricalImage& f, CategoryIndex i,
                      const StructuringElement& se, OpStats* stats) {
  return dilate(erode(f, i, se, stats), i, se, stats);
}

CategoricalImage close(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, OpStats* stats) {
  return erode(dilate(f, i, se, stats), i, se, stats);
}

ThetaWeights theta(const CategoricalImage& f, CategoryIndex i, std::size_t pixel,
                   const StructuringElement& se) {
  f.require_category(i);
  if (!se.is_ball()) throw ArgumentError("theta needs a ball structuring element");
  if (pixel >= f.pixel_count()) throw ArgumentError("pixel index out of range");
  if (!is_plateau(f, pixel, i.value)) {
    throw ArgumentError("theta called at a pixel where f_i < 1");
  }
  ThetaWeights result;
  const auto ball = se.offsets(f.shape().rank());
  if (!theta_weights(f, i.value, pixel, ball, se.norm(), result.weights, result.radius)) {
    throw ArgumentError("theta called where the erosion of f_i is still 1");
  }
  return result;
}

bool preorder_leq(const CategoricalImage& f, const CategoricalImage& g,
                  CategoryIndex i) {
  if (!(f.shape() == g.shape()) || f.channels() != g.channels()) {
    throw ArgumentError("preorder needs images of equal shape and channels");
  }
  f.require_category(i);
  for (std::size_t p = 0; p < f.pixel_count(); ++p) {
    if (!(f.at(p, i.value) <= g.at(p, i.value))) return false;
  }
  return true;
}

}  // namespace catmorph::categorical
