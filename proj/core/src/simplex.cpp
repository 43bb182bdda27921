#include "catmorph/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "catmorph/error.hpp"

namespace catmorph {

std::optional<SimplexViolation> validate(const CategoricalImage& img, double tol) {
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    double sum = 0.0;
    double most_negative = 0.0;
    bool finite = true;
    for (double v : img.pixel(p)) {
      if (!std::isfinite(v)) finite = false;
      sum += v;
      most_negative = std::min(most_negative, v);
    }
    if (!finite) {
      return SimplexViolation{p, std::numeric_limits<double>::infinity()};
    }
    const double defect = std::max(std::abs(sum - 1.0), -most_negative);
    if (defect > tol) return SimplexViolation{p, defect};
  }
  return std::nullopt;
}

CategoricalImage one_hot(const LabelImage& labels, std::size_t channels) {
  CategoricalImage out(labels.shape(), channels);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const Label l = labels[p];
    if (l < 0 || static_cast<std::size_t>(l) >= channels) {
      throw ArgumentError("label " + std::to_string(l) + " at pixel " +
                          std::to_string(p) + " cannot be one-hot encoded in " +
                          std::to_string(channels) + " channels");
    }
    out.at(p, static_cast<std::size_t>(l)) = 1.0;
  }
  return out;
}

LabelImage argmax_labels(const CategoricalImage& img) {
  std::vector<Label> labels(img.pixel_count());
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    auto px = img.pixel(p);
    // max_element returns the first maximum, i.e. the lowest index on ties.
    labels[p] = static_cast<Label>(std::max_element(px.begin(), px.end()) - px.begin());
  }
  return LabelImage(img.shape(), img.channels(), std::move(labels));
}

CategoricalImage dirichlet_expectation(const DirichletImage& img) {
  CategoricalImage out(img.shape(), img.channels());
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    auto alpha = img.pixel(p);
    double total = 0.0;
    for (double a : alpha) total += a;
    auto dst = out.pixel(p);
    for (std::size_t k = 0; k < alpha.size(); ++k) dst[k] = alpha[k] / total;
  }
  return out;
}

ScalarField entropy_map(const CategoricalImage& img) {
  ScalarField out(img.shape());
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    double h = 0.0;
    for (double v : img.pixel(p)) {
      if (v > 0.0) h -= v * std::log(v);
    }
    out[p] = h;
  }
  return out;
}

ScalarField magnitude_map(const DirichletImage& img) {
  ScalarField out(img.shape());
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    double ss = 0.0;
    for (double a : img.pixel(p)) ss += a * a;
    out[p] = std::sqrt(ss);
  }
  return out;
}

double renormalize(CategoricalImage& img, std::optional<CategoryIndex> keep) {
  if (keep) img.require_category(*keep);
  double drift = 0.0;
  const std::size_t n = img.channels();
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    auto px = img.pixel(p);
    for (auto& v : px) {
      if (v < 0.0) {
        drift = std::max(drift, -v);
        v = 0.0;
      }
    }
    double target = 1.0;
    double rest = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (keep && k == keep->value) {
        target -= px[k];
      } else {
        rest += px[k];
      }
    }
    if (rest <= 0.0) {
      // Nothing to rescale; the residual mass is reported, not invented.
      drift = std::max(drift, std::abs(target));
      continue;
    }
    target = std::max(target, 0.0);
    const double scale = target / rest;
    for (std::size_t k = 0; k < n; ++k) {
      if (keep && k == keep->value) continue;
      const double nv = px[k] * scale;
      drift = std::max(drift, std::abs(nv - px[k]));
      px[k] = nv;
    }
  }
  return drift;
}

}  // namespace catmorph
