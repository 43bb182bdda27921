#pragma once

#include <cstddef>
#include <optional>

#include "catmorph/crisp.hpp"
#include "catmorph/image.hpp"

namespace catmorph {

inline constexpr double kSimplexTolerance = 1e-6;

/// First pixel found off the probability simplex.
struct SimplexViolation {
  std::size_t pixel = 0;
  /// Largest of |sum - 1| and the magnitude of the most negative entry.
  double defect = 0.0;
};

/// Returns the first pixel whose entries are negative beyond `tol` or whose
/// sum differs from 1 by more than `tol`; std::nullopt when all pixels pass.
/// Non-finite entries are reported with an infinite defect.
std::optional<SimplexViolation> validate(const CategoricalImage& img,
                                         double tol = kSimplexTolerance);

/// Vertex embedding of a label image. Throws ArgumentError for sentinels or
/// labels outside [0, channels).
CategoricalImage one_hot(const LabelImage& labels, std::size_t channels);

/// Per-pixel index of the largest channel; ties go to the lowest index.
LabelImage argmax_labels(const CategoricalImage& img);

/// alpha_k / sum(alpha) per pixel.
CategoricalImage dirichlet_expectation(const DirichletImage& img);

/// Shannon entropy in nats, with 0 ln 0 = 0.
ScalarField entropy_map(const CategoricalImage& img);

/// Euclidean norm of each parameter vector.
ScalarField magnitude_map(const DirichletImage& img);

/// Clamps entries >= -1e-9 to zero and rescales every channel except `keep`
/// so the pixel sums to one; `keep` itself is left bit-identical. Without
/// `keep` the whole pixel is divided by its sum. Returns the largest
/// absolute change applied to any entry (the drift).
double renormalize(CategoricalImage& img,
                   std::optional<CategoryIndex> keep = std::nullopt);

}  // namespace catmorph
