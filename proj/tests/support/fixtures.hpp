#pragma once

#include <cstddef>

#include "catmorph/image.hpp"
#include "generators.hpp"

/// Synthetic scenes standing in for segmentation outputs.
namespace catmorph::testing {

struct BlobScene {
  CategoricalImage image;
  /// Square regions of the target category, each containing a 5x5 block.
  std::size_t regions = 0;
  /// Isolated single pixels of the target category.
  std::size_t noise = 0;
};

/// Three categories: background 2, a left band of 1, squares and
/// single-pixel specks of category 0. Pixels are soft: the dominant
/// category has probability in [0.6, 0.9].
BlobScene noisy_blobs(Rng& rng, std::size_t side = 40);

/// Four categories as concentric discs: 0 active core (radius 4),
/// 1 inactive tissue (to radius 13), 2 edema (to radius 16), 3 background.
/// Boundary pixels are soft mixtures of the two adjacent classes.
CategoricalImage annotator_phantom(std::size_t side = 40);

}  // namespace catmorph::testing
