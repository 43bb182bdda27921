#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "catmorph/crisp.hpp"
#include "catmorph/geodesic.hpp"
#include "catmorph/image.hpp"

namespace catmorph::testing {

using Rng = std::mt19937_64;

/// Fractions of each pixel kind drawn by random_categorical.
struct Mix {
  double plateau = 0.25;  ///< one-hot on `plateau_channel`
  double vertex = 0.25;   ///< one-hot on a random channel
  double sparse = 0.2;    ///< random point with some exact zeros
  std::size_t plateau_channel = 0;
};

ScalarField random_field(Rng& rng, const Shape& shape);
CategoricalImage random_categorical(Rng& rng, const Shape& shape, std::size_t channels,
                                    const Mix& mix = {});
/// Blocks of side 2..4, each a random one-hot pixel or an i-plateau, with
/// scattered fractional pixels: plateaus wider than small radii.
CategoricalImage random_blocky(Rng& rng, const Shape& shape, std::size_t channels,
                               std::size_t plateau_channel);
DirichletImage random_dirichlet(Rng& rng, const Shape& shape, std::size_t channels);
LabelImage random_labels(Rng& rng, const Shape& shape, std::size_t categories);
SetImage random_sets(Rng& rng, const Shape& shape, std::size_t categories);
geodesic::DomainMask random_mask(Rng& rng, const Shape& shape, double hole_fraction);

}  // namespace catmorph::testing
