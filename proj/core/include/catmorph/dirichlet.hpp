#pragma once

#include <cstddef>
#include <vector>

#include "catmorph/image.hpp"
#include "catmorph/structuring_element.hpp"

/// Morphology on images of Dirichlet parameters, ordered componentwise:
/// each channel is processed by the flat grayscale operator on its own.
/// No rescaling of alpha is applied.
namespace catmorph::dirichlet {

using CategorySet = std::vector<std::size_t>;

DirichletImage dilate(const DirichletImage& f, const StructuringElement& se);
DirichletImage erode(const DirichletImage& f, const StructuringElement& se);
DirichletImage open(const DirichletImage& f, const StructuringElement& se);
DirichletImage close(const DirichletImage& f, const StructuringElement& se);

/// Only channels in `subset` are transformed; the others are copied
/// verbatim. An empty subset is the identity. Indices must be < channels.
DirichletImage dilate_subset(const DirichletImage& f, const StructuringElement& se,
                             const CategorySet& subset);
DirichletImage erode_subset(const DirichletImage& f, const StructuringElement& se,
                            const CategorySet& subset);
DirichletImage open_subset(const DirichletImage& f, const StructuringElement& se,
                           const CategorySet& subset);
DirichletImage close_subset(const DirichletImage& f, const StructuringElement& se,
                            const CategorySet& subset);

}  // namespace catmorph::dirichlet
