#pragma once

#include <cstddef>
#include <vector>

#include "catmorph/crisp.hpp"
#include "catmorph/geodesic.hpp"
#include "catmorph/image.hpp"
#include "catmorph/structuring_element.hpp"

/// Slow, direct transcriptions used as test oracles. Nothing here calls
/// library kernels: neighborhoods are found by testing every pixel pair.
namespace catmorph::oracle {

/// |d| under `norm` <= r + 1e-9, for a coordinate difference.
bool in_ball(const Coord& d, Norm norm, double r, std::size_t rank);
double distance(const Coord& d, Norm norm, std::size_t rank);

ScalarField gray_dilate(const ScalarField& f, double r, Norm norm);
ScalarField gray_erode(const ScalarField& f, double r, Norm norm);

/// Categorical dilation / erosion of channel i with a ball, written from
/// the defining case analysis, with omega_i = 1 - f_i.
CategoricalImage cat_dilate(const CategoricalImage& f, std::size_t i, double r, Norm norm);
CategoricalImage cat_erode(const CategoricalImage& f, std::size_t i, double r, Norm norm);

/// Shortest paths by repeated relaxation until nothing changes.
geodesic::DistanceField relaxed_distance(const std::vector<std::size_t>& seeds,
                                         const geodesic::DomainMask& mask,
                                         geodesic::Metric metric);

/// Distance from the nearest seed, straight line, ignoring the mask.
ScalarField euclidean_distance(const Shape& shape, const std::vector<std::size_t>& seeds);

/// Protected dilation / erosion for images whose protected mass is 0 or 1
/// at every pixel, through relaxed_distance balls.
CategoricalImage walled_dilate(const CategoricalImage& f, std::size_t i, double r,
                               geodesic::Metric metric, const std::vector<std::size_t>& L);
CategoricalImage walled_erode(const CategoricalImage& f, std::size_t i, double r,
                              geodesic::Metric metric, const std::vector<std::size_t>& L);

/// Connected components of the pixels where `member` is true.
std::size_t count_components(const Shape& shape, const std::vector<bool>& member,
                             bool diagonal);

/// Largest entry-wise difference; infinity on shape or channel mismatch.
double max_abs_diff(const CategoricalImage& a, const CategoricalImage& b);
double max_abs_diff(const ScalarField& a, const ScalarField& b);

}  // namespace catmorph::oracle
