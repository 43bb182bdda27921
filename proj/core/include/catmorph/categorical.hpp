#pragma once

#include <cstddef>
#include <vector>

#include "catmorph/image.hpp"
#include "catmorph/structuring_element.hpp"

/// Single-category morphology on images of categorical distributions.
///
/// The operated channel i is processed by flat grayscale dilation/erosion.
/// The remaining channels are rescaled so their conditional distribution
/// given "not i" is unchanged:
///
///     out_k(x) = (1 - out_i(x)) * f_k(x) / omega_i(x),   k != i
///
/// Where f_i(x) = 1 the conditional is undefined. Dilation then leaves
/// zeros; erosion hands the freed mass to the categories nearest to x via
/// theta(): the maximum of each f_k over the smallest ball B_{r*} that
/// reaches a pixel with f_i < 1.
///
/// After each operator the non-i channels are renormalized against
/// floating-point drift; channel i is never touched by that pass, so it is
/// bit-identical to the grayscale result.
namespace catmorph::categorical {

/// f_i(x) > 1 - kPlateauTolerance counts as f_i(x) = 1.
inline constexpr double kPlateauTolerance = 1e-9;

struct OpStats {
  /// Largest absolute correction applied by renormalization.
  double renormalization_drift = 0.0;
  /// Pixels whose mass was redistributed through theta().
  std::size_t theta_pixels = 0;

  void merge(const OpStats& other) noexcept;
};

/// Throws ArgumentError for a bad category or an element without origin,
/// DataError for an input pixel off the simplex.
CategoricalImage dilate(const CategoricalImage& f, CategoryIndex i,
                        const StructuringElement& se, OpStats* stats = nullptr);

/// As dilate. The theta branch needs a ball element; an explicit offset
/// list that requires it raises ArgumentError.
CategoricalImage erode(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, OpStats* stats = nullptr);

/// dilate(erode(f)).
CategoricalImage open(const CategoricalImage& f, CategoryIndex i,
                      const StructuringElement& se, OpStats* stats = nullptr);
/// erode(dilate(f)).
CategoricalImage close(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, OpStats* stats = nullptr);

struct ThetaWeights {
  /// One entry per channel; the entry for i is 0.
  std::vector<double> weights;
  /// The radius r* the weights were taken at.
  double radius = 0.0;
};

/// Replacement weights at a pixel with f_i = 1 whose ball `se` reaches
/// below 1. r* is the smallest rung of radius_ladder(se.norm()) at which
/// the ball around `pixel` contains a pixel with f_i < 1; the weight of
/// k != i is max f_k over that ball. Throws ArgumentError when the
/// contract does not hold or `se` is not a ball.
ThetaWeights theta(const CategoricalImage& f, CategoryIndex i, std::size_t pixel,
                   const StructuringElement& se);

/// f <=_i g: f_i(x) <= g_i(x) at every pixel. Reflexive and transitive but
/// not antisymmetric.
bool preorder_leq(const CategoricalImage& f, const CategoricalImage& g,
                  CategoryIndex i);

}  // namespace catmorph::categorical
