#pragma once

#include <cstddef>
#include <vector>

#include "catmorph/crisp.hpp"
#include "catmorph/error.hpp"
#include "catmorph/structuring_element.hpp"

/// Categorical morphologies from the literature, kept for comparison and for
/// cross-checking the probabilistic operators on crisp inputs.
///
/// All neighborhoods follow the y - x in B convention, including the label
/// operators whose textbook form reads V(x) = {f(x - y) : y in B}; the two
/// agree for symmetric elements such as balls.
namespace catmorph::baseline {

/// Pixelwise union / intersection of the category sets in the neighborhood.
SetImage set_dilate(const SetImage& f, const StructuringElement& se);
SetImage set_erode(const SetImage& f, const StructuringElement& se);

/// Label-image lattice C ∪ {bottom, top}: a unique category survives,
/// conflicts become top (dilation) or bottom (erosion).
LabelImage label_dilate(const LabelImage& f, const StructuringElement& se);
LabelImage label_erode(const LabelImage& f, const StructuringElement& se);

/// Pixel becomes `i` if any neighbor is `i`, else keeps its label.
LabelImage nary_dilate(const LabelImage& f, Label i, const StructuringElement& se);

struct NaryErodeOptions {
  /// Preferred categories first. Used only when the nearest non-i
  /// neighbors disagree; an empty ranking makes such pixels ambiguous.
  std::vector<Label> ranking;
  /// Metric defining "nearest" inside the neighborhood.
  Norm distance = Norm::euclidean;
};

struct NaryErodeResult {
  /// Ambiguous pixels are set to kTop.
  LabelImage labels;
  std::vector<std::size_t> ambiguous;
};

/// Single-category erosion: pixels labelled `i` whose neighborhood is not
/// entirely `i` take the label of the nearest non-i neighbor.
NaryErodeResult nary_erode_report(const LabelImage& f, Label i,
                                  const StructuringElement& se,
                                  const NaryErodeOptions& options = {});

class AmbiguousThetaError : public DataError {
 public:
  AmbiguousThetaError(std::size_t pixel, std::string message)
      : DataError(std::move(message)), pixel_(pixel) {}
  std::size_t pixel() const noexcept { return pixel_; }

 private:
  std::size_t pixel_;
};

/// As nary_erode_report but throws AmbiguousThetaError at the first pixel
/// whose replacement cannot be decided.
LabelImage nary_erode(const LabelImage& f, Label i, const StructuringElement& se,
                      const NaryErodeOptions& options = {});

}  // namespace catmorph::baseline
