#pragma once

#include "catmorph/image.hpp"
#include "catmorph/structuring_element.hpp"

/// Flat grayscale morphology on scalar fields.
///
/// dilate(f)(x) = max{ f(y) : y - x in B }, erode uses min. Offsets that
/// leave the image are ignored rather than padded, so every output value is
/// one of the input values. A pixel whose clipped neighborhood is empty
/// (possible only when B lacks the origin) raises DataError.
namespace catmorph::gray {

enum class Engine {
  automatic,  ///< separable van Herk/Gil-Werman for chessboard balls, else offset scan
  naive,      ///< per-pixel scan over every offset with bounds checks
};

ScalarField dilate(const ScalarField& f, const StructuringElement& se,
                   Engine engine = Engine::automatic);
ScalarField erode(const ScalarField& f, const StructuringElement& se,
                  Engine engine = Engine::automatic);

/// dilate(erode(f)).
ScalarField open(const ScalarField& f, const StructuringElement& se,
                 Engine engine = Engine::automatic);
/// erode(dilate(f)).
ScalarField close(const ScalarField& f, const StructuringElement& se,
                  Engine engine = Engine::automatic);

}  // namespace catmorph::gray
