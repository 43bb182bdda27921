#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "catmorph/categorical.hpp"
#include "catmorph/geodesic.hpp"
#include "catmorph/image.hpp"
#include "catmorph/structuring_element.hpp"

/// Single-category morphology with a set L of frozen categories.
///
/// Channels in L are copied bit-exactly and also shape the domain: a value
/// can only spread along geodesic paths that avoid pixels fully occupied by
/// L. The operated channel never exceeds 1 - f_L, and the unprotected rest
/// J = channels \ ({i} u L) absorbs the remaining mass proportionally.
namespace catmorph::protect {

enum class Mode {
  /// Propagate through Omega_0 = {f_L < 1 - wall_tol}, cap by 1 - f_L.
  literal,
  /// A value p may only traverse pixels with f_L <= 1 - p.
  capacity,
};

enum class Backend { automatic, graph, fmm };

struct ProtectionSpec {
  std::vector<std::size_t> protected_channels;
  Mode mode = Mode::literal;
  /// Uniform level count used in capacity mode when the exact level set
  /// (distinct values of 1 - f_L) is larger.
  std::size_t plevels = 64;
  double wall_tol = 1e-9;
  /// automatic: graph search, except FMM for Euclidean balls on images
  /// with more than 128 * 128 pixels.
  Backend backend = Backend::automatic;
};

const char* to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

/// Throws ArgumentError when i is in L, L is out of range, or `se` is not
/// a ball; DataError for an input off the simplex.
CategoricalImage dilate(const CategoricalImage& f, CategoryIndex i,
                        const StructuringElement& se, const ProtectionSpec& spec,
                        categorical::OpStats* stats = nullptr);

CategoricalImage erode(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, const ProtectionSpec& spec,
                       categorical::OpStats* stats = nullptr);

/// dilate(erode(f, erode_spec), dilate_spec).
CategoricalImage open(const CategoricalImage& f, CategoryIndex i,
                      const StructuringElement& se, const ProtectionSpec& erode_spec,
                      const ProtectionSpec& dilate_spec,
                      categorical::OpStats* stats = nullptr);
CategoricalImage open(const CategoricalImage& f, CategoryIndex i,
                      const StructuringElement& se, const ProtectionSpec& spec,
                      categorical::OpStats* stats = nullptr);

/// erode(dilate(f, dilate_spec), erode_spec).
CategoricalImage close(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, const ProtectionSpec& dilate_spec,
                       const ProtectionSpec& erode_spec,
                       categorical::OpStats* stats = nullptr);
CategoricalImage close(const CategoricalImage& f, CategoryIndex i,
                       const StructuringElement& se, const ProtectionSpec& spec,
                       categorical::OpStats* stats = nullptr);

/// Replacement weights at a pixel with f_J = 0 whose erosion frees mass.
/// r* is the smallest geodesic distance (on Omega_0) at which a pixel with
/// f_i < 1 - f_L(x) appears; each k in J gets max f_k over the geodesic
/// ball of radius r*. When that ball holds no J mass, r* grows to the
/// first distance that does. Entries outside J are 0. Throws ArgumentError
/// when f_J(x) > 0 or no J mass is reachable within the radius of `se`.
categorical::ThetaWeights theta(const CategoricalImage& f, CategoryIndex i,
                                std::size_t pixel, const StructuringElement& se,
                                const ProtectionSpec& spec);

/// The domain Omega_0 used by literal mode.
geodesic::DomainMask free_domain(const CategoricalImage& f, const ProtectionSpec& spec);

}  // namespace catmorph::protect
