#include "catmorph/dirichlet.hpp"

#include <numeric>
#include <string>

#include "catmorph/error.hpp"
#include "catmorph/grayscale.hpp"

namespace catmorph::dirichlet {
namespace {

using ChannelOp = ScalarField (*)(const ScalarField&, const StructuringElement&,
                                  gray::Engine);

DirichletImage per_channel(const DirichletImage& f, const StructuringElement& se,
                           const CategorySet& subset, ChannelOp op) {
  for (std::size_t k : subset) {
    if (k >= f.channels()) {
      throw ArgumentError("subset category " + std::to_string(k) + " out of range");
    }
  }
  DirichletImage out = f;
  for (std::size_t k : subset) {
    out.set_channel(k, op(f.channel(k), se, gray::Engine::automatic));
  }
  return out;
}

CategorySet all_channels(const DirichletImage& f) {
  CategorySet s(f.channels());
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

}  // namespace

DirichletImage dilate_subset(const DirichletImage& f, const StructuringElement& se,
                             const CategorySet& subset) {
  return per_channel(f, se, subset, &gray::dilate);
}

DirichletImage erode_subset(const DirichletImage& f, const StructuringElement& se,
                            const CategorySet& subset) {
  return per_channel(f, se, subset, &gray::erode);
}

DirichletImage open_subset(const DirichletImage& f, const StructuringElement& se,
                           const CategorySet& subset) {
  return dilate_subset(erode_subset(f, se, subset), se, subset);
}

DirichletImage close_subset(const DirichletImage& f, const StructuringElement& se,
                            const CategorySet& subset) {
  return erode_subset(dilate_subset(f, se, subset), se, subset);
}

DirichletImage dilate(const DirichletImage& f, const StructuringElement& se) {
  return dilate_subset(f, se, all_channels(f));
}

DirichletImage erode(const DirichletImage& f, const StructuringElement& se) {
  return erode_subset(f, se, all_channels(f));
}

DirichletImage open(const DirichletImage& f, const StructuringElement& se) {
  return open_subset(f, se, all_channels(f));
}

DirichletImage close(const DirichletImage& f, const StructuringElement& se) {
  return close_subset(f, se, all_channels(f));
}

}  // namespace catmorph::dirichlet
