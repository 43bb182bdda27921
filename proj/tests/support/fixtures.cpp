#include "fixtures.hpp"

#include <cmath>

namespace catmorph::testing {
namespace {

void soft(Rng& rng, CategoricalImage& f, std::size_t p, std::size_t k) {
  std::uniform_real_distribution<double> main(0.6, 0.9);
  std::uniform_real_distribution<double> split(0.0, 1.0);
  const double m = main(rng);
  const double s = split(rng);
  std::size_t slot = 0;
  for (std::size_t c = 0; c < f.channels(); ++c) {
    if (c == k) {
      f.at(p, c) = m;
    } else {
      f.at(p, c) = (1.0 - m) * (slot++ == 0 ? s : 1.0 - s);
    }
  }
}

}  // namespace

BlobScene noisy_blobs(Rng& rng, std::size_t side) {
  BlobScene scene;
  const Shape shape{side, side};
  std::vector<std::size_t> label(shape.pixel_count(), 2);
  for (std::size_t p = 0; p < label.size(); ++p)
    if (shape.coord(p)[1] < static_cast<std::ptrdiff_t>(side / 4)) label[p] = 1;

  auto fill = [&](std::size_t r0, std::size_t c0, std::size_t n) {
    for (std::size_t r = r0; r < r0 + n; ++r)
      for (std::size_t c = c0; c < c0 + n; ++c) label[r * side + c] = 0;
  };
  fill(4, 14, 7);
  fill(side - 12, side - 12, 6);
  fill(side - 14, 4, 5);
  scene.regions = 3;

  // Specks on a coarse lattice, kept 3 pixels from the squares and each other.
  std::bernoulli_distribution speck(0.5);
  for (std::size_t r = 2; r + 2 < side; r += 4) {
    for (std::size_t c = 2; c + 2 < side; c += 4) {
      bool clear = true;
      for (std::size_t rr = r - 2; rr <= r + 2; ++rr)
        for (std::size_t cc = c - 2; cc <= c + 2; ++cc) clear = clear && label[rr * side + cc] != 0;
      if (clear && speck(rng)) {
        label[r * side + c] = 0;
        ++scene.noise;
      }
    }
  }
  scene.image = CategoricalImage(shape, 3);
  for (std::size_t p = 0; p < label.size(); ++p) soft(rng, scene.image, p, label[p]);
  return scene;
}

CategoricalImage annotator_phantom(std::size_t side) {
  const Shape shape{side, side};
  CategoricalImage f(shape, 4);
  const double centre = (static_cast<double>(side) - 1.0) / 2.0;
  const double bounds[3] = {4.0, 13.0, 16.0};
  for (std::size_t p = 0; p < f.pixel_count(); ++p) {
    const Coord c = shape.coord(p);
    const double d = std::hypot(c[0] - centre, c[1] - centre);
    std::size_t k = 3;
    for (std::size_t b = 0; b < 3; ++b) {
      if (d <= bounds[b]) {
        k = b;
        break;
      }
    }
    // Within half a pixel of a boundary the two classes share the pixel.
    const double edge = k < 3 ? bounds[k] - d : d - bounds[2];
    if (edge < 0.5 && k < 3) {
      const double w = 0.5 + edge;
      f.at(p, k) = w;
      f.at(p, k + 1) = 1.0 - w;
    } else {
      f.at(p, k) = 1.0;
    }
  }
  return f;
}

}  // namespace catmorph::testing
