#include "catmorph/grayscale.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "catmorph/error.hpp"
#include "catmorph/neighborhood.hpp"

namespace catmorph::gray {
namespace {

struct MaxOp {
  static constexpr double identity = -std::numeric_limits<double>::infinity();
  static double apply(double a, double b) noexcept { return a < b ? b : a; }
};

struct MinOp {
  static constexpr double identity = std::numeric_limits<double>::infinity();
  static double apply(double a, double b) noexcept { return b < a ? b : a; }
};

template <class Op>
ScalarField scan(const ScalarField& f, const StructuringElement& se) {
  const Neighborhood nb(f.shape(), se);
  ScalarField out(f.shape());
  for (std::size_t p = 0; p < f.size(); ++p) {
    double acc = Op::identity;
    bool any = false;
    nb.for_each(p, [&](std::size_t q) {
      acc = Op::apply(acc, f[q]);
      any = true;
    });
    if (!any) {
      throw DataError("empty neighborhood at pixel " + std::to_string(p) +
                      " (structuring element without origin)");
    }
    out[p] = acc;
  }
  return out;
}

// Sliding extremum of half-width `reach` over `line`, clipped at both ends.
// van Herk/Gil-Werman: constant work per sample regardless of the window.
template <class Op>
void sliding_line(std::vector<double>& line, std::size_t reach,
                  std::vector<double>& forward, std::vector<double>& backward) {
  const std::size_t n = line.size();
  const std::size_t w = 2 * reach + 1;
  const std::size_t padded = n + 2 * reach;
  const std::size_t blocks = (padded + w - 1) / w;
  const std::size_t len = blocks * w;
  forward.assign(len, Op::identity);
  backward.assign(len, Op::identity);
  auto value = [&](std::size_t j) {
    return (j >= reach && j < reach + n) ? line[j - reach] : Op::identity;
  };
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t start = b * w;
    forward[start] = value(start);
    for (std::size_t j = start + 1; j < start + w; ++j) {
      forward[j] = Op::apply(forward[j - 1], value(j));
    }
    backward[start + w - 1] = value(start + w - 1);
    for (std::size_t j = start + w - 1; j-- > start;) {
      backward[j] = Op::apply(backward[j + 1], value(j));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    line[x] = Op::apply(backward[x], forward[x + w - 1]);
  }
}

template <class Op>
ScalarField separable_box(const ScalarField& f, std::size_t reach) {
  ScalarField out = f;
  const Shape& shape = f.shape();
  std::vector<double> line, fwd, bwd;
  for (std::size_t axis = 0; axis < shape.rank(); ++axis) {
    const std::size_t n = shape.extent(axis);
    if (n == 1) continue;
    std::size_t stride = 1;
    for (std::size_t a = axis + 1; a < shape.rank(); ++a) stride *= shape.extent(a);
    const std::size_t outer = shape.pixel_count() / (n * stride);
    line.resize(n);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t s = 0; s < stride; ++s) {
        const std::size_t base = o * n * stride + s;
        for (std::size_t x = 0; x < n; ++x) line[x] = out[base + x * stride];
        sliding_line<Op>(line, reach, fwd, bwd);
        for (std::size_t x = 0; x < n; ++x) out[base + x * stride] = line[x];
      }
    }
  }
  return out;
}

template <class Op>
ScalarField apply(const ScalarField& f, const StructuringElement& se, Engine engine) {
  if (engine == Engine::automatic && se.is_ball() && se.norm() == Norm::chessboard) {
    const auto reach = static_cast<std::size_t>(std::floor(se.radius() + kBallSlack));
    return separable_box<Op>(f, reach);
  }
  return scan<Op>(f, se);
}

}  // namespace

ScalarField dilate(const ScalarField& f, const StructuringElement& se, Engine engine) {
  return apply<MaxOp>(f, se, engine);
}

ScalarField erode(const ScalarField& f, const StructuringElement& se, Engine engine) {
  return apply<MinOp>(f, se, engine);
}

ScalarField open(const ScalarField& f, const StructuringElement& se, Engine engine) {
  return dilate(erode(f, se, engine), se, engine);
}

ScalarField close(const ScalarField& f, const StructuringElement& se, Engine engine) {
  return erode(dilate(f, se, engine), se, engine);
}

}  // namespace catmorph::gray
