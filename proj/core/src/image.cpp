#include "catmorph/image.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "catmorph/error.hpp"
#include "catmorph/simplex.hpp"

namespace catmorph {

ScalarField::ScalarField(Shape shape, double fill)
    : shape_(std::move(shape)), values_(shape_.pixel_count(), fill) {}

ScalarField::ScalarField(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != shape_.pixel_count()) {
    throw ArgumentError("scalar field has " + std::to_string(values_.size()) +
                        " values for shape " + shape_.to_string());
  }
}

VectorImage::VectorImage(Shape shape, std::size_t channels,
                         std::vector<double> data, std::size_t min_channels)
    : shape_(std::move(shape)), channels_(channels), data_(std::move(data)) {
  if (shape_.rank() == 0) throw ArgumentError("image shape is empty");
  if (channels_ < min_channels) {
    throw ArgumentError("image needs at least " + std::to_string(min_channels) +
                        " channels, got " + std::to_string(channels_));
  }
  if (data_.size() != shape_.pixel_count() * channels_) {
    throw ArgumentError("image data has " + std::to_string(data_.size()) +
                        " entries, expected " +
                        std::to_string(shape_.pixel_count() * channels_));
  }
}

ScalarField VectorImage::channel(std::size_t k) const {
  if (k >= channels_) throw ArgumentError("channel index out of range");
  ScalarField out(shape_);
  for (std::size_t p = 0; p < pixel_count(); ++p) out[p] = at(p, k);
  return out;
}

void VectorImage::set_channel(std::size_t k, const ScalarField& field) {
  if (k >= channels_) throw ArgumentError("channel index out of range");
  if (!(field.shape() == shape_)) throw ArgumentError("channel shape mismatch");
  for (std::size_t p = 0; p < pixel_count(); ++p) at(p, k) = field[p];
}

CategoricalImage::CategoricalImage(Shape shape, std::size_t channels,
                                   std::vector<double> data)
    : VectorImage(std::move(shape), channels, std::move(data), 2) {}

CategoricalImage::CategoricalImage(Shape shape, std::size_t channels)
    : VectorImage(shape, channels,
                  std::vector<double>(shape.pixel_count() * channels, 0.0), 2) {}

CategoricalImage CategoricalImage::checked(Shape shape, std::size_t channels,
                                           std::vector<double> data, double tol) {
  CategoricalImage img(std::move(shape), channels, std::move(data));
  if (auto bad = validate(img, tol)) {
    throw DataError("pixel " + std::to_string(bad->pixel) +
                    " is off the probability simplex (defect " +
                    std::to_string(bad->defect) + ")");
  }
  return img;
}

CategoricalImage CategoricalImage::uniform(Shape shape, std::size_t channels) {
  const std::size_t n = shape.pixel_count() * channels;
  return CategoricalImage(std::move(shape), channels,
                          std::vector<double>(n, 1.0 / static_cast<double>(channels)));
}

void CategoricalImage::require_category(CategoryIndex i) const {
  if (i.value >= channels_) {
    throw ArgumentError("category " + std::to_string(i.value) +
                        " out of range for " + std::to_string(channels_) +
                        " channels");
  }
}

DirichletImage::DirichletImage(Shape shape, std::size_t channels,
                               std::vector<double> data)
    : VectorImage(std::move(shape), channels, std::move(data), 2) {
  for (std::size_t j = 0; j < data_.size(); ++j) {
    const double a = data_[j];
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw DataError("Dirichlet parameter at pixel " +
                      std::to_string(j / channels_) + " channel " +
                      std::to_string(j % channels_) +
                      " is not finite and positive");
    }
  }
}

}  // namespace catmorph
