#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "catmorph/shape.hpp"

namespace catmorph {

/// Channel index of the category an operator acts on.
struct CategoryIndex {
  std::size_t value = 0;

  constexpr CategoryIndex() = default;
  constexpr explicit CategoryIndex(std::size_t v) : value(v) {}
  constexpr bool operator==(const CategoryIndex&) const = default;
};

/// Single-channel real-valued image.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(Shape shape, double fill = 0.0);
  ScalarField(Shape shape, std::vector<double> values);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t p) const noexcept { return values_[p]; }
  double& operator[](std::size_t p) noexcept { return values_[p]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool operator==(const ScalarField&) const = default;

 private:
  Shape shape_;
  std::vector<double> values_;
};

/// Dense pixel-major image of per-pixel vectors (channels innermost).
/// Shared storage for categorical and Dirichlet images.
class VectorImage {
 public:
  const Shape& shape() const noexcept { return shape_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept { return shape_.pixel_count(); }

  std::span<const double> pixel(std::size_t p) const noexcept {
    return {data_.data() + p * channels_, channels_};
  }
  std::span<double> pixel(std::size_t p) noexcept {
    return {data_.data() + p * channels_, channels_};
  }
  double at(std::size_t p, std::size_t k) const noexcept {
    return data_[p * channels_ + k];
  }
  double& at(std::size_t p, std::size_t k) noexcept {
    return data_[p * channels_ + k];
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  ScalarField channel(std::size_t k) const;
  void set_channel(std::size_t k, const ScalarField& field);

  bool operator==(const VectorImage&) const = default;

 protected:
  VectorImage() = default;
  VectorImage(Shape shape, std::size_t channels, std::vector<double> data,
              std::size_t min_channels);

  Shape shape_;
  std::size_t channels_ = 0;
  std::vector<double> data_;
};

/// Image whose pixels are categorical distributions (points of the
/// probability simplex). Construction only checks structure; use
/// validate() / checked() for the simplex invariant.
class CategoricalImage : public VectorImage {
 public:
  CategoricalImage() = default;
  CategoricalImage(Shape shape, std::size_t channels, std::vector<double> data);
  CategoricalImage(Shape shape, std::size_t channels);

  /// Constructs and throws DataError unless every pixel is on the simplex
  /// within `tol`.
  static CategoricalImage checked(Shape shape, std::size_t channels,
                                  std::vector<double> data, double tol = 1e-6);
  static CategoricalImage uniform(Shape shape, std::size_t channels);

  /// omega_k(p) = 1 - f_k(p).
  double complement(std::size_t p, std::size_t k) const noexcept {
    return 1.0 - at(p, k);
  }

  void require_category(CategoryIndex i) const;

  bool operator==(const CategoricalImage&) const = default;
};

/// Image of Dirichlet parameter vectors; every entry is finite and > 0.
class DirichletImage : public VectorImage {
 public:
  DirichletImage() = default;
  DirichletImage(Shape shape, std::size_t channels, std::vector<double> data);

  bool operator==(const DirichletImage&) const = default;
};

}  // namespace catmorph
