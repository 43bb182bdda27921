#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "catmorph/shape.hpp"

namespace catmorph {

using Label = std::int32_t;

/// "No category" and "conflicting categories" sentinels of label images.
inline constexpr Label kBottom = -1;
inline constexpr Label kTop = -2;

/// Crisp image with one category per pixel, optionally kBottom / kTop.
class LabelImage {
 public:
  LabelImage() = default;
  LabelImage(Shape shape, std::size_t categories, std::vector<Label> labels);
  LabelImage(Shape shape, std::size_t categories, Label fill);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t categories() const noexcept { return categories_; }
  std::size_t size() const noexcept { return labels_.size(); }

  Label operator[](std::size_t p) const noexcept { return labels_[p]; }
  Label& operator[](std::size_t p) noexcept { return labels_[p]; }
  std::span<const Label> labels() const noexcept { return labels_; }

  bool has_sentinels() const noexcept;

  bool operator==(const LabelImage&) const = default;

 private:
  Shape shape_;
  std::size_t categories_ = 0;
  std::vector<Label> labels_;
};

/// Bit set over at most 64 categories; bit k set means category k present.
using CategoryBits = std::uint64_t;
inline constexpr std::size_t kMaxSetCategories = 64;

/// Crisp image whose pixels are subsets of the category set.
class SetImage {
 public:
  SetImage() = default;
  SetImage(Shape shape, std::size_t categories, std::vector<CategoryBits> bits);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t categories() const noexcept { return categories_; }
  std::size_t size() const noexcept { return bits_.size(); }

  CategoryBits operator[](std::size_t p) const noexcept { return bits_[p]; }
  CategoryBits& operator[](std::size_t p) noexcept { return bits_[p]; }
  std::span<const CategoryBits> bits() const noexcept { return bits_; }

  bool operator==(const SetImage&) const = default;

 private:
  Shape shape_;
  std::size_t categories_ = 0;
  std::vector<CategoryBits> bits_;
};

}  // namespace catmorph
