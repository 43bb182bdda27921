#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "catmorph/catd.hpp"
#include "generators.hpp"

namespace catmorph {
namespace {

using namespace io;

template <class Img>
Img float_rounded(Img img) {
  if constexpr (std::is_same_v<Img, ScalarField>) {
    for (double& v : img.values()) v = static_cast<float>(v);
  } else {
    for (double& v : img.data()) v = static_cast<float>(v);
  }
  return img;
}

std::string bytes_of(const AnyImage& img) {
  std::ostringstream out;
  write_catd(img, out);
  return out.str();
}

AnyImage parse(const std::string& bytes) {
  std::istringstream in(bytes);
  return read_catd(in);
}

CatdError error_of(const std::string& bytes) {
  try {
    parse(bytes);
  } catch (const CatdError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a CATD error";
  return CatdError(CatdErrc::io_failure, 0, "none");
}

void put_u32(std::string& bytes, std::size_t at, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) bytes[at + b] = static_cast<char>((v >> (8 * b)) & 0xff);
}

TEST(Catd, HeaderLayoutIsLittleEndian) {
  const CategoricalImage f(Shape{2, 3}, 2, std::vector<double>(12, 0.5));
  const std::string b = bytes_of(f);
  ASSERT_EQ(b.size(), 4 + 4 + 4 + 4 + 8 + 4 + 12 * 4u);
  EXPECT_EQ(b.substr(0, 4), "CATD");
  const unsigned char expect[] = {1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0, 2, 0, 0, 0};
  EXPECT_EQ(std::memcmp(b.data() + 4, expect, sizeof expect), 0);
  const unsigned char half[] = {0x00, 0x00, 0x00, 0x3f};
  EXPECT_EQ(std::memcmp(b.data() + 28, half, 4), 0);
}

TEST(Catd, RoundTripsEveryKind) {
  testing::Rng rng(71);
  for (int t = 0; t < 10; ++t) {
    const Shape shape = t % 3 == 0 ? Shape{7} : t % 3 == 1 ? Shape{4, 5} : Shape{3, 2, 4};
    const std::vector<AnyImage> images{
        float_rounded(testing::random_categorical(rng, shape, 2 + t % 4)),
        float_rounded(testing::random_dirichlet(rng, shape, 3)),
        float_rounded(testing::random_field(rng, shape))};
    for (const AnyImage& img : images) {
      const std::string b = bytes_of(img);
      const AnyImage back = parse(b);
      EXPECT_EQ(back, img);
      EXPECT_EQ(bytes_of(back), b);
    }
  }
}

TEST(Catd, RoundTripsThroughFiles) {
  testing::Rng rng(72);
  const auto f = float_rounded(testing::random_categorical(rng, Shape{6, 6}, 3));
  const auto path = std::filesystem::temp_directory_path() / "catmorph_test_roundtrip.catd";
  write_catd(f, path);
  EXPECT_EQ(read_categorical(path), f);
  write_catd(float_rounded(testing::random_field(rng, Shape{3})), path);
  EXPECT_THROW(read_categorical(path), DataError);
  std::filesystem::remove(path);
  EXPECT_EQ(error_of("").code(), CatdErrc::bad_header);
  try {
    read_catd(path);
    FAIL();
  } catch (const CatdError& e) {
    EXPECT_EQ(e.code(), CatdErrc::io_failure);
  }
}

TEST(Catd, BadMagicAtOffsetZero) {
  std::string b = bytes_of(CategoricalImage::uniform(Shape{2}, 2));
  b[1] = 'X';
  const auto e = error_of(b);
  EXPECT_EQ(e.code(), CatdErrc::bad_magic);
  EXPECT_EQ(e.offset(), 0u);
  EXPECT_NE(std::string(e.what()).find("offset 0"), std::string::npos);
}

TEST(Catd, UnsupportedVersionAndKind) {
  std::string b = bytes_of(CategoricalImage::uniform(Shape{2}, 2));
  std::string v = b;
  put_u32(v, 4, 2);
  EXPECT_EQ(error_of(v).code(), CatdErrc::unsupported_version);
  EXPECT_EQ(error_of(v).offset(), 4u);
  put_u32(b, 8, 7);
  EXPECT_EQ(error_of(b).code(), CatdErrc::bad_kind);
}

TEST(Catd, TruncatedAndInconsistentHeaders) {
  const std::string b = bytes_of(CategoricalImage::uniform(Shape{2, 2}, 3));
  const auto e = error_of(b.substr(0, 18));
  EXPECT_EQ(e.code(), CatdErrc::bad_header);
  EXPECT_EQ(e.offset(), 16u);
  std::string zero = b;
  put_u32(zero, 20, 0);
  EXPECT_EQ(error_of(zero).code(), CatdErrc::bad_header);
  std::string rank = b;
  put_u32(rank, 12, 4);
  EXPECT_EQ(error_of(rank).offset(), 12u);
  std::string scalar_channels = bytes_of(ScalarField(Shape{2}, 1.0));
  put_u32(scalar_channels, 20, 2);
  EXPECT_EQ(error_of(scalar_channels).code(), CatdErrc::bad_header);
}

TEST(Catd, PayloadMismatchNamesByteCounts) {
  const std::string b = bytes_of(CategoricalImage::uniform(Shape{2, 2}, 3));
  const auto e = error_of(b.substr(0, b.size() - 3));
  EXPECT_EQ(e.code(), CatdErrc::payload_size_mismatch);
  const std::string msg = e.what();
  EXPECT_NE(msg.find("45"), std::string::npos) << msg;
  EXPECT_NE(msg.find("48"), std::string::npos) << msg;
  EXPECT_EQ(error_of(b + "x").code(), CatdErrc::payload_size_mismatch);
}

TEST(Catd, InvariantViolationNamesPixel) {
  CategoricalImage f = CategoricalImage::uniform(Shape{4}, 2);
  f.at(2, 0) = 0.9;
  const auto e = error_of(bytes_of(f));
  EXPECT_EQ(e.code(), CatdErrc::invariant_violation);
  EXPECT_EQ(e.offset(), 2u);

  std::string d = bytes_of(DirichletImage(Shape{3}, 2, std::vector<double>(6, 1.0)));
  put_u32(d, 20 + 4 * 3, 0);
  const auto de = error_of(d);
  EXPECT_EQ(de.code(), CatdErrc::invariant_violation);
  EXPECT_EQ(de.offset(), 1u);
}

}  // namespace
}  // namespace catmorph
