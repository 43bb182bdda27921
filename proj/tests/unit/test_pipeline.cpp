#include <gtest/gtest.h>

#include <fstream>

#include "catmorph/categorical.hpp"
#include "catmorph/pipeline.hpp"
#include "catmorph/simplex.hpp"
#include "fixtures.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace catmorph {
namespace {

using namespace pipeline;

std::vector<bool> is_label(const LabelImage& labels, Label k) {
  std::vector<bool> out(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) out[p] = labels[p] == k;
  return out;
}

std::size_t count_label(const CategoricalImage& f, Label k) {
  const auto labels = argmax_labels(f);
  return static_cast<std::size_t>(std::count(labels.labels().begin(), labels.labels().end(), k));
}

TEST(PipelineText, CanonicalRoundTrip) {
  const std::string text =
      "# clean the first class\n"
      "open categorical category=0 radius=2 norm=euclidean tap=clean\n"
      "\n"
      "dilate categorical category=1 radius=1.5 norm=chessboard protect=2,3 mode=capacity\n"
      "erode nary category=1 radius=1 norm=city-block ranking=2,0 from=clean\n"
      "close dirichlet-subset subset=0,2 radius=3 norm=euclidean\n"
      "dilate set radius=1 norm=euclidean\n"
      "erode label radius=1 norm=euclidean tap=last\n";
  const Spec spec = parse(text);
  ASSERT_EQ(spec.steps.size(), 6u);
  EXPECT_EQ(spec.steps[1].mode, protect::Mode::capacity);
  EXPECT_EQ(spec.steps[2].from, "clean");
  EXPECT_EQ(parse(canonical(spec)), spec);
  EXPECT_EQ(canonical(parse(canonical(spec))), canonical(spec));
  EXPECT_EQ(canonical(spec.steps[0]), "open categorical category=0 radius=2 norm=euclidean tap=clean");
}

TEST(PipelineText, DefaultsArePrinted) {
  const Spec spec = parse("dilate categorical category=1");
  EXPECT_EQ(canonical(spec), "dilate categorical category=1 radius=1 norm=euclidean\n");
}

TEST(PipelineText, ErrorsCarryStepIndex) {
  auto step_of = [](const std::string& text) -> long {
    try {
      parse(text);
    } catch (const PipelineError& e) {
      return static_cast<long>(e.step());
    }
    return -1;
  };
  EXPECT_EQ(step_of("dilate categorical category=0\nshrink categorical\n"), 1);
  EXPECT_EQ(step_of("# c\ndilate categorical category=0\n\nerode magic category=0\n"), 1);
  EXPECT_EQ(step_of("dilate categorical radius=abc"), 0);
  EXPECT_EQ(step_of("dilate categorical colour=1"), 0);
  EXPECT_EQ(step_of("dilate categorical radius=1 radius=2"), 0);
  EXPECT_EQ(step_of("dilate categorical norm=hex"), 0);
}

TEST(PipelineRun, EmptyPipelineIsIdentity) {
  testing::Rng rng(91);
  const auto f = testing::random_categorical(rng, Shape{5, 5}, 3);
  const Result r = run(Spec{}, f);
  EXPECT_EQ(std::get<CategoricalImage>(r.output), f);
  EXPECT_TRUE(r.taps.empty());
}

TEST(PipelineRun, CheckRejectsFirstInvalidStep) {
  const auto f = CategoricalImage::uniform(Shape{4, 4}, 3);
  auto step_of = [&](const std::string& text) -> long {
    try {
      run(parse(text), f);
    } catch (const PipelineError& e) {
      return static_cast<long>(e.step());
    }
    return -1;
  };
  EXPECT_EQ(step_of("dilate categorical category=0\nerode categorical category=3\n"), 1);
  EXPECT_EQ(step_of("dilate categorical category=0 protect=0"), 0);
  EXPECT_EQ(step_of("dilate dirichlet"), 0);
  EXPECT_EQ(step_of("dilate categorical category=0 radius=0"), 0);
  EXPECT_EQ(step_of("dilate categorical category=0 from=nowhere"), 0);
  EXPECT_EQ(step_of("dilate categorical category=0 tap=a\ndilate categorical category=0 tap=a"), 1);
  EXPECT_EQ(step_of("dilate categorical"), 0);
  const DirichletImage d(Shape{2}, 2, {1, 2, 3, 4});
  EXPECT_THROW(run(parse("dilate categorical category=0"), d), PipelineError);
}

TEST(PipelineRun, RuntimeFailureNamesStep) {
  // Two-pixel ties without a ranking are ambiguous for the n-ary backend
  // but are mapped to uniform pixels rather than aborting.
  const auto f = one_hot(LabelImage(Shape{3}, 3, std::vector<Label>{1, 0, 2}), 3);
  const Result r = run(parse("erode nary category=0 radius=1 norm=city-block"), f);
  const auto& out = std::get<CategoricalImage>(r.output);
  EXPECT_DOUBLE_EQ(out.at(1, 0), 1.0 / 3.0);
  EXPECT_EQ(r.log[0].ambiguous_pixels, 1u);
  const auto ranked = run(parse("erode nary category=0 radius=1 norm=city-block ranking=2"), f);
  EXPECT_EQ(std::get<CategoricalImage>(ranked.output).at(1, 2), 1.0);
}

TEST(PipelineRun, BackendsMatchDirectCalls) {
  testing::Rng rng(92);
  const auto f = testing::random_categorical(rng, Shape{8, 8}, 3);
  const auto se = StructuringElement::ball(2, Norm::chessboard);
  const Result r = run(parse("close categorical category=2 radius=2 norm=chessboard tap=x"), f);
  EXPECT_EQ(std::get<CategoricalImage>(r.output), categorical::close(f, CategoryIndex(2), se));
  ASSERT_EQ(r.taps.size(), 1u);
  EXPECT_EQ(r.taps[0].first, "x");

  const auto d = testing::random_dirichlet(rng, Shape{6, 6}, 3);
  const Result rd = run(parse("dilate dirichlet-subset subset=1 radius=1"), d);
  const auto& out = std::get<DirichletImage>(rd.output);
  EXPECT_EQ(out.channel(0), d.channel(0));
  EXPECT_NE(out.channel(1), d.channel(1));
}

TEST(PipelineRun, FromInputRestartsChain) {
  const auto f = one_hot(LabelImage(Shape{5}, 2, std::vector<Label>{1, 1, 0, 1, 1}), 2);
  const Result r = run(parse("dilate categorical category=0 radius=1 tap=a\n"
                             "dilate categorical category=0 radius=1 from=input tap=b\n"),
                       f);
  EXPECT_EQ(r.taps[0].second, r.taps[1].second);
}

TEST(Recipes, DenoiseRemovesSpecks) {
  testing::Rng rng(93);
  const auto scene = testing::noisy_blobs(rng);
  ASSERT_GT(scene.noise, 0u);
  const auto before = argmax_labels(scene.image);
  EXPECT_EQ(oracle::count_components(before.shape(), is_label(before, 0), true),
            scene.regions + scene.noise);
  const Result r = run(denoise_recipe(0, 2.0), scene.image);
  const auto after = argmax_labels(std::get<CategoricalImage>(r.output));
  EXPECT_EQ(oracle::count_components(after.shape(), is_label(after, 0), true), scene.regions);
  EXPECT_EQ(r.taps.at(0).first, "denoised");
}

TEST(Recipes, AnnotatorBiasGrowsActiveAndKeepsBackground) {
  const auto f = testing::annotator_phantom();
  const Spec spec = annotator_bias_recipe(0, 2, 3);
  EXPECT_EQ(spec.steps.size(), 6u);
  const Result r = run(spec, f);
  ASSERT_EQ(r.taps.size(), 3u);
  std::size_t previous = count_label(f, 0);
  for (const auto& [name, img] : r.taps) {
    const auto& g = std::get<CategoricalImage>(img);
    EXPECT_EQ(g.channel(3), f.channel(3)) << name;
    const std::size_t active = count_label(g, 0);
    EXPECT_GT(active, previous) << name;
    previous = active;
  }
  EXPECT_EQ(r.taps[0].first, "B1");
  EXPECT_EQ(r.taps[2].first, "B3");
}

TEST(PipelineOutput, WritesTapsAndLog) {
  const auto dir = std::filesystem::temp_directory_path() / "catmorph_test_pipeline";
  std::filesystem::remove_all(dir);
  const auto f = testing::annotator_phantom(24);
  OutputOptions opts;
  opts.palette = io::parse_palette("ff0000,ffff00,00ff00,000000");
  run_to_directory(annotator_bias_recipe(0, 2, 3, {1, 2}), f, dir, opts);
  for (const char* name : {"B1.catd", "B2.catd", "output.catd", "B1.png", "output.png", "log.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  EXPECT_EQ(io::read_categorical(dir / "B2.catd").channel(3),
            io::read_categorical(dir / "output.catd").channel(3));

  std::ifstream in(dir / "log.json");
  const auto log = nlohmann::json::parse(in);
  ASSERT_EQ(log["steps"].size(), 4u);
  for (const auto& s : log["steps"]) EXPECT_LE(s["renormalization_drift"].get<double>(), 1e-9);
  EXPECT_EQ(log["input"]["channels"], 4);
  EXPECT_EQ(log["taps"][1], "B2.catd");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace catmorph
