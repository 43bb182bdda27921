#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "catmorph/catd.hpp"
#include "catmorph/categorical.hpp"
#include "catmorph/simplex.hpp"
#include "fixtures.hpp"

namespace catmorph {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("catmorph_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(CATMORPH_CLI_PATH) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>" + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const char* name) const { return (dir_ / name).string(); }

  std::string slurp(const char* name) const {
    std::ifstream in(dir_ / name);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

CategoricalImage sample() {
  return one_hot(LabelImage(Shape{3, 3}, 3, std::vector<Label>{0, 0, 1, 0, 0, 1, 2, 2, 1}), 3);
}

TEST_F(Cli, InfoAndValidate) {
  io::write_catd(sample(), path("in.catd"));
  EXPECT_EQ(run("info " + path("in.catd")), 0);
  EXPECT_NE(slurp("stdout.txt").find("categorical"), std::string::npos);
  EXPECT_EQ(run("validate " + path("in.catd")), 0);
}

TEST_F(Cli, MorphologyMatchesLibrary) {
  io::write_catd(sample(), path("in.catd"));
  EXPECT_EQ(run("dilate -i " + path("in.catd") + " -o " + path("out.catd") +
                " --category 0 --radius 1 --norm city-block"),
            0);
  EXPECT_EQ(io::read_categorical(path("out.catd")),
            categorical::dilate(sample(), CategoryIndex(0), StructuringElement::ball(1, Norm::city_block)));
  EXPECT_EQ(run("erode -i " + path("in.catd") + " -o " + path("p.catd") +
                " --category 0 --radius 2 --protect 2 --mode capacity"),
            0);
  EXPECT_EQ(io::read_categorical(path("p.catd")).channel(2), sample().channel(2));
}

TEST_F(Cli, UsageErrorsExitOne) {
  io::write_catd(sample(), path("in.catd"));
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("dilate -i " + path("in.catd")), 1);
  EXPECT_EQ(run("dilate -i " + path("in.catd") + " -o " + path("o.catd") + " --category 7"), 1);
  EXPECT_EQ(run("dilate -i " + path("in.catd") + " -o " + path("o.catd") +
                " --category 0 --protect 0"),
            1);
  EXPECT_EQ(run("render -i " + path("in.catd") + " -o " + path("o.png") + " --style sepia"), 1);
  std::ofstream(path("bad.spec")) << "dilate categorical category=0\nshrink categorical\n";
  EXPECT_EQ(run("pipeline -i " + path("in.catd") + " --spec " + path("bad.spec") + " --out " +
                path("o")),
            1);
  EXPECT_NE(slurp("stderr.txt").find("step 1"), std::string::npos) << slurp("stderr.txt");
}

TEST_F(Cli, DataErrorsExitTwo) {
  {
    std::ofstream out(path("junk.catd"), std::ios::binary);
    out << "JUNKJUNKJUNK";
  }
  EXPECT_EQ(run("info " + path("junk.catd")), 2);
  EXPECT_EQ(run("validate " + path("missing.catd")), 2);
  CategoricalImage bad = sample();
  bad.at(4, 0) = 0.5;
  io::write_catd(bad, path("bad.catd"));
  EXPECT_EQ(run("validate " + path("bad.catd")), 2);
  EXPECT_NE(slurp("stderr.txt").find("pixel 4"), std::string::npos) << slurp("stderr.txt");
  EXPECT_EQ(run("dilate -i " + path("bad.catd") + " -o " + path("o.catd") + " --category 0"), 2);
}

TEST_F(Cli, ConvertAndRender) {
  io::write_catd(sample(), path("in.catd"));
  EXPECT_EQ(run("render -i " + path("in.catd") + " -o " + path("argmax.png") +
                " --style argmax --palette ff0000,00ff00,0000ff"),
            0);
  EXPECT_EQ(run("convert --png-labels " + path("argmax.png") +
                " --palette ff0000,00ff00,0000ff -o " + path("back.catd")),
            0);
  EXPECT_EQ(io::read_categorical(path("back.catd")), sample());
  EXPECT_EQ(run("convert --png-labels " + path("argmax.png") + " --palette ff0000,00ff00 -o " +
                path("x.catd")),
            2);

  io::write_catd(DirichletImage(Shape{2}, 2, {1, 3, 2, 2}), path("alpha.catd"));
  EXPECT_EQ(run("convert --expectation " + path("alpha.catd") + " -o " + path("e.catd")), 0);
  EXPECT_EQ(io::read_categorical(path("e.catd")), CategoricalImage(Shape{2}, 2, {.25, .75, .5, .5}));
}

TEST_F(Cli, PipelineRecipes) {
  io::write_catd(testing::annotator_phantom(24), path("phantom.catd"));
  EXPECT_EQ(run("pipeline --recipe annotator-bias --active 0 --edema 2 --background 3 --radii 1,2 "
                "--print"),
            0);
  EXPECT_NE(slurp("stdout.txt").find("dilate categorical category=0 radius=1 norm=euclidean "
                                     "protect=2,3 from=input"),
            std::string::npos)
      << slurp("stdout.txt");
  EXPECT_EQ(run("pipeline -i " + path("phantom.catd") +
                " --recipe annotator-bias --active 0 --edema 2 --background 3 --radii 1,2 --out " +
                path("out") + " --palette ff0000,ffff00,00ff00,000000"),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "B2.png"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "log.json"));
  EXPECT_EQ(run("pipeline -i " + path("phantom.catd") + " --recipe denoise --category 0 --radius 1 --out " +
                path("den")),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "den" / "denoised.catd"));
}

}  // namespace
}  // namespace catmorph
