// catmorph command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data or invariant error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catmorph/catd.hpp"
#include "catmorph/error.hpp"
#include "catmorph/pipeline.hpp"
#include "catmorph/raster.hpp"
#include "catmorph/simplex.hpp"

namespace {

using namespace catmorph;

constexpr int kUsage = 1;
constexpr int kData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MorphArgs {
  std::string input;
  std::string output;
  std::string backend = "categorical";
  std::optional<std::size_t> category;
  std::vector<std::size_t> subset;
  double radius = 1.0;
  std::string norm = "euclidean";
  std::vector<std::size_t> protect;
  std::string mode = "literal";
  std::vector<Label> ranking;
};

void add_morph_options(CLI::App* cmd, MorphArgs& a) {
  cmd->add_option("-i,--input", a.input, "input CATD file")->required();
  cmd->add_option("-o,--output", a.output, "output CATD file")->required();
  cmd->add_option("--backend", a.backend,
                  "categorical | dirichlet | dirichlet-subset | nary | set | label")
      ->capture_default_str();
  cmd->add_option("--category", a.category, "operated category index");
  cmd->add_option("--subset", a.subset, "categories for dirichlet-subset")->delimiter(',');
  cmd->add_option("--radius", a.radius, "ball radius")->capture_default_str();
  cmd->add_option("--norm", a.norm, "euclidean | city-block | chessboard")
      ->capture_default_str();
  cmd->add_option("--protect", a.protect, "protected categories")->delimiter(',');
  cmd->add_option("--mode", a.mode, "literal | capacity")->capture_default_str();
  cmd->add_option("--ranking", a.ranking, "n-ary erosion tie ranking")->delimiter(',');
}

pipeline::Spec single_step(std::string_view op, const MorphArgs& a) {
  std::string line = std::string(op) + " " + a.backend;
  pipeline::Spec spec;
  try {
    spec = pipeline::parse(line);
  } catch (const pipeline::PipelineError& e) {
    throw UsageError(e.what());
  }
  pipeline::Step& s = spec.steps.front();
  s.category = a.category;
  s.subset = a.subset;
  s.radius = a.radius;
  s.norm = parse_norm(a.norm);
  s.protect = a.protect;
  s.mode = protect::parse_mode(a.mode);
  s.ranking = a.ranking;
  return spec;
}

io::AnyImage run_checked(const pipeline::Spec& spec, const io::AnyImage& input) {
  try {
    pipeline::check(spec, input);
  } catch (const pipeline::PipelineError& e) {
    throw UsageError(e.what());
  }
  return pipeline::run(spec, input).output;
}

int cmd_info(const std::string& path) {
  const io::AnyImage img = io::read_catd(path);
  static constexpr const char* kinds[] = {"categorical", "dirichlet", "scalar"};
  std::cout << "kind: " << kinds[static_cast<int>(io::kind_of(img))] << '\n'
            << "shape: " << io::shape_of(img).to_string() << '\n'
            << "channels: " << io::channels_of(img) << '\n';
  return 0;
}

int cmd_validate(const std::string& path, double tol) {
  const io::AnyImage img = io::read_catd(path);
  if (const auto* cat = std::get_if<CategoricalImage>(&img)) {
    if (auto bad = validate(*cat, tol)) {
      std::cout << "invalid: pixel " << bad->pixel << " defect " << bad->defect << '\n';
      return kData;
    }
  }
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morphology on images of categorical distributions"};
  app.require_subcommand(1);

  std::string info_path;
  auto* info = app.add_subcommand("info", "print the header of a CATD file");
  info->add_option("file", info_path)->required();

  std::string validate_path;
  double validate_tol = kSimplexTolerance;
  auto* validate_cmd = app.add_subcommand("validate", "check a CATD file's invariants");
  validate_cmd->add_option("file", validate_path)->required();
  validate_cmd->add_option("--tol", validate_tol)->capture_default_str();

  std::string png_labels, palette_text, expectation_path, convert_out;
  auto* convert = app.add_subcommand("convert", "convert to CATD");
  auto* png_opt = convert->add_option("--png-labels", png_labels, "PNG label image");
  convert->add_option("--palette", palette_text, "category colors, e.g. ff0000,00ff00");
  auto* exp_opt =
      convert->add_option("--expectation", expectation_path, "Dirichlet CATD to project");
  png_opt->excludes(exp_opt);
  convert->add_option("-o,--output", convert_out)->required();

  MorphArgs morph_args;
  std::string morph_op;
  for (const char* op : {"dilate", "erode", "open", "close"}) {
    auto* cmd = app.add_subcommand(op, std::string(op) + " one category");
    add_morph_options(cmd, morph_args);
    cmd->callback([&morph_op, op] { morph_op = op; });
  }

  std::string render_in, render_out, render_style = "rgb-mixture", render_palette;
  auto* render = app.add_subcommand("render", "render a CATD file as PNG");
  render->add_option("-i,--input", render_in)->required();
  render->add_option("-o,--output", render_out)->required();
  render->add_option("--style", render_style, "rgb-mixture | entropy | magnitude | argmax")
      ->capture_default_str();
  render->add_option("--palette", render_palette);

  std::string pipe_in, pipe_spec, pipe_recipe, pipe_out, pipe_palette;
  std::size_t recipe_category = 0, active = 0, edema = 0, background = 0;
  double recipe_radius = 1.0;
  std::string recipe_norm = "euclidean";
  std::vector<double> radii{1, 2, 3};
  bool print_only = false;
  auto* pipe = app.add_subcommand("pipeline", "run a pipeline spec or built-in recipe");
  pipe->add_option("-i,--input", pipe_in);
  auto* spec_opt = pipe->add_option("--spec", pipe_spec, "pipeline spec file");
  auto* recipe_opt =
      pipe->add_option("--recipe", pipe_recipe, "denoise | annotator-bias");
  spec_opt->excludes(recipe_opt);
  pipe->add_option("--out", pipe_out, "output directory");
  pipe->add_option("--palette", pipe_palette, "also render taps as PNG");
  pipe->add_option("--category", recipe_category, "denoise: category to open");
  pipe->add_option("--radius", recipe_radius, "denoise: radius");
  pipe->add_option("--norm", recipe_norm, "denoise: norm");
  pipe->add_option("--active", active, "annotator-bias: active core category");
  pipe->add_option("--edema", edema, "annotator-bias: edema category");
  pipe->add_option("--background", background, "annotator-bias: background category");
  pipe->add_option("--radii", radii, "annotator-bias: radii")->delimiter(',');
  pipe->add_flag("--print", print_only, "print the canonical spec and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (info->parsed()) return cmd_info(info_path);
    if (validate_cmd->parsed()) return cmd_validate(validate_path, validate_tol);

    if (convert->parsed()) {
      if (!png_labels.empty()) {
        if (palette_text.empty()) throw UsageError("--png-labels needs --palette");
        io::write_catd(io::import_png_labels(png_labels, io::parse_palette(palette_text)),
                       convert_out);
      } else if (!expectation_path.empty()) {
        const io::AnyImage img = io::read_catd(expectation_path);
        const auto* alpha = std::get_if<DirichletImage>(&img);
        if (!alpha) throw DataError(expectation_path + " does not hold a Dirichlet image");
        io::write_catd(dirichlet_expectation(*alpha), convert_out);
      } else {
        throw UsageError("convert needs --png-labels or --expectation");
      }
      return 0;
    }

    if (!morph_op.empty()) {
      const pipeline::Spec spec = single_step(morph_op, morph_args);
      io::write_catd(run_checked(spec, io::read_catd(morph_args.input)), morph_args.output);
      return 0;
    }

    if (render->parsed()) {
      const io::RenderStyle style = io::parse_render_style(render_style);
      const io::Palette palette =
          render_palette.empty() ? io::Palette{} : io::parse_palette(render_palette);
      const io::AnyImage img = io::read_catd(render_in);
      io::RgbRaster raster;
      if (const auto* cat = std::get_if<CategoricalImage>(&img)) {
        raster = io::render(*cat, style, palette);
      } else if (const auto* alpha = std::get_if<DirichletImage>(&img)) {
        raster = io::render(*alpha, style, palette);
      } else {
        throw UsageError("scalar CATD files cannot be rendered");
      }
      io::write_png(raster, render_out);
      return 0;
    }

    if (pipe->parsed()) {
      pipeline::Spec spec;
      if (!pipe_spec.empty()) {
        try {
          spec = pipeline::parse_file(pipe_spec);
        } catch (const pipeline::PipelineError& e) {
          throw UsageError(e.what());
        }
      } else if (pipe_recipe == "denoise") {
        spec = pipeline::denoise_recipe(recipe_category, recipe_radius, parse_norm(recipe_norm));
      } else if (pipe_recipe == "annotator-bias") {
        spec = pipeline::annotator_bias_recipe(active, edema, background, radii);
      } else {
        throw UsageError("pipeline needs --spec or --recipe denoise|annotator-bias");
      }
      if (print_only) {
        std::cout << pipeline::canonical(spec);
        return 0;
      }
      if (pipe_in.empty() || pipe_out.empty()) {
        throw UsageError("pipeline needs --input and --out");
      }
      const io::AnyImage input = io::read_catd(pipe_in);
      try {
        pipeline::check(spec, input);
      } catch (const pipeline::PipelineError& e) {
        throw UsageError(e.what());
      }
      pipeline::OutputOptions options;
      if (!pipe_palette.empty()) options.palette = io::parse_palette(pipe_palette);
      const auto result = pipeline::run_to_directory(spec, input, pipe_out, options);
      for (const auto& entry : result.log) {
        std::printf("step %zu  %-60s drift %.3g  %.3fs\n", entry.index, entry.step.c_str(),
                    entry.renormalization_drift, entry.seconds);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "catmorph: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "catmorph: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "catmorph: " << e.what() << '\n';
    return kData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "catmorph: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
