#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catmorph/catd.hpp"
#include "catmorph/crisp.hpp"
#include "catmorph/error.hpp"
#include "catmorph/protected.hpp"
#include "catmorph/raster.hpp"
#include "catmorph/structuring_element.hpp"

/// Declarative sequences of morphology steps.
///
/// Text form, one step per line ('#' starts a comment):
///
///     <op> <backend> [key=value ...]
///
///     op       dilate | erode | open | close
///     backend  categorical | dirichlet | dirichlet-subset | nary | set | label
///     keys     category=<k>  subset=<k,k,..>  radius=<r>  norm=<norm>
///              protect=<k,k,..>  mode=literal|capacity  ranking=<k,k,..>
///              from=input|<tap>  tap=<name>
///
/// A step reads the previous step's result, or `from`. Crisp backends
/// (nary, set, label) work on the argmax labels or the support sets and
/// map back to one-hot pixels; bottom, top, ambiguous and empty-set pixels
/// become uniform distributions.
namespace catmorph::pipeline {

enum class Op { dilate, erode, open, close };
enum class Backend { categorical, dirichlet, dirichlet_subset, nary, set, label };

std::string_view to_string(Op op) noexcept;
std::string_view to_string(Backend backend) noexcept;

struct Step {
  Op op = Op::dilate;
  Backend backend = Backend::categorical;
  std::optional<std::size_t> category;
  std::vector<std::size_t> subset;
  double radius = 1.0;
  Norm norm = Norm::euclidean;
  std::vector<std::size_t> protect;
  protect::Mode mode = protect::Mode::literal;
  std::vector<Label> ranking;
  std::string from;
  std::string tap;
};

struct Spec {
  std::vector<Step> steps;
};

/// Failure of one step; `step()` is its zero-based index.
class PipelineError : public Error {
 public:
  PipelineError(std::size_t step, const std::string& message);
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Throws PipelineError (step index = line's step number) on syntax errors.
Spec parse(std::string_view text);
Spec parse_file(const std::filesystem::path& path);
/// One line per step, keys in the order listed above, defaults omitted
/// (norm and radius are always printed). parse(canonical(s)) == s.
std::string canonical(const Spec& spec);
std::string canonical(const Step& step);

bool operator==(const Step& a, const Step& b);
inline bool operator==(const Spec& a, const Spec& b) { return a.steps == b.steps; }

/// Opening of category i, then nothing else: removes i-structures that do
/// not contain a ball of radius r.
Spec denoise_recipe(std::size_t category, double radius, Norm norm = Norm::euclidean);
/// For each radius: from the input, dilate `active` protecting `edema` and
/// `background`, then dilate `edema` protecting `background`; tapped as
/// "B<radius>".
Spec annotator_bias_recipe(std::size_t active, std::size_t edema, std::size_t background,
                           const std::vector<double>& radii = {1, 2, 3});

struct StepLog {
  std::size_t index = 0;
  std::string step;
  double renormalization_drift = 0.0;
  std::size_t theta_pixels = 0;
  std::size_t ambiguous_pixels = 0;
  double seconds = 0.0;
};

struct Result {
  io::AnyImage output;
  std::vector<std::pair<std::string, io::AnyImage>> taps;
  std::vector<StepLog> log;
};

/// Checks every step against the input's kind and channel count before
/// running; throws PipelineError for the first invalid step.
void check(const Spec& spec, const io::AnyImage& input);
Result run(const Spec& spec, const io::AnyImage& input);

struct OutputOptions {
  /// When set, every tap and the output are also rendered as PNG.
  std::optional<io::Palette> palette;
  io::RenderStyle style = io::RenderStyle::rgb_mixture;
};

/// Runs and writes <tap>.catd per tap, output.catd, optional PNG renders,
/// and log.json into `dir` (created if missing).
Result run_to_directory(const Spec& spec, const io::AnyImage& input,
                        const std::filesystem::path& dir, const OutputOptions& options = {});

}  // namespace catmorph::pipeline
