#include "catmorph/pipeline.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "catmorph/baselines.hpp"
#include "catmorph/categorical.hpp"
#include "catmorph/dirichlet.hpp"
#include "catmorph/simplex.hpp"
#include "json.hpp"

namespace catmorph::pipeline {
namespace {

constexpr std::array kOps{Op::dilate, Op::erode, Op::open, Op::close};
constexpr std::array kBackends{Backend::categorical, Backend::dirichlet,
                               Backend::dirichlet_subset, Backend::nary,
                               Backend::set, Backend::label};

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_number(std::string_view text, std::size_t step, std::string_view key) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw PipelineError(step, "bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

template <class T>
std::vector<T> parse_list(std::string_view text, std::size_t step, std::string_view key) {
  std::vector<T> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<T>(text.substr(0, comma), step, key));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  return out;
}

template <class T>
std::string format_list(const std::vector<T>& values) {
  std::string out;
  for (const T& v : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

Step parse_step(std::string_view line, std::size_t index) {
  std::istringstream words{std::string(line)};
  std::string op_word, backend_word;
  words >> op_word >> backend_word;
  Step step;
  const auto op = std::find_if(kOps.begin(), kOps.end(),
                               [&](Op o) { return to_string(o) == op_word; });
  if (op == kOps.end()) throw PipelineError(index, "unknown operation '" + op_word + "'");
  step.op = *op;
  const auto backend = std::find_if(kBackends.begin(), kBackends.end(),
                                    [&](Backend b) { return to_string(b) == backend_word; });
  if (backend == kBackends.end()) {
    throw PipelineError(index, "unknown backend '" + backend_word + "'");
  }
  step.backend = *backend;
  std::string word;
  std::set<std::string> seen;
  while (words >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw PipelineError(index, "expected key=value, got '" + word + "'");
    }
    const std::string key = word.substr(0, eq);
    const std::string_view value = std::string_view(word).substr(eq + 1);
    if (!seen.insert(key).second) throw PipelineError(index, "duplicate key '" + key + "'");
    try {
      if (key == "category") {
        step.category = parse_number<std::size_t>(value, index, key);
      } else if (key == "subset") {
        step.subset = parse_list<std::size_t>(value, index, key);
      } else if (key == "radius") {
        step.radius = parse_number<double>(value, index, key);
      } else if (key == "norm") {
        step.norm = parse_norm(value);
      } else if (key == "protect") {
        step.protect = parse_list<std::size_t>(value, index, key);
      } else if (key == "mode") {
        step.mode = protect::parse_mode(value);
      } else if (key == "ranking") {
        step.ranking = parse_list<Label>(value, index, key);
      } else if (key == "from") {
        step.from = value;
      } else if (key == "tap") {
        step.tap = value;
      } else {
        throw PipelineError(index, "unknown key '" + key + "'");
      }
    } catch (const PipelineError&) {
      throw;
    } catch (const Error& e) {
      throw PipelineError(index, e.what());
    }
  }
  return step;
}

// ---- crisp bridges ----

CategoricalImage from_labels(const LabelImage& labels, std::size_t channels) {
  CategoricalImage out(labels.shape(), channels);
  const double u = 1.0 / static_cast<double>(channels);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const Label l = labels[p];
    if (l >= 0 && static_cast<std::size_t>(l) < channels) {
      out.at(p, static_cast<std::size_t>(l)) = 1.0;
    } else {
      for (std::size_t k = 0; k < channels; ++k) out.at(p, k) = u;
    }
  }
  return out;
}

SetImage to_sets(const CategoricalImage& f) {
  std::vector<CategoryBits> bits(f.pixel_count(), 0);
  for (std::size_t p = 0; p < bits.size(); ++p) {
    for (std::size_t k = 0; k < f.channels(); ++k) {
      if (f.at(p, k) > 0.0) bits[p] |= CategoryBits{1} << k;
    }
  }
  return SetImage(f.shape(), f.channels(), std::move(bits));
}

CategoricalImage from_sets(const SetImage& sets) {
  const std::size_t channels = sets.categories();
  CategoricalImage out(sets.shape(), channels);
  for (std::size_t p = 0; p < sets.size(); ++p) {
    CategoryBits b = sets[p];
    if (b == 0) b = channels == 64 ? ~CategoryBits{0} : (CategoryBits{1} << channels) - 1;
    const double u = 1.0 / static_cast<double>(std::popcount(b));
    for (std::size_t k = 0; k < channels; ++k) {
      if (b & (CategoryBits{1} << k)) out.at(p, k) = u;
    }
  }
  return out;
}

// Erosion leaves ambiguous pixels as kTop; dilate them as an extra label
// that is never i.
LabelImage nary_dilate_tolerant(const LabelImage& f, Label i, const StructuringElement& se) {
  const auto placeholder = static_cast<Label>(f.categories());
  std::vector<Label> labels(f.labels().begin(), f.labels().end());
  for (Label& l : labels) {
    if (l == kTop) l = placeholder;
  }
  LabelImage widened(f.shape(), f.categories() + 1, std::move(labels));
  LabelImage out = baseline::nary_dilate(widened, i, se);
  std::vector<Label> back(out.labels().begin(), out.labels().end());
  for (Label& l : back) {
    if (l == placeholder) l = kTop;
  }
  return LabelImage(f.shape(), f.categories(), std::move(back));
}

struct Outcome {
  io::AnyImage image;
  categorical::OpStats stats;
  std::size_t ambiguous = 0;
};

Outcome apply_categorical(const Step& s, const CategoricalImage& f) {
  const StructuringElement se = StructuringElement::ball(s.radius, s.norm);
  const CategoryIndex i(*s.category);
  Outcome o{CategoricalImage{}, {}, 0};
  if (!s.protect.empty()) {
    protect::ProtectionSpec spec;
    spec.protected_channels = s.protect;
    spec.mode = s.mode;
    switch (s.op) {
      case Op::dilate: o.image = protect::dilate(f, i, se, spec, &o.stats); break;
      case Op::erode: o.image = protect::erode(f, i, se, spec, &o.stats); break;
      case Op::open: o.image = protect::open(f, i, se, spec, &o.stats); break;
      case Op::close: o.image = protect::close(f, i, se, spec, &o.stats); break;
    }
    return o;
  }
  switch (s.op) {
    case Op::dilate: o.image = categorical::dilate(f, i, se, &o.stats); break;
    case Op::erode: o.image = categorical::erode(f, i, se, &o.stats); break;
    case Op::open: o.image = categorical::open(f, i, se, &o.stats); break;
    case Op::close: o.image = categorical::close(f, i, se, &o.stats); break;
  }
  return o;
}

Outcome apply_dirichlet(const Step& s, const DirichletImage& f) {
  const StructuringElement se = StructuringElement::ball(s.radius, s.norm);
  dirichlet::CategorySet subset = s.subset;
  if (s.backend == Backend::dirichlet) {
    subset.resize(f.channels());
    for (std::size_t k = 0; k < subset.size(); ++k) subset[k] = k;
  }
  Outcome o{DirichletImage{}, {}, 0};
  switch (s.op) {
    case Op::dilate: o.image = dirichlet::dilate_subset(f, se, subset); break;
    case Op::erode: o.image = dirichlet::erode_subset(f, se, subset); break;
    case Op::open: o.image = dirichlet::open_subset(f, se, subset); break;
    case Op::close: o.image = dirichlet::close_subset(f, se, subset); break;
  }
  return o;
}

Outcome apply_nary(const Step& s, const CategoricalImage& f) {
  const StructuringElement se = StructuringElement::ball(s.radius, s.norm);
  const auto i = static_cast<Label>(*s.category);
  const baseline::NaryErodeOptions options{s.ranking, s.norm};
  Outcome o{CategoricalImage{}, {}, 0};
  const LabelImage labels = argmax_labels(f);
  auto erode = [&](const LabelImage& l) {
    auto r = baseline::nary_erode_report(l, i, se, options);
    o.ambiguous += r.ambiguous.size();
    return std::move(r.labels);
  };
  LabelImage out;
  switch (s.op) {
    case Op::dilate: out = baseline::nary_dilate(labels, i, se); break;
    case Op::erode: out = erode(labels); break;
    case Op::open: out = nary_dilate_tolerant(erode(labels), i, se); break;
    case Op::close: out = erode(baseline::nary_dilate(labels, i, se)); break;
  }
  o.image = from_labels(out, f.channels());
  return o;
}

Outcome apply_label(const Step& s, const CategoricalImage& f) {
  const StructuringElement se = StructuringElement::ball(s.radius, s.norm);
  const LabelImage labels = argmax_labels(f);
  LabelImage out;
  switch (s.op) {
    case Op::dilate: out = baseline::label_dilate(labels, se); break;
    case Op::erode: out = baseline::label_erode(labels, se); break;
    case Op::open: out = baseline::label_dilate(baseline::label_erode(labels, se), se); break;
    case Op::close: out = baseline::label_erode(baseline::label_dilate(labels, se), se); break;
  }
  return {from_labels(out, f.channels()), {}, 0};
}

Outcome apply_set(const Step& s, const CategoricalImage& f) {
  const StructuringElement se = StructuringElement::ball(s.radius, s.norm);
  const SetImage sets = to_sets(f);
  SetImage out;
  switch (s.op) {
    case Op::dilate: out = baseline::set_dilate(sets, se); break;
    case Op::erode: out = baseline::set_erode(sets, se); break;
    case Op::open: out = baseline::set_dilate(baseline::set_erode(sets, se), se); break;
    case Op::close: out = baseline::set_erode(baseline::set_dilate(sets, se), se); break;
  }
  return {from_sets(out), {}, 0};
}

Outcome apply(const Step& s, const io::AnyImage& in) {
  if (s.backend == Backend::dirichlet || s.backend == Backend::dirichlet_subset) {
    return apply_dirichlet(s, std::get<DirichletImage>(in));
  }
  const auto& f = std::get<CategoricalImage>(in);
  switch (s.backend) {
    case Backend::categorical: return apply_categorical(s, f);
    case Backend::nary: return apply_nary(s, f);
    case Backend::label: return apply_label(s, f);
    case Backend::set: return apply_set(s, f);
    default: break;
  }
  throw ArgumentError("unhandled backend");
}

void check_step(const Step& s, std::size_t index, io::PayloadKind kind, std::size_t channels,
                const std::set<std::string>& taps) {
  auto fail = [&](const std::string& msg) { throw PipelineError(index, msg); };
  if (!(s.radius > 0.0) || !std::isfinite(s.radius)) fail("radius must be a positive number");
  const bool dirichlet_backend =
      s.backend == Backend::dirichlet || s.backend == Backend::dirichlet_subset;
  if (kind == io::PayloadKind::scalar) fail("pipelines need a categorical or Dirichlet input");
  if (dirichlet_backend && kind != io::PayloadKind::dirichlet) {
    fail("backend " + std::string(to_string(s.backend)) + " needs a Dirichlet input");
  }
  if (!dirichlet_backend && kind != io::PayloadKind::categorical) {
    fail("backend " + std::string(to_string(s.backend)) + " needs a categorical input");
  }
  const bool needs_category = s.backend == Backend::categorical || s.backend == Backend::nary;
  if (needs_category && !s.category) fail("missing category=");
  if (s.category && *s.category >= channels) {
    fail("category " + std::to_string(*s.category) + " out of range for " +
         std::to_string(channels) + " channels");
  }
  for (std::size_t k : s.subset) {
    if (k >= channels) fail("subset category " + std::to_string(k) + " out of range");
  }
  if (!s.protect.empty() && s.backend != Backend::categorical) {
    fail("protect= needs the categorical backend");
  }
  for (std::size_t k : s.protect) {
    if (k >= channels) fail("protected category " + std::to_string(k) + " out of range");
    if (s.category && k == *s.category) fail("the operated category cannot be protected");
  }
  for (Label l : s.ranking) {
    if (l < 0 || static_cast<std::size_t>(l) >= channels) {
      fail("ranking category " + std::to_string(l) + " out of range");
    }
  }
  if (s.backend == Backend::set && channels > kMaxSetCategories) {
    fail("the set backend handles at most 64 categories");
  }
  if (!s.from.empty() && s.from != "input" && !taps.count(s.from)) {
    fail("from=" + s.from + " names no earlier tap");
  }
  if (s.tap == "input" || s.tap == "output") fail("tap name '" + s.tap + "' is reserved");
  if (!s.tap.empty() && taps.count(s.tap)) fail("duplicate tap '" + s.tap + "'");
}

nlohmann::json describe(const io::AnyImage& img) {
  std::vector<std::size_t> extents;
  for (std::size_t e : io::shape_of(img).extents()) extents.push_back(e);
  static constexpr const char* kinds[] = {"categorical", "dirichlet", "scalar"};
  return {{"kind", kinds[static_cast<int>(io::kind_of(img))]},
          {"shape", extents},
          {"channels", io::channels_of(img)}};
}

}  // namespace

std::string_view to_string(Op op) noexcept {
  switch (op) {
    case Op::dilate: return "dilate";
    case Op::erode: return "erode";
    case Op::open: return "open";
    case Op::close: return "close";
  }
  return "?";
}

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::categorical: return "categorical";
    case Backend::dirichlet: return "dirichlet";
    case Backend::dirichlet_subset: return "dirichlet-subset";
    case Backend::nary: return "nary";
    case Backend::set: return "set";
    case Backend::label: return "label";
  }
  return "?";
}

PipelineError::PipelineError(std::size_t step, const std::string& message)
    : Error("step " + std::to_string(step) + ": " + message), step_(step) {}

bool operator==(const Step& a, const Step& b) {
  return a.op == b.op && a.backend == b.backend && a.category == b.category &&
         a.subset == b.subset && a.radius == b.radius && a.norm == b.norm &&
         a.protect == b.protect && a.mode == b.mode && a.ranking == b.ranking &&
         a.from == b.from && a.tap == b.tap;
}

Spec parse(std::string_view text) {
  Spec spec;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    spec.steps.push_back(parse_step(line, spec.steps.size()));
  }
  return spec;
}

Spec parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open pipeline spec " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

std::string canonical(const Step& s) {
  std::string out(to_string(s.op));
  out += ' ';
  out += to_string(s.backend);
  if (s.category) out += " category=" + std::to_string(*s.category);
  if (!s.subset.empty()) out += " subset=" + format_list(s.subset);
  out += " radius=" + format_number(s.radius);
  out += " norm=";
  out += to_string(s.norm);
  if (!s.protect.empty()) out += " protect=" + format_list(s.protect);
  if (s.mode != protect::Mode::literal) out += std::string(" mode=") + protect::to_string(s.mode);
  if (!s.ranking.empty()) out += " ranking=" + format_list(s.ranking);
  if (!s.from.empty()) out += " from=" + s.from;
  if (!s.tap.empty()) out += " tap=" + s.tap;
  return out;
}

std::string canonical(const Spec& spec) {
  std::string out;
  for (const Step& s : spec.steps) out += canonical(s) + '\n';
  return out;
}

Spec denoise_recipe(std::size_t category, double radius, Norm norm) {
  Step s;
  s.op = Op::open;
  s.backend = Backend::categorical;
  s.category = category;
  s.radius = radius;
  s.norm = norm;
  s.tap = "denoised";
  return {{s}};
}

Spec annotator_bias_recipe(std::size_t active, std::size_t edema, std::size_t background,
                           const std::vector<double>& radii) {
  Spec spec;
  for (double r : radii) {
    Step grow_active;
    grow_active.op = Op::dilate;
    grow_active.category = active;
    grow_active.radius = r;
    grow_active.protect = {edema, background};
    grow_active.from = "input";
    Step grow_edema;
    grow_edema.op = Op::dilate;
    grow_edema.category = edema;
    grow_edema.radius = r;
    grow_edema.protect = {background};
    grow_edema.tap = "B" + format_number(r);
    spec.steps.push_back(std::move(grow_active));
    spec.steps.push_back(std::move(grow_edema));
  }
  return spec;
}

void check(const Spec& spec, const io::AnyImage& input) {
  std::set<std::string> taps;
  for (std::size_t k = 0; k < spec.steps.size(); ++k) {
    check_step(spec.steps[k], k, io::kind_of(input), io::channels_of(input), taps);
    if (!spec.steps[k].tap.empty()) taps.insert(spec.steps[k].tap);
  }
}

Result run(const Spec& spec, const io::AnyImage& input) {
  check(spec, input);
  Result result{input, {}, {}};
  std::map<std::string, std::size_t> tap_index;
  for (std::size_t k = 0; k < spec.steps.size(); ++k) {
    const Step& s = spec.steps[k];
    const io::AnyImage* source = &result.output;
    if (s.from == "input") {
      source = &input;
    } else if (!s.from.empty()) {
      source = &result.taps[tap_index.at(s.from)].second;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = apply(s, *source);
      if (const auto* cat = std::get_if<CategoricalImage>(&outcome.image)) {
        if (auto bad = validate(*cat)) {
          throw DataError("output pixel " + std::to_string(bad->pixel) +
                          " is off the probability simplex");
        }
      }
    } catch (const Error& e) {
      throw PipelineError(k, e.what());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    result.log.push_back({k, canonical(s), outcome.stats.renormalization_drift,
                          outcome.stats.theta_pixels, outcome.ambiguous, elapsed.count()});
    result.output = std::move(outcome.image);
    if (!s.tap.empty()) {
      tap_index[s.tap] = result.taps.size();
      result.taps.emplace_back(s.tap, result.output);
    }
  }
  return result;
}

Result run_to_directory(const Spec& spec, const io::AnyImage& input,
                        const std::filesystem::path& dir, const OutputOptions& options) {
  Result result = run(spec, input);
  std::filesystem::create_directories(dir);
  auto emit = [&](const std::string& name, const io::AnyImage& img) {
    io::write_catd(img, dir / (name + ".catd"));
    if (!options.palette) return;
    const io::RgbRaster raster = std::visit(
        [&](const auto& v) -> io::RgbRaster {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ScalarField>) {
            throw ArgumentError("scalar images are not rendered");
          } else {
            return io::render(v, options.style, *options.palette);
          }
        },
        img);
    io::write_png(raster, dir / (name + ".png"));
  };
  for (const auto& [name, img] : result.taps) emit(name, img);
  emit("output", result.output);

  nlohmann::json log;
  log["input"] = describe(input);
  log["output"] = describe(result.output);
  log["spec"] = canonical(spec);
  log["steps"] = nlohmann::json::array();
  for (const StepLog& s : result.log) {
    log["steps"].push_back({{"index", s.index},
                            {"step", s.step},
                            {"renormalization_drift", s.renormalization_drift},
                            {"theta_pixels", s.theta_pixels},
                            {"ambiguous_pixels", s.ambiguous_pixels},
                            {"seconds", s.seconds}});
  }
  log["taps"] = nlohmann::json::array();
  for (const auto& [name, img] : result.taps) log["taps"].push_back(name + ".catd");
  std::ofstream out(dir / "log.json");
  out << log.dump(2) << '\n';
  if (!out) throw DataError("cannot write " + (dir / "log.json").string());
  return result;
}

}  // namespace catmorph::pipeline
