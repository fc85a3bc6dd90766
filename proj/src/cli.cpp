#include "sponge/cli.hpp"

#include "sponge/cubes.hpp"
#include "sponge/dims.hpp"
#include "sponge/io.hpp"
#include "sponge/measure.hpp"
#include "sponge/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <optional>

namespace sponge::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational read_scale(const std::string& text, std::ostream& err) {
  const ParsedScale parsed = parse_scale(text);
  if (parsed.from_decimal) {
    err << "note: scale " << text << " read as " << to_string(parsed.value)
        << (parsed.approximated ? " (nearest rational with denominator <= 10^9)" : "") << "\n";
  }
  return parsed.value;
}

struct Options {
  std::string file;
  std::string word;
  std::string scale;
  std::string measure;
  std::string mode = "max";
  std::string out_path;
  std::string emit_boxes;
  std::string csv;
  std::string grid;
  std::string witnesses;
  std::string values;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  int depth = 40;
  int max_depth = 8;
  int level = 0;
  int budget = kDefaultPrecisionBudget;
  double min = 0.0, max = 0.5, step = 0.05;
};

std::string doubling_grid_json(const Sponge& s, const std::string& step_text, int max_depth) {
  const Rational step = parse_rational(step_text);
  if (step <= 0 || numerator(step) != 1) {
    throw SpongeError(ErrorKind::OutOfRange, "grid step must be 1/m for a positive integer m");
  }
  const int parts = denominator(step).convert_to<int>();
  const AdjacencyScan scan(s, max_depth);
  ordered_json out;
  out["schema_version"] = 1;
  out["grid_step"] = to_string(step);
  ordered_json rows = ordered_json::array();
  bool all_non_doubling = true;
  for (const auto& weights : positive_simplex_grid(parts, static_cast<int>(s.size()))) {
    const BernoulliMeasure m = BernoulliMeasure::from_weights(s, weights);
    const DoublingReport report = scan.report(m);
    ordered_json row;
    ordered_json w = ordered_json::object();
    for (std::size_t i = 0; i < weights.size(); ++i) w[format_tuple(s.digits()[i])] = to_string(weights[i]);
    row["weights"] = w;
    row["growth_rate"] = report.growth_rate;
    row["max_ratio"] = std::exp(report.depths.back().log_max_ratio);
    row["verdict"] = to_string(report.verdict);
    all_non_doubling = all_non_doubling && report.verdict == DoublingVerdict::NonDoubling;
    rows.push_back(row);
  }
  out["measures"] = rows;
  out["all_non_doubling"] = all_non_doubling;
  return out.dump(2) + "\n";
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(to_double(parse_scale(text.substr(start, end - start)).value));
    start = end + 1;
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bedford-McMullen sponge dimensions, measures and checks", "sponge"};
  app.require_subcommand(1, 1);
  Options o;

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "sponge JSON file")->required(); };

  auto* dims = app.add_subcommand("dims", "Assouad, lower, box and Hausdorff dimensions as JSON");
  file_arg(dims);
  auto* validate = app.add_subcommand("validate", "check a sponge file and summarize it");
  file_arg(validate);
  auto* weights = app.add_subcommand("weights", "coordinate uniform weights as exact rationals");
  file_arg(weights);
  auto* cube = app.add_subcommand("cube-measure", "measure of the approximate cube Q(w, r)");
  file_arg(cube);
  cube->add_option("--word", o.word, "word, e.g. \"0,0,0;0,0,3\"")->required();
  cube->add_option("--scale", o.scale, "scale r as p/q or decimal")->required();
  cube->add_option("--measure", o.measure, "weights JSON (default: coordinate uniform)");
  cube->add_option("--budget", o.budget, "exact-arithmetic factor budget")->check(CLI::NonNegativeNumber);
  auto* count = app.add_subcommand("count", "number of approximate cubes at scale r");
  file_arg(count);
  count->add_option("--scale", o.scale, "scale r")->required();
  auto* scan = app.add_subcommand("scan", "cube-measure ratio sandwich scan");
  file_arg(scan);
  scan->add_option("--measure", o.measure, "weights JSON (default: coordinate uniform)");
  scan->add_option("--samples", o.samples, "number of samples");
  scan->add_option("--seed", o.seed, "generator seed");
  scan->add_option("--depth", o.depth, "largest exponent b in r = n_1^-b")->check(CLI::PositiveNumber);
  scan->add_option("--csv", o.csv, "write every sample to this CSV file");
  auto* ball = app.add_subcommand("ball-scan", "ball-measure ratio scan for VSSC sponges");
  file_arg(ball);
  ball->add_option("--samples", o.samples, "number of samples");
  ball->add_option("--seed", o.seed, "generator seed");
  ball->add_option("--depth", o.depth, "cylinder depth of the brackets")->check(CLI::PositiveNumber);
  ball->add_option("--csv", o.csv, "write every sample to this CSV file");
  auto* doubling = app.add_subcommand("doubling", "adjacent-cube measure ratios and doubling verdict");
  file_arg(doubling);
  auto* measure_opt = doubling->add_option("--measure", o.measure, "weights JSON");
  auto* grid_opt = doubling->add_option("--grid", o.grid, "simplex grid step 1/m over all positive weights");
  measure_opt->excludes(grid_opt);
  doubling->add_option("--max-depth", o.max_depth, "deepest scale n_d^-K")->required()->check(CLI::PositiveNumber);
  auto* tangent = app.add_subcommand("tangent", "weak tangent construction and convergence check");
  file_arg(tangent);
  tangent->add_option("--scale", o.scale, "scale R")->required();
  tangent->add_option("--mode", o.mode, "max or min")->check(CLI::IsMember({"max", "min"}));
  tangent->add_option("--level", o.level, "word length of the pre-fractal cylinders")->required();
  tangent->add_option("--witness", o.witnesses, "explicit witnesses i(2);...;i(d)");
  tangent->add_option("--emit-boxes", o.emit_boxes, "write the tangent image boxes as CSV");
  auto* family = app.add_subcommand("family-lg", "dimensions of the two-parameter carpet family as CSV");
  family->add_option("--min", o.min, "smallest lambda");
  family->add_option("--max", o.max, "largest lambda");
  family->add_option("--step", o.step, "lambda step")->check(CLI::PositiveNumber);
  family->add_option("--values", o.values, "explicit comma-separated lambdas");
  auto* render = app.add_subcommand("render", "write a pre-fractal as SVG (d = 2) or CSV");
  file_arg(render);
  render->add_option("--level", o.level, "pre-fractal level")->required()->check(CLI::NonNegativeNumber);
  render->add_option("--out", o.out_path, "output path ending in .svg or .csv")->required();
  auto* audit = app.add_subcommand("audit", "dimension dichotomy audit as JSON");
  file_arg(audit);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*family) {
      const auto lambdas = o.values.empty() ? lg_family_grid(o.min, o.max, o.step) : parse_values(o.values);
      out << lg_family_csv(lambdas);
      return 0;
    }
    const Sponge s = load_sponge(o.file);
    if (*dims) {
      out << dim_report_json(dim_report(s));
    } else if (*validate) {
      out << sponge_summary_json(s);
    } else if (*weights) {
      out << weights_json(coordinate_uniform(s));
    } else if (*cube) {
      const BernoulliMeasure m = o.measure.empty() ? coordinate_uniform(s) : load_measure(s, o.measure);
      const Rational r = read_scale(o.scale, err);
      const SymbolicWord w = parse_word(o.word);
      const ApproximateCube q = approximate_cube(s, w, r);
      const RationalLog value = cube_measure(m, q, o.budget);
      ordered_json j;
      j["schema_version"] = 1;
      j["scale"] = to_string(r);
      j["k"] = q.k;
      j["exact"] = value.exact ? ordered_json(to_string(*value.exact)) : ordered_json(nullptr);
      j["log"] = value.log_value;
      out << j.dump(2) << "\n";
    } else if (*count) {
      out << count_cubes(s, read_scale(o.scale, err)).str() << "\n";
    } else if (*scan) {
      const BernoulliMeasure m = o.measure.empty() ? coordinate_uniform(s) : load_measure(s, o.measure);
      const ScanReport report = scan_cube_ratios(s, m, o.samples, o.seed, o.depth, !o.csv.empty());
      if (!o.csv.empty()) write_file(o.csv, scan_rows_csv(report));
      out << scan_report_json(report);
    } else if (*ball) {
      const ScanReport report = scan_ball_ratios_vssc(s, o.samples, o.seed, o.depth, !o.csv.empty());
      if (!o.csv.empty()) write_file(o.csv, scan_rows_csv(report));
      out << scan_report_json(report);
    } else if (*doubling) {
      if (!o.grid.empty()) {
        out << doubling_grid_json(s, o.grid, o.max_depth);
      } else {
        const BernoulliMeasure m = o.measure.empty() ? coordinate_uniform(s) : load_measure(s, o.measure);
        out << doubling_report_json(doubling_report(s, m, o.max_depth));
      }
    } else if (*tangent) {
      const TangentMode mode = parse_tangent_mode(o.mode);
      const Rational R = read_scale(o.scale, err);
      std::vector<DigitTuple> witnesses;
      if (o.witnesses.empty()) {
        witnesses = tangent_witnesses(s, mode);
      } else {
        witnesses = parse_word(o.witnesses);
        check_witnesses(s, mode, witnesses);
      }
      const TangentConvergence result = check_tangent_convergence(s, R, witnesses, o.level);
      const TangentImage image = tangent_image(s, R, witnesses, o.level);
      if (!o.emit_boxes.empty()) write_file(o.emit_boxes, boxes_to_csv(image.boxes, s.dim()));
      if (result.boundary_case) err << "note: Unsupported: a factor of the tangent set is a boundary point\n";
      out << tangent_json(result, image.map, mode);
    } else if (*render) {
      const BoxSet boxes = prefractal(s, o.level);
      const auto ends_with = [&](const std::string& suffix) {
        return o.out_path.size() >= suffix.size() &&
               o.out_path.compare(o.out_path.size() - suffix.size(), suffix.size(), suffix) == 0;
      };
      if (ends_with(".svg")) {
        if (s.dim() != 2) throw SpongeError(ErrorKind::Unsupported, "SVG output needs d = 2; use a .csv path");
        write_file(o.out_path, boxes_to_svg(boxes));
      } else if (ends_with(".csv")) {
        write_file(o.out_path, boxes_to_csv(boxes, s.dim()));
      } else {
        err << "error: --out must end in .svg or .csv\n";
        return 2;
      }
      err << "wrote " << boxes.size() << " boxes to " << o.out_path << "\n";
    } else if (*audit) {
      out << dichotomy_audit_json(dichotomy_audit(s));
    }
  } catch (const SpongeError& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace sponge::cli
