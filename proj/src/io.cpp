#include "sponge/io.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sponge {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpongeError(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpongeError(ErrorKind::ParseError, "cannot write " + path);
  out << contents;
}

namespace {

struct Location {
  int line = 1;
  int column = 1;
};

Location locate(std::string_view text, std::size_t offset) {
  Location loc;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

std::string where(const Location& loc) {
  return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column);
}

// Offsets of the opening brackets of the entries of the "digits" array, found
// by scanning the raw text (the JSON library does not keep source positions).
std::vector<std::size_t> digit_offsets(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  int depth = 0;
  bool in_string = false;
  std::size_t key_start = 0;
  // Locate the "digits" key at object depth 1.
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
        if (depth == 1 && text.substr(key_start, i - key_start) == "digits") break;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      key_start = i + 1;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      --depth;
    }
  }
  if (i >= text.size()) return out;
  i = text.find('[', i);
  if (i == std::string_view::npos) return out;
  int level = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '[') {
      ++level;
      if (level == 2) out.push_back(i);
    } else if (c == ']') {
      if (--level == 0) break;
    }
  }
  return out;
}

[[noreturn]] void fail_at(ErrorKind kind, std::string_view text, const std::vector<std::size_t>& offsets,
                          std::size_t index, const std::string& message) {
  std::string prefix = "digit " + std::to_string(index + 1);
  if (index < offsets.size()) prefix = where(locate(text, offsets[index])) + ": " + prefix;
  throw SpongeError(kind, prefix + ": " + message);
}

ordered_json parse_document(std::string_view text) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const Location loc = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SpongeError(ErrorKind::ParseError, where(loc) + ": malformed JSON (" + std::string(e.what()) + ")");
  }
}

int as_int(const ordered_json& value, const std::string& what) {
  if (!value.is_number_integer()) throw SpongeError(ErrorKind::ParseError, what + " must be an integer");
  const auto v = value.get<long long>();
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) throw SpongeError(ErrorKind::ParseError, what + " is out of range");
  return static_cast<int>(v);
}

ordered_json number_or_error(const std::optional<double>& value, const std::optional<std::string>& error) {
  if (value) return *value;
  ordered_json out;
  out["error"] = error.value_or("Unavailable");
  return out;
}

ordered_json cube_json(const ApproximateCube& q) {
  ordered_json out;
  out["scale"] = to_string(q.scale);
  out["k"] = q.k;
  out["constraints"] = q.constraints;
  return out;
}

ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

Sponge parse_sponge_json(std::string_view text) {
  const ordered_json doc = parse_document(text);
  if (!doc.is_object()) throw SpongeError(ErrorKind::ParseError, "expected a JSON object with bases and digits");
  if (!doc.contains("bases") || !doc["bases"].is_array()) {
    throw SpongeError(ErrorKind::ParseError, "missing array field \"bases\"");
  }
  if (!doc.contains("digits") || !doc["digits"].is_array()) {
    throw SpongeError(ErrorKind::ParseError, "missing array field \"digits\"");
  }
  std::vector<int> bases;
  for (const auto& b : doc["bases"]) bases.push_back(as_int(b, "each base"));
  const std::vector<std::size_t> offsets = digit_offsets(text);
  std::vector<DigitTuple> digits;
  std::map<DigitTuple, std::size_t> seen;
  const auto& raw = doc["digits"];
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i].is_array()) fail_at(ErrorKind::ParseError, text, offsets, i, "expected an array of integers");
    DigitTuple t;
    for (const auto& c : raw[i]) t.push_back(as_int(c, "each digit entry"));
    if (t.size() != bases.size()) {
      fail_at(ErrorKind::DimensionMismatch, text, offsets, i,
              "(" + format_tuple(t) + ") has length " + std::to_string(t.size()) + ", expected " +
                  std::to_string(bases.size()));
    }
    for (std::size_t l = 0; l < t.size(); ++l) {
      if (bases[l] >= 2 && (t[l] < 0 || t[l] >= bases[l])) {
        fail_at(ErrorKind::DigitOutOfRange, text, offsets, i,
                "(" + format_tuple(t) + "): coordinate " + std::to_string(l + 1) + " value " + std::to_string(t[l]) +
                    " outside 0.." + std::to_string(bases[l] - 1));
      }
    }
    if (auto [it, fresh] = seen.emplace(t, i); !fresh) {
      fail_at(ErrorKind::DuplicateDigit, text, offsets, i,
              "(" + format_tuple(t) + ") repeats digit " + std::to_string(it->second + 1));
    }
    digits.push_back(std::move(t));
  }
  return Sponge::validate(std::move(bases), std::move(digits));
}

Sponge load_sponge(const std::string& path) { return parse_sponge_json(read_file(path)); }

SymbolicWord parse_word(std::string_view text) {
  SymbolicWord w;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string_view part = text.substr(start, end - start);
    DigitTuple t;
    std::size_t p = 0;
    while (p <= part.size()) {
      const std::size_t q = std::min(part.find(',', p), part.size());
      std::string item(part.substr(p, q - p));
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
        throw SpongeError(ErrorKind::ParseError, "bad digit '" + item + "' in word");
      }
      t.push_back(std::stoi(item));
      p = q + 1;
    }
    w.push_back(std::move(t));
    start = end + 1;
  }
  return w;
}

BernoulliMeasure parse_measure_json(const Sponge& s, std::string_view text) {
  ordered_json doc = parse_document(text);
  if (doc.is_object() && doc.contains("weights")) doc = doc["weights"];
  if (!doc.is_object()) throw SpongeError(ErrorKind::ParseError, "expected a JSON object of weights");
  std::map<DigitTuple, Rational> weights;
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema_version") continue;
    if (!value.is_string()) throw SpongeError(ErrorKind::ParseError, "weight for '" + key + "' must be a \"p/q\" string");
    const SymbolicWord parsed = parse_word(key);
    if (parsed.size() != 1) throw SpongeError(ErrorKind::ParseError, "bad digit key '" + key + "'");
    if (!weights.emplace(parsed.front(), parse_rational(value.get<std::string>())).second) {
      throw SpongeError(ErrorKind::InvalidMeasure, "digit '" + key + "' is weighted twice");
    }
  }
  return BernoulliMeasure::from_map(s, weights);
}

BernoulliMeasure load_measure(const Sponge& s, const std::string& path) {
  return parse_measure_json(s, read_file(path));
}

std::string sponge_summary_json(const Sponge& s) {
  ordered_json out;
  out["schema_version"] = 1;
  out["valid"] = true;
  out["dimension"] = s.dim();
  out["bases"] = s.bases();
  out["digits"] = s.size();
  out["strict"] = s.strict();
  ordered_json projections = ordered_json::array();
  for (int l = 1; l <= s.dim(); ++l) projections.push_back(s.level(l).size());
  out["projection_sizes"] = projections;
  out["uniform_fibres"] = has_uniform_fibres(s);
  out["vssc"] = satisfies_vssc(s);
  return out.dump(2) + "\n";
}

std::string dim_report_json(const DimReport& report) {
  ordered_json out;
  out["schema_version"] = 1;
  out["assouad"] = number_or_error(report.assouad, report.strictness_error);
  out["lower"] = number_or_error(report.lower, report.strictness_error);
  out["box"] = report.box;
  out["hausdorff"] = report.hausdorff;
  out["lower_via_zprime"] = number_or_error(report.lower_via_zprime, report.strictness_error);
  out["strictness_ok"] = report.strictness_ok;
  out["uniform_fibres"] = report.uniform_fibres;
  out["dichotomy"] = report.dichotomy ? ordered_json(to_string(*report.dichotomy)) : ordered_json(nullptr);
  return out.dump(2) + "\n";
}

std::string weights_json(const BernoulliMeasure& m) {
  ordered_json out;
  out["schema_version"] = 1;
  ordered_json table = ordered_json::object();
  Rational total = 0;
  for (std::size_t i = 0; i < m.weights().size(); ++i) {
    table[format_tuple(m.sponge().digits()[i])] = to_string(m.weights()[i]);
    total += m.weights()[i];
  }
  out["weights"] = table;
  out["sum"] = to_string(total);
  return out.dump(2) + "\n";
}

std::string scan_report_json(const ScanReport& report) {
  ordered_json out;
  out["schema_version"] = 1;
  out["samples"] = report.samples;
  out["worst_lower_slack"] = finite_or_null(report.worst_lower_slack);
  out["worst_upper_slack"] = finite_or_null(report.worst_upper_slack);
  out["constants"] = {{"c0", report.c0}, {"c1", report.c1}};
  out["exponents"] = {{"lower", report.lower_exponent}, {"upper", report.upper_exponent}};
  out["violation_count"] = report.violations.size();
  ordered_json violations = ordered_json::array();
  for (const auto& v : report.violations) {
    ordered_json row;
    row["side"] = v.upper ? "upper" : "lower";
    row["word"] = v.sample.word;
    row["r"] = to_string(v.sample.r);
    row["R"] = to_string(v.sample.R);
    row["ratio"] = v.upper ? v.sample.ratio : v.sample.ratio_low;
    row["bound"] = v.upper ? v.sample.upper_bound : v.sample.lower_bound;
    violations.push_back(row);
  }
  out["violations"] = violations;
  out["sharp"] = report.sharp();
  if (report.own_worst_lower_slack) {
    out["own_bounds"] = {{"worst_lower_slack", finite_or_null(*report.own_worst_lower_slack)},
                         {"worst_upper_slack", finite_or_null(report.own_worst_upper_slack.value_or(INFINITY))},
                         {"violation_count", report.own_violations}};
  }
  return out.dump(2) + "\n";
}

std::string doubling_report_json(const DoublingReport& report) {
  ordered_json out;
  out["schema_version"] = 1;
  ordered_json depths = ordered_json::array();
  for (const auto& row : report.depths) {
    ordered_json item;
    item["depth"] = row.depth;
    item["scale"] = to_string(row.scale);
    item["cubes"] = row.cubes;
    item["adjacent_pairs"] = row.adjacent_pairs;
    item["max_ratio"] = std::exp(row.log_max_ratio);
    item["log_max_ratio"] = row.log_max_ratio;
    if (row.witness) item["witness"] = {cube_json(row.witness->first), cube_json(row.witness->second)};
    depths.push_back(item);
  }
  out["depths"] = depths;
  out["growth_rate"] = report.growth_rate;
  out["verdict"] = to_string(report.verdict);
  return out.dump(2) + "\n";
}

std::string tangent_json(const TangentConvergence& result, const TangentMap& map, TangentMode mode) {
  ordered_json out;
  out["schema_version"] = 1;
  out["mode"] = to_string(mode);
  out["R"] = to_string(result.R);
  out["k"] = result.k;
  ordered_json scales = ordered_json::array();
  for (const auto& v : map.scale) scales.push_back(to_string(v));
  out["scale_factors"] = scales;
  ordered_json offsets = ordered_json::array();
  for (const auto& v : map.offset) offsets.push_back(to_string(v));
  out["offsets"] = offsets;
  out["lipschitz_ratio"] = to_string(result.lipschitz_ratio);
  out["image_boxes"] = result.image_boxes;
  out["uncontained"] = result.uncontained;
  out["distance"] = result.distance;
  out["limit_bound"] = result.limit_bound;
  out["resolution_slack"] = result.resolution_slack;
  out["bound"] = result.bound;
  out["ok"] = result.ok;
  if (result.boundary_case) out["boundary_case"] = "Unsupported";
  return out.dump(2) + "\n";
}

std::string dichotomy_audit_json(const DichotomyAudit& audit) {
  ordered_json out;
  out["schema_version"] = 1;
  out["verdict"] = to_string(audit.verdict);
  out["uniform_fibres"] = audit.uniform_fibres;
  out["verdict_matches"] = audit.verdict_matches;
  out["ordering_ok"] = audit.ordering_ok;
  out["zprime_matches_lower"] = audit.zprime_matches_lower;
  ordered_json levels = ordered_json::array();
  for (const auto& l : audit.levels) {
    levels.push_back({{"level", l.level}, {"projected", l.projected}, {"previous", l.previous},
                      {"min_fibre", l.min_fibre}, {"max_fibre", l.max_fibre}, {"uniform", l.uniform},
                      {"chain_ok", l.chain_ok}});
  }
  out["levels"] = levels;
  out["first_nonuniform"] = audit.first_nonuniform ? ordered_json(*audit.first_nonuniform) : ordered_json(nullptr);
  out["last_nonuniform"] = audit.last_nonuniform ? ordered_json(*audit.last_nonuniform) : ordered_json(nullptr);
  return out.dump(2) + "\n";
}

}  // namespace sponge
