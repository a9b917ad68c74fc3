#include "patchladder/geometry.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "patchladder/error.hpp"

namespace patchladder {

namespace {

constexpr double mm(double v) { return v / 1000.0; }

bool is_known_dimension(std::string_view name) {
  return std::find(kDimensionNames.begin(), kDimensionNames.end(), name) != kDimensionNames.end();
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// "3.2 mm", "0.0032 m", "3.2mm", "3.2m". Returns meters.
bool parse_length(std::string_view s, double& meters) {
  s = text::trim(s);
  double scale = 1.0;
  if (s.ends_with("mm")) {
    scale = 1e-3;
    s.remove_suffix(2);
  } else if (s.ends_with("m")) {
    s.remove_suffix(1);
  } else {
    return false;
  }
  double v = 0.0;
  if (!text::parse_double(s, v)) return false;
  meters = scale == 1.0 ? v : mm(v);
  return true;
}

void parse_cavity_line(std::string_view body, std::size_t line_no, AntennaGeometry& g) {
  const auto tokens = split_ws(body);
  const auto malformed = [&](const std::string& why) {
    return Error(ErrorCode::MalformedLine, "cavity", line_no, why);
  };
  if (tokens.size() < 2) throw malformed("expected: cavity <idx> W=<v> d=<v> [n=<int>]");
  int idx = -1;
  {
    double v = 0.0;
    if (!text::parse_double(tokens[1], v) || v < 0 || v != static_cast<int>(v)) {
      throw malformed("bad cavity index");
    }
    idx = static_cast<int>(v);
  }
  if (idx > static_cast<int>(g.cavities.size())) throw malformed("cavity index leaves a gap");

  Cavity c;
  const bool existing = idx < static_cast<int>(g.cavities.size());
  if (existing) c = g.cavities[static_cast<std::size_t>(idx)];
  c.index = idx;
  c.thickness = g.substrate.thickness();
  bool has_w = existing, has_d = existing;
  for (std::size_t t = 2; t < tokens.size(); ++t) {
    const auto eq = tokens[t].find('=');
    if (eq == std::string_view::npos) throw malformed("expected key=value");
    const auto key = tokens[t].substr(0, eq);
    const auto val = tokens[t].substr(eq + 1);
    if (key == "W" || key == "d") {
      double m = 0.0;
      if (!parse_length(val, m)) throw malformed("bad length '" + std::string(val) + "'");
      if (m <= 0) throw Error(ErrorCode::NonPositiveValue, "cavity " + std::to_string(idx) + " " + std::string(key), line_no);
      (key == "W" ? c.width : c.length) = m;
      (key == "W" ? has_w : has_d) = true;
    } else if (key == "n") {
      double v = 0.0;
      if (!text::parse_double(val, v) || v != static_cast<int>(v)) throw malformed("n must be an integer");
      if (v < 1) throw Error(ErrorCode::NonPositiveValue, "cavity " + std::to_string(idx) + " n", line_no);
      c.block_factor = static_cast<int>(v);
    } else {
      throw Error(ErrorCode::UnknownKey, std::string(key), line_no);
    }
  }
  if (!has_w || !has_d) throw malformed("new cavity needs both W and d");
  if (existing) {
    g.cavities[static_cast<std::size_t>(idx)] = c;
  } else {
    g.cavities.push_back(c);
  }
}

}  // namespace

Substrate::Substrate(double relative_permittivity, double thickness)
    : er_(relative_permittivity), thickness_(thickness) {
  if (!(er_ > 1.0)) throw Error(ErrorCode::NonPositiveValue, "er", 0, "relative permittivity must exceed 1");
  if (!(thickness_ > 0.0)) throw Error(ErrorCode::NonPositiveValue, "h");
}

void Cavity::validate() const {
  if (!(width > 0.0)) throw Error(ErrorCode::NonPositiveDimension, "W");
  if (!(length > 0.0)) throw Error(ErrorCode::NonPositiveDimension, "d");
  if (!(thickness > 0.0)) throw Error(ErrorCode::NonPositiveDimension, "h");
  if (block_factor < 1) throw Error(ErrorCode::NonPositiveDimension, "n");
}

double AntennaGeometry::dimension(std::string_view name) const {
  const auto it = dimensions.find(name);
  if (it == dimensions.end()) throw Error(ErrorCode::MissingDimension, std::string(name));
  return it->second;
}

void AntennaGeometry::validate() const {
  for (const auto& [name, value] : dimensions) {
    if (!is_known_dimension(name)) throw Error(ErrorCode::UnknownKey, name);
  }
  for (auto name : kDimensionNames) {
    if (!(dimension(name) > 0.0)) throw Error(ErrorCode::NonPositiveValue, std::string(name));
  }
  for (const auto& c : cavities) c.validate();
}

AntennaGeometry canonical_geometry() {
  static constexpr std::array<double, 26> kMillimeters{
      24, 10.5, 8.5, 7.5, 6.75, 63, 120.75, 51, 36,
      27, 18, 62, 3.7, 78, 24, 24, 7.1, 9.66,
      3.7, 3.8, 16, 5.3, 3.25, 67.5, 3.2, 3.7};
  AntennaGeometry g;
  for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
    g.dimensions.emplace(std::string(kDimensionNames[i]), mm(kMillimeters[i]));
  }
  g.substrate = Substrate(4.4, mm(1.7));
  g.cavities = canonical_cavities();
  return g;
}

std::vector<Cavity> canonical_cavities() {
  static constexpr std::array<std::pair<double, double>, 6> kWidthLengthMm{{
      {3.2, 60}, {18, 7}, {27, 7.5}, {36, 8.5}, {51, 10.5}, {62, 24},
  }};
  std::vector<Cavity> out;
  out.reserve(kWidthLengthMm.size());
  for (std::size_t i = 0; i < kWidthLengthMm.size(); ++i) {
    out.push_back(Cavity{static_cast<int>(i), mm(kWidthLengthMm[i].first),
                         mm(kWidthLengthMm[i].second), mm(1.7), 1});
  }
  return out;
}

AntennaGeometry load_geometry(std::string_view text) {
  AntennaGeometry g;
  g.cavities = canonical_cavities();
  double er = 4.4;
  double h = mm(1.7);
  std::vector<std::pair<std::string, std::size_t>> cavity_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto body = text::trim(text::strip_comment(raw, '#'));
    if (body.empty()) continue;

    if (body.starts_with("cavity ") || body.starts_with("cavity\t")) {
      cavity_lines.emplace_back(std::string(body), line_no);
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::MalformedLine, "", line_no, "expected name = value unit");
    const std::string name(text::trim(body.substr(0, eq)));
    const auto value_text = text::trim(body.substr(eq + 1));
    if (name == "er") {
      if (!text::parse_double(value_text, er)) throw Error(ErrorCode::MalformedLine, name, line_no);
      if (!(er > 1.0)) throw Error(ErrorCode::NonPositiveValue, name, line_no);
      continue;
    }
    if (name != "h" && !is_known_dimension(name)) throw Error(ErrorCode::UnknownKey, name, line_no);
    double meters = 0.0;
    if (!parse_length(value_text, meters)) {
      throw Error(ErrorCode::MalformedLine, name, line_no, "expected '<number> mm' or '<number> m'");
    }
    if (!(meters > 0.0)) throw Error(ErrorCode::NonPositiveValue, name, line_no);
    if (name == "h") {
      h = meters;
    } else if (!g.dimensions.emplace(name, meters).second) {
      throw Error(ErrorCode::MalformedLine, name, line_no, "duplicate dimension");
    }
  }

  g.substrate = Substrate(er, h);
  for (auto& c : g.cavities) c.thickness = h;
  for (const auto& [line, number] : cavity_lines) parse_cavity_line(line, number, g);
  for (auto name : kDimensionNames) {
    if (!g.dimensions.contains(name)) throw Error(ErrorCode::MissingDimension, std::string(name));
  }
  g.validate();
  return g;
}

std::string serialize_geometry(const AntennaGeometry& geometry) {
  std::ostringstream os;
  os << "# antenna geometry (lengths in meters)\n";
  os << "er = " << format_shortest(geometry.substrate.relative_permittivity()) << "\n";
  os << "h = " << format_shortest(geometry.substrate.thickness()) << " m\n";
  for (auto name : kDimensionNames) {
    os << name << " = " << format_shortest(geometry.dimension(name)) << " m\n";
  }
  for (const auto& c : geometry.cavities) {
    os << "cavity " << c.index << " W=" << format_shortest(c.width) << "m d="
       << format_shortest(c.length) << "m n=" << c.block_factor << "\n";
  }
  return os.str();
}

}  // namespace patchladder
