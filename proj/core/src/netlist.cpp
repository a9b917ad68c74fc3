#include "patchladder/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "patchladder/error.hpp"

namespace patchladder {

namespace {

constexpr std::array<std::pair<Topology, std::string_view>, 5> kTopologyNames{{
    {Topology::series_rlc, "series_rlc"},
    {Topology::shunt_series_rlc, "shunt_series_rlc"},
    {Topology::shunt_parallel_rlc, "shunt_parallel_rlc"},
    {Topology::series_rl_shunt_c, "series_rl_shunt_c"},
    {Topology::tline, "tline"},
}};

constexpr std::array<std::string_view, 6> kParamNames{"C", "L", "R", "eps_eff", "len", "z0"};

bool is_lumped(Param p) { return p == Param::R || p == Param::L || p == Param::C; }

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

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

void validate_section(const std::string& name, Topology topology, const Section::Values& v) {
  const auto has = [&](Param p) { return v[static_cast<std::size_t>(p)].has_value(); };
  const auto val = [&](Param p) { return *v[static_cast<std::size_t>(p)]; };
  const auto bad = [&](Param p, const char* why) {
    return Error(ErrorCode::InvalidParameterValue, std::string(to_string(p)), 0,
                 "section " + name + ": " + why);
  };

  if (!valid_identifier(name)) throw Error(ErrorCode::MalformedLine, name, 0, "invalid section name");

  for (Param p : kAllParams) {
    if (!has(p)) continue;
    if (!std::isfinite(val(p))) throw bad(p, "not finite");
    const bool forbidden = topology == Topology::tline ? is_lumped(p) : !is_lumped(p);
    if (forbidden) throw Error(ErrorCode::ForbiddenParameter, std::string(to_string(p)), 0,
                               "not allowed for topology " + std::string(to_string(topology)));
  }

  if (topology == Topology::tline) {
    for (Param p : {Param::z0, Param::eps_eff, Param::len}) {
      if (!has(p)) throw Error(ErrorCode::MissingRequiredParameter, std::string(to_string(p)), 0,
                               "tline requires z0, eps_eff and len");
    }
    if (!(val(Param::z0) > 0.0)) throw bad(Param::z0, "must be > 0");
    if (!(val(Param::eps_eff) >= 1.0)) throw bad(Param::eps_eff, "must be >= 1");
    if (!(val(Param::len) >= 0.0)) throw bad(Param::len, "must be >= 0");
    return;
  }

  if (has(Param::L) && !(val(Param::L) > 0.0)) throw bad(Param::L, "must be > 0");
  if (has(Param::C) && !(val(Param::C) > 0.0)) throw bad(Param::C, "must be > 0");
  if (has(Param::R) && !(val(Param::R) >= 0.0)) throw bad(Param::R, "must be >= 0");

  switch (topology) {
    case Topology::series_rl_shunt_c:
      for (Param p : {Param::L, Param::C}) {
        if (!has(p)) throw Error(ErrorCode::MissingRequiredParameter, std::string(to_string(p)), 0,
                                 "series_rl_shunt_c requires L and C");
      }
      break;
    case Topology::series_rlc:
    case Topology::shunt_series_rlc:
      if (!has(Param::R) && !has(Param::L) && !has(Param::C)) {
        throw Error(ErrorCode::MissingRequiredParameter, "R", 0, "at least one of R, L, C required");
      }
      // A shunt branch of R = 0 alone shorts the ladder.
      if (topology == Topology::shunt_series_rlc && !has(Param::L) && !has(Param::C) &&
          !(val(Param::R) > 0.0)) {
        throw bad(Param::R, "a resistive-only shunt branch needs R > 0");
      }
      break;
    case Topology::shunt_parallel_rlc:
      if (!has(Param::R) && !has(Param::L) && !has(Param::C)) {
        throw Error(ErrorCode::MissingRequiredParameter, "R", 0, "at least one of R, L, C required");
      }
      if (has(Param::R) && !(val(Param::R) > 0.0)) throw bad(Param::R, "parallel R must be > 0");
      break;
    case Topology::tline:
      break;
  }
}

}  // namespace

std::string_view to_string(Topology t) noexcept {
  for (const auto& [topo, name] : kTopologyNames) {
    if (topo == t) return name;
  }
  return "unknown";
}

std::optional<Topology> topology_from_string(std::string_view name) noexcept {
  for (const auto& [topo, n] : kTopologyNames) {
    if (n == name) return topo;
  }
  return std::nullopt;
}

std::string_view to_string(Param p) noexcept { return kParamNames[static_cast<std::size_t>(p)]; }

std::optional<Param> param_from_string(std::string_view name) noexcept {
  for (Param p : kAllParams) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

UnitKind unit_of(Param p) noexcept {
  switch (p) {
    case Param::R:
    case Param::z0: return UnitKind::ohms;
    case Param::L: return UnitKind::henries;
    case Param::C: return UnitKind::farads;
    case Param::len: return UnitKind::meters;
    case Param::eps_eff: return UnitKind::dimensionless;
  }
  return UnitKind::dimensionless;
}

Section::Section(std::string name, Topology topology, Values values)
    : name_(std::move(name)), topology_(topology), values_(values) {
  validate_section(name_, topology_, values_);
}

Section Section::with(Param p, double value) const {
  Values v = values_;
  v[static_cast<std::size_t>(p)] = value;
  return Section(name_, topology_, v);
}

Netlist::Netlist(double input_port_impedance, double output_port_impedance,
                 std::vector<Section> sections)
    : z_in_(input_port_impedance), z_out_(output_port_impedance), sections_(std::move(sections)) {
  if (!(z_in_ > 0.0) || !std::isfinite(z_in_)) {
    throw Error(ErrorCode::InvalidParameterValue, "port in", 0, "impedance must be positive and finite");
  }
  if (!(z_out_ > 0.0) || !std::isfinite(z_out_)) {
    throw Error(ErrorCode::InvalidParameterValue, "port out", 0, "impedance must be positive and finite");
  }
  std::set<std::string_view> names;
  for (const auto& s : sections_) {
    if (!names.insert(s.name()).second) throw Error(ErrorCode::DuplicateSectionName, s.name());
  }
}

const Section& Netlist::section(std::string_view name) const {
  for (const auto& s : sections_) {
    if (s.name() == name) return s;
  }
  throw Error(ErrorCode::UnknownSection, std::string(name));
}

Netlist Netlist::with_parameter(std::string_view section_name, Param p, double value) const {
  std::vector<Section> copy = sections_;
  for (auto& s : copy) {
    if (s.name() == section_name) {
      s = s.with(p, value);
      return Netlist(z_in_, z_out_, std::move(copy));
    }
  }
  throw Error(ErrorCode::UnknownSection, std::string(section_name));
}

Netlist parse_netlist(std::string_view text) {
  std::optional<double> z_in;
  std::optional<double> z_out;
  std::vector<Section> sections;
  std::set<std::string, std::less<>> names;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto tokens = split_ws(text::trim(text::strip_comment(raw, '#')));
    if (tokens.empty()) continue;

    const auto value_of = [&](std::string_view token, std::string_view key) {
      try {
        return parse_si(token.substr(key.size()));
      } catch (const Error&) {
        throw Error(ErrorCode::BadValueSuffix, std::string(token), line_no);
      }
    };

    if (tokens[0] == "port") {
      if (tokens.size() != 3 || (tokens[1] != "in" && tokens[1] != "out") ||
          !tokens[2].starts_with("z0=")) {
        throw Error(ErrorCode::MalformedLine, "port", line_no, "expected: port in|out z0=<value>");
      }
      auto& slot = tokens[1] == "in" ? z_in : z_out;
      if (slot) throw Error(ErrorCode::DuplicatePort, std::string(tokens[1]), line_no);
      slot = value_of(tokens[2], "z0=");
      if (!(*slot > 0.0)) {
        throw Error(ErrorCode::InvalidParameterValue, "z0", line_no, "port impedance must be positive");
      }
      continue;
    }

    if (tokens[0] != "section") {
      throw Error(ErrorCode::MalformedLine, std::string(tokens[0]), line_no,
                  "expected 'port', 'section', comment or blank line");
    }
    if (tokens.size() < 3 || !tokens[2].starts_with("topology=")) {
      throw Error(ErrorCode::MalformedLine, "section", line_no,
                  "expected: section <name> topology=<topology> {param=value}");
    }
    const std::string name(tokens[1]);
    const auto topo_name = tokens[2].substr(std::string_view("topology=").size());
    const auto topo = topology_from_string(topo_name);
    if (!topo) throw Error(ErrorCode::UnknownTopology, std::string(topo_name), line_no);
    if (names.contains(name)) throw Error(ErrorCode::DuplicateSectionName, name, line_no);

    Section::Values values;
    for (std::size_t t = 3; t < tokens.size(); ++t) {
      const auto eq = tokens[t].find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw Error(ErrorCode::MalformedLine, std::string(tokens[t]), line_no, "expected param=value");
      }
      const auto key = tokens[t].substr(0, eq);
      const auto p = param_from_string(key);
      if (!p) throw Error(ErrorCode::MalformedLine, std::string(key), line_no, "unknown parameter");
      auto& slot = values[static_cast<std::size_t>(*p)];
      if (slot) throw Error(ErrorCode::MalformedLine, std::string(key), line_no, "parameter repeated");
      slot = value_of(tokens[t], tokens[t].substr(0, eq + 1));
    }
    try {
      sections.emplace_back(name, *topo, values);
    } catch (const Error& e) {
      throw Error(e.code(), e.subject(), line_no, "section " + name);
    }
    names.insert(name);
  }

  if (!z_in) throw Error(ErrorCode::MissingPort, "in");
  if (!z_out) throw Error(ErrorCode::MissingPort, "out");
  return Netlist(*z_in, *z_out, std::move(sections));
}

std::string serialize_netlist(const Netlist& netlist) {
  std::ostringstream os;
  os << "port in z0=" << format_si(netlist.input_port_impedance()) << "\n";
  os << "port out z0=" << format_si(netlist.output_port_impedance()) << "\n";
  for (const auto& s : netlist.sections()) {
    os << "section " << s.name() << " topology=" << to_string(s.topology());
    for (Param p : kAllParams) {
      if (const auto v = s.get(p)) os << " " << to_string(p) << "=" << format_si(*v);
    }
    os << "\n";
  }
  return os.str();
}

Netlist from_elements(std::span<const LumpedElements> elements,
                      const std::optional<FeedLine>& feed, PortImpedances ports) {
  if (elements.empty()) throw Error(ErrorCode::MissingRequiredParameter, "elements", 0, "no elements");
  std::vector<Section> sections;
  sections.reserve(elements.size());
  for (const auto& e : elements) {
    const std::string name = "s" + std::to_string(e.source_cavity_index);
    Section::Values v;
    if (!e.inductance) {
      if (feed) {
        v[static_cast<std::size_t>(Param::z0)] = feed->line.characteristic_impedance;
        v[static_cast<std::size_t>(Param::eps_eff)] = feed->line.effective_permittivity;
        v[static_cast<std::size_t>(Param::len)] = feed->length;
        sections.emplace_back(name, Topology::tline, v);
      } else {
        v[static_cast<std::size_t>(Param::C)] = e.capacitance;
        sections.emplace_back(name, Topology::shunt_parallel_rlc, v);
      }
      continue;
    }
    v[static_cast<std::size_t>(Param::L)] = *e.inductance;
    v[static_cast<std::size_t>(Param::C)] = e.capacitance;
    if (e.resistance) v[static_cast<std::size_t>(Param::R)] = *e.resistance;
    sections.emplace_back(name, Topology::series_rl_shunt_c, v);
  }
  return Netlist(ports.input, ports.output, std::move(sections));
}

}  // namespace patchladder
