#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patchladder/elements.hpp"

namespace patchladder {

enum class Topology {
  series_rlc,          // R + jwL + 1/(jwC) in the through path
  shunt_series_rlc,    // series R-L-C branch to ground
  shunt_parallel_rlc,  // R || L || C to ground
  series_rl_shunt_c,   // series R + jwL, then shunt C
  tline,               // uniform transmission line
};

std::string_view to_string(Topology t) noexcept;
std::optional<Topology> topology_from_string(std::string_view name) noexcept;

/// Section parameters, declared in canonical (ASCII) serialization order.
enum class Param { C, L, R, eps_eff, len, z0 };
inline constexpr std::array<Param, 6> kAllParams{Param::C, Param::L, Param::R,
                                                 Param::eps_eff, Param::len, Param::z0};

std::string_view to_string(Param p) noexcept;
std::optional<Param> param_from_string(std::string_view name) noexcept;
UnitKind unit_of(Param p) noexcept;

/// A named two-port block of the ladder. Construction validates the
/// parameter set against the topology.
class Section {
 public:
  using Values = std::array<std::optional<double>, kAllParams.size()>;

  Section(std::string name, Topology topology, Values values);

  const std::string& name() const noexcept { return name_; }
  Topology topology() const noexcept { return topology_; }
  std::optional<double> get(Param p) const noexcept { return values_[static_cast<std::size_t>(p)]; }
  double get_or(Param p, double fallback) const noexcept { return get(p).value_or(fallback); }
  const Values& values() const noexcept { return values_; }

  /// Copy with one parameter replaced (re-validated).
  Section with(Param p, double value) const;

  friend bool operator==(const Section&, const Section&) = default;

 private:
  std::string name_;
  Topology topology_;
  Values values_;
};

/// Port impedances plus the sections from input to output.
class Netlist {
 public:
  Netlist(double input_port_impedance, double output_port_impedance,
          std::vector<Section> sections = {});

  double input_port_impedance() const noexcept { return z_in_; }
  double output_port_impedance() const noexcept { return z_out_; }
  std::span<const Section> sections() const noexcept { return sections_; }

  /// Throws Error(UnknownSection) if no section carries `name`.
  const Section& section(std::string_view name) const;
  Netlist with_parameter(std::string_view section_name, Param p, double value) const;

  friend bool operator==(const Netlist&, const Netlist&) = default;

 private:
  double z_in_;
  double z_out_;
  std::vector<Section> sections_;
};

Netlist parse_netlist(std::string_view text);
std::string serialize_netlist(const Netlist& netlist);

/// Feed line for the capacitance-only row of an extraction.
struct FeedLine {
  MicrostripResult line;
  double length = 0.0;  // m
};

struct PortImpedances {
  double input = 50.0;
  double output = 4.5;
};

/// Builds the default ladder: the capacitance-only row becomes a `tline`
/// (when a feed is given) or a shunt capacitor; every other row becomes a
/// series_rl_shunt_c section. Sections are named s<cavity index>.
Netlist from_elements(std::span<const LumpedElements> elements,
                      const std::optional<FeedLine>& feed,
                      PortImpedances ports = {});

}  // namespace patchladder
