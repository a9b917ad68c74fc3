#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <array>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "patchladder/patchladder.hpp"

namespace patchladder::cli {

namespace {

namespace fs = std::filesystem;

struct Context {
  std::ostream& out;
  std::ostream& err;

  std::string read_input(const std::string& path) const {
    std::string bytes = read_file(path);
    err << "input " << path << " sha256=" << sha256_hex(bytes) << '\n';
    return bytes;
  }
};

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!text::parse_double(item, v)) throw Error(ErrorCode::MalformedLine, item, 0, "expected a number");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

TouchstoneOptions touchstone_options(const std::string& unit, const std::string& format) {
  TouchstoneOptions o;
  if (unit == "Hz") o.unit = FrequencyUnit::Hz;
  else if (unit == "kHz") o.unit = FrequencyUnit::kHz;
  else if (unit == "MHz") o.unit = FrequencyUnit::MHz;
  else o.unit = FrequencyUnit::GHz;
  if (format == "MA") o.format = TouchstoneFormat::MA;
  else if (format == "DB") o.format = TouchstoneFormat::DB;
  else o.format = TouchstoneFormat::RI;
  return o;
}

SParameterTrace one_port(SParameterTrace t) {
  t.s21.clear();
  t.s12.clear();
  t.s22.clear();
  return t;
}

// "low:high:ceiling_db", frequencies in Hz.
MaskInterval parse_mask_interval(const std::string& s) {
  const auto parts = [&] {
    std::vector<std::string> p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) p.push_back(item);
    return p;
  }();
  MaskInterval iv;
  if (parts.size() != 3 || !text::parse_double(parts[0], iv.low) || !text::parse_double(parts[1], iv.high) ||
      !text::parse_double(parts[2], iv.ceiling_db)) {
    throw Error(ErrorCode::MalformedLine, s, 0, "mask interval must be low:high:ceiling_db");
  }
  return iv;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Equivalent-circuit toolkit for ladder-modeled patch antennas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // extract
  std::string geometry_path;
  double frequency = 2.5e9;
  std::string elements_out;
  auto* extract = app.add_subcommand("extract", "Compute per-cavity R/L/C from a geometry file");
  extract->add_option("--geometry", geometry_path, "Geometry file (default: built-in reference antenna)");
  extract->add_option("--frequency", frequency, "Evaluation frequency for R in Hz")->capture_default_str();
  extract->add_option("--out", elements_out, "Elements CSV output")->required();

  // microstrip
  double width = 0.0, height = 1.7e-3, er = 4.4;
  auto* micro = app.add_subcommand("microstrip", "Effective permittivity and Z0 of a microstrip line");
  micro->add_option("--width", width, "Strip width in m")->required();
  micro->add_option("--height", height, "Substrate height in m")->capture_default_str();
  micro->add_option("--er", er, "Relative permittivity")->capture_default_str();

  // build
  std::string elements_in, ports = "50,4.5", netlist_out;
  double build_height = 1.7e-3, build_er = 4.4;
  bool no_feed = false;
  auto* build = app.add_subcommand("build", "Assemble the ladder netlist from an elements CSV");
  build->add_option("--elements", elements_in, "Elements CSV from 'extract'")->required();
  build->add_option("--ports", ports, "Input,output port impedances in ohm")->capture_default_str();
  build->add_option("--height", build_height, "Substrate height in m (feed line)")->capture_default_str();
  build->add_option("--er", build_er, "Relative permittivity (feed line)")->capture_default_str();
  build->add_flag("--no-feed", no_feed, "Model the capacitance-only row as a shunt C instead of a line");
  build->add_option("--out", netlist_out, "Netlist output")->required();

  // simulate
  std::string netlist_in, touchstone_out, csv_out, unit = "GHz", format = "RI";
  double fstart = 0.1e9, fstop = 6e9;
  int points = 1201;
  auto* simulate = app.add_subcommand("simulate", "Sweep a netlist and write Touchstone/CSV");
  simulate->add_option("--netlist", netlist_in, "Netlist file")->required();
  simulate->add_option("--fstart", fstart, "Start frequency in Hz")->capture_default_str();
  simulate->add_option("--fstop", fstop, "Stop frequency in Hz")->capture_default_str();
  simulate->add_option("--points", points, "Number of linear grid points")->capture_default_str();
  simulate->add_option("--out", touchstone_out, "Touchstone output (.s1p, or .s2p for two-port)")->required();
  simulate->add_option("--csv", csv_out, "Optional CSV trace output");
  simulate->add_option("--unit", unit, "Touchstone frequency unit")
      ->check(CLI::IsMember({"Hz", "kHz", "MHz", "GHz"}))->capture_default_str();
  simulate->add_option("--format", format, "Touchstone data format")
      ->check(CLI::IsMember({"RI", "MA", "DB"}))->capture_default_str();

  // bandwidth
  std::string input;
  double threshold = -10.0;
  std::string report_csv;
  auto* bandwidth = app.add_subcommand("bandwidth", "Report operating bands of a Touchstone trace");
  bandwidth->add_option("--input", input, "Touchstone file")->required();
  bandwidth->add_option("--threshold", threshold, "Band threshold in dB")->capture_default_str();
  bandwidth->add_option("--csv", report_csv, "Optional CSV band table output");

  // compare
  std::string trace_a, trace_b;
  auto* compare = app.add_subcommand("compare", "Similarity of two Touchstone traces");
  compare->add_option("--a", trace_a, "Reference trace")->required();
  compare->add_option("--b", trace_b, "Trace compared against --a")->required();
  compare->add_option("--threshold", threshold, "Band threshold in dB")->capture_default_str();
  compare->add_option("--csv", report_csv, "Optional CSV report output");

  // fit
  std::string target_path, vary, fitted_out;
  std::vector<std::string> mask_specs;
  int max_iter = 500;
  std::uint64_t seed = 1;
  int restarts = 8;
  double bounds_factor = 10.0, tolerance = 1e-10;
  auto* fitcmd = app.add_subcommand("fit", "Adjust netlist parameters to a target trace or mask");
  fitcmd->add_option("--netlist", netlist_in, "Starting netlist")->required();
  auto* target_opt = fitcmd->add_option("--target", target_path, "Target Touchstone trace");
  auto* mask_opt = fitcmd->add_option("--mask", mask_specs, "Mask interval low_hz:high_hz:ceiling_db (repeatable)");
  target_opt->excludes(mask_opt);
  fitcmd->add_option("--vary", vary, "Free parameters, e.g. s1.L,s1.C")->required();
  fitcmd->add_option("--bounds-factor", bounds_factor, "Bounds are start/x .. start*x")->capture_default_str();
  fitcmd->add_option("--max-iter", max_iter, "Iteration budget")->capture_default_str();
  fitcmd->add_option("--tolerance", tolerance, "Relative cost spread for convergence")->capture_default_str();
  fitcmd->add_option("--seed", seed, "Seed for restart simplices")->capture_default_str();
  fitcmd->add_option("--restarts", restarts, "Extra seeded simplex runs (multi-start)")->capture_default_str();
  fitcmd->add_option("--fstart", fstart, "Grid start in Hz (default: target span)");
  fitcmd->add_option("--fstop", fstop, "Grid stop in Hz (default: target span)");
  fitcmd->add_option("--points", points, "Grid points (default: target sample count)");
  fitcmd->add_option("--out", fitted_out, "Fitted netlist output")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  err << "patchladder " << kVersion << '\n';
  try {
    if (*extract) {
      const AntennaGeometry g = geometry_path.empty() ? canonical_geometry()
                                                      : load_geometry(ctx.read_input(geometry_path));
      const auto rows = extract_all(g.cavities, g.substrate, frequency);
      write_file_atomic(elements_out, write_elements_csv(rows, g.cavities));
      out << "cavities=" << rows.size() << '\n';
      return kSuccess;
    }
    if (*micro) {
      const auto r = microstrip(width, height, er);
      out << "eps_eff=" << format_general(r.effective_permittivity, 9) << '\n';
      out << "z0_ohm=" << format_general(r.characteristic_impedance, 9) << '\n';
      out << "width_to_height=" << format_general(r.width_to_height, 9) << '\n';
      out << "branch=" << (r.branch == MicrostripBranch::narrow ? "narrow" : "wide") << '\n';
      return kSuccess;
    }
    if (*build) {
      const auto rows = read_elements_csv(ctx.read_input(elements_in));
      const auto z = parse_number_list(ports);
      if (z.size() != 2) throw Error(ErrorCode::MalformedLine, ports, 0, "--ports needs two values");
      std::vector<LumpedElements> elements;
      std::optional<FeedLine> feed;
      for (const auto& r : rows) {
        elements.push_back(r.elements);
        if (!r.elements.inductance && !no_feed && !feed) {
          feed = FeedLine{microstrip(r.cavity.width, build_height, build_er), r.cavity.length};
        }
      }
      const Netlist n = from_elements(elements, feed, {z[0], z[1]});
      write_file_atomic(netlist_out, serialize_netlist(n));
      out << "sections=" << n.sections().size() << '\n';
      return kSuccess;
    }
    if (*simulate) {
      const Netlist n = parse_netlist(ctx.read_input(netlist_in));
      const SweepGrid grid{fstart, fstop, points};
      SParameterTrace t = sweep(n, grid);
      if (fs::path(touchstone_out).extension() != ".s2p") t = one_port(std::move(t));
      write_file_atomic(touchstone_out, write_touchstone(t, touchstone_options(unit, format)));
      if (!csv_out.empty()) write_file_atomic(csv_out, write_trace_csv(t));
      out << "points=" << t.size() << '\n';
      return kSuccess;
    }
    if (*bandwidth) {
      const auto t = read_touchstone(ctx.read_input(input));
      const auto report = band_report(t, threshold);
      out << format_band_report(report);
      if (!report_csv.empty()) write_file_atomic(report_csv, band_report_csv(report));
      return report.bands.empty() ? kNoBandFound : kSuccess;
    }
    if (*compare) {
      const auto a = read_touchstone(ctx.read_input(trace_a));
      const auto b = read_touchstone(ctx.read_input(trace_b));
      const auto report = compare_traces(a, b, threshold);
      out << format_similarity_report(report);
      if (!report_csv.empty()) write_file_atomic(report_csv, similarity_report_csv(report));
      return kSuccess;
    }
    if (*fitcmd) {
      if (target_path.empty() && mask_specs.empty()) {
        throw Error(ErrorCode::MalformedLine, "fit", 0, "either --target or --mask is required");
      }
      if (!(bounds_factor > 1.0)) throw Error(ErrorCode::InvalidBounds, "--bounds-factor", 0, "must exceed 1");
      const Netlist n = parse_netlist(ctx.read_input(netlist_in));
      std::optional<SParameterTrace> target;
      Mask mask;
      if (!target_path.empty()) {
        target = read_touchstone(ctx.read_input(target_path));
      } else {
        for (const auto& m : mask_specs) mask.intervals.push_back(parse_mask_interval(m));
      }
      SweepGrid grid{fstart, fstop, points};
      if (target) {
        if (fitcmd->count("--fstart") == 0) grid.start = target->frequencies.front();
        if (fitcmd->count("--fstop") == 0) grid.stop = target->frequencies.back();
        if (fitcmd->count("--points") == 0) grid.points = static_cast<int>(target->size());
      }
      std::vector<FreeParameter> free;
      for (const auto& v : split_commas(vary)) {
        FreeParameter fp = parse_free_parameter(v);
        const double start = n.section(fp.section).get(fp.param).value_or(0.0);
        if (!(start > 0.0)) {
          throw Error(ErrorCode::InvalidBounds, v, 0, "free parameter needs a positive starting value");
        }
        fp.low = start / bounds_factor;
        fp.high = start * bounds_factor;
        free.push_back(fp);
      }
      FitProblem problem{n, free, target ? FitTarget{*target} : FitTarget{mask}, grid, max_iter, tolerance,
                         seed, restarts, {}};
      const FitResult result = fit(problem);
      write_file_atomic(fitted_out, serialize_netlist(result.netlist));
      out << format_fit_result(result, free);
      return kSuccess;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kNumericalFailure : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInputError;
}

}  // namespace patchladder::cli
