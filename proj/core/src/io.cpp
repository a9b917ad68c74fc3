#include "patchladder/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "patchladder/error.hpp"

namespace patchladder {

namespace {

constexpr int kTouchstoneDigits = 12;
constexpr int kCsvDigits = 9;
constexpr std::string_view kPort2Tag = "PORT2_REF_OHMS";

double unit_scale(FrequencyUnit u) {
  switch (u) {
    case FrequencyUnit::Hz: return 1.0;
    case FrequencyUnit::kHz: return 1e3;
    case FrequencyUnit::MHz: return 1e6;
    case FrequencyUnit::GHz: return 1e9;
  }
  return 1.0;
}

const char* unit_name(FrequencyUnit u) {
  switch (u) {
    case FrequencyUnit::Hz: return "Hz";
    case FrequencyUnit::kHz: return "kHz";
    case FrequencyUnit::MHz: return "MHz";
    case FrequencyUnit::GHz: return "GHz";
  }
  return "Hz";
}

const char* format_name(TouchstoneFormat f) {
  switch (f) {
    case TouchstoneFormat::RI: return "RI";
    case TouchstoneFormat::MA: return "MA";
    case TouchstoneFormat::DB: return "DB";
  }
  return "RI";
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_csv(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(text::trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    f(raw, ++line_no);
  }
}

TouchstoneOptions parse_option_line(std::string_view body, std::size_t line_no, double& resistance) {
  TouchstoneOptions opt{FrequencyUnit::GHz, TouchstoneFormat::MA};
  const auto tokens = split_ws(body.substr(1));
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto t = upper(tokens[k]);
    if (t == "HZ") opt.unit = FrequencyUnit::Hz;
    else if (t == "KHZ") opt.unit = FrequencyUnit::kHz;
    else if (t == "MHZ") opt.unit = FrequencyUnit::MHz;
    else if (t == "GHZ") opt.unit = FrequencyUnit::GHz;
    else if (t == "S") continue;
    else if (t == "RI") opt.format = TouchstoneFormat::RI;
    else if (t == "MA") opt.format = TouchstoneFormat::MA;
    else if (t == "DB") opt.format = TouchstoneFormat::DB;
    else if (t == "R") {
      if (k + 1 >= tokens.size() || !text::parse_double(tokens[k + 1], resistance) || !(resistance > 0.0)) {
        throw Error(ErrorCode::BadOptionLine, "R", line_no, "reference resistance must be a positive number");
      }
      ++k;
    } else {
      throw Error(ErrorCode::BadOptionLine, std::string(tokens[k]), line_no,
                  "only S parameters in Hz/kHz/MHz/GHz with RI/MA/DB are supported");
    }
  }
  return opt;
}

Complex decode_pair(double x, double y, TouchstoneFormat fmt) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  switch (fmt) {
    case TouchstoneFormat::RI: return {x, y};
    case TouchstoneFormat::MA: return std::polar(x, y * kDeg);
    case TouchstoneFormat::DB: return std::polar(std::pow(10.0, x / 20.0), y * kDeg);
  }
  return {x, y};
}

void encode_pair(std::ostream& os, Complex s, TouchstoneFormat fmt) {
  double x = s.real();
  double y = s.imag();
  if (fmt != TouchstoneFormat::RI) {
    const double mag = std::abs(s);
    x = fmt == TouchstoneFormat::MA ? mag : magnitude_db(s);
    y = mag == 0.0 ? 0.0 : std::arg(s) * 180.0 / std::numbers::pi;
  }
  os << ' ' << format_scientific(x, kTouchstoneDigits) << ' ' << format_scientific(y, kTouchstoneDigits);
}

std::string csv_number(double v) { return format_general(v, kCsvDigits); }

std::string optional_number(const std::optional<double>& v) {
  return v ? format_general(*v, kCsvDigits) : std::string("absent");
}

}  // namespace

SParameterTrace read_touchstone(std::string_view text) {
  SParameterTrace t;
  TouchstoneOptions opt{FrequencyUnit::GHz, TouchstoneFormat::MA};
  double resistance = 50.0;
  std::optional<double> port2;
  bool have_options = false;
  std::size_t columns = 0;

  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    const auto line = text::trim(raw);
    if (line.empty()) return;
    if (line.front() == '!') {
      const auto tokens = split_ws(line.substr(1));
      if (tokens.size() == 2 && tokens[0] == kPort2Tag) {
        double z = 0.0;
        if (!text::parse_double(tokens[1], z) || !(z > 0.0)) {
          throw Error(ErrorCode::BadOptionLine, std::string(kPort2Tag), line_no);
        }
        port2 = z;
      }
      return;
    }
    if (line.front() == '#') {
      if (!t.frequencies.empty()) throw Error(ErrorCode::BadOptionLine, "#", line_no, "option line after data");
      if (!have_options) opt = parse_option_line(line, line_no, resistance);
      have_options = true;
      return;
    }
    const auto tokens = split_ws(text::strip_comment(line, '!'));
    std::vector<double> v(tokens.size());
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (!text::parse_double(tokens[k], v[k])) throw Error(ErrorCode::MalformedRow, std::string(tokens[k]), line_no);
    }
    if (columns == 0) {
      if (v.size() != 3 && v.size() != 9) {
        throw Error(ErrorCode::MalformedRow, "", line_no, "expected 3 (.s1p) or 9 (.s2p) columns");
      }
      columns = v.size();
    } else if (v.size() != columns) {
      throw Error(ErrorCode::MalformedRow, "", line_no, "column count changed");
    }
    const double f = v[0] * unit_scale(opt.unit);
    if (!(f > 0.0)) throw Error(ErrorCode::MalformedRow, "frequency", line_no, "frequency must be positive");
    if (!t.frequencies.empty() && !(f > t.frequencies.back())) {
      throw Error(ErrorCode::NonMonotoneFrequency, "", line_no);
    }
    if (opt.format == TouchstoneFormat::MA && (v[1] < 0.0 || (columns == 9 && (v[3] < 0.0 || v[5] < 0.0 || v[7] < 0.0)))) {
      throw Error(ErrorCode::MalformedRow, "magnitude", line_no, "negative magnitude");
    }
    t.frequencies.push_back(f);
    t.s11.push_back(decode_pair(v[1], v[2], opt.format));
    if (columns == 9) {
      t.s21.push_back(decode_pair(v[3], v[4], opt.format));
      t.s12.push_back(decode_pair(v[5], v[6], opt.format));
      t.s22.push_back(decode_pair(v[7], v[8], opt.format));
    }
  });

  if (t.frequencies.empty()) throw Error(ErrorCode::EmptyTrace, "touchstone", 0, "no data rows");
  t.z01 = resistance;
  t.z02 = port2.value_or(resistance);
  t.validate();
  return t;
}

std::string write_touchstone(const SParameterTrace& trace, TouchstoneOptions options) {
  trace.validate();
  const bool two_port = trace.has_two_port() && !trace.s12.empty() && !trace.s22.empty();
  std::ostringstream os;
  os << "! patchladder " << (two_port ? "two-port" : "one-port") << " S-parameters\n";
  if (two_port || trace.z02 != trace.z01) {
    os << "! " << kPort2Tag << ' ' << format_shortest(trace.z02) << '\n';
  }
  os << "# " << unit_name(options.unit) << " S " << format_name(options.format) << " R "
     << format_shortest(trace.z01) << '\n';
  const double scale = unit_scale(options.unit);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << format_scientific(trace.frequencies[i] / scale, kTouchstoneDigits);
    encode_pair(os, trace.s11[i], options.format);
    if (two_port) {
      encode_pair(os, trace.s21[i], options.format);
      encode_pair(os, trace.s12[i], options.format);
      encode_pair(os, trace.s22[i], options.format);
    }
    os << '\n';
  }
  return os.str();
}

std::string write_trace_csv(const SParameterTrace& trace) {
  trace.validate();
  std::ostringstream os;
  os << "freq_hz,s11_re,s11_im,s11_db\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << csv_number(trace.frequencies[i]) << ',' << csv_number(trace.s11[i].real()) << ','
       << csv_number(trace.s11[i].imag()) << ',' << csv_number(magnitude_db(trace.s11[i])) << '\n';
  }
  return os.str();
}

std::string write_elements_csv(std::span<const LumpedElements> elements,
                               std::span<const Cavity> cavities) {
  std::ostringstream os;
  os << "cavity,W_m,d_m,n,C_F,L_H,R_ohm\n";
  for (const auto& e : elements) {
    const auto it = std::find_if(cavities.begin(), cavities.end(),
                                 [&](const Cavity& c) { return c.index == e.source_cavity_index; });
    if (it == cavities.end()) throw Error(ErrorCode::MalformedRow, "cavity " + std::to_string(e.source_cavity_index));
    os << e.source_cavity_index << ',' << csv_number(it->width) << ',' << csv_number(it->length) << ','
       << it->block_factor << ',' << csv_number(e.capacitance) << ','
       << (e.inductance ? csv_number(*e.inductance) : "") << ','
       << (e.resistance ? csv_number(*e.resistance) : "") << '\n';
  }
  return os.str();
}

std::vector<ElementsRow> read_elements_csv(std::string_view text) {
  std::vector<ElementsRow> rows;
  bool header = false;
  for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') return;
    if (!header) {
      if (line != "cavity,W_m,d_m,n,C_F,L_H,R_ohm") {
        throw Error(ErrorCode::MalformedRow, "header", line_no, "expected cavity,W_m,d_m,n,C_F,L_H,R_ohm");
      }
      header = true;
      return;
    }
    const auto f = split_csv(line);
    if (f.size() != 7) throw Error(ErrorCode::MalformedRow, "", line_no, "expected 7 fields");
    const auto num = [&](std::string_view s, const char* what) {
      double v = 0.0;
      if (!text::parse_double(s, v)) throw Error(ErrorCode::MalformedRow, what, line_no);
      return v;
    };
    ElementsRow r;
    const double idx = num(f[0], "cavity");
    const double n = num(f[3], "n");
    if (idx < 0 || idx != std::floor(idx) || n < 1 || n != std::floor(n)) {
      throw Error(ErrorCode::MalformedRow, "cavity/n", line_no, "must be integers");
    }
    r.cavity.index = static_cast<int>(idx);
    r.cavity.width = num(f[1], "W_m");
    r.cavity.length = num(f[2], "d_m");
    r.cavity.block_factor = static_cast<int>(n);
    r.elements.source_cavity_index = r.cavity.index;
    r.elements.capacitance = num(f[4], "C_F");
    if (!f[5].empty()) r.elements.inductance = num(f[5], "L_H");
    if (!f[6].empty()) r.elements.resistance = num(f[6], "R_ohm");
    if (!(r.cavity.width > 0.0) || !(r.cavity.length > 0.0) || !(r.elements.capacitance > 0.0) ||
        (r.elements.inductance && !(*r.elements.inductance > 0.0)) ||
        (r.elements.resistance && !(*r.elements.resistance >= 0.0))) {
      throw Error(ErrorCode::MalformedRow, "", line_no, "non-positive element or dimension");
    }
    rows.push_back(r);
  });
  if (!header) throw Error(ErrorCode::MalformedRow, "header", 1, "empty elements file");
  return rows;
}

std::string format_band_report(const BandReport& report) {
  std::ostringstream os;
  os << "threshold_db=" << csv_number(report.threshold_db) << '\n';
  os << "band_count=" << report.bands.size() << '\n';
  for (std::size_t k = 0; k < report.bands.size(); ++k) {
    os << "band." << k << ".low_hz=" << csv_number(report.bands[k].low) << '\n';
    os << "band." << k << ".high_hz=" << csv_number(report.bands[k].high) << '\n';
  }
  os << "widest_band=" << (report.widest_band ? std::to_string(*report.widest_band) : "absent") << '\n';
  os << "mismatch_efficiency_percent=" << optional_number(report.mismatch_efficiency_percent) << '\n';
  os << "max_vswr_in_band=" << optional_number(report.max_vswr_in_band) << '\n';
  return os.str();
}

std::string band_report_csv(const BandReport& report) {
  std::ostringstream os;
  os << "band,f_low_hz,f_high_hz,width_hz,widest\n";
  for (std::size_t k = 0; k < report.bands.size(); ++k) {
    const auto& b = report.bands[k];
    os << k << ',' << csv_number(b.low) << ',' << csv_number(b.high) << ',' << csv_number(b.width())
       << ',' << (report.widest_band == k ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string format_similarity_report(const SimilarityReport& report) {
  std::ostringstream os;
  os << "band_agreement_percent=" << csv_number(report.band_agreement_percent) << '\n';
  os << "mean_abs_db_deviation=" << csv_number(report.mean_abs_db_deviation) << '\n';
  os << "common_grid_points=" << report.common_grid_points << '\n';
  return os.str();
}

std::string similarity_report_csv(const SimilarityReport& report) {
  std::ostringstream os;
  os << "band_agreement_percent,mean_abs_db_deviation,common_grid_points\n";
  os << csv_number(report.band_agreement_percent) << ',' << csv_number(report.mean_abs_db_deviation)
     << ',' << report.common_grid_points << '\n';
  return os.str();
}

std::string format_fit_result(const FitResult& result, std::span<const FreeParameter> parameters) {
  std::ostringstream os;
  os << "initial_cost=" << csv_number(result.initial_cost) << '\n';
  os << "final_cost=" << csv_number(result.final_cost) << '\n';
  os << "iterations=" << result.iterations << '\n';
  os << "evaluations=" << result.evaluations << '\n';
  os << "converged=" << (result.converged ? "true" : "false") << '\n';
  for (std::size_t k = 0; k < parameters.size() && k < result.parameters.size(); ++k) {
    os << "param." << parameters[k].section << '.' << to_string(parameters[k].param) << '='
       << format_si(result.parameters[k]) << '\n';
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, path.string(), 0, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, tmp.string(), 0, "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, tmp.string(), 0, "write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, path.string(), 0, "rename failed");
  }
}

}  // namespace patchladder
