#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patchladder/analysis.hpp"
#include "patchladder/elements.hpp"
#include "patchladder/fitting.hpp"
#include "patchladder/network.hpp"

namespace patchladder {

enum class FrequencyUnit { Hz, kHz, MHz, GHz };
enum class TouchstoneFormat { RI, MA, DB };

/// Option-line state of a version-1 Touchstone document.
struct TouchstoneOptions {
  FrequencyUnit unit = FrequencyUnit::GHz;
  TouchstoneFormat format = TouchstoneFormat::RI;
};

/// Reads .s1p (2 value columns) or .s2p (8 value columns, S11 S21 S12 S22
/// order) content. `! PORT2_REF_OHMS <x>` sets the port-2 reference.
SParameterTrace read_touchstone(std::string_view text);

/// Writes s11 only (.s1p layout) unless the trace carries two-port data.
/// Numbers use 12 significant digits in scientific notation.
std::string write_touchstone(const SParameterTrace& trace, TouchstoneOptions options = {});

/// `freq_hz,s11_re,s11_im,s11_db`, 9 significant digits.
std::string write_trace_csv(const SParameterTrace& trace);

/// `cavity,W_m,d_m,n,C_F,L_H,R_ohm`, absent L/R as empty fields. Rows are
/// matched to cavities by index.
std::string write_elements_csv(std::span<const LumpedElements> elements,
                               std::span<const Cavity> cavities);

struct ElementsRow {
  Cavity cavity;
  LumpedElements elements;
};
std::vector<ElementsRow> read_elements_csv(std::string_view text);

std::string format_band_report(const BandReport& report);
std::string band_report_csv(const BandReport& report);
std::string format_similarity_report(const SimilarityReport& report);
std::string similarity_report_csv(const SimilarityReport& report);
std::string format_fit_result(const FitResult& result, std::span<const FreeParameter> parameters);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace patchladder
