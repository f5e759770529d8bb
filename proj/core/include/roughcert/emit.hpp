#pragma once

// Serialization of verification reports: report.json, results.csv and the
// profile / log-log plots as standalone SVG.

#include <string>
#include <vector>

#include "roughcert/verify.hpp"

namespace roughcert {

/// Exact CSV header; the column set is part of the output contract.
inline constexpr const char* kCsvHeader =
    "N,n,c,absD,margin,modular,luxemburg,sup_m,c7,c8,ratio_p4,slope_p4";

/// {config, construction, checks, aborted, ...} with a stable key order and
/// shortest round-trip numbers.
std::string report_json(const VerificationReport& r);
std::string sweep_json(const std::vector<VerificationReport>& rs);

std::string csv_row(const VerificationReport& r);
std::string csv_table(const std::vector<VerificationReport>& rs);

/// Empty strings when the report carries no plot data.
std::string khat_profile_svg(const VerificationReport& r);
std::string m_profile_svg(const VerificationReport& r);
std::string ratio_loglog_svg(const VerificationReport& r);

/// Writes the requested formats into out_dir (created if needed), replacing
/// existing files. Returns the paths written. Throws IoError.
std::vector<std::string> emit_report(const VerificationReport& r, const EmitSet& formats,
                                     const std::string& out_dir);
/// sweep.json and results.csv cover every point; the plots use the first
/// point that carries plot data.
std::vector<std::string> emit_sweep(const std::vector<VerificationReport>& rs,
                                    const EmitSet& formats, const std::string& out_dir);

/// Shortest round-trip decimal form; "nan" / "inf" for non-finite values.
std::string format_number(double v);

/// Writes `body` to out_dir/name (directory created if needed); returns the
/// path. Throws IoError.
std::string write_output(const std::string& out_dir, const std::string& name,
                         const std::string& body);

/// Directions, arcs, height and signs of a construction.
std::string construction_json(const circle::Construction& cons);

}  // namespace roughcert
