#pragma once

// File formats. Every writer prints floating-point values with 17 significant
// digits, so each file reads back to the exact doubles that were written.
// Column layouts are documented in docs/formats.md.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "radnlw/certifier.hpp"
#include "radnlw/diagnostics.hpp"
#include "radnlw/solver.hpp"

namespace radnlw::io {

void write_trajectory(std::ostream& out, const Trajectory& trajectory);
/// Throws Error(format) on any malformed, truncated or inconsistent input.
Trajectory read_trajectory(std::istream& in);
Trajectory read_trajectory(const std::filesystem::path& path);

void write_diagnostics(std::ostream& out, const DiagnosticsReport& report);
DiagnosticsReport read_diagnostics(std::istream& in);

/// Human-readable certificate: key = value header, then one line per interval.
void write_certificate_text(std::ostream& out, const SubdivisionCertificate& cert, const CertificateCheck& check,
                            const CertifierConstants& k, const std::string& cbound_line);

/// Machine-readable twin: header row plus one row per interval.
void write_certificate_csv(std::ostream& out, const SubdivisionCertificate& cert, const CertificateCheck& check);

/// Reads the CSV twin back into a certificate (breakpoints, thresholds,
/// measured values); the verdict is left at its default.
SubdivisionCertificate read_certificate_csv(std::istream& in);

/// Writes `text` to `path` via a temporary file and rename.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace radnlw::io
