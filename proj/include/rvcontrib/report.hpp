#pragma once

#include <string>
#include <string_view>

#include "rvcontrib/permutation.hpp"

namespace rvc {

/// JSON serialization of an analysis report (schema in docs/report-schema.md).
/// Numbers round-trip bit-exactly and output bytes are a pure function of the
/// report contents.
std::string report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const std::string& text);

void write_report(const AnalysisReport& report, const std::string& path);
AnalysisReport read_report(const std::string& path);

bool operator==(const Provenance& a, const Provenance& b);
bool operator==(const TestResult& a, const TestResult& b);
bool operator==(const ContributionProfile& a, const ContributionProfile& b);
bool operator==(const AnalysisReport& a, const AnalysisReport& b);

/// FNV-1a 64-bit digest as a 16-char lowercase hex string; used for input
/// provenance in reports.
std::string fnv1a64(std::string_view bytes);
std::string fnv1a64_file(const std::string& path);

}  // namespace rvc
