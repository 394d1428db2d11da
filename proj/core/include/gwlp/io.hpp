#pragma once

// OA text files and report serialization.
//
// OA file: line 1 "n m", line 2 "s_1 ... s_m", then n rows of m level codes.
// Lines starting with '#' and blank lines are ignored.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gwlp/design.hpp"
#include "gwlp/removal.hpp"

namespace gwlp::io {

struct OaFileHeader {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<int> levels;
};

Fraction parse_oa_file(std::string_view text);
Fraction read_oa_file(const std::filesystem::path& path);
/// Canonical file form; parse_oa_file(write_oa_file(f)) reproduces f.
std::string write_oa_file(const Fraction& fraction);

/// num/den rounded half-up to three decimals, e.g. 138/121 -> "1.140".
std::string format_fixed3(std::int64_t num, std::int64_t den);
/// Four significant digits, e.g. 5/9 -> "0.5556", 1 -> "1".
std::string format_sig4(double value);
/// Reduced fraction, e.g. 160/144 -> "10/9", 0/144 -> "0".
std::string format_rational(std::int64_t num, std::int64_t den);

/// "OA(12, 2^5, t=2)", "OA(18, 2^1 3^3, t=2)". Levels grouped ascending.
std::string oa_class_string(const DesignSpace& space, std::size_t n, std::size_t strength);

struct ReportGroup {
  std::uint64_t count = 0;
  std::vector<std::int64_t> gwlp_num;
  std::int64_t gwlp_den = 1;
  std::vector<std::vector<std::size_t>> representatives;

  friend bool operator==(const ReportGroup&, const ReportGroup&) = default;
};

struct ReportDocument {
  std::string input;
  std::size_t p = 0;
  std::uint64_t total_subsets = 0;
  std::string engine_version;
  std::size_t factors = 0;
  std::vector<ReportGroup> groups;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

ReportDocument make_report(std::string input, std::size_t factors, const RemovalReport& report);

enum class Format { Text, Csv, Json };

Format parse_format(std::string_view name);

std::string emit_report(const ReportDocument& doc, Format format);
ReportDocument parse_report_json(std::string_view json);

}  // namespace gwlp::io
