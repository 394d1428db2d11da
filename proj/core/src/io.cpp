#include "gwlp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gwlp/error.hpp"
#include "gwlp/version.hpp"

namespace gwlp::io {

namespace {

using json = nlohmann::ordered_json;

struct Line {
  std::size_t number;
  std::vector<long long> values;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    const std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    Line line{number, {}};
    std::size_t pos = first;
    while (pos < raw.size()) {
      const std::size_t stop = std::min(raw.find_first_of(" \t", pos), raw.size());
      const std::string_view token = raw.substr(pos, stop - pos);
      long long value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(number, "not an integer: '" + std::string(token) + "'");
      }
      line.values.push_back(value);
      pos = raw.find_first_not_of(" \t", stop);
      if (pos == std::string_view::npos) break;
    }
    lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

std::string join_positions(const std::vector<std::size_t>& subset, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(subset[i]);
  }
  return out;
}

}  // namespace

Fraction parse_oa_file(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty OA file");

  const Line& head = lines[0];
  if (head.values.size() != 2) throw ParseError(head.number, "header must be 'n m'");
  if (head.values[0] < 1 || head.values[1] < 1) throw ParseError(head.number, "n and m must be positive");
  OaFileHeader header;
  header.n = static_cast<std::size_t>(head.values[0]);
  header.m = static_cast<std::size_t>(head.values[1]);

  if (lines.size() < 2) throw ParseError(head.number + 1, "missing level line");
  const Line& lev = lines[1];
  if (lev.values.size() != header.m) {
    throw ParseError(lev.number, "expected " + std::to_string(header.m) + " level counts, found " +
                                     std::to_string(lev.values.size()));
  }
  for (long long s : lev.values) {
    if (s < 2 || s > 1'000'000) throw ParseError(lev.number, "level count out of range: " + std::to_string(s));
    header.levels.push_back(static_cast<int>(s));
  }

  std::vector<Run> runs;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& row = lines[i];
    if (runs.size() == header.n) {
      throw ParseError(row.number, "more than the declared " + std::to_string(header.n) + " runs");
    }
    if (row.values.size() != header.m) {
      throw ParseError(row.number, "expected " + std::to_string(header.m) + " codes, found " +
                                       std::to_string(row.values.size()));
    }
    Run run;
    for (std::size_t j = 0; j < header.m; ++j) {
      const long long code = row.values[j];
      if (code < 0 || code >= header.levels[j]) {
        throw ParseError(row.number, "code " + std::to_string(code) + " out of range for factor " +
                                         std::to_string(j + 1) + " with " + std::to_string(header.levels[j]) +
                                         " levels");
      }
      run.codes.push_back(static_cast<int>(code));
    }
    runs.push_back(std::move(run));
  }
  if (runs.size() != header.n) {
    throw ParseError(lines.back().number, "declared " + std::to_string(header.n) + " runs, found " +
                                              std::to_string(runs.size()));
  }
  return Fraction(DesignSpace(header.levels), std::move(runs));
}

Fraction read_oa_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_oa_file(buf.str());
}

std::string write_oa_file(const Fraction& fraction) {
  std::string out = std::to_string(fraction.size()) + " " + std::to_string(fraction.space().factors()) + "\n";
  for (std::size_t j = 0; j < fraction.space().factors(); ++j) {
    if (j) out += ' ';
    out += std::to_string(fraction.space().levels(j));
  }
  out += '\n';
  for (const Run& run : fraction.runs()) {
    for (std::size_t j = 0; j < run.codes.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(run.codes[j]);
    }
    out += '\n';
  }
  return out;
}

std::string format_fixed3(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw StructuralError("non-positive denominator");
  const bool negative = num < 0;
  const unsigned __int128 mag = static_cast<unsigned __int128>(negative ? -static_cast<__int128>(num) : num);
  const unsigned __int128 d = static_cast<unsigned __int128>(den);
  const unsigned __int128 thousandths = (mag * 2000 + d) / (2 * d);
  const auto whole = static_cast<unsigned long long>(thousandths / 1000);
  const auto frac = static_cast<unsigned>(thousandths % 1000);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%llu.%03u", negative && thousandths != 0 ? "-" : "", whole, frac);
  return buf;
}

std::string format_sig4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

std::string format_rational(std::int64_t num, std::int64_t den) {
  if (num == 0) return "0";
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string oa_class_string(const DesignSpace& space, std::size_t n, std::size_t strength) {
  std::map<int, int> counts;
  for (int s : space.levels()) ++counts[s];
  std::string levels;
  for (const auto& [s, k] : counts) {
    if (!levels.empty()) levels += ' ';
    levels += std::to_string(s) + "^" + std::to_string(k);
  }
  return "OA(" + std::to_string(n) + ", " + levels + ", t=" + std::to_string(strength) + ")";
}

ReportDocument make_report(std::string input, std::size_t factors, const RemovalReport& report) {
  ReportDocument doc;
  doc.input = std::move(input);
  doc.p = report.p;
  doc.total_subsets = report.total_subsets;
  doc.engine_version = kVersion;
  doc.factors = factors;
  for (const RemovalGroup& g : report.groups) {
    ReportGroup row;
    row.count = g.count;
    row.gwlp_num.assign(g.gwlp.numerators().begin(), g.gwlp.numerators().end());
    row.gwlp_den = g.gwlp.denominator();
    for (const RemovalSubset& s : g.representatives) row.representatives.emplace_back(s.indices().begin(), s.indices().end());
    doc.groups.push_back(std::move(row));
  }
  return doc;
}

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw StructuralError("unknown format '" + std::string(name) + "'");
}

std::string emit_report(const ReportDocument& doc, Format format) {
  const std::size_t m = doc.factors;
  std::ostringstream out;
  switch (format) {
    case Format::Json: {
      json j;
      j["input"] = doc.input;
      j["p"] = doc.p;
      j["total_subsets"] = doc.total_subsets;
      j["engine_version"] = doc.engine_version;
      j["m"] = doc.factors;
      j["groups"] = json::array();
      for (const ReportGroup& g : doc.groups) {
        j["groups"].push_back(json{{"count", g.count},
                                   {"gwlp_num", g.gwlp_num},
                                   {"gwlp_den", g.gwlp_den},
                                   {"representatives", g.representatives}});
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      out << "p,N";
      for (std::size_t k = 1; k <= m; ++k) out << ",A_" << k;
      out << ",representatives\n";
      for (const ReportGroup& g : doc.groups) {
        out << doc.p << ',' << g.count;
        for (std::size_t k = 1; k < g.gwlp_num.size(); ++k) out << ',' << format_fixed3(g.gwlp_num[k], g.gwlp_den);
        out << ',';
        for (std::size_t r = 0; r < g.representatives.size(); ++r) {
          if (r) out << '|';
          out << join_positions(g.representatives[r], " ");
        }
        out << '\n';
      }
      break;
    }
    case Format::Text: {
      out << "# " << doc.input << "  p=" << doc.p << "  subsets=" << doc.total_subsets
          << "  unique GWLPs=" << doc.groups.size() << '\n';
      char cell[64];
      std::snprintf(cell, sizeof cell, "%4s %8s", "p", "N");
      out << cell;
      for (std::size_t k = 1; k <= m; ++k) {
        std::snprintf(cell, sizeof cell, " %9s", ("A_" + std::to_string(k)).c_str());
        out << cell;
      }
      out << "  removed runs\n";
      for (const ReportGroup& g : doc.groups) {
        std::snprintf(cell, sizeof cell, "%4zu %8llu", doc.p, static_cast<unsigned long long>(g.count));
        out << cell;
        for (std::size_t k = 1; k < g.gwlp_num.size(); ++k) {
          std::snprintf(cell, sizeof cell, " %9s", format_fixed3(g.gwlp_num[k], g.gwlp_den).c_str());
          out << cell;
        }
        out << ' ';
        for (const auto& rep : g.representatives) out << " {" << join_positions(rep, ",") << '}';
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

ReportDocument parse_report_json(std::string_view text) {
  ReportDocument doc;
  try {
    const json j = json::parse(text);
    doc.input = j.at("input").get<std::string>();
    doc.p = j.at("p").get<std::size_t>();
    doc.total_subsets = j.at("total_subsets").get<std::uint64_t>();
    doc.engine_version = j.value("engine_version", std::string{});
    doc.factors = j.value("m", std::size_t{0});
    for (const json& g : j.at("groups")) {
      ReportGroup row;
      row.count = g.at("count").get<std::uint64_t>();
      row.gwlp_num = g.at("gwlp_num").get<std::vector<std::int64_t>>();
      row.gwlp_den = g.at("gwlp_den").get<std::int64_t>();
      row.representatives = g.at("representatives").get<std::vector<std::vector<std::size_t>>>();
      doc.groups.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed report JSON: ") + e.what());
  }
  return doc;
}

}  // namespace gwlp::io
