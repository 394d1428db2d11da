#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "gwlp/error.hpp"
#include "gwlp/io.hpp"
#include "gwlp/removal.hpp"
#include "test_support.hpp"

using namespace gwlp;

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    io::parse_oa_file(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("parse OA files") {
  const Fraction f = io::parse_oa_file("# comment\n2 3\n2 3 4\n\n0 1 2\n1 2 3\n");
  CHECK(f.size() == 2);
  CHECK(f.space().levels(2) == 4);
  CHECK(f.run(1).codes == std::vector<int>{1, 2, 3});

  const Fraction crlf = io::parse_oa_file("1 2\r\n2 2\r\n1 0");
  CHECK(crlf.run(0).codes == std::vector<int>{1, 0});

  CHECK(testing::fixture("oa12_2_5.txt").size() == 12);
  CHECK(testing::fixture("oa18_2_3_3_3.txt").space().levels(1) == 3);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("2\n") == 1);
  CHECK(parse_error_line("# c\n1 2\n2\n0 0\n") == 3);
  CHECK(parse_error_line("1 2\n2 1\n0 0\n") == 2);
  CHECK(parse_error_line("1 2\n2 2\n0 2\n") == 3);
  CHECK(parse_error_line("1 2\n2 2\n0 x\n") == 3);
  CHECK(parse_error_line("2 2\n2 2\n0 0\n\n# tail\n") == 3);
  CHECK(parse_error_line("1 2\n2 2\n0 0\n1 1\n") == 4);
  CHECK(parse_error_line("1 2\n2 2\n0 0 1\n") == 3);
  CHECK(parse_error_line("1 2\n2 2\n0 -1\n") == 3);
  CHECK(parse_error_line("0 2\n2 2\n") == 1);
  try {
    io::parse_oa_file("1 2\n2 2\n0 5\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).starts_with("line 3: "));
  }
  CHECK_THROWS_AS(io::read_oa_file(testing::data_path("no_such_file.txt")), Error);
}

TEST_CASE("write and parse are inverse") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Fraction f = testing::random_fraction(rng);
    const std::string text = io::write_oa_file(f);
    const Fraction back = io::parse_oa_file(text);
    CHECK(std::ranges::equal(back.runs(), f.runs()));
    CHECK(std::ranges::equal(back.space().levels(), f.space().levels()));
    CHECK(io::write_oa_file(back) == text);
  }
}

TEST_CASE("fixed three-decimal rendering") {
  CHECK(io::format_fixed3(138, 121) == "1.140");
  CHECK(io::format_fixed3(170, 121) == "1.405");
  CHECK(io::format_fixed3(2365, 121) == "19.545");
  CHECK(io::format_fixed3(16, 256) == "0.063");
  CHECK(io::format_fixed3(1, 8) == "0.125");
  CHECK(io::format_fixed3(1, 2000) == "0.001");
  CHECK(io::format_fixed3(0, 7) == "0.000");
  CHECK(io::format_fixed3(-1, 3) == "-0.333");
  CHECK_THROWS_AS(io::format_fixed3(1, 0), StructuralError);
}

TEST_CASE("other number renderings") {
  CHECK(io::format_sig4(10.0 / 9.0) == "1.111");
  CHECK(io::format_sig4(5.0 / 9.0) == "0.5556");
  CHECK(io::format_sig4(1.0) == "1");
  CHECK(io::format_rational(160, 144) == "10/9");
  CHECK(io::format_rational(0, 144) == "0");
  CHECK(io::format_rational(144, 144) == "1");
}

TEST_CASE("OA class string") {
  CHECK(io::oa_class_string(DesignSpace({2, 2, 2, 2, 2}), 12, 2) == "OA(12, 2^5, t=2)");
  CHECK(io::oa_class_string(DesignSpace({3, 2, 3, 3}), 18, 2) == "OA(18, 2^1 3^3, t=2)");
  CHECK(io::oa_class_string(DesignSpace({2, 4, 4, 2}), 16, 2) == "OA(16, 2^2 4^2, t=2)");
}

TEST_CASE("format names") {
  CHECK(io::parse_format("json") == io::Format::Json);
  CHECK(io::parse_format("csv") == io::Format::Csv);
  CHECK(io::parse_format("text") == io::Format::Text);
  CHECK_THROWS_AS(io::parse_format("xml"), StructuralError);
}

TEST_CASE("report rendering") {
  const Fraction oa = testing::fixture("oa12_2_5.txt");
  const io::ReportDocument doc = io::make_report("oa12.txt", 5, exhaustive_search(build_wstack(oa), 1));

  SUBCASE("json round trip") {
    const std::string json = io::emit_report(doc, io::Format::Json);
    const io::ReportDocument back = io::parse_report_json(json);
    CHECK(back == doc);
    CHECK(io::emit_report(back, io::Format::Json) == json);
    CHECK(json.find("\"gwlp_num\"") != std::string::npos);
  }
  SUBCASE("csv") {
    const std::string csv = io::emit_report(doc, io::Format::Csv);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "p,N,A_1,A_2,A_3,A_4,A_5,representatives");
    CHECK(lines[1].starts_with("1,10,0.041,0.083,1.140,"));
    CHECK(lines[1].ends_with(",0.008,1|2|4"));
    CHECK(lines[2].starts_with("1,2,0.041,0.083,1.405,"));
    CHECK(lines[2].ends_with(",3|10"));
  }
  SUBCASE("text") {
    const std::string text = io::emit_report(doc, io::Format::Text);
    CHECK(text.find("unique GWLPs=2") != std::string::npos);
    CHECK(text.find("1.140") != std::string::npos);
    CHECK(text.find("{3} {10}") != std::string::npos);
  }
  SUBCASE("empty report is header only") {
    io::ReportDocument empty = doc;
    empty.groups.clear();
    CHECK(io::emit_report(empty, io::Format::Csv) == "p,N,A_1,A_2,A_3,A_4,A_5,representatives\n");
    CHECK(io::parse_report_json(io::emit_report(empty, io::Format::Json)) == empty);
  }
  CHECK_THROWS_AS(io::parse_report_json("{\"p\": 1}"), ParseError);
  CHECK_THROWS_AS(io::parse_report_json("not json"), ParseError);
}

TEST_CASE("report JSON round trip on random searches") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Fraction f = testing::random_fraction(rng);
    if (f.size() < 2) continue;
    const io::ReportDocument doc =
        io::make_report("r", f.space().factors(), exhaustive_search(build_wstack(f), std::min<std::size_t>(2, f.size() - 1)));
    CHECK(io::parse_report_json(io::emit_report(doc, io::Format::Json)) == doc);
  }
}
