#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "rvcontrib/csv.hpp"
#include "rvcontrib/errors.hpp"
#include "rvcontrib/plot.hpp"
#include "rvcontrib/report.hpp"
#include "test_util.hpp"

using rvc::DataMatrix;
using rvc::Index;
using rvc::Matrix;

namespace {

namespace fs = std::filesystem;

// scratch directory, removed when the test case ends
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rvcontrib-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static inline int counter = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  REQUIRE(bool(out));
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

rvc::AnalysisReport sample_report() {
  rvc::AnalysisReport r;
  r.test.grid = {1, 2, 3};
  r.test.observed = {0.1, 1.0 / 3.0, 1e-300};
  r.test.p_values = {0.25, 0.5, 0.75};
  r.test.alpha_m = 2;
  r.test.aspc_p = 3.0 / 7.0;
  r.profile.alpha = 2;
  r.profile.contributions = {0.4, 0.1, 0.9};
  r.profile.variable_names = {"X1", "X2", "X3"};
  r.profile.set_threshold(0.5);
  r.response_names = {"Y1", "Y2"};
  r.per_response = {{"X3", {0.45, 0.45}}};
  r.provenance.command = "analyze --x x.csv --y y.csv";
  r.provenance.version = "0.1.0";
  r.provenance.grid = {1, 2, 3};
  r.provenance.n_perms = 100;
  r.provenance.level = 0.95;
  r.provenance.seed = 42;
  r.provenance.inputs = {{"x.csv", "cbf29ce484222325"},
                         {"y.csv", "af63dc4c8601ec8c"}};
  return r;
}

}  // namespace

TEST_CASE("csv: write then load preserves every bit") {
  TempDir dir;
  Matrix values(3, 4);
  values << 0.1, 1.0 / 3.0, 1e-300, -0.0,
      5e-324, 1.7976931348623157e308, 123456789.123456789, 2.5,
      -1.0, 0.0, 3.141592653589793, 1e22;
  const DataMatrix m(values, {"r1", "r2", "r3"}, {"a", "b", "c", "d"});
  const std::string path = dir.file("m.csv");
  rvc::write_matrix_csv(m, path);

  const DataMatrix back = rvc::load_matrix_csv(path);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK(back.row_ids() == m.row_ids());
  CHECK(back.col_names() == m.col_names());
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j)
      CHECK(same_bits(back.values()(i, j), m.values()(i, j)));
  CHECK(std::signbit(back.values()(0, 3)));  // -0.0 keeps its sign

  // serialization is a pure function of the matrix
  const std::string again = dir.file("m2.csv");
  rvc::write_matrix_csv(back, again);
  CHECK(slurp(path) == slurp(again));
}

TEST_CASE("csv: exact bytes for a simple matrix") {
  TempDir dir;
  Matrix values(2, 2);
  values << 0.5, 1.0, -2.0, 0.25;
  const DataMatrix m(values, {"1", "2"}, {"a", "b"});
  const std::string path = dir.file("exact.csv");
  rvc::write_matrix_csv(m, path);
  CHECK(slurp(path) == "id,a,b\n1,0.5,1\n2,-2,0.25\n");
}

TEST_CASE("csv: id column and default row numbering") {
  TempDir dir;
  SUBCASE("explicit id column") {
    const std::string path = dir.file("ids.csv");
    spit(path, "id,a,b\ns1,1,2\ns2,3,4\n");
    const DataMatrix m = rvc::load_matrix_csv(path);
    CHECK(m.row_ids() == std::vector<std::string>{"s1", "s2"});
    CHECK(m.col_names() == std::vector<std::string>{"a", "b"});
    CHECK(m.values()(1, 0) == 3.0);
  }
  SUBCASE("no id column: rows numbered from 1") {
    const std::string path = dir.file("noid.csv");
    spit(path, "a,b\n1,2\n3,4\n5,6\n");
    const DataMatrix m = rvc::load_matrix_csv(path);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 2);
    CHECK(m.row_ids() == std::vector<std::string>{"1", "2", "3"});
  }
  SUBCASE("crlf line endings and no trailing newline") {
    const std::string path = dir.file("crlf.csv");
    spit(path, "id,a\r\nr1,1.5\r\nr2,2.5");
    const DataMatrix m = rvc::load_matrix_csv(path);
    CHECK(m.values()(0, 0) == 1.5);
    CHECK(m.values()(1, 0) == 2.5);
  }
  SUBCASE("scientific notation and leading plus") {
    const std::string path = dir.file("sci.csv");
    spit(path, "a\n1e-3\n2.5E+2\n");
    const DataMatrix m = rvc::load_matrix_csv(path);
    CHECK(m.values()(0, 0) == 1e-3);
    CHECK(m.values()(1, 0) == 250.0);
  }
}

TEST_CASE("csv: malformed inputs raise typed errors with coordinates") {
  TempDir dir;
  const std::string path = dir.file("bad.csv");

  SUBCASE("missing file") {
    try {
      rvc::load_matrix_csv(dir.file("nope.csv"));
      FAIL("expected IoError");
    } catch (const rvc::IoError& e) {
      CHECK(e.path() == dir.file("nope.csv"));
    }
  }
  SUBCASE("empty file") {
    spit(path, "");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::ParseError);
  }
  SUBCASE("header only") {
    spit(path, "a,b\n");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::DataError);
  }
  SUBCASE("single data row is not enough") {
    spit(path, "a,b\n1,2\n");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::DataError);
  }
  SUBCASE("ragged row") {
    spit(path, "a,b\n1,2\n3\n4,5\n");
    try {
      rvc::load_matrix_csv(path);
      FAIL("expected RaggedRowError");
    } catch (const rvc::RaggedRowError& e) {
      CHECK(e.row() == 3);
      CHECK(std::string(e.what()) == "row 3 has 1 fields, expected 2");
    }
  }
  SUBCASE("non-numeric token") {
    spit(path, "id,a,b\nr1,1,2\nr2,x7,4\n");
    try {
      rvc::load_matrix_csv(path);
      FAIL("expected ParseError");
    } catch (const rvc::ParseError& e) {
      CHECK(e.row() == 3);
      CHECK(e.col() == 2);
    }
  }
  SUBCASE("non-finite tokens are rejected") {
    spit(path, "a\ninf\n2\n");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::ParseError);
  }
  SUBCASE("missing values") {
    spit(path, "a,b\n1,\n3,4\n");
    try {
      rvc::load_matrix_csv(path);
      FAIL("expected MissingValueError");
    } catch (const rvc::MissingValueError& e) {
      CHECK(e.row() == 2);
      CHECK(e.col() == 2);
    }
    spit(path, "a,b\n1,2\nNA,4\n");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::MissingValueError);
    spit(path, "a,b\n1,2\n3,NaN\n");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::MissingValueError);
  }
  SUBCASE("duplicate column names") {
    spit(path, "a,a\n1,2\n3,4\n");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::DuplicateNameError);
  }
  SUBCASE("duplicate row ids") {
    spit(path, "id,a\nr,1\nr,2\n");
    CHECK_THROWS_AS(rvc::load_matrix_csv(path), rvc::DuplicateNameError);
  }
  SUBCASE("write to an impossible path") {
    Matrix v(2, 1);
    v << 1.0, 2.0;
    const DataMatrix m = DataMatrix::with_default_names(v, "c");
    CHECK_THROWS_AS(
        rvc::write_matrix_csv(m, dir.file("no/such/dir/out.csv")),
        rvc::IoError);
  }
}

TEST_CASE("fnv-1a digests match the reference vectors") {
  CHECK(rvc::fnv1a64("") == "cbf29ce484222325");
  CHECK(rvc::fnv1a64("a") == "af63dc4c8601ec8c");
  CHECK(rvc::fnv1a64("foobar") == "85944171f73967e8");

  TempDir dir;
  const std::string path = dir.file("blob.bin");
  spit(path, "foobar");
  CHECK(rvc::fnv1a64_file(path) == "85944171f73967e8");
  CHECK_THROWS_AS(rvc::fnv1a64_file(dir.file("missing")), rvc::IoError);
}

TEST_CASE("report json: round trip and byte stability") {
  const rvc::AnalysisReport r = sample_report();
  const std::string text = rvc::report_to_json(r);

  CHECK(text.find("\"schema\": \"rvcontrib-report/1\"") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(rvc::report_to_json(r) == text);  // pure function

  const rvc::AnalysisReport back = rvc::report_from_json(text);
  CHECK(back == r);
  for (std::size_t i = 0; i < r.test.observed.size(); ++i)
    CHECK(same_bits(back.test.observed[i], r.test.observed[i]));
  CHECK(rvc::report_to_json(back) == text);  // parse . dump is the identity
  REQUIRE(back.profile.threshold.has_value());
  CHECK(*back.profile.threshold == 0.5);
  CHECK(back.profile.flagged == std::vector<Index>{2});
}

TEST_CASE("report json: a missing threshold stays null") {
  rvc::AnalysisReport r = sample_report();
  r.profile.threshold.reset();
  r.profile.flagged.clear();
  const std::string text = rvc::report_to_json(r);
  CHECK(text.find("\"threshold\": null") != std::string::npos);
  const rvc::AnalysisReport back = rvc::report_from_json(text);
  CHECK_FALSE(back.profile.threshold.has_value());
  CHECK(back == r);
}

TEST_CASE("report json: malformed documents are rejected") {
  CHECK_THROWS_AS(rvc::report_from_json("{not json"), rvc::ParseError);
  CHECK_THROWS_AS(rvc::report_from_json("{}"), rvc::DataError);
  std::string text = rvc::report_to_json(sample_report());
  const auto pos = text.find("rvcontrib-report/1");
  text.replace(pos, 18, "rvcontrib-report/9");
  CHECK_THROWS_AS(rvc::report_from_json(text), rvc::DataError);
}

TEST_CASE("report files round trip through disk") {
  TempDir dir;
  const rvc::AnalysisReport r = sample_report();
  const std::string path = dir.file("run.report.json");
  rvc::write_report(r, path);
  CHECK(rvc::read_report(path) == r);
  CHECK(slurp(path) == rvc::report_to_json(r));
  CHECK_THROWS_AS(rvc::read_report(dir.file("missing.json")), rvc::IoError);
  CHECK_THROWS_AS(rvc::write_report(r, dir.file("no/dir/x.json")),
                  rvc::IoError);
}

TEST_CASE("contribution plot svg") {
  rvc::ContributionProfile profile;
  profile.alpha = 1;
  profile.contributions = {0.1, 0.9, 0.4, 0.2};
  profile.variable_names = {"X1", "X2", "X3", "X4"};

  SUBCASE("structure without a threshold") {
    const std::string svg = rvc::contribution_plot_svg(profile);
    CHECK(svg.rfind("<svg xmlns=", 0) == 0);
    CHECK(svg.find("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("Explanatory Variables") != std::string::npos);
    CHECK(svg.find("Contribution") != std::string::npos);
    CHECK(svg.find("class=\"threshold\"") == std::string::npos);

    // one polyline vertex per variable
    const auto start = svg.find("points=\"");
    REQUIRE(start != std::string::npos);
    const auto stop = svg.find('"', start + 8);
    const std::string points = svg.substr(start + 8, stop - start - 8);
    CHECK(std::count(points.begin(), points.end(), ',') == 4);

    CHECK(rvc::contribution_plot_svg(profile) == svg);  // byte stable
  }
  SUBCASE("threshold adds exactly one rule") {
    profile.set_threshold(0.5);
    const std::string svg = rvc::contribution_plot_svg(profile);
    const auto first = svg.find("class=\"threshold\"");
    REQUIRE(first != std::string::npos);
    CHECK(svg.find("class=\"threshold\"", first + 1) == std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
  }
  SUBCASE("flat zero profile still renders") {
    rvc::ContributionProfile flat;
    flat.alpha = 1;
    flat.contributions = {0.0, 0.0};
    flat.variable_names = {"a", "b"};
    CHECK_NOTHROW(rvc::contribution_plot_svg(flat));
  }
  SUBCASE("empty profile is rejected") {
    rvc::ContributionProfile empty;
    CHECK_THROWS_AS(rvc::contribution_plot_svg(empty), std::invalid_argument);
  }
  SUBCASE("render writes the same bytes the string api returns") {
    TempDir dir;
    const std::string path = dir.file("plot.svg");
    rvc::render_contribution_plot(profile, path);
    CHECK(slurp(path) == rvc::contribution_plot_svg(profile));
    CHECK_THROWS_AS(
        rvc::render_contribution_plot(profile, dir.file("no/dir/p.svg")),
        rvc::IoError);
  }
}

TEST_CASE("response profile svg") {
  const std::vector<std::string> names = {"Y1", "Y2", "Y3"};
  const std::vector<double> values = {0.2, 0.7, 0.1};

  SUBCASE("one bar per response, labelled by the variable") {
    const std::string svg = rvc::response_profile_svg("X9", names, values, 2);
    CHECK(svg.find("Response Variables") != std::string::npos);
    CHECK(svg.find("X9 contribution (power 2)") != std::string::npos);
    std::size_t bars = 0;
    for (auto pos = svg.find("<rect fill=\"steelblue\"");
         pos != std::string::npos;
         pos = svg.find("<rect fill=\"steelblue\"", pos + 1))
      ++bars;
    CHECK(bars == 3);
    CHECK(svg.find("<title>Y2</title>") != std::string::npos);
    CHECK(rvc::response_profile_svg("X9", names, values, 2) == svg);
  }
  SUBCASE("xml metacharacters in names are escaped") {
    const std::string svg =
        rvc::response_profile_svg("a<b&c", {"q\"1", "q2", "q3"}, values, 1);
    CHECK(svg.find("a&lt;b&amp;c") != std::string::npos);
    CHECK(svg.find("q&quot;1") != std::string::npos);
    CHECK(svg.find("a<b") == std::string::npos);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(rvc::response_profile_svg("X1", {}, {}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(rvc::response_profile_svg("X1", {"Y1"}, values, 1),
                    std::invalid_argument);
  }
  SUBCASE("render matches the string api") {
    TempDir dir;
    const std::string path = dir.file("profile.svg");
    rvc::render_response_profile("X9", names, values, 2, path);
    CHECK(slurp(path) == rvc::response_profile_svg("X9", names, values, 2));
  }
}
