// Drives the installed command line binary end to end. The binary path comes
// in through the RVC_CLI_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "rvcontrib/csv.hpp"
#include "rvcontrib/report.hpp"

namespace {

namespace fs = std::filesystem;

struct Scratch {
  fs::path path;
  Scratch() {
    path = fs::temp_directory_path() /
           ("rvcontrib-cli-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~Scratch() {
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
  if (!in) return {};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  REQUIRE(bool(out));
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args, const Scratch& dir) {
  const std::string out_path = dir.file("cli-stdout.txt");
  const std::string err_path = dir.file("cli-stderr.txt");
  const std::string cmd = std::string(RVC_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

// a small spec with one strong signal; analyze runs in well under a second
const char* kSmallSpec = R"({
  "n": 60,
  "p": 6,
  "q": 3,
  "x_blocks": [{"lo": 1, "hi": 2, "off_diagonal": 0.5}],
  "coefficients": [{"row": 2, "col": 1, "value": 2.0}]
})";

}  // namespace

TEST_CASE("version and help") {
  Scratch dir;
  const RunResult version = run_cli("--version", dir);
  CHECK(version.code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);

  const RunResult help = run_cli("--help", dir);
  CHECK(help.code == 0);
  CHECK(help.out.find("analyze") != std::string::npos);
  CHECK(help.out.find("simulate") != std::string::npos);
  CHECK(help.out.find("decompose") != std::string::npos);
  CHECK(help.out.find("threshold") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
  Scratch dir;
  CHECK(run_cli("", dir).code == 1);                       // missing subcommand
  CHECK(run_cli("frobnicate", dir).code == 1);             // unknown subcommand
  CHECK(run_cli("simulate --preset dataset1", dir).code == 1);  // missing flags
  // --x must be an existing file: caught during option parsing
  CHECK(run_cli("analyze --x does-not-exist.csv --y also-missing.csv --out " +
                    dir.file("o"),
                dir)
            .code == 1);
}

TEST_CASE("simulate: the same invocation writes identical bytes") {
  Scratch dir;
  const std::string args = "simulate --preset dataset1 --seed 7 --out ";
  const RunResult a = run_cli(args + dir.file("a"), dir);
  REQUIRE(a.code == 0);
  CHECK(a.out.find("100 x 130") != std::string::npos);
  CHECK(a.out.find("100 x 25") != std::string::npos);
  const RunResult b = run_cli(args + dir.file("b"), dir);
  REQUIRE(b.code == 0);

  CHECK(slurp(dir.file("a.X.csv")) == slurp(dir.file("b.X.csv")));
  CHECK(slurp(dir.file("a.Y.csv")) == slurp(dir.file("b.Y.csv")));

  const RunResult c =
      run_cli("simulate --preset dataset1 --seed 8 --out " + dir.file("c"),
              dir);
  REQUIRE(c.code == 0);
  CHECK(slurp(dir.file("a.X.csv")) != slurp(dir.file("c.X.csv")));
}

TEST_CASE("simulate: custom spec files") {
  Scratch dir;
  const std::string spec_path = dir.file("small.json");
  spit(spec_path, kSmallSpec);

  const RunResult r = run_cli(
      "simulate --preset " + spec_path + " --seed 3 --out " + dir.file("s"),
      dir);
  REQUIRE(r.code == 0);
  const rvc::DataMatrix x = rvc::load_matrix_csv(dir.file("s.X.csv"));
  const rvc::DataMatrix y = rvc::load_matrix_csv(dir.file("s.Y.csv"));
  CHECK(x.rows() == 60);
  CHECK(x.cols() == 6);
  CHECK(y.cols() == 3);
  CHECK(x.col_names().front() == "X1");
  CHECK(y.col_names().back() == "Y3");
  CHECK(x.row_ids() == y.row_ids());

  SUBCASE("unknown preset name") {
    const RunResult bad =
        run_cli("simulate --preset dataset9 --seed 1 --out " + dir.file("z"),
                dir);
    CHECK(bad.code == 1);
    CHECK(bad.err.find("--preset") != std::string::npos);
  }
  SUBCASE("broken json") {
    spit(dir.file("broken.json"), "{\"n\": 10");
    CHECK(run_cli("simulate --preset " + dir.file("broken.json") +
                      " --seed 1 --out " + dir.file("z"),
                  dir)
              .code == 1);
  }
  SUBCASE("spec with overlapping blocks is a data error") {
    spit(dir.file("overlap.json"),
         R"({"n": 20, "p": 6, "q": 2,
             "x_blocks": [{"lo": 1, "hi": 4, "off_diagonal": 0.5},
                          {"lo": 4, "hi": 6, "off_diagonal": 0.5}]})");
    CHECK(run_cli("simulate --preset " + dir.file("overlap.json") +
                      " --seed 1 --out " + dir.file("z"),
                  dir)
              .code == 2);
  }
  SUBCASE("unwritable output prefix") {
    CHECK(run_cli("simulate --preset dataset1 --seed 1 --out " +
                      dir.file("no/such/dir/z"),
                  dir)
              .code == 3);
  }
}

TEST_CASE("analyze: end to end on a simulated signal") {
  Scratch dir;
  spit(dir.file("small.json"), kSmallSpec);
  REQUIRE(run_cli("simulate --preset " + dir.file("small.json") +
                      " --seed 3 --out " + dir.file("s"),
                  dir)
              .code == 0);
  const std::string xy =
      " --x " + dir.file("s.X.csv") + " --y " + dir.file("s.Y.csv");

  const RunResult r = run_cli("analyze" + xy +
                                  " --perms 300 --seed 11 --out " +
                                  dir.file("run"),
                              dir);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("p[alpha=1] = ") != std::string::npos);
  CHECK(r.out.find("alpha_m = ") != std::string::npos);
  CHECK(r.out.find("aSPC p = ") != std::string::npos);
  CHECK(r.out.find("threshold = ") != std::string::npos);
  CHECK(r.out.find("flagged:") != std::string::npos);

  const rvc::AnalysisReport report =
      rvc::read_report(dir.file("run.report.json"));
  CHECK(report.test.grid == std::vector<int>{1, 2, 3, 4});
  CHECK(report.test.aspc_p > 0.0);
  CHECK(report.test.aspc_p <= 1.0);
  // the planted coefficient is strong enough to reject at 300 permutations
  CHECK(report.test.aspc_p < 0.05);
  REQUIRE(report.profile.threshold.has_value());
  CHECK(report.provenance.n_perms == 300);
  CHECK(report.provenance.seed == 11);
  CHECK(report.provenance.command.find("--threads") == std::string::npos);
  REQUIRE(report.provenance.inputs.size() == 2);
  CHECK(report.provenance.inputs[0].second ==
        rvc::fnv1a64_file(dir.file("s.X.csv")));

  const std::string svg = slurp(dir.file("run.contributions.svg"));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("class=\"threshold\"") != std::string::npos);

  SUBCASE("byte-identical outputs across thread counts") {
    const std::string common = "analyze" + xy +
                               " --perms 300 --seed 11 --out " +
                               dir.file("run");
    REQUIRE(run_cli(common + " --threads 1", dir).code == 0);
    const std::string report_1 = slurp(dir.file("run.report.json"));
    const std::string svg_1 = slurp(dir.file("run.contributions.svg"));
    REQUIRE(run_cli(common + " --threads 4", dir).code == 0);
    CHECK(slurp(dir.file("run.report.json")) == report_1);
    CHECK(slurp(dir.file("run.contributions.svg")) == svg_1);
    // and the threads flag never reaches provenance
    CHECK(report_1.find("--threads") == std::string::npos);
  }
  SUBCASE("a custom grid is honored and recorded") {
    const RunResult g = run_cli("analyze" + xy +
                                    " --grid 1,3 --perms 100 --seed 2 --out " +
                                    dir.file("g"),
                                dir);
    REQUIRE(g.code == 0);
    const auto rep = rvc::read_report(dir.file("g.report.json"));
    CHECK(rep.test.grid == std::vector<int>{1, 3});
    CHECK(rep.provenance.grid == std::vector<int>{1, 3});
  }
  SUBCASE("invalid grid or plan settings exit with code 1") {
    CHECK(run_cli("analyze" + xy + " --grid 3,1 --out " + dir.file("z"), dir)
              .code == 1);
    CHECK(run_cli("analyze" + xy + " --grid 0 --out " + dir.file("z"), dir)
              .code == 1);
    CHECK(run_cli("analyze" + xy + " --perms 0 --out " + dir.file("z"), dir)
              .code == 1);
    CHECK(
        run_cli("analyze" + xy + " --level 1.5 --out " + dir.file("z"), dir)
            .code == 1);
  }
  SUBCASE("corrupt input data exits with code 2") {
    spit(dir.file("bad.csv"), "a,b\n1,oops\n3,4\n");
    CHECK(run_cli("analyze --x " + dir.file("bad.csv") + " --y " +
                      dir.file("s.Y.csv") + " --perms 10 --out " +
                      dir.file("z"),
                  dir)
              .code == 2);
  }
  SUBCASE("row mismatch between X and Y exits with code 2") {
    spit(dir.file("tiny.csv"), "id,a\nr1,1\nr2,2\nr3,-3\nr4,0.5\n");
    CHECK(run_cli("analyze --x " + dir.file("tiny.csv") + " --y " +
                      dir.file("s.Y.csv") + " --perms 10 --out " +
                      dir.file("z"),
                  dir)
              .code == 2);
  }
  SUBCASE("unwritable output prefix exits with code 3") {
    CHECK(run_cli("analyze" + xy + " --perms 10 --out " +
                      dir.file("no/dir/run"),
                  dir)
              .code == 3);
  }
}

TEST_CASE("threshold and decompose subcommands") {
  Scratch dir;
  spit(dir.file("small.json"), kSmallSpec);
  REQUIRE(run_cli("simulate --preset " + dir.file("small.json") +
                      " --seed 3 --out " + dir.file("s"),
                  dir)
              .code == 0);
  const std::string xy =
      " --x " + dir.file("s.X.csv") + " --y " + dir.file("s.Y.csv");

  SUBCASE("threshold prints one deterministic number") {
    const std::string args =
        "threshold" + xy + " --alpha 2 --perms 200 --seed 9";
    const RunResult a = run_cli(args, dir);
    REQUIRE(a.code == 0);
    const double value = std::stod(a.out);
    CHECK(value > 0.0);
    CHECK(value < 3.0);  // q = 3 bounds any contribution
    const RunResult b = run_cli(args, dir);
    CHECK(b.out == a.out);
    const RunResult c = run_cli(args + " --threads 4", dir);
    CHECK(c.out == a.out);
  }
  SUBCASE("decompose writes the per-response profile") {
    const RunResult r = run_cli("decompose" + xy +
                                    " --variable X2 --alpha 1 --out " +
                                    dir.file("d"),
                                dir);
    REQUIRE(r.code == 0);
    const std::string csv = slurp(dir.file("d.profile.csv"));
    CHECK(csv.rfind("response,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + q rows
    CHECK(csv.find("Y1,") != std::string::npos);
    const std::string svg = slurp(dir.file("d.profile.svg"));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("X2 contribution (power 1)") != std::string::npos);
  }
  SUBCASE("decompose rejects unknown variables with code 2") {
    CHECK(run_cli("decompose" + xy + " --variable X99 --alpha 1 --out " +
                      dir.file("d"),
                  dir)
              .code == 2);
  }
  SUBCASE("decompose rejects non-positive alpha with code 1") {
    CHECK(run_cli("decompose" + xy + " --variable X2 --alpha 0 --out " +
                      dir.file("d"),
                  dir)
              .code == 1);
  }
}

TEST_CASE("confounder adjustment through the command line") {
  Scratch dir;
  spit(dir.file("small.json"), kSmallSpec);
  REQUIRE(run_cli("simulate --preset " + dir.file("small.json") +
                      " --seed 3 --out " + dir.file("s"),
                  dir)
              .code == 0);

  // a confounder matrix with the same row ids as the data
  const rvc::DataMatrix x = rvc::load_matrix_csv(dir.file("s.X.csv"));
  rvc::Matrix z(x.rows(), 1);
  for (rvc::Index i = 0; i < x.rows(); ++i)
    z(i, 0) = 0.25 * static_cast<double>(i) + x.values()(i, 0);
  rvc::write_matrix_csv(rvc::DataMatrix(z, x.row_ids(), {"Z1"}),
                        dir.file("conf.csv"));

  const RunResult r = run_cli(
      "analyze --x " + dir.file("s.X.csv") + " --y " + dir.file("s.Y.csv") +
          " --confounders " + dir.file("conf.csv") +
          " --perms 100 --seed 4 --out " + dir.file("adj"),
      dir);
  REQUIRE(r.code == 0);
  const auto report = rvc::read_report(dir.file("adj.report.json"));
  REQUIRE(report.provenance.inputs.size() == 3);
  CHECK(report.provenance.command.find("--confounders") != std::string::npos);

  SUBCASE("mismatched confounder rows exit with code 2") {
    rvc::Matrix w(4, 1);
    w << 1.0, 2.0, 3.0, 4.0;
    rvc::write_matrix_csv(rvc::DataMatrix::with_default_names(w, "Z"),
                          dir.file("short.csv"));
    CHECK(run_cli("analyze --x " + dir.file("s.X.csv") + " --y " +
                      dir.file("s.Y.csv") + " --confounders " +
                      dir.file("short.csv") + " --perms 10 --out " +
                      dir.file("z"),
                  dir)
              .code == 2);
  }
}
