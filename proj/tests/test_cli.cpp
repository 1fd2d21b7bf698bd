#include <catch_amalgamated.hpp>

#include <weakoptics/cli.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace weakoptics;
using namespace weakoptics::cli;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
namespace fs = std::filesystem;

fs::path data_dir() {
  const fs::path d = fs::path(WEAKOPTICS_TEST_DATA_DIR) / "cli_data";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("range syntax", "[cli]") {
  const auto r = parse_range("0.5:1.5:101");
  CHECK(r.lo == 0.5);
  CHECK(r.hi == 1.5);
  CHECK(r.count == 101);
  const auto v = r.values();
  REQUIRE(v.size() == 101);
  CHECK(v.front() == 0.5);
  CHECK(v.back() == 1.5);
  CHECK(v[50] == Approx(1.0).margin(1e-15));

  const auto b = parse_range("0.6:0.78", false);
  CHECK(b.lo == 0.6);
  CHECK(b.hi == 0.78);

  CHECK_THROWS_AS(parse_range("0.6:0.78"), UsageError);
  CHECK_THROWS_AS(parse_range("1:0:5"), UsageError);
  CHECK_THROWS_AS(parse_range("0:1:1"), UsageError);
  CHECK_THROWS_AS(parse_range("0:x:5"), UsageError);
  CHECK_THROWS_AS(parse_range("0:1:5:7"), UsageError);
}

TEST_CASE("contour plan", "[cli]") {
  const std::vector<std::string> args{"contour", "--omega", "0.5:1.5:101", "--beta",
                                      "0:3.14159265:181", "-o", "fig1.csv"};
  const RunPlan p = parse(args);
  CHECK(p.command == Command::contour);
  CHECK(p.omega_range.count == 101);
  CHECK(p.beta_range.count == 181);
  CHECK(p.beta_range.hi == 3.14159265);
  CHECK(p.output_path == "fig1.csv");
  CHECK(p.format == Format::csv);
  CHECK(p.pre.label == "V");
  CHECK(p.post.label == "V");
  CHECK(p.linear.tau_te == Approx(10 * kPi));
  CHECK(p.linear.tau_tm == Approx(9 * kPi));
}

TEST_CASE("degrees", "[cli]") {
  const std::vector<std::string> args{"angle-sweep", "--omega", "1", "--beta", "0:90:181",
                                      "--degrees", "--pre-angle", "45"};
  const RunPlan p = parse(args);
  CHECK(p.beta_range.hi == Approx(kPi / 2).margin(1e-15));
  REQUIRE(p.pre.angle.has_value());
  CHECK(*p.pre.angle == Approx(kPi / 4).margin(1e-15));
  const auto s = p.pair().psi_in;
  CHECK(s.a1().real() == Approx(std::sqrt(0.5)).margin(1e-15));
}

TEST_CASE("usage errors exit 2 and name the flag", "[cli]") {
  const auto r = invoke({"estimate-beta", "--tau", "54.86", "--bracket", "0.6:0.78"});
  CHECK(r.status == 2);
  CHECK(r.err.find("--omega") != std::string::npos);
  CHECK(r.out.empty());

  CHECK(invoke({}).status == 2);
  CHECK(invoke({"bogus"}).status == 2);
  CHECK(invoke({"contour", "--omega", "0.5:1.5:11", "--beta", "0:1:11", "--frobnicate"}).status ==
        2);
  CHECK(invoke({"contour", "--omega", "0.5:1.5:11"}).status == 2);
  CHECK(invoke({"contour", "--omega", "0.5:1.5:1", "--beta", "0:1:11"}).status == 2);
  // conflicting selections
  CHECK(invoke({"spectrum", "--omega", "0.5:1.5:11", "--pre", "H", "--pre-angle", "0.3"}).status ==
        2);
  CHECK(invoke({"spectrum", "--omega", "0.5:1.5:11", "--dispersion-file", "x.csv", "--tau-te",
                "3"}).status == 2);
  CHECK(invoke({"pulse", "--format", "csv"}).status == 2);
  CHECK(invoke({"spectrum", "--omega", "0.5:1.5:11", "--pre", "X45"}).status == 2);
}

TEST_CASE("help exits 0", "[cli]") {
  const auto r = invoke({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("contour") != std::string::npos);
}

TEST_CASE("angle-sweep to standard output", "[cli]") {
  const auto r = invoke({"angle-sweep", "--omega", "1.0", "--beta", "0:1.5707963267948966:181"});
  REQUIRE(r.status == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 182);
  CHECK(lines[0] == "omega,beta,re_t,im_t,abs_t,arg_t,group_delay,singular");
  CHECK(lines[1].rfind("1,0,1,", 0) == 0);
  std::size_t singular = 0;
  for (const auto& l : lines) {
    if (l.ends_with(",,true")) ++singular;
  }
  CHECK(singular == 1);
  CHECK(r.out.rfind("# weakoptics angle-sweep", 0) == 0);
}

TEST_CASE("null postselection exits 3", "[cli]") {
  // (V,H) vanishes whenever beta is a multiple of pi/2
  const auto r = invoke(
      {"angle-sweep", "--omega", "1.0", "--beta", "0:3.141592653589793:3", "--post", "H"});
  CHECK(r.status == 3);
  CHECK(r.out.empty());
  CHECK(invoke({"spectrum", "--omega", "0.5:1.5:11", "--beta", "0", "--post", "H"}).status == 3);
  CHECK(invoke({"pulse", "--beta", "0", "--post", "H"}).status == 3);
  CHECK(invoke({"contour", "--omega", "0.5:1.5:11", "--beta", "0:1:11", "--post", "H"}).status ==
        0);
}

TEST_CASE("estimate-beta failure modes", "[cli]") {
  CHECK(invoke({"estimate-beta", "--omega", "1", "--tau", "54.86", "--bracket", "0.63:0.94"})
            .status == 2);
  const auto ok = invoke({"estimate-beta", "--omega", "1", "--tau", "31.41592653589793",
                          "--bracket", "-0.01:0.01"});
  CHECK(ok.status == 0);
}

TEST_CASE("unwritable output exits 1", "[cli]") {
  const auto bad = (data_dir() / "no_such_dir" / "x.csv").string();
  const auto r = invoke({"singularities", "-o", bad});
  CHECK(r.status == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("contour file row count", "[cli]") {
  const auto path = (data_dir() / "fig1.csv").string();
  fs::remove(path);
  const auto r =
      invoke({"contour", "--omega", "0.5:1.5:101", "--beta", "0:3.14159265:181", "-o", path});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  const auto lines = data_lines(slurp(path));
  CHECK(lines.size() == 101 * 181 + 1);
}

TEST_CASE("singularities on defaults", "[cli]") {
  const auto r = invoke({"singularities"});
  REQUIRE(r.status == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "omega,beta,residual_abs_t");
  CHECK(lines[1].rfind("1,0.7853981", 0) == 0);
  CHECK(lines[2].rfind("1,2.3561944", 0) == 0);
}

TEST_CASE("config file supplies defaults that flags override", "[cli]") {
  const auto cfg = data_dir() / "cfg.json";
  {
    std::ofstream f(cfg);
    f << R"({"omega": "0.5:1.5:11", "beta": 0.3, "tau-te": 20.0, "pre": "D45", "format": "json"})";
  }
  const RunPlan p = parse(std::vector<std::string>{"spectrum", "--config", cfg.string(), "--beta",
                                                   "0.4"});
  CHECK(p.omega_range.count == 11);
  CHECK(p.beta == 0.4);
  CHECK(p.linear.tau_te == 20.0);
  CHECK(p.pre.label == "D45");
  CHECK(p.format == Format::json);

  const auto bad = data_dir() / "bad.json";
  {
    std::ofstream f(bad);
    f << R"({"no-such-flag": 1})";
  }
  CHECK(invoke({"spectrum", "--config", bad.string(), "--omega", "0.5:1.5:11"}).status == 2);
  CHECK(invoke({"spectrum", "--config", (data_dir() / "missing.json").string(), "--omega",
                "0.5:1.5:11"})
            .status != 0);
}

TEST_CASE("canonical arguments round trip", "[cli]") {
  const std::vector<std::vector<std::string>> cases{
      {"contour", "--omega", "0.5:1.5:11", "--beta", "0:3.14159265:7", "--method", "numeric",
       "--step", "2e-5", "--pre", "D45", "--post-angle", "0.1"},
      {"spectrum", "--omega", "0.1:0.9:5", "--beta", "0.7", "--tau-te", "12", "--tau-tm", "8.5",
       "--phi0-te", "0.25", "--format", "json"},
      {"angle-sweep", "--omega", "1", "--beta", "0:90:5", "--degrees"},
      {"pulse", "--beta", "0.3", "--samples", "1024", "--sigma", "0.01", "--span", "0.5"},
      {"singularities", "--tol", "1e-9", "--omega", "0.8:1.2:21"},
      {"estimate-beta", "--omega", "1", "--tau", "54.86", "--bracket", "0.63:0.78", "-o", "e.csv"},
  };
  for (const auto& c : cases) {
    const RunPlan p = parse(c);
    const auto canon = canonical_args(p);
    const RunPlan q = parse(canon);
    CHECK(canonical_args(q) == canon);
    CHECK(q.omega_range == p.omega_range);
    CHECK(q.beta_range == p.beta_range);
    CHECK(q.beta == p.beta);
    CHECK(q.pre == p.pre);
    CHECK(q.post == p.post);
    CHECK(q.linear.tau_te == p.linear.tau_te);
    CHECK(q.grid.n == p.grid.n);
    CHECK(q.bracket.lo == p.bracket.lo);
    CHECK(q.output_path == p.output_path);
    CHECK(split_command(canonical_command(p)) ==
          [&] {
            std::vector<std::string> v{"weakoptics"};
            v.insert(v.end(), canon.begin(), canon.end());
            return v;
          }());
  }
}

TEST_CASE("split_command", "[cli]") {
  CHECK(split_command("a 'b c' d") == std::vector<std::string>{"a", "b c", "d"});
  CHECK(split_command("  x   --y=1 ") == std::vector<std::string>{"x", "--y=1"});
  CHECK(split_command("p 'it'\\''s'") == std::vector<std::string>{"p", "it's"});
}

TEST_CASE("reruns are byte-identical and the header reproduces the file", "[cli]") {
  const std::vector<std::vector<std::string>> cases{
      {"contour", "--omega", "0.5:1.5:21", "--beta", "0:3.14159265:31"},
      {"spectrum", "--omega", "0.5:1.5:201", "--beta", "0.785398", "--format", "json"},
      {"angle-sweep", "--omega", "1", "--beta", "0:1.5707963267948966:181", "--method", "numeric"},
      {"pulse", "--beta", "0.39269908169872414", "--samples", "1024", "--sigma", "0.01"},
      {"singularities", "--format", "json"},
      {"estimate-beta", "--omega", "1", "--tau", "54.86", "--bracket", "0.63:0.78"},
  };
  int n = 0;
  for (auto args : cases) {
    const auto path = (data_dir() / ("run" + std::to_string(n++) + ".out")).string();
    args.push_back("-o");
    args.push_back(path);
    REQUIRE(invoke(args).status == 0);
    const std::string first = slurp(path);
    REQUIRE(invoke(args).status == 0);
    CHECK(slurp(path) == first);

    // the recorded command, run again, rewrites the same bytes
    std::string header;
    if (first.rfind("# ", 0) == 0) {
      header = first.substr(2, first.find('\n') - 2);
    } else {
      const auto key = first.find("\"command\":\"");
      REQUIRE(key != std::string::npos);
      const auto start = key + 11;
      header = first.substr(start, first.find('"', start) - start);
    }
    auto tokens = split_command(header);
    REQUIRE(tokens.size() > 1);
    CHECK(tokens[0] == "weakoptics");
    tokens.erase(tokens.begin());
    fs::remove(path);
    REQUIRE(invoke(tokens).status == 0);
    CHECK(slurp(path) == first);
  }
}

TEST_CASE("tabulated dispersion from the command line", "[cli]") {
  const auto table = data_dir() / "table.csv";
  {
    std::ofstream f(table);
    f << "omega,phi_te,phi_tm\n";
    for (int k = 0; k <= 40; ++k) {
      const double w = 0.4 + 0.03 * k;
      f << w << ',' << 10 * kPi * w << ',' << 9 * kPi * w << '\n';
    }
  }
  const auto r = invoke({"singularities", "--dispersion-file", table.string()});
  REQUIRE(r.status == 0);
  CHECK(data_lines(r.out).size() == 3);
  const auto out = invoke({"spectrum", "--dispersion-file", table.string(), "--omega", "0.1:0.9:5"});
  CHECK(out.status == 2);
  CHECK(invoke({"singularities", "--dispersion-file", (data_dir() / "nope.csv").string()}).status ==
        1);
}
