#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ellhyp/cli.hpp"

using namespace ellhyp;
using cli::json;

namespace {

struct Outcome {
  int code;
  std::vector<json> records;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ellhyp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  Outcome o{code, {}, err.str()};
  std::istringstream lines(out.str());
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty() && line.front() == '{') o.records.push_back(json::parse(line));
  return o;
}

const json* find(const Outcome& o, const std::string& check) {
  for (const auto& r : o.records)
    if (r["check"] == check) return &r;
  return nullptr;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("complex literal grammar") {
  using cli::parse_complex;
  CHECK(parse_complex("1") == cplx(1, 0));
  CHECK(parse_complex("i") == cplx(0, 1));
  CHECK(parse_complex("-i") == cplx(0, -1));
  CHECK(parse_complex("0.3+0.2i") == cplx(0.3, 0.2));
  CHECK(parse_complex("2-i") == cplx(2, -1));
  CHECK(parse_complex("-2.5e-3i") == cplx(0, -2.5e-3));
  CHECK(parse_complex("1e-2+3E+1j") == cplx(0.01, 30));
  CHECK(parse_complex(" -1.5 - 0.5i ") == cplx(-1.5, -0.5));
  CHECK(parse_complex("+4") == cplx(4, 0));
  for (const char* bad : {"", "x", "0.3+x", "1+2", "i1", "1++2i", "1e", "--1"}) CHECK_THROWS_AS(parse_complex(bad), Error);
}

TEST_CASE("special functions command") {
  auto o = invoke({"special-fns", "--z", "0.3+0.2i"});
  CHECK(o.code == 0);
  REQUIRE(find(o, "legendre_residual"));
  CHECK((*find(o, "legendre_residual"))["pass"] == true);
  CHECK((*find(o, "legendre_residual"))["value"].get<double>() < 1e-12);
  REQUIRE(find(o, "wp"));
  cplx w((*find(o, "wp"))["value"]["re"].get<double>(), (*find(o, "wp"))["value"]["im"].get<double>());
  CHECK(std::abs(w - wp(cplx(0.3, 0.2), make_lattice(1.0, cplx(0, 1)))) < 1e-14);

  auto pole = invoke({"special-fns", "--z", "1+i"});
  CHECK(pole.code == 2);
  CHECK(pole.err.find("pole") != std::string::npos);
  CHECK(invoke({"special-fns", "--z", "0.3+x"}).code == 1);
  CHECK(invoke({"--omega1", "1", "--omega2", "2", "special-fns", "--z", "0.3"}).code == 2);
}

TEST_CASE("intersection command") {
  auto o = invoke({"intersection"});
  CHECK(o.code == 0);
  REQUIRE(find(o, "intersection_matrix"));
  const auto& m = (*find(o, "intersection_matrix"))["value"];
  CHECK(m[0][0] == "(-c-1)/(c-1)");
  CHECK(m[0][1] == "1/(c-1)");
  CHECK(m[0][2] == "c/(c-1)");
  CHECK(m[4][3] == "-1");
  CHECK((*find(o, "cofactor_22"))["value"] == "(c^2+c+1)/(c-1)^2");

  auto c = invoke({"intersection", "--at-c", "--alpha", "0.3"});
  CHECK(c.code == 0);
  REQUIRE(find(c, "antisymmetry"));
  CHECK((*find(c, "antisymmetry"))["pass"] == true);
  CHECK(find(c, "intersection_matrix_at_c"));
}

TEST_CASE("connection command") {
  auto o = invoke({"connection", "01:0,1", "--verify"});
  CHECK(o.code == 0);
  CHECK((*find(o, "reference_match"))["pass"] == true);
  CHECK((*find(o, "target"))["value"] == "102");

  auto w = invoke({"connection", "02:1,2"});
  CHECK(w.code == 0);
  CHECK((*find(w, "determinant"))["value"] == "-c");
  CHECK((*find(w, "target"))["value"] == "210");

  auto spelled = invoke({"connection", "01:0,1 01:0,-1 02:1,0^-1 01:0,-1^-1 01:0,1^-1", "--verify"});
  CHECK(spelled.code == 0);
  CHECK((*find(spelled, "determinant"))["value"] == "-1/c");

  CHECK(invoke({"connection", "03:1,1"}).code == 1);
  CHECK(invoke({"connection", "01:1,1"}).code == 1);
  CHECK(invoke({"connection", "01:0,1@102"}).code == 1);
  CHECK(invoke({"connection"}).code == 1);
}

TEST_CASE("verify-numeric command") {
  auto path = temp_file("ellhyp_cli_report.ndjson");
  auto o = invoke({"verify-numeric", "--out", path.string()});
  CHECK(o.code == 0);
  CHECK(o.records.empty());
  std::ifstream in(path);
  std::vector<json> records;
  std::string line;
  while (std::getline(in, line)) records.push_back(json::parse(line));
  CHECK(records.size() == 13);
  for (const auto& r : records) {
    CHECK(r.contains("threshold"));
    CHECK(r["pass"] == true);
  }
  std::filesystem::remove(path);

  CHECK(invoke({"--alpha", "0.5", "verify-numeric"}).code == 1);
  CHECK(invoke({"verify-numeric", "--tol", "bogus=1"}).code == 1);
  auto strict = invoke({"verify-numeric", "--tol", "relation=1e-300"});
  CHECK(strict.code == 3);
  CHECK((*find(strict, "relation"))["pass"] == false);
}

TEST_CASE("config file with flag overrides") {
  auto path = temp_file("ellhyp_cli_test.cfg");
  {
    std::ofstream f(path);
    f << "# lattice and exponent\nomega1 = 1\nomega2 = i\nalpha = 0.5\n";
  }
  CHECK(invoke({"--config", path.string(), "intersection", "--at-c"}).code == 1);
  CHECK(invoke({"--config", path.string(), "--alpha", "0.3", "intersection", "--at-c"}).code == 0);
  {
    std::ofstream f(path);
    f << "alpha 0.3\n";
  }
  CHECK(invoke({"--config", path.string(), "intersection"}).code == 1);
  {
    std::ofstream f(path);
    f << "colour = blue\n";
  }
  CHECK(invoke({"--config", path.string(), "intersection"}).code == 1);
  std::filesystem::remove(path);
  CHECK(invoke({"--config", "/nonexistent/ellhyp.cfg", "intersection"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"frobnicate"}).code == 1);
}
