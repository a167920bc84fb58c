#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "subbundle/cli.hpp"
#include "subbundle/errors.hpp"

using namespace testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "subbundle");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = subbundle::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_path(const std::string& name) { return std::string(SUBBUNDLE_CORPUS_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kCorpus[] = {"cusp.fam",       "frobenius_p2.fam", "frobenius_p3.fam", "frobenius_p5.fam",
                         "graph_line.fam", "zero_section.fam", "full_bundle.fam",  "two_lines.fam"};

}  // namespace

TEST_CASE("cusp file parses to the expected family") {
  const auto fam = corpus("cusp.fam");
  const auto& ctx = fam.spec.context();
  CHECK(ctx->base_context()->names() == std::vector<std::string>{"x", "y"});
  CHECK(ctx->fiber_context()->names() == std::vector<std::string>{"z", "w"});
  CHECK(fam.spec.family_generators().size() == 4);
  CHECK(fam.spec.expected_dim() == 1);
  CHECK(fam.spec.sample_points().size() == 6);
  REQUIRE(fam.kernel_check);
  CHECK(fam.kernel_check->maps.size() == 4);
  REQUIRE(fam.closure_by);
  CHECK(fam.closure_by->to_string() == "x");
}

TEST_CASE("family file errors") {
  CHECK_THROWS_AS(parse_family_file(""), ParseError);
  const std::string head = "field Q\nbase_vars x y\nfiber_vars z w\nbase_ideal y^2 - x^3\nfamily z\nrank 1\n";
  try {
    parse_family_file(head + "point 1 0\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(1,0)") != std::string::npos);
  }
  try {
    parse_family_file(head + "frobnicate 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() == 1);
  }
  try {
    parse_family_file("field Q\nbase_vars x\nfiber_vars z\nfamily z + q\nrank 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 12);
  }
  CHECK_THROWS_AS(parse_family_file("field Q\nbase_vars _x\nfiber_vars z\nfamily z\nrank 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_family_file("field Fp 4\nbase_vars x\nfiber_vars z\nfamily z\nrank 0\n"), ParseError);
  CHECK_THROWS_AS(load_family_file(corpus_path("missing.fam")), ValidationError);
}

TEST_CASE("corpus files round-trip through the canonical form") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    const auto fam = corpus(name);
    const auto text = render_family_file(fam);
    const auto again = parse_family_file(text);
    CHECK(again == fam);
    CHECK(render_family_file(again) == text);
  }
}

TEST_CASE("analyze reports are deterministic and schema-stable") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    const auto a = run_cli({"analyze", corpus_path(name)});
    const auto b = run_cli({"analyze", corpus_path(name)});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto ja = nlohmann::json::parse(run_cli({"analyze", "--json", corpus_path(name)}).out);
    auto jb = nlohmann::json::parse(run_cli({"analyze", "--json", corpus_path(name)}).out);
    for (const char* key : {"verdict", "fibers", "certificate", "witnesses"}) CHECK(ja.contains(key));
    CHECK(ja["fibers"].is_array());
    ja.erase("timings_ms");
    jb.erase("timings_ms");
    CHECK(ja == jb);
  }
}

TEST_CASE("text and json renderings agree") {
  const auto text = run_cli({"analyze", corpus_path("cusp.fam")}).out;
  const auto doc = nlohmann::json::parse(run_cli({"analyze", "--json", corpus_path("cusp.fam")}).out);
  CHECK(text.find(doc["verdict"]["line"].template get<std::string>()) != std::string::npos);
  CHECK(doc["verdict"]["kind"] == "NotSubbundle");
  CHECK(doc["fibers"][0]["fiber_gb"][0] == "w^2");
}

TEST_CASE("fiber command") {
  const auto r = run_cli({"fiber", corpus_path("cusp.fam"), "--point", "4,8", "--json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["fiber"]["status"] == "ReducedLinear");
  CHECK(run_cli({"fiber", corpus_path("cusp.fam"), "--point", "1,0"}).code == 1);
  CHECK(run_cli({"fiber", corpus_path("cusp.fam"), "--point", "1"}).code == 1);
  CHECK(run_cli({"fiber", corpus_path("cusp.fam")}).code == 1);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"analyze", corpus_path("missing.fam")}).code == 1);
  const auto bad = write_temp("subbundle_bad.fam", "field Q\nbase_vars x\n");
  const auto r = run_cli({"analyze", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("subbundle_bad.fam:") != std::string::npos);
  CHECK(run_cli({"kernel-check", corpus_path("graph_line.fam")}).code == 1);
  CHECK(run_cli({"closure", corpus_path("graph_line.fam")}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("closure and kernel-check commands") {
  const auto k = run_cli({"kernel-check", corpus_path("cusp.fam")});
  CHECK(k.code == 0);
  CHECK(k.out.find("kernel presentation VERIFIED") != std::string::npos);
  const auto c = nlohmann::json::parse(run_cli({"closure", "--json", corpus_path("cusp.fam")}).out);
  CHECK(c["fibers_match"] == true);
}
