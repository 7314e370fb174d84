#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "diamond7/cli.hpp"
#include "diamond7/relations.hpp"

using namespace diamond7;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("documented invocations") {
    CHECK(run({"verify-appendix", "--order", "150"}).code == cli::kPass);
    CHECK(run({"verify-modeq", "--order", "200"}).code == cli::kPass);
    const Run d3 = run({"check-d3", "--alpha", "2", "--nmax", "100"});
    CHECK(d3.code == cli::kPass);
    CHECK(d3.out.find("overall: PASS") != std::string::npos);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"no-such-command"}).code == cli::kUsage);
    CHECK(run({"check-d3", "--alpha", "x", "--nmax", "1"}).code == cli::kUsage);
    CHECK(run({"relation", "get", "--op", "Q", "--basis", "p0", "--k", "0"}).code == cli::kUsage);
    CHECK(run({"expand", "1^4 * 2^-4"}).code == cli::kUsage);
    CHECK(run({"verify-appendix", "--seed-file", "/nonexistent/file.json"}).code == cli::kUsage);
    const auto broken = temp_file("d7_broken.json", "[{\"op\": \"A3\"}]");
    CHECK(run({"verify-appendix", "--seed-file", broken.string()}).code == cli::kUsage);
  }

  TEST_CASE("precision refusal") {
    CHECK(run({"ell", "compute", "--family", "K5", "--alpha", "6"}).code == cli::kPrecisionRefusal);
    CHECK(run({"ell", "compute", "--family", "K5", "--alpha", "6", "--mod-cap", "30", "--order",
               "100000"})
              .code == cli::kPrecisionRefusal);
  }

  TEST_CASE("corrupted seed file yields a mathematical failure") {
    auto recs = parse_relation_file(embedded_seed_text());
    recs[10].terms[1].mantissa += 7;
    const auto bad = temp_file("d7_corrupt.json", serialize_relation_file(recs));
    const Run r = run({"verify-appendix", "--order", "60", "--seed-file", bad.string()});
    CHECK(r.code == cli::kMathFailure);
    CHECK(r.out.find("[FAIL]") != std::string::npos);
  }

  TEST_CASE("JSON certificates round-trip") {
    const auto path = std::filesystem::temp_directory_path() / "d7_cert.json";
    const Run r = run({"check-corollary", "--kmax", "1", "--nmax", "50", "--format", "json", "--out",
                       path.string()});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::ordered_json::parse(in);
    CHECK(j.at("status") == "pass");
    CHECK(j.at("seed_checksum") == checksum_hex(embedded_seed_text()));
    const cli::Certificate c = cli::Certificate::from_json(j);
    CHECK(c.to_json() == j);
  }

  TEST_CASE("deterministic apart from wall time") {
    auto strip = [](std::string s) {
      const auto p = s.find("\"wall_time_seconds\"");
      return s.substr(0, p);
    };
    const Run a = run({"relation", "extend", "--op", "B", "--basis", "1", "--k-min", "-9",
                       "--k-max", "8", "--order", "40", "--format", "json", "--threads", "3"});
    const Run b = run({"relation", "extend", "--op", "B", "--basis", "1", "--k-min", "-9",
                       "--k-max", "8", "--order", "40", "--format", "json"});
    CHECK(a.code == cli::kPass);
    CHECK(strip(a.out) == strip(b.out));
  }

  TEST_CASE("decompose reproduces a stored relation") {
    const Run r = run({"relation", "decompose", "--op", "A5", "--basis", "1", "--k", "-4"});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find(R"(\"power\":3)") != std::string::npos);
  }
}
