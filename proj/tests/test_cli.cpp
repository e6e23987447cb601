#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

using nlohmann::json;

namespace {

const std::string kCli = NETLOC_CLI;
const std::string kData = NETLOC_DATA_DIR;

struct Run {
  int code = -1;
  std::string out;
  json doc() const { return json::parse(out); }
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = "'" + kCli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return "'" + kData + "/" + name + "'"; }

} // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("bound").code == 2);
  CHECK(run("bound " + data("missing.json")).code == 2);
  CHECK(run("quantum-table --eta 2").code == 2);
  CHECK(run("sos-verify --bound 1/2").code == 2);
  CHECK(run("--flavor quad bound " + data("triangle.json")).code == 2);
}

TEST_CASE("bound and relax-size") {
  auto r = run("bound " + data("triangle.json"));
  REQUIRE(r.code == 0);
  auto j = r.doc();
  CHECK(j["affine_dimension"] == 7);
  CHECK(j["basic"] == 9);
  for (const auto& s : j["sources"]) CHECK(s["refined"] == 6);
  auto rs = run("relax-size 6");
  REQUIRE(rs.code == 0);
  CHECK(rs.doc()["D"] == 123);
  CHECK(rs.doc()["side"] == 7626);
}

TEST_CASE("eval, compress and --out round trip") {
  const std::string tmp = (std::filesystem::temp_directory_path() / "netloc_cli_compressed.json").string();
  auto direct = run("eval " + data("pneq-bit-model.json"));
  REQUIRE(direct.code == 0);
  CHECK(run("--out '" + tmp + "' compress " + data("pneq-bit-model.json")).code == 0);
  auto again = run("eval '" + tmp + "'");
  REQUIRE(again.code == 0);
  CHECK(direct.doc()["values"] == again.doc()["values"]);
  auto p = run("--flavor float eval " + data("pneq-threshold-model.json"));
  CHECK(p.code == 0);
  CHECK(p.doc()["flavor"] == "float");
  std::filesystem::remove(tmp);
}

TEST_CASE("decision-shaped commands exit 1 on a negative answer") {
  auto pr = run("bell-test " + data("pr-box.json"));
  CHECK(pr.code == 1);
  CHECK(pr.doc()["kind"] == "certificate");
  CHECK(run("possibilistic --support 000,111").code == 1);
  CHECK(run("possibilistic --support 000,111 --cards 3,3,3 --pruned").code == 1);
  CHECK(run("possibilistic --support 001,010,011,100,101,110").code == 0);
  CHECK(run("sos-verify --branch xib --bound 1/2").code == 1);
}

TEST_CASE("resource caps exit 3") {
  CHECK(run("possibilistic --support 000,111 --cards 3,3,3").code == 3);
  CHECK(run("--cap 8 bell-facets " + data("chsh.json")).code == 3);
}

TEST_CASE("facets, certificate and quantum table") {
  auto f = run("bell-facets " + data("chsh.json"));
  REQUIRE(f.code == 0);
  CHECK(f.doc()["count"] == 24);
  auto s = run("sos-verify");
  REQUIRE(s.code == 0);
  CHECK(s.doc()["bound"] == "2/3");
  auto q = run("quantum-table --eta 0.75");
  REQUIRE(q.code == 0);
  CHECK(q.doc()["probabilities"].size() == 64);
  CHECK(q.doc()["verdict"] == "Match");
}

TEST_CASE("triangle search recovers a model") {
  auto t = run("--threads 2 triangle-search --target " + data("p-neq.json"));
  REQUIRE(t.code == 0);
  auto j = t.doc();
  CHECK(j["support_matches"] == 204);
  CHECK(j["survivors"].size() == 4);
  CHECK(!j["models"].empty());
}
