#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path workspace() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("intequiv_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " \"" INTEQUIV_CLI "\" -w \"" + workspace().string() +
                          "\" " + args + " > \"" + (workspace() / "stdout.txt").string() +
                          "\" 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Cleanup {
  fs::path dir = workspace();
  ~Cleanup() { fs::remove_all(dir); }
} cleanup;

std::string output() { return read(workspace() / "stdout.txt"); }

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

const char* kS4 = R"({"schema": "group/v1", "name": "S4", "degree": 4, "order": "24",
                      "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]})";

}  // namespace

TEST_CASE("parabolic pair: check, tables, obstruction and exit codes 3 and 4") {
  REQUIRE(run("group make psl3_2") == 0);
  CHECK(fs::exists(workspace() / "psl3_2.triple.json"));
  CHECK(fs::exists(workspace() / "manifest.json"));
  REQUIRE(run("triple check --triple psl3_2.triple.json") == 0);
  CHECK(output().find("gassmann-triple") != std::string::npos);
  REQUIRE(run("table splitting --triple psl3_2.triple.json") == 0);
  REQUIRE(run("intertwiner basis --triple psl3_2.triple.json") == 0);
  CHECK(run("intertwiner search --basis psl3_2.basis.json") == 4);
  CHECK(run("intertwiner search --basis psl3_2.basis.json --no-preflight") == 3);
  CHECK(run("intertwiner search --basis psl3_2.basis.json --no-preflight --budget 1") == 3);
  CHECK(run("obstruct compare --triple psl3_2.triple.json") == 0);
  CHECK(output().find("all-equal") != std::string::npos);
  CHECK(run("intertwiner local --basis psl3_2.basis.json --prime 3") == 0);
}

TEST_CASE("conjugate pair certifies; corrupted certificate exits 1") {
  write(workspace() / "s4.json", kS4);
  write(workspace() / "p0.json", R"({"generators": [[0, 2, 1, 3], [0, 2, 3, 1]]})");
  write(workspace() / "p3.json", R"({"generators": [[1, 0, 2, 3], [1, 2, 0, 3]]})");
  REQUIRE(run("triple check --group s4.json --h1 p0.json --h2 p3.json") == 0);
  CHECK(output().find("conjugate-pair") != std::string::npos);
  REQUIRE(run("intertwiner basis --triple s4.triple.json --out s4pair.basis.json") == 0);
  REQUIRE(run("intertwiner search --basis s4pair.basis.json --out s4pair.cert.json") == 0);
  const std::string first = read(workspace() / "s4pair.cert.json");
  REQUIRE(run("intertwiner search --basis s4pair.basis.json --out s4pair.cert.json") == 0);
  CHECK(read(workspace() / "s4pair.cert.json") == first);
  CHECK(run("certify verify s4pair.cert.json") == 0);
  CHECK(run("norm exponents s4pair.cert.json") == 0);

  std::string bad = first;
  const auto pos = bad.find("\"entries\": [");
  REQUIRE(pos != std::string::npos);
  const auto q = bad.find('"', pos + 13);
  bad[q + 1] = bad[q + 1] == '0' ? '1' : '0';
  write(workspace() / "corrupt.cert.json", bad);
  CHECK(run("certify verify corrupt.cert.json") == 1);
  CHECK(output().find("X*rho1(g") != std::string::npos);
}

TEST_CASE("unequal index is reported, not rejected") {
  write(workspace() / "t.json", R"({"generators": [[1, 0, 2, 3]]})");
  write(workspace() / "p0.json", R"({"generators": [[0, 2, 1, 3], [0, 2, 3, 1]]})");
  write(workspace() / "s4.json", kS4);
  REQUIRE(run("triple check --group s4.json --h1 p0.json --h2 t.json --out mm.gassmann.json") == 0);
  CHECK(fs::exists(workspace() / "s4.triple.json"));
  CHECK(output().find("character-mismatch") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
  write(workspace() / "broken.json", "{\"schema\": ");
  CHECK(run("certify verify broken.json") == 2);
  write(workspace() / "wrong.json", kS4);
  CHECK(run("certify verify wrong.json") == 2);
  CHECK(run("group make nothing:3") == 2);
  CHECK(run("intertwiner search --basis missing.json") == 2);
  CHECK(run("intertwiner search --basis psl3_2.basis.json --strategy annealing") == 2);
  CHECK(run("no-such-command") == 2);
}

TEST_CASE("manifest hashes guard stored artifacts") {
  REQUIRE(run("group make psl3_2") == 0);
  const auto manifest = read(workspace() / "manifest.json");
  CHECK(manifest.find("workspace-manifest/v1") != std::string::npos);
  CHECK(manifest.find("sha256") != std::string::npos);
  CHECK(manifest.find("time") == std::string::npos);
  std::string t = read(workspace() / "psl3_2.triple.json");
  t.insert(t.rfind('}'), " ");
  write(workspace() / "psl3_2.triple.json", t);
  CHECK(run("triple check --triple psl3_2.triple.json") == 2);
  CHECK(output().find("hash mismatch") != std::string::npos);
  REQUIRE(run("group make psl3_2") == 0);
  CHECK(run("triple check --triple psl3_2.triple.json") == 0);
}

TEST_CASE("workspace from the environment") {
  const fs::path other = workspace() / "envws";
  fs::create_directories(other);
  const std::string cmd = "INTEQUIV_WORKSPACE=\"" + other.string() + "\" \"" INTEQUIV_CLI
                          "\" group make psl2:7 > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(other / "psl2_7.group.json"));
}

TEST_CASE("shipped certificate is reproduced byte for byte") {
  REQUIRE(run("group make a5pair:29") == 0);
  REQUIRE(run("intertwiner basis --triple a5pair_29.triple.json") == 0);
  REQUIRE(run("intertwiner search --basis a5pair_29.basis.json") == 0);
  CHECK(read(workspace() / "a5pair_29.cert.json") ==
        read(fs::path(INTEQUIV_FIXTURE_DIR) / "a5pair_29.cert.json"));
  CHECK(run("certify verify a5pair_29.cert.json") == 0);
}
