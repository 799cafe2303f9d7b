// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "intequiv/constructors.hpp"
#include "intequiv/gassmann.hpp"
#include "intequiv/intertwiner.hpp"
#include "intequiv/json_io.hpp"
#include "intequiv/obstruction.hpp"
#include "linalg_suite.hpp"

namespace fs = std::filesystem;
namespace jio = intequiv::json_io;
using namespace intequiv;

namespace {

constexpr double kLimitFano = 5.0;
constexpr double kLimitA5 = 60.0;
constexpr double kLimitVerify = 60.0;
constexpr double kLimitLinalg = 30.0;
constexpr std::size_t kLinalgMatrices = 1000;
constexpr std::uint64_t kLinalgSeed = 20240611;
constexpr std::size_t kMinModules = 5;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path ws() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / ("intequiv_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

std::string g_last_output;

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const fs::path out = ws() / "cli_output.txt";
  const std::string cmd = "\"" INTEQUIV_CLI "\" -w \"" + ws().string() + "\" " + args +
                          " > \"" + out.string() + "\" 2>&1";
  const int st = std::system(cmd.c_str());
  g_last_output = read(out);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

jio::Json artifact(const std::string& name) { return jio::parse(read(ws() / name)); }

int g_failures = 0;

void report(int id, bool ok, std::string detail) {
  if (!ok) ++g_failures;
  while (detail.ends_with("; ")) detail.resize(detail.size() - 2);
  std::cout << "criterion " << id << " " << (ok ? "PASS" : "FAIL") << ": " << detail
            << std::endl;
}

template <class F>
void guarded(int id, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

bool is_a5(const Group& g, const Subgroup& h) {
  // Order 60 with 15 involutions, 20 elements of order 3 and 24 of order 5.
  if (h.order() != 60) return false;
  std::size_t n2 = 0, n3 = 0, n5 = 0;
  for (std::size_t e : h.elements()) {
    const auto o = g.element_order(e);
    n2 += o == 2;
    n3 += o == 3;
    n5 += o == 5;
  }
  return n2 == 15 && n3 == 20 && n5 == 24;
}

bool is_permutation_matrix(const ExactMatrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j) != 0 && x(i, j) != 1) return false;
      ones += x(i, j) == 1;
    }
    if (ones != 1) return false;
  }
  return true;
}

Group s4() {
  return Group::close({Permutation::from_cycles(4, {{0, 1}}),
                       Permutation::from_cycles(4, {{0, 1, 2, 3}})});
}

const std::string kFixture = std::string(INTEQUIV_FIXTURE_DIR) + "/a5pair_29.cert.json";

}  // namespace

int main() {
  guarded(1, [] {
    const auto t0 = Clock::now();
    const bool made = cli("group make psl3_2") == 0;
    const bool checked = made && cli("triple check --triple psl3_2.triple.json") == 0;
    const double dt = since(t0);
    bool ok = checked;
    std::string detail = "cli failed: " + g_last_output;
    if (checked) {
      const auto r = artifact("psl3_2.gassmann.json");
      ok = r["group_order"] == "168" && r["index1"] == 7 && r["index2"] == 7 &&
           r["verdict"] == "gassmann-triple" && dt < kLimitFano;
      detail = "order " + r["group_order"].get<std::string>() + ", indices " +
               r["index1"].dump() + "/" + r["index2"].dump() + ", verdict " +
               r["verdict"].get<std::string>() + ", " + secs(dt) + " (limit " +
               secs(kLimitFano) + ")";
    }
    report(1, ok, detail);
  });

  guarded(2, [] {
    const auto t0 = Clock::now();
    const bool made = cli("group make a5pair:29") == 0;
    const bool checked = made && cli("triple check --triple a5pair_29.triple.json") == 0;
    const double dt = since(t0);
    if (!checked) return report(2, false, "cli failed: " + g_last_output);
    const auto r = artifact("a5pair_29.gassmann.json");
    const auto t = jio::triple_from_json(artifact("a5pair_29.triple.json"));
    const bool a5 = is_a5(t.group, t.h1) && is_a5(t.group, t.h2);
    const bool nonconj = r["conjugate"] == false && r["verdict"] == "gassmann-triple";
    const bool tau = t.witness && jio::witness_holds(t) &&
                     !t.group.contains(t.witness->conjugator) &&
                     r["overgroup_conjugator_verified"] == true;
    const bool ok = r["group_order"] == "12180" && a5 && nonconj && tau && dt < kLimitA5;
    report(2, ok,
           "order " + r["group_order"].get<std::string>() + ", A5 x2 " +
               (a5 ? "yes" : "no") + ", non-conjugate in PSL2 " + (nonconj ? "yes" : "no") +
               ", conjugator in PGL2 \\ PSL2 " + (tau ? "verified" : "missing") + ", " +
               secs(dt) + " (limit " + secs(kLimitA5) + ")");
  });

  guarded(3, [] {
    std::string detail;
    bool ok = true;
    for (const std::string stem : {"psl3_2", "a5pair_29"}) {
      if (cli("intertwiner basis --triple " + stem + ".triple.json") != 0) {
        ok = false;
        detail += stem + " basis failed; ";
        continue;
      }
      const auto b = artifact(stem + ".basis.json");
      const auto r = artifact(stem + ".gassmann.json");
      const auto m = b["double_coset_count"].get<std::int64_t>();
      const auto ip = r["character_inner_product"].get<std::int64_t>();
      ok = ok && m == ip;
      detail += stem + " m=" + std::to_string(m) + " <chi1,chi2>=" + std::to_string(ip) + "; ";
    }
    report(3, ok, detail);
  });

  guarded(4, [] {
    const auto t0 = Clock::now();
    const int rc = cli("certify verify \"" + kFixture + "\"");
    const double dt = since(t0);
    report(4, rc == 0 && dt < kLimitVerify,
           "certify verify exit " + std::to_string(rc) + ", " + secs(dt) + " (limit " +
               secs(kLimitVerify) + ")");
  });

  guarded(5, [] {
    const auto w = find_a5_pair(29);
    const IntertwinerBasis b(w.psl, w.h1, w.h2);
    bool ok = true;
    std::string detail = "a5pair:29 witnesses at p =";
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
      const auto r = local_solvability(b, p);
      const bool good = r.found && r.reverified;
      ok = ok && good;
      detail += " " + std::to_string(p) + (good ? "" : "(FAILED)");
    }
    report(5, ok, detail + ", each re-verified on the transpose");
  });

  guarded(6, [] {
    bool ok = true;
    std::string detail;
    for (const std::string stem : {"psl3_2", "a5pair_29"}) {
      const bool ran = cli("table splitting --triple " + stem + ".triple.json") == 0;
      const bool same = ran && artifact(stem + ".splitting.json")["identical"] == true;
      ok = ok && same;
      detail += stem + (same ? " identical; " : " differ; ");
    }
    report(6, ok, detail);
  });

  guarded(7, [] {
    const auto w = find_a5_pair(29);
    const auto fam = default_family(w.psl);
    const auto r = compare_obstructions(w.psl, w.h1, w.h2, fam);
    const bool ok = r.verdict == ObstructionVerdict::all_equal && r.entries.size() >= kMinModules;
    report(7, ok,
           std::string(to_string(r.verdict)) + " over " + std::to_string(r.entries.size()) +
               " modules (need >= " + std::to_string(kMinModules) + ")");
  });

  guarded(8, [] {
    const auto t0 = Clock::now();
    const auto r = suite::run_linear_algebra(kLinalgMatrices, kLinalgSeed);
    const double dt = since(t0);
    const bool ok = r.matrices == kLinalgMatrices && r.failures == 0 && dt < kLimitLinalg;
    report(8, ok,
           std::to_string(r.matrices) + " matrices, " + std::to_string(r.failures) +
               " failures" + (r.failures ? " (" + r.first_failure + ")" : "") + ", " +
               secs(dt) + " (limit " + secs(kLimitLinalg) + ")");
  });

  guarded(9, [] {
    const Group g = s4();
    const auto p0 = Subgroup::point_stabilizer(g, 0);
    const auto p3 = Subgroup::point_stabilizer(g, 3);
    const auto conj = check_triple(g, p0, p3);
    const IntertwinerBasis b(g, p0, p3);
    const auto o = search_unimodular(b, SearchOptions{});
    const bool a = conj.verdict == Verdict::conjugate_pair &&
                   o.status == SearchStatus::certificate &&
                   is_permutation_matrix(o.certificate->x);

    const auto two = Subgroup::generated_by(g, {Permutation::from_cycles(4, {{0, 1}})});
    const bool bcase = check_triple(g, p0, two).verdict == Verdict::character_mismatch;

    auto cert = jio::parse(read(kFixture));
    auto& e = cert["x"]["entries"][1];
    e = e.get<std::string>() == "0" ? "1" : "0";
    std::ofstream(ws() / "corrupt.cert.json") << jio::dump(cert);
    const int rc = cli("certify verify corrupt.cert.json");
    const bool named = g_last_output.find("X*rho1(g") != std::string::npos;
    const bool c = rc == 1 && named;

    std::string relation = g_last_output.substr(0, g_last_output.find('\n'));
    report(9, a && bcase && c,
           std::string("conjugate pair -> ") + to_string(conj.verdict) +
               (a ? " with permutation-matrix certificate" : " (certificate check failed)") +
               "; unequal index -> " + (bcase ? "character-mismatch" : "wrong verdict") +
               "; corrupted certificate exit " + std::to_string(rc) + " [" + relation + "]");
  });

  fs::remove_all(ws());
  std::cout << (g_failures == 0 ? "all criteria passed" : "some criteria failed") << std::endl;
  return g_failures == 0 ? 0 : 1;
}
