// Command-line front end over the C interface. Artifacts live in a workspace
// directory with a manifest of schema versions and SHA-256 content hashes.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "intequiv/intequiv.h"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitObstruction = 4;
constexpr int kExitInternal = 5;

constexpr const char* kWorkspaceEnv = "INTEQUIV_WORKSPACE";
constexpr const char* kManifestName = "manifest.json";
constexpr const char* kManifestLog = "manifest.log";

struct CliError {
  int code;
  std::string message;
};

int exit_code(ieq_status s) {
  switch (s) {
    case IEQ_OK: return kExitOk;
    case IEQ_ERR_BUDGET_EXHAUSTED: return kExitExhausted;
    case IEQ_ERR_LOCAL_OBSTRUCTION: return kExitObstruction;
    case IEQ_ERR_VERIFICATION_FAILED: return kExitFailed;
    case IEQ_ERR_INTERNAL: return kExitInternal;
    default: return kExitInput;
  }
}

[[noreturn]] void raise(ieq_status s) {
  throw CliError{exit_code(s), std::string(ieq_status_name(s)) + ": " + ieq_last_error()};
}

void check(ieq_status s) {
  if (s != IEQ_OK) raise(s);
}

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { ieq_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using TripleHandle = Handle<ieq_triple, ieq_triple_free>;
using BasisHandle = Handle<ieq_basis, ieq_basis_free>;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw CliError{kExitInternal, "SHA-256 failed"};
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CliError{kExitInput, "cannot read " + p.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workspace {
 public:
  explicit Workspace(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }

  // A path as given if it exists, otherwise relative to the workspace.
  fs::path resolve(const std::string& name) const {
    fs::path p(name);
    if (fs::exists(p) || p.is_absolute()) return p;
    return dir_ / p;
  }

  // Reads an input artifact; files recorded in the manifest must still
  // match their hash.
  std::string load(const std::string& name) const {
    const fs::path p = resolve(name);
    std::string data = read_file(p);
    std::error_code ec;
    if (fs::equivalent(p.parent_path().empty() ? fs::path(".") : p.parent_path(),
                       dir_, ec)) {
      const Json m = manifest();
      const std::string key = p.filename().string();
      if (m["artifacts"].contains(key)) {
        const std::string want = m["artifacts"][key]["sha256"];
        if (want != sha256_hex(data))
          throw CliError{kExitInput, "hash mismatch for " + p.string() +
                                         ": the file changed since it was written"};
      }
    }
    check(ieq_validate(data.c_str()));
    return data;
  }

  fs::path store(const std::string& name, const std::string& data) const {
    fs::create_directories(dir_);
    const fs::path p = dir_ / name;
    {
      std::ofstream out(p, std::ios::binary);
      out << data;
      if (!out) throw CliError{kExitInternal, "cannot write " + p.string()};
    }
    const Json doc = Json::parse(data);
    const std::string hash = sha256_hex(data);
    Json m = manifest();
    m["artifacts"][name] = Json{{"schema", doc.value("schema", "")}, {"sha256", hash}};
    std::ofstream(dir_ / kManifestName, std::ios::binary) << m.dump(1) << "\n";
    // Timestamps stay out of the hashed manifest.
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::ofstream(dir_ / kManifestLog, std::ios::app)
        << stamp << " " << name << " " << hash << "\n";
    return p;
  }

 private:
  Json manifest() const {
    const fs::path p = dir_ / kManifestName;
    Json m{{"schema", "workspace-manifest/v1"}, {"artifacts", Json::object()}};
    if (fs::exists(p)) {
      try {
        m = Json::parse(read_file(p));
      } catch (const Json::exception& e) {
        throw CliError{kExitInput, "corrupt workspace manifest: " + std::string(e.what())};
      }
    }
    return m;
  }

  fs::path dir_;
};

// "a5pair_29.triple.json" -> "a5pair_29"
std::string stem_of(const std::string& path) {
  const std::string name = fs::path(path).filename().string();
  return name.substr(0, name.find('.'));
}

std::string sanitize(std::string name) {
  for (char& c : name)
    if (c == ':' || c == '/') c = '_';
  return name;
}

void announce(const fs::path& p) { std::cout << "wrote " << p.string() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral and rational equivalence of permutation modules"};
  app.require_subcommand(1);

  std::string workspace_dir;
  unsigned threads = 1;
  app.add_option("--workspace,-w", workspace_dir,
                 std::string("Workspace directory (default: $") + kWorkspaceEnv +
                     " or the current directory)");
  app.add_option("--threads", threads, "Worker threads; 0 = all cores")
      ->capture_default_str();

  std::string out_name;
  std::uint64_t seed = 0;

  // group make
  auto* group = app.add_subcommand("group", "Construct groups");
  group->require_subcommand(1);
  auto* group_make = group->add_subcommand("make", "psl2:P, pgl2:P, psl3_2 or a5pair:P");
  std::string group_name;
  group_make->add_option("name", group_name)->required();
  group_make->add_option("--seed", seed, "Seed for the a5pair subgroup search");
  group_make->add_option("--out", out_name, "Artifact name in the workspace");

  // triple check
  auto* triple = app.add_subcommand("triple", "Gassmann triples");
  triple->require_subcommand(1);
  auto* triple_check = triple->add_subcommand("check", "Characters and conjugacy");
  std::string triple_path, group_path, h1_path, h2_path, normal_path;
  triple_check->add_option("--triple", triple_path);
  triple_check->add_option("--group", group_path);
  triple_check->add_option("--h1", h1_path);
  triple_check->add_option("--h2", h2_path);
  triple_check->add_option("--normal", normal_path,
                           "Check the images in G/N, N given by generators");
  triple_check->add_option("--out", out_name);

  // table splitting
  auto* table = app.add_subcommand("table", "Splitting tables");
  table->require_subcommand(1);
  auto* table_split = table->add_subcommand("splitting", "Cycle types per class");
  table_split->add_option("--triple", triple_path)->required();
  table_split->add_option("--out", out_name);

  // intertwiner basis / search / local
  auto* inter = app.add_subcommand("intertwiner", "Intertwiner lattice");
  inter->require_subcommand(1);
  auto* inter_basis = inter->add_subcommand("basis", "Double-coset basis");
  inter_basis->add_option("--triple", triple_path)->required();
  inter_basis->add_option("--out", out_name);

  auto* inter_search = inter->add_subcommand("search", "Search for a unimodular intertwiner");
  std::string basis_path, strategy = "box";
  std::uint64_t budget = 0;
  std::int64_t radius = 2;
  inter_search->add_option("--basis", basis_path)->required();
  inter_search->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"box", "random", "crt"}))
      ->capture_default_str();
  inter_search->add_option("--budget", budget, "Exact determinant evaluations; 0 = unlimited")
      ->capture_default_str();
  inter_search->add_option("--seed", seed)->capture_default_str();
  inter_search->add_option("--radius", radius, "Coefficient bound")->capture_default_str();
  bool no_preflight = false;
  inter_search->add_flag("--no-preflight", no_preflight,
                         "Skip the exhaustive local check at small primes");
  inter_search->add_option("--out", out_name);

  auto* inter_local = inter->add_subcommand("local", "Randomized local solvability at p");
  std::uint64_t prime = 0;
  inter_local->add_option("--basis", basis_path)->required();
  inter_local->add_option("--prime", prime)->required();
  inter_local->add_option("--seed", seed);
  inter_local->add_option("--out", out_name);

  // certify verify
  auto* certify = app.add_subcommand("certify", "Certificates");
  certify->require_subcommand(1);
  auto* certify_verify = certify->add_subcommand("verify", "Re-check a certificate");
  std::string cert_path;
  certify_verify->add_option("certificate", cert_path)->required();

  // obstruct compare
  auto* obstruct = app.add_subcommand("obstruct", "Integral obstructions");
  obstruct->require_subcommand(1);
  auto* obstruct_compare = obstruct->add_subcommand("compare", "Tate H^0 over a module family");
  std::string family = "default";
  obstruct_compare->add_option("--triple", triple_path)->required();
  obstruct_compare->add_option("--family", family,
                               "default | trivial | regular | order:N, comma separated")
      ->capture_default_str();
  obstruct_compare->add_option("--out", out_name);

  // norm exponents
  auto* norm = app.add_subcommand("norm", "Norm relations");
  norm->require_subcommand(1);
  auto* norm_exp = norm->add_subcommand("exponents", "Exponents of the lifted map");
  norm_exp->add_option("certificate", cert_path)->required();
  norm_exp->add_option("--out", out_name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (workspace_dir.empty()) {
      const char* env = std::getenv(kWorkspaceEnv);
      workspace_dir = env && *env ? env : ".";
    }
    const Workspace ws{fs::path(workspace_dir)};
    check(ieq_set_threads(threads));

    auto load_triple = [&](TripleHandle& t) {
      const std::string data = ws.load(triple_path);
      check(ieq_triple_from_json(data.c_str(), &t.p));
    };
    auto name_or = [&](const std::string& fallback) {
      return out_name.empty() ? fallback : out_name;
    };

    if (*group_make) {
      Text json;
      check(ieq_make_named(group_name.c_str(), seed, json.out()));
      const bool is_triple = group_name == "psl3_2" || group_name.rfind("a5pair:", 0) == 0;
      announce(ws.store(name_or(sanitize(group_name) +
                                (is_triple ? ".triple.json" : ".group.json")),
                        json.str()));
      const Json doc = Json::parse(json.str());
      const Json& g = is_triple ? doc["group"] : doc;
      std::cout << "group " << g["name"].get<std::string>() << " of order "
                << g["order"].get<std::string>() << " on " << g["degree"] << " points\n";
      if (is_triple)
        std::cout << "subgroups of order " << doc["h1"]["order"].get<std::string>()
                  << " and " << doc["h2"]["order"].get<std::string>() << "\n";
      return kExitOk;
    }

    if (*triple_check) {
      TripleHandle t;
      std::string stem;
      if (!triple_path.empty()) {
        if (!group_path.empty() || !h1_path.empty() || !h2_path.empty())
          throw CliError{kExitInput, "give either --triple or --group/--h1/--h2"};
        load_triple(t);
        stem = stem_of(triple_path);
      } else {
        if (group_path.empty() || h1_path.empty() || h2_path.empty())
          throw CliError{kExitInput, "triple check needs --triple or --group, --h1 and --h2"};
        const std::string g = ws.load(group_path);
        const std::string h1 = read_file(ws.resolve(h1_path));
        const std::string h2 = read_file(ws.resolve(h2_path));
        check(ieq_triple_from_parts(g.c_str(), h1.c_str(), h2.c_str(), &t.p));
        stem = stem_of(group_path);
        Text tj;
        check(ieq_triple_to_json(t.p, tj.out()));
        announce(ws.store(stem + ".triple.json", tj.str()));
      }
      Text json, text;
      if (!normal_path.empty()) {
        const std::string n = read_file(ws.resolve(normal_path));
        check(ieq_quotient_check(t.p, n.c_str(), json.out()));
        announce(ws.store(name_or(stem + ".quotient.gassmann.json"), json.str()));
      } else {
        check(ieq_triple_check(t.p, json.out(), text.out()));
        std::cout << text.str();
        announce(ws.store(name_or(stem + ".gassmann.json"), json.str()));
      }
      const Json doc = Json::parse(json.str());
      std::cout << "verdict " << doc["verdict"].get<std::string>() << "\n";
      return kExitOk;
    }

    if (*table_split) {
      TripleHandle t;
      load_triple(t);
      Text json, text;
      check(ieq_splitting_tables(t.p, json.out(), text.out()));
      std::cout << text.str();
      announce(ws.store(name_or(stem_of(triple_path) + ".splitting.json"), json.str()));
      const Json doc = Json::parse(json.str());
      std::cout << (doc["identical"].get<bool>() ? "tables identical" : "tables differ")
                << "\n";
      return kExitOk;
    }

    if (*inter_basis) {
      TripleHandle t;
      load_triple(t);
      BasisHandle b;
      check(ieq_basis_from_triple(t.p, &b.p));
      Text json;
      check(ieq_basis_to_json(b.p, json.out()));
      announce(ws.store(name_or(stem_of(triple_path) + ".basis.json"), json.str()));
      std::uint64_t m = 0;
      check(ieq_basis_size(b.p, &m));
      std::cout << "double cosets " << m << "\n";
      return kExitOk;
    }

    if (*inter_search) {
      const std::string data = ws.load(basis_path);
      BasisHandle b;
      check(ieq_basis_from_json(data.c_str(), &b.p));
      ieq_search_options opt{strategy.c_str(), radius, budget, seed ? seed : 1,
                             no_preflight ? 1 : 0};
      Text json;
      const ieq_status s = ieq_search(b.p, &opt, json.out());
      const std::string stem = stem_of(basis_path);
      if (s == IEQ_OK) {
        announce(ws.store(name_or(stem + ".cert.json"), json.str()));
        const Json doc = Json::parse(json.str());
        std::cout << "certificate found, det " << doc["det"].get<std::string>() << "\n";
        return kExitOk;
      }
      if (s == IEQ_ERR_BUDGET_EXHAUSTED || s == IEQ_ERR_LOCAL_OBSTRUCTION) {
        announce(ws.store(name_or(stem + ".search.json"), json.str()));
        std::cout << ieq_last_error() << "\n";
        return exit_code(s);
      }
      raise(s);
    }

    if (*inter_local) {
      const std::string data = ws.load(basis_path);
      BasisHandle b;
      check(ieq_basis_from_json(data.c_str(), &b.p));
      Text json;
      check(ieq_local_solvability(b.p, prime, seed, json.out()));
      announce(ws.store(name_or(stem_of(basis_path) + ".local_" + std::to_string(prime) +
                                ".json"),
                        json.str()));
      const Json doc = Json::parse(json.str());
      std::cout << (doc["found"].get<bool>() ? "solvable" : "undetermined") << " at p = "
                << prime << "\n";
      return kExitOk;
    }

    if (*certify_verify) {
      const std::string data = ws.load(cert_path);
      Text msg;
      const ieq_status s = ieq_certificate_verify(data.c_str(), msg.out());
      if (s == IEQ_OK || s == IEQ_ERR_VERIFICATION_FAILED) {
        std::cout << msg.str() << "\n";
        return exit_code(s);
      }
      raise(s);
    }

    if (*obstruct_compare) {
      TripleHandle t;
      load_triple(t);
      Text json;
      check(ieq_obstruct_compare(t.p, family.c_str(), json.out()));
      announce(ws.store(name_or(stem_of(triple_path) + ".obstruction.json"), json.str()));
      const Json doc = Json::parse(json.str());
      for (const auto& m : doc["modules"])
        std::cout << (m["equal"].get<bool>() ? "equal    " : "MISMATCH ")
                  << m["module"].get<std::string>() << "\n";
      std::cout << "verdict " << doc["verdict"].get<std::string>() << "\n";
      return kExitOk;
    }

    if (*norm_exp) {
      const std::string data = ws.load(cert_path);
      Text json;
      check(ieq_norm_exponents(data.c_str(), json.out()));
      announce(ws.store(name_or(stem_of(cert_path) + ".norm.json"), json.str()));
      const Json doc = Json::parse(json.str());
      std::cout << "exponent sum " << doc["exponent_sum"].get<std::string>() << "\n";
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
