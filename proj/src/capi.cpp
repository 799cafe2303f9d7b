#include "intequiv/intequiv.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "intequiv/constructors.hpp"
#include "intequiv/error.hpp"
#include "intequiv/gassmann.hpp"
#include "intequiv/intertwiner.hpp"
#include "intequiv/json_io.hpp"
#include "intequiv/obstruction.hpp"
#include "intequiv/parallel.hpp"

using namespace intequiv;
namespace jio = intequiv::json_io;

struct ieq_group {
  Group group;
};

struct ieq_triple {
  jio::Triple triple;
};

struct ieq_basis {
  jio::Triple triple;
  IntertwinerBasis basis;
};

namespace {

thread_local std::string g_last_error;

ieq_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return IEQ_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return IEQ_ERR_PARSE;
    case ErrorCode::schema: return IEQ_ERR_SCHEMA;
    case ErrorCode::precondition: return IEQ_ERR_PRECONDITION;
    case ErrorCode::cap_exceeded: return IEQ_ERR_CAP_EXCEEDED;
    case ErrorCode::not_found: return IEQ_ERR_NOT_FOUND;
    case ErrorCode::budget_exhausted: return IEQ_ERR_BUDGET_EXHAUSTED;
    case ErrorCode::local_obstruction: return IEQ_ERR_LOCAL_OBSTRUCTION;
    case ErrorCode::verification_failed: return IEQ_ERR_VERIFICATION_FAILED;
    case ErrorCode::internal: return IEQ_ERR_INTERNAL;
  }
  return IEQ_ERR_INTERNAL;
}

template <class F>
ieq_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return IEQ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IEQ_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** dst, const std::string& s) {
  if (dst) *dst = copy_out(s);
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::invalid_argument,
          std::string(what) + " must not be null");
}

std::vector<GModuleLattice> family_from_spec(const Group& g, const char* spec) {
  std::string s = spec ? spec : "default";
  if (s.empty()) s = "default";
  std::vector<GModuleLattice> out;
  std::optional<std::vector<GModuleLattice>> cyclic;
  auto cyclic_family = [&]() -> const std::vector<GModuleLattice>& {
    if (!cyclic) cyclic = default_family(g);
    return *cyclic;
  };
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "default") {
      for (const auto& l : cyclic_family()) out.push_back(l);
    } else if (item == "trivial") {
      out.push_back(GModuleLattice::trivial(g));
    } else if (item == "regular") {
      out.push_back(GModuleLattice::permutation_module(g, Subgroup::trivial(g), "Z[G]"));
    } else if (item.rfind("order:", 0) == 0) {
      std::size_t n = 0;
      try {
        n = std::stoul(item.substr(6));
      } catch (const std::exception&) {
        fail(ErrorCode::invalid_argument, "bad family item '" + item + "'");
      }
      bool any = false;
      for (const auto& l : cyclic_family())
        if (l.permutation().subgroup().order() == n) {
          out.push_back(l);
          any = true;
        }
      require(any, ErrorCode::invalid_argument,
              "no cyclic subgroup of order " + std::to_string(n));
    } else {
      fail(ErrorCode::invalid_argument, "unknown family item '" + item + "'");
    }
  }
  require(!out.empty(), ErrorCode::invalid_argument, "empty module family");
  return out;
}

}  // namespace

extern "C" {

const char* ieq_version(void) { return "1.0.0"; }

const char* ieq_status_name(ieq_status s) {
  switch (s) {
    case IEQ_OK: return "ok";
    case IEQ_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case IEQ_ERR_PARSE: return "parse-error";
    case IEQ_ERR_SCHEMA: return "schema-error";
    case IEQ_ERR_PRECONDITION: return "precondition-failed";
    case IEQ_ERR_CAP_EXCEEDED: return "cap-exceeded";
    case IEQ_ERR_NOT_FOUND: return "not-found";
    case IEQ_ERR_BUDGET_EXHAUSTED: return "budget-exhausted";
    case IEQ_ERR_LOCAL_OBSTRUCTION: return "local-obstruction";
    case IEQ_ERR_VERIFICATION_FAILED: return "verification-failed";
    case IEQ_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* ieq_last_error(void) { return g_last_error.c_str(); }

void ieq_string_free(char* s) { std::free(s); }

ieq_status ieq_set_threads(unsigned n) {
  return guarded([&] {
    set_thread_count(n);
    return IEQ_OK;
  });
}

ieq_status ieq_make_named(const char* name, uint64_t seed, char** json_out) {
  return guarded([&] {
    need(name, "name");
    need(json_out, "json_out");
    put(json_out, jio::dump(jio::make_named(name, seed ? seed : kDefaultA5Seed)));
    return IEQ_OK;
  });
}

ieq_status ieq_validate(const char* json) {
  return guarded([&] {
    need(json, "json");
    jio::validate(jio::parse(json));
    return IEQ_OK;
  });
}

ieq_status ieq_group_from_json(const char* json, ieq_group** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new ieq_group{jio::group_from_json(jio::parse(json))};
    return IEQ_OK;
  });
}

ieq_status ieq_group_order(const ieq_group* g, uint64_t* order) {
  return guarded([&] {
    need(g, "group");
    need(order, "order");
    *order = g->group.order();
    return IEQ_OK;
  });
}

void ieq_group_free(ieq_group* g) { delete g; }

ieq_status ieq_triple_from_json(const char* json, ieq_triple** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new ieq_triple{jio::triple_from_json(jio::parse(json))};
    return IEQ_OK;
  });
}

ieq_status ieq_triple_from_parts(const char* group_json, const char* h1_json,
                                 const char* h2_json, ieq_triple** out) {
  return guarded([&] {
    need(group_json, "group_json");
    need(h1_json, "h1_json");
    need(h2_json, "h2_json");
    need(out, "out");
    Group g = jio::group_from_json(jio::parse(group_json));
    Subgroup h1 = jio::subgroup_from_json(jio::parse(h1_json), g);
    Subgroup h2 = jio::subgroup_from_json(jio::parse(h2_json), g);
    *out = new ieq_triple{jio::Triple{g, std::move(h1), std::move(h2), g.name(),
                                      std::nullopt}};
    return IEQ_OK;
  });
}

ieq_status ieq_triple_to_json(const ieq_triple* t, char** json_out) {
  return guarded([&] {
    need(t, "triple");
    need(json_out, "json_out");
    put(json_out, jio::dump(jio::to_json(t->triple)));
    return IEQ_OK;
  });
}

void ieq_triple_free(ieq_triple* t) { delete t; }

ieq_status ieq_triple_check(const ieq_triple* t, char** json_out, char** text_out) {
  return guarded([&] {
    need(t, "triple");
    const auto& tr = t->triple;
    const GassmannReport r = check_triple(tr.group, tr.h1, tr.h2);
    put(json_out, jio::dump(jio::to_json(r, tr)));
    put(text_out, jio::gassmann_text(r));
    return IEQ_OK;
  });
}

ieq_status ieq_quotient_check(const ieq_triple* t, const char* normal_json,
                              char** json_out) {
  return guarded([&] {
    need(t, "triple");
    need(normal_json, "normal_json");
    const auto& tr = t->triple;
    Subgroup n = jio::subgroup_from_json(jio::parse(normal_json), tr.group);
    Quotient q = quotient(tr.group, n);
    jio::Triple qt{q.group, q.image(tr.h1), q.image(tr.h2), tr.label + "/N",
                   std::nullopt};
    const GassmannReport r = check_triple(qt.group, qt.h1, qt.h2);
    put(json_out, jio::dump(jio::to_json(r, qt)));
    return IEQ_OK;
  });
}

ieq_status ieq_splitting_tables(const ieq_triple* t, char** json_out,
                                char** text_out) {
  return guarded([&] {
    need(t, "triple");
    const auto& tr = t->triple;
    const ConjugacyClasses classes = conjugacy_classes(tr.group);
    const SplittingTable a = cycle_type_table(PermRep(tr.group, tr.h1), classes);
    const SplittingTable b = cycle_type_table(PermRep(tr.group, tr.h2), classes);
    put(json_out, jio::dump(jio::splitting_to_json(a, b)));
    put(text_out, jio::splitting_text(a, b));
    return IEQ_OK;
  });
}

ieq_status ieq_basis_from_triple(const ieq_triple* t, ieq_basis** out) {
  return guarded([&] {
    need(t, "triple");
    need(out, "out");
    const auto& tr = t->triple;
    *out = new ieq_basis{tr, IntertwinerBasis(tr.group, tr.h1, tr.h2)};
    return IEQ_OK;
  });
}

ieq_status ieq_basis_from_json(const char* json, ieq_basis** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    auto [t, b] = jio::basis_from_json(jio::parse(json));
    *out = new ieq_basis{std::move(t), std::move(b)};
    return IEQ_OK;
  });
}

ieq_status ieq_basis_to_json(const ieq_basis* b, char** json_out) {
  return guarded([&] {
    need(b, "basis");
    need(json_out, "json_out");
    put(json_out, jio::dump(jio::basis_to_json(b->triple, b->basis)));
    return IEQ_OK;
  });
}

ieq_status ieq_basis_size(const ieq_basis* b, uint64_t* m) {
  return guarded([&] {
    need(b, "basis");
    need(m, "m");
    *m = b->basis.size();
    return IEQ_OK;
  });
}

void ieq_basis_free(ieq_basis* b) { delete b; }

ieq_status ieq_search(const ieq_basis* b, const ieq_search_options* opt,
                      char** json_out) {
  return guarded([&] {
    need(b, "basis");
    need(json_out, "json_out");
    SearchOptions o;
    if (opt) {
      if (opt->strategy) o.strategy = parse_strategy(opt->strategy);
      if (opt->radius) o.radius = opt->radius;
      o.budget = opt->budget;
      o.seed = opt->seed;
      o.local_preflight = opt->skip_local_preflight == 0;
    }
    const SearchOutcome out = search_unimodular(b->basis, o);
    switch (out.status) {
      case SearchStatus::certificate:
        put(json_out, jio::dump(jio::certificate_to_json(b->triple, b->basis,
                                                         *out.certificate, o.radius)));
        return IEQ_OK;
      case SearchStatus::exhausted:
        put(json_out, jio::dump(jio::search_to_json(out, o)));
        g_last_error = "search exhausted without a certificate (budget or candidate space)";
        return IEQ_ERR_BUDGET_EXHAUSTED;
      case SearchStatus::obstruction:
        put(json_out, jio::dump(jio::search_to_json(out, o)));
        g_last_error = "no unimodular intertwiner: every determinant vanishes mod " +
                       std::to_string(out.obstruction->p);
        return IEQ_ERR_LOCAL_OBSTRUCTION;
    }
    return IEQ_ERR_INTERNAL;
  });
}

ieq_status ieq_certificate_verify(const char* cert_json, char** message_out) {
  return guarded([&] {
    need(cert_json, "cert_json");
    const auto v = jio::verify_certificate(jio::parse(cert_json));
    if (!v.ok) {
      g_last_error = "certificate invalid: " + v.failure;
      put(message_out, g_last_error);
      return IEQ_ERR_VERIFICATION_FAILED;
    }
    put(message_out, "certificate valid: X intertwines on every generator, det(X) = " +
                         v.det.get_str());
    return IEQ_OK;
  });
}

ieq_status ieq_norm_exponents(const char* cert_json, char** json_out) {
  return guarded([&] {
    need(cert_json, "cert_json");
    need(json_out, "json_out");
    const auto lc = jio::certificate_from_json(jio::parse(cert_json));
    PermRep rep1(lc.triple.group, lc.triple.h1), rep2(lc.triple.group, lc.triple.h2);
    put(json_out, jio::dump(jio::to_json(lift_regular(lc.x, rep1, rep2))));
    return IEQ_OK;
  });
}

ieq_status ieq_obstruct_compare(const ieq_triple* t, const char* family,
                                char** json_out) {
  return guarded([&] {
    need(t, "triple");
    need(json_out, "json_out");
    const auto& tr = t->triple;
    const auto fam = family_from_spec(tr.group, family);
    const auto report = compare_obstructions(tr.group, tr.h1, tr.h2, fam);
    put(json_out, jio::dump(jio::to_json(report, tr.group)));
    return IEQ_OK;
  });
}

ieq_status ieq_local_solvability(const ieq_basis* b, uint64_t p, uint64_t seed,
                                 char** json_out) {
  return guarded([&] {
    need(b, "basis");
    need(json_out, "json_out");
    const auto r = local_solvability(b->basis, p, 0, seed ? seed : 1);
    put(json_out, jio::dump(jio::to_json(r)));
    return IEQ_OK;
  });
}

}  // extern "C"
