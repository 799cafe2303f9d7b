#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "intequiv/intequiv.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ieq_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(ieq_status_name(IEQ_OK)) == "ok");
  CHECK(std::string(ieq_status_name(IEQ_ERR_LOCAL_OBSTRUCTION)) == "local-obstruction");
  CHECK(std::string(ieq_version()).size() > 0);
  CHECK(ieq_set_threads(2) == IEQ_OK);
}

TEST_CASE("argument and parse errors") {
  ieq_group* g = nullptr;
  CHECK(ieq_group_from_json(nullptr, &g) == IEQ_ERR_INVALID_ARGUMENT);
  CHECK(ieq_group_from_json("{oops", &g) == IEQ_ERR_PARSE);
  CHECK(std::string(ieq_last_error()).size() > 0);
  CHECK(ieq_group_from_json(R"({"schema": "triple/v1"})", &g) == IEQ_ERR_SCHEMA);
  CHECK(g == nullptr);
  char* out = nullptr;
  CHECK(ieq_make_named("bogus", 0, &out) == IEQ_ERR_INVALID_ARGUMENT);
  CHECK(ieq_validate("[]") == IEQ_ERR_SCHEMA);
}

TEST_CASE("parabolic pair through the C interface") {
  char* doc = nullptr;
  REQUIRE(ieq_make_named("psl3_2", 0, &doc) == IEQ_OK);
  const std::string triple_json = take(doc);
  CHECK(ieq_validate(triple_json.c_str()) == IEQ_OK);

  ieq_triple* t = nullptr;
  REQUIRE(ieq_triple_from_json(triple_json.c_str(), &t) == IEQ_OK);
  char* report = nullptr;
  char* text = nullptr;
  REQUIRE(ieq_triple_check(t, &report, &text) == IEQ_OK);
  CHECK(take(report).find("gassmann-triple") != std::string::npos);
  CHECK(!take(text).empty());

  ieq_basis* b = nullptr;
  REQUIRE(ieq_basis_from_triple(t, &b) == IEQ_OK);
  uint64_t m = 0;
  CHECK(ieq_basis_size(b, &m) == IEQ_OK);
  CHECK(m == 2);

  ieq_search_options opt{nullptr, 0, 0, 1, 0};
  char* s = nullptr;
  CHECK(ieq_search(b, &opt, &s) == IEQ_ERR_LOCAL_OBSTRUCTION);
  CHECK(take(s).find("search-report/v1") != std::string::npos);
  opt.skip_local_preflight = 1;
  CHECK(ieq_search(b, &opt, &s) == IEQ_ERR_BUDGET_EXHAUSTED);
  take(s);
  opt.strategy = "annealing";
  CHECK(ieq_search(b, &opt, &s) == IEQ_ERR_INVALID_ARGUMENT);

  char* o = nullptr;
  REQUIRE(ieq_obstruct_compare(t, nullptr, &o) == IEQ_OK);
  CHECK(take(o).find("all-equal") != std::string::npos);
  CHECK(ieq_obstruct_compare(t, "order:x", &o) == IEQ_ERR_INVALID_ARGUMENT);

  char* l = nullptr;
  REQUIRE(ieq_local_solvability(b, 3, 1, &l) == IEQ_OK);
  CHECK(take(l).find("local-solvability/v1") != std::string::npos);

  ieq_basis_free(b);
  ieq_triple_free(t);
}

TEST_CASE("conjugate pair certifies and the certificate verifies") {
  const char* group = R"({"schema": "group/v1", "name": "S4", "degree": 4, "order": "24",
                          "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]})";
  ieq_triple* t = nullptr;
  REQUIRE(ieq_triple_from_parts(group, R"({"generators": [[0, 2, 1, 3], [0, 2, 3, 1]]})",
                                R"({"generators": [[1, 0, 2, 3], [1, 2, 0, 3]]})",
                                &t) == IEQ_OK);
  ieq_basis* b = nullptr;
  REQUIRE(ieq_basis_from_triple(t, &b) == IEQ_OK);
  char* cert = nullptr;
  REQUIRE(ieq_search(b, nullptr, &cert) == IEQ_OK);
  const std::string c = take(cert);
  char* msg = nullptr;
  CHECK(ieq_certificate_verify(c.c_str(), &msg) == IEQ_OK);
  take(msg);
  char* norm = nullptr;
  REQUIRE(ieq_norm_exponents(c.c_str(), &norm) == IEQ_OK);
  CHECK(take(norm).find("norm-exponents/v1") != std::string::npos);

  std::string bad = c;
  const auto pos = bad.find("\"det\": \"");
  REQUIRE(pos != std::string::npos);
  const auto v = pos + 8;
  bad.replace(v, bad[v] == '-' ? 2 : 1, bad[v] == '-' ? "1" : "-1");
  CHECK(ieq_certificate_verify(bad.c_str(), &msg) == IEQ_ERR_VERIFICATION_FAILED);
  CHECK(take(msg).find("recorded det") != std::string::npos);

  ieq_basis_free(b);
  ieq_triple_free(t);
}

TEST_CASE("unequal index is a character mismatch") {
  const char* group = R"({"schema": "group/v1", "name": "S4", "degree": 4, "order": "24",
                          "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]})";
  ieq_triple* t = nullptr;
  REQUIRE(ieq_triple_from_parts(group, R"({"generators": [[0, 2, 1, 3], [0, 2, 3, 1]]})",
                                R"({"generators": [[1, 0, 2, 3]]})", &t) == IEQ_OK);
  char* report = nullptr;
  REQUIRE(ieq_triple_check(t, &report, nullptr) == IEQ_OK);
  CHECK(take(report).find("character-mismatch") != std::string::npos);
  ieq_triple_free(t);
}
