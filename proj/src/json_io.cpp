#include "intequiv/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

#include "intequiv/constructors.hpp"
#include "intequiv/error.hpp"

namespace intequiv::json_io {

namespace {

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::schema,
          std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t uint_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return out;
  }
  fail(ErrorCode::schema, std::string("field '") + key +
                              "' must be a non-negative integer");
}

const std::string& string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_string(), ErrorCode::schema,
          std::string("field '") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_array(), ErrorCode::schema,
          std::string("field '") + key + "' must be an array");
  return v;
}

std::string cycle_type_string(const std::vector<std::size_t>& parts) {
  std::vector<std::pair<std::size_t, std::size_t>> counts;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (!counts.empty() && counts.back().first == *it)
      ++counts.back().second;
    else
      counts.emplace_back(*it, 1);
  }
  std::string out;
  for (const auto& [len, mult] : counts) {
    if (!out.empty()) out += ' ';
    out += std::to_string(len);
    if (mult > 1) out += '^' + std::to_string(mult);
  }
  return out;
}

std::uint64_t parse_prime_suffix(const std::string& name, std::size_t colon) {
  const std::string digits = name.substr(colon + 1);
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  require(ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty(),
          ErrorCode::invalid_argument, "bad prime in group name '" + name + "'");
  return p;
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

void expect_schema(const Json& j, std::string_view expected) {
  const std::string& s = string_field(j, "schema");
  require(s == expected, ErrorCode::schema,
          "expected schema '" + std::string(expected) + "', found '" + s + "'");
}

// ---------------------------------------------------------------------------

Json to_json(const Permutation& p) {
  Json a = Json::array();
  for (Point x : p.images()) a.push_back(x);
  return a;
}

Permutation permutation_from_json(const Json& j, std::size_t degree) {
  require(j.is_array() && j.size() == degree, ErrorCode::schema,
          "permutation must be an array of " + std::to_string(degree) + " images");
  std::vector<Point> img;
  img.reserve(degree);
  for (const auto& v : j) {
    require(v.is_number_unsigned() && v.get<std::uint64_t>() < degree,
            ErrorCode::schema, "permutation image out of range");
    img.push_back(v.get<Point>());
  }
  try {
    return Permutation(std::move(img));
  } catch (const Error& e) {
    fail(ErrorCode::schema, e.what());
  }
}

Json to_json(const Group& g) {
  Json gens = Json::array();
  for (const auto& s : g.generators()) gens.push_back(to_json(s));
  return Json{{"schema", kGroupSchema},
              {"name", g.name()},
              {"degree", g.degree()},
              {"order", std::to_string(g.order())},
              {"generators", gens}};
}

Group group_from_json(const Json& j) {
  expect_schema(j, kGroupSchema);
  const std::size_t degree = uint_field(j, "degree");
  require(degree > 0 && degree <= 1000, ErrorCode::schema,
          "group degree must lie in [1, 1000]");
  std::vector<Permutation> gens;
  for (const auto& s : array_field(j, "generators"))
    gens.push_back(permutation_from_json(s, degree));
  require(!gens.empty(), ErrorCode::schema, "group needs at least one generator");
  std::string name;
  if (j.contains("name")) name = string_field(j, "name");
  Group g = Group::close(std::move(gens), kDefaultGroupCap, name);
  if (j.contains("order"))
    require(uint_field(j, "order") == g.order(), ErrorCode::schema,
            "group order field disagrees with the enumerated order " +
                std::to_string(g.order()));
  return g;
}

Json to_json(const Subgroup& h) {
  Json gens = Json::array();
  for (const auto& s : h.generators()) gens.push_back(to_json(s));
  return Json{{"order", std::to_string(h.order())}, {"generators", gens}};
}

Subgroup subgroup_from_json(const Json& j, const Group& g) {
  std::vector<Permutation> gens;
  for (const auto& s : array_field(j, "generators"))
    gens.push_back(permutation_from_json(s, g.degree()));
  for (const auto& s : gens)
    require(g.contains(s), ErrorCode::precondition,
            "subgroup generator does not lie in the group");
  Subgroup h = Subgroup::generated_by(g, std::move(gens));
  if (j.contains("order"))
    require(uint_field(j, "order") == h.order(), ErrorCode::schema,
            "subgroup order field disagrees with the enumerated order");
  return h;
}

Json to_json(const Integer& v) { return v.get_str(); }

Integer integer_from_json(const Json& j) {
  require(j.is_string(), ErrorCode::schema, "integers are encoded as strings");
  Integer out;
  const auto& s = j.get_ref<const std::string&>();
  const bool ok = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
                  out.set_str(s, 10) == 0;
  require(ok, ErrorCode::schema, "invalid integer string '" + s + "'");
  return out;
}

Json to_json(const ExactMatrix& m) {
  Json entries = Json::array();
  for (const auto& v : m.entries()) entries.push_back(v.get_str());
  return Json{{"schema", kMatrixSchema},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", entries}};
}

ExactMatrix matrix_from_json(const Json& j) {
  expect_schema(j, kMatrixSchema);
  const std::size_t r = uint_field(j, "rows"), c = uint_field(j, "cols");
  const Json& e = array_field(j, "entries");
  require(r > 0 && c > 0 && e.size() == r * c, ErrorCode::schema,
          "matrix needs rows*cols entries with positive dimensions");
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = integer_from_json(e[i * c + k]);
  return m;
}

// ---------------------------------------------------------------------------

Json to_json(const Triple& t) {
  Json j{{"schema", kTripleSchema},
         {"label", t.label},
         {"group", to_json(t.group)},
         {"h1", to_json(t.h1)},
         {"h2", to_json(t.h2)}};
  if (t.witness) {
    j["witness"] = Json{{"overgroup", to_json(t.witness->overgroup)},
                        {"conjugator", to_json(t.witness->conjugator)},
                        {"seed", std::to_string(t.witness->seed)},
                        {"tries", t.witness->tries}};
  }
  return j;
}

Triple triple_from_json(const Json& j) {
  expect_schema(j, kTripleSchema);
  Group g = group_from_json(field(j, "group"));
  Subgroup h1 = subgroup_from_json(field(j, "h1"), g);
  Subgroup h2 = subgroup_from_json(field(j, "h2"), g);
  Triple t{g, std::move(h1), std::move(h2), {}, std::nullopt};
  if (j.contains("label")) t.label = string_field(j, "label");
  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    Group over = group_from_json(field(w, "overgroup"));
    require(over.degree() == g.degree(), ErrorCode::schema,
            "witness overgroup acts on a different number of points");
    Permutation tau = permutation_from_json(field(w, "conjugator"), g.degree());
    t.witness = OvergroupWitness{std::move(over), std::move(tau),
                                 uint_field(w, "seed"), uint_field(w, "tries")};
  }
  return t;
}

Json make_named(const std::string& name, std::uint64_t seed) {
  if (name == "psl3_2") {
    FanoModel f = psl3_2();
    return to_json(Triple{f.group, f.p1, f.p2, "psl3_2", std::nullopt});
  }
  const auto colon = name.find(':');
  require(colon != std::string::npos, ErrorCode::invalid_argument,
          "unknown group name '" + name +
              "' (expected psl2:P, pgl2:P, psl3_2 or a5pair:P)");
  const std::string family = name.substr(0, colon);
  const std::uint64_t p = parse_prime_suffix(name, colon);
  if (family == "psl2") return to_json(psl2(p));
  if (family == "pgl2") return to_json(pgl2(p));
  if (family == "a5pair") {
    A5PairWitness w = find_a5_pair(p, seed);
    Triple t{w.psl, w.h1, w.h2, name,
             OvergroupWitness{w.pgl, w.tau, w.seed, w.tries}};
    return to_json(t);
  }
  fail(ErrorCode::invalid_argument, "unknown group family '" + family + "'");
}

bool witness_holds(const Triple& t) {
  if (!t.witness) return false;
  const Group& over = t.witness->overgroup;
  for (const auto& s : t.group.generators())
    if (!over.contains(s)) return false;
  if (!over.contains(t.witness->conjugator)) return false;
  const Subgroup moved = t.h1.rehomed(over).conjugated(t.witness->conjugator);
  return moved.same_elements(t.h2.rehomed(over));
}

// ---------------------------------------------------------------------------

Json to_json(const GassmannReport& r, const Triple& t) {
  Json classes = Json::array();
  for (std::size_t i = 0; i < r.chi1.size(); ++i)
    classes.push_back(Json{{"class", i},
                           {"size", r.class_sizes[i]},
                           {"order", r.class_orders[i]},
                           {"chi1", r.chi1[i]},
                           {"chi2", r.chi2[i]}});
  Json j{{"schema", kGassmannSchema},
         {"group", t.group.name()},
         {"group_order", std::to_string(t.group.order())},
         {"h1_order", std::to_string(t.h1.order())},
         {"h2_order", std::to_string(t.h2.order())},
         {"index1", r.index1},
         {"index2", r.index2},
         {"classes", classes},
         {"characters_equal", r.characters_equal},
         {"conjugate", r.conjugate},
         {"conjugator", r.conjugator ? to_json(*r.conjugator) : Json()},
         {"verdict", to_string(r.verdict)}};
  if (r.index1 == r.index2)
    j["character_inner_product"] = character_inner_product(
        r.chi1, r.chi2, r.class_sizes, t.group.order());
  if (t.witness) {
    j["overgroup"] = t.witness->overgroup.name();
    j["overgroup_conjugator"] = to_json(t.witness->conjugator);
    j["overgroup_conjugator_verified"] = witness_holds(t);
  }
  return j;
}

std::string gassmann_text(const GassmannReport& r) {
  std::ostringstream os;
  os << std::setw(6) << "class" << std::setw(8) << "size" << std::setw(7)
     << "order" << std::setw(7) << "chi1" << std::setw(7) << "chi2" << "\n";
  for (std::size_t i = 0; i < r.chi1.size(); ++i)
    os << std::setw(6) << i << std::setw(8) << r.class_sizes[i] << std::setw(7)
       << r.class_orders[i] << std::setw(7) << r.chi1[i] << std::setw(7)
       << r.chi2[i] << (r.chi1[i] == r.chi2[i] ? "" : "  *") << "\n";
  os << "index " << r.index1 << " / " << r.index2 << "; verdict "
     << to_string(r.verdict) << "\n";
  return os.str();
}

Json splitting_to_json(const SplittingTable& a, const SplittingTable& b) {
  require(a.rows.size() == b.rows.size(), ErrorCode::precondition,
          "splitting tables over different class lists");
  Json rows = Json::array();
  bool identical = a.degree == b.degree;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const bool eq = a.rows[i].cycle_type == b.rows[i].cycle_type;
    identical = identical && eq;
    rows.push_back(Json{{"class", a.rows[i].class_id},
                        {"size", a.rows[i].class_size},
                        {"order", a.rows[i].element_order},
                        {"cycle_type_1", a.rows[i].cycle_type},
                        {"cycle_type_2", b.rows[i].cycle_type},
                        {"equal", eq}});
  }
  return Json{{"schema", kSplittingSchema},
              {"degree1", a.degree},
              {"degree2", b.degree},
              {"rows", rows},
              {"identical", identical}};
}

std::string splitting_text(const SplittingTable& a, const SplittingTable& b) {
  std::vector<std::string> left, right;
  std::size_t width = 10;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    left.push_back(cycle_type_string(a.rows[i].cycle_type));
    right.push_back(cycle_type_string(b.rows[i].cycle_type));
    width = std::max(width, left.back().size() + 2);
  }
  std::ostringstream os;
  os << std::setw(6) << "class" << std::setw(8) << "size" << std::setw(7)
     << "order" << "  " << std::left << std::setw(static_cast<int>(width))
     << "G/H1" << "G/H2" << std::right << "\n";
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    os << std::setw(6) << a.rows[i].class_id << std::setw(8)
       << a.rows[i].class_size << std::setw(7) << a.rows[i].element_order
       << "  " << std::left << std::setw(static_cast<int>(width)) << left[i]
       << right[i] << std::right << (left[i] == right[i] ? "" : "  *") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

Json basis_to_json(const Triple& t, const IntertwinerBasis& b) {
  Json cosets = Json::array();
  for (const auto& d : b.decomposition().cosets)
    cosets.push_back(Json{{"id", d.id},
                          {"representative", to_json(d.representative)},
                          {"size", d.size}});
  return Json{{"schema", kBasisSchema},
              {"triple", to_json(t)},
              {"rows", b.rows()},
              {"cols", b.cols()},
              {"double_coset_count", b.size()},
              {"double_cosets", cosets},
              {"labels", b.labels()}};
}

std::pair<Triple, IntertwinerBasis> basis_from_json(const Json& j) {
  expect_schema(j, kBasisSchema);
  Triple t = triple_from_json(field(j, "triple"));
  IntertwinerBasis b(t.group, t.h1, t.h2);
  require(uint_field(j, "double_coset_count") == b.size() &&
              uint_field(j, "rows") == b.rows() && uint_field(j, "cols") == b.cols(),
          ErrorCode::schema, "basis dimensions disagree with its triple");
  const Json& cosets = array_field(j, "double_cosets");
  require(cosets.size() == b.size(), ErrorCode::schema,
          "double coset list has the wrong length");
  for (std::size_t d = 0; d < b.size(); ++d) {
    const Permutation rep =
        permutation_from_json(field(cosets[d], "representative"), t.group.degree());
    require(rep == b.decomposition().cosets[d].representative, ErrorCode::schema,
            "stored double coset representative disagrees with the triple");
  }
  const Json& labels = array_field(j, "labels");
  require(labels.size() == b.labels().size(), ErrorCode::schema,
          "label array has the wrong length");
  for (std::size_t k = 0; k < labels.size(); ++k)
    require(labels[k].is_number_unsigned() &&
                labels[k].get<std::uint64_t>() == b.labels()[k],
            ErrorCode::schema, "stored labels disagree with the triple");
  return {std::move(t), std::move(b)};
}

// ---------------------------------------------------------------------------

Json certificate_to_json(const Triple& t, const IntertwinerBasis& b,
                         const UnimodularCertificate& c, std::int64_t radius) {
  Json reps = Json::array();
  for (const auto& d : b.decomposition().cosets) reps.push_back(to_json(d.representative));
  Json coeffs = Json::array();
  for (const auto& v : c.coefficients) coeffs.push_back(to_json(v));
  return Json{
      {"schema", kCertificateSchema},
      {"label", t.label},
      {"group", to_json(t.group)},
      {"h1", to_json(t.h1)},
      {"h2", to_json(t.h2)},
      {"coset_order",
       "breadth-first over the group generators starting at the subgroup; "
       "rows are cosets of h2, columns cosets of h1"},
      {"double_coset_representatives", reps},
      {"coefficients", coeffs},
      {"x", to_json(c.x)},
      {"det", std::to_string(c.det)},
      {"search",
       Json{{"strategy", to_string(c.strategy)},
            {"seed", std::to_string(c.seed)},
            {"budget", std::to_string(c.budget)},
            {"radius", radius},
            {"candidate_index", std::to_string(c.candidate_index)},
            {"exact_evaluations", std::to_string(c.exact_evaluations)}}}};
}

LoadedCertificate certificate_from_json(const Json& j) {
  expect_schema(j, kCertificateSchema);
  Group g = group_from_json(field(j, "group"));
  Subgroup h1 = subgroup_from_json(field(j, "h1"), g);
  Subgroup h2 = subgroup_from_json(field(j, "h2"), g);
  std::string label;
  if (j.contains("label")) label = string_field(j, "label");
  ExactMatrix x = matrix_from_json(field(j, "x"));
  return LoadedCertificate{Triple{g, std::move(h1), std::move(h2), label, std::nullopt},
                           std::move(x)};
}

CertificateVerdict verify_certificate(const Json& j) {
  LoadedCertificate lc = certificate_from_json(j);
  const Triple& t = lc.triple;
  CertificateVerdict v;
  PermRep rep1(t.group, t.h1), rep2(t.group, t.h2);
  if (lc.x.rows() != rep2.degree() || lc.x.cols() != rep1.degree()) {
    v.failure = "X is " + std::to_string(lc.x.rows()) + "x" +
                std::to_string(lc.x.cols()) + ", expected " +
                std::to_string(rep2.degree()) + "x" + std::to_string(rep1.degree());
    return v;
  }
  const IntertwinerCheck check = check_intertwiner(lc.x, rep1, rep2);
  if (!check.ok) {
    v.failure = check.failure;
    return v;
  }
  v.det = det_exact(lc.x);
  if (v.det != 1 && v.det != -1) {
    v.failure = "det(X) = " + v.det.get_str() + " is not a unit";
    return v;
  }
  if (integer_from_json(field(j, "det")) != v.det) {
    v.failure = "recorded det " + field(j, "det").dump() +
                " differs from det(X) = " + v.det.get_str();
    return v;
  }
  // The coefficients must reproduce X in the double-coset basis.
  if (j.contains("coefficients")) {
    IntertwinerBasis b(t.group, t.h1, t.h2);
    const Json& cj = array_field(j, "coefficients");
    if (cj.size() != b.size()) {
      v.failure = "coefficient vector has length " + std::to_string(cj.size()) +
                  ", basis has " + std::to_string(b.size());
      return v;
    }
    std::vector<Integer> c;
    for (const auto& e : cj) c.push_back(integer_from_json(e));
    if (!(b.combine(c) == lc.x)) {
      v.failure = "X differs from the combination of basis matrices given by "
                  "the coefficients";
      return v;
    }
  }
  v.ok = true;
  return v;
}

// ---------------------------------------------------------------------------

Json search_to_json(const SearchOutcome& o, const SearchOptions& opt) {
  const char* status = o.status == SearchStatus::certificate ? "certificate"
                       : o.status == SearchStatus::exhausted ? "exhausted"
                                                             : "local-obstruction";
  Json pre = Json::array();
  for (const auto& p : o.preflight)
    pre.push_back(Json{{"p", p.p},
                       {"decided", p.decided},
                       {"solvable", p.solvable},
                       {"enumerated", std::to_string(p.enumerated)}});
  Json j{{"schema", kSearchSchema},
         {"status", status},
         {"strategy", to_string(opt.strategy)},
         {"seed", std::to_string(opt.seed)},
         {"budget", std::to_string(opt.budget)},
         {"radius", opt.radius},
         {"preflight", pre},
         {"stats", Json{{"candidates", std::to_string(o.stats.candidates)},
                        {"passed_row_sum", std::to_string(o.stats.passed_row_sum)},
                        {"passed_hecke", std::to_string(o.stats.passed_hecke)},
                        {"passed_modular", std::to_string(o.stats.passed_modular)},
                        {"exact_evaluations",
                         std::to_string(o.stats.exact_evaluations)}}}};
  if (o.obstruction)
    j["obstruction"] = Json{{"p", o.obstruction->p},
                            {"enumerated", std::to_string(o.obstruction->enumerated)},
                            {"statement",
                             "det of every combination of basis matrices is "
                             "divisible by p"}};
  return j;
}

Json to_json(const NormExponentData& n) {
  Json ex = Json::array(), cs = Json::array();
  for (const auto& v : n.exponents) ex.push_back(to_json(v));
  for (const auto& v : n.column_sums) cs.push_back(to_json(v));
  const bool constant =
      std::all_of(n.column_sums.begin(), n.column_sums.end(),
                  [&](const Integer& v) { return v == n.exponent_sum; });
  return Json{{"schema", kNormSchema},
              {"exponents", ex},
              {"exponent_sum", to_json(n.exponent_sum)},
              {"column_sums", cs},
              {"column_sums_equal_exponent_sum", constant},
              {"commutes", n.commutes},
              {"phi", Json{{"rows", n.phi.rows()},
                           {"cols", n.phi.cols()},
                           {"relation", "transpose of X"}}}};
}

namespace {

Json tate_json(const TateH0Report& r) {
  Json f = Json::array();
  for (const auto& d : r.invariant_factors) f.push_back(to_json(d));
  return Json{{"subgroup_order", r.subgroup_order},
              {"invariant_rank", r.invariant_rank},
              {"invariant_factors", f},
              {"group_order", to_json(r.group_order)}};
}

}  // namespace

Json to_json(const ObstructionReport& r, const Group& g) {
  Json mods = Json::array();
  for (const auto& e : r.entries)
    mods.push_back(Json{{"module", e.module},
                        {"equal", e.equal},
                        {"reverified", e.reverified},
                        {"h1", tate_json(e.first)},
                        {"h2", tate_json(e.second)}});
  return Json{{"schema", kObstructionSchema},
              {"group", g.name()},
              {"invariant", "Tate H^0(H, L) = L^H / N_H L"},
              {"modules", mods},
              {"verdict", to_string(r.verdict)},
              {"distinguishing_module",
               r.distinguishing ? Json(*r.distinguishing) : Json()}};
}

Json to_json(const LocalSolvability& l) {
  Json w = Json::array();
  for (const auto& c : l.witness) w.push_back(c);
  return Json{{"schema", kLocalSchema},
              {"p", l.p},
              {"k", l.k},
              {"modulus", l.modulus},
              {"found", l.found},
              {"trials", l.trials},
              {"budget", l.budget},
              {"reverified", l.reverified},
              {"witness", w}};
}

// ---------------------------------------------------------------------------

void validate(const Json& j) {
  const std::string& s = string_field(j, "schema");
  if (s == kGroupSchema) {
    group_from_json(j);
  } else if (s == kTripleSchema) {
    triple_from_json(j);
  } else if (s == kBasisSchema) {
    basis_from_json(j);
  } else if (s == kCertificateSchema) {
    certificate_from_json(j);
  } else if (s == kMatrixSchema) {
    matrix_from_json(j);
  } else if (s == kGassmannSchema) {
    array_field(j, "classes");
    string_field(j, "verdict");
  } else if (s == kSplittingSchema) {
    array_field(j, "rows");
  } else if (s == kObstructionSchema) {
    array_field(j, "modules");
    string_field(j, "verdict");
  } else if (s == kSearchSchema) {
    string_field(j, "status");
  } else if (s == kNormSchema) {
    array_field(j, "exponents");
  } else if (s == kLocalSchema) {
    field(j, "found");
  } else {
    fail(ErrorCode::schema, "unknown schema '" + s + "'");
  }
}

}  // namespace intequiv::json_io
