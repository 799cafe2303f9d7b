#pragma once

// JSON documents for every artifact. Matrix entries and other unbounded
// integers are strings; points, indices and small counts are JSON numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "intequiv/gassmann.hpp"
#include "intequiv/intertwiner.hpp"
#include "intequiv/obstruction.hpp"
#include "intequiv/perm.hpp"
#include "intequiv/perm_module.hpp"
#include "intequiv/zmatrix.hpp"

namespace intequiv::json_io {

using Json = nlohmann::json;

inline constexpr std::string_view kGroupSchema = "group/v1";
inline constexpr std::string_view kTripleSchema = "triple/v1";
inline constexpr std::string_view kGassmannSchema = "gassmann-report/v1";
inline constexpr std::string_view kSplittingSchema = "splitting-table/v1";
inline constexpr std::string_view kBasisSchema = "intertwiner-basis/v1";
inline constexpr std::string_view kCertificateSchema = "unimodular-cert/v1";
inline constexpr std::string_view kSearchSchema = "search-report/v1";
inline constexpr std::string_view kNormSchema = "norm-exponents/v1";
inline constexpr std::string_view kObstructionSchema = "obstruction-report/v1";
inline constexpr std::string_view kLocalSchema = "local-solvability/v1";
inline constexpr std::string_view kMatrixSchema = "matrix/v1";

// Throws parse on malformed text.
Json parse(std::string_view text);
std::string dump(const Json& j);
// Throws schema unless j["schema"] == expected.
void expect_schema(const Json& j, std::string_view expected);
// Re-validates any known artifact by rebuilding it; throws schema or parse.
void validate(const Json& j);

Json to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j, std::size_t degree);

Json to_json(const Group& g);
Group group_from_json(const Json& j);
Json to_json(const Subgroup& h);
Subgroup subgroup_from_json(const Json& j, const Group& g);

Json to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const Json& j);
Json to_json(const Integer& v);
Integer integer_from_json(const Json& j);

struct OvergroupWitness {
  Group overgroup;
  Permutation conjugator;  // conjugator H1 conjugator^-1 == H2
  std::uint64_t seed = 0;
  std::uint64_t tries = 0;
};

struct Triple {
  Group group;
  Subgroup h1;
  Subgroup h2;
  std::string label;
  std::optional<OvergroupWitness> witness;
};

Json to_json(const Triple& t);
Triple triple_from_json(const Json& j);
// Named constructions: psl3_2 and a5pair:P give triples; psl2:P, pgl2:P give
// groups.
Json make_named(const std::string& name, std::uint64_t seed);

// The conjugator of the witness, checked in its overgroup.
bool witness_holds(const Triple& t);

Json to_json(const GassmannReport& r, const Triple& t);
std::string gassmann_text(const GassmannReport& r);

Json splitting_to_json(const SplittingTable& a, const SplittingTable& b);
std::string splitting_text(const SplittingTable& a, const SplittingTable& b);

Json basis_to_json(const Triple& t, const IntertwinerBasis& b);
// Rebuilds the basis and checks it against the stored decomposition.
std::pair<Triple, IntertwinerBasis> basis_from_json(const Json& j);

Json certificate_to_json(const Triple& t, const IntertwinerBasis& b,
                         const UnimodularCertificate& c, std::int64_t radius);

struct CertificateVerdict {
  bool ok = false;
  std::string failure;
  Integer det;
};
// Everything is rebuilt from the file: the group from its generators, the
// coset actions, the intertwining relations and det(X).
CertificateVerdict verify_certificate(const Json& j);

Json search_to_json(const SearchOutcome& o, const SearchOptions& opt);
Json to_json(const NormExponentData& n);
Json to_json(const ObstructionReport& r, const Group& g);
Json to_json(const LocalSolvability& l);

struct LoadedCertificate {
  Triple triple;
  ExactMatrix x;
};
LoadedCertificate certificate_from_json(const Json& j);

}  // namespace intequiv::json_io
