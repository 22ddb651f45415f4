// Verification reports behind the command-line tool.  Reports are JSON
// (insertion-ordered, no timing) so repeated runs are byte-identical.
#ifndef SYMPARAB_REPORT_HPP_
#define SYMPARAB_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "symparab/catalogue.hpp"
#include "symparab/matgroup.hpp"
#include "symparab/reflection.hpp"

namespace symparab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
std::string_view tool_version();

struct GroupHandle {
  std::string name;
  std::string display;
  FiniteMatrixGroup group;
  std::optional<std::uint64_t> expected_order;
  const GroupSpec* spec = nullptr; // primitive groups only
};

// Primitive names (Q, ..., U, or W(Q) ...), "trivial-2n", any reference
// type name such as "G(3,3,3)", or a path ending in .json (see
// load_group_file).  Throws InvalidArgument for unknown names.
GroupHandle lookup_group(std::string_view name, const GroupLimits& limits);

// {"name": ..., "dimension": 2n, "generators": [[[literal, ...], ...], ...],
//  "expected_order": optional}.  Generators must preserve the standard form.
GroupHandle load_group_file(const std::string& path, const GroupLimits& limits);

// "(a, b, ...)" or "a, b, ...", optionally scaled as "s*(a, b, ...)".
// Entries use the scalar literal grammar plus the symbols i and sqrt5.
ExactVector parse_vector_literal(std::string_view text);

Json fingerprint_json(const Fingerprint& fp);
Json record_json(const ParabolicRecord& rec);
Json data_checksums_json();

struct Report {
  Json json;
  bool pass = false;
};

Report order_report(const GroupHandle& g);
Report stabilizer_report(const GroupHandle& g, const ExactVector& v, std::uint64_t seed);

struct VerifyOptions {
  std::string mode; // "table", "full-lattice", or "" for the group default
  bool force_full_lattice = false;
  std::uint64_t seed = 0;
};
// Needs a primitive group (the fixtures live with it).  Full-lattice mode
// throws CapExceeded when |G| exceeds the enumeration cap unless forced.
Report verify_report(const GroupHandle& g, const VerifyOptions& opts);

// Parabolics G(5,5,2) in W(R), G(3,3,3) in W(S1) and W(S1) in W(U).
Report chain_report(const GroupLimits& limits, std::uint64_t seed);

struct ImprimitiveOptions {
  std::string k_kind = "binary-dihedral:2"; // cyclic:m, binary-dihedral:m, quaternion, 2T, 2O, 2I
  std::string h_selector = "center";        // full, center, derived, trivial
  std::size_t n = 2;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
};
Report imprimitive_report(const ImprimitiveOptions& opts, const GroupLimits& limits);

std::string render_markdown(const Json& report);

} // namespace symparab

#endif // SYMPARAB_REPORT_HPP_
