#include "symparab/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "symparab/errors.hpp"

namespace symparab {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

const SymbolTable& cli_symbols() {
  static const SymbolTable table{{"i", imaginary_unit()}, {"sqrt5", sqrt5()}};
  return table;
}

Json vector_json(const ExactVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json subspace_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& b : s.basis_vectors()) basis.push_back(vector_json(b));
  return Json{{"dim", s.dim()}, {"basis", std::move(basis)}};
}

std::optional<Fingerprint> reference_fingerprint(const std::string& type) {
  for (const auto& r : reference_fingerprints())
    if (r.name == type) return r.fingerprint;
  return std::nullopt;
}

Json header(std::string_view command, const GroupHandle* g) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = tool_version();
  j["command"] = command;
  if (g) {
    j["group"] = g->name;
    j["display"] = g->display;
  }
  return j;
}

Json statistics(const FiniteMatrixGroup& g) {
  return Json{{"generators", g.gens().size()}, {"domain_points", g.domain().size()}};
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw InvalidArgument("bad " + std::string(what) + ": '" +
                                                                           std::string(s) + "'");
  return v;
}

} // namespace

std::string_view tool_version() { return "1.0.0"; }

GroupHandle load_group_file(const std::string& path, const GroupLimits& limits) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read group file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  try {
    const std::size_t dim = j.at("dimension").get<std::size_t>();
    if (dim == 0 || dim % 2) throw InvalidArgument(path + ": dimension must be even and positive");
    const SymplecticSpace sp = SymplecticSpace::standard(dim);
    std::vector<ExactMatrix> gens;
    for (const auto& m : j.at("generators")) {
      if (m.size() != dim) throw DimensionMismatch(path + ": generator with wrong number of rows");
      std::vector<ExactVector> rows;
      for (const auto& row : m) {
        if (row.size() != dim) throw DimensionMismatch(path + ": generator row of wrong length");
        std::vector<Cyclotomic> entries;
        for (const auto& x : row) entries.push_back(Cyclotomic::parse(x.get<std::string>(), &cli_symbols()));
        rows.emplace_back(std::move(entries));
      }
      gens.push_back(ExactMatrix::from_rows(rows));
      if (!sp.preserves(gens.back())) throw InvalidArgument(path + ": generator is not symplectic");
    }
    GroupHandle g;
    g.name = j.value("name", path);
    g.display = g.name;
    g.group = FiniteMatrixGroup(dim, std::move(gens), limits);
    if (j.contains("expected_order")) g.expected_order = j["expected_order"].get<std::uint64_t>();
    return g;
  } catch (const Json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

GroupHandle lookup_group(std::string_view name, const GroupLimits& limits) {
  std::string key = trim(name);
  if (key.size() > 3 && key.starts_with("W(") && key.ends_with(")")) {
    const std::string inner = key.substr(2, key.size() - 3);
    const auto& prim = primitive_names();
    if (std::find(prim.begin(), prim.end(), inner) != prim.end()) key = inner;
  }
  for (const auto& p : primitive_names())
    if (p == key) {
      const GroupSpec& spec = build_primitive(p);
      return {spec.name, spec.display, spec.group.with_limits(limits), spec.expected_order, &spec};
    }
  if (key.starts_with("trivial-")) {
    const std::uint64_t d = parse_uint(std::string_view(key).substr(8), "dimension");
    if (d == 0 || d % 2) throw InvalidArgument("trivial group needs an even positive dimension");
    return {key, "trivial group in Sp_" + std::to_string(d), FiniteMatrixGroup::trivial(d, limits), 1, nullptr};
  }
  for (const auto& r : reference_groups())
    if (r.name == key) return {r.name, r.construction, r.group.with_limits(limits), std::nullopt, nullptr};
  if (key.ends_with(".json")) return load_group_file(key, limits);
  throw InvalidArgument("unknown group '" + key + "'");
}

ExactVector parse_vector_literal(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError(0, "empty vector");
  std::optional<Cyclotomic> scale;
  std::size_t offset = 0;
  if (s.back() == ')') {
    // Find the parenthesis matching the final one.
    int depth = 0;
    std::size_t open = std::string::npos;
    for (std::size_t k = s.size(); k-- > 0;) {
      if (s[k] == ')') ++depth;
      if (s[k] == '(' && --depth == 0) {
        open = k;
        break;
      }
    }
    if (open == std::string::npos) throw ParseError(s.size() - 1, "unbalanced parenthesis");
    std::string prefix = trim(std::string_view(s).substr(0, open));
    if (prefix.empty() || prefix.back() == '*') {
      if (!prefix.empty()) {
        prefix.pop_back();
        scale = Cyclotomic::parse(prefix, &cli_symbols());
      }
      offset = open + 1;
      s = s.substr(open + 1, s.size() - open - 2);
    }
  }
  std::vector<Cyclotomic> entries;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k < s.size() && s[k] == '(') ++depth;
    if (k < s.size() && s[k] == ')') --depth;
    if (depth < 0) throw ParseError(offset + k, "unbalanced parenthesis");
    if (k == s.size() || (s[k] == ',' && depth == 0)) {
      std::string item = trim(std::string_view(s).substr(start, k - start));
      if (item.empty()) throw ParseError(offset + start, "empty coordinate");
      try {
        entries.push_back(Cyclotomic::parse(item, &cli_symbols()));
      } catch (const ParseError& e) {
        throw ParseError(offset + start + e.position(), e.reason());
      }
      start = k + 1;
    }
  }
  if (depth != 0) throw ParseError(offset + s.size(), "unbalanced parenthesis");
  ExactVector v(std::move(entries));
  return scale ? *scale * v : v;
}

Json fingerprint_json(const Fingerprint& fp) {
  Json hist = Json::object();
  for (const auto& [k, c] : fp.order_histogram) hist[std::to_string(k)] = c;
  return Json{{"rank", fp.rank},
              {"order", fp.order},
              {"reflection_count", fp.reflection_count},
              {"center_order", fp.center_order},
              {"order_histogram", std::move(hist)}};
}

Json record_json(const ParabolicRecord& rec) {
  Json j;
  if (!rec.label.empty()) j["label"] = rec.label;
  if (rec.vector) j["vector"] = vector_json(*rec.vector);
  j["order"] = rec.group.order();
  j["generators"] = rec.group.gens().size();
  j["fixed_space"] = subspace_json(rec.fixed_space);
  j["steinberg_ok"] = rec.steinberg_ok;
  j["fingerprint"] = fingerprint_json(rec.fingerprint);
  j["recognized_type"] = rec.recognized_type;
  j["is_maximal"] = rec.is_maximal;
  j["maximality_certified"] = rec.maximality_certified;
  j["conjugacy_class_id"] = rec.conjugacy_class_id;
  if (rec.class_size) j["class_size"] = rec.class_size;
  if (rec.enumeration_count) j["enumeration_count"] = rec.enumeration_count;
  return j;
}

Json data_checksums_json() {
  Json j = Json::object();
  for (const auto& f : data_files()) j[f.name] = "sha256:" + f.sha256;
  return j;
}

Report order_report(const GroupHandle& g) {
  Report r;
  r.json = header("order", &g);
  const std::uint64_t order = g.group.order();
  r.json["computed_order"] = order;
  if (g.expected_order) r.json["expected_order"] = *g.expected_order;
  if (g.spec) r.json["expected_order_factored"] = g.spec->order_factored;
  r.pass = !g.expected_order || *g.expected_order == order;
  r.json["statistics"] = statistics(g.group);
  r.json["data_checksums"] = data_checksums_json();
  r.json["pass"] = r.pass;
  return r;
}

Report stabilizer_report(const GroupHandle& g, const ExactVector& v, std::uint64_t seed) {
  if (v.size() != g.group.dim())
    throw DimensionMismatch("vector has " + std::to_string(v.size()) + " coordinates, group acts on dimension " +
                            std::to_string(g.group.dim()));
  Report r;
  r.json = header("stabilizer", &g);
  r.json["seed"] = seed;
  r.json["group_order"] = g.group.order();
  const VectorInput in{"", v};
  auto recs = classify_vectors(g.group, std::span(&in, 1), seed);
  const auto& rec = recs.front();
  Json j = record_json(rec);
  if (rec.group.order() > 0) j["orbit_size"] = g.group.order() / rec.group.order();
  r.json["record"] = std::move(j);
  r.pass = rec.steinberg_ok;
  r.json["data_checksums"] = data_checksums_json();
  r.json["pass"] = r.pass;
  return r;
}

namespace {

struct RowCheck {
  Json json;
  bool pass = true;
};

// Row verdict plus diff entries for the fixture fields that do not match.
RowCheck check_row(const TableRow& row, const ParabolicRecord& rec, Json& diff) {
  RowCheck out;
  out.json = record_json(rec);
  out.json["expected_type"] = row.type;
  auto fail = [&](const char* field, Json expected, Json computed) {
    out.pass = false;
    diff.push_back(Json{{"row", row.label}, {"field", field}, {"expected", expected}, {"computed", computed}});
  };
  if (auto ref = reference_fingerprint(row.type)) {
    out.json["expected_order"] = ref->order;
    if (ref->order != rec.group.order()) fail("order", ref->order, rec.group.order());
  } else {
    fail("type", row.type, "no reference group");
  }
  if (!rec.steinberg_ok) fail("steinberg_ok", true, false);
  if (rec.recognized_type != row.type) fail("recognized_type", row.type, rec.recognized_type);
  if (!rec.is_maximal || !rec.maximality_certified) fail("is_maximal", true, rec.is_maximal);
  if (!row.note.empty()) out.json["note"] = row.note;
  out.json["pass"] = out.pass;
  return out;
}

// Candidate readings of an ambiguous row: exactly the resolved one must give
// the printed type.
RowCheck check_candidates(const FiniteMatrixGroup& g, const TableRow& row, std::uint64_t seed, Json& diff) {
  RowCheck out;
  out.json = Json::array();
  std::vector<std::size_t> matching;
  for (std::size_t c = 0; c < row.candidates.size(); ++c) {
    const auto& cand = row.candidates[c];
    FiniteMatrixGroup h = g.stabilizer(cand.vector, seed);
    const std::string type = recognize(h);
    if (type == row.type) matching.push_back(c);
    out.json.push_back(Json{{"reading", cand.reading},
                            {"stabilizer_order", h.order()},
                            {"recognized_type", type},
                            {"selected", c == row.resolved}});
  }
  if (matching.size() != 1 || matching.front() != row.resolved) {
    out.pass = false;
    diff.push_back(Json{{"row", row.label}, {"field", "candidates"}, {"expected", "unique match at " +
                    std::to_string(row.resolved)}, {"computed", matching}});
  }
  return out;
}

} // namespace

Report verify_report(const GroupHandle& g, const VerifyOptions& opts) {
  if (!g.spec) throw InvalidArgument("verify needs one of the primitive groups (fixtures are stored with them)");
  const GroupSpec& spec = *g.spec;
  std::string mode = opts.mode.empty() ? spec.default_mode : opts.mode;
  if (mode != "table" && mode != "full-lattice") throw InvalidArgument("unknown mode '" + mode + "'");

  Report r;
  r.json = header("verify", &g);
  r.json["mode"] = mode;
  r.json["seed"] = opts.seed;
  const std::uint64_t order = g.group.order();
  r.json["claimed_order"] = spec.expected_order;
  r.json["computed_order"] = order;

  FiniteMatrixGroup group = g.group;
  if (mode == "full-lattice" && order > group.limits().enumeration_cap) {
    if (!opts.force_full_lattice)
      throw CapExceeded(CapExceeded::Kind::enumeration, group.limits().enumeration_cap,
                        "full-lattice mode enumerates all " + std::to_string(order) + " elements of " + spec.display +
                            ", above the enumeration cap " + std::to_string(group.limits().enumeration_cap) +
                            "; use --mode table, raise --cap-enumeration, or pass --force-full-lattice");
    GroupLimits lim = group.limits();
    lim.enumeration_cap = order;
    group = group.with_limits(lim);
  }

  Json diff = Json::array();
  bool pass = order == spec.expected_order;
  if (!pass) diff.push_back(Json{{"field", "order"}, {"expected", spec.expected_order}, {"computed", order}});

  std::vector<VectorInput> inputs;
  for (const auto& row : spec.table) inputs.push_back({row.label, row.vector});
  const auto recs = classify_vectors(group, inputs, opts.seed);

  Json rows = Json::array();
  std::set<std::size_t> row_classes;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    RowCheck rc = check_row(spec.table[i], recs[i], diff);
    if (!spec.table[i].candidates.empty()) {
      RowCheck cc = check_candidates(group, spec.table[i], opts.seed, diff);
      rc.json["candidates"] = std::move(cc.json);
      rc.pass = rc.pass && cc.pass;
      rc.json["pass"] = rc.pass;
    }
    row_classes.insert(recs[i].conjugacy_class_id);
    pass = pass && rc.pass;
    rows.push_back(std::move(rc.json));
  }
  // Rows are pairwise non-conjugate and their number is the fixture count.
  if (row_classes.size() != spec.table.size() || spec.table.size() != spec.maximal_classes) {
    pass = false;
    diff.push_back(Json{{"field", "row_classes"}, {"expected", spec.maximal_classes}, {"computed", row_classes.size()}});
  }
  r.json["expected_maximal_classes"] = spec.maximal_classes;
  r.json["scope"] = mode == "table"
                        ? Json{{"rows", "each tabulated vector is checked"},
                               {"completeness", "assumed from the table, not re-proved in table mode"}}
                        : Json{{"rows", "each tabulated vector is checked"},
                               {"completeness", "certified from the full fixed-space lattice"}};

  if (mode == "full-lattice") {
    const LatticeClassification lat = classify_full_lattice(group);
    Json l;
    l["element_fixed_spaces"] = lat.element_fixed_spaces;
    l["lattice_size"] = lat.lattice_size;
    l["classes"] = lat.classes.size();
    l["maximal_classes"] = lat.maximal_classes;
    l["all_steinberg"] = lat.all_steinberg;
    if (!lat.all_steinberg) diff.push_back(Json{{"field", "all_steinberg"}, {"expected", true}, {"computed", false}});
    if (lat.maximal_classes != spec.maximal_classes)
      diff.push_back(Json{{"field", "maximal_classes"}, {"expected", spec.maximal_classes},
                          {"computed", lat.maximal_classes}});
    pass = pass && lat.all_steinberg && lat.maximal_classes == spec.maximal_classes;

    // Each maximal class must contain exactly one fixture row.
    std::vector<std::size_t> hits(lat.classes.size(), 0);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      std::optional<std::size_t> cls;
      for (std::size_t c = 0; c < lat.members.size() && !cls; ++c)
        if (std::find(lat.members[c].begin(), lat.members[c].end(), recs[i].fixed_space) != lat.members[c].end())
          cls = c;
      if (!cls) throw Error("fixed space of row " + recs[i].label + " is not in the lattice");
      ++hits[*cls];
      rows[i]["lattice_class"] = *cls;
    }
    for (std::size_t c = 0; c < lat.classes.size(); ++c) {
      const bool expected_hit = lat.classes[c].is_maximal;
      if ((expected_hit && hits[c] != 1) || (!expected_hit && hits[c] != 0)) {
        pass = false;
        diff.push_back(Json{{"field", "lattice_class"}, {"class", c}, {"expected", expected_hit ? 1 : 0},
                            {"computed", hits[c]}});
      }
    }
    Json classes = Json::array();
    for (std::size_t c = 0; c < lat.classes.size(); ++c) {
      Json cj = record_json(lat.classes[c]);
      cj["fixture_rows"] = hits[c];
      classes.push_back(std::move(cj));
    }
    l["class_records"] = std::move(classes);
    r.json["lattice"] = std::move(l);
  }

  r.json["rows"] = std::move(rows);
  r.json["diff"] = std::move(diff);
  r.json["statistics"] = statistics(group);
  r.json["data_checksums"] = data_checksums_json();
  r.pass = pass;
  r.json["pass"] = pass;
  return r;
}

Report chain_report(const GroupLimits& limits, std::uint64_t seed) {
  struct Fact {
    const char* group;
    const char* row;
    const char* type;
  };
  static constexpr Fact facts[] = {{"R", "H2", "G(5,5,2)"}, {"S1", "H3", "G(3,3,3)"}, {"U", "H5", "W(S1)"}};
  Report r;
  r.json = header("chain", nullptr);
  r.json["seed"] = seed;
  r.json["scope"] = Json{{"group theory", "computed"},
                         {"geometry", "out of scope"},
                         {"resolution non-existence", "cited, not computed"}};
  bool pass = true;
  Json out = Json::array();
  for (const auto& f : facts) {
    const GroupHandle g = lookup_group(f.group, limits);
    const auto& table = g.spec->table;
    auto it = std::find_if(table.begin(), table.end(), [&](const TableRow& t) { return t.label == f.row; });
    if (it == table.end()) throw Error(std::string("missing table row ") + f.row + " of " + f.group);
    const VectorInput in{it->label, it->vector};
    const auto rec = classify_vectors(g.group, std::span(&in, 1), seed).front();
    Json j;
    j["group"] = g.display;
    j["parabolic_type"] = f.type;
    j["record"] = record_json(rec);
    const std::uint64_t order = g.group.order();
    j["group_order"] = order;
    const auto ref = reference_fingerprint(f.type);
    bool ok = ref && rec.fingerprint == *ref && rec.steinberg_ok && rec.recognized_type == f.type;
    if (std::string_view(f.group) == "U") {
      // Orbit-stabilizer against an orbit listed point by point.
      const std::size_t orbit = g.group.orbit(it->vector).size();
      j["orbit_size"] = orbit;
      j["expected_orbit_size"] = order / ref->order;
      ok = ok && orbit * rec.group.order() == order && orbit == order / ref->order;
    }
    j["pass"] = ok;
    pass = pass && ok;
    out.push_back(std::move(j));
  }
  r.json["facts"] = std::move(out);
  r.json["data_checksums"] = data_checksums_json();
  r.pass = pass;
  r.json["pass"] = pass;
  return r;
}

namespace {

FiniteMatrixGroup parse_k(const std::string& kind) {
  auto arg = [&](std::size_t at) {
    return static_cast<int>(parse_uint(std::string_view(kind).substr(at), "group parameter"));
  };
  if (kind.starts_with("cyclic:")) return build_sl2_subgroup(Sl2Kind::cyclic, arg(7));
  if (kind.starts_with("binary-dihedral:")) return build_sl2_subgroup(Sl2Kind::binary_dihedral, arg(16));
  if (kind == "quaternion") return build_sl2_subgroup(Sl2Kind::binary_dihedral, 2);
  if (kind == "2T") return build_sl2_subgroup(Sl2Kind::binary_tetrahedral);
  if (kind == "2O") return build_sl2_subgroup(Sl2Kind::binary_octahedral);
  if (kind == "2I") return build_sl2_subgroup(Sl2Kind::binary_icosahedral);
  throw InvalidArgument("unknown K '" + kind + "' (cyclic:m, binary-dihedral:m, quaternion, 2T, 2O, 2I)");
}

std::vector<ExactMatrix> select_h(const FiniteMatrixGroup& k, const std::string& sel) {
  if (sel == "full") return k.gens();
  if (sel == "trivial") return {};
  std::vector<ExactMatrix> out;
  const auto& elems = k.elements();
  if (sel == "center") {
    for (const auto& x : elems)
      if (!x.is_identity() && std::all_of(k.gens().begin(), k.gens().end(),
                                           [&](const ExactMatrix& s) { return x * s == s * x; }))
        out.push_back(x);
    return out;
  }
  if (sel == "derived") {
    // Commutators of all pairs generate [K, K].
    std::set<ExactMatrix, decltype(&canonical_less)> seen(&canonical_less);
    for (const auto& a : elems)
      for (const auto& b : elems) {
        ExactMatrix c = a * b * a.inverse() * b.inverse();
        if (!c.is_identity() && seen.insert(c).second) out.push_back(c);
      }
    return out;
  }
  throw InvalidArgument("unknown H '" + sel + "' (full, center, derived, trivial)");
}

Cyclotomic random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  const int re = d(rng);
  const int im = d(rng);
  return Cyclotomic(re) + Cyclotomic(im) * imaginary_unit();
}

ExactVector random_block(std::mt19937_64& rng) {
  ExactVector w(2);
  while (w.is_zero()) w = ExactVector{random_scalar(rng), random_scalar(rng)};
  return w;
}

ExactVector assemble(const std::vector<ExactVector>& blocks) {
  const std::size_t n = blocks.size();
  ExactVector v(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = blocks[j][0];
    v[j + n] = blocks[j][1];
  }
  return v;
}

} // namespace

Report imprimitive_report(const ImprimitiveOptions& opts, const GroupLimits& limits) {
  if (opts.n < 1) throw InvalidArgument("n must be at least 1");
  const FiniteMatrixGroup k = parse_k(opts.k_kind);
  const std::vector<ExactMatrix> h_gens = select_h(k, opts.h_selector);
  const std::uint64_t h_order = FiniteMatrixGroup(2, h_gens).order();
  const FiniteMatrixGroup g = build_imprimitive(k, h_gens, opts.n).with_limits(limits);
  const std::size_t n = opts.n;

  Report r;
  r.json = header("imprimitive", nullptr);
  r.json["K"] = opts.k_kind;
  r.json["K_order"] = k.order();
  r.json["H"] = opts.h_selector;
  r.json["H_order"] = h_order;
  r.json["n"] = n;
  r.json["seed"] = opts.seed;
  r.json["group_order"] = g.order();

  std::mt19937_64 rng(opts.seed);
  const auto& kel = k.elements();
  std::uniform_int_distribution<std::size_t> pick_k(0, kel.size() - 1);

  std::vector<std::pair<std::string, ExactVector>> samples;
  samples.emplace_back("all blocks zero", ExactVector(2 * n));
  {
    const ExactVector w = random_block(rng);
    std::vector<ExactVector> blocks;
    for (std::size_t j = 0; j < n; ++j) blocks.push_back(kel[pick_k(rng)] * w);
    samples.emplace_back("one K-orbit", assemble(blocks));
  }
  {
    std::vector<ExactVector> blocks;
    for (std::size_t j = 0; j < n; ++j) blocks.push_back(random_block(rng));
    samples.emplace_back("fresh blocks", assemble(blocks));
  }
  if (n >= 2) {
    std::vector<ExactVector> blocks(n, ExactVector(2));
    const ExactVector w = random_block(rng);
    for (std::size_t j = 1; j < n; ++j) blocks[j] = kel[pick_k(rng)] * w;
    samples.emplace_back("zero block and repeated orbit", assemble(blocks));
  }
  std::uniform_int_distribution<int> choice(0, 2);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    std::vector<ExactVector> blocks;
    for (std::size_t j = 0; j < n; ++j) {
      const int c = choice(rng);
      if (c == 0) {
        blocks.emplace_back(2);
      } else if (c == 1 && j > 0) {
        std::uniform_int_distribution<std::size_t> prev(0, j - 1);
        blocks.push_back(kel[pick_k(rng)] * blocks[prev(rng)]);
      } else {
        blocks.push_back(random_block(rng));
      }
    }
    samples.emplace_back("trial " + std::to_string(t), assemble(blocks));
  }

  bool pass = true;
  Json out = Json::array();
  for (const auto& [label, v] : samples) {
    const BlockStructure bs = imprimitive_block_structure(k, h_order, n, v);
    const FiniteMatrixGroup stab = v.is_zero() ? g : g.stabilizer(v, opts.seed);
    const bool steinberg = steinberg_check(stab);
    const bool ok = steinberg && stab.order() == bs.predicted_order;
    pass = pass && ok;
    out.push_back(Json{{"label", label},
                       {"vector", vector_json(v)},
                       {"zero_blocks", bs.zero_blocks},
                       {"orbit_blocks", bs.orbit_blocks},
                       {"predicted_order", bs.predicted_order},
                       {"stabilizer_order", stab.order()},
                       {"steinberg_ok", steinberg},
                       {"pass", ok}});
  }
  r.json["samples"] = std::move(out);
  r.pass = pass;
  r.json["pass"] = pass;
  return r;
}

namespace {

std::string yes_no(const Json& b) { return b.is_boolean() && b.get<bool>() ? "yes" : "no"; }

std::string joined_vector(const Json& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get<std::string>();
  return s + ")";
}

} // namespace

std::string render_markdown(const Json& rep) {
  std::ostringstream os;
  const std::string cmd = rep.value("command", "");
  const std::string title = rep.contains("display") ? rep["display"].get<std::string>() : cmd;
  os << "# " << cmd << ": " << title << "\n\n";
  os << "- result: " << (rep.value("pass", false) ? "PASS" : "FAIL") << "\n";
  if (rep.contains("computed_order")) os << "- order: " << rep["computed_order"].dump() << "\n";
  if (rep.contains("group_order")) os << "- group order: " << rep["group_order"].dump() << "\n";
  if (rep.contains("mode")) os << "- mode: " << rep["mode"].get<std::string>() << "\n";

  if (rep.contains("rows")) {
    os << "\n| Label | Type | Recognized | Order | Steinberg | Maximal | Class | Vector |\n"
       << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : rep["rows"])
      os << "| " << row.value("label", "") << " | " << row.value("expected_type", "") << " | "
         << row.value("recognized_type", "") << " | " << row["order"].dump() << " | " << yes_no(row["steinberg_ok"])
         << " | " << yes_no(row["is_maximal"]) << " | "
         << (row.contains("lattice_class") ? row["lattice_class"] : row["conjugacy_class_id"]).dump() << " | "
         << joined_vector(row["vector"]) << " |\n";
  }
  if (rep.contains("lattice")) {
    const auto& l = rep["lattice"];
    os << "\nLattice: " << l["lattice_size"].dump() << " subspaces, " << l["classes"].dump() << " classes, "
       << l["maximal_classes"].dump() << " maximal; every parabolic generated by reflections: "
       << yes_no(l["all_steinberg"]) << "\n\n| Class | dim Fix | Size | Order | Type | Steinberg | Maximal |\n"
       << "|---|---|---|---|---|---|---|\n";
    for (const auto& c : l["class_records"])
      os << "| " << c["conjugacy_class_id"].dump() << " | " << c["fixed_space"]["dim"].dump() << " | "
         << c["class_size"].dump() << " | " << c["order"].dump() << " | " << c["recognized_type"].get<std::string>()
         << " | " << yes_no(c["steinberg_ok"]) << " | " << yes_no(c["is_maximal"]) << " |\n";
  }
  if (rep.contains("record")) {
    const auto& rec = rep["record"];
    os << "\n- stabilizer order: " << rec["order"].dump() << "\n- recognized type: "
       << rec["recognized_type"].get<std::string>() << "\n- Steinberg: " << yes_no(rec["steinberg_ok"])
       << "\n- maximal: " << yes_no(rec["is_maximal"]) << "\n";
  }
  if (rep.contains("facts")) {
    os << "\n| Group | Parabolic | Order | Pass |\n|---|---|---|---|\n";
    for (const auto& f : rep["facts"])
      os << "| " << f["group"].get<std::string>() << " | " << f["parabolic_type"].get<std::string>() << " | "
         << f["record"]["order"].dump() << " | " << yes_no(f["pass"]) << " |\n";
    for (const auto& [k, v] : rep["scope"].items()) os << "\n- " << k << ": " << v.get<std::string>();
    os << "\n";
  }
  if (rep.contains("samples")) {
    os << "\n| Sample | n0 | Orbit blocks | Predicted | Computed | Steinberg |\n|---|---|---|---|---|---|\n";
    for (const auto& s : rep["samples"])
      os << "| " << s["label"].get<std::string>() << " | " << s["zero_blocks"].dump() << " | "
         << s["orbit_blocks"].dump() << " | " << s["predicted_order"].dump() << " | " << s["stabilizer_order"].dump()
         << " | " << yes_no(s["steinberg_ok"]) << " |\n";
  }
  if (rep.contains("diff") && !rep["diff"].empty()) {
    os << "\nMismatches:\n";
    for (const auto& d : rep["diff"]) os << "- " << d.dump() << "\n";
  }
  return os.str();
}

} // namespace symparab
