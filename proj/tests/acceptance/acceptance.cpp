// Acceptance gate: one PASS/FAIL line per criterion on stdout, exit status 1
// if any criterion fails.  Timings go to the detail lines.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "suites.hpp"
#include "symparab/catalogue.hpp"
#include "symparab/reflection.hpp"
#include "symparab/report.hpp"

using namespace symparab;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
};

const std::vector<std::string> kGroups{"Q", "R", "S1", "S2", "S3", "T", "U"};
constexpr std::uint64_t kSeed = 20240531;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome orders() {
  Outcome o;
  const std::vector<std::pair<std::string, std::uint64_t>> expected{
      {"Q", 12096}, {"R", 1209600}, {"S1", 6912}, {"S2", 82944}, {"S3", 3317760}, {"T", 2592000}, {"U", 27371520}};
  for (const auto& [name, order] : expected) {
    const auto t0 = Clock::now();
    const std::uint64_t got = build_primitive(name).group.order();
    const double dt = seconds_since(t0);
    const double limit = (name == "S3" || name == "T" || name == "U") ? 600.0 : 60.0;
    std::ostringstream os;
    os << "W(" << name << ") order " << got << " (expected " << order << "), " << dt << " s (limit " << limit << ")";
    o.check(got == order && dt <= limit, os.str());
  }
  return o;
}

Outcome worked_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const S1Example& ex = s1_example();
  const GroupSpec& s1 = build_primitive("S1");
  const FiniteMatrixGroup h = s1.group.stabilizer(ex.vector);
  o.check(h.order() == 54, "stabilizer order " + std::to_string(h.order()) + " (expected 54)");

  const Subspace fix = fixed_space(h.gens(), 8);
  o.check(fix.dim() == 2, "fixed space dimension " + std::to_string(fix.dim()));
  o.check(fix.contains(ex.vector) && fix.contains(ex.fixed_companion), "fixed space contains v and the second basis vector");

  const Subspace w = symplectic_complement(fix, s1.space);
  const Restriction r = restrict_to_basis(h.gens(), w.basis_columns(), s1.space);
  const SymplecticBasis b = symplectic_basis(r.form);
  const ExactMatrix std6 = standard_symplectic_form(6);
  o.check(w.dim() == 6 && !b.scale.is_zero() && b.change.transpose() * r.form * b.change == b.scale * std6,
          "complement of dimension 6 with form standardized up to the scalar " + b.scale.str());

  const auto lag = find_invariant_lagrangian(FiniteMatrixGroup(6, r.gens), SymplecticSpace(r.form), kSeed);
  bool invariant = lag.has_value() && lag->dim() == 3;
  if (invariant)
    for (const auto& g : r.gens) invariant = invariant && lag->image_under(g) == *lag;
  o.check(invariant, "invariant Lagrangian of dimension 3");

  const std::string type = recognize(h);
  o.check(type == "G(3,3,3)", "recognized as " + type);
  const double dt = seconds_since(t0);
  o.check(dt <= 10.0, "runtime " + std::to_string(dt) + " s (limit 10)");
  return o;
}

// Criterion 3 writes one report per group into dir; criterion 11 compares two dirs.
Outcome table_run(const fs::path& dir) {
  Outcome o;
  fs::create_directories(dir);
  const auto t0 = Clock::now();
  for (const auto& g : kGroups) {
    const fs::path out = dir / (g + ".json");
    const std::string cmd = std::string("\"") + SYMPARAB_VERIFY_TOOL + "\" verify --group " + g +
                            " --mode table --seed " + std::to_string(kSeed) + " --out \"" + out.string() +
                            "\" 2>/dev/null";
    const int rc = run(cmd);
    bool rows_ok = false;
    std::size_t rows = 0;
    if (rc == 0 && fs::exists(out)) {
      const Json j = Json::parse(slurp(out));
      rows_ok = j.at("pass").get<bool>();
      for (const auto& row : j.at("rows")) {
        ++rows;
        rows_ok = rows_ok && row.at("pass").get<bool>() && row.at("steinberg_ok").get<bool>() &&
                  row.at("recognized_type") == row.at("expected_type");
      }
    }
    o.check(rc == 0 && rows_ok,
            "W(" + g + "): exit " + std::to_string(rc) + ", " + std::to_string(rows) + " rows checked");
  }
  const double dt = seconds_since(t0);
  o.check(dt <= 1800.0, "consolidated run " + std::to_string(dt) + " s (limit 1800)");
  return o;
}

Outcome completeness() {
  Outcome o;
  const std::vector<std::pair<std::string, std::size_t>> expected{{"Q", 2}, {"S1", 6}, {"S2", 5}};
  for (const auto& [name, n] : expected) {
    const GroupHandle g = lookup_group(name, {});
    VerifyOptions opts;
    opts.mode = "full-lattice";
    opts.seed = kSeed;
    const Report r = verify_report(g, opts);
    const Json& lat = r.json.at("lattice");
    const auto found = lat.at("maximal_classes").get<std::size_t>();
    const bool all = lat.at("all_steinberg").get<bool>();
    o.check(r.pass && found == n && all && g.spec->table.size() == n,
            "W(" + name + "): " + std::to_string(found) + " maximal classes (expected " + std::to_string(n) +
                "), lattice of " + lat.at("lattice_size").dump() + " subspaces, all Steinberg: " +
                (all ? "yes" : "no"));
  }
  return o;
}

Outcome from_suite(const suites::Result& r, std::size_t min_cases) {
  Outcome o;
  o.check(r.ok && r.cases >= min_cases, r.summary());
  return o;
}

Outcome chain() {
  Outcome o;
  const auto t0 = Clock::now();
  const Report r = chain_report({}, kSeed);
  for (const auto& f : r.json.at("facts")) {
    const std::string what = f.at("parabolic_type").get<std::string>() + " in " + f.at("group").get<std::string>();
    bool ok = f.at("pass").get<bool>();
    std::string extra;
    if (f.contains("orbit_size")) {
      const auto orbit = f.at("orbit_size").get<std::uint64_t>();
      const auto order = f.at("record").at("order").get<std::uint64_t>();
      ok = ok && orbit == 3960 && order == 6912;
      extra = ", order " + std::to_string(order) + ", orbit " + std::to_string(orbit);
    }
    o.check(ok, what + extra);
  }
  o.check(r.pass, "chain report passes");
  const double dt = seconds_since(t0);
  o.check(dt <= 600.0, "runtime " + std::to_string(dt) + " s (limit 600)");
  return o;
}

Outcome determinism(const fs::path& a, const fs::path& b) {
  Outcome o;
  for (const auto& g : kGroups) {
    const std::string x = slurp(a / (g + ".json"));
    const std::string y = slurp(b / (g + ".json"));
    o.check(!x.empty() && x == y, "W(" + g + "): " + std::to_string(x.size()) + " bytes, identical: " +
                                      (x == y ? "yes" : "no"));
  }
  return o;
}

} // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / ("symparab-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"group orders", orders},
      {"worked example", worked_example},
      {"table reproduction", [&] { return table_run(work / "run1"); }},
      {"classification completeness", completeness},
      {"averaging projector", [] { return from_suite(suites::projector_suite(100, kSeed), 100); }},
      {"rank-two groups", [] { return from_suite(suites::rank_two_suite(), 1); }},
      {"doubled G(m,p,n)", [] { return from_suite(suites::doubled_gmpn_suite(50, kSeed), 50); }},
      {"imprimitive stabilizers", [] { return from_suite(suites::imprimitive_suite(20, kSeed), 1); }},
      {"construction", [] { return from_suite(suites::construction_suite(), 1); }},
      {"parabolic chain", chain},
      {"determinism", [&] {
         const Outcome second = table_run(work / "run2");
         Outcome o = determinism(work / "run1", work / "run2");
         o.check(second.ok, "second run passes");
         return o;
       }},
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << criteria[k].first << " ("
              << seconds_since(t0) << " s)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  fs::remove_all(work);
  return all ? 0 : 1;
}
