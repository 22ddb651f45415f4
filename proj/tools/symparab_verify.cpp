// Command-line front end.  Exit codes: 0 pass, 1 mathematical mismatch,
// 2 resource cap, 3 input error.
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symparab/errors.hpp"
#include "symparab/report.hpp"

using namespace symparab;

namespace {

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kCap = 2;
constexpr int kInput = 3;

struct Common {
  std::string group;
  std::string vector;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t cap_enumeration = GroupLimits{}.enumeration_cap;
  std::size_t cap_orbit = GroupLimits{}.orbit_cap;
  std::string out;
  std::string format = "json";
  bool force_full_lattice = false;
  ImprimitiveOptions imp;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "seed for all randomized choices")->envname("SEED");
  cmd->add_option("--cap-enumeration", c.cap_enumeration, "largest group enumerated element by element")
      ->envname("CAP_ENUMERATION");
  cmd->add_option("--cap-orbit", c.cap_orbit, "largest orbit enumerated")->envname("CAP_ORBIT");
  cmd->add_option("--out", c.out, "write the report here instead of stdout")->envname("OUT");
  cmd->add_option("--format", c.format, "report format")
      ->envname("FORMAT")
      ->check(CLI::IsMember({"json", "md"}));
}

void add_group(CLI::App* cmd, Common& c) {
  cmd->add_option("--group", c.group, "Q, R, S1, S2, S3, T, U, trivial-2n, a reference type such as G(3,3,3), or a .json group file")
      ->envname("GROUP")
      ->required();
}

void emit(const Report& r, const Common& c) {
  const std::string text = c.format == "md" ? render_markdown(r.json) : r.json.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + c.out);
  f << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of parabolic subgroups of symplectic reflection groups"};
  app.require_subcommand(1);
  Common c;

  auto* order = app.add_subcommand("order", "compute the order of a group");
  add_group(order, c);
  add_common(order, c);

  auto* stab = app.add_subcommand("stabilizer", "stabilizer of a vector, with Steinberg check and type");
  add_group(stab, c);
  stab->add_option("--vector", c.vector, "e.g. \"(0, 1, E(3), ...)\" or \"1/2*(1, i, sqrt5, ...)\"")
      ->envname("VECTOR")
      ->required();
  add_common(stab, c);

  auto* verify = app.add_subcommand("verify", "check a group against its table of maximal parabolics");
  add_group(verify, c);
  verify->add_option("--mode", c.mode, "full-lattice or table (default depends on the group)")
      ->envname("MODE")
      ->check(CLI::IsMember({"full-lattice", "table"}));
  verify->add_flag("--force-full-lattice", c.force_full_lattice,
                   "enumerate the whole group even above the enumeration cap (memory heavy)")
      ->envname("FORCE_FULL_LATTICE");
  add_common(verify, c);

  auto* chain = app.add_subcommand("chain", "parabolic chain R > G(5,5,2), S1 > G(3,3,3), U > W(S1)");
  add_common(chain, c);

  auto* imp = app.add_subcommand("imprimitive", "stabilizers in G_n(K, H) against the block-structure prediction");
  imp->add_option("--k-kind", c.imp.k_kind, "cyclic:m, binary-dihedral:m, quaternion, 2T, 2O, 2I")->envname("K_KIND");
  imp->add_option("--h-selector", c.imp.h_selector, "full, center, derived, trivial")->envname("H_SELECTOR");
  imp->add_option("--n", c.imp.n, "number of blocks")->envname("N");
  imp->add_option("--trials", c.imp.trials, "random vectors besides the fixed corner cases")->envname("TRIALS");
  add_common(imp, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  GroupLimits limits;
  limits.enumeration_cap = c.cap_enumeration;
  limits.orbit_cap = c.cap_orbit;

  const auto start = std::chrono::steady_clock::now();
  try {
    Report r;
    if (order->parsed()) {
      r = order_report(lookup_group(c.group, limits));
    } else if (stab->parsed()) {
      r = stabilizer_report(lookup_group(c.group, limits), parse_vector_literal(c.vector), c.seed);
    } else if (verify->parsed()) {
      if (c.force_full_lattice && c.mode.empty()) c.mode = "full-lattice";
      if (c.force_full_lattice)
        std::cerr << "warning: --force-full-lattice keeps every group element in memory\n";
      r = verify_report(lookup_group(c.group, limits), {c.mode, c.force_full_lattice, c.seed});
    } else if (chain->parsed()) {
      r = chain_report(limits, c.seed);
    } else {
      c.imp.seed = c.seed;
      r = imprimitive_report(c.imp, limits);
    }
    emit(r, c);
    // Timing stays out of the report so reports are reproducible byte for byte.
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << (r.pass ? "PASS" : "FAIL") << " (" << secs << " s)\n";
    return r.pass ? kPass : kMismatch;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
}
