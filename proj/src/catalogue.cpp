#include "symparab/catalogue.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>

#include <json.hpp>
#include <openssl/evp.h>

#include "embedded_data.hpp"
#include "symparab/errors.hpp"

namespace symparab {

namespace {

using nlohmann::json;

std::string sha256_hex(std::string_view text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string_view embedded(std::string_view name) {
  for (const auto& f : detail::embedded_files())
    if (f.name == name) return f.text;
  throw Error("missing embedded data file " + std::string(name));
}

const json& data_json(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, json, std::less<>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) {
    try {
      it = cache.emplace(std::string(name), json::parse(embedded(name))).first;
    } catch (const json::exception& e) {
      throw Error(std::string(name) + ": " + e.what());
    }
  }
  return it->second;
}

Cyclotomic scalar(const json& j) {
  if (!j.is_string()) throw Error("expected a scalar literal string in data file");
  return Cyclotomic::parse(j.get<std::string>());
}

std::vector<std::string> literals(const json& arr) {
  std::vector<std::string> out;
  for (const auto& x : arr) out.push_back(x.get<std::string>());
  return out;
}

ExactVector vector_from(const json& arr, const Cyclotomic& scale = Cyclotomic(1)) {
  ExactVector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[i] = scale * scalar(arr[i]);
  return v;
}

ExactMatrix matrix_from(const json& rows, const Cyclotomic& scale = Cyclotomic(1)) {
  std::vector<ExactVector> r;
  for (const auto& row : rows) r.push_back(vector_from(row, scale));
  return ExactMatrix::from_rows(r);
}

ExactMatrix block_diag(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

GroupSpec load_primitive(std::string_view name) {
  const json& doc = data_json("primitive_groups.json");
  for (const auto& g : doc.at("groups")) {
    if (g.at("name").get<std::string>() != name) continue;
    GroupSpec spec;
    spec.name = g.at("name").get<std::string>();
    spec.display = g.at("display").get<std::string>();
    const std::size_t dim = g.at("dim").get<std::size_t>();
    spec.space = SymplecticSpace::standard(dim);
    spec.expected_order = g.at("order").get<std::uint64_t>();
    spec.order_factored = g.at("order_factored").get<std::string>();
    spec.default_mode = g.at("default_mode").get<std::string>();
    spec.maximal_classes = g.at("maximal_classes").get<std::size_t>();
    QuaternionicStructure j(dim);
    std::vector<ExactVector> seeds;
    std::size_t idx = 0;
    for (const auto& r : g.at("root_lines")) {
      RootLine line;
      line.printed = vector_from(r.at("coords"), scalar(r.at("scale")));
      if (line.printed.size() != dim) throw Error(spec.name + ": root line of wrong length");
      line.vector = line.printed.projective_normal();
      line.literals = literals(r.at("coords"));
      line.source = spec.name + " root " + std::to_string(++idx);
      // Row convention: the stored generator is the transpose, i.e. the
      // reflection in conj(a).
      spec.generators.push_back(reflection_from_root(line.vector, spec.space, j).transpose());
      seeds.push_back(line.vector.conj().projective_normal());
      spec.root_lines.push_back(std::move(line));
    }
    for (const auto& r : g.at("table")) {
      TableRow row;
      row.label = r.at("label").get<std::string>();
      row.type = r.at("type").get<std::string>();
      if (r.contains("note")) row.note = r.at("note").get<std::string>();
      if (r.contains("candidates")) {
        for (const auto& c : r.at("candidates"))
          row.candidates.push_back({c.at("reading").get<std::string>(), vector_from(c.at("vector"))});
        row.resolved = r.at("resolved").get<std::size_t>();
        if (row.resolved >= row.candidates.size()) throw Error(spec.name + ": bad resolved index");
        row.vector = row.candidates[row.resolved].vector;
        row.literals = literals(r.at("candidates")[row.resolved].at("vector"));
      } else {
        row.vector = vector_from(r.at("vector"));
        row.literals = literals(r.at("vector"));
      }
      if (row.vector.size() != dim) throw Error(spec.name + " " + row.label + ": table vector of wrong length");
      spec.table.push_back(std::move(row));
    }
    spec.group = FiniteMatrixGroup(dim, spec.generators, {}, seeds);
    return spec;
  }
  throw InvalidArgument("unknown group '" + std::string(name) + "'");
}

} // namespace

// ---------------------------------------------------------------------------

QuaternionicStructure::QuaternionicStructure(std::size_t dim) : dim_(dim) {
  if (dim % 2 != 0) throw InvalidArgument("quaternionic structure needs even dimension");
}

ExactVector QuaternionicStructure::apply(const ExactVector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("vector does not match quaternionic structure");
  const std::size_t n = dim_ / 2;
  ExactVector y(dim_);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = -x[k + n].conj();
    y[k + n] = x[k].conj();
  }
  return y;
}

ExactMatrix reflection_from_root(const ExactVector& a, const SymplecticSpace& sp, const QuaternionicStructure& j) {
  const std::size_t d = a.size();
  if (d != sp.dim() || d != j.dim()) throw DimensionMismatch("root of wrong length");
  if (a.is_zero()) throw InvalidArgument("zero root");
  const ExactVector b = j.apply(a);
  Cyclotomic norm;
  for (std::size_t i = 0; i < d; ++i) norm += a[i] * a[i].conj();
  const Cyclotomic c = Cyclotomic(-2) / norm;
  ExactMatrix g = ExactMatrix::identity(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) g(r, s) += c * (a[r] * a[s].conj() + b[r] * b[s].conj());
  if (rank(g - ExactMatrix::identity(d)) != 2) throw Error("root and its J-image are dependent");
  if (!sp.preserves(g)) throw Error("reflection from root is not symplectic");
  return g;
}

const std::vector<std::string>& primitive_names() {
  static const std::vector<std::string> names{"Q", "R", "S1", "S2", "S3", "T", "U"};
  return names;
}

const GroupSpec& build_primitive(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<GroupSpec>, std::less<>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(std::string(name), std::make_unique<GroupSpec>(load_primitive(name))).first;
  return *it->second;
}

const S1Example& s1_example() {
  static const S1Example ex = [] {
    const json& doc = data_json("s1_example.json");
    S1Example e;
    std::map<std::string, std::size_t> index;
    for (const auto& g : doc.at("generators")) {
      index[g.at("name").get<std::string>()] = e.m.size();
      e.m.push_back(matrix_from(g.at("rows"), scalar(g.at("scale"))));
    }
    for (const auto& w : doc.at("stabilizer_words")) {
      std::vector<std::size_t> word;
      for (const auto& s : w) word.push_back(index.at(s.get<std::string>()));
      e.stabilizer_words.push_back(std::move(word));
    }
    e.vector = vector_from(doc.at("vector"));
    e.fixed_companion = vector_from(doc.at("fixed_companion"));
    e.stabilizer_order = doc.at("stabilizer_order").get<std::uint64_t>();
    e.stabilizer_type = doc.at("stabilizer_type").get<std::string>();
    e.complement_basis = matrix_from(doc.at("complement_basis_rows"));
    for (const auto& m : doc.at("restricted_generators")) e.restricted_generators.push_back(matrix_from(m));
    for (const auto& c : doc.at("lagrangian_columns")) e.lagrangian_columns.push_back(c.get<std::size_t>());
    return e;
  }();
  return ex;
}

// ---------------------------------------------------------------------------

FiniteMatrixGroup build_sl2_subgroup(Sl2Kind kind, int m) {
  const Cyclotomic i = imaginary_unit();
  const ExactMatrix qi{{i, 0}, {0, -i}};
  const ExactMatrix qj{{0, 1}, {-1, 0}};
  const Cyclotomic half = Cyclotomic(Rational(1, 2));
  // (1 + i + j + k) / 2
  const ExactMatrix t{{half * (1 + i), half * (1 + i)}, {half * (i - 1), half * (1 - i)}};
  auto diag_root = [](std::int64_t n) {
    return ExactMatrix{{Cyclotomic::root_of_unity(n, 1), 0}, {0, Cyclotomic::root_of_unity(n, -1)}};
  };
  switch (kind) {
  case Sl2Kind::cyclic:
    if (m < 1) throw InvalidArgument("cyclic group needs m >= 1");
    return FiniteMatrixGroup(2, {diag_root(m)});
  case Sl2Kind::binary_dihedral:
    if (m < 2) throw InvalidArgument("binary dihedral group needs m >= 2");
    return FiniteMatrixGroup(2, {diag_root(2 * m), qj});
  case Sl2Kind::binary_tetrahedral:
    return FiniteMatrixGroup(2, {qi, qj, t});
  case Sl2Kind::binary_octahedral:
    return FiniteMatrixGroup(2, {qi, qj, t, diag_root(8)});
  case Sl2Kind::binary_icosahedral: {
    // (tau + i + tau^-1 j) / 2 with tau the golden ratio.
    const Cyclotomic s5 = sqrt5();
    const Cyclotomic tau = half * (1 + s5), tau_inv = half * (s5 - 1);
    const ExactMatrix q{{half * (tau + i), half * tau_inv}, {-half * tau_inv, half * (tau - i)}};
    return FiniteMatrixGroup(2, {qi, qj, t, q});
  }
  }
  throw InvalidArgument("unknown SL2 subgroup kind");
}

ExactMatrix imprimitive_block(const ExactMatrix& k, std::size_t slot, std::size_t n) {
  if (k.rows() != 2 || k.cols() != 2) throw DimensionMismatch("block must be 2x2");
  ExactMatrix g = ExactMatrix::identity(2 * n);
  const std::size_t idx[2] = {slot, slot + n};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) g(idx[r], idx[c]) = k(r, c);
  return g;
}

FiniteMatrixGroup build_imprimitive(const FiniteMatrixGroup& k, const std::vector<ExactMatrix>& h_gens, std::size_t n) {
  if (n < 1) throw InvalidArgument("imprimitive group needs n >= 1");
  if (k.dim() != 2) throw DimensionMismatch("K must act on C^2");
  FiniteMatrixGroup h(2, h_gens);
  for (const auto& g : h_gens)
    if (!k.is_member(g)) throw InvalidArgument("H is not a subgroup of K");
  const auto& elems = k.elements();
  for (const auto& a : elems)
    for (const auto& b : elems)
      if (!h.is_member(a * b * a.inverse() * b.inverse()))
        throw InvalidArgument("H does not contain the derived subgroup of K");
  std::vector<ExactMatrix> gens;
  for (const auto& x : h_gens) gens.push_back(imprimitive_block(x, 0, n));
  if (n >= 2) {
    for (const auto& x : k.gens()) gens.push_back(imprimitive_block(x, 0, n) * imprimitive_block(x.inverse(), 1, n));
    for (std::size_t s = 0; s + 1 < n; ++s) {
      ExactMatrix p(2 * n, 2 * n);
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c == s ? s + 1 : c == s + 1 ? s : c;
        p(r, c) = 1;
        p(r + n, c + n) = 1;
      }
      gens.push_back(std::move(p));
    }
  }
  return FiniteMatrixGroup(2 * n, std::move(gens));
}

BlockStructure imprimitive_block_structure(const FiniteMatrixGroup& k, std::uint64_t h_order, std::size_t n,
                                           const ExactVector& v) {
  if (v.size() != 2 * n) throw DimensionMismatch("vector does not match G_n(K, H)");
  auto factorial = [](std::uint64_t m) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= m; ++i) f *= i;
    return f;
  };
  BlockStructure bs;
  std::vector<ExactVector> reps;
  for (std::size_t j = 0; j < n; ++j) {
    ExactVector w{v[j], v[j + n]};
    if (w.is_zero()) {
      ++bs.zero_blocks;
      continue;
    }
    std::size_t r = 0;
    for (; r < reps.size(); ++r) {
      bool same = false;
      for (const auto& x : k.elements())
        if (x * reps[r] == w) {
          same = true;
          break;
        }
      if (same) break;
    }
    if (r == reps.size()) {
      reps.push_back(w);
      bs.orbit_blocks.push_back(0);
    }
    ++bs.orbit_blocks[r];
  }
  for (auto m : bs.orbit_blocks) bs.predicted_order *= factorial(m);
  if (bs.zero_blocks > 0) {
    std::uint64_t g0 = h_order * factorial(bs.zero_blocks);
    for (std::size_t i = 1; i < bs.zero_blocks; ++i) g0 *= k.order();
    bs.predicted_order *= g0;
  }
  return bs;
}

FiniteMatrixGroup build_gmpn(int m, int p, int n) {
  if (m < 1 || p < 1 || n < 1) throw InvalidArgument("G(m,p,n) needs positive parameters");
  if (m % p != 0) throw InvalidArgument("G(m,p,n) needs p dividing m");
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<ExactMatrix> gens;
  if (p != m) {
    ExactMatrix t = ExactMatrix::identity(d);
    t(0, 0) = Cyclotomic::root_of_unity(m, p);
    gens.push_back(std::move(t));
  }
  for (std::size_t s = 0; s + 1 < d; ++s) {
    ExactMatrix sw = ExactMatrix::identity(d);
    sw(s, s) = 0;
    sw(s + 1, s + 1) = 0;
    sw(s, s + 1) = 1;
    sw(s + 1, s) = 1;
    gens.push_back(std::move(sw));
  }
  if (d >= 2 && m > 1) {
    ExactMatrix tw = ExactMatrix::identity(d);
    tw(0, 0) = 0;
    tw(1, 1) = 0;
    tw(0, 1) = Cyclotomic::root_of_unity(m, -1);
    tw(1, 0) = Cyclotomic::root_of_unity(m, 1);
    gens.push_back(std::move(tw));
  }
  return FiniteMatrixGroup(d, std::move(gens));
}

FiniteMatrixGroup double_group(const FiniteMatrixGroup& w) {
  std::vector<ExactMatrix> gens;
  for (const auto& g : w.gens()) gens.push_back(block_diag(g, g.inverse().transpose()));
  return FiniteMatrixGroup(2 * w.dim(), std::move(gens));
}

ExactMatrix symplectic_direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
  const std::size_t na = a.rows() / 2, nb = b.rows() / 2, n = na + nb;
  if (a.rows() % 2 || b.rows() % 2 || !a.is_square() || !b.is_square())
    throw DimensionMismatch("symplectic blocks must be square of even size");
  std::vector<std::size_t> ia(2 * na), ib(2 * nb);
  for (std::size_t k = 0; k < na; ++k) {
    ia[k] = k;
    ia[na + k] = n + k;
  }
  for (std::size_t k = 0; k < nb; ++k) {
    ib[k] = na + k;
    ib[nb + k] = n + na + k;
  }
  ExactMatrix m(2 * n, 2 * n);
  for (std::size_t r = 0; r < 2 * na; ++r)
    for (std::size_t c = 0; c < 2 * na; ++c) m(ia[r], ia[c]) = a(r, c);
  for (std::size_t r = 0; r < 2 * nb; ++r)
    for (std::size_t c = 0; c < 2 * nb; ++c) m(ib[r], ib[c]) = b(r, c);
  return m;
}

FiniteMatrixGroup symplectic_direct_sum(const FiniteMatrixGroup& a, const FiniteMatrixGroup& b) {
  const ExactMatrix ia = ExactMatrix::identity(a.dim()), ib = ExactMatrix::identity(b.dim());
  std::vector<ExactMatrix> gens;
  for (const auto& g : a.gens()) gens.push_back(symplectic_direct_sum(g, ib));
  for (const auto& g : b.gens()) gens.push_back(symplectic_direct_sum(ia, g));
  return FiniteMatrixGroup(a.dim() + b.dim(), std::move(gens));
}

FiniteMatrixGroup c2_plane() { return FiniteMatrixGroup(2, {ExactMatrix::scalar(2, -1)}); }

FiniteMatrixGroup build_h3() {
  // Coxeter diagram e1 -5- r -3- e2 with r proportional to (tau, 1, tau^-1).
  const Cyclotomic s5 = sqrt5();
  const ExactVector roots[3] = {ExactVector{1, 0, 0}, ExactVector{0, 1, 0},
                                ExactVector{1 + s5, 2, s5 - 1}};
  std::vector<ExactMatrix> gens;
  for (const auto& a : roots) {
    Cyclotomic aa = dot(a, a);
    ExactMatrix g = ExactMatrix::identity(3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) g(r, c) -= Cyclotomic(2) * a[r] * a[c] / aa;
    gens.push_back(std::move(g));
  }
  return FiniteMatrixGroup(3, std::move(gens));
}

const std::vector<ReferenceGroup>& reference_groups() {
  static const std::vector<ReferenceGroup> refs = [] {
    std::vector<ReferenceGroup> r;
    auto gmpn_name = [](int m, int p, int n) {
      return "G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(n) + ")";
    };
    auto doubled = [&](int m, int p, int n) {
      r.push_back({gmpn_name(m, p, n), "doubled " + gmpn_name(m, p, n), double_group(build_gmpn(m, p, n))});
    };
    auto c2_times = [&](int m, int p, int n) {
      r.push_back({"C2x" + gmpn_name(m, p, n), "{+-I} on a plane + doubled " + gmpn_name(m, p, n),
                   symplectic_direct_sum(double_group(build_gmpn(m, p, n)), c2_plane())});
    };
    for (auto [m, p, n] : std::vector<std::array<int, 3>>{{3, 3, 2}, {4, 2, 2}, {5, 5, 2}, {2, 2, 3}, {3, 3, 3},
                                                          {2, 1, 3}, {4, 4, 3}, {5, 5, 3}, {3, 3, 4}})
      doubled(m, p, n);
    for (auto [m, p, n] : std::vector<std::array<int, 3>>{{3, 3, 2}, {5, 5, 2}, {2, 2, 3}, {3, 3, 3}})
      c2_times(m, p, n);
    r.push_back({"C2", "{+-I} on one plane", c2_plane()});
    r.push_back({"C2xC2", "{+-I} on two planes", symplectic_direct_sum(c2_plane(), c2_plane())});
    r.push_back({"C2xC2xC2", "{+-I} on three planes",
                 symplectic_direct_sum(symplectic_direct_sum(c2_plane(), c2_plane()), c2_plane())});
    r.push_back({"G23", "doubled icosahedral reflection group", double_group(build_h3())});
    r.push_back({"S5", "doubled G(1,1,5)", double_group(build_gmpn(1, 1, 5))});
    const FiniteMatrixGroup q8 = build_sl2_subgroup(Sl2Kind::binary_dihedral, 2);
    const std::vector<ExactMatrix> center{ExactMatrix::scalar(2, -1)};
    r.push_back({"G(D2,C2,1)", "G_2(K, Z(K)) with K the quaternion group", build_imprimitive(q8, center, 2)});
    r.push_back({"G3(D2,C2)", "G_3(K, Z(K)) with K the quaternion group", build_imprimitive(q8, center, 3)});
    r.push_back({"W(S1)", "primitive group S1 from its root lines", build_primitive("S1").group});
    return r;
  }();
  return refs;
}

const std::vector<DataFile>& data_files() {
  static const std::vector<DataFile> files = [] {
    std::vector<DataFile> out;
    for (const auto& f : detail::embedded_files()) out.push_back({std::string(f.name), f.text, sha256_hex(f.text)});
    return out;
  }();
  return files;
}

} // namespace symparab
