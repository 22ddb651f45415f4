// Dense exact linear algebra over cyclotomic fields.
//
// Subspaces are always stored in reduced row-echelon form, so two subspaces
// are equal exactly when their stored bases are equal.  Symplectic helpers
// take the ambient form explicitly through SymplecticSpace.
#ifndef SYMPARAB_LINALG_HPP_
#define SYMPARAB_LINALG_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symparab/cyclotomic.hpp"

namespace symparab {

class ExactVector {
public:
  ExactVector() = default;
  explicit ExactVector(std::size_t n) : v_(n) {}
  ExactVector(std::initializer_list<Cyclotomic> init) : v_(init) {}
  explicit ExactVector(std::vector<Cyclotomic> entries) : v_(std::move(entries)) {}

  static ExactVector unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return v_.size(); }
  const Cyclotomic& operator[](std::size_t i) const { return v_[i]; }
  Cyclotomic& operator[](std::size_t i) { return v_[i]; }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  std::span<const Cyclotomic> entries() const noexcept { return v_; }

  bool is_zero() const noexcept;
  // Index of the first nonzero entry, or size() for the zero vector.
  std::size_t leading_index() const noexcept;
  // Scaled so that the first nonzero entry is 1 (zero stays zero).
  ExactVector projective_normal() const;
  ExactVector conj() const;

  ExactVector& operator+=(const ExactVector& rhs);
  ExactVector& operator-=(const ExactVector& rhs);
  friend ExactVector operator+(ExactVector a, const ExactVector& b) { return a += b; }
  friend ExactVector operator-(ExactVector a, const ExactVector& b) { return a -= b; }
  friend ExactVector operator*(const Cyclotomic& s, const ExactVector& v);
  ExactVector operator-() const;

  friend bool operator==(const ExactVector& a, const ExactVector& b) noexcept { return a.v_ == b.v_; }

  std::size_t hash() const noexcept;
  std::string str() const;

private:
  std::vector<Cyclotomic> v_;
};

// Plain bilinear pairing sum_i a_i b_i.
Cyclotomic dot(const ExactVector& a, const ExactVector& b);
// Standard hermitian product sum_i conj(a_i) b_i.
Cyclotomic hermitian(const ExactVector& a, const ExactVector& b);

class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  ExactMatrix(std::initializer_list<std::initializer_list<Cyclotomic>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(std::span<const ExactVector> rows);
  static ExactMatrix from_columns(std::span<const ExactVector> cols);
  static ExactMatrix scalar(std::size_t n, const Cyclotomic& s);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Cyclotomic& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::span<const Cyclotomic> row_span(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<const Cyclotomic> data() const noexcept { return a_; }

  ExactVector row(std::size_t i) const;
  ExactVector column(std::size_t j) const;

  ExactMatrix transpose() const;
  ExactMatrix conj_transpose() const;
  ExactMatrix conj() const;
  // Throws DivisionByZero when singular.
  ExactMatrix inverse() const;
  bool is_identity() const noexcept;
  bool is_zero() const noexcept;
  Cyclotomic trace() const;

  ExactVector operator*(const ExactVector& v) const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const Cyclotomic& s, const ExactMatrix& m);
  ExactMatrix operator-() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::size_t hash() const noexcept;
  std::string str() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cyclotomic> a_;
};

// Deterministic total order on matrices, used for stable output ordering.
bool canonical_less(const ExactMatrix& a, const ExactMatrix& b);

struct RrefResult {
  ExactMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);

// Solves a * x = b for x (one column per column of b).  Throws
// InvalidArgument if the system is inconsistent; picks free variables = 0.
ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b);

class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }
  static Subspace full(std::size_t ambient_dim);
  static Subspace span(std::span<const ExactVector> vectors, std::size_t ambient_dim);
  static Subspace row_space(const ExactMatrix& m);
  static Subspace column_space(const ExactMatrix& m);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  // Canonical RREF basis, one vector per row.
  const ExactMatrix& basis() const noexcept { return basis_; }
  std::vector<ExactVector> basis_vectors() const;
  // Basis vectors as the columns of an ambient_dim x dim matrix.
  ExactMatrix basis_columns() const { return basis_.transpose(); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const ExactVector& v) const;
  bool contains(const Subspace& other) const;
  // Coordinates of v in the canonical basis (v must lie in the subspace).
  ExactVector coordinates(const ExactVector& v) const;

  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  // Image under a square matrix.
  Subspace image_under(const ExactMatrix& g) const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  std::size_t hash() const noexcept;

private:
  std::size_t ambient_ = 0;
  ExactMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// Incrementally maintained echelon basis; used for spinning and domain
// construction where vectors arrive one at a time.
class EchelonBasis {
public:
  explicit EchelonBasis(std::size_t ambient_dim) : ambient_(ambient_dim) {}
  // Returns true if v was independent of the vectors seen so far.
  bool add(const ExactVector& v);
  bool contains(const ExactVector& v) const;
  std::size_t dim() const noexcept { return rows_.size(); }
  Subspace subspace() const;

private:
  ExactVector reduce(ExactVector v) const;

  std::size_t ambient_;
  std::vector<ExactVector> rows_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const ExactMatrix& m);

// Common fixed space of the given square matrices (of size dim).
Subspace fixed_space(std::span<const ExactMatrix> gens, std::size_t dim);

// (1/|H|) sum_{g in H} g for a complete element list of a finite group.
ExactMatrix averaging_projector(std::span<const ExactMatrix> elements);

class SymplecticSpace {
public:
  // The zero-dimensional space.
  SymplecticSpace() = default;
  // Standard block form [[0, I_n], [-I_n, 0]] on a space of dimension 2n.
  static SymplecticSpace standard(std::size_t dim);
  // Throws InvalidArgument unless the form is square, antisymmetric and
  // invertible.
  explicit SymplecticSpace(ExactMatrix form);

  std::size_t dim() const noexcept { return form_.rows(); }
  const ExactMatrix& form() const noexcept { return form_; }
  Cyclotomic omega(const ExactVector& x, const ExactVector& y) const;
  // g^T * form * g == form
  bool preserves(const ExactMatrix& g) const;

private:
  ExactMatrix form_;
};

ExactMatrix standard_symplectic_form(std::size_t dim);

Subspace symplectic_complement(const Subspace& s, const SymplecticSpace& sp);
bool is_isotropic(const Subspace& s, const SymplecticSpace& sp);
bool is_lagrangian(const Subspace& s, const SymplecticSpace& sp);
// The form restricted to s is nondegenerate.
bool is_symplectic_subspace(const Subspace& s, const SymplecticSpace& sp);

struct Restriction {
  std::vector<ExactMatrix> gens; // action in the chosen basis of W
  ExactMatrix form;              // Gram matrix of omega on that basis
  ExactMatrix basis;             // basis vectors of W as columns
};

// Matrices of the generators on an invariant subspace W, in W's canonical
// basis.  Throws NotInvariant or DegenerateForm.
Restriction restrict_to(std::span<const ExactMatrix> gens, const Subspace& w, const SymplecticSpace& sp);
// Same, in the basis given by the columns of `basis`.
Restriction restrict_to_basis(std::span<const ExactMatrix> gens, const ExactMatrix& basis,
                              const SymplecticSpace& sp);

struct SymplecticBasis {
  ExactMatrix change;   // B, columns e_1..e_m, f_1..f_m
  Cyclotomic scale;     // c with B^T gram B = c [[0, I], [-I, 0]]
};

// Symplectic Gram-Schmidt for an antisymmetric invertible Gram matrix.  The
// global scalar c is reported, never absorbed.
SymplecticBasis symplectic_basis(const ExactMatrix& gram);

// Smallest subspace containing seed and invariant under every generator.
Subspace spin(const ExactVector& seed, std::span<const ExactMatrix> gens);

// Semi-decision for an invariant Lagrangian: spins `extra`, then the standard
// basis vectors, then `random_tries` seeded combinations with small integer
// coefficients, and returns the first spin that is Lagrangian.  nullopt does
// not prove that none exists.
std::optional<Subspace> find_invariant_lagrangian(std::span<const ExactMatrix> gens, const SymplecticSpace& sp,
                                                  std::span<const ExactVector> extra = {}, std::uint64_t seed = 0,
                                                  std::size_t random_tries = 32);

} // namespace symparab

template <>
struct std::hash<symparab::ExactVector> {
  std::size_t operator()(const symparab::ExactVector& v) const noexcept { return v.hash(); }
};
template <>
struct std::hash<symparab::ExactMatrix> {
  std::size_t operator()(const symparab::ExactMatrix& m) const noexcept { return m.hash(); }
};
template <>
struct std::hash<symparab::Subspace> {
  std::size_t operator()(const symparab::Subspace& s) const noexcept { return s.hash(); }
};

#endif // SYMPARAB_LINALG_HPP_
