#include "symparab/linalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "symparab/errors.hpp"

namespace symparab {

namespace {

std::size_t mix_hash(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// Sum of a[k] * b[k] over the nonzero pairs; avoids the accumulator when at
// most one product contributes, which is the common case for the sparse
// matrices we work with.
template <class GetA, class GetB>
Cyclotomic sum_products(std::size_t n, GetA&& a, GetB&& b) {
  const Cyclotomic* first_a = nullptr;
  const Cyclotomic* first_b = nullptr;
  std::size_t k = 0;
  for (; k < n; ++k) {
    const Cyclotomic& x = a(k);
    if (x.is_zero()) continue;
    const Cyclotomic& y = b(k);
    if (y.is_zero()) continue;
    first_a = &x;
    first_b = &y;
    break;
  }
  if (!first_a) return Cyclotomic();
  std::size_t second = k + 1;
  for (; second < n; ++second)
    if (!a(second).is_zero() && !b(second).is_zero()) break;
  if (second >= n) return *first_a * *first_b;
  CyclotomicAccumulator acc;
  acc.add_product(*first_a, *first_b);
  for (std::size_t j = second; j < n; ++j) acc.add_product(a(j), b(j));
  return acc.take();
}

// row_t -= f * row_s, restricted to columns >= from.
void eliminate(std::vector<Cyclotomic>& a, std::size_t cols, std::size_t t, std::size_t s, const Cyclotomic& f,
               std::size_t from) {
  CyclotomicAccumulator acc;
  for (std::size_t j = from; j < cols; ++j) {
    const Cyclotomic& src = a[s * cols + j];
    if (src.is_zero()) continue;
    Cyclotomic& dst = a[t * cols + j];
    if (dst.is_zero()) {
      dst = -(f * src);
      continue;
    }
    acc.add(dst);
    acc.sub_product(f, src);
    dst = acc.take();
  }
}

void check_same_size(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
}

} // namespace

// ---------------------------------------------------------------------------
// ExactVector

ExactVector ExactVector::unit(std::size_t n, std::size_t i) {
  if (i >= n) throw InvalidArgument("unit vector index out of range");
  ExactVector v(n);
  v[i] = Cyclotomic(1);
  return v;
}

bool ExactVector::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](const Cyclotomic& c) { return c.is_zero(); });
}

std::size_t ExactVector::leading_index() const noexcept {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!v_[i].is_zero()) return i;
  return v_.size();
}

ExactVector ExactVector::projective_normal() const {
  std::size_t l = leading_index();
  if (l == v_.size() || v_[l].is_one()) return *this;
  Cyclotomic inv = v_[l].inverse();
  ExactVector out(v_.size());
  out[l] = Cyclotomic(1);
  for (std::size_t i = l + 1; i < v_.size(); ++i) out[i] = inv * v_[i];
  return out;
}

ExactVector ExactVector::conj() const {
  ExactVector out(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i].conj();
  return out;
}

ExactVector& ExactVector::operator+=(const ExactVector& rhs) {
  check_same_size(*this, rhs);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += rhs[i];
  return *this;
}

ExactVector& ExactVector::operator-=(const ExactVector& rhs) {
  check_same_size(*this, rhs);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= rhs[i];
  return *this;
}

ExactVector operator*(const Cyclotomic& s, const ExactVector& v) {
  ExactVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

ExactVector ExactVector::operator-() const {
  ExactVector out(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = -v_[i];
  return out;
}

std::size_t ExactVector::hash() const noexcept {
  std::size_t h = v_.size();
  for (const auto& c : v_) h = mix_hash(h, c.hash());
  return h;
}

std::string ExactVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) s += ", ";
    s += v_[i].str();
  }
  return s + ")";
}

Cyclotomic dot(const ExactVector& a, const ExactVector& b) {
  check_same_size(a, b);
  return sum_products(a.size(), [&](std::size_t k) -> const Cyclotomic& { return a[k]; },
                      [&](std::size_t k) -> const Cyclotomic& { return b[k]; });
}

Cyclotomic hermitian(const ExactVector& a, const ExactVector& b) { return dot(a.conj(), b); }

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<Cyclotomic>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) { return scalar(n, Cyclotomic(1)); }

ExactMatrix ExactMatrix::scalar(std::size_t n, const Cyclotomic& s) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

ExactMatrix ExactMatrix::from_rows(std::span<const ExactVector> rows) {
  if (rows.empty()) throw InvalidArgument("from_rows needs at least one row");
  ExactMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionMismatch("rows of different length");
    std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(std::span<const ExactVector> cols) {
  return from_rows(cols).transpose();
}

ExactVector ExactMatrix::row(std::size_t i) const {
  auto r = row_span(i);
  return ExactVector(std::vector<Cyclotomic>(r.begin(), r.end()));
}

ExactVector ExactMatrix::column(std::size_t j) const {
  ExactVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ExactMatrix ExactMatrix::conj() const {
  ExactMatrix c(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = a_[k].conj();
  return c;
}

ExactMatrix ExactMatrix::conj_transpose() const { return conj().transpose(); }

ExactMatrix ExactMatrix::inverse() const {
  if (!is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  std::size_t n = rows_;
  ExactMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = Cyclotomic(1);
  }
  RrefResult r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw DivisionByZero();
  ExactMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

bool ExactMatrix::is_identity() const noexcept {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Cyclotomic& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

bool ExactMatrix::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](const Cyclotomic& c) { return c.is_zero(); });
}

Cyclotomic ExactMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
  CyclotomicAccumulator acc;
  for (std::size_t i = 0; i < rows_; ++i) acc.add((*this)(i, i));
  return acc.take();
}

ExactVector ExactMatrix::operator*(const ExactVector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  ExactVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const Cyclotomic* r = a_.data() + i * cols_;
    out[i] = sum_products(cols_, [r](std::size_t k) -> const Cyclotomic& { return r[k]; },
                          [&v](std::size_t k) -> const Cyclotomic& { return v[k]; });
  }
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
  ExactMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    const Cyclotomic* r = a.a_.data() + i * a.cols_;
    for (std::size_t j = 0; j < b.cols_; ++j) {
      c(i, j) = sum_products(a.cols_, [r](std::size_t k) -> const Cyclotomic& { return r[k]; },
                             [&b, j](std::size_t k) -> const Cyclotomic& { return b(k, j); });
    }
  }
  return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum size mismatch");
  ExactMatrix c(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] + b.a_[k];
  return c;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference size mismatch");
  ExactMatrix c(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] - b.a_[k];
  return c;
}

ExactMatrix operator*(const Cyclotomic& s, const ExactMatrix& m) {
  ExactMatrix c(m.rows_, m.cols_);
  for (std::size_t k = 0; k < m.a_.size(); ++k) c.a_[k] = s * m.a_[k];
  return c;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix c(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = -a_[k];
  return c;
}

std::size_t ExactMatrix::hash() const noexcept {
  std::size_t h = mix_hash(rows_, cols_);
  for (const auto& c : a_) h = mix_hash(h, c.hash());
  return h;
}

std::string ExactMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool canonical_less(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    int c = compare(da[k], db[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Row reduction

RrefResult rref(const ExactMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Cyclotomic> a(m.data().begin(), m.data().end());
  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(p * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((p + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    const Cyclotomic piv = a[r * cols + c];
    if (!piv.is_one()) {
      Cyclotomic inv = piv.inverse();
      for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = inv * a[r * cols + j];
    }
    for (std::size_t t = 0; t < rows; ++t) {
      if (t == r) continue;
      const Cyclotomic f = a[t * cols + c];
      if (f.is_zero()) continue;
      eliminate(a, cols, t, r, f, c);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = ExactMatrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) res.reduced(i, j) = std::move(a[i * cols + j]);
  return res;
}

std::size_t rank(const ExactMatrix& m) { return rref(m).rank; }

ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row counts differ");
  std::size_t n = a.cols(), k = b.cols();
  ExactMatrix aug(a.rows(), n + k);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  RrefResult r = rref(aug);
  ExactMatrix x(n, k);
  for (std::size_t i = 0; i < r.rank; ++i) {
    std::size_t p = r.pivots[i];
    if (p >= n) throw InvalidArgument("solve: inconsistent system");
    for (std::size_t j = 0; j < k; ++j) x(p, j) = r.reduced(i, n + j);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::full(std::size_t ambient_dim) { return row_space(ExactMatrix::identity(ambient_dim)); }

Subspace Subspace::row_space(const ExactMatrix& m) {
  RrefResult r = rref(m);
  Subspace s(m.cols());
  s.basis_ = ExactMatrix(r.rank, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s.basis_(i, j) = r.reduced(i, j);
  s.pivots_ = std::move(r.pivots);
  return s;
}

Subspace Subspace::column_space(const ExactMatrix& m) { return row_space(m.transpose()); }

Subspace Subspace::span(std::span<const ExactVector> vectors, std::size_t ambient_dim) {
  if (vectors.empty()) return Subspace(ambient_dim);
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw DimensionMismatch("span: vector of wrong length");
  return row_space(ExactMatrix::from_rows(vectors));
}

std::vector<ExactVector> Subspace::basis_vectors() const {
  std::vector<ExactVector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
  return out;
}

ExactVector Subspace::coordinates(const ExactVector& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("coordinates: vector of wrong length");
  ExactVector c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

bool Subspace::contains(const ExactVector& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("contains: vector of wrong length");
  // In RREF the coordinates are the entries at the pivot columns.
  ExactVector c = coordinates(v);
  for (std::size_t j = 0; j < ambient_; ++j) {
    Cyclotomic x = sum_products(dim(), [&](std::size_t i) -> const Cyclotomic& { return c[i]; },
                                [&](std::size_t i) -> const Cyclotomic& { return basis_(i, j); });
    if (!(x == v[j])) return false;
  }
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("contains: ambient dimensions differ");
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("intersect: ambient dimensions differ");
  if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
  if (other.dim() == ambient_) return *this;
  if (dim() == ambient_) return other;
  // x = c * B_self lies in other iff Z x = 0 for Z spanning the annihilator
  // of other (solutions of B_other z = 0).
  Subspace ann = kernel(other.basis_);
  ExactMatrix constraints = ann.basis_ * basis_.transpose(); // (d - l) x k
  Subspace coeffs = kernel(constraints);
  if (coeffs.dim() == 0) return Subspace(ambient_);
  return row_space(coeffs.basis_ * basis_);
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("sum: ambient dimensions differ");
  std::vector<ExactVector> vs = basis_vectors();
  for (auto& v : other.basis_vectors()) vs.push_back(std::move(v));
  return span(vs, ambient_);
}

Subspace Subspace::image_under(const ExactMatrix& g) const {
  if (!g.is_square() || g.rows() != ambient_) throw DimensionMismatch("image_under: bad matrix size");
  if (dim() == 0) return *this;
  return row_space(basis_ * g.transpose());
}

std::size_t Subspace::hash() const noexcept { return mix_hash(ambient_, basis_.hash()); }

// ---------------------------------------------------------------------------
// EchelonBasis

ExactVector EchelonBasis::reduce(ExactVector v) const {
  if (v.size() != ambient_) throw DimensionMismatch("echelon basis: vector of wrong length");
  // Every stored row is zero at the other rows' pivots, so one pass suffices.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Cyclotomic f = v[pivots_[i]];
    if (f.is_zero()) continue;
    const ExactVector& r = rows_[i];
    CyclotomicAccumulator acc;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (r[j].is_zero()) continue;
      acc.add(v[j]);
      acc.sub_product(f, r[j]);
      v[j] = acc.take();
    }
  }
  return v;
}

bool EchelonBasis::contains(const ExactVector& v) const { return reduce(v).is_zero(); }

bool EchelonBasis::add(const ExactVector& v) {
  ExactVector w = reduce(v);
  std::size_t p = w.leading_index();
  if (p == w.size()) return false;
  w = w.projective_normal();
  for (auto& r : rows_) {
    Cyclotomic f = r[p];
    if (f.is_zero()) continue;
    CyclotomicAccumulator acc;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (w[j].is_zero()) continue;
      acc.add(r[j]);
      acc.sub_product(f, w[j]);
      r[j] = acc.take();
    }
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

Subspace EchelonBasis::subspace() const { return Subspace::span(rows_, ambient_); }

// ---------------------------------------------------------------------------
// Kernels, fixed spaces, projectors

Subspace kernel(const ExactMatrix& m) {
  std::size_t n = m.cols();
  if (m.rows() == 0) return Subspace::full(n);
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<ExactVector> vs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    ExactVector x(n);
    x[f] = Cyclotomic(1);
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = -r.reduced(i, f);
    vs.push_back(std::move(x));
  }
  return Subspace::span(vs, n);
}

Subspace fixed_space(std::span<const ExactMatrix> gens, std::size_t dim) {
  if (gens.empty()) return Subspace::full(dim);
  for (const auto& g : gens)
    if (g.rows() != dim || g.cols() != dim) throw DimensionMismatch("fixed_space: generator of wrong size");
  ExactMatrix stacked(gens.size() * dim, dim);
  ExactMatrix id = ExactMatrix::identity(dim);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    ExactMatrix d = gens[k] - id;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) stacked(k * dim + i, j) = d(i, j);
  }
  return kernel(stacked);
}

ExactMatrix averaging_projector(std::span<const ExactMatrix> elements) {
  if (elements.empty()) throw InvalidArgument("averaging_projector: empty element list");
  std::size_t n = elements[0].rows();
  for (const auto& g : elements)
    if (g.rows() != n || g.cols() != n) throw DimensionMismatch("averaging_projector: element of wrong size");
  ExactMatrix p(n, n);
  Cyclotomic scale(Rational(1, static_cast<std::int64_t>(elements.size())));
  CyclotomicAccumulator acc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& g : elements) acc.add(g(i, j));
      p(i, j) = scale * acc.take();
    }
  return p;
}

// ---------------------------------------------------------------------------
// Symplectic geometry

ExactMatrix standard_symplectic_form(std::size_t dim) {
  if (dim % 2 != 0) throw InvalidArgument("symplectic space must have even dimension");
  std::size_t n = dim / 2;
  ExactMatrix j(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = Cyclotomic(1);
    j(n + i, i) = Cyclotomic(-1);
  }
  return j;
}

SymplecticSpace SymplecticSpace::standard(std::size_t dim) {
  SymplecticSpace sp;
  sp.form_ = standard_symplectic_form(dim);
  return sp;
}

SymplecticSpace::SymplecticSpace(ExactMatrix form) : form_(std::move(form)) {
  if (!form_.is_square()) throw InvalidArgument("symplectic form must be square");
  if (!(form_.transpose() == -form_)) throw InvalidArgument("symplectic form must be antisymmetric");
  if (rank(form_) != form_.rows()) throw DegenerateForm("symplectic form is degenerate");
}

Cyclotomic SymplecticSpace::omega(const ExactVector& x, const ExactVector& y) const {
  return dot(x, form_ * y);
}

bool SymplecticSpace::preserves(const ExactMatrix& g) const { return g.transpose() * form_ * g == form_; }

namespace {

ExactMatrix gram_of(const ExactMatrix& basis_rows, const SymplecticSpace& sp) {
  return basis_rows * sp.form() * basis_rows.transpose();
}

} // namespace

Subspace symplectic_complement(const Subspace& s, const SymplecticSpace& sp) {
  if (s.ambient_dim() != sp.dim()) throw DimensionMismatch("symplectic_complement: dimension mismatch");
  if (s.dim() == 0) return Subspace::full(sp.dim());
  return kernel(s.basis() * sp.form());
}

bool is_isotropic(const Subspace& s, const SymplecticSpace& sp) {
  if (s.ambient_dim() != sp.dim()) throw DimensionMismatch("is_isotropic: dimension mismatch");
  if (s.dim() == 0) return true;
  return gram_of(s.basis(), sp).is_zero();
}

bool is_lagrangian(const Subspace& s, const SymplecticSpace& sp) {
  return 2 * s.dim() == sp.dim() && is_isotropic(s, sp);
}

bool is_symplectic_subspace(const Subspace& s, const SymplecticSpace& sp) {
  if (s.ambient_dim() != sp.dim()) throw DimensionMismatch("is_symplectic_subspace: dimension mismatch");
  if (s.dim() == 0) return true;
  return rank(gram_of(s.basis(), sp)) == s.dim();
}

Restriction restrict_to_basis(std::span<const ExactMatrix> gens, const ExactMatrix& basis,
                              const SymplecticSpace& sp) {
  if (basis.rows() != sp.dim()) throw DimensionMismatch("restrict: basis has wrong ambient dimension");
  std::size_t k = basis.cols();
  if (rank(basis) != k) throw InvalidArgument("restrict: basis vectors are dependent");
  Restriction out;
  out.basis = basis;
  for (const auto& g : gens) {
    if (g.rows() != sp.dim() || g.cols() != sp.dim()) throw DimensionMismatch("restrict: generator of wrong size");
    ExactMatrix img = g * basis;
    ExactMatrix a;
    try {
      a = solve(basis, img);
    } catch (const InvalidArgument&) {
      throw NotInvariant("restrict: subspace is not invariant under a generator");
    }
    if (!(basis * a == img)) throw NotInvariant("restrict: subspace is not invariant under a generator");
    out.gens.push_back(std::move(a));
  }
  out.form = basis.transpose() * sp.form() * basis;
  if (rank(out.form) != k) throw DegenerateForm("restrict: form is degenerate on the subspace");
  return out;
}

Restriction restrict_to(std::span<const ExactMatrix> gens, const Subspace& w, const SymplecticSpace& sp) {
  if (w.ambient_dim() != sp.dim()) throw DimensionMismatch("restrict: dimension mismatch");
  if (w.dim() == 0) throw DegenerateForm("restrict: zero subspace");
  return restrict_to_basis(gens, w.basis_columns(), sp);
}

SymplecticBasis symplectic_basis(const ExactMatrix& gram) {
  if (!gram.is_square()) throw InvalidArgument("symplectic_basis: gram must be square");
  if (!(gram.transpose() == -gram)) throw InvalidArgument("symplectic_basis: gram must be antisymmetric");
  std::size_t k = gram.rows();
  if (k % 2 != 0 || rank(gram) != k) throw DegenerateForm("symplectic_basis: gram is degenerate");
  auto w = [&gram](const ExactVector& x, const ExactVector& y) { return dot(x, gram * y); };

  std::vector<ExactVector> pool;
  for (std::size_t i = 0; i < k; ++i) pool.push_back(ExactVector::unit(k, i));
  std::vector<ExactVector> es, fs;
  Cyclotomic c;
  while (!pool.empty()) {
    ExactVector e = pool.front();
    pool.erase(pool.begin());
    std::size_t fi = pool.size();
    Cyclotomic a;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      a = w(e, pool[i]);
      if (!a.is_zero()) {
        fi = i;
        break;
      }
    }
    // Nondegeneracy of the (projected) form guarantees a partner.
    if (fi == pool.size()) throw DegenerateForm("symplectic_basis: no partner found");
    ExactVector f = pool[fi];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(fi));
    if (es.empty()) {
      c = a;
    } else if (!(a == c)) {
      f = (c / a) * f;
      a = c;
    }
    Cyclotomic ainv = a.inverse();
    for (auto& v : pool) {
      Cyclotomic alpha = -(w(v, f) * ainv);
      Cyclotomic beta = w(v, e) * ainv;
      if (!alpha.is_zero()) v += alpha * e;
      if (!beta.is_zero()) v += beta * f;
    }
    es.push_back(std::move(e));
    fs.push_back(std::move(f));
  }
  std::vector<ExactVector> cols = es;
  cols.insert(cols.end(), fs.begin(), fs.end());
  return {ExactMatrix::from_columns(cols), c};
}

Subspace spin(const ExactVector& seed, std::span<const ExactMatrix> gens) {
  std::size_t n = seed.size();
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw DimensionMismatch("spin: generator of wrong size");
  EchelonBasis eb(n);
  if (!eb.add(seed)) return Subspace(n);
  std::vector<ExactVector> queue{seed};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& g : gens) {
      ExactVector img = g * queue[q];
      if (eb.add(img)) queue.push_back(std::move(img));
    }
  }
  return eb.subspace();
}

std::optional<Subspace> find_invariant_lagrangian(std::span<const ExactMatrix> gens, const SymplecticSpace& sp,
                                                  std::span<const ExactVector> extra, std::uint64_t seed,
                                                  std::size_t random_tries) {
  const std::size_t n = sp.dim();
  auto attempt = [&](const ExactVector& v) -> std::optional<Subspace> {
    if (v.size() != n) throw DimensionMismatch("find_invariant_lagrangian: vector of wrong size");
    Subspace s = spin(v, gens);
    if (s.dim() == n / 2 && is_isotropic(s, sp)) return s;
    return std::nullopt;
  };
  for (const auto& v : extra)
    if (auto s = attempt(v)) return s;
  for (std::size_t i = 0; i < n; ++i)
    if (auto s = attempt(ExactVector::unit(n, i))) return s;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t t = 0; t < random_tries; ++t) {
    ExactVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Cyclotomic(coeff(rng));
    if (auto s = attempt(v)) return s;
  }
  return std::nullopt;
}

} // namespace symparab
