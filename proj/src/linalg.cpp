#include "thhkit/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "thhkit/errors.hpp"

namespace thhkit {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_entries(std::size_t rows, std::size_t cols,
                            const std::vector<std::tuple<std::size_t, std::size_t, mpz_class>>& entries) {
  Matrix m(rows, cols);
  for (const auto& [r, c, v] : entries) {
    if (r >= rows || c >= cols) throw MathError("ShapeMismatch", "matrix entry out of range");
    m(r, c) += v;
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw MathError("ShapeMismatch", "matrix product shapes differ");
  Matrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
}

Matrix Matrix::reduced(const Ring& ring) const {
  Matrix out = *this;
  for (auto& v : out.data_) v = ring.reduce(v);
  return out;
}

std::vector<mpz_class> Matrix::column(std::size_t c) const {
  std::vector<mpz_class> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<mpz_class> Matrix::apply(const std::vector<mpz_class>& v) const {
  if (v.size() != cols_) throw MathError("ShapeMismatch", "vector length differs from column count");
  std::vector<mpz_class> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void Matrix::add_row(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void Matrix::add_col(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void Matrix::scale_row(std::size_t r, const mpz_class& k) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= k;
}

void Matrix::scale_col(std::size_t c, const mpz_class& k) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) *= k;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct Transforms {
  bool track;
  Matrix u, v, u_inv, v_inv;
};

// Shared elimination loop; transforms are maintained only when tracked.
std::size_t smith_in_place(Matrix& a, Transforms& t) {
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t n = std::min(rows, cols);
  auto row_add = [&](std::size_t dst, std::size_t src, const mpz_class& k) {
    a.add_row(dst, src, k);
    if (t.track) {
      t.u.add_row(dst, src, k);
      t.u_inv.add_col(src, dst, -k);
    }
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const mpz_class& k) {
    a.add_col(dst, src, k);
    if (t.track) {
      t.v.add_col(dst, src, k);
      t.v_inv.add_row(src, dst, -k);
    }
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (t.track) {
      t.u.swap_rows(x, y);
      t.u_inv.swap_cols(x, y);
    }
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (t.track) {
      t.v.swap_cols(x, y);
      t.v_inv.swap_rows(x, y);
    }
  };

  std::size_t k = 0;
  for (; k < n; ++k) {
    // Smallest nonzero entry of the trailing block as pivot.
    bool found = false;
    std::size_t pr = k, pc = k;
    mpz_class best;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const mpz_class& x = a(i, j);
        if (x == 0) continue;
        mpz_class ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          pr = i;
          pc = j;
        }
      }
    if (!found) break;
    row_swap(k, pr);
    col_swap(k, pc);

    while (true) {
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a(i, k) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, k).get_mpz_t(), a(k, k).get_mpz_t());
        row_add(i, k, -q);
        if (a(i, k) != 0) {
          row_swap(i, k);
          clean = false;
        }
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a(k, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(k, j).get_mpz_t(), a(k, k).get_mpz_t());
        col_add(j, k, -q);
        if (a(k, j) != 0) {
          col_swap(j, k);
          clean = false;
        }
      }
      if (!clean) continue;
      // Column and row cleared: enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = k + 1; i < rows && divisible; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a(i, j) % a(k, k) != 0) {
            row_add(k, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(k, k) < 0) {
      a.scale_row(k, -1);
      if (t.track) {
        t.u.scale_row(k, -1);
        t.u_inv.scale_col(k, -1);
      }
    }
  }
  return k;
}

}  // namespace

std::vector<mpz_class> SmithForm::diagonal() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const Matrix& m) {
  Transforms t{true, Matrix::identity(m.rows()), Matrix::identity(m.cols()), Matrix::identity(m.rows()),
               Matrix::identity(m.cols())};
  Matrix a = m;
  std::size_t rank = smith_in_place(a, t);
  return SmithForm{std::move(a), std::move(t.u), std::move(t.v), std::move(t.u_inv), std::move(t.v_inv), rank};
}

std::vector<mpz_class> invariant_factors(Matrix m) {
  Transforms t{false, {}, {}, {}, {}};
  std::size_t rank = smith_in_place(m, t);
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(m(i, i));
  return out;
}

mpz_class determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw MathError("ShapeMismatch", "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Matrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Field elimination

Echelon row_reduce(const Matrix& m, const Ring& field) {
  if (!field.is_field()) throw MathError("NonFieldCoefficients", "row reduction needs a field, got " + field.name());
  Echelon e{m.reduced(field), {}};
  Matrix& a = e.rref;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(row, p);
    mpz_class inv = field.inverse(a(row, col));
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = field.mul(a(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      mpz_class f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = field.sub(a(i, j), f * a(row, j));
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::vector<std::vector<mpz_class>> kernel_basis(const Matrix& m, const Ring& field) {
  Echelon e = row_reduce(m, field);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<mpz_class>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpz_class> v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = field.neg(e.rref(r, f));
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<SolutionSet> solve_linear(const Matrix& m, const std::vector<mpz_class>& target, const Ring& field) {
  if (target.size() != m.rows()) throw MathError("ShapeMismatch", "target length differs from row count");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = target[i];
  }
  Echelon e = row_reduce(aug, field);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  SolutionSet s;
  s.particular.assign(m.cols(), 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular[e.pivots[r]] = e.rref(r, m.cols());
  s.kernel = kernel_basis(m, field);
  return s;
}

std::optional<Matrix> invert(const Matrix& m, const Ring& ring) {
  if (m.rows() != m.cols()) throw MathError("ShapeMismatch", "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  mpz_class det = determinant(m);
  if (!ring.is_unit(ring.reduce(det))) return std::nullopt;
  // Gauss-Jordan over Q; denominators divide det, which is a unit in ring.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    mpq_class inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& q = a[i][n + j];
      if (ring.is_integers()) {
        if (q.get_den() != 1) return std::nullopt;
        out(i, j) = q.get_num();
      } else {
        out(i, j) = ring.mul(q.get_num(), ring.inverse(q.get_den()));
      }
    }
  return out;
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  auto inv = [p](std::uint64_t a) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    auto& prow = rows[rank];
    const std::uint64_t s = inv(prow[c] % p);
    for (std::size_t j = c; j < cols; ++j) prow[j] = prow[j] % p * s % p;
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      std::uint64_t f = rows[i][c] % p;
      if (f == 0) continue;
      auto& r = rows[i];
      for (std::size_t j = c; j < cols; ++j) r[j] = (r[j] % p + (p - f) * prow[j]) % p;
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Abelian groups

FgAbelianGroup FgAbelianGroup::from_cyclic(const std::vector<mpz_class>& orders) {
  FgAbelianGroup g;
  std::vector<mpz_class> finite;
  for (const auto& o : orders) {
    mpz_class a = abs(o);
    if (a == 0)
      ++g.free_rank_;
    else if (a > 1)
      finite.push_back(a);
  }
  if (!finite.empty()) {
    Matrix diag(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) diag(i, i) = finite[i];
    for (auto& d : invariant_factors(diag))
      if (d > 1) g.torsion_.push_back(d);
  }
  return g;
}

FgAbelianGroup FgAbelianGroup::operator+(const FgAbelianGroup& o) const {
  std::vector<mpz_class> orders(free_rank_ + o.free_rank_, 0);
  orders.insert(orders.end(), torsion_.begin(), torsion_.end());
  orders.insert(orders.end(), o.torsion_.begin(), o.torsion_.end());
  return from_cyclic(orders);
}

std::string FgAbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  if (free_rank_ == 1) s = "Z";
  if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
  for (const auto& d : torsion_) s += (s.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
  return s;
}

FgAbelianGroup FgAbelianGroup::parse(const std::string& text) {
  std::vector<mpz_class> orders;
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  if (t == "0") return {};
  std::size_t pos = 0;
  auto bad = [&] { throw MathError("InvalidGroup", "cannot parse abelian group '" + text + "'"); };
  auto digits = [&](std::size_t& p) {
    std::size_t start = p;
    while (p < t.size() && std::isdigit(static_cast<unsigned char>(t[p]))) ++p;
    if (p == start) bad();
    return mpz_class(t.substr(start, p - start));
  };
  while (pos < t.size()) {
    if (t[pos] != 'Z') bad();
    ++pos;
    if (pos < t.size() && t[pos] == '^') {
      ++pos;
      mpz_class r = digits(pos);
      for (mpz_class i = 0; i < r; ++i) orders.push_back(0);
    } else if (pos < t.size() && t[pos] == '/') {
      ++pos;
      orders.push_back(digits(pos));
    } else {
      orders.push_back(0);
    }
    if (pos < t.size()) {
      if (t[pos] != '+') bad();
      ++pos;
      if (pos == t.size()) bad();
    }
  }
  return from_cyclic(orders);
}

namespace {
mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
}  // namespace

FgAbelianGroup tensor_fg(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<mpz_class> orders(a.free_rank() * b.free_rank(), 0);
  for (const auto& d : a.torsion())
    for (std::size_t i = 0; i < b.free_rank(); ++i) orders.push_back(d);
  for (const auto& e : b.torsion())
    for (std::size_t i = 0; i < a.free_rank(); ++i) orders.push_back(e);
  for (const auto& d : a.torsion())
    for (const auto& e : b.torsion()) orders.push_back(gcd(d, e));
  return FgAbelianGroup::from_cyclic(orders);
}

FgAbelianGroup tor_fg(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<mpz_class> orders;
  for (const auto& d : a.torsion())
    for (const auto& e : b.torsion()) orders.push_back(gcd(d, e));
  return FgAbelianGroup::from_cyclic(orders);
}

}  // namespace thhkit
