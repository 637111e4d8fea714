#include "thhkit/dga.hpp"

#include <algorithm>

#include "thhkit/errors.hpp"
#include "thhkit/parallel.hpp"

namespace thhkit {

DGA DGA::create(RingTable table, std::vector<Vec> differential, bool connective) {
  const std::size_t n = table.size();
  const Ring& ring = table.ring();
  if (differential.size() != n) throw MathError("InvalidDifferential", "differential must list every basis element");
  for (std::size_t i = 0; i < n; ++i) {
    Vec reduced;
    vec_axpy(reduced, differential[i], 1, ring);
    differential[i] = std::move(reduced);
    for (const auto& [k, c] : differential[i])
      if (k >= n || table.entry(k).degree != table.entry(i).degree - 1)
        throw MathError("InvalidDifferential", "d(" + table.entry(i).name + ") does not have degree " +
                                                   std::to_string(table.entry(i).degree - 1));
  }
  if (connective && table.min_degree() < 0)
    throw MathError("InvalidDifferential", "a connective DGA cannot have negative-degree basis elements");
  DGA x(std::move(table), std::move(differential), connective);
  const RingTable& t = x.table_;
  for (std::size_t i = 0; i < n; ++i) {
    Vec dd = x.apply_d(x.d_[i]);
    if (!dd.empty())
      throw MathError("DifferentialNotSquareZero", "d(d(" + t.entry(i).name + ")) = " + t.render(dd));
  }
  t.check();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec lhs = x.apply_d(t.product(i, j));
      Vec rhs = t.multiply(x.d_[i], t.basis_vector(j));
      const mpz_class sign = t.entry(i).degree % 2 != 0 ? -1 : 1;
      vec_axpy(rhs, t.multiply(t.basis_vector(i), x.d_[j]), sign, t.ring());
      if (lhs != rhs)
        throw MathError("LeibnizViolation", "d(" + t.entry(i).name + "*" + t.entry(j).name + ") = " + t.render(lhs) +
                                                " but the Leibniz rule gives " + t.render(rhs));
    }
  return x;
}

Vec DGA::apply_d(const Vec& v) const {
  Vec out;
  for (const auto& [i, c] : v) vec_axpy(out, d_[i], c, ring());
  return out;
}

Matrix DGA::differential_matrix(int n) const {
  auto src = table_.indices_of_degree(n);
  auto dst = table_.indices_of_degree(n - 1);
  Matrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c)
    for (const auto& [k, v] : d_[src[c]]) {
      auto pos = std::lower_bound(dst.begin(), dst.end(), k) - dst.begin();
      m(static_cast<std::size_t>(pos), c) = v;
    }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<mpz_class> local_coords(const Vec& v, const std::vector<std::size_t>& idx, bool& outside) {
  std::vector<mpz_class> out(idx.size(), 0);
  outside = false;
  for (const auto& [k, c] : v) {
    auto it = std::lower_bound(idx.begin(), idx.end(), k);
    if (it == idx.end() || *it != k) {
      outside = true;
      continue;
    }
    out[static_cast<std::size_t>(it - idx.begin())] = c;
  }
  return out;
}

Vec global_vec(const std::vector<mpz_class>& local, const std::vector<std::size_t>& idx, const Ring& ring) {
  Vec out;
  for (std::size_t i = 0; i < local.size(); ++i) {
    mpz_class c = ring.reduce(local[i]);
    if (c != 0) out.emplace(idx[i], c);
  }
  return out;
}

HomologyDegree field_degree(const DGA& x, int d, const std::vector<std::size_t>& idx) {
  const Ring& f = x.ring();
  HomologyDegree h;
  h.degree = d;
  Matrix md = x.differential_matrix(d);
  Matrix next = x.differential_matrix(d + 1);
  auto kernel = kernel_basis(md, f);
  Echelon img = row_reduce(next.transposed(), f);
  std::vector<std::vector<mpz_class>> chosen;
  for (std::size_t r = 0; r < img.rank(); ++r) {
    std::vector<mpz_class> row(idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) row[c] = img.rref(r, c);
    chosen.push_back(std::move(row));
  }
  const std::size_t boundaries = chosen.size();
  auto rank_of = [&](const std::vector<std::vector<mpz_class>>& rows) {
    Matrix m(rows.size(), idx.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = rows[r][c];
    return row_reduce(m, f).rank();
  };
  for (auto& k : kernel) {
    chosen.push_back(k);
    if (rank_of(chosen) < chosen.size()) {
      chosen.pop_back();
      continue;
    }
    h.representatives.push_back(global_vec(k, idx, f));
    h.orders.push_back(0);
  }
  h.dimension = chosen.size() - boundaries;
  h.group = FgAbelianGroup::free(h.dimension);
  h.spanning = Matrix(idx.size(), chosen.size());
  for (std::size_t c = 0; c < chosen.size(); ++c)
    for (std::size_t r = 0; r < idx.size(); ++r) h.spanning(r, c) = chosen[c][r];
  return h;
}

HomologyDegree integral_degree(const DGA& x, int d, const std::vector<std::size_t>& idx) {
  HomologyDegree h;
  h.degree = d;
  Matrix md = x.differential_matrix(d);
  Matrix next = x.differential_matrix(d + 1);
  SmithForm s1 = smith_normal_form(md);
  const std::size_t n = idx.size(), r = s1.rank, k = n - r;
  Matrix kernel_coords(k, n), kernel_basis_m(n, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < n; ++c) {
      kernel_coords(i, c) = s1.v_inv(r + i, c);
      kernel_basis_m(c, i) = s1.v(c, r + i);
    }
  Matrix a = kernel_coords * next;
  SmithForm s2 = smith_normal_form(a);
  std::vector<mpz_class> diag(k, 0);
  for (std::size_t i = 0; i < s2.rank; ++i) diag[i] = s2.d(i, i);
  for (std::size_t i = 0; i < k; ++i) {
    if (diag[i] == 1) continue;
    std::vector<mpz_class> gen(k);
    for (std::size_t j = 0; j < k; ++j) gen[j] = s2.u_inv(j, i);
    h.representatives.push_back(global_vec(kernel_basis_m.apply(gen), idx, x.ring()));
    h.orders.push_back(diag[i]);
  }
  h.group = FgAbelianGroup::from_cyclic(h.orders);
  h.dimension = h.group.free_rank();
  h.outgoing = std::move(md);
  h.kernel_coords = std::move(kernel_coords);
  h.quotient_u = std::move(s2.u);
  h.quotient_diag = std::move(diag);
  return h;
}

}  // namespace

const HomologyDegree* Homology::at(int degree) const {
  for (const auto& h : degrees_)
    if (h.degree == degree) return &h;
  return nullptr;
}

std::string Homology::value_string(int degree) const {
  const HomologyDegree* h = at(degree);
  if (!h) return "0";
  if (over_field()) return std::to_string(h->dimension);
  return h->group.to_string();
}

std::vector<mpz_class> Homology::project(int degree, const Vec& cycle) const {
  std::size_t pos = 0;
  while (pos < degrees_.size() && degrees_[pos].degree != degree) ++pos;
  if (pos == degrees_.size()) {
    if (cycle.empty()) return {};
    throw MathError("RepresentativeFailure", "no chains in degree " + std::to_string(degree));
  }
  const HomologyDegree& h = degrees_[pos];
  const auto& idx = indices_[pos];
  bool outside = false;
  auto z = local_coords(cycle, idx, outside);
  if (outside) throw MathError("RepresentativeFailure", "element is not homogeneous of degree " + std::to_string(degree));
  std::vector<mpz_class> out;
  if (over_field()) {
    auto sol = solve_linear(h.spanning, z, ring_);
    if (!sol) throw MathError("RepresentativeFailure", "element is not a cycle in degree " + std::to_string(degree));
    const std::size_t boundaries = h.spanning.cols() - h.representatives.size();
    for (std::size_t i = boundaries; i < h.spanning.cols(); ++i) out.push_back(sol->particular[i]);
    return out;
  }
  for (const auto& v : h.outgoing.apply(z))
    if (v != 0) throw MathError("RepresentativeFailure", "element is not a cycle in degree " + std::to_string(degree));
  auto y = h.quotient_u.apply(h.kernel_coords.apply(z));
  for (std::size_t i = 0; i < h.quotient_diag.size(); ++i) {
    const mpz_class& di = h.quotient_diag[i];
    if (di == 1) continue;
    mpz_class c = y[i];
    if (di > 1) mpz_fdiv_r(c.get_mpz_t(), y[i].get_mpz_t(), di.get_mpz_t());
    out.push_back(c);
  }
  return out;
}

Homology homology(const DGA& x) {
  const Ring& ring = x.ring();
  if (!ring.is_field() && !ring.is_integers())
    throw MathError("NotSupported", "homology over " + ring.name() + " (composite modulus) is not supported");
  const RingTable& t = x.table();
  std::vector<int> degrees;
  for (int d = t.min_degree(); d <= t.max_degree(); ++d) degrees.push_back(d);
  std::vector<HomologyDegree> out(degrees.size());
  std::vector<std::vector<std::size_t>> indices(degrees.size());
  parallel_for(degrees.size(), [&](std::size_t i) {
    indices[i] = t.indices_of_degree(degrees[i]);
    out[i] = ring.is_field() ? field_degree(x, degrees[i], indices[i]) : integral_degree(x, degrees[i], indices[i]);
  });
  return Homology(ring, std::move(out), std::move(indices));
}

RingTable homology_ring(const DGA& x) {
  Homology h = homology(x);
  const RingTable& t = x.table();
  const Ring& ring = x.ring();
  if (!ring.is_field()) {
    std::string bad;
    for (const auto& hd : h.degrees())
      if (!hd.group.is_free()) bad += (bad.empty() ? "" : ", ") + std::to_string(hd.degree);
    if (!bad.empty())
      throw MathError("TorsionInHomology", "homology ring over Z needs free homology; torsion in degrees " + bad);
  }
  std::vector<TableEntry> basis;
  std::vector<Vec> reps;
  std::vector<std::size_t> offset;
  for (const auto& hd : h.degrees()) {
    offset.push_back(basis.size());
    for (const auto& r : hd.representatives) {
      std::string name;
      if (r.size() == 1 && r.begin()->second == 1)
        name = t.entry(r.begin()->first).name;
      else
        name = "[" + t.render(r) + "]";
      basis.push_back({name, hd.degree});
      reps.push_back(r);
    }
  }
  auto to_table = [&](int degree, const Vec& v) {
    Vec out;
    if (v.empty()) return out;
    auto coords = h.project(degree, v);
    std::size_t pos = 0;
    while (h.degrees()[pos].degree != degree) ++pos;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) out.emplace(offset[pos] + i, coords[i]);
    return out;
  };
  const std::size_t n = basis.size();
  std::vector<std::vector<Vec>> products(n, std::vector<Vec>(n));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      int d = basis[i].degree + basis[j].degree;
      if (d > t.cap()) continue;
      products[i][j] = to_table(d, t.multiply(reps[i], reps[j]));
    }
  });
  RingTable out(ring, t.cap(), std::move(basis), std::move(products), to_table(0, t.unit()));
  out.check();
  return out;
}

DGA formal_dga(const RingTable& t) {
  if (t.min_degree() < 0) throw MathError("NotConnective", "formal DGA needs a nonnegatively graded table");
  t.check();
  return DGA::create(t, std::vector<Vec>(t.size()), true);
}

}  // namespace thhkit
