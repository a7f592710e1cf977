#include "tsq/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tsq {

// ---------------------------------------------------------------------------
// number theory

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::map<std::uint64_t, unsigned> factorize(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (auto const& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntegerMatrix: ragged rows");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntegerMatrix::append_row(std::span<const long long> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("IntegerMatrix: row width mismatch");
  for (long long v : row) data_.emplace_back(v);
  ++rows_;
}

IntegerMatrix IntegerMatrix::operator*(IntegerMatrix const& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntegerMatrix: dimension mismatch");
  IntegerMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Integer const& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Integer IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t const n = rows_;
  if (n == 0) return 1;
  IntegerMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithForm smith_normal_form(IntegerMatrix const& m) {
  std::size_t const nr = m.rows();
  std::size_t const nc = m.cols();
  IntegerMatrix a = m;
  IntegerMatrix left = IntegerMatrix::identity(nr);
  IntegerMatrix right = IntegerMatrix::identity(nc);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < nc; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < nr; ++c) std::swap(left(i, c), left(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < nr; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < nc; ++r) std::swap(right(r, i), right(r, j));
  };
  // row_dst -= q * row_src
  auto row_axpy = [&](std::size_t dst, std::size_t src, Integer const& q) {
    for (std::size_t c = 0; c < nc; ++c)
      if (a(src, c) != 0) a(dst, c) -= q * a(src, c);
    for (std::size_t c = 0; c < nr; ++c)
      if (left(src, c) != 0) left(dst, c) -= q * left(src, c);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, Integer const& q) {
    for (std::size_t r = 0; r < nr; ++r)
      if (a(r, src) != 0) a(r, dst) -= q * a(r, src);
    for (std::size_t r = 0; r < nc; ++r)
      if (right(r, src) != 0) right(r, dst) -= q * right(r, src);
  };

  std::size_t const steps = std::min(nr, nc);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    bool exhausted = false;
    while (true) {
      // smallest nonzero |entry| in the trailing block, first in row-major order
      std::size_t pi = nr, pj = nc;
      Integer best;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j) {
          Integer const& v = a(i, j);
          if (v == 0) continue;
          Integer av = abs(v);
          if (pi == nr || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (pi == nr) {
        exhausted = true;
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        row_axpy(i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        col_axpy(j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < nr && divisible; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_axpy(t, i, Integer(-1));  // row_t += row_i
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (exhausted) break;
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < nc; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < nr; ++c) left(t, c) = -left(t, c);
    }
  }

  SmithForm out;
  out.diagonal.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal[i] = a(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup FiniteAbelianGroup::from_invariants(std::vector<std::uint64_t> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
    if (i > 0 && factors[i] % factors[i - 1] != 0)
      throw std::invalid_argument("invariant factors must form a divisibility chain");
  }
  FiniteAbelianGroup g;
  g.factors_ = std::move(factors);
  return g;
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(std::span<const std::uint64_t> orders) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> powers;
  for (std::uint64_t o : orders) {
    if (o == 0) throw std::invalid_argument("cyclic order 0 is not finite");
    for (auto [p, e] : factorize(o)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      powers[p].push_back(q);
    }
  }
  std::size_t width = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.rbegin(), v.rend());
    width = std::max(width, v.size());
  }
  std::vector<std::uint64_t> factors(width, 1);
  for (auto const& [p, v] : powers)
    for (std::size_t i = 0; i < v.size(); ++i) factors[i] *= v[i];
  std::reverse(factors.begin(), factors.end());
  return from_invariants(std::move(factors));
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(std::uint64_t n) {
  std::uint64_t o[] = {n};
  return from_cyclic_orders(o);
}

std::uint64_t FiniteAbelianGroup::order() const noexcept {
  std::uint64_t n = 1;
  for (auto d : factors_) n *= d;
  return n;
}

std::uint64_t FiniteAbelianGroup::exponent() const noexcept {
  return factors_.empty() ? 1 : factors_.back();
}

std::map<std::uint64_t, std::vector<unsigned>> FiniteAbelianGroup::primary_decomposition() const {
  std::map<std::uint64_t, std::vector<unsigned>> out;
  for (auto d : factors_)
    for (auto [p, e] : factorize(d)) out[p].push_back(e);
  // the chain is ascending, so each exponent list already is
  return out;
}

std::vector<std::uint64_t> FiniteAbelianGroup::elementary_divisors() const {
  std::vector<std::uint64_t> out;
  for (auto d : factors_)
    for (auto [p, e] : factorize(d)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      out.push_back(q);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FiniteAbelianGroup::name() const {
  if (factors_.empty()) return "1";
  if (factors_.size() == 1) return "Z" + std::to_string(factors_[0]);

  // Split the top factor into the part sharing primes with the rest and a
  // coprime cyclic tail, so (Z2)^3 x Z10 reads as (Z2)^4 x Z5.
  std::uint64_t const shared = factors_[factors_.size() - 2];
  std::uint64_t top = factors_.back();
  std::uint64_t tail = 1;
  for (auto [p, e] : factorize(top)) {
    if (shared % p == 0) continue;
    for (unsigned i = 0; i < e; ++i) tail *= p;
  }
  std::vector<std::uint64_t> parts(factors_.begin(), factors_.end() - 1);
  parts.push_back(top / tail);

  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    if (!first) os << " x ";
    first = false;
    if (j - i > 1)
      os << "(Z" << parts[i] << ")^" << (j - i);
    else
      os << "Z" << parts[i];
    i = j;
  }
  if (tail > 1) os << " x Z" << tail;
  return os.str();
}

FiniteAbelianGroup direct_sum(FiniteAbelianGroup const& a, FiniteAbelianGroup const& b) {
  std::vector<std::uint64_t> all = a.invariants();
  all.insert(all.end(), b.invariants().begin(), b.invariants().end());
  return FiniteAbelianGroup::from_cyclic_orders(all);
}

// ---------------------------------------------------------------------------
// relation lattices

namespace {

// Row-echelon lattice basis built by unimodular gcd steps, one row at a time.
class LatticeBasis {
 public:
  explicit LatticeBasis(std::size_t n) : n_(n), rows_(n) {}

  void insert(std::vector<Integer> v) {
    if (full_rank_) {
      for (auto& x : v) {
        x %= det_;
        if (x < 0) x += det_;
      }
    }
    for (std::size_t c = 0; c < n_; ++c) {
      if (v[c] == 0) continue;
      auto& b = rows_[c];
      if (b.empty()) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        b = std::move(v);
        ++rank_;
        if (rank_ == n_) refresh_det();
        return;
      }
      if (v[c] % b[c] == 0) {
        Integer q = v[c] / b[c];
        for (std::size_t j = c; j < n_; ++j) v[j] -= q * b[j];
      } else {
        // g = s*b[c] + t*v[c]; new b = s*b + t*v, new v = (v[c]/g)*b - (b[c]/g)*v
        Integer s, t;
        Integer g = ext_gcd(b[c], v[c], s, t);
        Integer vb = v[c] / g, bb = b[c] / g;
        std::vector<Integer> nb(n_), nv(n_);
        for (std::size_t j = c; j < n_; ++j) {
          nb[j] = s * b[j] + t * v[j];
          nv[j] = vb * b[j] - bb * v[j];
        }
        if (nb[c] < 0)
          for (auto& x : nb) x = -x;
        b = std::move(nb);
        v = std::move(nv);
        if (full_rank_) refresh_det();
      }
      if (full_rank_) {
        for (auto& x : v) {
          x %= det_;
          if (x < 0) x += det_;
        }
      }
    }
  }

  std::size_t rank() const { return rank_; }

  IntegerMatrix matrix() const {
    IntegerMatrix m(rank_, n_);
    std::size_t r = 0;
    for (auto const& row : rows_) {
      if (row.empty()) continue;
      for (std::size_t j = 0; j < n_; ++j) m(r, j) = row[j];
      ++r;
    }
    return m;
  }

 private:
  static Integer ext_gcd(Integer a, Integer b, Integer& s, Integer& t) {
    Integer s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
      Integer q = a / b;
      Integer r = a - q * b;
      a = b;
      b = r;
      Integer ns = s0 - q * s1;
      s0 = s1;
      s1 = ns;
      Integer nt = t0 - q * t1;
      t0 = t1;
      t1 = nt;
    }
    if (a < 0) {
      a = -a;
      s0 = -s0;
      t0 = -t0;
    }
    s = s0;
    t = t0;
    return a;
  }

  void refresh_det() {
    full_rank_ = true;
    det_ = 1;
    for (std::size_t c = 0; c < n_; ++c) det_ *= rows_[c][c];
  }

  std::size_t n_;
  std::vector<std::vector<Integer>> rows_;  // rows_[c] has pivot in column c
  std::size_t rank_ = 0;
  bool full_rank_ = false;
  Integer det_ = 0;
};

FiniteAbelianGroup from_basis(std::size_t generators, LatticeBasis const& basis) {
  if (basis.rank() < generators)
    throw InfiniteQuotientError("relation lattice has rank " + std::to_string(basis.rank()) +
                                " < " + std::to_string(generators) +
                                "; the abelian quotient is infinite");
  if (generators == 0) return {};
  SmithForm snf = smith_normal_form(basis.matrix());
  std::vector<std::uint64_t> orders;
  for (auto const& d : snf.diagonal) {
    if (d == 0) throw InfiniteQuotientError("zero invariant factor");
    orders.push_back(static_cast<std::uint64_t>(d));
  }
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

}  // namespace

FiniteAbelianGroup abelian_from_relations(std::size_t generators, IntegerMatrix const& relations) {
  if (relations.rows() > 0 && relations.cols() != generators)
    throw std::invalid_argument("relation matrix width differs from generator count");
  LatticeBasis basis(generators);
  for (std::size_t i = 0; i < relations.rows(); ++i) {
    std::vector<Integer> v(generators);
    for (std::size_t j = 0; j < generators; ++j) v[j] = relations(i, j);
    basis.insert(std::move(v));
  }
  return from_basis(generators, basis);
}

FiniteAbelianGroup abelian_from_relations(std::size_t generators,
                                          std::vector<std::vector<long long>> const& rows) {
  LatticeBasis basis(generators);
  for (auto const& r : rows) {
    if (r.size() != generators)
      throw std::invalid_argument("relation row width differs from generator count");
    basis.insert(std::vector<Integer>(r.begin(), r.end()));
  }
  return from_basis(generators, basis);
}

// ---------------------------------------------------------------------------
// functors

FiniteAbelianGroup tensor_abelian(FiniteAbelianGroup const& a, FiniteAbelianGroup const& b) {
  std::vector<std::uint64_t> orders;
  for (auto d : a.invariants())
    for (auto e : b.invariants()) orders.push_back(gcd_u64(d, e));
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

FiniteAbelianGroup exterior_abelian(FiniteAbelianGroup const& a) {
  auto const& d = a.invariants();
  std::vector<std::uint64_t> orders;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) orders.push_back(gcd_u64(d[i], d[j]));
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

FiniteAbelianGroup gamma_whitehead(FiniteAbelianGroup const& a) {
  auto const& d = a.invariants();
  std::vector<std::uint64_t> orders;
  for (auto di : d) orders.push_back(di % 2 == 0 ? 2 * di : di);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) orders.push_back(gcd_u64(d[i], d[j]));
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

FiniteAbelianGroup gamma_oracle(FiniteAbelianGroup const& a) {
  std::uint64_t const n = a.order();
  if (n > kGammaOracleMaxOrder)
    throw std::invalid_argument("gamma_oracle: |A| = " + std::to_string(n) + " exceeds " +
                                std::to_string(kGammaOracleMaxOrder));
  auto const& d = a.invariants();
  // mixed-radix element coding
  auto add = [&](std::uint64_t x, std::uint64_t y) {
    std::uint64_t out = 0, scale = 1;
    for (auto di : d) {
      out += ((x % di + y % di) % di) * scale;
      x /= di;
      y /= di;
      scale *= di;
    }
    return out;
  };
  auto neg = [&](std::uint64_t x) {
    std::uint64_t out = 0, scale = 1;
    for (auto di : d) {
      out += ((di - x % di) % di) * scale;
      x /= di;
      scale *= di;
    }
    return out;
  };

  std::vector<std::vector<long long>> rows;
  std::vector<long long> row(n);
  auto flush = [&] {
    if (std::any_of(row.begin(), row.end(), [](long long v) { return v != 0; })) rows.push_back(row);
    std::fill(row.begin(), row.end(), 0);
  };
  for (std::uint64_t x = 0; x < n; ++x) {
    row[x] += 1;
    row[neg(x)] -= 1;
    flush();
  }
  // the cubic relation is symmetric in (x, y, z)
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = x; y < n; ++y)
      for (std::uint64_t z = y; z < n; ++z) {
        std::uint64_t xy = add(x, y), yz = add(y, z), zx = add(z, x);
        row[add(xy, z)] += 1;
        row[x] += 1;
        row[y] += 1;
        row[z] += 1;
        row[xy] -= 1;
        row[yz] -= 1;
        row[zx] -= 1;
        flush();
      }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return abelian_from_relations(n, rows);
}

std::vector<PrimeExponentSum> prime_exponent_sums(FiniteAbelianGroup const& a) {
  std::vector<PrimeExponentSum> out;
  for (auto const& [p, exps] : a.primary_decomposition()) {
    std::uint64_t const k = exps.size();
    std::uint64_t d = 0;
    for (std::uint64_t j = 1; j <= k; ++j) d += (k - j) * exps[j - 1];
    out.push_back({p, d, p != 2});
  }
  return out;
}

std::vector<FiniteAbelianGroup> all_abelian_groups(std::uint64_t order) {
  if (order == 0) throw std::invalid_argument("order must be positive");
  // partitions of each prime exponent
  auto partitions = [](unsigned n) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned left, unsigned maxpart) -> void {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (unsigned p = std::min(left, maxpart); p >= 1; --p) {
        cur.push_back(p);
        self(self, left - p, p);
        cur.pop_back();
      }
    };
    rec(rec, n, n);
    return out;
  };
  std::vector<std::vector<std::uint64_t>> acc{{}};
  for (auto [p, e] : factorize(order)) {
    std::vector<std::vector<std::uint64_t>> next;
    for (auto const& part : partitions(e))
      for (auto const& base : acc) {
        auto v = base;
        for (unsigned k : part) {
          std::uint64_t q = 1;
          for (unsigned i = 0; i < k; ++i) q *= p;
          v.push_back(q);
        }
        next.push_back(std::move(v));
      }
    acc = std::move(next);
  }
  std::vector<FiniteAbelianGroup> out;
  for (auto const& v : acc) out.push_back(FiniteAbelianGroup::from_cyclic_orders(v));
  return out;
}

}  // namespace tsq
