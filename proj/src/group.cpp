#include "tsq/group.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace tsq {

namespace {

constexpr std::uint64_t kSampleSeed = 0xC0FFEE;
constexpr std::size_t kFullAssociativityLimit = 64;
constexpr std::size_t kSampledTriples = 10'000;

// Incremental subgroup closure: elements reachable from the identity by
// right multiplication with the accumulated generators.
class Closure {
 public:
  explicit Closure(GroupTable const& g) : g_(g), in_(g.order(), 0), elements_{0} { in_[0] = 1; }

  bool contains(Elem x) const { return in_[x] != 0; }
  std::size_t size() const { return elements_.size(); }
  std::vector<Elem> const& generators() const { return gens_; }

  // Returns true when x was new.
  bool add(Elem x) {
    if (in_[x]) return false;
    gens_.push_back(x);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      Elem const e = elements_[i];
      for (Elem t : gens_) {
        Elem y = g_.mul(e, t);
        if (!in_[y]) {
          in_[y] = 1;
          elements_.push_back(y);
        }
      }
    }
    return true;
  }

  std::vector<Elem> sorted() const {
    auto v = elements_;
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  GroupTable const& g_;
  std::vector<char> in_;
  std::vector<Elem> elements_;
  std::vector<Elem> gens_;
};

std::vector<std::uint64_t> all_orders(GroupTable const& g) {
  std::vector<std::uint64_t> out(g.order());
  for (Elem x = 0; x < g.order(); ++x) out[x] = g.element_order(x);
  return out;
}

std::vector<Elem> greedy_generators(GroupTable const& g, std::vector<Elem> candidates) {
  auto const orders = all_orders(g);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](Elem x, Elem y) { return orders[x] > orders[y]; });
  Closure c(g);
  std::size_t const target = candidates.size();
  for (Elem x : candidates) {
    if (c.size() >= target) break;
    c.add(x);
  }
  return c.generators();
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupTable

GroupTable::GroupTable(std::size_t order, std::vector<Elem> table, std::vector<Elem> generators,
                       std::string name)
    : n_(order), table_(std::move(table)), generators_(std::move(generators)),
      name_(std::move(name)) {
  validate();
}

void GroupTable::validate() {
  if (n_ == 0) throw GroupError("group order must be positive");
  if (table_.size() != n_ * n_) throw GroupError("table size is not order x order");
  for (Elem v : table_)
    if (v >= n_) throw GroupError("table entry out of range");
  for (Elem x = 0; x < n_; ++x)
    if (mul(0, x) != x || mul(x, 0) != x) throw GroupError("index 0 is not a two-sided identity");

  // Latin square: every row and column a permutation.
  std::vector<std::uint32_t> seen(n_, 0);
  std::uint32_t stamp = 0;
  for (Elem x = 0; x < n_; ++x) {
    ++stamp;
    for (Elem y = 0; y < n_; ++y) {
      Elem v = mul(x, y);
      if (seen[v] == stamp) throw GroupError("row " + std::to_string(x) + " repeats an entry");
      seen[v] = stamp;
    }
  }
  std::fill(seen.begin(), seen.end(), 0);
  stamp = 0;
  for (Elem y = 0; y < n_; ++y) {
    ++stamp;
    for (Elem x = 0; x < n_; ++x) {
      Elem v = mul(x, y);
      if (seen[v] == stamp) throw GroupError("column " + std::to_string(y) + " repeats an entry");
      seen[v] = stamp;
    }
  }

  inverse_.assign(n_, 0);
  for (Elem x = 0; x < n_; ++x)
    for (Elem y = 0; y < n_; ++y)
      if (mul(x, y) == 0) {
        inverse_[x] = y;
        break;
      }
  for (Elem x = 0; x < n_; ++x)
    if (mul(inverse_[x], x) != 0) throw GroupError("left and right inverses differ");

  if (n_ <= kFullAssociativityLimit) {
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b)
        for (Elem c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw GroupError("table is not associative");
  } else {
    std::mt19937_64 rng(kSampleSeed);
    std::uniform_int_distribution<Elem> pick(0, Elem(n_ - 1));
    for (std::size_t i = 0; i < kSampledTriples; ++i) {
      Elem a = pick(rng), b = pick(rng), c = pick(rng);
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw GroupError("table is not associative");
    }
  }

  for (Elem s : generators_)
    if (s >= n_) throw GroupError("generator index out of range");
  Closure c(*this);
  for (Elem s : generators_) c.add(s);
  if (c.size() != n_) throw GroupError("generators do not generate the group");
}

Elem GroupTable::pow(Elem a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem result = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint64_t GroupTable::element_order(Elem a) const {
  std::uint64_t k = 1;
  Elem x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool GroupTable::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (mul(generators_[i], generators_[j]) != mul(generators_[j], generators_[i])) return false;
  return true;
}

bool Subgroup::contains(Elem x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

// ---------------------------------------------------------------------------
// constructors

GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic_group: n must be positive");
  std::vector<Elem> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = Elem((i + j) % n);
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return GroupTable(n, std::move(t), std::move(gens), "Z" + std::to_string(n));
}

GroupTable direct_product(GroupTable const& a, GroupTable const& b) {
  std::size_t const na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x * n + y] = Elem(a.mul(Elem(x / nb), Elem(y / nb)) * nb + b.mul(Elem(x % nb), Elem(y % nb)));
  std::vector<Elem> gens;
  for (Elem s : a.generators()) gens.push_back(Elem(s * nb));
  for (Elem s : b.generators()) gens.push_back(s);
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + " x " + b.name();
  return GroupTable(n, std::move(t), std::move(gens), std::move(name));
}

std::vector<Elem> automorphism_from_generators(GroupTable const& n, std::span<const Elem> images) {
  auto const& gens = n.generators();
  if (images.size() != gens.size())
    throw GroupError("automorphism: one image per generator required");
  std::vector<Elem> phi(n.order(), Elem(-1));
  std::vector<char> used(n.order(), 0);
  phi[0] = 0;
  used[0] = 1;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elem x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = n.mul(x, gens[k]);
      Elem v = n.mul(phi[x], images[k]);
      if (phi[y] == Elem(-1)) {
        if (used[v]) throw GroupError("generator images do not define an injective map");
        phi[y] = v;
        used[v] = 1;
        queue.push_back(y);
      } else if (phi[y] != v) {
        throw GroupError("generator images do not define a homomorphism");
      }
    }
  }
  return phi;
}

Action action_from_generators(GroupTable const& normal, GroupTable const& complement,
                              std::vector<std::vector<Elem>> const& generator_images) {
  auto const& hg = complement.generators();
  if (generator_images.size() != hg.size())
    throw GroupError("action: one automorphism per complement generator required");
  std::vector<std::vector<Elem>> gen_aut;
  for (auto const& imgs : generator_images)
    gen_aut.push_back(automorphism_from_generators(normal, imgs));

  std::size_t const nn = normal.order();
  Action act(complement.order());
  act[0].resize(nn);
  std::iota(act[0].begin(), act[0].end(), Elem(0));
  std::vector<Elem> queue{0};
  auto compose = [&](std::vector<Elem> const& f, std::vector<Elem> const& g) {
    std::vector<Elem> out(nn);
    for (std::size_t x = 0; x < nn; ++x) out[x] = f[g[x]];
    return out;
  };
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elem h = queue[i];
    for (std::size_t k = 0; k < hg.size(); ++k) {
      Elem h2 = complement.mul(h, hg[k]);
      auto candidate = compose(act[h], gen_aut[k]);
      if (act[h2].empty()) {
        act[h2] = std::move(candidate);
        queue.push_back(h2);
      } else if (act[h2] != candidate) {
        throw GroupError("action is not a homomorphism into Aut(N)");
      }
    }
  }
  return act;
}

GroupTable semidirect_product(GroupTable const& normal, GroupTable const& complement,
                              Action const& action) {
  std::size_t const nn = normal.order(), nh = complement.order(), n = nn * nh;
  if (action.size() != nh) throw GroupError("action: one automorphism per complement element");
  for (auto const& a : action) {
    if (a.size() != nn) throw GroupError("action: automorphism has wrong length");
    Homomorphism h{a};
    std::vector<Elem> img = a;
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end())
      throw GroupError("action: image is not a bijection of N");
    if (!is_homomorphism(normal, normal, h)) throw GroupError("action: image is not an automorphism");
  }
  for (Elem h1 = 0; h1 < nh; ++h1)
    for (Elem h2 = 0; h2 < nh; ++h2) {
      auto const& lhs = action[complement.mul(h1, h2)];
      for (Elem x = 0; x < nn; ++x)
        if (lhs[x] != action[h1][action[h2][x]])
          throw GroupError("action is not a homomorphism into Aut(N)");
    }
  // element (x, h) is stored at h * |N| + x
  std::vector<Elem> t(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    Elem x1 = Elem(p % nn), h1 = Elem(p / nn);
    for (std::size_t q = 0; q < n; ++q) {
      Elem x2 = Elem(q % nn), h2 = Elem(q / nn);
      t[p * n + q] = Elem(complement.mul(h1, h2) * nn + normal.mul(x1, action[h1][x2]));
    }
  }
  std::vector<Elem> gens;
  for (Elem s : normal.generators()) gens.push_back(s);
  for (Elem s : complement.generators()) gens.push_back(Elem(s * nn));
  std::string name;
  if (!normal.name().empty() && !complement.name().empty())
    name = "(" + normal.name() + ") : " + complement.name();
  return GroupTable(n, std::move(t), std::move(gens), std::move(name));
}

GroupTable dihedral_group(std::size_t n) {
  auto rot = cyclic_group(n);
  auto flip = cyclic_group(2);
  std::vector<Elem> inversion(n);
  for (std::size_t i = 0; i < n; ++i) inversion[i] = Elem((n - i) % n);
  std::vector<Elem> identity(n);
  std::iota(identity.begin(), identity.end(), Elem(0));
  auto g = semidirect_product(rot, flip, {identity, inversion});
  g.set_name("D" + std::to_string(2 * n));
  return g;
}

GroupTable quaternion_group() {
  // index 2u + s encodes (-1)^s * unit[u], units 1, i, j, k
  static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<Elem> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u = x / 2, v = y / 2;
      int s = (x % 2 + y % 2 + unit_sign[u][v]) % 2;
      t[x * 8 + y] = Elem(2 * unit_mul[u][v] + s);
    }
  return GroupTable(8, std::move(t), {2, 4}, "Q8");
}

GroupTable alternating_group_4() {
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  auto z3 = cyclic_group(3);
  // rotate the three involutions 1 -> 2 -> 3 -> 1; generators of V4 are 2 and 1
  std::vector<Elem> rot = {0, 2, 3, 1};
  auto act = action_from_generators(v4, z3, {{rot[2], rot[1]}});
  auto g = semidirect_product(v4, z3, act);
  g.set_name("A4");
  return g;
}

GroupTable extraspecial_group(std::uint64_t q, std::uint64_t exp) {
  if (!is_prime(q)) throw std::invalid_argument("extraspecial_group: q must be prime");
  if (exp == q * q) {
    auto base = cyclic_group(q * q);
    std::vector<Elem> img = {Elem(1 + q)};
    auto act = action_from_generators(base, cyclic_group(q), {img});
    auto g = semidirect_product(base, cyclic_group(q), act);
    g.set_name(q == 2 ? "D8" : "ES(" + std::to_string(q * q * q) + ",exp" + std::to_string(exp) + ")");
    return g;
  }
  if (exp == q && q != 2) {
    auto base = direct_product(cyclic_group(q), cyclic_group(q));
    // (a, b) -> (a, a + b); base generators are (1,0) = q and (0,1) = 1
    std::vector<Elem> img = {Elem(q + 1), Elem(1)};
    auto act = action_from_generators(base, cyclic_group(q), {img});
    auto g = semidirect_product(base, cyclic_group(q), act);
    g.set_name("ES(" + std::to_string(q * q * q) + ",exp" + std::to_string(exp) + ")");
    return g;
  }
  throw std::invalid_argument("extraspecial_group: exponent must be q (odd q) or q^2");
}

GroupTable read_cayley_table(std::istream& in) {
  std::vector<long long> numbers;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long v;
    while (ls >> v) numbers.push_back(v);
    if (!ls.eof()) throw GroupError("cayley table: bad token on line " + std::to_string(lineno));
  }
  if (numbers.empty()) throw GroupError("cayley table: missing order line");
  if (numbers[0] <= 0) throw GroupError("cayley table: order must be positive");
  std::size_t const n = std::size_t(numbers[0]);
  if (numbers.size() != 1 + n * n)
    throw GroupError("cayley table: expected " + std::to_string(n * n) + " entries, got " +
                     std::to_string(numbers.size() - 1));
  std::vector<Elem> t(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    long long v = numbers[i + 1];
    if (v < 0 || std::size_t(v) >= n) throw GroupError("cayley table: entry out of range");
    t[i] = Elem(v);
  }
  std::vector<Elem> all(n);
  std::iota(all.begin(), all.end(), Elem(0));
  GroupTable full(n, t, all);
  return GroupTable(n, std::move(t), small_generating_set(full));
}

void write_cayley_table(std::ostream& out, GroupTable const& g) {
  out << "# " << (g.name().empty() ? "group" : g.name()) << "\n" << g.order() << "\n";
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem y = 0; y < g.order(); ++y) out << (y ? " " : "") << g.mul(x, y);
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// subgroups

bool is_normal_subset(GroupTable const& g, std::span<const Elem> sorted_elements) {
  for (Elem s : g.generators())
    for (Elem x : sorted_elements)
      if (!std::binary_search(sorted_elements.begin(), sorted_elements.end(), g.conjugate(s, x)))
        return false;
  return true;
}

Subgroup subgroup_generated(GroupTable const& g, std::span<const Elem> seeds) {
  Closure c(g);
  for (Elem s : seeds) {
    if (s >= g.order()) throw GroupError("subgroup_generated: seed out of range");
    c.add(s);
  }
  Subgroup h{c.sorted(), false};
  h.is_normal = is_normal_subset(g, h.elements);
  return h;
}

Subgroup normal_closure(GroupTable const& g, std::span<const Elem> seeds) {
  Closure c(g);
  for (Elem s : seeds) c.add(s);
  for (std::size_t i = 0; i < c.generators().size(); ++i) {
    Elem h = c.generators()[i];
    for (Elem s : g.generators()) c.add(g.conjugate(s, h));
  }
  return {c.sorted(), true};
}

Subgroup derived_subgroup(GroupTable const& g) {
  std::vector<Elem> seeds;
  auto const& gens = g.generators();
  for (Elem a : gens)
    for (Elem b : gens) seeds.push_back(g.commutator(a, b));
  return normal_closure(g, seeds);
}

Subgroup center(GroupTable const& g) {
  Subgroup z;
  z.is_normal = true;
  for (Elem x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Elem s : g.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central) z.elements.push_back(x);
  }
  return z;
}

Subgroup trivial_subgroup() { return {{0}, true}; }

Subgroup whole_group(GroupTable const& g) {
  Subgroup h{std::vector<Elem>(g.order()), true};
  std::iota(h.elements.begin(), h.elements.end(), Elem(0));
  return h;
}

Quotient quotient(GroupTable const& g, Subgroup const& n) {
  if (!is_normal_subset(g, n.elements)) throw GroupError("quotient: subgroup is not normal");
  std::size_t const order = g.order();
  std::vector<Elem> label(order, Elem(-1));
  std::vector<Elem> reps;
  for (Elem x = 0; x < order; ++x) {
    if (label[x] != Elem(-1)) continue;
    Elem id = Elem(reps.size());
    reps.push_back(x);
    for (Elem h : n.elements) label[g.mul(x, h)] = id;
  }
  std::size_t const m = reps.size();
  std::vector<Elem> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i * m + j] = label[g.mul(reps[i], reps[j])];
  std::vector<Elem> gens;
  for (Elem s : g.generators())
    if (label[s] != 0 && std::find(gens.begin(), gens.end(), label[s]) == gens.end())
      gens.push_back(label[s]);
  return {GroupTable(m, std::move(t), std::move(gens)), Homomorphism{std::move(label)}};
}

FiniteAbelianGroup abelian_invariants(GroupTable const& g) {
  if (!g.is_abelian()) throw GroupError("abelian_invariants: group is not abelian");
  auto const orders = all_orders(g);
  std::vector<std::uint64_t> cyclic_orders;
  for (auto [p, e] : factorize(g.order())) {
    // s[k] = log_p #{x : x^(p^k) = 1} = sum_i min(k, e_i)
    std::vector<unsigned> s(e + 2, 0);
    std::uint64_t pk = 1;
    for (unsigned k = 0; k <= e + 1; ++k) {
      std::size_t count = 0;
      for (auto o : orders)
        if (pk % o == 0) ++count;
      unsigned lg = 0;
      while (count > 1) {
        count /= p;
        ++lg;
      }
      s[k] = lg;
      pk *= p;
    }
    for (unsigned k = 1; k <= e; ++k) {
      unsigned at_least_k = s[k] - s[k - 1];
      unsigned at_least_k1 = s[k + 1] - s[k];
      std::uint64_t q = 1;
      for (unsigned i = 0; i < k; ++i) q *= p;
      for (unsigned i = at_least_k1; i < at_least_k; ++i) cyclic_orders.push_back(q);
    }
  }
  return FiniteAbelianGroup::from_cyclic_orders(cyclic_orders);
}

Abelianization abelianization(GroupTable const& g) {
  auto q = quotient(g, derived_subgroup(g));
  auto inv = abelian_invariants(q.group);
  return {std::move(inv), std::move(q)};
}

std::uint64_t exponent(GroupTable const& g) {
  std::uint64_t e = 1;
  for (Elem x = 0; x < g.order(); ++x) e = lcm_u64(e, g.element_order(x));
  return e;
}

std::optional<Subgroup> normal_sylow(GroupTable const& g, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("normal_sylow: p is not prime");
  std::uint64_t n = g.order();
  if (n % p != 0) throw std::invalid_argument("normal_sylow: p does not divide the group order");
  std::uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  std::vector<Elem> elems;
  for (Elem x = 0; x < g.order(); ++x) {
    std::uint64_t o = g.element_order(x);
    while (o % p == 0) o /= p;
    if (o == 1) elems.push_back(x);
  }
  if (elems.size() != part) return std::nullopt;
  for (Elem a : elems)
    for (Elem b : elems)
      if (!std::binary_search(elems.begin(), elems.end(), g.mul(a, b))) return std::nullopt;
  return Subgroup{std::move(elems), true};
}

GroupTable subgroup_table(GroupTable const& g, Subgroup const& h, std::string name) {
  std::size_t const m = h.elements.size();
  std::vector<Elem> local(g.order(), Elem(-1));
  for (std::size_t i = 0; i < m; ++i) local[h.elements[i]] = Elem(i);
  std::vector<Elem> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Elem v = local[g.mul(h.elements[i], h.elements[j])];
      if (v == Elem(-1)) throw GroupError("subgroup_table: set is not closed");
      t[i * m + j] = v;
    }
  std::vector<Elem> gens;
  for (Elem x : greedy_generators(g, h.elements)) gens.push_back(local[x]);
  return GroupTable(m, std::move(t), std::move(gens), std::move(name));
}

std::vector<Elem> small_generating_set(GroupTable const& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem(0));
  return greedy_generators(g, std::move(all));
}

// ---------------------------------------------------------------------------
// homomorphisms

bool is_homomorphism(GroupTable const& source, GroupTable const& target, Homomorphism const& h,
                     std::size_t full_limit) {
  std::size_t const n = source.order();
  if (h.images.size() != n) return false;
  for (Elem v : h.images)
    if (v >= target.order()) return false;
  if (h.images[0] != 0) return false;
  if (n <= full_limit) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (h(source.mul(x, y)) != target.mul(h(x), h(y))) return false;
    return true;
  }
  std::mt19937_64 rng(kSampleSeed);
  std::uniform_int_distribution<Elem> pick(0, Elem(n - 1));
  for (std::size_t i = 0; i < kSampledTriples; ++i) {
    Elem x = pick(rng), y = pick(rng);
    if (h(source.mul(x, y)) != target.mul(h(x), h(y))) return false;
  }
  return true;
}

Subgroup kernel(GroupTable const& source, Homomorphism const& h) {
  Subgroup k;
  k.is_normal = true;
  for (Elem x = 0; x < source.order(); ++x)
    if (h(x) == 0) k.elements.push_back(x);
  return k;
}

std::vector<Elem> image_set(Homomorphism const& h) {
  std::vector<Elem> out = h.images;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// complements

std::optional<Subgroup> find_cyclic_complement(GroupTable const& g, Subgroup const& n) {
  if (g.order() % n.order() != 0) return std::nullopt;
  std::uint64_t const m = g.order() / n.order();
  if (m == 1) return trivial_subgroup();
  for (Elem x = 0; x < g.order(); ++x) {
    if (g.element_order(x) != m) continue;
    bool meets = false;
    Elem y = x;
    for (std::uint64_t k = 1; k < m && !meets; ++k, y = g.mul(y, x)) meets = n.contains(y);
    if (!meets) {
      Elem seed[] = {x};
      return subgroup_generated(g, seed);
    }
  }
  return std::nullopt;
}

ComplementResult find_complement(GroupTable const& g, Subgroup const& n) {
  if (!is_normal_subset(g, n.elements)) throw GroupError("find_complement: subgroup is not normal");
  std::size_t const m = g.order() / n.order();
  if (m == 1) return {SearchStatus::found, trivial_subgroup()};

  std::vector<char> in_n(g.order(), 0);
  for (Elem x : n.elements) in_n[x] = 1;

  struct Node {
    std::vector<Elem> gens;
    std::vector<Elem> elements;
  };
  std::set<std::vector<Elem>> seen;
  std::vector<Node> level{{{}, {0}}};
  constexpr int kMaxGenerators = 3;
  for (int depth = 1; depth <= kMaxGenerators; ++depth) {
    std::vector<Node> next;
    for (auto const& node : level) {
      std::vector<char> in_s(g.order(), 0);
      for (Elem x : node.elements) in_s[x] = 1;
      for (Elem x = 1; x < g.order(); ++x) {
        if (in_n[x] || in_s[x]) continue;
        Closure c(g);
        for (Elem s : node.gens) c.add(s);
        c.add(x);
        if (c.size() > m || m % c.size() != 0) continue;
        auto elems = c.sorted();
        bool meets = false;
        for (Elem e : elems)
          if (e != 0 && in_n[e]) {
            meets = true;
            break;
          }
        if (meets || !seen.insert(elems).second) continue;
        if (elems.size() == m) {
          Subgroup h{std::move(elems), false};
          h.is_normal = is_normal_subset(g, h.elements);
          return {SearchStatus::found, std::move(h)};
        }
        next.push_back({c.generators(), std::move(elems)});
      }
    }
    level = std::move(next);
    if (level.empty()) return {SearchStatus::absent, std::nullopt};
  }
  return {SearchStatus::bound_exceeded, std::nullopt};
}

// ---------------------------------------------------------------------------
// fingerprints and isomorphism

Fingerprint fingerprint(GroupTable const& g) {
  Fingerprint fp;
  fp.order = g.order();
  fp.exponent = 1;
  for (Elem x = 0; x < g.order(); ++x) {
    auto o = g.element_order(x);
    fp.exponent = lcm_u64(fp.exponent, o);
    ++fp.order_histogram[o];
  }
  fp.derived_order = derived_subgroup(g).order();
  fp.center_order = center(g).order();
  if (g.is_abelian()) fp.abelian_invariants = abelian_invariants(g);
  return fp;
}

namespace {

std::vector<std::uint64_t> element_classes(GroupTable const& g) {
  // (order, centralizer size) packed into one key
  std::vector<std::uint64_t> key(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    std::uint64_t cent = 0;
    for (Elem y = 0; y < g.order(); ++y)
      if (g.mul(x, y) == g.mul(y, x)) ++cent;
    key[x] = (g.element_order(x) << 32) | cent;
  }
  return key;
}

class IsoSearch {
 public:
  IsoSearch(GroupTable const& a, GroupTable const& b, std::uint64_t limit)
      : a_(a), b_(b), limit_(limit), gens_(small_generating_set(a)), images_(gens_.size()) {
    auto ka = element_classes(a);
    auto kb = element_classes(b);
    for (Elem s : gens_) {
      std::vector<Elem> cand;
      for (Elem y = 0; y < b.order(); ++y)
        if (kb[y] == ka[s]) cand.push_back(y);
      candidates_.push_back(std::move(cand));
    }
    phi_.resize(a.order());
    used_.resize(b.order());
  }

  IsoResult run() {
    IsoResult r;
    bool found = extend(0);
    r.nodes = nodes_;
    if (timed_out_) {
      r.verdict = IsoVerdict::timeout;
    } else if (found) {
      r.verdict = IsoVerdict::isomorphic;
      r.map = phi_;
    }
    return r;
  }

 private:
  bool consistent(std::size_t k) {
    std::fill(phi_.begin(), phi_.end(), Elem(-1));
    std::fill(used_.begin(), used_.end(), Elem(-1));
    phi_[0] = 0;
    used_[0] = 0;
    queue_.assign(1, 0);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      Elem x = queue_[i];
      for (std::size_t s = 0; s < k; ++s) {
        Elem y = a_.mul(x, gens_[s]);
        Elem v = b_.mul(phi_[x], images_[s]);
        if (phi_[y] == Elem(-1)) {
          if (used_[v] != Elem(-1)) return false;
          phi_[y] = v;
          used_[v] = y;
          queue_.push_back(y);
        } else if (phi_[y] != v) {
          return false;
        }
      }
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == gens_.size()) return consistent(k);
    for (Elem y : candidates_[k]) {
      if (++nodes_ > limit_) {
        timed_out_ = true;
        return false;
      }
      images_[k] = y;
      if (consistent(k + 1) && extend(k + 1)) return true;
      if (timed_out_) return false;
    }
    return false;
  }

  GroupTable const& a_;
  GroupTable const& b_;
  std::uint64_t limit_;
  std::vector<Elem> gens_;
  std::vector<Elem> images_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<Elem> phi_, used_, queue_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

IsoResult isomorphism(GroupTable const& a, GroupTable const& b, std::uint64_t node_limit) {
  if (a.order() != b.order()) return {};
  auto fa = fingerprint(a);
  if (fa != fingerprint(b)) return {};
  if (fa.abelian_invariants) return {IsoVerdict::isomorphic, 0, {}};
  return IsoSearch(a, b, node_limit).run();
}

bool is_isomorphic(GroupTable const& a, GroupTable const& b) {
  auto r = isomorphism(a, b);
  if (r.verdict == IsoVerdict::timeout) throw GroupError("is_isomorphic: search node limit reached");
  return r.verdict == IsoVerdict::isomorphic;
}

// ---------------------------------------------------------------------------
// structure recognition

std::string Structure::name() const {
  switch (kind) {
    case Kind::abelian:
      return abelian_part.name();
    case Kind::nonabelian_zoo:
      return abelian_part.is_trivial() ? nonabelian_factor
                                       : abelian_part.name() + " x " + nonabelian_factor;
    case Kind::unrecognized:
      break;
  }
  std::ostringstream os;
  os << "unrecognized(order=" << fp.order << ",exp=" << fp.exponent << ",derived=" << fp.derived_order
     << ",center=" << fp.center_order << ")";
  return os.str();
}

GroupTable abelian_group_table(FiniteAbelianGroup const& a) {
  GroupTable t = cyclic_group(1);
  bool first = true;
  for (auto d : a.invariants()) {
    t = first ? cyclic_group(d) : direct_product(t, cyclic_group(d));
    first = false;
  }
  t.set_name(a.name());
  return t;
}

Structure recognize_structure(GroupTable const& g) {
  Structure s;
  s.fp = fingerprint(g);
  if (s.fp.abelian_invariants) {
    s.kind = Structure::Kind::abelian;
    s.abelian_part = *s.fp.abelian_invariants;
    return s;
  }
  std::uint64_t const n = g.order();
  std::vector<GroupTable> zoo;
  if (n % 8 == 0) {
    zoo.push_back(quaternion_group());
    zoo.push_back(extraspecial_group(2, 4));
  }
  for (auto [q, e] : factorize(n)) {
    if (q == 2 || e < 3) continue;
    zoo.push_back(extraspecial_group(q, q));
    zoo.push_back(extraspecial_group(q, q * q));
  }
  for (auto const& h : zoo) {
    for (auto const& a : all_abelian_groups(n / h.order())) {
      auto candidate = a.is_trivial() ? h : direct_product(abelian_group_table(a), h);
      auto r = isomorphism(g, candidate);
      if (r.verdict == IsoVerdict::isomorphic) {
        s.kind = Structure::Kind::nonabelian_zoo;
        s.abelian_part = a;
        s.nonabelian_factor = h.name();
        return s;
      }
    }
  }
  return s;
}

}  // namespace tsq
