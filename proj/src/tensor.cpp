#include "tsq/tensor.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace tsq {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::not_applicable:
      return "not_applicable";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "fail";
}

CheckStatus check_status_from_string(std::string const& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "not_applicable") return CheckStatus::not_applicable;
  if (s == "skipped") return CheckStatus::skipped;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

bool TensorSquareReport::all_checks_pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](CheckResult const& c) { return c.status == CheckStatus::fail; });
}

namespace {

CheckResult verdict(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

std::string str(std::uint64_t v) { return std::to_string(v); }

Elem eval_word(GroupTable const& g, std::vector<Elem> const& images, Word const& w) {
  Elem x = 0;
  for (auto const& s : w.syllables()) x = g.mul(x, g.pow(images[s.gen], s.exp));
  return x;
}

std::vector<std::uint32_t> word_permutation(CosetTable const& t, Word const& w) {
  auto const letters = w.letters();
  std::vector<std::uint32_t> perm(t.size());
  for (std::uint32_t c = 0; c < t.size(); ++c) perm[c] = t.trace_letters(c, letters);
  return perm;
}

bool includes(Subgroup const& big, Subgroup const& small) {
  return std::includes(big.elements.begin(), big.elements.end(), small.elements.begin(),
                       small.elements.end());
}

std::uint64_t subgroup_exponent(GroupTable const& g, Subgroup const& h) {
  std::uint64_t e = 1;
  for (Elem x : h.elements) e = lcm_u64(e, g.element_order(x));
  return e;
}

// J2 / nabla as an abelian group, or nothing when the quotient is not
// abelian. nabla is intersected with J2 first so that a failed inclusion
// still yields a group to report.
std::optional<FiniteAbelianGroup> multiplier(GroupTable const& t, Subgroup const& j2, Subgroup const& nabla) {
  GroupTable jt = subgroup_table(t, j2);
  Subgroup local;
  local.is_normal = true;
  for (std::size_t i = 0; i < j2.elements.size(); ++i)
    if (nabla.contains(j2.elements[i])) local.elements.push_back(Elem(i));
  if (!is_normal_subset(jt, local.elements)) return std::nullopt;
  auto q = quotient(jt, local);
  if (!q.group.is_abelian()) return std::nullopt;
  return abelian_invariants(q.group);
}

// Breadth-first orbit of the subgroup coset under a growing list of
// permutations, with the spanning tree that names each orbit point.
struct Orbit {
  std::vector<std::uint32_t> points;
  std::vector<std::int32_t> pos;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via;

  explicit Orbit(std::size_t n) : pos(n, -1) { rebuild({}); }

  void rebuild(std::vector<std::vector<std::uint32_t>> const& perms) {
    for (auto p : points) pos[p] = -1;
    points.assign(1, 0);
    parent.assign(1, 0);
    via.assign(1, 0);
    pos[0] = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::uint32_t k = 0; k < perms.size(); ++k) {
        std::uint32_t q = perms[k][points[i]];
        if (pos[q] >= 0) continue;
        pos[q] = std::int32_t(points.size());
        points.push_back(q);
        parent.push_back(std::uint32_t(i));
        via.push_back(k);
      }
  }
};

}  // namespace

TensorSquareReport compute_tensor_square(Presentation const& p, TensorConfig const& config, std::string name) {
  if (p.generator_count() == 0) throw TensorEngineError("presentation has no generators");
  TensorSquareReport r;
  r.name = name.empty() ? p.to_string() : std::move(name);
  r.presentation = p;

  auto reg = regular_representation(p, config.enumeration);
  r.group = std::move(reg.group);
  r.element_words = std::move(reg.element_words);
  GroupTable const& g = r.group;
  std::size_t const n = g.order();
  std::vector<Elem> const gen_images = g.generators();
  if (gen_images.size() != p.generator_count())
    throw TensorEngineError("regular representation lost a generator");
  r.derived = derived_subgroup(g);
  r.abelianization = abelianization(g).invariants;

  NuPresentation const nu = nu_presentation(p);
  auto const copy2 = nu.second_copy_generators();
  auto en = enumerate(nu.presentation, copy2, config.enumeration);
  r.enumeration = en.stats;
  CosetTable const& cosets = en.table;
  std::size_t const index = cosets.size();

  auto symbol_word = [&](Elem a, Elem b) {
    return tensor_symbol(nu, r.element_words[a], r.element_words[b]);
  };

  // Every symbol as a point of the orbit; generators are added only when
  // their point is new, which keeps the list short.
  std::vector<std::uint32_t> points(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) points[a * n + b] = cosets.trace(0, symbol_word(a, b));

  Orbit orbit(index);
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::pair<Elem, Elem>> gen_pairs;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (orbit.pos[points[a * n + b]] >= 0) continue;
      perms.push_back(word_permutation(cosets, symbol_word(a, b)));
      gen_pairs.emplace_back(a, b);
      orbit.rebuild(perms);
    }
  r.tensor_generators = perms.size();

  std::size_t const m = orbit.points.size();
  r.checks.push_back(verdict("orbit_size", m * n == index,
                             "[nu:G^phi] = " + str(index) + ", |G| |T| = " + str(n) + " * " + str(m)));

  if (m * m > config.max_table_entries)
    throw ResourceLimitError("tensor square of order " + str(m) + " needs " + str(m * m) +
                             " table entries, over the budget of " + str(config.max_table_entries));

  // multiplication by the parent trick: point(t_i t_j) = point(t_i) . t_j
  std::vector<Elem> tab(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    tab[i * m] = Elem(i);
    for (std::size_t j = 1; j < m; ++j) {
      std::uint32_t const from = orbit.points[tab[i * m + orbit.parent[j]]];
      tab[i * m + j] = Elem(orbit.pos[perms[orbit.via[j]][from]]);
    }
  }
  for (std::size_t k = 0; k < perms.size(); ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        auto lhs = orbit.pos[perms[k][orbit.points[tab[i * m + j]]]];
        auto rhs = tab[i * m + std::size_t(orbit.pos[perms[k][orbit.points[j]]])];
        if (lhs < 0 || Elem(lhs) != rhs)
          throw TensorEngineError("tensor square: coset action is not regular on the orbit (generator " +
                                  str(k) + ", points " + str(i) + ", " + str(j) + ")");
      }
  std::vector<Elem> tgens;
  for (auto const& perm : perms) tgens.push_back(Elem(orbit.pos[perm[0]]));
  r.tensor_square = GroupTable(m, std::move(tab), std::move(tgens));
  GroupTable const& t = r.tensor_square;

  r.symbols.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) r.symbols[i] = Elem(orbit.pos[points[i]]);

  // kappa: x_i, x_i^phi -> x_i
  std::vector<Elem> nu_images = gen_images;
  nu_images.insert(nu_images.end(), gen_images.begin(), gen_images.end());
  for (auto const& rel : nu.presentation.relators())
    if (eval_word(g, nu_images, rel) != 0)
      throw TensorEngineError("kappa is not well defined: relator " + nu.presentation.word_to_string(rel) +
                              " maps to a nonidentity element");
  r.checks.push_back(verdict("kappa_well_defined", true,
                             str(nu.presentation.relators().size()) + " relators map to 1"));
  r.kappa.images.assign(m, 0);
  for (std::size_t j = 1; j < m; ++j) {
    auto [a, b] = gen_pairs[orbit.via[j]];
    r.kappa.images[j] = g.mul(r.kappa.images[orbit.parent[j]], g.commutator(a, b));
  }
  r.checks.push_back(verdict("kappa_homomorphism", is_homomorphism(t, g, r.kappa),
                             m <= 600 ? "all pairs" : "sampled pairs"));
  r.checks.push_back(verdict("kappa_image", image_set(r.kappa) == r.derived.elements,
                             "|image| = " + str(image_set(r.kappa).size()) + ", |G'| = " + str(r.derived.order())));

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<Elem> pick(0, Elem(n - 1));
  {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < config.kappa_pairs; ++i) {
      Elem a = pick(rng), b = pick(rng);
      if (r.kappa(r.symbol(a, b)) != g.commutator(a, b)) ++bad;
    }
    r.checks.push_back(verdict("kappa_on_symbols", bad == 0,
                               str(config.kappa_pairs - bad) + "/" + str(config.kappa_pairs) + " pairs"));
  }
  {
    std::size_t bad_left = 0, bad_right = 0;
    for (std::size_t i = 0; i < config.biderivation_triples; ++i) {
      Elem a = pick(rng), x = pick(rng), b = pick(rng);
      Elem const ca = g.conjugate(x, a), cb = g.conjugate(x, b);
      // (x a) (x) b = (xa (x) xb)(x (x) b)
      if (r.symbol(g.mul(x, a), b) != t.mul(r.symbol(ca, cb), r.symbol(x, b))) ++bad_left;
      // a (x) (x b) = (a (x) x)(xa (x) xb)
      if (r.symbol(a, g.mul(x, b)) != t.mul(r.symbol(a, x), r.symbol(ca, cb))) ++bad_right;
    }
    std::size_t const k = config.biderivation_triples;
    r.checks.push_back(verdict("biderivation_left", bad_left == 0, str(k - bad_left) + "/" + str(k) + " triples"));
    r.checks.push_back(verdict("biderivation_right", bad_right == 0, str(k - bad_right) + "/" + str(k) + " triples"));
  }

  if (config.nu_check_limit == 0 || n * n * m > config.nu_check_limit) {
    r.checks.push_back({"nu_order", CheckStatus::skipped,
                        "|G|^2 |T| = " + str(n * n * m) + " exceeds the check limit " + str(config.nu_check_limit)});
  } else {
    EnumerationConfig ec = config.enumeration;
    ec.max_live_cosets = std::max(ec.max_live_cosets, config.nu_check_limit);
    try {
      auto full = enumerate(nu.presentation, {}, ec);
      r.nu_enumeration = full.stats;
      r.nu_order = full.table.size();
      r.checks.push_back(verdict("nu_order", r.nu_order == n * n * m,
                                 "|nu(G)| = " + str(r.nu_order) + ", |G|^2 |T| = " + str(n * n * m)));
    } catch (CosetLimitError const& e) {
      r.checks.push_back({"nu_order", CheckStatus::skipped, e.what()});
    }
  }

  std::vector<Elem> diag;
  for (Elem a = 0; a < n; ++a) diag.push_back(r.symbol(a, a));
  r.nabla = subgroup_generated(t, diag);
  r.j2 = kernel(t, r.kappa);

  auto q = quotient(t, r.nabla);
  r.exterior_square = std::move(q.group);
  r.exterior_projection = std::move(q.projection);
  r.kappa_prime.images.assign(r.exterior_square.order(), Elem(-1));
  bool kp_ok = true;
  for (Elem x = 0; x < m; ++x) {
    Elem& slot = r.kappa_prime.images[r.exterior_projection(x)];
    if (slot == Elem(-1)) slot = r.kappa(x);
    else if (slot != r.kappa(x)) kp_ok = false;
  }
  r.checks.push_back(verdict("kappa_prime_well_defined", kp_ok, "kappa is constant on nabla-cosets"));

  auto mult = multiplier(t, r.j2, r.nabla);
  if (!mult) throw TensorEngineError("J2/nabla is not abelian");
  r.schur_multiplier = *mult;

  r.group_structure = recognize_structure(g);
  r.tensor_structure = recognize_structure(t);
  r.exterior_structure = recognize_structure(r.exterior_square);
  r.nabla_structure = recognize_structure(subgroup_table(t, r.nabla));
  r.j2_structure = recognize_structure(subgroup_table(t, r.j2));

  for (auto& c : diagram_invariants(r)) r.checks.push_back(std::move(c));
  r.checks.push_back(check_cyclic_complement_formula(r));
  r.checks.push_back(check_odd_abelianization_formula(r));
  for (auto& c : pi_and_exponent_checks(r)) r.checks.push_back(std::move(c));
  if (g.is_abelian()) {
    // Gamma(A) -> A (x) A is injective only for odd |A|; Z2 already has
    // Gamma = Z4 against Z2 (x) Z2 = Z2.
    auto const expect = gamma_whitehead(r.abelianization).order() * exterior_abelian(r.abelianization).order();
    bool const odd = g.order() % 2 == 1;
    r.checks.push_back(verdict("abelian_order", odd ? t.order() == expect : expect % t.order() == 0,
                               "|Gamma(A)| |A^A| = " + str(expect) + (odd ? " = " : " divisible by ") +
                                   "|T| = " + str(t.order())));
  }
  return r;
}

std::vector<CheckResult> diagram_invariants(TensorSquareReport const& r) {
  std::vector<CheckResult> out;
  GroupTable const& t = r.tensor_square;
  std::uint64_t const T = t.order(), N = r.nabla.order(), D = r.derived.order();

  out.push_back(verdict("diagram_a_nabla_in_j2", includes(r.j2, r.nabla),
                        "|nabla| = " + str(N) + ", |J2| = " + str(r.j2.order())));

  auto const mult = multiplier(t, r.j2, r.nabla);
  std::uint64_t const M = mult ? mult->order() : 0;
  out.push_back(verdict("diagram_b_multiplier_abelian", mult.has_value(),
                        mult ? "M(G) = " + mult->name() : "J2/nabla is not abelian"));

  out.push_back(verdict("diagram_c_orders", T == N * M * D,
                        "|T| = " + str(T) + ", |nabla| |M| |G'| = " + str(N) + " * " + str(M) + " * " + str(D)));

  bool d_ok = r.exterior_square.order() == M * D;
  std::string d_detail = "|G^G| = " + str(r.exterior_square.order()) + ", |M| |G'| = " + str(M * D);
  if (r.kappa_prime.images.size() == r.exterior_square.order()) {
    auto const ker = kernel(r.exterior_square, r.kappa_prime);
    auto const kt = subgroup_table(r.exterior_square, ker);
    bool const abelian = kt.is_abelian();
    d_ok = d_ok && abelian && mult && abelian_invariants(kt) == *mult;
    d_detail += abelian ? ", ker kappa' = " + abelian_invariants(kt).name() : ", ker kappa' is not abelian";
  } else {
    d_ok = false;
    d_detail += ", kappa' missing";
  }
  out.push_back(verdict("diagram_d_exterior", d_ok, d_detail));

  auto const gamma = gamma_whitehead(r.abelianization);
  std::uint64_t const en = subgroup_exponent(t, r.nabla);
  out.push_back(verdict("diagram_e_gamma_onto_nabla", gamma.order() % N == 0 && gamma.exponent() % en == 0,
                        "Gamma(G^ab) = " + gamma.name() + ", |nabla| = " + str(N) + ", exp(nabla) = " + str(en)));

  bool central = true;
  for (Elem z : r.j2.elements)
    for (Elem x = 0; x < T && central; ++x)
      if (t.mul(z, x) != t.mul(x, z)) central = false;
  out.push_back(verdict("j2_central", central, "|J2| = " + str(r.j2.order())));
  return out;
}

CheckResult check_cyclic_complement_formula(TensorSquareReport const& r) {
  std::string const name = "cyclic_complement_formula";
  auto const c = find_cyclic_complement(r.group, r.derived);
  if (!c) return {name, CheckStatus::not_applicable, "G' has no cyclic complement"};
  std::uint64_t const T = r.tensor_square.order();
  std::uint64_t const expect = r.group.order() * r.schur_multiplier.order();
  if (T != expect)
    return verdict(name, false, "|T| = " + str(T) + ", |G| |M| = " + str(expect));
  auto const target = direct_product(r.exterior_square, abelian_group_table(r.abelianization));
  auto const iso = isomorphism(r.tensor_square, target);
  if (iso.verdict == IsoVerdict::timeout)
    return verdict(name, false, "isomorphism search hit the node limit");
  return verdict(name, iso.verdict == IsoVerdict::isomorphic,
                 "|T| = |G| |M| = " + str(T) + "; T vs (G^G) x G^ab: " +
                     (iso.verdict == IsoVerdict::isomorphic ? "isomorphic" : "not isomorphic"));
}

CheckResult check_odd_abelianization_formula(TensorSquareReport const& r) {
  std::string const name = "odd_abelianization_formula";
  auto const sums = prime_exponent_sums(r.abelianization);
  std::uint64_t factor = 1;
  for (auto const& s : sums) {
    if (!s.applicable) return {name, CheckStatus::not_applicable, "2 divides |G^ab|"};
    for (std::uint64_t i = 0; i < s.d; ++i) factor *= s.prime;
  }
  std::uint64_t const expect = factor * r.group.order() * r.schur_multiplier.order();
  return verdict(name, r.tensor_square.order() == expect,
                 "prod p^d = " + str(factor) + ", |G| |M| prod p^d = " + str(expect) +
                     ", |T| = " + str(r.tensor_square.order()));
}

std::vector<CheckResult> pi_and_exponent_checks(TensorSquareReport const& r,
                                                std::optional<std::uint64_t> expected_exponent) {
  std::vector<CheckResult> out;
  GroupTable const& t = r.tensor_square;
  auto const ab = tensor_abelian(r.abelianization, r.abelianization);
  out.push_back(verdict("pi_divisibility", t.order() % ab.order() == 0,
                        "G^ab (x) G^ab = " + ab.name() + " (order " + str(ab.order()) + "), |T| = " + str(t.order())));
  if (r.group.is_abelian()) {
    bool const ok = t.is_abelian() && abelian_invariants(t) == ab;
    out.push_back(verdict("pi_isomorphism", ok, "abelian G: T = G (x) G as abelian groups"));
  }
  auto const dt = subgroup_table(r.group, r.derived);
  if (dt.is_abelian()) {
    auto const td = derived_subgroup(t);
    out.push_back(verdict("commutator_in_j2", includes(r.j2, td),
                          "|T'| = " + str(td.order()) + ", |J2| = " + str(r.j2.order())));
  } else {
    out.push_back({"commutator_in_j2", CheckStatus::not_applicable, "G' is not abelian"});
  }
  if (expected_exponent) {
    std::uint64_t const e = exponent(t);
    out.push_back(verdict("exponent", e == *expected_exponent,
                          "exp(T) = " + str(e) + ", expected " + str(*expected_exponent)));
  }
  return out;
}

CheckResult direct_product_cross_check(TensorSquareReport const& whole, TensorSquareReport const& a,
                                       TensorSquareReport const& b) {
  std::string const name = "direct_product_cross_check";
  auto const cross = tensor_abelian(a.abelianization, b.abelianization);
  auto const target = direct_product(direct_product(a.tensor_square, b.tensor_square),
                                     abelian_group_table(direct_sum(cross, cross)));
  if (target.order() != whole.tensor_square.order())
    return verdict(name, false,
                   "orders " + str(whole.tensor_square.order()) + " vs " + str(target.order()));
  auto const iso = isomorphism(whole.tensor_square, target);
  if (iso.verdict == IsoVerdict::timeout) return verdict(name, false, "isomorphism search hit the node limit");
  return verdict(name, iso.verdict == IsoVerdict::isomorphic,
                 "(A(x)A) x (B(x)B) x (A^ab(x)B^ab)^2 with cross term " + cross.name());
}

OrderOnlyResult order_only_tensor(Presentation const& p, EnumerationConfig const& config) {
  OrderOnlyResult o;
  o.group_order = subgroup_index(p, {}, config);
  NuPresentation const nu = nu_presentation(p);
  auto e = enumerate(nu.presentation, nu.second_copy_generators(), config);
  o.index = e.table.size();
  o.stats = e.stats;
  if (o.index % o.group_order != 0)
    throw TensorEngineError("[nu:G^phi] = " + str(o.index) + " is not a multiple of |G| = " + str(o.group_order));
  o.tensor_order = o.index / o.group_order;
  return o;
}

// ---------------------------------------------------------------------------
// summaries

namespace {

ObjectSummary object_summary(std::uint64_t order, Structure const& s) {
  ObjectSummary o{order, s.name(), std::nullopt};
  if (s.kind == Structure::Kind::abelian) o.invariant_factors = s.abelian_part.invariants();
  return o;
}

ObjectSummary not_computed(std::uint64_t order = 0) { return {order, "not computed", std::nullopt}; }

void put_stats(std::map<std::string, std::uint64_t>& out, std::string const& prefix, EnumerationStats const& s) {
  out[prefix + "cosets"] = s.final_count;
  out[prefix + "defined"] = s.total_defined;
  out[prefix + "coincidences"] = s.coincidences;
  out[prefix + "peak_live"] = s.peak_live;
  out[prefix + "lookaheads"] = s.lookaheads;
  out[prefix + "compactions"] = s.compactions;
}

}  // namespace

ReportSummary summarize(TensorSquareReport const& r, bool with_timing) {
  ReportSummary s;
  s.name = r.name;
  s.group_order = r.group.order();
  s.presentation = r.presentation.to_string();
  s.group = object_summary(r.group.order(), r.group_structure);
  s.derived = object_summary(r.derived.order(), recognize_structure(subgroup_table(r.group, r.derived)));
  s.abelianization = r.abelianization.invariants();
  s.tensor_square = object_summary(r.tensor_square.order(), r.tensor_structure);
  s.exterior_square = object_summary(r.exterior_square.order(), r.exterior_structure);
  s.nabla = object_summary(r.nabla.order(), r.nabla_structure);
  s.j2 = object_summary(r.j2.order(), r.j2_structure);
  s.schur_multiplier = r.schur_multiplier.invariants();
  s.structure_computed = true;
  s.checks = r.checks;
  put_stats(s.stats, "nu_over_copy_", r.enumeration);
  if (r.nu_enumeration) put_stats(s.stats, "nu_full_", *r.nu_enumeration);
  s.stats["tensor_generators"] = r.tensor_generators;
  if (with_timing) {
    double w = r.enumeration.wall_seconds;
    if (r.nu_enumeration) w += r.nu_enumeration->wall_seconds;
    s.wall_seconds = w;
  }
  return s;
}

ReportSummary summarize(std::string const& name, Presentation const& p, OrderOnlyResult const& o,
                        bool with_timing) {
  ReportSummary s;
  s.name = name;
  s.group_order = o.group_order;
  s.presentation = p.to_string();
  s.group = not_computed(o.group_order);
  s.derived = not_computed();
  s.abelianization = presentation_abelianization(p).invariants();
  s.tensor_square = not_computed(o.tensor_order);
  s.structure_computed = false;
  put_stats(s.stats, "nu_over_copy_", o.stats);
  if (with_timing) s.wall_seconds = o.stats.wall_seconds;
  return s;
}

void to_json(nlohmann::json& j, ObjectSummary const& s) {
  j = nlohmann::json{{"order", s.order}, {"structure", s.structure}};
  if (s.invariant_factors) j["invariant_factors"] = *s.invariant_factors;
}

void from_json(nlohmann::json const& j, ObjectSummary& s) {
  s.order = j.at("order").get<std::uint64_t>();
  s.structure = j.at("structure").get<std::string>();
  s.invariant_factors.reset();
  if (j.contains("invariant_factors")) s.invariant_factors = j["invariant_factors"].get<std::vector<std::uint64_t>>();
}

void to_json(nlohmann::json& j, CheckResult const& c) {
  j = nlohmann::json{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
}

void from_json(nlohmann::json const& j, CheckResult& c) {
  c.name = j.at("name").get<std::string>();
  c.status = check_status_from_string(j.at("status").get<std::string>());
  c.detail = j.at("detail").get<std::string>();
}

namespace {

nlohmann::json optional_object(std::optional<ObjectSummary> const& o) {
  if (!o) return nlohmann::json{{"structure", "not computed"}};
  return *o;
}

std::optional<ObjectSummary> read_optional_object(nlohmann::json const& j) {
  if (!j.contains("order")) return std::nullopt;
  return j.get<ObjectSummary>();
}

}  // namespace

void to_json(nlohmann::json& j, ReportSummary const& s) {
  nlohmann::json group = s.group;
  group["name"] = s.name;
  group["presentation"] = s.presentation;
  group["derived_subgroup"] = s.derived;
  group["abelianization"] = s.abelianization;
  j = nlohmann::json{{"group", group},
                     {"tensor_square", s.tensor_square},
                     {"exterior_square", optional_object(s.exterior_square)},
                     {"nabla", optional_object(s.nabla)},
                     {"j2", optional_object(s.j2)},
                     {"structure_computed", s.structure_computed},
                     {"checks", s.checks},
                     {"stats", s.stats}};
  if (s.schur_multiplier)
    j["schur_multiplier"] = nlohmann::json{{"invariant_factors", *s.schur_multiplier}};
  else
    j["schur_multiplier"] = nlohmann::json{{"structure", "not computed"}};
  if (s.wall_seconds) j["stats"]["wall_seconds"] = *s.wall_seconds;
}

void from_json(nlohmann::json const& j, ReportSummary& s) {
  auto const& group = j.at("group");
  s.name = group.at("name").get<std::string>();
  s.presentation = group.at("presentation").get<std::string>();
  s.group = group.get<ObjectSummary>();
  s.group_order = s.group.order;
  s.derived = group.at("derived_subgroup").get<ObjectSummary>();
  s.abelianization = group.at("abelianization").get<std::vector<std::uint64_t>>();
  s.tensor_square = j.at("tensor_square").get<ObjectSummary>();
  s.exterior_square = read_optional_object(j.at("exterior_square"));
  s.nabla = read_optional_object(j.at("nabla"));
  s.j2 = read_optional_object(j.at("j2"));
  auto const& m = j.at("schur_multiplier");
  s.schur_multiplier.reset();
  if (m.contains("invariant_factors")) s.schur_multiplier = m["invariant_factors"].get<std::vector<std::uint64_t>>();
  s.structure_computed = j.at("structure_computed").get<bool>();
  s.checks = j.at("checks").get<std::vector<CheckResult>>();
  s.stats.clear();
  s.wall_seconds.reset();
  for (auto const& [k, v] : j.at("stats").items()) {
    if (k == "wall_seconds") s.wall_seconds = v.get<double>();
    else s.stats[k] = v.get<std::uint64_t>();
  }
}

std::string markdown_cell(std::string const& text) {
  std::string out;
  for (char ch : text) {
    if (ch == '|') out += '\\';
    out += ch;
  }
  return out;
}

std::string report_markdown(ReportSummary const& s) {
  std::ostringstream os;
  os << "## " << s.name << "\n\n";
  os << "`" << s.presentation << "`\n\n";
  os << "| object | order | structure |\n|---|---|---|\n";
  auto row = [&](std::string const& label, std::optional<ObjectSummary> const& o) {
    if (o) os << "| " << label << " | " << o->order << " | " << o->structure << " |\n";
    else os << "| " << label << " | - | not computed |\n";
  };
  row("G", s.group);
  row("G'", s.structure_computed ? std::optional<ObjectSummary>(s.derived) : std::nullopt);
  os << "| G^ab | " << FiniteAbelianGroup::from_invariants(s.abelianization).order() << " | "
     << FiniteAbelianGroup::from_invariants(s.abelianization).name() << " |\n";
  row("G (x) G", s.tensor_square);
  row("G ^ G", s.exterior_square);
  row("nabla(G)", s.nabla);
  row("J2(G)", s.j2);
  if (s.schur_multiplier) {
    auto m = FiniteAbelianGroup::from_invariants(*s.schur_multiplier);
    os << "| M(G) | " << m.order() << " | " << m.name() << " |\n";
  } else {
    os << "| M(G) | - | not computed |\n";
  }
  if (!s.checks.empty()) {
    os << "\n| check | status | detail |\n|---|---|---|\n";
    for (auto const& c : s.checks)
      os << "| " << c.name << " | " << to_string(c.status) << " | " << markdown_cell(c.detail) << " |\n";
  }
  return os.str();
}

}  // namespace tsq
