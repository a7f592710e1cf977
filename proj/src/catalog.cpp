#include "tsq/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace tsq {

std::string to_string(Provenance p) { return p == Provenance::stated ? "stated" : "derived"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::degraded:
      return "degraded";
  }
  return "fail";
}

namespace {

FiniteAbelianGroup ab(std::vector<std::uint64_t> orders = {}) {
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

// "ES(27)" -> (3, 0); "ES(27,exp9)" -> (3, 9)
std::pair<std::uint64_t, std::uint64_t> parse_es(std::string const& s) {
  auto const open = s.find('('), comma = s.find(','), close = s.find(')');
  std::uint64_t const order = std::stoull(s.substr(open + 1, (comma == std::string::npos ? close : comma) - open - 1));
  std::uint64_t q = 2;
  while (q * q * q < order) ++q;
  if (q * q * q != order) throw std::invalid_argument("bad extraspecial order in '" + s + "'");
  std::uint64_t e = 0;
  if (comma != std::string::npos) e = std::stoull(s.substr(comma + 4, close - comma - 4));
  return {q, e};
}

std::vector<GroupTable> nonabelian_candidates(std::string const& name) {
  if (name.empty()) return {cyclic_group(1)};
  if (name == "Q8") return {quaternion_group()};
  if (name == "D8") return {extraspecial_group(2, 4)};
  if (name.rfind("ES(", 0) == 0) {
    auto [q, e] = parse_es(name);
    if (e != 0) return {extraspecial_group(q, e)};
    return {extraspecial_group(q, q), extraspecial_group(q, q * q)};
  }
  throw std::invalid_argument("unknown nonabelian factor '" + name + "'");
}

std::uint64_t nonabelian_order(std::string const& name) {
  if (name.empty()) return 1;
  if (name == "Q8" || name == "D8") return 8;
  auto [q, e] = parse_es(name);
  (void)e;
  return q * q * q;
}

CheckResult verdict(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

std::string str(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::uint64_t ExpectedGroup::order() const { return abelian.order() * nonabelian_order(nonabelian); }

std::string ExpectedGroup::name() const {
  if (nonabelian.empty()) return abelian.name();
  return abelian.is_trivial() ? nonabelian : abelian.name() + " x " + nonabelian;
}

std::uint64_t VerificationCase::group_order() const { return family_group(descriptor).table.order(); }

std::vector<std::string> inconsistent_cases(std::vector<VerificationCase> const& cases) {
  std::vector<std::string> bad;
  for (auto const& c : cases)
    for (auto const& e : c.expectations)
      if (e.tensor_square.order() != e.nabla_order * e.multiplier.order() * e.derived.order()) {
        bad.push_back(c.id);
        break;
      }
  return bad;
}

std::vector<VerificationCase> build_catalog() {
  auto E = [](ExpectedGroup t, FiniteAbelianGroup m, FiniteAbelianGroup d, std::uint64_t nabla,
              std::optional<std::uint64_t> e = {}, Provenance p = Provenance::stated) {
    return Expectation{std::move(t), std::move(m), std::move(d), nabla, e, p};
  };
  auto cyc = [](std::uint64_t n) { return ExpectedGroup{ab({n}), ""}; };
  std::vector<VerificationCase> c;
  auto add = [&c](std::string id, std::string theorem, std::string label, std::string descriptor, std::string claim,
                  std::vector<Expectation> expectations) -> VerificationCase& {
    VerificationCase v;
    v.id = std::move(id);
    v.theorem = std::move(theorem);
    v.label = std::move(label);
    v.descriptor = std::move(descriptor);
    v.claim = std::move(claim);
    v.expectations = std::move(expectations);
    c.push_back(std::move(v));
    return c.back();
  };

  // square-free order: cyclic tensor square
  add("A/6", "A", "S3", "dihedral(3)", "square-free n: G (x) G = Z_n", {E(cyc(6), ab(), ab({3}), 2)});
  add("A/10", "A", "D10", "dihedral(5)", "square-free n: G (x) G = Z_n", {E(cyc(10), ab(), ab({5}), 2)});
  add("A/21", "A", "Z7:Z3", "metacyclic(7,3,2)", "square-free n: G (x) G = Z_n",
      {E(cyc(21), ab(), ab({7}), 3)});
  add("A/42", "A", "Z7:Z6", "metacyclic(7,6,3)", "square-free n: G (x) G = Z_n",
      {E(cyc(42), ab(), ab({7}), 6)});

  // order p^2 q
  add("B.i/20", "B.i", "F20", "metacyclic(5,4,2)", "G^ab = Z_p^2: G (x) G = Z_p^2q",
      {E(cyc(20), ab(), ab({5}), 4, 20)});
  add("B.i/28", "B.i", "Z7:Z4", "metacyclic(7,4,-1)", "G^ab = Z_p^2: G (x) G = Z_p^2q",
      {E(cyc(28), ab(), ab({7}), 4, 28)});
  add("B.ii/12", "B.ii", "D12", "dihedral(6)", "G^ab = Z_p x Z_p: G (x) G = (Z_p)^4 x Z_q",
      {E({ab({2, 2, 2, 2, 3}), ""}, ab({2}), ab({3}), 8)});
  add("B.ii/20", "B.ii", "D20", "dihedral(10)", "G^ab = Z_p x Z_p: G (x) G = (Z_p)^4 x Z_q",
      {E({ab({2, 2, 2, 2, 5}), ""}, ab({2}), ab({5}), 8)});
  add("B.iii/12", "B.iii", "A4", "A4", "G^ab = Z3: G (x) G = Z3 x Q8",
      {E({ab({3}), "Q8"}, ab({2}), ab({2, 2}), 3)});

  // order p q^2
  add("C.i/18", "C.i", "D18", "dihedral(9)", "G' = Z_q^2: G (x) G = Z_pq^2",
      {E(cyc(18), ab(), ab({9}), 2, 18)});
  add("C.i/50", "C.i", "D50", "dihedral(25)", "G' = Z_q^2: G (x) G = Z_pq^2",
      {E(cyc(50), ab(), ab({25}), 2, 50)});
  add("C.iii/18", "C", "(Z3xZ3):Z2", "gendihedral(3,3)",
      "G' = Z_q x Z_q: Z_p x (Z_q)^2 when M = 0, Z_p x extraspecial q^3 when M = Z_q",
      {E({ab({2, 3, 3}), ""}, ab(), ab({3, 3}), 2, 6),
       E({ab({2}), "ES(27)"}, ab({3}), ab({3, 3}), 2)});
  add("C.iii/75", "C", "(Z5xZ5):Z3", "linear(5,3,0,-1,1,-1)",
      "G' = Z_q x Z_q: Z_p x (Z_q)^2 when M = 0, Z_p x extraspecial q^3 when M = Z_q",
      {E({ab({3, 5, 5}), ""}, ab(), ab({5, 5}), 3, 15),
       E({ab({3}), "ES(125)"}, ab({5}), ab({5, 5}), 3)});
  add("C.ii/147", "C", "(Z7xZ7):Z3", "linear(7,3,2,0,0,2)",
      "G' = Z_q x Z_q: Z_p x (Z_q)^2 when M = 0, Z_p x extraspecial q^3 when M = Z_q",
      {E({ab({3, 7, 7}), ""}, ab(), ab({7, 7}), 3, 21),
       E({ab({3}), "ES(343)"}, ab({7}), ab({7, 7}), 3)});

  // order p^2 q r
  add("D.i/140-cyclic", "D.i", "Z5 x (Z7:Z4)", "metacyclic(35,4,6)",
      "|G'| in {q, r, qr}, G^ab cyclic: G (x) G = Z_p^2qr", {E(cyc(140), ab(), ab({7}), 20, 140)});
  {
    auto& v = add("D.i/140-noncyclic", "D.i", "D28 x Z5", "direct(dihedral(14),cyclic(5))",
        "|G'| in {q, r, qr}, G^ab not cyclic: G (x) G = (Z_p)^4 x Z_qr",
        {E({ab({2, 2, 2, 2, 35}), ""}, ab({2}), ab({7}), 40)});
    v.order_only_acceptable = true;
    v.factors = {{"dihedral(14)", "cyclic(5)"}};
  }
  add("D.ii/220", "D.ii", "Z55:Z4", "metacyclic(55,4,32)",
      "|G'| = qr with q | r-1, G^ab cyclic: G (x) G = Z_p^2 x G'",
      {E(cyc(220), ab(), ab({55}), 4, 220)});

  // |G| = 12 r
  {
    auto& v = add("remark/60", "remark", "A4 x Z5", "direct(A4,cyclic(5))", "|G'| = 4: G (x) G = Z_3r x Q8",
        {E({ab({15}), "Q8"}, ab({2}), ab({2, 2}), 15)});
    v.factors = {{"A4", "cyclic(5)"}};
  }
  add("remark/84", "remark", "(V4 x Z7):Z3", "a4ext(7,2)", "|G'| = 4r: G (x) G = Z_3r x Q8",
      {E({ab({21}), "Q8"}, ab({2}), ab({2, 14}), 3)});
  add("remark/60-derived3-cyclic", "remark", "Z15:Z4", "metacyclic(15,4,11)",
      "|G'| = 3, G^ab cyclic: as D.i, Z_p^2qr",
      {E(cyc(60), ab(), ab({3}), 20, 60, Provenance::derived)});
  {
    auto& v = add("remark/60-derived3-noncyclic", "remark", "S3 x Z10", "direct(dihedral(3),cyclic(10))",
        "|G'| = 3, G^ab not cyclic: as D.i, (Z_p)^4 x Z_qr",
        {E({ab({2, 2, 2, 2, 15}), ""}, ab({2}), ab({3}), 40, {}, Provenance::derived)});
    v.factors = {{"dihedral(3)", "cyclic(10)"}};
  }
  return c;
}

std::vector<std::string> CaseOutcome::mismatches() const {
  std::vector<std::string> out;
  for (auto const& c : expectation_checks)
    if (c.status == CheckStatus::fail) out.push_back(c.name + ": " + c.detail);
  if (report)
    for (auto const& c : report->checks)
      if (c.status == CheckStatus::fail) out.push_back(c.name + ": " + c.detail);
  if (!error.empty()) out.push_back(error);
  return out;
}

bool CatalogReport::all_pass() const {
  return std::all_of(cases.begin(), cases.end(), [](CaseOutcome const& c) { return c.verdict == Verdict::pass; });
}

bool CatalogReport::any_fail() const {
  return std::any_of(cases.begin(), cases.end(), [](CaseOutcome const& c) { return c.verdict == Verdict::fail; });
}

std::vector<VerificationCase> select_cases(std::string const& theorem, std::string const& case_id) {
  std::vector<VerificationCase> out;
  for (auto& c : build_catalog()) {
    if (!case_id.empty() && c.id != case_id) continue;
    if (theorem != "all" && !theorem.empty()) {
      // "B.ii" selects B.ii/... but not B.iii/...
      if (c.id.rfind(theorem, 0) != 0) continue;
      char const next = c.id.size() > theorem.size() ? c.id[theorem.size()] : '/';
      if (next != '/' && next != '.') continue;
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

CheckResult compare_structure(GroupTable const& t, ExpectedGroup const& e, std::string& matched) {
  if (t.order() != e.order())
    return verdict("expect_structure", false, "order " + str(t.order()) + ", expected " + e.name());
  auto const base = abelian_group_table(e.abelian);
  for (auto const& h : nonabelian_candidates(e.nonabelian)) {
    auto const candidate = e.nonabelian.empty() ? base : direct_product(base, h);
    auto const iso = isomorphism(t, candidate);
    if (iso.verdict == IsoVerdict::timeout)
      return verdict("expect_structure", false, "isomorphism search hit the node limit");
    if (iso.verdict == IsoVerdict::isomorphic) {
      matched = e.nonabelian.empty() ? e.abelian.name()
                                     : (e.abelian.is_trivial() ? h.name() : e.abelian.name() + " x " + h.name());
      return verdict("expect_structure", true, "isomorphic to " + matched);
    }
  }
  return verdict("expect_structure", false, "not isomorphic to " + e.name());
}

std::string clause_name(VerificationCase const& c, std::size_t which) {
  if (c.expectations.size() < 2) return c.theorem;
  return which == 0 ? c.theorem + ".ii" : c.theorem + ".iii";
}

}  // namespace

CaseOutcome verify_case(VerificationCase const& c, TensorConfig const& config) {
  auto const start = std::chrono::steady_clock::now();
  CaseOutcome o;
  o.id = c.id;
  o.theorem = c.theorem;
  o.label = c.label;
  o.descriptor = c.descriptor;
  o.claim = c.claim;
  auto finish = [&] {
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return o;
  };

  Presentation p;
  try {
    p = family_presentation(c.descriptor);
  } catch (std::exception const& e) {
    o.error = std::string("constructor failed: ") + e.what();
    return finish();
  }

  try {
    auto const r = compute_tensor_square(p, config, c.descriptor);
    std::size_t which = 0;
    if (c.expectations.size() == 2 && !r.schur_multiplier.is_trivial()) which = 1;
    Expectation const& e = c.expectations[which];
    o.branch = clause_name(c, which);
    o.expected_structure = e.tensor_square.name();

    auto& ec = o.expectation_checks;
    auto const dt = subgroup_table(r.group, r.derived);
    bool const d_ok = dt.is_abelian() && abelian_invariants(dt) == e.derived;
    ec.push_back(verdict("expect_derived", d_ok,
                         "G' = " + (dt.is_abelian() ? abelian_invariants(dt).name() : std::string("nonabelian")) +
                             ", expected " + e.derived.name()));
    ec.push_back(verdict("expect_multiplier", r.schur_multiplier == e.multiplier,
                         "M(G) = " + r.schur_multiplier.name() + ", expected " + e.multiplier.name()));
    ec.push_back(verdict("expect_tensor_order", r.tensor_square.order() == e.tensor_square.order(),
                         "|G (x) G| = " + str(r.tensor_square.order()) + ", expected " +
                             str(e.tensor_square.order())));
    ec.push_back(verdict("expect_nabla_order", r.nabla.order() == e.nabla_order,
                         "|nabla| = " + str(r.nabla.order()) + ", expected " + str(e.nabla_order)));
    std::string matched;
    ec.push_back(compare_structure(r.tensor_square, e.tensor_square, matched));
    if (!matched.empty()) o.expected_structure = matched;
    if (e.exponent)
      for (auto& x : pi_and_exponent_checks(r, e.exponent))
        if (x.name == "exponent") ec.push_back(std::move(x));
    if (c.factors) {
      auto const fa = compute_tensor_square(family_presentation(c.factors->first), config, c.factors->first);
      auto const fb = compute_tensor_square(family_presentation(c.factors->second), config, c.factors->second);
      ec.push_back(direct_product_cross_check(r, fa, fb));
    }
    o.report = summarize(r);
    bool const ok = r.all_checks_pass() &&
                    std::none_of(ec.begin(), ec.end(), [](auto const& x) { return x.status == CheckStatus::fail; });
    o.verdict = ok ? Verdict::pass : Verdict::fail;
    return finish();
  } catch (ResourceLimitError const& full_error) {
    // order-only fallback: Felsch keeps the live table close to the index
    EnumerationConfig ec = config.enumeration;
    ec.strategy = Strategy::felsch;
    try {
      auto const oo = order_only_tensor(p, ec);
      o.report = summarize(c.descriptor, p, oo);
      o.report->checks.push_back({"full_computation", CheckStatus::skipped, full_error.what()});
      std::size_t which = 0;
      while (which + 1 < c.expectations.size() &&
             c.expectations[which].tensor_square.order() != oo.tensor_order)
        ++which;
      auto const& e = c.expectations[which];
      o.branch = c.expectations.size() < 2 ? c.theorem : "undetermined";
      o.expected_structure = e.tensor_square.name();
      o.expectation_checks.push_back(verdict("expect_tensor_order", oo.tensor_order == e.tensor_square.order(),
                                             "|G (x) G| = " + str(oo.tensor_order) + " (order only), expected " +
                                                 str(e.tensor_square.order())));
      o.verdict = oo.tensor_order == e.tensor_square.order() ? Verdict::degraded : Verdict::fail;
    } catch (std::exception const& e) {
      o.error = std::string("order-only fallback failed: ") + e.what();
    }
    return finish();
  } catch (std::exception const& e) {
    o.error = e.what();
    return finish();
  }
}

CatalogReport verify(VerifyOptions const& options) {
  auto const cases = select_cases(options.theorem, options.case_id);
  CatalogReport report;
  report.cases.resize(cases.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) report.cases[i] = verify_case(cases[i], options.config);
  };
  unsigned const workers = std::max(1u, std::min<unsigned>(options.workers, unsigned(cases.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return report;
}

nlohmann::json to_json(CatalogReport const& r, bool with_timing) {
  nlohmann::json cases = nlohmann::json::array();
  for (auto const& c : r.cases) {
    nlohmann::json j{{"id", c.id},
                     {"theorem", c.theorem},
                     {"group", c.label},
                     {"descriptor", c.descriptor},
                     {"claim", c.claim},
                     {"verdict", to_string(c.verdict)},
                     {"branch", c.branch},
                     {"expected_structure", c.expected_structure},
                     {"expectation_checks", c.expectation_checks},
                     {"mismatches", c.mismatches()}};
    if (c.report) {
      nlohmann::json rep = *c.report;
      if (!with_timing) rep["stats"].erase("wall_seconds");
      j["report"] = rep;
    } else {
      j["report"] = nullptr;
    }
    if (!c.error.empty()) j["error"] = c.error;
    if (with_timing) j["seconds"] = c.seconds;
    cases.push_back(std::move(j));
  }
  std::size_t pass = 0, fail = 0, degraded = 0;
  for (auto const& c : r.cases) {
    if (c.verdict == Verdict::pass) ++pass;
    else if (c.verdict == Verdict::fail) ++fail;
    else ++degraded;
  }
  return nlohmann::json{{"cases", cases},
         {"summary", {{"pass", pass}, {"fail", fail}, {"degraded", degraded}, {"total", r.cases.size()}}}};
}

std::string catalog_markdown(CatalogReport const& r) {
  std::ostringstream os;
  os << "| case | group | order | G' | G^ab | M(G) | tensor order | G (x) G | expected | clause | verdict |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (auto const& c : r.cases) {
    os << "| " << c.id << " | " << c.label << " | ";
    if (c.report) {
      auto const& s = *c.report;
      os << s.group_order << " | " << (s.structure_computed ? s.derived.structure : "not computed") << " | "
         << FiniteAbelianGroup::from_invariants(s.abelianization).name() << " | "
         << (s.schur_multiplier ? FiniteAbelianGroup::from_invariants(*s.schur_multiplier).name() : "not computed")
         << " | " << s.tensor_square.order << " | " << s.tensor_square.structure << " | ";
    } else {
      os << "- | - | - | - | - | - | ";
    }
    os << c.expected_structure << " | " << c.branch << " | " << to_string(c.verdict) << " |\n";
  }
  std::vector<std::string> notes;
  for (auto const& c : r.cases)
    for (auto const& m : c.mismatches()) notes.push_back(c.id + ": " + m);
  if (!notes.empty()) {
    os << "\n";
    for (auto const& n : notes) os << "- " << n << "\n";
  }
  return os.str();
}

std::string catalog_listing_markdown(std::vector<VerificationCase> const& cases) {
  std::ostringstream os;
  os << "| case | group | descriptor | order | expected G (x) G | M(G) | source | claim |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  for (auto const& c : cases) {
    std::string expect, mult;
    for (std::size_t i = 0; i < c.expectations.size(); ++i) {
      if (i) {
        expect += " or ";
        mult += " or ";
      }
      expect += c.expectations[i].tensor_square.name();
      mult += c.expectations[i].multiplier.name();
    }
    os << "| " << c.id << " | " << c.label << " | " << c.descriptor << " | " << c.group_order() << " | " << expect
       << " | " << mult << " | " << to_string(c.expectations.front().provenance) << " | "
       << markdown_cell(c.claim) << " |\n";
  }
  return os.str();
}

}  // namespace tsq
