#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsq/catalog.hpp"

namespace {

constexpr int kPass = 0, kFail = 2, kDegraded = 3, kUsage = 64;

struct Globals {
  std::size_t max_cosets = tsq::EnumerationConfig{}.max_live_cosets;
  std::string strategy = "hlt";
  std::size_t nu_check_limit = tsq::TensorConfig{}.nu_check_limit;
  std::size_t max_table_entries = tsq::TensorConfig{}.max_table_entries;
  std::string out;
  unsigned workers = 1;
  bool timing = false;

  tsq::TensorConfig config() const {
    tsq::TensorConfig c;
    c.enumeration.max_live_cosets = max_cosets;
    c.enumeration.strategy = tsq::strategy_from_string(strategy);
    c.nu_check_limit = nu_check_limit;
    c.max_table_entries = max_table_entries;
    return c;
  }
};

void emit(Globals const& g, std::string const& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

std::string dump(nlohmann::json const& j) { return j.dump(2) + "\n"; }

tsq::Presentation input_presentation(std::string const& text, std::string const& family) {
  if (!text.empty() && !family.empty()) throw CLI::ValidationError("give --presentation or --family, not both");
  if (!family.empty()) return tsq::family_presentation(family);
  if (text.empty()) throw CLI::RequiredError("--presentation or --family");
  return tsq::parse_presentation(text);
}

int exit_code(tsq::CatalogReport const& r) {
  if (r.any_fail()) return kFail;
  return r.all_pass() ? kPass : kDegraded;
}

int run_compute(Globals const& g, std::string const& text, std::string const& family, std::string const& format) {
  auto const p = input_presentation(text, family);
  std::string const name = family.empty() ? p.to_string() : family;
  tsq::ReportSummary s;
  int code = kPass;
  try {
    auto const r = tsq::compute_tensor_square(p, g.config(), name);
    s = tsq::summarize(r, g.timing);
    if (!r.all_checks_pass()) code = kFail;
  } catch (tsq::ResourceLimitError const& e) {
    auto ec = g.config().enumeration;
    ec.strategy = tsq::Strategy::felsch;
    s = tsq::summarize(name, p, tsq::order_only_tensor(p, ec), g.timing);
    s.checks.push_back({"full_computation", tsq::CheckStatus::skipped, e.what()});
    code = kDegraded;
  }
  emit(g, format == "md" ? tsq::report_markdown(s) : dump(s));
  return code;
}

int run_order_only(Globals const& g, std::string const& text, std::string const& family, std::string const& format) {
  auto const p = input_presentation(text, family);
  auto const o = tsq::order_only_tensor(p, g.config().enumeration);
  auto const s = tsq::summarize(family.empty() ? p.to_string() : family, p, o, g.timing);
  emit(g, format == "md" ? tsq::report_markdown(s) : dump(s));
  return kPass;
}

int run_verify(Globals const& g, std::string const& theorem, std::string const& case_id, std::string const& format) {
  tsq::VerifyOptions o;
  o.theorem = theorem;
  o.case_id = case_id;
  o.config = g.config();
  o.workers = g.workers;
  if (tsq::select_cases(theorem, case_id).empty())
    throw CLI::ValidationError("no catalog case matches theorem '" + theorem + "'" +
                               (case_id.empty() ? std::string() : " and case '" + case_id + "'"));
  auto const r = tsq::verify(o);
  emit(g, format == "json" ? dump(tsq::to_json(r, g.timing)) : tsq::catalog_markdown(r));
  return exit_code(r);
}

int run_catalog(Globals const& g, std::uint64_t order, std::string const& format) {
  std::vector<tsq::VerificationCase> cases;
  for (auto& c : tsq::build_catalog())
    if (order == 0 || c.group_order() == order) cases.push_back(std::move(c));
  if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (auto const& c : cases) {
      nlohmann::json ex = nlohmann::json::array();
      for (auto const& e : c.expectations)
        ex.push_back({{"tensor_square", e.tensor_square.name()},
                      {"tensor_order", e.tensor_square.order()},
                      {"schur_multiplier", e.multiplier.invariants()},
                      {"derived_subgroup", e.derived.invariants()},
                      {"nabla_order", e.nabla_order},
                      {"source", tsq::to_string(e.provenance)}});
      j.push_back({{"id", c.id},
                   {"theorem", c.theorem},
                   {"group", c.label},
                   {"descriptor", c.descriptor},
                   {"order", c.group_order()},
                   {"claim", c.claim},
                   {"expectations", ex}});
    }
    emit(g, dump(j));
  } else {
    emit(g, tsq::catalog_listing_markdown(cases));
  }
  return kPass;
}

std::vector<std::uint64_t> parse_list(std::string const& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (std::exception const&) {
      used = 0;
    }
    if (used != item.size() || item.empty() || v == 0 || item[0] == '-')
      throw CLI::ValidationError("--invariants: '" + item + "' is not a positive integer");
    out.push_back(v);
  }
  return out;
}

int run_gamma(Globals const& g, std::string const& list, std::string const& format) {
  auto const a = tsq::FiniteAbelianGroup::from_cyclic_orders(parse_list(list));
  auto const gamma = tsq::gamma_whitehead(a);
  nlohmann::json j{{"input", {{"invariant_factors", a.invariants()}, {"structure", a.name()}}},
                   {"gamma",
                    {{"invariant_factors", gamma.invariants()},
                     {"structure", gamma.name()},
                     {"order", gamma.order()},
                     {"exponent", gamma.exponent()}}}};
  if (format == "json") {
    emit(g, dump(j));
  } else {
    std::ostringstream os;
    os << "Gamma(" << a.name() << ") = " << gamma.name() << "\norder " << gamma.order() << ", exponent "
       << gamma.exponent() << "\n";
    emit(g, os.str());
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-abelian tensor squares, exterior squares and Schur multipliers of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--max-cosets", g.max_cosets, "Live coset limit for every enumeration")->capture_default_str();
  app.add_option("--strategy", g.strategy, "Coset enumeration strategy")
      ->check(CLI::IsMember({"hlt", "felsch"}))
      ->capture_default_str();
  app.add_option("--nu-check-limit", g.nu_check_limit,
                 "Largest |G|^2 |G (x) G| for the nu(G) cross-check (0 disables)")
      ->capture_default_str();
  app.add_option("--max-table-entries", g.max_table_entries, "Budget for the |T| x |T| multiplication table")
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the report to FILE instead of stdout");
  app.add_option("--workers", g.workers, "Concurrent catalog cases")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", g.timing, "Include wall-clock times in reports");

  std::string text, family, format, theorem = "all", case_id;
  std::uint64_t order = 0;
  std::string invariants;
  auto const formats = CLI::IsMember({"json", "md"});

  auto* compute = app.add_subcommand("compute", "Tensor square, exterior square, nabla, J2 and M(G) of one group");
  compute->add_option("--presentation", text, "Presentation such as \"a,b | a^3, b^2, (a b)^2\"");
  compute->add_option("--family", family, "Family descriptor such as dihedral(5) or direct(A4,cyclic(5))");
  compute->add_option("--report", format, "json (default) or md")->check(formats);

  auto* order_only = app.add_subcommand("order-only", "|G (x) G| from a single coset enumeration");
  order_only->add_option("--presentation", text, "Presentation");
  order_only->add_option("--family", family, "Family descriptor");
  order_only->add_option("--report", format, "json (default) or md")->check(formats);

  auto* verify = app.add_subcommand("verify", "Check catalog cases against their expected structures");
  verify->add_option("--theorem", theorem, "A, B, C, D, remark, a clause such as B.ii, or all")
      ->capture_default_str();
  verify->add_option("--case", case_id, "Single case id such as C.iii/75");
  verify->add_option("--report", format, "md (default) or json")->check(formats);

  auto* catalog = app.add_subcommand("catalog", "List catalog cases and their expectations");
  catalog->add_option("--order", order, "Only groups of this order");
  catalog->add_option("--report", format, "md (default) or json")->check(formats);

  auto* gamma = app.add_subcommand("gamma", "Whitehead's quadratic functor of a finite abelian group");
  gamma->add_option("--invariants", invariants, "Cyclic orders d1,d2,...")->required();
  gamma->add_option("--report", format, "md (default) or json")->check(formats);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*compute) return run_compute(g, text, family, format.empty() ? "json" : format);
    if (*order_only) return run_order_only(g, text, family, format.empty() ? "json" : format);
    if (*verify) return run_verify(g, theorem, case_id, format.empty() ? "md" : format);
    if (*catalog) return run_catalog(g, order, format.empty() ? "md" : format);
    if (*gamma) return run_gamma(g, invariants, format.empty() ? "md" : format);
  } catch (CLI::ParseError const& e) {
    std::cerr << "tsq: " << e.what() << "\n";
    return kUsage;
  } catch (tsq::ParseError const& e) {
    std::cerr << "tsq: " << e.what() << "\n";
    return kUsage;
  } catch (tsq::FamilyError const& e) {
    std::cerr << "tsq: " << e.what() << "\n";
    return kUsage;
  } catch (std::invalid_argument const& e) {
    std::cerr << "tsq: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const& e) {
    std::cerr << "tsq: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
