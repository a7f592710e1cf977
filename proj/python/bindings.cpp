#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tsq/catalog.hpp"

namespace py = pybind11;

namespace {

tsq::TensorConfig make_config(std::size_t max_cosets, std::string const& strategy, std::size_t nu_check_limit,
                              std::size_t max_table_entries) {
  tsq::TensorConfig c;
  c.enumeration.max_live_cosets = max_cosets;
  c.enumeration.strategy = tsq::strategy_from_string(strategy);
  c.nu_check_limit = nu_check_limit;
  c.max_table_entries = max_table_entries;
  return c;
}

tsq::Presentation input(std::optional<std::string> const& presentation, std::optional<std::string> const& family) {
  if (presentation.has_value() == family.has_value())
    throw std::invalid_argument("pass exactly one of presentation= or family=");
  return family ? tsq::family_presentation(*family) : tsq::parse_presentation(*presentation);
}

}  // namespace

PYBIND11_MODULE(_tsq, m) {
  m.doc() = "Non-abelian tensor squares of finite groups (JSON-returning core)";

  py::register_exception<tsq::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<tsq::FamilyError>(m, "FamilyError", PyExc_ValueError);
  py::register_exception<tsq::ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  tsq::TensorConfig const defaults;

  m.def(
      "compute_json",
      [](std::optional<std::string> presentation, std::optional<std::string> family, std::size_t max_cosets,
         std::string const& strategy, std::size_t nu_check_limit, std::size_t max_table_entries, bool timing) {
        auto const p = input(presentation, family);
        auto const cfg = make_config(max_cosets, strategy, nu_check_limit, max_table_entries);
        py::gil_scoped_release release;
        auto const r = tsq::compute_tensor_square(p, cfg, family.value_or(p.to_string()));
        return nlohmann::json(tsq::summarize(r, timing)).dump();
      },
      py::arg("presentation") = py::none(), py::arg("family") = py::none(),
      py::arg("max_cosets") = defaults.enumeration.max_live_cosets, py::arg("strategy") = "hlt",
      py::arg("nu_check_limit") = defaults.nu_check_limit,
      py::arg("max_table_entries") = defaults.max_table_entries, py::arg("timing") = false);

  m.def(
      "order_only_json",
      [](std::optional<std::string> presentation, std::optional<std::string> family, std::size_t max_cosets,
         std::string const& strategy) {
        auto const p = input(presentation, family);
        tsq::EnumerationConfig ec;
        ec.max_live_cosets = max_cosets;
        ec.strategy = tsq::strategy_from_string(strategy);
        py::gil_scoped_release release;
        auto const o = tsq::order_only_tensor(p, ec);
        return nlohmann::json(tsq::summarize(family.value_or(p.to_string()), p, o)).dump();
      },
      py::arg("presentation") = py::none(), py::arg("family") = py::none(),
      py::arg("max_cosets") = defaults.enumeration.max_live_cosets, py::arg("strategy") = "felsch");

  m.def(
      "verify_json",
      [](std::string const& theorem, std::string const& case_id, std::size_t max_cosets, std::string const& strategy,
         std::size_t nu_check_limit, std::size_t max_table_entries, unsigned workers) {
        tsq::VerifyOptions o;
        o.theorem = theorem;
        o.case_id = case_id;
        o.config = make_config(max_cosets, strategy, nu_check_limit, max_table_entries);
        o.workers = workers;
        py::gil_scoped_release release;
        return tsq::to_json(tsq::verify(o)).dump();
      },
      py::arg("theorem") = "all", py::arg("case") = "", py::arg("max_cosets") = defaults.enumeration.max_live_cosets,
      py::arg("strategy") = "hlt", py::arg("nu_check_limit") = defaults.nu_check_limit,
      py::arg("max_table_entries") = defaults.max_table_entries, py::arg("workers") = 1);

  m.def("case_ids", [] {
    std::vector<std::string> ids;
    for (auto const& c : tsq::build_catalog()) ids.push_back(c.id);
    return ids;
  });

  m.def(
      "gamma",
      [](std::vector<std::uint64_t> const& orders) {
        auto const g = tsq::gamma_whitehead(tsq::FiniteAbelianGroup::from_cyclic_orders(orders));
        return py::dict(py::arg("invariant_factors") = g.invariants(), py::arg("order") = g.order(),
                        py::arg("exponent") = g.exponent(), py::arg("structure") = g.name());
      },
      py::arg("orders"));

  m.def(
      "tensor_abelian",
      [](std::vector<std::uint64_t> const& a, std::vector<std::uint64_t> const& b) {
        return tsq::tensor_abelian(tsq::FiniteAbelianGroup::from_cyclic_orders(a),
                                   tsq::FiniteAbelianGroup::from_cyclic_orders(b))
            .invariants();
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "coset_index",
      [](std::string const& presentation, std::vector<std::string> const& subgroup, std::string const& strategy) {
        auto const p = tsq::parse_presentation(presentation);
        std::vector<tsq::Word> h;
        for (auto const& w : subgroup) h.push_back(tsq::parse_word(p, w));
        tsq::EnumerationConfig ec;
        ec.strategy = tsq::strategy_from_string(strategy);
        return tsq::subgroup_index(p, h, ec);
      },
      py::arg("presentation"), py::arg("subgroup") = std::vector<std::string>{}, py::arg("strategy") = "hlt");
}
