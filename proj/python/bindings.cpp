#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "homprod/commands.hpp"
#include "homprod/product.hpp"
#include "homprod/stabsym.hpp"

namespace py = pybind11;
using namespace homprod;

namespace {

using Rows = std::vector<std::vector<int>>;

BinMatrix matrix_of(const Rows& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  BinMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("rows have different lengths");
    for (std::size_t j = 0; j < cols; ++j)
      if (rows[i][j] & 1) m.set(i, j);
  }
  return m;
}

SearchBudget budget_of(std::size_t max_weight, double max_evaluations) {
  SearchBudget b;
  b.max_weight = max_weight;
  b.max_evaluations = max_evaluations;
  return b;
}

GlobalOptions options_of(std::size_t max_weight, double max_evaluations) {
  GlobalOptions g;
  g.max_weight = max_weight;
  g.max_evaluations = max_evaluations;
  return g;
}

ChainComplex product_of(const Rows& h, int stages) {
  if (stages != 1 && stages != 2) throw std::invalid_argument("stages must be 1 or 2");
  ProductTower t = build_tower(matrix_of(h), stages, false);
  return stages == 2 ? *t.dbl : t.single;
}

// JSON crosses the boundary as text; the package decodes it.
std::string report_json(const Rows& h, int stages, std::size_t max_weight, double max_evaluations) {
  const SearchBudget budget = budget_of(max_weight, max_evaluations);
  ProductTower t = build_tower(matrix_of(h), stages, false);
  const ChainComplex& c = stages == 2 ? *t.dbl : t.single;
  CssCode code = CssCode::from_complex(c);
  CodeReport r = code_report(code, budget);
  if (stages == 2) refine_double_product_report(r, code, t.single, budget);
  return to_json(r).dump();
}

std::string table1_json(std::optional<std::size_t> row, std::size_t max_weight, double max_evaluations) {
  Table1Options o;
  o.only_row = row;
  return cmd_table1(o, options_of(max_weight, max_evaluations)).json.dump();
}

std::string certify_json(const Rows& delta, std::optional<std::size_t> t, const std::string& f) {
  return to_json(certify(matrix_of(delta), t, parse_power_law_or_throw(f))).dump();
}

std::string diagonalize_json(const std::vector<std::string>& paulis) {
  return to_json(diagonalize(SymplecticCheckSet::from_paulis(paulis))).dump();
}

std::string barrier_json(const std::vector<std::string>& paulis, const std::string& sector) {
  auto s = parse_sector(sector);
  if (!s) throw std::invalid_argument("sector must be x, z or full");
  return to_json(energy_barrier(SymplecticCheckSet::from_paulis(paulis), *s)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GF(2) chain complexes, product codes and single-shot decoding";
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("rank", [](const Rows& rows) { return rank(matrix_of(rows)); }, py::arg("matrix"));
  m.def(
      "product_levels",
      [](const Rows& h, int stages) {
        const ChainComplex c = product_of(h, stages);
        std::map<int, std::pair<std::size_t, std::size_t>> out;  // level -> (size, betti)
        for (int j = c.min_level(); j <= c.max_level(); ++j) out[j] = {c.size(j), betti(c, j)};
        return out;
      },
      py::arg("h"), py::arg("stages") = 2, py::call_guard<py::gil_scoped_release>());
  m.def("report_json", &report_json, py::arg("h"), py::arg("stages") = 2, py::arg("max_weight") = 6,
        py::arg("max_evaluations") = 2e7, py::call_guard<py::gil_scoped_release>());
  m.def("table1_json", &table1_json, py::arg("row") = py::none(), py::arg("max_weight") = 6,
        py::arg("max_evaluations") = 2e7, py::call_guard<py::gil_scoped_release>());
  m.def("certify_json", &certify_json, py::arg("delta"), py::arg("t") = py::none(), py::arg("f") = "quadratic",
        py::call_guard<py::gil_scoped_release>());
  m.def("diagonalize_json", &diagonalize_json, py::arg("paulis"));
  m.def("barrier_json", &barrier_json, py::arg("paulis"), py::arg("sector") = "x",
        py::call_guard<py::gil_scoped_release>());
}
