#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "rvcontrib/csv.hpp"
#include "rvcontrib/errors.hpp"
#include "rvcontrib/permutation.hpp"
#include "rvcontrib/plot.hpp"
#include "rvcontrib/population.hpp"
#include "rvcontrib/preprocess.hpp"
#include "rvcontrib/report.hpp"
#include "rvcontrib/rv.hpp"
#include "rvcontrib/simulation.hpp"
#include "rvcontrib/version.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_rvcontrib, m) {
  m.doc() =
      "Association between two multivariate datasets: RV coefficient, "
      "adaptive powered-correlation tests, contribution decomposition, "
      "permutation thresholds, and the matching simulation designs.";
  m.attr("__version__") = rvc::kVersion;

  auto error = py::register_exception<rvc::Error>(m, "Error");
  py::register_exception<rvc::DataError>(m, "DataError", error.ptr());
  py::register_exception<rvc::IoError>(m, "IoError", error.ptr());

  py::class_<rvc::DataMatrix>(m, "DataMatrix")
      .def(py::init<rvc::Matrix, std::vector<std::string>,
                    std::vector<std::string>>(),
           py::arg("values"), py::arg("row_ids"), py::arg("col_names"))
      .def_static("with_default_names", &rvc::DataMatrix::with_default_names,
                  py::arg("values"), py::arg("col_prefix") = "V")
      .def_property_readonly("values", &rvc::DataMatrix::values,
                             py::return_value_policy::copy)
      .def_property_readonly("row_ids", &rvc::DataMatrix::row_ids)
      .def_property_readonly("col_names", &rvc::DataMatrix::col_names)
      .def_property_readonly("rows", &rvc::DataMatrix::rows)
      .def_property_readonly("cols", &rvc::DataMatrix::cols)
      .def("find_column", &rvc::DataMatrix::find_column, py::arg("name"));

  py::class_<rvc::StandardizedMatrix>(m, "StandardizedMatrix")
      .def(py::init<rvc::DataMatrix>(), py::arg("m"))
      .def_property_readonly("values", &rvc::StandardizedMatrix::values,
                             py::return_value_policy::copy)
      .def_property_readonly("row_ids", &rvc::StandardizedMatrix::row_ids)
      .def_property_readonly("col_names", &rvc::StandardizedMatrix::col_names)
      .def_property_readonly("rows", &rvc::StandardizedMatrix::rows)
      .def_property_readonly("cols", &rvc::StandardizedMatrix::cols)
      .def("as_data_matrix", &rvc::StandardizedMatrix::as_data_matrix);

  py::class_<rvc::CorrelationMatrix>(m, "CorrelationMatrix")
      .def_readonly("values", &rvc::CorrelationMatrix::values)
      .def_readonly("x_names", &rvc::CorrelationMatrix::x_names)
      .def_readonly("y_names", &rvc::CorrelationMatrix::y_names);

  m.def("standardize_columns", &rvc::standardize_columns, py::arg("m"));
  m.def("residualize",
        py::overload_cast<const rvc::DataMatrix&>(&rvc::residualize),
        py::arg("m"));
  m.def("residualize",
        py::overload_cast<const rvc::DataMatrix&, const rvc::DataMatrix&>(
            &rvc::residualize),
        py::arg("m"), py::arg("confounders"));
  m.def("pairwise_correlation", &rvc::pairwise_correlation, py::arg("xs"),
        py::arg("ys"));

  py::class_<rvc::ContributionProfile>(m, "ContributionProfile")
      .def(py::init<>())
      .def_readwrite("alpha", &rvc::ContributionProfile::alpha)
      .def_readwrite("contributions", &rvc::ContributionProfile::contributions)
      .def_readwrite("variable_names",
                     &rvc::ContributionProfile::variable_names)
      .def_readwrite("threshold", &rvc::ContributionProfile::threshold)
      .def_readwrite("flagged", &rvc::ContributionProfile::flagged)
      .def("set_threshold", &rvc::ContributionProfile::set_threshold,
           py::arg("t"))
      .def("flagged_names", &rvc::ContributionProfile::flagged_names);

  m.def("rv_coefficient", &rvc::rv_coefficient, py::arg("x"), py::arg("y"));
  m.def("modified_rv_statistic", &rvc::modified_rv_statistic, py::arg("xs"),
        py::arg("ys"), py::arg("alpha"));
  m.def("contributions", &rvc::contributions, py::arg("xs"), py::arg("ys"),
        py::arg("alpha"));
  m.def("per_response_profile", &rvc::per_response_profile, py::arg("xs"),
        py::arg("ys"), py::arg("k"), py::arg("alpha"));

  py::class_<rvc::PermutationPlan>(m, "PermutationPlan")
      .def(py::init<>())
      .def(py::init([](int n_perms, std::uint64_t seed, double level) {
             return rvc::PermutationPlan{n_perms, seed, level};
           }),
           py::arg("n_perms") = 5000, py::arg("seed") = 0,
           py::arg("level") = 0.95)
      .def_readwrite("n_perms", &rvc::PermutationPlan::n_perms)
      .def_readwrite("seed", &rvc::PermutationPlan::seed)
      .def_readwrite("level", &rvc::PermutationPlan::level);

  py::class_<rvc::SpcResult>(m, "SpcResult")
      .def_readonly("observed", &rvc::SpcResult::observed)
      .def_readonly("p_value", &rvc::SpcResult::p_value);

  py::class_<rvc::TestResult>(m, "TestResult")
      .def(py::init<>())
      .def_readwrite("grid", &rvc::TestResult::grid)
      .def_readwrite("observed", &rvc::TestResult::observed)
      .def_readwrite("p_values", &rvc::TestResult::p_values)
      .def_readwrite("alpha_m", &rvc::TestResult::alpha_m)
      .def_readwrite("aspc_p", &rvc::TestResult::aspc_p);

  m.def("spc_pvalue", &rvc::spc_pvalue, py::arg("xs"), py::arg("ys"),
        py::arg("alpha"), py::arg("plan"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("aspc", &rvc::aspc, py::arg("xs"), py::arg("ys"), py::arg("grid"),
        py::arg("plan"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("contribution_threshold", &rvc::contribution_threshold, py::arg("xs"),
        py::arg("ys"), py::arg("alpha"), py::arg("plan"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("empirical_quantile", &rvc::empirical_quantile, py::arg("values"),
        py::arg("level"));

  py::class_<rvc::Provenance>(m, "Provenance")
      .def(py::init<>())
      .def_readwrite("command", &rvc::Provenance::command)
      .def_readwrite("version", &rvc::Provenance::version)
      .def_readwrite("grid", &rvc::Provenance::grid)
      .def_readwrite("n_perms", &rvc::Provenance::n_perms)
      .def_readwrite("level", &rvc::Provenance::level)
      .def_readwrite("seed", &rvc::Provenance::seed)
      .def_readwrite("inputs", &rvc::Provenance::inputs);

  py::class_<rvc::AnalysisReport>(m, "AnalysisReport")
      .def(py::init<>())
      .def_readwrite("test", &rvc::AnalysisReport::test)
      .def_readwrite("profile", &rvc::AnalysisReport::profile)
      .def_readwrite("response_names", &rvc::AnalysisReport::response_names)
      .def_readwrite("per_response", &rvc::AnalysisReport::per_response)
      .def_readwrite("provenance", &rvc::AnalysisReport::provenance)
      .def("__eq__",
           [](const rvc::AnalysisReport& a, const rvc::AnalysisReport& b) {
             return a == b;
           });

  m.def(
      "analyze",
      [](const rvc::DataMatrix& x, const rvc::DataMatrix& y,
         const std::optional<rvc::DataMatrix>& confounders,
         const std::vector<int>& grid, const rvc::PermutationPlan& plan,
         int threads) {
        return rvc::analyze(x, y, confounders ? &*confounders : nullptr, grid,
                            plan, threads);
      },
      py::arg("x"), py::arg("y"), py::arg("confounders") = py::none(),
      py::arg("grid") = std::vector<int>{1, 2, 3, 4},
      py::arg("plan") = rvc::PermutationPlan{}, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());

  m.def("load_matrix_csv", &rvc::load_matrix_csv, py::arg("path"));
  m.def("write_matrix_csv", &rvc::write_matrix_csv, py::arg("m"),
        py::arg("path"));
  m.def("report_to_json", &rvc::report_to_json, py::arg("report"));
  m.def("report_from_json", &rvc::report_from_json, py::arg("text"));
  m.def("write_report", &rvc::write_report, py::arg("report"),
        py::arg("path"));
  m.def("read_report", &rvc::read_report, py::arg("path"));
  m.def("fnv1a64_file", &rvc::fnv1a64_file, py::arg("path"));

  m.def("contribution_plot_svg", &rvc::contribution_plot_svg,
        py::arg("profile"));
  m.def("render_contribution_plot", &rvc::render_contribution_plot,
        py::arg("profile"), py::arg("path"));
  m.def("response_profile_svg", &rvc::response_profile_svg,
        py::arg("variable"), py::arg("response_names"), py::arg("values"),
        py::arg("alpha"));
  m.def("render_response_profile", &rvc::render_response_profile,
        py::arg("variable"), py::arg("response_names"), py::arg("values"),
        py::arg("alpha"), py::arg("path"));

  py::class_<rvc::CoefficientEntry>(m, "CoefficientEntry")
      .def(py::init([](rvc::Index row, rvc::Index col, double value) {
             return rvc::CoefficientEntry{row, col, value};
           }),
           py::arg("row"), py::arg("col"), py::arg("value"))
      .def_readwrite("row", &rvc::CoefficientEntry::row)
      .def_readwrite("col", &rvc::CoefficientEntry::col)
      .def_readwrite("value", &rvc::CoefficientEntry::value);

  py::class_<rvc::BlockSpec>(m, "BlockSpec")
      .def(py::init([](rvc::Index lo, rvc::Index hi, double off_diagonal) {
             return rvc::BlockSpec{lo, hi, off_diagonal};
           }),
           py::arg("lo"), py::arg("hi"), py::arg("off_diagonal"))
      .def_readwrite("lo", &rvc::BlockSpec::lo)
      .def_readwrite("hi", &rvc::BlockSpec::hi)
      .def_readwrite("off_diagonal", &rvc::BlockSpec::off_diagonal);

  py::class_<rvc::LinearModelSpec>(m, "LinearModelSpec")
      .def(py::init<>())
      .def_readwrite("p", &rvc::LinearModelSpec::p)
      .def_readwrite("q", &rvc::LinearModelSpec::q)
      .def_readwrite("sigma_x", &rvc::LinearModelSpec::sigma_x)
      .def_readwrite("sigma_e", &rvc::LinearModelSpec::sigma_e)
      .def_readwrite("coefficients", &rvc::LinearModelSpec::coefficients);

  py::class_<rvc::PopulationCovariance>(m, "PopulationCovariance")
      .def_readonly("xx", &rvc::PopulationCovariance::xx)
      .def_readonly("xy", &rvc::PopulationCovariance::xy)
      .def_readonly("yy", &rvc::PopulationCovariance::yy);

  m.def("population_covariance", &rvc::population_covariance, py::arg("spec"));
  m.def("population_rv", &rvc::population_rv, py::arg("spec"));
  m.def("population_contributions", &rvc::population_contributions,
        py::arg("spec"), py::arg("standardized"));

  py::class_<rvc::SimulationSpec>(m, "SimulationSpec")
      .def(py::init<>())
      .def_readwrite("n", &rvc::SimulationSpec::n)
      .def_readwrite("p", &rvc::SimulationSpec::p)
      .def_readwrite("q", &rvc::SimulationSpec::q)
      .def_readwrite("x_blocks", &rvc::SimulationSpec::x_blocks)
      .def_readwrite("e_blocks", &rvc::SimulationSpec::e_blocks)
      .def_readwrite("coefficients", &rvc::SimulationSpec::coefficients)
      .def_readwrite("seed", &rvc::SimulationSpec::seed);

  py::class_<rvc::Dataset>(m, "Dataset")
      .def_readonly("x", &rvc::Dataset::x)
      .def_readonly("y", &rvc::Dataset::y);

  m.def("build_block_covariance", &rvc::build_block_covariance,
        py::arg("dim"), py::arg("blocks"));
  m.def(
      "sample_mvn",
      [](rvc::Index n, const rvc::Matrix& sigma, std::uint64_t seed) {
        return rvc::sample_mvn(n, sigma, seed);
      },
      py::arg("n"), py::arg("sigma"), py::arg("seed"));
  m.def("generate_dataset", &rvc::generate_dataset, py::arg("spec"));
  m.def("preset", &rvc::preset, py::arg("name"), py::arg("seed"));
  m.def("population_model", &rvc::population_model, py::arg("spec"));
}
