#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>

#include "radex/coverage.hpp"
#include "radex/engine.hpp"
#include "radex/error.hpp"
#include "radex/fuse.hpp"
#include "radex/plan.hpp"
#include "radex/preprocess.hpp"
#include "radex/version.hpp"

namespace py = pybind11;

namespace {

using PlanHandle = std::shared_ptr<radex::TransformPlan>;
using InArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::string to_json_text(const py::object& mapping) {
  if (mapping.is_none()) return "{}";
  return py::module_::import("json").attr("dumps")(mapping).cast<std::string>();
}

radex::ImageGrid to_grid(const InArray& array) {
  if (array.ndim() != 2 && !(array.ndim() == 3 && array.shape(2) == 3)) {
    throw radex::Error(radex::ErrorCode::kChannelMismatch, "expected an (h, w) or (h, w, 3) array");
  }
  const auto h = static_cast<std::size_t>(array.shape(0));
  const auto w = static_cast<std::size_t>(array.shape(1));
  const std::size_t ch = array.ndim() == 3 ? 3 : 1;
  const double* data = array.data();
  return radex::ImageGrid(w, h, ch, std::vector<double>(data, data + w * h * ch));
}

py::array_t<double> to_array(std::size_t rows, std::size_t cols, std::size_t channels,
                             const double* data) {
  std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)};
  if (channels > 1) shape.push_back(static_cast<py::ssize_t>(channels));
  py::array_t<double> out(shape);
  std::copy(data, data + rows * cols * channels, out.mutable_data());
  return out;
}

py::array_t<double> to_array(const radex::ImageGrid& grid) {
  return to_array(grid.height(), grid.width(), grid.channels(), grid.pixels().data());
}

PlanHandle build_plan(const py::object& config, const py::kwargs& overrides) {
  radex::PlanConfig base = radex::config_from_json(to_json_text(config));
  base = radex::config_from_json(to_json_text(overrides), base);
  py::gil_scoped_release release;
  return std::make_shared<radex::TransformPlan>(radex::build_plan(base));
}

}  // namespace

PYBIND11_MODULE(_radex, m) {
  m.doc() = "Non-linear Radon (RadEx) transform toolkit";
  m.attr("__version__") = std::string(radex::kVersion);

  static py::exception<radex::Error> error(m, "RadexError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const radex::Error& e) {
      py::object instance = py::handle(error.ptr())(e.what());
      instance.attr("code") = std::string(radex::to_string(e.code()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<radex::TransformPlan, PlanHandle>(m, "Plan")
      .def_property_readonly("m", [](const radex::TransformPlan& p) { return p.dims.m(); })
      .def_readonly("q_values", &radex::TransformPlan::q_values)
      .def_readonly("c_values", &radex::TransformPlan::c_values)
      .def_property_readonly("chosen_count",
                             [](const radex::TransformPlan& p) { return p.provenance.chosen_count; })
      .def_property_readonly("curve_count", &radex::TransformPlan::curve_count)
      .def("to_json", [](const radex::TransformPlan& p) { return radex::plan_to_json(p); })
      .def_static("from_json", [](const std::string& text) {
        return std::make_shared<radex::TransformPlan>(radex::plan_from_json(text));
      })
      .def("__repr__", [](const radex::TransformPlan& p) {
        return "<radex.Plan m=" + std::to_string(p.dims.m()) + " curves=" +
               std::to_string(p.curve_count()) + ">";
      });

  m.def("build_plan", &build_plan, py::arg("config") = py::none(),
        "Builds a plan from a config mapping; keyword arguments override it.");

  m.def(
      "transform",
      [](const InArray& image, const PlanHandle& plan, unsigned workers) {
        radex::ImageGrid grid = to_grid(image);
        radex::Sinogram s;
        {
          py::gil_scoped_release release;
          s = radex::radex_sinogram(grid, plan, workers);
        }
        return to_array(s.rows, s.cols, 1, s.values.data());
      },
      py::arg("image"), py::arg("plan"), py::arg("workers") = 0,
      "Sinogram matrix with one row per c value and one column per q value.");

  m.def(
      "render",
      [](const InArray& sinogram, std::size_t side) {
        if (sinogram.ndim() != 2) throw radex::Error(radex::ErrorCode::kDimensionMismatch, "expected 2-D");
        const auto rows = static_cast<std::size_t>(sinogram.shape(0));
        const auto cols = static_cast<std::size_t>(sinogram.shape(1));
        std::vector<double> values(sinogram.data(), sinogram.data() + rows * cols);
        return to_array(radex::normalize_matrix(rows, cols, values, side, side));
      },
      py::arg("sinogram"), py::arg("side"), "Min-max normalised side x side rendering.");

  m.def(
      "preprocess",
      [](const InArray& image, const py::object& config) {
        const radex::PreprocessConfig c = radex::preprocess_config_from_json(to_json_text(config));
        radex::ImageGrid grid = to_grid(image);
        radex::ImageGrid out;
        {
          py::gil_scoped_release release;
          out = radex::preprocess_pipeline(grid, c);
        }
        return to_array(out);
      },
      py::arg("image"), py::arg("config") = py::none());

  m.def(
      "fuse",
      [](const InArray& image, const InArray& render) {
        return to_array(radex::fuse(to_grid(image), to_grid(render)).grid);
      },
      py::arg("image"), py::arg("render"));

  m.def(
      "coverage",
      [](const PlanHandle& plan, unsigned workers) {
        py::gil_scoped_release release;
        return radex::coverage_of(*plan, workers).fraction;
      },
      py::arg("plan"), py::arg("workers") = 0);

  m.def(
      "radon",
      [](const InArray& image, std::size_t angles) {
        radex::ImageGrid grid = to_grid(image);
        radex::LinearSinogram s;
        {
          py::gil_scoped_release release;
          s = radex::radon_linear(grid, angles);
        }
        return to_array(s.rows, s.cols, 1, s.values.data());
      },
      py::arg("image"), py::arg("angles") = radex::kDefaultAngleCount);
}
