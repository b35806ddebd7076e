#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "riemsimplex/cli.hpp"
#include "riemsimplex/error.hpp"
#include "riemsimplex/euclid_simplex.hpp"
#include "riemsimplex/karcher.hpp"
#include "riemsimplex/mesh_io.hpp"
#include "riemsimplex/triangulation.hpp"

namespace py = pybind11;
namespace rs = riemsimplex;

namespace {

// Rows are points, as numpy users expect.
rs::EuclideanSimplex from_rows(const rs::Mat& rows) { return rs::EuclideanSimplex(rows.transpose()); }

rs::ManifoldDescriptor descriptor(const std::string& kind, int dim, double radius, double scale,
                                  std::vector<double> periods) {
  rs::ManifoldDescriptor d;
  d.kind = kind;
  d.dim = dim;
  d.radius = radius;
  d.scale = scale;
  d.periods = std::move(periods);
  if (kind == "torus") d.dim = static_cast<int>(d.periods.size());
  return d;
}

py::tuple result(const rs::CommandResult& r) { return py::make_tuple(r.code, r.text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Riemannian simplices, Karcher means and triangulation checks";

  static py::exception<rs::Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const rs::Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("thickness", [](const rs::Mat& rows) { return rs::thickness(from_rows(rows)); }, py::arg("points"));
  m.def("fatness", [](const rs::Mat& rows) { return rs::fatness(from_rows(rows)); }, py::arg("points"));
  m.def("volume", [](const rs::Mat& rows) { return rs::volume(from_rows(rows)); }, py::arg("points"));
  m.def("altitudes", [](const rs::Mat& rows) { return rs::Vec(rs::altitudes(from_rows(rows))); },
        py::arg("points"));

  m.def(
      "scale_h",
      [](const std::string& kind, int dim, double t0, const std::string& variant, double radius, double scale,
         std::vector<double> periods) {
        const rs::ModelManifold mf = rs::make_manifold(descriptor(kind, dim, radius, scale, std::move(periods)));
        return rs::scale_h(mf, t0, rs::parse_variant(variant));
      },
      py::arg("kind"), py::arg("dim"), py::arg("t0"), py::arg("variant") = "main", py::arg("radius") = 1.0,
      py::arg("scale") = 1.0, py::arg("periods") = std::vector<double>{});

  m.def(
      "karcher_mean",
      [](const std::string& kind, const rs::Mat& rows, const rs::Vec& weights, double radius, double scale) {
        const int n = kind == "euclidean" ? static_cast<int>(rows.cols()) : static_cast<int>(rows.cols()) - 1;
        const rs::ManifoldDescriptor d = descriptor(kind, n, radius, scale, {});
        const rs::ModelManifold mf = rs::make_manifold(d);
        const double s = rs::physical_scale(d);
        std::vector<rs::Vec> pts;
        for (Eigen::Index i = 0; i < rows.rows(); ++i) pts.push_back(mf.normalize_point(rows.row(i).transpose() / s));
        const rs::KarcherResult r = rs::karcher_mean(mf, pts, weights);
        return py::make_tuple(rs::Vec(r.point * s), r.iterations, r.residual);
      },
      py::arg("kind"), py::arg("vertices"), py::arg("weights"), py::arg("radius") = 1.0, py::arg("scale") = 1.0);

  m.def(
      "generate",
      [](const std::string& kind, int level, int n, std::vector<double> periods, double radius, double perturb,
         std::uint64_t seed) {
        return rs::generate_command(kind, level, n, std::move(periods), radius, perturb, seed).text;
      },
      py::arg("kind"), py::arg("level") = 0, py::arg("n") = 12, py::arg("periods") = std::vector<double>{1.0, 1.0},
      py::arg("radius") = 1.0, py::arg("perturb") = 0.0, py::arg("seed") = 1);

  m.def(
      "certify",
      [](const std::string& mesh, int samples, std::uint64_t seed) {
        return result(rs::certify_command(rs::parse_mesh_string(mesh), samples, seed));
      },
      py::arg("mesh"), py::arg("samples") = 500, py::arg("seed") = 1);

  m.def(
      "triangulate_check",
      [](const std::string& mesh, double t0, const std::string& variant, int samples, std::uint64_t seed) {
        return result(rs::triangulate_command(rs::parse_mesh_string(mesh), t0, variant, samples, seed));
      },
      py::arg("mesh"), py::arg("t0"), py::arg("variant") = "main", py::arg("samples") = 100000,
      py::arg("seed") = 1);

  m.def(
      "distort_report",
      [](const std::string& mesh, double t0, int pairs, std::uint64_t seed) {
        return result(rs::distort_command(rs::parse_mesh_string(mesh), t0, pairs, seed));
      },
      py::arg("mesh"), py::arg("t0"), py::arg("pairs") = 10000, py::arg("seed") = 1);

  m.def(
      "property_suite",
      [](int samples, int oracle_samples, std::uint64_t seed) {
        return result(rs::property_suite_command(samples, oracle_samples, seed));
      },
      py::arg("samples") = 0, py::arg("oracle_samples") = 500, py::arg("seed") = 1);

  m.def("canonical_mesh", [](const std::string& mesh) { return rs::serialize_mesh(rs::parse_mesh_string(mesh)); },
        py::arg("mesh"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "riemsimplex");
        std::ostringstream out, err;
        const int code = rs::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
