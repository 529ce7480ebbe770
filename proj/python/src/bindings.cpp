#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ritzmaj/bounds.hpp"
#include "ritzmaj/errors.hpp"
#include "ritzmaj/harness.hpp"
#include "ritzmaj/report_json.hpp"
#include "ritzmaj/ritz.hpp"
#include "ritzmaj/rng.hpp"
#include "ritzmaj/subspace.hpp"

namespace py = pybind11;
using namespace ritzmaj;

namespace {

// Structured results cross the boundary as JSON text, decoded on the Python side.
std::string dump(const Json& j) { return j.dump(); }

OrthonormalBasis basis(const CMatrix& m, bool fix) {
  if (fix) return orthonormalize(DenseMatrix(m));
  return OrthonormalBasis(m);
}

template <class E>
E parse_enum(std::optional<E> v, const std::string& what, const std::string& s) {
  if (!v) throw ContractError("unknown " + what + " '" + s + "'");
  return *v;
}

std::vector<BoundId> parse_bounds(const std::optional<std::vector<std::string>>& names) {
  if (!names) return {kAllBounds.begin(), kAllBounds.end()};
  std::vector<BoundId> out;
  for (const auto& s : *names) out.push_back(parse_enum(bound_from_string(s), "bound", s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ritz value bounds under subspace perturbation";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputDomainError>(m, "InputDomainError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<RankError>(m, "RankError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<ReproductionFailure>(m, "ReproductionFailure", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.attr("rng_algorithm") = std::string(Rng::kAlgorithm);
  m.attr("bound_names") = [] {
    std::vector<std::string> v;
    for (BoundId b : kAllBounds) v.emplace_back(to_string(b));
    return v;
  }();

  m.def(
      "principal_angles",
      [](const CMatrix& x, const CMatrix& y, bool fix) { return principal_angles(basis(x, fix), basis(y, fix)).values(); },
      py::arg("x"), py::arg("y"), py::arg("orthonormalize") = false);

  m.def(
      "ritz_values",
      [](const CMatrix& a, const CMatrix& x, bool fix) {
        return ritz_values(HermitianMatrix::from_full(a), basis(x, fix));
      },
      py::arg("a"), py::arg("x"), py::arg("orthonormalize") = false);

  m.def(
      "spread", [](const CMatrix& a) { return spread(HermitianMatrix::from_full(a)); }, py::arg("a"));

  m.def(
      "classify_invariant",
      [](const CMatrix& a, const CMatrix& x, double tol) {
        const auto c = classify_invariant(HermitianMatrix::from_full(a), OrthonormalBasis(x), tol);
        return std::make_pair(std::string(to_string(c.tag)), c.residual);
      },
      py::arg("a"), py::arg("x"), py::arg("tol") = Tolerances{}.inv);

  m.def(
      "check_json",
      [](const CMatrix& a, const CMatrix& x, const CMatrix& y, std::optional<std::vector<std::string>> bounds,
         double tol, double inv_tol, bool fix) {
        const CheckOptions opts{tol, inv_tol, 1.0};
        const auto ids = parse_bounds(bounds);
        const auto inst = analyze(HermitianMatrix::from_full(a), basis(x, fix), basis(y, fix), opts);
        Json out = Json::array();
        for (const auto& r : check_bounds(inst, ids, opts)) out.push_back(to_json(r));
        return dump(out);
      },
      py::arg("a"), py::arg("x"), py::arg("y"), py::arg("bounds") = py::none(), py::arg("tol") = 1e-9,
      py::arg("inv_tol") = 1e-8, py::arg("orthonormalize") = false);

  m.def(
      "majorization_json",
      [](const std::vector<double>& x, const std::vector<double>& y, bool strong, double tol) {
        return dump(to_json(strong ? strongly_majorized(x, y, tol) : weakly_majorized(x, y, tol)));
      },
      py::arg("x"), py::arg("y"), py::arg("strong") = false, py::arg("tol") = 1e-9);

  m.def(
      "campaign_json",
      [](std::size_t trials, std::uint64_t seed, std::pair<std::size_t, std::size_t> n,
         std::pair<std::size_t, std::size_t> k, const std::string& mode, const std::string& spectrum,
         const std::string& angles, std::optional<std::vector<std::string>> bounds, double tol, double inv_tol,
         unsigned jobs, std::size_t max_shrink) {
        FuzzConfig cfg;
        cfg.trials = trials;
        cfg.seed = seed;
        std::tie(cfg.n_min, cfg.n_max) = n;
        std::tie(cfg.k_min, cfg.k_max) = k;
        cfg.invariance_mode = parse_enum(invariance_mode_from_string(mode), "mode", mode);
        cfg.spectrum_model = parse_enum(spectrum_model_from_string(spectrum), "spectrum model", spectrum);
        cfg.angle_model = parse_enum(angle_model_from_string(angles), "angle model", angles);
        cfg.bounds = parse_bounds(bounds);
        cfg.tolerance = tol;
        cfg.inv_tolerance = inv_tol;
        cfg.jobs = jobs;
        cfg.max_shrink = max_shrink;
        CampaignReport r;
        {
          py::gil_scoped_release nogil;
          r = run_campaign(cfg);
        }
        return dump(to_json(r, false));
      },
      py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("n") = std::make_pair(2, 12),
      py::arg("k") = std::make_pair(1, 6), py::arg("mode") = "invariant-x", py::arg("spectrum") = "mixed",
      py::arg("angles") = "mixed", py::arg("bounds") = py::none(), py::arg("tol") = 1e-9,
      py::arg("inv_tol") = 1e-8, py::arg("jobs") = 1, py::arg("max_shrink") = 5);

  m.def(
      "repro_sharp_json", [](std::size_t m_, const RealVector& angles) {
        return dump(to_json(repro_sharp(m_, AngleVector::from_unsorted(angles))));
      },
      py::arg("m"), py::arg("angles"));

  m.def("repro_intermediate_json", [] { return dump(to_json(repro_intermediate_counterexample())); });

  m.def(
      "properties_json",
      [](std::uint64_t seed, std::size_t trials, double tol, std::size_t max_n) {
        return dump(to_json(property_suites(seed, trials, tol, max_n)));
      },
      py::arg("seed") = 0, py::arg("trials") = 1000, py::arg("tol") = 1e-9, py::arg("max_n") = 8);
}
