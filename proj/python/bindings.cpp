// Python bindings. Exact values cross the boundary as "p/q" strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hillshare/allocator.hpp"
#include "hillshare/experiments.hpp"
#include "hillshare/mms.hpp"
#include "hillshare/shares.hpp"

namespace py = pybind11;
using namespace hillshare;

namespace {

using Strings = std::vector<std::string>;
using Bundles = std::vector<std::vector<std::size_t>>;

ShareQuery make_query(std::int64_t n, const std::string& alpha, std::optional<std::int64_t> m) {
  return ShareQuery{n, m, Rational::parse(alpha)};
}

std::vector<Rational> parse_all(const Strings& values) {
  std::vector<Rational> out;
  for (const auto& s : values) out.push_back(Rational::parse(s));
  return out;
}

Strings to_strings(std::span<const Rational> values) {
  Strings out;
  for (const auto& x : values) out.push_back(x.str());
  return out;
}

RawMatrix parse_matrix(const std::vector<Strings>& rows) {
  RawMatrix raw;
  for (const auto& r : rows) raw.push_back(parse_all(r));
  return raw;
}

py::dict witness_dict(const WitnessInstance& w) {
  py::dict d;
  d["values"] = to_strings(w.vector().values());
  d["claimed_mms"] = w.claimed_mms.str();
  d["construction"] = w.construction;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hill's share for indivisible bads (exact rational core)";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  m.def("hill_share", [](std::int64_t n, const std::string& alpha, std::optional<std::int64_t> objects) {
    return hill_share(make_query(n, alpha, objects)).str();
  }, py::arg("n"), py::arg("alpha"), py::arg("m") = py::none());

  m.def("mms_lower_bound", [](std::int64_t n, const std::string& alpha, std::optional<std::int64_t> objects) {
    return mms_lower_bound(make_query(n, alpha, objects)).str();
  }, py::arg("n"), py::arg("alpha"), py::arg("m") = py::none());

  m.def("theoretical_ratio", [](std::int64_t n, const std::string& alpha, std::optional<std::int64_t> objects) {
    return theoretical_ratio(make_query(n, alpha, objects)).str();
  }, py::arg("n"), py::arg("alpha"), py::arg("m") = py::none());

  m.def("guarantee", [](std::int64_t n, const std::string& alpha) {
    return guarantee(n, Rational::parse(alpha)).str();
  }, py::arg("n"), py::arg("alpha"));

  m.def("classify", [](std::int64_t n, const std::string& alpha, bool guarantee_family) {
    const Rational a = Rational::parse(alpha);
    const RegionIndex r = guarantee_family ? classify_guarantee(n, a) : classify_share(n, a);
    return py::make_tuple(r.k, to_string(r.tag));
  }, py::arg("n"), py::arg("alpha"), py::arg("guarantee_family") = false);

  m.def("witness_upper", [](std::int64_t n, const std::string& alpha, std::optional<std::int64_t> objects) {
    return witness_dict(witness_upper(make_query(n, alpha, objects)));
  }, py::arg("n"), py::arg("alpha"), py::arg("m") = py::none());

  m.def("witness_lower", [](std::int64_t n, const std::string& alpha, std::optional<std::int64_t> objects) {
    return witness_dict(witness_lower(make_query(n, alpha, objects)));
  }, py::arg("n"), py::arg("alpha"), py::arg("m") = py::none());

  m.def("exact_mms", [](const Strings& values, std::size_t n) {
    const MmsResult r = exact_mms_partition(DisutilityVector(parse_all(values)), n);
    return py::make_tuple(r.value.str(), r.allocation.bundles);
  }, py::arg("values"), py::arg("n"));

  m.def("fits_under", [](const Strings& values, std::size_t n, const std::string& threshold) {
    return fits_under(DisutilityVector(parse_all(values)), n, Rational::parse(threshold));
  }, py::arg("values"), py::arg("n"), py::arg("threshold"));

  m.def("lex_minmax", [](const Strings& values, std::size_t n) {
    return lex_minmax(DisutilityVector(parse_all(values)), n).bundles;
  }, py::arg("values"), py::arg("n"));

  m.def("allocate", [](const std::vector<Strings>& rows) {
    const Instance inst = normalize(parse_matrix(rows));
    const AllocationReport report = allocate(inst);
    py::list agents;
    for (const auto& a : report.agents) {
      py::dict d;
      d["alpha"] = a.alpha.str();
      d["guarantee"] = a.guarantee.str();
      d["disutility"] = a.disutility.str();
      d["satisfied"] = a.satisfied;
      agents.append(d);
    }
    return py::make_tuple(report.allocation.bundles, agents);
  }, py::arg("rows"));

  m.def("allocate_two_agents_tight", [](const std::vector<Strings>& rows) {
    return allocate_two_agents_tight(normalize(parse_matrix(rows))).bundles;
  }, py::arg("rows"));

  m.def("curve_samples", [](std::int64_t n, const Strings& grid, std::optional<std::int64_t> objects) {
    py::list out;
    for (const auto& r : curve_samples(n, parse_all(grid), objects)) {
      out.append(py::make_tuple(r.alpha.str(), r.upper.str(), r.lower.str(), r.guarantee.str(), r.ratio.str()));
    }
    return out;
  }, py::arg("n"), py::arg("grid"), py::arg("m") = py::none());
}
