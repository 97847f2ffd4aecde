// JSON in, JSON out; the Python package handles Fraction conversion.
#include <pybind11/pybind11.h>

#include "circuitkit/errors.hpp"
#include "circuitkit/io.hpp"

namespace py = pybind11;
using namespace circuitkit;
using io::json;

namespace {

json parse(const std::string& s) { return json::parse(s); }

std::string imbalances_json(const std::string& W) {
    Subspace S = io::subspace_from_json(parse(W));
    json j = io::to_json(imbalances(S));
    json cs = json::array();
    for (const auto& c : S.circuits()) cs.push_back(io::to_json(c.vector));
    j["circuits"] = cs;
    return j.dump();
}

std::string solve_json(const std::string& lp) { return io::to_json(solve(io::lp_from_json(parse(lp)))).dump(); }

std::string augment_json(const std::string& lp_text, const std::string& rule, bool check, const std::string& start) {
    LPInstance lp = io::lp_from_json(parse(lp_text));
    Rule r = parse_rule(rule);
    RunOptions ro;
    if (!start.empty()) ro.start = io::vec_from_json(parse(start));
    ro.record_epsilon = check || r == Rule::SteepestDescent;
    AugmentationTrace t = run(lp, r, ro);
    json j = io::to_json(t);
    if (check) j["audit"] = io::to_json(audit_trace(t, lp.A, lp.c, lp.u));
    return j.dump();
}

std::string graver_json(const std::string& A) { return io::to_json(graver_basis(io::matrix_from_json(parse(A)))).dump(); }

std::string conjecture_json(const std::string& W, const std::string& target) {
    Subspace S = io::subspace_from_json(parse(W));
    ConjectureReport r = conjecture_decompose(S, io::intvec_from_json(parse(target)));
    json j = io::to_json(r);
    j["verified"] = r.status == ConjectureReport::Status::Holds && verify_conjecture_report(S, r);
    return j.dump();
}

std::string proximity_json(const std::string& W, const std::string& d, const std::string& c) {
    Subspace S = io::subspace_from_json(parse(W));
    Vec dv = io::vec_from_json(parse(d));
    json j = {{"feasibility", io::to_json(hoffman_feasibility_witness(S, dv))}};
    if (!c.empty()) j["optimality"] = io::to_json(hoffman_opt_witness(S, dv, io::vec_from_json(parse(c))));
    return j.dump();
}

bool is_tu_json(const std::string& A) { return is_TU(io::matrix_from_json(parse(A))).tu; }

std::string appendix_json() { return io::to_json(appendix_counterexample()).dump(); }

}  // namespace

PYBIND11_MODULE(_circuitkit, m) {
    m.doc() = "Exact circuit imbalance toolkit (JSON bridge)";
    py::register_exception<Error>(m, "CircuitkitError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const json::exception& e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });
    m.def("imbalances", &imbalances_json, py::arg("subspace"));
    m.def("solve", &solve_json, py::arg("lp"));
    m.def("augment", &augment_json, py::arg("lp"), py::arg("rule"), py::arg("check") = false,
          py::arg("start") = "");
    m.def("graver", &graver_json, py::arg("matrix"));
    m.def("conjecture", &conjecture_json, py::arg("subspace"), py::arg("target"));
    m.def("proximity", &proximity_json, py::arg("subspace"), py::arg("d"), py::arg("c") = "");
    m.def("is_tu", &is_tu_json, py::arg("matrix"));
    m.def("appendix", &appendix_json);
}
