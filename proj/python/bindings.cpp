#include "cy3/bounds.hpp"
#include "cy3/cli.hpp"
#include "cy3/error.hpp"
#include "cy3/json_io.hpp"
#include "cy3/pipeline.hpp"
#include "cy3/surfaces.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cy3;

// Values cross the boundary as JSON text; the Python package decodes them.
namespace {

FormsState forms(const std::string& text) { return forms_from_json(parse_json(text)); }

std::string classify(const std::string& text) {
    auto f = forms(text);
    Json j = to_json(classify_cubic(f.trilinear));
    j["components"] = to_json(positive_index_components(f.trilinear));
    return j.dump();
}

std::string analyze_json(const std::string& text, std::optional<std::string> mu0, long r, std::optional<long> m_cap) {
    auto f = forms(text);
    AnalysisParams p;
    if (mu0) p.mu0 = parse_rational(*mu0);
    p.r = r;
    if (m_cap) p.m_cap = *m_cap;
    return report_to_json(analyze(f.trilinear, f.c2, p), f.trilinear, f.c2).dump();
}

std::string pairs_json(long c2e_upper) {
    Json out = Json::array();
    for (const auto& p : enumerate_pairs(Z(c2e_upper))) out.push_back(to_json(p));
    return out.dump();
}

std::string flop_json(const std::string& text, const std::vector<long>& eta, const std::map<long, long>& counts) {
    CurveCounts c;
    for (auto [d, n] : counts) c[Z(d)] = Z(n);
    std::vector<Z> e(eta.begin(), eta.end());
    auto s = apply_flop(forms(text), FlopData(e, c));
    return forms_to_json(s.trilinear, s.c2).dump();
}

std::string effectivity_json(const std::string& text, long x, long y, long m_cap) {
    auto f = forms(text);
    DivisorClass d{x, y};
    return to_json(min_effectivity_m(f.trilinear, f.c2, d, m_cap)).dump();
}

py::tuple cli(const std::vector<std::string>& args, const std::string& input) {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_cy3, m) {
    m.doc() = "Exact cup-product form analysis for Picard rank 2";
    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            py::set_error(domain_error, ("[" + e.code() + "] " + e.what()).c_str());
        }
    });

    m.def("classify", &classify, py::arg("forms"));
    m.def("analyze", &analyze_json, py::arg("forms"), py::arg("mu0") = py::none(), py::arg("r") = 1,
          py::arg("m_cap") = py::none());
    m.def("enumerate_pairs", &pairs_json, py::arg("c2e_upper"));
    m.def("apply_flop", &flop_json, py::arg("forms"), py::arg("eta"), py::arg("counts"));
    m.def("min_effectivity", &effectivity_json, py::arg("forms"), py::arg("x"), py::arg("y"), py::arg("m_cap") = 10000);
    m.def("run_cli", &cli, py::arg("args"), py::arg("input") = "");
}
