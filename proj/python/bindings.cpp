#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "corrbound/bounds.hpp"
#include "corrbound/gf2.hpp"
#include "corrbound/oracle.hpp"
#include "corrbound/polyeval.hpp"
#include "corrbound/random_codes.hpp"
#include "corrbound/scanner.hpp"
#include "corrbound/weights.hpp"

namespace py = pybind11;
using namespace corrbound;

namespace {

py::int_ bigint_to_py(const BigInt& v) {
    std::ostringstream os;
    os << v;
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(os.str()));
}

py::dict counts_to_py(const WeightDistribution& w) {
    py::dict d;
    for (const auto& [weight, count] : w.counts()) d[py::int_(weight)] = bigint_to_py(count);
    return d;
}

std::map<unsigned, BigInt> counts_from_py(const py::dict& d) {
    std::map<unsigned, BigInt> counts;
    for (auto item : d) {
        const unsigned w = item.first.cast<unsigned>();
        counts[w] = BigInt(py::str(item.second).cast<std::string>());
    }
    return counts;
}

py::dict report_to_py(const SecurityReport& r) {
    py::dict d;
    const auto pair = [](const ValueLog2& v) { return py::make_tuple(v.linear, v.log2); };
    d["delta"] = r.delta;
    d["linf_norm"] = pair(r.linf_norm);
    d["l2_dist"] = pair(r.l2_dist);
    d["l1_lower"] = r.l1_lower ? py::object(pair(*r.l1_lower)) : py::none();
    d["l1_upper"] = r.l1_upper ? py::object(pair(*r.l1_upper)) : py::none();
    d["prior_l1"] = pair(r.prior_l1);
    d["prior_linf_bias"] = pair(r.prior_linf_bias);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Security bounds for linear TRNG correctors Y = G*X over GF(2)";

    static py::exception<Error> base_exc(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base_exc);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base_exc);
    py::register_exception<ValidationError>(m, "ValidationError", base_exc);
    py::register_exception<RankTooLarge>(m, "RankTooLarge", base_exc);
    py::register_exception<InvalidParams>(m, "InvalidParams", base_exc);
    py::register_exception<EmptyCode>(m, "EmptyCode", base_exc);
    py::register_exception<RankDeficient>(m, "RankDeficient", base_exc);
    py::register_exception<TargetUnreachable>(m, "TargetUnreachable", base_exc);
    py::register_exception<InputTooLarge>(m, "InputTooLarge", base_exc);
    py::register_exception<NotRankDeficient>(m, "NotRankDeficient", base_exc);
    py::register_exception<EmptyCorpus>(m, "EmptyCorpus", base_exc);
    py::register_exception<InternalCheckError>(m, "InternalCheckError", base_exc);

    py::class_<GeneratorMatrix>(m, "GeneratorMatrix")
        .def_static("parse", &parse_generator, py::arg("text"))
        .def_property_readonly("k", &GeneratorMatrix::rows)
        .def_property_readonly("n", &GeneratorMatrix::cols)
        .def("get", &GeneratorMatrix::get, py::arg("row"), py::arg("col"))
        .def("serialize", &serialize_generator)
        .def("rank", &gf2_rank)
        .def("__repr__", [](const GeneratorMatrix& g) {
            return "<GeneratorMatrix " + std::to_string(g.rows()) + "x" +
                   std::to_string(g.cols()) + ">";
        });

    m.def("reed_muller_generator", &reed_muller_generator, py::arg("r"), py::arg("m"));
    m.def("rank", &gf2_rank, py::arg("generator"));
    m.def(
        "enumerate_rowspan",
        [](const GeneratorMatrix& g, std::size_t limit) {
            if (g.cols() > 64) throw InvalidParams("python rowspan export supports n <= 64");
            std::vector<std::pair<std::uint64_t, unsigned>> out;
            for_each_codeword(
                g, [&](const Word* bits, unsigned w) { out.emplace_back(bits[0], w); }, limit);
            return out;
        },
        py::arg("generator"), py::arg("limit") = kDefaultEnumerationLimit,
        "Codewords of rowspan(G) as (bits, weight) pairs; bit i is coordinate i.");

    py::class_<WeightDistribution>(m, "WeightDistribution")
        .def(py::init([](unsigned n, unsigned rank, const py::dict& counts, bool partial) {
                 return WeightDistribution(n, rank, counts_from_py(counts), partial);
             }),
             py::arg("n"), py::arg("rank"), py::arg("counts"), py::arg("partial") = false)
        .def_property_readonly("n", &WeightDistribution::n)
        .def_property_readonly("rank", &WeightDistribution::rank)
        .def_property_readonly("partial", &WeightDistribution::partial)
        .def_property_readonly("counts", &counts_to_py)
        .def("min_distance",
             [](const WeightDistribution& w) -> py::object {
                 auto d = w.min_distance();
                 return d ? py::object(py::int_(*d)) : py::none();
             })
        .def("serialize", &serialize_weights)
        .def("__repr__", [](const WeightDistribution& w) {
            return "<WeightDistribution n=" + std::to_string(w.n()) +
                   " rank=" + std::to_string(w.rank()) + ">";
        });

    m.def("weights_from_matrix", &weights_from_matrix, py::arg("generator"),
          py::arg("limit") = kDefaultEnumerationLimit);
    m.def("parse_weights", &parse_weights, py::arg("text"), py::arg("allow_partial") = false);

    py::class_<DeltaGrid>(m, "DeltaGrid")
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def_static("linspace", &DeltaGrid::linspace, py::arg("lo"), py::arg("hi"),
                    py::arg("count"))
        .def_static("logspace", &DeltaGrid::logspace, py::arg("lo"), py::arg("hi"),
                    py::arg("count"))
        .def_property_readonly("values", &DeltaGrid::values);

    m.def(
        "eval_w",
        [](const WeightDistribution& w, const std::vector<double>& deltas) {
            return eval_w(w, DeltaGrid(deltas));
        },
        py::arg("weights"), py::arg("deltas"), "W_G(delta) per grid point (log-sum-exp).");
    m.def(
        "eval_w_minus_1_log2",
        [](const WeightDistribution& w, const std::vector<double>& deltas) {
            return eval_w_minus_1_log2(w, DeltaGrid(deltas));
        },
        py::arg("weights"), py::arg("deltas"),
        "log2(W_G(delta) - 1) per grid point, cancellation-free.");
    m.def("security_bits_from_log2", &security_bits_from_log2, py::arg("log2_bound"));

    py::class_<BiasModel>(m, "BiasModel")
        .def_static("uniform", &BiasModel::uniform, py::arg("delta"))
        .def_static("per_bit", &BiasModel::per_bit, py::arg("deltas"));

    const auto vl2 = [](const ValueLog2& v) { return py::make_tuple(v.linear, v.log2); };
    m.def(
        "linf_norm",
        [vl2](const WeightDistribution& w, double d) { return vl2(linf_norm(w, d)); },
        py::arg("weights"), py::arg("delta"), "(linear, log2) of 2^-rank * W(delta).");
    m.def(
        "l2_distance",
        [vl2](const WeightDistribution& w, double d) { return vl2(l2_distance(w, d)); },
        py::arg("weights"), py::arg("delta"));
    m.def(
        "l1_bounds",
        [vl2](const WeightDistribution& w, double d, bool sharp) {
            const L1Bounds b = l1_bounds(
                w, d, sharp ? L1LowerDenominator::minus_one : L1LowerDenominator::full);
            return py::make_tuple(vl2(b.lower), vl2(b.upper));
        },
        py::arg("weights"), py::arg("delta"), py::arg("sharp_lower") = false,
        "((lower_linear, lower_log2), (upper_linear, upper_log2)).");
    m.def(
        "prior_bounds",
        [vl2](const WeightDistribution& w, double d) {
            const PriorBounds p = prior_bounds(w, d);
            return py::make_tuple(vl2(p.l1), vl2(p.linf_bias));
        },
        py::arg("weights"), py::arg("delta"));
    m.def(
        "report",
        [](const WeightDistribution& w, const std::vector<double>& deltas, bool sharp) {
            auto rows = report(w, DeltaGrid(deltas),
                               sharp ? L1LowerDenominator::minus_one : L1LowerDenominator::full);
            py::list out;
            for (const auto& r : rows) out.append(report_to_py(r));
            return out;
        },
        py::arg("weights"), py::arg("deltas"), py::arg("sharp_lower") = false);
    m.def("max_bias_for_security", &max_bias_for_security, py::arg("weights"),
          py::arg("security_bits"));

    py::class_<ExactDistribution>(m, "ExactDistribution")
        .def_property_readonly("k", [](const ExactDistribution& d) { return d.k; })
        .def_property_readonly("probs", [](const ExactDistribution& d) { return d.probs; });
    m.def("exact_distribution_direct", &exact_distribution_direct, py::arg("generator"),
          py::arg("bias"));
    m.def("exact_distribution_fourier", &exact_distribution_fourier, py::arg("generator"),
          py::arg("bias"));
    m.def(
        "exact_norms",
        [](const ExactDistribution& d) {
            const ExactNorms n = exact_norms(d);
            py::dict out;
            out["linf"] = n.linf;
            out["l2"] = n.l2;
            out["l1"] = n.l1;
            out["tv"] = n.tv;
            out["plancherel_gap"] = n.plancherel_gap;
            return out;
        },
        py::arg("distribution"));
    m.def(
        "check_rank_deficiency_claim",
        [](const GeneratorMatrix& g, const BiasModel& b) {
            const RankDeficiencyCheck c = check_rank_deficiency_claim(g, b);
            return py::make_tuple(c.tv, c.pass);
        },
        py::arg("generator"), py::arg("bias"));

    py::class_<RandomCodeParams>(m, "RandomCodeParams")
        .def(py::init([](unsigned n, unsigned k, double delta, std::size_t samples,
                         std::uint64_t seed) {
                 return RandomCodeParams{n, k, delta, samples, seed};
             }),
             py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("samples") = 1,
             py::arg("seed") = 1);
    m.def(
        "expected_l2_sq",
        [vl2](const RandomCodeParams& p) { return vl2(expected_l2_sq(p)); }, py::arg("params"));
    m.def(
        "variance_bound_l2_sq",
        [vl2](const RandomCodeParams& p) { return vl2(variance_bound_l2_sq(p)); },
        py::arg("params"));
    m.def(
        "chebyshev_tail",
        [](const RandomCodeParams& p, double eps) {
            const ChebyshevTail t = chebyshev_tail(p, eps);
            return py::make_tuple(t.probability, t.rate_threshold, t.exponential_decay);
        },
        py::arg("params"), py::arg("eps"));
    m.def("sample_generator", &sample_generator, py::arg("n"), py::arg("k"), py::arg("seed"));
    m.def(
        "monte_carlo_l2_sq",
        [](const RandomCodeParams& p, unsigned workers) {
            const MonteCarloResult r = monte_carlo_l2_sq(p, workers);
            return py::make_tuple(r.mean, r.stddev);
        },
        py::arg("params"), py::arg("workers") = 1);

    py::class_<FrontierPoint>(m, "FrontierPoint")
        .def_readonly("id", &FrontierPoint::id)
        .def_readonly("n", &FrontierPoint::n)
        .def_readonly("k", &FrontierPoint::k)
        .def_readonly("d", &FrontierPoint::d)
        .def_readonly("rate", &FrontierPoint::rate)
        .def_readonly("security_bits", &FrontierPoint::security_bits)
        .def_readonly("max_delta", &FrontierPoint::max_delta);
    m.def(
        "scan_corpus",
        [](const std::filesystem::path& dir, double delta_ref, double security_ref,
           unsigned workers) {
            const ScanResult r = scan_corpus(dir, delta_ref, security_ref, workers);
            py::list skips;
            for (const auto& s : r.skips) skips.append(py::make_tuple(s.path, s.error));
            return py::make_tuple(r.points, skips);
        },
        py::arg("dir"), py::arg("delta_ref") = 0.1, py::arg("security_ref") = 80.0,
        py::arg("workers") = 1);
    m.def(
        "pareto_frontier",
        [](std::vector<FrontierPoint> pts, const std::string& objective) {
            if (objective != "security_bits" && objective != "max_delta")
                throw InvalidParams("objective must be security_bits or max_delta");
            return pareto_frontier(std::move(pts), objective == "security_bits"
                                                       ? FrontierObjective::security_bits
                                                       : FrontierObjective::max_delta);
        },
        py::arg("points"), py::arg("objective") = "security_bits");

    m.attr("DEFAULT_ENUMERATION_LIMIT") = kDefaultEnumerationLimit;
}
