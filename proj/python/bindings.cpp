#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "volsamp/errors.hpp"
#include "volsamp/montecarlo.hpp"
#include "volsamp/oracle.hpp"
#include "volsamp/regression.hpp"
#include "volsamp/sampler.hpp"
#include "volsamp/suites.hpp"

namespace py = pybind11;
using namespace volsamp;

namespace {

IndexSubset subset_of(const std::vector<Index>& indices, Index n) {
  return IndexSubset(indices, n);
}

std::vector<Index> indices_of(const IndexSubset& s) { return {s.begin(), s.end()}; }

py::dict report_dict(const VerificationReport& r) {
  py::dict out;
  out["quantity"] = r.quantity;
  out["method"] = r.method;
  out["predicted"] = r.predicted;
  out["estimated"] = r.estimated;
  out["max_abs_deviation"] = r.max_abs_deviation;
  out["largest_deviation"] = r.largest_deviation;
  out["ci_halfwidth"] = r.ci_halfwidth;
  out["tolerance"] = r.tolerance;
  out["passed"] = r.passed;
  out["replicates"] = r.replicates;
  out["seed"] = r.seed.value;
  out["note"] = r.note;
  py::list subs;
  for (const auto& s : r.subchecks) subs.append(report_dict(s));
  out["subchecks"] = subs;
  return out;
}

py::list report_list(const std::vector<VerificationReport>& reports) {
  py::list out;
  for (const auto& r : reports) out.append(report_dict(r));
  return out;
}

McConfig mc_config(std::size_t replicates, std::uint64_t seed, double confidence,
                   unsigned threads) {
  McConfig cfg;
  cfg.replicates = replicates;
  cfg.seed = RngSeed{seed};
  cfg.confidence = confidence;
  cfg.threads = threads;
  return cfg;
}

OracleOptions oracle_options(double cap, unsigned threads) {
  OracleOptions o;
  o.cap = cap;
  o.threads = threads;
  return o;
}

RegressionProblem problem(const Matrix& x, const Vector& y) {
  return RegressionProblem(ProblemMatrix(x), y);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact volume sampling of matrix columns and its unbiased estimators.";

  py::register_exception<Error>(m, "VolsampError", PyExc_ValueError);

  m.def("sample",
        [](const Matrix& x, Index s, std::uint64_t seed) {
          ProblemMatrix pm(x);
          py::gil_scoped_release release;
          return indices_of(reverse_iterative_sample(pm, s, RngSeed{seed}));
        },
        py::arg("x"), py::arg("size"), py::arg("seed") = 0,
        "Reverse iterative volume sample of `size` column indices (0-based).");

  m.def("naive_sample",
        [](const Matrix& x, Index s, std::uint64_t seed, double cap) {
          return indices_of(naive_sample(ProblemMatrix(x), s, RngSeed{seed}, cap));
        },
        py::arg("x"), py::arg("size"), py::arg("seed") = 0, py::arg("cap") = kDefaultSubsetCap);

  m.def("removal_weights",
        [](const Matrix& x, const std::vector<Index>& s) {
          return removal_weights(ProblemMatrix(x), subset_of(s, x.cols()));
        },
        py::arg("x"), py::arg("subset"));

  m.def("volume_distribution",
        [](const Matrix& x, Index s, double cap) {
          py::list out;
          for (const auto& e : enumerate_volume_distribution(ProblemMatrix(x), s, cap)) {
            out.append(py::make_tuple(py::tuple(py::cast(indices_of(e.subset))), e.probability));
          }
          return out;
        },
        py::arg("x"), py::arg("size"), py::arg("cap") = kDefaultSubsetCap);

  m.def("has_full_support",
        [](const Matrix& x, Index s, double cap) { return has_full_support(ProblemMatrix(x), s, cap); },
        py::arg("x"), py::arg("size"), py::arg("cap") = kDefaultSubsetCap);

  m.def("pseudo_inverse",
        [](const Matrix& x, std::optional<std::vector<Index>> s) {
          ProblemMatrix pm(x);
          return s ? pseudo_inverse(pm, subset_of(*s, x.cols())) : pseudo_inverse(pm);
        },
        py::arg("x"), py::arg("subset") = py::none());

  m.def("gram_det",
        [](const Matrix& x, const std::vector<Index>& s) {
          return gram_det(ProblemMatrix(x), subset_of(s, x.cols()));
        },
        py::arg("x"), py::arg("subset"));

  m.def("solve_full",
        [](const Matrix& x, const Vector& y) {
          const auto sol = solve_full(problem(x, y));
          return py::make_tuple(sol.w, sol.loss);
        },
        py::arg("x"), py::arg("y"), "Returns (w*, L(w*)).");

  m.def("solve_subset",
        [](const Matrix& x, const Vector& y, const std::vector<Index>& s) {
          const auto sol = solve_subset(problem(x, y), subset_of(s, x.cols()));
          return py::make_tuple(sol.w, sol.loss);
        },
        py::arg("x"), py::arg("y"), py::arg("subset"),
        "Returns (w*_S, full-data loss L(w*_S)).");

  m.def("averaged_solution",
        [](const Matrix& x, const Vector& y, const std::vector<std::vector<Index>>& samples) {
          std::vector<IndexSubset> subsets;
          for (const auto& s : samples) subsets.push_back(subset_of(s, x.cols()));
          const auto sol = averaged_solution(problem(x, y), subsets);
          return py::make_tuple(sol.w, sol.loss);
        },
        py::arg("x"), py::arg("y"), py::arg("samples"));

  m.def("exact_pinv_expectation",
        [](const Matrix& x, Index s, double cap, unsigned threads) {
          return exact_pinv_expectation(ProblemMatrix(x), s, oracle_options(cap, threads)).value;
        },
        py::arg("x"), py::arg("size"), py::arg("cap") = kDefaultSubsetCap, py::arg("threads") = 1);

  m.def("exact_gram_inverse_expectation",
        [](const Matrix& x, Index s, double cap, unsigned threads) {
          const auto e =
              exact_gram_inverse_expectation(ProblemMatrix(x), s, oracle_options(cap, threads));
          return py::make_tuple(e.value, e.support_complete);
        },
        py::arg("x"), py::arg("size"), py::arg("cap") = kDefaultSubsetCap, py::arg("threads") = 1,
        "Returns (expectation, support_complete).");

  m.def("exact_loss_expectation",
        [](const Matrix& x, const Vector& y, double cap) {
          return exact_loss_expectation(problem(x, y), oracle_options(cap, 1)).scalar();
        },
        py::arg("x"), py::arg("y"), py::arg("cap") = kDefaultSubsetCap);

  m.def("exact_weight_expectation",
        [](const Matrix& x, const Vector& y, Index s, double cap) {
          return Vector(exact_weight_expectation(problem(x, y), s, oracle_options(cap, 1)).value);
        },
        py::arg("x"), py::arg("y"), py::arg("size"), py::arg("cap") = kDefaultSubsetCap);

  m.def("exact_repeated_sampling_loss",
        [](const Matrix& x, const Vector& y, Index k) {
          return exact_repeated_sampling_loss(problem(x, y), k);
        },
        py::arg("x"), py::arg("y"), py::arg("k"));

  m.def("mc_verify_pinv",
        [](const Matrix& x, Index s, std::size_t replicates, std::uint64_t seed,
           double confidence, unsigned threads) {
          ProblemMatrix pm(x);
          const auto cfg = mc_config(replicates, seed, confidence, threads);
          return report_dict(mc_verify_pinv(pm, s, cfg));
        },
        py::arg("x"), py::arg("size"), py::arg("replicates") = 10000, py::arg("seed") = 0,
        py::arg("confidence") = 0.99, py::arg("threads") = 1);

  m.def("mc_verify_loss",
        [](const Matrix& x, const Vector& y, std::size_t replicates, std::uint64_t seed) {
          return report_dict(mc_verify_loss(problem(x, y), mc_config(replicates, seed, 0.99, 1)));
        },
        py::arg("x"), py::arg("y"), py::arg("replicates") = 10000, py::arg("seed") = 0);

  m.def("exact_suite",
        [](const Matrix& x, std::optional<Vector> y, std::optional<Index> s, double cap) {
          ProblemMatrix pm(x);
          return report_list(run_exact_suite(pm, y, s.value_or(pm.d()), oracle_options(cap, 1)));
        },
        py::arg("x"), py::arg("y") = py::none(), py::arg("size") = py::none(),
        py::arg("cap") = kDefaultSubsetCap);

  m.def("mc_suite",
        [](const Matrix& x, std::optional<Vector> y, std::optional<Index> s, Index k,
           std::size_t replicates, std::uint64_t seed, unsigned threads) {
          ProblemMatrix pm(x);
          return report_list(run_mc_suite(pm, y, s.value_or(pm.d()), k,
                                          mc_config(replicates, seed, 0.99, threads)));
        },
        py::arg("x"), py::arg("y") = py::none(), py::arg("size") = py::none(), py::arg("k") = 2,
        py::arg("replicates") = 10000, py::arg("seed") = 0, py::arg("threads") = 1);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
