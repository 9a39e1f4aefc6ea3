#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "heavytail/errors.hpp"
#include "heavytail/garch_tail.hpp"
#include "heavytail/limits.hpp"
#include "heavytail/processes.hpp"
#include "heavytail/spectra.hpp"
#include "heavytail/tail.hpp"
#include "heavytail/verify.hpp"
#include "heavytail/version.hpp"

namespace py = pybind11;
using namespace heavytail;

namespace {

VolSpec vol_from_kwargs(const std::string& kind, std::size_t m, double mu,
                        double tau, const std::vector<double>& psi,
                        double xi_std) {
  if (kind == "m_dependent") return MDependentVol{m, mu, tau};
  if (kind == "exp_gaussian") return ExpGaussianVol{psi, xi_std};
  throw ParameterError("vol kind must be m_dependent or exp_gaussian");
}

py::dict summary_dict(const SummaryStats& s) {
  py::dict d;
  d["median"] = s.median;
  d["mean"] = s.mean;
  d["min"] = s.min;
  d["max"] = s.max;
  d["mad_from_one"] = s.mad_from_one;
  return d;
}

}  // namespace

PYBIND11_MODULE(_heavytail, mod) {
  mod.doc() =
      "Eigenvalue limit laboratory for heavy-tailed sample covariance "
      "matrices";
  mod.attr("__version__") = kVersion;

  py::register_exception<ParameterError>(mod, "ParameterError",
                                         PyExc_ValueError);
  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<EstimationError>(mod, "EstimationError",
                                          PyExc_RuntimeError);

  py::class_<TailLaw>(mod, "TailLaw")
      .def(py::init([](double alpha, double q, double scale) {
             TailLaw law{alpha, q, scale};
             law.validate();
             return law;
           }),
           py::arg("alpha"), py::arg("q") = 1.0, py::arg("scale") = 1.0)
      .def_readonly("alpha", &TailLaw::alpha)
      .def_readonly("q", &TailLaw::q)
      .def_readonly("scale", &TailLaw::scale);

  py::class_<ProcessSpec>(mod, "ProcessSpec")
      .def_static("iid", &ProcessSpec::iid, py::arg("law"))
      .def_static(
          "sv",
          [](const TailLaw& z, const std::string& vol, std::size_t m,
             double mu, double tau, const std::vector<double>& psi,
             double xi_std) {
            return ProcessSpec::sv(z,
                                   vol_from_kwargs(vol, m, mu, tau, psi,
                                                   xi_std));
          },
          py::arg("z_law"), py::arg("vol") = "exp_gaussian", py::arg("m") = 1,
          py::arg("mu") = 0.0, py::arg("tau") = 0.5,
          py::arg("psi") = std::vector<double>{1.0}, py::arg("xi_std") = 1.0)
      .def_static(
          "garch",
          [](double a0, const std::vector<double>& a,
             const std::vector<double>& b, std::size_t burn_in) {
            return ProcessSpec::garch(GarchSpec{a0, a, b}, burn_in);
          },
          py::arg("a0"), py::arg("a"), py::arg("b"),
          py::arg("burn_in") = kDefaultGarchBurnIn);

  mod.def(
      "sample_tail",
      [](const TailLaw& law, std::size_t count, std::uint64_t seed) {
        Rng rng(seed);
        return sample_tail(law, count, rng);
      },
      py::arg("law"), py::arg("count"), py::arg("seed") = 0);

  mod.def(
      "normalizing_constant",
      [](const TailLaw& law, std::size_t m) {
        return NormalizingSequence::analytic(law).at(m);
      },
      py::arg("law"), py::arg("m"),
      "a_m = scale * m^(1/alpha) for the Pareto family");

  mod.def(
      "hill_estimate",
      [](const std::vector<double>& data, std::size_t k) {
        return hill_estimate(data, k);
      },
      py::arg("data"), py::arg("k"));
  mod.def("hill_default_k", &hill_default_k, py::arg("n"));

  mod.def(
      "simulate_path",
      [](const ProcessSpec& spec, std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return simulate_path(spec, n, rng);
      },
      py::arg("spec"), py::arg("n"), py::arg("seed") = 0);

  mod.def(
      "garch_stationarity_margin",
      [](double a1, double b1, std::size_t samples, std::uint64_t seed) {
        Rng rng(seed);
        const StationarityMargin m =
            garch_stationarity_margin(a1, b1, samples, rng);
        py::dict d;
        d["estimate"] = m.estimate;
        d["std_error"] = m.std_error;
        d["samples"] = m.samples;
        return d;
      },
      py::arg("a1"), py::arg("b1"), py::arg("samples") = 100000,
      py::arg("seed") = 0);

  mod.def(
      "extremal_index_blocks",
      [](const std::vector<double>& data, std::size_t block_len,
         double threshold_quantile) {
        return extremal_index_blocks(data, block_len, threshold_quantile);
      },
      py::arg("data"), py::arg("block_len"), py::arg("threshold_quantile"));

  mod.def(
      "moment_h",
      [](double a1, double b1, double alpha, std::size_t nodes) {
        return moment_h(MomentFunction{a1, b1, nodes}, alpha);
      },
      py::arg("a1"), py::arg("b1"), py::arg("alpha"),
      py::arg("nodes") = 256, "E[(a1 Z^2 + b1)^alpha] for standard normal Z");

  mod.def(
      "solve_garch_tail_index",
      [](double a1, double b1, double tol, std::size_t nodes) {
        const TailIndexResult r =
            solve_tail_index(MomentFunction{a1, b1, nodes}, tol);
        py::dict d;
        d["alpha_star"] = r.alpha_star;
        d["h_alpha_star"] = r.h_at_alpha;
        d["margin"] = r.margin;
        d["nodes"] = r.nodes;
        return d;
      },
      py::arg("a1"), py::arg("b1"), py::arg("tol") = kDefaultTailTol,
      py::arg("nodes") = 256);

  mod.def(
      "build_matrix",
      [](const ProcessSpec& spec, std::size_t p, std::size_t n,
         std::uint64_t seed) {
        const ObservationMatrix m = build_matrix(spec, p, n, Rng(seed));
        py::array_t<double> arr({p, n});
        std::copy(m.entries.begin(), m.entries.end(),
                  arr.mutable_data());
        return arr;
      },
      py::arg("spec"), py::arg("p"), py::arg("n"), py::arg("seed") = 0);

  mod.def(
      "top_eigenvalues",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
         std::size_t k, double normalizer) {
        if (x.ndim() != 2) throw ParameterError("expected a 2-d array");
        ObservationMatrix m;
        m.p = static_cast<std::size_t>(x.shape(0));
        m.n = static_cast<std::size_t>(x.shape(1));
        m.entries.assign(x.data(), x.data() + x.size());
        const SpectrumResult r = top_eigenvalues(m, k, normalizer);
        py::dict d;
        d["eigenvalues"] = r.eigenvalues;
        d["normalizer"] = r.normalizer;
        d["normalized"] = r.normalized;
        d["eigenvalue_sum"] = r.eigenvalue_sum;
        d["sum_squares"] = r.sum_squares;
        return d;
      },
      py::arg("matrix"), py::arg("k"), py::arg("normalizer") = 1.0);

  mod.def(
      "gamma_points",
      [](std::size_t k, std::uint64_t seed) {
        Rng rng(seed);
        return gamma_points(k, rng);
      },
      py::arg("k"), py::arg("seed") = 0);

  mod.def(
      "limit_topk_sample",
      [](double alpha, double b, std::size_t k, std::uint64_t seed) {
        Rng rng(seed);
        return limit_topk_sample(LimitLaw{alpha, b}, k, rng);
      },
      py::arg("alpha"), py::arg("b"), py::arg("k"), py::arg("seed") = 0);

  mod.def(
      "frechet_cdf",
      [](double alpha, double b, double x) {
        return frechet_cdf(LimitLaw{alpha, b}, x);
      },
      py::arg("alpha"), py::arg("b"), py::arg("x"));

  mod.def(
      "b_sv_analytic",
      [](const std::string& vol, double alpha, std::size_t m, double mu,
         double tau, const std::vector<double>& psi, double xi_std,
         std::size_t mc_draws, std::uint64_t seed) {
        Rng rng(seed);
        const MonteCarloValue v = b_sv_analytic(
            vol_from_kwargs(vol, m, mu, tau, psi, xi_std), alpha, mc_draws,
            rng);
        py::dict d;
        d["value"] = v.value;
        d["std_error"] = v.std_error;
        d["draws"] = v.draws;
        return d;
      },
      py::arg("vol"), py::arg("alpha"), py::arg("m") = 1, py::arg("mu") = 0.0,
      py::arg("tau") = 0.5, py::arg("psi") = std::vector<double>{1.0},
      py::arg("xi_std") = 1.0, py::arg("mc_draws") = 1000000,
      py::arg("seed") = 0);

  mod.def(
      "b_empirical",
      [](const ProcessSpec& spec, double alpha, std::size_t n, std::size_t p,
         const std::vector<double>& x_grid, std::size_t reps,
         std::uint64_t seed) {
        const BEmpiricalResult r =
            b_empirical(spec, alpha, n, p, x_grid, reps, Rng(seed));
        py::dict d;
        py::list grid;
        for (const auto& pt : r.points) {
          py::dict g;
          g["x"] = pt.x;
          g["b_hat"] = pt.b_hat;
          g["std_error"] = pt.std_error;
          g["exceedances"] = pt.exceedances;
          grid.append(g);
        }
        d["grid"] = grid;
        d["pooled"] = r.pooled;
        d["pooled_std_error"] = r.pooled_std_error;
        d["reps"] = r.reps;
        d["a_np_sq"] = r.a_np_sq;
        return d;
      },
      py::arg("spec"), py::arg("alpha"), py::arg("n"), py::arg("p"),
      py::arg("x_grid") = std::vector<double>{0.5, 1.0, 2.0, 4.0},
      py::arg("reps") = 5000, py::arg("seed") = 0);

  mod.def(
      "ks_distance",
      [](const std::vector<double>& sample, const py::function& cdf) {
        return ks_distance(sample, [&cdf](double x) {
          return cdf(x).cast<double>();
        });
      },
      py::arg("sample"), py::arg("cdf"));

  mod.def(
      "run_experiment",
      [](const ProcessSpec& process, double alpha, std::size_t n,
         const std::string& growth, double exponent, std::size_t p,
         std::size_t k, std::size_t reps, std::uint64_t seed) {
        ExperimentConfig cfg;
        cfg.process = process;
        cfg.alpha = alpha;
        cfg.n = n;
        if (growth == "beta")
          cfg.growth = GrowthBeta{exponent};
        else if (growth == "kappa")
          cfg.growth = GrowthKappa{exponent};
        else
          cfg.growth = GrowthExplicit{p};
        cfg.k = k;
        cfg.reps = reps;
        cfg.seed = seed;
        const VerificationReport rep = run_experiment(cfg);
        py::dict d;
        d["ks_largest"] = rep.ks_largest;
        d["ks_uniform_spacing"] = rep.ks_uniform_spacing;
        d["ratio_max_diag"] = summary_dict(rep.ratio_max_diag);
        d["ratio_max_entry"] = summary_dict(rep.ratio_max_entry);
        d["b_used"] = rep.b_used;
        d["normalizer_sq"] = rep.normalizer_sq;
        d["p"] = rep.p;
        d["warnings"] = rep.warnings;
        d["passed"] = rep.passed();
        return d;
      },
      py::arg("process"), py::arg("alpha"), py::arg("n"),
      py::arg("growth") = "explicit", py::arg("exponent") = 1.0,
      py::arg("p") = 100, py::arg("k") = 1, py::arg("reps") = 100,
      py::arg("seed") = 0);
}
