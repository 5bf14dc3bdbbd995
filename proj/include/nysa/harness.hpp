#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "nysa/christoffel.hpp"
#include "nysa/csv.hpp"
#include "nysa/lambert.hpp"
#include "nysa/rff.hpp"
#include "nysa/synthetic.hpp"

namespace nysa {

using Json = nlohmann::ordered_json;

/// Everything a sweep / score dump / bound check needs. Defaults give a
/// small self-contained synthetic run.
struct ExperimentConfig {
  // dataset
  std::string data_path;
  std::string data_format = "blobs";  // csv | blobs | ring | moons
  int drop_column = -1;               // csv only: drop a label column
  Index synth_n = 300;
  Index synth_d = 2;
  int synth_blob_count = 3;
  double synth_spread = 0.5;
  std::uint64_t synth_seed = 7;

  // kernel
  std::string kernel = "gaussian";  // gaussian | laplace
  double bandwidth = 1.0;

  // sweep grid
  std::vector<double> gammas = {1e-1, 1e-2, 1e-3};
  std::vector<std::string> methods = {"das", "uniform"};
  std::vector<Index> k_list = {10, 20, 40};
  bool k_from_ras = false;  // derive k per cell from the adaptive sampler
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  std::vector<std::string> metrics = {"opnorm"};

  // adaptive-sampler and metric parameters
  double epsilon = 0.1;
  double c = 10.0;
  double t = 0.5;
  Index subset_size = 20;
  int num_subsets = 10;
  Index n_features = 4000;
  double mu = 1e-12;     // stabilizer for the measured approximations
  Index exact_cap = 5000;

  // bound-check parameters
  Index check_n = 60;
  double check_epsilon = 0.5;
  double check_delta = 0.2;
  int check_seeds = 200;

  // execution
  int workers = 1;
  std::string out_prefix = "nysa_out";
  bool emit_timings = false;  // timing files are never byte-stable

  void validate() const {
    static const std::vector<std::string> known_methods = {
        "das", "ras", "uniform", "rls", "approx-ras"};
    static const std::vector<std::string> known_metrics = {
        "opnorm", "maxnorm", "frob-subsets"};
    if (methods.empty()) throw config_error("config: methods list is empty");
    if (metrics.empty()) throw config_error("config: metrics list is empty");
    if (seeds.empty()) throw config_error("config: seeds list is empty");
    if (gammas.empty()) throw config_error("config: gamma list is empty");
    for (const auto& m : methods)
      if (std::find(known_methods.begin(), known_methods.end(), m) ==
          known_methods.end())
        throw config_error("config: unknown method '" + m + "'");
    for (const auto& m : metrics)
      if (std::find(known_metrics.begin(), known_metrics.end(), m) ==
          known_metrics.end())
        throw config_error("config: unknown metric '" + m + "'");
    for (double g : gammas)
      if (!(g > 0.0)) throw config_error("config: gamma must be positive");
    if (!k_from_ras && k_list.empty())
      throw config_error("config: k list is empty and k is not from-ras");
    for (Index k : k_list)
      if (k < 1) throw config_error("config: k must be >= 1");
    if (!(bandwidth > 0.0))
      throw config_error("config: bandwidth must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw config_error("config: epsilon must lie in (0, 1)");
    if (!(c > 0.0)) throw config_error("config: c must be positive");
    if (!(t >= 0.0)) throw config_error("config: t must be nonnegative");
    if (!(mu >= 0.0)) throw config_error("config: mu must be nonnegative");
    if (subset_size < 1) throw config_error("config: subset_size must be >= 1");
    if (num_subsets < 1) throw config_error("config: num_subsets must be >= 1");
    if (n_features < 1) throw config_error("config: n_features must be >= 1");
    if (workers < 1) throw config_error("config: workers must be >= 1");
    if (kernel != "gaussian" && kernel != "laplace")
      throw config_error("config: unknown kernel '" + kernel + "'");
    if (data_format != "csv" && data_format != "blobs" &&
        data_format != "ring" && data_format != "moons")
      throw config_error("config: unknown data format '" + data_format + "'");
    if (data_format == "csv" && data_path.empty())
      throw config_error("config: csv format requires a data path");
    if (!(check_delta > 0.0 && check_delta < 1.0))
      throw config_error("config: check_delta outside (0, 1)");
    if (!(check_epsilon > 0.0 && check_epsilon < 1.0))
      throw config_error("config: check_epsilon outside (0, 1)");
    if (check_n < 4) throw config_error("config: check_n too small");
    if (check_seeds < 1) throw config_error("config: check_seeds must be >= 1");
  }

  KernelSpec kernel_spec() const {
    return KernelSpec{kernel == "gaussian" ? KernelFamily::GaussianRBF
                                           : KernelFamily::Laplace,
                      bandwidth};
  }
};

inline Dataset load_dataset(const ExperimentConfig& cfg) {
  if (cfg.data_format == "csv")
    return standardize(read_csv_matrix(cfg.data_path, cfg.drop_column));
  if (cfg.data_format == "blobs")
    return standardize(synth_blobs(cfg.synth_n, cfg.synth_d,
                                   cfg.synth_blob_count, cfg.synth_spread,
                                   cfg.synth_seed));
  if (cfg.data_format == "ring")
    return standardize(synth_ring_cluster(cfg.synth_n, cfg.synth_seed));
  return standardize(synth_two_moons(cfg.synth_n, cfg.synth_seed));
}

// Tags for deriving per-task RNG streams from a cell seed.
namespace detail {
inline constexpr std::uint64_t kStreamRas = 1;
inline constexpr std::uint64_t kStreamRff = 2;
inline constexpr std::uint64_t kStreamUniform = 3;
inline constexpr std::uint64_t kStreamRls = 4;
inline constexpr std::uint64_t kStreamSubsets = 5;
}  // namespace detail

struct ResultRow {
  std::string method;
  double gamma = 0.0;
  Index k = 0;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

struct TimingRow {
  std::string method;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::string phase;
  double wallclock_ms = 0.0;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  std::vector<TimingRow> timings;
  std::string results_csv;
  std::string summary_json;
  std::string timings_csv;
};

namespace detail {

inline double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

/// Select landmarks for one (method, gamma, seed, k) task. For the two
/// adaptive randomized methods k is emergent and the argument is ignored.
inline LandmarkSet select_landmarks(const std::string& method,
                                    const ProjectorKernel& p,
                                    const RasTrace* ras,
                                    const RasTrace* approx,
                                    Index k, std::uint64_t seed) {
  if (method == "das") return das_sample(p, k).landmarks;
  if (method == "ras") return ras->landmarks;
  if (method == "approx-ras") return approx->landmarks;
  if (method == "uniform")
    return uniform_sample(p.n(), k, mix_seed(seed, kStreamUniform + 16 *
                                                       static_cast<std::uint64_t>(k)));
  return rls_sample(p, k, mix_seed(seed, kStreamRls +
                                             16 * static_cast<std::uint64_t>(k)));
}

}  // namespace detail

/// Landmark sweep over (method, gamma, k, seed) cells. Cells over
/// (gamma, seed) run as independent jobs on a worker pool; output rows are
/// keyed and sorted, so worker count never changes the emitted bytes.
inline SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset data = load_dataset(cfg);
  if (data.n() > cfg.exact_cap)
    throw config_error("run_sweep: dataset exceeds the exact-path cap (" +
                       std::to_string(cfg.exact_cap) + " points)");
  const KernelSpec spec = cfg.kernel_spec();
  const KernelMatrix kernel = kernel_matrix(spec, data);

  const bool wants_ras =
      cfg.k_from_ras ||
      std::find(cfg.methods.begin(), cfg.methods.end(), "ras") !=
          cfg.methods.end();
  const bool wants_approx =
      std::find(cfg.methods.begin(), cfg.methods.end(), "approx-ras") !=
      cfg.methods.end();
  if (wants_approx && spec.family != KernelFamily::GaussianRBF)
    throw config_error("run_sweep: approx-ras requires the gaussian kernel");

  // Shared immutable projectors, one per gamma.
  std::vector<ProjectorKernel> projectors;
  projectors.reserve(cfg.gammas.size());
  for (double g : cfg.gammas) projectors.push_back(projector_kernel(kernel, g));

  struct Cell {
    std::size_t gamma_idx;
    std::size_t seed_idx;
    std::vector<ResultRow> rows;
    std::vector<TimingRow> timings;
  };
  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < cfg.gammas.size(); ++gi)
    for (std::size_t si = 0; si < cfg.seeds.size(); ++si)
      cells.push_back(Cell{gi, si, {}, {}});

  const auto run_cell = [&](Cell& cell) {
    const double gamma = cfg.gammas[cell.gamma_idx];
    const ProjectorKernel& p = projectors[cell.gamma_idx];
    const std::uint64_t seed = cfg.seeds[cell.seed_idx];

    RasTrace ras_trace;
    if (wants_ras) {
      const double t0 = detail::now_ms();
      ras_trace = ras_sample(p, cfg.epsilon, cfg.c, cfg.t,
                             mix_seed(seed, detail::kStreamRas));
      cell.timings.push_back(TimingRow{"ras", gamma, seed, "select",
                                       detail::now_ms() - t0});
    }
    RasTrace approx_trace;
    if (wants_approx) {
      const double t0 = detail::now_ms();
      const RffMap map = rff_build(spec, data.d(), cfg.n_features,
                                   mix_seed(seed, detail::kStreamRff));
      const RffProjector proj(featurize(map, data), gamma);
      approx_trace = approx_ras(proj, cfg.epsilon, cfg.c, cfg.t,
                                mix_seed(seed, detail::kStreamRas));
      cell.timings.push_back(TimingRow{"approx-ras", gamma, seed, "select",
                                       detail::now_ms() - t0});
    }

    std::vector<Index> k_values;
    if (cfg.k_from_ras) {
      if (ras_trace.landmarks.empty())
        throw numeric_error(
            "run_sweep: adaptive sampler selected no landmarks; cannot "
            "derive k (raise c or epsilon)");
      k_values.push_back(ras_trace.landmarks.size());
    } else {
      k_values = cfg.k_list;
    }

    for (const std::string& method : cfg.methods) {
      // Emergent-size methods produce one row group regardless of k list.
      const std::vector<Index> ks =
          method == "ras" || method == "approx-ras" ? std::vector<Index>{0}
                                                    : k_values;
      for (Index k : ks) {
        const double t0 = detail::now_ms();
        const LandmarkSet lm = detail::select_landmarks(
            method, p, &ras_trace, &approx_trace, k, seed);
        if (lm.empty()) continue;  // nothing selected: no rows for the cell
        const Index k_report = method == "ras" || method == "approx-ras"
                                   ? lm.size()
                                   : k;
        const NystromApprox approx =
            nystrom(kernel.entries, lm.unweighted(), cfg.mu);
        for (const std::string& metric : cfg.metrics) {
          double value = 0.0;
          if (metric == "opnorm") {
            value = error_operator_norm(kernel, approx);
          } else if (metric == "maxnorm") {
            value = error_max_norm(kernel.entries, approx);
          } else {
            const auto errs = error_frobenius_subsets(
                spec, data, approx, std::min(cfg.subset_size, data.n()),
                cfg.num_subsets,
                mix_seed(seed, detail::kStreamSubsets +
                                   16 * static_cast<std::uint64_t>(k_report)));
            double mean = 0.0;
            for (double e : errs) mean += e;
            value = mean / static_cast<double>(errs.size());
          }
          cell.rows.push_back(
              ResultRow{method, gamma, k_report, seed, metric, value});
        }
        cell.timings.push_back(TimingRow{method, gamma, seed, "evaluate",
                                         detail::now_ms() - t0});
      }
    }
  };

  const int workers =
      std::min<int>(cfg.workers, static_cast<int>(cells.size()));
  if (workers <= 1) {
    for (Cell& cell : cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(
        static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= cells.size()) return;
            run_cell(cells[j]);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  SweepResult out;
  for (Cell& cell : cells) {
    out.rows.insert(out.rows.end(), cell.rows.begin(), cell.rows.end());
    out.timings.insert(out.timings.end(), cell.timings.begin(),
                       cell.timings.end());
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const ResultRow& a, const ResultRow& b) {
              return std::tie(a.method, a.gamma, a.k, a.seed, a.metric) <
                     std::tie(b.method, b.gamma, b.k, b.seed, b.metric);
            });

  // Long-format results table.
  std::string csv = "method,gamma,k,seed,metric,value\n";
  for (const ResultRow& r : out.rows) {
    csv += r.method;
    csv += ',';
    csv += format_double(r.gamma);
    csv += ',';
    csv += std::to_string(r.k);
    csv += ',';
    csv += std::to_string(r.seed);
    csv += ',';
    csv += r.metric;
    csv += ',';
    csv += format_double(r.value);
    csv += '\n';
  }
  out.results_csv = std::move(csv);

  // Per-(method, k, metric) aggregation over seeds, one block per gamma,
  // with the best (lowest mean) gamma marked.
  std::map<std::tuple<std::string, Index, std::string>,
           std::map<double, std::vector<double>>>
      groups;
  for (const ResultRow& r : out.rows)
    groups[{r.method, r.k, r.metric}][r.gamma].push_back(r.value);
  Json summary = Json::object();
  summary["rows"] = out.rows.size();
  summary["groups"] = Json::array();
  for (const auto& [key, by_gamma] : groups) {
    Json group = Json::object();
    group["method"] = std::get<0>(key);
    group["k"] = std::get<1>(key);
    group["metric"] = std::get<2>(key);
    group["per_gamma"] = Json::array();
    double best_gamma = 0.0;
    double best_mean = std::numeric_limits<double>::infinity();
    for (const auto& [gamma, values] : by_gamma) {
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(values.size());
      Json entry = Json::object();
      entry["gamma"] = gamma;
      entry["mean"] = mean;
      entry["std"] = std::sqrt(var);
      entry["count"] = values.size();
      group["per_gamma"].push_back(std::move(entry));
      if (mean < best_mean) {
        best_mean = mean;
        best_gamma = gamma;
      }
    }
    group["best_gamma"] = best_gamma;
    summary["groups"].push_back(std::move(group));
  }
  out.summary_json = summary.dump(2);
  out.summary_json += '\n';

  std::string timings = "method,gamma,seed,phase,wallclock_ms\n";
  for (const TimingRow& t : out.timings) {
    timings += t.method;
    timings += ',';
    timings += format_double(t.gamma);
    timings += ',';
    timings += std::to_string(t.seed);
    timings += ',';
    timings += t.phase;
    timings += ',';
    timings += format_double(t.wallclock_ms);
    timings += '\n';
  }
  out.timings_csv = std::move(timings);
  return out;
}

/// Write the three sweep artifacts next to `out_prefix`.
inline void write_sweep(const ExperimentConfig& cfg, const SweepResult& res) {
  const auto dump = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write " + path);
    out << text;
  };
  dump(cfg.out_prefix + ".results.csv", res.results_csv);
  dump(cfg.out_prefix + ".summary.json", res.summary_json);
  if (cfg.emit_timings)
    dump(cfg.out_prefix + ".timings.csv", res.timings_csv);
}

struct ScoresResult {
  std::string scores_csv;  // one row per point
  std::string trace_csv;   // one row per greedy iteration
};

/// Per-point diagnostic dump (leverage, Christoffel value, adaptive-pass
/// scores) plus the greedy selection trace with its convergence bound.
inline ScoresResult dump_scores(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset data = load_dataset(cfg);
  if (data.n() > cfg.exact_cap)
    throw config_error("dump_scores: dataset exceeds the exact-path cap");
  const KernelMatrix kernel = kernel_matrix(cfg.kernel_spec(), data);
  const double gamma = cfg.gammas.front();
  const ProjectorKernel p = projector_kernel(kernel, gamma);
  const Vector lev = leverage_scores(p);
  const RasTrace ras = ras_sample(
      p, cfg.epsilon, cfg.c, cfg.t,
      mix_seed(cfg.seeds.front(), detail::kStreamRas));

  ScoresResult out;
  std::string csv =
      "# per-point diagnostics at gamma=" + format_double(gamma) +
      "; christoffel is the reciprocal of the regularized inverse value "
      "and is larger in denser regions\n";
  csv += "index,leverage,christoffel,ras_score,ras_prob,ras_accepted\n";
  for (Index i = 0; i < p.n(); ++i) {
    const double inv =
        christoffel_inverse(p, ChristoffelQuery{i, {}, std::nullopt});
    csv += std::to_string(i);
    csv += ',';
    csv += format_double(lev[i]);
    csv += ',';
    csv += format_double(1.0 / inv);
    csv += ',';
    csv += format_double(ras.scores[static_cast<std::size_t>(i)]);
    csv += ',';
    csv += format_double(ras.probs[static_cast<std::size_t>(i)]);
    csv += ',';
    csv += ras.accepted[static_cast<std::size_t>(i)] ? "1" : "0";
    csv += '\n';
  }
  out.scores_csv = std::move(csv);

  const Index k = cfg.k_from_ras
                      ? std::max<Index>(Index{1}, ras.landmarks.size())
                      : std::min(cfg.k_list.front(), p.n());
  const DasTrace das = das_sample(p, k);
  std::string trace =
      "# greedy selection trace: sigma = max residual before the pick, "
      "bound = spectral convergence bound (blank where undefined)\n";
  trace += "step,index,sigma,residual_after,bound\n";
  for (std::size_t j = 0; j < das.sigma.size(); ++j) {
    trace += std::to_string(j + 1);
    trace += ',';
    trace += std::to_string(das.landmarks.indices[j]);
    trace += ',';
    trace += format_double(das.sigma[j]);
    trace += ',';
    trace += format_double(das.residual_after[j]);
    trace += ',';
    if (!std::isnan(das.bound[j])) trace += format_double(das.bound[j]);
    trace += '\n';
  }
  out.trace_csv = std::move(trace);
  return out;
}

inline void write_scores(const ExperimentConfig& cfg,
                         const ScoresResult& res) {
  const auto dump = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write " + path);
    out << text;
  };
  dump(cfg.out_prefix + ".scores.csv", res.scores_csv);
  dump(cfg.out_prefix + ".trace.csv", res.trace_csv);
}

/// Bound-check battery: algebraic identities, PSD dominance reports, the
/// greedy convergence bound, and the Monte-Carlo guarantee for the
/// adaptive randomized sampler. Pure report; every check carries its
/// measured slack.
inline Json check_bounds(const ExperimentConfig& cfg) {
  cfg.validate();
  Json report = Json::array();

  // Fixed desk-scale instance, independent of the sweep dataset.
  const Dataset data = standardize(
      synth_blobs(cfg.check_n, 2, 3, cfg.synth_spread, cfg.synth_seed));
  const KernelSpec spec{KernelFamily::GaussianRBF, cfg.bandwidth};
  const KernelMatrix kernel = kernel_matrix(spec, data);
  const double gamma = cfg.gammas.front();
  const ProjectorKernel p = projector_kernel(kernel, gamma);
  const Index n = p.n();
  const double eps = cfg.check_epsilon;

  {  // Projector composition identity.
    const Matrix lhs = tikhonov_filter(p, eps);
    const Matrix rhs =
        (1.0 / (1.0 + eps)) *
        projector_kernel(kernel, gamma * eps / (1.0 + eps)).entries;
    const double gap = (lhs - rhs).cwiseAbs().maxCoeff();
    report.push_back({{"check", "projector-composition"},
                      {"max_abs_gap", gap},
                      {"pass", gap <= 1e-10}});
  }
  {  // Residual max-norm equals the residual-diagonal max.
    const LandmarkSet lm = das_sample(p, std::min<Index>(10, n - 1)).landmarks;
    const double mn = error_max_norm(p.entries, nystrom(p.entries, lm, 0.0));
    const double dm = residual_diagonal(p, lm).maxCoeff();
    const double gap = std::abs(mn - dm);
    report.push_back({{"check", "residual-maxnorm-diagonal"},
                      {"max_abs_gap", gap},
                      {"pass", gap <= 1e-10}});
  }
  {  // Kernel residual dominated by the scaled projector residual.
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const LandmarkSet lm = uniform_sample(n, n / 4, s);
      worst = std::min(
          worst,
          check_kernel_residual_bound(kernel, p, lm, 1e-4).min_eigenvalue);
    }
    report.push_back({{"check", "kernel-residual-bound"},
                      {"min_eigenvalue", worst},
                      {"pass", worst >= -1e-8 * p.kernel_spectrum[0]}});
  }
  {  // Spectral-premise kernel bound on adaptive samples.
    double worst_slack = std::numeric_limits<double>::infinity();
    double worst_premise = 0.0;
    int premise_held = 0;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const RasTrace tr = ras_sample(p, eps, 50.0, cfg.t, s);
      const auto rep =
          check_sampling_gap_bound(p, kernel, tr.landmarks, eps, cfg.t);
      worst_premise = std::max(worst_premise, rep.premise_gap);
      if (rep.premise_holds) {
        ++premise_held;
        worst_slack = std::min(worst_slack, rep.min_eigenvalue);
      }
    }
    report.push_back(
        {{"check", "sampling-gap-bound"},
         {"premise_held", premise_held},
         {"worst_premise_gap", worst_premise},
         {"worst_min_eigenvalue",
          premise_held > 0 ? worst_slack : 0.0},
         {"pass", premise_held == 0 ||
                      worst_slack >= -1e-8 * p.kernel_spectrum[0]}});
  }
  {  // Greedy trace: monotone residual and convergence bound. Depth is
     // capped by the projector's numerical rank so the residual cannot
     // vanish mid-run at small gamma.
    Index depth = 0;
    for (Index i = 0; i < n; ++i)
      if (p.spectrum[i] > 1e-8) ++depth;
    depth = std::max<Index>(Index{2}, std::min<Index>(depth, n - 1));
    const DasTrace das = das_sample(p, depth);
    bool monotone = true;
    for (std::size_t j = 1; j < das.sigma.size(); ++j)
      if (das.sigma[j] > das.sigma[j - 1] + 1e-12) monotone = false;
    bool bounded = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < das.sigma.size(); ++j) {
      const Index m = static_cast<Index>(j) + 1;
      if (m < 2 || m >= n) continue;
      const double margin = das.bound[j] - das.residual_after[j];
      worst_margin = std::min(worst_margin, margin);
      if (margin < 0.0) bounded = false;
    }
    report.push_back({{"check", "greedy-bound"},
                      {"monotone", monotone},
                      {"worst_margin", worst_margin},
                      {"pass", monotone && bounded}});
  }
  {  // Monte-Carlo spectral guarantee for the adaptive sampler.
    const double shifted = eps * static_cast<double>(n) * gamma / (1.0 + eps);
    const double d_eff = tikhonov_trace(p.kernel_spectrum, shifted);
    const double c_min =
        oversampling_lower_bound(eps, gamma, cfg.check_delta, d_eff);
    const double threshold =
        2.0 * eps * static_cast<double>(n) * gamma / (1.0 - eps);
    int hits = 0;
    for (int s = 0; s < cfg.check_seeds; ++s) {
      const RasTrace tr = ras_sample(p, eps, c_min, cfg.t,
                                     static_cast<std::uint64_t>(s) + 1);
      if (tr.landmarks.empty()) continue;
      const Matrix resid =
          kernel.entries -
          nystrom(kernel.entries, tr.landmarks, shifted).dense();
      Eigen::SelfAdjointEigenSolver<Matrix> es(resid, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().cwiseAbs().maxCoeff() <= threshold) ++hits;
    }
    const double fraction =
        static_cast<double>(hits) / static_cast<double>(cfg.check_seeds);
    report.push_back({{"check", "spectral-guarantee-montecarlo"},
                      {"oversampling", c_min},
                      {"threshold", threshold},
                      {"fraction", fraction},
                      {"pass", fraction >= 1.0 - cfg.check_delta}});
  }
  return report;
}

inline void write_check(const ExperimentConfig& cfg, const Json& report) {
  std::ofstream out(cfg.out_prefix + ".checks.json", std::ios::binary);
  if (!out) throw data_error("cannot write checks report");
  out << report.dump(2) << '\n';
}

}  // namespace nysa
