#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "relsort/dag.hpp"
#include "relsort/discovery.hpp"
#include "relsort/metrics.hpp"
#include "relsort/rng.hpp"
#include "relsort/samplers.hpp"
#include "relsort/scm.hpp"
#include "relsort/sortability.hpp"

namespace relsort {

enum class Experiment { heatmap, schemes, discovery, timeseries, bound };
enum class GraphType { er, sf };

inline std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::heatmap: return "heatmap";
    case Experiment::schemes: return "schemes";
    case Experiment::discovery: return "discovery";
    case Experiment::timeseries: return "timeseries";
    case Experiment::bound: return "bound";
  }
  return "?";
}

inline Experiment parse_experiment(const std::string& s) {
  for (auto e : {Experiment::heatmap, Experiment::schemes, Experiment::discovery, Experiment::timeseries,
                 Experiment::bound})
    if (to_string(e) == s) return e;
  throw std::invalid_argument("unknown experiment '" + s + "'");
}

inline std::string to_string(GraphType g) { return g == GraphType::er ? "er" : "sf"; }

inline GraphType parse_graph_type(const std::string& s) {
  if (s == "er") return GraphType::er;
  if (s == "sf") return GraphType::sf;
  throw std::invalid_argument("unknown graph type '" + s + "' (expected er or sf)");
}

/// Everything that determines an experiment's output. `workers` only
/// affects speed, never the records.
struct ExperimentConfig {
  Experiment experiment = Experiment::heatmap;
  GraphType graph = GraphType::er;
  std::vector<std::size_t> n;
  std::vector<double> c;
  std::size_t reps = 10;
  std::size_t samples = 10000;
  double alpha = 0.05;
  std::optional<Regime> scheme;  // schemes runs every regime when unset
  std::vector<std::size_t> horizons;
  std::uint64_t seed = 0;
  bool signed_weights = false;
  std::size_t workers = 1;
};

/// Desk-scale defaults for each experiment.
inline ExperimentConfig default_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  switch (e) {
    case Experiment::heatmap:
      cfg.n = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
      cfg.c = {0.5, 1, 2, 3, 4, 5, 10, 20, 50};
      break;
    case Experiment::schemes:
      cfg.n = {30};
      cfg.c = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      break;
    case Experiment::discovery:
      cfg.n = {30};
      cfg.c = {1, 2, 4};
      cfg.scheme = Regime::sscm;
      break;
    case Experiment::timeseries:
      cfg.n = {10};
      cfg.c = {1};
      cfg.reps = 20;
      cfg.horizons = {2, 5, 10, 20, 50, 100, 200};
      break;
    case Experiment::bound:
      cfg.n = {2000};
      cfg.c = {2, 5};
      cfg.reps = 60;
      break;
  }
  return cfg;
}

inline void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (cfg.n.empty()) fail("n list is empty");
  if (cfg.c.empty()) fail("c list is empty");
  for (auto n : cfg.n)
    if (n < 1) fail("every n must be positive");
  for (double c : cfg.c)
    if (!(c > 0.0) || !std::isfinite(c)) fail("every c must be positive and finite");
  if (cfg.reps < 1) fail("reps must be positive");
  if (cfg.samples < 1) fail("samples must be positive");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (cfg.workers < 1) fail("workers must be positive");
  const bool needs_graph_n = cfg.experiment != Experiment::discovery;
  if (needs_graph_n)
    for (auto n : cfg.n)
      if (n < 2) fail("n must be at least 2 for " + to_string(cfg.experiment));
  if (cfg.experiment == Experiment::timeseries) {
    if (cfg.horizons.empty()) fail("T list is empty");
    for (auto t : cfg.horizons)
      if (t < 2) fail("every T must be at least 2");
  }
  if ((cfg.experiment == Experiment::schemes || cfg.experiment == Experiment::discovery) && cfg.samples < 4)
    fail("samples must be at least 4 for the correlation test");
}

/// One CSV row. Unset optionals print as empty fields; a missing value
/// prints as NA and must come with a reason.
struct ExperimentRecord {
  std::string experiment;
  std::string graph;
  std::size_t n = 0;
  double c = 0.0;
  std::string scheme;
  std::optional<std::size_t> horizon;
  std::string rep;  // replicate index, "mean" or "all"
  std::optional<std::uint64_t> seed;
  std::string metric;
  std::optional<double> value;
  std::string reason;
};

namespace detail {

/// Runs task(i) for i in [0, count) on `workers` threads and returns the
/// results in index order.
template <class Task>
auto parallel_map(std::size_t count, std::size_t workers, Task task) {
  using Result = decltype(task(std::size_t{0}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(task(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<Result> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

inline std::uint64_t double_key(double x) {
  std::uint64_t bits = 0;
  static_assert(sizeof(bits) == sizeof(x));
  std::memcpy(&bits, &x, sizeof(x));
  return bits;
}

// Reasons are machine-readable tokens; free text from exceptions is
// flattened so it cannot break the CSV.
inline std::string reason_token(const std::string& text) {
  std::string out;
  for (char ch : text) out.push_back(ch == ',' || ch == '\n' || ch == '\r' || ch == '"' ? ' ' : ch);
  return out;
}

struct GraphDraw {
  std::optional<Dag> dag;
  std::string reason;
};

inline GraphDraw draw_graph(GraphType type, std::size_t n, double c, Rng& rng) {
  if (n == 1) return {Dag(1), ""};
  if (type == GraphType::er) return {sample_er_dag(n, c, rng), ""};
  if (c != std::floor(c)) return {std::nullopt, "sf_density_not_integer"};
  if (c >= static_cast<double>(n)) return {std::nullopt, "sf_density_too_large"};
  return {sample_sf_dag(n, static_cast<std::size_t>(c), rng), ""};
}

inline std::optional<double> try_sortability(const Dag& g, const NodeCriterion& rho) {
  if (g.edge_count() == 0) return std::nullopt;
  return sortability(g, rho);
}

/// Appends one "mean" row per (graph, n, c, scheme, T, metric) group, in
/// order of first appearance.
inline void append_means(std::vector<ExperimentRecord>& rows) {
  using Key = std::tuple<std::string, std::size_t, std::uint64_t, std::string, std::size_t, std::string>;
  std::map<Key, std::size_t> index;
  std::vector<std::pair<ExperimentRecord, std::pair<double, std::size_t>>> groups;
  for (const auto& r : rows) {
    const Key key{r.graph, r.n, double_key(r.c), r.scheme, r.horizon.value_or(0), r.metric};
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) {
      ExperimentRecord mean = r;
      mean.rep = "mean";
      mean.seed.reset();
      mean.value.reset();
      mean.reason.clear();
      groups.push_back({mean, {0.0, 0}});
    }
    if (r.value) {
      groups[it->second].second.first += *r.value;
      ++groups[it->second].second.second;
    }
  }
  for (auto& [mean, acc] : groups) {
    if (acc.second > 0)
      mean.value = acc.first / static_cast<double>(acc.second);
    else
      mean.reason = "no_defined_replicates";
    rows.push_back(std::move(mean));
  }
}

}  // namespace detail

namespace experiments {

inline std::vector<ExperimentRecord> heatmap(const ExperimentConfig& cfg) {
  struct Job {
    std::size_t n;
    double c;
    std::size_t rep;
  };
  std::vector<Job> jobs;
  for (auto n : cfg.n)
    for (double c : cfg.c)
      for (std::size_t r = 0; r < cfg.reps; ++r) jobs.push_back({n, c, r});
  const Rng root(cfg.seed);
  auto rows = detail::parallel_map(jobs.size(), cfg.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    Rng rng = root.substream({0, job.n, detail::double_key(job.c), job.rep});
    ExperimentRecord rec{"heatmap", to_string(cfg.graph), job.n, job.c, "", std::nullopt,
                         std::to_string(job.rep), rng.seed(), "rel_sortability", std::nullopt, ""};
    const auto draw = detail::draw_graph(cfg.graph, job.n, job.c, rng);
    if (!draw.dag)
      rec.reason = draw.reason;
    else if (!(rec.value = detail::try_sortability(*draw.dag, rel_criterion(*draw.dag))))
      rec.reason = "empty_graph";
    return rec;
  });
  detail::append_means(rows);
  return rows;
}

inline std::vector<ExperimentRecord> schemes(const ExperimentConfig& cfg) {
  struct Job {
    std::size_t n;
    double c;
    std::size_t rep;
  };
  std::vector<Job> jobs;
  for (auto n : cfg.n)
    for (double c : cfg.c)
      for (std::size_t r = 0; r < cfg.reps; ++r) jobs.push_back({n, c, r});
  std::vector<Regime> regimes{Regime::raw, Regime::sscm, Regime::iscm};
  if (cfg.scheme) regimes = {*cfg.scheme};
  const Rng root(cfg.seed);
  auto nested = detail::parallel_map(jobs.size(), cfg.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    Rng rng = root.substream({1, job.n, detail::double_key(job.c), job.rep});
    const auto draw = detail::draw_graph(cfg.graph, job.n, job.c, rng);
    std::vector<ExperimentRecord> out;
    auto emit = [&](Regime regime, const std::string& metric, std::optional<double> value, std::string reason) {
      if (value) reason.clear();
      out.push_back({"schemes", to_string(cfg.graph), job.n, job.c, to_string(regime), std::nullopt,
                     std::to_string(job.rep), rng.seed(), metric, value, std::move(reason)});
    };
    const char* metrics[] = {"oracle_rel_sortability", "empirical_rel_sortability", "var_sortability",
                             "r2_sortability"};
    if (!draw.dag || draw.dag->edge_count() == 0) {
      const std::string reason = draw.dag ? "empty_graph" : draw.reason;
      for (Regime regime : regimes)
        for (const char* m : metrics) emit(regime, m, std::nullopt, reason);
      return out;
    }
    const Dag& g = *draw.dag;
    const auto scm = sample_params(g, rng, cfg.signed_weights);
    const double oracle = sortability(g, rel_criterion(g));
    for (Regime regime : regimes) {
      Rng data_rng = rng.substream({static_cast<std::uint64_t>(regime)});
      try {
        const auto data = sample_observations(scm, cfg.samples, regime, data_rng);
        emit(regime, metrics[0], oracle, "");
        emit(regime, metrics[1], sortability(g, estimate_relative_counts(data, cfg.alpha)), "");
        emit(regime, metrics[2], sortability(g, var_criterion(data)), "");
        if (cfg.samples > job.n)
          emit(regime, metrics[3], sortability(g, r2_criterion(data)), "");
        else
          emit(regime, metrics[3], std::nullopt, "too_few_samples");
      } catch (const std::exception& e) {
        out.erase(std::remove_if(out.begin(), out.end(), [&](const auto& r) { return r.scheme == to_string(regime); }),
                  out.end());
        for (const char* m : metrics) emit(regime, m, std::nullopt, "error: " + detail::reason_token(e.what()));
      }
    }
    return out;
  });
  std::vector<ExperimentRecord> rows;
  for (auto& v : nested) rows.insert(rows.end(), v.begin(), v.end());
  detail::append_means(rows);
  return rows;
}

inline std::vector<ExperimentRecord> discovery(const ExperimentConfig& cfg) {
  struct Job {
    std::size_t n;
    double c;
    std::size_t rep;
  };
  std::vector<Job> jobs;
  for (auto n : cfg.n)
    for (double c : cfg.c)
      for (std::size_t r = 0; r < cfg.reps; ++r) jobs.push_back({n, c, r});
  const Regime regime = cfg.scheme.value_or(Regime::sscm);
  const Rng root(cfg.seed);
  auto nested = detail::parallel_map(jobs.size(), cfg.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    Rng rng = root.substream({2, job.n, detail::double_key(job.c), job.rep});
    std::vector<ExperimentRecord> out;
    auto emit = [&](const std::string& metric, std::optional<double> value, std::string reason) {
      if (value) reason.clear();
      out.push_back({"discovery", to_string(cfg.graph), job.n, job.c, to_string(regime), std::nullopt,
                     std::to_string(job.rep), rng.seed(), metric, value, std::move(reason)});
    };
    const char* methods[] = {"rel", "var", "r2", "random", "oracle"};
    const auto draw = detail::draw_graph(cfg.graph, job.n, job.c, rng);
    if (!draw.dag) {
      for (const char* m : methods) {
        emit(std::string("sid_") + m, std::nullopt, draw.reason);
        emit(std::string("shd_") + m, std::nullopt, draw.reason);
      }
      emit("oracle_rel_sortability", std::nullopt, draw.reason);
      emit("empirical_rel_sortability", std::nullopt, draw.reason);
      return out;
    }
    const Dag& g = *draw.dag;
    const auto scm = sample_params(g, rng, cfg.signed_weights);
    Rng data_rng = rng.substream({0});
    Rng order_rng = rng.substream({1});
    const auto random_order = Ordering(order_rng.permutation(job.n));
    try {
      const auto data = job.n == 1 ? DataMatrix{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cfg.samples), 1)}
                                   : sample_observations(scm, cfg.samples, regime, data_rng);
      for (const char* m : methods) {
        const std::string method = m;
        std::optional<EstimatedGraph> est;
        std::string reason;
        if (job.n == 1) {
          est = Dag(1);
        } else if (method == "rel") {
          est = rel_sort_n_regress(data, cfg.alpha);
        } else if (method == "var") {
          est = sort_n_regress(data, criterion_order(var_criterion(data)));
        } else if (method == "r2") {
          if (cfg.samples > job.n)
            est = sort_n_regress(data, criterion_order(r2_criterion(data)));
          else
            reason = "too_few_samples";
        } else if (method == "random") {
          est = sort_n_regress(data, random_order);
        } else {
          est = sort_n_regress(data, Ordering(g.topological_order()));
        }
        if (est) {
          emit("sid_" + method, static_cast<double>(sid(g, *est)), "");
          emit("shd_" + method, static_cast<double>(shd(g, *est)), "");
        } else {
          emit("sid_" + method, std::nullopt, reason);
          emit("shd_" + method, std::nullopt, reason);
        }
      }
      const auto oracle = detail::try_sortability(g, rel_criterion(g));
      emit("oracle_rel_sortability", oracle, "empty_graph");
      emit("empirical_rel_sortability",
           oracle ? std::optional<double>(sortability(g, estimate_relative_counts(data, cfg.alpha))) : std::nullopt,
           "empty_graph");
    } catch (const std::exception& e) {
      out.clear();
      const std::string reason = "error: " + detail::reason_token(e.what());
      for (const char* m : methods) {
        emit(std::string("sid_") + m, std::nullopt, reason);
        emit(std::string("shd_") + m, std::nullopt, reason);
      }
      emit("oracle_rel_sortability", std::nullopt, reason);
      emit("empirical_rel_sortability", std::nullopt, reason);
    }
    return out;
  });
  std::vector<ExperimentRecord> rows;
  for (auto& v : nested) rows.insert(rows.end(), v.begin(), v.end());
  detail::append_means(rows);
  return rows;
}

/// Symmetric summary graphs unrolled over each horizon, plus the
/// one-directional chain as a contrast case. The summary size p is taken
/// from the n list.
inline std::vector<ExperimentRecord> timeseries(const ExperimentConfig& cfg) {
  struct Job {
    std::size_t p;
    double c;
    std::size_t rep;  // the chain contrast runs once, as rep 0
    bool chain;
  };
  std::vector<Job> jobs;
  for (auto p : cfg.n) {
    for (double c : cfg.c)
      for (std::size_t r = 0; r < cfg.reps; ++r) jobs.push_back({p, c, r, false});
    jobs.push_back({p, 0.0, 0, true});
  }
  const Rng root(cfg.seed);
  auto nested = detail::parallel_map(jobs.size(), cfg.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    Rng rng = root.substream({3, job.p, detail::double_key(job.c), job.rep, job.chain ? 1u : 0u});
    const SummaryGraph s = job.chain ? SummaryGraph::chain(job.p) : sample_symmetric_summary(job.p, job.c, rng);
    std::vector<ExperimentRecord> out;
    const std::string graph = job.chain ? "chain" : "symmetric";
    const std::optional<std::uint64_t> seed = job.chain ? std::nullopt : std::optional<std::uint64_t>(rng.seed());
    out.push_back({"timeseries", graph, job.p, job.c, "", std::nullopt, std::to_string(job.rep), seed,
                   "condition_holds", strong_and_weak_components_coincide(s) ? 1.0 : 0.0, ""});
    for (auto horizon : cfg.horizons) {
      const Dag g = unroll(s, horizon);
      ExperimentRecord rec{"timeseries", graph, job.p, job.c, "", horizon, std::to_string(job.rep), seed,
                           "rel_sortability", detail::try_sortability(g, rel_criterion(g)), ""};
      if (!rec.value) rec.reason = "empty_graph";
      out.push_back(std::move(rec));
    }
    return out;
  });
  std::vector<ExperimentRecord> rows;
  for (auto& v : nested) rows.insert(rows.end(), v.begin(), v.end());
  detail::append_means(rows);
  return rows;
}

/// Pooled statistics for one pair of quantile deciles.
struct BoundBucket {
  std::size_t edges = 0;
  std::size_t sorted = 0;  // edges with strictly more relatives at the head
  double bound_sum = 0.0;
  double quantile_term_sum = 0.0;

  double empirical() const { return static_cast<double>(sorted) / static_cast<double>(edges); }
  double bound() const { return bound_sum / static_cast<double>(edges); }
  double quantile_term() const { return quantile_term_sum / static_cast<double>(edges); }
  /// Mean edge score; every edge scores 1 or 1/2 since rel(x) is a subset of rel(y).
  double mean_score() const { return 0.5 + 0.5 * empirical(); }
  double standard_error() const {
    const double p = empirical();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(edges));
  }
};

inline constexpr std::size_t kBoundDeciles = 10;

/// Buckets indexed [qx decile][qy decile] for one ER draw. Quantiles are
/// rank / n with ranks counted from 1 along the sampling order.
inline std::vector<BoundBucket> bound_buckets(std::size_t n, double c, Rng& rng) {
  const auto draw = sample_er_dag_with_order(n, c, rng);
  const Dag& g = draw.dag;
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[draw.order[k]] = k;
  const auto rho = rel_criterion(g);
  std::vector<BoundBucket> buckets(kBoundDeciles * kBoundDeciles);
  for (const auto& e : g.edges()) {
    const std::size_t px = position[e.from], py = position[e.to];
    const double qx = static_cast<double>(px + 1) / static_cast<double>(n);
    const double qy = static_cast<double>(py + 1) / static_cast<double>(n);
    auto& b = buckets[(px * kBoundDeciles / n) * kBoundDeciles + py * kBoundDeciles / n];
    ++b.edges;
    if (rho[e.from] < rho[e.to]) ++b.sorted;
    const double term = lower_bound_quantile_term(c, qx, qy);
    b.quantile_term_sum += term;
    b.bound_sum += std::max(term, 0.5);
  }
  return buckets;
}

inline std::vector<ExperimentRecord> bound(const ExperimentConfig& cfg) {
  struct Job {
    std::size_t n;
    double c;
    std::size_t rep;
  };
  std::vector<Job> jobs;
  for (auto n : cfg.n)
    for (double c : cfg.c)
      for (std::size_t r = 0; r < cfg.reps; ++r) jobs.push_back({n, c, r});
  const Rng root(cfg.seed);
  const auto per_rep = detail::parallel_map(jobs.size(), cfg.workers, [&](std::size_t i) {
    Rng rng = root.substream({4, jobs[i].n, detail::double_key(jobs[i].c), jobs[i].rep});
    return bound_buckets(jobs[i].n, jobs[i].c, rng);
  });
  std::vector<ExperimentRecord> rows;
  for (std::size_t start = 0; start < jobs.size(); start += cfg.reps) {
    std::vector<BoundBucket> pooled(kBoundDeciles * kBoundDeciles);
    for (std::size_t r = 0; r < cfg.reps; ++r)
      for (std::size_t b = 0; b < pooled.size(); ++b) {
        pooled[b].edges += per_rep[start + r][b].edges;
        pooled[b].sorted += per_rep[start + r][b].sorted;
        pooled[b].bound_sum += per_rep[start + r][b].bound_sum;
        pooled[b].quantile_term_sum += per_rep[start + r][b].quantile_term_sum;
      }
    const auto& job = jobs[start];
    for (std::size_t a = 0; a < kBoundDeciles; ++a)
      for (std::size_t b = a; b < kBoundDeciles; ++b) {
        const auto& bucket = pooled[a * kBoundDeciles + b];
        const std::string tag = "_q" + std::to_string(a) + "_q" + std::to_string(b);
        auto emit = [&](const std::string& metric, std::optional<double> value) {
          rows.push_back({"bound", "er", job.n, job.c, "", std::nullopt, "all", std::nullopt, metric + tag, value,
                          value ? "" : "no_edges"});
        };
        emit("edges", static_cast<double>(bucket.edges));
        const bool any = bucket.edges > 0;
        emit("empirical", any ? std::optional<double>(bucket.empirical()) : std::nullopt);
        emit("bound", any ? std::optional<double>(bucket.bound()) : std::nullopt);
        emit("quantile_term", any ? std::optional<double>(bucket.quantile_term()) : std::nullopt);
        emit("se", any ? std::optional<double>(bucket.standard_error()) : std::nullopt);
        emit("mean_score", any ? std::optional<double>(bucket.mean_score()) : std::nullopt);
      }
  }
  return rows;
}

}  // namespace experiments

inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  switch (cfg.experiment) {
    case Experiment::heatmap: return experiments::heatmap(cfg);
    case Experiment::schemes: return experiments::schemes(cfg);
    case Experiment::discovery: return experiments::discovery(cfg);
    case Experiment::timeseries: return experiments::timeseries(cfg);
    case Experiment::bound: return experiments::bound(cfg);
  }
  throw std::logic_error("unhandled experiment");
}

namespace detail {

/// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F format) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format(xs[i]);
  return out;
}

}  // namespace detail

inline constexpr const char* kCsvColumns = "experiment,graph,n,c,scheme,T,rep,seed,metric,value,reason";

/// Comment header with the full configuration, then one line per record.
inline void write_experiment_csv(std::ostream& out, const ExperimentConfig& cfg,
                                 const std::vector<ExperimentRecord>& rows) {
  auto size_fmt = [](std::size_t v) { return std::to_string(v); };
  out << "# relsort experiment=" << to_string(cfg.experiment) << '\n'
      << "# graph=" << to_string(cfg.graph) << '\n'
      << "# n=" << detail::join(cfg.n, size_fmt) << '\n'
      << "# c=" << detail::join(cfg.c, detail::format_double) << '\n'
      << "# reps=" << cfg.reps << '\n'
      << "# samples=" << cfg.samples << '\n'
      << "# alpha=" << detail::format_double(cfg.alpha) << '\n'
      << "# scheme=" << (cfg.scheme ? to_string(*cfg.scheme) : std::string("all")) << '\n'
      << "# T=" << detail::join(cfg.horizons, size_fmt) << '\n'
      << "# seed=" << cfg.seed << '\n'
      << "# signed_weights=" << (cfg.signed_weights ? "true" : "false") << '\n'
      << kCsvColumns << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.graph << ',' << r.n << ',' << detail::format_double(r.c) << ',' << r.scheme << ','
        << (r.horizon ? std::to_string(*r.horizon) : "") << ',' << r.rep << ','
        << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.metric << ','
        << (r.value ? detail::format_double(*r.value) : "NA") << ',' << r.reason << '\n';
  }
}

}  // namespace relsort
