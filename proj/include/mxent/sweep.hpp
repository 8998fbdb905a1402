#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mxent/csv.hpp"
#include "mxent/entanglement.hpp"
#include "mxent/generator.hpp"

namespace mxent {

struct SweepGrid {
    std::vector<std::uint64_t> node_counts;
    std::vector<std::uint32_t> layer_counts;
    std::vector<double> dropouts;
    int seeds_per_cell = 1;
    std::uint64_t base_seed = 0;

    std::size_t size() const {
        return node_counts.size() * layer_counts.size() * dropouts.size() *
               static_cast<std::size_t>(seeds_per_cell);
    }
};

/// "a,b,c" or "start:stop:step" (stop inclusive when the step lands on it).
inline std::vector<double> parse_real_list_or_range(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
            !(in >> std::ws).eof())
            throw std::invalid_argument("bad range spec: " + text);
        if (!(step > 0.0)) throw std::invalid_argument("range step must be positive: " + text);
        if (stop < start) throw std::invalid_argument("range stop before start: " + text);
        const auto count = static_cast<std::size_t>((stop - start) / step + 1e-9);
        for (std::size_t i = 0; i <= count; ++i) values.push_back(start + double(i) * step);
        return values;
    }
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument("bad number: " + token);
    }
    if (values.empty()) throw std::invalid_argument("empty list: " + text);
    return values;
}

inline std::vector<std::uint64_t> parse_count_list(const std::string& text) {
    std::vector<std::uint64_t> values;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size() || v < 1)
            throw std::invalid_argument("bad count: " + token);
        values.push_back(static_cast<std::uint64_t>(v));
    }
    if (values.empty()) throw std::invalid_argument("empty list: " + text);
    return values;
}

struct SweepRecord {
    std::size_t task = 0;
    std::uint64_t v = 0;
    std::uint32_t k = 0;
    double d = 0.0;
    std::uint64_t seed = 0;
    std::uint32_t layers_analyzed = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double lambda_max = 0.0;
    double intensity = 0.0;
    double homogeneity = 0.0;
    double normalized_homogeneity = 0.0;
    bool converged = false;
    std::string status = "ok";
    std::int64_t gen_ms = 0;
    std::int64_t analyze_ms = 0;
};

struct SweepOptions {
    int jobs = 1;                // 0: hardware concurrency
    bool record_timings = false; // off by default so output is byte-reproducible
    double tol = 1e-10;
    int max_iter = 100000;
};

namespace detail {

inline void decompose_task(const SweepGrid& grid, std::size_t task, std::size_t& iv,
                           std::size_t& ik, std::size_t& id, std::size_t& is) {
    const auto seeds = static_cast<std::size_t>(grid.seeds_per_cell);
    is = task % seeds;
    task /= seeds;
    id = task % grid.dropouts.size();
    task /= grid.dropouts.size();
    ik = task % grid.layer_counts.size();
    iv = task / grid.layer_counts.size();
}

inline std::string sanitize_status(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

inline SweepRecord run_task(const SweepGrid& grid, const SweepOptions& opts,
                            std::size_t task) {
    using clock = std::chrono::steady_clock;
    std::size_t iv, ik, id, is;
    decompose_task(grid, task, iv, ik, id, is);
    (void)is;

    SweepRecord rec;
    rec.task = task;
    rec.v = grid.node_counts[iv];
    rec.k = grid.layer_counts[ik];
    rec.d = grid.dropouts[id];
    rec.seed = grid.base_seed + task;
    try {
        const GeneratorConfig cfg{rec.v, rec.k, rec.d, rec.seed};
        const auto t0 = clock::now();
        const GeneratedNetwork gen = generate(cfg);
        const auto t1 = clock::now();

        const ComponentDecomposition comps = gen.network.connected_components();
        std::vector<std::size_t> sizes(comps.count, 0);
        for (const int c : comps.component_of) ++sizes[c];
        int dominant = 0;
        for (int c = 1; c < comps.count; ++c)
            if (sizes[c] > sizes[dominant]) dominant = c;  // ties: smaller id

        const AnalysisOptions aopts{opts.tol, opts.max_iter, false};
        const auto rows = analyze(gen.network, aopts);
        const auto t2 = clock::now();

        const EntanglementResult* row = nullptr;
        for (const auto& r : rows)
            if (r.component_id == dominant) {
                row = &r;
                break;
            }
        if (row == nullptr) {
            rec.status = "dominant component has no edges";
        } else {
            rec.layers_analyzed = static_cast<std::uint32_t>(row->layer_labels.size());
            rec.nodes = row->num_nodes;
            rec.edges = row->num_edges;
            rec.lambda_max = row->lambda_max;
            rec.intensity = row->intensity;
            rec.homogeneity = row->homogeneity;
            rec.normalized_homogeneity = row->normalized_homogeneity;
            rec.converged = row->converged;
            if (!row->converged) rec.status = "not converged";
        }
        if (opts.record_timings) {
            rec.gen_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            rec.analyze_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count();
        }
    } catch (const std::exception& e) {
        rec.status = sanitize_status(std::string("error: ") + e.what());
    }
    return rec;
}

}  // namespace detail

// Runs every grid task (task_seed = base_seed + task_index) and returns the
// records in task order regardless of scheduling. Per-task failures land in
// the record's status field; the sweep itself always completes.
inline std::vector<SweepRecord> run_sweep(const SweepGrid& grid, const SweepOptions& opts = {}) {
    if (grid.seeds_per_cell < 1)
        throw std::invalid_argument("run_sweep: seeds_per_cell must be >= 1");
    for (const double d : grid.dropouts)
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("run_sweep: dropout outside [0,1]");

    const std::size_t total = grid.size();
    std::vector<SweepRecord> records(total);

    int jobs = opts.jobs;
    if (jobs == 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min<int>(jobs, total == 0 ? 1 : static_cast<int>(std::min<std::size_t>(
                                                    total, std::size_t{64})));

    if (jobs == 1) {
        for (std::size_t t = 0; t < total; ++t) records[t] = detail::run_task(grid, opts, t);
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= total) return;
                records[t] = detail::run_task(grid, opts, t);
            }
        });
    }
    for (auto& thread : pool) thread.join();
    return records;
}

inline constexpr const char* kSweepCsvHeader =
    "task,v,k,d,seed,layers_analyzed,nodes,edges,lambda_max,intensity,homogeneity,"
    "normalized_homogeneity,converged,status,gen_ms,analyze_ms";

inline void write_sweep_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.task << ',' << r.v << ',' << r.k << ',' << format_real(r.d) << ',' << r.seed
            << ',' << r.layers_analyzed << ',' << r.nodes << ',' << r.edges << ','
            << format_real(r.lambda_max) << ',' << format_real(r.intensity) << ','
            << format_real(r.homogeneity) << ',' << format_real(r.normalized_homogeneity)
            << ',' << (r.converged ? 1 : 0) << ',' << r.status << ',' << r.gen_ms << ','
            << r.analyze_ms << '\n';
    }
}

inline std::optional<double> pearson(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;  // constant column
    return sxy / std::sqrt(sxx * syy);
}

namespace detail {
// Average ranks: ties share the mean of the rank positions they span.
inline std::vector<double> ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * (double(i) + double(j)) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
        i = j + 1;
    }
    return r;
}
}  // namespace detail

inline std::optional<double> spearman(const std::vector<double>& x,
                                      const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    return pearson(detail::ranks(x), detail::ranks(y));
}

struct TrendStats {
    std::optional<double> spearman_dropout_intensity;
    std::optional<double> spearman_dropout_homogeneity;
    std::optional<double> pearson_dropout_intensity;

    struct Cell {
        std::uint32_t k = 0;
        double d = 0.0;
        std::size_t count = 0;
        double mean_intensity = 0.0;
        double mean_homogeneity = 0.0;
    };
    std::vector<Cell> cells;  // ordered by (k, d)
};

/// Rank/linear correlations of dropout against the measures, plus grouped
/// means per (k, d) cell, over the records whose status is "ok".
inline TrendStats trend_stats(const std::vector<SweepRecord>& records) {
    TrendStats stats;
    std::vector<double> d, intensity, homogeneity;
    std::map<std::pair<std::uint32_t, double>, std::array<double, 3>> cells;
    for (const auto& r : records) {
        if (r.status != "ok") continue;
        d.push_back(r.d);
        intensity.push_back(r.intensity);
        homogeneity.push_back(r.homogeneity);
        auto& cell = cells[{r.k, r.d}];
        cell[0] += 1.0;
        cell[1] += r.intensity;
        cell[2] += r.homogeneity;
    }
    stats.spearman_dropout_intensity = spearman(d, intensity);
    stats.spearman_dropout_homogeneity = spearman(d, homogeneity);
    stats.pearson_dropout_intensity = pearson(d, intensity);
    for (const auto& [key, acc] : cells)
        stats.cells.push_back(
            {key.first, key.second, static_cast<std::size_t>(acc[0]), acc[1] / acc[0],
             acc[2] / acc[0]});
    return stats;
}

}  // namespace mxent
