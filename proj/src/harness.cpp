#include "regnet/harness.hpp"

#include "regnet/error.hpp"
#include "regnet/io.hpp"

#include "json.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace regnet {

void validate(const EnsembleSpec& spec) {
    if (spec.models.empty()) throw DomainError("ensemble spec: empty model parameter list");
    if (spec.a_grid.empty()) throw DomainError("ensemble spec: empty a_grid");
    if (spec.eta_grid.empty()) throw DomainError("ensemble spec: empty eta_grid");
    if (spec.n_vertices < 1) throw DomainError("ensemble spec: n_vertices must be >= 1");
    for (double a : spec.a_grid) {
        if (!(a >= 0.0 && a < 1.0)) throw DomainError("ensemble spec: a values must lie in [0,1)");
    }
    for (double eta : spec.eta_grid) {
        if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("ensemble spec: eta values must lie in [0,1]");
    }
    for (const auto& m : spec.models) {
        if (m.kind == GraphModel::Kind::erdos_renyi && !(m.p >= 0.0 && m.p <= 1.0)) {
            throw DomainError("ensemble spec: p values must lie in [0,1]");
        }
        if (m.kind == GraphModel::Kind::barabasi_albert &&
            (m.m0 < 2 || m.m0 > spec.n_vertices || m.m < 1 || m.m > m.m0)) {
            throw DomainError("ensemble spec: barabasi_albert needs 2 <= m0 <= n and 1 <= m <= m0");
        }
        if (m.kind == GraphModel::Kind::tree && spec.n_vertices < 2) {
            throw DomainError("ensemble spec: trees need n_vertices >= 2");
        }
    }
}

void CellStatistics::record(const RegulatoryNetwork& net, const AttractorReport& report, Connectivity connectivity) {
    ++n_orbits;
    switch (report.outcome) {
    case Outcome::horizon: ++n_horizon; return;
    case Outcome::unresolved: ++n_unresolved; return;
    case Outcome::converged: break;
    }
    ++n_converged;
    ++period_histogram[report.period];
    const auto osc = oscillatory_subnetwork(net, report, connectivity);
    sum_osc_size += osc.size;
    sum_component_count += osc.component_count;
    sum_transient += report.transient_steps;
    for (const auto& [k, c] : osc.degree_histogram) degree_histogram[k] += c;
}

void CellStatistics::merge(const CellStatistics& other) {
    if (!(key == other.key)) throw DomainError("merge: cell keys differ");
    n_orbits += other.n_orbits;
    n_converged += other.n_converged;
    n_unresolved += other.n_unresolved;
    n_horizon += other.n_horizon;
    for (const auto& [k, c] : other.period_histogram) period_histogram[k] += c;
    sum_osc_size += other.sum_osc_size;
    sum_component_count += other.sum_component_count;
    sum_transient += other.sum_transient;
    for (const auto& [k, c] : other.degree_histogram) degree_histogram[k] += c;
}

namespace {

double mean(std::uint64_t sum, std::size_t n) {
    return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

}  // namespace

double CellStatistics::mean_osc_size() const { return mean(sum_osc_size, n_converged); }
double CellStatistics::mean_component_count() const { return mean(sum_component_count, n_converged); }
double CellStatistics::mean_transient() const { return mean(sum_transient, n_converged); }

std::map<std::size_t, double> CellStatistics::degree_distribution() const {
    std::size_t total = 0;
    for (const auto& [k, c] : degree_histogram) total += c;
    std::map<std::size_t, double> out;
    for (const auto& [k, c] : degree_histogram) out[k] = static_cast<double>(c) / static_cast<double>(total);
    return out;
}

namespace {

struct Task {
    std::size_t param, eta, graph, a;
};

std::vector<Task> tasks_of(const EnsembleSpec& spec) {
    std::vector<Task> tasks;
    for (std::size_t pi = 0; pi < spec.models.size(); ++pi)
        for (std::size_t ei = 0; ei < spec.eta_grid.size(); ++ei)
            for (std::size_t g = 0; g < spec.graphs_per_cell; ++g)
                for (std::size_t ai = 0; ai < spec.a_grid.size(); ++ai) tasks.push_back({pi, ei, g, ai});
    return tasks;
}

std::size_t cell_index(const EnsembleSpec& spec, std::size_t pi, std::size_t ai, std::size_t ei) {
    return (pi * spec.a_grid.size() + ai) * spec.eta_grid.size() + ei;
}

std::vector<CellStatistics> empty_cells(const EnsembleSpec& spec) {
    std::vector<CellStatistics> cells(spec.models.size() * spec.a_grid.size() * spec.eta_grid.size());
    for (std::size_t pi = 0; pi < spec.models.size(); ++pi)
        for (std::size_t ai = 0; ai < spec.a_grid.size(); ++ai)
            for (std::size_t ei = 0; ei < spec.eta_grid.size(); ++ei) {
                cells[cell_index(spec, pi, ai, ei)].key = {spec.models[pi].name(), spec.models[pi].parameter(),
                                                           spec.a_grid[ai], spec.eta_grid[ei]};
            }
    return cells;
}

CellStatistics run_task(const EnsembleSpec& spec, const Task& t) {
    const EnsembleSeed root{spec.root_seed};
    Rng graph_rng = root.stream("graph", {t.param, t.eta, t.graph});
    Digraph g = sample_graph(spec.models[t.param], spec.n_vertices, graph_rng);
    const auto m = g.arrow_count();
    SignAssignment sigma = sample_signs(m, spec.eta_grid[t.eta], graph_rng);
    ThresholdAssignment thresholds = sample_thresholds(m, graph_rng);
    const RegulatoryNetwork net(std::move(g), std::move(sigma), std::move(thresholds), spec.a_grid[t.a],
                                spec.inputless);

    CellStatistics stats;
    stats.key = {spec.models[t.param].name(), spec.models[t.param].parameter(), spec.a_grid[t.a],
                 spec.eta_grid[t.eta]};
    for (std::size_t j = 0; j < spec.orbits_per_graph; ++j) {
        Rng orbit_rng = root.stream("orbit", {t.param, t.eta, t.graph, j});
        const ActivityVector x0 = sample_initial(spec.n_vertices, orbit_rng);
        stats.record(net, detect_attractor(net, x0, spec.detect), spec.connectivity);
    }
    return stats;
}

}  // namespace

std::vector<CellStatistics> run_ensemble(const EnsembleSpec& spec, int threads) {
    validate(spec);
    const auto tasks = tasks_of(spec);
    std::vector<CellStatistics> partial(tasks.size());
    const auto count = static_cast<std::int64_t>(tasks.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t i = 0; i < count; ++i) partial[i] = run_task(spec, tasks[i]);
    auto cells = empty_cells(spec);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        cells[cell_index(spec, tasks[i].param, tasks[i].a, tasks[i].eta)].merge(partial[i]);
    }
    return cells;
}

std::vector<CellStatistics> run_ensemble_serial(const EnsembleSpec& spec) {
    validate(spec);
    auto cells = empty_cells(spec);
    for (const auto& t : tasks_of(spec)) cells[cell_index(spec, t.param, t.a, t.eta)].merge(run_task(spec, t));
    return cells;
}

double round12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

std::string grid_csv(const std::vector<CellStatistics>& stats) {
    std::string out = "model,p_or_m,a,eta,tau,count,n_converged,mean_osc_size,mean_nc\n";
    for (const auto& c : stats) {
        const std::string head = c.key.model + "," + fmt(c.key.parameter) + "," + fmt(c.key.a) + "," + fmt(c.key.eta) + ",";
        const std::string tail = "," + std::to_string(c.n_converged) + "," + fmt(c.mean_osc_size()) + "," +
                                 fmt(c.mean_component_count()) + "\n";
        if (c.period_histogram.empty()) {
            out += head + ",0" + tail;
            continue;
        }
        for (const auto& [tau, count] : c.period_histogram) {
            out += head + std::to_string(tau) + "," + std::to_string(count) + tail;
        }
    }
    return out;
}

std::string grid_json(const std::vector<CellStatistics>& stats) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : stats) cells.push_back(to_json(c));
    return nlohmann::json{{"cells", cells}}.dump(2) + "\n";
}

void emit_grid(const std::vector<CellStatistics>& stats, const std::string& csv_path, const std::string& json_path) {
    if (stats.empty()) throw DomainError("emit_grid: no statistics to write");
    if (!csv_path.empty()) write_text_file(csv_path, grid_csv(stats));
    if (!json_path.empty()) write_text_file(json_path, grid_json(stats));
}

}  // namespace regnet
