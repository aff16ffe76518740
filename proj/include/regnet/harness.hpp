#pragma once

#include "regnet/attractor.hpp"
#include "regnet/digraph.hpp"
#include "regnet/dynamics.hpp"
#include "regnet/ensembles.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace regnet {

struct EnsembleSpec {
    // One entry per value of the model's parameter list.
    std::vector<GraphModel> models;
    std::size_t n_vertices = 50;
    std::vector<double> a_grid;
    std::vector<double> eta_grid;
    std::size_t graphs_per_cell = 10;
    std::size_t orbits_per_graph = 10;
    DetectOptions detect;
    std::uint64_t root_seed = 0;
    InputlessDrive inputless = InputlessDrive::decay;
    Connectivity connectivity = Connectivity::weak;
    std::string output_csv;
    std::string output_json;
};

/// Throws DomainError on empty grids or out-of-range values.
void validate(const EnsembleSpec& spec);

struct CellKey {
    std::string model;
    double parameter = 0.0;
    double a = 0.0;
    double eta = 0.0;

    bool operator==(const CellKey&) const = default;
};

/// Aggregates of one (model parameter, a, eta) cell. Only integer sums are
/// stored, so merging is exact, associative and commutative.
struct CellStatistics {
    CellKey key;
    std::size_t n_orbits = 0;
    std::size_t n_converged = 0;
    std::size_t n_unresolved = 0;
    std::size_t n_horizon = 0;
    std::map<std::size_t, std::size_t> period_histogram;
    // Per converged orbit: |V_osc|, nc(G_osc), transient length.
    std::uint64_t sum_osc_size = 0;
    std::uint64_t sum_component_count = 0;
    std::uint64_t sum_transient = 0;
    // Pooled in-degree histogram of the oscillatory subnetworks.
    std::map<std::size_t, std::size_t> degree_histogram;

    void record(const RegulatoryNetwork& net, const AttractorReport& report, Connectivity connectivity);
    // Throws DomainError when keys differ.
    void merge(const CellStatistics& other);

    double mean_osc_size() const;
    double mean_component_count() const;
    double mean_transient() const;
    std::map<std::size_t, double> degree_distribution() const;

    bool operator==(const CellStatistics&) const = default;
};

/// Cells in (parameter, a, eta) order. Graphs, signs and thresholds of graph
/// g in cell (parameter, eta) come from substream ("graph", {param, eta, g})
/// and are shared by every a; initial condition j of that graph comes from
/// ("orbit", {param, eta, g, j}). Results depend only on the spec.
/// `threads` = 0 keeps the OpenMP default.
std::vector<CellStatistics> run_ensemble(const EnsembleSpec& spec, int threads = 0);
std::vector<CellStatistics> run_ensemble_serial(const EnsembleSpec& spec);

/// Long-format CSV: one row per (cell, tau), or one row with an empty tau
/// for cells without converged orbits.
std::string grid_csv(const std::vector<CellStatistics>& stats);
/// JSON mirror with sorted keys and 12-significant-digit floats.
std::string grid_json(const std::vector<CellStatistics>& stats);
/// Writes both files; throws IoError with the path on failure.
void emit_grid(const std::vector<CellStatistics>& stats, const std::string& csv_path, const std::string& json_path);

/// Rounds to 12 significant digits, the precision of every emitted float.
double round12(double x);

}  // namespace regnet
