#pragma once

#include "regnet/attractor.hpp"
#include "regnet/digraph.hpp"
#include "regnet/dynamics.hpp"
#include "regnet/harness.hpp"
#include "regnet/modularity.hpp"
#include "regnet/symmetry.hpp"

#include "json.hpp"

#include <string>

namespace regnet {

using Json = nlohmann::json;

// Files. Unreadable, unwritable or unparseable files raise IoError; valid
// JSON that violates a schema raises DomainError.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"n": int, "arrows": [[u,v], ...]} with arrows in lexicographic order.
Json to_json(const Digraph& g);
Digraph digraph_from_json(const Json& j);

/// A replayable instance: the graph fields plus per-arrow "signs" and
/// "thresholds" aligned with the lexicographic arrow order, "x0", "a" and
/// optionally "inputless_drive" ("decay" or "midpoint").
struct Instance {
    RegulatoryNetwork net;
    ActivityVector x0;
};
Json to_json(const RegulatoryNetwork& net, std::span<const double> x0);
Instance instance_from_json(const Json& j);

InputlessDrive inputless_from_string(const std::string& s);
std::string to_string(InputlessDrive d);
Connectivity connectivity_from_string(const std::string& s);
std::string to_string(Connectivity c);
std::string to_string(Outcome o);

// {converged, outcome, transient, period, margin, points, osc: {vertices,
// arrows, nc, degree_hist}}; osc is null unless converged.
Json to_json(const RegulatoryNetwork& net, const AttractorReport& report, Connectivity connectivity);

/// A module given as {"arrows": [[u,v], ...]} over the witness vertex ids.
Subnetwork module_from_json(const Digraph& witness, const Json& j);

Json to_json(const ModuleEmbedding& emb);
Json to_json(const SymmetryReport& r);

Json to_json(const CellStatistics& c);
CellStatistics cell_from_json(const Json& j);

/// Ensemble config; see the README for the schema.
EnsembleSpec ensemble_spec_from_json(const Json& j);
/// Symmetry config: {"model", "n_vertices", "a", "eta", "instances",
/// "defect_steps", "max_steps", "inputless_drive", "root_seed"}.
SymmetrySpec symmetry_spec_from_json(const Json& j, std::uint64_t* root_seed = nullptr);

}  // namespace regnet
