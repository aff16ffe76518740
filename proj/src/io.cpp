#include "regnet/io.hpp"

#include "regnet/error.hpp"

#include <fstream>
#include <sstream>

namespace regnet {

namespace {

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw DomainError(std::string("field \"") + key + "\": " + e.what());
    }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
    return j.contains(key) ? field<T>(j, key) : fallback;
}

Json interval_list(const std::vector<Interval>& v) {
    Json out = Json::array();
    for (const auto& i : v) out.push_back({i.lo, i.hi});
    return out;
}

Json arrow_list(std::span<const Arrow> arrows) {
    Json out = Json::array();
    for (const auto& a : arrows) out.push_back({a.from, a.to});
    return out;
}

std::vector<Arrow> arrows_from(const Json& j) {
    std::vector<Arrow> arrows;
    for (const auto& pair : field<std::vector<std::vector<std::int64_t>>>(j, "arrows")) {
        if (pair.size() != 2 || pair[0] < 0 || pair[1] < 0) throw DomainError("arrows must be pairs of vertex ids");
        arrows.push_back({static_cast<Vertex>(pair[0]), static_cast<Vertex>(pair[1])});
    }
    return arrows;
}

template <class Map>
Json histogram(const Map& m) {
    Json out = Json::object();
    for (const auto& [k, c] : m) out[std::to_string(k)] = c;
    return out;
}

std::map<std::size_t, std::size_t> histogram_from(const Json& j) {
    std::map<std::size_t, std::size_t> out;
    if (!j.is_object()) throw DomainError("histogram must be an object");
    for (const auto& [k, v] : j.items()) out[std::stoull(k)] = v.get<std::size_t>();
    return out;
}

GraphModel::Kind kind_from(const std::string& s) {
    if (s == "erdos_renyi") return GraphModel::Kind::erdos_renyi;
    if (s == "barabasi_albert") return GraphModel::Kind::barabasi_albert;
    if (s == "tree") return GraphModel::Kind::tree;
    throw DomainError("unknown graph model \"" + s + "\"");
}

// A model object with list-valued parameters expands to one GraphModel
// per list entry; scalar parameters give a single entry.
std::vector<GraphModel> models_from(const Json& j) {
    GraphModel base;
    base.kind = kind_from(field<std::string>(j, "type"));
    std::vector<GraphModel> out;
    auto values = [&](const char* key) {
        if (!j.contains(key)) throw DomainError(std::string("model: missing \"") + key + "\"");
        return j.at(key).is_array() ? field<std::vector<double>>(j, key) : std::vector<double>{field<double>(j, key)};
    };
    switch (base.kind) {
    case GraphModel::Kind::erdos_renyi:
        base.self_loops = field_or<bool>(j, "self_loops", false);
        for (double p : values("p")) {
            base.p = p;
            out.push_back(base);
        }
        break;
    case GraphModel::Kind::barabasi_albert:
        base.m0 = field<std::size_t>(j, "m0");
        for (double m : values("m")) {
            if (m < 1 || m != static_cast<double>(static_cast<std::size_t>(m))) {
                throw DomainError("model: m must be a positive integer");
            }
            base.m = static_cast<std::size_t>(m);
            out.push_back(base);
        }
        break;
    case GraphModel::Kind::tree: out.push_back(base); break;
    }
    return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

Json to_json(const Digraph& g) {
    return {{"n", g.vertex_count()}, {"arrows", arrow_list(g.arrows())}};
}

Digraph digraph_from_json(const Json& j) {
    const auto n = field<std::int64_t>(j, "n");
    if (n < 0) throw DomainError("n must be nonnegative");
    auto arrows = arrows_from(j);
    return Digraph(static_cast<std::size_t>(n), std::move(arrows));
}

InputlessDrive inputless_from_string(const std::string& s) {
    if (s == "decay") return InputlessDrive::decay;
    if (s == "midpoint") return InputlessDrive::midpoint;
    throw DomainError("inputless_drive must be \"decay\" or \"midpoint\"");
}

std::string to_string(InputlessDrive d) {
    return d == InputlessDrive::decay ? "decay" : "midpoint";
}

Connectivity connectivity_from_string(const std::string& s) {
    if (s == "weak") return Connectivity::weak;
    if (s == "cycle") return Connectivity::cycle;
    throw DomainError("connectivity must be \"weak\" or \"cycle\"");
}

std::string to_string(Connectivity c) {
    return c == Connectivity::weak ? "weak" : "cycle";
}

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::converged: return "converged";
    case Outcome::unresolved: return "unresolved";
    case Outcome::horizon: return "horizon";
    }
    return {};
}

Json to_json(const RegulatoryNetwork& net, std::span<const double> x0) {
    Json j = to_json(net.graph());
    Json signs = Json::array();
    for (auto s : net.signs()) signs.push_back(static_cast<int>(s));
    j["signs"] = signs;
    j["thresholds"] = net.thresholds();
    j["x0"] = std::vector<double>(x0.begin(), x0.end());
    j["a"] = net.rate();
    j["inputless_drive"] = to_string(net.inputless());
    return j;
}

Instance instance_from_json(const Json& j) {
    // Arrows may come in any order; per-arrow data follows them.
    auto arrows = arrows_from(j);
    auto signs = field<std::vector<int>>(j, "signs");
    auto thresholds = field<std::vector<double>>(j, "thresholds");
    if (signs.size() != arrows.size() || thresholds.size() != arrows.size()) {
        throw DomainError("signs and thresholds need one entry per arrow");
    }
    Digraph g(static_cast<std::size_t>(field<std::int64_t>(j, "n")), arrows);
    SignAssignment s(arrows.size());
    ThresholdAssignment t(arrows.size());
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw DomainError("signs must be -1 or +1");
        const auto k = *g.arrow_index(arrows[i]);
        s[k] = static_cast<std::int8_t>(signs[i]);
        t[k] = thresholds[i];
    }
    const auto drive = inputless_from_string(field_or<std::string>(j, "inputless_drive", "decay"));
    RegulatoryNetwork net(std::move(g), std::move(s), std::move(t), field<double>(j, "a"), drive);
    auto x0 = field<std::vector<double>>(j, "x0");
    validate_activity(net, x0);
    return {std::move(net), std::move(x0)};
}

Json to_json(const RegulatoryNetwork& net, const AttractorReport& report, Connectivity connectivity) {
    Json j{{"converged", report.converged()},
           {"outcome", to_string(report.outcome)},
           {"transient", report.transient_steps},
           {"period", report.period},
           {"margin", report.margin},
           {"points", report.periodic_points},
           {"steps_simulated", report.steps_simulated}};
    if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
    if (report.converged()) {
        const auto osc = oscillatory_subnetwork(net, report, connectivity);
        j["osc"] = {{"vertices", osc.subnetwork.vertices},
                    {"arrows", arrow_list(osc.subnetwork.arrows)},
                    {"nc", osc.component_count},
                    {"degree_hist", histogram(osc.degree_histogram)}};
    } else {
        j["osc"] = nullptr;
    }
    return j;
}

Subnetwork module_from_json(const Digraph& witness, const Json& j) {
    auto arrows = arrows_from(j);
    for (const auto& a : arrows) {
        if (!witness.has_arrow(a.from, a.to)) {
            throw DomainError("module arrow (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                              ") is not an arrow of the witness");
        }
    }
    return induced_subnetwork(witness, std::move(arrows));
}

Json to_json(const ModuleEmbedding& emb) {
    Json signs = Json::array();
    for (auto s : emb.base_signs) signs.push_back(static_cast<int>(s));
    return {{"module", {{"vertices", emb.module.vertices}, {"arrows", arrow_list(emb.module.arrows)}}},
            {"extension", to_json(emb.extension)},
            {"signs", signs},
            {"added_vertex", emb.added_vertex},
            {"epsilon", emb.epsilon},
            {"rect_T", interval_list(emb.rect_T)},
            {"rect_x", interval_list(emb.rect_x)},
            {"external_levels", emb.external_level},
            {"in_degree", emb.in_degree},
            {"module_in_degree", emb.module_in_degree},
            {"phi_A", {{"slope", emb.slope_A}, {"constant", emb.const_A}}},
            {"phi_V", {{"slope", emb.slope_V}, {"constant", emb.const_V}}}};
}

Json to_json(const SymmetryReport& r) {
    return {{"eta", r.eta},
            {"n_instances", r.n_instances},
            {"n_excluded", r.n_excluded},
            {"period_hist_match", r.period_hist_match},
            {"osc_hist_match", r.osc_hist_match},
            {"max_defect", r.max_defect}};
}

Json to_json(const CellStatistics& c) {
    return {{"model", c.key.model},
            {"p_or_m", round12(c.key.parameter)},
            {"a", round12(c.key.a)},
            {"eta", round12(c.key.eta)},
            {"n_orbits", c.n_orbits},
            {"n_converged", c.n_converged},
            {"n_unresolved", c.n_unresolved},
            {"n_horizon", c.n_horizon},
            {"period_histogram", histogram(c.period_histogram)},
            {"sum_osc_size", c.sum_osc_size},
            {"sum_nc", c.sum_component_count},
            {"sum_transient", c.sum_transient},
            {"degree_histogram", histogram(c.degree_histogram)},
            {"mean_osc_size", round12(c.mean_osc_size())},
            {"mean_nc", round12(c.mean_component_count())},
            {"mean_transient", round12(c.mean_transient())}};
}

CellStatistics cell_from_json(const Json& j) {
    CellStatistics c;
    c.key = {field<std::string>(j, "model"), field<double>(j, "p_or_m"), field<double>(j, "a"),
             field<double>(j, "eta")};
    c.n_orbits = field<std::size_t>(j, "n_orbits");
    c.n_converged = field<std::size_t>(j, "n_converged");
    c.n_unresolved = field<std::size_t>(j, "n_unresolved");
    c.n_horizon = field<std::size_t>(j, "n_horizon");
    c.period_histogram = histogram_from(field<Json>(j, "period_histogram"));
    c.sum_osc_size = field<std::uint64_t>(j, "sum_osc_size");
    c.sum_component_count = field<std::uint64_t>(j, "sum_nc");
    c.sum_transient = field<std::uint64_t>(j, "sum_transient");
    c.degree_histogram = histogram_from(field<Json>(j, "degree_histogram"));
    std::size_t total = 0;
    for (const auto& [k, n] : c.period_histogram) total += n;
    if (total != c.n_converged) throw DomainError("cell: period histogram total differs from n_converged");
    if (c.n_converged + c.n_unresolved + c.n_horizon != c.n_orbits) {
        throw DomainError("cell: outcome counts do not add up to n_orbits");
    }
    return c;
}

EnsembleSpec ensemble_spec_from_json(const Json& j) {
    EnsembleSpec s;
    s.models = models_from(field<Json>(j, "model"));
    s.n_vertices = field<std::size_t>(j, "n_vertices");
    s.a_grid = field<std::vector<double>>(j, "a_grid");
    s.eta_grid = field<std::vector<double>>(j, "eta_grid");
    s.graphs_per_cell = field<std::size_t>(j, "graphs_per_cell");
    s.orbits_per_graph = field<std::size_t>(j, "orbits_per_graph");
    s.detect.max_steps = field_or<std::size_t>(j, "max_steps", s.detect.max_steps);
    s.detect.window = field_or<std::size_t>(j, "window", s.detect.window);
    s.detect.verify_tol = field_or<double>(j, "verify_tol", s.detect.verify_tol);
    s.root_seed = field_or<std::uint64_t>(j, "root_seed", 0);
    s.inputless = inputless_from_string(field_or<std::string>(j, "inputless_drive", "decay"));
    s.connectivity = connectivity_from_string(field_or<std::string>(j, "connectivity", "weak"));
    if (j.contains("output")) {
        const Json& o = j.at("output");
        s.output_csv = field_or<std::string>(o, "csv", "");
        s.output_json = field_or<std::string>(o, "json", "");
    }
    validate(s);
    return s;
}

SymmetrySpec symmetry_spec_from_json(const Json& j, std::uint64_t* root_seed) {
    SymmetrySpec s;
    const auto models = models_from(field<Json>(j, "model"));
    if (models.size() != 1) throw DomainError("symmetry spec: the model needs a single parameter value");
    s.model = models.front();
    s.n_vertices = field<std::size_t>(j, "n_vertices");
    s.rate = field<double>(j, "a");
    s.eta = field<double>(j, "eta");
    s.instances = field<std::size_t>(j, "instances");
    s.defect_steps = field_or<std::size_t>(j, "defect_steps", s.defect_steps);
    s.detect.max_steps = field_or<std::size_t>(j, "max_steps", s.detect.max_steps);
    s.inputless = inputless_from_string(field_or<std::string>(j, "inputless_drive", "midpoint"));
    if (root_seed) *root_seed = field_or<std::uint64_t>(j, "root_seed", 0);
    return s;
}

}  // namespace regnet
