#include "regnet/attractor.hpp"
#include "regnet/error.hpp"
#include "regnet/harness.hpp"
#include "regnet/io.hpp"
#include "regnet/modularity.hpp"
#include "regnet/symmetry.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace regnet;

namespace {

struct Common {
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::optional<std::size_t> max_steps;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Root seed (overrides the file's root_seed)");
    cmd->add_option("--threads", c.threads, "Worker threads (default: REGNET_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-steps", c.max_steps, "Step budget per orbit");
    cmd->add_option("--out", c.out, "Output directory");
}

int thread_count(const Common& c) {
    if (c.threads > 0) return c.threads;
    if (const char* env = std::getenv("REGNET_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
        throw DomainError("REGNET_THREADS must be a positive integer");
    }
    return 0;
}

std::string in_dir(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
    return (fs::path(dir) / name).string();
}

void emit(const Json& j, const Common& c, const std::string& file) {
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!c.out.empty()) write_text_file(in_dir(c.out, file), text);
}

int simulate(const std::string& path, const Common& c, const std::string& connectivity) {
    Json j = read_json_file(path);
    if (!j.contains("x0")) {
        // Without x0 the initial condition is drawn from the seed.
        Rng rng = EnsembleSeed{c.seed.value_or(0)}.stream("orbit", {0});
        j["x0"] = sample_initial(static_cast<std::size_t>(j.value("n", 0)), rng);
    }
    const Instance inst = instance_from_json(j);
    DetectOptions opts;
    if (c.max_steps) opts.max_steps = *c.max_steps;
    const auto report = detect_attractor(inst.net, inst.x0, opts);
    emit(to_json(inst.net, report, connectivity_from_string(connectivity)), c, "report.json");
    return 0;
}

int ensemble(const std::string& path, const Common& c) {
    EnsembleSpec spec = ensemble_spec_from_json(read_json_file(path));
    if (c.seed) spec.root_seed = *c.seed;
    if (c.max_steps) spec.detect.max_steps = *c.max_steps;
    const auto stats = run_ensemble(spec, thread_count(c));
    const std::string csv = spec.output_csv.empty() ? "grid.csv" : spec.output_csv;
    const std::string json = spec.output_json.empty() ? "grid.json" : spec.output_json;
    emit_grid(stats, in_dir(c.out, csv), in_dir(c.out, json));
    return 0;
}

int symmetry_check(const std::string& path, const Common& c) {
    std::uint64_t seed = 0;
    SymmetrySpec spec = symmetry_spec_from_json(read_json_file(path), &seed);
    if (c.seed) seed = *c.seed;
    if (c.max_steps) spec.detect.max_steps = *c.max_steps;
    emit(to_json(paired_ensemble_symmetry(spec, seed, thread_count(c))), c, "symmetry.json");
    return 0;
}

int modularity_check(const std::string& witness_path, const std::string& module_path, std::size_t samples,
                     std::size_t steps, const Common& c) {
    const Instance witness = instance_from_json(read_json_file(witness_path));
    const Subnetwork module = module_from_json(witness.net.graph(), read_json_file(module_path));
    DetectOptions opts;
    if (c.max_steps) opts.max_steps = *c.max_steps;
    const auto report = detect_attractor(witness.net, witness.x0, opts);
    const ModuleEmbedding emb = build_embedding(witness.net, report, module);

    const EnsembleSeed root{c.seed.value_or(0)};
    double max_defect = 0.0, control = 0.0;
    bool contained = true;
    for (std::size_t k = 0; k < samples; ++k) {
        Rng rng = root.stream("modularity", {k});
        const auto s = sample_rectangles(emb, rng);
        const auto r = conjugacy_defect(emb, s.sigma_bar, s.thresholds, s.x, steps);
        max_defect = std::max(max_defect, r.defect);
        contained = contained && r.contained;
        if (k == 0) control = conjugacy_defect(emb, s.sigma_bar, s.thresholds, s.x, steps, 0.1).defect;
    }
    Json out{{"embedding", to_json(emb)},
             {"phi_A_surjective", emb.phi_A_surjective()},
             {"phi_V_surjective", emb.phi_V_surjective()},
             {"samples", samples},
             {"steps", steps},
             {"max_defect", max_defect},
             {"contained", contained},
             {"negative_control_defect", control}};
    emit(out, c, "modularity.json");
    return 0;
}

int emit_grid_cmd(const std::string& path, const Common& c) {
    const Json j = read_json_file(path);
    if (!j.contains("cells") || !j.at("cells").is_array()) throw DomainError("stats file needs a \"cells\" array");
    std::vector<CellStatistics> stats;
    for (const auto& cell : j.at("cells")) stats.push_back(cell_from_json(cell));
    emit_grid(stats, in_dir(c.out, "grid.csv"), in_dir(c.out, "grid.json"));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random regulatory network dynamics: attractors, modularity and symmetry checks"};
    app.require_subcommand(1);

    Common sim_c, ens_c, sym_c, mod_c, grid_c;
    std::string sim_path, ens_path, sym_path, wit_path, module_path, grid_path;
    std::string connectivity = "weak";
    std::size_t samples = 100, steps = 1000;

    auto* sim = app.add_subcommand("simulate", "Run one instance and print its attractor report");
    sim->add_option("instance", sim_path, "Instance JSON")->required();
    sim->add_option("--connectivity", connectivity, "Component notion for nc: weak or cycle");
    add_common(sim, sim_c);

    auto* ens = app.add_subcommand("ensemble", "Run a parameter grid and write CSV/JSON statistics");
    ens->add_option("spec", ens_path, "Ensemble spec JSON")->required();
    add_common(ens, ens_c);

    auto* sym = app.add_subcommand("symmetry-check", "Compare an ensemble with its sign-flipped coupling");
    sym->add_option("spec", sym_path, "Symmetry spec JSON")->required();
    add_common(sym, sym_c);

    auto* mod = app.add_subcommand("modularity-check", "Embed a module and measure the conjugacy defect");
    mod->add_option("witness", wit_path, "Witness instance JSON")->required();
    mod->add_option("module", module_path, "Module JSON with an \"arrows\" list")->required();
    mod->add_option("--samples", samples, "Rectangle samples");
    mod->add_option("--steps", steps, "Steps per sample");
    add_common(mod, mod_c);

    auto* grid = app.add_subcommand("emit-grid", "Rewrite CSV/JSON grid files from a statistics JSON");
    grid->add_option("stats", grid_path, "Statistics JSON (as written by ensemble)")->required();
    add_common(grid, grid_c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return simulate(sim_path, sim_c, connectivity);
        if (*ens) return ensemble(ens_path, ens_c);
        if (*sym) return symmetry_check(sym_path, sym_c);
        if (*mod) return modularity_check(wit_path, module_path, samples, steps, mod_c);
        if (*grid) return emit_grid_cmd(grid_path, grid_c);
    } catch (const IoError& e) {
        std::cerr << "regnet: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "regnet: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "regnet: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
