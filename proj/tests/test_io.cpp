#include "regnet/error.hpp"
#include "regnet/io.hpp"

#include "doctest.h"

#include <filesystem>

using namespace regnet;

TEST_CASE("graph JSON round trip in lexicographic order") {
    const Digraph g(3, {{2, 1}, {0, 2}, {0, 0}});
    const Json j = to_json(g);
    CHECK(j.dump() == R"({"arrows":[[0,0],[0,2],[2,1]],"n":3})");
    const Digraph back = digraph_from_json(j);
    CHECK(back.vertex_count() == 3);
    CHECK(std::equal(back.arrows().begin(), back.arrows().end(), g.arrows().begin(), g.arrows().end()));
    CHECK_THROWS_AS(digraph_from_json(Json::parse(R"({"n":2,"arrows":[[0,5]]})")), DomainError);
    CHECK_THROWS_AS(digraph_from_json(Json::parse(R"({"arrows":[]})")), DomainError);
}

TEST_CASE("instance round trip") {
    const RegulatoryNetwork net(Digraph(2, {{0, 1}, {1, 0}}), {-1, 1}, {0.25, 0.75}, 0.4, InputlessDrive::midpoint);
    const std::vector<double> x0{0.1, 0.9};
    const Instance back = instance_from_json(to_json(net, x0));
    CHECK(back.x0 == x0);
    CHECK(back.net.signs() == net.signs());
    CHECK(back.net.thresholds() == net.thresholds());
    CHECK(back.net.rate() == 0.4);
    CHECK(back.net.inputless() == InputlessDrive::midpoint);
}

TEST_CASE("instance arrays follow the listed arrow order") {
    const auto inst = instance_from_json(Json::parse(
        R"({"n":2,"arrows":[[1,0],[0,1]],"signs":[1,-1],"thresholds":[0.7,0.2],"x0":[0.5,0.5],"a":0.1})"));
    // Stored order is (0,1), (1,0).
    CHECK(inst.net.signs() == SignAssignment{-1, 1});
    CHECK(inst.net.thresholds() == ThresholdAssignment{0.2, 0.7});
    CHECK(inst.net.inputless() == InputlessDrive::decay);
}

TEST_CASE("instance schema errors") {
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"n":1,"arrows":[[0,0]],"signs":[1],"thresholds":[0.5],"a":0.1})")),
                    DomainError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(
                        R"({"n":1,"arrows":[[0,0]],"signs":[0],"thresholds":[0.5],"x0":[0.1],"a":0.1})")),
                    DomainError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(
                        R"({"n":1,"arrows":[[0,0]],"signs":[1],"thresholds":[0.5],"x0":[0.1],"a":1.0})")),
                    DomainError);
}

TEST_CASE("attractor report fields") {
    const RegulatoryNetwork net(Digraph(1, {{0, 0}}), {-1}, {0.5}, 0.2);
    const auto rep = detect_attractor(net, std::vector<double>{0.9});
    const Json j = to_json(net, rep, Connectivity::weak);
    CHECK(j["converged"] == true);
    CHECK(j["period"] == 2);
    CHECK(j["points"].size() == 2);
    CHECK(j["osc"]["nc"] == 1);
    CHECK(j["osc"]["arrows"] == Json::parse("[[0,0]]"));
    CHECK(j["osc"]["degree_hist"] == Json::parse(R"({"1":1})"));
    CHECK(j.contains("transient"));
    CHECK(j.contains("margin"));
}

TEST_CASE("cell statistics round trip") {
    CellStatistics c;
    c.key = {"barabasi_albert", 2.0, 0.3, 0.7};
    c.n_orbits = 5;
    c.n_converged = 3;
    c.n_unresolved = 1;
    c.n_horizon = 1;
    c.period_histogram = {{1, 1}, {12, 2}};
    c.sum_osc_size = 17;
    c.sum_component_count = 4;
    c.sum_transient = 99;
    c.degree_histogram = {{1, 10}, {2, 7}};
    CHECK(cell_from_json(to_json(c)) == c);

    Json bad = to_json(c);
    bad["n_converged"] = 4;
    CHECK_THROWS_AS(cell_from_json(bad), DomainError);
}

TEST_CASE("ensemble spec parsing") {
    const auto spec = ensemble_spec_from_json(Json::parse(R"({
        "model": {"type": "barabasi_albert", "m0": 5, "m": [1, 2]},
        "n_vertices": 30, "a_grid": [0.0, 0.4], "eta_grid": [0.5],
        "graphs_per_cell": 2, "orbits_per_graph": 3, "root_seed": 11,
        "max_steps": 5000, "connectivity": "cycle",
        "output": {"csv": "out.csv", "json": "out.json"}})"));
    REQUIRE(spec.models.size() == 2);
    CHECK(spec.models[1].m == 2);
    CHECK(spec.models[1].m0 == 5);
    CHECK(spec.detect.max_steps == 5000);
    CHECK(spec.connectivity == Connectivity::cycle);
    CHECK(spec.output_csv == "out.csv");

    CHECK_THROWS_AS(ensemble_spec_from_json(Json::parse(R"({"model": {"type": "lattice"}})")), DomainError);
    CHECK_THROWS_AS(ensemble_spec_from_json(Json::parse(R"({
        "model": {"type": "erdos_renyi", "p": [0.2]}, "n_vertices": 5, "a_grid": [1.2], "eta_grid": [0.5],
        "graphs_per_cell": 1, "orbits_per_graph": 1})")),
                    DomainError);
}

TEST_CASE("the shipped grid config parses") {
    const auto path = std::filesystem::path(__FILE__).parent_path().parent_path() / "configs" / "paper_s42.json";
    const auto spec = ensemble_spec_from_json(read_json_file(path.string()));
    CHECK(spec.n_vertices == 50);
    CHECK(spec.a_grid.size() == 9);
}

TEST_CASE("file errors are I/O errors") {
    CHECK_THROWS_AS(read_json_file("/nonexistent/spec.json"), IoError);
    CHECK_THROWS_AS(write_text_file("/nonexistent/dir/out.csv", "x"), IoError);
}
