#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "locdet/constructions.hpp"
#include "locdet/io.hpp"

using namespace locdet;

TEST_CASE("parse minimal document") {
    const NamedComplex nc =
        parse_complex_json(R"({"facets": [[0,1],[1,2],[2,0]]})");
    CHECK(nc.name.empty());
    CHECK_FALSE(nc.has_coords);
    CHECK(nc.complex == cycle_complex(3));
}

TEST_CASE("parse with name and coords") {
    const NamedComplex nc = parse_complex_json(R"({
        "name": "segment",
        "facets": [[0, 1]],
        "coords": {"0": [0.0, 0.0], "1": [1.0, 0.5]}
    })");
    CHECK(nc.name == "segment");
    REQUIRE(nc.has_coords);
    CHECK(nc.coords.at(0) == std::vector<double>{0.0, 0.0});
    CHECK(nc.coords.at(1) == std::vector<double>{1.0, 0.5});
}

TEST_CASE("facet order and vertex order are normalized") {
    const NamedComplex nc = parse_complex_json(R"({"facets": [[2,1],[0,2]]})");
    CHECK(nc.complex.facets() == std::vector<Simplex>{{0, 2}, {1, 2}});
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_complex_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex_json(R"({"name": "x"})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex_json(R"({"facets": [[-1, 0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_complex_json(R"({"facets": [[0, 0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_complex_json(R"({"facets": [[]]})"),
                    std::invalid_argument);
    // Coords must cover every vertex with one common dimension.
    CHECK_THROWS_AS(parse_complex_json(
                        R"({"facets": [[0,1]], "coords": {"0": [0.0]}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_complex_json(
            R"({"facets": [[0,1]], "coords": {"0": [0.0], "1": [1.0, 2.0]}})"),
        std::invalid_argument);
}

TEST_CASE("round trip through a file") {
    NamedComplex nc;
    nc.name = "octahedron";
    nc.complex = join(join(zero_sphere(), zero_sphere()), zero_sphere());
    nc.has_coords = true;
    int axis = 0;
    for (VertexId v : nc.complex.vertices()) {
        std::vector<double> x(3, 0.0);
        x[axis / 2] = (axis % 2 == 0) ? 1.0 : -1.0;
        nc.coords[v] = x;
        ++axis;
    }
    const std::string path = "io_roundtrip_tmp.json";
    save_complex(path, nc);
    const NamedComplex back = load_complex(path);
    std::remove(path.c_str());

    CHECK(back.name == nc.name);
    CHECK(back.complex == nc.complex);
    REQUIRE(back.has_coords);
    CHECK(back.coords == nc.coords);
}

TEST_CASE("load reports missing file") {
    CHECK_THROWS_AS(load_complex("does_not_exist_51234.json"),
                    std::invalid_argument);
}
