#include "locdet/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace locdet {

using nlohmann::json;

NamedComplex parse_complex_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("complex JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("facets") || !j["facets"].is_array())
        throw std::invalid_argument("complex JSON: missing \"facets\" array");

    NamedComplex nc;
    if (j.contains("name")) nc.name = j["name"].get<std::string>();

    std::vector<std::vector<VertexId>> facets;
    for (const auto& f : j["facets"]) {
        if (!f.is_array()) throw std::invalid_argument("complex JSON: facet is not a list");
        std::vector<VertexId> facet;
        for (const auto& v : f) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw std::invalid_argument("complex JSON: vertices must be non-negative integers");
            facet.push_back(v.get<VertexId>());
        }
        facets.push_back(std::move(facet));
    }
    nc.complex = Complex::from_facets(facets);

    if (j.contains("coords")) {
        if (!j["coords"].is_object())
            throw std::invalid_argument("complex JSON: \"coords\" must be an object");
        nc.has_coords = true;
        std::size_t ambient = 0;
        for (const auto& [key, val] : j["coords"].items()) {
            VertexId v;
            try {
                v = std::stoi(key);
            } catch (const std::exception&) {
                throw std::invalid_argument("complex JSON: bad coordinate key '" + key + "'");
            }
            if (!val.is_array())
                throw std::invalid_argument("complex JSON: coordinates must be lists");
            std::vector<double> x;
            for (const auto& c : val) x.push_back(c.get<double>());
            if (ambient == 0)
                ambient = x.size();
            else if (x.size() != ambient)
                throw std::invalid_argument("complex JSON: mixed coordinate dimensions");
            nc.coords[v] = std::move(x);
        }
        for (VertexId v : nc.complex.vertices())
            if (!nc.coords.count(v))
                throw std::invalid_argument("complex JSON: coordinates missing for a vertex");
    }
    return nc;
}

NamedComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_complex_json(buf.str());
}

std::string complex_to_json(const NamedComplex& nc) {
    json j;
    if (!nc.name.empty()) j["name"] = nc.name;
    j["facets"] = json::array();
    for (const auto& f : nc.complex.facets()) j["facets"].push_back(f);
    if (nc.has_coords) {
        json coords = json::object();
        for (const auto& [v, x] : nc.coords) coords[std::to_string(v)] = x;
        j["coords"] = std::move(coords);
    }
    return j.dump(2);
}

void save_complex(const std::string& path, const NamedComplex& nc) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << complex_to_json(nc) << "\n";
}

}  // namespace locdet
