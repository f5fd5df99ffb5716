#ifndef LOCDET_IO_HPP
#define LOCDET_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "locdet/complex.hpp"

namespace locdet {

/// A complex as read from / written to the JSON file format:
/// {"name": optional string, "facets": [[int,...],...],
///  "coords": {"<vertex>": [float,...], ...} optional}.
struct NamedComplex {
    std::string name;
    Complex complex;
    bool has_coords = false;
    std::map<VertexId, std::vector<double>> coords;
};

NamedComplex load_complex(const std::string& path);
NamedComplex parse_complex_json(const std::string& text);

std::string complex_to_json(const NamedComplex& nc);
void save_complex(const std::string& path, const NamedComplex& nc);

}  // namespace locdet

#endif
