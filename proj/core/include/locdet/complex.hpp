#ifndef LOCDET_COMPLEX_HPP
#define LOCDET_COMPLEX_HPP

#include <set>
#include <string>
#include <vector>

namespace locdet {

using VertexId = int;

// Vertex ids in strictly increasing order.  The empty vector is the empty
// simplex (dimension -1).
using Simplex = std::vector<VertexId>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// Face counts (f_{-1}, f_0, ..., f_d) with f_{-1} = 1.
struct FVector {
    std::vector<long long> counts;  // counts[i + 1] = f_i

    FVector() : counts{1} {}
    explicit FVector(std::vector<long long> c) : counts(std::move(c)) {}

    int dim() const { return static_cast<int>(counts.size()) - 2; }

    // Out-of-range queries return 0.
    long long f(int i) const {
        if (i < -1 || i + 1 >= static_cast<int>(counts.size())) return 0;
        return counts[i + 1];
    }

    bool operator==(const FVector& other) const { return counts == other.counts; }
};

/// A finite abstract simplicial complex, stored as its set of facets with the
/// full face lattice materialized at construction.  Immutable.
class Complex {
public:
    Complex() = default;  // the empty complex, f = (1)

    // Builds the downward closure of the given faces; the stored facet set is
    // the inclusion-maximal ones.  Throws std::invalid_argument on an empty
    // facet entry or a duplicate vertex within a facet.
    static Complex from_facets(const std::vector<std::vector<VertexId>>& facets);

    bool empty() const { return facets_.empty(); }
    int dim() const;

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Simplex>& facets() const { return facets_; }

    // Nonempty faces of one dimension (d >= 0), sorted.
    const std::vector<Simplex>& faces(int d) const;
    // All nonempty faces.
    std::vector<Simplex> all_faces() const;

    bool contains(const Simplex& s) const;
    bool has_vertex(VertexId v) const;

    FVector f_vector() const;

    // Sum_{i >= 0} (-1)^i f_i.  Throws std::invalid_argument on the empty
    // complex.
    long long euler_characteristic() const;

    Complex link(VertexId v) const;
    Complex star(VertexId v) const;

    bool operator==(const Complex& other) const { return facets_ == other.facets_; }

private:
    std::vector<Simplex> facets_;
    std::vector<VertexId> vertices_;
    std::vector<std::vector<Simplex>> faces_by_dim_;
    std::set<Simplex> face_set_;

    void build_faces();
    static const std::vector<Simplex> kNoFaces;
};

// Join K * L; vertex labels of L are shifted past those of K.
Complex join(const Complex& K, const Complex& L);

// True iff every clique of the 1-skeleton spans a face.
bool is_flag(const Complex& K);

// Pure n-dimensional with every (n-1)-face in exactly two n-faces.  The
// strict flag additionally requires the facet-ridge graph to be connected.
bool is_pseudomanifold(const Complex& K, int n, bool strict = false);

bool are_isomorphic(const Complex& K, const Complex& L);

// Equal for two complexes iff they are isomorphic.
std::string canonical_key(const Complex& K);

// Stellar subdivision at a face of dimension >= 1; the new vertex label is
// one past the current maximum.
Complex stellar_subdivide(const Complex& K, const Simplex& face);

}  // namespace locdet

#endif
