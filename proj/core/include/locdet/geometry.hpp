#ifndef LOCDET_GEOMETRY_HPP
#define LOCDET_GEOMETRY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "locdet/complex.hpp"
#include "locdet/functionals.hpp"
#include "locdet/ld_solver.hpp"

namespace locdet {

struct GeometryOptions {
    double degeneracy_tol = 1e-12;   // relative Gram-determinant threshold
    std::uint64_t seed = 20260823;   // Monte Carlo root seed
    long long mc_samples = 1000000;  // per solid angle, when sampling
};

/// A complex together with vertex coordinates in a fixed ambient space.
/// Every facet must be affinely independent; validated at construction.
struct EmbeddedComplex {
    Complex complex;
    std::map<VertexId, Eigen::VectorXd> coords;
    int ambient_dim = 0;
};

EmbeddedComplex make_embedded(const Complex& K,
                              const std::map<VertexId, std::vector<double>>& coords,
                              const GeometryOptions& opts = {});

/// Normalized solid angle in [0, 1]; the full sphere is 1.
struct SolidAngle {
    double value = 0.0;
    bool exact = true;
    long long samples = 0;   // Monte Carlo only
    double std_error = 0.0;  // Monte Carlo only
};

// Solid angle in facet sigma along its face eta, measured intrinsically in
// the affine hull of sigma.  Exact closed forms for facet dimensions 2 and 3;
// Monte Carlo direction sampling above that.
SolidAngle solid_angle(const EmbeddedComplex& E, const Simplex& eta,
                       const Simplex& sigma, const GeometryOptions& opts = {});

// Alternating angle sum over the faces of a facet; equals (-1)^n (n-1)/2.
double gram_check(const EmbeddedComplex& E, const Simplex& sigma,
                  const GeometryOptions& opts = {});

// P = 2 (-1)^n / (n-1) * [ (n+1)/2 b_{n-1} + b_n ].
Rational p_constant(const LinearFunctional& F, int n);

// The vertex-supported function built from F's coefficients and angle sums.
double phi(const EmbeddedComplex& E, const LinearFunctional& F, VertexId v,
           const GeometryOptions& opts = {});

// Sum_v phi(v) - Sum_{i=0}^{n} b_i f_i(K); small for n-pseudomanifolds.
double verify_geometric_ld(const EmbeddedComplex& E, const LinearFunctional& F,
                           const GeometryOptions& opts = {});

// T_{p-u,u} with each cycle copy on the unit circle of its own coordinate
// plane in R^{2p}.
EmbeddedComplex embed_t_complex(int p, int u, int n, int m);

struct StarIsometryClass {
    VertexId representative;
    std::vector<VertexId> members;
    std::string signature;
};

// Partition of the vertices into classes with pairwise isometric stars
// (center-preserving, face-structure-preserving, distances within tol).
std::vector<StarIsometryClass> star_isometry_classes(const EmbeddedComplex& E,
                                                     double tol = 1e-9);

struct GeometricDemoResult {
    std::vector<std::vector<StarIsometryClass>> per_member_classes;
    LDSystem system;
    LDVerdict verdict;
};

// Geometric counterpart of the combinatorial demo over the embedded family
// [T_{p-u,u}]: within-member unknowns are star-isometry classes, identified
// across members by the isomorphism type of the link.
GeometricDemoResult geometric_ld_demo(int p, int n, int m, const LinearFunctional& F);

// Stellar subdivision with the new vertex at the barycenter of the face.
EmbeddedComplex lift_stellar_subdivide(const EmbeddedComplex& E, const Simplex& face,
                                       const GeometryOptions& opts = {});

struct SubdivisionReportRow {
    VertexId v;
    double phi_before = 0.0;
    double phi_after = 0.0;
};

// phi before/after a stellar subdivision for every original vertex.
// Diagnostic: equality is asserted by callers only for facet dimension 2.
std::vector<SubdivisionReportRow> subdivision_invariance_report(
    const EmbeddedComplex& E, const LinearFunctional& F, const Simplex& face,
    const GeometryOptions& opts = {});

}  // namespace locdet

#endif
