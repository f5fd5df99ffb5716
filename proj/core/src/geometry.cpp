#include "locdet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "locdet/constructions.hpp"

namespace locdet {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd edge_matrix(const EmbeddedComplex& E, const Simplex& s) {
    const Eigen::VectorXd& p0 = E.coords.at(s[0]);
    Eigen::MatrixXd M(E.ambient_dim, static_cast<int>(s.size()) - 1);
    for (int k = 1; k < static_cast<int>(s.size()); ++k)
        M.col(k - 1) = E.coords.at(s[k]) - p0;
    return M;
}

// Relative Gram determinant; near zero means affinely dependent.
double relative_gram(const EmbeddedComplex& E, const Simplex& s) {
    if (s.size() < 2) return 1.0;
    const Eigen::MatrixXd M = edge_matrix(E, s);
    const Eigen::MatrixXd G = M.transpose() * M;
    double scale = 1.0;
    for (int k = 0; k < M.cols(); ++k) scale *= G(k, k);
    if (scale <= 0.0) return 0.0;
    return G.determinant() / scale;
}

// Orthonormal basis of the affine hull of sigma; returns the intrinsic
// coordinates of sigma's vertices (first vertex at the origin).
Eigen::MatrixXd intrinsic_coords(const EmbeddedComplex& E, const Simplex& sigma) {
    const int d = static_cast<int>(sigma.size()) - 1;
    const Eigen::MatrixXd M = edge_matrix(E, sigma);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::MatrixXd Q =
        qr.householderQ() * Eigen::MatrixXd::Identity(E.ambient_dim, d);
    Eigen::MatrixXd pts(d, d + 1);
    pts.col(0).setZero();
    for (int k = 0; k < d; ++k) pts.col(k + 1) = Q.transpose() * M.col(k);
    return pts;
}

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

double angle_between(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return clamped_acos(u.dot(v) / (u.norm() * v.norm()));
}

// Dihedral angle of the tetrahedron (a, b, c, d) along the edge (a, b),
// in intrinsic 3-space.
double dihedral(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                const Eigen::Vector3d& c, const Eigen::Vector3d& d) {
    const Eigen::Vector3d axis = (b - a).normalized();
    Eigen::Vector3d u = c - a;
    Eigen::Vector3d v = d - a;
    u -= u.dot(axis) * axis;
    v -= v.dot(axis) * axis;
    return angle_between(u, v);
}

std::uint64_t mix_seed(std::uint64_t seed, const Simplex& eta, const Simplex& sigma) {
    auto mix = [&seed](std::uint64_t x) {
        seed ^= x + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    };
    for (VertexId v : eta) mix(static_cast<std::uint64_t>(v) + 1);
    mix(0xffffULL);
    for (VertexId v : sigma) mix(static_cast<std::uint64_t>(v) + 1);
    return seed;
}

SolidAngle monte_carlo_angle(const EmbeddedComplex& E, const Simplex& eta,
                             const Simplex& sigma, const GeometryOptions& opts) {
    const int n = simplex_dim(sigma);
    const int i = simplex_dim(eta);
    const Eigen::MatrixXd pts = intrinsic_coords(E, sigma);  // n x (n+1)

    // Barycentric derivative solver: mu = Ainv * d gives the rates of the
    // barycentric coordinates of vertices 1..n; vertex 0 gets -sum.
    Eigen::MatrixXd A(n, n);
    for (int k = 0; k < n; ++k) A.col(k) = pts.col(k + 1) - pts.col(0);
    const Eigen::MatrixXd Ainv = A.inverse();

    // Orthonormal basis of the orthogonal complement of aff(eta) in aff(sigma).
    Eigen::MatrixXd C;
    if (i == 0) {
        C = Eigen::MatrixXd::Identity(n, n);
    } else {
        Eigen::MatrixXd Eta(n, i);
        int col = 0;
        const auto idx_of = [&sigma](VertexId v) {
            return static_cast<int>(std::lower_bound(sigma.begin(), sigma.end(), v) -
                                    sigma.begin());
        };
        for (int k = 1; k <= i; ++k)
            Eta.col(col++) = pts.col(idx_of(eta[k])) - pts.col(idx_of(eta[0]));
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eta);
        const Eigen::MatrixXd Q = qr.householderQ();
        C = Q.rightCols(n - i);
    }

    std::vector<char> in_eta(sigma.size(), 0);
    for (std::size_t k = 0; k < sigma.size(); ++k)
        in_eta[k] = std::binary_search(eta.begin(), eta.end(), sigma[k]) ? 1 : 0;

    std::mt19937_64 rng(mix_seed(opts.seed, eta, sigma));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const long long samples = opts.mc_samples;
    long long hits = 0;
    Eigen::VectorXd g(n - i), d(n), mu(n);
    for (long long it = 0; it < samples; ++it) {
        for (int k = 0; k < n - i; ++k) g(k) = gauss(rng);
        d = C * g;
        mu = Ainv * d;
        bool inside = true;
        double mu0 = 0.0;
        for (int k = 0; k < n; ++k) {
            mu0 -= mu(k);
            if (!in_eta[k + 1] && mu(k) < 0.0) {
                inside = false;
                break;
            }
        }
        if (inside && !in_eta[0] && mu0 < 0.0) inside = false;
        if (inside) ++hits;
    }
    SolidAngle out;
    out.exact = false;
    out.samples = samples;
    out.value = static_cast<double>(hits) / static_cast<double>(samples);
    out.std_error = std::sqrt(out.value * (1.0 - out.value) /
                              static_cast<double>(samples));
    return out;
}

}  // namespace

EmbeddedComplex make_embedded(const Complex& K,
                              const std::map<VertexId, std::vector<double>>& coords,
                              const GeometryOptions& opts) {
    EmbeddedComplex E;
    E.complex = K;
    int ambient = -1;
    for (VertexId v : K.vertices()) {
        auto it = coords.find(v);
        if (it == coords.end())
            throw std::invalid_argument("make_embedded: missing coordinates for a vertex");
        if (ambient < 0)
            ambient = static_cast<int>(it->second.size());
        else if (static_cast<int>(it->second.size()) != ambient)
            throw std::invalid_argument("make_embedded: mixed coordinate dimensions");
        Eigen::VectorXd x(ambient);
        for (int k = 0; k < ambient; ++k) x(k) = it->second[k];
        E.coords[v] = std::move(x);
    }
    if (ambient < K.dim())
        throw std::invalid_argument("make_embedded: ambient dimension below complex dimension");
    E.ambient_dim = ambient;
    for (const auto& f : K.facets())
        if (relative_gram(E, f) < opts.degeneracy_tol)
            throw std::invalid_argument("make_embedded: degenerate facet");
    return E;
}

SolidAngle solid_angle(const EmbeddedComplex& E, const Simplex& eta,
                       const Simplex& sigma, const GeometryOptions& opts) {
    if (!E.complex.contains(sigma))
        throw std::invalid_argument("solid_angle: sigma not a face");
    if (eta.empty() ||
        !std::includes(sigma.begin(), sigma.end(), eta.begin(), eta.end()))
        throw std::invalid_argument("solid_angle: eta is not a face of sigma");
    const int n = simplex_dim(sigma);
    const int i = simplex_dim(eta);
    if (n < 2 || i > n - 2)
        throw std::invalid_argument("solid_angle: dimensions out of range");

    SolidAngle out;
    if (n == 2 && i == 0) {
        // Planar angle at a vertex of a triangle.
        Simplex rest;
        for (VertexId v : sigma)
            if (v != eta[0]) rest.push_back(v);
        const Eigen::VectorXd& a = E.coords.at(eta[0]);
        out.value = angle_between(E.coords.at(rest[0]) - a,
                                  E.coords.at(rest[1]) - a) / (2.0 * kPi);
        return out;
    }
    if (n == 3) {
        const Eigen::MatrixXd pts = intrinsic_coords(E, sigma);
        const auto idx_of = [&sigma](VertexId v) {
            return static_cast<int>(std::lower_bound(sigma.begin(), sigma.end(), v) -
                                    sigma.begin());
        };
        auto P = [&pts, &idx_of](VertexId v) {
            return Eigen::Vector3d(pts.col(idx_of(v)));
        };
        if (i == 1) {
            // Dihedral angle along an edge, as a fraction of the circle.
            Simplex rest;
            for (VertexId v : sigma)
                if (v != eta[0] && v != eta[1]) rest.push_back(v);
            out.value = dihedral(P(eta[0]), P(eta[1]), P(rest[0]), P(rest[1])) /
                        (2.0 * kPi);
            return out;
        }
        // Vertex solid angle via the spherical excess of the vertex cone.
        Simplex rest;
        for (VertexId v : sigma)
            if (v != eta[0]) rest.push_back(v);
        const double t0 = dihedral(P(eta[0]), P(rest[0]), P(rest[1]), P(rest[2]));
        const double t1 = dihedral(P(eta[0]), P(rest[1]), P(rest[0]), P(rest[2]));
        const double t2 = dihedral(P(eta[0]), P(rest[2]), P(rest[0]), P(rest[1]));
        out.value = (t0 + t1 + t2 - kPi) / (4.0 * kPi);
        return out;
    }
    return monte_carlo_angle(E, eta, sigma, opts);
}

double gram_check(const EmbeddedComplex& E, const Simplex& sigma,
                  const GeometryOptions& opts) {
    const int n = simplex_dim(sigma);
    if (n < 2) throw std::invalid_argument("gram_check: facet dimension must be >= 2");
    double total = 0.0;
    const int nv = static_cast<int>(sigma.size());
    for (unsigned mask = 1; mask < (1u << nv); ++mask) {
        Simplex eta;
        for (int b = 0; b < nv; ++b)
            if (mask & (1u << b)) eta.push_back(sigma[b]);
        const int i = simplex_dim(eta);
        if (i > n - 2) continue;
        const double a = solid_angle(E, eta, sigma, opts).value;
        total += (i % 2 == 0) ? a : -a;
    }
    return total;
}

Rational p_constant(const LinearFunctional& F, int n) {
    if (n < 2) throw std::invalid_argument("p_constant: n must be >= 2");
    const Rational inner = Rational(n + 1, 2) * F.b(n - 1) + F.b(n);
    Rational P = Rational(2, n - 1) * inner;
    if (n % 2 != 0) P = -P;
    return P;
}

namespace {

int pure_dimension(const EmbeddedComplex& E) {
    const int n = E.complex.dim();
    for (const auto& f : E.complex.facets())
        if (simplex_dim(f) != n)
            throw std::invalid_argument("phi: complex is not pure");
    if (n < 2) throw std::invalid_argument("phi: facet dimension must be >= 2");
    return n;
}

}  // namespace

double phi(const EmbeddedComplex& E, const LinearFunctional& F, VertexId v,
           const GeometryOptions& opts) {
    const int n = pure_dimension(E);
    if (F.max_dim() < n)
        throw std::invalid_argument("phi: functional coefficient range too small");
    if (!E.complex.has_vertex(v)) throw std::invalid_argument("phi: not a vertex");
    const double P = static_cast<double>(p_constant(F, n));

    double total = 0.0;
    for (int i = 0; i <= n - 2; ++i) {
        const double bi = static_cast<double>(F.b(i));
        double level = 0.0;
        for (const auto& eta : E.complex.faces(i)) {
            if (!std::binary_search(eta.begin(), eta.end(), v)) continue;
            double angles = 0.0;
            for (const auto& sigma : E.complex.facets())
                if (std::includes(sigma.begin(), sigma.end(), eta.begin(), eta.end()))
                    angles += solid_angle(E, eta, sigma, opts).value;
            const double signed_part = (i % 2 == 0) ? P * angles : -P * angles;
            level += bi + signed_part;
        }
        total += level / static_cast<double>(i + 1);
    }
    return total;
}

double verify_geometric_ld(const EmbeddedComplex& E, const LinearFunctional& F,
                           const GeometryOptions& opts) {
    const int n = pure_dimension(E);
    if (!is_pseudomanifold(E.complex, n))
        throw std::invalid_argument("verify_geometric_ld: not a pseudomanifold");
    double phi_sum = 0.0;
    for (VertexId v : E.complex.vertices()) phi_sum += phi(E, F, v, opts);
    const FVector fv = E.complex.f_vector();
    double target = 0.0;
    for (int i = 0; i <= n; ++i)
        target += static_cast<double>(F.b(i)) * static_cast<double>(fv.f(i));
    return phi_sum - target;
}

EmbeddedComplex embed_t_complex(int p, int u, int n, int m) {
    if (p < 1 || u < 0 || u > p)
        throw std::invalid_argument("embed_t_complex: need 0 <= u <= p");
    if (n < 4 || m < 4 || n == m)
        throw std::invalid_argument("embed_t_complex: need n, m >= 4 and n != m");
    const TFamilySpec spec{p - u, u, n, m};
    const Complex T = t_complex(spec);
    const auto blocks = t_copy_blocks(spec);
    std::map<VertexId, std::vector<double>> coords;
    for (int j = 0; j < static_cast<int>(blocks.size()); ++j) {
        const int c = static_cast<int>(blocks[j].size());
        for (int k = 0; k < c; ++k) {
            std::vector<double> x(2 * p, 0.0);
            x[2 * j] = std::cos(2.0 * kPi * k / c);
            x[2 * j + 1] = std::sin(2.0 * kPi * k / c);
            coords[blocks[j][k]] = std::move(x);
        }
    }
    return make_embedded(T, coords);
}

namespace {

double vertex_distance(const EmbeddedComplex& E, VertexId a, VertexId b) {
    return (E.coords.at(a) - E.coords.at(b)).norm();
}

std::string rounded(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(9);
    os << x;
    return os.str();
}

// Center-preserving simplicial isometry search between two stars.
bool stars_isometric(const EmbeddedComplex& E, VertexId v, VertexId w, double tol) {
    const Complex sv = E.complex.star(v);
    const Complex sw = E.complex.star(w);
    if (sv.vertices().size() != sw.vertices().size()) return false;
    if (!(sv.f_vector() == sw.f_vector())) return false;

    std::vector<VertexId> lv, lw;
    for (VertexId x : sv.vertices())
        if (x != v) lv.push_back(x);
    for (VertexId x : sw.vertices())
        if (x != w) lw.push_back(x);
    const int k = static_cast<int>(lv.size());

    std::vector<int> map(k, -1);
    std::vector<char> used(k, 0);

    std::function<bool(int)> dfs = [&](int depth) -> bool {
        if (depth == k) {
            // Face structure must be preserved.
            std::map<VertexId, VertexId> vm{{v, w}};
            for (int a = 0; a < k; ++a) vm[lv[a]] = lw[map[a]];
            std::vector<Simplex> mapped;
            for (const auto& f : sv.facets()) {
                Simplex g;
                for (VertexId x : f) g.push_back(vm.at(x));
                std::sort(g.begin(), g.end());
                mapped.push_back(std::move(g));
            }
            std::sort(mapped.begin(), mapped.end());
            std::vector<Simplex> target(sw.facets());
            std::sort(target.begin(), target.end());
            return mapped == target;
        }
        for (int cand = 0; cand < k; ++cand) {
            if (used[cand]) continue;
            if (std::abs(vertex_distance(E, v, lv[depth]) -
                         vertex_distance(E, w, lw[cand])) > tol)
                continue;
            bool ok = true;
            for (int prev = 0; prev < depth; ++prev)
                if (std::abs(vertex_distance(E, lv[depth], lv[prev]) -
                             vertex_distance(E, lw[cand], lw[map[prev]])) > tol) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map[depth] = cand;
            used[cand] = 1;
            if (dfs(depth + 1)) return true;
            used[cand] = 0;
            map[depth] = -1;
        }
        return false;
    };
    return dfs(0);
}

std::string star_signature(const EmbeddedComplex& E, VertexId v) {
    const Complex st = E.complex.star(v);
    std::vector<VertexId> verts = st.vertices();
    std::vector<std::string> center, pairs;
    for (VertexId x : verts)
        if (x != v) center.push_back(rounded(vertex_distance(E, v, x)));
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b)
            pairs.push_back(rounded(vertex_distance(E, verts[a], verts[b])));
    std::sort(center.begin(), center.end());
    std::sort(pairs.begin(), pairs.end());
    std::string sig = canonical_key(st) + "#";
    for (const auto& s : center) sig += s + ",";
    sig += "#";
    for (const auto& s : pairs) sig += s + ",";
    return sig;
}

}  // namespace

std::vector<StarIsometryClass> star_isometry_classes(const EmbeddedComplex& E,
                                                     double tol) {
    std::vector<StarIsometryClass> classes;
    for (VertexId v : E.complex.vertices()) {
        const std::string sig = star_signature(E, v);
        int found = -1;
        for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
            if (classes[c].signature != sig) continue;
            if (stars_isometric(E, classes[c].representative, v, tol)) {
                found = c;
                break;
            }
        }
        if (found >= 0) {
            classes[found].members.push_back(v);
        } else {
            classes.push_back({v, {v}, sig});
        }
    }
    return classes;
}

GeometricDemoResult geometric_ld_demo(int p, int n, int m,
                                      const LinearFunctional& F) {
    if (p < 2) throw std::invalid_argument("geometric_ld_demo: p must be >= 2");
    if (n < 4 || m < 4 || n == m)
        throw std::invalid_argument("geometric_ld_demo: need n, m >= 4 and n != m");

    GeometricDemoResult result;
    std::vector<EmbeddedComplex> members;
    for (int u = 0; u <= p; ++u) members.push_back(embed_t_complex(p, u, n, m));
    for (const auto& E : members)
        result.per_member_classes.push_back(star_isometry_classes(E));

    // Cross-member unknowns are identified by the isomorphism type of the
    // link, as in the combinatorial argument.
    struct LinkClass {
        Complex representative;
        FVector fingerprint;
    };
    std::vector<LinkClass> link_classes;
    std::vector<std::vector<int>> member_class_of;  // per member, per star class
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        std::vector<int> ids;
        for (const auto& sc : result.per_member_classes[mi]) {
            const Complex lk = members[mi].complex.link(sc.representative);
            const FVector fp = lk.f_vector();
            int found = -1;
            for (int c = 0; c < static_cast<int>(link_classes.size()); ++c)
                if (link_classes[c].fingerprint == fp &&
                    are_isomorphic(link_classes[c].representative, lk)) {
                    found = c;
                    break;
                }
            if (found < 0) {
                found = static_cast<int>(link_classes.size());
                link_classes.push_back({lk, fp});
            }
            ids.push_back(found);
        }
        member_class_of.push_back(std::move(ids));
    }

    std::vector<std::string> keys;
    for (const auto& c : link_classes) keys.push_back(canonical_key(c.representative));
    std::vector<int> order(link_classes.size());
    for (int k = 0; k < static_cast<int>(order.size()); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return keys[x] < keys[y]; });
    std::vector<int> rank(link_classes.size());
    for (int k = 0; k < static_cast<int>(order.size()); ++k) rank[order[k]] = k;

    for (int k : order) {
        result.system.table.class_keys.push_back(keys[k]);
        result.system.table.representatives.push_back(link_classes[k].representative);
    }
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        std::vector<long long> counts(link_classes.size(), 0);
        for (std::size_t sc = 0; sc < member_class_of[mi].size(); ++sc)
            counts[rank[member_class_of[mi][sc]]] += static_cast<long long>(
                result.per_member_classes[mi][sc].members.size());
        result.system.table.counts.push_back(std::move(counts));
        result.system.rhs.push_back(F.evaluate(members[mi].complex));
    }
    result.verdict = solve(result.system);
    return result;
}

EmbeddedComplex lift_stellar_subdivide(const EmbeddedComplex& E, const Simplex& face,
                                       const GeometryOptions& opts) {
    Simplex f(face);
    std::sort(f.begin(), f.end());
    const Complex K2 = stellar_subdivide(E.complex, f);
    const VertexId w = E.complex.vertices().back() + 1;
    std::map<VertexId, std::vector<double>> coords;
    for (const auto& [v, x] : E.coords) {
        std::vector<double> xv(x.data(), x.data() + x.size());
        coords[v] = std::move(xv);
    }
    Eigen::VectorXd bary = Eigen::VectorXd::Zero(E.ambient_dim);
    for (VertexId v : f) bary += E.coords.at(v);
    bary /= static_cast<double>(f.size());
    coords[w] = std::vector<double>(bary.data(), bary.data() + bary.size());
    return make_embedded(K2, coords, opts);
}

std::vector<SubdivisionReportRow> subdivision_invariance_report(
    const EmbeddedComplex& E, const LinearFunctional& F, const Simplex& face,
    const GeometryOptions& opts) {
    const EmbeddedComplex after = lift_stellar_subdivide(E, face, opts);
    std::vector<SubdivisionReportRow> rows;
    for (VertexId v : E.complex.vertices())
        rows.push_back({v, phi(E, F, v, opts), phi(after, F, v, opts)});
    return rows;
}

}  // namespace locdet
