#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "locdet/constructions.hpp"
#include "locdet/geometry.hpp"

using namespace locdet;

namespace {

EmbeddedComplex octahedron() {
    const Complex K = join(join(zero_sphere(), zero_sphere()), zero_sphere());
    std::map<VertexId, std::vector<double>> coords;
    for (VertexId v = 0; v < 6; ++v) {
        std::vector<double> x(3, 0.0);
        x[v / 2] = (v % 2 == 0) ? 1.0 : -1.0;
        coords[v] = x;
    }
    return make_embedded(K, coords);
}

// Independent check for the trihedral vertex angle: the van Oosterom -
// Strackee formula for the solid angle subtended by a triangle.
double vos_vertex_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                        const Eigen::Vector3d& c) {
    const double num = std::abs(a.dot(b.cross(c)));
    const double den = a.norm() * b.norm() * c.norm() + a.dot(b) * c.norm() +
                       a.dot(c) * b.norm() + b.dot(c) * a.norm();
    double omega = 2.0 * std::atan2(num, den);
    if (omega < 0) omega += 2.0 * M_PI;
    return omega / (4.0 * M_PI);
}

}  // namespace

TEST_CASE("make_embedded validation") {
    const Complex seg = Complex::from_facets({{0, 1}});
    CHECK_THROWS_AS(make_embedded(seg, {{0, {0.0}}, {1, {0.0}}}),
                    std::invalid_argument);  // degenerate facet
    CHECK_THROWS_AS(make_embedded(seg, {{0, {0.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_embedded(seg, {{0, {0.0}}, {1, {1.0, 0.0}}}),
                    std::invalid_argument);  // mixed dimensions
    const EmbeddedComplex E = make_embedded(seg, {{0, {0.0}}, {1, {2.0}}});
    CHECK(E.ambient_dim == 1);
}

TEST_CASE("planar angles") {
    // Right triangle: angle 90 degrees at vertex 0, 45 at the others.
    const Complex tri = Complex::from_facets({{0, 1, 2}});
    const EmbeddedComplex E = make_embedded(
        tri, {{0, {0.0, 0.0}}, {1, {1.0, 0.0}}, {2, {0.0, 1.0}}});
    const SolidAngle a0 = solid_angle(E, {0}, {0, 1, 2});
    CHECK(a0.exact);
    CHECK(a0.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(solid_angle(E, {1}, {0, 1, 2}).value ==
          doctest::Approx(0.125).epsilon(1e-12));
    CHECK(solid_angle(E, {2}, {0, 1, 2}).value ==
          doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("regular tetrahedron angles") {
    const Complex K = Complex::from_facets({{0, 1, 2, 3}});
    const EmbeddedComplex E =
        make_embedded(K, {{0, {1.0, 1.0, 1.0}},
                          {1, {1.0, -1.0, -1.0}},
                          {2, {-1.0, 1.0, -1.0}},
                          {3, {-1.0, -1.0, 1.0}}});
    const SolidAngle vert = solid_angle(E, {0}, {0, 1, 2, 3});
    CHECK(vert.exact);
    // Vertex angle: (3 arccos(1/3) - pi) / (4 pi).
    const double expect_v = (3.0 * std::acos(1.0 / 3.0) - M_PI) / (4.0 * M_PI);
    CHECK(vert.value == doctest::Approx(expect_v).epsilon(1e-12));

    const SolidAngle edge = solid_angle(E, {0, 1}, {0, 1, 2, 3});
    CHECK(edge.exact);
    // Dihedral angle arccos(1/3) over 2 pi.
    CHECK(edge.value == doctest::Approx(std::acos(1.0 / 3.0) / (2.0 * M_PI))
                            .epsilon(1e-12));
}

TEST_CASE("tetrahedron vertex angles agree with the atan2 formula") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int done = 0;
    while (done < 25) {
        Eigen::Matrix<double, 4, 3> P;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 3; ++c) P(r, c) = u(rng);
        Eigen::Matrix3d M;
        for (int r = 0; r < 3; ++r) M.row(r) = P.row(r + 1) - P.row(0);
        if (std::abs(M.determinant()) < 1e-2) continue;

        const Complex K = Complex::from_facets({{0, 1, 2, 3}});
        std::map<VertexId, std::vector<double>> coords;
        for (int r = 0; r < 4; ++r)
            coords[r] = {P(r, 0), P(r, 1), P(r, 2)};
        const EmbeddedComplex E = make_embedded(K, coords);

        const double expect = vos_vertex_angle(M.row(0), M.row(1), M.row(2));
        const SolidAngle got = solid_angle(E, {0}, {0, 1, 2, 3});
        CHECK(got.exact);
        CHECK(got.value == doctest::Approx(expect).epsilon(1e-9));
        ++done;
    }
}

TEST_CASE("monte carlo angle of an orthant corner") {
    // 4-simplex with an orthogonal corner at the origin: angle 2^-4.
    const Complex K = Complex::from_facets({{0, 1, 2, 3, 4}});
    std::map<VertexId, std::vector<double>> coords;
    coords[0] = {0, 0, 0, 0};
    for (int k = 1; k <= 4; ++k) {
        std::vector<double> x(4, 0.0);
        x[k - 1] = 1.0;
        coords[k] = x;
    }
    const EmbeddedComplex E = make_embedded(K, coords);
    GeometryOptions opts;
    opts.mc_samples = 400000;
    const SolidAngle a = solid_angle(E, {0}, {0, 1, 2, 3, 4}, opts);
    CHECK_FALSE(a.exact);
    CHECK(a.samples == 400000);
    CHECK(a.std_error > 0.0);
    CHECK(std::abs(a.value - 0.0625) < 6.0 * a.std_error);
    // Seeded sampling is reproducible.
    CHECK(solid_angle(E, {0}, {0, 1, 2, 3, 4}, opts).value == a.value);
}

TEST_CASE("gram relation") {
    const EmbeddedComplex oct = octahedron();
    for (const Simplex& f : oct.complex.facets())
        CHECK(gram_check(oct, f) == doctest::Approx(0.5).epsilon(1e-9));

    const EmbeddedComplex T = embed_t_complex(2, 1, 4, 5);
    CHECK(gram_check(T, T.complex.facets()[0]) ==
          doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("p_constant") {
    CHECK(p_constant(euler_functional(2), 2) == -1);
    CHECK(p_constant(charney_davis_functional(3), 3) == Rational(3, 16));
    CHECK(p_constant(euler_functional(3), 3) == -1);
}

TEST_CASE("phi on the octahedron") {
    const EmbeddedComplex oct = octahedron();
    const LinearFunctional chi = euler_functional(2);
    double total = 0.0;
    for (VertexId v : oct.complex.vertices()) {
        const double pv = phi(oct, chi, v);
        CHECK(pv == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        total += pv;
    }
    CHECK(total == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(verify_geometric_ld(oct, chi) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("geometric identity on embedded T members") {
    const LinearFunctional cd = charney_davis_functional(3);
    for (int u = 0; u <= 2; ++u) {
        const EmbeddedComplex E = embed_t_complex(2, u, 4, 5);
        CHECK(std::abs(verify_geometric_ld(E, cd)) < 1e-8);
    }
    const EmbeddedComplex E = embed_t_complex(2, 1, 4, 5);
    CHECK(std::abs(verify_geometric_ld(E, euler_functional(3))) < 1e-8);
}

TEST_CASE("embed_t_complex structure") {
    const EmbeddedComplex E = embed_t_complex(2, 1, 4, 5);
    CHECK(E.complex == t_complex({1, 1, 4, 5}));
    CHECK(E.ambient_dim == 4);
    for (const auto& [v, x] : E.coords)
        CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("star isometry classes") {
    CHECK(star_isometry_classes(octahedron()).size() == 1);
    CHECK(star_isometry_classes(embed_t_complex(2, 0, 4, 5)).size() == 1);
    CHECK(star_isometry_classes(embed_t_complex(2, 2, 4, 5)).size() == 1);

    const auto mixed = star_isometry_classes(embed_t_complex(2, 1, 4, 5));
    REQUIRE(mixed.size() == 2);
    std::size_t total = 0;
    for (const auto& cls : mixed) total += cls.members.size();
    CHECK(total == 9);
}

TEST_CASE("geometric demo reproduces the obstruction") {
    const GeometricDemoResult res =
        geometric_ld_demo(2, 4, 5, charney_davis_functional(3));
    REQUIRE(res.per_member_classes.size() == 3);
    CHECK(res.per_member_classes[0].size() == 1);
    CHECK(res.per_member_classes[1].size() == 2);
    CHECK(res.per_member_classes[2].size() == 1);
    CHECK(res.system.table.class_keys.size() == 2);

    CHECK_FALSE(res.verdict.consistent);
    REQUIRE(res.verdict.certificate.size() == 3);
    CHECK(res.verdict.certificate[0] == Rational(25, 16));
    CHECK(res.verdict.certificate[1] == Rational(-5, 2));
    CHECK(res.verdict.certificate[2] == 1);
    CHECK(res.verdict.pairing == Rational(1, 16));
}

TEST_CASE("barycentric stellar subdivision keeps phi at old vertices") {
    const EmbeddedComplex oct = octahedron();
    const LinearFunctional chi = euler_functional(2);
    const Simplex face = oct.complex.facets()[0];
    const auto rows = subdivision_invariance_report(oct, chi, face);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows)
        CHECK(row.phi_before == doctest::Approx(row.phi_after).epsilon(1e-9));

    // The refined complex still satisfies the global identity.
    const EmbeddedComplex fine = lift_stellar_subdivide(oct, face);
    CHECK(fine.complex.f_vector().f(0) == 7);
    CHECK(std::abs(verify_geometric_ld(fine, chi)) < 1e-9);
}
