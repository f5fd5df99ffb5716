#ifndef LOCDET_LD_SOLVER_HPP
#define LOCDET_LD_SOLVER_HPP

#include <string>
#include <vector>

#include "locdet/complex.hpp"
#include "locdet/functionals.hpp"
#include "locdet/rational.hpp"

namespace locdet {

/// Vertices of every family member classified by link isomorphism class.
/// counts[row][col] = number of vertices of family[row] whose link is in
/// class col; classes ordered lexicographically by canonical key.
struct LinkClassTable {
    std::vector<std::string> class_keys;
    std::vector<Complex> representatives;
    std::vector<std::vector<long long>> counts;
};

struct LDSystem {
    LinkClassTable table;
    std::vector<Rational> rhs;  // Lambda(K) per family member
};

/// Consistent carries one particular solution (h-value per class);
/// Inconsistent carries a left-nullspace certificate c with c^T N = 0 and
/// pairing = c . rhs != 0.  The certificate is scaled so its last nonzero
/// entry is +-1 with the pairing positive.
struct LDVerdict {
    bool consistent = false;
    std::vector<Rational> h_values;     // per class, when consistent
    std::vector<Rational> certificate;  // per family member, when inconsistent
    Rational pairing = 0;
};

LDSystem build_system(const std::vector<Complex>& family, const LinearFunctional& F);

// Exact Gaussian elimination; both outcomes are re-verified by direct
// multiplication before returning.
LDVerdict solve(const LDSystem& system);

// Exact consistency decision for N h = rhs with arbitrary N.
LDVerdict solve_rational_system(const std::vector<std::vector<Rational>>& N,
                                const std::vector<Rational>& rhs);

// [T_{p-u,u} for u = 0..p]; requires p >= 2, n,m >= 4, n != m.
std::vector<Complex> counterexample_family(int p, int n, int m);

// Charney-Davis over the counterexample family; always Inconsistent.
LDVerdict demo_charney_davis(int p = 2, int n = 4, int m = 5);

// Coefficient G_r of b_r in the eliminated linear combination; computed both
// as the direct quadruple sum and through the closed-form f-vectors, which
// must agree.  (m/n - 1)^p at r = -1, zero for 0 <= r <= 2p-1.
Rational g_r_coefficient(int p, int r, int n, int m);

// Coefficient of m^a/n^b in G_r, 0 <= b < a <= p, 0 <= r <= 2p-1; always 0.
Rational d_ab_coefficient(int p, int r, int a, int b);

struct IdentityReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string detail;  // counterexample on failure
    };
    std::vector<Item> items;
    bool all_pass() const;
};

// Exhaustive exact checks of the trinomial identity, the Vandermonde
// collapse, D_{a,b} = 0, and the G_r closed forms, for all p <= p_max.
IdentityReport identity_suite(int p_max);

}  // namespace locdet

#endif
