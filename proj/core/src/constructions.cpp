#include "locdet/constructions.hpp"

#include <stdexcept>

namespace locdet {

Complex cycle_complex(int n) {
    if (n < 3) throw std::invalid_argument("cycle_complex: n must be >= 3");
    std::vector<std::vector<VertexId>> edges;
    for (int k = 0; k < n; ++k) edges.push_back({k, (k + 1) % n});
    return Complex::from_facets(edges);
}

Complex zero_sphere() { return Complex::from_facets({{0}, {1}}); }

Complex simplex_boundary(int k) {
    if (k < 1) throw std::invalid_argument("simplex_boundary: k must be >= 1");
    std::vector<std::vector<VertexId>> facets;
    for (int drop = 0; drop <= k; ++drop) {
        std::vector<VertexId> f;
        for (int v = 0; v <= k; ++v)
            if (v != drop) f.push_back(v);
        facets.push_back(std::move(f));
    }
    return Complex::from_facets(facets);
}

Complex suspension(const Complex& K) { return join(zero_sphere(), K); }

Complex t_complex(const TFamilySpec& spec) {
    if (spec.s < 0 || spec.t < 0) throw std::invalid_argument("t_complex: negative copy count");
    if (spec.s > 0 && spec.n < 3) throw std::invalid_argument("t_complex: n must be >= 3");
    if (spec.t > 0 && spec.m < 3) throw std::invalid_argument("t_complex: m must be >= 3");
    Complex T;
    for (int c = 0; c < spec.s; ++c) T = join(T, cycle_complex(spec.n));
    for (int c = 0; c < spec.t; ++c) T = join(T, cycle_complex(spec.m));
    return T;
}

std::vector<std::vector<VertexId>> t_copy_blocks(const TFamilySpec& spec) {
    std::vector<std::vector<VertexId>> blocks;
    VertexId next = 0;
    for (int c = 0; c < spec.s; ++c) {
        std::vector<VertexId> block;
        for (int k = 0; k < spec.n; ++k) block.push_back(next++);
        blocks.push_back(std::move(block));
    }
    for (int c = 0; c < spec.t; ++c) {
        std::vector<VertexId> block;
        for (int k = 0; k < spec.m; ++k) block.push_back(next++);
        blocks.push_back(std::move(block));
    }
    return blocks;
}

Int ts0_fvector(int s, int n, int i) {
    if (s < 0 || n < 3) throw std::invalid_argument("ts0_fvector: bad parameters");
    Int total = 0;
    Int npow = 1;
    for (int j = 0; j <= s; ++j) {
        total += binomial(s, j) * binomial(j, 2LL * j - i - 1) * npow;
        npow *= n;
    }
    return total;
}

Int t_fvector_closed_form(const TFamilySpec& spec, int r) {
    Int total = 0;
    for (int i = -1; i <= r; ++i) {
        Int npow = 1;
        for (int j = 0; j <= spec.s; ++j) {
            const Int cj = binomial(spec.s, j) * binomial(j, 2LL * j + i - r);
            if (cj != 0) {
                Int mpow = 1;
                for (int k = 0; k <= spec.t; ++k) {
                    const Int ck = binomial(spec.t, k) * binomial(k, 2LL * k - i - 1);
                    if (ck != 0) total += cj * ck * npow * mpow;
                    mpow *= spec.m;
                }
            }
            npow *= spec.n;
        }
    }
    return total;
}

}  // namespace locdet
