#ifndef LOCDET_CONSTRUCTIONS_HPP
#define LOCDET_CONSTRUCTIONS_HPP

#include "locdet/complex.hpp"
#include "locdet/rational.hpp"

namespace locdet {

/// Parameters of the T-family: s copies of the n-cycle joined with t copies
/// of the m-cycle.
struct TFamilySpec {
    int s = 0;
    int t = 0;
    int n = 4;
    int m = 5;
};

// The cycle with n vertices (n >= 3), labels 0..n-1.
Complex cycle_complex(int n);

// Two isolated vertices.
Complex zero_sphere();

// Boundary of the k-simplex (k >= 1).
Complex simplex_boundary(int k);

// S^0 * K.
Complex suspension(const Complex& K);

// Iterated join of s copies of C_n then t copies of C_m; s + t = 0 yields
// the empty complex.  Vertex labels come in consecutive blocks per cycle
// copy (see t_copy_blocks).
Complex t_complex(const TFamilySpec& spec);

// The vertex-label blocks of t_complex, one per cycle copy, in join order.
std::vector<std::vector<VertexId>> t_copy_blocks(const TFamilySpec& spec);

// Closed-form f_r(T_{s,t}); 0 outside range, 1 at r = -1.
Int t_fvector_closed_form(const TFamilySpec& spec, int r);

// Closed-form f_i(T_{s,0}) = sum_j C(s,j) C(j, 2j-i-1) n^j.
Int ts0_fvector(int s, int n, int i);

}  // namespace locdet

#endif
