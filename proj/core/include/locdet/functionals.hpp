#ifndef LOCDET_FUNCTIONALS_HPP
#define LOCDET_FUNCTIONALS_HPP

#include <vector>

#include "locdet/complex.hpp"
#include "locdet/rational.hpp"

namespace locdet {

/// Lambda(K) = sum_{i=-1}^{dim K} b_i f_i(K).  Coefficients beyond max_dim
/// are undefined, not zero: evaluating on a complex of larger dimension is an
/// error.
class LinearFunctional {
public:
    // coeffs[k] = b_{k-1}; must be nonempty (b_{-1} always present).
    explicit LinearFunctional(std::vector<Rational> coeffs);

    int max_dim() const { return static_cast<int>(b_.size()) - 2; }
    const Rational& b(int i) const;  // -1 <= i <= max_dim

    Rational evaluate(const Complex& K) const;

private:
    std::vector<Rational> b_;
};

// b_i = (-1/2)^{i+1} for -1 <= i <= D.
LinearFunctional charney_davis_functional(int D);

// b_{-1} = 0, b_i = (-1)^i for 0 <= i <= D.
LinearFunctional euler_functional(int D);

/// g(M) = sum_{i=-1}^{dim M} a_i f_i(M), a candidate local formula on links.
class LocalFormula {
public:
    explicit LocalFormula(std::vector<Rational> coeffs);

    int max_dim() const { return static_cast<int>(a_.size()) - 2; }
    const Rational& a(int i) const;

    Rational operator()(const Complex& M) const;

private:
    std::vector<Rational> a_;
};

// a_i = b_{i+1}/(i+2); requires b_{-1} = 0.
LocalFormula local_formula_part2(const LinearFunctional& F);

// a_i = b_{i+1}/(i+2) + (-1)^{i+1} b_{-1}/(E (i+2)); requires E != 0.
LocalFormula local_formula_part1(const LinearFunctional& F, const Rational& E);

// Sum over vertices of g(link); computed both directly and as
// sum_i a_i (i+2) f_{i+1}(K), which must agree.
Rational vertex_link_sum(const Complex& K, const LocalFormula& g);

// Residual vertex_link_sum(K, g) - evaluate(F, K) per family member.
std::vector<Rational> verify_local_formula(const LinearFunctional& F,
                                           const LocalFormula& g,
                                           const std::vector<Complex>& family);

}  // namespace locdet

#endif
