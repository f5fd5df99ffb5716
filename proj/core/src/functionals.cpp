#include "locdet/functionals.hpp"

#include <stdexcept>

namespace locdet {

LinearFunctional::LinearFunctional(std::vector<Rational> coeffs) : b_(std::move(coeffs)) {
    if (b_.empty())
        throw std::invalid_argument("LinearFunctional: b_{-1} must be present");
}

const Rational& LinearFunctional::b(int i) const {
    if (i < -1 || i > max_dim())
        throw std::out_of_range("LinearFunctional: coefficient index out of range");
    return b_[i + 1];
}

Rational LinearFunctional::evaluate(const Complex& K) const {
    if (K.dim() > max_dim())
        throw std::invalid_argument(
            "evaluate: complex dimension exceeds coefficient range");
    const FVector fv = K.f_vector();
    Rational total = 0;
    for (int i = -1; i <= K.dim(); ++i) total += b(i) * Rational(fv.f(i));
    return total;
}

LinearFunctional charney_davis_functional(int D) {
    if (D < 0) throw std::invalid_argument("charney_davis_functional: D must be >= 0");
    std::vector<Rational> b;
    for (int i = -1; i <= D; ++i) b.push_back(rational_pow(Rational(-1, 2), i + 1));
    return LinearFunctional(std::move(b));
}

LinearFunctional euler_functional(int D) {
    if (D < 0) throw std::invalid_argument("euler_functional: D must be >= 0");
    std::vector<Rational> b{0};
    for (int i = 0; i <= D; ++i) b.push_back(i % 2 == 0 ? 1 : -1);
    return LinearFunctional(std::move(b));
}

LocalFormula::LocalFormula(std::vector<Rational> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) throw std::invalid_argument("LocalFormula: a_{-1} must be present");
}

const Rational& LocalFormula::a(int i) const {
    if (i < -1 || i > max_dim())
        throw std::out_of_range("LocalFormula: coefficient index out of range");
    return a_[i + 1];
}

Rational LocalFormula::operator()(const Complex& M) const {
    if (M.dim() > max_dim())
        throw std::invalid_argument(
            "LocalFormula: complex dimension exceeds coefficient range");
    const FVector fv = M.f_vector();
    Rational total = 0;
    for (int i = -1; i <= M.dim(); ++i) total += a(i) * Rational(fv.f(i));
    return total;
}

LocalFormula local_formula_part2(const LinearFunctional& F) {
    if (F.b(-1) != 0)
        throw std::invalid_argument("local_formula_part2: requires b_{-1} = 0");
    std::vector<Rational> a;
    for (int i = -1; i <= F.max_dim() - 1; ++i)
        a.push_back(F.b(i + 1) / Rational(i + 2));
    return LocalFormula(std::move(a));
}

LocalFormula local_formula_part1(const LinearFunctional& F, const Rational& E) {
    if (E == 0) throw std::invalid_argument("local_formula_part1: requires E != 0");
    std::vector<Rational> a;
    for (int i = -1; i <= F.max_dim() - 1; ++i) {
        Rational ai = F.b(i + 1) / Rational(i + 2);
        Rational corr = F.b(-1) / (E * Rational(i + 2));
        ai += ((i + 1) % 2 == 0) ? corr : -corr;
        a.push_back(std::move(ai));
    }
    return LocalFormula(std::move(a));
}

Rational vertex_link_sum(const Complex& K, const LocalFormula& g) {
    Rational direct = 0;
    for (VertexId v : K.vertices()) direct += g(K.link(v));

    // Closed route: sum_i a_i (i+2) f_{i+1}(K).
    if (K.dim() - 1 > g.max_dim())
        throw std::invalid_argument("vertex_link_sum: formula index range exceeded");
    const FVector fv = K.f_vector();
    Rational closed = 0;
    for (int i = -1; i <= K.dim() - 1; ++i)
        closed += g.a(i) * Rational(i + 2) * Rational(fv.f(i + 1));

    if (direct != closed)
        throw std::logic_error("vertex_link_sum: link-sum identity violated");
    return direct;
}

std::vector<Rational> verify_local_formula(const LinearFunctional& F,
                                           const LocalFormula& g,
                                           const std::vector<Complex>& family) {
    std::vector<Rational> residuals;
    residuals.reserve(family.size());
    for (const auto& K : family)
        residuals.push_back(vertex_link_sum(K, g) - F.evaluate(K));
    return residuals;
}

}  // namespace locdet
