#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "freemagma/hopf.hpp"
#include "freemagma/poly.hpp"

namespace freemagma {

namespace detail {

inline Poly derive_mono(const Monomial& t, int var, std::map<Monomial, Poly>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    Poly out;
    if (t.is_leaf()) {
        if (t.leaf_label().index() == var) out = Poly::one();
    } else {
        out = derive_mono(t.left(), var, memo) * Poly(t.right()) +
              Poly(t.left()) * derive_mono(t.right(), var, memo);
    }
    memo.emplace(t, out);
    return out;
}

}  // namespace detail

// The derivation D_i with D_i(x_i) = 1, D_i(x_j) = 0 for j != i.
inline Poly derive(const Poly& f, Variable i) {
    std::map<Monomial, Poly> memo;
    Poly out;
    for (const auto& [b, c] : f.terms())
        if (!b.is_one()) out += detail::derive_mono(b.mono(), i.index(), memo) * c;
    return out;
}

// L_i^j(f): j-fold left multiplication by x_i.
inline Poly lmul(const Poly& f, Variable i, int j = 1) {
    if (j < 0) throw std::invalid_argument("lmul: negative power");
    Poly out = f;
    Poly xi = Poly::variable(i);
    for (int k = 0; k < j; ++k) out = xi * out;
    return out;
}

// x^j = L^j(1), the left-nested chain monomial (degree j >= 1).
inline Monomial chain_power(Variable i, int j) {
    if (j < 1) throw std::invalid_argument("chain_power needs j >= 1");
    Monomial t = Monomial::leaf(i);
    for (int k = 1; k < j; ++k) t = graft(Monomial::leaf(i), t);
    return t;
}

// The Taylor expansion f = sum_j x^j . a_j with all a_j killed by D.
class TaylorExpansion1 {
public:
    TaylorExpansion1(Variable var, std::map<int, Poly> coeffs)
        : var_(var), coeffs_(std::move(coeffs)) {}

    Variable variable() const noexcept { return var_; }
    const std::map<int, Poly>& coeffs() const noexcept { return coeffs_; }

    Poly coeff(int j) const {
        auto it = coeffs_.find(j);
        return it == coeffs_.end() ? Poly::zero() : it->second;
    }

    Poly reconstruct() const {
        Poly out;
        for (const auto& [j, a] : coeffs_) out += lmul(a, var_, j);
        return out;
    }

private:
    Variable var_;
    std::map<int, Poly> coeffs_;
};

// Top-down peeling: for n maximal with D^n f != 0, a_n = D^n f / n!, then
// recurse on f - x^n . a_n.
inline TaylorExpansion1 taylor1(const Poly& f, Variable i) {
    std::map<int, Poly> coeffs;
    Poly rest = f;
    while (!rest.is_zero()) {
        std::vector<Poly> ders{rest};
        while (!ders.back().is_zero()) ders.push_back(derive(ders.back(), i));
        const int n = static_cast<int>(ders.size()) - 2;
        if (n == 0) {
            coeffs.emplace(0, std::move(rest));
            break;
        }
        Poly a = ders[static_cast<std::size_t>(n)] * Rat(BigInt(1), factorial(n));
        rest -= lmul(a, i, n);
        coeffs.emplace(n, std::move(a));
    }
    return TaylorExpansion1(i, std::move(coeffs));
}

// int f dx = sum_{k=1}^{n+1} (-1)^{k-1}/k! L^k(D^{k-1} f), per homogeneous
// component; the unique antiderivative without constant term, i.e. with
// a_0 = 0.
inline Poly integral(const Poly& f, Variable i) {
    Poly out;
    for (int n = 0; n <= f.degree(); ++n) {
        Poly comp = f.component(n);
        if (comp.is_zero()) continue;
        Poly der = comp;  // D^{k-1} comp
        for (int k = 1; k <= n + 1; ++k) {
            Rat c = Rat(BigInt(k % 2 == 1 ? 1 : -1), factorial(k));
            out += lmul(der, i, k) * c;
            if (k <= n) der = derive(der, i);
        }
    }
    return out;
}

// The projector onto the constants of D_i along im L_i:
// Phi_i = sum_k (-1)^k/k! L_i^k D_i^k, the degree-0 Taylor coefficient.
inline Poly phi1(const Poly& f, Variable i) {
    Poly out;
    Poly der = f;
    for (int k = 0; !der.is_zero(); ++k) {
        out += lmul(der, i, k) * Rat(BigInt(k % 2 == 0 ? 1 : -1), factorial(k));
        der = derive(der, i);
    }
    return out;
}

// Total Taylor expansion over an ordered list of variables; coefficients are
// constants for every listed derivation.
class TaylorExpansionTotal {
public:
    TaylorExpansionTotal(std::vector<Variable> order, std::map<std::vector<int>, Poly> coeffs)
        : order_(std::move(order)), coeffs_(std::move(coeffs)) {}

    const std::vector<Variable>& order() const noexcept { return order_; }
    const std::map<std::vector<int>, Poly>& coeffs() const noexcept { return coeffs_; }

    Poly coeff(const std::vector<int>& j) const {
        auto it = coeffs_.find(j);
        return it == coeffs_.end() ? Poly::zero() : it->second;
    }

    // x^j . a_j applies L_r^{j_r} first and L_1^{j_1} last.
    Poly reconstruct() const {
        Poly out;
        for (const auto& [j, a] : coeffs_) {
            Poly term = a;
            for (std::size_t i = order_.size(); i-- > 0;)
                term = lmul(term, order_[i], j[i]);
            out += term;
        }
        return out;
    }

private:
    std::vector<Variable> order_;
    std::map<std::vector<int>, Poly> coeffs_;
};

namespace detail {

inline void check_supported(const Poly& f, std::span<const Variable> order) {
    for (int idx : f.variable_indices()) {
        bool found = false;
        for (Variable v : order) found = found || v.index() == idx;
        if (!found)
            throw std::invalid_argument("polynomial uses a variable outside the expansion order");
    }
}

inline void taylor_total_rec(const Poly& f, std::span<const Variable> order,
                             std::vector<int>& prefix, std::map<std::vector<int>, Poly>& out) {
    if (f.is_zero()) return;
    if (order.empty()) {
        out.emplace(prefix, f);
        return;
    }
    TaylorExpansion1 t = taylor1(f, order.front());
    for (const auto& [j, a] : t.coeffs()) {
        prefix.push_back(j);
        taylor_total_rec(a, order.subspan(1), prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

inline TaylorExpansionTotal taylor_total(const Poly& f, std::vector<Variable> order) {
    detail::check_supported(f, order);
    std::map<std::vector<int>, Poly> coeffs;
    std::vector<int> prefix;
    detail::taylor_total_rec(f, order, prefix, coeffs);
    return TaylorExpansionTotal(std::move(order), std::move(coeffs));
}

// a_{(0,...,0)}: the projector onto the constants of all listed derivations.
inline Poly phi_total(const Poly& f, std::span<const Variable> order) {
    detail::check_supported(f, order);
    Poly out = f;
    for (Variable v : order) out = phi1(out, v);
    return out;
}

inline Poly phi_total(const Poly& f, std::initializer_list<Variable> order) {
    return phi_total(f, std::span<const Variable>(order.begin(), order.size()));
}

// Phi applied independently in both tensor slots; equals the projector onto
// the double Taylor coefficient a_{0,0} for one-variable tensors.
inline TensorPoly phi_tensor(const TensorPoly& t, Variable i = Variable(1)) {
    std::map<Basis, Poly> memo;
    auto phi_basis = [&memo, i](const Basis& b) -> const Poly& {
        auto it = memo.find(b);
        if (it != memo.end()) return it->second;
        Poly value = b.is_one() ? Poly::one() : phi1(Poly(b.mono()), i);
        return memo.emplace(b, std::move(value)).first->second;
    };
    for (const auto& [k, c] : t.terms()) {
        for (const Basis& b : {k.first, k.second})
            if (!b.is_one())
                for (Variable v : foliage(b.mono()))
                    if (v != i)
                        throw std::invalid_argument("phi_tensor expects a one-variable tensor");
    }
    TensorPoly out;
    for (const auto& [k, c] : t.terms())
        out += c * tensor(phi_basis(k.first), phi_basis(k.second));
    return out;
}

}  // namespace freemagma
