#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "freemagma/poly.hpp"
#include "freemagma/series.hpp"

namespace freemagma {

// Coefficients a(t) of the non-associative exponential
// exp(x) = 1 + sum_{t in M(x)} a(t) t, the unique series with constant term 1
// satisfying exp(x)exp(x) = exp(2x) and exp'(x) = exp(x). They obey
// a(t1 t2) = a(t1) a(t2) / (2^n - 2), n = deg t, with a(x) = 1.
class ExpTable {
public:
    explicit ExpTable(int cap = 8) : cap_(cap) {
        if (cap < 1) throw std::invalid_argument("exp table needs cap >= 1");
        const Variable z(1);
        table_.emplace(Monomial::leaf(z), Rat(1));
        for (int n = 2; n <= cap; ++n) {
            Rat denom = Rat(BigInt(1) << n) - 2;
            for (const Monomial& t : enumerate(n, {z}))
                table_.emplace(t, table_.at(t.left()) * table_.at(t.right()) / denom);
        }
    }

    int cap() const noexcept { return cap_; }
    const CoeffTable& table() const noexcept { return table_; }

    // a(t) for any labeled tree of degree <= cap, by its underlying shape.
    const Rat& coeff(const Monomial& t) const {
        if (t.degree() > cap_) throw std::out_of_range("exp coefficient beyond cap");
        return table_.at(underlying(t));
    }

    // exp(x_v) as a truncated series, including the constant term 1.
    Series series(Variable v, int cap) const {
        if (cap > cap_) throw std::out_of_range("series cap exceeds table cap");
        Series out(cap);
        out.set_component(0, Poly::one());
        for (const auto& [t, a] : table_)
            if (t.degree() <= cap) {
                Poly comp = out.component(t.degree());
                comp.add_term(Basis(relabel(t, v)), a);
                out.set_component(t.degree(), std::move(comp));
            }
        return out;
    }

private:
    int cap_;
    CoeffTable table_;
};

inline ExpTable exp_coeffs(int cap = 8) { return ExpTable(cap); }

// Coefficients b(t) of log(1+x), the composition inverse of exp(x) - 1,
// obtained degree by degree: composing exp - 1 with the partial log series
// must reproduce the identity series x at every degree.
inline CoeffTable log_coeffs(int cap = 8) {
    const Variable z(1);
    const ExpTable exp(cap);
    CoeffTable log;
    log.emplace(Monomial::leaf(z), Rat(1));
    for (int n = 2; n <= cap; ++n) {
        Series partial(n);
        for (const auto& [t, b] : log)
            if (t.degree() < n) {
                Poly comp = partial.component(t.degree());
                comp.add_term(Basis(t), b);
                partial.set_component(t.degree(), std::move(comp));
            }
        Poly deficit = compose(exp.table(), partial).component(n);
        for (const auto& [basis, c] : deficit.terms()) log.emplace(basis.mono(), -c);
    }
    return log;
}

// The coefficient of tau in exp(x)exp(y): a(tau) on pure trees, a(tau1)a(tau2)
// when tau splits into a pure-x left factor and a pure-y right factor, else 0.
inline Rat d_coeff(const Monomial& tau, const ExpTable& exp) {
    auto pure = [](const Monomial& t, int var) {
        for (Variable v : foliage(t))
            if (v.index() != var) return false;
        return true;
    };
    if (pure(tau, 1) || pure(tau, 2)) return exp.coeff(tau);
    if (!tau.is_leaf() && pure(tau.left(), 1) && pure(tau.right(), 2))
        return exp.coeff(tau.left()) * exp.coeff(tau.right());
    return Rat(0);
}

// The unique continuous involution * of K{{x,y}} with x* = y, y* = x. Like
// every ring involution it reverses products, (fg)* = g* f*; this is what
// makes (exp(x)exp(y))* = exp(x)exp(y) and hence H* = H. On a tree it swaps
// the labels and mirrors the shape.
inline Monomial star(const Monomial& t) {
    if (t.is_leaf()) {
        int i = t.leaf_label().index();
        return Monomial::leaf(Variable(i == 1 ? 2 : i == 2 ? 1 : i));
    }
    return graft(star(t.right()), star(t.left()));
}

inline Poly star(const Poly& f) {
    Poly out;
    for (const auto& [b, c] : f.terms()) out.add_term(b.is_one() ? b : Basis(star(b.mono())), c);
    return out;
}

// Coefficients c(tau) of the non-associative Hausdorff series
// H(x,y) = log(exp(x)exp(y)) = sum c(tau) tau, via the mutual recursion
//   c(tau)   = d(tau) - sum_{k=2}^{deg tau} c_k(tau)
//   c_k(tau) = c(tau)                                   for k = 1
//            = a(|tau|)                                 for k = deg tau
//            = 1/(2^k-2) sum_{l} c_l(tau1) c_{k-l}(tau2) for 2 <= k < deg tau.
// Tables are filled eagerly by increasing degree, so lookups are const and
// safe to share across threads.
class HausdorffTable {
public:
    explicit HausdorffTable(int cap = 7) : cap_(cap), exp_(cap) {
        const Variable x(1), y(2);
        c_.emplace(Monomial::leaf(x), Rat(1));
        c_.emplace(Monomial::leaf(y), Rat(1));
        for (int n = 2; n <= cap; ++n)
            for (const Monomial& tau : enumerate(n, {x, y})) {
                Rat total = d_coeff(tau, exp_);
                for (int k = 2; k <= n; ++k) total -= c_k(tau, k);
                c_.emplace(tau, std::move(total));
            }
    }

    int cap() const noexcept { return cap_; }
    const ExpTable& exp_table() const noexcept { return exp_; }

    const Rat& coeff(const Monomial& tau) const {
        if (tau.degree() > cap_) throw std::out_of_range("Hausdorff coefficient beyond cap");
        return c_.at(tau);
    }

    Rat d_value(const Monomial& tau) const { return d_coeff(tau, exp_); }

    // c_k(tau); zero for k outside 1..deg tau.
    Rat c_k(const Monomial& tau, int k) const {
        const int n = tau.degree();
        if (k < 1 || k > n) return Rat(0);
        if (k == 1) {
            auto it = c_.find(tau);
            if (it == c_.end()) throw std::logic_error("c(tau) not yet available");
            return it->second;
        }
        if (k == n) return exp_.coeff(underlying(tau));
        auto memo = ck_.find({tau, k});
        if (memo != ck_.end()) return memo->second;
        Rat sum(0);
        for (int l = 1; l <= k - 1; ++l) sum += c_k(tau.left(), l) * c_k(tau.right(), k - l);
        sum /= Rat(BigInt(1) << k) - 2;
        ck_.emplace(std::pair{tau, k}, sum);
        return sum;
    }

    // H_n, the homogeneous degree-n component of H(x,y).
    Poly component(int n) const {
        if (n < 1 || n > cap_) throw std::out_of_range("Hausdorff component beyond cap");
        Poly out;
        for (const Monomial& tau : enumerate(n, {Variable(1), Variable(2)}))
            out.add_term(Basis(tau), c_.at(tau));
        return out;
    }

private:
    int cap_;
    ExpTable exp_;
    std::map<Monomial, Rat> c_;
    mutable std::map<std::pair<Monomial, int>, Rat> ck_;
};

inline Rat hausdorff_coeff(const Monomial& tau, const HausdorffTable& table) {
    return table.coeff(tau);
}

inline Poly hausdorff_component(int n, int cap = 7) { return HausdorffTable(cap).component(n); }

// H(x,y) = log(exp(x)exp(y)) computed by series composition; the independent
// route against the coefficient recursion.
inline Series hausdorff_by_composition(int cap = 7) {
    ExpTable exp(cap);
    Series z = exp.series(Variable(1), cap) * exp.series(Variable(2), cap);
    z.set_component(0, Poly::zero());  // Z(x,y) = exp(x)exp(y) - 1
    return compose(log_coeffs(cap), z);
}

}  // namespace freemagma
