#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freemagma/poly.hpp"

namespace freemagma {

// An element of K{X} (x) K{X}. Slots are ordered; multiplication is
// componentwise grafting, (a (x) b)(c (x) d) = ac (x) bd.
class TensorPoly {
public:
    using Key = std::pair<Basis, Basis>;
    using Terms = std::map<Key, Rat>;

    TensorPoly() = default;
    explicit TensorPoly(const Basis& l, const Basis& r, Rat c = Rat(1)) {
        if (c != 0) terms_.emplace(Key{l, r}, std::move(c));
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    const Terms& terms() const noexcept { return terms_; }

    Rat coeff(const Basis& l, const Basis& r) const {
        auto it = terms_.find({l, r});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Basis& l, const Basis& r, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find({l, r});
        if (it == terms_.end()) {
            terms_.emplace(Key{l, r}, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TensorPoly& operator+=(const TensorPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    TensorPoly& operator-=(const TensorPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    TensorPoly& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [k, v] : terms_) v *= c;
        }
        return *this;
    }

    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
    friend TensorPoly operator-(const TensorPoly& a) {
        TensorPoly out(a);
        for (auto& [k, c] : out.terms_) c = -c;
        return out;
    }
    friend TensorPoly operator*(TensorPoly a, const Rat& c) { return a *= c; }
    friend TensorPoly operator*(const Rat& c, TensorPoly a) { return a *= c; }

    friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b) {
        TensorPoly out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                out.add_term(ka.first * kb.first, ka.second * kb.second, ca * cb);
        return out;
    }
    TensorPoly& operator*=(const TensorPoly& o) { return *this = *this * o; }

    friend bool operator==(const TensorPoly& a, const TensorPoly& b) noexcept {
        return a.terms_ == b.terms_;
    }

    TensorPoly swapped_slots() const {
        TensorPoly out;
        for (const auto& [k, c] : terms_) out.terms_.emplace(Key{k.second, k.first}, c);
        return out;
    }

    // Coefficient polynomials by right slot: T = sum_s slot(s) (x) s.
    std::map<Basis, Poly> right_slot_decomposition() const {
        std::map<Basis, Poly> out;
        for (const auto& [k, c] : terms_) out[k.second].add_term(k.first, c);
        return out;
    }

    TensorPoly truncated(int max_total_degree) const {
        TensorPoly out;
        for (const auto& [k, c] : terms_)
            if (k.first.degree() + k.second.degree() <= max_total_degree)
                out.terms_.emplace(k, c);
        return out;
    }

private:
    Terms terms_;
};

inline TensorPoly tensor(const Poly& f, const Poly& g) {
    TensorPoly out;
    for (const auto& [bf, cf] : f.terms())
        for (const auto& [bg, cg] : g.terms()) out.add_term(bf, bg, cf * cg);
    return out;
}

inline std::string to_string(const TensorPoly& t) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : t.terms()) {
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rat a = abs(c);
        if (a != 1) out += to_string(a) + "*";
        out += to_string(k.first) + "(x)" + to_string(k.second);
    }
    return out;
}

// The co-addition Delta, the algebra homomorphism with
// Delta(x_i) = x_i (x) 1 + 1 (x) x_i. On a tree monomial it is the subset
// sum Delta(t) = sum_{I <= I(t)} (t|I) (x) (t|I^c).
inline TensorPoly delta(const Poly& f) {
    TensorPoly out;
    for (const auto& [b, c] : f.terms()) {
        if (b.is_one()) {
            out.add_term(Basis::one(), Basis::one(), c);
            continue;
        }
        const Monomial& t = b.mono();
        const int n = t.degree();
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            LeafSet I = LeafSet::from_mask(mask);
            auto l = contract(t, I);
            auto r = contract(t, I.complement(n));
            out.add_term(l ? Basis(*l) : Basis::one(), r ? Basis(*r) : Basis::one(), c);
        }
    }
    return out;
}

// Right-slot coefficient extraction: Delta(f) = sum_s Delta_s(f) (x) s.
inline Poly delta_s(const Poly& f, const Monomial& s) {
    Poly out;
    for (const auto& [b, c] : f.terms()) {
        if (b.is_one()) continue;
        const Monomial& t = b.mono();
        const int n = t.degree();
        if (s.degree() > n) continue;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            if (std::popcount(mask) != static_cast<unsigned>(s.degree())) continue;
            LeafSet Ic = LeafSet::from_mask(mask);
            auto r = contract(t, Ic);
            if (!r || !(*r == s)) continue;
            auto l = contract(t, Ic.complement(n));
            out.add_term(l ? Basis(*l) : Basis::one(), c);
        }
    }
    return out;
}

// del_1(f) = Delta(f) - f (x) 1 - 1 (x) f; zero exactly on primitives.
inline TensorPoly coaddition_deviation(const Poly& f) {
    TensorPoly out = delta(f);
    for (const auto& [b, c] : f.terms()) {
        out.add_term(b, Basis::one(), -c);
        out.add_term(Basis::one(), b, -c);
    }
    return out;
}

namespace detail {

// The proper part of Delta(f) restricted to right-slot degrees
// 1..max_right. With max_right = floor(n/2) this is the half-degree
// primitivity criterion for homogeneous f of degree n.
inline TensorPoly partial_proper_delta(const Poly& f, int max_right) {
    TensorPoly out;
    for (const auto& [b, c] : f.terms()) {
        if (b.is_one()) continue;
        const Monomial& t = b.mono();
        const int n = t.degree();
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
            const int k = std::popcount(mask);
            if (k > max_right || k >= n) continue;
            LeafSet Ic = LeafSet::from_mask(mask);
            auto r = contract(t, Ic);
            auto l = contract(t, Ic.complement(n));
            out.add_term(Basis(*l), Basis(*r), c);
        }
    }
    return out;
}

}  // namespace detail

// f is primitive iff Delta(f) = f (x) 1 + 1 (x) f. For homogeneous f of
// degree n it suffices that Delta_s(f) = 0 for all 1 <= deg s < (n+1)/2,
// which the cocommutativity of Delta makes equivalent to the full test.
inline bool is_primitive(const Poly& f) {
    if (f.is_zero()) return true;
    if (f.is_homogeneous() && f.degree() >= 1)
        return detail::partial_proper_delta(f, f.degree() / 2).is_zero();
    return coaddition_deviation(f).is_zero();
}

// The product-reversing involution, bar(t1 t2) = bar(t2) bar(t1).
inline Monomial bar(const Monomial& t) {
    if (t.is_leaf()) return t;
    return graft(bar(t.right()), bar(t.left()));
}

inline Poly bar(const Poly& f) {
    Poly out;
    for (const auto& [b, c] : f.terms()) out.add_term(b.is_one() ? b : Basis(bar(b.mono())), c);
    return out;
}

namespace detail {

inline const Poly& antipode_mono(const Monomial& w, std::map<Monomial, Poly>& memo) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    // sigma(w) = -w - sum sigma(w_<1>) w_<2> over the proper part of Delta(w);
    // every w_<1> has lower degree, so the recursion terminates.
    Poly acc(w, Rat(-1));
    const int n = w.degree();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
        LeafSet I = LeafSet::from_mask(mask);
        Monomial w1 = *contract(w, I);
        Monomial w2 = *contract(w, I.complement(n));
        acc -= antipode_mono(w1, memo) * Poly(w2);
    }
    return memo.emplace(w, std::move(acc)).first->second;
}

}  // namespace detail

// The left antipode: the K-linear map with sigma(1) = 1 and
// sigma(w) + w + sum sigma(w_<1>) w_<2> = 0 for monomials of degree >= 1.
inline Poly antipode(const Poly& f) {
    std::map<Monomial, Poly> memo;
    Poly out;
    for (const auto& [b, c] : f.terms()) {
        if (b.is_one())
            out.add_term(b, c);
        else
            out += detail::antipode_mono(b.mono(), memo) * c;
    }
    return out;
}

// The right antipode sigma-bar, defined through the bar involution.
inline Poly antipode_right(const Poly& f) { return bar(antipode(bar(f))); }

inline Poly commutator(const Poly& f, const Poly& g) { return f * g - g * f; }

inline Poly associator(const Poly& f, const Poly& g, const Poly& h) {
    return (f * g) * h - f * (g * h);
}

// The algebra homomorphism x_i -> g[i-1]; f may use variables x_1..x_n only.
inline Poly substitute(const Poly& f, std::span<const Poly> g) {
    std::map<Monomial, Poly> memo;
    auto image = [&](auto&& self, const Monomial& t) -> const Poly& {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        Poly value;
        if (t.is_leaf()) {
            const std::size_t i = static_cast<std::size_t>(t.leaf_label().index());
            if (i > g.size()) throw std::out_of_range("substitute: variable index out of range");
            value = g[i - 1];
        } else {
            value = self(self, t.left()) * self(self, t.right());
        }
        return memo.emplace(t, std::move(value)).first->second;
    };
    Poly out;
    for (const auto& [b, c] : f.terms()) {
        if (b.is_one())
            out.add_term(b, c);
        else
            out += image(image, b.mono()) * c;
    }
    return out;
}

inline Poly substitute(const Poly& f, std::initializer_list<Poly> g) {
    return substitute(f, std::span<const Poly>(g.begin(), g.size()));
}

// A Lie bracket expression over associative variables.
class LieExpr {
public:
    static LieExpr var(Variable v) { return LieExpr(v); }
    static LieExpr bracket(LieExpr a, LieExpr b) { return LieExpr(std::move(a), std::move(b)); }

    bool is_var() const noexcept { return !left_; }
    Variable variable() const { return *var_; }
    const LieExpr& left() const { return *left_; }
    const LieExpr& right() const { return *right_; }

private:
    explicit LieExpr(Variable v) : var_(v) {}
    LieExpr(LieExpr a, LieExpr b)
        : left_(std::make_shared<LieExpr>(std::move(a))),
          right_(std::make_shared<LieExpr>(std::move(b))) {}

    std::optional<Variable> var_;
    std::shared_ptr<LieExpr> left_, right_;
};

namespace detail {

using WordPoly = std::map<std::vector<int>, Rat>;

inline WordPoly lie_expand(const LieExpr& e) {
    if (e.is_var()) return {{{e.variable().index()}, Rat(1)}};
    WordPoly a = lie_expand(e.left());
    WordPoly b = lie_expand(e.right());
    WordPoly out;
    auto acc = [&out](const WordPoly& u, const WordPoly& v, const Rat& sign) {
        for (const auto& [wu, cu] : u)
            for (const auto& [wv, cv] : v) {
                std::vector<int> w = wu;
                w.insert(w.end(), wv.begin(), wv.end());
                Rat& slot = out[w];
                slot += sign * cu * cv;
                if (slot == 0) out.erase(w);
            }
    };
    acc(a, b, Rat(1));
    acc(b, a, Rat(-1));
    return out;
}

}  // namespace detail

// Expand the bracket expression in the free associative algebra, then send
// each word x_{i1}...x_{ir} to the right normed product x_{i1}(x_{i2}(...x_{ir})).
inline Poly lie_right_normed(const LieExpr& e) {
    Poly out;
    for (const auto& [w, c] : detail::lie_expand(e)) {
        Monomial m = Monomial::leaf(Variable(w.back()));
        for (std::size_t i = w.size() - 1; i-- > 0;) m = graft(Monomial::leaf(Variable(w[i])), m);
        out.add_term(Basis(m), c);
    }
    return out;
}

}  // namespace freemagma
