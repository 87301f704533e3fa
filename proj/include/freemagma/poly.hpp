#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freemagma/monomial.hpp"
#include "freemagma/rational.hpp"

namespace freemagma {

// A basis element of the unitary magma algebra K{X}: the unit 1 (degree 0)
// or a magma monomial. The unit is a marker outside Monomial so that
// Monomial keeps its degree >= 1 invariant.
class Basis {
public:
    Basis() = default;  // the unit
    Basis(Monomial m) : m_(m) {}
    static Basis one() { return Basis(); }

    bool is_one() const noexcept { return !m_.has_value(); }
    const Monomial& mono() const {
        if (is_one()) throw std::logic_error("the unit has no underlying monomial");
        return *m_;
    }
    int degree() const noexcept { return is_one() ? 0 : m_->degree(); }

    friend bool operator==(const Basis& a, const Basis& b) noexcept {
        if (a.is_one() || b.is_one()) return a.is_one() == b.is_one();
        return *a.m_ == *b.m_;
    }
    friend std::strong_ordering operator<=>(const Basis& a, const Basis& b) noexcept {
        if (a.is_one() || b.is_one()) return (b.is_one() ? 1 : 0) <=> (a.is_one() ? 1 : 0);
        return compare(*a.m_, *b.m_);
    }

    Basis operator*(const Basis& o) const {
        if (is_one()) return o;
        if (o.is_one()) return *this;
        return Basis(graft(*m_, *o.m_));
    }

private:
    std::optional<Monomial> m_;
};

inline std::string to_string(const Basis& b) { return b.is_one() ? "1" : to_string(b.mono()); }

// An element of K{X}: a finite linear combination of basis elements with
// exact rational coefficients. Zero coefficients are never stored and the
// term map iterates in the canonical monomial order.
class Poly {
public:
    using Terms = std::map<Basis, Rat>;

    Poly() = default;
    explicit Poly(const Basis& b, Rat c = Rat(1)) {
        if (c != 0) terms_.emplace(b, std::move(c));
    }
    explicit Poly(const Monomial& m, Rat c = Rat(1)) : Poly(Basis(m), std::move(c)) {}

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Basis::one()); }
    static Poly constant(Rat c) { return Poly(Basis::one(), std::move(c)); }
    static Poly variable(Variable v) { return Poly(Monomial::leaf(v)); }

    bool is_zero() const noexcept { return terms_.empty(); }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    Rat coeff(const Basis& b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    // Total degree: the largest degree among stored terms; -1 for the zero
    // polynomial.
    int degree() const noexcept {
        return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
    }

    // Smallest degree among stored terms; -1 for the zero polynomial.
    int order() const noexcept {
        return terms_.empty() ? -1 : terms_.begin()->first.degree();
    }

    bool is_homogeneous() const noexcept {
        return terms_.empty() || degree() == order();
    }

    // The degree-n graded component (the unit is the degree-0 basis element).
    Poly component(int n) const {
        Poly out;
        for (const auto& [b, c] : terms_)
            if (b.degree() == n) out.terms_.emplace(b, c);
        return out;
    }

    // Indices of all variables occurring in the support.
    std::set<int> variable_indices() const {
        std::set<int> out;
        for (const auto& [b, c] : terms_) {
            if (b.is_one()) continue;
            for (Variable v : foliage(b.mono())) out.insert(v.index());
        }
        return out;
    }

    void add_term(const Basis& b, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(b);
        if (it == terms_.end()) {
            terms_.emplace(b, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, -c);
        return *this;
    }
    Poly& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [b, v] : terms_) v *= c;
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly out(a);
        for (auto& [b, c] : out.terms_) c = -c;
        return out;
    }
    friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
    friend Poly operator*(const Rat& c, Poly a) { return a *= c; }

    // Bilinear extension of grafting; the unit is the multiplicative identity.
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        for (const auto& [ba, ca] : a.terms_)
            for (const auto& [bb, cb] : b.terms_) out.add_term(ba * bb, ca * cb);
        return out;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.terms_ == b.terms_; }

    // The maximal monomial and its coefficient. The zero polynomial and a
    // bare constant have no leading monomial.
    std::pair<Monomial, Rat> leading() const {
        if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
        const auto& [b, c] = *terms_.rbegin();
        if (b.is_one()) throw std::domain_error("leading term of a constant polynomial");
        return {b.mono(), c};
    }

private:
    Terms terms_;
};

inline Poly scale(const Rat& c, const Poly& f) { return f * c; }
inline Poly add(const Poly& f, const Poly& g) { return f + g; }
inline Poly mul(const Poly& f, const Poly& g) { return f * g; }

inline std::string to_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [b, c] : f.terms()) {
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rat a = abs(c);
        if (a != 1 || b.is_one()) {
            out += to_string(a);
            if (!b.is_one()) out += "*";
        }
        if (!b.is_one()) out += to_string(b);
    }
    return out;
}

}  // namespace freemagma
