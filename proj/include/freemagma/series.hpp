#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "freemagma/poly.hpp"

namespace freemagma {

// An element of the free complete magma algebra K{{X}} truncated at a cap:
// one homogeneous Poly per degree 0..cap. Products silently drop terms
// above the cap.
class Series {
public:
    static constexpr int default_cap = 8;

    explicit Series(int cap = default_cap) : cap_(cap), comps_(static_cast<std::size_t>(cap) + 1) {
        if (cap < 0) throw std::invalid_argument("series cap must be >= 0");
    }

    static Series from_poly(const Poly& f, int cap = default_cap) {
        Series s(cap);
        for (const auto& [b, c] : f.terms())
            if (b.degree() <= cap) s.comps_[static_cast<std::size_t>(b.degree())].add_term(b, c);
        return s;
    }

    int cap() const noexcept { return cap_; }

    const Poly& component(int n) const {
        if (n < 0 || n > cap_) throw std::out_of_range("series component out of range");
        return comps_[static_cast<std::size_t>(n)];
    }

    void set_component(int n, Poly p) {
        if (n < 0 || n > cap_) throw std::out_of_range("series component out of range");
        if (!p.is_zero() && !(p.is_homogeneous() && p.degree() == n))
            throw std::invalid_argument("component must be homogeneous of the right degree");
        comps_[static_cast<std::size_t>(n)] = std::move(p);
    }

    // Order: the smallest degree with a nonzero component (cap+1 if none).
    int order() const noexcept {
        for (int n = 0; n <= cap_; ++n)
            if (!comps_[static_cast<std::size_t>(n)].is_zero()) return n;
        return cap_ + 1;
    }

    bool is_zero() const noexcept { return order() > cap_; }

    Poly truncated_poly() const {
        Poly out;
        for (const Poly& p : comps_) out += p;
        return out;
    }

    Series& operator+=(const Series& o) {
        check_cap(o);
        for (int n = 0; n <= cap_; ++n)
            comps_[static_cast<std::size_t>(n)] += o.comps_[static_cast<std::size_t>(n)];
        return *this;
    }
    Series& operator-=(const Series& o) {
        check_cap(o);
        for (int n = 0; n <= cap_; ++n)
            comps_[static_cast<std::size_t>(n)] -= o.comps_[static_cast<std::size_t>(n)];
        return *this;
    }
    Series& operator*=(const Rat& c) {
        for (Poly& p : comps_) p *= c;
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Rat& c, Series a) { return a *= c; }
    friend Series operator*(Series a, const Rat& c) { return a *= c; }

    // Graded convolution, truncated at the cap.
    friend Series operator*(const Series& a, const Series& b) {
        a.check_cap(b);
        Series out(a.cap_);
        for (int n = 0; n <= a.cap_; ++n) {
            Poly comp;
            for (int k = 0; k <= n; ++k)
                comp += a.comps_[static_cast<std::size_t>(k)] *
                        b.comps_[static_cast<std::size_t>(n - k)];
            out.comps_[static_cast<std::size_t>(n)] = std::move(comp);
        }
        return out;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend bool operator==(const Series& a, const Series& b) noexcept {
        return a.cap_ == b.cap_ && a.comps_ == b.comps_;
    }

private:
    void check_cap(const Series& o) const {
        if (cap_ != o.cap_) throw std::invalid_argument("series cap mismatch");
    }

    int cap_;
    std::vector<Poly> comps_;
};

// Coefficient table of a one-variable series without constant term, keyed by
// the monomials of M(x).
using CoeffTable = std::map<Monomial, Rat>;

// Substitution of `inner` (a series without constant term) into the
// one-variable series with the given coefficients: every leaf of every outer
// monomial receives an independent copy of `inner`.
inline Series compose(const CoeffTable& outer, const Series& inner) {
    if (inner.order() < 1) throw std::invalid_argument("compose: inner series has a constant term");
    const int cap = inner.cap();
    std::map<Monomial, Series> memo;  // node-based: references stay valid across inserts
    auto subst = [&](auto&& self, const Monomial& t) -> const Series& {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        Series value = t.is_leaf() ? inner : self(self, t.left()) * self(self, t.right());
        return memo.emplace(t, std::move(value)).first->second;
    };
    Series out(cap);
    for (const auto& [t, c] : outer) {
        if (c == 0 || t.degree() > cap) continue;
        out += subst(subst, t) * c;
    }
    return out;
}

}  // namespace freemagma
