#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "freemagma/monomial.hpp"
#include "freemagma/rational.hpp"

namespace freemagma {

// An associative word in the variables; the independent oracle for the
// classical Hausdorff series works on words only and never touches the
// magma machinery.
using Word = std::vector<Variable>;

struct WordLess {
    bool operator()(const Word& a, const Word& b) const noexcept {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

// A truncated series in the free associative algebra on words.
class AssocSeries {
public:
    using Terms = std::map<Word, Rat, WordLess>;

    explicit AssocSeries(int cap) : cap_(cap) {
        if (cap < 0) throw std::invalid_argument("cap must be >= 0");
    }

    int cap() const noexcept { return cap_; }
    const Terms& terms() const noexcept { return terms_; }

    Rat coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Word& w, const Rat& c) {
        if (c == 0 || static_cast<int>(w.size()) > cap_) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    AssocSeries& operator+=(const AssocSeries& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    AssocSeries& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [w, v] : terms_) v *= c;
        }
        return *this;
    }

    // Concatenation product, truncated at the cap.
    friend AssocSeries operator*(const AssocSeries& a, const AssocSeries& b) {
        AssocSeries out(a.cap_);
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                if (static_cast<int>(wa.size() + wb.size()) > out.cap_) continue;
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                out.add_term(w, ca * cb);
            }
        return out;
    }

private:
    int cap_;
    Terms terms_;
};

// The classical Hausdorff series log(e^x e^y) on associative words:
// e^x e^y - 1 carries 1/(p! q!) on the words x^p y^q, and
// log(1+u) = sum_{m>=1} (-1)^{m-1} u^m / m.
inline AssocSeries assoc_bch(int cap) {
    if (cap < 1) throw std::invalid_argument("assoc_bch needs cap >= 1");
    const Variable x(1), y(2);
    AssocSeries u(cap);
    for (int p = 0; p <= cap; ++p)
        for (int q = 0; q <= cap - p; ++q) {
            if (p + q == 0) continue;
            Word w;
            w.insert(w.end(), static_cast<std::size_t>(p), x);
            w.insert(w.end(), static_cast<std::size_t>(q), y);
            u.add_term(w, Rat(BigInt(1), factorial(p) * factorial(q)));
        }
    AssocSeries out(cap);
    AssocSeries power = u;
    for (int m = 1; m <= cap; ++m) {
        AssocSeries scaled = power;
        scaled *= Rat(BigInt(m % 2 == 1 ? 1 : -1), BigInt(m));
        out += scaled;
        if (m < cap) power = power * u;
    }
    return out;
}

}  // namespace freemagma
