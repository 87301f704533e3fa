#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "freemagma/calculus.hpp"
#include "freemagma/hopf.hpp"
#include "freemagma/linalg.hpp"
#include "freemagma/poly.hpp"

namespace freemagma {

// Membership in Gamma = M - (xM u {x}) over the single variable x.
inline bool in_gamma(const Monomial& t) { return !t.is_leaf() && !t.left().is_leaf(); }

// Degree-n part of Gamma; Phi of these monomials is a basis of the
// constants (A_0)_n, of dimension c_n - c_{n-1}.
inline std::vector<Monomial> gamma_n(int n) {
    std::vector<Monomial> out;
    for (const Monomial& t : enumerate(n, {Variable(1)}))
        if (in_gamma(t)) out.push_back(t);
    return out;
}

// Degree-n part of the free generating set Omega of the sub-magma Gamma:
// products s1 s2 with deg s1 >= 2 such that s1 or s2 lies outside Gamma.
inline std::vector<Monomial> omega_n(int n) {
    std::vector<Monomial> out;
    for (const Monomial& t : enumerate(n, {Variable(1)})) {
        if (t.is_leaf() || t.left().is_leaf()) continue;  // need s1 in M - {x}
        Monomial s1 = t.left(), s2 = t.right();
        if (!in_gamma(s1) || !in_gamma(s2)) out.push_back(t);
    }
    return out;
}

// {Phi(s) : s in Gamma_n}, a vector space basis of (A_0)_n.
inline std::vector<Poly> constants_basis(int n) {
    std::vector<Poly> out;
    for (const Monomial& s : gamma_n(n)) out.push_back(phi1(Poly(s), Variable(1)));
    return out;
}

// z_{n,k} = a_0(x^k x^{n-k}), defined for n >= 3, 2 <= k <= n-1.
inline Poly z(int n, int k) {
    if (n < 3 || k < 2 || k > n - 1) throw std::invalid_argument("z(n,k) needs n>=3, 2<=k<=n-1");
    const Variable x(1);
    return phi1(Poly(graft(chain_power(x, k), chain_power(x, n - k))), x);
}

// Closed form for Delta(z_{n,k}):
//   z (x) 1 + 1 (x) z + sum_{m=2}^{k-2} sum_{l=m+1}^{m+n-k-1}
//     C(k,m) C(n-k,l-m) z_{l,m} (x) z_{n-l,k-m}.
// For k in {2,3} and k = n-1 the double sum is empty, so those z are primitive.
inline TensorPoly delta_z(int n, int k) {
    Poly znk = z(n, k);
    TensorPoly out = tensor(znk, Poly::one()) + tensor(Poly::one(), znk);
    for (int m = 2; m <= k - 2; ++m) {
        for (int l = m + 1; l <= m + n - k - 1; ++l) {
            Rat c(binomial(k, m) * binomial(n - k, l - m));
            if (c == 0) continue;
            out += c * tensor(z(l, m), z(n - l, k - m));
        }
    }
    return out;
}

// One free generator of the constants algebra: y_{n,i} = Phi(omega) for the
// i-th element omega of Omega_n. Phi does not change the leading term, so
// `leading` doubles as the generator's identity.
struct Generator {
    std::string name;
    int degree;
    Monomial leading;
    Poly value;
    bool primitive;
};

class GeneratorTable {
public:
    GeneratorTable(std::vector<Generator> entries, int max_degree)
        : entries_(std::move(entries)), max_degree_(max_degree) {}

    const std::vector<Generator>& entries() const noexcept { return entries_; }
    int max_degree() const noexcept { return max_degree_; }

    std::vector<std::size_t> indices_of_degree(int n) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].degree == n) out.push_back(i);
        return out;
    }

    std::vector<Poly> values() const {
        std::vector<Poly> out;
        out.reserve(entries_.size());
        for (const Generator& g : entries_) out.push_back(g.value);
        return out;
    }

private:
    std::vector<Generator> entries_;
    int max_degree_;
};

// The table of Phi(omega), omega in Omega_n, 3 <= n <= max_degree, ordered by
// degree and leading monomial.
inline GeneratorTable free_generators(int max_degree) {
    if (max_degree < 3) throw std::invalid_argument("free_generators needs max_degree >= 3");
    const Variable x(1);
    std::vector<Generator> entries;
    for (int n = 3; n <= max_degree; ++n) {
        int i = 1;
        for (const Monomial& w : omega_n(n)) {
            Poly value = phi1(Poly(w), x);
            entries.push_back(Generator{"y_{" + std::to_string(n) + "," + std::to_string(i) + "}",
                                        n, w, value, is_primitive(value)});
            ++i;
        }
    }
    return GeneratorTable(std::move(entries), max_degree);
}

// All magma monomials over the generator alphabet with weighted degree
// `degree`, using only generators of degree <= max_leaf_degree as leaves.
// Leaf i stands for table entry i-1; evaluate with substitute(). Sorted by
// the canonical monomial order.
inline std::vector<Monomial> generator_monomials(const GeneratorTable& table, int degree,
                                                 int max_leaf_degree) {
    std::vector<std::vector<Monomial>> by_degree(static_cast<std::size_t>(degree) + 1);
    const auto& entries = table.entries();
    for (int d = 3; d <= degree; ++d) {
        auto& out = by_degree[static_cast<std::size_t>(d)];
        if (d <= max_leaf_degree)
            for (std::size_t i = 0; i < entries.size(); ++i)
                if (entries[i].degree == d)
                    out.push_back(Monomial::leaf(Variable(static_cast<int>(i) + 1)));
        for (int d1 = 3; d1 + 3 <= d; ++d1)
            for (const Monomial& l : by_degree[static_cast<std::size_t>(d1)])
                for (const Monomial& r : by_degree[static_cast<std::size_t>(d - d1)])
                    out.push_back(graft(l, r));
        std::sort(out.begin(), out.end());
    }
    return by_degree[static_cast<std::size_t>(degree)];
}

// Make every degree-r generator primitive by subtracting an element alpha of
// the subalgebra generated by the lower-degree (primitive) generators, with
// del_1(alpha) equal to the deviation of the generator. The linear system is
// solved exactly; free coordinates of the correction are set to zero in the
// fixed product order.
inline GeneratorTable primitivize(const GeneratorTable& table, int r) {
    for (const Generator& g : table.entries())
        if (g.degree < r && !g.primitive)
            throw std::invalid_argument("primitivize: lower-degree generators must be primitive");

    std::vector<Generator> entries = table.entries();
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].degree == r && !entries[i].primitive) todo.push_back(i);
    if (todo.empty()) return GeneratorTable(std::move(entries), table.max_degree());

    // Candidate corrections: products of lower-degree generators, expanded
    // onto the monomial basis and deduplicated as polynomials.
    std::vector<Poly> values = table.values();
    std::vector<Poly> candidates;
    for (const Monomial& p : generator_monomials(table, r, r - 3)) {
        Poly q = substitute(Poly(p), values);
        bool duplicate = false;
        for (const Poly& seen : candidates) duplicate = duplicate || seen == q;
        if (!duplicate) candidates.push_back(std::move(q));
    }
    std::vector<TensorPoly> cols;
    cols.reserve(candidates.size());
    for (const Poly& q : candidates) cols.push_back(coaddition_deviation(q));

    for (std::size_t idx : todo) {
        TensorPoly dev = coaddition_deviation(entries[idx].value);

        std::map<TensorPoly::Key, std::size_t> row_of;
        auto note_rows = [&row_of](const TensorPoly& t) {
            for (const auto& [k, c] : t.terms()) row_of.emplace(k, row_of.size());
        };
        note_rows(dev);
        for (const TensorPoly& col : cols) note_rows(col);

        Matrix a(row_of.size(), std::vector<Rat>(cols.size(), Rat(0)));
        std::vector<Rat> b(row_of.size(), Rat(0));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [k, c] : cols[j].terms()) a[row_of.at(k)][j] = c;
        for (const auto& [k, c] : dev.terms()) b[row_of.at(k)] = c;

        auto alpha = solve_linear(a, b);
        if (!alpha) throw std::runtime_error("primitivize: correction system is unsolvable");
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if ((*alpha)[j] != 0) entries[idx].value -= (*alpha)[j] * candidates[j];
        entries[idx].primitive = is_primitive(entries[idx].value);
        if (!entries[idx].primitive)
            throw std::runtime_error("primitivize: corrected generator is still not primitive");
    }
    return GeneratorTable(std::move(entries), table.max_degree());
}

// Two-variable Gamma of the constants basis:
// {s1 s2 : deg s1 >= 2} u {y.(x.t) : deg t >= 0}, at degree n.
inline std::vector<Monomial> gamma_two_var(int n) {
    const Monomial xl = Monomial::leaf(Variable(1));
    const Monomial yl = Monomial::leaf(Variable(2));
    std::vector<Monomial> out;
    for (const Monomial& t : enumerate(n, {Variable(1), Variable(2)})) {
        if (t.is_leaf()) continue;
        bool first_kind = t.left().degree() >= 2;
        bool second_kind = t.left() == yl && (t.right() == xl ||
                                              (!t.right().is_leaf() && t.right().left() == xl));
        if (first_kind || second_kind) out.push_back(t);
    }
    return out;
}

}  // namespace freemagma
