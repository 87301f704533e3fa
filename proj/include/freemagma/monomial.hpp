#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freemagma/rational.hpp"

namespace freemagma {

// A variable x_i, i >= 1. In two-variable contexts index 1 is x, index 2 is y.
class Variable {
public:
    explicit Variable(int index) : index_(index) {
        if (index < 1) throw std::invalid_argument("variable index must be >= 1");
    }
    int index() const noexcept { return index_; }
    friend bool operator==(Variable, Variable) noexcept = default;
    friend auto operator<=>(Variable, Variable) noexcept = default;

private:
    int index_;
};

namespace detail {

struct MonoNode {
    const MonoNode* left;  // nullptr iff leaf
    const MonoNode* right;
    int var;  // leaf label index, 0 for interior nodes
    int degree;
};

// Hash-consing pool. Nodes live for the lifetime of the process and equal
// trees share one node, so structural equality of monomials is pointer
// equality. Insertion is mutex-guarded; operations here are tiny.
class MonoPool {
public:
    static MonoPool& instance() {
        static MonoPool pool;
        return pool;
    }

    const MonoNode* leaf(int var) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = leaves_.try_emplace(var, nullptr);
        if (inserted) it->second = &store_.emplace_back(MonoNode{nullptr, nullptr, var, 1});
        return it->second;
    }

    const MonoNode* node(const MonoNode* l, const MonoNode* r) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = nodes_.try_emplace(std::pair{l, r}, nullptr);
        if (inserted) it->second = &store_.emplace_back(MonoNode{l, r, 0, l->degree + r->degree});
        return it->second;
    }

    MonoPool(const MonoPool&) = delete;
    MonoPool& operator=(const MonoPool&) = delete;

private:
    MonoPool() = default;

    struct PairHash {
        std::size_t operator()(const std::pair<const MonoNode*, const MonoNode*>& p) const noexcept {
            std::hash<const MonoNode*> h;
            return h(p.first) * 0x9e3779b97f4a7c15ull ^ h(p.second);
        }
    };

    std::mutex mutex_;
    std::deque<MonoNode> store_;
    std::unordered_map<int, const MonoNode*> leaves_;
    std::unordered_map<std::pair<const MonoNode*, const MonoNode*>, const MonoNode*, PairHash> nodes_;
};

}  // namespace detail

// A monomial of the free magma M(X): a planar binary rooted tree with
// Variable-labeled leaves. Monomials are immutable interned values;
// equality is structural (and O(1) thanks to interning).
class Monomial {
public:
    explicit Monomial(Variable v) : node_(detail::MonoPool::instance().leaf(v.index())) {}

    static Monomial leaf(Variable v) { return Monomial(v); }

    bool is_leaf() const noexcept { return node_->left == nullptr; }
    Variable leaf_label() const {
        if (!is_leaf()) throw std::logic_error("leaf_label on interior node");
        return Variable(node_->var);
    }
    Monomial left() const {
        if (is_leaf()) throw std::logic_error("left child of a leaf");
        return Monomial(node_->left);
    }
    Monomial right() const {
        if (is_leaf()) throw std::logic_error("right child of a leaf");
        return Monomial(node_->right);
    }
    int degree() const noexcept { return node_->degree; }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        return a.node_ == b.node_;
    }

    const detail::MonoNode* node() const noexcept { return node_; }
    static Monomial from_node(const detail::MonoNode* n) { return Monomial(n); }

private:
    explicit Monomial(const detail::MonoNode* n) : node_(n) {}

    const detail::MonoNode* node_;
};

// Grafting: the product of the free magma, joining two trees under a new root.
inline Monomial graft(const Monomial& t1, const Monomial& t2) {
    return Monomial::from_node(detail::MonoPool::instance().node(t1.node(), t2.node()));
}

inline Monomial operator*(const Monomial& t1, const Monomial& t2) { return graft(t1, t2); }

// Total order: by degree, then variable index for leaves, then
// lexicographically on the (left, right) factors of equal-degree products.
inline std::strong_ordering compare(const Monomial& s, const Monomial& t) {
    if (s == t) return std::strong_ordering::equal;
    if (auto c = s.degree() <=> t.degree(); c != 0) return c;
    if (s.is_leaf()) return s.leaf_label().index() <=> t.leaf_label().index();
    if (auto c = compare(s.left(), t.left()); c != 0) return c;
    return compare(s.right(), t.right());
}

inline std::strong_ordering operator<=>(const Monomial& s, const Monomial& t) {
    return compare(s, t);
}

// The leaf positions of a monomial are numbered 1..degree left to right.
// A LeafSet is a strictly increasing list of such positions.
class LeafSet {
public:
    LeafSet() = default;
    LeafSet(std::initializer_list<int> positions) : LeafSet(std::vector<int>(positions)) {}
    explicit LeafSet(std::vector<int> positions) : positions_(std::move(positions)) {
        for (std::size_t i = 0; i < positions_.size(); ++i) {
            if (positions_[i] < 1 || (i > 0 && positions_[i] <= positions_[i - 1]))
                throw std::invalid_argument("leaf positions must be strictly increasing and >= 1");
        }
    }

    static LeafSet full(int degree) {
        std::vector<int> v(static_cast<std::size_t>(degree));
        for (int i = 0; i < degree; ++i) v[static_cast<std::size_t>(i)] = i + 1;
        return LeafSet(std::move(v));
    }

    // Positions encoded as bits 0..63 of `mask` (bit i = position i+1).
    static LeafSet from_mask(std::uint64_t mask) {
        std::vector<int> v;
        for (int i = 0; mask != 0; ++i, mask >>= 1)
            if (mask & 1) v.push_back(i + 1);
        return LeafSet(std::move(v));
    }

    // Complement inside 1..degree.
    LeafSet complement(int degree) const {
        if (!positions_.empty() && positions_.back() > degree)
            throw std::out_of_range("leaf position exceeds degree");
        std::vector<int> v;
        v.reserve(static_cast<std::size_t>(degree) - positions_.size());
        std::size_t k = 0;
        for (int i = 1; i <= degree; ++i) {
            if (k < positions_.size() && positions_[k] == i)
                ++k;
            else
                v.push_back(i);
        }
        return LeafSet(std::move(v));
    }

    std::size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }
    const std::vector<int>& positions() const noexcept { return positions_; }
    auto begin() const noexcept { return positions_.begin(); }
    auto end() const noexcept { return positions_.end(); }

private:
    std::vector<int> positions_;
};

namespace detail {

inline const MonoNode* contract_rec(const MonoNode* t, const int* first, const int* last,
                                    int offset) {
    if (first == last) return nullptr;  // contracts to the unit
    if (t->left == nullptr) return t;
    const int split = offset + t->left->degree;
    const int* mid = first;
    while (mid != last && *mid <= split) ++mid;
    const MonoNode* l = contract_rec(t->left, first, mid, offset);
    const MonoNode* r = contract_rec(t->right, mid, last, split);
    if (l == nullptr) return r;
    if (r == nullptr) return l;
    return MonoPool::instance().node(l, r);
}

}  // namespace detail

// Contraction t|I: keep the leaves at the positions of I, collapse the unary
// nodes left behind. I = {} contracts to the unit, reported as nullopt.
inline std::optional<Monomial> contract(const Monomial& t, const LeafSet& I) {
    if (!I.empty() && I.positions().back() > t.degree())
        throw std::out_of_range("leaf position exceeds degree");
    const int* first = I.positions().data();
    const detail::MonoNode* n = detail::contract_rec(t.node(), first, first + I.size(), 0);
    if (n == nullptr) return std::nullopt;
    return Monomial::from_node(n);
}

namespace detail {

struct NodePairHash {
    std::size_t operator()(const std::pair<const MonoNode*, const MonoNode*>& p) const noexcept {
        std::hash<const MonoNode*> h;
        return h(p.first) * 0x9e3779b97f4a7c15ull ^ h(p.second);
    }
};

}  // namespace detail

// mu(s, t): the number of leaf subsets I of t with t|I = s, computed by the
// recursion mu_s(t1 t2) = mu_s(t1) + mu_s(t2) + mu_{s1}(t1) mu_{s2}(t2).
inline std::uint64_t mu(const Monomial& s, const Monomial& t) {
    using Key = std::pair<const detail::MonoNode*, const detail::MonoNode*>;
    std::unordered_map<Key, std::uint64_t, detail::NodePairHash> memo;
    auto rec = [&memo](auto&& self, const detail::MonoNode* sn,
                       const detail::MonoNode* tn) -> std::uint64_t {
        if (sn->degree > tn->degree) return 0;
        if (tn->left == nullptr) return sn == tn ? 1u : 0u;
        if (sn->left == nullptr) {  // count leaves of t labeled like s
            auto it = memo.find({sn, tn});
            if (it != memo.end()) return it->second;
            std::uint64_t r = self(self, sn, tn->left) + self(self, sn, tn->right);
            memo.emplace(Key{sn, tn}, r);
            return r;
        }
        auto it = memo.find({sn, tn});
        if (it != memo.end()) return it->second;
        std::uint64_t r = self(self, sn, tn->left) + self(self, sn, tn->right) +
                          self(self, sn->left, tn->left) * self(self, sn->right, tn->right);
        memo.emplace(Key{sn, tn}, r);
        return r;
    };
    return rec(rec, s.node(), t.node());
}

// All degree-n monomials over the given variables, in increasing order.
inline std::vector<Monomial> enumerate(int n, std::span<const Variable> vars) {
    if (n < 1) throw std::invalid_argument("enumerate requires degree >= 1");
    std::vector<std::vector<Monomial>> by_degree(static_cast<std::size_t>(n) + 1);
    for (Variable v : vars) by_degree[1].push_back(Monomial::leaf(v));
    for (int d = 2; d <= n; ++d) {
        auto& out = by_degree[static_cast<std::size_t>(d)];
        for (int k = 1; k < d; ++k)
            for (const Monomial& l : by_degree[static_cast<std::size_t>(k)])
                for (const Monomial& r : by_degree[static_cast<std::size_t>(d - k)])
                    out.push_back(graft(l, r));
    }
    return by_degree[static_cast<std::size_t>(n)];
}

inline std::vector<Monomial> enumerate(int n, std::initializer_list<Variable> vars) {
    return enumerate(n, std::span<const Variable>(vars.begin(), vars.size()));
}

// The foliage: the word of leaf labels, left to right.
inline std::vector<Variable> foliage(const Monomial& t) {
    std::vector<Variable> out;
    out.reserve(static_cast<std::size_t>(t.degree()));
    auto walk = [&out](auto&& self, const detail::MonoNode* n) -> void {
        if (n->left == nullptr) {
            out.push_back(Variable(n->var));
            return;
        }
        self(self, n->left);
        self(self, n->right);
    };
    walk(walk, t.node());
    return out;
}

// Relabel every leaf to v, preserving the tree shape.
inline Monomial relabel(const Monomial& t, Variable v) {
    if (t.is_leaf()) return Monomial::leaf(v);
    return graft(relabel(t.left(), v), relabel(t.right(), v));
}

// The underlying (unlabeled) tree |t|, realized over the single variable z = x_1.
inline Monomial underlying(const Monomial& t) { return relabel(t, Variable(1)); }

namespace detail {

inline const MonoNode* graft_leaves_rec(const MonoNode* t, const Monomial*& next) {
    if (t->left == nullptr) return (next++)->node();
    const MonoNode* l = graft_leaves_rec(t->left, next);
    const MonoNode* r = graft_leaves_rec(t->right, next);
    return MonoPool::instance().node(l, r);
}

}  // namespace detail

// t(s_1, ..., s_n): graft s_i onto the i-th leaf of t.
inline Monomial graft_onto_leaves(const Monomial& t, std::span<const Monomial> s) {
    if (static_cast<int>(s.size()) != t.degree())
        throw std::invalid_argument("graft_onto_leaves: need one monomial per leaf");
    const Monomial* next = s.data();
    return Monomial::from_node(detail::graft_leaves_rec(t.node(), next));
}

// c_n = (2(n-1))! / (n! (n-1)!): the number of planar binary trees with n leaves.
inline std::uint64_t catalan(int n) {
    if (n < 1) throw std::invalid_argument("catalan requires n >= 1");
    BigInt c = factorial(2 * (n - 1)) / (factorial(n) * factorial(n - 1));
    return c.convert_to<std::uint64_t>();
}

// Plain nested rendering, e.g. "((x x) x)"; used by tests and serialization.
inline std::string variable_name(Variable v) {
    if (v.index() == 1) return "x";
    if (v.index() == 2) return "y";
    return "x" + std::to_string(v.index());
}

inline std::string to_string(const Monomial& t) {
    if (t.is_leaf()) return variable_name(t.leaf_label());
    return "(" + to_string(t.left()) + " " + to_string(t.right()) + ")";
}

}  // namespace freemagma

template <>
struct std::hash<freemagma::Monomial> {
    std::size_t operator()(const freemagma::Monomial& m) const noexcept {
        return std::hash<const freemagma::detail::MonoNode*>{}(m.node());
    }
};
