#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "freemagma/constants.hpp"
#include "test_util.hpp"

using namespace freemagma;

namespace {
const Variable x{1};
const Variable y{2};
const Monomial xm = Monomial::leaf(x);
const Monomial ym = Monomial::leaf(y);
const Monomial x2 = xm * xm;
const Monomial x2x = x2 * xm;

Monomial chain(int j) { return chain_power(x, j); }

// Coordinate matrix of polynomials over the degree-n monomial basis.
Matrix coordinate_matrix(const std::vector<Poly>& polys, int n,
                         const std::vector<Variable>& vars) {
    auto monos = enumerate(n, vars);
    std::map<Monomial, std::size_t> row;
    for (std::size_t i = 0; i < monos.size(); ++i) row.emplace(monos[i], i);
    Matrix a(monos.size(), std::vector<Rat>(polys.size(), Rat(0)));
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (const auto& [b, c] : polys[j].terms()) a[row.at(b.mono())][j] = c;
    return a;
}

std::vector<Rat> coordinates(const Poly& p, int n, const std::vector<Variable>& vars) {
    auto monos = enumerate(n, vars);
    std::map<Monomial, std::size_t> row;
    for (std::size_t i = 0; i < monos.size(); ++i) row.emplace(monos[i], i);
    std::vector<Rat> v(monos.size(), Rat(0));
    for (const auto& [b, c] : p.terms()) v[row.at(b.mono())] = c;
    return v;
}
}  // namespace

TEST_CASE("gamma_n membership and dimension counts") {
    auto g3 = gamma_n(3);
    REQUIRE(g3.size() == 1);
    CHECK(g3[0] == x2x);
    CHECK(gamma_n(1).empty());
    CHECK(gamma_n(2).empty());
    for (int n = 2; n <= 10; ++n) CHECK(gamma_n(n).size() == catalan(n) - catalan(n - 1));
}

TEST_CASE("omega_n: small cases, counts, and both characterizations") {
    CHECK(omega_n(1).empty());
    CHECK(omega_n(2).empty());
    auto o3 = omega_n(3);
    REQUIRE(o3.size() == 1);
    CHECK(o3[0] == x2x);
    for (int n = 4; n <= 10; ++n)
        CHECK(omega_n(n).size() == 3 * (catalan(n - 1) - catalan(n - 2)));

    // (x^2 x)^2 lies in Gamma_6 but not in Omega_6
    Monomial sq = x2x * x2x;
    auto g6 = gamma_n(6);
    auto o6 = omega_n(6);
    CHECK(std::find(g6.begin(), g6.end(), sq) != g6.end());
    CHECK(std::find(o6.begin(), o6.end(), sq) == o6.end());

    // second characterization: (x^i.v1)(x^j.v2), v1,v2 in Gamma u {1},
    // i+j >= 1, v1 != 1 if i <= 1, v2 != 1 if j = 0
    for (int n = 3; n <= 8; ++n) {
        std::vector<Monomial> alt;
        for (const Monomial& t : enumerate(n, {x})) {
            if (t.is_leaf()) continue;
            auto peel = [](Monomial m) {
                int i = 0;
                std::optional<Monomial> v = m;
                while (v && v->degree() > 1 && v->left().is_leaf()) {
                    ++i;
                    v = v->right();
                }
                if (v && v->is_leaf()) {  // pure chain: one more x, then the unit
                    ++i;
                    v.reset();
                }
                return std::pair{i, v};
            };
            auto [i, v1] = peel(t.left());
            auto [j, v2] = peel(t.right());
            if (i + j < 1) continue;
            if (i <= 1 && !v1) continue;
            if (j == 0 && !v2) continue;
            if (v1 && !in_gamma(*v1)) continue;  // peel must end inside Gamma
            if (v2 && !in_gamma(*v2)) continue;
            if (t.left().is_leaf()) continue;  // s1 in M - {x}
            alt.push_back(t);
        }
        auto direct = omega_n(n);
        CHECK(alt == direct);
    }
}

TEST_CASE("constants basis: golden values, independence, kernel of D") {
    auto b3 = constants_basis(3);
    REQUIRE(b3.size() == 1);
    CHECK(b3[0] == Poly(x2x) - Poly(xm * x2));

    auto b4 = constants_basis(4);
    REQUIRE(b4.size() == 3);
    // spans the a_0 values of the degree-4 Taylor examples
    {
        Matrix a = coordinate_matrix(b4, 4, {x});
        std::size_t base_rank = rank(a);
        CHECK(base_rank == 3);
        for (const Monomial& t : {x2 * x2, chain(3) * xm, (x2 * xm) * xm}) {
            auto bvec = coordinates(phi1(Poly(t), x), 4, {x});
            CHECK(solve_linear(a, bvec).has_value());
        }
    }

    CHECK(constants_basis(5).size() == 9);

    for (int n = 3; n <= 6; ++n) {
        auto basis = constants_basis(n);
        CHECK(rank(coordinate_matrix(basis, n, {x})) == basis.size());
        for (const Poly& p : basis) CHECK(derive(p, x).is_zero());
    }
}

TEST_CASE("free generator table") {
    GeneratorTable table = free_generators(6);
    const auto& e = table.entries();

    auto d3 = table.indices_of_degree(3);
    REQUIRE(d3.size() == 1);
    CHECK(e[d3[0]].value == Poly(x2x) - Poly(xm * x2));
    CHECK(e[d3[0]].primitive);
    CHECK(e[d3[0]].name == "y_{3,1}");

    for (const Generator& g : e) {
        if (g.degree <= 5) CHECK(g.primitive);
        CHECK(g.value.leading().first == g.leading);
        CHECK(derive(g.value, x).is_zero());
    }

    // the degree-6 left comb is not primitive before correction
    Monomial comb6 = (((x2x * xm) * xm) * xm);
    bool found = false;
    for (const Generator& g : e)
        if (g.leading == comb6) {
            found = true;
            CHECK(!g.primitive);
        }
    CHECK(found);

    CHECK(table.indices_of_degree(6).size() == 27);
}

TEST_CASE("z values and their Taylor expansion formula") {
    CHECK(z(3, 2) == Poly(x2x) - Poly(xm * x2));
    CHECK_THROWS_AS(z(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(z(2, 2), std::invalid_argument);

    // z_{5,2} = x^2x^3 - x^5 - 3 x^2.z_{3,2} - 3 x.z_{4,2}
    Poly z52 = Poly(graft(chain(2), chain(3))) - Poly(chain(5)) -
               Rat(3) * lmul(z(3, 2), x, 2) - Rat(3) * lmul(z(4, 2), x, 1);
    CHECK(z(5, 2) == z52);

    // general expansion for n <= 7
    for (int n = 3; n <= 7; ++n)
        for (int k = 2; k <= n - 1; ++k) {
            Poly expect = Poly(graft(chain(k), chain(n - k))) - Poly(chain(n));
            for (int r = 3; r <= n - 1; ++r)
                for (int l = 2; l <= r - 1; ++l) {
                    Rat c(binomial(k, l) * binomial(n - k, r - l));
                    if (c != 0) expect -= c * lmul(z(r, l), x, n - r);
                }
            CHECK(z(n, k) == expect);
        }
}

TEST_CASE("delta_z closed form against two independent routes") {
    for (int n = 3; n <= 7; ++n)
        for (int k = 2; k <= n - 1; ++k) {
            TensorPoly closed = delta_z(n, k);
            CHECK(closed == delta(z(n, k)));
            // Prop-(4.1)-style oracle: a_{0,0} of Delta applied to the tree
            CHECK(closed == phi_tensor(delta(Poly(graft(chain(k), chain(n - k))))));
        }

    // proper part of Delta(z_{6,4}) is 12 z_{3,2} (x) z_{3,2}
    Poly z32 = z(3, 2), z64 = z(6, 4);
    TensorPoly proper = delta_z(6, 4) - tensor(z64, Poly::one()) - tensor(Poly::one(), z64);
    CHECK(proper == Rat(12) * tensor(z32, z32));

    for (int n = 3; n <= 8; ++n) {
        CHECK(is_primitive(z(n, n - 1)));
        CHECK(is_primitive(z(n, 2)));
        if (n >= 4) CHECK(is_primitive(z(n, 3)));
    }
}

TEST_CASE("Taylor coefficients of Omega trees count x^2x contractions") {
    Poly y31 = z(3, 2);
    for (int n = 4; n <= 6; ++n)
        for (const Monomial& t : omega_n(n)) {
            auto tt = taylor1(Poly(t), x);
            CHECK(tt.coeff(n - 3) == Rat(BigInt(mu(x2x, t))) * y31);
        }
}

TEST_CASE("primitivize performs the degree-6 corrections and fixes degree 7") {
    GeneratorTable table = free_generators(7);
    CHECK_THROWS_AS(primitivize(table, 7), std::invalid_argument);

    GeneratorTable p6 = primitivize(table, 6);
    Poly z32 = z(3, 2);
    Poly sq = z32 * z32;

    std::map<std::string, Poly> expected;
    Monomial comb6 = ((x2x * xm) * xm) * xm;
    for (std::size_t i : p6.indices_of_degree(6)) {
        const Generator& g = p6.entries()[i];
        CHECK(g.primitive);
        CHECK(derive(g.value, x).is_zero());
        CHECK(g.value.component(6) == g.value);  // degree preserved
        if (g.leading == graft(chain(4), chain(2)))
            CHECK(g.value == z(6, 4) - Rat(6) * sq);
        if (g.leading == comb6) CHECK(g.value == phi1(Poly(comb6), x) - Rat(10) * sq);
    }

    // the five generators that were already primitive pass through unchanged
    std::vector<Monomial> untouched = {graft(chain(5), chain(1)), graft(chain(3), chain(3)),
                                       graft(chain(2), chain(4)), graft(chain(3), x2x),
                                       graft(x2x, chain(3))};
    for (const Monomial& w : untouched) {
        bool seen = false;
        for (std::size_t i : p6.indices_of_degree(6)) {
            const Generator& g = p6.entries()[i];
            if (!(g.leading == w)) continue;
            seen = true;
            CHECK(g.value == phi1(Poly(w), x));
        }
        CHECK(seen);
    }

    GeneratorTable p7 = primitivize(p6, 7);
    for (const Generator& g : p7.entries()) {
        CHECK(g.primitive);
        if (g.degree <= 5) CHECK(g.value.leading().first == g.leading);
        CHECK(derive(g.value, x).is_zero());
    }
}

TEST_CASE("the generators freely generate the constants") {
    GeneratorTable table = primitivize(primitivize(free_generators(7), 6), 7);
    std::vector<Poly> values = table.values();
    for (int n = 3; n <= 7; ++n) {
        std::vector<Poly> evaluated;
        for (const Monomial& p : generator_monomials(table, n, n))
            evaluated.push_back(substitute(Poly(p), values));
        REQUIRE(evaluated.size() == catalan(n) - catalan(n - 1));

        Matrix a = coordinate_matrix(evaluated, n, {x});
        CHECK(rank(a) == evaluated.size());  // unique expressibility
        for (const Poly& target : constants_basis(n)) {
            auto sol = solve_linear(a, coordinates(target, n, {x}));
            REQUIRE(sol.has_value());
            Poly rebuilt;
            for (std::size_t j = 0; j < evaluated.size(); ++j)
                rebuilt += (*sol)[j] * evaluated[j];
            CHECK(rebuilt == target);
        }
    }
}

TEST_CASE("two-variable Gamma and the constants basis") {
    auto g2 = gamma_two_var(2);
    CHECK(std::find(g2.begin(), g2.end(), xm * ym) == g2.end());
    CHECK(std::find(g2.begin(), g2.end(), ym * xm) != g2.end());
    auto g3 = gamma_two_var(3);
    CHECK(std::find(g3.begin(), g3.end(), ym * (ym * xm)) == g3.end());
    CHECK(g3.size() == 10);

    std::vector<Variable> vars{x, y};
    for (int n = 2; n <= 5; ++n) {
        std::vector<Poly> basis;
        for (const Monomial& s : gamma_two_var(n)) basis.push_back(phi_total(Poly(s), {x, y}));
        Matrix a = coordinate_matrix(basis, n, vars);
        std::size_t base_rank = rank(a);
        CHECK(base_rank == basis.size());  // linear independence
        if (n > 4) continue;
        // spanning: Phi of every degree-n monomial solves in the basis
        for (const Monomial& t : enumerate(n, vars)) {
            Poly p = phi_total(Poly(t), {x, y});
            CHECK(solve_linear(a, coordinates(p, n, vars)).has_value());
        }
    }
}

TEST_CASE("multidegree (2,1) primitives from associators and the bracket") {
    Poly px(xm), py(ym);
    std::vector<Poly> basis{associator(px, px, py), associator(px, py, px),
                            associator(py, px, px),
                            commutator(px, commutator(px, py))};
    for (const Poly& p : basis) {
        CHECK(is_primitive(p));
        CHECK(derive(p, x).is_zero());
        CHECK(derive(p, y).is_zero());
    }
    Matrix a = coordinate_matrix(basis, 3, {x, y});
    CHECK(rank(a) == 4);

    // they span the multidegree-(2,1) slice of the two-variable constants
    std::vector<Poly> slice;
    for (const Monomial& s : gamma_two_var(3)) {
        auto w = foliage(s);
        int xs = 0;
        for (Variable v : w) xs += v == x ? 1 : 0;
        if (xs == 2) slice.push_back(phi_total(Poly(s), {x, y}));
    }
    REQUIRE(slice.size() == 4);
    for (const Poly& p : slice) CHECK(solve_linear(a, coordinates(p, 3, {x, y})).has_value());
}
