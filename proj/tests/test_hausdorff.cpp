#include <catch2/catch_amalgamated.hpp>

#include "freemagma/calculus.hpp"
#include "freemagma/hausdorff.hpp"
#include "freemagma/hopf.hpp"
#include "test_util.hpp"

using namespace freemagma;

namespace {
const Variable x{1};
const Variable y{2};
const Monomial xm = Monomial::leaf(x);
const Monomial ym = Monomial::leaf(y);
}  // namespace

TEST_CASE("exp coefficients: base values and the defining identities") {
    ExpTable exp(8);
    CHECK(exp.coeff(xm) == 1);
    CHECK(exp.coeff(xm * xm) == Rat(1, 2));
    CHECK(exp.coeff(xm * (xm * xm)) == Rat(1, 12));
    CHECK(exp.coeff((xm * xm) * xm) == Rat(1, 12));

    // exp(x) exp(x) = exp(2x) componentwise
    Series e = exp.series(x, 8);
    Series e2(8);
    e2.set_component(0, Poly::one());
    for (const auto& [t, a] : exp.table()) {
        Poly comp = e2.component(t.degree());
        comp.add_term(Basis(t), a * Rat(BigInt(1) << t.degree()));
        e2.set_component(t.degree(), std::move(comp));
    }
    CHECK(e * e == e2);

    // exp'(x) = exp(x): D drops each degree by one
    Poly trunc = e.truncated_poly();
    Poly expect;
    for (int n = 0; n <= 7; ++n) expect += e.component(n);
    CHECK(derive(trunc, x) == expect);

    // (2^n - 2) f_n = sum_{0<i<n} f_i f_{n-i} determines the components
    std::vector<Poly> f(9);
    f[1] = Poly(xm);
    for (int n = 2; n <= 8; ++n) {
        Poly sum;
        for (int i = 1; i < n; ++i) sum += f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(n - i)];
        f[static_cast<std::size_t>(n)] = sum * Rat(BigInt(1), (BigInt(1) << n) - 2);
        CHECK(f[static_cast<std::size_t>(n)] == e.component(n));
    }
}

TEST_CASE("log is the composition inverse of exp - 1") {
    CoeffTable log = log_coeffs(6);
    CHECK(log.at(xm) == 1);
    CHECK(log.at(xm * xm) == Rat(-1, 2));

    ExpTable exp(6);
    Series logs(6);
    for (const auto& [t, b] : log) {
        Poly comp = logs.component(t.degree());
        comp.add_term(Basis(t), b);
        logs.set_component(t.degree(), std::move(comp));
    }
    Series composed = compose(exp.table(), logs);
    Series identity(6);
    identity.set_component(1, Poly(xm));
    CHECK(composed == identity);

    // and the other way around
    Series em1 = exp.series(x, 6);
    em1.set_component(0, Poly::zero());
    CHECK(compose(log, em1) == identity);
}

TEST_CASE("d coefficients match exp(x)exp(y)") {
    ExpTable exp(6);
    CHECK(d_coeff(xm * ym, exp) == 1);
    CHECK(d_coeff(ym * xm, exp) == 0);
    CHECK(d_coeff(xm * (ym * ym), exp) == Rat(1, 2));

    Series prod = exp.series(x, 6) * exp.series(y, 6);
    for (int n = 1; n <= 6; ++n)
        for (const Monomial& tau : enumerate(n, {x, y}))
            CHECK(d_coeff(tau, exp) == prod.component(n).coeff(Basis(tau)));
}

TEST_CASE("Hausdorff coefficients: golden values and vanishing") {
    HausdorffTable h(6);
    CHECK(h.coeff(xm * ym) == Rat(1, 2));
    CHECK(h.coeff(ym * xm) == Rat(-1, 2));

    // c(tau) = 0 on pure powers of one variable beyond degree 1
    for (int n = 2; n <= 6; ++n) {
        for (const Monomial& tau : enumerate(n, {x})) CHECK(h.coeff(tau) == 0);
        for (const Monomial& tau : enumerate(n, {y})) CHECK(h.coeff(tau) == 0);
    }

    // c(x.t2) = (2^n-3)/(2^n-2) a(t2) for t2 in M(y)
    for (int m = 1; m <= 5; ++m)
        for (const Monomial& t2 : enumerate(m, {y})) {
            int n = m + 1;
            Rat denom = Rat(BigInt(1) << n) - 2;
            CHECK(h.coeff(xm * t2) == (denom - 1) / denom * h.exp_table().coeff(t2));
        }

    // boundary values of c_k
    Monomial tau = (xm * ym) * xm;
    CHECK(h.c_k(tau, 1) == h.coeff(tau));
    CHECK(h.c_k(tau, 3) == h.exp_table().coeff(underlying(tau)));
    CHECK(h.c_k(tau, 4) == 0);
}

TEST_CASE("H_1, H_2 and the explicit H_3") {
    HausdorffTable h(4);
    CHECK(h.component(1) == Poly(xm) + Poly(ym));
    CHECK(h.component(2) == Rat(1, 2) * (Poly(xm * ym) - Poly(ym * xm)));

    // Hand-checked coefficients of log(exp(x)exp(y)) in degree 3: the
    // composition b(x) Z_3 + b(x^2) z^2(Z,Z) + b(deg-3 trees) z(Z_1,Z_1,Z_1)
    // gives -1/2 + 1/6 on (xy)x and 1/6 on x(yx).
    CHECK(h.coeff((xm * ym) * xm) == Rat(-1, 3));
    CHECK(h.coeff(xm * (ym * xm)) == Rat(1, 6));

    Poly px(xm), py(ym);
    auto st = [](const Poly& f) { return star(f); };
    Poly xxy = commutator(px, commutator(px, py));
    Poly h3 = Rat(1, 12) * (xxy + st(xxy)) +
              Rat(1, 12) * (associator(py, px, px) + st(associator(py, px, px))) +
              Rat(5, 12) * (associator(px, px, py) + st(associator(px, px, py))) -
              Rat(1, 4) * (associator(px, py, px) + st(associator(px, py, px)));
    CHECK(h.component(3) == h3);
}

TEST_CASE("recursion agrees with composition and the components are primitive") {
    const int cap = 6;
    HausdorffTable h(cap);
    Series composed = hausdorff_by_composition(cap);
    for (int n = 1; n <= cap; ++n) CHECK(composed.component(n) == h.component(n));

    for (int n = 1; n <= 5; ++n) CHECK(is_primitive(h.component(n)));
}

TEST_CASE("star is the product-reversing involution fixing H") {
    // fixed points and images of small products
    CHECK(star(xm * ym) == xm * ym);
    CHECK(star(ym * xm) == ym * xm);
    CHECK(star(xm * (xm * ym)) == (xm * ym) * ym);
    CHECK(star(star(xm * (ym * xm))) == xm * (ym * xm));

    // (f g)* = g* f* on polynomials
    Poly f = Poly(xm * ym) + Rat(2) * Poly(ym);
    Poly g = Poly(xm) - Poly(ym * ym);
    CHECK(star(f * g) == star(g) * star(f));

    // the starred basis of the multidegree-(1,2) constants from the
    // multidegree-(2,1) one
    Poly px(xm), py(ym);
    CHECK(star(associator(px, px, py)) == -associator(px, py, py));
    CHECK(star(associator(px, py, px)) == -associator(py, px, py));
    CHECK(star(associator(py, px, px)) == -associator(py, py, px));
    CHECK(star(commutator(px, commutator(px, py))) ==
          -commutator(py, commutator(px, py)));

    ExpTable exp(6);
    Series ex = exp.series(x, 6), ey = exp.series(y, 6);
    for (int n = 0; n <= 6; ++n) CHECK(star(ex.component(n)) == ey.component(n));

    HausdorffTable h(6);
    for (int n = 1; n <= 6; ++n) {
        Poly hn = h.component(n);
        CHECK(star(hn) == hn);
    }
}

TEST_CASE("Delta splits the exponential") {
    // e^{x(x)1 + 1(x)x} = e^x (x) e^x, truncated by total degree
    const int cap = 5;
    ExpTable exp(cap);
    TensorPoly g = tensor(Poly(xm), Poly::one()) + tensor(Poly::one(), Poly(xm));
    std::map<Monomial, TensorPoly> memo;
    auto eval = [&](auto&& self, const Monomial& t) -> const TensorPoly& {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        TensorPoly v = t.is_leaf() ? g : (self(self, t.left()) * self(self, t.right())).truncated(cap);
        return memo.emplace(t, std::move(v)).first->second;
    };
    TensorPoly lhs = tensor(Poly::one(), Poly::one());
    for (const auto& [t, a] : exp.table()) lhs += a * eval(eval, t);
    lhs = lhs.truncated(cap);

    Poly ex = exp.series(x, cap).truncated_poly();
    TensorPoly rhs = tensor(ex, ex).truncated(cap);
    CHECK(lhs == rhs);

    // Delta(e^x e^y) = (e^x e^y) (x) (e^x e^y), truncated at cap 5
    Series prod = exp.series(x, cap) * exp.series(y, cap);
    Poly zp = prod.truncated_poly();
    CHECK(delta(zp).truncated(cap) == tensor(zp, zp).truncated(cap));
}
