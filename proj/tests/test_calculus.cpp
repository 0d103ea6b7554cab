#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/geometry.hpp"
#include "support/oracles.hpp"

using namespace diracred;

namespace {

ChartPtr chart2() { return make_chart("R2", {"x", "y"}); }
ChartPtr chart3() { return make_chart("R3", {"x", "y", "z"}); }

VectorField vf(const ChartPtr& c, std::vector<std::string> comps) {
    return VectorField::parse(c, comps);
}
OneForm of(const ChartPtr& c, std::vector<std::string> comps) {
    return OneForm::parse(c, comps);
}

VectorField random_linear_field(const ChartPtr& c, oracles::Rng& rng, int max_deg = 2) {
    std::vector<RatFn> comps;
    for (std::size_t i = 0; i < c->dim(); ++i) {
        Poly p(c);
        int nt = rng.integer(0, 2);
        for (int t = 0; t < nt; ++t) {
            Mono m(c->dim(), 0);
            int deg = rng.integer(0, max_deg);
            for (int d = 0; d < deg; ++d) m[(std::size_t)rng.integer(0, (int)c->dim() - 1)] += 1;
            p.add_term(m, rng.rat(-3, 3, 2));
        }
        comps.emplace_back(p);
    }
    return VectorField(c, comps);
}

} // namespace

TEST_CASE("pairing: constant examples") {
    auto c = chart2();
    Section s1(vf(c, {"1", "0"}), of(c, {"0", "1"}));  // (dx-direction, dy)
    Section s2(vf(c, {"0", "1"}), of(c, {"-1", "0"})); // (dy-direction, -dx)
    CHECK(pairing(s1, s2).is_zero());
    CHECK(pairing(s1, s1).is_zero());

    Section s3(vf(c, {"x", "0"}), of(c, {"1", "0"}));
    Section s4(vf(c, {"1", "0"}), of(c, {"0", "0"}));
    CHECK(pairing(s3, s4) == parse_expr("1", c));
}

TEST_CASE("pairing: symmetric and bilinear over functions") {
    auto c = chart3();
    oracles::Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        Section a(random_linear_field(c, rng), OneForm(c, random_linear_field(c, rng).components));
        Section b(random_linear_field(c, rng), OneForm(c, random_linear_field(c, rng).components));
        Section d(random_linear_field(c, rng), OneForm(c, random_linear_field(c, rng).components));
        RatFn f = RatFn(Poly::coordinate(c, 0)) + RatFn::constant(c, rng.rat());
        CHECK(pairing(a, b) == pairing(b, a));
        CHECK(pairing(f * a + d, b) == f * pairing(a, b) + pairing(d, b));
    }
}

TEST_CASE("lie bracket: examples") {
    auto c = chart2();
    CHECK(lie_bracket(vf(c, {"1", "0"}), vf(c, {"0", "1"})).is_zero());

    // [x d/dy, y d/dx] = x d/dx - y d/dy, by expanding X(Y^j) - Y(X^j)
    VectorField a = vf(c, {"0", "x"});
    VectorField b = vf(c, {"y", "0"});
    CHECK(lie_bracket(a, b) == vf(c, {"x", "-y"}));

    VectorField s = vf(c, {"x", "0"});
    CHECK(lie_bracket(s, s).is_zero());
}

TEST_CASE("lie bracket: Jacobi identity on 200 random triples") {
    auto c = chart3();
    oracles::Rng rng(20240813);
    for (int i = 0; i < 200; ++i) {
        VectorField a = random_linear_field(c, rng);
        VectorField b = random_linear_field(c, rng);
        VectorField d = random_linear_field(c, rng);
        VectorField jac = lie_bracket(a, lie_bracket(b, d)) + lie_bracket(b, lie_bracket(d, a)) +
                          lie_bracket(d, lie_bracket(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("exterior derivative: examples and d^2 = 0") {
    auto c = chart3();
    CHECK(exterior_derivative(parse_expr("x^2 + y^2", c), c) == of(c, {"2*x", "2*y", "0"}));

    TwoForm w = exterior_derivative(of(c, {"0", "x", "0"})); // d(x dy) = dx ^ dy
    CHECK(w.coeff[0][1] == parse_expr("1", c));
    CHECK(w.coeff[1][0] == parse_expr("-1", c));
    CHECK(w.coeff[0][2].is_zero());

    TwoForm dd = exterior_derivative(exterior_derivative(parse_expr("x^3*y", c), c));
    CHECK(dd.is_zero());
}

TEST_CASE("interior product: examples") {
    auto c = chart3();
    TwoForm w = exterior_derivative(of(c, {"0", "x", "0"})); // dx ^ dy
    CHECK(interior_product(vf(c, {"1", "0", "0"}), w) == of(c, {"0", "1", "0"}));
    CHECK(interior_product(vf(c, {"0", "0", "1"}), w).is_zero());
    CHECK(interior_product(vf(c, {"x", "0", "0"}), w) == of(c, {"0", "x", "0"}));
}

TEST_CASE("lie derivative of one-forms: Cartan identity checks") {
    auto c = chart2();
    CHECK(lie_derivative(vf(c, {"1", "0"}), of(c, {"0", "1"})).is_zero());
    // rotational invariance of x dx + y dy
    CHECK(lie_derivative(vf(c, {"y", "-x"}), of(c, {"x", "y"})).is_zero());

    // L_X(df) = d(X(f)) for X = x d/dy, f = x y
    VectorField x = vf(c, {"0", "x"});
    RatFn f = parse_expr("x*y", c);
    OneForm lhs = lie_derivative(x, exterior_derivative(f, c));
    OneForm rhs = exterior_derivative(x.apply(f), c);
    CHECK(lhs == rhs);
    CHECK(rhs == of(c, {"2*x", "0"}));
}

TEST_CASE("lie derivative commutes with d on random data") {
    auto c = chart3();
    oracles::Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        VectorField x = random_linear_field(c, rng);
        Poly f(c);
        for (int t = 0; t < 3; ++t) {
            Mono m(c->dim(), 0);
            int deg = rng.integer(0, 2);
            for (int d = 0; d < deg; ++d) m[(std::size_t)rng.integer(0, 2)] += 1;
            f.add_term(m, rng.rat(-3, 3, 2));
        }
        CHECK(lie_derivative(x, exterior_derivative(RatFn(f), c)) ==
              exterior_derivative(x.apply(RatFn(f)), c));
    }
}

TEST_CASE("courant bracket: constant sections") {
    auto c = chart2();
    Section s1(vf(c, {"1", "0"}), OneForm::zero(c));
    Section s2(vf(c, {"0", "1"}), OneForm::zero(c));
    CHECK(courant_bracket(s1, s2).is_zero());

    Section s3(VectorField::zero(c), of(c, {"0", "1"}));
    CHECK(courant_bracket(s1, s3).is_zero());
}

TEST_CASE("courant bracket: the psi1-chart identity [(X3,a3),(X4,a4)] = 2(X5,a5)") {
    auto c = make_chart("psi1", {"f1", "delta", "sigma", "z1", "z2"});
    Section s3(vf(c, {"0", "2*sigma", "-2*delta", "0", "0"}), of(c, {"1", "0", "0", "0", "0"}));
    Section s4(vf(c, {"-2*sigma", "0", "-(f1 + (sigma^2 + delta^2)/f1)", "0", "0"}),
               of(c, {"0", "1", "0", "0", "0"}));
    Section s5(vf(c, {"2*delta", "f1 + (sigma^2 + delta^2)/f1", "0", "0", "0"}),
               of(c, {"0", "0", "1", "0", "0"}));

    Section br34 = courant_bracket(s3, s4);
    CHECK(br34 == RatFn::constant(c, Rat(2)) * s5);

    Section br35 = courant_bracket(s3, s5);
    CHECK(br35 == RatFn::constant(c, Rat(-2)) * s4);
}

TEST_CASE("skew bracket: antisymmetry and relation to courant") {
    auto c = chart2();
    oracles::Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        Section s(random_linear_field(c, rng), OneForm(c, random_linear_field(c, rng).components));
        CHECK(skew_bracket(s, s).is_zero());
    }

    // skew = courant when the pairing vanishes identically
    Section a(vf(c, {"1", "0"}), of(c, {"0", "1"}));
    Section b(vf(c, {"0", "1"}), of(c, {"-1", "0"}));
    CHECK(pairing(a, b).is_zero());
    CHECK(skew_bracket(a, b) == courant_bracket(a, b));
    CHECK(courant_bracket(a, b).is_zero());

    // with pairing = 1 + x the brackets differ by -(1/2) d(1+x) = -(1/2) dx
    Section s1(vf(c, {"x", "0"}), of(c, {"1", "0"}));
    Section s2(vf(c, {"1", "0"}), of(c, {"1", "0"}));
    CHECK(pairing(s1, s2) == parse_expr("1 + x", c));
    Section diff = skew_bracket(s1, s2) - courant_bracket(s1, s2);
    CHECK(diff.x.is_zero());
    CHECK(diff.alpha == of(c, {"-1/2", "0"}));
}

TEST_CASE("courant bracket: non-skew Leibniz rule checked at random points") {
    auto c = chart2();
    oracles::Rng rng(23);
    for (int i = 0; i < 25; ++i) {
        Section s1(random_linear_field(c, rng), OneForm(c, random_linear_field(c, rng).components));
        Section s2(random_linear_field(c, rng), OneForm(c, random_linear_field(c, rng).components));
        RatFn f = RatFn(Poly::coordinate(c, 0) * Poly::coordinate(c, 1)) +
                  RatFn::constant(c, rng.rat());
        Section lhs = courant_bracket(s1, f * s2);
        Section rhs = f * courant_bracket(s1, s2) + s1.x.apply(f) * s2;
        std::vector<Rat> p{rng.rat(), rng.rat()};
        CHECK(lhs.fiber_at(p) == rhs.fiber_at(p));
    }
}
