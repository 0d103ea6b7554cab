#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/expr_parse.hpp"
#include "core/trig.hpp"
#include "support/oracles.hpp"

using namespace diracred;

namespace {

ChartPtr chart_xyz() { return make_chart("R3", {"x", "y", "z"}); }

Poly random_poly(const ChartPtr& c, oracles::Rng& rng, int max_deg, int max_terms) {
    Poly p(c);
    int nt = rng.integer(1, max_terms);
    for (int t = 0; t < nt; ++t) {
        Mono m(c->dim(), 0);
        int deg = rng.integer(0, max_deg);
        for (int d = 0; d < deg; ++d) m[(std::size_t)rng.integer(0, (int)c->dim() - 1)] += 1;
        p.add_term(m, rng.rat());
    }
    return p;
}

RatFn random_ratfn(const ChartPtr& c, oracles::Rng& rng, int den_deg = 2) {
    Poly num = random_poly(c, rng, 2, 3);
    Poly den(c);
    do {
        den = random_poly(c, rng, den_deg, 2);
    } while (den.is_zero());
    return RatFn(num, den);
}

} // namespace

TEST_CASE("parse: determinant polynomial of the six-coordinate chart") {
    auto c = make_chart("R6", {"x1", "y1", "z1", "x2", "y2", "z2"});
    RatFn d = parse_expr("x1*y2 - y1*x2", c);
    CHECK(d.is_polynomial());
    CHECK(d.to_string() == "x1*y2 - y1*x2");
}

TEST_CASE("parse: zero literal and cancellation to a polynomial") {
    auto c = make_chart("R1", {"x"});
    CHECK(parse_expr("0", c).is_zero());

    // (x^2 - 1)/(x - 1) reduces to x + 1; oracle: multiply back
    RatFn f = parse_expr("(x^2 - 1)/(x - 1)", c);
    CHECK(f.is_polynomial());
    RatFn back = f * parse_expr("x - 1", c);
    CHECK(back == parse_expr("x^2 - 1", c));
    CHECK(f == parse_expr("x + 1", c));
}

TEST_CASE("parse: errors carry positions and kinds") {
    auto c = chart_xyz();
    CHECK_THROWS_WITH_AS(parse_expr("x + w", c), doctest::Contains("'w'"), Error);
    try {
        parse_expr("x + ", c);
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(e.position() >= 0);
    }
    try {
        parse_expr("x / (y - y)", c);
        FAIL("expected DivisionByZeroPolynomial");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivisionByZeroPolynomial);
    }
}

TEST_CASE("parse/print round-trip on random expressions") {
    auto c = chart_xyz();
    oracles::Rng rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        // single-term multivariate denominators exercise the factor
        // parenthesization rules
        RatFn f = random_ratfn(c, rng, i % 3 == 0 ? 3 : 1);
        RatFn g = parse_expr(f.to_string(), c);
        CHECK(f == g);
    }
}

TEST_CASE("ring laws on random values") {
    auto c = chart_xyz();
    oracles::Rng rng(7);
    for (int i = 0; i < 80; ++i) {
        RatFn a = random_ratfn(c, rng), b = random_ratfn(c, rng), d = random_ratfn(c, rng);
        CHECK((a + b) + d == a + (b + d));
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * (b + d) == a * b + a * d);
        CHECK(a + RatFn(c) == a);
        CHECK(a * RatFn::constant(c, Rat(1)) == a);
        CHECK(a - a == RatFn(c));
    }
}

TEST_CASE("substitute: rotation invariance of x^2 + y^2") {
    auto c = make_chart("R2", {"x", "y"});
    std::vector<AngleSpec> th{{"t", AngleSpec::FullTurn}};
    Poly f = parse_expr("x^2 + y^2", c).as_polynomial();

    TrigPoly ct = TrigPoly::cos_of(c, th, 0), st = TrigPoly::sin_of(c, th, 0);
    TrigPoly x = TrigPoly::from_poly(th, Poly::coordinate(c, 0));
    TrigPoly y = TrigPoly::from_poly(th, Poly::coordinate(c, 1));
    std::vector<TrigPoly> bind{x * ct - y * st, x * st + y * ct};
    TrigPoly composed = poly_substitute_trig(f, bind);
    CHECK(composed == TrigPoly::from_poly(th, f)); // cos^2 + sin^2 collapses
}

TEST_CASE("substitute: identity and chart composition") {
    auto c = chart_xyz();
    RatFn f = parse_expr("z", c);
    std::vector<RatFn> identity{RatFn::coordinate(c, 0), RatFn::coordinate(c, 1),
                                RatFn::coordinate(c, 2)};
    CHECK(f.substitute(c, identity) == f);

    // stratum-chart style composition: f2 = (sigma^2 + delta^2)/f1
    auto q = make_chart("quot", {"f1", "f2", "delta", "sigma"});
    auto params = make_chart("psi1", {"f1", "delta", "sigma"});
    RatFn f2 = parse_expr("f2", q);
    std::vector<RatFn> emb{parse_expr("f1", params), parse_expr("(sigma^2 + delta^2)/f1", params),
                           parse_expr("delta", params), parse_expr("sigma", params)};
    CHECK(f2.substitute(params, emb) == parse_expr("(sigma^2 + delta^2)/f1", params));
}

TEST_CASE("substitute: zero denominator after substitution is reported") {
    auto c = make_chart("R2", {"x", "y"});
    RatFn f = parse_expr("1/(x - y)", c);
    std::vector<RatFn> diag{RatFn::coordinate(c, 0), RatFn::coordinate(c, 0)};
    CHECK_THROWS_AS((void)f.substitute(c, diag), Error);
}

TEST_CASE("partial derivatives: trivial and quotient rule") {
    auto c = chart_xyz();
    CHECK(parse_expr("x^2 + y^2", c).derivative(0) == parse_expr("2*x", c));
    CHECK(parse_expr("7", c).derivative(0).is_zero());

    RatFn q = parse_expr("x/y", c);
    RatFn dq = q.derivative(1);
    CHECK(dq == parse_expr("-x/y^2", c));

    // quotient-rule oracle: numeric central differences at sample points
    oracles::Rng rng(99);
    for (int i = 0; i < 20; ++i) {
        RatFn f = random_ratfn(c, rng);
        RatFn df = f.derivative(2);
        std::vector<Rat> p{rng.rat(), rng.rat(), rng.rat()};
        if (f.denominator_vanishes_at(p)) continue;
        double h = 1e-6;
        std::vector<double> pd{rat_to_double(p[0]), rat_to_double(p[1]), rat_to_double(p[2])};
        auto eval_d = [&](double dz) {
            std::vector<Rat> pp = p;
            double nd = rat_to_double(f.num().eval(pp));
            (void)nd;
            // evaluate numerically through doubles on the shifted point
            double num = 0, den = 0;
            for (const auto& [m, cc] : f.num().terms()) {
                double t = rat_to_double(cc);
                double xs[3] = {pd[0], pd[1], pd[2] + dz};
                for (int v = 0; v < 3; ++v)
                    for (int e = 0; e < m[(std::size_t)v]; ++e) t *= xs[v];
                num += t;
            }
            for (const auto& [m, cc] : f.den().terms()) {
                double t = rat_to_double(cc);
                double xs[3] = {pd[0], pd[1], pd[2] + dz};
                for (int v = 0; v < 3; ++v)
                    for (int e = 0; e < m[(std::size_t)v]; ++e) t *= xs[v];
                den += t;
            }
            return num / den;
        };
        if (std::abs(rat_to_double(f.den().eval(p))) < 0.2) continue; // stay away from poles
        double numeric = (eval_d(h) - eval_d(-h)) / (2 * h);
        if (df.denominator_vanishes_at(p)) continue;
        double exact = rat_to_double(df.eval(p));
        CHECK(std::abs(numeric - exact) < 1e-4 * (1 + std::abs(exact)));
    }
}

TEST_CASE("derivative by coordinate name") {
    auto c = chart_xyz();
    CHECK(parse_expr("x*z", c).derivative("z") == parse_expr("x", c));
    try {
        (void)parse_expr("x", c).derivative("w");
        FAIL("expected UnknownCoordinate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownCoordinate);
    }
}

TEST_CASE("integrals that stay irrational are refused, not approximated") {
    auto c = make_chart("scalar", std::vector<std::string>{});
    std::vector<AngleSpec> th{{"t", AngleSpec::FullTurn}};
    TrigPoly weight = TrigPoly::pi_power(c, th, -1, Rat(1, 2));
    // integrand pi * 1 integrates to pi, which has no rational value
    TrigPoly f = TrigPoly::pi_power(c, th, 1, Rat(1));
    try {
        (void)trig_integrate(f, weight);
        FAIL("expected NonRationalIntegral");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonRationalIntegral);
    }
}

TEST_CASE("chain rule relates substitution and derivative") {
    auto c = make_chart("R2", {"x", "y"});
    oracles::Rng rng(3);
    std::vector<RatFn> b{parse_expr("x*y", c), parse_expr("x + y^2", c)};
    for (int i = 0; i < 30; ++i) {
        RatFn f = RatFn(random_poly(c, rng, 3, 4));
        // d/dx (f o b) = (df/dx o b) bx_x + (df/dy o b) by_x
        RatFn lhs = f.substitute(c, b).derivative(0);
        RatFn rhs = f.derivative(0).substitute(c, b) * b[0].derivative(0) +
                    f.derivative(1).substitute(c, b) * b[1].derivative(0);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("trig_integrate: Fourier orthogonality basics") {
    auto c = make_chart("scalar", std::vector<std::string>{});
    std::vector<AngleSpec> th{{"t", AngleSpec::FullTurn}};
    TrigPoly weight = TrigPoly::pi_power(c, th, -1, Rat(1, 2)); // 1/(2 pi)

    TrigPoly cos2 = TrigPoly::cos_of(c, th, 0) * TrigPoly::cos_of(c, th, 0);
    Poly v = trig_integrate(cos2, weight);
    CHECK(v.is_constant());
    CHECK(v.constant_value() == Rat(1, 2));

    TrigPoly cs = TrigPoly::cos_of(c, th, 0) * TrigPoly::sin_of(c, th, 0);
    CHECK(trig_integrate(cs, weight).is_zero());
}

TEST_CASE("trig_integrate: averaged square of a rotated coordinate") {
    auto c = make_chart("R2", {"x", "y"});
    std::vector<AngleSpec> th{{"t", AngleSpec::FullTurn}};
    TrigPoly weight = TrigPoly::pi_power(c, th, -1, Rat(1, 2));
    TrigPoly ct = TrigPoly::cos_of(c, th, 0), st = TrigPoly::sin_of(c, th, 0);
    TrigPoly x = TrigPoly::from_poly(th, Poly::coordinate(c, 0));
    TrigPoly y = TrigPoly::from_poly(th, Poly::coordinate(c, 1));
    TrigPoly rotated = x * ct - y * st;
    Poly v = trig_integrate(rotated * rotated, weight);
    CHECK(RatFn(v) == parse_expr("(x^2 + y^2)/2", c));
}

TEST_CASE("trig_integrate: Euler-angle domain with the SO(3) Haar weight") {
    auto c = make_chart("scalar", std::vector<std::string>{});
    std::vector<AngleSpec> euler{{"alpha", AngleSpec::FullTurn},
                                 {"beta", AngleSpec::HalfTurn},
                                 {"gamma", AngleSpec::FullTurn}};
    TrigPoly weight =
        TrigPoly::sin_of(c, euler, 1) * TrigPoly::pi_power(c, euler, -2, Rat(1, 8));
    // int cos^2(beta) sin(beta) dbeta / int sin(beta) dbeta = 1/3
    TrigPoly cos2 = TrigPoly::cos_of(c, euler, 1) * TrigPoly::cos_of(c, euler, 1);
    Poly v = trig_integrate(cos2, weight);
    CHECK(v.is_constant());
    CHECK(v.constant_value() == Rat(1, 3));
    // odd harmonics in alpha kill the term
    CHECK(trig_integrate(TrigPoly::cos_of(c, euler, 0) * cos2, weight).is_zero());
}

TEST_CASE("trig_integrate: non-normalized weight is rejected") {
    auto c = make_chart("scalar", std::vector<std::string>{});
    std::vector<AngleSpec> th{{"t", AngleSpec::FullTurn}};
    TrigPoly bad = TrigPoly::constant(c, th, Rat(1)); // integrates to 2 pi
    CHECK_THROWS_AS((void)trig_integrate(TrigPoly::cos_of(c, th, 0), bad), Error);
}

TEST_CASE("trig_integrate agrees with composite Simpson on random trig polys") {
    auto c = make_chart("scalar", std::vector<std::string>{});
    oracles::Rng rng(20240812);
    for (int trial = 0; trial < 100; ++trial) {
        int n_angles = rng.integer(1, 2);
        std::vector<AngleSpec> th;
        for (int i = 0; i < n_angles; ++i)
            th.push_back({"t" + std::to_string(i), AngleSpec::FullTurn});

        TrigPoly f(c, th);
        int terms = rng.integer(1, 6);
        for (int t = 0; t < terms; ++t) {
            TrigPoly term = TrigPoly::constant(c, th, rng.rat());
            int deg_budget = 8;
            for (int i = 0; i < n_angles; ++i) {
                int k = rng.integer(0, std::min(4, deg_budget));
                deg_budget -= k;
                if (k == 0) continue;
                term = term * (rng.integer(0, 1) ? TrigPoly::sin_of(c, th, (std::size_t)i, k)
                                                 : TrigPoly::cos_of(c, th, (std::size_t)i, k));
            }
            f += term;
        }

        Rat w(1);
        for (int i = 0; i < n_angles; ++i) w /= 2;
        TrigPoly weight = TrigPoly::pi_power(c, th, -n_angles, w);
        Poly exact = trig_integrate(f, weight);

        // simpson per separable term would peek at the structure; integrate
        // the full function on a grid instead (Simpson on full periods is
        // exact for harmonics below half the panel count)
        double numeric = 0.0;
        const int N = 256;
        if (n_angles == 1) {
            numeric = oracles::simpson(
                [&](double a) { return f.eval_double({a}, {}) / (2 * M_PI); }, 0, 2 * M_PI, N);
        } else {
            numeric = oracles::simpson(
                [&](double a) {
                    return oracles::simpson(
                               [&](double b) {
                                   return f.eval_double({a, b}, {}) / (4 * M_PI * M_PI);
                               },
                               0, 2 * M_PI, N) ;
                },
                0, 2 * M_PI, N);
        }
        CHECK(std::abs(rat_to_double(exact.constant_value()) - numeric) < 1e-9);
    }
}

TEST_CASE("poly gcd backs eager reduction") {
    auto c = make_chart("R2", {"x", "y"});
    Poly a = parse_expr("(x + y)^2 * (x - y)", c).as_polynomial();
    Poly b = parse_expr("(x + y) * (x + 2*y)", c).as_polynomial();
    Poly g = poly_gcd(a, b);
    CHECK(g == parse_expr("x + y", c).as_polynomial());

    oracles::Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        Poly p = random_poly(c, rng, 2, 3);
        Poly q = random_poly(c, rng, 2, 3);
        Poly r = random_poly(c, rng, 1, 2);
        if (p.is_zero() || q.is_zero() || r.is_zero()) continue;
        Poly g2 = poly_gcd(p * r, q * r);
        // r divides the gcd
        CHECK(poly_divide_exact(g2, poly_gcd(g2, r)).has_value());
        CHECK(poly_divide_exact(g2, r).has_value());
        // and the gcd divides both products
        CHECK(poly_divide_exact(p * r, g2).has_value());
        CHECK(poly_divide_exact(q * r, g2).has_value());
    }
}
