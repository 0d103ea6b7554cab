#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/distribution.hpp"
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

std::vector<Rat> pt(std::vector<long> xs) {
    std::vector<Rat> p;
    for (long v : xs) p.emplace_back(v);
    return p;
}

Distribution random_distribution(const ChartPtr& c, oracles::Rng& rng, int n_gens) {
    std::vector<Section> gens;
    for (int g = 0; g < n_gens; ++g) {
        std::vector<RatFn> xs, as;
        for (std::size_t i = 0; i < c->dim(); ++i) {
            Poly p(c);
            int nt = rng.integer(0, 2);
            for (int t = 0; t < nt; ++t) {
                Mono m(c->dim(), 0);
                int deg = rng.integer(0, 1);
                for (int d = 0; d < deg; ++d) m[(std::size_t)rng.integer(0, (int)c->dim() - 1)] += 1;
                p.add_term(m, rng.rat(-3, 3, 2));
            }
            xs.emplace_back(p);
        }
        for (std::size_t i = 0; i < c->dim(); ++i) {
            Poly p(c);
            int nt = rng.integer(0, 2);
            for (int t = 0; t < nt; ++t) {
                Mono m(c->dim(), 0);
                int deg = rng.integer(0, 1);
                for (int d = 0; d < deg; ++d) m[(std::size_t)rng.integer(0, (int)c->dim() - 1)] += 1;
                p.add_term(m, rng.rat(-3, 3, 2));
            }
            as.emplace_back(p);
        }
        gens.emplace_back(VectorField(c, xs), OneForm(c, as));
    }
    return Distribution::pontryagin(c, gens);
}

} // namespace

TEST_CASE("eval_at: vertical distribution of the circle action on R^3") {
    auto c = chart3();
    Distribution v = Distribution::tangent(c, {vf(c, {"y", "-x", "0"})});
    CHECK(eval_at(v, pt({0, 0, 1})).rank() == 0); // z-axis: generator vanishes
    auto s = eval_at(v, pt({1, 0, 0}));
    CHECK(s.rank() == 1);
    CHECK(s.contains({Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0)}));

    Distribution empty = Distribution::tangent(c, {});
    CHECK(eval_at(empty, pt({5, 7, 1})).rank() == 0);
}

TEST_CASE("eval_at: denominator vanishing names the generator") {
    auto c = chart2();
    Distribution d = Distribution::tangent(c, {VectorField(c, {parse_expr("1/x", c), RatFn(c)})});
    CHECK_THROWS_AS((void)eval_at(d, pt({0, 1})), Error);
}

TEST_CASE("pointwise orthogonal: gaussian elimination oracle on R^2") {
    auto c = chart2();
    Distribution d = Distribution::tangent(c, {vf(c, {"1", "0"})});
    auto o = pointwise_orthogonal_at(d, pt({3, 4}));
    // spec example: 3-dim space {(v, beta) : beta_x = 0}
    CHECK(o.rank() == 3);
    // independent oracle: kernel of the pairing row (0,0,1,0)
    auto ker = oracles::kernel({{Rat(0), Rat(0), Rat(1), Rat(0)}}, 4);
    CHECK(oracles::span_equal(ker, o.basis));

    // full Pontryagin fiber -> zero orthogonal
    Distribution full = Distribution::pontryagin(
        c, {Section(vf(c, {"1", "0"}), OneForm::zero(c)), Section(vf(c, {"0", "1"}), OneForm::zero(c)),
            Section(VectorField::zero(c), of(c, {"1", "0"})),
            Section(VectorField::zero(c), of(c, {"0", "1"}))});
    CHECK(pointwise_orthogonal_at(full, pt({1, 2})).rank() == 0);

    // zero distribution -> full fiber
    Distribution zero = Distribution::pontryagin(c, {});
    CHECK(pointwise_orthogonal_at(zero, pt({1, 2})).rank() == 4);
}

TEST_CASE("generic orthogonal: annihilator of a rotation field") {
    auto c = chart2();
    Distribution t = Distribution::tangent(c, {vf(c, {"-y", "x"})});
    Distribution o = generic_orthogonal(t);
    CHECK(o.generic_only);
    // the cotangent part of the orthogonal is spanned by x dx + y dy;
    // tangent directions are all present
    Section expected(VectorField::zero(c), of(c, {"x", "y"}));
    CHECK(is_member_generic(expected, o));
    CHECK(generic_rank(o) == 3);

    // full tangent -> annihilator {0}: orthogonal = TM (+) 0
    Distribution full_t = Distribution::tangent(c, {vf(c, {"1", "0"}), vf(c, {"0", "1"})});
    Distribution o2 = generic_orthogonal(full_t);
    for (const auto& g : o2.generators) CHECK(g.alpha.is_zero());
    CHECK(generic_rank(o2) == 2);
}

TEST_CASE("generic orthogonal: S1-on-R3 vertical annihilator is 2-dimensional over Q(x,y,z)") {
    auto c = chart3();
    Distribution v = Distribution::tangent(c, {vf(c, {"y", "-x", "0"})});
    Distribution o = generic_orthogonal(v);
    // cotangent part: kernel of (y, -x, 0) acting on covectors
    Distribution cot_part = Distribution::cotangent(c, {of(c, {"0", "0", "1"}), of(c, {"x", "y", "0"})});
    for (const auto& g : cot_part.generators) CHECK(is_member_generic(g, o));
    // tangent directions all present, so rank = 3 + 2
    CHECK(generic_rank(o) == 5);
}

TEST_CASE("membership: witnesses and rejections") {
    auto c = chart2();
    Distribution d = Distribution::tangent(c, {vf(c, {"x", "0"}), vf(c, {"0", "y"})});
    Section s(vf(c, {"x", "y"}), OneForm::zero(c));
    auto r = membership_generic(s, d);
    auto* w = std::get_if<MembershipWitness>(&r);
    REQUIRE(w != nullptr);
    CHECK(w->coefficients[0] == RatFn::constant(c, Rat(1)));
    CHECK(w->coefficients[1] == RatFn::constant(c, Rat(1)));

    auto c3 = chart3();
    Distribution dx = Distribution::tangent(c3, {vf(c3, {"1", "0", "0"})});
    Section sz(vf(c3, {"0", "0", "1"}), OneForm::zero(c3));
    auto r2 = membership_generic(sz, dx);
    auto* nm = std::get_if<NotMember>(&r2);
    REQUIRE(nm != nullptr);
    CHECK(!nm->residual.is_zero());
}

TEST_CASE("involution: pointwise orthogonal applied twice returns the fiber") {
    auto c = chart3();
    oracles::Rng rng(20240814);
    int done = 0;
    while (done < 100) {
        Distribution d = random_distribution(c, rng, rng.integer(1, 4));
        std::vector<Rat> p{rng.rat(), rng.rat(), rng.rat()};
        try {
            auto fiber = eval_at(d, p);
            auto orth = pointwise_orthogonal_at(d, p);
            // double orthogonal via the independent oracle
            std::vector<std::vector<Rat>> rows;
            for (const auto& v : orth.basis) {
                std::vector<Rat> row(6);
                for (int i = 0; i < 3; ++i) {
                    row[(std::size_t)i] = v[(std::size_t)(3 + i)];
                    row[(std::size_t)(3 + i)] = v[(std::size_t)i];
                }
                rows.push_back(row);
            }
            auto dbl = rows.empty() ? oracles::kernel({}, 6) : oracles::kernel(rows, 6);
            CHECK(oracles::span_equal(dbl, fiber.basis));
            // rank + orthogonal rank = fiber dimension
            CHECK(fiber.rank() + orth.rank() == 6);
            ++done;
        } catch (const Error&) {
            // denominator vanished at the sample; resample
        }
    }
}

TEST_CASE("containment: generic orthogonal evaluates inside the pointwise orthogonal") {
    auto c = chart3();
    oracles::Rng rng(31);
    int done = 0;
    while (done < 40) {
        Distribution d = random_distribution(c, rng, rng.integer(1, 3));
        Distribution o = generic_orthogonal(d);
        std::vector<Rat> p{rng.rat(), rng.rat(), rng.rat()};
        try {
            auto generic_at = eval_at(o, p);
            auto pointwise = pointwise_orthogonal_at(d, p);
            CHECK(oracles::span_contains(pointwise.basis, generic_at.basis));
            ++done;
        } catch (const Error&) {
        }
    }
}

TEST_CASE("fraction-field solver: constructed solutions and kernels check out") {
    auto c = chart2();
    oracles::Rng rng(20240823);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t rows = (std::size_t)rng.integer(2, 4);
        std::size_t cols = (std::size_t)rng.integer(1, 4);
        std::vector<std::vector<RatFn>> m(rows, std::vector<RatFn>(cols, RatFn(c)));
        for (auto& row : m)
            for (auto& e : row) {
                Poly p(c);
                int nt = rng.integer(0, 2);
                for (int t = 0; t < nt; ++t) {
                    Mono mo(2, 0);
                    int deg = rng.integer(0, 1);
                    for (int d = 0; d < deg; ++d) mo[(std::size_t)rng.integer(0, 1)] += 1;
                    p.add_term(mo, rng.rat(-3, 3, 2));
                }
                e = RatFn(p);
            }
        FMat M = FMat::from_rows(m);

        // b := M x for a random x must be solvable and the solution must
        // reproduce b exactly
        std::vector<RatFn> x(cols, RatFn(c));
        for (auto& xi : x) xi = RatFn(Poly::constant(c, rng.rat()));
        std::vector<RatFn> b(rows, RatFn(c));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) b[i] += m[i][j] * x[j];
        auto sol = M.solve(b);
        REQUIRE(sol.has_value());
        for (std::size_t i = 0; i < rows; ++i) {
            RatFn acc(c);
            for (std::size_t j = 0; j < cols; ++j) acc += m[i][j] * (*sol)[j];
            CHECK(acc == b[i]);
        }

        // kernel vectors annihilate the matrix and count the nullity
        auto ker = M.kernel();
        CHECK(ker.size() == cols - M.rank());
        for (const auto& k : ker)
            for (std::size_t i = 0; i < rows; ++i) {
                RatFn acc(c);
                for (std::size_t j = 0; j < cols; ++j) acc += m[i][j] * k[j];
                CHECK(acc.is_zero());
            }
    }
}

TEST_CASE("membership holds for every generator") {
    auto c = chart2();
    oracles::Rng rng(57);
    for (int i = 0; i < 20; ++i) {
        Distribution d = random_distribution(c, rng, rng.integer(1, 3));
        for (const auto& g : d.generators) CHECK(is_member_generic(g, d));
    }
}

TEST_CASE("intersection report: transverse constant-rank pair") {
    auto c = chart2();
    Distribution d1 = Distribution::pontryagin(c, {Section(vf(c, {"1", "0"}), OneForm::zero(c))});
    Distribution d2 = Distribution::pontryagin(c, {Section(VectorField::zero(c), of(c, {"1", "0"}))});
    auto rep = intersection_report(d1, d2, {pt({0, 0}), pt({1, 2}), pt({-3, 5})});
    CHECK(rep.consistent);
    CHECK(rep.smooth_proxy);
    CHECK(rep.sum_orthogonal);
    CHECK(rep.double_orthogonal);
    CHECK(rep.constant_rank);
    for (auto r : rep.intersection_ranks) CHECK(r == 2);
}

TEST_CASE("intersection report: equal full-fiber inputs are trivially consistent") {
    auto c = chart2();
    Distribution full = Distribution::pontryagin(
        c, {Section(vf(c, {"1", "0"}), OneForm::zero(c)), Section(vf(c, {"0", "1"}), OneForm::zero(c)),
            Section(VectorField::zero(c), of(c, {"1", "0"})),
            Section(VectorField::zero(c), of(c, {"0", "1"}))});
    auto rep = intersection_report(full, full, {pt({0, 0}), pt({2, 3})});
    CHECK(rep.consistent);
    CHECK(rep.smooth_proxy);
}

TEST_CASE("intersection report: rank-varying input is rejected") {
    auto c = chart2();
    Distribution d1 = Distribution::tangent(c, {vf(c, {"1", "0"})});
    Distribution bad = Distribution::tangent(c, {vf(c, {"x", "0"})}); // rank drops at x = 0
    CHECK_THROWS_AS((void)intersection_report(d1, bad, {pt({0, 0}), pt({1, 0})}), Error);

    // spec's third example with both spanning fields evaluated at x=0 and x=1:
    // span{d/dx} + span{x d/dx + d/dy} has constant rank 2 at the samples
    Distribution d2 = Distribution::tangent(c, {vf(c, {"x", "1"})});
    auto rep = intersection_report(d1, d2, {pt({0, 0}), pt({1, 0})});
    CHECK(rep.consistent);
    CHECK(rep.constant_rank);
}
