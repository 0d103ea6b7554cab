#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/dirac.hpp"
#include "support/oracles.hpp"

using namespace diracred;

namespace {

ChartPtr chart3() { return make_chart("R3", {"x", "y", "z"}); }
ChartPtr chart6() { return make_chart("R3xR3", {"x1", "y1", "z1", "x2", "y2", "z2"}); }

VectorField vf(const ChartPtr& c, std::vector<std::string> comps) {
    return VectorField::parse(c, comps);
}
OneForm of(const ChartPtr& c, std::vector<std::string> comps) {
    return OneForm::parse(c, comps);
}

std::vector<std::vector<Rat>> samples3() {
    return {{Rat(1), Rat(0), Rat(0)}, {Rat(1, 2), Rat(-2), Rat(3)}, {Rat(0), Rat(0), Rat(1)}};
}

// D on R^3: span{(dx, dy), (dy, -dx), (dz, 0)} in field/form shorthand
DiracStructure s1r3_dirac() {
    auto c = chart3();
    std::vector<Section> gens{Section(vf(c, {"1", "0", "0"}), of(c, {"0", "1", "0"})),
                              Section(vf(c, {"0", "1", "0"}), of(c, {"-1", "0", "0"})),
                              Section(vf(c, {"0", "0", "1"}), of(c, {"0", "0", "0"}))};
    return DiracStructure(c, gens, samples3());
}

GroupAction s1_on_r3() {
    auto c = chart3();
    return GroupAction::circle(c, vf(c, {"-y", "x", "0"}));
}

// the six-generator structure of the S^1-on-R^6 example
DiracStructure s1r6_dirac(const ChartPtr& c) {
    std::vector<Section> gens{
        Section(vf(c, {"1", "0", "0", "0", "0", "0"}), of(c, {"0", "1", "0", "0", "0", "0"})),
        Section(vf(c, {"0", "1", "0", "0", "0", "0"}), of(c, {"-1", "0", "0", "0", "0", "0"})),
        Section(vf(c, {"0", "0", "1", "0", "0", "0"}), OneForm::zero(c)),
        Section(vf(c, {"0", "0", "0", "1", "0", "0"}), of(c, {"0", "0", "0", "0", "-1", "0"})),
        Section(vf(c, {"0", "0", "0", "0", "1", "0"}), of(c, {"0", "0", "0", "1", "0", "0"})),
        Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "0", "1"}))};
    return DiracStructure(c, gens, {});
}

} // namespace

TEST_CASE("new_dirac: the worked examples validate") {
    CHECK_NOTHROW((void)s1r3_dirac());
    CHECK_NOTHROW((void)s1r6_dirac(chart6()));
}

TEST_CASE("new_dirac: non-isotropic frames are rejected with the offending pair") {
    auto c = make_chart("R2", {"x", "y"});
    std::vector<Section> gens{Section(vf(c, {"1", "0"}), of(c, {"1", "0"})),
                              Section(vf(c, {"0", "1"}), OneForm::zero(c))};
    try {
        DiracStructure d(c, gens, {});
        FAIL("expected NotIsotropic");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotIsotropic);
        CHECK(std::string(e.what()).find("sigma_1") != std::string::npos);
    }
}

TEST_CASE("new_dirac: rank deficiency detected generically and at samples") {
    auto c = make_chart("R2", {"x", "y"});
    std::vector<Section> dup{Section(vf(c, {"1", "0"}), OneForm::zero(c)),
                             Section(vf(c, {"2", "0"}), OneForm::zero(c))};
    CHECK_THROWS_AS(DiracStructure(c, dup, {}), Error);

    // frame degenerating at the origin: rejected when the origin is a sample
    std::vector<Section> degen{Section(vf(c, {"x", "0"}), OneForm::zero(c)),
                               Section(VectorField::zero(c), of(c, {"0", "1"}))};
    CHECK_THROWS_AS(DiracStructure(c, degen, {{Rat(0), Rat(0)}}), Error);
    DiracStructure ok(c, degen, {{Rat(1), Rat(0)}});
    REQUIRE(ok.degeneracy_warning().has_value());
    CHECK(ok.degeneracy_warning()->degree_in(0) == 1); // locus x = 0
}

TEST_CASE("new_dirac: over-complete spanning sets are normalized by row reduction") {
    auto c = chart3();
    std::vector<Section> gens{Section(vf(c, {"1", "0", "0"}), of(c, {"0", "1", "0"})),
                              Section(vf(c, {"2", "0", "0"}), of(c, {"0", "2", "0"})),
                              Section(vf(c, {"0", "1", "0"}), of(c, {"-1", "0", "0"})),
                              Section(vf(c, {"0", "0", "1"}), OneForm::zero(c))};
    DiracStructure d(c, gens, samples3());
    CHECK(d.generators().size() == 3);
}

TEST_CASE("Lagrangian self-orthogonality at random points") {
    auto d = s1r3_dirac();
    Distribution dd = d.as_distribution();
    oracles::Rng rng(20240817);
    for (int i = 0; i < 50; ++i) {
        std::vector<Rat> p{rng.rat(), rng.rat(), rng.rat()};
        auto fiber = eval_at(dd, p);
        auto orth = pointwise_orthogonal_at(dd, p);
        CHECK(oracles::span_equal(fiber.basis, orth.basis));
    }
}

TEST_CASE("check_integrable: constant frames and a graph of a non-closed 2-form") {
    auto rep = check_integrable(s1r3_dirac());
    CHECK(rep.integrable);
    for (const auto& chk : rep.checks) CHECK(chk.bracket.is_zero());

    // D_B for B = y dx ^ dz: generators (dx, y dz), (dy, 0), (dz, -y dx)
    auto c = chart3();
    std::vector<Section> gens{Section(vf(c, {"1", "0", "0"}), of(c, {"0", "0", "y"})),
                              Section(vf(c, {"0", "1", "0"}), OneForm::zero(c)),
                              Section(vf(c, {"0", "0", "1"}), of(c, {"-y", "0", "0"}))};
    DiracStructure db(c, gens, samples3());
    auto rep2 = check_integrable(db);
    CHECK_FALSE(rep2.integrable);
    bool found_01 = false;
    for (const auto& chk : rep2.checks)
        if (!chk.member && chk.i == 0 && chk.j == 1) found_01 = true;
    CHECK(found_01);
}

TEST_CASE("integrable implies skew brackets stay inside generically") {
    auto d = s1r3_dirac();
    Distribution dd = d.as_distribution();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            Section sk = skew_bracket(d.generators()[i], d.generators()[j]);
            CHECK(is_member_generic(sk, dd));
        }
}

TEST_CASE("check_dirac_action: invariant and non-invariant cases") {
    auto rep = check_dirac_action(s1r3_dirac(), s1_on_r3());
    CHECK(rep.invariant);

    // a structure that is not preserved by the rotation: swap roles so that
    // L_xi of a generator leaves the span
    auto c = chart3();
    std::vector<Section> gens{Section(vf(c, {"1", "0", "0"}), of(c, {"0", "0", "0"})),
                              Section(VectorField::zero(c), of(c, {"0", "1", "0"})),
                              Section(vf(c, {"0", "0", "1"}), OneForm::zero(c))};
    DiracStructure d2(c, gens, samples3());
    auto rep2 = check_dirac_action(d2, s1_on_r3());
    CHECK_FALSE(rep2.invariant);
    bool has_residual = false;
    for (const auto& e : rep2.entries)
        if (!e.member && !e.residual.empty()) has_residual = true;
    CHECK(has_residual);
}

TEST_CASE("check_dirac_action: the SO(3) split structure is invariant") {
    auto c = chart6();
    std::vector<Section> gens{
        Section(vf(c, {"1", "0", "0", "0", "0", "0"}), OneForm::zero(c)),
        Section(vf(c, {"0", "1", "0", "0", "0", "0"}), OneForm::zero(c)),
        Section(vf(c, {"0", "0", "1", "0", "0", "0"}), OneForm::zero(c)),
        Section(VectorField::zero(c), of(c, {"0", "0", "0", "1", "0", "0"})),
        Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "1", "0"})),
        Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "0", "1"}))};
    DiracStructure d(c, gens, {});
    auto so3 = GroupAction::so3_diagonal(
        c, {vf(c, {"-y1", "x1", "0", "-y2", "x2", "0"}),
            vf(c, {"0", "-z1", "y1", "0", "-z2", "y2"}),
            vf(c, {"z1", "0", "-x1", "z2", "0", "-x2"})});
    CHECK(check_dirac_action(d, so3).invariant);
}

TEST_CASE("verify_descending: the S1-on-R3 descending frame") {
    auto d = s1r3_dirac();
    auto a = s1_on_r3();
    auto c = d.chart();
    auto f1 = parse_expr("x^2 + y^2", c).as_polynomial();

    std::vector<DescendingSection> cands;
    cands.push_back({Section(vf(c, {"y", "-x", "0"}), of(c, {"x", "y", "0"})),
                     OneFormPresentation{{{RatFn::constant(c, Rat(1, 2)), f1}}}});
    cands.push_back({Section(vf(c, {"0", "0", "1"}), OneForm::zero(c)), OneFormPresentation{}});
    // invariant section whose cotangent part does not annihilate the verticals
    cands.push_back({Section(vf(c, {"x", "y", "0"}), of(c, {"y", "-x", "0"})),
                     OneFormPresentation{}});
    // zero passes trivially
    cands.push_back({Section::zero(c), OneFormPresentation{}});

    auto ds = verify_descending(cands, d, a, samples3());
    CHECK_FALSE(ds.all_passed);
    REQUIRE(ds.checks.size() == 4);
    CHECK(ds.checks[0].pass());
    CHECK(ds.checks[1].pass());
    CHECK_FALSE(ds.checks[2].pass());
    CHECK_FALSE(ds.checks[2].annihilates_vertical);
    CHECK(ds.checks[3].pass());
    CHECK(ds.sections.size() == 3);
}

TEST_CASE("descending set closed under combinations with invariant coefficients") {
    auto d = s1r3_dirac();
    auto a = s1_on_r3();
    auto c = d.chart();
    auto f1 = parse_expr("x^2 + y^2", c).as_polynomial();
    std::vector<DescendingSection> cands;
    cands.push_back({Section(vf(c, {"y", "-x", "0"}), of(c, {"x", "y", "0"})),
                     OneFormPresentation{{{RatFn::constant(c, Rat(1, 2)), f1}}}});
    cands.push_back({Section(vf(c, {"0", "0", "1"}), OneForm::zero(c)), OneFormPresentation{}});
    auto ds = verify_descending(cands, d, a, samples3());
    REQUIRE(ds.sections.size() == 2);

    oracles::Rng rng(63);
    for (int i = 0; i < 10; ++i) {
        RatFn g = parse_expr("x^2 + y^2", c) * RatFn::constant(c, rng.rat()) +
                  RatFn::constant(c, rng.rat());
        Section combo = g * ds.sections[0].section + RatFn::constant(c, rng.rat()) * ds.sections[1].section;
        // membership and the descending conditions hold for the combination
        CHECK(is_member_generic(combo, d.as_distribution()));
        for (const auto& xi : a.fundamental_fields())
            CHECK(combo.alpha.apply(xi).is_zero());
        CHECK(a.is_descending(combo.x, samples3()));
    }
}

TEST_CASE("gauge distributions: G0, G1, P0, P1") {
    auto d = s1r3_dirac();
    auto c = d.chart();
    Distribution g0 = gauge_distribution(d);
    REQUIRE(g0.generators.size() == 1);
    CHECK(g0.generators[0].x == vf(c, {"0", "0", "1"}));

    Distribution g1 = g1_distribution(d);
    CHECK(generic_rank(g1) == 3);
    // the tangent projections are independent, so (0, a) in D forces a = 0
    Distribution p0 = p0_distribution(d);
    CHECK(p0.generators.empty());

    // graph of an invertible Poisson bivector on R^2: G0 = 0
    auto c2 = make_chart("R2", {"q", "p"});
    std::vector<Section> gr{Section(vf(c2, {"0", "-1"}), of(c2, {"1", "0"})),
                            Section(vf(c2, {"1", "0"}), of(c2, {"0", "1"}))};
    DiracStructure dg(c2, gr, {});
    CHECK(gauge_distribution(dg).generators.empty());

    // TM (+) 0 structure: G0 = full tangent
    std::vector<Section> tm{Section(vf(c2, {"1", "0"}), OneForm::zero(c2)),
                            Section(vf(c2, {"0", "1"}), OneForm::zero(c2))};
    DiracStructure dt(c2, tm, {});
    CHECK(gauge_distribution(dt).generators.size() == 2);
    // G0 subset G1 and P0 subset P1 pointwise
    oracles::Rng rng(77);
    for (int i = 0; i < 10; ++i) {
        std::vector<Rat> p{rng.rat(), rng.rat(), rng.rat()};
        auto g0v = eval_at(g0, p);
        auto g1v = eval_at(g1, p);
        CHECK(oracles::span_contains(g1v.basis, g0v.basis));
        auto p0v = eval_at(p0, p);
        auto p1v = eval_at(p1_distribution(d), p);
        CHECK(oracles::span_contains(p1v.basis, p0v.basis));
    }
}

TEST_CASE("spanning probe: trivial action spans everything") {
    auto d = s1r3_dirac();
    auto c = d.chart();
    auto trivial = GroupAction::trivial(c);
    // T = full tangent, V°_G = full cotangent via basis (x, y, z)
    auto [t, tg] = descending_tangent(
        trivial, {vf(c, {"1", "0", "0"}), vf(c, {"0", "1", "0"}), vf(c, {"0", "0", "1"})});
    InvariantBasis basis(trivial, {Poly::coordinate(c, 0), Poly::coordinate(c, 1), Poly::coordinate(c, 2)});
    Distribution vg = invariant_codistribution(trivial, basis);

    std::vector<DescendingSection> cands;
    for (const auto& g : d.generators()) {
        OneFormPresentation pres;
        for (std::size_t i = 0; i < 3; ++i)
            if (!g.alpha.components[i].is_zero())
                pres.pairs.emplace_back(g.alpha.components[i], Poly::coordinate(c, i));
        cands.push_back({g, pres});
    }
    auto ds = verify_descending(cands, d, trivial, samples3());
    REQUIRE(ds.all_passed);
    auto rep = spanning_hypothesis_probe(d, t, vg, ds, samples3());
    CHECK(rep.spanned);
    for (const auto& s : rep.samples) {
        CHECK(s.equal);
        CHECK(s.descending_dim == 3);
    }
}

TEST_CASE("spanning probe: SO(3) split counterexample fails at (e3, e1)") {
    auto c = chart6();
    std::vector<Section> gens{
        Section(vf(c, {"1", "0", "0", "0", "0", "0"}), OneForm::zero(c)),
        Section(vf(c, {"0", "1", "0", "0", "0", "0"}), OneForm::zero(c)),
        Section(vf(c, {"0", "0", "1", "0", "0", "0"}), OneForm::zero(c)),
        Section(VectorField::zero(c), of(c, {"0", "0", "0", "1", "0", "0"})),
        Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "1", "0"})),
        Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "0", "1"}))};
    DiracStructure d(c, gens, {});
    auto so3 = GroupAction::so3_diagonal(
        c, {vf(c, {"-y1", "x1", "0", "-y2", "x2", "0"}),
            vf(c, {"0", "-z1", "y1", "0", "-z2", "y2"}),
            vf(c, {"z1", "0", "-x1", "z2", "0", "-x2"})});

    InvariantBasis basis(so3, {parse_expr("x1^2 + y1^2 + z1^2", c).as_polynomial(),
                               parse_expr("x2^2 + y2^2 + z2^2", c).as_polynomial(),
                               parse_expr("x1*x2 + y1*y2 + z1*z2", c).as_polynomial()});
    Distribution vg = invariant_codistribution(so3, basis);

    std::vector<VectorField> declared{
        vf(c, {"x1", "y1", "z1", "0", "0", "0"}), vf(c, {"0", "0", "0", "x2", "y2", "z2"}),
        vf(c, {"0", "0", "0", "x1", "y1", "z1"}), vf(c, {"x2", "y2", "z2", "0", "0", "0"}),
        vf(c, {"y2*z1 - z2*y1", "z2*x1 - z1*x2", "x2*y1 - y2*x1", "0", "0", "0"}),
        vf(c, {"0", "0", "0", "y1*z2 - z1*y2", "z1*x2 - x1*z2", "x1*y2 - y1*x2"})};
    auto [t, tg] = descending_tangent(so3, declared);

    // the two descending sections named in the paper's counterexample
    std::vector<DescendingSection> cands;
    cands.push_back({Section(vf(c, {"x1", "y1", "z1", "0", "0", "0"}), OneForm::zero(c)),
                     OneFormPresentation{}});
    cands.push_back({Section(VectorField::zero(c), of(c, {"0", "0", "0", "x2", "y2", "z2"})),
                     OneFormPresentation{
                         {{RatFn::constant(c, Rat(1, 2)),
                           parse_expr("x2^2 + y2^2 + z2^2", c).as_polynomial()}}}});
    auto ds = verify_descending(cands, d, so3, {});
    REQUIRE(ds.all_passed);

    std::vector<Rat> e3e1{Rat(0), Rat(0), Rat(1), Rat(1), Rat(0), Rat(0)};
    auto rep = spanning_hypothesis_probe(d, t, vg, ds, {e3e1});
    CHECK_FALSE(rep.spanned);
    REQUIRE(rep.samples.size() == 1);
    CHECK(rep.samples[0].descending_dim == 2);
    CHECK(rep.samples[0].intersection_dim == 4);
}
