#include "scene.hpp"

#include <sstream>

namespace diracred {

namespace {

VectorField vf(const ChartPtr& c, std::vector<std::string> comps) {
    return VectorField::parse(c, comps);
}
OneForm of(const ChartPtr& c, std::vector<std::string> comps) {
    return OneForm::parse(c, comps);
}
Poly pol(const ChartPtr& c, const std::string& e) { return parse_expr(e, c).as_polynomial(); }

std::vector<Rat> pt(std::vector<std::string> xs) {
    std::vector<Rat> p;
    p.reserve(xs.size());
    for (const auto& v : xs) p.push_back(rat_from_string(v));
    return p;
}

OneFormPresentation pres1(const ChartPtr& c, const std::string& g, const std::string& f) {
    return OneFormPresentation{{{parse_expr(g, c), pol(c, f)}}};
}

Scene make_s1_r3() {
    auto c = make_chart("M", {"x", "y", "z"});
    auto action = GroupAction::circle(c, vf(c, {"-y", "x", "0"}));
    auto target = make_chart("Mbar", {"xb", "zb"});
    QuotientMap quotient(c, target, InvariantBasis(action, {pol(c, "x^2 + y^2"), pol(c, "z")}));

    std::vector<std::vector<Rat>> samples{pt({"1", "0", "0"}), pt({"1/2", "-2", "3"}),
                                          pt({"0", "0", "1"}), pt({"0", "0", "-2"})};

    DiracStructure dirac(c,
                         {Section(vf(c, {"1", "0", "0"}), of(c, {"0", "1", "0"})),
                          Section(vf(c, {"0", "1", "0"}), of(c, {"-1", "0", "0"})),
                          Section(vf(c, {"0", "0", "1"}), OneForm::zero(c))},
                         samples);

    std::vector<DescendingSection> descending;
    descending.push_back({Section(vf(c, {"y", "-x", "0"}), of(c, {"x", "y", "0"})),
                          pres1(c, "1/2", "x^2 + y^2")});
    descending.push_back({Section(vf(c, {"0", "0", "1"}), OneForm::zero(c)), {}});

    std::vector<VectorField> fields{vf(c, {"x", "y", "0"}), vf(c, {"0", "0", "1"})};

    StratumChart p1;
    p1.name = "P1";
    p1.params = make_chart("P1", {"zb"});
    p1.embedding = {RatFn::constant(p1.params, Rat(0)), RatFn::coordinate(p1.params, 0)};
    p1.upstairs_samples = {pt({"0", "0", "1"}), pt({"0", "0", "-2"})};
    p1.upstairs_membership = {pol(c, "x"), pol(c, "y")};

    StratumChart p2;
    p2.name = "P2";
    p2.params = make_chart("P2", {"xb", "zb"});
    p2.embedding = {RatFn::coordinate(p2.params, 0), RatFn::coordinate(p2.params, 1)};
    p2.constraints = {{pol(p2.params, "xb"), ConstraintRel::Greater}};
    p2.upstairs_samples = {pt({"1", "0", "0"}), pt({"1/2", "-2", "3"})};

    SceneExpected exp;
    exp.reduced.emplace_back(
        "P1", std::vector<Section>{Section(vf(p1.params, {"1"}), OneForm::zero(p1.params))});
    exp.reduced.emplace_back(
        "P2", std::vector<Section>{Section(vf(p2.params, {"0", "1"}), OneForm::zero(p2.params)),
                                   Section(VectorField::zero(p2.params), of(p2.params, {"1", "0"}))});
    exp.pushforward_fields = {vf(c, {"x", "y", "0"}), vf(c, {"0", "0", "1"}),
                              vf(c, {"-y", "x", "0"})};
    exp.pushforwards = {vf(target, {"2*xb", "0"}), vf(target, {"0", "1"}),
                        VectorField::zero(target)};
    exp.integrable = true;
    exp.probe = SceneExpected::Probe::Pass;

    return Scene{"s1_r3", c,          action, quotient, dirac,
                 descending, fields, {p1, p2}, samples,  exp};
}

Scene make_s1_r6() {
    auto c = make_chart("M", {"x1", "y1", "z1", "x2", "y2", "z2"});
    auto action = GroupAction::circle(c, vf(c, {"-y1", "x1", "0", "-y2", "x2", "0"}));
    auto target = make_chart("Mbar", {"f1", "f2", "delta", "sigma", "z1", "z2"});
    QuotientMap quotient(
        c, target,
        InvariantBasis(action, {pol(c, "x1^2 + y1^2"), pol(c, "x2^2 + y2^2"),
                                pol(c, "x1*y2 - y1*x2"), pol(c, "x1*x2 + y1*y2"), pol(c, "z1"),
                                pol(c, "z2")}));

    std::vector<std::vector<Rat>> samples{pt({"1", "0", "0", "0", "1", "0"}),
                                          pt({"2", "1", "3", "-1", "1", "2"}),
                                          pt({"1", "-1", "2", "1/2", "1", "-3"}),
                                          pt({"0", "0", "1", "0", "0", "2"})};

    DiracStructure dirac(
        c,
        {Section(vf(c, {"1", "0", "0", "0", "0", "0"}), of(c, {"0", "1", "0", "0", "0", "0"})),
         Section(vf(c, {"0", "1", "0", "0", "0", "0"}), of(c, {"-1", "0", "0", "0", "0", "0"})),
         Section(vf(c, {"0", "0", "1", "0", "0", "0"}), OneForm::zero(c)),
         Section(vf(c, {"0", "0", "0", "1", "0", "0"}), of(c, {"0", "0", "0", "0", "-1", "0"})),
         Section(vf(c, {"0", "0", "0", "0", "1", "0"}), of(c, {"0", "0", "0", "1", "0", "0"})),
         Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "0", "1"}))},
        samples);

    std::vector<DescendingSection> descending;
    descending.push_back({Section(vf(c, {"0", "0", "1", "0", "0", "0"}), OneForm::zero(c)), {}});
    descending.push_back({Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "0", "1"})),
                          pres1(c, "1", "z2")});
    descending.push_back({Section(vf(c, {"y1", "-x1", "0", "0", "0", "0"}),
                                  of(c, {"x1", "y1", "0", "0", "0", "0"})),
                          pres1(c, "1/2", "x1^2 + y1^2")});
    descending.push_back({Section(vf(c, {"0", "0", "0", "-y2", "x2", "0"}),
                                  of(c, {"0", "0", "0", "x2", "y2", "0"})),
                          pres1(c, "1/2", "x2^2 + y2^2")});
    descending.push_back({Section(vf(c, {"-x2", "-y2", "0", "-x1", "-y1", "0"}),
                                  of(c, {"y2", "-x2", "0", "-y1", "x1", "0"})),
                          pres1(c, "1", "x1*y2 - y1*x2")});
    descending.push_back({Section(vf(c, {"y2", "-x2", "0", "-y1", "x1", "0"}),
                                  of(c, {"x2", "y2", "0", "x1", "y1", "0"})),
                          pres1(c, "1", "x1*x2 + y1*y2")});

    std::vector<VectorField> fields{
        vf(c, {"0", "0", "1", "0", "0", "0"}), vf(c, {"0", "0", "0", "0", "0", "1"}),
        vf(c, {"x1", "y1", "0", "0", "0", "0"}), vf(c, {"0", "0", "0", "x2", "y2", "0"}),
        vf(c, {"0", "0", "0", "y1", "-x1", "0"}), vf(c, {"y2", "-x2", "0", "0", "0", "0"}),
        vf(c, {"0", "0", "0", "x1", "y1", "0"}), vf(c, {"x2", "y2", "0", "0", "0", "0"}),
        vf(c, {"-y1", "x1", "0", "0", "0", "0"}), vf(c, {"0", "0", "0", "-y2", "x2", "0"})};

    StratumChart m0;
    m0.name = "M0";
    m0.params = make_chart("M0", {"z1", "z2"});
    auto zero0 = RatFn::constant(m0.params, Rat(0));
    m0.embedding = {zero0, zero0, zero0, zero0, RatFn::coordinate(m0.params, 0),
                    RatFn::coordinate(m0.params, 1)};
    m0.upstairs_samples = {pt({"0", "0", "1", "0", "0", "2"}), pt({"0", "0", "-3", "0", "0", "5"})};
    m0.upstairs_membership = {pol(c, "x1"), pol(c, "y1"), pol(c, "x2"), pol(c, "y2")};

    auto graph_chart = [&](const std::string& stname, const std::string& main_coord,
                           const std::string& other_entry) {
        StratumChart st;
        st.name = stname;
        st.params = make_chart(stname, {main_coord, "delta", "sigma", "z1", "z2"});
        RatFn other = parse_expr(other_entry, st.params);
        if (main_coord == "f1")
            st.embedding = {RatFn::coordinate(st.params, 0), other,
                            RatFn::coordinate(st.params, 1), RatFn::coordinate(st.params, 2),
                            RatFn::coordinate(st.params, 3), RatFn::coordinate(st.params, 4)};
        else
            st.embedding = {other, RatFn::coordinate(st.params, 0),
                            RatFn::coordinate(st.params, 1), RatFn::coordinate(st.params, 2),
                            RatFn::coordinate(st.params, 3), RatFn::coordinate(st.params, 4)};
        st.constraints = {{pol(st.params, main_coord), ConstraintRel::Greater}};
        st.upstairs_samples = {pt({"1", "0", "0", "0", "1", "0"}),
                               pt({"2", "1", "3", "-1", "1", "2"})};
        return st;
    };
    StratumChart psi1 = graph_chart("M1-psi1", "f1", "(delta^2 + sigma^2)/f1");
    StratumChart psi2 = graph_chart("M1-psi2", "f2", "(delta^2 + sigma^2)/f2");

    SceneExpected exp;
    exp.reduced.emplace_back(
        "M0", std::vector<Section>{Section(vf(m0.params, {"1", "0"}), OneForm::zero(m0.params)),
                                   Section(VectorField::zero(m0.params), of(m0.params, {"0", "1"}))});
    auto golden_m1 = [&](const StratumChart& st, const std::string& fmain) {
        auto P = st.params;
        std::string big = "(" + fmain + " + (sigma^2 + delta^2)/" + fmain + ")";
        return std::vector<Section>{
            Section(vf(P, {"0", "0", "0", "1", "0"}), OneForm::zero(P)),
            Section(VectorField::zero(P), of(P, {"0", "0", "0", "0", "1"})),
            Section(vf(P, {"0", "2*sigma", "-2*delta", "0", "0"}), of(P, {"1", "0", "0", "0", "0"})),
            Section(vf(P, {"-2*sigma", "0", "-" + big, "0", "0"}), of(P, {"0", "1", "0", "0", "0"})),
            Section(vf(P, {"2*delta", big, "0", "0", "0"}), of(P, {"0", "0", "1", "0", "0"}))};
    };
    auto g1 = golden_m1(psi1, "f1");
    auto g2 = golden_m1(psi2, "f2");
    exp.reduced.emplace_back("M1-psi1", g1);
    exp.reduced.emplace_back("M1-psi2", g2);

    // pushforwards of the ten declared spanning fields of T
    exp.pushforward_fields = fields;
    exp.pushforwards = {
        vf(target, {"0", "0", "0", "0", "1", "0"}),
        vf(target, {"0", "0", "0", "0", "0", "1"}),
        vf(target, {"2*f1", "0", "delta", "sigma", "0", "0"}),
        vf(target, {"0", "2*f2", "delta", "sigma", "0", "0"}),
        vf(target, {"0", "-2*delta", "-f1", "0", "0", "0"}),
        vf(target, {"2*delta", "0", "f2", "0", "0", "0"}),
        vf(target, {"0", "2*sigma", "0", "f1", "0", "0"}),
        vf(target, {"2*sigma", "0", "0", "f2", "0", "0"}),
        vf(target, {"0", "0", "-sigma", "delta", "0", "0"}),
        vf(target, {"0", "0", "sigma", "-delta", "0", "0"})};
    exp.integrable = true;
    exp.probe = SceneExpected::Probe::Pass;

    // exact bracket identities of the psi1 chart (Eq. (DbarM1) frame)
    auto P = psi1.params;
    RatFn one = RatFn::constant(P, Rat(1));
    Section aux(VectorField::zero(P),
                of(P, {"f1 + (sigma^2 + delta^2)/f1", "-2*delta", "-2*sigma", "0", "0"}));
    exp.bracket_identities.push_back(
        {"M1-psi1", 0, 2, {}, "[(X1,a1),(X3,a3)] = 0"});
    exp.bracket_identities.push_back(
        {"M1-psi1", 2, 3, {{RatFn::constant(P, Rat(2)), g1[4]}}, "[(X3,a3),(X4,a4)] = 2 (X5,a5)"});
    exp.bracket_identities.push_back(
        {"M1-psi1", 2, 4, {{RatFn::constant(P, Rat(-2)), g1[3]}}, "[(X3,a3),(X5,a5)] = -2 (X4,a4)"});
    exp.bracket_identities.push_back(
        {"M1-psi1",
         3,
         4,
         {{RatFn::constant(P, Rat(-2)), g1[2]}, {one / parse_expr("f1", P), aux}},
         "[(X4,a4),(X5,a5)] = -2 (X3,a3) + (1/f1) (0, (f1 + (s^2+d^2)/f1) df1 - 2s ds - 2d dd)"});

    return Scene{"s1_r6", c,          action, quotient,          dirac,
                 descending, fields, {m0, psi1, psi2}, samples, exp};
}

// shared pieces of the two SO(3) scenes
struct SO3Parts {
    ChartPtr c = make_chart("M", {"x1", "y1", "z1", "x2", "y2", "z2"});
    GroupAction action = GroupAction::so3_diagonal(
        c, {vf(c, {"-y1", "x1", "0", "-y2", "x2", "0"}),
            vf(c, {"-z1", "0", "x1", "-z2", "0", "x2"}),
            vf(c, {"0", "z1", "-y1", "0", "z2", "-y2"})});
    ChartPtr target = make_chart("Mbar", {"x", "y", "z"});
    QuotientMap quotient{
        c, target,
        InvariantBasis(action,
                       {pol(c, "x1^2 + y1^2 + z1^2"), pol(c, "x2^2 + y2^2 + z2^2"),
                        pol(c, "x1*x2 + y1*y2 + z1*z2")})};

    DiracStructure split_dirac() const {
        return DiracStructure(
            c,
            {Section(vf(c, {"1", "0", "0", "0", "0", "0"}), OneForm::zero(c)),
             Section(vf(c, {"0", "1", "0", "0", "0", "0"}), OneForm::zero(c)),
             Section(vf(c, {"0", "0", "1", "0", "0", "0"}), OneForm::zero(c)),
             Section(VectorField::zero(c), of(c, {"0", "0", "0", "1", "0", "0"})),
             Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "1", "0"})),
             Section(VectorField::zero(c), of(c, {"0", "0", "0", "0", "0", "1"}))},
            {});
    }

    std::vector<VectorField> tg_fields() const {
        return {vf(c, {"x1", "y1", "z1", "0", "0", "0"}),
                vf(c, {"0", "0", "0", "x2", "y2", "z2"}),
                vf(c, {"0", "0", "0", "x1", "y1", "z1"}),
                vf(c, {"x2", "y2", "z2", "0", "0", "0"}),
                vf(c, {"y2*z1 - z2*y1", "z2*x1 - z1*x2", "x2*y1 - y2*x1", "0", "0", "0"}),
                vf(c, {"0", "0", "0", "y1*z2 - z1*y2", "z1*x2 - x1*z2", "x1*y2 - y1*x2"}),
                vf(c, {"(z1*x2 - x1*z2)*z1 - (x1*y2 - y1*x2)*y1",
                       "(x1*y2 - y1*x2)*x1 - (y1*z2 - z1*y2)*z1",
                       "(y1*z2 - z1*y2)*y1 - (z1*x2 - x1*z2)*x1",
                       "(z1*x2 - x1*z2)*z2 - (x1*y2 - y1*x2)*y2",
                       "(x1*y2 - y1*x2)*x2 - (y1*z2 - z1*y2)*z2",
                       "(y1*z2 - z1*y2)*y2 - (z1*x2 - x1*z2)*x2"})};
    }

    DescendingSection desc_x1() const {
        return {Section(vf(c, {"x1", "y1", "z1", "0", "0", "0"}), OneForm::zero(c)), {}};
    }
    DescendingSection desc_df2() const {
        return {Section(VectorField::zero(c), of(c, {"0", "0", "0", "x2", "y2", "z2"})),
                pres1(c, "1/2", "x2^2 + y2^2 + z2^2")};
    }
};

Scene make_so3_r3r3() {
    SO3Parts p;
    std::vector<std::vector<Rat>> samples{
        pt({"1", "0", "0", "0", "1", "0"}), pt({"1", "2", "0", "-1", "1", "1"}),
        pt({"0", "0", "1", "0", "0", "1"}), pt({"0", "0", "1", "0", "0", "2"})};

    DiracStructure dirac = p.split_dirac();

    // richer descending list: (X1,0), (X4,0), (X8,0) and (0, (1/2) d f2);
    // their values span D ∩ (T (+) V°_G) at the bundled samples
    std::vector<DescendingSection> descending{
        p.desc_x1(),
        {Section(vf(p.c, {"x2", "y2", "z2", "0", "0", "0"}), OneForm::zero(p.c)), {}},
        {Section(vf(p.c, {"y2*z1 - z2*y1", "z2*x1 - z1*x2", "x2*y1 - y2*x1", "0", "0", "0"}),
                 OneForm::zero(p.c)),
         {}},
        p.desc_df2()};

    auto fields = p.tg_fields();

    SceneExpected exp;
    exp.pushforward_fields = fields;
    exp.pushforward_fields.insert(exp.pushforward_fields.begin() + 4,
                                  p.action.fundamental_fields().begin(),
                                  p.action.fundamental_fields().end());
    // order: X1, X2, X3, X4 | X5, X6, X7 (fundamental) | X8, X9, X10
    exp.pushforwards = {vf(p.target, {"2*x", "0", "z"}), vf(p.target, {"0", "2*y", "z"}),
                        vf(p.target, {"0", "2*z", "x"}), vf(p.target, {"2*z", "0", "y"}),
                        VectorField::zero(p.target),     VectorField::zero(p.target),
                        VectorField::zero(p.target),     VectorField::zero(p.target),
                        VectorField::zero(p.target),     VectorField::zero(p.target)};
    exp.integrable = true;
    exp.probe = SceneExpected::Probe::Pass;

    // the one-form relation 2 f3 df3 = f1 df2 + f2 df1 at dependent pairs
    SceneExpected::Relation rel;
    rel.label = "2 f3 df3 = f1 df2 + f2 df1 on the dependent-pair locus";
    RatFn f1 = parse_expr("x1^2 + y1^2 + z1^2", p.c);
    RatFn f2 = parse_expr("x2^2 + y2^2 + z2^2", p.c);
    RatFn f3 = parse_expr("x1*x2 + y1*y2 + z1*z2", p.c);
    rel.lhs = (RatFn::constant(p.c, Rat(2)) * f3) * exterior_derivative(f3, p.c);
    rel.rhs = f1 * exterior_derivative(f2, p.c) + f2 * exterior_derivative(f1, p.c);
    rel.points = {pt({"0", "0", "1", "0", "0", "2"}), pt({"0", "0", "1", "0", "0", "1"}),
                  pt({"0", "0", "2", "0", "0", "-1"})};
    exp.relations.push_back(std::move(rel));

    // dependent-pair stratum, charted over (x, z) with y = z^2/x on x > 0
    StratumChart m1;
    m1.name = "M1";
    m1.params = make_chart("M1", {"x", "z"});
    m1.embedding = {RatFn::coordinate(m1.params, 0), parse_expr("z^2/x", m1.params),
                    RatFn::coordinate(m1.params, 1)};
    m1.constraints = {{pol(m1.params, "x"), ConstraintRel::Greater}};
    m1.upstairs_samples = {pt({"0", "0", "1", "0", "0", "2"}), pt({"0", "0", "1", "0", "0", "1"})};
    m1.upstairs_membership = {pol(p.c, "y1*z2 - z1*y2"), pol(p.c, "z1*x2 - x1*z2"),
                              pol(p.c, "x1*y2 - y1*x2")};

    // regular stratum: the open cone interior
    StratumChart m2;
    m2.name = "M2";
    m2.params = make_chart("M2", {"x", "y", "z"});
    m2.embedding = {RatFn::coordinate(m2.params, 0), RatFn::coordinate(m2.params, 1),
                    RatFn::coordinate(m2.params, 2)};
    m2.constraints = {{pol(m2.params, "x"), ConstraintRel::Greater},
                      {pol(m2.params, "y"), ConstraintRel::Greater},
                      {pol(m2.params, "x*y - z^2"), ConstraintRel::Greater}};
    m2.upstairs_samples = {pt({"1", "0", "0", "0", "1", "0"}), pt({"1", "2", "0", "-1", "1", "1"})};

    return Scene{"so3_r3r3", p.c,     p.action, p.quotient, dirac,
                 descending, fields, {m1, m2},  samples,    exp};
}

Scene make_so3_split_counterexample() {
    SO3Parts p;
    // bundled failure sample (e3, e1): f3 = 0 there
    std::vector<std::vector<Rat>> samples{pt({"0", "0", "1", "1", "0", "0"}),
                                          pt({"1", "0", "0", "0", "1", "0"})};
    DiracStructure dirac = p.split_dirac();

    // exactly the two classical descending sections of the split structure;
    // their values do not span the intersection at (e3, e1)
    std::vector<DescendingSection> descending{p.desc_x1(), p.desc_df2()};

    SceneExpected exp;
    exp.integrable = true;
    exp.probe = SceneExpected::Probe::Fail;

    return Scene{"so3_split_counterexample", p.c,        p.action, p.quotient, dirac,
                 descending,                 p.tg_fields(), {},     samples,    exp};
}

Scene make_nonintegrable_demo() {
    auto c = make_chart("M", {"x", "y", "z"});
    auto action = GroupAction::trivial(c);
    auto target = make_chart("Mbar", {"xb", "yb", "zb"});
    QuotientMap quotient(c, target,
                         InvariantBasis(action, {pol(c, "x"), pol(c, "y"), pol(c, "z")}));

    std::vector<std::vector<Rat>> samples{pt({"0", "0", "0"}), pt({"1", "2", "-1"})};

    // graph of the non-closed two-form B = y dx ^ dz
    DiracStructure dirac(c,
                         {Section(vf(c, {"1", "0", "0"}), of(c, {"0", "0", "y"})),
                          Section(vf(c, {"0", "1", "0"}), OneForm::zero(c)),
                          Section(vf(c, {"0", "0", "1"}), of(c, {"-y", "0", "0"}))},
                         samples);

    std::vector<DescendingSection> descending{
        {Section(vf(c, {"1", "0", "0"}), of(c, {"0", "0", "y"})),
         OneFormPresentation{{{parse_expr("y", c), pol(c, "z")}}}},
        {Section(vf(c, {"0", "1", "0"}), OneForm::zero(c)), {}},
        {Section(vf(c, {"0", "0", "1"}), of(c, {"-y", "0", "0"})),
         OneFormPresentation{{{parse_expr("-y", c), pol(c, "x")}}}}};

    std::vector<VectorField> fields{vf(c, {"1", "0", "0"}), vf(c, {"0", "1", "0"}),
                                    vf(c, {"0", "0", "1"})};

    StratumChart full;
    full.name = "all";
    full.params = make_chart("all", {"xb", "yb", "zb"});
    full.embedding = {RatFn::coordinate(full.params, 0), RatFn::coordinate(full.params, 1),
                      RatFn::coordinate(full.params, 2)};
    full.upstairs_samples = samples;

    SceneExpected exp;
    exp.integrable = false;
    exp.failing_pair = std::make_pair<std::size_t, std::size_t>(0, 1);
    exp.probe = SceneExpected::Probe::Pass;

    return Scene{"nonintegrable_demo", c,      action,  quotient, dirac,
                 descending,           fields, {full},  samples,  exp};
}

} // namespace

const std::vector<std::string>& builtin_scene_names() {
    static const std::vector<std::string> names{"s1_r3", "s1_r6", "so3_r3r3",
                                                "so3_split_counterexample", "nonintegrable_demo"};
    return names;
}

Scene builtin_scene(const std::string& name) {
    if (name == "s1_r3") return make_s1_r3();
    if (name == "s1_r6") return make_s1_r6();
    if (name == "so3_r3r3") return make_so3_r3r3();
    if (name == "so3_split_counterexample") return make_so3_split_counterexample();
    if (name == "nonintegrable_demo") return make_nonintegrable_demo();
    throw Error(ErrorKind::UnknownScene, "no builtin scene named '" + name + "'");
}

bool scene_equivalent(const Scene& a, const Scene& b) {
    if (!same_chart(a.chart, b.chart)) return false;
    if (a.action.kind() != b.action.kind()) return false;
    if (!(a.action.fundamental_fields() == b.action.fundamental_fields())) return false;
    if (!same_chart(a.quotient.target, b.quotient.target)) return false;
    if (!(a.quotient.basis.fns == b.quotient.basis.fns)) return false;
    if (!(a.dirac.generators() == b.dirac.generators())) return false;
    if (a.descending.size() != b.descending.size()) return false;
    for (std::size_t i = 0; i < a.descending.size(); ++i) {
        if (!(a.descending[i].section == b.descending[i].section)) return false;
        if (!(a.descending[i].presentation.pairs == b.descending[i].presentation.pairs))
            return false;
    }
    if (!(a.declared_fields == b.declared_fields)) return false;
    if (a.strata.size() != b.strata.size()) return false;
    for (std::size_t i = 0; i < a.strata.size(); ++i) {
        const auto& sa = a.strata[i];
        const auto& sb = b.strata[i];
        if (sa.name != sb.name || !same_chart(sa.params, sb.params)) return false;
        if (!(sa.embedding == sb.embedding)) return false;
        if (sa.constraints.size() != sb.constraints.size()) return false;
        for (std::size_t k = 0; k < sa.constraints.size(); ++k)
            if (!(sa.constraints[k].lhs == sb.constraints[k].lhs) ||
                sa.constraints[k].rel != sb.constraints[k].rel)
                return false;
        if (sa.upstairs_samples != sb.upstairs_samples) return false;
        if (!(sa.upstairs_membership == sb.upstairs_membership)) return false;
    }
    return a.samples == b.samples;
}

namespace {

std::string point_str(const std::vector<Rat>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(p[i]);
    }
    return s + ")";
}

} // namespace

ReportNode validate_scene(const Scene& s, int bound) {
    ReportNode root("scene " + s.name, ReportNode::Status::Pass);

    // 1. Dirac frame
    {
        auto& n = root.add_pass("dirac structure",
                                std::to_string(s.dirac.generators().size()) +
                                    " generators, isotropic, generic rank = dim M");
        if (s.dirac.degeneracy_warning())
            n.add_warn("frame degeneracy locus",
                       "a pivot minor vanishes on " + s.dirac.degeneracy_warning()->to_string());
    }

    // 2. action and invariant basis (validated at construction)
    root.add_pass("group action",
                  std::to_string(s.action.fundamental_fields().size()) +
                      " fundamental fields validated against the action map");
    root.add_pass("invariant basis",
                  std::to_string(s.quotient.basis.fns.size()) + " invariants annihilate the verticals");

    // 3. Dirac action
    {
        auto rep = check_dirac_action(s.dirac, s.action);
        auto& n = root.add("dirac action invariance",
                           rep.invariant ? ReportNode::Status::Pass : ReportNode::Status::Fail);
        for (const auto& e : rep.entries) {
            if (!e.member)
                n.add_fail("generator " + std::to_string(e.generator + 1) + " / xi_" +
                               std::to_string(e.xi + 1),
                           "residual " + e.residual);
        }
    }

    // 4. integrability
    bool upstairs_integrable = false;
    {
        auto rep = check_integrable(s.dirac);
        upstairs_integrable = rep.integrable;
        auto& n = root.add("integrability of D",
                           rep.integrable ? ReportNode::Status::Pass : ReportNode::Status::Fail,
                           rep.integrable ? "closed under the Courant bracket"
                                          : "not closed under the Courant bracket");
        if (!rep.integrable) {
            for (const auto& chk : rep.checks) {
                if (chk.member) continue;
                n.add("bracket (" + std::to_string(chk.i + 1) + "," + std::to_string(chk.j + 1) +
                          ") escapes Gamma(D)",
                      ReportNode::Status::Warn, "residual " + chk.residual);
            }
        }
        if (s.expected.integrable)
            n.add("matches the scene's declared verdict",
                  rep.integrable == *s.expected.integrable ? ReportNode::Status::Pass
                                                           : ReportNode::Status::Fail);
        if (s.expected.failing_pair) {
            bool found = false;
            for (const auto& chk : rep.checks)
                if (!chk.member && chk.i == s.expected.failing_pair->first &&
                    chk.j == s.expected.failing_pair->second)
                    found = true;
            n.add("expected failing pair identified",
                  found ? ReportNode::Status::Pass : ReportNode::Status::Fail);
        }
    }

    // 5. descending certificates
    DescendingSet ds;
    {
        ds = verify_descending(s.descending, s.dirac, s.action, s.samples);
        auto& n = root.add("descending sections",
                           ds.all_passed ? ReportNode::Status::Pass : ReportNode::Status::Fail,
                           std::to_string(ds.sections.size()) + " of " +
                               std::to_string(s.descending.size()) + " candidates certified");
        for (std::size_t i = 0; i < ds.checks.size(); ++i) {
            if (!ds.checks[i].pass())
                n.add_fail("candidate " + std::to_string(i + 1), ds.checks[i].detail);
        }
    }

    // 6. golden pushforwards
    if (!s.expected.pushforward_fields.empty()) {
        auto& n = root.add_pass("pushforward formulas");
        for (std::size_t i = 0; i < s.expected.pushforward_fields.size(); ++i) {
            const auto& x = s.expected.pushforward_fields[i];
            try {
                VectorField xb = pushforward_vf(x, s.action, s.quotient, bound, s.samples);
                bool ok = xb == s.expected.pushforwards[i];
                n.add("Xbar_" + std::to_string(i + 1),
                      ok ? ReportNode::Status::Pass : ReportNode::Status::Fail,
                      ok ? xb.to_string()
                         : xb.to_string() + " != " + s.expected.pushforwards[i].to_string());
            } catch (const Error& e) {
                n.add_fail("Xbar_" + std::to_string(i + 1), e.what());
            }
        }
        if (n.has_failures()) n.status = ReportNode::Status::Fail;
    }

    // 7. spanning hypothesis probe; the node carries the honest verdict and
    // the scene's declared expectation is checked separately
    {
        auto [t, tg] = descending_tangent(s.action, s.declared_fields);
        Distribution vg = invariant_codistribution(s.action, s.quotient.basis);
        auto rep = spanning_hypothesis_probe(s.dirac, t, vg, ds, s.samples);
        auto& n = root.add("spanning hypothesis probe",
                           rep.spanned ? ReportNode::Status::Pass : ReportNode::Status::Fail,
                           rep.spanned ? "descending sections span the intersection at all samples"
                                       : "deficient at a sample");
        for (const auto& ps : rep.samples) {
            n.add(point_str(ps.point),
                  ps.equal ? ReportNode::Status::Pass : ReportNode::Status::Warn,
                  "descending span " + std::to_string(ps.descending_dim) + ", intersection " +
                      std::to_string(ps.intersection_dim));
        }
        if (s.expected.probe != SceneExpected::Probe::NotChecked) {
            bool want = s.expected.probe == SceneExpected::Probe::Pass;
            n.add("matches the scene's declared verdict",
                  rep.spanned == want ? ReportNode::Status::Pass : ReportNode::Status::Fail);
        }
    }

    // 8. reductions per stratum
    {
        bool probe_needed_and_failed = s.expected.probe == SceneExpected::Probe::Fail;
        if (s.strata.empty()) {
            root.add_skip("reduction", "scene declares no strata");
        } else if (ds.sections.empty()) {
            root.add_skip("reduction", "scene declares no descending sections");
        } else if (probe_needed_and_failed) {
            root.add_skip("reduction", "spanning hypothesis fails; theorem does not apply");
        } else {
            auto& n = root.add_pass("reduction");
            for (const auto& st : s.strata) {
                try {
                    ReducedDirac rd = reduced_dirac(ds, s.action, s.quotient, st, bound,
                                                    upstairs_integrable);
                    auto& sn = n.add_pass("stratum " + st.name,
                                          "rank " + std::to_string(rd.generic_rank_value) +
                                              " Lagrangian frame on " +
                                              std::to_string(st.params->dim()) + " parameters");
                    for (const auto& g : rd.generators) sn.witnesses.push_back(g.to_string());
                    // golden comparison
                    for (const auto& [name, golden] : s.expected.reduced) {
                        if (name != st.name) continue;
                        bool eq = module_equal(rd.generators, golden, st.params);
                        sn.add("module-equal to the expected frame",
                               eq ? ReportNode::Status::Pass : ReportNode::Status::Fail);
                    }
                    if (rd.integrability)
                        sn.add("reduced structure closed under the Courant bracket",
                               rd.integrability->integrable ? ReportNode::Status::Pass
                                                            : ReportNode::Status::Fail);
                } catch (const Error& e) {
                    n.add_fail("stratum " + st.name, e.what());
                }
            }
            if (n.has_failures()) n.status = ReportNode::Status::Fail;
        }
    }

    // 9. golden bracket identities on the expected frames
    if (!s.expected.bracket_identities.empty()) {
        auto& n = root.add_pass("bracket identities");
        for (const auto& bi : s.expected.bracket_identities) {
            const std::vector<Section>* frame = nullptr;
            for (const auto& [name, golden] : s.expected.reduced)
                if (name == bi.stratum) frame = &golden;
            if (!frame) {
                n.add_fail(bi.label, "no golden frame for stratum " + bi.stratum);
                continue;
            }
            Section lhs = courant_bracket((*frame)[bi.i], (*frame)[bi.j]);
            Section rhs = Section::zero((*frame)[bi.i].chart());
            for (const auto& [cf, sec] : bi.combination) rhs = rhs + cf * sec;
            n.add(bi.label, lhs == rhs ? ReportNode::Status::Pass : ReportNode::Status::Fail);
        }
        if (n.has_failures()) n.status = ReportNode::Status::Fail;
    }

    // 10. pointwise one-form relations
    if (!s.expected.relations.empty()) {
        auto& n = root.add_pass("one-form relations at declared points");
        for (const auto& rel : s.expected.relations) {
            bool ok = true;
            std::string where;
            for (const auto& p : rel.points) {
                for (std::size_t i = 0; i < s.chart->dim(); ++i) {
                    if (rel.lhs.components[i].eval(p) != rel.rhs.components[i].eval(p)) {
                        ok = false;
                        where = point_str(p);
                        break;
                    }
                }
                if (!ok) break;
            }
            n.add(rel.label, ok ? ReportNode::Status::Pass : ReportNode::Status::Fail,
                  ok ? "" : "differs at " + where);
        }
        if (n.has_failures()) n.status = ReportNode::Status::Fail;
    }

    if (root.has_failures()) root.status = ReportNode::Status::Fail;
    return root;
}

} // namespace diracred
