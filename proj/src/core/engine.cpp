#include "engine.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace diracred {

namespace {

double poly_eval_double(const Poly& p, const std::vector<double>& x) {
    double acc = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double t = rat_to_double(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) t *= x[i];
        acc += t;
    }
    return acc;
}

// nullopt when the denominator is numerically unsafe
std::optional<double> ratfn_eval_double(const RatFn& f, const std::vector<double>& x) {
    double den = poly_eval_double(f.den(), x);
    if (std::abs(den) < 1e-12) return std::nullopt;
    return poly_eval_double(f.num(), x) / den;
}

std::string point_str(const std::vector<Rat>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(p[i]);
    }
    return s + ")";
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    out.push_back(cur);
    return out;
}

} // namespace

Scene resolve_scene(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return builtin_scene(ref.substr(8));
    return load_scene_file(ref);
}

FlowResult flow_numeric(const VectorField& x, const std::vector<Rat>& start, double t, int steps,
                        const std::vector<StratumChart>& strata) {
    if (steps < 1) throw Error(ErrorKind::InvalidArgument, "flow needs at least one step");
    if (start.size() != x.chart->dim())
        throw Error(ErrorKind::InvalidArgument, "start point dimension mismatch");

    FlowResult out;
    std::vector<double> p;
    p.reserve(start.size());
    for (const auto& r : start) p.push_back(rat_to_double(r));
    out.trajectory.push_back(p);

    // strata whose membership polynomials vanish exactly at the start
    std::vector<std::pair<const StratumChart*, double>> tracked;
    for (const auto& st : strata) {
        if (st.upstairs_membership.empty()) continue;
        bool on_stratum = true;
        for (const auto& m : st.upstairs_membership)
            if (m.eval(start) != 0) { on_stratum = false; break; }
        if (on_stratum) tracked.emplace_back(&st, 0.0);
    }

    const double h = t / steps;
    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) -> bool {
        dy.assign(y.size(), 0.0);
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (x.components[i].is_zero()) continue;
            auto v = ratfn_eval_double(x.components[i], y);
            if (!v) return false;
            dy[i] = *v;
        }
        return true;
    };

    // pole detection between accepted points: a denominator changing sign
    // along the path has a zero on it
    std::vector<const Poly*> dens;
    for (const auto& comp : x.components)
        if (!comp.den().is_constant()) dens.push_back(&comp.den());
    std::vector<double> den_prev;
    for (const auto* d : dens) den_prev.push_back(poly_eval_double(*d, p));

    std::vector<double> k1, k2, k3, k4, tmp(p.size());
    for (int s = 0; s < steps; ++s) {
        bool ok = rhs(p, k1);
        for (std::size_t i = 0; ok && i < p.size(); ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
        ok = ok && rhs(tmp, k2);
        for (std::size_t i = 0; ok && i < p.size(); ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
        ok = ok && rhs(tmp, k3);
        for (std::size_t i = 0; ok && i < p.size(); ++i) tmp[i] = p[i] + h * k3[i];
        ok = ok && rhs(tmp, k4);
        std::vector<double> next = p;
        if (ok) {
            for (std::size_t i = 0; i < p.size(); ++i)
                next[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            for (std::size_t di = 0; di < dens.size(); ++di) {
                double v = poly_eval_double(*dens[di], next);
                if (std::abs(v) < 1e-9 || v * den_prev[di] < 0) {
                    ok = false; // the step crossed or touched a pole
                    break;
                }
                den_prev[di] = v;
            }
        }
        if (!ok) {
            out.aborted = true; // the trajectory keeps the last safe point
            break;
        }
        p = std::move(next);
        out.trajectory.push_back(p);
        out.steps_taken = (std::size_t)s + 1;
        for (auto& [st, worst] : tracked)
            for (const auto& m : st->upstairs_membership)
                worst = std::max(worst, std::abs(poly_eval_double(m, p)));
    }
    for (const auto& [st, worst] : tracked) out.drift.emplace_back(st->name, worst);
    return out;
}

std::vector<std::vector<Rat>> random_rational_samples(const Scene& s, std::uint64_t seed,
                                                      int count) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);

    // every function whose denominator must stay away from zero
    std::vector<RatFn> guarded;
    for (const auto& g : s.dirac.generators())
        for (const auto& f : g.fiber_components()) guarded.push_back(f);
    for (const auto& d : s.descending)
        for (const auto& f : d.section.fiber_components()) guarded.push_back(f);
    for (const auto& f : s.declared_fields)
        for (const auto& c : f.components) guarded.push_back(c);

    std::vector<std::vector<Rat>> out;
    int attempts = 0;
    while ((int)out.size() < count && attempts < count * 100) {
        ++attempts;
        std::vector<Rat> p;
        for (std::size_t i = 0; i < s.chart->dim(); ++i) p.push_back(rat(num(gen), den(gen)));
        bool safe = true;
        for (const auto& f : guarded)
            if (f.denominator_vanishes_at(p)) { safe = false; break; }
        if (safe) out.push_back(std::move(p));
    }
    if ((int)out.size() < count)
        throw Error(ErrorKind::Internal, "could not sample enough points off the denominator loci");
    return out;
}

namespace {

ReportNode run_reduce(const Scene& s, const EngineOptions& opt) {
    ReportNode root("reduce", ReportNode::Status::Pass);
    auto ds = verify_descending(s.descending, s.dirac, s.action, s.samples);
    if (!ds.all_passed) {
        root.add_fail("descending certificates", "a declared descending section fails its checks");
        root.status = ReportNode::Status::Fail;
        return root;
    }
    if (s.strata.empty()) {
        root.add_skip("strata", "scene declares no strata");
        return root;
    }
    if (ds.sections.empty()) {
        root.add_skip("strata", "scene declares no descending sections");
        return root;
    }
    auto [t, tg] = descending_tangent(s.action, s.declared_fields);
    Distribution vg = invariant_codistribution(s.action, s.quotient.basis);

    bool upstairs_integrable = check_integrable(s.dirac).integrable;
    bool any = false;
    for (const auto& st : s.strata) {
        if (!opt.stratum.empty() && st.name != opt.stratum) continue;
        any = true;
        // precondition: the spanning hypothesis holds at the stratum samples
        auto probe = spanning_hypothesis_probe(s.dirac, t, vg, ds, st.upstairs_samples);
        if (!probe.spanned) {
            root.add_fail("stratum " + st.name,
                          "spanning hypothesis fails at an upstairs sample; reduction theorem "
                          "does not apply");
            continue;
        }
        try {
            ReducedDirac rd = reduced_dirac(ds, s.action, s.quotient, st, opt.bound,
                                            upstairs_integrable);
            auto& n = root.add_pass("stratum " + st.name,
                                    "reduced Dirac structure of rank " +
                                        std::to_string(rd.generic_rank_value) + " on chart (" +
                                        [&] {
                                            std::string cs;
                                            for (std::size_t i = 0; i < st.params->coords.size(); ++i) {
                                                if (i) cs += ", ";
                                                cs += st.params->coords[i];
                                            }
                                            return cs;
                                        }() +
                                        ")");
            for (const auto& g : rd.generators) n.witnesses.push_back(g.to_string());
            for (const auto& [name, golden] : s.expected.reduced) {
                if (name != st.name) continue;
                bool eq = module_equal(rd.generators, golden, st.params);
                n.add("module-equal to the expected frame",
                      eq ? ReportNode::Status::Pass : ReportNode::Status::Fail);
            }
            if (rd.integrability)
                n.add("reduced structure closed under the Courant bracket",
                      rd.integrability->integrable ? ReportNode::Status::Pass
                                                   : ReportNode::Status::Fail);
        } catch (const Error& e) {
            root.add_fail("stratum " + st.name, e.what());
        }
    }
    if (!opt.stratum.empty() && !any)
        root.add_fail("stratum " + opt.stratum, "no stratum with this name");
    if (root.has_failures()) root.status = ReportNode::Status::Fail;
    return root;
}

ReportNode run_bracket(const Scene& s, const EngineOptions& opt) {
    ReportNode root("bracket", ReportNode::Status::Pass);
    {
        auto rep = check_integrable(s.dirac);
        auto& n = root.add("upstairs Courant table",
                           rep.integrable ? ReportNode::Status::Pass : ReportNode::Status::Fail,
                           rep.integrable ? "all brackets stay in Gamma(D)"
                                          : "brackets escape Gamma(D)");
        for (const auto& chk : rep.checks) {
            std::string label = "[" + std::to_string(chk.i + 1) + "," + std::to_string(chk.j + 1) + "]";
            if (chk.member) {
                auto& c = n.add_pass(label, chk.bracket.is_zero() ? "vanishes" : "member of Gamma(D)");
                if (!chk.bracket.is_zero())
                    for (const auto& w : chk.witness) c.witnesses.push_back(w.to_string());
            } else {
                n.add(label, ReportNode::Status::Warn, "residual " + chk.residual);
            }
        }
    }
    if (!s.expected.bracket_identities.empty()) {
        auto& n = root.add_pass("reduced bracket identities");
        for (const auto& bi : s.expected.bracket_identities) {
            const std::vector<Section>* frame = nullptr;
            for (const auto& [name, golden] : s.expected.reduced)
                if (name == bi.stratum) frame = &golden;
            if (!frame) {
                n.add_fail(bi.label, "no golden frame");
                continue;
            }
            Section lhs = courant_bracket((*frame)[bi.i], (*frame)[bi.j]);
            Section rhs = Section::zero((*frame)[bi.i].chart());
            for (const auto& [cf, sec] : bi.combination) rhs = rhs + cf * sec;
            n.add(bi.label, lhs == rhs ? ReportNode::Status::Pass : ReportNode::Status::Fail);
        }
        if (n.has_failures()) n.status = ReportNode::Status::Fail;
    }
    (void)opt;
    if (root.has_failures()) root.status = ReportNode::Status::Fail;
    return root;
}

ReportNode run_average(const Scene& s, const EngineOptions& opt) {
    ReportNode root("average", ReportNode::Status::Pass);
    auto report_field = [&](ReportNode& n, const std::string& label, const VectorField& x) {
        try {
            VectorField ax = s.action.average(x);
            bool inv = s.action.is_invariant(ax);
            bool idem = s.action.average(ax) == ax;
            auto& c = n.add(label, inv && idem ? ReportNode::Status::Pass : ReportNode::Status::Fail,
                            ax.to_string());
            c.add("invariant", inv ? ReportNode::Status::Pass : ReportNode::Status::Fail);
            c.add("idempotent", idem ? ReportNode::Status::Pass : ReportNode::Status::Fail);
        } catch (const Error& e) {
            n.add_skip(label, e.what());
        }
    };
    {
        auto& n = root.add_pass("dirac generator fields");
        for (std::size_t i = 0; i < s.dirac.generators().size(); ++i)
            report_field(n, "X_" + std::to_string(i + 1), s.dirac.generators()[i].x);
        if (n.has_failures()) n.status = ReportNode::Status::Fail;
    }
    {
        auto& n = root.add_pass("declared fields");
        for (std::size_t i = 0; i < s.declared_fields.size(); ++i)
            report_field(n, "field_" + std::to_string(i + 1), s.declared_fields[i]);
        if (n.has_failures()) n.status = ReportNode::Status::Fail;
    }
    if (!opt.average_expr.empty()) {
        RatFn f = parse_expr(opt.average_expr, s.chart);
        RatFn af = s.action.average(f);
        bool inv = s.action.is_invariant(af);
        bool idem = s.action.average(af) == af;
        root.add("function " + opt.average_expr,
                 inv && idem ? ReportNode::Status::Pass : ReportNode::Status::Fail, af.to_string());
    }
    if (root.has_failures()) root.status = ReportNode::Status::Fail;
    return root;
}

ReportNode run_hamiltonian(const Scene& s, const EngineOptions& opt) {
    if (opt.hamiltonian.empty())
        throw Error(ErrorKind::InvalidArgument, "hamiltonian command needs --f EXPR");
    ReportNode root("hamiltonian " + opt.hamiltonian, ReportNode::Status::Pass);
    RatFn fr = parse_expr(opt.hamiltonian, s.chart);
    if (!fr.is_polynomial())
        throw Error(ErrorKind::InvalidArgument, "hamiltonian must be polynomial");
    Poly f = fr.as_polynomial();

    auto r = solve_admissible(f, s.dirac);
    if (auto* na = std::get_if<NotAdmissible>(&r)) {
        root.add_warn("admissible", "NotAdmissible: residual " + na->residual.to_string());
        return root;
    }
    auto& sol = std::get<HamiltonianSolution>(r);
    auto& n = root.add_pass("admissible", "X_f = " + sol.xf.to_string());
    {
        std::string gauge = "{";
        for (std::size_t i = 0; i < sol.gauge.generators.size(); ++i) {
            if (i) gauge += ", ";
            gauge += sol.gauge.generators[i].x.to_string();
        }
        gauge += "}";
        n.add_pass("gauge distribution G0", gauge);
    }

    bool f_invariant = s.action.is_invariant(fr);
    if (!f_invariant) {
        root.add_skip("reduction", "hamiltonian is not invariant");
        return root;
    }
    auto inv_sol = invariant_hamiltonian(f, s.dirac, s.action);
    root.add_pass("invariant representative", "X_f = " + inv_sol.xf.to_string());

    if (s.strata.empty()) {
        root.add_skip("reduction", "scene declares no strata");
        return root;
    }
    auto ds = verify_descending(s.descending, s.dirac, s.action, s.samples);
    bool upstairs_integrable = check_integrable(s.dirac).integrable;
    for (const auto& st : s.strata) {
        if (!opt.stratum.empty() && st.name != opt.stratum) continue;
        try {
            ReducedDirac rd = reduced_dirac(ds, s.action, s.quotient, st, opt.bound,
                                            upstairs_integrable);
            auto red = reduce_hamiltonian(inv_sol, s.action, s.quotient, rd, opt.bound);
            auto& c = root.add_pass("stratum " + st.name,
                                    "(X_P, d f_P) = " + red.section.to_string());
            for (const auto& w : red.witness) c.witnesses.push_back(w.to_string());
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::MembershipFailure) root.add_fail("stratum " + st.name, e.what());
            else root.add_warn("stratum " + st.name, e.what());
        }
    }
    if (root.has_failures()) root.status = ReportNode::Status::Fail;
    return root;
}

ReportNode run_probe(const Scene& s, const EngineOptions& opt) {
    ReportNode root("probe", ReportNode::Status::Pass);
    auto ds = verify_descending(s.descending, s.dirac, s.action, s.samples);
    auto [t, tg] = descending_tangent(s.action, s.declared_fields);
    Distribution vg = invariant_codistribution(s.action, s.quotient.basis);

    auto samples = s.samples;
    if (opt.extra_samples > 0) {
        auto extra = random_rational_samples(s, opt.seed, opt.extra_samples);
        samples.insert(samples.end(), extra.begin(), extra.end());
        // random sampling avoids the denominator loci of the scene data;
        // name the excluded locus in the report
        Poly locus = Poly::constant(s.chart, Rat(1));
        for (const auto& g : s.dirac.generators())
            for (const auto& f : g.fiber_components())
                if (!f.den().is_constant()) locus = poly_lcm(locus, f.den());
        for (const auto& d : s.descending)
            for (const auto& f : d.section.fiber_components())
                if (!f.den().is_constant()) locus = poly_lcm(locus, f.den());
        if (!locus.is_constant())
            root.add("excluded sampling locus", ReportNode::Status::Warn,
                     "points with " + locus.to_string() + " = 0 are never sampled");
    }
    auto rep = spanning_hypothesis_probe(s.dirac, t, vg, ds, samples);

    root.status = rep.spanned ? ReportNode::Status::Pass : ReportNode::Status::Fail;
    root.detail = rep.spanned ? "descending sections span the intersection at every sample"
                              : "deficient at a sample";
    for (const auto& ps : rep.samples) {
        root.add(point_str(ps.point),
                 ps.equal ? ReportNode::Status::Pass : ReportNode::Status::Warn,
                 "descending span " + std::to_string(ps.descending_dim) + ", intersection " +
                     std::to_string(ps.intersection_dim));
    }
    if (s.expected.probe != SceneExpected::Probe::NotChecked) {
        bool want = s.expected.probe == SceneExpected::Probe::Pass;
        root.add("matches the scene's declared verdict",
                 rep.spanned == want ? ReportNode::Status::Pass : ReportNode::Status::Fail);
    }
    return root;
}

ReportNode run_flow(const Scene& s, const EngineOptions& opt) {
    if (opt.field.empty() || opt.start.empty())
        throw Error(ErrorKind::InvalidArgument, "flow needs --field and --start");

    VectorField x = VectorField::zero(s.chart);
    if (opt.field.rfind("tg:", 0) == 0) {
        std::size_t i = (std::size_t)std::stoul(opt.field.substr(3));
        if (i < 1 || i > s.declared_fields.size())
            throw Error(ErrorKind::InvalidArgument, "tg index out of range");
        x = s.declared_fields[i - 1];
    } else if (opt.field.rfind("vertical:", 0) == 0) {
        std::size_t i = (std::size_t)std::stoul(opt.field.substr(9));
        if (i < 1 || i > s.action.fundamental_fields().size())
            throw Error(ErrorKind::InvalidArgument, "vertical index out of range");
        x = s.action.fundamental_fields()[i - 1];
    } else {
        x = VectorField::parse(s.chart, split(opt.field, ','));
    }

    std::vector<Rat> start;
    for (const auto& piece : split(opt.start, ',')) start.push_back(rat_from_string(piece));

    auto res = flow_numeric(x, start, opt.time, opt.steps, s.strata);
    ReportNode root("flow", ReportNode::Status::Pass);
    {
        std::ostringstream fin;
        fin.precision(17);
        fin << "(";
        const auto& last = res.trajectory.back();
        for (std::size_t i = 0; i < last.size(); ++i) {
            if (i) fin << ", ";
            fin << last[i];
        }
        fin << ")";
        root.add(res.aborted ? "aborted near a denominator zero" : "endpoint",
                 res.aborted ? ReportNode::Status::Warn : ReportNode::Status::Pass, fin.str());
    }
    for (const auto& [name, worst] : res.drift) {
        std::ostringstream d;
        d.precision(17);
        d << worst;
        // advisory only: numeric probes never gate the exact checks
        root.add("stratum " + name + " membership drift",
                 worst < 1e-6 ? ReportNode::Status::Pass : ReportNode::Status::Warn, d.str());
    }
    return root;
}

} // namespace

Report run_command(const Scene& scene, const std::string& command, const EngineOptions& opt) {
    Report rep;
    rep.command = command;
    rep.scene = scene.name;
    if (command == "check") rep.root = validate_scene(scene, opt.bound);
    else if (command == "reduce") rep.root = run_reduce(scene, opt);
    else if (command == "bracket") rep.root = run_bracket(scene, opt);
    else if (command == "average") rep.root = run_average(scene, opt);
    else if (command == "hamiltonian") rep.root = run_hamiltonian(scene, opt);
    else if (command == "probe") rep.root = run_probe(scene, opt);
    else if (command == "flow") rep.root = run_flow(scene, opt);
    else
        throw Error(ErrorKind::InvalidArgument,
                    "unknown command '" + command +
                        "' (expected check|reduce|bracket|average|hamiltonian|probe|flow)");
    return rep;
}

} // namespace diracred
