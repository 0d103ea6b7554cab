#include "distribution.hpp"

#include <sstream>

namespace diracred {

Distribution Distribution::tangent(const ChartPtr& c, const std::vector<VectorField>& fields) {
    Distribution d;
    d.chart = c;
    d.kind = DistKind::Tangent;
    for (const auto& f : fields) {
        require_same_chart(c, f.chart, "tangent distribution");
        d.generators.emplace_back(f, OneForm::zero(c));
    }
    return d;
}

Distribution Distribution::cotangent(const ChartPtr& c, const std::vector<OneForm>& forms) {
    Distribution d;
    d.chart = c;
    d.kind = DistKind::Cotangent;
    for (const auto& a : forms) {
        require_same_chart(c, a.chart, "cotangent distribution");
        d.generators.emplace_back(VectorField::zero(c), a);
    }
    return d;
}

Distribution Distribution::pontryagin(const ChartPtr& c, std::vector<Section> sections) {
    Distribution d;
    d.chart = c;
    d.kind = DistKind::Pontryagin;
    for (const auto& s : sections) require_same_chart(c, s.chart(), "distribution");
    d.generators = std::move(sections);
    return d;
}

Distribution operator+(const Distribution& a, const Distribution& b) {
    require_same_chart(a.chart, b.chart, "distribution sum");
    Distribution d;
    d.chart = a.chart;
    d.kind = (a.kind == b.kind) ? a.kind : DistKind::Pontryagin;
    d.generators = a.generators;
    d.generators.insert(d.generators.end(), b.generators.begin(), b.generators.end());
    d.generic_only = a.generic_only || b.generic_only;
    return d;
}

bool PointSubspace::contains(const std::vector<Rat>& v) const {
    std::vector<std::vector<Rat>> rows = basis;
    rows.push_back(v);
    return span_rank(rows) == basis.size();
}

bool PointSubspace::equals(const PointSubspace& o) const {
    return point == o.point && spans_equal(basis, o.basis);
}

namespace {

std::vector<Rat> fiber_value_checked(const Section& s, const std::vector<Rat>& p,
                                     std::size_t generator_index) {
    auto comps = s.fiber_components();
    std::vector<Rat> out;
    out.reserve(comps.size());
    for (const auto& f : comps) {
        if (f.denominator_vanishes_at(p))
            throw Error(ErrorKind::DenominatorVanishes,
                        "generator " + std::to_string(generator_index + 1) +
                            " has denominator " + f.den().to_string() + " vanishing at the sample");
        out.push_back(f.eval(p));
    }
    return out;
}

// Row of the pairing-Gram system for sigma: tau |-> <sigma, tau> has matrix
// sigma^T J with J = [[0,I],[I,0]].
template <typename T>
std::vector<T> pairing_row(const std::vector<T>& sigma, std::size_t n) {
    std::vector<T> row(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        row[i] = sigma[n + i]; // alpha part pairs tangent slots
        row[n + i] = sigma[i]; // vector part pairs covector slots
    }
    return row;
}

} // namespace

PointSubspace eval_at(const Distribution& d, const std::vector<Rat>& p) {
    if (p.size() != d.chart->dim())
        throw Error(ErrorKind::InvalidArgument, "sample point dimension mismatch");
    PointSubspace out;
    out.point = p;
    if (d.generators.empty()) return out;
    std::vector<std::vector<Rat>> rows;
    rows.reserve(d.generators.size());
    for (std::size_t i = 0; i < d.generators.size(); ++i)
        rows.push_back(fiber_value_checked(d.generators[i], p, i));
    out.basis = QMat::from_rows(rows).row_basis();
    return out;
}

PointSubspace pointwise_orthogonal_at(const Distribution& d, const std::vector<Rat>& p) {
    const std::size_t n = d.chart->dim();
    PointSubspace out;
    out.point = p;
    if (d.generators.empty()) {
        // full fiber
        for (std::size_t i = 0; i < 2 * n; ++i) {
            std::vector<Rat> e(2 * n, Rat(0));
            e[i] = 1;
            out.basis.push_back(std::move(e));
        }
        return out;
    }
    std::vector<std::vector<Rat>> rows;
    rows.reserve(d.generators.size());
    for (std::size_t i = 0; i < d.generators.size(); ++i)
        rows.push_back(pairing_row(fiber_value_checked(d.generators[i], p, i), n));
    auto ker = QMat::from_rows(rows).kernel();
    out.basis = ker.empty() ? ker : QMat::from_rows(ker).row_basis();
    return out;
}

Distribution generic_orthogonal(const Distribution& d) {
    const std::size_t n = d.chart->dim();
    Distribution out;
    out.chart = d.chart;
    out.kind = DistKind::Pontryagin;
    out.generic_only = true;

    std::vector<std::vector<RatFn>> kernel_vecs;
    if (d.generators.empty()) {
        for (std::size_t i = 0; i < 2 * n; ++i) {
            std::vector<RatFn> e(2 * n, RatFn(d.chart));
            e[i] = RatFn::constant(d.chart, Rat(1));
            kernel_vecs.push_back(std::move(e));
        }
    } else {
        std::vector<std::vector<RatFn>> rows;
        rows.reserve(d.generators.size());
        for (const auto& g : d.generators) rows.push_back(pairing_row(g.fiber_components(), n));
        kernel_vecs = FMat::from_rows(rows).kernel();
    }

    bool pure_tangent = true, pure_cotangent = true;
    for (const auto& v : kernel_vecs) {
        std::vector<RatFn> xs(v.begin(), v.begin() + (long)n);
        std::vector<RatFn> as(v.begin() + (long)n, v.end());
        VectorField x(d.chart, std::move(xs));
        OneForm a(d.chart, std::move(as));
        if (!a.is_zero()) pure_tangent = false;
        if (!x.is_zero()) pure_cotangent = false;
        out.generators.emplace_back(std::move(x), std::move(a));
    }
    if (!out.generators.empty()) {
        if (pure_tangent) out.kind = DistKind::Tangent;
        else if (pure_cotangent) out.kind = DistKind::Cotangent;
    }
    return out;
}

std::size_t generic_rank(const Distribution& d) {
    if (d.generators.empty()) return 0;
    std::vector<std::vector<RatFn>> rows;
    rows.reserve(d.generators.size());
    for (const auto& g : d.generators) rows.push_back(g.fiber_components());
    return FMat::from_rows(rows).rank();
}

MembershipResult membership_generic(const Section& s, const Distribution& d) {
    require_same_chart(s.chart(), d.chart, "membership");
    const std::size_t n = d.chart->dim();
    auto rhs = s.fiber_components();
    if (d.generators.empty()) {
        if (s.is_zero()) return MembershipWitness{{}};
        return NotMember{s};
    }
    FMat m(2 * n, d.generators.size(), d.chart);
    for (std::size_t j = 0; j < d.generators.size(); ++j) {
        auto col = d.generators[j].fiber_components();
        for (std::size_t i = 0; i < 2 * n; ++i) m.at(i, j) = col[i];
    }
    auto [x, ok] = m.solve_detailed(rhs);
    if (ok) return MembershipWitness{std::move(x)};

    // inconsistent: residual is s minus the combination solving the
    // consistent pivot rows
    Section best = Section::zero(d.chart);
    for (std::size_t j = 0; j < d.generators.size(); ++j) {
        if (x[j].is_zero()) continue;
        best = best + x[j] * d.generators[j];
    }
    return NotMember{s - best};
}

bool is_member_generic(const Section& s, const Distribution& d) {
    return std::holds_alternative<MembershipWitness>(membership_generic(s, d));
}

bool is_member_at(const Section& s, const Distribution& d, const std::vector<Rat>& p) {
    auto sub = eval_at(d, p);
    return sub.contains(s.fiber_at(p));
}

IntersectionReport intersection_report(const Distribution& d1, const Distribution& d2,
                                       const std::vector<std::vector<Rat>>& samples) {
    require_same_chart(d1.chart, d2.chart, "intersection report");
    if (samples.empty())
        throw Error(ErrorKind::InvalidArgument, "intersection report needs at least one sample");
    const std::size_t dim = 2 * d1.chart->dim();

    const std::size_t gr1 = generic_rank(d1);
    const std::size_t gr2 = generic_rank(d2);
    for (const auto& p : samples) {
        if (eval_at(d1, p).rank() != gr1 || eval_at(d2, p).rank() != gr2)
            throw Error(ErrorKind::NotASubbundle,
                        "pointwise rank differs from generic rank at a sample; inputs must be subbundles");
    }

    IntersectionReport rep;
    Distribution sum = d1 + d2;
    // generically D1^perp ∩ D2^perp = (D1+D2)^perp
    std::size_t generic_inter_rank = generic_rank(generic_orthogonal(sum));
    // dim(D1(p) ∩ D2(p)) via orthogonals is cleaner pointwise:
    bool smooth_ok = true, sum_ok = true, dbl_ok = true;
    std::vector<std::size_t> ranks;
    for (const auto& p : samples) {
        auto o1 = pointwise_orthogonal_at(d1, p);
        auto o2 = pointwise_orthogonal_at(d2, p);
        auto inter = span_intersect(o1.basis, o2.basis, dim);
        ranks.push_back(inter.size());

        auto sum_perp = pointwise_orthogonal_at(sum, p);
        if (!spans_equal(sum_perp.basis, inter)) sum_ok = false;

        // (D1^perp ∩ D2^perp)^perp at p vs D1(p)+D2(p)
        auto e1 = eval_at(d1, p);
        auto e2 = eval_at(d2, p);
        std::vector<std::vector<Rat>> sum_basis = e1.basis;
        sum_basis.insert(sum_basis.end(), e2.basis.begin(), e2.basis.end());
        // orthogonal of the intersection span, pointwise
        std::vector<std::vector<Rat>> rows;
        for (const auto& v : inter) rows.push_back(pairing_row(v, d1.chart->dim()));
        std::vector<std::vector<Rat>> inter_perp;
        if (rows.empty()) {
            for (std::size_t i = 0; i < dim; ++i) {
                std::vector<Rat> e(dim, Rat(0));
                e[i] = 1;
                inter_perp.push_back(std::move(e));
            }
        } else {
            inter_perp = QMat::from_rows(rows).kernel();
        }
        if (!spans_equal(inter_perp, sum_basis)) dbl_ok = false;

        // smoothness proxy: the pointwise intersection of the orthogonals
        // attains the generic rank of (D1+D2)^perp
        if (inter.size() != generic_inter_rank) smooth_ok = false;
    }
    bool const_rank = true;
    for (const auto& r : ranks)
        if (r != ranks.front()) const_rank = false;

    rep.smooth_proxy = smooth_ok;
    rep.sum_orthogonal = sum_ok;
    rep.double_orthogonal = dbl_ok;
    rep.constant_rank = const_rank;
    rep.intersection_ranks = std::move(ranks);
    bool all = rep.smooth_proxy && rep.sum_orthogonal && rep.double_orthogonal && rep.constant_rank;
    bool none = !rep.smooth_proxy && !rep.sum_orthogonal && !rep.double_orthogonal && !rep.constant_rank;
    rep.consistent = all || none;
    if (!rep.consistent) {
        std::ostringstream msg;
        msg << "mixed verdict on subbundle inputs (smooth=" << rep.smooth_proxy
            << " sum_perp=" << rep.sum_orthogonal << " double_perp=" << rep.double_orthogonal
            << " const_rank=" << rep.constant_rank << ")";
        rep.detail = msg.str();
        throw Error(ErrorKind::Internal, rep.detail);
    }
    return rep;
}

} // namespace diracred
