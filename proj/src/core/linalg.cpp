#include "linalg.hpp"

#include <algorithm>

namespace diracred {

QMat QMat::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return QMat();
    QMat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.c_)
            throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
        for (std::size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Rat> QMat::row(std::size_t i) const {
    std::vector<Rat> out(c_);
    for (std::size_t j = 0; j < c_; ++j) out[j] = at(i, j);
    return out;
}

std::vector<std::size_t> QMat::rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
        std::size_t sel = row;
        while (sel < r_ && at(sel, col) == 0) ++sel;
        if (sel == r_) continue;
        if (sel != row)
            for (std::size_t j = 0; j < c_; ++j) std::swap(at(sel, j), at(row, j));
        Rat inv = Rat(1) / at(row, col);
        for (std::size_t j = col; j < c_; ++j) at(row, j) *= inv;
        for (std::size_t i = 0; i < r_; ++i) {
            if (i == row || at(i, col) == 0) continue;
            Rat f = at(i, col);
            for (std::size_t j = col; j < c_; ++j) at(i, j) -= f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t QMat::rank() const {
    QMat tmp = *this;
    return tmp.rref().size();
}

std::vector<std::vector<Rat>> QMat::kernel() const {
    QMat tmp = *this;
    auto pivots = tmp.rref();
    std::vector<bool> is_pivot(c_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < c_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(c_, Rat(0));
        v[free] = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            v[pivots[pi]] = -tmp.at(pi, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> QMat::solve(const std::vector<Rat>& b) const {
    if (b.size() != r_) throw Error(ErrorKind::InvalidArgument, "rhs size mismatch");
    QMat aug(r_, c_ + 1);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, c_) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == c_) return std::nullopt; // 0 = 1 row
    std::vector<Rat> x(c_, Rat(0));
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug.at(pi, c_);
    return x;
}

std::vector<std::vector<Rat>> QMat::row_basis() const {
    QMat tmp = *this;
    auto pivots = tmp.rref();
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < pivots.size(); ++i) rows.push_back(tmp.row(i));
    return rows;
}

bool spans_contain(const std::vector<std::vector<Rat>>& big,
                   const std::vector<std::vector<Rat>>& small) {
    if (small.empty()) return true;
    QMat b = QMat::from_rows(big);
    std::size_t rb = b.rank();
    std::vector<std::vector<Rat>> all = big;
    for (const auto& v : small) all.push_back(v);
    return QMat::from_rows(all).rank() == rb;
}

bool spans_equal(const std::vector<std::vector<Rat>>& a,
                 const std::vector<std::vector<Rat>>& b) {
    return spans_contain(a, b) && spans_contain(b, a);
}

std::size_t span_rank(const std::vector<std::vector<Rat>>& v) {
    if (v.empty()) return 0;
    return QMat::from_rows(v).rank();
}

std::vector<std::vector<Rat>> span_intersect(const std::vector<std::vector<Rat>>& a,
                                             const std::vector<std::vector<Rat>>& b,
                                             std::size_t dim) {
    // x in span(a) ∩ span(b)  <=>  x = s·a = t·b; solve [aᵀ | -bᵀ] (s,t) = 0.
    if (a.empty() || b.empty()) return {};
    QMat m(dim, a.size() + b.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = a[j][i];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, a.size() + j) = -b[j][i];
    auto null_basis = m.kernel();
    std::vector<std::vector<Rat>> vecs;
    for (const auto& st : null_basis) {
        std::vector<Rat> x(dim, Rat(0));
        for (std::size_t j = 0; j < a.size(); ++j)
            for (std::size_t i = 0; i < dim; ++i) x[i] += st[j] * a[j][i];
        bool nonzero = false;
        for (const auto& xi : x) if (xi != 0) { nonzero = true; break; }
        if (nonzero) vecs.push_back(std::move(x));
    }
    if (vecs.empty()) return {};
    return QMat::from_rows(vecs).row_basis();
}

// ---------------------------------------------------------------------------

FMat::FMat(std::size_t rows, std::size_t cols, const ChartPtr& chart)
    : r_(rows), c_(cols), chart_(chart), a_(rows * cols, RatFn(chart)) {}

FMat FMat::from_rows(const std::vector<std::vector<RatFn>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw Error(ErrorKind::InvalidArgument, "empty matrix");
    FMat m(rows.size(), rows.front().size(), rows.front().front().chart());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.c_)
            throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
        for (std::size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

struct FMat::Echelon {
    // Polynomial echelon form: rows scaled by nonzero functions, so row
    // spaces and kernels agree with the original matrix.
    std::vector<std::vector<Poly>> m;
    std::vector<Poly> rhs;            // scaled along with rows when present
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> row_origin; // original row index per echelon row
    Poly pivot_product;
    bool rhs_inconsistent = false;
};

FMat::Echelon FMat::eliminate(const std::vector<RatFn>* rhs_in) const {
    Echelon e;
    e.pivot_product = Poly::constant(chart_, Rat(1));
    // clear denominators row by row
    std::vector<std::vector<Poly>> m(r_, std::vector<Poly>(c_ + (rhs_in ? 1 : 0), Poly(chart_)));
    for (std::size_t i = 0; i < r_; ++i) {
        Poly l = Poly::constant(chart_, Rat(1));
        for (std::size_t j = 0; j < c_; ++j) l = poly_lcm(l, at(i, j).den());
        if (rhs_in) l = poly_lcm(l, (*rhs_in)[i].den());
        for (std::size_t j = 0; j < c_; ++j) {
            const RatFn& f = at(i, j);
            m[i][j] = f.num() * *poly_divide_exact(l, f.den());
        }
        if (rhs_in) {
            const RatFn& f = (*rhs_in)[i];
            m[i][c_] = f.num() * *poly_divide_exact(l, f.den());
        }
    }

    std::vector<std::size_t> origin(r_);
    for (std::size_t i = 0; i < r_; ++i) origin[i] = i;

    Poly prev = Poly::constant(chart_, Rat(1));
    std::size_t row = 0;
    const std::size_t wid = c_ + (rhs_in ? 1 : 0);
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
        // pick the structurally smallest nonzero pivot to limit swell
        std::size_t sel = r_;
        std::size_t best_terms = 0;
        for (std::size_t i = row; i < r_; ++i) {
            if (m[i][col].is_zero()) continue;
            std::size_t nt = m[i][col].terms().size();
            if (sel == r_ || nt < best_terms) { sel = i; best_terms = nt; }
        }
        if (sel == r_) continue;
        std::swap(m[sel], m[row]);
        std::swap(origin[sel], origin[row]);
        const Poly pivot = m[row][col];
        for (std::size_t i = row + 1; i < r_; ++i) {
            for (std::size_t j = 0; j < wid; ++j) {
                if (j == col) continue;
                Poly t = m[i][j] * pivot - m[i][col] * m[row][j];
                auto q = poly_divide_exact(t, prev);
                if (!q) throw Error(ErrorKind::Internal, "Bareiss division failed");
                m[i][j] = std::move(*q);
            }
            m[i][col] = Poly(chart_);
        }
        prev = pivot;
        e.pivot_product = pivot; // last pivot = n-minor of the leading block
        e.pivot_cols.push_back(col);
        ++row;
    }

    if (rhs_in) {
        for (std::size_t i = row; i < r_; ++i)
            if (!m[i][c_].is_zero()) { e.rhs_inconsistent = true; break; }
    }

    e.m.assign(m.begin(), m.begin() + (long)row);
    if (rhs_in) {
        e.rhs.resize(row, Poly(chart_));
        for (std::size_t i = 0; i < row; ++i) {
            e.rhs[i] = e.m[i][c_];
            e.m[i].resize(c_);
        }
    }
    e.row_origin.assign(origin.begin(), origin.begin() + (long)row);
    return e;
}

std::size_t FMat::rank() const {
    return eliminate(nullptr).pivot_cols.size();
}

std::vector<std::size_t> FMat::independent_rows() const {
    auto e = eliminate(nullptr);
    auto rows = e.row_origin;
    std::sort(rows.begin(), rows.end());
    return rows;
}

Poly FMat::pivot_minor() const {
    return eliminate(nullptr).pivot_product;
}

namespace {

// Clears denominators and common polynomial factors of a kernel vector so it
// prints as a primitive polynomial section.
std::vector<RatFn> clear_vector(const std::vector<RatFn>& v, const ChartPtr& chart) {
    Poly l = Poly::constant(chart, Rat(1));
    for (const auto& f : v) l = poly_lcm(l, f.den());
    std::vector<Poly> nums;
    nums.reserve(v.size());
    for (const auto& f : v) nums.push_back(f.num() * *poly_divide_exact(l, f.den()));
    Poly g(chart);
    for (const auto& p : nums) g = poly_gcd(g, p);
    std::vector<RatFn> out;
    out.reserve(v.size());
    for (auto& p : nums) {
        if (!g.is_zero() && !g.is_constant()) p = *poly_divide_exact(p, g);
        out.emplace_back(p);
    }
    return out;
}

} // namespace

std::vector<std::vector<RatFn>> FMat::kernel() const {
    auto e = eliminate(nullptr);
    std::vector<bool> is_pivot(c_, false);
    for (auto p : e.pivot_cols) is_pivot[p] = true;
    std::vector<std::vector<RatFn>> basis;
    const std::size_t nr = e.m.size();
    for (std::size_t free = 0; free < c_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<RatFn> x(c_, RatFn(chart_));
        x[free] = RatFn::constant(chart_, Rat(1));
        // back-substitute in echelon order
        for (std::size_t ri = nr; ri-- > 0;) {
            std::size_t pc = e.pivot_cols[ri];
            RatFn acc(chart_);
            for (std::size_t j = pc + 1; j < c_; ++j) {
                if (e.m[ri][j].is_zero() || x[j].is_zero()) continue;
                acc += RatFn(e.m[ri][j]) * x[j];
            }
            x[pc] = -acc / RatFn(e.m[ri][pc]);
        }
        basis.push_back(clear_vector(x, chart_));
    }
    return basis;
}

std::pair<std::vector<RatFn>, bool> FMat::solve_detailed(const std::vector<RatFn>& b) const {
    if (b.size() != r_) throw Error(ErrorKind::InvalidArgument, "rhs size mismatch");
    auto e = eliminate(&b);
    std::vector<RatFn> x(c_, RatFn(chart_));
    const std::size_t nr = e.m.size();
    for (std::size_t ri = nr; ri-- > 0;) {
        std::size_t pc = e.pivot_cols[ri];
        RatFn acc = RatFn(e.rhs[ri]);
        for (std::size_t j = pc + 1; j < c_; ++j) {
            if (e.m[ri][j].is_zero() || x[j].is_zero()) continue;
            acc -= RatFn(e.m[ri][j]) * x[j];
        }
        x[pc] = acc / RatFn(e.m[ri][pc]);
    }
    return {std::move(x), !e.rhs_inconsistent};
}

std::optional<std::vector<RatFn>> FMat::solve(const std::vector<RatFn>& b) const {
    auto [x, ok] = solve_detailed(b);
    if (!ok) return std::nullopt;
    return std::move(x);
}

} // namespace diracred
