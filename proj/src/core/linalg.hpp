#ifndef DIRACRED_CORE_LINALG_HPP
#define DIRACRED_CORE_LINALG_HPP

#include <optional>
#include <vector>

#include "ratfn.hpp"

namespace diracred {

/// Dense exact matrix over Q. Rows are the natural unit here: subspaces are
/// handed around as lists of spanning row vectors.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rat(0)) {}
    static QMat from_rows(const std::vector<std::vector<Rat>>& rows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    std::vector<Rat> row(std::size_t i) const;

    /// In-place reduced row echelon form; returns pivot column indices.
    std::vector<std::size_t> rref();

    std::size_t rank() const;

    /// Basis of { x : M x = 0 } as rows.
    std::vector<std::vector<Rat>> kernel() const;

    /// One solution of M x = b with free variables set to zero.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

    /// Row-reduced basis of the row space (deterministic canonical form).
    std::vector<std::vector<Rat>> row_basis() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

bool spans_contain(const std::vector<std::vector<Rat>>& big,
                   const std::vector<std::vector<Rat>>& small);
bool spans_equal(const std::vector<std::vector<Rat>>& a,
                 const std::vector<std::vector<Rat>>& b);
std::size_t span_rank(const std::vector<std::vector<Rat>>& v);
/// Basis rows of span(a) ∩ span(b).
std::vector<std::vector<Rat>> span_intersect(const std::vector<std::vector<Rat>>& a,
                                             const std::vector<std::vector<Rat>>& b,
                                             std::size_t dim);

/// Dense matrix over the rational-function field Q(x1..xn).
/// Elimination follows Bareiss: rows are cleared to polynomials and the
/// fraction-free pivot formula keeps intermediate entries polynomial, with
/// exact division by the previous pivot.
class FMat {
public:
    FMat(std::size_t rows, std::size_t cols, const ChartPtr& chart);
    static FMat from_rows(const std::vector<std::vector<RatFn>>& rows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    const ChartPtr& chart() const { return chart_; }
    RatFn& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const RatFn& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::size_t rank() const;

    /// Basis of the right kernel over Q(x), denominators cleared so each
    /// basis vector has polynomial entries with no common factor.
    std::vector<std::vector<RatFn>> kernel() const;

    /// One solution of M x = b with free variables set to zero; nullopt when
    /// inconsistent.
    std::optional<std::vector<RatFn>> solve(const std::vector<RatFn>& b) const;

    /// Like solve, but on inconsistent systems returns the solution of the
    /// consistent pivot rows (free variables zero) with consistent=false.
    std::pair<std::vector<RatFn>, bool> solve_detailed(const std::vector<RatFn>& b) const;

    /// Indices of a maximal set of linearly independent rows (first-wins).
    std::vector<std::size_t> independent_rows() const;

    /// Product of the Bareiss pivots of a maximal-rank elimination: a single
    /// n-minor of the matrix. Vanishing locus is a proxy for where the frame
    /// degenerates.
    Poly pivot_minor() const;

private:
    struct Echelon;
    Echelon eliminate(const std::vector<RatFn>* rhs) const;

    std::size_t r_ = 0, c_ = 0;
    ChartPtr chart_;
    std::vector<RatFn> a_;
};

} // namespace diracred

#endif
