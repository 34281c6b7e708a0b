#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "discop/finsupp.hpp"
#include "discop/instance.hpp"

namespace discop {

/// Dense square matrix of exact complex rationals, row-major. Only used for
/// small ground-truth computations, so nothing here is tuned for size.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::int64_t n)
        : n_(n), a_(static_cast<std::size_t>(n * n)) {}

    std::int64_t size() const { return n_; }
    ComplexRat& at(std::int64_t i, std::int64_t j) {
        return a_[static_cast<std::size_t>(i * n_ + j)];
    }
    const ComplexRat& at(std::int64_t i, std::int64_t j) const {
        return a_[static_cast<std::size_t>(i * n_ + j)];
    }

    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix&) const = default;

private:
    std::int64_t n_ = 0;
    std::vector<ComplexRat> a_;
};

/// Exact matrix picture of the operator on the span of the support basis:
/// m_c[y][x] = 1 iff the map sends y to x, so m_c turns coordinates of f
/// into coordinates of f-after-the-map; m_c_star is the mu-weighted adjoint
/// gram^-1 * conj(m_c)^T * gram.
struct WeightedMatrixRep {
    std::vector<Label> basis;  // support, in point order
    std::vector<Rat> gram;     // mu along the basis
    Matrix m_c;
    Matrix m_c_star;

    std::int64_t index_of(const Label& x) const;  // -1 when absent
};

/// Throws NotNonsingular; otherwise the support is closed under the map and
/// the matrices are well defined.
WeightedMatrixRep build_matrices(const FiniteInstance& inst);

/// Exact product comparisons on the matrix picture.
bool oracle_normal(const FiniteInstance& inst);
bool oracle_quasinormal(const FiniteInstance& inst);
/// Symmetry in the mu-pairing is exactly m_c == m_c_star.
bool oracle_symmetric(const FiniteInstance& inst);

/// Column x of `m`, read back as a finitely supported function over the
/// rep's basis.
FinSuppFn column_fn(const WeightedMatrixRep& rep, const Matrix& m, const Label& x);

/// Column of the adjoint matrix at x; the independent value that
/// apply_c_star of a basis vector must reproduce.
FinSuppFn oracle_adjoint_column(const FiniteInstance& inst, const Label& x);

/// Every instance on points x0..x{n-1} for n = 1..max_points, every map,
/// every measure with values from the grid (the all-zero measure is
/// skipped). Lexicographic in (n, map encoding, measure encoding).
std::vector<FiniteInstance> enumerate_instances(std::int64_t max_points,
                                                const std::vector<Rat>& weight_grid);

struct Disagreement {
    std::string instance;
    std::string property;
    std::string classifier;
    std::string oracle;

    bool operator==(const Disagreement&) const = default;
};

struct CrosscheckReport {
    std::int64_t instances_enumerated = 0;
    std::vector<Disagreement> disagreements;

    bool operator==(const CrosscheckReport&) const = default;
};

/// Runs every classifier against the matrix oracle over the full
/// enumeration. Instances that are not nonsingular do not reach the oracle
/// (composition is not an operator there) and are not counted; the
/// classifiers are still required to refuse them.
CrosscheckReport exhaustive_crosscheck(std::int64_t max_points,
                                       const std::vector<Rat>& weight_grid);

}  // namespace discop
