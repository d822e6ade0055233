#pragma once

// Finite-dimensional C*-algebras in Wedderburn form A = M_{n_1} (+) ... (+) M_{n_B},
// their elements, amplifications Mat_{r x c}(A), ideals and central elements.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "opmod/errors.hpp"
#include "opmod/tolerance.hpp"

namespace opmod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Spectral norm (largest singular value) of a dense complex matrix.
double spectral_norm(const Matrix& m);

class FdCStarAlgebra {
public:
    /// Throws InvalidInput on an empty list or a nonpositive block size.
    explicit FdCStarAlgebra(std::vector<int> blocks);

    std::size_t block_count() const noexcept { return blocks_.size(); }
    int block_size(std::size_t b) const { return blocks_.at(b); }
    const std::vector<int>& blocks() const noexcept { return blocks_; }
    /// Complex dimension, sum of n_b^2.
    std::size_t dimension() const noexcept;

    std::string describe() const;

    friend bool operator==(const FdCStarAlgebra&, const FdCStarAlgebra&) = default;

private:
    std::vector<int> blocks_;
};

FdCStarAlgebra make_algebra(std::vector<int> blocks);

void require_same_algebra(const FdCStarAlgebra& a, const FdCStarAlgebra& b, const char* what);

class AlgebraElement {
public:
    /// Validates that `blocks` has one n_b x n_b matrix per algebra block.
    AlgebraElement(FdCStarAlgebra algebra, std::vector<Matrix> blocks);

    static AlgebraElement zero(const FdCStarAlgebra& algebra);
    static AlgebraElement identity(const FdCStarAlgebra& algebra);
    /// Central element (+)_b s_b * Identity_{n_b}.
    static AlgebraElement central(const FdCStarAlgebra& algebra, std::span<const Complex> scalars);

    const FdCStarAlgebra& algebra() const noexcept { return algebra_; }
    const Matrix& block(std::size_t b) const { return blocks_.at(b); }
    const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

    AlgebraElement adjoint() const;
    AlgebraElement scaled(Complex s) const;

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(Complex s, const AlgebraElement& a) { return a.scaled(s); }

private:
    FdCStarAlgebra algebra_;
    std::vector<Matrix> blocks_;
};

enum class ArithmeticOp { add, mul, adjoint, scale };

/// Dispatching form of the blockwise arithmetic; `b` is ignored for adjoint
/// and scale, `s` is used only by scale.
AlgebraElement element_arithmetic(const AlgebraElement& a, const AlgebraElement& b, ArithmeticOp op,
                                  Complex s = 1.0);

/// C*-norm: max over blocks of the largest singular value.
double norm(const AlgebraElement& a);

bool is_positive(const AlgebraElement& a, double tol);

enum class IntervalKind { open_open, open_closed };

struct SpectralProjection {
    AlgebraElement projection;
    /// Eigenvalues whose membership flips between exact and tolerant selection.
    std::vector<std::string> warnings;
    bool ambiguous() const noexcept { return !warnings.empty(); }
};

/// e_a(lo, hi) or e_a(lo, hi] for a positive element. Eigenvalues are kept when
/// lo + eps < lambda and lambda < hi - eps (open_open) or lambda <= hi + eps
/// (open_closed), eps = tol.spectral. Throws DomainError if `a` is not positive.
SpectralProjection spectral_projection(const AlgebraElement& a, double lo, double hi, IntervalKind kind,
                                       const ToleranceProfile& tol = kDefaultTolerances);

/// Projection onto the range of a positive element: e_{a/|a|}(0,1]; zero for a = 0.
AlgebraElement support_projection(const AlgebraElement& a, const ToleranceProfile& tol = kDefaultTolerances);

/// Smallest central projection z with z a = a.
AlgebraElement central_cover(const AlgebraElement& a, const ToleranceProfile& tol = kDefaultTolerances);

/// A closed two-sided ideal: a subset of the blocks.
class IdealDescriptor {
public:
    IdealDescriptor(FdCStarAlgebra algebra, std::vector<std::size_t> support);
    static IdealDescriptor full(const FdCStarAlgebra& algebra);
    static IdealDescriptor empty(const FdCStarAlgebra& algebra);

    const FdCStarAlgebra& algebra() const noexcept { return algebra_; }
    /// Sorted, duplicate-free block indices.
    const std::vector<std::size_t>& support() const noexcept { return support_; }
    bool contains(std::size_t b) const;
    bool is_subset_of(const IdealDescriptor& other) const;
    bool is_full() const noexcept { return support_.size() == algebra_.block_count(); }
    IdealDescriptor intersect(const IdealDescriptor& other) const;
    /// The unit of M(I): identity on supported blocks, zero elsewhere.
    AlgebraElement unit() const;

    friend bool operator==(const IdealDescriptor&, const IdealDescriptor&) = default;

private:
    FdCStarAlgebra algebra_;
    std::vector<std::size_t> support_;
};

/// Blocks on which some element of `elements` is nonzero.
IdealDescriptor ideal_generated_by(const FdCStarAlgebra& algebra, std::span<const AlgebraElement> elements,
                                   const ToleranceProfile& tol = kDefaultTolerances);

/// A positive element of Z(M(I)): one nonnegative scalar per block, zero off I.
class CentralPositive {
public:
    /// `scalars` has one entry per algebra block. Throws InvalidInput on a
    /// negative entry or a nonzero entry outside the ideal.
    CentralPositive(IdealDescriptor ideal, std::vector<double> scalars);
    static CentralPositive unit(const IdealDescriptor& ideal);

    const IdealDescriptor& ideal() const noexcept { return ideal_; }
    const FdCStarAlgebra& algebra() const noexcept { return ideal_.algebra(); }
    const std::vector<double>& scalars() const noexcept { return scalars_; }
    double scalar(std::size_t b) const { return scalars_.at(b); }

    AlgebraElement to_element() const;
    CentralPositive sqrt() const;
    /// Reciprocal where lambda_b > cutoff, zero elsewhere.
    CentralPositive pseudo_inverse(double cutoff) const;
    /// Blocks with lambda_b > cutoff.
    IdealDescriptor support(double cutoff) const;
    double norm() const;

private:
    IdealDescriptor ideal_;
    std::vector<double> scalars_;
};

/// Generators of Z(M(I)): one block indicator per supported block.
std::vector<CentralPositive> center_basis(const IdealDescriptor& ideal);

/// Lift of an element b = (+)_b beta_b p_b that is positive and central in pAp:
/// returns v = (+)_b beta_b * Identity over the blocks where p is nonzero, so that
/// v p = b and |v| = |b|. Throws DomainError if b is not of that form.
CentralPositive central_lift(const AlgebraElement& b, const AlgebraElement& p,
                             const ToleranceProfile& tol = kDefaultTolerances);

/// Element of Mat_{rows x cols}(A). Block b is a (rows*n_b) x (cols*n_b) matrix
/// with row index s*n_b + t (s the amplification index, t the internal index).
class AmplifiedElement {
public:
    AmplifiedElement(FdCStarAlgebra algebra, std::size_t rows, std::size_t cols, std::vector<Matrix> blocks);

    static AmplifiedElement zero(const FdCStarAlgebra& algebra, std::size_t rows, std::size_t cols);
    static AmplifiedElement identity(const FdCStarAlgebra& algebra, std::size_t k);
    /// Diagonal amplification diag(a, ..., a) of order k.
    static AmplifiedElement diagonal(const AlgebraElement& a, std::size_t k);

    const FdCStarAlgebra& algebra() const noexcept { return algebra_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const Matrix& block(std::size_t b) const { return blocks_.at(b); }
    const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

    /// The (i, j) entry as an element of A.
    AlgebraElement entry(std::size_t i, std::size_t j) const;

    AmplifiedElement adjoint() const;
    AmplifiedElement scaled(Complex s) const;
    /// Multiplies block b by s_b (right or left action of a central element).
    AmplifiedElement scaled_blocks(std::span<const double> s) const;

    friend AmplifiedElement operator+(const AmplifiedElement& a, const AmplifiedElement& b);
    friend AmplifiedElement operator-(const AmplifiedElement& a, const AmplifiedElement& b);
    friend AmplifiedElement operator*(const AmplifiedElement& a, const AmplifiedElement& b);

private:
    FdCStarAlgebra algebra_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Matrix> blocks_;
};

double norm(const AmplifiedElement& a);

/// Projection check: |p^2 - p| <= tol and |p - p*| <= tol.
bool is_projection(const AmplifiedElement& p, double tol);
bool is_projection(const AlgebraElement& p, double tol);

/// Orthonormal basis of the range of a Hermitian projection block, in
/// eigenvector order (ascending eigenvalue among those above 1/2).
Matrix projection_range(const Matrix& p);

/// Orthogonal projector onto the column space of `m`, using singular values
/// above cutoff * max(1, sigma_max).
Matrix column_space_projector(const Matrix& m, double cutoff);

/// Numerical rank with the same relative cutoff convention.
std::size_t numerical_rank(const Matrix& m, double cutoff);

}  // namespace opmod
