#include "opmod/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace opmod {

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// FdCStarAlgebra

FdCStarAlgebra::FdCStarAlgebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidInput("algebra needs at least one block");
    for (int n : blocks_) {
        if (n < 1) throw InvalidInput("block sizes must be positive, got " + std::to_string(n));
    }
}

std::size_t FdCStarAlgebra::dimension() const noexcept {
    std::size_t d = 0;
    for (int n : blocks_) d += static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    return d;
}

std::string FdCStarAlgebra::describe() const {
    std::ostringstream os;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) os << " (+) ";
        if (blocks_[b] == 1)
            os << "C";
        else
            os << "M" << blocks_[b];
    }
    return os.str();
}

FdCStarAlgebra make_algebra(std::vector<int> blocks) { return FdCStarAlgebra(std::move(blocks)); }

void require_same_algebra(const FdCStarAlgebra& a, const FdCStarAlgebra& b, const char* what) {
    if (!(a == b)) {
        throw Incompatible(std::string(what) + ": operands live over different algebras (" + a.describe() +
                           " vs " + b.describe() + ")");
    }
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(FdCStarAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (blocks_.size() != algebra_.block_count()) {
        throw InvalidInput("element has " + std::to_string(blocks_.size()) + " blocks, algebra has " +
                           std::to_string(algebra_.block_count()));
    }
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const int n = algebra_.block_size(b);
        if (blocks_[b].rows() != n || blocks_[b].cols() != n) {
            throw InvalidInput("block " + std::to_string(b) + " must be " + std::to_string(n) + "x" +
                               std::to_string(n));
        }
    }
}

AlgebraElement AlgebraElement::zero(const FdCStarAlgebra& algebra) {
    std::vector<Matrix> blocks;
    for (int n : algebra.blocks()) blocks.push_back(Matrix::Zero(n, n));
    return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const FdCStarAlgebra& algebra) {
    std::vector<Matrix> blocks;
    for (int n : algebra.blocks()) blocks.push_back(Matrix::Identity(n, n));
    return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::central(const FdCStarAlgebra& algebra, std::span<const Complex> scalars) {
    if (scalars.size() != algebra.block_count()) throw InvalidInput("one scalar per block required");
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < scalars.size(); ++b) {
        const int n = algebra.block_size(b);
        blocks.push_back(scalars[b] * Matrix::Identity(n, n));
    }
    return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::adjoint() const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& m : blocks_) out.push_back(m.adjoint());
    return AlgebraElement(algebra_, std::move(out));
}

AlgebraElement AlgebraElement::scaled(Complex s) const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& m : blocks_) out.push_back(s * m);
    return AlgebraElement(algebra_, std::move(out));
}

namespace {

template <typename F>
AlgebraElement blockwise(const AlgebraElement& a, const AlgebraElement& b, const char* what, F f) {
    require_same_algebra(a.algebra(), b.algebra(), what);
    std::vector<Matrix> out;
    out.reserve(a.blocks().size());
    for (std::size_t i = 0; i < a.blocks().size(); ++i) out.push_back(f(a.block(i), b.block(i)));
    return AlgebraElement(a.algebra(), std::move(out));
}

}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return blockwise(a, b, "add", [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return blockwise(a, b, "subtract", [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return blockwise(a, b, "multiply", [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
}

AlgebraElement element_arithmetic(const AlgebraElement& a, const AlgebraElement& b, ArithmeticOp op, Complex s) {
    switch (op) {
        case ArithmeticOp::add:
            return a + b;
        case ArithmeticOp::mul:
            return a * b;
        case ArithmeticOp::adjoint:
            return a.adjoint();
        case ArithmeticOp::scale:
            return a.scaled(s);
    }
    throw InvalidInput("unknown arithmetic op");
}

double norm(const AlgebraElement& a) {
    double best = 0.0;
    for (const auto& m : a.blocks()) best = std::max(best, spectral_norm(m));
    return best;
}

bool is_positive(const AlgebraElement& a, double tol) {
    for (const auto& m : a.blocks()) {
        if (spectral_norm(m - m.adjoint()) > tol) return false;
        const Matrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().size() > 0 && es.eigenvalues().minCoeff() < -tol) return false;
    }
    return true;
}

SpectralProjection spectral_projection(const AlgebraElement& a, double lo, double hi, IntervalKind kind,
                                       const ToleranceProfile& tol) {
    if (!(lo < hi)) throw InvalidInput("spectral interval needs lo < hi");
    const double eps = tol.spectral;
    if (!is_positive(a, std::max(eps, 1e-12 * std::max(1.0, norm(a))))) {
        throw DomainError("spectral_projection requires a positive element");
    }
    std::vector<Matrix> out;
    std::vector<std::string> warnings;
    for (std::size_t b = 0; b < a.blocks().size(); ++b) {
        const Matrix& m = a.block(b);
        const Matrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const auto& ev = es.eigenvalues();
        const Matrix& vecs = es.eigenvectors();
        Matrix proj = Matrix::Zero(m.rows(), m.cols());
        for (Eigen::Index k = 0; k < ev.size(); ++k) {
            const double lambda = ev(k);
            const bool lower_ok = lambda > lo + eps;
            const bool upper_ok = kind == IntervalKind::open_open ? lambda < hi - eps : lambda <= hi + eps;
            // Membership under exact endpoints, for the ambiguity report.
            const bool exact_lower = lambda > lo;
            const bool exact_upper = kind == IntervalKind::open_open ? lambda < hi : lambda <= hi;
            if ((lower_ok && upper_ok) != (exact_lower && exact_upper)) {
                std::ostringstream os;
                os.precision(17);
                os << "block " << b << ": eigenvalue " << lambda << " lies within " << eps
                   << " of an interval endpoint";
                warnings.push_back(os.str());
            }
            if (lower_ok && upper_ok) proj += vecs.col(k) * vecs.col(k).adjoint();
        }
        out.push_back(std::move(proj));
    }
    return SpectralProjection{AlgebraElement(a.algebra(), std::move(out)), std::move(warnings)};
}

AlgebraElement support_projection(const AlgebraElement& a, const ToleranceProfile& tol) {
    const double n = norm(a);
    if (n == 0.0) return AlgebraElement::zero(a.algebra());
    return spectral_projection(a.scaled(1.0 / n), 0.0, 1.0, IntervalKind::open_closed, tol).projection;
}

AlgebraElement central_cover(const AlgebraElement& a, const ToleranceProfile& tol) {
    std::vector<Complex> ind;
    for (const auto& m : a.blocks()) {
        const bool nonzero = m.size() > 0 && m.cwiseAbs().maxCoeff() > tol.zero_entry;
        ind.push_back(nonzero ? 1.0 : 0.0);
    }
    return AlgebraElement::central(a.algebra(), ind);
}

// ---------------------------------------------------------------------------
// IdealDescriptor

IdealDescriptor::IdealDescriptor(FdCStarAlgebra algebra, std::vector<std::size_t> support)
    : algebra_(std::move(algebra)), support_(std::move(support)) {
    std::sort(support_.begin(), support_.end());
    support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
    for (auto b : support_) {
        if (b >= algebra_.block_count()) throw InvalidInput("ideal support index out of range: " + std::to_string(b));
    }
}

IdealDescriptor IdealDescriptor::full(const FdCStarAlgebra& algebra) {
    std::vector<std::size_t> s(algebra.block_count());
    std::iota(s.begin(), s.end(), std::size_t{0});
    return IdealDescriptor(algebra, std::move(s));
}

IdealDescriptor IdealDescriptor::empty(const FdCStarAlgebra& algebra) { return IdealDescriptor(algebra, {}); }

bool IdealDescriptor::contains(std::size_t b) const {
    return std::binary_search(support_.begin(), support_.end(), b);
}

bool IdealDescriptor::is_subset_of(const IdealDescriptor& other) const {
    require_same_algebra(algebra_, other.algebra_, "ideal inclusion");
    return std::includes(other.support_.begin(), other.support_.end(), support_.begin(), support_.end());
}

IdealDescriptor IdealDescriptor::intersect(const IdealDescriptor& other) const {
    require_same_algebra(algebra_, other.algebra_, "ideal intersection");
    std::vector<std::size_t> s;
    std::set_intersection(support_.begin(), support_.end(), other.support_.begin(), other.support_.end(),
                          std::back_inserter(s));
    return IdealDescriptor(algebra_, std::move(s));
}

AlgebraElement IdealDescriptor::unit() const {
    std::vector<Complex> s(algebra_.block_count(), 0.0);
    for (auto b : support_) s[b] = 1.0;
    return AlgebraElement::central(algebra_, s);
}

IdealDescriptor ideal_generated_by(const FdCStarAlgebra& algebra, std::span<const AlgebraElement> elements,
                                   const ToleranceProfile& tol) {
    for (const auto& e : elements) require_same_algebra(algebra, e.algebra(), "ideal_generated_by");
    std::vector<std::size_t> support;
    for (std::size_t b = 0; b < algebra.block_count(); ++b) {
        for (const auto& e : elements) {
            if (e.block(b).cwiseAbs().maxCoeff() > tol.zero_entry) {
                support.push_back(b);
                break;
            }
        }
    }
    return IdealDescriptor(algebra, std::move(support));
}

// ---------------------------------------------------------------------------
// CentralPositive

CentralPositive::CentralPositive(IdealDescriptor ideal, std::vector<double> scalars)
    : ideal_(std::move(ideal)), scalars_(std::move(scalars)) {
    if (scalars_.size() != ideal_.algebra().block_count()) throw InvalidInput("one scalar per block required");
    for (std::size_t b = 0; b < scalars_.size(); ++b) {
        if (!(scalars_[b] >= 0.0)) throw InvalidInput("central positive scalars must be nonnegative");
        if (scalars_[b] != 0.0 && !ideal_.contains(b)) {
            throw InvalidInput("central positive scalar nonzero outside its ideal at block " + std::to_string(b));
        }
    }
}

CentralPositive CentralPositive::unit(const IdealDescriptor& ideal) {
    std::vector<double> s(ideal.algebra().block_count(), 0.0);
    for (auto b : ideal.support()) s[b] = 1.0;
    return CentralPositive(ideal, std::move(s));
}

AlgebraElement CentralPositive::to_element() const {
    std::vector<Complex> s(scalars_.begin(), scalars_.end());
    return AlgebraElement::central(algebra(), s);
}

CentralPositive CentralPositive::sqrt() const {
    std::vector<double> s;
    for (double v : scalars_) s.push_back(std::sqrt(v));
    return CentralPositive(ideal_, std::move(s));
}

CentralPositive CentralPositive::pseudo_inverse(double cutoff) const {
    std::vector<double> s;
    for (double v : scalars_) s.push_back(v > cutoff ? 1.0 / v : 0.0);
    return CentralPositive(ideal_, std::move(s));
}

IdealDescriptor CentralPositive::support(double cutoff) const {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < scalars_.size(); ++b)
        if (scalars_[b] > cutoff) s.push_back(b);
    return IdealDescriptor(algebra(), std::move(s));
}

double CentralPositive::norm() const {
    double m = 0.0;
    for (double v : scalars_) m = std::max(m, v);
    return m;
}

std::vector<CentralPositive> center_basis(const IdealDescriptor& ideal) {
    std::vector<CentralPositive> out;
    for (auto b : ideal.support()) {
        std::vector<double> s(ideal.algebra().block_count(), 0.0);
        s[b] = 1.0;
        out.emplace_back(ideal, std::move(s));
    }
    return out;
}

CentralPositive central_lift(const AlgebraElement& b, const AlgebraElement& p, const ToleranceProfile& tol) {
    require_same_algebra(b.algebra(), p.algebra(), "central_lift");
    if (!is_projection(p, tol.projection)) throw DomainError("central_lift needs a projection p");
    std::vector<double> s(b.algebra().block_count(), 0.0);
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Matrix& pb = p.block(k);
        const Matrix& bb = b.block(k);
        const double pn = spectral_norm(pb);
        if (pn <= tol.zero_entry) {
            if (bb.cwiseAbs().maxCoeff() > tol.zero_entry) throw DomainError("b is not supported under p");
            continue;
        }
        // beta = tr(b_k) / tr(p_k); b_k must equal beta * p_k.
        const Complex beta = bb.trace() / pb.trace();
        if (std::abs(beta.imag()) > tol.projection || beta.real() < -tol.projection ||
            spectral_norm(bb - beta * pb) > tol.projection * std::max(1.0, std::abs(beta))) {
            throw DomainError("b is not a positive central element of pAp at block " + std::to_string(k));
        }
        s[k] = std::max(0.0, beta.real());
        support.push_back(k);
    }
    return CentralPositive(IdealDescriptor(b.algebra(), std::move(support)), std::move(s));
}

// ---------------------------------------------------------------------------
// AmplifiedElement

AmplifiedElement::AmplifiedElement(FdCStarAlgebra algebra, std::size_t rows, std::size_t cols,
                                   std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), rows_(rows), cols_(cols), blocks_(std::move(blocks)) {
    if (blocks_.size() != algebra_.block_count()) throw InvalidInput("amplified element block count mismatch");
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto n = static_cast<Eigen::Index>(algebra_.block_size(b));
        if (blocks_[b].rows() != static_cast<Eigen::Index>(rows_) * n ||
            blocks_[b].cols() != static_cast<Eigen::Index>(cols_) * n) {
            throw InvalidInput("amplified block " + std::to_string(b) + " must be " + std::to_string(rows_ * n) +
                               "x" + std::to_string(cols_ * n) + ", got " + std::to_string(blocks_[b].rows()) +
                               "x" + std::to_string(blocks_[b].cols()));
        }
    }
}

AmplifiedElement AmplifiedElement::zero(const FdCStarAlgebra& algebra, std::size_t rows, std::size_t cols) {
    std::vector<Matrix> blocks;
    for (int n : algebra.blocks())
        blocks.push_back(Matrix::Zero(static_cast<Eigen::Index>(rows) * n, static_cast<Eigen::Index>(cols) * n));
    return AmplifiedElement(algebra, rows, cols, std::move(blocks));
}

AmplifiedElement AmplifiedElement::identity(const FdCStarAlgebra& algebra, std::size_t k) {
    std::vector<Matrix> blocks;
    for (int n : algebra.blocks()) {
        const auto d = static_cast<Eigen::Index>(k) * n;
        blocks.push_back(Matrix::Identity(d, d));
    }
    return AmplifiedElement(algebra, k, k, std::move(blocks));
}

AmplifiedElement AmplifiedElement::diagonal(const AlgebraElement& a, std::size_t k) {
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < a.blocks().size(); ++b) {
        const Eigen::Index n = a.algebra().block_size(b);
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(k) * n, static_cast<Eigen::Index>(k) * n);
        for (std::size_t s = 0; s < k; ++s) m.block(static_cast<Eigen::Index>(s) * n, static_cast<Eigen::Index>(s) * n, n, n) = a.block(b);
        blocks.push_back(std::move(m));
    }
    return AmplifiedElement(a.algebra(), k, k, std::move(blocks));
}

AlgebraElement AmplifiedElement::entry(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw InvalidInput("amplified entry index out of range");
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const Eigen::Index n = algebra_.block_size(b);
        out.push_back(blocks_[b].block(static_cast<Eigen::Index>(i) * n, static_cast<Eigen::Index>(j) * n, n, n));
    }
    return AlgebraElement(algebra_, std::move(out));
}

AmplifiedElement AmplifiedElement::adjoint() const {
    std::vector<Matrix> out;
    for (const auto& m : blocks_) out.push_back(m.adjoint());
    return AmplifiedElement(algebra_, cols_, rows_, std::move(out));
}

AmplifiedElement AmplifiedElement::scaled(Complex s) const {
    std::vector<Matrix> out;
    for (const auto& m : blocks_) out.push_back(s * m);
    return AmplifiedElement(algebra_, rows_, cols_, std::move(out));
}

AmplifiedElement AmplifiedElement::scaled_blocks(std::span<const double> s) const {
    if (s.size() != blocks_.size()) throw InvalidInput("one scalar per block required");
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < blocks_.size(); ++b) out.push_back(s[b] * blocks_[b]);
    return AmplifiedElement(algebra_, rows_, cols_, std::move(out));
}

AmplifiedElement operator+(const AmplifiedElement& a, const AmplifiedElement& b) {
    require_same_algebra(a.algebra(), b.algebra(), "amplified add");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Incompatible("amplified add: shape mismatch");
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < a.blocks().size(); ++i) out.push_back(a.block(i) + b.block(i));
    return AmplifiedElement(a.algebra(), a.rows(), a.cols(), std::move(out));
}

AmplifiedElement operator-(const AmplifiedElement& a, const AmplifiedElement& b) { return a + b.scaled(-1.0); }

AmplifiedElement operator*(const AmplifiedElement& a, const AmplifiedElement& b) {
    require_same_algebra(a.algebra(), b.algebra(), "amplified multiply");
    if (a.cols() != b.rows()) throw Incompatible("amplified multiply: inner dimensions differ");
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < a.blocks().size(); ++i) out.push_back(a.block(i) * b.block(i));
    return AmplifiedElement(a.algebra(), a.rows(), b.cols(), std::move(out));
}

double norm(const AmplifiedElement& a) {
    double best = 0.0;
    for (const auto& m : a.blocks()) best = std::max(best, spectral_norm(m));
    return best;
}

namespace {

bool blocks_are_projections(const std::vector<Matrix>& blocks, double tol) {
    for (const auto& m : blocks) {
        if (m.size() == 0) continue;
        if (spectral_norm(m * m - m) > tol || spectral_norm(m - m.adjoint()) > tol) return false;
    }
    return true;
}

}  // namespace

bool is_projection(const AmplifiedElement& p, double tol) {
    return p.is_square() && blocks_are_projections(p.blocks(), tol);
}

bool is_projection(const AlgebraElement& p, double tol) { return blocks_are_projections(p.blocks(), tol); }

Matrix projection_range(const Matrix& p) {
    const Matrix h = 0.5 * (p + p.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& ev = es.eigenvalues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) > 0.5) keep.push_back(k);
    Matrix q(p.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) q.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
    return q;
}

namespace {

Matrix leading_left_singular_vectors(const Matrix& m, double cutoff) {
    if (m.size() == 0) return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double thresh = cutoff * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thresh) ++r;
    return svd.matrixU().leftCols(r);
}

}  // namespace

Matrix column_space_projector(const Matrix& m, double cutoff) {
    const Matrix u = leading_left_singular_vectors(m, cutoff);
    return u * u.adjoint();
}

std::size_t numerical_rank(const Matrix& m, double cutoff) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double thresh = cutoff * std::max(1.0, sv(0));
    std::size_t r = 0;
    while (r < static_cast<std::size_t>(sv.size()) && sv(static_cast<Eigen::Index>(r)) > thresh) ++r;
    return r;
}

}  // namespace opmod
