#pragma once

// Hilbert C*-modules in canonical form E = pA^n. An element of E is an A-column:
// block b is an (n*n_b) x n_b matrix fixed by p_b. Module maps are A-matrices
// acting on the left, which makes them A-linear for the right action.

#include <memory>
#include <vector>

#include "opmod/algebra.hpp"

namespace opmod {

class HilbertModule {
public:
    /// Validates that `p` is an n x n projection over `algebra` and nonzero.
    /// Throws InvalidInput for a non-projection, ZeroModule for p = 0.
    HilbertModule(FdCStarAlgebra algebra, std::size_t n, AmplifiedElement p,
                  const ToleranceProfile& tol = kDefaultTolerances);

    /// The free module A^n.
    static HilbertModule free(const FdCStarAlgebra& algebra, std::size_t n);
    /// Submodule pA^n that may be zero (images, kernels, Ew).
    static HilbertModule submodule(FdCStarAlgebra algebra, std::size_t n, AmplifiedElement p,
                                   const ToleranceProfile& tol = kDefaultTolerances);

    const FdCStarAlgebra& algebra() const noexcept;
    /// Number of A-generators n of the ambient A^n.
    std::size_t generators() const noexcept;
    const AmplifiedElement& projection() const noexcept;
    /// Orthonormal basis of range(p_b), (n*n_b) x rank(p_b).
    const Matrix& range_basis(std::size_t b) const;
    std::size_t block_rank(std::size_t b) const;
    /// dim_C(E) = sum_b rank(p_b) * n_b.
    std::size_t complex_dimension() const;
    bool is_zero() const;

    /// Same algebra and same number of generators.
    bool same_ambient(const HilbertModule& other) const;

private:
    struct Impl;
    HilbertModule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static std::shared_ptr<const Impl> build(FdCStarAlgebra algebra, std::size_t n, AmplifiedElement p,
                                             const ToleranceProfile& tol);
    std::shared_ptr<const Impl> impl_;
};

HilbertModule make_module(const FdCStarAlgebra& algebra, std::size_t n, const AmplifiedElement& p,
                          const ToleranceProfile& tol = kDefaultTolerances);

class ModuleElement {
public:
    /// Throws InvalidInput if the blocks are misshapen or p x != x.
    ModuleElement(HilbertModule module, std::vector<Matrix> blocks, const ToleranceProfile& tol = kDefaultTolerances);

    static ModuleElement zero(const HilbertModule& module);
    /// p * data, for arbitrary columns of the ambient A^n.
    static ModuleElement project(const HilbertModule& module, const std::vector<Matrix>& data);

    const HilbertModule& module() const noexcept { return module_; }
    const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
    const Matrix& block(std::size_t b) const { return blocks_.at(b); }
    AmplifiedElement as_column() const;

    ModuleElement scaled(Complex s) const;
    friend ModuleElement operator+(const ModuleElement& x, const ModuleElement& y);
    friend ModuleElement operator-(const ModuleElement& x, const ModuleElement& y);

private:
    struct Unchecked {};
    ModuleElement(HilbertModule module, std::vector<Matrix> blocks, Unchecked)
        : module_(std::move(module)), blocks_(std::move(blocks)) {}
    friend class ModuleMap;
    friend ModuleElement right_action(const ModuleElement&, const AlgebraElement&);

    HilbertModule module_;
    std::vector<Matrix> blocks_;
};

/// Per block x_b^* y_b.
AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y);
/// |<x,x>|^{1/2}.
double module_norm(const ModuleElement& x);
ModuleElement right_action(const ModuleElement& x, const AlgebraElement& a);
/// R_v(x) = x v.
ModuleElement right_action(const ModuleElement& x, const CentralPositive& v);
/// |<x,y>| <= tol * max(1, |x| |y|).
bool is_orthogonal(const ModuleElement& x, const ModuleElement& y, double tol);

/// I_E: the blocks where p is nonzero.
IdealDescriptor compute_ideal(const HilbertModule& module, const ToleranceProfile& tol = kDefaultTolerances);

/// Basis of E over C: for each block, each range vector of p_b (eigenvector
/// order) times each internal unit column. Every element lives on one block.
std::vector<ModuleElement> complex_basis(const HilbertModule& module);

class ModuleMap {
public:
    /// Stores q T p. Throws InvalidInput when T is not m x n over the algebra,
    /// Incompatible when the modules live over different algebras.
    ModuleMap(HilbertModule domain, HilbertModule codomain, const AmplifiedElement& t);
    /// Keeps `t` verbatim after checking q t p = t; InvalidInput otherwise.
    static ModuleMap compressed(HilbertModule domain, HilbertModule codomain, const AmplifiedElement& t,
                                const ToleranceProfile& tol = kDefaultTolerances);

    const HilbertModule& domain() const noexcept { return domain_; }
    const HilbertModule& codomain() const noexcept { return codomain_; }
    const AmplifiedElement& matrix() const noexcept { return matrix_; }

    ModuleElement operator()(const ModuleElement& x) const;
    ModuleMap scaled(Complex s) const;
    /// this o inner.
    ModuleMap compose(const ModuleMap& inner) const;
    /// Same matrix, viewed with a different codomain of the same ambient.
    ModuleMap with_codomain(const HilbertModule& codomain) const;
    ModuleMap with_domain(const HilbertModule& domain) const;

private:
    HilbertModule domain_;
    HilbertModule codomain_;
    AmplifiedElement matrix_;
};

ModuleMap make_module_map(const HilbertModule& domain, const HilbertModule& codomain, const AmplifiedElement& t);
ModuleElement apply_map(const ModuleMap& phi, const ModuleElement& x);
ModuleMap identity_map(const HilbertModule& module);
/// R_v as a module map E -> E.
ModuleMap right_multiplier(const HilbertModule& module, const CentralPositive& v);

/// C*-norm of the block matrix q T p; equals sup |Phi x| over the unit ball.
double map_norm(const ModuleMap& phi);
/// p T^* q: the adjoint F -> E.
ModuleMap adjoint_map(const ModuleMap& phi);

/// F_Phi = closure of Phi(E), as p'A^m with p' the projector onto range(T_b) per block.
HilbertModule image_submodule(const ModuleMap& phi, const ToleranceProfile& tol = kDefaultTolerances);
/// dim_C ker Phi.
std::size_t kernel_dimension(const ModuleMap& phi, const ToleranceProfile& tol = kDefaultTolerances);

/// An element of K(E) = p Mat_n(A) p.
class CompactOperator {
public:
    CompactOperator(HilbertModule module, const AmplifiedElement& matrix,
                    const ToleranceProfile& tol = kDefaultTolerances);
    static CompactOperator zero(const HilbertModule& module);
    static CompactOperator project(const HilbertModule& module, const AmplifiedElement& matrix);

    const HilbertModule& module() const noexcept { return module_; }
    const AmplifiedElement& matrix() const noexcept { return matrix_; }

    ModuleElement operator()(const ModuleElement& z) const;
    CompactOperator adjoint() const;
    CompactOperator scaled(Complex s) const;
    /// theta o R_v, i.e. theta scaled blockwise by v.
    CompactOperator compose_right(const CentralPositive& v) const;

    friend CompactOperator operator+(const CompactOperator& a, const CompactOperator& b);
    friend CompactOperator operator-(const CompactOperator& a, const CompactOperator& b);
    friend CompactOperator operator*(const CompactOperator& a, const CompactOperator& b);

private:
    struct Unchecked {};
    CompactOperator(HilbertModule module, AmplifiedElement matrix, Unchecked)
        : module_(std::move(module)), matrix_(std::move(matrix)) {}

    HilbertModule module_;
    AmplifiedElement matrix_;
};

/// theta_{y,x}(z) = y <x, z>, realized as y x^*.
CompactOperator theta_operator(const ModuleElement& y, const ModuleElement& x);

}  // namespace opmod
