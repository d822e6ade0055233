#include "opmod/hilbert_module.hpp"

#include <algorithm>
#include <cmath>

namespace opmod {

struct HilbertModule::Impl {
    FdCStarAlgebra algebra;
    std::size_t n;
    AmplifiedElement p;
    std::vector<Matrix> range;
};

std::shared_ptr<const HilbertModule::Impl> HilbertModule::build(FdCStarAlgebra algebra, std::size_t n,
                                                                AmplifiedElement p, const ToleranceProfile& tol) {
    if (n == 0) throw InvalidInput("module needs at least one generator");
    require_same_algebra(algebra, p.algebra(), "make_module");
    if (p.rows() != n || p.cols() != n) {
        throw InvalidInput("module projection must be " + std::to_string(n) + "x" + std::to_string(n) +
                           " over A");
    }
    if (!is_projection(p, tol.projection)) throw InvalidInput("module projection p is not a projection");
    std::vector<Matrix> range;
    for (const auto& pb : p.blocks()) range.push_back(projection_range(pb));
    return std::make_shared<const Impl>(Impl{std::move(algebra), n, std::move(p), std::move(range)});
}

HilbertModule::HilbertModule(FdCStarAlgebra algebra, std::size_t n, AmplifiedElement p, const ToleranceProfile& tol)
    : impl_(build(std::move(algebra), n, std::move(p), tol)) {
    if (is_zero()) throw ZeroModule("Hilbert modules must be nonzero (p = 0)");
}

HilbertModule HilbertModule::free(const FdCStarAlgebra& algebra, std::size_t n) {
    return HilbertModule(algebra, n, AmplifiedElement::identity(algebra, n));
}

HilbertModule HilbertModule::submodule(FdCStarAlgebra algebra, std::size_t n, AmplifiedElement p,
                                       const ToleranceProfile& tol) {
    return HilbertModule(build(std::move(algebra), n, std::move(p), tol));
}

const FdCStarAlgebra& HilbertModule::algebra() const noexcept { return impl_->algebra; }
std::size_t HilbertModule::generators() const noexcept { return impl_->n; }
const AmplifiedElement& HilbertModule::projection() const noexcept { return impl_->p; }
const Matrix& HilbertModule::range_basis(std::size_t b) const { return impl_->range.at(b); }
std::size_t HilbertModule::block_rank(std::size_t b) const {
    return static_cast<std::size_t>(impl_->range.at(b).cols());
}

std::size_t HilbertModule::complex_dimension() const {
    std::size_t d = 0;
    for (std::size_t b = 0; b < impl_->range.size(); ++b)
        d += block_rank(b) * static_cast<std::size_t>(impl_->algebra.block_size(b));
    return d;
}

bool HilbertModule::is_zero() const {
    for (const auto& r : impl_->range)
        if (r.cols() > 0) return false;
    return true;
}

bool HilbertModule::same_ambient(const HilbertModule& other) const {
    return impl_->algebra == other.impl_->algebra && impl_->n == other.impl_->n;
}

HilbertModule make_module(const FdCStarAlgebra& algebra, std::size_t n, const AmplifiedElement& p,
                          const ToleranceProfile& tol) {
    return HilbertModule(algebra, n, p, tol);
}

// ---------------------------------------------------------------------------
// ModuleElement

namespace {

void check_column_shapes(const HilbertModule& m, const std::vector<Matrix>& blocks) {
    const auto& alg = m.algebra();
    if (blocks.size() != alg.block_count()) throw InvalidInput("module element block count mismatch");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Eigen::Index nb = alg.block_size(b);
        if (blocks[b].rows() != static_cast<Eigen::Index>(m.generators()) * nb || blocks[b].cols() != nb) {
            throw InvalidInput("module element block " + std::to_string(b) + " must be " +
                               std::to_string(m.generators() * static_cast<std::size_t>(nb)) + "x" +
                               std::to_string(nb));
        }
    }
}

void require_same_ambient(const HilbertModule& a, const HilbertModule& b, const char* what) {
    if (!a.same_ambient(b)) throw Incompatible(std::string(what) + ": elements live in different modules");
}

}  // namespace

ModuleElement::ModuleElement(HilbertModule module, std::vector<Matrix> blocks, const ToleranceProfile& tol)
    : module_(std::move(module)), blocks_(std::move(blocks)) {
    check_column_shapes(module_, blocks_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const Matrix& x = blocks_[b];
        const double scale = std::max(1.0, spectral_norm(x));
        if (spectral_norm(module_.projection().block(b) * x - x) > tol.projection * scale) {
            throw InvalidInput("module element is not fixed by p on block " + std::to_string(b));
        }
    }
}

ModuleElement ModuleElement::zero(const HilbertModule& module) {
    std::vector<Matrix> blocks;
    const auto& alg = module.algebra();
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const Eigen::Index nb = alg.block_size(b);
        blocks.push_back(Matrix::Zero(static_cast<Eigen::Index>(module.generators()) * nb, nb));
    }
    return ModuleElement(module, std::move(blocks), Unchecked{});
}

ModuleElement ModuleElement::project(const HilbertModule& module, const std::vector<Matrix>& data) {
    check_column_shapes(module, data);
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < data.size(); ++b) blocks.push_back(module.projection().block(b) * data[b]);
    return ModuleElement(module, std::move(blocks), Unchecked{});
}

AmplifiedElement ModuleElement::as_column() const {
    return AmplifiedElement(module_.algebra(), module_.generators(), 1, blocks_);
}

ModuleElement ModuleElement::scaled(Complex s) const {
    std::vector<Matrix> out;
    for (const auto& m : blocks_) out.push_back(s * m);
    return ModuleElement(module_, std::move(out), Unchecked{});
}

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) {
    require_same_ambient(x.module(), y.module(), "module add");
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < x.blocks().size(); ++b) out.push_back(x.block(b) + y.block(b));
    return ModuleElement(x.module(), std::move(out), ModuleElement::Unchecked{});
}

ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) { return x + y.scaled(-1.0); }

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y) {
    require_same_ambient(x.module(), y.module(), "inner_product");
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < x.blocks().size(); ++b) out.push_back(x.block(b).adjoint() * y.block(b));
    return AlgebraElement(x.module().algebra(), std::move(out));
}

double module_norm(const ModuleElement& x) { return std::sqrt(norm(inner_product(x, x))); }

ModuleElement right_action(const ModuleElement& x, const AlgebraElement& a) {
    require_same_algebra(x.module().algebra(), a.algebra(), "right_action");
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < x.blocks().size(); ++b) out.push_back(x.block(b) * a.block(b));
    return ModuleElement(x.module(), std::move(out), ModuleElement::Unchecked{});
}

ModuleElement right_action(const ModuleElement& x, const CentralPositive& v) { return right_action(x, v.to_element()); }

bool is_orthogonal(const ModuleElement& x, const ModuleElement& y, double tol) {
    return norm(inner_product(x, y)) <= tol * std::max(1.0, module_norm(x) * module_norm(y));
}

IdealDescriptor compute_ideal(const HilbertModule& module, const ToleranceProfile& tol) {
    const auto basis = complex_basis(module);
    // Inner products of basis elements on the same block, which is all that can be nonzero.
    std::vector<AlgebraElement> products;
    for (std::size_t i = 0; i < basis.size(); ++i) products.push_back(inner_product(basis[i], basis[i]));
    return ideal_generated_by(module.algebra(), products, tol);
}

std::vector<ModuleElement> complex_basis(const HilbertModule& module) {
    std::vector<ModuleElement> out;
    const auto& alg = module.algebra();
    const auto zero = ModuleElement::zero(module);
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const Matrix& q = module.range_basis(b);
        const Eigen::Index nb = alg.block_size(b);
        for (Eigen::Index v = 0; v < q.cols(); ++v) {
            for (Eigen::Index t = 0; t < nb; ++t) {
                std::vector<Matrix> blocks = zero.blocks();
                blocks[b].col(t) = q.col(v);
                out.push_back(ModuleElement::project(module, blocks));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// ModuleMap

ModuleMap::ModuleMap(HilbertModule domain, HilbertModule codomain, const AmplifiedElement& t)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      matrix_(AmplifiedElement::zero(domain_.algebra(), codomain_.generators(), domain_.generators())) {
    require_same_algebra(domain_.algebra(), codomain_.algebra(), "make_module_map");
    require_same_algebra(domain_.algebra(), t.algebra(), "make_module_map");
    if (t.rows() != codomain_.generators() || t.cols() != domain_.generators()) {
        throw InvalidInput("module map matrix must be " + std::to_string(codomain_.generators()) + "x" +
                           std::to_string(domain_.generators()) + " over A, got " + std::to_string(t.rows()) + "x" +
                           std::to_string(t.cols()));
    }
    matrix_ = codomain_.projection() * t * domain_.projection();
}

ModuleMap ModuleMap::compressed(HilbertModule domain, HilbertModule codomain, const AmplifiedElement& t,
                                const ToleranceProfile& tol) {
    ModuleMap m(std::move(domain), std::move(codomain), t);
    if (norm(m.matrix_ - t) > tol.projection * std::max(1.0, norm(t)))
        throw InvalidInput("map matrix is not supported on the module projections");
    m.matrix_ = t;
    return m;
}

ModuleElement ModuleMap::operator()(const ModuleElement& x) const {
    require_same_ambient(domain_, x.module(), "apply_map");
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < x.blocks().size(); ++b) out.push_back(matrix_.block(b) * x.block(b));
    return ModuleElement(codomain_, std::move(out), ModuleElement::Unchecked{});
}

ModuleMap ModuleMap::scaled(Complex s) const { return ModuleMap(domain_, codomain_, matrix_.scaled(s)); }

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
    require_same_ambient(inner.codomain_, domain_, "compose");
    return ModuleMap(inner.domain_, codomain_, matrix_ * inner.matrix_);
}

ModuleMap ModuleMap::with_codomain(const HilbertModule& codomain) const {
    require_same_ambient(codomain_, codomain, "with_codomain");
    return ModuleMap(domain_, codomain, matrix_);
}

ModuleMap ModuleMap::with_domain(const HilbertModule& domain) const {
    require_same_ambient(domain_, domain, "with_domain");
    return ModuleMap(domain, codomain_, matrix_);
}

ModuleMap make_module_map(const HilbertModule& domain, const HilbertModule& codomain, const AmplifiedElement& t) {
    return ModuleMap(domain, codomain, t);
}

ModuleElement apply_map(const ModuleMap& phi, const ModuleElement& x) { return phi(x); }

ModuleMap identity_map(const HilbertModule& module) {
    return ModuleMap(module, module, AmplifiedElement::identity(module.algebra(), module.generators()));
}

ModuleMap right_multiplier(const HilbertModule& module, const CentralPositive& v) {
    require_same_algebra(module.algebra(), v.algebra(), "right_multiplier");
    return ModuleMap(module, module, AmplifiedElement::diagonal(v.to_element(), module.generators()));
}

double map_norm(const ModuleMap& phi) { return norm(phi.matrix()); }

ModuleMap adjoint_map(const ModuleMap& phi) { return ModuleMap(phi.codomain(), phi.domain(), phi.matrix().adjoint()); }

HilbertModule image_submodule(const ModuleMap& phi, const ToleranceProfile& tol) {
    std::vector<Matrix> proj;
    for (const auto& tb : phi.matrix().blocks()) proj.push_back(column_space_projector(tb, tol.rank_cutoff));
    const auto& f = phi.codomain();
    return HilbertModule::submodule(f.algebra(), f.generators(),
                                    AmplifiedElement(f.algebra(), f.generators(), f.generators(), std::move(proj)),
                                    tol);
}

std::size_t kernel_dimension(const ModuleMap& phi, const ToleranceProfile& tol) {
    const auto& e = phi.domain();
    std::size_t dim = 0;
    for (std::size_t b = 0; b < e.algebra().block_count(); ++b) {
        const Matrix& q = e.range_basis(b);
        const std::size_t r = static_cast<std::size_t>(q.cols());
        const std::size_t rank = r == 0 ? 0 : numerical_rank(phi.matrix().block(b) * q, tol.rank_cutoff);
        dim += (r - rank) * static_cast<std::size_t>(e.algebra().block_size(b));
    }
    return dim;
}

// ---------------------------------------------------------------------------
// CompactOperator

CompactOperator::CompactOperator(HilbertModule module, const AmplifiedElement& matrix, const ToleranceProfile& tol)
    : module_(std::move(module)), matrix_(matrix) {
    require_same_algebra(module_.algebra(), matrix.algebra(), "compact operator");
    if (matrix.rows() != module_.generators() || matrix.cols() != module_.generators())
        throw InvalidInput("compact operator must be n x n over A");
    const auto& p = module_.projection();
    if (norm(p * matrix * p - matrix) > tol.projection * std::max(1.0, norm(matrix)))
        throw InvalidInput("compact operator is not in p Mat_n(A) p");
}

CompactOperator CompactOperator::zero(const HilbertModule& module) {
    return CompactOperator(module, AmplifiedElement::zero(module.algebra(), module.generators(), module.generators()),
                           Unchecked{});
}

CompactOperator CompactOperator::project(const HilbertModule& module, const AmplifiedElement& matrix) {
    const auto& p = module.projection();
    return CompactOperator(module, p * matrix * p, Unchecked{});
}

ModuleElement CompactOperator::operator()(const ModuleElement& z) const {
    require_same_ambient(module_, z.module(), "compact operator apply");
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < z.blocks().size(); ++b) out.push_back(matrix_.block(b) * z.block(b));
    return ModuleElement::project(module_, out);
}

CompactOperator CompactOperator::adjoint() const { return CompactOperator(module_, matrix_.adjoint(), Unchecked{}); }

CompactOperator CompactOperator::scaled(Complex s) const {
    return CompactOperator(module_, matrix_.scaled(s), Unchecked{});
}

CompactOperator CompactOperator::compose_right(const CentralPositive& v) const {
    require_same_algebra(module_.algebra(), v.algebra(), "compose_right");
    return CompactOperator(module_, matrix_.scaled_blocks(v.scalars()), Unchecked{});
}

CompactOperator operator+(const CompactOperator& a, const CompactOperator& b) {
    require_same_ambient(a.module(), b.module(), "compact add");
    return CompactOperator(a.module(), a.matrix() + b.matrix(), CompactOperator::Unchecked{});
}

CompactOperator operator-(const CompactOperator& a, const CompactOperator& b) { return a + b.scaled(-1.0); }

CompactOperator operator*(const CompactOperator& a, const CompactOperator& b) {
    require_same_ambient(a.module(), b.module(), "compact multiply");
    return CompactOperator(a.module(), a.matrix() * b.matrix(), CompactOperator::Unchecked{});
}

CompactOperator theta_operator(const ModuleElement& y, const ModuleElement& x) {
    require_same_ambient(y.module(), x.module(), "theta_operator");
    return CompactOperator::project(y.module(), y.as_column() * x.as_column().adjoint());
}

}  // namespace opmod
