#include "opmod/linking.hpp"

#include <algorithm>

namespace opmod {

LinkingElement LinkingElement::scaled(Complex s) const {
    return LinkingElement{theta.scaled(s), x.scaled(s), y.scaled(s), a.scaled(s)};
}

LinkingElement operator+(const LinkingElement& c, const LinkingElement& d) {
    return LinkingElement{c.theta + d.theta, c.x + d.x, c.y + d.y, c.a + d.a};
}

LinkingElement operator-(const LinkingElement& c, const LinkingElement& d) { return c + d.scaled(-1.0); }

LinkingAlgebra::LinkingAlgebra(HilbertModule module, const ToleranceProfile& tol)
    : module_(std::move(module)),
      ideal_(compute_ideal(module_, tol)) {}

LinkingAlgebra build_linking(const HilbertModule& module, const ToleranceProfile& tol) {
    return LinkingAlgebra(module, tol);
}

LinkingElement LinkingAlgebra::element(CompactOperator theta, ModuleElement x, ModuleElement y,
                                       AlgebraElement a) const {
    if (!theta.module().same_ambient(module_) || !x.module().same_ambient(module_) ||
        !y.module().same_ambient(module_)) {
        throw Incompatible("linking element components must live over the linking module");
    }
    require_same_algebra(module_.algebra(), a.algebra(), "linking element");
    for (std::size_t b = 0; b < a.blocks().size(); ++b) {
        if (!ideal_.contains(b) && a.block(b).cwiseAbs().maxCoeff() > 0.0)
            throw InvalidInput("linking corner a must vanish outside I_E (block " + std::to_string(b) + ")");
    }
    return LinkingElement{std::move(theta), std::move(x), std::move(y), std::move(a)};
}

LinkingElement LinkingAlgebra::zero() const {
    return LinkingElement{CompactOperator::zero(module_), ModuleElement::zero(module_), ModuleElement::zero(module_),
                          AlgebraElement::zero(module_.algebra())};
}

LinkingElement LinkingAlgebra::product(const LinkingElement& c, const LinkingElement& d) const {
    // top-left: theta theta' + theta_{x, y'}
    CompactOperator tl = c.theta * d.theta + theta_operator(c.x, d.y);
    // top-right: theta(x') + x a'
    ModuleElement tr = c.theta(d.x) + right_action(c.x, d.a);
    // bottom-left, as the column behind the adjoint row: theta'^*(y) + y' a^*
    ModuleElement bl = d.theta.adjoint()(c.y) + right_action(d.y, c.a.adjoint());
    // bottom-right: <y, x'> + a a'
    AlgebraElement br = inner_product(c.y, d.x) + c.a * d.a;
    return LinkingElement{std::move(tl), std::move(tr), std::move(bl), std::move(br)};
}

LinkingElement LinkingAlgebra::adjoint(const LinkingElement& c) const {
    return LinkingElement{c.theta.adjoint(), c.y, c.x, c.a.adjoint()};
}

AmplifiedElement LinkingAlgebra::flatten(const LinkingElement& c) const {
    const auto& alg = module_.algebra();
    const std::size_t n = module_.generators();
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const Eigen::Index nb = alg.block_size(b);
        const Eigen::Index top = static_cast<Eigen::Index>(n) * nb;
        Matrix g = Matrix::Zero(top + nb, top + nb);
        g.topLeftCorner(top, top) = c.theta.matrix().block(b);
        g.topRightCorner(top, nb) = c.x.block(b);
        g.bottomLeftCorner(nb, top) = c.y.block(b).adjoint();
        g.bottomRightCorner(nb, nb) = c.a.block(b);
        blocks.push_back(std::move(g));
    }
    return AmplifiedElement(alg, n + 1, n + 1, std::move(blocks));
}

LinkingElement LinkingAlgebra::unflatten(const AmplifiedElement& g) const {
    const auto& alg = module_.algebra();
    const std::size_t n = module_.generators();
    require_same_algebra(alg, g.algebra(), "unflatten");
    if (g.rows() != n + 1 || g.cols() != n + 1) throw InvalidInput("linking matrix must be (n+1) x (n+1) over A");
    std::vector<Matrix> theta, x, y, a;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const Eigen::Index nb = alg.block_size(b);
        const Eigen::Index top = static_cast<Eigen::Index>(n) * nb;
        const Matrix& m = g.block(b);
        theta.push_back(m.topLeftCorner(top, top));
        x.push_back(m.topRightCorner(top, nb));
        y.push_back(m.bottomLeftCorner(nb, top).adjoint());
        a.push_back(ideal_.contains(b) ? Matrix(m.bottomRightCorner(nb, nb)) : Matrix::Zero(nb, nb));
    }
    return LinkingElement{CompactOperator::project(module_, AmplifiedElement(alg, n, n, std::move(theta))),
                          ModuleElement::project(module_, x), ModuleElement::project(module_, y),
                          AlgebraElement(alg, std::move(a))};
}

LinkingElement LinkingAlgebra::flat_product(const LinkingElement& c, const LinkingElement& d) const {
    return unflatten(flatten(c) * flatten(d));
}

double LinkingAlgebra::norm(const LinkingElement& c) const { return opmod::norm(flatten(c)); }

double LinkingAlgebra::distance(const LinkingElement& c, const LinkingElement& d) const {
    return opmod::norm(flatten(c) - flatten(d));
}

std::size_t LinkingAlgebra::complex_dimension() const {
    const auto& alg = module_.algebra();
    std::size_t dim = 0;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const std::size_t r = module_.block_rank(b);
        const auto nb = static_cast<std::size_t>(alg.block_size(b));
        dim += r * r + 2 * r * nb;
        if (ideal_.contains(b)) dim += nb * nb;
    }
    return dim;
}

LinkingElement embed_J(const LinkingAlgebra& linking, const ModuleElement& x) {
    LinkingElement out = linking.zero();
    if (!x.module().same_ambient(linking.module())) throw Incompatible("embed_J: element outside the linking module");
    out.x = x;
    return out;
}

LinkingElement random_linking_element(SplitMix64& rng, const LinkingAlgebra& linking) {
    const auto& e = linking.module();
    const auto& alg = e.algebra();
    const std::size_t n = e.generators();
    const CompactOperator theta = CompactOperator::project(e, random_amplified(rng, alg, n, n));
    const ModuleElement x = ModuleElement::project(e, random_amplified(rng, alg, n, 1).blocks());
    const ModuleElement y = ModuleElement::project(e, random_amplified(rng, alg, n, 1).blocks());
    const AlgebraElement a = random_element(rng, alg) * linking.ideal().unit();
    return LinkingElement{theta, x, y, a};
}

LinkingElement multiplier_apply(const LinkingMultiplier& m, const LinkingElement& c, Side side) {
    const CentralPositive& on_x = side == Side::left ? m.v : m.u;
    const CentralPositive& on_y = side == Side::left ? m.u : m.v;
    return LinkingElement{c.theta.compose_right(m.v), right_action(c.x, on_x), right_action(c.y, on_y),
                          c.a * m.u.to_element()};
}

// ---------------------------------------------------------------------------
// LinkingExtension

LinkingExtension LinkingExtension::make(const ModuleMap& phi, const WitnessOutcome& outcome,
                                        const ToleranceProfile& tol) {
    return LinkingExtension(phi, certificate_of(outcome), tol);
}

LinkingExtension::LinkingExtension(const ModuleMap& phi, const PreserverCertificate& cert,
                                   const ToleranceProfile& tol)
    : source_(phi.domain(), tol),
      target_(image_submodule(phi, tol), tol),
      phi0_(phi.with_codomain(target_.module())),
      phi0_adjoint_(adjoint_map(phi0_)),
      u_(cert.u),
      w_(cert.w),
      one_(CentralPositive::unit(IdealDescriptor::full(phi.domain().algebra()))) {}

CompactOperator LinkingExtension::hat(const CompactOperator& theta) const {
    if (!theta.module().same_ambient(source_.module())) throw Incompatible("hat: operator outside K(E)");
    return CompactOperator::project(target_.module(), phi0_.matrix() * theta.matrix() * phi0_adjoint_.matrix());
}

AlgebraElement LinkingExtension::j(const AlgebraElement& a) const { return a * target_.ideal().unit(); }

LinkingElement LinkingExtension::check(const LinkingElement& c) const {
    return target_.element(hat(c.theta), phi0_(c.x), phi0_(c.y), j(c.a));
}

LinkingElement LinkingExtension::gamma(const LinkingElement& c) const {
    return multiplier_apply(LinkingMultiplier{one_, u_}, check(c), Side::left);
}

LinkingElement LinkingExtension::delta(const LinkingElement& c) const {
    return multiplier_apply(LinkingMultiplier{one_, w_}, check(c), Side::left);
}

CompactOperator hat_phi(const LinkingExtension& ext, const CompactOperator& theta) { return ext.hat(theta); }
LinkingElement check_phi(const LinkingExtension& ext, const LinkingElement& c) { return ext.check(c); }
std::pair<LinkingElement, LinkingElement> gamma_delta(const LinkingExtension& ext, const LinkingElement& c) {
    return {ext.gamma(c), ext.delta(c)};
}

double LinkingResiduals::worst() const {
    return std::max({product_formula, involution, double_centralizer, hat_theta, hat_involution, hat_apply,
                     check_involution, check_product, gamma_embedding, delta_embedding, gamma_product, delta_product,
                     delta_corner});
}

LinkingResiduals verify_linking(const ModuleMap& phi, const PreserverCertificate& cert, std::size_t pairs,
                                std::uint64_t seed, const ToleranceProfile& tol) {
    const LinkingExtension ext(phi, cert, tol);
    const LinkingAlgebra& src = ext.source();
    const LinkingAlgebra& dst = ext.target();
    const LinkingMultiplier m_one_u{ext.one(), ext.u()};
    const LinkingMultiplier m_u_u{ext.u(), ext.u()};
    const LinkingMultiplier m_u_w{ext.u(), ext.w()};
    const auto& e = phi.domain();
    const auto& alg = e.algebra();

    SplitMix64 rng(seed);
    LinkingResiduals r;
    auto bump = [](double& slot, double v) { slot = std::max(slot, v); };
    for (std::size_t k = 0; k < pairs; ++k) {
        const LinkingElement c = random_linking_element(rng, src);
        const LinkingElement d = random_linking_element(rng, src);
        const ModuleElement x = ModuleElement::project(e, random_amplified(rng, alg, e.generators(), 1).blocks());
        const ModuleElement y = ModuleElement::project(e, random_amplified(rng, alg, e.generators(), 1).blocks());
        const ModuleElement z = ModuleElement::project(e, random_amplified(rng, alg, e.generators(), 1).blocks());

        const LinkingElement cd = src.product(c, d);
        bump(r.product_formula, src.distance(cd, src.flat_product(c, d)));
        bump(r.involution, opmod::norm(src.flatten(src.adjoint(c)) - src.flatten(c).adjoint()));
        bump(r.double_centralizer, src.distance(src.product(multiplier_apply(m_u_w, c, Side::right), d),
                                                src.product(c, multiplier_apply(m_u_w, d, Side::left))));

        const ModuleElement px = ext.phi0()(x);
        const ModuleElement py = ext.phi0()(y);
        bump(r.hat_theta, opmod::norm(ext.hat(theta_operator(x, y)).matrix() - theta_operator(px, py).matrix()));
        bump(r.hat_involution, opmod::norm(ext.hat(c.theta.adjoint()).matrix() - ext.hat(c.theta).adjoint().matrix()));
        bump(r.hat_apply, module_norm(ext.hat(c.theta)(ext.phi0()(z)) - right_action(ext.phi0()(c.theta(z)), ext.u())));

        const LinkingElement cc = ext.check(c);
        const LinkingElement cdd = ext.check(d);
        bump(r.check_involution, dst.distance(ext.check(src.adjoint(c)), dst.adjoint(cc)));
        bump(r.check_product, dst.distance(dst.product(cc, multiplier_apply(m_one_u, cdd, Side::left)),
                                           multiplier_apply(m_u_u, ext.check(cd), Side::left)));

        const LinkingElement jpx = embed_J(dst, px);
        bump(r.gamma_embedding, dst.distance(ext.gamma(embed_J(src, x)), jpx));
        bump(r.delta_embedding, dst.distance(ext.delta(embed_J(src, x)), jpx));

        bump(r.gamma_product, dst.distance(dst.product(ext.gamma(c), ext.gamma(d)),
                                           multiplier_apply(m_u_u, ext.gamma(cd), Side::left)));
        const LinkingElement cstar_d = src.product(src.adjoint(c), d);
        bump(r.delta_product, dst.distance(dst.product(dst.adjoint(ext.delta(c)), ext.delta(d)),
                                           multiplier_apply(m_u_w, ext.delta(cstar_d), Side::left)));

        LinkingElement corner = dst.zero();
        corner.a = ext.u().to_element() * inner_product(x, y);
        bump(r.delta_corner, dst.distance(dst.product(dst.adjoint(ext.delta(embed_J(src, x))), ext.delta(embed_J(src, y))),
                                          corner));
        ++r.pairs;
    }
    return r;
}

std::pair<double, double> disjointness_failure(const ModuleMap& phi, const ViolationWitness& witness) {
    const LinkingAlgebra src(phi.domain());
    const LinkingAlgebra dst(phi.codomain());
    const LinkingElement c = embed_J(src, witness.x);
    const LinkingElement d = embed_J(src, witness.y);
    const double before = src.norm(src.product(src.adjoint(c), d));
    const LinkingElement pc = embed_J(dst, phi(witness.x));
    const LinkingElement pd = embed_J(dst, phi(witness.y));
    const double after = dst.norm(dst.product(dst.adjoint(pc), pd));
    return {before, after};
}

}  // namespace opmod
