#pragma once

// The linking algebra L_E = [[K(E), E], [E~, I_E]] realized as a corner of
// Mat_{n+1}(A): G = [[theta, x], [y^*, a]]. Elements are stored componentwise
// and the componentwise product is checked against the flat matrix product.

#include <cstdint>
#include <utility>

#include "opmod/preserver.hpp"
#include "opmod/random.hpp"

namespace opmod {

struct LinkingElement {
    CompactOperator theta;
    ModuleElement x;
    ModuleElement y;  // stands for y~, the adjoint row y^*
    AlgebraElement a;

    LinkingElement scaled(Complex s) const;
    friend LinkingElement operator+(const LinkingElement& c, const LinkingElement& d);
    friend LinkingElement operator-(const LinkingElement& c, const LinkingElement& d);
};

class LinkingAlgebra {
public:
    explicit LinkingAlgebra(HilbertModule module, const ToleranceProfile& tol = kDefaultTolerances);

    const HilbertModule& module() const noexcept { return module_; }
    const IdealDescriptor& ideal() const noexcept { return ideal_; }

    /// Checks the corner constraints; `a` must vanish off I_E.
    LinkingElement element(CompactOperator theta, ModuleElement x, ModuleElement y, AlgebraElement a) const;
    LinkingElement zero() const;

    /// [[tt' + theta_{x,y'}, t(x') + x a'], [(t'^*(y) + y' a^*)~, <y, x'> + a a']].
    LinkingElement product(const LinkingElement& c, const LinkingElement& d) const;
    /// [[t^*, y], [x~, a^*]].
    LinkingElement adjoint(const LinkingElement& c) const;

    AmplifiedElement flatten(const LinkingElement& c) const;
    /// Reads the corners of an (n+1) x (n+1) A-matrix, compressing to the corner algebra.
    LinkingElement unflatten(const AmplifiedElement& g) const;
    LinkingElement flat_product(const LinkingElement& c, const LinkingElement& d) const;
    /// C*-norm of the flattened element.
    double norm(const LinkingElement& c) const;
    /// C*-norm of the flattened difference.
    double distance(const LinkingElement& c, const LinkingElement& d) const;

    /// dim K(E) + 2 dim E + dim I_E over C.
    std::size_t complex_dimension() const;

private:
    HilbertModule module_;
    IdealDescriptor ideal_;
};

LinkingAlgebra build_linking(const HilbertModule& module, const ToleranceProfile& tol = kDefaultTolerances);

/// J_E(x) = [[0, x], [0, 0]].
LinkingElement embed_J(const LinkingAlgebra& linking, const ModuleElement& x);

LinkingElement random_linking_element(SplitMix64& rng, const LinkingAlgebra& linking);

/// M_{v,u} = (L_{v,u}, R_{v,u}).
struct LinkingMultiplier {
    CentralPositive v;
    CentralPositive u;
};

enum class Side { left, right };

/// left: (theta o R_v, x v, (y u)~, a u); right: (theta o R_v, x u, (y v)~, a u).
LinkingElement multiplier_apply(const LinkingMultiplier& m, const LinkingElement& c, Side side);

/// Extension of a certified preserver Phi to the linking algebras L_E -> L_{F_Phi}.
class LinkingExtension {
public:
    /// Throws PreconditionError when `outcome` is not a certificate.
    static LinkingExtension make(const ModuleMap& phi, const WitnessOutcome& outcome,
                                 const ToleranceProfile& tol = kDefaultTolerances);
    LinkingExtension(const ModuleMap& phi, const PreserverCertificate& cert,
                     const ToleranceProfile& tol = kDefaultTolerances);

    const LinkingAlgebra& source() const noexcept { return source_; }
    const LinkingAlgebra& target() const noexcept { return target_; }
    /// Phi_0: E -> F_Phi.
    const ModuleMap& phi0() const noexcept { return phi0_; }
    const ModuleMap& phi0_adjoint() const noexcept { return phi0_adjoint_; }
    const CentralPositive& u() const noexcept { return u_; }
    const CentralPositive& w() const noexcept { return w_; }
    /// The unit of A, used as the "1" in M_{1,u}.
    const CentralPositive& one() const noexcept { return one_; }

    /// Phi_0 o theta o Phi_0^*.
    CompactOperator hat(const CompactOperator& theta) const;
    /// Compression of a to the blocks of I_{F_Phi}.
    AlgebraElement j(const AlgebraElement& a) const;
    LinkingElement check(const LinkingElement& c) const;
    /// M_{1,u} check(c).
    LinkingElement gamma(const LinkingElement& c) const;
    /// M_{1,w} check(c).
    LinkingElement delta(const LinkingElement& c) const;

private:
    LinkingAlgebra source_;
    LinkingAlgebra target_;
    ModuleMap phi0_;
    ModuleMap phi0_adjoint_;
    CentralPositive u_;
    CentralPositive w_;
    CentralPositive one_;
};

CompactOperator hat_phi(const LinkingExtension& ext, const CompactOperator& theta);
LinkingElement check_phi(const LinkingExtension& ext, const LinkingElement& c);
std::pair<LinkingElement, LinkingElement> gamma_delta(const LinkingExtension& ext, const LinkingElement& c);

/// Worst residuals of the extension identities over random pairs.
struct LinkingResiduals {
    double product_formula = 0.0;     // componentwise vs flat product, in L_E
    double involution = 0.0;          // componentwise vs flat adjoint
    double double_centralizer = 0.0;  // R(c) d vs c L(d) for M_{u,w}
    double hat_theta = 0.0;           // hat(theta_{x,y}) vs theta_{Phi x, Phi y}
    double hat_involution = 0.0;      // hat(theta^*) vs hat(theta)^*
    double hat_apply = 0.0;           // hat(theta)(Phi z) vs Phi(theta z) u
    double check_involution = 0.0;    // check(c^*) vs check(c)^*
    double check_product = 0.0;       // check(c) M_{1,u} check(d) vs M_{u,u} check(cd)
    double gamma_embedding = 0.0;     // Gamma o J_E vs J_{F_Phi} o Phi
    double delta_embedding = 0.0;     // Delta o J_E vs J_{F_Phi} o Phi
    double gamma_product = 0.0;       // Gamma(c) Gamma(d) vs M_{u,u} Gamma(cd)
    double delta_product = 0.0;       // Delta(c)^* Delta(d) vs M_{u,u^{1/2}} Delta(c^* d)
    double delta_corner = 0.0;        // Delta(Jx)^* Delta(Jy) vs diag(0, u<x,y>)
    std::size_t pairs = 0;

    double worst() const;
};

LinkingResiduals verify_linking(const ModuleMap& phi, const PreserverCertificate& cert, std::size_t pairs,
                                std::uint64_t seed, const ToleranceProfile& tol = kDefaultTolerances);

/// Converse direction on a violating pair: c = J(x), d = J(y) have c^* d = 0 while
/// J(Phi x)^* J(Phi y) != 0. Returns (|c^* d|, |J(Phi x)^* J(Phi y)|).
std::pair<double, double> disjointness_failure(const ModuleMap& phi, const ViolationWitness& witness);

}  // namespace opmod
