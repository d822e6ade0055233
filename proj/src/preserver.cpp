#include "opmod/preserver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "opmod/random.hpp"

namespace opmod {

namespace {

double frobenius_sq(const Matrix& m) { return m.squaredNorm(); }

// Column data of an element on block c: nonzero iff the element touches c.
bool touches(const ModuleElement& x, std::size_t c) { return x.block(c).cwiseAbs().maxCoeff() > 0.0; }

}  // namespace

WitnessOutcome extract_witness(const ModuleMap& phi, double tol) {
    const auto basis = complex_basis(phi.domain());
    return extract_witness(phi, tol, basis);
}

WitnessOutcome extract_witness(const ModuleMap& phi, double tol, std::span<const ModuleElement> spanning) {
    if (!(tol > 0.0)) throw InvalidInput("certification tolerance must be positive");
    const auto& alg = phi.domain().algebra();
    const IdealDescriptor ideal = compute_ideal(phi.domain());
    const std::size_t nblocks = alg.block_count();

    std::vector<Complex> lambdas(nblocks, 0.0);
    std::vector<bool> determined(nblocks, false);
    std::vector<double> block_residuals(nblocks, 0.0);
    double max_h = 0.0;

    for (std::size_t c = 0; c < nblocks; ++c) {
        std::vector<const Matrix*> xs;
        std::vector<Matrix> ys;
        for (const auto& b : spanning) {
            if (!touches(b, c)) continue;
            xs.push_back(&b.block(c));
            ys.push_back(phi.matrix().block(c) * b.block(c));
        }
        // lambda_c = <H, G>_F / <H, H>_F summed over all pairs.
        Complex num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const Matrix h = xs[i]->adjoint() * *xs[j];
                const Matrix g = ys[i].adjoint() * ys[j];
                num += (h.conjugate().cwiseProduct(g)).sum();
                den += frobenius_sq(h);
                max_h = std::max(max_h, spectral_norm(h));
            }
        }
        if (den > 0.0) {
            lambdas[c] = num / den;
            determined[c] = ideal.contains(c);
        }
        double res = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const Matrix h = xs[i]->adjoint() * *xs[j];
                const Matrix g = ys[i].adjoint() * ys[j];
                res = std::max(res, spectral_norm(g - lambdas[c] * h));
            }
        }
        block_residuals[c] = res;
    }

    double max_lambda = 0.0;
    for (auto l : lambdas) max_lambda = std::max(max_lambda, std::abs(l));
    const double scale = std::max(1.0, max_h * max_lambda);
    const double residual = *std::max_element(block_residuals.begin(), block_residuals.end());

    std::string reason;
    for (std::size_t c = 0; c < nblocks && reason.empty(); ++c) {
        if (!ideal.contains(c)) continue;
        if (!determined[c]) reason = "block " + std::to_string(c) + " is numerically undetermined";
        else if (std::abs(lambdas[c].imag()) > tol * std::max(1.0, std::abs(lambdas[c])))
            reason = "witness is not real on block " + std::to_string(c);
        else if (lambdas[c].real() < -tol)
            reason = "witness is negative on block " + std::to_string(c);
    }
    if (reason.empty() && residual > tol * scale) reason = "sesquilinear identity fails (residual above tolerance)";
    if (!reason.empty()) return NotPreserver{lambdas, block_residuals, residual, scale, reason};

    std::vector<double> w(nblocks, 0.0), u(nblocks, 0.0);
    for (std::size_t c = 0; c < nblocks; ++c) {
        if (!ideal.contains(c)) continue;
        w[c] = std::sqrt(std::max(0.0, lambdas[c].real()));
        u[c] = w[c] * w[c];
    }
    return PreserverCertificate{phi,      CentralPositive(ideal, u), CentralPositive(ideal, w), residual,
                                scale,    tol,                       determined};
}

bool is_certified(const WitnessOutcome& outcome) noexcept {
    return std::holds_alternative<PreserverCertificate>(outcome);
}

const PreserverCertificate& certificate_of(const WitnessOutcome& outcome) {
    if (const auto* c = std::get_if<PreserverCertificate>(&outcome)) return *c;
    throw PreconditionError("map is not a certified orthogonality preserver: " + std::get<NotPreserver>(outcome).reason);
}

namespace {

ModuleElement random_module_element(SplitMix64& rng, const HilbertModule& e) {
    std::vector<Matrix> data;
    const auto& alg = e.algebra();
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const Eigen::Index nb = alg.block_size(b);
        data.push_back(gaussian_matrix(rng, static_cast<Eigen::Index>(e.generators()) * nb, nb));
    }
    return ModuleElement::project(e, data);
}

}  // namespace

SampleResidual verify_certificate(const ModuleMap& phi, const CentralPositive& u, std::size_t samples,
                                  std::uint64_t seed) {
    require_same_algebra(phi.domain().algebra(), u.algebra(), "verify_certificate");
    SplitMix64 rng(seed);
    const AlgebraElement ue = u.to_element();
    SampleResidual out;
    for (std::size_t s = 0; s < samples; ++s) {
        const ModuleElement x = random_module_element(rng, phi.domain());
        const bool diagonal = rng.uniform() < 0.5;
        const ModuleElement y = diagonal ? x : random_module_element(rng, phi.domain());
        const double denom = module_norm(x) * module_norm(y);
        ++out.samples;
        if (denom == 0.0) continue;
        const AlgebraElement lhs = inner_product(phi(x), phi(y));
        const AlgebraElement rhs = ue * inner_product(x, y);
        out.max_residual = std::max(out.max_residual, norm(lhs - rhs) / denom);
    }
    return out;
}

SearchOutcome find_violating_pair(const ModuleMap& phi, double tol, std::size_t trial_budget, std::uint64_t seed) {
    if (trial_budget == 0) throw InvalidInput("trial budget must be at least 1");
    const HilbertModule& e = phi.domain();
    const auto& alg = e.algebra();
    SplitMix64 rng(seed);
    double max_violation = 0.0;

    for (std::size_t trial = 0; trial < trial_budget; ++trial) {
        // x_b = Q_b L_b R_b with inner rank k_b < rank(p_b) whenever possible.
        std::vector<Matrix> xdata;
        for (std::size_t b = 0; b < alg.block_count(); ++b) {
            const Matrix& q = e.range_basis(b);
            const Eigen::Index nb = alg.block_size(b);
            const Eigen::Index r = q.cols();
            if (r == 0) {
                xdata.push_back(Matrix::Zero(static_cast<Eigen::Index>(e.generators()) * nb, nb));
                continue;
            }
            const Eigen::Index kmax = std::max<Eigen::Index>(1, std::min(nb, r - 1));
            const auto k = static_cast<Eigen::Index>(rng.uniform_int(1, kmax));
            xdata.push_back(q * (gaussian_matrix(rng, r, k) * gaussian_matrix(rng, k, nb)));
        }
        ModuleElement x(e, std::move(xdata));
        const double xn = module_norm(x);
        if (xn == 0.0) continue;
        x = x.scaled(1.0 / xn);
        const ModuleElement phix = phi(x);

        double best = 0.0;
        std::size_t best_block = 0;
        Vector best_dir;
        for (std::size_t b = 0; b < alg.block_count(); ++b) {
            const Matrix& q = e.range_basis(b);
            if (q.cols() == 0) continue;
            // Complement of x inside range(p_b): {Q c : x_b^* Q c = 0}.
            const Matrix constraint = x.block(b).adjoint() * q;
            Eigen::JacobiSVD<Matrix> csvd(constraint, Eigen::ComputeFullV);
            const auto rank = static_cast<Eigen::Index>(numerical_rank(constraint, 1e-12));
            const Eigen::Index dim = q.cols() - rank;
            if (dim <= 0) continue;
            const Matrix s = q * csvd.matrixV().rightCols(dim);
            // y -> <Phi x, Phi y> acts columnwise by K = (T x)^* T S.
            const Matrix k = phix.block(b).adjoint() * phi.matrix().block(b) * s;
            Eigen::JacobiSVD<Matrix> ksvd(k, Eigen::ComputeFullV);
            const double sigma = ksvd.singularValues().size() ? ksvd.singularValues()(0) : 0.0;
            if (sigma > best) {
                best = sigma;
                best_block = b;
                best_dir = s * ksvd.matrixV().col(0);
            }
        }
        max_violation = std::max(max_violation, best);
        if (best > tol) {
            std::vector<Matrix> ydata = ModuleElement::zero(e).blocks();
            ydata[best_block].col(0) = best_dir;
            ModuleElement y = ModuleElement::project(e, ydata);
            const double inner = norm(inner_product(x, y));
            const double violation = norm(inner_product(phix, phi(y)));
            return ViolationWitness{std::move(x), std::move(y), inner, violation, trial};
        }
    }
    return Exhausted{trial_budget, max_violation};
}

double inner_product_residual(const ModuleMap& psi, const std::optional<CentralPositive>& u) {
    const auto basis = complex_basis(psi.domain());
    const auto& alg = psi.domain().algebra();
    std::vector<ModuleElement> images;
    for (const auto& b : basis) images.push_back(psi(b));
    double res = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            // Elements on different blocks have zero inner products on both sides.
            bool share = false;
            for (std::size_t c = 0; c < alg.block_count() && !share; ++c)
                share = touches(basis[i], c) && touches(basis[j], c);
            if (!share) continue;
            AlgebraElement rhs = inner_product(basis[i], basis[j]);
            if (u) rhs = u->to_element() * rhs;
            res = std::max(res, norm(inner_product(images[i], images[j]) - rhs));
        }
    }
    return res;
}

namespace {

// Projection p restricted to the blocks where `keep` holds.
AmplifiedElement restrict_blocks(const AmplifiedElement& p, const std::vector<bool>& keep) {
    std::vector<double> s;
    for (bool k : keep) s.push_back(k ? 1.0 : 0.0);
    return p.scaled_blocks(s);
}

Matrix pseudo_inverse(const Matrix& m, double cutoff) {
    if (m.size() == 0) return Matrix(m.cols(), m.rows());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double thresh = cutoff * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::VectorXd inv(sv.size());
    for (Eigen::Index k = 0; k < sv.size(); ++k) inv(k) = sv(k) > thresh ? 1.0 / sv(k) : 0.0;
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace

Decomposition decompose(const ModuleMap& phi, const PreserverCertificate& cert, const ToleranceProfile& tol) {
    const HilbertModule& e = phi.domain();
    const auto& alg = e.algebra();
    const CentralPositive& w = cert.w;

    const std::size_t ker_phi = kernel_dimension(phi, tol);
    const std::size_t ker_rw = kernel_dimension(right_multiplier(e, w), tol);
    if (ker_phi != ker_rw) {
        throw InternalInconsistency("dim ker Phi = " + std::to_string(ker_phi) + " but dim ker R_w = " +
                                    std::to_string(ker_rw) + ": the certificate is false");
    }

    std::vector<bool> w_support;
    for (std::size_t b = 0; b < alg.block_count(); ++b)
        w_support.push_back(w.scalar(b) > tol.rank_cutoff * std::max(1.0, w.scalar(b)));
    const HilbertModule ew =
        HilbertModule::submodule(alg, e.generators(), restrict_blocks(e.projection(), w_support), tol);
    const HilbertModule image = image_submodule(phi, tol);

    std::vector<double> w_inv;
    for (std::size_t b = 0; b < alg.block_count(); ++b) w_inv.push_back(w_support[b] ? 1.0 / w.scalar(b) : 0.0);
    // Theta(x w) := Phi(x), i.e. Theta = T w^{-1} on E w.
    const ModuleMap theta(ew, image, phi.matrix().scaled_blocks(w_inv));
    const ModuleMap phi0 = phi.with_codomain(image);

    // Theta^{-1} as the pseudo-inverse on F_Phi, then R_w o Theta^{-1}.
    std::vector<Matrix> inv_blocks;
    for (const auto& tb : theta.matrix().blocks()) inv_blocks.push_back(pseudo_inverse(tb, tol.rank_cutoff));
    const AmplifiedElement theta_inv(alg, e.generators(), image.generators(), std::move(inv_blocks));
    const ModuleMap phi0_adjoint(image, e, theta_inv.scaled_blocks(w.scalars()));

    const ModuleMap theta_rw = theta.with_domain(e).compose(right_multiplier(e, w));
    const double factorization = norm(phi.matrix() - theta_rw.matrix());
    const double adjoint_res = norm(phi0_adjoint.matrix() - adjoint_map(phi0).matrix());
    const double isometry = inner_product_residual(theta);

    return Decomposition{w,           ew,          image,         theta,   phi0,  phi0_adjoint,
                         isometry,    factorization, adjoint_res, ker_phi, ker_rw};
}

IdealCheck image_ideal_check(const ModuleMap& phi, const PreserverCertificate& cert, const ToleranceProfile& tol) {
    const IdealDescriptor ie = compute_ideal(phi.domain(), tol);
    const IdealDescriptor ifphi = compute_ideal(image_submodule(phi, tol), tol);
    const IdealDescriptor su = cert.u.support(tol.zero_entry).intersect(ie);
    return IdealCheck{ie, ifphi, su, ifphi == su, ifphi.is_subset_of(ie)};
}

InjectivityReport injectivity_analysis(const ModuleMap& phi, const PreserverCertificate& cert,
                                       const ToleranceProfile& tol) {
    InjectivityReport rep;
    rep.kernel_dimension = kernel_dimension(phi, tol);
    rep.injective = rep.kernel_dimension == 0;
    const HilbertModule image = image_submodule(phi, tol);
    const IdealDescriptor ie = compute_ideal(phi.domain(), tol);
    const IdealDescriptor ifphi = compute_ideal(image, tol);
    rep.image_ideal_full = ifphi == ie;

    if (rep.injective && !image.is_zero()) {
        const auto& alg = phi.domain().algebra();
        std::vector<Matrix> inv;
        for (const auto& tb : phi.matrix().blocks()) inv.push_back(pseudo_inverse(tb, tol.rank_cutoff));
        const ModuleMap phi_inv(image, phi.domain(),
                                AmplifiedElement(alg, phi.domain().generators(), image.generators(), std::move(inv)));
        const auto outcome = extract_witness(phi_inv, cert.tolerance > 0 ? cert.tolerance : tol.certification);
        // Reciprocal of u on I_{F_Phi}.
        const CentralPositive pinv = cert.u.pseudo_inverse(tol.invertibility);
        std::vector<double> expected(alg.block_count(), 0.0);
        for (auto b : ifphi.support()) expected[b] = pinv.scalar(b);
        rep.expected_inverse_witness = CentralPositive(ifphi, expected);
        if (const auto* c = std::get_if<PreserverCertificate>(&outcome)) {
            rep.inverse_witness = c->u;
            double err = 0.0;
            for (std::size_t b = 0; b < alg.block_count(); ++b)
                err = std::max(err, std::abs(c->u.scalar(b) - expected[b]) / std::max(1.0, expected[b]));
            rep.inverse_witness_error = err;
        } else {
            rep.inverse_witness_error = std::numeric_limits<double>::infinity();
        }
    }
    if (rep.image_ideal_full) {
        bool ew_is_e = true;
        for (std::size_t b = 0; b < phi.domain().algebra().block_count(); ++b) {
            const bool on_e = phi.domain().block_rank(b) > 0;
            const bool w_pos = cert.w.scalar(b) > tol.rank_cutoff * std::max(1.0, cert.w.scalar(b));
            if (on_e && !w_pos) ew_is_e = false;
        }
        rep.full_ideal_consequences = rep.injective && ew_is_e;
    }
    return rep;
}

BijectiveReport bijective_analysis(const ModuleMap& phi, const ToleranceProfile& tol) {
    if (kernel_dimension(phi, tol) != 0) throw PreconditionError("map is not bijective: not injective");
    const HilbertModule image = image_submodule(phi, tol);
    if (norm(image.projection() - phi.codomain().projection()) > 1e3 * tol.projection)
        throw PreconditionError("map is not bijective: not surjective onto the codomain");
    const auto outcome = extract_witness(phi, tol.certification);
    if (!is_certified(outcome))
        throw PreconditionError("map is not orthogonality preserving: " + std::get<NotPreserver>(outcome).reason);
    const auto& cert = std::get<PreserverCertificate>(outcome);

    const IdealDescriptor ie = compute_ideal(phi.domain(), tol);
    const IdealDescriptor iff = compute_ideal(phi.codomain(), tol);
    bool invertible = true;
    double w_inv_norm = 0.0;
    std::vector<double> w_inv(ie.algebra().block_count(), 0.0);
    for (auto b : ie.support()) {
        if (!(cert.u.scalar(b) >= tol.invertibility)) invertible = false;
        if (cert.w.scalar(b) > 0.0) {
            w_inv[b] = 1.0 / cert.w.scalar(b);
            w_inv_norm = std::max(w_inv_norm, w_inv[b]);
        }
    }
    const ModuleMap psi(phi.domain(), phi.codomain(), phi.matrix().scaled_blocks(w_inv));
    return BijectiveReport{iff == ie, invertible, inner_product_residual(psi), w_inv_norm, cert.u, cert.w, psi};
}

}  // namespace opmod
