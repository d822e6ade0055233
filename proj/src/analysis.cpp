#include "opmod/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "opmod/linking.hpp"
#include "opmod/preserver.hpp"

namespace opmod {

namespace {

std::vector<std::size_t> support_of(const IdealDescriptor& ideal) { return ideal.support(); }

// Re-solve on the basis in reverse order, each element scaled by a random nonzero complex.
double permutation_gap(const ModuleMap& phi, const CentralPositive& u, double tol, std::uint64_t seed) {
    auto basis = complex_basis(phi.domain());
    std::reverse(basis.begin(), basis.end());
    SplitMix64 rng(seed);
    std::vector<ModuleElement> family;
    for (const auto& b : basis) {
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double radius = rng.uniform(0.5, 2.0);
        family.push_back(b.scaled(std::polar(radius, angle)));
    }
    const auto outcome = extract_witness(phi, tol, family);
    double gap = 0.0;
    if (const auto* c = std::get_if<PreserverCertificate>(&outcome)) {
        for (std::size_t b = 0; b < u.scalars().size(); ++b) gap = std::max(gap, std::abs(c->u.scalar(b) - u.scalar(b)));
    } else {
        const auto& rej = std::get<NotPreserver>(outcome);
        for (std::size_t b = 0; b < u.scalars().size(); ++b) gap = std::max(gap, std::abs(rej.lambdas[b] - u.scalar(b)));
    }
    return gap;
}

bool is_surjective(const ModuleMap& phi, const ToleranceProfile& tol) {
    const HilbertModule image = image_submodule(phi, tol);
    return norm(image.projection() - phi.codomain().projection()) <= 1e3 * tol.projection;
}

LinkingSummary summarize(const LinkingResiduals& r) {
    LinkingSummary s;
    s.residuals = {{"product_formula", r.product_formula},   {"involution", r.involution},
                   {"double_centralizer", r.double_centralizer}, {"hat_theta", r.hat_theta},
                   {"hat_involution", r.hat_involution},     {"hat_apply", r.hat_apply},
                   {"check_involution", r.check_involution}, {"check_product", r.check_product},
                   {"gamma_embedding", r.gamma_embedding},   {"delta_embedding", r.delta_embedding},
                   {"gamma_product", r.gamma_product},       {"delta_product", r.delta_product},
                   {"delta_corner", r.delta_corner}};
    s.pairs = r.pairs;
    s.worst = r.worst();
    return s;
}

std::string diagnose(bool injective, bool surjective) {
    if (injective && surjective) return "bijective preserver: x -> Phi(x) w^{-1} is a module isomorphism";
    if (surjective) return "surjective preserver that is not injective: E is not isomorphic to F through Phi";
    if (injective) return "injective preserver whose image is a proper submodule of F";
    return "preserver that is neither injective nor surjective";
}

void certified_branch(AnalysisReport& rep, const InstanceBundle& bundle, const PreserverCertificate& cert,
                      const AnalysisOptions& opt) {
    const ModuleMap& phi = bundle.map;
    const ToleranceProfile& tol = opt.tol;

    WitnessSummary ws;
    ws.u = cert.u.scalars();
    ws.w = cert.w.scalars();
    ws.residual = cert.residual;
    ws.scale = cert.scale;
    ws.tolerance = cert.tolerance;
    const SampleResidual fresh = verify_certificate(phi, cert.u, opt.samples, derive_seed(opt.seed, 1));
    ws.fresh_sample_residual = fresh.max_residual;
    ws.fresh_samples = fresh.samples;
    ws.permutation_gap = permutation_gap(phi, cert.u, tol.certification, derive_seed(opt.seed, 2));
    rep.certificate = ws;

    const double mn = map_norm(phi);
    rep.norms = NormSummary{mn * mn, cert.u.norm(), cert.u.norm() - mn * mn};

    try {
        const Decomposition d = decompose(phi, cert, tol);
        rep.decomposition = DecompositionSummary{d.isometry_residual, d.factorization_residual, d.adjoint_residual,
                                                 d.kernel_dimension, d.kernel_dimension_rw};
    } catch (const InternalInconsistency& e) {
        rep.notes.emplace_back(std::string("decomposition: ") + e.what());
    }

    const IdealCheck ic = image_ideal_check(phi, cert, tol);
    rep.ideals = IdealSummary{support_of(ic.domain_ideal), support_of(ic.image_ideal), support_of(ic.witness_ideal),
                              ic.image_equals_witness, ic.image_within_domain};

    const InjectivityReport inj = injectivity_analysis(phi, cert, tol);
    InjectivitySummary is;
    is.kernel_dimension = inj.kernel_dimension;
    is.injective = inj.injective;
    is.surjective = is_surjective(phi, tol);
    is.image_ideal_full = inj.image_ideal_full;
    is.full_ideal_consequences = inj.full_ideal_consequences;
    is.inverse_witness_error = inj.inverse_witness_error;
    rep.injectivity = is;

    BijectiveSummary bs;
    try {
        const BijectiveReport br = bijective_analysis(phi, tol);
        bs.applicable = true;
        bs.ideals_equal = br.ideals_equal;
        bs.witness_invertible = br.witness_invertible;
        bs.psi_isometry_residual = br.psi_isometry_residual;
        bs.w_inverse_norm = br.w_inverse_norm;
    } catch (const PreconditionError& e) {
        bs.reason = e.what();
    }
    rep.bijective = bs;

    if (opt.linking_pairs > 0) {
        rep.linking = summarize(verify_linking(phi, cert, opt.linking_pairs, derive_seed(opt.seed, 3), tol));
    }
    rep.diagnosis = diagnose(is.injective, is.surjective);
}

void rejected_branch(AnalysisReport& rep, const InstanceBundle& bundle, const NotPreserver& rej,
                     const AnalysisOptions& opt) {
    rep.rejection = RejectionSummary{rej.lambdas, rej.block_residuals, rej.residual, rej.scale, rej.reason};
    const SearchOutcome found = find_violating_pair(bundle.map, opt.tol.violation, opt.budget, derive_seed(opt.seed, 4));
    if (const auto* v = std::get_if<ViolationWitness>(&found)) {
        rep.verdict = Verdict::rejected;
        const auto [before, after] = disjointness_failure(bundle.map, *v);
        rep.violation = ViolationSummary{v->x.blocks(), v->y.blocks(), v->inner_norm, v->violation, v->trial,
                                         before, after};
        rep.diagnosis = "not orthogonality preserving: <x, y> = 0 but <Phi x, Phi y> != 0";
    } else {
        const auto& ex = std::get<Exhausted>(found);
        rep.verdict = Verdict::exhausted_search;
        rep.search = SearchSummary{ex.trials, ex.max_violation};
        rep.diagnosis = "witness solve failed; no violating pair found within the trial budget";
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt(Complex z) {
    if (z.imag() == 0.0) return fmt(z.real());
    std::ostringstream os;
    os << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

template <class T>
std::string list(const std::vector<T>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_same_v<T, double> || std::is_same_v<T, Complex>) {
            out += fmt(v[i]);
        } else {
            out += std::to_string(v[i]);
        }
    }
    return out + ")";
}

void print_matrix(std::ostringstream& os, const Matrix& m, const std::string& indent) {
    std::vector<std::string> cells(static_cast<std::size_t>(m.size()));
    std::size_t width = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            auto& c = cells[static_cast<std::size_t>(i * m.cols() + j)];
            c = fmt(m(i, j));
            width = std::max(width, c.size());
        }
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << indent << "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << (j ? "  " : " ") << std::setw(static_cast<int>(width))
               << cells[static_cast<std::size_t>(i * m.cols() + j)];
        }
        os << " ]\n";
    }
}

}  // namespace

AnalysisReport analyze(const InstanceBundle& bundle, const AnalysisOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.provenance = bundle.provenance;
    rep.algebra_blocks = bundle.algebra.blocks();
    rep.tolerance = opt.tol.certification;
    rep.seed = opt.seed;
    rep.notes = bundle.notes;

    const WitnessOutcome outcome = extract_witness(bundle.map, opt.tol.certification);
    if (const auto* cert = std::get_if<PreserverCertificate>(&outcome)) {
        rep.verdict = Verdict::certified;
        certified_branch(rep, bundle, *cert, opt);
    } else {
        rejected_branch(rep, bundle, std::get<NotPreserver>(outcome), opt);
    }
    rep.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

int exit_code(Verdict verdict) noexcept { return verdict == Verdict::certified ? 0 : 2; }

std::string format_human(const AnalysisReport& r) {
    std::ostringstream os;
    os << "verdict: " << to_string(r.verdict) << "\n";
    os << "instance: " << (r.provenance.empty() ? "(unnamed)" : r.provenance) << " over blocks "
       << list(r.algebra_blocks) << "\n";
    if (!r.diagnosis.empty()) os << "diagnosis: " << r.diagnosis << "\n";

    if (r.certificate) {
        const auto& c = *r.certificate;
        os << "witness u per block: " << list(c.u) << "\n";
        os << "w = u^(1/2) per block: " << list(c.w) << "\n";
        os << "residual " << fmt(c.residual) << " (scale " << fmt(c.scale) << ", tolerance " << fmt(c.tolerance)
           << "), fresh samples " << c.fresh_samples << " max " << fmt(c.fresh_sample_residual)
           << ", permuted re-solve gap " << fmt(c.permutation_gap) << "\n";
    }
    if (r.norms) {
        os << "|Phi|^2 = " << fmt(r.norms->map_norm_sq) << ", |u| = " << fmt(r.norms->u_norm) << ", gap "
           << fmt(r.norms->gap) << "\n";
    }
    if (r.decomposition) {
        const auto& d = *r.decomposition;
        os << "decomposition Phi = Theta o R_w: isometry " << fmt(d.isometry_residual) << ", factorization "
           << fmt(d.factorization_residual) << ", adjoint " << fmt(d.adjoint_residual) << ", dim ker Phi "
           << d.kernel_dimension << ", dim ker R_w " << d.kernel_dimension_rw << "\n";
    }
    if (r.ideals) {
        const auto& i = *r.ideals;
        os << "ideals: I_E " << list(i.domain) << ", I_F_Phi " << list(i.image) << ", supp(u) " << list(i.witness)
           << (i.image_equals_witness ? ", image = supp(u)" : ", image != supp(u)")
           << (i.image_within_domain ? ", image within I_E" : ", image NOT within I_E") << "\n";
    }
    if (r.injectivity) {
        const auto& i = *r.injectivity;
        os << "injective " << (i.injective ? "yes" : "no") << " (kernel " << i.kernel_dimension << "), surjective "
           << (i.surjective ? "yes" : "no") << ", I_F_Phi = I_E " << (i.image_ideal_full ? "yes" : "no") << "\n";
    }
    if (r.bijective) {
        const auto& b = *r.bijective;
        if (b.applicable) {
            os << "bijective: Psi isometry residual " << fmt(b.psi_isometry_residual) << ", |w^-1| "
               << fmt(b.w_inverse_norm) << "\n";
        } else {
            os << "bijective analysis refused: " << b.reason << "\n";
        }
    }
    if (r.linking) {
        os << "linking identities over " << r.linking->pairs << " pairs, worst " << fmt(r.linking->worst) << "\n";
        for (const auto& [name, value] : r.linking->residuals) os << "  " << name << " " << fmt(value) << "\n";
    }
    if (r.rejection) {
        os << "witness solve rejected: " << r.rejection->reason << "\n";
        os << "  least-squares lambdas " << list(r.rejection->lambdas) << ", residual " << fmt(r.rejection->residual)
           << "\n";
    }
    if (r.violation) {
        const auto& v = *r.violation;
        os << "violating pair (trial " << v.trial << "): |<x,y>| = " << fmt(v.inner_norm) << ", |<Phi x, Phi y>| = "
           << fmt(v.violation) << "\n";
        for (std::size_t b = 0; b < v.x.size(); ++b) {
            os << "  x block " << b << ":\n";
            print_matrix(os, v.x[b], "    ");
            os << "  y block " << b << ":\n";
            print_matrix(os, v.y[b], "    ");
        }
        os << "linking disjointness: before " << fmt(v.linking_before) << ", after " << fmt(v.linking_after) << "\n";
    }
    if (r.search) {
        os << "search exhausted after " << r.search->trials << " trials, max violation "
           << fmt(r.search->max_violation) << "\n";
    }
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    os << "time " << fmt(r.timing_ms) << " ms\n";
    return os.str();
}

std::vector<DegradationRow> degradation(const std::string& gallery_base, std::span<const int> grid_sizes,
                                        const ToleranceProfile& tol) {
    if (grid_sizes.empty()) throw InvalidInput("degradation needs at least one grid size");
    std::vector<DegradationRow> rows;
    for (int n : grid_sizes) {
        const InstanceBundle bundle = gallery(gallery_base + "(" + std::to_string(n) + ")");
        DegradationRow row;
        row.grid = n;
        const WitnessOutcome outcome = extract_witness(bundle.map, tol.certification);
        const PreserverCertificate& cert = certificate_of(outcome);
        row.certification_residual = cert.residual;
        double u_min = std::numeric_limits<double>::infinity();
        for (std::size_t b : cert.u.ideal().support()) u_min = std::min(u_min, cert.u.scalar(b));
        row.u_min = u_min;
        row.w_inverse_norm = cert.w.pseudo_inverse(tol.invertibility).norm();
        try {
            row.psi_isometry_residual = bijective_analysis(bundle.map, tol).psi_isometry_residual;
        } catch (const PreconditionError&) {
            row.psi_isometry_residual = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_degradation(std::span<const DegradationRow> rows, bool machine) {
    std::ostringstream os;
    if (machine) {
        os << "N,w_inverse_norm,u_min,certification_residual,psi_isometry_residual\n";
        os << std::setprecision(17);
        for (const auto& r : rows) {
            os << r.grid << "," << r.w_inverse_norm << "," << r.u_min << "," << r.certification_residual << ","
               << r.psi_isometry_residual << "\n";
        }
        return os.str();
    }
    os << std::left << std::setw(6) << "N" << std::setw(14) << "|w^-1|" << std::setw(14) << "min u" << std::setw(14)
       << "residual" << "Psi isometry\n";
    for (const auto& r : rows) {
        os << std::setw(6) << r.grid << std::setw(14) << fmt(r.w_inverse_norm) << std::setw(14) << fmt(r.u_min)
           << std::setw(14) << fmt(r.certification_residual) << fmt(r.psi_isometry_residual) << "\n";
    }
    return os.str();
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::rejected: return "rejected";
        case Verdict::exhausted_search: return "exhausted-search";
    }
    return "rejected";
}

Verdict verdict_from_string(const std::string& name) {
    if (name == "certified") return Verdict::certified;
    if (name == "rejected") return Verdict::rejected;
    if (name == "exhausted-search") return Verdict::exhausted_search;
    throw InvalidInput("unknown verdict '" + name + "'");
}

bool ViolationSummary::operator==(const ViolationSummary& o) const {
    auto same = [](const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols() || a[i] != b[i]) return false;
        }
        return true;
    };
    return same(x, o.x) && same(y, o.y) && inner_norm == o.inner_norm && violation == o.violation &&
           trial == o.trial && linking_before == o.linking_before && linking_after == o.linking_after;
}

void validate_report(const AnalysisReport& r) {
    switch (r.verdict) {
        case Verdict::certified:
            if (!r.certificate) throw ValidationError("certificate", "certified verdict without a certificate");
            if (r.violation || r.search) throw ValidationError("violation", "certified verdict with a rejection payload");
            break;
        case Verdict::rejected:
            if (!r.violation) throw ValidationError("violation", "rejected verdict without a violating pair");
            if (r.certificate) throw ValidationError("certificate", "rejected verdict with a certificate");
            break;
        case Verdict::exhausted_search:
            if (!r.search) throw ValidationError("search", "exhausted verdict without search data");
            if (r.certificate) throw ValidationError("certificate", "exhausted verdict with a certificate");
            break;
    }
}

}  // namespace opmod
