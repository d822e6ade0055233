#include "opmod/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace opmod {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Encoding

json encode(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json encode(Complex z) { return json::array({encode(z.real()), encode(z.imag())}); }

json encode(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json encode(const std::vector<Matrix>& blocks) {
    json out = json::array();
    for (const auto& m : blocks) out.push_back(encode(m));
    return out;
}

json encode(const std::vector<double>& v) {
    json out = json::array();
    for (double d : v) out.push_back(encode(d));
    return out;
}

json encode(const std::vector<Complex>& v) {
    json out = json::array();
    for (Complex d : v) out.push_back(encode(d));
    return out;
}

json encode_module(const HilbertModule& m) {
    return json{{"n", m.generators()}, {"p", encode(m.projection().blocks())}};
}

json encode_central(const CentralPositive& c) {
    json scalars = json::array();
    for (std::size_t b : c.ideal().support()) scalars.push_back(encode(c.scalar(b)));
    return json{{"support", c.ideal().support()}, {"scalars", std::move(scalars)}};
}

// ---------------------------------------------------------------------------
// Decoding with field paths

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ValidationError(path_.empty() ? "(root)" : path_, "expected an object");
    }

    const json& required(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end()) throw ValidationError(join(path_, key), "missing required field");
        return *it;
    }

    const json* optional(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() || it->is_null() ? nullptr : &*it;
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    /// Rejects any field not consumed through required/optional.
    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key)) throw ValidationError(join(path_, key), "unknown field");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

double decode_double(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ValidationError(path, "expected a number");
}

std::uint64_t decode_unsigned(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) throw ValidationError(path, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

bool decode_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ValidationError(path, "expected true or false");
    return j.get<bool>();
}

std::string decode_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ValidationError(path, "expected a string");
    return j.get<std::string>();
}

const json& decode_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path, "expected an array");
    return j;
}

Complex decode_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw ValidationError(path, "expected a [re, im] pair");
    return {decode_double(j[0], index(path, 0)), decode_double(j[1], index(path, 1))};
}

Matrix decode_matrix(const json& j, const std::string& path, Eigen::Index rows, Eigen::Index cols) {
    decode_array(j, path);
    if (static_cast<Eigen::Index>(j.size()) != rows)
        throw ValidationError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::string rp = index(path, static_cast<std::size_t>(i));
        const json& row = decode_array(j[static_cast<std::size_t>(i)], rp);
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw ValidationError(rp, "expected " + std::to_string(cols) + " columns, got " + std::to_string(row.size()));
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = decode_complex(row[static_cast<std::size_t>(k)], index(rp, static_cast<std::size_t>(k)));
    }
    return m;
}

// Rows and columns of each block are multiples (rows_per, cols_per) of n_b.
std::vector<Matrix> decode_blocks(const json& j, const std::string& path, const FdCStarAlgebra& alg,
                                  std::size_t rows_per, std::size_t cols_per) {
    decode_array(j, path);
    if (j.size() != alg.block_count())
        throw ValidationError(path, "expected " + std::to_string(alg.block_count()) + " blocks, got " +
                                        std::to_string(j.size()));
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < alg.block_count(); ++b) {
        const auto nb = static_cast<Eigen::Index>(alg.block_size(b));
        out.push_back(decode_matrix(j[b], index(path, b), static_cast<Eigen::Index>(rows_per) * nb,
                                    static_cast<Eigen::Index>(cols_per) * nb));
    }
    return out;
}

std::vector<double> decode_doubles(const json& j, const std::string& path) {
    decode_array(j, path);
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_double(j[i], index(path, i)));
    return out;
}

std::vector<Complex> decode_complexes(const json& j, const std::string& path) {
    decode_array(j, path);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_complex(j[i], index(path, i)));
    return out;
}

std::vector<std::size_t> decode_indices(const json& j, const std::string& path) {
    decode_array(j, path);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_unsigned(j[i], index(path, i)));
    return out;
}

std::vector<std::string> decode_strings(const json& j, const std::string& path) {
    decode_array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_string(j[i], index(path, i)));
    return out;
}

void check_schema(Fields& f) {
    const json& s = f.required("schema");
    if (!s.is_number_integer() || s.get<long long>() != kSchemaVersion)
        throw ValidationError("schema", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
}

FdCStarAlgebra decode_algebra(const json& j, const std::string& path) {
    Fields f(j, path);
    const std::string bp = f.path("blocks");
    const json& blocks = decode_array(f.required("blocks"), bp);
    f.finish();
    if (blocks.empty()) throw ValidationError(bp, "empty block list");
    std::vector<int> sizes;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto v = decode_unsigned(blocks[i], index(bp, i));
        if (v == 0 || v > 4096) throw ValidationError(index(bp, i), "block size must be in [1, 4096]");
        sizes.push_back(static_cast<int>(v));
    }
    return FdCStarAlgebra(std::move(sizes));
}

HilbertModule decode_module(const json& j, const std::string& path, const FdCStarAlgebra& alg,
                            const ToleranceProfile& tol) {
    Fields f(j, path);
    const auto n = decode_unsigned(f.required("n"), f.path("n"));
    if (n == 0 || n > 4096) throw ValidationError(f.path("n"), "generator count must be in [1, 4096]");
    const auto p = decode_blocks(f.required("p"), f.path("p"), alg, n, n);
    f.finish();
    try {
        return HilbertModule(alg, n, AmplifiedElement(alg, n, n, p), tol);
    } catch (const InvalidInput& e) {
        throw ValidationError(f.path("p"), e.what());
    }
}

CentralPositive decode_central(const json& j, const std::string& path, const FdCStarAlgebra& alg) {
    Fields f(j, path);
    const auto support = decode_indices(f.required("support"), f.path("support"));
    const auto scalars = decode_doubles(f.required("scalars"), f.path("scalars"));
    f.finish();
    if (support.size() != scalars.size())
        throw ValidationError(f.path("scalars"), "one scalar per support block required");
    std::vector<double> full(alg.block_count(), 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] >= alg.block_count()) throw ValidationError(index(f.path("support"), i), "block out of range");
        if (i > 0 && support[i] <= support[i - 1])
            throw ValidationError(f.path("support"), "must be strictly increasing");
        full[support[i]] = scalars[i];
    }
    try {
        return CentralPositive(IdealDescriptor(alg, support), std::move(full));
    } catch (const InvalidInput& e) {
        throw ValidationError(f.path("scalars"), e.what());
    }
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Report pieces

json encode_report(const AnalysisReport& r) {
    json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "analysis-report";
    j["verdict"] = to_string(r.verdict);
    j["provenance"] = r.provenance;
    j["algebra"] = json{{"blocks", r.algebra_blocks}};
    j["tolerance"] = encode(r.tolerance);
    j["seed"] = r.seed;
    j["diagnosis"] = r.diagnosis;
    if (r.certificate) {
        const auto& c = *r.certificate;
        j["certificate"] = json{{"u", encode(c.u)},
                                {"w", encode(c.w)},
                                {"residual", encode(c.residual)},
                                {"scale", encode(c.scale)},
                                {"tolerance", encode(c.tolerance)},
                                {"fresh_sample_residual", encode(c.fresh_sample_residual)},
                                {"fresh_samples", c.fresh_samples},
                                {"permutation_gap", encode(c.permutation_gap)}};
    }
    if (r.rejection) {
        const auto& c = *r.rejection;
        j["rejection"] = json{{"lambdas", encode(c.lambdas)},
                              {"block_residuals", encode(c.block_residuals)},
                              {"residual", encode(c.residual)},
                              {"scale", encode(c.scale)},
                              {"reason", c.reason}};
    }
    if (r.violation) {
        const auto& v = *r.violation;
        j["violation"] = json{{"x", encode(v.x)},
                              {"y", encode(v.y)},
                              {"inner_norm", encode(v.inner_norm)},
                              {"violation", encode(v.violation)},
                              {"trial", v.trial},
                              {"linking_before", encode(v.linking_before)},
                              {"linking_after", encode(v.linking_after)}};
    }
    if (r.search) j["search"] = json{{"trials", r.search->trials}, {"max_violation", encode(r.search->max_violation)}};
    if (r.norms) {
        j["norms"] = json{{"map_norm_sq", encode(r.norms->map_norm_sq)},
                          {"u_norm", encode(r.norms->u_norm)},
                          {"gap", encode(r.norms->gap)}};
    }
    if (r.decomposition) {
        const auto& d = *r.decomposition;
        j["decomposition"] = json{{"isometry_residual", encode(d.isometry_residual)},
                                  {"factorization_residual", encode(d.factorization_residual)},
                                  {"adjoint_residual", encode(d.adjoint_residual)},
                                  {"kernel_dimension", d.kernel_dimension},
                                  {"kernel_dimension_rw", d.kernel_dimension_rw}};
    }
    if (r.ideals) {
        const auto& i = *r.ideals;
        j["ideals"] = json{{"domain", i.domain},
                           {"image", i.image},
                           {"witness", i.witness},
                           {"image_equals_witness", i.image_equals_witness},
                           {"image_within_domain", i.image_within_domain}};
    }
    if (r.injectivity) {
        const auto& i = *r.injectivity;
        j["injectivity"] = json{{"kernel_dimension", i.kernel_dimension},
                                {"injective", i.injective},
                                {"surjective", i.surjective},
                                {"image_ideal_full", i.image_ideal_full},
                                {"full_ideal_consequences", i.full_ideal_consequences
                                                                ? json(*i.full_ideal_consequences)
                                                                : json(nullptr)},
                                {"inverse_witness_error", encode(i.inverse_witness_error)}};
    }
    if (r.bijective) {
        const auto& b = *r.bijective;
        j["bijective"] = json{{"applicable", b.applicable},
                              {"reason", b.reason},
                              {"ideals_equal", b.ideals_equal},
                              {"witness_invertible", b.witness_invertible},
                              {"psi_isometry_residual", encode(b.psi_isometry_residual)},
                              {"w_inverse_norm", encode(b.w_inverse_norm)}};
    }
    if (r.linking) {
        json res = json::object();
        for (const auto& [name, value] : r.linking->residuals) res[name] = encode(value);
        j["linking"] = json{{"residuals", std::move(res)}, {"pairs", r.linking->pairs}, {"worst", encode(r.linking->worst)}};
    }
    j["notes"] = r.notes;
    j["timing_ms"] = encode(r.timing_ms);
    return j;
}

std::vector<Matrix> decode_loose_blocks(const json& j, const std::string& path) {
    decode_array(j, path);
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < j.size(); ++b) {
        const std::string bp = index(path, b);
        const json& rows = decode_array(j[b], bp);
        const auto r = static_cast<Eigen::Index>(rows.size());
        const auto c = r ? static_cast<Eigen::Index>(decode_array(rows[0], index(bp, 0)).size()) : 0;
        out.push_back(decode_matrix(rows, bp, r, c));
    }
    return out;
}

AnalysisReport decode_report(const json& j) {
    Fields f(j, "");
    check_schema(f);
    if (decode_string(f.required("kind"), "kind") != "analysis-report")
        throw ValidationError("kind", "expected 'analysis-report'");
    AnalysisReport r;
    try {
        r.verdict = verdict_from_string(decode_string(f.required("verdict"), "verdict"));
    } catch (const InvalidInput& e) {
        throw ValidationError("verdict", e.what());
    }
    r.provenance = decode_string(f.required("provenance"), "provenance");
    {
        Fields a(f.required("algebra"), "algebra");
        for (auto v : decode_indices(a.required("blocks"), "algebra.blocks")) r.algebra_blocks.push_back(static_cast<int>(v));
        a.finish();
    }
    r.tolerance = decode_double(f.required("tolerance"), "tolerance");
    r.seed = decode_unsigned(f.required("seed"), "seed");
    r.diagnosis = decode_string(f.required("diagnosis"), "diagnosis");

    if (const json* c = f.optional("certificate")) {
        Fields g(*c, "certificate");
        WitnessSummary w;
        w.u = decode_doubles(g.required("u"), g.path("u"));
        w.w = decode_doubles(g.required("w"), g.path("w"));
        w.residual = decode_double(g.required("residual"), g.path("residual"));
        w.scale = decode_double(g.required("scale"), g.path("scale"));
        w.tolerance = decode_double(g.required("tolerance"), g.path("tolerance"));
        w.fresh_sample_residual = decode_double(g.required("fresh_sample_residual"), g.path("fresh_sample_residual"));
        w.fresh_samples = decode_unsigned(g.required("fresh_samples"), g.path("fresh_samples"));
        w.permutation_gap = decode_double(g.required("permutation_gap"), g.path("permutation_gap"));
        g.finish();
        r.certificate = std::move(w);
    }
    if (const json* c = f.optional("rejection")) {
        Fields g(*c, "rejection");
        RejectionSummary s;
        s.lambdas = decode_complexes(g.required("lambdas"), g.path("lambdas"));
        s.block_residuals = decode_doubles(g.required("block_residuals"), g.path("block_residuals"));
        s.residual = decode_double(g.required("residual"), g.path("residual"));
        s.scale = decode_double(g.required("scale"), g.path("scale"));
        s.reason = decode_string(g.required("reason"), g.path("reason"));
        g.finish();
        r.rejection = std::move(s);
    }
    if (const json* c = f.optional("violation")) {
        Fields g(*c, "violation");
        ViolationSummary v;
        v.x = decode_loose_blocks(g.required("x"), g.path("x"));
        v.y = decode_loose_blocks(g.required("y"), g.path("y"));
        v.inner_norm = decode_double(g.required("inner_norm"), g.path("inner_norm"));
        v.violation = decode_double(g.required("violation"), g.path("violation"));
        v.trial = decode_unsigned(g.required("trial"), g.path("trial"));
        v.linking_before = decode_double(g.required("linking_before"), g.path("linking_before"));
        v.linking_after = decode_double(g.required("linking_after"), g.path("linking_after"));
        g.finish();
        r.violation = std::move(v);
    }
    if (const json* c = f.optional("search")) {
        Fields g(*c, "search");
        r.search = SearchSummary{decode_unsigned(g.required("trials"), g.path("trials")),
                                 decode_double(g.required("max_violation"), g.path("max_violation"))};
        g.finish();
    }
    if (const json* c = f.optional("norms")) {
        Fields g(*c, "norms");
        NormSummary s;
        s.map_norm_sq = decode_double(g.required("map_norm_sq"), g.path("map_norm_sq"));
        s.u_norm = decode_double(g.required("u_norm"), g.path("u_norm"));
        s.gap = decode_double(g.required("gap"), g.path("gap"));
        g.finish();
        r.norms = s;
    }
    if (const json* c = f.optional("decomposition")) {
        Fields g(*c, "decomposition");
        DecompositionSummary d;
        d.isometry_residual = decode_double(g.required("isometry_residual"), g.path("isometry_residual"));
        d.factorization_residual = decode_double(g.required("factorization_residual"), g.path("factorization_residual"));
        d.adjoint_residual = decode_double(g.required("adjoint_residual"), g.path("adjoint_residual"));
        d.kernel_dimension = decode_unsigned(g.required("kernel_dimension"), g.path("kernel_dimension"));
        d.kernel_dimension_rw = decode_unsigned(g.required("kernel_dimension_rw"), g.path("kernel_dimension_rw"));
        g.finish();
        r.decomposition = d;
    }
    if (const json* c = f.optional("ideals")) {
        Fields g(*c, "ideals");
        IdealSummary s;
        s.domain = decode_indices(g.required("domain"), g.path("domain"));
        s.image = decode_indices(g.required("image"), g.path("image"));
        s.witness = decode_indices(g.required("witness"), g.path("witness"));
        s.image_equals_witness = decode_bool(g.required("image_equals_witness"), g.path("image_equals_witness"));
        s.image_within_domain = decode_bool(g.required("image_within_domain"), g.path("image_within_domain"));
        g.finish();
        r.ideals = std::move(s);
    }
    if (const json* c = f.optional("injectivity")) {
        Fields g(*c, "injectivity");
        InjectivitySummary s;
        s.kernel_dimension = decode_unsigned(g.required("kernel_dimension"), g.path("kernel_dimension"));
        s.injective = decode_bool(g.required("injective"), g.path("injective"));
        s.surjective = decode_bool(g.required("surjective"), g.path("surjective"));
        s.image_ideal_full = decode_bool(g.required("image_ideal_full"), g.path("image_ideal_full"));
        if (const json* v = g.optional("full_ideal_consequences"))
            s.full_ideal_consequences = decode_bool(*v, g.path("full_ideal_consequences"));
        s.inverse_witness_error = decode_double(g.required("inverse_witness_error"), g.path("inverse_witness_error"));
        g.finish();
        r.injectivity = s;
    }
    if (const json* c = f.optional("bijective")) {
        Fields g(*c, "bijective");
        BijectiveSummary s;
        s.applicable = decode_bool(g.required("applicable"), g.path("applicable"));
        s.reason = decode_string(g.required("reason"), g.path("reason"));
        s.ideals_equal = decode_bool(g.required("ideals_equal"), g.path("ideals_equal"));
        s.witness_invertible = decode_bool(g.required("witness_invertible"), g.path("witness_invertible"));
        s.psi_isometry_residual = decode_double(g.required("psi_isometry_residual"), g.path("psi_isometry_residual"));
        s.w_inverse_norm = decode_double(g.required("w_inverse_norm"), g.path("w_inverse_norm"));
        g.finish();
        r.bijective = std::move(s);
    }
    if (const json* c = f.optional("linking")) {
        Fields g(*c, "linking");
        LinkingSummary s;
        const json& res = g.required("residuals");
        if (!res.is_object()) throw ValidationError(g.path("residuals"), "expected an object");
        for (const auto& [name, value] : res.items())
            s.residuals.emplace_back(name, decode_double(value, g.path("residuals") + "." + name));
        s.pairs = decode_unsigned(g.required("pairs"), g.path("pairs"));
        s.worst = decode_double(g.required("worst"), g.path("worst"));
        g.finish();
        r.linking = std::move(s);
    }
    if (const json* n = f.optional("notes")) r.notes = decode_strings(*n, "notes");
    r.timing_ms = decode_double(f.required("timing_ms"), "timing_ms");
    f.finish();
    validate_report(r);
    return r;
}

}  // namespace

std::string instance_to_string(const InstanceBundle& bundle) {
    json j;
    j["schema"] = kSchemaVersion;
    j["algebra"] = json{{"blocks", bundle.algebra.blocks()}};
    j["module"] = encode_module(bundle.domain);
    j["codomain"] = encode_module(bundle.codomain);
    j["map"] = encode(bundle.map.matrix().blocks());
    if (bundle.planted_u) j["planted_u"] = encode_central(*bundle.planted_u);
    j["seed"] = bundle.seed;
    j["provenance"] = bundle.provenance;
    j["notes"] = bundle.notes;
    return j.dump(1) + "\n";
}

InstanceBundle instance_from_string(const std::string& text, const ToleranceProfile& tol) {
    const json j = parse_document(text);
    Fields f(j, "");
    check_schema(f);
    const FdCStarAlgebra alg = decode_algebra(f.required("algebra"), "algebra");
    const HilbertModule domain = decode_module(f.required("module"), "module", alg, tol);
    const HilbertModule codomain = decode_module(f.required("codomain"), "codomain", alg, tol);
    const auto t = decode_blocks(f.required("map"), "map", alg, codomain.generators(), domain.generators());
    std::optional<ModuleMap> map;
    try {
        map = ModuleMap::compressed(domain, codomain,
                                    AmplifiedElement(alg, codomain.generators(), domain.generators(), t), tol);
    } catch (const InvalidInput& e) {
        throw ValidationError("map", e.what());
    }
    std::optional<CentralPositive> planted;
    if (const json* u = f.optional("planted_u")) planted = decode_central(*u, "planted_u", alg);
    const std::uint64_t seed = decode_unsigned(f.required("seed"), "seed");
    std::string provenance;
    if (const json* p = f.optional("provenance")) provenance = decode_string(*p, "provenance");
    std::vector<std::string> notes;
    if (const json* n = f.optional("notes")) notes = decode_strings(*n, "notes");
    f.finish();

    InstanceBundle bundle{alg, domain, codomain, *map, std::move(planted), seed, std::move(provenance),
                          std::move(notes)};
    validate_bundle(bundle);
    return bundle;
}

void save_instance(const std::filesystem::path& path, const InstanceBundle& bundle) {
    write_file(path, instance_to_string(bundle));
}

InstanceBundle load_instance(const std::filesystem::path& path, const ToleranceProfile& tol) {
    return instance_from_string(read_file(path), tol);
}

std::string report_to_string(const AnalysisReport& report) { return encode_report(report).dump(1) + "\n"; }

AnalysisReport report_from_string(const std::string& text) { return decode_report(parse_document(text)); }

void save_report(const std::filesystem::path& path, const AnalysisReport& report) {
    write_file(path, report_to_string(report));
}

AnalysisReport load_report(const std::filesystem::path& path) { return report_from_string(read_file(path)); }

}  // namespace opmod
