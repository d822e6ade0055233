// opmod: analyze, generate, verify and degradation subcommands.
// Exit codes: 0 certified / suite passed, 2 rejected / suite failed, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opmod/analysis.hpp"
#include "opmod/serialize.hpp"
#include "opmod/suites.hpp"

namespace {

constexpr int kExitError = 1;

std::uint64_t default_seed() {
    const char* env = std::getenv("OPMOD_SEED");
    if (!env || !*env) return 0;
    std::size_t used = 0;
    const std::string text(env);
    const unsigned long long v = std::stoull(text, &used, 10);
    if (used != text.size()) throw opmod::InvalidInput("OPMOD_SEED must be a nonnegative integer");
    return v;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw opmod::Error("cannot open '" + out_path + "' for writing");
    out << text;
}

struct AnalyzeArgs {
    std::string input;
    std::string gallery;
    std::string out;
    std::string format = "human";
    double tol = opmod::kDefaultTolerances.certification;
    std::size_t budget = 200;
    std::size_t samples = 64;
    std::size_t linking_pairs = 10;
};

int run_analyze(const AnalyzeArgs& a, std::uint64_t seed) {
    const opmod::ToleranceProfile tol = opmod::ToleranceProfile::from_certification(a.tol);
    const opmod::InstanceBundle bundle =
        a.gallery.empty() ? opmod::load_instance(a.input, tol) : opmod::gallery(a.gallery);
    opmod::AnalysisOptions opt;
    opt.tol = tol;
    opt.budget = a.budget;
    opt.seed = seed;
    opt.samples = a.samples;
    opt.linking_pairs = a.linking_pairs;
    const opmod::AnalysisReport report = opmod::analyze(bundle, opt);
    emit(a.format == "machine" ? opmod::report_to_string(report) : opmod::format_human(report), a.out);
    return opmod::exit_code(report.verdict);
}

struct GenerateArgs {
    std::string kind;
    std::string out;
    opmod::ShapeBounds bounds;
    double noise = 1e-2;
};

int run_generate(const GenerateArgs& g, std::uint64_t seed) {
    opmod::InstanceBundle bundle = [&] {
        if (g.kind == "planted") return opmod::gen_planted_instance(seed, g.bounds);
        if (g.kind == "invertible") return opmod::gen_planted_instance(seed, g.bounds, true);
        if (g.kind == "adversarial") return opmod::gen_adversarial_instance(seed, g.bounds);
        if (g.kind == "perturbed") {
            const auto plant = opmod::gen_planted_instance(seed, g.bounds);
            return opmod::gen_perturbed(seed, plant.domain, plant.codomain, g.noise);
        }
        const std::string prefix = "gallery:";
        if (g.kind.rfind(prefix, 0) == 0) return opmod::gallery(g.kind.substr(prefix.size()));
        throw opmod::InvalidInput("unknown kind '" + g.kind +
                                  "' (planted, invertible, adversarial, perturbed, gallery:<name>)");
    }();
    opmod::save_instance(g.out, bundle);
    std::cout << "wrote " << g.out << ": " << bundle.provenance << ", seed " << bundle.seed << ", blocks "
              << bundle.algebra.describe() << ", n = " << bundle.domain.generators()
              << ", m = " << bundle.codomain.generators() << "\n";
    for (const auto& note : bundle.notes) std::cout << "note: " << note << "\n";
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, std::size_t samples) {
    const auto results = opmod::run_suite(suite, seed, samples);
    std::cout << opmod::format_suite(results);
    const bool ok = opmod::all_pass(results);
    std::cout << (ok ? "all invariants pass\n" : "some invariants FAIL\n");
    return ok ? 0 : 2;
}

int run_degradation(const std::string& base, const std::vector<int>& grids, const std::string& out,
                    const std::string& format) {
    const auto rows = opmod::degradation(base, grids);
    emit(opmod::format_degradation(rows, format == "machine"), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonality preserving maps between Hilbert C*-modules over finite-dimensional algebras"};
    app.require_subcommand(1);
    std::optional<std::uint64_t> seed_flag;

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Certify or reject an instance and report the downstream checks");
    auto* input = analyze->add_option("--input,-i", analyze_args.input, "Instance file")->check(CLI::ExistingFile);
    auto* gal = analyze->add_option("--gallery", analyze_args.gallery, "Analyze a named gallery instance instead");
    input->excludes(gal);
    analyze->add_option("--tol", analyze_args.tol, "Certification tolerance; all thresholds scale with it")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--budget", analyze_args.budget, "Violation search trials")->check(CLI::PositiveNumber);
    analyze->add_option("--samples", analyze_args.samples, "Fresh-sample pairs")->check(CLI::PositiveNumber);
    analyze->add_option("--linking-pairs", analyze_args.linking_pairs, "Random pairs for the linking identities");
    analyze->add_option("--out,-o", analyze_args.out, "Write the report here instead of stdout");
    analyze->add_option("--format", analyze_args.format)->check(CLI::IsMember({"human", "machine"}));
    analyze->add_option("--seed", seed_flag, "Seed (default: OPMOD_SEED or 0)");

    GenerateArgs gen_args;
    auto* generate = app.add_subcommand("generate", "Write a seeded or gallery instance file");
    generate->add_option("--kind", gen_args.kind, "planted, invertible, adversarial, perturbed or gallery:<name>")
        ->required();
    generate->add_option("--out,-o", gen_args.out, "Output instance file")->required();
    generate->add_option("--seed", seed_flag, "Seed (default: OPMOD_SEED or 0)");
    generate->add_option("--max-blocks", gen_args.bounds.max_blocks);
    generate->add_option("--max-dim", gen_args.bounds.max_dim);
    generate->add_option("--max-n", gen_args.bounds.max_n);
    generate->add_option("--max-m", gen_args.bounds.max_m);
    generate->add_option("--noise", gen_args.noise, "Noise level for --kind perturbed");

    std::string suite = "all";
    std::size_t suite_samples = 50;
    auto* verify = app.add_subcommand("verify", "Run seeded property suites");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"core", "linking", "lemmas", "all"}));
    verify->add_option("--seed", seed_flag, "Seed (default: OPMOD_SEED or 0)");
    verify->add_option("--samples", suite_samples, "Random draws per invariant")->check(CLI::PositiveNumber);

    std::string deg_base = "interval-C0-halfopen";
    std::vector<int> grids{4, 8, 16, 32};
    std::string deg_out;
    std::string deg_format = "human";
    auto* degrade = app.add_subcommand("degradation", "Tabulate |w^-1| over grid sizes of a discretized gallery entry");
    degrade->add_option("--gallery", deg_base)
        ->check(CLI::IsMember({"interval-C0-halfopen", "interval-C01", "vanishing-at-midpoint"}));
    degrade->add_option("--N-list", grids, "Comma-separated grid sizes")->delimiter(',')->check(CLI::PositiveNumber);
    degrade->add_option("--out,-o", deg_out);
    degrade->add_option("--format", deg_format)->check(CLI::IsMember({"human", "machine"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
        if (*analyze) {
            if (analyze_args.input.empty() && analyze_args.gallery.empty())
                throw opmod::InvalidInput("analyze needs --input or --gallery");
            return run_analyze(analyze_args, seed);
        }
        if (*generate) return run_generate(gen_args, seed);
        if (*verify) return run_verify(suite, seed, suite_samples);
        if (*degrade) return run_degradation(deg_base, grids, deg_out, deg_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
