// flexcheck: run the deformation pipeline on a surface group representation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flexcheck/io.hpp"

using namespace flexcheck;
using io::ojson;

namespace {

enum Exit { Flexible = 0, ParseFailure = 2, NumericalFailure = 3, Rigid = 10, Inconclusive = 11 };

struct Options {
    std::string input;
    std::string catalog;
    std::optional<int> genus;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_rank;
    std::optional<double> tol_cluster;
    std::string format = "text";
    std::optional<std::size_t> root;
    bool check = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::ProblemSpec load(const Options& o) {
    io::ProblemSpec spec;
    if (!o.input.empty()) spec = io::parse_problem(read_file(o.input));
    if (!o.catalog.empty()) {
        if (!find_case(o.catalog)) throw io::InputError("unknown catalog case \"" + o.catalog + "\"");
        spec.source = "catalog";
        spec.catalog = o.catalog;
    }
    if (o.genus) {
        if (*o.genus < 2) throw io::InputError("genus must be at least 2");
        spec.genus = *o.genus;
    }
    if (o.tol_rank) spec.tol.rank = *o.tol_rank;
    if (o.tol_cluster) spec.tol.cluster = *o.tol_cluster;
    return spec;
}

Config config_for(const Options& o, const io::ProblemSpec& spec) {
    Config cfg;
    cfg.tol = spec.tol;
    if (o.seed) {
        cfg.seed = *o.seed;
    } else if (spec.seed) {
        cfg.seed = *spec.seed;
    } else if (const char* env = std::getenv("FLEXCHECK_SEED")) {
        try {
            std::size_t used = 0;
            cfg.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw io::InputError(std::string("FLEXCHECK_SEED is not an unsigned integer: ") + env);
        }
    }
    return cfg;
}

void emit(const Options& o, const ojson& report) {
    std::cout << (o.format == "json" ? io::to_json(report) : io::to_text(report));
}

int cmd_decompose(const Options& o) {
    const io::ProblemSpec spec = load(o);
    const Config cfg = config_for(o, spec);
    const SurfaceRepresentation rep = io::build_representation(spec, cfg);
    ojson r = io::header("decompose", cfg);
    r["input"] = io::input_json(spec, rep);
    r["decomposition"] = io::decompose_json(rep, io::run_stages(rep, cfg.tol));
    emit(o, r);
    return 0;
}

int cmd_cohomology(const Options& o) {
    const io::ProblemSpec spec = load(o);
    const Config cfg = config_for(o, spec);
    const SurfaceRepresentation rep = io::build_representation(spec, cfg);
    const io::Stages s = io::run_stages(rep, cfg.tol);
    ojson r = io::header("cohomology", cfg);
    r["input"] = io::input_json(spec, rep);
    r["cohomology"] = io::cohomology_json(rep, s, cfg.tol);
    emit(o, r);
    return 0;
}

int cmd_toledo(const Options& o) {
    const io::ProblemSpec spec = load(o);
    const Config cfg = config_for(o, spec);
    const SurfaceRepresentation rep = io::build_representation(spec, cfg);
    const io::Stages s = io::run_stages(rep, cfg.tol);
    ojson r = io::header("toledo", cfg);
    r["input"] = io::input_json(spec, rep);
    ojson forms = ojson::array();
    if (s.decomp) {
        const std::size_t count = s.decomp->roots().size();
        if (o.root && *o.root >= count)
            throw io::InputError("root index " + std::to_string(*o.root) + " out of range (" +
                                 std::to_string(count) + " roots)");
        for (std::size_t k = 0; k < count; ++k)
            if (!o.root || *o.root == k) forms.push_back(io::form_json(root_form(rep, *s.decomp, k, cfg.tol)));
    } else if (o.root) {
        throw io::InputError("the representation has no roots");
    }
    r["roots"] = forms;
    const ClassicalSpec* a = spec.ambient ? &*spec.ambient : nullptr;
    if (a && a->family == Family::SlReal && a->p == 2) {
        Eigen::MatrixXd j(2, 2);
        j << 0, 1, -1, 0;
        r["standard_module"] = io::form_json(module_form(rep.presentation(), standard_module(rep), j, cfg.tol));
    }
    emit(o, r);
    return 0;
}

int cmd_balanced(const Options& o) {
    const io::ProblemSpec spec = load(o);
    const Config cfg = config_for(o, spec);
    ojson r = io::header("balanced", cfg);
    if (spec.balance) {
        r["balance"] = io::balance_json(*spec.balance, balanced(*spec.balance));
    } else {
        const SurfaceRepresentation rep = io::build_representation(spec, cfg);
        const FlexibilityReport f = verdict(rep, cfg);
        r["input"] = io::input_json(spec, rep);
        const ojson v = io::verdict_json(f);
        r["pn"] = v["pn"];
        r["balance"] = v["balance"];
    }
    emit(o, r);
    return 0;
}

int cmd_verdict(const Options& o) {
    const io::ProblemSpec spec = load(o);
    const Config cfg = config_for(o, spec);
    const SurfaceRepresentation rep = io::build_representation(spec, cfg);
    const FlexibilityReport f = verdict(rep, cfg);
    ojson r = io::header("verdict", cfg);
    r["input"] = io::input_json(spec, rep);
    r["report"] = io::verdict_json(f);
    emit(o, r);
    switch (f.verdict) {
        case Verdict::Flexible: return Flexible;
        case Verdict::Rigid: return Rigid;
        case Verdict::Inconclusive: return Inconclusive;
    }
    return Inconclusive;
}

int cmd_catalog(const Options& o) {
    Config cfg;
    ojson r = io::header("catalog", cfg);
    const int genus = o.genus.value_or(2);
    if (genus < 2) throw io::InputError("genus must be at least 2");
    ojson cases = ojson::array();
    bool all_match = true;
    for (const auto& c : catalog_cases()) {
        ojson e = io::catalog_case_json(c);
        if (o.check && c.computed) {
            const FlexibilityReport f = verdict(catalog_representation(c, genus, cfg), cfg);
            const bool match = f.centralizer_dim == c.centralizer_dim && f.center_dim == c.center_dim &&
                               verdict_name(f.verdict) == c.expected_verdict;
            all_match = all_match && match;
            e["computed_centralizer_dim"] = f.centralizer_dim;
            e["computed_center_dim"] = f.center_dim;
            e["computed_verdict"] = verdict_name(f.verdict);
            e["match"] = match;
        }
        cases.push_back(e);
    }
    if (o.check) r["genus"] = genus;
    r["cases"] = cases;
    if (o.check) r["all_match"] = all_match;
    emit(o, r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformation flexibility of surface group representations", "flexcheck"};
    app.set_version_flag("--version", FLEXCHECK_VERSION);
    app.require_subcommand(1);
    Options o;

    const auto common = [&](CLI::App* sub, bool needs_problem) {
        sub->add_option("--genus", o.genus, "surface genus (at least 2)");
        sub->add_option("--seed", o.seed, "random seed; FLEXCHECK_SEED is the fallback");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
        if (!needs_problem) return;
        sub->add_option("--input", o.input, "problem file (JSON)")->check(CLI::ExistingFile);
        sub->add_option("--catalog", o.catalog, "catalog case name, e.g. su21-cline");
        sub->add_option("--tol-rank", o.tol_rank, "relative singular-value cutoff")->check(CLI::PositiveNumber);
        sub->add_option("--tol-cluster", o.tol_cluster, "eigenvalue merge distance")->check(CLI::PositiveNumber);
    };

    CLI::App* decompose = app.add_subcommand("decompose", "centralizer, center and root decomposition");
    CLI::App* cohomology = app.add_subcommand("cohomology", "cohomology dimensions of the adjoint and root modules");
    CLI::App* toledo = app.add_subcommand("toledo", "root forms, signatures and Toledo invariants");
    CLI::App* balance = app.add_subcommand("balanced", "balanced-set test, from a problem or a representation");
    CLI::App* verdict_cmd = app.add_subcommand("verdict", "full flexibility verdict (exit 0, 10 or 11)");
    CLI::App* catalog = app.add_subcommand("catalog", "list catalog cases with expected results");
    for (CLI::App* sub : {decompose, cohomology, toledo, balance, verdict_cmd}) common(sub, true);
    common(catalog, false);
    toledo->add_option("--root", o.root, "only this representative root");
    catalog->add_flag("--check", o.check, "compute every case and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ParseFailure;
    }

    try {
        for (CLI::App* sub : {decompose, cohomology, toledo, balance, verdict_cmd})
            if (sub->parsed() && o.input.empty() && o.catalog.empty())
                throw io::InputError("give --input or --catalog");
        if (decompose->parsed()) return cmd_decompose(o);
        if (cohomology->parsed()) return cmd_cohomology(o);
        if (toledo->parsed()) return cmd_toledo(o);
        if (balance->parsed()) return cmd_balanced(o);
        if (verdict_cmd->parsed()) return cmd_verdict(o);
        if (catalog->parsed()) return cmd_catalog(o);
    } catch (const io::InputError& e) {
        std::cerr << "flexcheck: input error: " << e.diagnostic() << '\n';
        return ParseFailure;
    } catch (const NumericalError& e) {
        std::cerr << "flexcheck: numerical error: " << e.what() << '\n';
        return NumericalFailure;
    } catch (const DomainError& e) {
        std::cerr << "flexcheck: invalid problem: " << e.what() << '\n';
        return ParseFailure;
    }
    return ParseFailure;
}
