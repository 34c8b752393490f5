#include "ncg/commands.hpp"
#include "ncg/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Common {
    double tol = ncg::default_tolerance();
    std::uint64_t seed = 42;
    int trials = 20;
    int max_degree = 3;
    std::string format = "text";
    std::string alpha = "default";
};

void add_common(CLI::App* cmd, Common& c, bool random, bool degree) {
    cmd->add_option("--tol", c.tol, "numerical tolerance (default 1e-9, or NCG_TOL)")->check(CLI::PositiveNumber);
    if (random) {
        cmd->add_option("--seed", c.seed, "seed of the random generator")->capture_default_str();
        cmd->add_option("--trials", c.trials, "random instances per suite")->capture_default_str();
    }
    if (degree) cmd->add_option("--max-degree", c.max_degree, "highest form degree")->capture_default_str();
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    cmd->add_option("--alpha", c.alpha, "relations: auto (maximal kernel) or embedded (from the file)")
        ->check(CLI::IsMember({"auto", "embedded", "default"}));
}

ncg::Options to_options(const Common& c) {
    ncg::Options o;
    o.tol = c.tol;
    o.seed = c.seed;
    o.trials = c.trials;
    o.max_degree = c.max_degree;
    o.alpha = c.alpha == "auto"       ? ncg::AlphaChoice::automatic
              : c.alpha == "embedded" ? ncg::AlphaChoice::embedded
                                      : ncg::AlphaChoice::default_choice;
    return o;
}

int emit(const ncg::CommandResult& r, const std::string& format) {
    if (format == "json")
        std::cout << r.report.dump(2) << "\n";
    else
        std::cout << ncg::render_text(r.report);
    if (r.report.contains("error"))
        std::cerr << "ncg: " << r.report["error"].value("message", "") << "\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differential calculi over matrix algebras relative to a subspace of traceless matrices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ncg::kToolVersion);

    Common c;
    std::string file;
    std::string transform;
    std::string name;
    std::string emit_path;
    int m = 3;

    auto* analyze = app.add_subcommand("analyze", "structure constants, relations and projector of an algebra file");
    analyze->add_option("file", file, "algebra JSON")->required();
    add_common(analyze, c, false, false);

    auto* forms = app.add_subcommand("forms", "ranks of the form modules up to --max-degree");
    forms->add_option("file", file, "algebra JSON")->required();
    add_common(forms, c, false, true);

    auto* verify = app.add_subcommand("verify", "run every identity suite on seeded random instances");
    verify->add_option("file", file, "algebra JSON")->required();
    add_common(verify, c, true, true);

    auto* equiv = app.add_subcommand("equiv", "check that conjugation by u is an equivalence of calculi");
    equiv->add_option("file", file, "algebra JSON")->required();
    equiv->add_option("transform", transform, "matrix JSON for u")->required();
    add_common(equiv, c, true, true);

    auto* catalog = app.add_subcommand("catalog", "build a worked example and check its expected ranks");
    catalog->add_option("name", name, "a0, su2, clock-shift or ellipsoid")
        ->required()
        ->check(CLI::IsMember({"a0", "su2", "clock-shift", "ellipsoid"}));
    catalog->add_option("-m,--m", m, "matrix size")->capture_default_str();
    catalog->add_option("--emit", emit_path, "write the algebra JSON here");
    add_common(catalog, c, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ncg::kExitValidation;
    }

    const ncg::Options opt = to_options(c);
    std::string command = app.get_subcommands().front()->get_name();
    ncg::CommandResult result;
    try {
        if (*analyze) {
            result = ncg::cmd_analyze(ncg::read_text(file), opt);
        } else if (*forms) {
            result = ncg::cmd_forms(ncg::read_text(file), opt);
        } else if (*verify) {
            result = ncg::cmd_verify(ncg::read_text(file), opt);
        } else if (*equiv) {
            result = ncg::cmd_equiv(ncg::read_text(file), ncg::read_text(transform), opt);
        } else {
            std::string algebra;
            result = ncg::cmd_catalog(name, m, opt, &algebra);
            if (!emit_path.empty()) ncg::write_text(emit_path, algebra);
        }
    } catch (const std::exception& e) {
        result = ncg::error_result(command, e);
    }
    return emit(result, c.format);
}
