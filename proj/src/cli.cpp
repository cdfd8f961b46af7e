#include "torusfix/cli.hpp"

#include "torusfix/errors.hpp"
#include "torusfix/problem.hpp"
#include "torusfix/report.hpp"
#include "torusfix/verify.hpp"

#include "CLI11.hpp"

#include <optional>
#include <string>

namespace torusfix {

namespace {

struct Options {
    std::string input;
    bool json = false;
    std::optional<long> n;
    std::optional<std::string> eps;
    std::optional<std::string> delta;
    std::optional<long> search_bound;
    std::uint64_t seed = 1;
    long trials = 100;
};

ProblemSpec load_with_overrides(const Options& o) {
    ProblemSpec spec = load_problem(o.input);
    if (o.n) {
        if (*o.n < 1) throw InvalidArgument("--n must be positive");
        spec.n = *o.n;
    }
    if (o.eps) spec.eps = ExactScalar::parse(*o.eps);
    if (o.delta) spec.delta = ExactScalar::parse(*o.delta);
    if (o.search_bound) {
        if (*o.search_bound < 1) throw InvalidArgument("--search-bound must be positive");
        spec.search_bound = *o.search_bound;
    }
    return spec;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
    const AnalyzeReport report = analyze(load_with_overrides(o));
    if (o.json) {
        out << to_json(report).dump(2) << "\n";
    } else {
        out << render_text(report);
    }
    if (!report.valid) {
        err << "error: " << report.violation << "\n";
        return kExitInvalid;
    }
    if (!report.ok()) {
        err << "error: unclassifiable: " << report.classification.reason << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream&) {
    const SolveReport report = solve(load_with_overrides(o));
    if (o.json) {
        out << to_json(report).dump(2) << "\n";
    } else {
        out << render_text(report);
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.trials < 0) throw InvalidArgument("--trials must be non-negative");
    VerifyOptions vo;
    vo.seed = o.seed;
    vo.trials = o.trials;
    const VerifySummary summary = run_verification(vo);
    if (o.json) {
        out << to_json(summary).dump(2) << "\n";
    } else {
        out << render_text(summary);
    }
    if (!summary.passed()) {
        err << "verification failed: " << summary.failure->detail << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fixed points of fiber-preserving maps on torus bundles over the circle", "torusfix"};
    app.require_subcommand(1);
    Options o;

    auto add_problem_flags = [&](CLI::App* sub) {
        sub->add_option("-i,--input", o.input, "problem file (.json or .toml)")->required();
        sub->add_option("--n", o.n, "iterate to study (overrides the file)");
        sub->add_flag("--json", o.json, "emit a JSON report");
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "classify and decide deformability of f^n");
    add_problem_flags(analyze_cmd);

    CLI::App* solve_cmd = app.add_subcommand("solve", "search an affine representative for periodic points");
    add_problem_flags(solve_cmd);
    solve_cmd->add_option("--eps", o.eps, "translation eps, e.g. 1/2 or sqrt2");
    solve_cmd->add_option("--delta", o.delta, "translation delta");
    solve_cmd->add_option("--search-bound", o.search_bound, "window for the brute-force cross-check");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the randomized oracle cross-checks");
    verify_cmd->add_option("--seed", o.seed, "random seed");
    verify_cmd->add_option("--trials", o.trials, "trials per suite");
    verify_cmd->add_flag("--json", o.json, "emit a JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(o, out, err);
        if (solve_cmd->parsed()) return cmd_solve(o, out, err);
        return cmd_verify(o, out, err);
    } catch (const InternalMismatch& e) {
        err << "internal cross-check failed: " << e.what() << "\n";
        return kExitVerifyFailed;
    } catch (const GluingViolation& e) {
        err << "gluing violation: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace torusfix
