#include <descomp/complementation.hh>
#include <descomp/evaluator.hh>
#include <descomp/interpretations.hh>
#include <descomp/problems.hh>
#include <descomp/sat2col.hh>
#include <descomp/suites.hh>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <chrono>
#include <filesystem>
#include <iostream>

using namespace descomp;
using std::string;

namespace
{
    enum Exit
    {
        exit_true = 0,
        exit_false = 1,
        exit_usage = 2,
        exit_internal = 3
    };

    struct UsageError : Error
    {
        using Error::Error;
    };

    struct RunConfig
    {
        string structure;
        string formula;
        std::vector<string> bindings;
        string interp;
        string in;
        string out;
        string graph;
        string problem;
        bool cnf = false;
        bool altgraph = false;
        bool bits = false;
        std::size_t n = 4;
        double p = 0.3;
        double q = 0.3;
        std::size_t n_max = 0;
        std::size_t trials = 0;
        std::uint64_t seed = 0;
        Element target = 0;
        string suite;
        bool quiet = false;
        bool timing = false;
    };

    auto emit(const RunConfig &cfg, const string &text) -> void
    {
        if (cfg.out.empty())
            std::cout << text;
        else
            write_file_atomically(cfg.out, text);
    }

    auto load_interpretation(const string &name) -> Interpretation
    {
        if (name == "sat2col")
            return sat2col_interpretation();
        if (std::filesystem::exists(name))
            return parse_interpretation(read_file(name));
        throw UsageError("unknown interpretation '" + name + "' (expected sat2col or a file)");
    }

    auto parse_binding(const string &text) -> std::pair<string, Element>
    {
        auto eq = text.find('=');
        if (eq == string::npos || eq == 0)
            throw UsageError("binding '" + text + "' is not name=value");
        try {
            return {text.substr(0, eq), static_cast<Element>(std::stoul(text.substr(eq + 1)))};
        } catch (const std::exception &) {
            throw UsageError("binding '" + text + "' has no numeric value");
        }
    }

    auto cmd_eval(const RunConfig &cfg) -> int
    {
        Structure s = [&] {
            try {
                return read_structure_file(cfg.structure);
            } catch (const Error &e) {
                throw UsageError(e.what());
            }
        }();
        Formula f = [&] {
            try {
                return parse_formula(cfg.formula, s.vocabulary());
            } catch (const ParseError &e) {
                throw UsageError("parse error at position " + std::to_string(e.position()) + ": " + e.message());
            }
        }();
        Environment env;
        for (auto &b : cfg.bindings)
            env.elements.insert(parse_binding(b));
        for (auto &v : free_vars(f))
            if (! env.elements.count(v))
                throw UsageError("free variable '" + v + "' needs --var " + v + "=<element>");
        bool value = eval(s, f, env);
        std::cout << (value ? "true" : "false") << "\n";
        return value ? exit_true : exit_false;
    }

    auto cmd_reduce(const RunConfig &cfg) -> int
    {
        auto interp = load_interpretation(cfg.interp);
        auto output = apply(interp, read_structure_file(cfg.in));
        emit(cfg, format_structure(output));
        return exit_true;
    }

    auto decide(const string &problem, const Structure &s) -> bool
    {
        if (problem == "reach")
            return decide_reach(s);
        if (problem == "reachd")
            return decide_reachd(s);
        if (problem == "reacha")
            return decide_reacha(s);
        if (problem == "3sat")
            return decide_3sat(s);
        if (problem == "3col")
            return decide_3col(s);
        if (problem == "maj")
            return decide_maj(s);
        throw UsageError("unknown problem '" + problem + "' (reach, reachd, reacha, 3sat, 3col, maj)");
    }

    auto cmd_check(const RunConfig &cfg) -> int
    {
        if (! cfg.problem.empty()) {
            if (cfg.in.empty())
                throw UsageError("check --problem needs --in");
            bool value = decide(cfg.problem, read_structure_file(cfg.in));
            std::cout << (value ? "true" : "false") << "\n";
            return value ? exit_true : exit_false;
        }
        if (cfg.interp.empty())
            throw UsageError("check needs --interp or --problem");
        auto interp = load_interpretation(cfg.interp);
        auto n_check = cfg.n_max ? cfg.n_max : 8;
        auto form = check_projection_form(interp, n_check);
        bool ok = form.ok();
        std::cout << "projection-form " << (form.ok() ? "ok" : "fail") << " n_check=" << n_check << "\n";
        if (form.diagnostic)
            std::cout << "# " << form.diagnostic->message << "\n";
        bool qfp = is_qfp(interp, n_check);
        std::cout << "fop " << (is_fop(interp, n_check) ? "true" : "false") << "\n";
        std::cout << "qfp " << (qfp ? "true" : "false") << "\n";
        if (form.ok() && ! cfg.quiet)
            std::cout << describe(*form.form, interp);
        std::vector<std::size_t> sizes = {2, 3, 4, 5};
        auto dynamic = dynamic_projection_test(interp, sizes, cfg.trials ? cfg.trials : 20, cfg.seed);
        for (auto &size : dynamic.sizes)
            std::cout << (size.inconsistency ? "FAIL" : "PASS") << " dynamic n=" << size.n << " inputs="
                      << size.checked_inputs << "\n";
        ok = ok && dynamic.passed();
        return ok ? exit_true : exit_false;
    }

    auto cmd_gen(const RunConfig &cfg) -> int
    {
        int kinds = ! cfg.graph.empty() + cfg.cnf + cfg.altgraph + cfg.bits;
        if (kinds != 1)
            throw UsageError("gen needs exactly one of --graph <kind>, --cnf, --altgraph, --bits");
        if (cfg.n < 1)
            throw UsageError("--n must be positive");
        Structure s = [&] {
            if (cfg.cnf)
                return random_cnf(cfg.n, cfg.seed);
            if (cfg.altgraph)
                return random_altgraph(cfg.n, cfg.p, cfg.q, cfg.seed);
            if (cfg.bits) {
                Rng rng(cfg.seed);
                StructureBuilder b(string_vocabulary(), cfg.n);
                for (Element i = 0; i < cfg.n; ++i)
                    if (rng.chance(cfg.p))
                        b.add("S", {i});
                return std::move(b).build();
            }
            if (cfg.graph == "path")
                return path_graph(cfg.n);
            if (cfg.graph == "cycle")
                return cycle_graph(cfg.n);
            if (cfg.graph == "complete")
                return complete_graph(cfg.n);
            if (cfg.graph == "gnp")
                return gnp_graph(cfg.n, cfg.p, cfg.seed);
            throw UsageError("unknown graph kind '" + cfg.graph + "' (path, cycle, complete, gnp)");
        }();
        emit(cfg, format_structure(s));
        return exit_true;
    }

    auto cmd_suite(const RunConfig &cfg) -> int
    {
        if (! is_suite(cfg.suite))
            throw UsageError("unknown suite '" + cfg.suite + "'");
        auto config = default_suite_config(cfg.suite);
        if (cfg.n_max)
            config.n_max = cfg.n_max;
        if (cfg.trials)
            config.trials = cfg.trials;
        config.seed = cfg.seed;
        auto start = std::chrono::steady_clock::now();
        auto report = run_suite(cfg.suite, config);
        if (cfg.quiet)
            report.notes.clear();
        std::cout << format_report(report);
        if (cfg.timing)
            std::cout << "# time " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                      << " s\n";
        return report.passed() ? exit_true : exit_false;
    }

    auto cmd_certify(const RunConfig &cfg) -> int
    {
        auto g = read_structure_file(cfg.structure);
        emit(cfg, serialize_certificate(make_certificate(g, cfg.target)));
        return exit_true;
    }

    auto cmd_verify_cert(const RunConfig &cfg) -> int
    {
        auto g = read_structure_file(cfg.structure);
        auto result = verify_certificate_text(g, cfg.target, read_file(cfg.in));
        if (result.accepted()) {
            std::cout << "accepted\n";
            return exit_true;
        }
        std::cout << "rejected " << to_string(result.verdict);
        if (result.line)
            std::cout << " line " << result.line;
        std::cout << ": " << result.detail << "\n";
        return exit_false;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Descriptive complexity workbench"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a structure");
    eval_cmd->add_option("--structure", cfg.structure, "Structure file")->required();
    eval_cmd->add_option("--formula", cfg.formula, "Formula text")->required();
    eval_cmd->add_option("--var", cfg.bindings, "Free variable binding name=element");

    auto reduce_cmd = app.add_subcommand("reduce", "Apply an interpretation to a structure");
    reduce_cmd->add_option("--interp", cfg.interp, "sat2col or an interpretation file")->required();
    reduce_cmd->add_option("--in", cfg.in, "Input structure file")->required();
    reduce_cmd->add_option("--out", cfg.out, "Output structure file (stdout if omitted)");

    auto check_cmd = app.add_subcommand("check", "Certify an interpretation as a projection, or decide a problem");
    check_cmd->add_option("--interp", cfg.interp, "sat2col or an interpretation file");
    check_cmd->add_option("--problem", cfg.problem, "reach, reachd, reacha, 3sat, 3col or maj");
    check_cmd->add_option("--in", cfg.in, "Structure file for --problem");
    check_cmd->add_option("--nmax", cfg.n_max, "Largest size for the exclusivity search (default 8)");
    check_cmd->add_option("--trials", cfg.trials, "Random probes per size in the dynamic test");
    check_cmd->add_option("--seed", cfg.seed, "Seed");
    check_cmd->add_flag("--quiet", cfg.quiet, "Omit the case listing");

    auto gen_cmd = app.add_subcommand("gen", "Generate a structure");
    gen_cmd->add_option("--graph", cfg.graph, "path, cycle, complete or gnp");
    gen_cmd->add_flag("--cnf", cfg.cnf, "Random positional CNF");
    gen_cmd->add_flag("--altgraph", cfg.altgraph, "Random alternating graph");
    gen_cmd->add_flag("--bits", cfg.bits, "Random bit string");
    gen_cmd->add_option("--n", cfg.n, "Universe size");
    gen_cmd->add_option("--p", cfg.p, "Edge or bit probability");
    gen_cmd->add_option("--q", cfg.q, "Universal vertex probability");
    gen_cmd->add_option("--seed", cfg.seed, "Seed");
    gen_cmd->add_option("--out", cfg.out, "Output file (stdout if omitted)");

    auto suite_cmd = app.add_subcommand("suite", "Run a property suite");
    suite_cmd->add_option("name", cfg.suite, "reach, complement, sat2col, fagin, dtc, reacha, roundtrip or certs")
        ->required();
    suite_cmd->add_option("--nmax", cfg.n_max, "Largest exhaustively checked size");
    suite_cmd->add_option("--trials", cfg.trials, "Random trials");
    suite_cmd->add_option("--seed", cfg.seed, "Seed");
    suite_cmd->add_flag("--quiet", cfg.quiet, "Only PASS/FAIL lines");
    suite_cmd->add_flag("--timing", cfg.timing, "Print elapsed time");

    auto certify_cmd = app.add_subcommand("certify", "Write a non-reachability certificate");
    certify_cmd->add_option("--graph,--structure", cfg.structure, "Graph file")->required();
    certify_cmd->add_option("--target", cfg.target, "Unreachable vertex")->required();
    certify_cmd->add_option("--out", cfg.out, "Certificate file (stdout if omitted)");

    auto verify_cmd = app.add_subcommand("verify-cert", "Check a non-reachability certificate");
    verify_cmd->add_option("--graph,--structure", cfg.structure, "Graph file")->required();
    verify_cmd->add_option("--target", cfg.target, "Vertex claimed unreachable")->required();
    verify_cmd->add_option("--in", cfg.in, "Certificate file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*eval_cmd)
            return cmd_eval(cfg);
        if (*reduce_cmd)
            return cmd_reduce(cfg);
        if (*check_cmd)
            return cmd_check(cfg);
        if (*gen_cmd)
            return cmd_gen(cfg);
        if (*suite_cmd)
            return cmd_suite(cfg);
        if (*certify_cmd)
            return cmd_certify(cfg);
        if (*verify_cmd)
            return cmd_verify_cert(cfg);
    } catch (const UsageError &e) {
        std::cerr << "descomp: " << e.what() << "\n";
        return exit_usage;
    } catch (const FormulaError &e) {
        std::cerr << "descomp: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "descomp: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}
