#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "polyrep/reports.hpp"

using namespace polyrep;

namespace {

const std::map<std::string, std::string> kHelp{
    {"m", "polygon order m >= 3"},
    {"x", "argument of p_m"},
    {"alpha", "coefficients a,b,c,d (odd, squarefree product)"},
    {"n", "target n >= 0"},
    {"n-range", "inclusive range lo:hi"},
    {"d", "scaling tuple d1,d2,d3,d4"},
    {"ell", "outer scaling tuple"},
    {"p", "prime"},
    {"method", "auto | closed | kane | oracle"},
    {"depth", "fixed oracle depth (default: stability search)"},
    {"variant", "closed-form variant: corrected | as-stated (p = 2), statement | proof (p | m-2)"},
    {"source", "density source or counts source"},
    {"extra-primes", "extra primes added to the Eisenstein support"},
    {"pool", "sieve prime pool, comma separated"},
    {"inner-p", "inner forbidden primes P1"},
    {"caps", "exponent caps p:c, comma separated"},
    {"D", "sieve level (rational)"},
    {"beta", "Rosser beta (rational >= 1)"},
    {"layout", "lower-bound layout: symmetric | slot1"},
    {"zero-divisible", "treat x_j = 0 as divisible by every prime"},
    {"z0", "sieve threshold z0 (rational)"},
    {"budget", "term budget for the M sums"},
    {"theta", "exponent theta (rational)"},
    {"s", "sieve parameter s"},
    {"z", "sieve threshold z (0: h^theta)"},
    {"eps", "epsilon"},
    {"c-err", "error constant"},
    {"B", "exponent constant B in the Delta policy"},
    {"C", "implied constant"},
    {"factor-bound", "prime factor bound for witnesses"},
    {"omega-bound", "prime factor bound for witnesses"},
    {"omega-mode", "multiplicity | distinct"},
    {"allow-zero", "accept x_j = 0 in witnesses"},
    {"exclude", "primes no coordinate may be divisible by"},
    {"exclude-upto", "exclude primes <= value that are prime to 2 prod(alpha)"},
    {"list", "emit the solution lists"},
    {"exponent", "residual exponent (rational)"},
    {"slack", "allowed relative growth of the fitted constant"},
    {"grid", "3x3 grid of (m, alpha)"},
    {"cases", "number of randomized cases"},
    {"desk-cases", "number of enumeration instances"},
    {"seed", "64-bit seed"},
    {"oracle-max-depth", "oracle depth cap"},
    {"oracle-max-modulus", "oracle modulus cap"},
    {"oracle-budget", "oracle work budget per depth"},
    {"format", "json | csv"},
    {"output", "output path (default stdout)"},
    {"digits", "digits for real values"},
    {"threads", "worker threads (default: POLYREP_THREADS or all cores)"},
};

const std::set<std::string> kFlags{"list", "allow-zero", "zero-divisible", "grid"};

struct Leaf {
    std::string command;
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::string config_path;
};

void add_leaf(CLI::App* parent, const std::string& name, const std::string& command, const std::string& desc,
              std::vector<std::unique_ptr<Leaf>>& leaves) {
    auto leaf = std::make_unique<Leaf>();
    leaf->command = command;
    leaf->app = parent->add_subcommand(name, desc);
    for (auto& k : command_keys(command)) {
        auto it = kHelp.find(k);
        std::string help = it == kHelp.end() ? k : it->second;
        if (kFlags.count(k))
            leaf->app->add_flag("--" + k + "{true}", leaf->values[k], help);
        else
            leaf->app->add_option("--" + k, leaf->values[k], help);
    }
    leaf->app->add_option("--config", leaf->config_path, "flat key = value file; flags override it");
    leaves.push_back(std::move(leaf));
}

int exit_for(const std::exception& e, int code) {
    std::cerr << "error: " << e.what() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representations by sums of four generalized polygonal numbers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    std::vector<std::unique_ptr<Leaf>> leaves;

    auto poly = app.add_subcommand("poly", "polygonal numbers")->require_subcommand(1);
    add_leaf(poly, "eval", "poly eval", "evaluate p_m(x)", leaves);
    auto repr = app.add_subcommand("repr", "representation counts")->require_subcommand(1);
    add_leaf(repr, "count", "repr count", "count representations of h(n) on a scaled coset", leaves);
    add_leaf(&app, "density", "density", "local density b_p", leaves);
    add_leaf(&app, "eisenstein", "eisenstein", "Eisenstein coefficient a_E", leaves);
    add_leaf(&app, "betas", "betas", "beta ratio bounds at p", leaves);
    auto sieve = app.add_subcommand("sieve", "sieve machinery")->require_subcommand(1);
    add_leaf(sieve, "weights", "sieve weights", "Rosser weights over a prime pool", leaves);
    add_leaf(sieve, "sums", "sieve sums", "weighted sieve sums against true constrained counts", leaves);
    add_leaf(sieve, "w", "sieve w", "main-term product W", leaves);
    add_leaf(sieve, "m", "sieve m", "M-minus and M-plus sums", leaves);
    add_leaf(sieve, "driver", "sieve driver", "two-stage driver: gates, constants, witness coverage", leaves);
    add_leaf(&app, "witness", "witness", "almost-prime witnesses", leaves);
    add_leaf(&app, "residuals", "residuals", "r - a_E over an n-range", leaves);
    add_leaf(&app, "threshold", "threshold", "size threshold for h in terms of m and alpha", leaves);
    auto suite = app.add_subcommand("suite", "property suites")->require_subcommand(1);
    for (std::string s : {"density-oracle", "beta-bounds", "sandwich", "decomposition", "theorem-gate"})
        add_leaf(suite, s, "suite " + s, "property suite " + s, leaves);

    auto rp = app.add_subcommand("replay", "re-run a JSON-lines report and compare");
    std::string replay_in, replay_fmt = "json", replay_out;
    rp->add_option("--input", replay_in, "report to replay")->required();
    rp->add_option("--format", replay_fmt, "json | csv");
    rp->add_option("--output", replay_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rp->parsed()) {
            std::ifstream in(replay_in);
            if (!in) throw UsageError("cannot open " + replay_in);
            auto env = replay(read_jsonl(in));
            write_report(env, replay_fmt, replay_out);
            return env.exit_code;
        }
        for (auto& leaf : leaves) {
            if (!leaf->app->parsed()) continue;
            RunConfig cfg;
            cfg.command = leaf->command;
            if (!leaf->config_path.empty()) cfg.kv = read_config_file(leaf->config_path);
            for (auto& [k, v] : leaf->values)
                if (leaf->app->count("--" + k) > 0) cfg.kv[k] = v;
            auto env = run_command(cfg);
            write_report(env, cfg.str("format", "json"), cfg.str("output", ""));
            return env.exit_code;
        }
        throw UsageError("no command given");
    } catch (const UsageError& e) {
        return exit_for(e, kExitUsage);
    } catch (const ObstructionError& e) {
        return exit_for(e, kExitObstruction);
    } catch (const BudgetExceeded& e) {
        return exit_for(e, kExitBudget);
    } catch (const std::exception& e) {
        return exit_for(e, kExitUsage);
    }
}
