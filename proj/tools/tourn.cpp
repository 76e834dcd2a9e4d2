// Command-line front end: enumeration, tau analysis, domination graphs, the beta census, the
// Schwartz sweep, conjecture sweeps and the sweep verifiers.
//
// Exit status: 0 success / nothing found, 1 findings (violations or counterexamples),
// 2 usage error, 3 runtime error.

#include <tourn/tourn.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <set>

namespace
{
    constexpr int exit_findings = 1;
    constexpr int exit_usage = 2;
    constexpr int exit_runtime = 3;

    struct Config
    {
        int size = 0;
        int which = 0;
        int jobs = 1;
        std::string input;
        std::string output;
        bool irreducible = false;
        bool complement = false;
        bool filter_only = false;
        bool full = false;
        bool long_run = false;
        int trials = 1000;
        int n_max = 12;
        std::uint64_t seed = 1;
    };

    class Output
    {
        std::unique_ptr<std::ofstream> file_;

    public:
        explicit Output(const std::string & path)
        {
            if (! path.empty()) {
                file_ = std::make_unique<std::ofstream>(path);
                if (! *file_)
                    throw std::runtime_error("cannot open " + path + " for writing");
            }
        }

        auto stream() -> std::ostream & { return file_ ? *file_ : std::cout; }
    };

    auto load(const Config & c) -> std::vector<tourn::Tournament>
    {
        if (c.input.empty() || c.input == "-")
            return tourn::read_tournaments(std::cin, c.complement);
        std::ifstream in(c.input);
        if (! in)
            throw std::runtime_error("cannot read " + c.input);
        return tourn::read_tournaments(in, c.complement);
    }

    auto run_gen(const Config & c) -> int
    {
        Output out(c.output);
        for (const auto & t : tourn::enumerate(c.size, {c.irreducible, c.jobs}))
            out.stream() << tourn::serialize(t) << "\n";
        return 0;
    }

    auto run_teq(const Config & c) -> int
    {
        Output out(c.output);
        tourn::TeqSolver solver;
        for (const auto & t : load(c))
            out.stream() << tourn::analysis_record(t, solver.analyze(t)) << "\n";
        return 0;
    }

    auto run_domgraph(const Config & c) -> int
    {
        Output out(c.output);
        for (const auto & t : load(c))
            tourn::write_domgraph(out.stream(), t);
        return 0;
    }

    auto run_canon(const Config & c) -> int
    {
        Output out(c.output);
        std::set<tourn::CanonicalKey> keys;
        for (const auto & t : load(c))
            keys.insert(tourn::canonical_key(t));
        for (const auto & k : keys)
            out.stream() << k.code() << "\n";
        return 0;
    }

    auto run_beta(const Config & c) -> int
    {
        tourn::CensusOptions options;
        options.mode = c.full ? tourn::CensusMode::full : tourn::CensusMode::filter_only;
        options.jobs = c.jobs;
        options.long_run = c.long_run;
        auto report = tourn::beta_census(c.size, options);
        Output out(c.output);
        tourn::write_report(out.stream(), report);
        return 0;
    }

    auto run_schwartz(const Config & c) -> int
    {
        auto records = tourn::schwartz_exhaustive(c.size, c.jobs);
        Output out(c.output);
        out.stream() << "# schwartz n=" << c.size << " violations=" << records.size() << "\n";
        for (const auto & r : records)
            out.stream() << tourn::coexistence_record(r) << "\n";
        return records.empty() ? 0 : exit_findings;
    }

    auto run_conjecture(const Config & c) -> int
    {
        auto report = tourn::check_conjectures(c.size);
        Output out(c.output);
        tourn::write_conjecture(out.stream(), report, c.which);
        return report.counterexamples[static_cast<std::size_t>(c.which - 1)].empty() ? 0 : exit_findings;
    }

    auto write_sweep(std::ostream & out, const std::string & name, const tourn::SweepVerdict & v) -> int
    {
        out << "# " << name << " examined=" << v.examined << " qualifying=" << v.qualifying
            << " result=" << (v.pass ? "pass" : "fail") << "\n";
        for (const auto & code : v.counterexamples)
            out << code << "\n";
        return v.pass ? 0 : exit_findings;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Tournament equilibrium set and minimal retentive set toolkit"};
    app.require_subcommand(1);
    Config c;

    auto add_output = [&](CLI::App * sub) { sub->add_option("-o,--output", c.output, "write here instead of standard output"); };
    auto add_jobs = [&](CLI::App * sub) { sub->add_option("-j,--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 256)); };
    auto add_input = [&](CLI::App * sub) {
        sub->add_option("file", c.input, "one code per line; standard input when omitted");
        sub->add_flag("--complement", c.complement, "read every code bit inverted");
    };

    auto gen = app.add_subcommand("gen", "one representative per isomorphism class");
    gen->add_option("n", c.size, "size")->required();
    gen->add_flag("--irreducible", c.irreducible, "only strongly connected tournaments");
    add_output(gen);
    add_jobs(gen);

    auto teq = app.add_subcommand("teq", "minimal tau-retentive sets, tau and the Schwartz verdict per tournament");
    add_input(teq);
    add_output(teq);

    auto dom = app.add_subcommand("domgraph", "captain arcs and domination graph shape per tournament");
    add_input(dom);
    add_output(dom);

    auto canon = app.add_subcommand("canon", "canonical codes, deduplicated and sorted");
    add_input(canon);
    add_output(canon);

    auto beta = app.add_subcommand("beta", "census of tau-retentive tournament candidates");
    beta->add_option("n", c.size, "size")->required();
    auto fo = beta->add_flag("--filter-only", c.filter_only, "only the locally bounded filter (default)");
    auto full = beta->add_flag("--full", c.full, "also require the whole vertex set to be the unique minimal set");
    fo->excludes(full);
    beta->add_flag("--long-run", c.long_run, "allow sizes 9 and 10");
    add_output(beta);
    add_jobs(beta);

    auto schwartz = app.add_subcommand("schwartz", "every class of size n with several minimal sets");
    schwartz->add_option("n", c.size, "size")->required();
    add_output(schwartz);
    add_jobs(schwartz);

    auto conj = app.add_subcommand("conjecture", "sweep all classes up to size n for counterexamples");
    conj->add_option("which", c.which, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    conj->add_option("n", c.size, "largest size")->required();
    add_output(conj);

    auto verify = app.add_subcommand("verify", "randomised and exhaustive uniqueness sweeps");
    verify->require_subcommand(1);
    auto lt = verify->add_subcommand("locally-transitive", "random locally transitive tournaments");
    lt->add_option("--trials", c.trials, "number of samples")->check(CLI::Range(0, 100000000));
    lt->add_option("--nmax", c.n_max, "largest size")->check(CLI::Range(1, tourn::max_vertices));
    lt->add_option("--seed", c.seed, "random seed");
    add_output(lt);
    auto ham = verify->add_subcommand("hamiltonian", "all classes up to n with a spanning captain cycle");
    ham->add_option("n", c.size, "largest size")->required();
    add_output(ham);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (gen->parsed())
            return run_gen(c);
        if (teq->parsed())
            return run_teq(c);
        if (dom->parsed())
            return run_domgraph(c);
        if (canon->parsed())
            return run_canon(c);
        if (beta->parsed())
            return run_beta(c);
        if (schwartz->parsed())
            return run_schwartz(c);
        if (conj->parsed())
            return run_conjecture(c);
        if (lt->parsed()) {
            Output out(c.output);
            return write_sweep(out.stream(), "locally-transitive trials=" + std::to_string(c.trials) +
                    " nmax=" + std::to_string(c.n_max) + " seed=" + std::to_string(c.seed),
                    tourn::verify_locally_transitive(c.trials, c.n_max, c.seed));
        }
        if (ham->parsed()) {
            Output out(c.output);
            return write_sweep(out.stream(), "hamiltonian n<=" + std::to_string(c.size),
                    tourn::verify_hamiltonian_domcycle(c.size));
        }
    }
    catch (const tourn::PreconditionError & e) {
        std::cerr << "tourn: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "tourn: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_usage;
}
