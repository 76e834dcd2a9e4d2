// Acceptance run: one PASS/FAIL line per criterion, with the measured values and timings.
// Exit status is nonzero when any criterion fails.

#include "oracles.hpp"
#include "retentive7.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace tourn;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    int failures = 0;

    auto run(int id, const std::string & title, double limit_seconds, const std::function<Outcome()> & body) -> void
    {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        }
        catch (const std::exception & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = limit_seconds <= 0 || secs <= limit_seconds;
        bool pass = o.pass && in_time;
        failures += ! pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << secs << " s";
        if (limit_seconds > 0)
            line << ", limit " << limit_seconds << " s";
        line << "): " << o.detail;
        if (! in_time)
            line << " [too slow]";
        std::cout << line.str() << std::endl;
    }

    auto jobs() -> int
    {
        return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }

    auto census(int n, CensusMode mode) -> FilterReport
    {
        CensusOptions options;
        options.mode = mode;
        options.jobs = jobs();
        return beta_census(n, options);
    }

    auto keys_of(const std::vector<CanonicalKey> & keys) -> std::set<std::string>
    {
        std::set<std::string> out;
        for (const auto & k : keys)
            out.insert(k.code());
        return out;
    }

    auto criterion_enumeration() -> Outcome
    {
        const std::vector<std::size_t> expected{4, 12, 56, 456};
        Outcome o{true, ""};
        for (int n = 4 ; n <= 7 ; ++n) {
            auto got = enumerate(n, {false, jobs()}).size();
            o.pass = o.pass && got == expected[static_cast<std::size_t>(n - 4)];
            o.detail += (n > 4 ? "/" : "") + std::to_string(got);
        }
        o.detail += " classes for n=4..7, expected 4/12/56/456";
        return o;
    }

    auto criterion_census() -> Outcome
    {
        const std::vector<std::size_t> expected{0, 2, 2, 26};
        Outcome o{true, ""};
        for (int n = 4 ; n <= 7 ; ++n) {
            auto r = census(n, CensusMode::full);
            auto got = r.survivors.size();
            o.pass = o.pass && got == expected[static_cast<std::size_t>(n - 4)] && r.accounted();
            o.detail += (n > 4 ? "/" : "") + std::to_string(got);
        }
        o.detail += " full-mode survivors for n=4..7, expected 0/2/2/26";
        return o;
    }

    auto criterion_table() -> Outcome
    {
        auto survivors = keys_of(census(7, CensusMode::full).survivors);
        std::set<std::string> table;
        for (auto code : tourn::testing::retentive7)
            table.insert(canonical_key(parse(code)).code());
        std::size_t common = 0;
        for (const auto & k : table)
            common += survivors.count(k);
        return {survivors == table && table.size() == 26,
            std::to_string(survivors.size()) + " survivors, " + std::to_string(table.size()) + " distinct table classes, " +
                std::to_string(common) + " in common"};
    }

    auto criterion_census8() -> Outcome
    {
        auto r = census(8, CensusMode::filter_only);
        return {r.survivors.size() == 395 && r.accounted(),
            std::to_string(r.survivors.size()) + " of " + std::to_string(r.total) +
                " irreducible classes survive, expected 395 (" + std::to_string(r.all_members_bound_survivors) +
                " if every member must meet the in-degree bound)"};
    }

    auto criterion_schwartz() -> Outcome
    {
        Outcome o{true, "violations per n=1..8: "};
        for (int n = 1 ; n <= 8 ; ++n) {
            auto records = schwartz_exhaustive(n, jobs());
            o.pass = o.pass && records.empty();
            o.detail += (n > 1 ? "/" : "") + std::to_string(records.size());
        }
        return o;
    }

    auto criterion_oracle() -> Outcome
    {
        TeqSolver solver;
        BruteForceTeq oracle;
        std::uint64_t classes = 0, random = 0, mismatches = 0;
        std::string first_bad;
        auto compare = [&](const Tournament & t) {
            if (solver.analyze(t).minimal_sets != oracle.minimal_sets(t)) {
                ++mismatches;
                if (first_bad.empty())
                    first_bad = serialize(t);
            }
        };
        for (const auto & t : tourn::testing::all_classes(6)) {
            compare(t);
            ++classes;
        }
        std::mt19937_64 rng(20240607);
        std::uniform_int_distribution<int> size(7, 8);
        for (int i = 0 ; i < 10000 ; ++i) {
            compare(random_tournament(size(rng), rng));
            ++random;
        }
        std::string detail = std::to_string(classes) + " classes n<=6 and " + std::to_string(random) +
            " random n=7..8 (seed 20240607), " + std::to_string(mismatches) + " mismatches";
        if (! first_bad.empty())
            detail += ", first " + first_bad;
        return {mismatches == 0 && classes == 76, detail};
    }

    /// Exhaustive n <= 7 plus random n <= 10 through the structural audit, the captain/tau
    /// biconditional over every class n <= 6, the triple test against the oracle over every
    /// 3-subset n <= 6, and the domination graph classifier on random n <= 12.
    auto criterion_properties() -> Outcome
    {
        std::map<std::string, std::uint64_t> violations;
        for (const char * rule : {"domination-shape", "irreducible", "source", "captain-tau", "captain-persistence",
                 "triple-test", "single-triple", "tri-captain-forcing", "tau3-unique", "disjoint", "double-domination"})
            violations[rule] = 0;
        std::string first_bad;
        auto note = [&](const std::string & rule, const std::string & detail) {
            ++violations[rule];
            if (first_bad.empty())
                first_bad = rule + " " + detail;
        };

        TeqSolver solver;
        std::uint64_t audited = 0;
        auto audit = [&](const Tournament & t) {
            ++audited;
            for (const auto & f : audit_analysis(t, solver.analyze(t), solver))
                note(f.rule, f.detail);
        };
        for (const auto & t : tourn::testing::all_classes(7))
            audit(t);

        constexpr int random_audits = 100000;
        std::vector<Tournament> sample;
        sample.reserve(random_audits);
        std::mt19937_64 sample_rng(777);
        std::uniform_int_distribution<int> size10(1, 10);
        for (int i = 0 ; i < random_audits ; ++i)
            sample.push_back(random_tournament(size10(sample_rng), sample_rng));

        int workers = jobs();
        std::vector<std::vector<AuditFinding>> found(static_cast<std::size_t>(workers));
        detail::parallel_chunks(sample.size(), workers, [&](std::size_t b, std::size_t e, int w) {
            TeqSolver local;
            auto & out = found[static_cast<std::size_t>(w)];
            for (std::size_t i = b ; i < e ; ++i) {
                auto f = audit_analysis(sample[i], local.analyze(sample[i]), local);
                out.insert(out.end(), f.begin(), f.end());
            }
        });
        audited += random_audits;
        for (const auto & fs : found)
            for (const auto & f : fs)
                note(f.rule, f.detail);

        // Captain/tau and the triple test, exhaustive over n <= 6 against the oracle.
        BruteForceTeq oracle;
        for (const auto & t : tourn::testing::all_classes(6)) {
            for (int v = 0 ; v < t.size() ; ++v) {
                auto in = t.in(v);
                if (in.empty())
                    continue;
                auto sets = oracle.minimal_sets(subtournament(t, in));
                bool singleton = sets.size() == 1 && sets[0].size() == 1;
                auto cap = captain_of(t, v);
                if (cap.has_value() != singleton || (cap && lift(sets[0], in) != VertexSet::single(*cap)))
                    note("captain-tau", serialize(t) + " v=" + std::to_string(v));
            }
            auto sets = oracle.minimal_sets(t);
            for (int a = 0 ; a < t.size() ; ++a)
                for (int b = a + 1 ; b < t.size() ; ++b)
                    for (int c = b + 1 ; c < t.size() ; ++c) {
                        auto triple = VertexSet::of({a, b, c});
                        bool listed = std::find(sets.begin(), sets.end(), triple) != sets.end();
                        if (is_minimal_retentive_triple(t, a, b, c) != listed)
                            note("triple-test", serialize(t) + " {" + to_string(triple) + "}");
                    }
        }

        std::mt19937_64 rng(4242);
        std::uniform_int_distribution<int> size12(1, 12);
        constexpr int random_classify = 100000;
        for (int i = 0 ; i < random_classify ; ++i) {
            auto t = random_tournament(size12(rng), rng);
            try {
                classify(domination_graph(t));
            }
            catch (const StructureViolation & e) {
                note("domination-shape", serialize(t) + ": " + e.what());
            }
        }

        std::uint64_t total = 0;
        std::string counts;
        for (const auto & [rule, c] : violations) {
            total += c;
            counts += " " + rule + "=" + std::to_string(c);
        }
        std::string detail = std::to_string(audited) + " audited tournaments (all n<=7, " + std::to_string(random_audits) +
            " random n<=10), " + std::to_string(random_classify) + " random n<=12 classified; violations:" + counts;
        if (! first_bad.empty())
            detail += "; first " + first_bad;
        return {total == 0, detail};
    }

    auto criterion_sweeps() -> Outcome
    {
        constexpr std::uint64_t seed = 20240607;
        auto lt = verify_locally_transitive(1000, 12, seed);
        auto ham = verify_hamiltonian_domcycle(7);
        return {lt.pass && lt.examined == 1000 && ham.pass,
            "locally transitive " + std::string(lt.pass ? "pass" : "fail") + " on " + std::to_string(lt.examined) +
                " samples n<=12 (seed " + std::to_string(seed) + "); spanning captain cycle " + (ham.pass ? "pass" : "fail") +
                " on " + std::to_string(ham.qualifying) + " of " + std::to_string(ham.examined) + " classes n<=7"};
    }

    auto criterion_conjectures() -> Outcome
    {
        auto r = check_conjectures(7);
        bool pass = true;
        std::string detail = std::to_string(r.examined) + " classes n<=7; counterexamples";
        for (int c = 0 ; c < 3 ; ++c) {
            const auto & hits = r.counterexamples[static_cast<std::size_t>(c)];
            auto confirmed = std::count_if(hits.begin(), hits.end(), [](const auto & h) { return h.confirmed_by_oracle; });
            pass = pass && static_cast<std::size_t>(confirmed) == hits.size();
            detail += " C" + std::to_string(c + 1) + "=" + std::to_string(hits.size()) + " (oracle-confirmed " +
                std::to_string(confirmed) + ")";
        }
        return {pass, detail};
    }
}

int main()
{
    std::cout << "acceptance run, " << jobs() << " worker thread(s)" << std::endl;
    run(1, "enumeration counts", 10, criterion_enumeration);
    run(2, "beta census, full mode", 300, criterion_census);
    run(3, "n=7 survivors equal the 26 tabulated tournaments", 0, criterion_table);
    run(4, "filter count at n=8", 0, criterion_census8);
    run(5, "Schwartz exhaustive n<=8", 1800, criterion_schwartz);
    run(6, "teq agrees with the definitional oracle", 0, criterion_oracle);
    run(7, "structural property suite", 0, criterion_properties);
    run(8, "locally transitive and spanning captain cycle sweeps", 300, criterion_sweeps);
    run(9, "conjecture sweeps", 0, criterion_conjectures);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
