#pragma once

#include <tourn/canonical.hpp>
#include <tourn/domgraph.hpp>
#include <tourn/solutions.hpp>
#include <tourn/tournament.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace tourn
{
    // ------------------------------------------------------------------ structural audits

    /// One broken structural rule on a concrete tournament.
    struct AuditFinding
    {
        std::string rule;
        std::string detail;
    };

    /// Re-checks every structural fact known to hold for minimal tau-retentive sets against an
    /// analysis of t. An empty result means nothing was violated.
    ///
    /// Rules: domination graph shape (domination-shape), minimal sets induce irreducible
    /// subtournaments (irreducible), singleton set iff source (source), captain iff singleton tau of
    /// the in-neighbourhood (captain-tau), captain arcs of t[R] survive in t (captain-persistence),
    /// no captain cycle short of R (short-cycle), triple test agrees with the size-3 minimal sets
    /// (triple-test), at most one size-3 set (single-triple), tri-captain forcing at in-degree <= 5
    /// (tri-captain-forcing), |tau| = 3 forces uniqueness (tau3-unique), pairwise disjoint sets
    /// (disjoint), no vertex beats both ends of a captain arc of t[R] (double-domination), no set of
    /// size 2 or 4 (sizes), and the sets cover tau (coverage).
    inline auto audit_analysis(const Tournament & t, const RetentiveAnalysis & a, TeqSolver & solver)
        -> std::vector<AuditFinding>
    {
        std::vector<AuditFinding> found;
        auto fail = [&](const char * rule, std::string detail) {
            found.push_back({rule, serialize(t) + ": " + std::move(detail)});
        };

        auto dom = domination_graph(t);
        try {
            classify(dom);
        }
        catch (const StructureViolation & e) {
            fail("domination-shape", e.what());
        }

        VertexSet uni;
        for (auto r : a.minimal_sets)
            uni |= r;
        if (a.minimal_sets.empty() || uni != a.teq || a.teq.empty())
            fail("coverage", "minimal sets do not cover tau");

        for (std::size_t i = 0 ; i < a.minimal_sets.size() ; ++i)
            for (std::size_t j = i + 1 ; j < a.minimal_sets.size() ; ++j)
                if (! (a.minimal_sets[i] & a.minimal_sets[j]).empty())
                    fail("disjoint", "sets {" + to_string(a.minimal_sets[i]) + "} and {" + to_string(a.minimal_sets[j]) + "} meet");

        if (a.teq.size() == 3 && a.minimal_sets.size() != 1)
            fail("tau3-unique", "|tau| = 3 with several minimal sets");

        auto src = source(t);
        for (auto r : a.minimal_sets) {
            if (r.size() == 2 || r.size() == 4)
                fail("sizes", "minimal set {" + to_string(r) + "} of forbidden size");
            if (! is_irreducible(subtournament(t, r)))
                fail("irreducible", "reducible minimal set {" + to_string(r) + "}");
            if (r.size() == 1 && (! src || r.first() != *src || a.minimal_sets.size() != 1))
                fail("source", "singleton {" + to_string(r) + "} is not the unique source set");
            if (r.size() == 3 && ! is_minimal_retentive_triple(t, r.to_vector()[0], r.to_vector()[1], r.to_vector()[2]))
                fail("triple-test", "size-3 set {" + to_string(r) + "} fails the triple test");

            auto inner = induced_domination_graph(t, r);
            for (auto [u, v] : inner.arcs()) {
                if (! dom.has_arc(u, v))
                    fail("captain-persistence", "arc " + std::to_string(u) + ">" + std::to_string(v) + " of t[R] missing in t");
                for (int x = 0 ; x < t.size() ; ++x)
                    if (t.beats(x, u) && t.beats(x, v))
                        fail("double-domination", std::to_string(x) + " beats both ends of " + std::to_string(u) + ">" + std::to_string(v));
            }
            for (const auto & cycle : directed_cycles(inner))
                if (static_cast<int>(cycle.size()) < r.size())
                    fail("short-cycle", "captain cycle inside larger minimal set {" + to_string(r) + "}");

            auto sub = subtournament(t, r);
            auto members = r.to_vector();
            for (int k = 0 ; k < sub.size() ; ++k) {
                if (sub.in_degree(k) > 5)
                    continue;
                auto tri = tri_captain(sub, k);
                if (! tri)
                    continue;
                int v = members[k];
                auto forced = lift(*tri, r);
                auto actual = lift(solver.tau(subtournament(t, t.in(v))), t.in(v));
                if (forced != actual)
                    fail("tri-captain-forcing", "vertex " + std::to_string(v) + " tri-captain {" + to_string(forced) +
                            "} but tau of in-neighbourhood {" + to_string(actual) + "}");
            }
        }
        if (src && (a.minimal_sets.size() != 1 || a.minimal_sets.front() != VertexSet::single(*src)))
            fail("source", "source is not the unique minimal set");

        int triples = count_size3_minimal_sets(t);
        if (triples > 1)
            fail("single-triple", std::to_string(triples) + " minimal triples");
        int size3 = static_cast<int>(std::count_if(a.minimal_sets.begin(), a.minimal_sets.end(),
                    [](VertexSet r) { return r.size() == 3; }));
        if (triples != size3)
            fail("triple-test", "triple test finds " + std::to_string(triples) + " sets, analysis " + std::to_string(size3));

        for (int v = 0 ; v < t.size() ; ++v) {
            auto in = t.in(v);
            if (in.empty())
                continue;
            auto sub_tau = lift(solver.tau(subtournament(t, in)), in);
            auto cap = dom.captain_of(v);
            bool singleton = sub_tau.size() == 1;
            if (cap.has_value() != singleton || (cap && sub_tau.first() != *cap))
                fail("captain-tau", "vertex " + std::to_string(v) + " captain/tau mismatch");
        }
        return found;
    }

    // ------------------------------------------------------------------ locally bounded sets

    /// s is tau-retentive in t and every member's in-neighbourhood has |tau| <= bound.
    inline auto is_locally_bounded_retentive(const Tournament & t, VertexSet s, int bound, TeqSolver & solver) -> bool
    {
        if (s.empty())
            throw PreconditionError("locally bounded check of the empty set");
        for (int v : s) {
            auto in = t.in(v);
            if (in.empty())
                continue;
            auto sub_tau = lift(solver.tau(subtournament(t, in)), in);
            if (! sub_tau.subset_of(s) || sub_tau.size() > bound)
                return false;
        }
        return true;
    }

    inline auto is_locally_bounded_retentive(const Tournament & t, VertexSet s, int bound) -> bool
    {
        return is_locally_bounded_retentive(t, s, bound, detail::thread_solver());
    }

    /// Captain-or-tri-captain shortcut: every member of s either has its captain in s, or three
    /// in-neighbours inside s forming a directed triangle that no other in-neighbour beats twice.
    /// Members with no in-neighbours pass.
    inline auto fast_3bounded_check(const Tournament & t, VertexSet s) -> bool
    {
        if (s.empty())
            throw PreconditionError("3-bounded check of the empty set");
        for (int v : s) {
            auto in = t.in(v);
            if (in.empty())
                continue;
            if (auto cap = captain_of(t, v) ; cap && s.contains(*cap))
                continue;

            bool ok = false;
            auto inside = (in & s).to_vector();
            for (std::size_t i = 0 ; i < inside.size() && ! ok ; ++i)
                for (std::size_t j = i + 1 ; j < inside.size() && ! ok ; ++j)
                    for (std::size_t k = j + 1 ; k < inside.size() && ! ok ; ++k) {
                        int x = inside[i], y = inside[j], z = inside[k];
                        if (! is_directed_triangle(t, x, y, z))
                            continue;
                        auto triple = VertexSet::of({x, y, z});
                        bool clean = true;
                        for (int w : in - triple)
                            if ((t.out(w) & triple).size() >= 2) {
                                clean = false;
                                break;
                            }
                        ok = clean;
                    }
            if (! ok)
                return false;
        }
        return true;
    }

    /// Which members of an eliminating set must have in-degree <= 5.
    enum class DegreeBound
    {
        /// Only members whose in-neighbourhood has no source (|tau| = 3). A member with a captain
        /// keeps it in every host tournament, so it needs no bound. This is the census default.
        uncaptained_members,
        /// Every member, the literal side condition.
        all_members
    };

    namespace detail
    {
        struct BoundedSubsetInputs
        {
            RequirementDigraph req;
            VertexSet eligible;
        };

        /// Vertices allowed in an eliminating set: |tau(in-neighbourhood)| <= 3, plus the degree bound.
        inline auto bounded_subset_inputs(const Tournament & t, TeqSolver & solver, DegreeBound bound) -> BoundedSubsetInputs
        {
            BoundedSubsetInputs in{solver.requirement_digraph(t), {}};
            for (int v = 0 ; v < t.size() ; ++v) {
                int k = in.req.arcs[v].size();
                bool degree_ok = t.in_degree(v) <= 5 || (bound == DegreeBound::uncaptained_members && k <= 1);
                if (k <= 3 && degree_ok)
                    in.eligible.insert(v);
            }
            return in;
        }

        inline auto degree_ok(const Tournament & t, VertexSet r, DegreeBound bound) -> bool
        {
            for (int v : r)
                if (t.in_degree(v) > 5 && (bound == DegreeBound::all_members || ! captain_of(t, v)))
                    return false;
            return true;
        }
    }

    /// True when t is eliminated: some proper nonempty R is a 3-locally bounded tau-retentive set
    /// of t meeting the degree bound, so t cannot be induced by a minimal tau-retentive set of any
    /// tournament.
    ///
    /// Any such R contains the requirement closure of each of its members, so it is enough to
    /// test the closure of every eligible vertex.
    inline auto bounded_subset_filter(const Tournament & t, TeqSolver & solver,
            DegreeBound bound = DegreeBound::uncaptained_members) -> bool
    {
        auto in = detail::bounded_subset_inputs(t, solver, bound);
        for (int v : in.eligible) {
            auto cl = in.req.closure(VertexSet::single(v));
            if (cl.subset_of(in.eligible) && cl != t.vertices())
                return true;
        }
        return false;
    }

    inline auto bounded_subset_filter(const Tournament & t, DegreeBound bound = DegreeBound::uncaptained_members) -> bool
    {
        return bounded_subset_filter(t, detail::thread_solver(), bound);
    }

    /// Same decision as bounded_subset_filter, by trying every proper nonempty subset.
    inline auto bounded_subset_filter_exhaustive(const Tournament & t, TeqSolver & solver,
            DegreeBound bound = DegreeBound::uncaptained_members) -> bool
    {
        std::uint32_t full = t.vertices().bits();
        for (std::uint32_t m = 1 ; m < full ; ++m) {
            VertexSet r{m};
            if (detail::degree_ok(t, r, bound) && is_locally_bounded_retentive(t, r, 3, solver))
                return true;
        }
        return false;
    }

    /// The shortcut form of the filter: some proper nonempty R passes fast_3bounded_check and the
    /// degree bound.
    inline auto bounded_subset_filter_fast(const Tournament & t, DegreeBound bound = DegreeBound::uncaptained_members) -> bool
    {
        std::uint32_t full = t.vertices().bits();
        for (std::uint32_t m = 1 ; m < full ; ++m) {
            VertexSet r{m};
            if (detail::degree_ok(t, r, bound) && fast_3bounded_check(t, r))
                return true;
        }
        return false;
    }

    // ------------------------------------------------------------------ beta census

    enum class CensusMode
    {
        filter_only,
        full
    };

    inline auto to_string(CensusMode m) -> std::string
    {
        return m == CensusMode::full ? "full" : "filter-only";
    }

    struct CensusOptions
    {
        CensusMode mode = CensusMode::filter_only;
        int jobs = 1;
        /// Required for n >= 9.
        bool long_run = false;
    };

    /// Outcome of the census at one size: how many irreducible classes were examined, which ones
    /// survived every filter, and how many each filter removed.
    struct FilterReport
    {
        int n = 0;
        CensusMode mode = CensusMode::filter_only;
        std::uint64_t total = 0;
        std::vector<CanonicalKey> survivors;
        std::map<std::string, std::uint64_t> eliminated_by;
        /// Classes that would escape the filter if every member of R had to meet the degree bound.
        std::uint64_t all_members_bound_survivors = 0;

        [[nodiscard]] auto accounted() const -> bool
        {
            std::uint64_t sum = survivors.size();
            for (const auto & [_, c] : eliminated_by)
                sum += c;
            return sum == total;
        }
    };

    inline constexpr const char * filter_bounded_subset = "bounded-subset";
    inline constexpr const char * filter_not_retentive = "not-self-retentive";

    /// Largest census size without long_run, and the largest size for full mode.
    inline constexpr int census_desk_max = 8;

    /// Runs the filter pipeline over every irreducible class of size n.
    ///
    /// filter-only keeps the classes that escape bounded_subset_filter. full additionally keeps only
    /// those whose unique minimal tau-retentive set is the whole vertex set.
    inline auto beta_census(int n, CensusOptions options = {}) -> FilterReport
    {
        if (n < 4 || n > max_enumeration_size)
            throw PreconditionError("census size " + std::to_string(n) + " outside 4..10");
        if (n > census_desk_max && ! options.long_run)
            throw PreconditionError("census size " + std::to_string(n) + " needs the long-run flag");
        if (options.mode == CensusMode::full && n > census_desk_max)
            throw PreconditionError("full census is limited to size " + std::to_string(census_desk_max));

        int jobs = std::max(1, options.jobs);
        struct Partial
        {
            TeqSolver solver;
            std::uint64_t total = 0, bounded = 0, not_retentive = 0, all_members = 0;
            std::vector<CanonicalKey> survivors;
        };
        std::vector<Partial> parts(static_cast<std::size_t>(jobs));

        for_each_class(n, jobs, [&](const Tournament & t, int worker) {
            auto & p = parts[static_cast<std::size_t>(worker)];
            if (! is_irreducible(t))
                return;
            ++p.total;
            if (! bounded_subset_filter(t, p.solver, DegreeBound::all_members))
                ++p.all_members;
            if (bounded_subset_filter(t, p.solver)) {
                ++p.bounded;
                return;
            }
            if (options.mode == CensusMode::full) {
                auto a = p.solver.analyze(t);
                if (a.minimal_sets.size() != 1 || a.minimal_sets.front() != t.vertices()) {
                    ++p.not_retentive;
                    return;
                }
            }
            p.survivors.push_back(CanonicalKey::of_canonical(t));
        });

        FilterReport report;
        report.n = n;
        report.mode = options.mode;
        report.eliminated_by[filter_bounded_subset] = 0;
        if (options.mode == CensusMode::full)
            report.eliminated_by[filter_not_retentive] = 0;
        for (auto & p : parts) {
            report.total += p.total;
            report.all_members_bound_survivors += p.all_members;
            report.eliminated_by[filter_bounded_subset] += p.bounded;
            if (options.mode == CensusMode::full)
                report.eliminated_by[filter_not_retentive] += p.not_retentive;
            report.survivors.insert(report.survivors.end(), p.survivors.begin(), p.survivors.end());
        }
        std::sort(report.survivors.begin(), report.survivors.end());
        return report;
    }

    // ------------------------------------------------------------------ Schwartz

    /// A tournament with two or more minimal tau-retentive sets, with certificates.
    struct CoexistenceRecord
    {
        CanonicalKey tournament;
        std::vector<VertexSet> minimal_sets;
        std::vector<int> sizes;
        std::vector<CanonicalKey> classes;
        std::vector<AuditFinding> audit;
    };

    inline auto make_coexistence_record(const Tournament & t, const RetentiveAnalysis & a, TeqSolver & solver)
        -> CoexistenceRecord
    {
        CoexistenceRecord rec;
        rec.tournament = canonical_key(t);
        rec.minimal_sets = a.minimal_sets;
        for (auto r : a.minimal_sets) {
            rec.sizes.push_back(r.size());
            rec.classes.push_back(canonical_key(subtournament(t, r)));
        }
        rec.audit = audit_analysis(t, a, solver);
        return rec;
    }

    /// Largest size schwartz_exhaustive accepts; 9 takes a while.
    inline constexpr int schwartz_max_size = 9;

    /// Every class of size n with more than one minimal tau-retentive set, ordered by key.
    inline auto schwartz_exhaustive(int n, int jobs = 1) -> std::vector<CoexistenceRecord>
    {
        if (n < 1 || n > schwartz_max_size)
            throw PreconditionError("Schwartz sweep size " + std::to_string(n) + " outside 1.." +
                    std::to_string(schwartz_max_size));
        jobs = std::max(1, jobs);
        std::vector<TeqSolver> solvers(static_cast<std::size_t>(jobs));
        std::vector<std::vector<CoexistenceRecord>> found(static_cast<std::size_t>(jobs));
        for_each_class(n, jobs, [&](const Tournament & t, int worker) {
            auto & solver = solvers[static_cast<std::size_t>(worker)];
            auto a = solver.analyze(t);
            if (! a.schwartz_ok)
                found[static_cast<std::size_t>(worker)].push_back(make_coexistence_record(t, a, solver));
        });
        std::vector<CoexistenceRecord> all;
        for (auto & f : found)
            all.insert(all.end(), f.begin(), f.end());
        std::sort(all.begin(), all.end(), [](const auto & a, const auto & b) { return a.tournament < b.tournament; });
        return all;
    }

    // ------------------------------------------------------------------ random tournaments

    inline auto random_tournament(int n, std::mt19937_64 & rng) -> Tournament
    {
        Tournament t(n);
        std::bernoulli_distribution coin(0.5);
        for (int i = 0 ; i < n ; ++i)
            for (int j = i + 1 ; j < n ; ++j)
                if (coin(rng))
                    t.orient(j, i);
        return t;
    }

    inline auto random_relabeling(const Tournament & t, std::mt19937_64 & rng) -> Tournament
    {
        std::vector<int> order(static_cast<std::size_t>(t.size()));
        for (int i = 0 ; i < t.size() ; ++i)
            order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        return permuted(t, order);
    }

    /// Random locally transitive tournament: vertices at random points of a circle, each beating
    /// the vertices lying less than half a turn ahead of it. The result is re-checked against the
    /// definition; throws after `max_attempts` failures.
    inline auto random_locally_transitive(int n, std::mt19937_64 & rng, int max_attempts = 100) -> Tournament
    {
        std::uniform_real_distribution<double> angle(0.0, 1.0);
        for (int attempt = 0 ; attempt < max_attempts ; ++attempt) {
            std::vector<double> at(static_cast<std::size_t>(n));
            for (auto & a : at)
                a = angle(rng);
            Tournament t(n);
            bool degenerate = false;
            for (int i = 0 ; i < n && ! degenerate ; ++i)
                for (int j = i + 1 ; j < n ; ++j) {
                    double ahead = at[static_cast<std::size_t>(j)] - at[static_cast<std::size_t>(i)];
                    ahead -= std::floor(ahead);
                    if (ahead == 0.0 || ahead == 0.5) {
                        degenerate = true;
                        break;
                    }
                    if (ahead > 0.5)
                        t.orient(j, i);
                }
            if (! degenerate && is_locally_transitive(t))
                return t;
        }
        throw std::runtime_error("could not generate a locally transitive tournament of size " + std::to_string(n));
    }

    // ------------------------------------------------------------------ sweep verifiers

    /// Pass/fail of a sweep plus certificates of every failure.
    struct SweepVerdict
    {
        bool pass = true;
        std::uint64_t examined = 0;
        std::uint64_t qualifying = 0;
        std::vector<std::string> counterexamples;
    };

    /// Random locally transitive tournaments of sizes 1..n_max must each have a unique minimal
    /// tau-retentive set.
    inline auto verify_locally_transitive(int trials, int n_max, std::uint64_t seed) -> SweepVerdict
    {
        if (n_max < 1 || n_max > max_vertices)
            throw PreconditionError("locally transitive sweep size out of range");
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> size(1, n_max);
        TeqSolver solver;
        SweepVerdict v;
        for (int i = 0 ; i < trials ; ++i) {
            auto t = random_locally_transitive(size(rng), rng);
            ++v.examined;
            ++v.qualifying;
            auto a = solver.analyze(t);
            if (! a.schwartz_ok) {
                v.pass = false;
                v.counterexamples.push_back(serialize(t));
            }
        }
        return v;
    }

    /// Over all classes up to n_max whose domination digraph has a spanning directed cycle, the
    /// whole vertex set must be the unique minimal tau-retentive set.
    inline auto verify_hamiltonian_domcycle(int n_max) -> SweepVerdict
    {
        if (n_max < 1 || n_max > census_desk_max)
            throw PreconditionError("Hamiltonian sweep size out of range");
        TeqSolver solver;
        SweepVerdict v;
        for (int n = 1 ; n <= n_max ; ++n)
            for (const auto & t : enumerate(n)) {
                ++v.examined;
                if (! has_spanning_directed_cycle(domination_graph(t)))
                    continue;
                ++v.qualifying;
                auto a = solver.analyze(t);
                if (a.minimal_sets.size() != 1 || a.minimal_sets.front() != t.vertices()) {
                    v.pass = false;
                    v.counterexamples.push_back(serialize(t));
                }
            }
        return v;
    }

    // ------------------------------------------------------------------ conjectures

    /// A tournament contradicting one of the open conjectures, with what the oracle says about it.
    struct ConjectureCounterexample
    {
        int conjecture = 0;
        std::string code;
        std::string detail;
        /// The violation reproduces with the definitional oracle.
        bool confirmed_by_oracle = false;
    };

    struct ConjectureReport
    {
        int n_max = 0;
        std::uint64_t examined = 0;
        std::array<std::vector<ConjectureCounterexample>, 3> counterexamples;
    };

    namespace detail
    {
        /// A size-3 minimal set must be the only one.
        inline auto violates_c1(const std::vector<VertexSet> & sets) -> bool
        {
            bool has3 = std::any_of(sets.begin(), sets.end(), [](VertexSet r) { return r.size() == 3; });
            return has3 && sets.size() > 1;
        }

        /// Every captain cycle must span the unique minimal set.
        inline auto violates_c2(const Tournament & t, const std::vector<VertexSet> & sets) -> std::optional<std::string>
        {
            for (const auto & cycle : directed_cycles(domination_graph(t))) {
                auto cs = VertexSet::of(cycle);
                if (sets.size() != 1 || sets.front() != cs)
                    return "cycle {" + to_string(cs) + "}";
            }
            return std::nullopt;
        }

        /// Captain vertices must lie in tau.
        inline auto violates_c3(const Tournament & t, const std::vector<VertexSet> & sets) -> std::optional<std::string>
        {
            VertexSet teq;
            for (auto r : sets)
                teq |= r;
            auto dom = domination_graph(t);
            for (int u = 0 ; u < t.size() ; ++u)
                if (! dom.slaves(u).empty() && ! teq.contains(u))
                    return "captain " + std::to_string(u) + " outside tau {" + to_string(teq) + "}";
            return std::nullopt;
        }
    }

    /// Sweeps every class of size 1..n_max against the three conjectures; every hit is re-checked
    /// with minimal_retentive_sets_bruteforce before it is reported.
    inline auto check_conjectures(int n_max) -> ConjectureReport
    {
        if (n_max < 1 || n_max > bruteforce_max_size)
            throw PreconditionError("conjecture sweep size out of range");
        TeqSolver solver;
        ConjectureReport report;
        report.n_max = n_max;
        for (int n = 1 ; n <= n_max ; ++n)
            for (const auto & t : enumerate(n)) {
                ++report.examined;
                auto sets = solver.analyze(t).minimal_sets;
                auto record = [&](int which, std::string detail, bool confirmed) {
                    report.counterexamples[static_cast<std::size_t>(which - 1)].push_back(
                            {which, serialize(t), std::move(detail), confirmed});
                };
                if (detail::violates_c1(sets))
                    record(1, std::to_string(sets.size()) + " minimal sets",
                            detail::violates_c1(minimal_retentive_sets_bruteforce(t)));
                if (auto d = detail::violates_c2(t, sets))
                    record(2, *d, detail::violates_c2(t, minimal_retentive_sets_bruteforce(t)).has_value());
                if (auto d = detail::violates_c3(t, sets))
                    record(3, *d, detail::violates_c3(t, minimal_retentive_sets_bruteforce(t)).has_value());
            }
        return report;
    }
}
