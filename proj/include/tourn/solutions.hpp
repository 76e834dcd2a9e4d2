#pragma once

#include <tourn/canonical.hpp>
#include <tourn/tournament.hpp>

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>
#include <vector>

namespace tourn
{
    /// v -> tau of v's in-neighbourhood, in host labels. A set A is tau-retentive exactly when it is
    /// nonempty and closed under these arcs.
    struct RequirementDigraph
    {
        int n = 0;
        std::array<VertexSet, max_vertices> arcs{};

        [[nodiscard]] auto targets(int v) const -> VertexSet { return arcs[v]; }

        /// Smallest closed set containing `from` (from itself included).
        [[nodiscard]] auto closure(VertexSet from) const -> VertexSet
        {
            VertexSet seen = from, frontier = from;
            while (! frontier.empty()) {
                VertexSet next;
                for (int v : frontier)
                    next |= arcs[v];
                frontier = next - seen;
                seen |= next;
            }
            return seen;
        }

        [[nodiscard]] auto is_closed(VertexSet s) const -> bool
        {
            for (int v : s)
                if (! arcs[v].subset_of(s))
                    return false;
            return true;
        }

        /// Vertex sets of the sink strongly connected components, ordered by (size, mask).
        [[nodiscard]] auto sink_components() const -> std::vector<VertexSet>
        {
            std::array<VertexSet, max_vertices> reach{};
            for (int v = 0 ; v < n ; ++v)
                reach[v] = closure(VertexSet::single(v));

            std::vector<VertexSet> sinks;
            VertexSet covered;
            for (int v = 0 ; v < n ; ++v) {
                if (covered.contains(v))
                    continue;
                bool sink = true;
                for (int u : reach[v])
                    if (! reach[u].contains(v)) {
                        sink = false;
                        break;
                    }
                if (sink) {
                    sinks.push_back(reach[v]);
                    covered |= reach[v];
                }
            }
            std::sort(sinks.begin(), sinks.end());
            return sinks;
        }
    };

    /// All minimal tau-retentive sets of one tournament and their union tau(T).
    struct RetentiveAnalysis
    {
        std::vector<VertexSet> minimal_sets;
        VertexSet teq;
        /// Exactly one minimal retentive set.
        bool schwartz_ok = true;
    };

    /// Computes tau recursively through in-neighbourhood subtournaments.
    ///
    /// Results are memoised on the canonical key of each subtournament. A solver is not
    /// thread-safe; give each worker its own.
    class TeqSolver
    {
        bool memoize_;
        std::unordered_map<CanonicalKey, VertexSet> cache_;

        auto compute_tau(const Tournament & t) -> VertexSet
        {
            VertexSet all;
            for (auto s : requirement_digraph(t).sink_components())
                all |= s;
            return all;
        }

    public:
        explicit TeqSolver(bool memoize = true) : memoize_(memoize) {}

        [[nodiscard]] auto cache_size() const -> std::size_t { return cache_.size(); }
        auto clear_cache() -> void { cache_.clear(); }

        /// tau(T), the union of all minimal tau-retentive sets.
        auto tau(const Tournament & t) -> VertexSet
        {
            if (t.size() == 1)
                return VertexSet::single(0);
            if (auto s = source(t))
                return VertexSet::single(*s);
            if (t.size() == 3)
                return t.vertices();
            if (! memoize_)
                return compute_tau(t);

            auto form = canonical_form(t);
            auto key = CanonicalKey::of_canonical(form.tournament);
            VertexSet canonical_tau;
            if (auto it = cache_.find(key) ; it != cache_.end())
                canonical_tau = it->second;
            else {
                canonical_tau = compute_tau(form.tournament);
                cache_.emplace(key, canonical_tau);
            }

            VertexSet result;
            for (int k : canonical_tau)
                result.insert(form.order[k]);
            return result;
        }

        auto requirement_digraph(const Tournament & t) -> RequirementDigraph
        {
            RequirementDigraph g;
            g.n = t.size();
            for (int v = 0 ; v < t.size() ; ++v) {
                auto in = t.in(v);
                if (in.empty())
                    continue;
                g.arcs[v] = lift(tau(subtournament(t, in)), in);
            }
            return g;
        }

        auto analyze(const Tournament & t) -> RetentiveAnalysis
        {
            RetentiveAnalysis a;
            a.minimal_sets = requirement_digraph(t).sink_components();
            for (auto s : a.minimal_sets)
                a.teq |= s;
            a.schwartz_ok = a.minimal_sets.size() == 1;
            return a;
        }
    };

    namespace detail
    {
        inline auto thread_solver() -> TeqSolver &
        {
            thread_local TeqSolver solver;
            return solver;
        }
    }

    /// Minimal tau-retentive sets and tau(T), using a per-thread memoising solver.
    inline auto teq(const Tournament & t) -> RetentiveAnalysis
    {
        return detail::thread_solver().analyze(t);
    }

    inline auto tau(const Tournament & t) -> VertexSet
    {
        return detail::thread_solver().tau(t);
    }

    inline auto requirement_digraph(const Tournament & t) -> RequirementDigraph
    {
        return detail::thread_solver().requirement_digraph(t);
    }

    /// Largest size the definitional oracle accepts.
    inline constexpr int bruteforce_max_size = 8;

    /// Definitional oracle for minimal tau-retentive sets.
    ///
    /// Tests every nonempty subset, in (size, mask) order, for retentiveness straight from the
    /// definition, recursing into itself for tau of the in-neighbourhoods. It memoises on the
    /// labeled code only and never touches the canonical labeling or the requirement digraph.
    class BruteForceTeq
    {
        std::unordered_map<std::string, std::vector<VertexSet>> memo_;

    public:
        auto minimal_sets(const Tournament & t) -> std::vector<VertexSet>
        {
            if (t.size() == 1)
                return {VertexSet::single(0)};

            auto code = serialize(t);
            if (auto it = memo_.find(code) ; it != memo_.end())
                return it->second;

            int n = t.size();
            std::array<VertexSet, max_vertices> required{};
            std::array<bool, max_vertices> constrained{};
            for (int v = 0 ; v < n ; ++v) {
                auto in = t.in(v);
                if (in.empty())
                    continue;
                constrained[v] = true;
                VertexSet sub_tau;
                for (auto s : minimal_sets(subtournament(t, in)))
                    sub_tau |= s;
                required[v] = lift(sub_tau, in);
            }

            std::vector<std::uint32_t> masks;
            for (std::uint32_t m = 1 ; m < (std::uint32_t{1} << n) ; ++m)
                masks.push_back(m);
            std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });

            std::vector<VertexSet> found;
            for (auto m : masks) {
                VertexSet a{m};
                bool retentive = true;
                for (int v : a)
                    if (constrained[v] && ! required[v].subset_of(a)) {
                        retentive = false;
                        break;
                    }
                if (! retentive)
                    continue;
                bool minimal = std::none_of(found.begin(), found.end(), [a](VertexSet f) { return f.subset_of(a); });
                if (minimal)
                    found.push_back(a);
            }
            std::sort(found.begin(), found.end());
            memo_.emplace(std::move(code), found);
            return found;
        }
    };

    /// Oracle entry point; refuses tournaments above bruteforce_max_size vertices.
    inline auto minimal_retentive_sets_bruteforce(const Tournament & t) -> std::vector<VertexSet>
    {
        if (t.size() > bruteforce_max_size)
            throw PreconditionError("brute-force oracle refuses size " + std::to_string(t.size()));
        thread_local BruteForceTeq oracle;
        return oracle.minimal_sets(t);
    }

    /// {a, b, c} is a directed triangle and no vertex dominates two of them. This is exactly the
    /// condition for {a, b, c} to be a minimal tau-retentive set.
    inline auto is_minimal_retentive_triple(const Tournament & t, int a, int b, int c) -> bool
    {
        detail::check_vertex(t, a);
        detail::check_vertex(t, b);
        detail::check_vertex(t, c);
        if (a == b || b == c || a == c)
            throw PreconditionError("triple vertices must be distinct");
        if (! is_directed_triangle(t, a, b, c))
            return false;
        auto triple = VertexSet::of({a, b, c});
        for (int x = 0 ; x < t.size() ; ++x)
            if ((t.out(x) & triple).size() >= 2)
                return false;
        return true;
    }

    /// Number of 3-subsets that are minimal tau-retentive sets; never more than one.
    inline auto count_size3_minimal_sets(const Tournament & t) -> int
    {
        int count = 0;
        for (int a = 0 ; a < t.size() ; ++a)
            for (int b = a + 1 ; b < t.size() ; ++b)
                for (int c = b + 1 ; c < t.size() ; ++c)
                    if (is_minimal_retentive_triple(t, a, b, c))
                        ++count;
        return count;
    }
}
