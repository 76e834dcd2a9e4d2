#pragma once

#include <tourn/tournament.hpp>

#include <algorithm>
#include <array>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace tourn
{
    /// Directed domination graph: an arc u -> v whenever u is the captain of v, i.e. u beats v and
    /// every other in-neighbour of v. Each vertex has at most one captain.
    class DominationGraph
    {
        int n_ = 0;
        std::array<int, max_vertices> captain_{};

    public:
        DominationGraph() { captain_.fill(-1); }

        explicit DominationGraph(int n) : n_(n) { captain_.fill(-1); }

        [[nodiscard]] auto size() const -> int { return n_; }

        [[nodiscard]] auto captain_of(int v) const -> std::optional<int>
        {
            return captain_[v] < 0 ? std::nullopt : std::optional<int>(captain_[v]);
        }

        auto set_captain(int v, int u) -> void { captain_[v] = u; }

        [[nodiscard]] auto has_arc(int u, int v) const -> bool { return captain_[v] == u; }

        [[nodiscard]] auto slaves(int u) const -> VertexSet
        {
            VertexSet s;
            for (int v = 0 ; v < n_ ; ++v)
                if (captain_[v] == u)
                    s.insert(v);
            return s;
        }

        /// Neighbours in the undirected view.
        [[nodiscard]] auto neighbors(int v) const -> VertexSet
        {
            auto s = slaves(v);
            if (captain_[v] >= 0)
                s.insert(captain_[v]);
            return s;
        }

        [[nodiscard]] auto arc_count() const -> int
        {
            int c = 0;
            for (int v = 0 ; v < n_ ; ++v)
                c += captain_[v] >= 0;
            return c;
        }

        [[nodiscard]] auto empty() const -> bool { return arc_count() == 0; }

        /// (captain, slave) pairs ordered by slave.
        [[nodiscard]] auto arcs() const -> std::vector<std::pair<int, int>>
        {
            std::vector<std::pair<int, int>> out;
            for (int v = 0 ; v < n_ ; ++v)
                if (captain_[v] >= 0)
                    out.emplace_back(captain_[v], v);
            return out;
        }

        friend auto operator== (const DominationGraph &, const DominationGraph &) -> bool = default;
    };

    inline auto captain_of(const Tournament & t, int v) -> std::optional<int>
    {
        auto in = t.in(v);
        for (int u : in)
            if ((in - VertexSet::single(u)).subset_of(t.out(u)))
                return u;
        return std::nullopt;
    }

    inline auto domination_graph(const Tournament & t) -> DominationGraph
    {
        DominationGraph g(t.size());
        for (int v = 0 ; v < t.size() ; ++v)
            if (auto u = captain_of(t, v))
                g.set_captain(v, *u);
        return g;
    }

    /// Domination graph of t[s], expressed in t's labels (vertices outside s are isolated).
    inline auto induced_domination_graph(const Tournament & t, VertexSet s) -> DominationGraph
    {
        auto members = s.to_vector();
        auto inner = domination_graph(subtournament(t, s));
        DominationGraph g(t.size());
        for (auto [u, v] : inner.arcs())
            g.set_captain(members[v], members[u]);
        return g;
    }

    /// Every directed cycle of the domination digraph, each rotated to start at its least vertex.
    inline auto directed_cycles(const DominationGraph & g) -> std::vector<std::vector<int>>
    {
        // In-degree is at most one, so walking captains backwards from any vertex either stops or
        // enters a cycle.
        std::vector<std::vector<int>> cycles;
        VertexSet on_cycle;
        for (int start = 0 ; start < g.size() ; ++start) {
            VertexSet visited;
            int v = start;
            while (v >= 0 && ! visited.contains(v)) {
                visited.insert(v);
                auto c = g.captain_of(v);
                v = c ? *c : -1;
            }
            if (v < 0 || on_cycle.contains(v))
                continue;
            std::vector<int> cycle;
            int w = v;
            do {
                cycle.push_back(w);
                on_cycle.insert(w);
                w = *g.captain_of(w);
            } while (w != v);
            // Walking captains runs against the arcs; reverse to follow u -> slave.
            std::reverse(cycle.begin(), cycle.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            cycles.push_back(std::move(cycle));
        }
        return cycles;
    }

    /// A directed cycle through every vertex, if the domination digraph has one.
    inline auto has_spanning_directed_cycle(const DominationGraph & g) -> bool
    {
        auto cycles = directed_cycles(g);
        return cycles.size() == 1 && static_cast<int>(cycles.front().size()) == g.size();
    }

    enum class StructureKind
    {
        empty,
        spiked_odd_cycle,
        caterpillar_forest
    };

    inline auto to_string(StructureKind k) -> std::string
    {
        switch (k) {
            case StructureKind::empty: return "empty";
            case StructureKind::spiked_odd_cycle: return "spiked-odd-cycle";
            case StructureKind::caterpillar_forest: return "caterpillar-forest";
        }
        return "?";
    }

    /// Shape of an undirected domination graph with its witness: the odd cycle in cyclic order,
    /// or one spine per non-trivial tree (a spine may be empty for a single edge).
    struct StructureVerdict
    {
        StructureKind kind = StructureKind::empty;
        std::vector<int> cycle;
        std::vector<std::vector<int>> spines;
    };

    namespace detail
    {
        inline auto components(const DominationGraph & g) -> std::vector<VertexSet>
        {
            std::vector<VertexSet> comps;
            VertexSet seen;
            for (int s = 0 ; s < g.size() ; ++s) {
                if (seen.contains(s))
                    continue;
                VertexSet comp = VertexSet::single(s), frontier = comp;
                while (! frontier.empty()) {
                    VertexSet next;
                    for (int v : frontier)
                        next |= g.neighbors(v);
                    frontier = next - comp;
                    comp |= next;
                }
                seen |= comp;
                comps.push_back(comp);
            }
            return comps;
        }

        inline auto edge_count(const DominationGraph & g, VertexSet comp) -> int
        {
            int e = 0;
            for (int v : comp)
                e += g.captain_of(v).has_value();
            return e;
        }

        inline auto describe(const DominationGraph & g, VertexSet comp) -> std::string
        {
            std::string s = "{" + to_string(comp) + "} arcs";
            for (auto [u, v] : g.arcs())
                if (comp.contains(v))
                    s += " " + std::to_string(u) + ">" + std::to_string(v);
            return s;
        }

        /// Vertices of comp with degree >= 2 inside comp, i.e. comp with its leaves removed.
        inline auto strip_leaves(const DominationGraph & g, VertexSet comp) -> VertexSet
        {
            VertexSet core;
            for (int v : comp)
                if ((g.neighbors(v) & comp).size() >= 2)
                    core.insert(v);
            return core;
        }

        /// Orders a path given by its vertex set; nullopt when the set does not induce a path.
        inline auto as_path(const DominationGraph & g, VertexSet path) -> std::optional<std::vector<int>>
        {
            if (path.empty())
                return std::vector<int>{};
            int start = -1;
            for (int v : path) {
                int d = (g.neighbors(v) & path).size();
                if (d > 2)
                    return std::nullopt;
                if (d <= 1 && start < 0)
                    start = v;
            }
            if (start < 0)
                return std::nullopt;
            std::vector<int> order{start};
            VertexSet used = VertexSet::single(start);
            for (;;) {
                auto next = (g.neighbors(order.back()) & path) - used;
                if (next.empty())
                    break;
                order.push_back(next.first());
                used.insert(next.first());
            }
            if (used != path)
                return std::nullopt;
            return order;
        }
    }

    /// Checks the domination graph against the only two shapes a tournament can produce: a spiked
    /// odd cycle plus isolated vertices, or a forest of caterpillars. Throws StructureViolation with
    /// the offending component otherwise.
    inline auto classify(const DominationGraph & g) -> StructureVerdict
    {
        StructureVerdict verdict;
        if (g.empty())
            return verdict;

        auto comps = detail::components(g);
        std::vector<VertexSet> cyclic, trees;
        for (auto c : comps) {
            int e = detail::edge_count(g, c);
            if (e >= c.size())
                cyclic.push_back(c);
            else if (c.size() > 1)
                trees.push_back(c);
        }

        if (! cyclic.empty()) {
            if (cyclic.size() > 1 || ! trees.empty())
                throw StructureViolation("cycle component alongside other non-trivial components: " +
                        detail::describe(g, cyclic.front()));
            auto comp = cyclic.front();
            if (detail::edge_count(g, comp) != comp.size())
                throw StructureViolation("component with more than one cycle: " + detail::describe(g, comp));
            auto core = detail::strip_leaves(g, comp);
            for (int v : core)
                if ((g.neighbors(v) & core).size() != 2)
                    throw StructureViolation("spikes longer than one edge: " + detail::describe(g, comp));
            std::vector<int> cycle{core.first()};
            VertexSet used = VertexSet::single(core.first());
            for (;;) {
                auto next = (g.neighbors(cycle.back()) & core) - used;
                if (next.empty())
                    break;
                cycle.push_back(next.first());
                used.insert(next.first());
            }
            if (used != core)
                throw StructureViolation("cycle core is disconnected: " + detail::describe(g, comp));
            if (cycle.size() % 2 == 0)
                throw StructureViolation("even cycle: " + detail::describe(g, comp));
            verdict.kind = StructureKind::spiked_odd_cycle;
            verdict.cycle = std::move(cycle);
            return verdict;
        }

        verdict.kind = StructureKind::caterpillar_forest;
        for (auto comp : trees) {
            auto spine = detail::as_path(g, detail::strip_leaves(g, comp));
            if (! spine)
                throw StructureViolation("tree is not a caterpillar: " + detail::describe(g, comp));
            verdict.spines.push_back(std::move(*spine));
        }
        return verdict;
    }

    inline auto to_string(const StructureVerdict & v) -> std::string
    {
        std::string s = to_string(v.kind);
        auto list = [](const std::vector<int> & xs) {
            std::string out;
            for (std::size_t i = 0 ; i < xs.size() ; ++i)
                out += (i ? "," : "") + std::to_string(xs[i]);
            return out;
        };
        if (v.kind == StructureKind::spiked_odd_cycle)
            s += " cycle=" + list(v.cycle);
        else if (v.kind == StructureKind::caterpillar_forest) {
            s += " spines=";
            for (std::size_t i = 0 ; i < v.spines.size() ; ++i)
                s += (i ? ";" : "") + std::string("[") + list(v.spines[i]) + "]";
        }
        return s;
    }

    /// One "u>v" line per captain arc.
    inline auto to_arc_list(const DominationGraph & g) -> std::string
    {
        std::string s;
        for (auto [u, v] : g.arcs())
            s += std::to_string(u) + ">" + std::to_string(v) + "\n";
        return s;
    }

    /// The directed triangle {a, b, c} among v's in-neighbours that no other in-neighbour of v
    /// dominates twice. There is never more than one; a second hit throws StructureViolation.
    inline auto tri_captain(const Tournament & t, int v) -> std::optional<VertexSet>
    {
        detail::check_vertex(t, v);
        auto in = t.in(v).to_vector();
        auto in_set = t.in(v);
        std::optional<VertexSet> found;
        for (std::size_t i = 0 ; i < in.size() ; ++i)
            for (std::size_t j = i + 1 ; j < in.size() ; ++j)
                for (std::size_t k = j + 1 ; k < in.size() ; ++k) {
                    int a = in[i], b = in[j], c = in[k];
                    if (! is_directed_triangle(t, a, b, c))
                        continue;
                    auto triple = VertexSet::of({a, b, c});
                    bool ok = true;
                    for (int x : in_set - triple)
                        if ((t.out(x) & triple).size() >= 2) {
                            ok = false;
                            break;
                        }
                    if (! ok)
                        continue;
                    if (found)
                        throw StructureViolation("two tri-captains {" + to_string(*found) + "} and {" +
                                to_string(triple) + "} of vertex " + std::to_string(v));
                    found = triple;
                }
        return found;
    }

    /// head -> center -> leaves, where head is the centre's only in-neighbour in the domination digraph.
    struct Broom
    {
        int head = -1;
        int center = -1;
        std::vector<int> leaves;

        friend auto operator== (const Broom &, const Broom &) -> bool = default;
    };

    /// Every broom whose centre has exactly k slaves.
    inline auto find_brooms(const DominationGraph & g, int k) -> std::vector<Broom>
    {
        if (k < 1)
            throw PreconditionError("broom order must be at least 1");
        std::vector<Broom> brooms;
        for (int v = 0 ; v < g.size() ; ++v) {
            auto head = g.captain_of(v);
            auto leaves = g.slaves(v);
            if (head && leaves.size() == k)
                brooms.push_back(Broom{*head, v, leaves.to_vector()});
        }
        return brooms;
    }

    namespace detail
    {
        inline auto tree_distances(const DominationGraph & g, int from) -> std::array<int, max_vertices>
        {
            std::array<int, max_vertices> dist;
            dist.fill(-1);
            dist[from] = 0;
            std::queue<int> q;
            q.push(from);
            while (! q.empty()) {
                int v = q.front();
                q.pop();
                for (int w : g.neighbors(v))
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        q.push(w);
                    }
            }
            return dist;
        }
    }

    /// Same tree, and every other vertex of that tree is at distances of equal parity from both.
    /// The undirected view must be a forest.
    inline auto are_siblings(const DominationGraph & g, int v, int u) -> bool
    {
        if (v == u)
            throw PreconditionError("sibling test needs two distinct vertices");
        if (v < 0 || u < 0 || v >= g.size() || u >= g.size())
            throw PreconditionError("sibling test vertex out of range");
        for (auto comp : detail::components(g))
            if (detail::edge_count(g, comp) >= comp.size())
                throw PreconditionError("sibling test needs a forest");

        auto dv = detail::tree_distances(g, v), du = detail::tree_distances(g, u);
        if (dv[u] < 0)
            return false;
        for (int w = 0 ; w < g.size() ; ++w) {
            if (w == v || w == u || dv[w] < 0)
                continue;
            if ((dv[w] - du[w]) % 2 != 0)
                return false;
        }
        return true;
    }

    enum class ArcParity
    {
        aligned,
        opposed
    };

    /// aligned iff (a beats b) == (c beats d).
    inline auto arc_parity(const Tournament & t, int a, int b, int c, int d) -> ArcParity
    {
        for (int x : {a, b, c, d})
            detail::check_vertex(t, x);
        if (a == b || c == d)
            throw PreconditionError("arc parity needs two proper pairs");
        return t.beats(a, b) == t.beats(c, d) ? ArcParity::aligned : ArcParity::opposed;
    }
}
