#pragma once

#include <tourn/errors.hpp>
#include <tourn/vertex_set.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace tourn
{
    /// A complete antisymmetric digraph on 1..16 vertices. Row v holds the out-neighbours of v.
    ///
    /// Every public constructor yields a valid tournament; orient() keeps it valid by flipping
    /// exactly one pair.
    class Tournament
    {
        int n_ = 1;
        std::array<std::uint32_t, max_vertices> out_{};

    public:
        /// The transitive tournament with i beating j whenever i < j.
        explicit Tournament(int n = 1) : n_(n)
        {
            if (n < 1 || n > max_vertices)
                throw PreconditionError("tournament size " + std::to_string(n) + " outside 1.." +
                        std::to_string(max_vertices));
            for (int i = 0 ; i < n ; ++i)
                out_[i] = VertexSet::first_n(n).bits() & ~VertexSet::first_n(i + 1).bits();
        }

        /// Builds from explicit out-neighbour masks; rejects anything that is not a tournament.
        static auto from_out_sets(std::span<const VertexSet> rows) -> Tournament
        {
            Tournament t(static_cast<int>(rows.size()));
            auto all = VertexSet::first_n(t.n_);
            for (int i = 0 ; i < t.n_ ; ++i) {
                if (! rows[i].subset_of(all) || rows[i].contains(i))
                    throw PreconditionError("row " + std::to_string(i) + " is not a valid out-neighbourhood");
                t.out_[i] = rows[i].bits();
            }
            for (int i = 0 ; i < t.n_ ; ++i)
                for (int j = i + 1 ; j < t.n_ ; ++j)
                    if (t.beats(i, j) == t.beats(j, i))
                        throw PreconditionError("pair " + std::to_string(i) + "," + std::to_string(j) +
                                " is not oriented exactly once");
            return t;
        }

        [[nodiscard]] auto size() const -> int { return n_; }
        [[nodiscard]] auto vertices() const -> VertexSet { return VertexSet::first_n(n_); }

        [[nodiscard]] auto beats(int u, int v) const -> bool { return (out_[u] >> v) & 1u; }

        [[nodiscard]] auto out(int v) const -> VertexSet { return VertexSet{out_[v]}; }
        [[nodiscard]] auto in(int v) const -> VertexSet { return vertices() - out(v) - VertexSet::single(v); }

        [[nodiscard]] auto out_degree(int v) const -> int { return out(v).size(); }
        [[nodiscard]] auto in_degree(int v) const -> int { return n_ - 1 - out_degree(v); }

        /// Makes u beat v (u != v), reversing the pair if needed.
        auto orient(int u, int v) -> void
        {
            out_[u] |= std::uint32_t{1} << v;
            out_[v] &= ~(std::uint32_t{1} << u);
        }

        friend auto operator== (const Tournament & a, const Tournament & b) -> bool
        {
            return a.n_ == b.n_ && a.out_ == b.out_;
        }
    };

    namespace detail
    {
        inline auto check_vertex(const Tournament & t, int v) -> void
        {
            if (v < 0 || v >= t.size())
                throw PreconditionError("vertex " + std::to_string(v) + " out of range for size " +
                        std::to_string(t.size()));
        }

        /// Inverse of k -> k(k-1)/2, or -1 when len is not triangular.
        inline auto triangular_root(std::size_t len) -> int
        {
            for (int k = 1 ; k <= max_vertices ; ++k) {
                auto tri = static_cast<std::size_t>(k * (k - 1) / 2);
                if (tri == len)
                    return k;
                if (tri > len)
                    break;
            }
            return -1;
        }
    }

    /// Reads an upper-triangle code: the bit for pair (i, j), i < j, in row-major order is '1' iff i beats j.
    ///
    /// The empty code is the one-vertex tournament. Lengths other than k(k-1)/2 for k <= 16 are
    /// rejected. With complement set, every bit is read inverted.
    inline auto parse(std::string_view code, bool complement = false) -> Tournament
    {
        int n = detail::triangular_root(code.size());
        if (n < 1)
            throw FormatError("code length " + std::to_string(code.size()) + " is not n(n-1)/2 for any n <= 16");

        Tournament t(n);
        std::size_t k = 0;
        for (int i = 0 ; i < n ; ++i)
            for (int j = i + 1 ; j < n ; ++j, ++k) {
                char c = code[k];
                if (c != '0' && c != '1')
                    throw FormatError(std::string("illegal character '") + c + "' at position " + std::to_string(k));
                if ((c == '1') != complement)
                    t.orient(i, j);
                else
                    t.orient(j, i);
            }
        return t;
    }

    inline auto serialize(const Tournament & t) -> std::string
    {
        std::string code;
        code.reserve(static_cast<std::size_t>(t.size() * (t.size() - 1) / 2));
        for (int i = 0 ; i < t.size() ; ++i)
            for (int j = i + 1 ; j < t.size() ; ++j)
                code += t.beats(i, j) ? '1' : '0';
        return code;
    }

    inline auto in_neighbors(const Tournament & t, int v) -> VertexSet
    {
        detail::check_vertex(t, v);
        return t.in(v);
    }

    inline auto out_neighbors(const Tournament & t, int v) -> VertexSet
    {
        detail::check_vertex(t, v);
        return t.out(v);
    }

    /// Induced subtournament; the members of s are renumbered 0..|s|-1 in increasing order.
    inline auto subtournament(const Tournament & t, VertexSet s) -> Tournament
    {
        if (s.empty())
            throw PreconditionError("subtournament of the empty set");
        if (! s.subset_of(t.vertices()))
            throw PreconditionError("subtournament set exceeds the host vertices");

        std::array<int, max_vertices> members{};
        int k = 0;
        for (int v : s)
            members[k++] = v;

        Tournament sub(k);
        for (int a = 0 ; a < k ; ++a)
            for (int b = a + 1 ; b < k ; ++b)
                if (! t.beats(members[a], members[b]))
                    sub.orient(b, a);
        return sub;
    }

    /// Maps a vertex set of subtournament(t, host_set) back to host labels.
    inline auto lift(VertexSet sub_set, VertexSet host_set) -> VertexSet
    {
        VertexSet lifted;
        int k = 0;
        for (int v : host_set) {
            if (sub_set.contains(k))
                lifted.insert(v);
            ++k;
        }
        return lifted;
    }

    /// Relabels t so that new vertex k is old vertex order[k]. order must be a permutation of 0..n-1.
    inline auto permuted(const Tournament & t, std::span<const int> order) -> Tournament
    {
        Tournament p(t.size());
        for (int a = 0 ; a < t.size() ; ++a)
            for (int b = a + 1 ; b < t.size() ; ++b)
                if (! t.beats(order[a], order[b]))
                    p.orient(b, a);
        return p;
    }

    /// Reverses every arc.
    inline auto converse(const Tournament & t) -> Tournament
    {
        Tournament c(t.size());
        for (int a = 0 ; a < t.size() ; ++a)
            for (int b = a + 1 ; b < t.size() ; ++b)
                if (t.beats(a, b))
                    c.orient(b, a);
        return c;
    }

    inline auto source(const Tournament & t) -> std::optional<int>
    {
        for (int v = 0 ; v < t.size() ; ++v)
            if (t.out_degree(v) == t.size() - 1)
                return v;
        return std::nullopt;
    }

    /// Vertices reachable from v along arcs (v itself included).
    inline auto reachable_from(const Tournament & t, int v) -> VertexSet
    {
        VertexSet seen = VertexSet::single(v), frontier = seen;
        while (! frontier.empty()) {
            VertexSet next;
            for (int u : frontier)
                next |= t.out(u);
            frontier = next - seen;
            seen |= next;
        }
        return seen;
    }

    /// No partition (A, B) with A beating B; computed as strong connectivity. One vertex counts as irreducible.
    inline auto is_irreducible(const Tournament & t) -> bool
    {
        // In a tournament, vertex 0 reaching everything forward and backward is strong connectivity.
        if (reachable_from(t, 0) != t.vertices())
            return false;
        VertexSet seen = VertexSet::single(0), frontier = seen;
        while (! frontier.empty()) {
            VertexSet next;
            for (int u : frontier)
                next |= t.in(u);
            frontier = next - seen;
            seen |= next;
        }
        return seen == t.vertices();
    }

    /// Acyclic tournaments are exactly those whose out-degrees are pairwise distinct.
    inline auto is_transitive(const Tournament & t) -> bool
    {
        std::uint32_t degrees = 0;
        for (int v = 0 ; v < t.size() ; ++v)
            degrees |= std::uint32_t{1} << t.out_degree(v);
        return std::popcount(degrees) == t.size();
    }

    inline auto is_transitive_on(const Tournament & t, VertexSet s) -> bool
    {
        std::uint32_t degrees = 0;
        for (int v : s)
            degrees |= std::uint32_t{1} << (t.out(v) & s).size();
        return std::popcount(degrees) == s.size();
    }

    /// Every in-neighbourhood and every out-neighbourhood induces a transitive subtournament.
    inline auto is_locally_transitive(const Tournament & t) -> bool
    {
        for (int v = 0 ; v < t.size() ; ++v)
            if (! is_transitive_on(t, t.in(v)) || ! is_transitive_on(t, t.out(v)))
                return false;
        return true;
    }

    inline auto is_directed_triangle(const Tournament & t, int a, int b, int c) -> bool
    {
        return (t.beats(a, b) && t.beats(b, c) && t.beats(c, a)) ||
            (t.beats(b, a) && t.beats(c, b) && t.beats(a, c));
    }
}
