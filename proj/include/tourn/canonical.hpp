#pragma once

#include <tourn/tournament.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace tourn
{
    namespace detail
    {
        /// Row k of the upper-triangle code as an integer whose most significant bit is pair (k, k+1).
        /// Comparing these rows lexicographically is comparing the codes lexicographically.
        using CodeRows = std::array<std::uint16_t, max_vertices - 1>;

        inline auto rows_of(const Tournament & t) -> CodeRows
        {
            CodeRows rows{};
            int n = t.size();
            for (int k = 0 ; k + 1 < n ; ++k) {
                std::uint32_t row = 0;
                for (int j = k + 1 ; j < n ; ++j)
                    row = (row << 1) | (t.beats(k, j) ? 1u : 0u);
                rows[k] = static_cast<std::uint16_t>(row);
            }
            return rows;
        }

        /// Search for the permutation whose relabeling has the lexicographically least code.
        ///
        /// Positions are filled left to right. Once positions 0..k-1 are fixed, the unplaced vertices
        /// form an ordered sequence of cells (vertices that agree on every placed vertex), and the
        /// smallest row k obtainable by putting vertex c at position k is, cell by cell, all of c's
        /// in-neighbours (zeros) followed by its out-neighbours (ones). Only candidates achieving the
        /// least row are explored; the cells are then split by c's in/out neighbourhoods.
        class CanonicalSearch
        {
            const Tournament & t_;
            int n_;
            std::array<std::uint16_t, max_vertices> cur_rows_{}, best_rows_{};
            std::array<int, max_vertices> cur_order_{}, best_order_{};
            bool have_best_ = false;

            // Root-level orbit bookkeeping from automorphisms discovered at leaves.
            std::array<int, max_vertices> orbit_{};

            auto orbit_root(int v) -> int
            {
                while (orbit_[v] != v)
                    v = orbit_[v] = orbit_[orbit_[v]];
                return v;
            }

            auto prefix_compare(int upto) const -> std::strong_ordering
            {
                for (int k = 0 ; k <= upto ; ++k)
                    if (auto c = cur_rows_[k] <=> best_rows_[k]; c != 0)
                        return c;
                return std::strong_ordering::equal;
            }

            struct Cells
            {
                std::array<std::uint32_t, max_vertices> mask{};
                int count = 0;
            };

            auto row_for(const Cells & cells, int c) const -> std::uint32_t
            {
                std::uint32_t row = 0;
                std::uint32_t in = t_.in(c).bits(), out = t_.out(c).bits();
                for (int i = 0 ; i < cells.count ; ++i) {
                    std::uint32_t cell = cells.mask[i];
                    if (i == 0)
                        cell &= ~(std::uint32_t{1} << c);
                    int a = std::popcount(cell & in), b = std::popcount(cell & out);
                    row = (row << (a + b)) | ((std::uint32_t{1} << b) - 1);
                }
                return row;
            }

            auto refine(const Cells & cells, int c) const -> Cells
            {
                Cells next;
                std::uint32_t in = t_.in(c).bits(), out = t_.out(c).bits();
                for (int i = 0 ; i < cells.count ; ++i) {
                    std::uint32_t cell = cells.mask[i];
                    if (i == 0)
                        cell &= ~(std::uint32_t{1} << c);
                    if (cell & in)
                        next.mask[next.count++] = cell & in;
                    if (cell & out)
                        next.mask[next.count++] = cell & out;
                }
                return next;
            }

            auto leaf() -> void
            {
                if (! have_best_ || prefix_compare(n_ - 2) < 0) {
                    best_rows_ = cur_rows_;
                    best_order_ = cur_order_;
                    have_best_ = true;
                    return;
                }
                if (prefix_compare(n_ - 2) == 0) {
                    // cur_order_[k] -> best_order_[k] is an automorphism.
                    for (int k = 0 ; k < n_ ; ++k) {
                        int a = orbit_root(cur_order_[k]), b = orbit_root(best_order_[k]);
                        if (a != b)
                            orbit_[std::max(a, b)] = std::min(a, b);
                    }
                }
            }

            auto search(int level, const Cells & cells) -> void
            {
                if (level == n_ - 1) {
                    cur_order_[level] = std::countr_zero(cells.mask[0]);
                    leaf();
                    return;
                }

                std::array<std::uint32_t, max_vertices> rows{};
                std::uint32_t least = ~std::uint32_t{0};
                for (int c : VertexSet{cells.mask[0]}) {
                    rows[c] = row_for(cells, c);
                    least = std::min(least, rows[c]);
                }

                cur_rows_[level] = static_cast<std::uint16_t>(least);
                if (have_best_ && prefix_compare(level) > 0)
                    return;

                for (int c : VertexSet{cells.mask[0]}) {
                    if (rows[c] != least)
                        continue;
                    cur_order_[level] = c;
                    cur_rows_[level] = static_cast<std::uint16_t>(least);
                    search(level + 1, refine(cells, c));
                }
            }

        public:
            explicit CanonicalSearch(const Tournament & t) : t_(t), n_(t.size())
            {
                for (int v = 0 ; v < n_ ; ++v)
                    orbit_[v] = v;
            }

            /// Runs the search, optionally forcing position 0 to hold `first`.
            auto run(std::optional<int> first) -> void
            {
                if (n_ == 1) {
                    best_order_[0] = 0;
                    have_best_ = true;
                    return;
                }

                Cells all;
                all.mask[0] = t_.vertices().bits();
                all.count = 1;

                std::array<std::uint32_t, max_vertices> rows{};
                std::uint32_t least = ~std::uint32_t{0};
                VertexSet candidates = first ? VertexSet::single(*first) : t_.vertices();
                for (int c : candidates) {
                    rows[c] = row_for(all, c);
                    least = std::min(least, rows[c]);
                }

                for (int c : candidates) {
                    if (rows[c] != least || orbit_root(c) != c)
                        continue;
                    cur_order_[0] = c;
                    cur_rows_[0] = static_cast<std::uint16_t>(least);
                    if (have_best_ && prefix_compare(0) > 0)
                        continue;
                    search(1, refine(all, c));
                }
            }

            [[nodiscard]] auto order() const -> const std::array<int, max_vertices> & { return best_order_; }
        };
    }

    /// A tournament relabeled to its lexicographically least code, together with the relabeling.
    struct CanonicalForm
    {
        Tournament tournament;
        /// Canonical vertex k is original vertex order[k].
        std::array<int, max_vertices> order{};
    };

    /// With `first` set, the least code is taken only over relabelings that put `first` at position 0.
    inline auto canonical_form(const Tournament & t, std::optional<int> first = std::nullopt) -> CanonicalForm
    {
        if (first)
            detail::check_vertex(t, *first);
        detail::CanonicalSearch search(t);
        search.run(first);
        CanonicalForm form{t, search.order()};
        form.tournament = permuted(t, std::span<const int>(form.order.data(), static_cast<std::size_t>(t.size())));
        return form;
    }

    /// Isomorphism certificate: the least upper-triangle code over all relabelings.
    class CanonicalKey
    {
        int n_ = 1;
        detail::CodeRows rows_{};

    public:
        CanonicalKey() = default;

        /// Wraps a tournament that is already in canonical labeling.
        static auto of_canonical(const Tournament & canonical) -> CanonicalKey
        {
            CanonicalKey key;
            key.n_ = canonical.size();
            key.rows_ = detail::rows_of(canonical);
            return key;
        }

        [[nodiscard]] auto size() const -> int { return n_; }

        [[nodiscard]] auto tournament() const -> Tournament
        {
            Tournament t(n_);
            for (int k = 0 ; k + 1 < n_ ; ++k)
                for (int j = k + 1 ; j < n_ ; ++j)
                    if (! ((rows_[k] >> (n_ - 1 - j)) & 1u))
                        t.orient(j, k);
            return t;
        }

        [[nodiscard]] auto code() const -> std::string { return serialize(tournament()); }

        [[nodiscard]] auto hash() const -> std::size_t
        {
            std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ull;
            for (int k = 0 ; k + 1 < n_ ; ++k)
                h = (h ^ rows_[k]) * 0x100000001b3ull + (h >> 29);
            return h;
        }

        friend auto operator== (const CanonicalKey &, const CanonicalKey &) -> bool = default;
        friend auto operator<=> (const CanonicalKey &, const CanonicalKey &) = default;
    };

    struct CanonicalKeyHash
    {
        auto operator() (const CanonicalKey & k) const -> std::size_t { return k.hash(); }
    };

    inline auto canonical_key(const Tournament & t) -> CanonicalKey
    {
        return CanonicalKey::of_canonical(canonical_form(t).tournament);
    }

    inline auto is_isomorphic(const Tournament & a, const Tournament & b) -> bool
    {
        return a.size() == b.size() && canonical_key(a) == canonical_key(b);
    }

    namespace detail
    {
        inline auto code_less(const Tournament & a, const Tournament & b) -> bool
        {
            if (a.size() != b.size())
                return a.size() < b.size();
            return rows_of(a) < rows_of(b);
        }

        /// Splits [0, count) into `jobs` contiguous chunks and runs fn(begin, end, worker) on each.
        template <typename Fn_>
        auto parallel_chunks(std::size_t count, int jobs, Fn_ && fn) -> void
        {
            if (jobs <= 1 || count < 2) {
                fn(std::size_t{0}, count, 0);
                return;
            }
            auto workers = static_cast<std::size_t>(jobs);
            std::vector<std::thread> threads;
            for (std::size_t w = 0 ; w < workers ; ++w) {
                std::size_t b = count * w / workers, e = count * (w + 1) / workers;
                threads.emplace_back([&fn, b, e, w] { fn(b, e, static_cast<int>(w)); });
            }
            for (auto & th : threads)
                th.join();
        }
    }

    /// Isomorph-free one-vertex extensions of a canonical tournament.
    ///
    /// A child is kept when the added vertex lies in the automorphism orbit of the child's canonical
    /// first vertex, so each class of size n+1 has exactly one accepted parent class; repeats from
    /// automorphic extensions of the same parent are removed locally. Children come back canonical
    /// and sorted by code.
    inline auto canonical_children(const Tournament & parent) -> std::vector<Tournament>
    {
        int m = parent.size();
        if (m + 1 > max_vertices)
            throw PreconditionError("extension beyond the vertex limit");

        std::vector<Tournament> kids;
        for (std::uint32_t beaters = 0 ; beaters < (std::uint32_t{1} << m) ; ++beaters) {
            // The new vertex must have maximal in-degree to be a canonical first vertex.
            int new_in = std::popcount(beaters);
            bool viable = true;
            for (int i = 0 ; i < m && viable ; ++i)
                if (parent.in_degree(i) + (((beaters >> i) & 1u) ? 0 : 1) > new_in)
                    viable = false;
            if (! viable)
                continue;

            Tournament child(m + 1);
            for (int i = 0 ; i < m ; ++i)
                for (int j = i + 1 ; j < m ; ++j)
                    if (! parent.beats(i, j))
                        child.orient(j, i);
            for (int i = 0 ; i < m ; ++i)
                if (! ((beaters >> i) & 1u))
                    child.orient(m, i);

            auto full = canonical_form(child);
            auto pinned = canonical_form(child, m);
            if (full.tournament == pinned.tournament)
                kids.push_back(full.tournament);
        }

        std::sort(kids.begin(), kids.end(), detail::code_less);
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        return kids;
    }

    struct EnumerateOptions
    {
        bool irreducible_only = false;
        int jobs = 1;
    };

    /// Largest size enumerate() accepts; 9 and 10 take minutes to hours.
    inline constexpr int max_enumeration_size = 10;

    /// One canonical representative per isomorphism class of n-vertex tournaments, ascending by code.
    inline auto enumerate(int n, EnumerateOptions options = {}) -> std::vector<Tournament>
    {
        if (n < 1 || n > max_enumeration_size)
            throw PreconditionError("enumeration size " + std::to_string(n) + " outside 1.." +
                    std::to_string(max_enumeration_size));

        std::vector<Tournament> level{Tournament(1)};
        for (int m = 2 ; m <= n ; ++m) {
            std::vector<std::vector<Tournament>> per_parent(level.size());
            detail::parallel_chunks(level.size(), options.jobs, [&](std::size_t b, std::size_t e, int) {
                for (std::size_t i = b ; i < e ; ++i)
                    per_parent[i] = canonical_children(level[i]);
            });

            std::vector<Tournament> next;
            for (auto & kids : per_parent)
                next.insert(next.end(), kids.begin(), kids.end());
            std::sort(next.begin(), next.end(), detail::code_less);
            level = std::move(next);
        }

        if (options.irreducible_only)
            std::erase_if(level, [](const Tournament & t) { return ! is_irreducible(t); });
        return level;
    }

    /// Streams the n-vertex classes without materialising them: the (n-1)-vertex classes are
    /// enumerated, then each worker extends its share of parents and calls
    /// visit(child, worker) for every accepted child. Order is deterministic per worker only.
    template <typename Visit_>
    auto for_each_class(int n, int jobs, Visit_ && visit) -> void
    {
        if (n < 1 || n > max_enumeration_size)
            throw PreconditionError("enumeration size " + std::to_string(n) + " outside 1.." +
                    std::to_string(max_enumeration_size));
        if (n == 1) {
            visit(Tournament(1), 0);
            return;
        }
        auto parents = enumerate(n - 1, {false, jobs});
        detail::parallel_chunks(parents.size(), jobs, [&](std::size_t b, std::size_t e, int worker) {
            for (std::size_t i = b ; i < e ; ++i)
                for (const auto & child : canonical_children(parents[i]))
                    visit(child, worker);
        });
    }
}

template <>
struct std::hash<tourn::CanonicalKey>
{
    auto operator() (const tourn::CanonicalKey & k) const -> std::size_t { return k.hash(); }
};
