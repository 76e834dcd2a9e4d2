#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

namespace tourn
{
    /// Maximum number of vertices a Tournament may carry; every vertex set fits one word.
    inline constexpr int max_vertices = 16;

    /// A subset of the vertices {0, ..., n-1} of some host tournament, stored as a bit mask.
    class VertexSet
    {
        std::uint32_t bits_ = 0;

    public:
        class iterator
        {
            std::uint32_t rest_ = 0;

        public:
            using iterator_category = std::forward_iterator_tag;
            using value_type = int;
            using difference_type = std::ptrdiff_t;
            using pointer = const int *;
            using reference = int;

            constexpr iterator() = default;
            constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}

            constexpr auto operator* () const -> int { return std::countr_zero(rest_); }
            constexpr auto operator++ () -> iterator & { rest_ &= rest_ - 1; return *this; }
            constexpr auto operator++ (int) -> iterator { auto old = *this; ++*this; return old; }
            constexpr auto operator== (const iterator &) const -> bool = default;
        };

        constexpr VertexSet() = default;
        constexpr explicit VertexSet(std::uint32_t bits) : bits_(bits) {}

        static constexpr auto single(int v) -> VertexSet { return VertexSet{std::uint32_t{1} << v}; }

        /// The set {0, ..., n-1}.
        static constexpr auto first_n(int n) -> VertexSet
        {
            return VertexSet{n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1};
        }

        template <typename Range_>
        static auto of(const Range_ & vertices) -> VertexSet
        {
            VertexSet s;
            for (int v : vertices)
                s.insert(v);
            return s;
        }

        static auto of(std::initializer_list<int> vertices) -> VertexSet
        {
            VertexSet s;
            for (int v : vertices)
                s.insert(v);
            return s;
        }

        [[nodiscard]] constexpr auto bits() const -> std::uint32_t { return bits_; }
        [[nodiscard]] constexpr auto size() const -> int { return std::popcount(bits_); }
        [[nodiscard]] constexpr auto empty() const -> bool { return bits_ == 0; }
        [[nodiscard]] constexpr auto contains(int v) const -> bool { return (bits_ >> v) & 1u; }
        [[nodiscard]] constexpr auto first() const -> int { return std::countr_zero(bits_); }
        [[nodiscard]] constexpr auto subset_of(VertexSet other) const -> bool { return (bits_ & ~other.bits_) == 0; }

        constexpr auto insert(int v) -> void { bits_ |= std::uint32_t{1} << v; }
        constexpr auto erase(int v) -> void { bits_ &= ~(std::uint32_t{1} << v); }

        [[nodiscard]] constexpr auto begin() const -> iterator { return iterator{bits_}; }
        [[nodiscard]] constexpr auto end() const -> iterator { return iterator{0}; }

        [[nodiscard]] auto to_vector() const -> std::vector<int> { return {begin(), end()}; }

        constexpr auto operator|= (VertexSet o) -> VertexSet & { bits_ |= o.bits_; return *this; }
        constexpr auto operator&= (VertexSet o) -> VertexSet & { bits_ &= o.bits_; return *this; }
        constexpr auto operator-= (VertexSet o) -> VertexSet & { bits_ &= ~o.bits_; return *this; }

        friend constexpr auto operator| (VertexSet a, VertexSet b) -> VertexSet { return VertexSet{a.bits_ | b.bits_}; }
        friend constexpr auto operator& (VertexSet a, VertexSet b) -> VertexSet { return VertexSet{a.bits_ & b.bits_}; }
        friend constexpr auto operator- (VertexSet a, VertexSet b) -> VertexSet { return VertexSet{a.bits_ & ~b.bits_}; }

        friend constexpr auto operator== (VertexSet, VertexSet) -> bool = default;

        /// Orders by cardinality, then by mask value.
        friend constexpr auto operator<=> (VertexSet a, VertexSet b) -> std::strong_ordering
        {
            if (auto c = a.size() <=> b.size(); c != 0)
                return c;
            return a.bits_ <=> b.bits_;
        }
    };

    /// Comma separated ascending vertex list, e.g. "0,2,5"; empty set gives "".
    inline auto to_string(VertexSet s) -> std::string
    {
        std::string out;
        for (int v : s) {
            if (! out.empty())
                out += ',';
            out += std::to_string(v);
        }
        return out;
    }
}
