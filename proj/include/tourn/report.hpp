#pragma once

#include <tourn/analysis.hpp>

#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace tourn
{
    /// Reads one upper-triangle code per line. Blank lines and lines starting with '#' are
    /// skipped, so census reports can be fed back in. Errors carry the 1-based line number.
    inline auto read_tournaments(std::istream & in, bool complement = false) -> std::vector<Tournament>
    {
        std::vector<Tournament> out;
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            while (! line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
                line.pop_back();
            if (line.empty() || line.front() == '#')
                continue;
            try {
                out.push_back(parse(line, complement));
            }
            catch (const FormatError & e) {
                throw FormatError(e.what(), number);
            }
        }
        return out;
    }

    namespace detail
    {
        inline auto sets_json(const std::vector<VertexSet> & sets) -> nlohmann::json
        {
            auto arr = nlohmann::json::array();
            for (auto s : sets)
                arr.push_back(s.to_vector());
            return arr;
        }
    }

    /// {"code":...,"minimal_sets":[[...],...],"tau":[...],"schwartz":true}
    inline auto analysis_record(const Tournament & t, const RetentiveAnalysis & a) -> std::string
    {
        nlohmann::json j;
        j["code"] = serialize(t);
        j["minimal_sets"] = detail::sets_json(a.minimal_sets);
        j["tau"] = a.teq.to_vector();
        j["schwartz"] = a.schwartz_ok;
        return j.dump();
    }

    inline auto coexistence_record(const CoexistenceRecord & r) -> std::string
    {
        nlohmann::json j;
        j["code"] = r.tournament.code();
        j["minimal_sets"] = detail::sets_json(r.minimal_sets);
        j["sizes"] = r.sizes;
        auto classes = nlohmann::json::array();
        for (const auto & c : r.classes)
            classes.push_back(c.code());
        j["classes"] = classes;
        auto audit = nlohmann::json::array();
        for (const auto & f : r.audit)
            audit.push_back({{"rule", f.rule}, {"detail", f.detail}});
        j["audit"] = audit;
        return j.dump();
    }

    /// "# ..." header lines, then one survivor code per line.
    inline auto write_report(std::ostream & out, const FilterReport & r) -> void
    {
        out << "# beta n=" << r.n << " mode=" << to_string(r.mode) << "\n";
        out << "# total=" << r.total << " survivors=" << r.survivors.size();
        for (const auto & [name, count] : r.eliminated_by)
            out << " eliminated." << name << "=" << count;
        out << " all-members-bound-survivors=" << r.all_members_bound_survivors << "\n";
        for (const auto & k : r.survivors)
            out << k.code() << "\n";
    }

    /// "# <code>", the captain arcs, then "verdict ...".
    inline auto write_domgraph(std::ostream & out, const Tournament & t) -> void
    {
        auto g = domination_graph(t);
        out << "# " << serialize(t) << "\n" << to_arc_list(g) << "verdict " << to_string(classify(g)) << "\n";
    }

    inline auto write_conjecture(std::ostream & out, const ConjectureReport & r, int which) -> void
    {
        const auto & hits = r.counterexamples[static_cast<std::size_t>(which - 1)];
        out << "# conjecture " << which << " n<=" << r.n_max << " examined=" << r.examined
            << " counterexamples=" << hits.size() << "\n";
        for (const auto & c : hits)
            out << c.code << " " << c.detail << " oracle=" << (c.confirmed_by_oracle ? "confirmed" : "refuted") << "\n";
    }
}
