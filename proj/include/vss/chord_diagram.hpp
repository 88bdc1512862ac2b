#ifndef VSS_CHORD_DIAGRAM_HPP
#define VSS_CHORD_DIAGRAM_HPP

#include "vss/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vss {

/// A chord diagram on an oriented interval: a perfect matching of the
/// points 1..2n.  Canonical storage: each chord (i,j) with i < j, chords
/// sorted by their second endpoint.
class ChordDiagram {
public:
    ChordDiagram() = default;

    explicit ChordDiagram(std::vector<std::pair<int, int>> chords)
    {
        for (auto& [a, b] : chords) {
            if (a == b)
                throw std::invalid_argument("ChordDiagram: chord endpoints must differ");
            if (a > b)
                std::swap(a, b);
        }
        std::sort(chords.begin(), chords.end(),
                  [](const auto& x, const auto& y) { return x.second < y.second; });
        validate(chords);
        chords_ = std::move(chords);
    }

    int n() const { return static_cast<int>(chords_.size()); }
    const std::vector<std::pair<int, int>>& chords() const { return chords_; }

    /// Partner of point p in the matching.
    int partner(int p) const
    {
        for (const auto& [a, b] : chords_) {
            if (a == p)
                return b;
            if (b == p)
                return a;
        }
        throw std::out_of_range("ChordDiagram::partner");
    }

    bool operator==(const ChordDiagram& rhs) const { return chords_ == rhs.chords_; }
    bool operator<(const ChordDiagram& rhs) const { return chords_ < rhs.chords_; }

    /// "1-4,2-5,3-6"; empty diagram serializes to "".
    std::string to_text() const
    {
        std::string out;
        for (std::size_t i = 0; i < chords_.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(chords_[i].first) + '-' + std::to_string(chords_[i].second);
        }
        return out;
    }

    static ChordDiagram from_text(const std::string& text)
    {
        std::vector<std::pair<int, int>> chords;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty())
                continue;
            auto dash = item.find('-');
            if (dash == std::string::npos)
                throw std::invalid_argument("ChordDiagram::from_text: bad chord '" + item + "'");
            chords.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        }
        return ChordDiagram(std::move(chords));
    }

    nlohmann::json to_json() const
    {
        nlohmann::json chords = nlohmann::json::array();
        for (const auto& [a, b] : chords_)
            chords.push_back({a, b});
        return {{"n", n()}, {"chords", chords}};
    }

    static ChordDiagram from_json(const nlohmann::json& j)
    {
        std::vector<std::pair<int, int>> chords;
        for (const auto& c : j.at("chords"))
            chords.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
        ChordDiagram d(std::move(chords));
        if (d.n() != j.at("n").get<int>())
            throw std::invalid_argument("ChordDiagram::from_json: n mismatch");
        return d;
    }

private:
    static void validate(const std::vector<std::pair<int, int>>& chords)
    {
        const int m = static_cast<int>(chords.size());
        std::vector<bool> seen(2 * m + 1, false);
        for (const auto& [a, b] : chords) {
            if (a < 1 || b > 2 * m)
                throw std::invalid_argument("ChordDiagram: endpoints must cover 1..2n");
            if (seen[a] || seen[b])
                throw std::invalid_argument("ChordDiagram: repeated endpoint");
            seen[a] = seen[b] = true;
        }
    }

    std::vector<std::pair<int, int>> chords_;
};

/// All perfect matchings of {1..2n} in canonical form, sorted; (2n-1)!! many.
inline std::vector<ChordDiagram> enumerate_chord_diagrams(int n)
{
    if (n < 0)
        throw std::invalid_argument("enumerate_chord_diagrams: n must be >= 0");
    std::vector<ChordDiagram> out;
    std::vector<std::pair<int, int>> current;
    std::vector<bool> used(2 * n + 1, false);

    auto rec = [&](auto&& self) -> void {
        int first = -1;
        for (int p = 1; p <= 2 * n; ++p)
            if (!used[p]) {
                first = p;
                break;
            }
        if (first < 0) {
            out.emplace_back(current);
            return;
        }
        used[first] = true;
        for (int q = first + 1; q <= 2 * n; ++q) {
            if (used[q])
                continue;
            used[q] = true;
            current.emplace_back(first, q);
            self(self);
            current.pop_back();
            used[q] = false;
        }
        used[first] = false;
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return out;
}

/// Index lookup for the canonical enumeration order.
class ChordDiagramIndex {
public:
    explicit ChordDiagramIndex(int n) : diagrams_(enumerate_chord_diagrams(n))
    {
        for (std::size_t i = 0; i < diagrams_.size(); ++i)
            index_[diagrams_[i]] = i;
    }

    const std::vector<ChordDiagram>& diagrams() const { return diagrams_; }
    std::size_t size() const { return diagrams_.size(); }

    std::size_t index_of(const ChordDiagram& d) const
    {
        auto it = index_.find(d);
        if (it == index_.end())
            throw std::invalid_argument("ChordDiagramIndex: unknown diagram " + d.to_text());
        return it->second;
    }

private:
    std::vector<ChordDiagram> diagrams_;
    std::map<ChordDiagram, std::size_t> index_;
};

/// Exact linear combination of chord diagrams of one degree.
struct DiagramVector {
    int n = 0;
    std::map<ChordDiagram, Rational> coeffs;

    void add(const ChordDiagram& d, const Rational& c)
    {
        auto it = coeffs.find(d);
        if (it == coeffs.end()) {
            if (c != 0)
                coeffs[d] = c;
            return;
        }
        it->second += c;
        if (it->second == 0)
            coeffs.erase(it);
    }
};

inline Integer double_factorial_odd(int n)
{
    // (2n-1)!! ; by convention 1 for n = 0
    Integer out = 1;
    for (int k = 3; k <= 2 * n - 1; k += 2)
        out *= k;
    return out;
}

} // namespace vss

#endif // VSS_CHORD_DIAGRAM_HPP
