#ifndef VSS_WEIGHT_SYSTEM_HPP
#define VSS_WEIGHT_SYSTEM_HPP

#include "vss/chord_diagram.hpp"
#include "vss/linalg.hpp"

#include <cassert>
#include <cstddef>
#include <vector>

namespace vss {

namespace detail {

// Rebuilds a diagram from the point sequence of `d` with the point `slider`
// removed and re-inserted at `slot` (0-based position in the reduced
// sequence of 2n-1 points).
inline ChordDiagram reinsert_end(const ChordDiagram& d, int slider, std::size_t slot)
{
    const int two_n = 2 * d.n();
    std::vector<int> reduced;
    reduced.reserve(two_n);
    for (int p = 1; p <= two_n; ++p)
        if (p != slider)
            reduced.push_back(p);
    reduced.insert(reduced.begin() + static_cast<std::ptrdiff_t>(slot), slider);

    std::vector<int> new_pos(two_n + 1, 0);
    for (std::size_t i = 0; i < reduced.size(); ++i)
        new_pos[reduced[i]] = static_cast<int>(i) + 1;

    std::vector<std::pair<int, int>> chords;
    chords.reserve(d.n());
    for (const auto& [a, b] : d.chords())
        chords.emplace_back(new_pos[a], new_pos[b]);
    return ChordDiagram(std::move(chords));
}

} // namespace detail

/// The 4T relation matrix in degree n: one row per generated instance,
/// columns indexed by the canonical enumeration of CD_n.
///
/// Instances are seeded by every (diagram, sliding end, adjacent end of a
/// different chord) triple.  The sliding end of chord A is detached and
/// re-inserted just before / just after each end u < v of the fixed chord B;
/// the row is  D(before u) - D(after u) + D(before v) - D(after v).
/// Duplicate rows are kept; rank computations absorb them.
inline SparseMatrix four_t_relations(int n, const ChordDiagramIndex& index)
{
    const int two_n = 2 * n;
    std::vector<SparseMatrix::Row> rows;

    for (const auto& d : index.diagrams()) {
        // chord id per point
        std::vector<int> chord_of(two_n + 1, -1);
        for (std::size_t c = 0; c < d.chords().size(); ++c) {
            chord_of[d.chords()[c].first] = static_cast<int>(c);
            chord_of[d.chords()[c].second] = static_cast<int>(c);
        }
        for (int x = 1; x < two_n; ++x) {
            const int y = x + 1;
            if (chord_of[x] == chord_of[y])
                continue;
            for (auto [slider, target] : {std::pair{x, y}, std::pair{y, x}}) {
                const auto& fixed = d.chords()[chord_of[target]];
                // positions of the fixed chord's ends in the reduced sequence
                auto reduced_index = [&](int point) {
                    return static_cast<std::size_t>(point - 1 - (point > slider ? 1 : 0));
                };
                const std::size_t iu = reduced_index(fixed.first);
                const std::size_t iv = reduced_index(fixed.second);

                SparseMatrix::Row row;
                auto accumulate = [&](std::size_t slot, int coeff) {
                    ChordDiagram t = detail::reinsert_end(d, slider, slot);
                    std::size_t col = index.index_of(t);
                    auto it = row.find(col);
                    if (it == row.end())
                        row[col] = coeff;
                    else {
                        it->second += coeff;
                        if (it->second == 0)
                            row.erase(it);
                    }
                };
                accumulate(iu, +1);
                accumulate(iu + 1, -1);
                accumulate(iv, +1);
                accumulate(iv + 1, -1);
                rows.push_back(std::move(row));
            }
        }
    }

    SparseMatrix m(rows.size(), index.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r])
            m.set(r, c, v);
    return m;
}

inline SparseMatrix four_t_relations(int n)
{
    ChordDiagramIndex index(n);
    return four_t_relations(n, index);
}

/// Weight systems of degree n: linear functionals on R[CD_n] vanishing on
/// every 4T relation.
struct WeightSpace {
    int n = 0;
    std::vector<ChordDiagram> basis_diagrams;
    Subspace annihilator;

    std::size_t dim() const { return annihilator.dim(); }
};

inline WeightSpace weight_space(int n)
{
    ChordDiagramIndex index(n);
    SparseMatrix rel = four_t_relations(n, index);
    WeightSpace w;
    w.n = n;
    w.basis_diagrams = index.diagrams();
    w.annihilator = kernel_basis(rel);
    assert(w.annihilator.dim() == index.size() - rank(rel));
    return w;
}

} // namespace vss

#endif // VSS_WEIGHT_SYSTEM_HPP
