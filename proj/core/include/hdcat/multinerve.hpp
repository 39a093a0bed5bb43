#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdcat/nfold.hpp"

namespace hdcat {

/// Default bound on the number of elements materialized by one evaluation.
inline constexpr std::size_t kDefaultMaxElements = 1'000'000;

/// How an arbitrary multi-index is presented.
///  Evaluate: axes with entry <= 2 stay stored; larger entries are expanded
///            into chains of level-1 elements.
///  Full:     every axis with entry >= 1 is expanded into a chain of level-1
///            elements, so grid entries live in a cell with entries 0 or 1.
enum class GridMode { Evaluate, Full };

/// Grid positions for a multi-index, axis 0 varying slowest.
struct GridLayout {
    MultiIndex k;
    MultiIndex base;
    std::vector<int> extent;
    std::vector<std::size_t> stride;
    std::size_t positions = 1;

    /// Axes presented as chains; they contribute one level of label nesting.
    std::vector<char> expanded;

    static GridLayout make(std::span<const int> k, GridMode mode);
};

/// The elements of the multinerve at one multi-index, each a grid of
/// stored elements of the base cell. Compatibility along an expanded axis:
/// d0 of an entry equals d1 of the next entry.
class GridCell {
public:
    GridLayout layout;
    std::size_t count = 0;
    /// Grid g occupies data[g * positions, (g + 1) * positions).
    std::vector<Index> data;
    /// Labels in sorted order; label_of[g] and grid_of[label index].
    FinSet labels;
    IndexMap label_of;
    IndexMap grid_of;

    std::span<const Index> grid(std::size_t g) const
    {
        return {data.data() + g * layout.positions, layout.positions};
    }
    std::span<const Index> grid_at_label(Index label) const { return grid(grid_of[label]); }
    /// Label index of a grid, if it is an element.
    std::optional<Index> find(std::span<const Index> grid) const;

    void index();

private:
    std::unordered_map<std::string, Index> lookup_;
};

/// Enumerates the multinerve of x at k. Throws SizeExceeded beyond
/// max_elements.
GridCell evaluate_grid(const NFoldCat& x, std::span<const int> k, GridMode mode,
                       std::size_t max_elements = kDefaultMaxElements);

/// The multinerve of x at k: the stored cell when every entry is at most 2,
/// otherwise the iterated fiber product of stored cells. An expanded axis
/// contributes a label "(e_k,...,e_1)", nested in axis order.
FinSet evaluate_multinerve(const NFoldCat& x, std::span<const int> k, std::size_t max_elements = kDefaultMaxElements);

/// Full-mode grid of a stored element of cell k (entries <= 2).
std::vector<Index> unfold_stored(const NFoldCat& x, std::span<const int> k, Index element);
/// Stored element of cell k (entries <= 2) presented by a full-mode grid.
Index fold_to_stored(const NFoldCat& x, std::span<const int> k, std::span<const Index> grid);

/// Face d_i along axis of a full-mode grid at k; result is a full-mode grid
/// at k - e_axis.
std::vector<Index> grid_face(const NFoldCat& x, std::span<const int> k, std::span<const Index> grid, int axis, int i);
/// Degeneracy s_i along axis of a full-mode grid at k.
std::vector<Index> grid_degen(const NFoldCat& x, std::span<const int> k, std::span<const Index> grid, int axis, int i);

/// The (n-1)-fold category obtained by freezing `axis` at any level.
NFoldCat slice_at_level(const NFoldCat& x, int axis, int level, std::size_t max_elements = kDefaultMaxElements);

/// Composable s-chains of the level-1 slice along `axis`, matched after
/// applying gamma0 : X_0 -> D (the level-0 slice into any (n-1)-fold
/// category): gamma0(d0 e_j) = gamma0(d1 e_{j+1}). Labels "(e_s,...,e_1)".
NFoldCat chain_object(const NFoldCat& x, int axis, int s, const NFoldMap& gamma0);

/// Map from the level-s slice to chain_object(x, axis, s, gamma0) sending an
/// element to its chain of edges (the j-th projection is nu_j). s >= 2.
NFoldMap induced_segal_map(const NFoldCat& x, int axis, int s, const NFoldMap& gamma0);

}  // namespace hdcat
