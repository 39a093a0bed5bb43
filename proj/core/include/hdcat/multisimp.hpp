#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdcat/finset.hpp"

namespace hdcat {

/// Highest simplicial level stored along each axis.
inline constexpr int kStoredLevel = 2;

using MultiIndex = std::vector<int>;

/// Number of stored cells of an n-axis carrier (3^n).
std::size_t cell_count(int n);
/// Distance between cells differing by one in `axis` (3^axis).
std::size_t axis_stride(int axis);
/// Cell id of a stored multi-index: sum of k_a * 3^a.
std::size_t cell_id(std::span<const int> k);
MultiIndex cell_index(std::size_t id, int n);
inline int level_of(std::size_t id, int axis) { return static_cast<int>((id / axis_stride(axis)) % 3); }
/// Id of the cell obtained from an (n-1)-axis cell by inserting `level` at `axis`.
std::size_t insert_axis(std::size_t id, int axis, int level);

/// "k1,k2,...,kn"; the empty index is "".
std::string index_key(std::span<const int> k);
/// Throws ParseError unless the string has n entries.
MultiIndex parse_index_key(std::string_view key, int n);

/// A multi-simplicial set truncated at level 2 along each of n axes.
/// n = 0 is allowed and is just a finite set.
struct TruncMSSet {
    int n = 0;
    std::vector<FinSet> cells;
    /// faces[cell][axis][i] is d_i along axis, defined when the cell has
    /// level >= 1 on that axis.
    std::vector<std::vector<std::vector<IndexMap>>> faces;
    /// degens[cell][axis][i] is s_i along axis, defined at level <= 1.
    std::vector<std::vector<std::vector<IndexMap>>> degens;

    std::size_t size() const { return cells.size(); }
    const FinSet& cell(std::size_t id) const { return cells[id]; }
    const FinSet& cell(std::span<const int> k) const { return cells[cell_id(k)]; }
    const IndexMap& face(std::size_t id, int axis, int i) const { return faces[id][axis][i]; }
    const IndexMap& degen(std::size_t id, int axis, int i) const { return degens[id][axis][i]; }
    std::size_t total_elements() const;

    friend bool operator==(const TruncMSSet&, const TruncMSSet&) = default;
};

/// Collects cells as label lists in arbitrary order together with maps in
/// that order, then sorts every cell and transports the maps.
struct MssBuilder {
    explicit MssBuilder(int n);

    int n;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<std::vector<IndexMap>>> faces;
    std::vector<std::vector<std::vector<IndexMap>>> degens;

    /// `perms`, when given, receives for each cell the position of every
    /// construction-order element in the sorted cell.
    TruncMSSet build(std::vector<IndexMap>* perms = nullptr);
};

/// Checks shapes, all truncated simplicial identities and all cross-axis
/// commutations. Throws MissingCell, InvalidMap or IdentityViolation.
void check_mss(const TruncMSSet& x);

/// Textual form: maps given as element-to-element pairs.
struct RawMSS {
    struct Map {
        int axis = 0;
        int i = 0;
        std::string at;
        std::vector<std::pair<std::string, std::string>> pairs;
    };
    int n = 0;
    std::map<std::string, std::vector<std::string>> cells;
    std::vector<Map> faces;
    std::vector<Map> degens;
};

TruncMSSet validate_mss(const RawMSS& raw);
RawMSS to_raw(const TruncMSSet& x);

/// Rewrites the labels of every cell (given in current element order)
/// keeping the structure maps.
TruncMSSet relabel(const TruncMSSet& x, std::vector<std::vector<std::string>> labels,
                   std::vector<IndexMap>* perms = nullptr);

/// Axis a of x becomes axis sigma[a] of the result.
TruncMSSet permute_axes(const TruncMSSet& x, std::span<const int> sigma);
std::vector<int> inverse_permutation(std::span<const int> sigma);

/// A functor Set -> Set on the finite sets and maps of a carrier.
struct SetFunctor {
    std::function<FinSet(const FinSet&)> on_set;
    std::function<IndexMap(const SetMap&)> on_map;
};

/// Applies F to every cell and structure map. Throws FunctorialityViolation
/// if the images break an identity.
TruncMSSet apply_levelwise(const SetFunctor& f, const TruncMSSet& x);

/// Carrier with every cell equal to s and every map the identity.
TruncMSSet constant_mss(int n, const FinSet& s);

}  // namespace hdcat
