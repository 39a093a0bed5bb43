#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hdcat {

using Index = std::uint32_t;
/// A function between finite sets, stored as the image index of every
/// domain element.
using IndexMap = std::vector<Index>;

/// Finite set of string identifiers, kept in lexicographic order so that
/// equality of sets is equality of representations. Copies share storage.
class FinSet {
public:
    FinSet();

    /// Throws InvalidArgument on duplicate identifiers.
    static FinSet from(std::vector<std::string> labels);

    /// Like `from`, also returning where each input label landed:
    /// `perm[i]` is the index of `labels[i]` in the sorted set.
    static std::pair<FinSet, IndexMap> sorted(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_->size(); }
    bool empty() const noexcept { return labels_->empty(); }
    const std::string& operator[](Index i) const { return (*labels_)[i]; }
    const std::vector<std::string>& labels() const noexcept { return *labels_; }
    auto begin() const noexcept { return labels_->begin(); }
    auto end() const noexcept { return labels_->end(); }

    std::optional<Index> find(std::string_view label) const;
    /// Throws UnknownPoint when absent.
    Index at(std::string_view label) const;

    friend bool operator==(const FinSet& a, const FinSet& b);

private:
    explicit FinSet(std::shared_ptr<const std::vector<std::string>> labels);
    std::shared_ptr<const std::vector<std::string>> labels_;
};

IndexMap identity_map(std::size_t n);
IndexMap compose_maps(const IndexMap& second, const IndexMap& first);
bool is_surjective(const IndexMap& map, std::size_t codomain_size);
bool is_injective(const IndexMap& map, std::size_t codomain_size);
bool is_bijective(const IndexMap& map, std::size_t codomain_size);

/// A function with explicit domain and codomain.
struct SetMap {
    FinSet dom;
    FinSet cod;
    IndexMap map;

    /// Checks sizes and index ranges; throws InvalidMap.
    void check() const;
    const std::string& operator()(std::string_view x) const { return cod[map[dom.at(x)]]; }
    bool surjective() const { return is_surjective(map, cod.size()); }
    friend bool operator==(const SetMap&, const SetMap&) = default;
};

SetMap compose(const SetMap& second, const SetMap& first);
SetMap identity(const FinSet& s);

/// A surjection onto a set of classes; each class is labelled by its
/// lexicographically least member.
struct Quotient {
    FinSet classes;
    IndexMap cls;
};

/// Builds the quotient from a class representative per element
/// (`root[i]` is any element in the same class as i, with roots
/// consistent within a class).
Quotient quotient_from_roots(const FinSet& elements, const std::vector<std::size_t>& root);

/// "(a,b,c)"; the empty tuple is "()".
std::string tuple_label(std::span<const std::string> parts);
std::string pair_label(std::string_view left, std::string_view right);

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);
    std::vector<std::size_t> roots();

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

inline std::uint64_t pair_key(Index a, Index b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace hdcat
