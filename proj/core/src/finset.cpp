#include "hdcat/finset.hpp"

#include <algorithm>
#include <numeric>

#include "hdcat/error.hpp"

namespace hdcat {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::IllTypedComposite: return "IllTypedComposite";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::NotDiscreteBase: return "NotDiscreteBase";
    case ErrorKind::MissingCell: return "MissingCell";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorKind::SegalFailure: return "SegalFailure";
    case ErrorKind::InvalidMap: return "InvalidMap";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::SurjectivityFailure: return "SurjectivityFailure";
    case ErrorKind::NonCommutingSquare: return "NonCommutingSquare";
    case ErrorKind::NotHomotopicallyDiscrete: return "NotHomotopicallyDiscrete";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, std::string location)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      location_(std::move(location))
{
}

namespace {

const std::shared_ptr<const std::vector<std::string>>& empty_labels()
{
    static const auto empty = std::make_shared<const std::vector<std::string>>();
    return empty;
}

}  // namespace

FinSet::FinSet() : labels_(empty_labels()) {}

FinSet::FinSet(std::shared_ptr<const std::vector<std::string>> labels) : labels_(std::move(labels)) {}

FinSet FinSet::from(std::vector<std::string> labels)
{
    return sorted(std::move(labels)).first;
}

std::pair<FinSet, IndexMap> FinSet::sorted(std::vector<std::string> labels)
{
    std::vector<Index> order(labels.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return labels[a] < labels[b]; });
    IndexMap perm(labels.size());
    std::vector<std::string> out;
    out.reserve(labels.size());
    for (Index pos = 0; pos < order.size(); ++pos) {
        if (pos > 0 && labels[order[pos]] == out.back())
            throw Error(ErrorKind::InvalidArgument, "duplicate identifier '" + out.back() + "'");
        perm[order[pos]] = pos;
        out.push_back(std::move(labels[order[pos]]));
    }
    return {FinSet(std::make_shared<const std::vector<std::string>>(std::move(out))), std::move(perm)};
}

std::optional<Index> FinSet::find(std::string_view label) const
{
    auto it = std::lower_bound(labels_->begin(), labels_->end(), label,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == labels_->end() || *it != label)
        return std::nullopt;
    return static_cast<Index>(it - labels_->begin());
}

Index FinSet::at(std::string_view label) const
{
    if (auto i = find(label))
        return *i;
    throw Error(ErrorKind::UnknownPoint, "no element '" + std::string(label) + "'");
}

bool operator==(const FinSet& a, const FinSet& b)
{
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
}

IndexMap identity_map(std::size_t n)
{
    IndexMap m(n);
    std::iota(m.begin(), m.end(), Index{0});
    return m;
}

IndexMap compose_maps(const IndexMap& second, const IndexMap& first)
{
    IndexMap out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        out[i] = second[first[i]];
    return out;
}

bool is_surjective(const IndexMap& map, std::size_t codomain_size)
{
    std::vector<bool> hit(codomain_size, false);
    std::size_t count = 0;
    for (Index y : map) {
        if (y < codomain_size && !hit[y]) {
            hit[y] = true;
            ++count;
        }
    }
    return count == codomain_size;
}

bool is_injective(const IndexMap& map, std::size_t codomain_size)
{
    std::vector<bool> hit(codomain_size, false);
    for (Index y : map) {
        if (y >= codomain_size || hit[y])
            return false;
        hit[y] = true;
    }
    return true;
}

bool is_bijective(const IndexMap& map, std::size_t codomain_size)
{
    return map.size() == codomain_size && is_injective(map, codomain_size);
}

void SetMap::check() const
{
    if (map.size() != dom.size())
        throw Error(ErrorKind::InvalidMap, "map size " + std::to_string(map.size()) + " differs from domain size " +
                                               std::to_string(dom.size()));
    for (Index y : map)
        if (y >= cod.size())
            throw Error(ErrorKind::InvalidMap, "map value out of codomain range");
}

SetMap compose(const SetMap& second, const SetMap& first)
{
    if (!(first.cod == second.dom))
        throw Error(ErrorKind::InvalidMap, "composing maps with mismatched middle set");
    return {first.dom, second.cod, compose_maps(second.map, first.map)};
}

SetMap identity(const FinSet& s)
{
    return {s, s, identity_map(s.size())};
}

Quotient quotient_from_roots(const FinSet& elements, const std::vector<std::size_t>& root)
{
    // Least member of each class, found via the root's slot.
    std::vector<std::size_t> least(elements.size(), elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
        least[root[i]] = std::min(least[root[i]], i);
    std::vector<std::string> names;
    std::vector<std::size_t> slot(elements.size(), 0);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (root[i] == i) {
            slot[i] = names.size();
            names.push_back(elements[static_cast<Index>(least[i])]);
        }
    }
    auto [classes, perm] = FinSet::sorted(std::move(names));
    IndexMap cls(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
        cls[i] = perm[slot[root[i]]];
    return {std::move(classes), std::move(cls)};
}

std::string tuple_label(std::span<const std::string> parts)
{
    std::size_t len = 2;
    for (const auto& p : parts)
        len += p.size() + 1;
    std::string out;
    out.reserve(len);
    out.push_back('(');
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out.push_back(',');
        out += parts[i];
    }
    out.push_back(')');
    return out;
}

std::string pair_label(std::string_view left, std::string_view right)
{
    std::string out;
    out.reserve(left.size() + right.size() + 3);
    out.push_back('(');
    out += left;
    out.push_back(',');
    out += right;
    out.push_back(')');
    return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0)
{
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x)
{
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b)
{
    a = find(a);
    b = find(b);
    if (a == b)
        return false;
    if (rank_[a] < rank_[b])
        std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b])
        ++rank_[a];
    return true;
}

std::vector<std::size_t> DisjointSets::roots()
{
    std::vector<std::size_t> r(parent_.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = find(i);
    return r;
}

}  // namespace hdcat
