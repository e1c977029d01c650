#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crossratio {

/// Permutation of {1..n}, stored 0-based. Composition follows functions:
/// (p * q)(i) = p(q(i)).
class Perm {
public:
    static Perm identity(std::size_t n);
    /// Images listed 1-based, e.g. {2,3,4,1} for (1 2 3 4).
    static Perm from_images(std::vector<int> one_based);
    /// Cycle notation: `id`, `(1 2 3 4)`, `(1 2)(3 4)`. Cycles compose right to left.
    static Perm parse(std::string_view text, std::size_t n = 4);

    std::size_t size() const noexcept { return image_.size(); }
    /// 1-based image of the 1-based point i.
    int operator()(int i) const { return image_.at(static_cast<std::size_t>(i - 1)) + 1; }
    const std::vector<int>& images0() const noexcept { return image_; }

    bool is_identity() const;
    Perm inverse() const;
    std::size_t order() const;

    friend Perm operator*(const Perm& p, const Perm& q);
    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;

    std::string to_string() const;

private:
    explicit Perm(std::vector<int> image0) : image_(std::move(image0)) {}
    std::vector<int> image_;
};

/// All 24 elements of the symmetric group on 4 points, in a fixed order.
const std::vector<Perm>& symmetric_group_4();

/// A subgroup of the symmetric group on 4 points, kept as a sorted element list.
class PermGroup {
public:
    /// Closure of the generators under composition. An empty list gives the trivial group.
    static PermGroup generated_by(const std::vector<Perm>& gens, std::size_t n = 4);
    /// Validate and wrap an element list (must contain id and be closed).
    static PermGroup from_elements(std::vector<Perm> elements);

    const std::vector<Perm>& elements() const noexcept { return elements_; }
    std::size_t order() const noexcept { return elements_.size(); }
    std::size_t degree() const noexcept { return elements_.front().size(); }
    bool contains(const Perm& p) const;
    bool is_subgroup_of(const PermGroup& other) const;
    bool is_normal_in(const PermGroup& other) const;
    bool is_cyclic() const;
    PermGroup intersect(const PermGroup& other) const;
    PermGroup conjugate(const Perm& g) const;
    /// Bitmask over the index positions of symmetric_group_4(); requires degree 4.
    std::uint32_t mask() const;

    friend bool operator==(const PermGroup&, const PermGroup&) = default;

    std::string to_string() const;

private:
    explicit PermGroup(std::vector<Perm> sorted) : elements_(std::move(sorted)) {}
    std::vector<Perm> elements_;
};

const PermGroup& klein_four();

struct SubgroupRecord {
    PermGroup group;
    int class_id;
};

/// Every subgroup of the symmetric group on 4 points, with conjugacy-class
/// labels 0..10. Sorted by (order, class id, element list).
const std::vector<SubgroupRecord>& enumerate_subgroups();

std::size_t conjugacy_class_count(const std::vector<SubgroupRecord>& subgroups);

/// S intersected with the Klein four-group.
PermGroup klein_part(const PermGroup& s);

struct SplitResult {
    bool splits;
    std::optional<PermGroup> complement;
};

/// Whether 1 -> S[4] -> S -> S/S[4] -> 1 splits, with a complement when it
/// does. Among complements the one supported on the smallest initial segment
/// {1..m} is preferred, then the lexicographically least element list.
SplitResult sequence_splits(const PermGroup& s);

struct OrbitInfo {
    std::vector<std::vector<int>> orbits;  // 1-based points, each orbit sorted
    bool has_fixed_point;
    bool has_odd_orbit;
};

OrbitInfo orbits(const PermGroup& s);

}  // namespace crossratio
