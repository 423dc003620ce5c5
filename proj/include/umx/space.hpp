#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "umx/errors.hpp"
#include "umx/rat.hpp"

namespace umx {

/// One failed axiom, with the witnessing points.
/// For StrongTriangleFailure, (x, y) is the offending pair and z the middle
/// point: d(x,y) > max{d(x,z), d(z,y)}.
struct Violation {
    enum class Kind { NonzeroSelfDistance, Asymmetry, ZeroOffDiagonal, StrongTriangleFailure };

    Kind kind;
    int x = -1;
    int y = -1;
    int z = -1;

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::NonzeroSelfDistance: return "NonzeroSelfDistance";
            case Kind::Asymmetry: return "Asymmetry";
            case Kind::ZeroOffDiagonal: return "ZeroOffDiagonal";
            case Kind::StrongTriangleFailure: return "StrongTriangleFailure";
        }
        return "?";
    }
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

class PointSet;
struct ValidationResult;

/// Finite ultrametric space: labelled points plus an exact distance matrix.
/// Instances are immutable; construction goes through validate_ultrametric,
/// which admits only matrices satisfying all metric and strong-triangle axioms.
class Space {
public:
    int size() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }

    std::optional<int> index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int require_index(const std::string& label) const {
        auto idx = index_of(label);
        if (!idx) throw UnknownLabelError("unknown point label \"" + label + "\"");
        return *idx;
    }

    const Rat& dist(int i, int j) const {
        return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                  static_cast<std::size_t>(j)];
    }

    /// Every distance value that occurs, deduplicated and ascending (0 excluded).
    std::vector<Rat> occurring_distances() const {
        std::vector<Rat> vals;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) vals.push_back(dist(i, j));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals;
    }

    PointSet all(const SpacePtr& self) const;

    friend bool operator==(const Space& a, const Space& b) {
        return a.labels_ == b.labels_ && a.d_ == b.d_;
    }

private:
    Space(std::vector<std::string> labels, std::vector<Rat> d)
        : labels_(std::move(labels)), d_(std::move(d)), n_(static_cast<int>(labels_.size())) {
        for (int i = 0; i < n_; ++i) index_.emplace(labels_[static_cast<std::size_t>(i)], i);
    }

    friend struct ValidationResult;
    friend ValidationResult validate_ultrametric(std::vector<std::string>,
                                                 std::vector<std::vector<Rat>>);

    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<Rat> d_;  // row-major n x n
    int n_ = 0;
};

/// Outcome of validation: either a space or the complete violation list.
struct ValidationResult {
    SpacePtr space;  // null when invalid
    std::vector<Violation> violations;

    bool ok() const { return space != nullptr; }

    static ValidationResult make_space(std::vector<std::string> labels, std::vector<Rat> d) {
        ValidationResult r;
        r.space = SpacePtr(new Space(std::move(labels), std::move(d)));
        return r;
    }
};

/// Checks every axiom on every pair and triple and reports all failures,
/// not just the first: NonzeroSelfDistance, Asymmetry, ZeroOffDiagonal and
/// StrongTriangleFailure with witnesses.
inline ValidationResult validate_ultrametric(std::vector<std::string> labels,
                                             std::vector<std::vector<Rat>> matrix) {
    const int n = static_cast<int>(labels.size());
    if (n == 0) throw ParseError("a space needs at least one point");
    {
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError("duplicate point labels");
    }
    if (static_cast<int>(matrix.size()) != n)
        throw ParseError("distance matrix has " + std::to_string(matrix.size()) +
                         " rows for " + std::to_string(n) + " points");
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != n)
            throw ParseError("distance matrix row has wrong length");

    std::vector<Violation> bad;
    const Rat zero;
    for (int i = 0; i < n; ++i) {
        if (!(matrix[i][i] == zero))
            bad.push_back({Violation::Kind::NonzeroSelfDistance, i, i, -1});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!(matrix[i][j] == matrix[j][i]))
                bad.push_back({Violation::Kind::Asymmetry, i, j, -1});
            if (matrix[i][j] == zero && matrix[j][i] == zero)
                bad.push_back({Violation::Kind::ZeroOffDiagonal, i, j, -1});
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (rat_max(matrix[i][k], matrix[k][j]) < matrix[i][j])
                    bad.push_back({Violation::Kind::StrongTriangleFailure, i, j, k});
            }
        }
    }
    if (!bad.empty()) {
        ValidationResult r;
        r.violations = std::move(bad);
        return r;
    }
    std::vector<Rat> flat;
    flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (auto& row : matrix)
        for (auto& v : row) flat.push_back(std::move(v));
    return ValidationResult::make_space(std::move(labels), std::move(flat));
}

/// A subset of a space's points. Member indices are kept sorted and unique;
/// the owning space must outlive the set.
class PointSet {
public:
    PointSet() = default;

    PointSet(const Space* space, std::vector<int> members) : space_(space), members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    const Space& space() const { return *space_; }
    const Space* space_ptr() const { return space_; }
    const std::vector<int>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    bool contains(int p) const {
        return std::binary_search(members_.begin(), members_.end(), p);
    }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.space_ == b.space_ && a.members_ == b.members_;
    }

private:
    const Space* space_ = nullptr;
    std::vector<int> members_;
};

inline PointSet Space::all(const SpacePtr& self) const {
    std::vector<int> idx(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) idx[static_cast<std::size_t>(i)] = i;
    return PointSet(self.get(), std::move(idx));
}

inline PointSet make_subset(const SpacePtr& space, const std::vector<std::string>& labels) {
    std::vector<int> idx;
    idx.reserve(labels.size());
    for (const auto& l : labels) idx.push_back(space->require_index(l));
    return PointSet(space.get(), std::move(idx));
}

inline void require_same_space(const PointSet& a, const PointSet& b) {
    if (a.space_ptr() != b.space_ptr())
        throw DomainMismatchError("point sets belong to different spaces");
}

inline PointSet set_union(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    std::vector<int> out;
    std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                   std::back_inserter(out));
    return PointSet(a.space_ptr(), std::move(out));
}

inline PointSet set_intersection(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    std::vector<int> out;
    std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                          b.members().end(), std::back_inserter(out));
    return PointSet(a.space_ptr(), std::move(out));
}

inline PointSet set_difference(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    std::vector<int> out;
    std::set_difference(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(out));
    return PointSet(a.space_ptr(), std::move(out));
}

/// Least member under label order (witness tie-breaking is always by label).
inline int least_label_member(const PointSet& s) {
    const Space& sp = s.space();
    int best = s.members().front();
    for (int p : s.members())
        if (sp.label(p) < sp.label(best)) best = p;
    return best;
}

/// dist(x, A): minimum distance from x to a nonempty set A (always attained).
inline Rat dist_point_set(int x, const PointSet& A) {
    if (A.empty()) throw EmptySetError("dist(x, A): A is empty");
    const Space& sp = A.space();
    Rat best = sp.dist(x, A.members().front());
    for (int a : A.members()) best = rat_min(best, sp.dist(x, a));
    return best;
}

struct SetDistance {
    Rat value;
    int a = -1;  // one attaining pair, least by (label a, label b)
    int b = -1;
};

/// dist(A, B) with one attaining pair.
inline SetDistance dist_set_set(const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (A.empty() || B.empty()) throw EmptySetError("dist(A, B): empty operand");
    const Space& sp = A.space();
    SetDistance best;
    for (int a : A.members()) {
        for (int b : B.members()) {
            const Rat& d = sp.dist(a, b);
            if (best.a < 0 || d < best.value) {
                best = {d, a, b};
            } else if (d == best.value) {
                const bool smaller = sp.label(a) < sp.label(best.a) ||
                                     (sp.label(a) == sp.label(best.a) && sp.label(b) < sp.label(best.b));
                if (smaller) best = {d, a, b};
            }
        }
    }
    return best;
}

/// delta(A): largest pairwise distance; 0 for singletons.
inline Rat diameter(const PointSet& A) {
    if (A.empty()) throw EmptySetError("diameter: empty set");
    const Space& sp = A.space();
    Rat best;
    const auto& m = A.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            best = rat_max(best, sp.dist(m[i], m[j]));
    return best;
}

inline PointSet closed_ball(const SpacePtr& space, int c, const Rat& r) {
    std::vector<int> out;
    for (int y = 0; y < space->size(); ++y)
        if (!(r < space->dist(c, y))) out.push_back(y);
    return PointSet(space.get(), std::move(out));
}

inline PointSet open_ball(const SpacePtr& space, int c, const Rat& r) {
    std::vector<int> out;
    for (int y = 0; y < space->size(); ++y)
        if (space->dist(c, y) < r) out.push_back(y);
    return PointSet(space.get(), std::move(out));
}

inline PointSet sphere(const SpacePtr& space, int c, const Rat& r) {
    std::vector<int> out;
    for (int y = 0; y < space->size(); ++y)
        if (space->dist(c, y) == r) out.push_back(y);
    return PointSet(space.get(), std::move(out));
}

/// Closed ball of the subspace S: {y in S : d(c,y) <= r}.
inline PointSet closed_ball_in(const PointSet& S, int c, const Rat& r) {
    const Space& sp = S.space();
    std::vector<int> out;
    for (int y : S.members())
        if (!(r < sp.dist(c, y))) out.push_back(y);
    return PointSet(S.space_ptr(), std::move(out));
}

} // namespace umx
