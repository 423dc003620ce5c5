#pragma once

#include <map>
#include <utility>
#include <vector>

#include "umx/space.hpp"

namespace umx {

struct BallTreeNode {
    std::vector<int> members;  // sorted point indices
    Rat diam;
    std::vector<int> children;  // node ids; empty for leaves
    int parent = -1;
};

/// Canonical dendrogram of a (sub)space: the laminar family of all its
/// distinct closed balls, rooted at the whole set. Children of a node are
/// the equivalence classes of the relation d(x,y) < diam(node); any two
/// points in different children sit at distance exactly diam(node).
class BallTree {
public:
    static BallTree build(const PointSet& universe) {
        if (universe.empty()) throw EmptySetError("ball_tree: empty point set");
        BallTree t;
        t.space_ = universe.space_ptr();
        t.root_ = t.build_node(universe.members(), -1);
        for (int i = 0; i < static_cast<int>(t.nodes_.size()); ++i)
            t.by_members_.emplace(t.nodes_[static_cast<std::size_t>(i)].members, i);
        return t;
    }

    const Space& space() const { return *space_; }
    const std::vector<BallTreeNode>& nodes() const { return nodes_; }
    const BallTreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    int root() const { return root_; }

    /// Node id whose member set equals `members`, or -1.
    int find_node(const std::vector<int>& members) const {
        auto it = by_members_.find(members);
        return it == by_members_.end() ? -1 : it->second;
    }

    /// Ids of all strict descendants of `id`, preorder.
    std::vector<int> descendants(int id) const {
        std::vector<int> out, stack{id};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int c : node(cur).children) {
                out.push_back(c);
                stack.push_back(c);
            }
        }
        return out;
    }

    PointSet node_set(int id) const { return PointSet(space_, node(id).members); }

private:
    int build_node(const std::vector<int>& members, int parent) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(BallTreeNode{members, Rat{}, {}, parent});
        if (members.size() == 1) return id;

        Rat diam;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                diam = rat_max(diam, space_->dist(members[i], members[j]));
        nodes_[static_cast<std::size_t>(id)].diam = diam;

        // Partition into classes of d(x,y) < diam (an equivalence under the
        // strong triangle inequality), keyed by least member for determinism.
        std::vector<int> cls(members.size(), -1);
        std::vector<std::vector<int>> classes;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (cls[i] >= 0) continue;
            const int c = static_cast<int>(classes.size());
            classes.emplace_back();
            cls[i] = c;
            classes[static_cast<std::size_t>(c)].push_back(members[i]);
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (cls[j] < 0 && space_->dist(members[i], members[j]) < diam) {
                    cls[j] = c;
                    classes[static_cast<std::size_t>(c)].push_back(members[j]);
                }
            }
        }
        for (auto& group : classes) {
            const int child = build_node(group, id);
            nodes_[static_cast<std::size_t>(id)].children.push_back(child);
        }
        return id;
    }

    const Space* space_ = nullptr;
    std::vector<BallTreeNode> nodes_;
    int root_ = -1;
    std::map<std::vector<int>, int> by_members_;
};

inline BallTree ball_tree(const PointSet& universe) { return BallTree::build(universe); }

struct IsBallResult {
    bool yes = false;
    int center = -1;    // least-label member when yes
    Rat min_radius;      // smallest radius realizing the set, = diameter
};

/// Is S a closed ball of the subspace `universe`? Every point of an
/// ultrametric ball is a center, and the smallest realizing radius is the
/// set's diameter.
inline IsBallResult is_ball_in(const PointSet& universe, const PointSet& S) {
    require_same_space(universe, S);
    if (S.empty()) throw EmptySetError("is_ball: empty set");
    const Rat diam = diameter(S);
    if (closed_ball_in(universe, S.members().front(), diam) == S)
        return {true, least_label_member(S), diam};
    return {false, -1, Rat{}};
}

/// Is S a closed ball of its whole space?
inline IsBallResult is_ball(const SpacePtr& space, const PointSet& S) {
    return is_ball_in(space->all(space), S);
}

} // namespace umx
