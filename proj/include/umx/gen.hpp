#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "umx/ball_tree.hpp"
#include "umx/dynamics.hpp"
#include "umx/space.hpp"

namespace umx {

/// splitmix64: the library's fixed, seedable PRNG. Its identity is part of
/// the reproducibility contract - identical seeds give identical artifacts
/// on every platform, so no std:: distribution machinery is used anywhere.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n), unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    bool coin() { return next() & 1u; }

    /// Independent stream derived from this seed and a salt.
    static SplitMix64 fork(std::uint64_t seed, std::uint64_t salt) {
        SplitMix64 r(seed ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
        r.next();
        return r;
    }
};

struct GenConfig {
    int n_points = 4;
    std::uint64_t seed = 0;
    std::vector<Rat> value_pool;  // strictly increasing distance levels
    int branching = 3;            // max children per tree node

    static std::vector<Rat> default_pool() {
        return {Rat(1, 13), Rat(1, 11), Rat(1, 7), Rat(1, 5), Rat(1, 3),
                Rat(1, 2), Rat(1),     Rat(2),    Rat(3),    Rat(5)};
    }

    static GenConfig defaults(int n_points, std::uint64_t seed) {
        return GenConfig{n_points, seed, default_pool(), 3};
    }
};

namespace detail {

inline int required_depth(int m, int branching) {
    int depth = 0;
    long long cap = 1;
    while (cap < m) {
        cap *= branching;
        ++depth;
    }
    return depth;
}

template <typename T>
inline void shuffle_vec(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

/// One uniformly forced element, the rest by fair coin.
inline std::vector<int> sample_nonempty_subset(const std::vector<int>& pool, SplitMix64& rng) {
    const int forced = pool[rng.below(pool.size())];
    std::vector<int> out;
    for (int p : pool)
        if (p == forced || rng.coin()) out.push_back(p);
    return out;
}

struct DendrogramBuilder {
    const GenConfig& cfg;
    SplitMix64& rng;
    std::vector<Rat>& matrix;  // row-major n x n, prefilled with zeros
    int n;

    void build(std::vector<int> points, int hi_level) {
        const int m = static_cast<int>(points.size());
        if (m == 1) return;
        const int lo = required_depth(m, cfg.branching) - 1;
        const int level = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi_level - lo + 1)));

        std::vector<std::vector<int>> cells = partition(points, level);
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (std::size_t j = i + 1; j < cells.size(); ++j)
                for (int x : cells[i])
                    for (int y : cells[j]) {
                        matrix[static_cast<std::size_t>(x) * n + y] = cfg.value_pool[level];
                        matrix[static_cast<std::size_t>(y) * n + x] = cfg.value_pool[level];
                    }
        for (auto& cell : cells) build(std::move(cell), level - 1);
    }

    std::vector<std::vector<int>> partition(std::vector<int>& points, int level) {
        const int m = static_cast<int>(points.size());
        const int kmax = std::min(cfg.branching, m);
        for (int attempt = 0; attempt < 8; ++attempt) {
            const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(kmax - 1)));
            std::vector<int> shuffled = points;
            shuffle_vec(shuffled, rng);
            std::vector<std::vector<int>> cells(static_cast<std::size_t>(k));
            for (int i = 0; i < m; ++i) {
                const std::size_t cell = i < k ? static_cast<std::size_t>(i)
                                               : static_cast<std::size_t>(rng.below(k));
                cells[cell].push_back(shuffled[static_cast<std::size_t>(i)]);
            }
            bool feasible = true;
            for (const auto& cell : cells)
                if (required_depth(static_cast<int>(cell.size()), cfg.branching) > level)
                    feasible = false;
            if (feasible) return cells;
        }
        // Round-robin split into min(branching, m) cells; always level-feasible.
        std::vector<int> shuffled = points;
        shuffle_vec(shuffled, rng);
        std::vector<std::vector<int>> cells(static_cast<std::size_t>(kmax));
        for (int i = 0; i < m; ++i)
            cells[static_cast<std::size_t>(i % kmax)].push_back(shuffled[static_cast<std::size_t>(i)]);
        return cells;
    }
};

} // namespace detail

/// Random ultrametric space as a random dendrogram: leaves are points,
/// internal levels are drawn from the pool strictly decreasing toward the
/// leaves, and d(x,y) is the level of the lowest common ancestor. Sound by
/// construction; validated before returning anyway.
inline SpacePtr random_space(const GenConfig& cfg) {
    if (cfg.n_points < 1) throw PreconditionFailed("random_space: n_points must be >= 1");
    if (cfg.branching < 2) throw PreconditionFailed("random_space: branching must be >= 2");
    for (std::size_t i = 1; i < cfg.value_pool.size(); ++i)
        if (!(cfg.value_pool[i - 1] < cfg.value_pool[i]))
            throw PreconditionFailed("random_space: value_pool must be strictly increasing");
    for (const Rat& v : cfg.value_pool)
        if (v.is_zero()) throw PreconditionFailed("random_space: value_pool must be positive");
    if (detail::required_depth(cfg.n_points, cfg.branching) > static_cast<int>(cfg.value_pool.size()))
        throw PoolTooShallow("random_space: value_pool has fewer levels than the tree needs");

    const int n = cfg.n_points;
    const int width = static_cast<int>(std::to_string(n).size());
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::string digits = std::to_string(i);
        labels.push_back("p" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits);
    }

    std::vector<Rat> matrix(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    SplitMix64 rng = SplitMix64::fork(cfg.seed, 0xA11CE5ULL);
    std::vector<int> points(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) points[static_cast<std::size_t>(i)] = i;
    detail::DendrogramBuilder{cfg, rng, matrix, n}.build(std::move(points),
                                                         static_cast<int>(cfg.value_pool.size()) - 1);

    std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] =
            std::vector<Rat>(matrix.begin() + static_cast<std::ptrdiff_t>(i) * n,
                             matrix.begin() + static_cast<std::ptrdiff_t>(i + 1) * n);
    ValidationResult vr = validate_ultrametric(std::move(labels), std::move(rows));
    if (!vr.ok()) throw Error("random_space: generated matrix failed validation");
    return vr.space;
}

/// The four-point space with two sides at mutual distance 2 and inner
/// distances 1, plus the four noncyclic permutations of its sides.
struct Example29 {
    SpacePtr space;
    PointSet A;
    PointSet B;
    std::vector<SelfMap> maps;  // F1 = identity, F2 = swap B, F3 = swap A, F4 = both
};

inline Example29 example29() {
    std::vector<std::string> labels{"a1", "a2", "b1", "b2"};
    const Rat one{1}, two{2};
    std::vector<std::vector<Rat>> m(4, std::vector<Rat>(4));
    auto set = [&m](int i, int j, const Rat& v) { m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v; m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v; };
    set(0, 1, one);
    set(2, 3, one);
    for (int a : {0, 1})
        for (int b : {2, 3}) set(a, b, two);
    ValidationResult vr = validate_ultrametric(std::move(labels), std::move(m));

    Example29 ex;
    ex.space = vr.space;
    ex.A = make_subset(ex.space, {"a1", "a2"});
    ex.B = make_subset(ex.space, {"b1", "b2"});
    const std::vector<int> all{0, 1, 2, 3};
    ex.maps.emplace_back(ex.space.get(), all, std::vector<int>{0, 1, 2, 3});
    ex.maps.emplace_back(ex.space.get(), all, std::vector<int>{0, 1, 3, 2});
    ex.maps.emplace_back(ex.space.get(), all, std::vector<int>{1, 0, 2, 3});
    ex.maps.emplace_back(ex.space.get(), all, std::vector<int>{1, 0, 3, 2});
    return ex;
}

/// Finite slice of the integer space with d(n,m) = 1/min(n,m): points 1..2N,
/// evens against odds. The attaining pair escapes to the top indices as N
/// grows and dist(A,B) = 1/(2N-1) sinks to 0.
struct Example22 {
    SpacePtr space;
    PointSet A;  // even labels
    PointSet B;  // odd labels
};

inline Example22 example22_truncation(int N) {
    if (N < 1) throw PreconditionFailed("example22_truncation: N must be >= 1");
    const int n = 2 * N;
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n),
                                    std::vector<Rat>(static_cast<std::size_t>(n)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j)
                m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                    Rat(1, static_cast<std::uint64_t>(std::min(i, j)));
    ValidationResult vr = validate_ultrametric(std::move(labels), std::move(m));
    if (!vr.ok()) throw Error("example22_truncation: matrix failed validation");

    Example22 ex;
    ex.space = vr.space;
    std::vector<int> evens, odds;
    for (int i = 1; i <= n; ++i) (i % 2 == 0 ? evens : odds).push_back(i - 1);
    ex.A = PointSet(ex.space.get(), std::move(evens));
    ex.B = PointSet(ex.space.get(), std::move(odds));
    return ex;
}

struct SeparatedPair {
    PointSet A;
    PointSet B;
};

/// Strictly separated pair straight off the ball tree: B sits inside a
/// non-root ball C, A outside C (within C's parent, or anywhere outside C),
/// so delta(B) <= diam(C) < dist(A, B) by laminarity.
inline SeparatedPair random_separated_pair(const SpacePtr& space, std::uint64_t seed) {
    if (space->size() < 2)
        throw NoProperBall("random_separated_pair: space has no ball other than itself");
    SplitMix64 rng = SplitMix64::fork(seed, 0x5E9A1ULL);
    const BallTree tree = ball_tree(space->all(space));

    std::vector<int> non_root;
    for (int id = 0; id < static_cast<int>(tree.nodes().size()); ++id)
        if (id != tree.root()) non_root.push_back(id);
    const int cid = non_root[rng.below(non_root.size())];
    const auto& cnode = tree.node(cid);

    std::vector<int> b_members = detail::sample_nonempty_subset(cnode.members, rng);

    const std::vector<int>& parent_members = tree.node(cnode.parent).members;
    std::vector<int> pool;
    if (rng.coin()) {
        for (int p = 0; p < space->size(); ++p)
            if (!std::binary_search(cnode.members.begin(), cnode.members.end(), p)) pool.push_back(p);
    } else {
        for (int p : parent_members)
            if (!std::binary_search(cnode.members.begin(), cnode.members.end(), p)) pool.push_back(p);
    }
    std::vector<int> a_members = detail::sample_nonempty_subset(pool, rng);

    return {PointSet(space.get(), std::move(a_members)), PointSet(space.get(), std::move(b_members))};
}

namespace detail {

struct MapSampler {
    const BallTree& tree;
    const PointSet& A;
    const PointSet& B;
    std::vector<std::uint8_t> caps;  // per node: bit0 meets A, bit1 meets B, bit2 meets A^B

    explicit MapSampler(const BallTree& t, const PointSet& a, const PointSet& b)
        : tree(t), A(a), B(b), caps(t.nodes().size(), 0) {
        for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
            for (int p : tree.nodes()[id].members) {
                const bool in_a = A.contains(p), in_b = B.contains(p);
                if (in_a) caps[id] |= 1;
                if (in_b) caps[id] |= 2;
                if (in_a && in_b) caps[id] |= 4;
            }
        }
    }

    bool feasible(int need_id, int target_id) const {
        return (caps[static_cast<std::size_t>(need_id)] & ~caps[static_cast<std::size_t>(target_id)]) == 0;
    }

    std::vector<int> candidates(int child_id, int within_id) const {
        std::vector<int> out;
        auto consider = [&](int w) {
            if (!(tree.node(child_id).diam < tree.node(w).diam) && feasible(child_id, w))
                out.push_back(w);
        };
        consider(within_id);
        for (int w : tree.descendants(within_id)) consider(w);
        return out;
    }

    /// One structured draw; false when some branch has no feasible target.
    bool try_sample(SplitMix64& rng, std::vector<int>& image) const {
        const std::vector<int> roots = candidates(tree.root(), tree.root());
        if (roots.empty()) return false;
        return assign(tree.root(), roots[rng.below(roots.size())], rng, image);
    }

    bool assign(int node_id, int target_id, SplitMix64& rng, std::vector<int>& image) const {
        const auto& node = tree.node(node_id);
        if (node.children.empty()) {
            image[static_cast<std::size_t>(node.members.front())] = tree.node(target_id).members.front();
            return true;
        }
        for (int child : node.children) {
            const std::vector<int> cands = candidates(child, target_id);
            if (cands.empty()) return false;
            if (!assign(child, cands[rng.below(cands.size())], rng, image)) return false;
        }
        return true;
    }
};

} // namespace detail

/// Noncyclic nonexpansive self-map of A u B, sampled tree-respecting: a map
/// is nonexpansive exactly when the image of every ball-tree node fits in a
/// node of no larger diameter, so targets are drawn down the tree while side
/// membership (A stays in A, B in B) is kept feasible. Falls back to capped
/// rejection sampling if the structured walk dead-ends.
inline SelfMap random_noncyclic_nonexpansive_map(const SpacePtr& space, const PointSet& A,
                                                 const PointSet& B, std::uint64_t seed) {
    require_same_space(A, B);
    if (A.empty() || B.empty())
        throw EmptySetError("random_noncyclic_nonexpansive_map: empty side");
    const PointSet S = set_union(A, B);
    const BallTree tree = ball_tree(S);
    const detail::MapSampler sampler(tree, A, B);

    auto to_map = [&](const std::vector<int>& image) {
        std::vector<int> img;
        img.reserve(S.size());
        for (int x : S.members()) img.push_back(image[static_cast<std::size_t>(x)]);
        return SelfMap(space.get(), S.members(), std::move(img));
    };

    for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
        SplitMix64 rng = SplitMix64::fork(seed, 0x3A9F00ULL + attempt);
        std::vector<int> image(static_cast<std::size_t>(space->size()), -1);
        if (sampler.try_sample(rng, image)) {
            SelfMap F = to_map(image);
            return F;
        }
    }

    // Rejection fallback: side-respecting random tables until nonexpansive.
    // A point on one side may land anywhere on that side; a shared point must
    // stay shared so that both F(A) in A and F(B) in B survive.
    const std::vector<int>& pool_a = A.members();
    const std::vector<int>& pool_b = B.members();
    const std::vector<int> pool_ab = set_intersection(A, B).members();
    SplitMix64 rng = SplitMix64::fork(seed, 0xFA11BACCULL);
    const std::uint64_t cap = 10ULL * S.size() * S.size();
    for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
        std::vector<int> image(static_cast<std::size_t>(space->size()), -1);
        for (int x : S.members()) {
            const std::vector<int>& pool = (A.contains(x) && B.contains(x)) ? pool_ab
                                         : A.contains(x)                    ? pool_a
                                                                            : pool_b;
            image[static_cast<std::size_t>(x)] = pool[rng.below(pool.size())];
        }
        SelfMap F = to_map(image);
        if (is_nonexpansive(F, S).holds) return F;
    }
    throw GenerationExhausted("random_noncyclic_nonexpansive_map: attempt cap reached");
}

} // namespace umx
