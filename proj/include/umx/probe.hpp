#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umx/dynamics.hpp"
#include "umx/gen.hpp"

namespace umx {

struct ProbeInstance {
    SpacePtr space;
    PointSet A;
    PointSet B;
    SelfMap F;
    std::string note;
};

struct ProbeReport {
    std::uint64_t instances_checked = 0;
    std::optional<ProbeInstance> counterexample;
    std::map<std::string, std::uint64_t> stats;
    std::string interpretation;
};

namespace detail {

/// Is V = B(c, r) taken in the subspace P a minimal F-invariant ball?
/// Checks the definition literally: r > 0, F(V) in V, every member's gap
/// equals r, and no strictly smaller F-invariant ball of P sits inside.
inline bool minimal_invariant_ball_at(const SelfMap& F, const PointSet& P, int c) {
    const Space& sp = P.space();
    const Rat r = sp.dist(c, F.apply(c));
    if (r.is_zero()) return false;
    const PointSet V = closed_ball_in(P, c, r);
    if (!F.maps_into(V)) return false;
    for (int y : V.members())
        if (!(sp.dist(y, F.apply(y)) == r)) return false;
    const BallTree tree = ball_tree(P);
    for (const auto& node : tree.nodes()) {
        if (node.members.size() >= V.size()) continue;
        if (!std::includes(V.members().begin(), V.members().end(), node.members.begin(),
                           node.members.end()))
            continue;
        PointSet W(P.space_ptr(), node.members);
        if (F.maps_into(W)) return false;
    }
    return true;
}

/// Does the best proximity pair (a, b) satisfy one of the four classification
/// statements, with balls taken in the subspaces A and B and "nearest point"
/// read literally (d(a, y) = dist(a, B))?
inline bool pair_satisfies_statement(const SelfMap& F, const PointSet& A, const PointSet& B,
                                     int a, int b) {
    const Space& sp = A.space();
    const bool fa = F.apply(a) == a;
    const bool fb = F.apply(b) == b;
    if (fa && fb) return true;
    if (fa && !fb) {
        if (!minimal_invariant_ball_at(F, B, b)) return false;
        const PointSet V = closed_ball_in(B, b, sp.dist(b, F.apply(b)));
        const Rat near = dist_point_set(a, B);
        for (int y : V.members())
            if (!(sp.dist(a, y) == near)) return false;
        return true;
    }
    if (!fa && fb) {
        if (!minimal_invariant_ball_at(F, A, a)) return false;
        const PointSet V = closed_ball_in(A, a, sp.dist(a, F.apply(a)));
        const Rat near = dist_point_set(b, A);
        for (int y : V.members())
            if (!(sp.dist(y, b) == near)) return false;
        return true;
    }
    if (!minimal_invariant_ball_at(F, A, a) || !minimal_invariant_ball_at(F, B, b)) return false;
    const PointSet VA = closed_ball_in(A, a, sp.dist(a, F.apply(a)));
    const PointSet VB = closed_ball_in(B, b, sp.dist(b, F.apply(b)));
    const Rat cross = dist_set_set(VA, VB).value;
    for (int x : VA.members())
        for (int y : VB.members())
            if (!(sp.dist(x, y) == cross)) return false;
    return true;
}

inline bool some_best_pair_satisfies_statement(const SelfMap& F, const PointSet& A,
                                               const PointSet& B) {
    const ProximityReport rep = proximity_sets(A, B);
    for (const auto& [a, b] : rep.pairs)
        if (pair_satisfies_statement(F, A, B, a, b)) return true;
    return false;
}

inline SelfMap identity_map(const SpacePtr& space, const PointSet& S) {
    return SelfMap(space.get(), S.members(), S.members());
}

inline PointSet random_nonempty_subset(const SpacePtr& space, SplitMix64& rng) {
    std::vector<int> pool(static_cast<std::size_t>(space->size()));
    for (int i = 0; i < space->size(); ++i) pool[static_cast<std::size_t>(i)] = i;
    return PointSet(space.get(), sample_nonempty_subset(pool, rng));
}

/// Literal enumeration: every nonempty F-invariant subset of the space
/// contains a fixed point of F. Spaces are small enough for bitmask subsets.
inline bool every_invariant_subset_has_fixed_point(const SelfMap& F, const Space& space) {
    const int n = space.size();
    if (n > 20)
        throw PreconditionFailed("invariant-subset enumeration is limited to 20 points");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool invariant = true, has_fixed = false;
        for (int x = 0; x < n && invariant; ++x) {
            if (!(mask & (1u << x))) continue;
            const int fx = F.apply(x);
            if (!(mask & (1u << fx))) invariant = false;
            if (fx == x) has_fixed = true;
        }
        if (invariant && !has_fixed) return false;
    }
    return true;
}

} // namespace detail

/// Searches random instances WITHOUT the separation hypothesis for a
/// noncyclic nonexpansive map whose best proximity pairs all fail the
/// four-way classification. A hit would refute the conjectured extension
/// and is serialized in full.
inline ProbeReport probe_conjecture_210(std::uint64_t space_budget, std::uint64_t map_budget,
                                        std::uint64_t seed) {
    if (space_budget == 0 || map_budget == 0)
        throw PreconditionFailed("probe_conjecture_210: budgets must be positive");
    ProbeReport report;
    for (std::uint64_t si = 0; si < space_budget && !report.counterexample; ++si) {
        SplitMix64 rng = SplitMix64::fork(seed, 0x210ULL * 0x10001ULL + si);
        const int n = 2 + static_cast<int>(rng.below(9));
        const SpacePtr space = random_space(GenConfig::defaults(n, rng.next()));

        PointSet A, B;
        for (int attempt = 0; attempt < 20; ++attempt) {
            A = detail::random_nonempty_subset(space, rng);
            B = detail::random_nonempty_subset(space, rng);
            if (!check_separation(A, B)) break;
        }
        report.stats[check_separation(A, B) ? "separated_pairs" : "non_separated_pairs"] += 1;

        for (std::uint64_t mi = 0; mi < map_budget && !report.counterexample; ++mi) {
            SelfMap F;
            try {
                F = random_noncyclic_nonexpansive_map(space, A, B, rng.next());
            } catch (const GenerationExhausted&) {
                F = detail::identity_map(space, set_union(A, B));
                report.stats["identity_fallbacks"] += 1;
            }
            ++report.instances_checked;
            if (detail::some_best_pair_satisfies_statement(F, A, B)) {
                report.stats["satisfied"] += 1;
            } else {
                report.counterexample = ProbeInstance{space, A, B, F,
                                                      "no best proximity pair satisfies any statement"};
            }
        }
    }
    return report;
}

/// Tests, on random nonexpansive self-maps of whole spaces, the equivalence
/// between "every nonempty F-invariant subset contains a fixed point" and
/// the liminf orbit condition. The invariance qualifier is this probe's
/// reading of the subspace clause; it is recorded in the report.
inline ProbeReport probe_conjecture_115(std::uint64_t space_budget, std::uint64_t map_budget,
                                        std::uint64_t seed) {
    if (space_budget == 0 || map_budget == 0)
        throw PreconditionFailed("probe_conjecture_115: budgets must be positive");
    ProbeReport report;
    report.interpretation =
        "clause (i) is read as: every nonempty F-invariant subset contains a fixed point; "
        "without the invariance qualifier the clause forces F = identity on finite spaces";
    for (std::uint64_t si = 0; si < space_budget && !report.counterexample; ++si) {
        SplitMix64 rng = SplitMix64::fork(seed, 0x115ULL * 0x10001ULL + si);
        const int n = 2 + static_cast<int>(rng.below(9));
        const SpacePtr space = random_space(GenConfig::defaults(n, rng.next()));
        const PointSet all = space->all(space);

        for (std::uint64_t mi = 0; mi < map_budget && !report.counterexample; ++mi) {
            SelfMap F;
            try {
                F = random_noncyclic_nonexpansive_map(space, all, all, rng.next());
            } catch (const GenerationExhausted&) {
                F = detail::identity_map(space, all);
                report.stats["identity_fallbacks"] += 1;
            }
            ++report.instances_checked;

            const bool cond_i = detail::every_invariant_subset_has_fixed_point(F, *space);
            const bool cond_ii = liminf_condition(F, all).holds;
            if (cond_i == cond_ii) {
                report.stats["consistent"] += 1;
            } else {
                report.stats["inconsistent"] += 1;
                report.counterexample = ProbeInstance{space, all, all, F,
                                                      std::string("conditions disagree: (i)=") +
                                                          (cond_i ? "true" : "false") + ", (ii)=" +
                                                          (cond_ii ? "true" : "false")};
            }
        }
    }
    return report;
}

} // namespace umx
