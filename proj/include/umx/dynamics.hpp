#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umx/ball_tree.hpp"
#include "umx/proximity.hpp"
#include "umx/space.hpp"

namespace umx {

/// Total self-map of a point subset, given by table. The image is verified
/// to stay inside the domain at construction.
class SelfMap {
public:
    SelfMap() = default;

    SelfMap(const Space* space, std::vector<int> domain, std::vector<int> image)
        : space_(space), domain_(std::move(domain)), image_(std::move(image)) {
        if (domain_.size() != image_.size())
            throw DomainMismatchError("SelfMap: table is not total on its domain");
        for (std::size_t i = 1; i < domain_.size(); ++i)
            if (domain_[i - 1] >= domain_[i])
                throw DomainMismatchError("SelfMap: domain must be sorted and duplicate-free");
        for (int y : image_)
            if (!std::binary_search(domain_.begin(), domain_.end(), y))
                throw DomainMismatchError("SelfMap: image escapes the domain");
    }

    static SelfMap from_pairs(const PointSet& domain, const std::map<int, int>& table) {
        std::vector<int> image;
        image.reserve(domain.size());
        for (int x : domain.members()) {
            auto it = table.find(x);
            if (it == table.end())
                throw DomainMismatchError("SelfMap: table missing image of \"" +
                                          domain.space().label(x) + "\"");
            image.push_back(it->second);
        }
        if (table.size() != domain.size())
            throw DomainMismatchError("SelfMap: table keys differ from the domain");
        return SelfMap(domain.space_ptr(), domain.members(), std::move(image));
    }

    const Space& space() const { return *space_; }
    const Space* space_ptr() const { return space_; }
    PointSet domain() const { return PointSet(space_, domain_); }
    const std::vector<int>& domain_members() const { return domain_; }

    bool defined_on(int x) const {
        return std::binary_search(domain_.begin(), domain_.end(), x);
    }

    bool defined_on(const PointSet& S) const {
        for (int x : S.members())
            if (!defined_on(x)) return false;
        return true;
    }

    int apply(int x) const {
        auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
        if (it == domain_.end() || *it != x)
            throw DomainMismatchError("SelfMap: point outside the domain");
        return image_[static_cast<std::size_t>(it - domain_.begin())];
    }

    /// Image of a set under the map.
    PointSet image_of(const PointSet& S) const {
        std::vector<int> out;
        out.reserve(S.size());
        for (int x : S.members()) out.push_back(apply(x));
        return PointSet(space_, std::move(out));
    }

    bool maps_into(const PointSet& S) const {
        for (int x : S.members())
            if (!S.contains(apply(x))) return false;
        return true;
    }

    friend bool operator==(const SelfMap& a, const SelfMap& b) {
        return a.space_ == b.space_ && a.domain_ == b.domain_ && a.image_ == b.image_;
    }

private:
    const Space* space_ = nullptr;
    std::vector<int> domain_;  // sorted indices
    std::vector<int> image_;   // image_[i] = F(domain_[i])
};

inline void require_covers(const SelfMap& F, const PointSet& S, const char* who) {
    if (F.space_ptr() != S.space_ptr())
        throw DomainMismatchError(std::string(who) + ": map and set live in different spaces");
    if (!F.defined_on(S))
        throw DomainMismatchError(std::string(who) + ": map is not defined on the whole set");
}

/// F(A) in A and F(B) in B, with domain(F) = A u B.
inline bool is_noncyclic(const SelfMap& F, const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    const PointSet both = set_union(A, B);
    if (F.space_ptr() != A.space_ptr() || !(F.domain() == both))
        throw DomainMismatchError("is_noncyclic: domain(F) must equal A u B");
    return F.maps_into(A) && F.maps_into(B);
}

/// Verdict of an exhaustively checked map predicate, with the first
/// counterexample as a diagnostic when it fails.
struct PredicateResult {
    bool holds = true;
    std::optional<std::pair<int, int>> pair_witness;
    std::optional<int> point_witness;
};

inline PredicateResult is_nonexpansive(const SelfMap& F, const PointSet& S) {
    require_covers(F, S, "is_nonexpansive");
    const Space& sp = S.space();
    const auto& m = S.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (sp.dist(m[i], m[j]) < sp.dist(F.apply(m[i]), F.apply(m[j])))
                return {false, std::make_pair(m[i], m[j]), std::nullopt};
    return {};
}

inline PredicateResult is_strictly_contractive(const SelfMap& F, const PointSet& S) {
    require_covers(F, S, "is_strictly_contractive");
    const Space& sp = S.space();
    const auto& m = S.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (!(sp.dist(F.apply(m[i]), F.apply(m[j])) < sp.dist(m[i], m[j])))
                return {false, std::make_pair(m[i], m[j]), std::nullopt};
    return {};
}

inline PredicateResult is_strictly_contractive_on_orbit(const SelfMap& F, const PointSet& S) {
    require_covers(F, S, "is_strictly_contractive_on_orbit");
    const Space& sp = S.space();
    for (int x : S.members()) {
        const int fx = F.apply(x);
        if (fx == x) continue;
        if (!(sp.dist(F.apply(fx), fx) < sp.dist(fx, x)))
            return {false, std::nullopt, x};
    }
    return {};
}

/// Exact orbit of x: pre-periodic tail, then the cycle, plus the gap
/// d(y, F(y)) for every visited y (the last cycle element wraps around).
struct OrbitDecomposition {
    std::vector<int> tail;
    std::vector<int> cycle;
    std::vector<Rat> gaps;  // one per element of tail + cycle, in orbit order
};

inline OrbitDecomposition orbit(const SelfMap& F, int x) {
    if (!F.defined_on(x)) throw DomainMismatchError("orbit: x outside domain(F)");
    const Space& sp = F.space();
    std::vector<int> seq;
    std::map<int, std::size_t> seen;
    int cur = x;
    while (!seen.count(cur)) {
        seen[cur] = seq.size();
        seq.push_back(cur);
        cur = F.apply(cur);
    }
    const std::size_t entry = seen[cur];
    OrbitDecomposition out;
    out.tail.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(entry));
    out.cycle.assign(seq.begin() + static_cast<std::ptrdiff_t>(entry), seq.end());
    out.gaps.reserve(seq.size());
    for (int y : seq) out.gaps.push_back(sp.dist(y, F.apply(y)));
    return out;
}

/// liminf of the step distances along the orbit of x. The gap sequence is
/// eventually periodic, so the liminf is the least gap over the cycle.
inline Rat orbit_liminf(const SelfMap& F, int x) {
    const OrbitDecomposition orb = orbit(F, x);
    const Space& sp = F.space();
    Rat best = sp.dist(orb.cycle.front(), F.apply(orb.cycle.front()));
    for (int y : orb.cycle) best = rat_min(best, sp.dist(y, F.apply(y)));
    return best;
}

struct LiminfResult {
    bool holds = true;
    std::optional<int> counterexample;
};

/// For every non-fixed x in S: liminf_n d(F^n x, F^{n+1} x) < d(x, F(x)).
inline LiminfResult liminf_condition(const SelfMap& F, const PointSet& S) {
    require_covers(F, S, "liminf_condition");
    if (!F.maps_into(S))
        throw DomainMismatchError("liminf_condition: F does not map S into S");
    const Space& sp = S.space();
    for (int x : S.members()) {
        if (F.apply(x) == x) continue;
        if (!(orbit_liminf(F, x) < sp.dist(x, F.apply(x)))) return {false, x};
    }
    return {};
}

inline PointSet fixed_points(const SelfMap& F, const PointSet& S) {
    require_covers(F, S, "fixed_points");
    std::vector<int> out;
    for (int x : S.members())
        if (F.apply(x) == x) out.push_back(x);
    return PointSet(S.space_ptr(), std::move(out));
}

/// Minimal F-invariant ball: a closed ball of positive radius r with
/// F(B) in B and d(y, F(y)) = r for every y in B; contains no strictly
/// smaller F-invariant closed ball.
struct MinimalBall {
    int center = -1;  // least-label member; any member is a center
    Rat radius;
    PointSet members;
};

/// All minimal F-invariant balls of the subspace S. Candidates are the
/// distinct closed balls of S (ball-tree nodes); the radius pinned by the
/// membership condition is exactly the node diameter.
inline std::vector<MinimalBall> minimal_invariant_balls(const SelfMap& F, const PointSet& S) {
    require_covers(F, S, "minimal_invariant_balls");
    if (!F.maps_into(S))
        throw DomainMismatchError("minimal_invariant_balls: F does not map S into S");
    const Space& sp = S.space();
    const BallTree tree = ball_tree(S);

    std::vector<int> invariant_nodes;  // every F-invariant ball of S
    std::vector<int> candidates;
    for (int id = 0; id < static_cast<int>(tree.nodes().size()); ++id) {
        const auto& node = tree.node(id);
        PointSet V = tree.node_set(id);
        if (!F.maps_into(V)) continue;
        invariant_nodes.push_back(id);
        if (node.diam.is_zero()) continue;
        bool uniform_gap = true;
        for (int y : node.members)
            if (!(sp.dist(y, F.apply(y)) == node.diam)) {
                uniform_gap = false;
                break;
            }
        if (uniform_gap) candidates.push_back(id);
    }

    // Inclusion-minimality against every invariant ball. Cannot fire for a
    // candidate (a smaller invariant ball would break the uniform gap), but
    // is kept as a cheap guard on the definition.
    std::vector<MinimalBall> out;
    for (int id : candidates) {
        bool minimal = true;
        for (int other : invariant_nodes) {
            if (other == id) continue;
            const auto& a = tree.node(id).members;
            const auto& b = tree.node(other).members;
            if (b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end())) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        PointSet V = tree.node_set(id);
        out.push_back(MinimalBall{least_label_member(V), tree.node(id).diam, V});
    }
    std::sort(out.begin(), out.end(), [&sp](const MinimalBall& a, const MinimalBall& b) {
        if (!(a.radius == b.radius)) return a.radius < b.radius;
        return sp.label(a.center) < sp.label(b.center);
    });
    return out;
}

/// Outcome of the ball dichotomy: each ball B(x, d(x,F(x))) of a subspace
/// contains a fixed point or a minimal F-invariant ball.
struct KsResult {
    bool fixed = false;
    int fixed_point = -1;           // when fixed
    std::optional<MinimalBall> ball;  // when not fixed
};

inline KsResult ks_dichotomy(const SelfMap& F, int x, const PointSet& S) {
    require_covers(F, S, "ks_dichotomy");
    if (!S.contains(x)) throw PreconditionFailed("ks_dichotomy: x not in S");
    if (!F.maps_into(S)) throw PreconditionFailed("ks_dichotomy: F does not map S into S");
    if (!is_nonexpansive(F, S).holds)
        throw PreconditionFailed("ks_dichotomy: F is not nonexpansive on S");

    const Space& sp = S.space();
    const PointSet D = closed_ball_in(S, x, sp.dist(x, F.apply(x)));
    const PointSet fixed = fixed_points(F, D);
    if (!fixed.empty()) return {true, least_label_member(fixed), std::nullopt};

    for (const MinimalBall& mb : minimal_invariant_balls(F, S)) {
        if (std::includes(D.members().begin(), D.members().end(), mb.members.members().begin(),
                          mb.members.members().end()))
            return {false, -1, mb};
    }
    throw TheoremViolation("ks_dichotomy: ball B(x, d(x,Fx)) contains neither a fixed point nor a minimal invariant ball");
}

/// Four-way outcome for a noncyclic nonexpansive map on a separated pair:
/// (i) both witnesses fixed, (ii) fixed in A and a minimal ball in B,
/// (iii) fixed in B and a minimal ball in A, (iv) two minimal balls whose
/// cross pairs are all best proximity pairs.
struct Classification {
    enum class Statement { i, ii, iii, iv };

    Statement statement = Statement::i;
    int a_star = -1;
    int b_star = -1;
    std::optional<MinimalBall> ballA;
    std::optional<MinimalBall> ballB;

    static const char* statement_name(Statement s) {
        switch (s) {
            case Statement::i: return "i";
            case Statement::ii: return "ii";
            case Statement::iii: return "iii";
            case Statement::iv: return "iv";
        }
        return "?";
    }
};

namespace detail {

struct SideOutcome {
    bool fixed = false;
    int witness = -1;  // fixed point, or least-label member of the ball
    std::optional<MinimalBall> ball;
};

/// Dichotomy on one proximity set: prefer a fixed point; otherwise take the
/// minimal invariant ball of least diameter (ties by least member label).
inline SideOutcome classify_side(const SelfMap& F, const PointSet& P0, const char* side) {
    const PointSet fixed = fixed_points(F, P0);
    if (!fixed.empty()) return {true, least_label_member(fixed), std::nullopt};
    std::vector<MinimalBall> balls = minimal_invariant_balls(F, P0);
    if (balls.empty())
        throw TheoremViolation(std::string("classify: no fixed point and no minimal invariant ball in ") + side);
    return {false, balls.front().center, balls.front()};
}

/// Re-derive the ball in the enclosing subspace P (A or B) and insist it is
/// the same point set: balls of P0 lift to balls of P.
inline void check_ball_lift(const SelfMap& F, const PointSet& P, const MinimalBall& mb) {
    const Space& sp = P.space();
    const PointSet lifted = closed_ball_in(P, mb.center, sp.dist(mb.center, F.apply(mb.center)));
    if (!(lifted == mb.members))
        throw TheoremViolation("classify: minimal ball does not lift to a ball of the enclosing set");
}

} // namespace detail

inline Classification classify_theorem28(const SelfMap& F, const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (A.empty() || B.empty()) throw PreconditionFailed("classify: empty side");
    if (!check_separation(A, B))
        throw PreconditionFailed("classify: hypothesis delta(B) <= dist(A,B) fails");
    const PointSet both = set_union(A, B);
    if (F.space_ptr() != A.space_ptr() || !(F.domain() == both))
        throw PreconditionFailed("classify: domain(F) must equal A u B");
    if (!(F.maps_into(A) && F.maps_into(B)))
        throw PreconditionFailed("classify: hypothesis F noncyclic fails");
    if (!is_nonexpansive(F, both).holds)
        throw PreconditionFailed("classify: hypothesis F nonexpansive on A u B fails");

    const Space& sp = A.space();
    const ProximityReport rep = proximity_sets(A, B);

    // The proximity sets are themselves invariant; verified, not assumed.
    if (!F.maps_into(rep.A0)) throw TheoremViolation("classify: F(A0) escapes A0");
    if (!F.maps_into(rep.B0)) throw TheoremViolation("classify: F(B0) escapes B0");

    const detail::SideOutcome sa = detail::classify_side(F, rep.A0, "A0");
    const detail::SideOutcome sb = detail::classify_side(F, rep.B0, "B0");

    Classification cls;
    cls.a_star = sa.witness;
    cls.b_star = sb.witness;
    cls.ballA = sa.ball;
    cls.ballB = sb.ball;
    cls.statement = sa.fixed ? (sb.fixed ? Classification::Statement::i : Classification::Statement::ii)
                             : (sb.fixed ? Classification::Statement::iii : Classification::Statement::iv);

    // Machine-check every witness before returning.
    if (!(sp.dist(cls.a_star, cls.b_star) == rep.dist))
        throw TheoremViolation("classify: (a*, b*) is not a best proximity pair");
    if (sa.fixed && F.apply(cls.a_star) != cls.a_star)
        throw TheoremViolation("classify: a* is not fixed");
    if (sb.fixed && F.apply(cls.b_star) != cls.b_star)
        throw TheoremViolation("classify: b* is not fixed");
    if (cls.ballA) detail::check_ball_lift(F, A, *cls.ballA);
    if (cls.ballB) detail::check_ball_lift(F, B, *cls.ballB);
    if (cls.statement == Classification::Statement::ii) {
        for (int y : cls.ballB->members.members())
            if (!(sp.dist(cls.a_star, y) == rep.dist))
                throw TheoremViolation("classify: a ball point is not nearest to a*");
    }
    if (cls.statement == Classification::Statement::iii) {
        for (int y : cls.ballA->members.members())
            if (!(sp.dist(y, cls.b_star) == rep.dist))
                throw TheoremViolation("classify: a ball point is not nearest to b*");
    }
    if (cls.statement == Classification::Statement::iv) {
        const Rat cross = dist_set_set(cls.ballA->members, cls.ballB->members).value;
        for (int x : cls.ballA->members.members())
            for (int y : cls.ballB->members.members())
                if (!(sp.dist(x, y) == cross && sp.dist(x, y) == rep.dist))
                    throw TheoremViolation("classify: a cross pair of the two balls is not a best proximity pair");
    }
    return cls;
}

/// Under separation + noncyclic + nonexpansive + the liminf orbit condition,
/// both sides own fixed points realizing dist(A,B).
inline std::pair<int, int> theorem211_solve(const SelfMap& F, const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (A.empty() || B.empty()) throw PreconditionFailed("theorem211: empty side");
    if (!check_separation(A, B))
        throw PreconditionFailed("theorem211: hypothesis delta(B) <= dist(A,B) fails");
    const PointSet both = set_union(A, B);
    if (F.space_ptr() != A.space_ptr() || !(F.domain() == both))
        throw PreconditionFailed("theorem211: domain(F) must equal A u B");
    if (!(F.maps_into(A) && F.maps_into(B)))
        throw PreconditionFailed("theorem211: hypothesis F noncyclic fails");
    if (!is_nonexpansive(F, both).holds)
        throw PreconditionFailed("theorem211: hypothesis F nonexpansive fails");
    if (!liminf_condition(F, both).holds)
        throw PreconditionFailed("theorem211: liminf orbit condition fails");

    const Space& sp = A.space();
    const ProximityReport rep = proximity_sets(A, B);
    if (!F.maps_into(rep.A0) || !F.maps_into(rep.B0))
        throw TheoremViolation("theorem211: proximity sets are not invariant");
    const PointSet fa = fixed_points(F, rep.A0);
    const PointSet fb = fixed_points(F, rep.B0);
    if (fa.empty() || fb.empty())
        throw TheoremViolation("theorem211: no fixed point in a proximity set");
    const int a = least_label_member(fa);
    const int b = least_label_member(fb);
    if (!(sp.dist(a, b) == rep.dist))
        throw TheoremViolation("theorem211: returned pair does not realize dist(A,B)");
    return {a, b};
}

struct Theorem213Result {
    int p = -1;
    bool certified = false;  // B = B0 = A0 = {p} and dist(A,B) = 0 all verified
};

/// A noncyclic strictly contractive map on a separated pair forces total
/// degeneracy: dist(A,B) = 0 and B = B0 = A0 = {p} for the unique fixed point.
inline Theorem213Result theorem213_solve(const SelfMap& F, const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (A.empty() || B.empty()) throw PreconditionFailed("theorem213: empty side");
    if (!check_separation(A, B))
        throw PreconditionFailed("theorem213: hypothesis delta(B) <= dist(A,B) fails");
    const PointSet both = set_union(A, B);
    if (F.space_ptr() != A.space_ptr() || !(F.domain() == both))
        throw PreconditionFailed("theorem213: domain(F) must equal A u B");
    if (!(F.maps_into(A) && F.maps_into(B)))
        throw PreconditionFailed("theorem213: hypothesis F noncyclic fails");
    if (!is_strictly_contractive(F, both).holds)
        throw PreconditionFailed("theorem213: hypothesis F strictly contractive fails");

    const PointSet fixed = fixed_points(F, both);
    if (fixed.size() != 1)
        throw TheoremViolation("theorem213: fixed point is not unique");
    const int p = fixed.members().front();
    const ProximityReport rep = proximity_sets(A, B);
    const bool ok = rep.dist.is_zero() && B.size() == 1 && B.contains(p) &&
                    rep.B0.size() == 1 && rep.B0.contains(p) && rep.A0.size() == 1 &&
                    rep.A0.contains(p);
    if (!ok) throw TheoremViolation("theorem213: degeneracy B = B0 = A0 = {p} failed to verify");
    return {p, true};
}

} // namespace umx
