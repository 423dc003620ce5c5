#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umx/ball_tree.hpp"
#include "umx/space.hpp"

namespace umx {

/// All best approximations to x in A: the a0 with d(x,a0) = dist(x,A).
/// Nonempty for nonempty A (finite sets are proximinal).
inline PointSet nearest_points(int x, const PointSet& A) {
    if (A.empty()) throw EmptySetError("nearest_points: A is empty");
    const Space& sp = A.space();
    const Rat best = dist_point_set(x, A);
    std::vector<int> out;
    for (int a : A.members())
        if (sp.dist(x, a) == best) out.push_back(a);
    return PointSet(A.space_ptr(), std::move(out));
}

/// The proximity sets A0, B0 and every best proximity pair of (A, B).
struct ProximityReport {
    PointSet A0;
    PointSet B0;
    Rat dist;
    Rat deltaA;
    Rat deltaB;
    std::vector<std::pair<int, int>> pairs;  // attaining pairs, label-lex order
    bool separated = false;                  // delta(B) <= dist(A, B)
};

inline ProximityReport proximity_sets(const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (A.empty() || B.empty()) throw EmptySetError("proximity_sets: empty operand");
    const Space& sp = A.space();

    ProximityReport rep;
    rep.dist = dist_set_set(A, B).value;
    rep.deltaA = diameter(A);
    rep.deltaB = diameter(B);
    rep.separated = !(rep.dist < rep.deltaB);

    std::vector<int> a0, b0;
    for (int a : A.members())
        for (int b : B.members())
            if (sp.dist(a, b) == rep.dist) {
                a0.push_back(a);
                b0.push_back(b);
                rep.pairs.emplace_back(a, b);
            }
    rep.A0 = PointSet(A.space_ptr(), std::move(a0));
    rep.B0 = PointSet(A.space_ptr(), std::move(b0));
    std::sort(rep.pairs.begin(), rep.pairs.end(), [&sp](const auto& p, const auto& q) {
        if (sp.label(p.first) != sp.label(q.first)) return sp.label(p.first) < sp.label(q.first);
        return sp.label(p.second) < sp.label(q.second);
    });
    return rep;
}

/// delta(B) <= dist(A, B): the standing separation hypothesis.
inline bool check_separation(const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (A.empty() || B.empty()) throw EmptySetError("check_separation: empty operand");
    return !(dist_set_set(A, B).value < diameter(B));
}

struct Lemma21Result {
    bool applicable = false;  // separation holds
    bool A0_nonempty = false;
    bool B0_equals_B = false;
};

/// Under separation, A0 is nonempty and B0 = B. A failed conclusion while
/// applicable is a proven-result breach and throws.
inline Lemma21Result lemma21_check(const PointSet& A, const PointSet& B) {
    Lemma21Result r;
    r.applicable = check_separation(A, B);
    const ProximityReport rep = proximity_sets(A, B);
    r.A0_nonempty = !rep.A0.empty();
    r.B0_equals_B = rep.B0 == B;
    if (r.applicable && !(r.A0_nonempty && r.B0_equals_B))
        throw LemmaViolation("lemma21: conclusion failed on a separated pair");
    return r;
}

struct Lemma23Result {
    PointSet lhs;         // A0 computed from the definition
    PointSet sphere_rhs;  // A intersected with S(b0, r)
    PointSet ball_rhs;    // A intersected with B(b0, r)
    bool equal = false;
};

/// A0 = A n S(b0, r) = A n B(b0, r) with r = dist(A,B), for any b0 in B.
/// Requires separation.
inline Lemma23Result lemma23_identity(const PointSet& A, const PointSet& B, int b0) {
    require_same_space(A, B);
    if (!B.contains(b0))
        throw DomainMismatchError("lemma23_identity: b0 not in B");
    if (!check_separation(A, B))
        throw PreconditionFailed("lemma23_identity: delta(B) > dist(A, B)");
    const ProximityReport rep = proximity_sets(A, B);
    const Space& sp = A.space();
    std::vector<int> sph, ball;
    for (int y = 0; y < sp.size(); ++y) {
        if (sp.dist(b0, y) == rep.dist) sph.push_back(y);
        if (!(rep.dist < sp.dist(b0, y))) ball.push_back(y);
    }
    Lemma23Result r;
    r.lhs = rep.A0;
    r.sphere_rhs = set_intersection(A, PointSet(A.space_ptr(), std::move(sph)));
    r.ball_rhs = set_intersection(A, PointSet(A.space_ptr(), std::move(ball)));
    r.equal = r.lhs == r.sphere_rhs && r.lhs == r.ball_rhs;
    return r;
}

/// The three equivalent characterizations of a separated pair, each evaluated
/// independently and cross-checked.
struct Theorem25Report {
    bool stmt_i = false;
    std::optional<int> witness_a;  // least-label a' with d(a',b)=dist(A,B) for all b
    bool stmt_ii = false;
    struct StatementIII {
        bool holds = false;
        bool B0_equals_B = false;
        bool dist_preserved = false;  // dist(A0,B0) = dist(A,B)
        bool all_pairs_best = false;  // every (a,b) in A0 x B0 attains dist(A,B)
        bool A0_proximinal = false;
        bool B0_proximinal = false;
    } stmt_iii;
    bool equivalent = false;  // i <=> ii <=> iii
};

/// Literal proximinality of S in its space: every point of the space has an
/// attained nearest point in S. Always true on finite spaces; verified
/// exhaustively rather than assumed.
inline bool proximinal_in_space(const PointSet& S) {
    if (S.empty()) return false;
    const Space& sp = S.space();
    for (int x = 0; x < sp.size(); ++x) {
        const Rat d = dist_point_set(x, S);
        bool attained = false;
        for (int s : S.members())
            if (sp.dist(x, s) == d) {
                attained = true;
                break;
            }
        if (!attained) return false;
    }
    return true;
}

inline Theorem25Report theorem25_report(const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (A.empty() || B.empty()) throw EmptySetError("theorem25_report: empty operand");
    const Space& sp = A.space();
    const ProximityReport rep = proximity_sets(A, B);

    Theorem25Report out;

    // (i): some a' in A is equidistant to the whole of B at dist(A,B).
    for (int a : A.members()) {
        bool all_match = true;
        for (int b : B.members())
            if (!(sp.dist(a, b) == rep.dist)) {
                all_match = false;
                break;
            }
        if (all_match && (!out.witness_a || sp.label(a) < sp.label(*out.witness_a)))
            out.witness_a = a;
    }
    out.stmt_i = out.witness_a.has_value();

    // (ii): separation.
    out.stmt_ii = rep.separated;

    // (iii): structure of (A0, B0), each clause checked literally.
    auto& s3 = out.stmt_iii;
    s3.B0_equals_B = rep.B0 == B;
    if (!rep.A0.empty() && !rep.B0.empty()) {
        s3.dist_preserved = dist_set_set(rep.A0, rep.B0).value == rep.dist;
        s3.all_pairs_best = true;
        for (int a : rep.A0.members())
            for (int b : rep.B0.members())
                if (!(sp.dist(a, b) == rep.dist)) s3.all_pairs_best = false;
        s3.A0_proximinal = proximinal_in_space(rep.A0);
        s3.B0_proximinal = proximinal_in_space(rep.B0);
    }
    s3.holds = s3.B0_equals_B && s3.dist_preserved && s3.all_pairs_best && s3.A0_proximinal &&
               s3.B0_proximinal;

    out.equivalent = (out.stmt_i == out.stmt_ii) && (out.stmt_ii == s3.holds);
    return out;
}

/// Under separation, (A0, B0) is a nonempty pair and A0 is the trace of an
/// ambient closed ball on A. Conclusion failures throw (proven result).
inline bool corollary27_check(const PointSet& A, const PointSet& B) {
    require_same_space(A, B);
    if (!check_separation(A, B))
        throw PreconditionFailed("corollary27_check: delta(B) > dist(A, B)");
    const ProximityReport rep = proximity_sets(A, B);
    if (rep.A0.empty() || rep.B0.empty())
        throw TheoremViolation("corollary27: empty proximity set on a separated pair");
    const Space& sp = A.space();
    for (int b0 : B.members()) {
        std::vector<int> ball;
        for (int y = 0; y < sp.size(); ++y)
            if (!(rep.dist < sp.dist(b0, y))) ball.push_back(y);
        if (!(set_intersection(A, PointSet(A.space_ptr(), std::move(ball))) == rep.A0))
            throw TheoremViolation("corollary27: A0 is not the trace of the ambient ball B(b0, r)");
    }
    return true;
}

} // namespace umx
