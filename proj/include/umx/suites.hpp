#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "umx/json_io.hpp"
#include "umx/probe.hpp"

namespace umx {

struct SuiteFailure {
    std::uint64_t instance = 0;
    std::string description;
    Json repro = nullptr;
};

struct SuiteResult {
    std::string name;
    std::uint64_t instances = 0;
    std::uint64_t checks = 0;
    std::vector<SuiteFailure> failures;
    std::map<std::string, std::uint64_t> stats;

    bool passed() const { return failures.empty(); }
};

inline Json suite_result_json(const SuiteResult& r) {
    Json j;
    j["suite"] = r.name;
    j["instances"] = r.instances;
    j["checks"] = r.checks;
    Json stats = Json::object();
    for (const auto& [k, v] : r.stats) stats[k] = v;
    j["stats"] = std::move(stats);
    Json fails = Json::array();
    for (const auto& f : r.failures)
        fails.push_back(Json{{"instance", f.instance}, {"description", f.description}, {"repro", f.repro}});
    j["failures"] = std::move(fails);
    j["passed"] = r.passed();
    return j;
}

namespace detail {

struct SuiteRng {
    SplitMix64 rng;

    SuiteRng(std::uint64_t seed, std::uint64_t salt, std::uint64_t index)
        : rng(SplitMix64::fork(seed, salt * 0x100000001b3ULL + index)) {}

    SpacePtr make_space(int max_points, int min_points = 2) {
        if (min_points > max_points) min_points = max_points;  // degenerate corpora
        const int span = max_points - min_points + 1;
        const int n = min_points + static_cast<int>(rng.below(static_cast<std::uint64_t>(span)));
        GenConfig cfg = GenConfig::defaults(n, rng.next());
        cfg.branching = 2 + static_cast<int>(rng.below(3));
        return random_space(cfg);
    }

    SeparatedPair separated_pair(const SpacePtr& space) {
        if (space->size() < 2) {
            // One-point spaces have no proper ball; the only pair is the
            // degenerate separated pair A = B = {x}.
            PointSet all = space->all(space);
            return {all, all};
        }
        return random_separated_pair(space, rng.next());
    }

    /// Random pair biased toward breaking separation; reports whether it did.
    std::pair<PairSelection, bool> non_separated_pair(const SpacePtr& space) {
        PairSelection sel{detail::random_nonempty_subset(space, rng),
                          detail::random_nonempty_subset(space, rng)};
        for (int attempt = 0; attempt < 50 && check_separation(sel.A, sel.B); ++attempt)
            sel = {detail::random_nonempty_subset(space, rng),
                   detail::random_nonempty_subset(space, rng)};
        return {sel, !check_separation(sel.A, sel.B)};
    }
};

template <typename Body>
inline void suite_instance(SuiteResult& out, std::uint64_t index, Body&& body) {
    ++out.instances;
    try {
        body();
    } catch (const Error& e) {
        out.failures.push_back({index, e.what(), nullptr});
    }
}

inline void expect(SuiteResult& out, std::uint64_t index, bool ok, const std::string& what,
                   Json repro = nullptr) {
    ++out.checks;
    if (!ok) out.failures.push_back({index, what, std::move(repro)});
}

} // namespace detail

/// Separated pairs: A0 nonempty, B0 = B, and every a in A is equidistant to
/// the whole of B.
inline SuiteResult run_suite_lemma21(std::uint64_t count, std::uint64_t seed, int max_points) {
    SuiteResult out;
    out.name = "lemma21";
    for (std::uint64_t i = 0; i < count; ++i) {
        detail::suite_instance(out, i, [&] {
            detail::SuiteRng r(seed, 0x21, i);
            const SpacePtr space = r.make_space(max_points);
            const auto [A, B] = r.separated_pair(space);
            const Json repro = instance_json(space, &A, &B, nullptr);

            const Lemma21Result lem = lemma21_check(A, B);
            detail::expect(out, i, lem.applicable && lem.A0_nonempty && lem.B0_equals_B,
                           "lemma21 verdicts not all true on a separated pair", repro);

            bool constant_cross = true;
            const Space& sp = *space;
            for (int a : A.members())
                for (int b : B.members())
                    if (!(sp.dist(a, b) == sp.dist(a, B.members().front()))) constant_cross = false;
            detail::expect(out, i, constant_cross,
                           "cross distances from a point of A to B are not constant", repro);
        });
    }
    return out;
}

/// A0 = A n S(b0, r) = A n B(b0, r) for every b0 in B, r = dist(A,B).
inline SuiteResult run_suite_lemma23(std::uint64_t count, std::uint64_t seed, int max_points) {
    SuiteResult out;
    out.name = "lemma23";
    for (std::uint64_t i = 0; i < count; ++i) {
        detail::suite_instance(out, i, [&] {
            detail::SuiteRng r(seed, 0x23, i);
            const SpacePtr space = r.make_space(max_points);
            const auto [A, B] = r.separated_pair(space);
            const Json repro = instance_json(space, &A, &B, nullptr);
            for (int b0 : B.members())
                detail::expect(out, i, lemma23_identity(A, B, b0).equal,
                               "sphere/ball identity for A0 failed at b0 = " + space->label(b0),
                               repro);
        });
    }
    return out;
}

/// Every point outside a closed ball is equidistant to all of the ball.
inline SuiteResult run_suite_lemma24(std::uint64_t count, std::uint64_t seed, int max_points) {
    SuiteResult out;
    out.name = "lemma24";
    for (std::uint64_t i = 0; i < count; ++i) {
        detail::suite_instance(out, i, [&] {
            detail::SuiteRng r(seed, 0x24, i);
            const SpacePtr space = r.make_space(max_points);
            const Json repro = instance_json(space, nullptr, nullptr, nullptr);
            const BallTree tree = ball_tree(space->all(space));
            const Space& sp = *space;
            for (const auto& node : tree.nodes()) {
                for (int x = 0; x < sp.size(); ++x) {
                    if (std::binary_search(node.members.begin(), node.members.end(), x)) continue;
                    const Rat& ref = sp.dist(x, node.members.front());
                    bool equidistant = true;
                    for (int a : node.members)
                        if (!(sp.dist(x, a) == ref)) equidistant = false;
                    detail::expect(out, i, equidistant,
                                   "outside point " + sp.label(x) + " not equidistant to a ball",
                                   repro);
                }
            }
        });
    }
    return out;
}

/// The three characterizations agree on separated and non-separated pairs.
inline SuiteResult run_suite_thm25(std::uint64_t count, std::uint64_t seed, int max_points) {
    SuiteResult out;
    out.name = "thm25";
    for (std::uint64_t i = 0; i < count; ++i) {
        detail::suite_instance(out, i, [&] {
            detail::SuiteRng r(seed, 0x25, i);
            const SpacePtr space = r.make_space(max_points);

            const auto [A, B] = r.separated_pair(space);
            out.stats["separated_instances"] += 1;
            detail::expect(out, i, theorem25_report(A, B).equivalent,
                           "statements (i)/(ii)/(iii) disagree on a separated pair",
                           instance_json(space, &A, &B, nullptr));

            const auto [sel, broke] = r.non_separated_pair(space);
            out.stats[broke ? "non_separated_instances" : "separated_fallbacks"] += 1;
            detail::expect(out, i, theorem25_report(sel.A, sel.B).equivalent,
                           "statements (i)/(ii)/(iii) disagree on a random pair",
                           instance_json(space, &sel.A, &sel.B, nullptr));
        });
    }
    return out;
}

namespace detail {

/// Independent re-verification of a returned classification.
inline void verify_classification(SuiteResult& out, std::uint64_t index, const SpacePtr& space,
                                  const SelfMap& F, const PointSet& A, const PointSet& B,
                                  const Classification& cls) {
    const Space& sp = *space;
    const Json repro = instance_json(space, &A, &B, &F);
    const ProximityReport rep = proximity_sets(A, B);
    auto check = [&](bool ok, const std::string& what) { expect(out, index, ok, what, repro); };

    check(sp.dist(cls.a_star, cls.b_star) == rep.dist, "(a*, b*) is not a best proximity pair");
    check(F.maps_into(rep.A0), "F(A0) escapes A0");
    check(F.maps_into(rep.B0), "F(B0) escapes B0");

    using St = Classification::Statement;
    const bool wantA = cls.statement == St::iii || cls.statement == St::iv;
    const bool wantB = cls.statement == St::ii || cls.statement == St::iv;
    check(cls.ballA.has_value() == wantA && cls.ballB.has_value() == wantB,
          "witness payload does not match the statement tag");
    check((F.apply(cls.a_star) == cls.a_star) == !wantA, "a* fixedness contradicts the statement");
    check((F.apply(cls.b_star) == cls.b_star) == !wantB, "b* fixedness contradicts the statement");

    auto check_ball = [&](const MinimalBall& mb, const PointSet& side, const PointSet& side0,
                          const char* name) {
        check(minimal_invariant_ball_at(F, side, mb.center),
              std::string(name) + " is not a minimal invariant ball of its side");
        check(std::includes(side0.members().begin(), side0.members().end(),
                            mb.members.members().begin(), mb.members.members().end()),
              std::string(name) + " is not contained in the proximity set");
        check(!mb.radius.is_zero(), std::string(name) + " has zero radius");
        check(closed_ball_in(side, mb.center, sp.dist(mb.center, F.apply(mb.center))) == mb.members,
              std::string(name) + " is not B(center, d(center, F center)) in its side");
    };
    if (cls.ballA) check_ball(*cls.ballA, A, rep.A0, "ballA");
    if (cls.ballB) check_ball(*cls.ballB, B, rep.B0, "ballB");

    if (cls.statement == St::ii)
        for (int y : cls.ballB->members.members())
            check(sp.dist(cls.a_star, y) == rep.dist, "ball point not nearest to a*");
    if (cls.statement == St::iii)
        for (int y : cls.ballA->members.members())
            check(sp.dist(y, cls.b_star) == rep.dist, "ball point not nearest to b*");
    if (cls.statement == St::iv) {
        const Rat cross = dist_set_set(cls.ballA->members, cls.ballB->members).value;
        check(cross == rep.dist, "ball-to-ball distance differs from dist(A,B)");
        for (int x : cls.ballA->members.members())
            for (int y : cls.ballB->members.members())
                check(sp.dist(x, y) == cross, "a cross pair of the balls is not best");
    }
}

} // namespace detail

/// Classifier on generated noncyclic nonexpansive maps; every witness is
/// re-verified from scratch and a statement histogram is kept.
inline SuiteResult run_suite_thm28(std::uint64_t count, std::uint64_t seed, int max_points) {
    SuiteResult out;
    out.name = "thm28";
    for (std::uint64_t i = 0; i < count; ++i) {
        detail::suite_instance(out, i, [&] {
            detail::SuiteRng r(seed, 0x28, i);
            const SpacePtr space = r.make_space(max_points);
            const auto [A, B] = r.separated_pair(space);
            const SelfMap F = random_noncyclic_nonexpansive_map(space, A, B, r.rng.next());

            const Classification cls = classify_theorem28(F, A, B);
            out.stats[std::string("statement_") + Classification::statement_name(cls.statement)] += 1;
            detail::verify_classification(out, i, space, F, A, B, cls);
        });
    }
    return out;
}

/// Fixed points on both sides realizing dist(A,B), under the liminf condition.
inline SuiteResult run_suite_thm211(std::uint64_t count, std::uint64_t seed, int max_points) {
    SuiteResult out;
    out.name = "thm211";
    for (std::uint64_t i = 0; i < count; ++i) {
        detail::suite_instance(out, i, [&] {
            detail::SuiteRng r(seed, 0x211, i);
            const SpacePtr space = r.make_space(max_points);
            const auto [A, B] = r.separated_pair(space);
            const PointSet both = set_union(A, B);

            SelfMap F = detail::identity_map(space, both);
            bool found = false;
            for (int attempt = 0; attempt < 50 && !found; ++attempt) {
                SelfMap candidate = random_noncyclic_nonexpansive_map(space, A, B, r.rng.next());
                if (liminf_condition(candidate, both).holds) {
                    F = candidate;
                    found = true;
                }
            }
            if (!found) out.stats["identity_fallbacks"] += 1;

            const auto [a, b] = theorem211_solve(F, A, B);
            const Json repro = instance_json(space, &A, &B, &F);
            detail::expect(out, i, F.apply(a) == a && F.apply(b) == b,
                           "returned pair is not fixed", repro);
            detail::expect(out, i, space->dist(a, b) == dist_set_set(A, B).value,
                           "returned pair does not realize dist(A,B)", repro);
        });
    }
    return out;
}

struct ExhaustiveSearchResult {
    std::uint64_t spaces = 0;
    std::uint64_t pairs = 0;
    std::uint64_t maps = 0;
    std::uint64_t strictly_contractive_found = 0;
    Json witness = nullptr;
};

inline void scan_space(const SpacePtr& space, ExhaustiveSearchResult& res);

/// Every space on <= max_points points with pair distances from {1, 2, 3},
/// every separated pair with dist(A,B) > 0, every noncyclic self-map:
/// strict contractivity never survives. This is the computational content of
/// the degeneracy forced by strictly contractive noncyclic maps.
inline ExhaustiveSearchResult exhaustive_strict_contraction_search(int max_points = 4) {
    ExhaustiveSearchResult res;
    const std::vector<Rat> pool{Rat(1), Rat(2), Rat(3)};

    for (int n = 2; n <= max_points; ++n) {
        const int edges = n * (n - 1) / 2;
        std::vector<int> choice(static_cast<std::size_t>(edges), 0);
        while (true) {
            std::vector<std::string> labels;
            for (int i = 0; i < n; ++i) labels.push_back("q" + std::to_string(i + 1));
            std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n),
                                            std::vector<Rat>(static_cast<std::size_t>(n)));
            int e = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        pool[static_cast<std::size_t>(choice[static_cast<std::size_t>(e)])];
                    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    ++e;
                }
            ValidationResult vr = validate_ultrametric(std::move(labels), std::move(m));
            if (vr.ok()) {
                ++res.spaces;
                scan_space(vr.space, res);
            }

            int pos = 0;
            while (pos < edges && choice[static_cast<std::size_t>(pos)] == 2) {
                choice[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == edges) break;
            ++choice[static_cast<std::size_t>(pos)];
        }
    }
    return res;
}

namespace detail {

inline void enumerate_maps(const SpacePtr& space, const std::vector<int>& amem,
                           const std::vector<int>& bmem, ExhaustiveSearchResult& res,
                           const PointSet& A, const PointSet& B) {
    std::vector<int> domain = amem;
    domain.insert(domain.end(), bmem.begin(), bmem.end());
    std::sort(domain.begin(), domain.end());
    const PointSet both(space.get(), domain);

    const std::size_t na = amem.size(), nb = bmem.size();
    std::vector<std::size_t> fa(na, 0), fb(nb, 0);
    auto advance = [](std::vector<std::size_t>& digits, std::size_t base) {
        for (auto& d : digits) {
            if (++d < base) return true;
            d = 0;
        }
        return false;
    };
    while (true) {
        std::vector<int> image(domain.size());
        for (std::size_t i = 0; i < na; ++i) {
            const auto pos = std::lower_bound(domain.begin(), domain.end(), amem[i]) - domain.begin();
            image[static_cast<std::size_t>(pos)] = amem[fa[i]];
        }
        for (std::size_t i = 0; i < nb; ++i) {
            const auto pos = std::lower_bound(domain.begin(), domain.end(), bmem[i]) - domain.begin();
            image[static_cast<std::size_t>(pos)] = bmem[fb[i]];
        }
        ++res.maps;
        const SelfMap F(space.get(), domain, image);
        if (is_strictly_contractive(F, both).holds) {
            ++res.strictly_contractive_found;
            if (res.witness.is_null()) res.witness = instance_json(space, &A, &B, &F);
        }
        if (!advance(fa, na)) {
            if (!advance(fb, nb)) break;
        }
    }
}

} // namespace detail

inline void scan_space(const SpacePtr& space, ExhaustiveSearchResult& res) {
    const int n = space->size();
    for (std::uint32_t amask = 1; amask < (1u << n); ++amask) {
        for (std::uint32_t bmask = 1; bmask < (1u << n); ++bmask) {
            if (amask & bmask) continue;  // dist(A,B) > 0 needs disjoint sides
            std::vector<int> amem, bmem;
            for (int p = 0; p < n; ++p) {
                if (amask & (1u << p)) amem.push_back(p);
                if (bmask & (1u << p)) bmem.push_back(p);
            }
            const PointSet A(space.get(), amem), B(space.get(), bmem);
            if (!check_separation(A, B)) continue;
            ++res.pairs;
            detail::enumerate_maps(space, amem, bmem, res, A, B);
        }
    }
}

/// Positive instances of the degenerate-fixed-point result plus the
/// exhaustive small-space search for forbidden strictly contractive maps.
inline SuiteResult run_suite_thm213(std::uint64_t count, std::uint64_t seed, int max_points) {
    SuiteResult out;
    out.name = "thm213";
    for (std::uint64_t i = 0; i < count; ++i) {
        detail::suite_instance(out, i, [&] {
            detail::SuiteRng r(seed, 0x213, i);
            SpacePtr space;
            PointSet A, B;
            SelfMap F;
            if (i % 4 == 3) {
                // Funnel map on the 1/min(n,m) space: every point slides one
                // step toward the top index, which is fixed.
                const int N = 1 + static_cast<int>(r.rng.below(4));
                Example22 ex = example22_truncation(N);
                space = ex.space;
                A = space->all(space);
                const int top = space->require_index(std::to_string(2 * N));
                B = PointSet(space.get(), {top});
                std::vector<int> image;
                for (int x : A.members()) {
                    const int num = std::stoi(space->label(x));
                    image.push_back(num == 2 * N ? x : space->require_index(std::to_string(num + 1)));
                }
                F = SelfMap(space.get(), A.members(), image);
            } else {
                space = r.make_space(max_points);
                const int p = static_cast<int>(r.rng.below(static_cast<std::uint64_t>(space->size())));
                std::vector<int> pool;
                for (int q = 0; q < space->size(); ++q) pool.push_back(q);
                std::vector<int> amem = detail::sample_nonempty_subset(pool, r.rng);
                if (!std::binary_search(amem.begin(), amem.end(), p)) amem.push_back(p);
                A = PointSet(space.get(), amem);
                B = PointSet(space.get(), {p});
                F = SelfMap(space.get(), A.members(),
                            std::vector<int>(A.size(), p));  // constant map onto p
            }
            const Json repro = instance_json(space, &A, &B, &F);
            const Theorem213Result res = theorem213_solve(F, A, B);
            detail::expect(out, i, res.certified && B.contains(res.p),
                           "degenerate fixed point failed to certify", repro);
        });
    }

    const ExhaustiveSearchResult search = exhaustive_strict_contraction_search(4);
    out.stats["search_spaces"] = search.spaces;
    out.stats["search_pairs"] = search.pairs;
    out.stats["search_maps"] = search.maps;
    detail::expect(out, count, search.strictly_contractive_found == 0,
                   "found a noncyclic strictly contractive map on a separated pair with dist > 0",
                   search.witness);
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lemma21", "lemma23", "lemma24", "thm25",
                                                "thm28",   "thm211",  "thm213"};
    return names;
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t count, std::uint64_t seed,
                             int max_points) {
    if (name == "lemma21") return run_suite_lemma21(count, seed, max_points);
    if (name == "lemma23") return run_suite_lemma23(count, seed, max_points);
    if (name == "lemma24") return run_suite_lemma24(count, seed, max_points);
    if (name == "thm25") return run_suite_thm25(count, seed, max_points);
    if (name == "thm28") return run_suite_thm28(count, seed, max_points);
    if (name == "thm211") return run_suite_thm211(count, seed, max_points);
    if (name == "thm213") return run_suite_thm213(count, seed, max_points);
    throw PreconditionFailed("unknown suite \"" + name + "\"");
}

inline std::vector<SuiteResult> run_suites(const std::string& which, std::uint64_t count,
                                           std::uint64_t seed, int max_points) {
    std::vector<SuiteResult> out;
    if (which == "all") {
        for (const auto& name : suite_names()) out.push_back(run_suite(name, count, seed, max_points));
    } else {
        out.push_back(run_suite(which, count, seed, max_points));
    }
    return out;
}

} // namespace umx
