#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "umx/ball_tree.hpp"
#include "umx/gen.hpp"
#include "umx/space.hpp"

using namespace umx;

namespace {

ValidationResult make(const std::vector<std::string>& labels,
                      const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<Rat>> matrix;
    for (const auto& row : rows) {
        std::vector<Rat> r;
        for (const auto& cell : row) r.push_back(Rat::parse(cell));
        matrix.push_back(std::move(r));
    }
    return validate_ultrametric(labels, matrix);
}

bool has_violation(const ValidationResult& vr, Violation::Kind kind) {
    for (const auto& v : vr.violations)
        if (v.kind == kind) return true;
    return false;
}

/// Independent oracle: the set of all distinct closed balls, by enumerating
/// every center against radius 0 and every occurring distance.
std::set<std::vector<int>> brute_force_balls(const SpacePtr& sp, const PointSet& universe) {
    std::vector<Rat> radii{Rat()};
    const auto& m = universe.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) radii.push_back(sp->dist(m[i], m[j]));
    std::set<std::vector<int>> out;
    for (int c : m)
        for (const Rat& r : radii) out.insert(closed_ball_in(universe, c, r).members());
    return out;
}

SpacePtr random_test_space(std::uint64_t seed, int n) {
    GenConfig cfg = GenConfig::defaults(n, seed);
    return random_space(cfg);
}

} // namespace

TEST_CASE("validation accepts the four-point two-sided space") {
    Example29 ex = example29();
    CHECK(ex.space->size() == 4);
    CHECK(ex.space->dist(0, 1) == Rat(1));
    CHECK(ex.space->dist(2, 3) == Rat(1));
    CHECK(ex.space->dist(0, 2) == Rat(2));
}

TEST_CASE("validation accepts a one-point space") {
    auto vr = make({"x"}, {{"0"}});
    CHECK(vr.ok());
    CHECK(vr.space->size() == 1);
}

TEST_CASE("validation reports a strong triangle failure with its witnesses") {
    auto vr = make({"x", "y", "z"}, {{"0", "1", "3"}, {"1", "0", "1"}, {"3", "1", "0"}});
    REQUIRE(!vr.ok());
    REQUIRE(has_violation(vr, Violation::Kind::StrongTriangleFailure));
    bool witness_found = false;
    for (const auto& v : vr.violations)
        if (v.kind == Violation::Kind::StrongTriangleFailure && v.x == 0 && v.y == 2 && v.z == 1)
            witness_found = true;
    CHECK(witness_found);  // d(x,z)=3 > max(d(x,y), d(y,z)) = 1
}

TEST_CASE("validation reports every violated axiom, not just the first") {
    auto vr = make({"x", "y", "z"},
                   {{"1", "1", "2"}, {"2", "0", "0"}, {"2", "0", "0"}});
    REQUIRE(!vr.ok());
    CHECK(has_violation(vr, Violation::Kind::NonzeroSelfDistance));
    CHECK(has_violation(vr, Violation::Kind::Asymmetry));
    CHECK(has_violation(vr, Violation::Kind::ZeroOffDiagonal));
}

TEST_CASE("validation preconditions") {
    CHECK_THROWS_AS(make({"x", "x"}, {{"0", "1"}, {"1", "0"}}), ParseError);
    CHECK_THROWS_AS(make({"x", "y"}, {{"0", "1"}}), ParseError);
    CHECK_THROWS_AS(make({"x", "y"}, {{"0"}, {"1", "0"}}), ParseError);
}

TEST_CASE("point-to-set and set-to-set distances on the worked instances") {
    Example29 ex = example29();
    const int a1 = ex.space->require_index("a1");
    CHECK(dist_point_set(a1, ex.B) == Rat(2));
    PointSet just_a1(ex.space.get(), {a1});
    CHECK(dist_point_set(a1, just_a1) == Rat());

    CHECK(dist_set_set(ex.A, ex.B).value == Rat(2));
    CHECK(dist_set_set(ex.A, ex.A).value == Rat());

    Example22 t3 = example22_truncation(3);
    const int one = t3.space->require_index("1");
    CHECK(dist_point_set(one, t3.A) == Rat(1));
    const SetDistance d = dist_set_set(t3.A, t3.B);
    CHECK(d.value == Rat(1, 5));
    CHECK(t3.space->label(d.a) == "6");
    CHECK(t3.space->label(d.b) == "5");

    PointSet empty(ex.space.get(), {});
    CHECK_THROWS_AS(dist_point_set(a1, empty), EmptySetError);
    CHECK_THROWS_AS(dist_set_set(empty, ex.B), EmptySetError);
}

TEST_CASE("diameters of the worked instances") {
    Example29 ex = example29();
    CHECK(diameter(ex.B) == Rat(1));
    CHECK(diameter(PointSet(ex.space.get(), {0})) == Rat());
    // The full-space values delta(B)=1 and delta(A)=1/2 appear as soon as the
    // truncation has two points per side; at N=1 both sides are singletons.
    Example22 t1 = example22_truncation(1);
    CHECK(diameter(t1.A) == Rat());
    CHECK(diameter(t1.B) == Rat());
    for (int N = 2; N <= 5; ++N) {
        Example22 t = example22_truncation(N);
        CHECK(diameter(t.B) == Rat(1));       // d(1,3) = 1
        CHECK(diameter(t.A) == Rat(1, 2));    // d(2,4) = 1/2
    }
}

TEST_CASE("balls and spheres") {
    Example29 ex = example29();
    const int b1 = ex.space->require_index("b1");
    CHECK(closed_ball(ex.space, b1, Rat(1)) == make_subset(ex.space, {"b1", "b2"}));
    CHECK(closed_ball(ex.space, b1, Rat()) == make_subset(ex.space, {"b1"}));
    CHECK(sphere(ex.space, b1, Rat(2)) == make_subset(ex.space, {"a1", "a2"}));
    CHECK(open_ball(ex.space, b1, Rat(2)) == make_subset(ex.space, {"b1", "b2"}));
}

TEST_CASE("closed ball splits disjointly into open ball and sphere") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SpacePtr sp = random_test_space(seed, 3 + static_cast<int>(seed % 8));
        for (int c = 0; c < sp->size(); ++c) {
            for (const Rat& r : sp->occurring_distances()) {
                PointSet cb = closed_ball(sp, c, r);
                PointSet ob = open_ball(sp, c, r);
                PointSet s = sphere(sp, c, r);
                CHECK(set_union(ob, s) == cb);
                CHECK(set_intersection(ob, s).empty());
            }
        }
    }
}

TEST_CASE("ball tree of the two-sided instance") {
    Example29 ex = example29();
    BallTree tree = ball_tree(ex.space->all(ex.space));
    const auto& root = tree.node(tree.root());
    CHECK(root.members == std::vector<int>{0, 1, 2, 3});
    CHECK(root.diam == Rat(2));
    REQUIRE(root.children.size() == 2);
    CHECK(tree.node(root.children[0]).members == std::vector<int>{0, 1});
    CHECK(tree.node(root.children[0]).diam == Rat(1));
    CHECK(tree.node(root.children[1]).members == std::vector<int>{2, 3});
    CHECK(tree.nodes().size() == 7);  // = 2*4 - 1
}

TEST_CASE("ball tree of a one-point space is a single leaf") {
    auto vr = make({"x"}, {{"0"}});
    BallTree tree = ball_tree(vr.space->all(vr.space));
    CHECK(tree.nodes().size() == 1);
    CHECK(tree.node(tree.root()).diam == Rat());
}

TEST_CASE("ball tree of the 1/min chain is a chain") {
    Example22 t2 = example22_truncation(2);
    BallTree tree = ball_tree(t2.space->all(t2.space));
    const auto& root = tree.node(tree.root());
    CHECK(root.diam == Rat(1));
    CHECK(root.members.size() == 4);

    // Expected nested members: {1,2,3,4} > {2,3,4} > {3,4}.
    const int n234 = tree.find_node({1, 2, 3});
    REQUIRE(n234 >= 0);
    CHECK(tree.node(n234).diam == Rat(1, 2));
    const int n34 = tree.find_node({2, 3});
    REQUIRE(n34 >= 0);
    CHECK(tree.node(n34).diam == Rat(1, 3));
    CHECK(tree.node(n34).parent == n234);
}

TEST_CASE("ball tree invariants and agreement with the brute-force ball oracle") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        SpacePtr sp = random_test_space(seed, 2 + static_cast<int>(seed % 11));
        PointSet all = sp->all(sp);
        BallTree tree = ball_tree(all);

        CHECK(tree.nodes().size() <= static_cast<std::size_t>(2 * sp->size() - 1));
        std::set<std::vector<int>> node_sets;
        for (const auto& node : tree.nodes()) {
            node_sets.insert(node.members);
            if (node.children.empty()) {
                CHECK(node.members.size() == 1);
                CHECK(node.diam == Rat());
                continue;
            }
            std::vector<int> merged;
            for (int child : node.children) {
                CHECK(tree.node(child).diam < node.diam);
                for (int p : tree.node(child).members) merged.push_back(p);
            }
            std::sort(merged.begin(), merged.end());
            CHECK(merged == node.members);  // children partition the node
            for (std::size_t i = 0; i < node.children.size(); ++i)
                for (std::size_t j = i + 1; j < node.children.size(); ++j)
                    for (int x : tree.node(node.children[i]).members)
                        for (int y : tree.node(node.children[j]).members)
                            CHECK(sp->dist(x, y) == node.diam);
        }
        CHECK(node_sets == brute_force_balls(sp, all));
    }
}

TEST_CASE("ultrametric triples are isosceles with the two largest sides equal") {
    for (std::uint64_t seed = 300; seed < 330; ++seed) {
        SpacePtr sp = random_test_space(seed, 3 + static_cast<int>(seed % 9));
        for (int x = 0; x < sp->size(); ++x)
            for (int y = x + 1; y < sp->size(); ++y)
                for (int z = y + 1; z < sp->size(); ++z) {
                    std::vector<Rat> side{sp->dist(x, y), sp->dist(y, z), sp->dist(x, z)};
                    std::sort(side.begin(), side.end());
                    CHECK(side[1] == side[2]);
                }
    }
}

TEST_CASE("any two closed balls are nested or disjoint, and centers are interchangeable") {
    for (std::uint64_t seed = 400; seed < 420; ++seed) {
        SpacePtr sp = random_test_space(seed, 3 + static_cast<int>(seed % 8));
        std::vector<Rat> radii{Rat()};
        for (const Rat& r : sp->occurring_distances()) radii.push_back(r);
        std::vector<PointSet> balls;
        for (int c = 0; c < sp->size(); ++c)
            for (const Rat& r : radii) {
                PointSet ball = closed_ball(sp, c, r);
                CHECK(!(r < diameter(ball)));  // diam(B(c,r)) <= r
                for (int c2 : ball.members())
                    CHECK(closed_ball(sp, c2, r) == ball);  // every point is a center
                balls.push_back(ball);
            }
        for (const auto& p : balls)
            for (const auto& q : balls) {
                PointSet meet = set_intersection(p, q);
                CHECK((meet.empty() || meet == p || meet == q));
            }
    }
}

TEST_CASE("points outside a ball are equidistant to all of it") {
    for (std::uint64_t seed = 500; seed < 520; ++seed) {
        SpacePtr sp = random_test_space(seed, 3 + static_cast<int>(seed % 9));
        BallTree tree = ball_tree(sp->all(sp));
        for (const auto& node : tree.nodes()) {
            for (int x = 0; x < sp->size(); ++x) {
                if (std::binary_search(node.members.begin(), node.members.end(), x)) continue;
                for (int a : node.members)
                    CHECK(sp->dist(x, a) == sp->dist(x, node.members.front()));
            }
        }
    }
}

TEST_CASE("is_ball recognizes balls and rejects non-balls") {
    Example29 ex = example29();
    IsBallResult r1 = is_ball(ex.space, make_subset(ex.space, {"b1", "b2"}));
    CHECK(r1.yes);
    CHECK(ex.space->label(r1.center) == "b1");
    CHECK(r1.min_radius == Rat(1));

    IsBallResult r2 = is_ball(ex.space, make_subset(ex.space, {"a2"}));
    CHECK(r2.yes);
    CHECK(r2.min_radius == Rat());

    IsBallResult r3 = is_ball(ex.space, make_subset(ex.space, {"a1", "b1"}));
    CHECK(!r3.yes);
}
