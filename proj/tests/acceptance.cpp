// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// exact expected values and wall-clock budgets enforced. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "umx/umx.hpp"

using namespace umx;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// --- criterion 1: the four-point instance, exact goldens ---------------------

void criterion1(Check& c) {
    Example29 ex = example29();
    ProximityReport rep = proximity_sets(ex.A, ex.B);
    c.require(rep.dist == Rat(2), "dist(A,B) != 2");
    c.require(rep.deltaA == Rat(1) && rep.deltaB == Rat(1), "diameters != 1");
    c.require(rep.A0 == ex.A && rep.B0 == ex.B, "A0/B0 differ from A/B");
    c.require(rep.pairs.size() == 4, "expected exactly 4 best proximity pairs");

    using St = Classification::Statement;
    const St expected[] = {St::i, St::ii, St::iii, St::iv};
    for (int i = 0; i < 4; ++i) {
        Classification cls = classify_theorem28(ex.maps[static_cast<std::size_t>(i)], ex.A, ex.B);
        c.require(cls.statement == expected[i],
                  "map F" + std::to_string(i + 1) + " classified wrongly");
        if (i == 1) {
            c.require(cls.ballB.has_value() && cls.ballB->members == ex.B &&
                          cls.ballB->radius == Rat(1),
                      "F2 minimal ball is not {b1,b2} with radius 1");
        }
        if (i == 3) {
            c.require(cls.ballA.has_value() && cls.ballA->members == ex.A,
                      "F4 ball in A is not {a1,a2}");
            c.require(cls.ballB.has_value() && cls.ballB->members == ex.B,
                      "F4 ball in B is not {b1,b2}");
        }
    }
}

// --- criterion 2: truncations of the 1/min space ------------------------------

void criterion2(Check& c) {
    for (int N = 1; N <= 50; ++N) {
        Example22 t = example22_truncation(N);
        ProximityReport rep = proximity_sets(t.A, t.B);
        c.require(rep.dist == Rat(1, static_cast<std::uint64_t>(2 * N - 1)),
                  "N=" + std::to_string(N) + ": dist != 1/(2N-1)");
        c.require(rep.A0 == make_subset(t.space, {std::to_string(2 * N)}),
                  "N=" + std::to_string(N) + ": A0 != {2N}");
        c.require(rep.B0 == make_subset(t.space, {std::to_string(2 * N - 1)}),
                  "N=" + std::to_string(N) + ": B0 != {2N-1}");

        Theorem25Report r25 = theorem25_report(t.A, t.B);
        c.require(r25.equivalent, "N=" + std::to_string(N) + ": equivalence broken");
        if (N >= 2) {
            c.require(!r25.stmt_i && !r25.stmt_ii && !r25.stmt_iii.holds,
                      "N=" + std::to_string(N) + ": statements should all fail");
        }
    }
}

// --- criteria 3..6: seeded suites ---------------------------------------------

void run_passing_suite(Check& c, const std::string& name, std::uint64_t count,
                       std::uint64_t seed, int max_points) {
    SuiteResult r = run_suite(name, count, seed, max_points);
    if (!r.failures.empty())
        c.require(false, name + ": " + r.failures.front().description);
    c.require(r.instances == count, name + ": instance count mismatch");
}

void criterion3(Check& c) {
    run_passing_suite(c, "lemma21", 1000, 42, 12);
    run_passing_suite(c, "lemma23", 1000, 43, 12);
    run_passing_suite(c, "lemma24", 1000, 44, 12);
}

void criterion4(Check& c) {
    SuiteResult r = run_suite("thm25", 1000, 45, 12);
    if (!r.failures.empty()) c.require(false, "thm25: " + r.failures.front().description);
    c.require(r.stats["separated_instances"] == 1000, "fewer than 1000 separated instances");
    c.require(r.stats["non_separated_instances"] >= 1000,
              "fewer than 1000 non-separated instances");
}

void criterion5(Check& c) {
    SuiteResult r = run_suite("thm28", 500, 7, 12);
    if (!r.failures.empty()) c.require(false, "thm28: " + r.failures.front().description);
    std::uint64_t classified = 0;
    for (const auto& [key, value] : r.stats)
        if (key.rfind("statement_", 0) == 0) classified += value;
    c.require(classified == 500, "classifier histogram does not sum to 500");
}

void criterion6(Check& c) {
    run_passing_suite(c, "thm211", 500, 46, 12);
    SuiteResult r = run_suite("thm213", 200, 47, 10);
    if (!r.failures.empty()) c.require(false, "thm213: " + r.failures.front().description);
    c.require(r.stats["search_spaces"] > 0 && r.stats["search_maps"] > 0,
              "exhaustive search scanned nothing");
}

// --- criterion 7: implementation vs independent oracles -----------------------

bool oracle_is_ultrametric(const std::vector<std::vector<Rat>>& m) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        if (!(m[i][i] == Rat())) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!(m[i][j] == m[j][i])) return false;
            if (m[i][j] == Rat()) return false;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (rat_max(m[i][k], m[k][j]) < m[i][j]) return false;
            }
        }
    return true;
}

void criterion7(Check& c) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        SplitMix64 rng = SplitMix64::fork(seed, 0x0c1e);
        const int n = 2 + static_cast<int>(rng.below(11));
        SpacePtr sp = random_space(GenConfig::defaults(n, rng.next()));

        std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n),
                                        std::vector<Rat>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sp->dist(i, j);

        // Validator vs brute-force oracle on the valid matrix...
        c.require(oracle_is_ultrametric(m) == validate_ultrametric(sp->labels(), m).ok(),
                  "validator disagrees with the oracle on a generated space");

        // ...and on a random symmetric mutation, which may or may not break it.
        if (n >= 2) {
            auto mutated = m;
            const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (j == i) j = (j + 1) % n;
            const Rat bumped = mutated[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + Rat(1, 2);
            mutated[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = bumped;
            mutated[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = bumped;
            c.require(oracle_is_ultrametric(mutated) ==
                          validate_ultrametric(sp->labels(), mutated).ok(),
                      "validator disagrees with the oracle on a mutated matrix");
        }

        // Ball tree nodes vs the brute-force set of distinct closed balls.
        PointSet all = sp->all(sp);
        const BallTree tree = ball_tree(all);
        std::set<std::vector<int>> nodes;
        for (const auto& node : tree.nodes()) nodes.insert(node.members);
        std::set<std::vector<int>> brute;
        std::vector<Rat> radii{Rat()};
        for (const Rat& r : sp->occurring_distances()) radii.push_back(r);
        for (int p = 0; p < n; ++p)
            for (const Rat& r : radii) brute.insert(closed_ball(sp, p, r).members());
        c.require(nodes == brute, "ball tree nodes differ from the brute-force ball family");

        // liminf vs a 10*|S|-step iteration horizon, on a random self-map.
        std::vector<int> domain(static_cast<std::size_t>(n)), image(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            domain[static_cast<std::size_t>(i)] = i;
            image[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        }
        SelfMap F(sp.get(), domain, image);
        for (int x = 0; x < n; ++x) {
            int cur = x;
            std::vector<Rat> gaps;
            for (int step = 0; step < 10 * n; ++step) {
                gaps.push_back(sp->dist(cur, F.apply(cur)));
                cur = F.apply(cur);
            }
            Rat horizon = gaps.back();
            for (std::size_t k = gaps.size() - static_cast<std::size_t>(n); k < gaps.size(); ++k)
                horizon = rat_min(horizon, gaps[k]);
            c.require(orbit_liminf(F, x) == horizon,
                      "liminf disagrees with the iteration oracle");
        }
        const LiminfResult cond = liminf_condition(F, all);
        bool oracle_holds = true;
        for (int x = 0; x < n; ++x) {
            if (F.apply(x) == x) continue;
            if (!(orbit_liminf(F, x) < sp->dist(x, F.apply(x)))) oracle_holds = false;
        }
        c.require(cond.holds == oracle_holds, "liminf condition verdict mismatch");
    }
}

// --- criterion 8: CLI determinism ---------------------------------------------

std::string run_cli_capture(const std::string& args, int& exit_code) {
    const std::string cmd = std::string(UMX_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void criterion8(Check& c) {
    const auto dir = std::filesystem::temp_directory_path() / "umx_acceptance";
    std::filesystem::create_directories(dir);
    Example29 ex = example29();
    auto write = [&dir](const std::string& name, const Json& j) {
        const auto path = dir / name;
        std::ofstream out(path);
        out << j.dump(2) << "\n";
        return path.string();
    };
    const std::string space = write("ex29.space.json", space_json(*ex.space));
    const std::string map2 = write("f2.map.json", map_json(ex.maps[1]));

    const std::vector<std::string> commands{
        "validate " + space,
        "proximity " + space + " --A a1,a2 --B b1,b2",
        "classify " + space + " " + map2 + " --A a1,a2 --B b1,b2",
        "check --suite lemma21 --count 25 --seed 42 --max-points 8",
        "check --suite all --count 5 --seed 1 --max-points 6",
        "gen --points 7 --seed 11 --emit space",
        "gen --points 7 --seed 11 --emit pair",
        "gen --points 7 --seed 11 --emit map",
        "gen --example 29 --emit map --map-index 3",
        "gen --example 22 --N 4 --emit space",
        "probe --conjecture 210 --count 5 --maps-per-space 2 --seed 9",
        "probe --conjecture 115 --count 5 --maps-per-space 2 --seed 9",
    };
    for (const auto& cmd : commands) {
        int code1 = 0, code2 = 0;
        const std::string out1 = run_cli_capture(cmd, code1);
        const std::string out2 = run_cli_capture(cmd, code2);
        c.require(code1 == code2, "exit codes differ for: " + cmd);
        c.require(!out1.empty(), "no stdout for: " + cmd);
        c.require(out1 == out2, "stdout differs between runs for: " + cmd);
    }
}

struct Criterion {
    int id;
    std::string label;
    double budget_seconds;
    std::function<void(Check&)> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "four-point instance goldens and classifier statements", 1.0, criterion1},
        {2, "1/min truncations N=1..50: dist, proximity sets, failing statements", 5.0, criterion2},
        {3, "separated-pair structure over 1000 seeded instances", 30.0, criterion3},
        {4, "three-way equivalence over separated and non-separated corpora", 30.0, criterion4},
        {5, "classifier returns one verified statement on 500 instances", 60.0, criterion5},
        {6, "fixed-point solvers plus exhaustive strict-contraction search", 120.0, criterion6},
        {7, "validator, ball tree and liminf agree with independent oracles", 60.0, criterion7},
        {8, "CLI stdout is byte-identical across repeated seeded runs", 120.0, criterion8},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            crit.body(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= crit.budget_seconds)
            check.require(false, "exceeded " + std::to_string(crit.budget_seconds) + "s budget");
        const bool pass = check.ok;
        failures += pass ? 0 : 1;
        std::printf("criterion %d: %s  [%s] (%.2fs)%s%s\n", crit.id, crit.label.c_str(),
                    pass ? "PASS" : "FAIL", secs, pass ? "" : " -- ",
                    pass ? "" : check.detail.c_str());
    }
    return failures;
}
