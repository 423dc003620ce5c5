// umx command line: validate spaces, compute proximity reports, classify
// self-maps, run the property-check suites, generate instances, probe the
// open conjectures. All reports go to stdout as JSON; diagnostics to stderr.
// Identical inputs and seed give byte-identical stdout.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "umx/umx.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBug = 1;         // a proven result failed to verify
constexpr int kExitValidation = 2;  // axiom violations or failing check suites
constexpr int kExitPrecondition = 3;
constexpr int kExitUsage = 64;      // flag, parse, label or input-shape errors

using umx::Json;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw umx::ParseError("cannot open \"" + path + "\"");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw umx::ParseError("\"" + path + "\": " + e.what());
    }
}

std::vector<std::string> split_labels(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct PairArgs {
    std::string a_csv, b_csv, pair_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--A", a_csv, "comma-separated labels of side A");
        cmd->add_option("--B", b_csv, "comma-separated labels of side B");
        cmd->add_option("--pair", pair_file, "pair fragment file {\"A\": [...], \"B\": [...]}");
    }

    umx::PairSelection resolve(const umx::SpacePtr& space) const {
        if (!pair_file.empty()) {
            if (!a_csv.empty() || !b_csv.empty())
                throw umx::ParseError("give either --pair or --A/--B, not both");
            return umx::pair_from_json(space, read_json_file(pair_file));
        }
        if (a_csv.empty() || b_csv.empty())
            throw umx::ParseError("both --A and --B are required without --pair");
        Json j;
        j["A"] = split_labels(a_csv);
        j["B"] = split_labels(b_csv);
        return umx::pair_from_json(space, j);
    }
};

/// Loads and validates a space file; exits with the validation report when
/// the matrix is not an ultrametric.
umx::SpacePtr load_valid_space(const std::string& path) {
    const Json doc = read_json_file(path);
    umx::ValidationResult vr = umx::space_from_json(doc);
    if (!vr.ok()) {
        std::vector<std::string> labels = doc["points"].get<std::vector<std::string>>();
        Json viols = Json::array();
        for (const auto& v : vr.violations) viols.push_back(umx::violation_json(nullptr, labels, v));
        std::cerr << "\"" << path << "\" is not an ultrametric space:\n" << viols.dump(2) << "\n";
        std::exit(kExitValidation);
    }
    return vr.space;
}

int cmd_validate(const std::string& space_file) {
    const Json doc = read_json_file(space_file);
    umx::ValidationResult vr = umx::space_from_json(doc);

    Json result;
    Json viols = Json::array();
    if (!vr.ok()) {
        std::vector<std::string> labels = doc["points"].get<std::vector<std::string>>();
        for (const auto& v : vr.violations) viols.push_back(umx::violation_json(nullptr, labels, v));
    }
    result["valid"] = vr.ok();
    result["violations"] = viols;

    std::vector<umx::Verdict> verdicts{
        {"ultrametric-axioms", vr.ok(), vr.ok() ? Json(nullptr) : viols.front()}};
    emit(umx::run_report_json("validate", Json{{"space_file", space_file}}, result, verdicts));
    return vr.ok() ? kExitOk : kExitValidation;
}

int cmd_proximity(const std::string& space_file, const PairArgs& pair_args) {
    const umx::SpacePtr space = load_valid_space(space_file);
    const umx::PairSelection sel = pair_args.resolve(space);

    const umx::ProximityReport rep = umx::proximity_sets(sel.A, sel.B);
    const umx::Theorem25Report rep25 = umx::theorem25_report(sel.A, sel.B);

    Json inputs;
    inputs["space_file"] = space_file;
    inputs["A"] = umx::pointset_json(sel.A);
    inputs["B"] = umx::pointset_json(sel.B);
    Json result;
    result["proximity"] = umx::proximity_report_json(rep);
    result["theorem25"] = umx::theorem25_json(*space, rep25);

    std::vector<umx::Verdict> verdicts{
        {"separated", rep.separated, nullptr},
        {"theorem25-equivalent", rep25.equivalent, nullptr},
    };
    emit(umx::run_report_json("proximity", inputs, result, verdicts));
    return kExitOk;
}

int cmd_classify(const std::string& space_file, const std::string& map_file,
                 const PairArgs& pair_args) {
    const umx::SpacePtr space = load_valid_space(space_file);
    const umx::PairSelection sel = pair_args.resolve(space);
    const umx::SelfMap F = umx::map_from_json(space, read_json_file(map_file));

    const umx::Classification cls = umx::classify_theorem28(F, sel.A, sel.B);

    Json inputs;
    inputs["space_file"] = space_file;
    inputs["map_file"] = map_file;
    inputs["A"] = umx::pointset_json(sel.A);
    inputs["B"] = umx::pointset_json(sel.B);
    std::vector<umx::Verdict> verdicts{{"witnesses-verified", true, nullptr}};
    emit(umx::run_report_json("classify", inputs, umx::classification_json(*space, cls), verdicts));
    return kExitOk;
}

int cmd_check(const std::string& suite, std::uint64_t count, std::uint64_t seed, int max_points) {
    const std::vector<umx::SuiteResult> results = umx::run_suites(suite, count, seed, max_points);

    Json inputs{{"suite", suite}, {"count", count}, {"seed", seed}, {"max_points", max_points}};
    Json payload = Json::array();
    std::vector<umx::Verdict> verdicts;
    bool all_pass = true;
    for (const auto& r : results) {
        payload.push_back(umx::suite_result_json(r));
        verdicts.push_back({r.name, r.passed(),
                            r.passed() ? Json(nullptr)
                                       : Json{{"instance", r.failures.front().instance},
                                              {"description", r.failures.front().description},
                                              {"repro", r.failures.front().repro}}});
        all_pass = all_pass && r.passed();
    }
    emit(umx::run_report_json("check", inputs, Json{{"suites", payload}}, verdicts));
    return all_pass ? kExitOk : kExitValidation;
}

int cmd_gen(int points, std::uint64_t seed, const std::string& emit_what, int branching,
            const std::string& pool_csv, int example, int truncation, int map_index) {
    if (example == 29) {
        umx::Example29 ex = umx::example29();
        if (emit_what == "space") emit(umx::space_json(*ex.space));
        else if (emit_what == "pair") emit(umx::pair_json(ex.A, ex.B));
        else emit(umx::map_json(ex.maps[static_cast<std::size_t>(map_index - 1)]));
        return kExitOk;
    }
    if (example == 22) {
        umx::Example22 ex = umx::example22_truncation(truncation);
        if (emit_what == "space") emit(umx::space_json(*ex.space));
        else if (emit_what == "pair") emit(umx::pair_json(ex.A, ex.B));
        else throw umx::ParseError("--example 22 emits a space or a pair, not a map");
        return kExitOk;
    }

    umx::GenConfig cfg = umx::GenConfig::defaults(points, seed);
    cfg.branching = branching;
    if (!pool_csv.empty()) {
        cfg.value_pool.clear();
        for (const auto& tok : split_labels(pool_csv)) cfg.value_pool.push_back(umx::Rat::parse(tok));
    }
    umx::SpacePtr space;
    try {
        space = umx::random_space(cfg);
    } catch (const umx::PreconditionFailed& e) {
        throw umx::ParseError(e.what());  // bad generator flags are usage errors
    }
    if (emit_what == "space") {
        emit(umx::space_json(*space));
        return kExitOk;
    }
    const umx::SeparatedPair pair =
        umx::random_separated_pair(space, umx::SplitMix64::fork(seed, 1).next());
    if (emit_what == "pair") {
        emit(umx::pair_json(pair.A, pair.B));
        return kExitOk;
    }
    const umx::SelfMap F = umx::random_noncyclic_nonexpansive_map(
        space, pair.A, pair.B, umx::SplitMix64::fork(seed, 2).next());
    emit(umx::map_json(F));
    return kExitOk;
}

int cmd_probe(int conjecture, std::uint64_t count, std::uint64_t maps_per_space,
              std::uint64_t seed) {
    const umx::ProbeReport report = conjecture == 210
                                        ? umx::probe_conjecture_210(count, maps_per_space, seed)
                                        : umx::probe_conjecture_115(count, maps_per_space, seed);
    Json inputs{{"conjecture", conjecture},
                {"count", count},
                {"maps_per_space", maps_per_space},
                {"seed", seed}};
    const Json result = umx::probe_report_json(report);
    std::vector<umx::Verdict> verdicts{{"no-counterexample", !report.counterexample,
                                        report.counterexample ? result["counterexample"]
                                                              : Json(nullptr)}};
    emit(umx::run_report_json("probe", inputs, result, verdicts));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"umx: exact best-proximity computations on finite ultrametric spaces"};
    app.require_subcommand(1);

    std::string space_file, map_file;
    PairArgs pair_args;

    auto* validate = app.add_subcommand("validate", "check a space file against the axioms");
    validate->add_option("space_file", space_file, "space JSON document")->required();

    auto* proximity = app.add_subcommand("proximity", "proximity sets and best proximity pairs");
    proximity->add_option("space_file", space_file, "space JSON document")->required();
    pair_args.attach(proximity);

    auto* classify = app.add_subcommand("classify", "four-way classification of a noncyclic nonexpansive map");
    classify->add_option("space_file", space_file, "space JSON document")->required();
    classify->add_option("map_file", map_file, "map JSON document")->required();
    pair_args.attach(classify);

    std::string suite = "all";
    std::uint64_t count = 1000;
    std::uint64_t seed = 0;
    int max_points = 12;
    auto* check = app.add_subcommand("check", "run seeded property suites");
    check->add_option("--suite", suite, "which suite to run")
        ->check(CLI::IsMember({"lemma21", "lemma23", "lemma24", "thm25", "thm28", "thm211",
                               "thm213", "all"}));
    check->add_option("--count", count, "instances per suite")->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "PRNG seed")->envname("UMX_SEED");
    check->add_option("--max-points", max_points, "largest generated space")
        ->check(CLI::Range(1, 64));

    int points = 4, branching = 3, example = 0, truncation = 3, map_index = 1;
    std::string emit_what = "space", pool_csv;
    auto* gen = app.add_subcommand("gen", "emit a random or named instance as JSON");
    gen->add_option("--points", points, "number of points")->check(CLI::Range(1, 256));
    gen->add_option("--seed", seed, "PRNG seed")->envname("UMX_SEED");
    gen->add_option("--emit", emit_what, "what to emit")
        ->check(CLI::IsMember({"space", "pair", "map"}));
    gen->add_option("--branching", branching, "max dendrogram branching")->check(CLI::Range(2, 16));
    gen->add_option("--pool", pool_csv, "comma-separated increasing distance levels");
    gen->add_option("--example", example, "emit a named instance instead (29 or 22)")
        ->check(CLI::IsMember({22, 29}));
    gen->add_option("--N", truncation, "truncation depth for --example 22")->check(CLI::Range(1, 200));
    gen->add_option("--map-index", map_index, "which permutation for --example 29 --emit map")
        ->check(CLI::Range(1, 4));

    int conjecture = 210;
    std::uint64_t maps_per_space = 4;
    auto* probe = app.add_subcommand("probe", "search for conjecture counterexamples");
    probe->add_option("--conjecture", conjecture, "which conjecture to probe")
        ->check(CLI::IsMember({115, 210}));
    probe->add_option("--count", count, "space budget")->check(CLI::PositiveNumber);
    probe->add_option("--maps-per-space", maps_per_space, "maps sampled per space")
        ->check(CLI::PositiveNumber);
    probe->add_option("--seed", seed, "PRNG seed")->envname("UMX_SEED");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(space_file);
        if (app.got_subcommand(proximity)) return cmd_proximity(space_file, pair_args);
        if (app.got_subcommand(classify)) return cmd_classify(space_file, map_file, pair_args);
        if (app.got_subcommand(check)) return cmd_check(suite, count, seed, max_points);
        if (app.got_subcommand(gen))
            return cmd_gen(points, seed, emit_what, branching, pool_csv, example, truncation,
                           map_index);
        if (app.got_subcommand(probe)) {
            if (probe->count("--count") == 0) count = 100;
            return cmd_probe(conjecture, count, maps_per_space, seed);
        }
    } catch (const umx::TheoremViolation& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return kExitBug;
    } catch (const umx::PreconditionFailed& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const umx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
