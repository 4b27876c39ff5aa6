// Command-line front end: classify, solve, simulate, reduce, gen, verify.
// Exit codes for solve: 0 = fixed point exists, 1 = none exists, 2 = refused
// or error. verify exits nonzero on any failed check.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fixpoint/fixpoint.hpp"

using namespace fixpoint;

namespace {

struct Output {
    std::string format = "text";

    void emit(const Json& report, const std::string& text) const {
        if (format == "json")
            std::cout << canonical_json(report);
        else
            std::cout << text;
    }
};

Budgets load_budgets() {
    Budgets b;
    if (const char* path = std::getenv("FIXPOINT_CONFIG")) b = parse_budgets(read_file(path), b);
    return b;
}

System load_system(const std::string& path) { return parse_system(read_file(path)); }

std::optional<NamedClass> class_by_name(const std::string& name) {
    for (NamedClass c : {NamedClass::R0, NamedClass::R1, NamedClass::M, NamedClass::L, NamedClass::D, NamedClass::BF})
        if (name == named_class_name(c)) return c;
    return std::nullopt;
}

GraphClassSpec graphs_by_name(const std::string& name) {
    if (name == "ALL") return GraphClassSpec::all();
    if (name == "PLANAR") return GraphClassSpec::planar();
    if (name == "VC1") return GraphClassSpec::vertex_cover_one();
    // Otherwise a minor-list file: {"minors": [{"vertices": n, "edges": [[i,j],...]}]}
    const Json doc = Json::parse(read_file(name));
    std::vector<Graph> minors;
    for (const auto& m : doc.at("minors")) {
        std::vector<std::pair<int, int>> es;
        for (const auto& e : m.at("edges")) es.emplace_back(e[0].get<int>(), e[1].get<int>());
        minors.emplace_back(m.at("vertices").get<int>(), std::move(es));
    }
    return GraphClassSpec::forbidding(std::move(minors));
}

Json config_to_json(const Config& c) {
    Json arr = Json::array();
    for (int v = 1; v <= c.size(); ++v) arr.push_back(c.bit(v) ? 1 : 0);
    return arr;
}

Config config_from_bits(const std::string& bits, int n) {
    if (static_cast<int>(bits.size()) != n) throw input_error("start configuration must have exactly " + std::to_string(n) + " bits");
    Config c(n);
    for (int v = 1; v <= n; ++v) {
        if (bits[static_cast<std::size_t>(v - 1)] != '0' && bits[static_cast<std::size_t>(v - 1)] != '1')
            throw input_error("start configuration may contain only 0 and 1");
        c.set_bit(v, bits[static_cast<std::size_t>(v - 1)] == '1');
    }
    return c;
}

int cmd_classify(const std::string& system_path, const std::string& cls_flag, const std::string& graphs_flag,
                 const std::string& repr_flag, const Output& out) {
    Json report;
    std::string text;
    FunctionClassSpec spec_f = FunctionClassSpec::named(NamedClass::BF);
    if (!system_path.empty()) {
        const System s = load_system(system_path);
        std::vector<LocalFunction> tables;
        Json funcs = Json::array();
        bool all_r0 = true, all_r1 = true, all_m = true, all_l = true, all_d = true;
        for (int v = 1; v <= s.vertex_count(); ++v) {
            const LocalFunction& f = s.function(v);
            const bool r0 = is_b_reproducing(f, false), r1 = is_b_reproducing(f, true);
            const bool m = is_monotone(f), l = is_linear(f).has_value(), d = is_self_dual(f);
            funcs.push_back({{"vertex", v}, {"reproducing0", r0}, {"reproducing1", r1}, {"monotone", m}, {"linear", l}, {"selfdual", d}});
            all_r0 &= r0, all_r1 &= r1, all_m &= m, all_l &= l, all_d &= d;
            tables.push_back(to_lookup(f));
        }
        report["functions"] = std::move(funcs);
        report["joint"] = {{"R0", all_r0}, {"R1", all_r1}, {"M", all_m}, {"L", all_l}, {"D", all_d}};
        spec_f = FunctionClassSpec::generated(std::move(tables));
        report["graph"] = {{"planar", is_planar(s.graph())},
                           {"vertex_cover_one", has_vertex_cover_one(s.graph())},
                           {"max_degree", s.graph().max_degree()},
                           {"treewidth_upper_bound", treewidth_upper_bound(s.graph()).width()}};
        text += "functions: R0=" + std::to_string(all_r0) + " R1=" + std::to_string(all_r1) + " M=" + std::to_string(all_m) +
                " L=" + std::to_string(all_l) + " D=" + std::to_string(all_d) + "\n";
        text += "network: planar=" + std::to_string(report["graph"]["planar"].get<bool>()) +
                " vc1=" + std::to_string(report["graph"]["vertex_cover_one"].get<bool>()) + "\n";
    } else if (!cls_flag.empty()) {
        auto named = class_by_name(cls_flag);
        if (!named) throw input_error("unknown class '" + cls_flag + "' (use R0, R1, M, L, D, BF)");
        spec_f = FunctionClassSpec::named(*named);
        report["class"] = cls_flag;
    } else {
        throw input_error("classify needs a system file or --class");
    }
    const GraphClassSpec spec_g = graphs_by_name(graphs_flag);
    report["graphs"] = graphs_flag;
    Json verdicts;
    text += "dichotomy:\n";
    for (auto [mode, name] : {std::pair{ReprMode::Lookup, "lookup"}, {ReprMode::Formula, "formula"}, {ReprMode::Circuit, "circuit"}}) {
        if (repr_flag != "all" && repr_flag != name) continue;
        const Verdict v = dichotomy(spec_f, spec_g, mode);
        verdicts[name] = v.to_string();
        text += std::string("  ") + name + ": " + v.to_string() + "\n";
    }
    report["verdicts"] = std::move(verdicts);
    out.emit(report, text);
    return 0;
}

Strategy strategy_by_name(const std::string& name) {
    if (name == "auto") return Strategy::Auto;
    if (name == "constant1") return Strategy::Constant1;
    if (name == "constant0") return Strategy::Constant0;
    if (name == "linear") return Strategy::Linear;
    if (name == "monotone") return Strategy::Monotone;
    if (name == "treewidth") return Strategy::Treewidth;
    if (name == "degree") return Strategy::DegreeExpand;
    if (name == "brute") return Strategy::Brute;
    throw input_error("unknown strategy '" + name + "'");
}

int cmd_solve(const std::string& system_path, const std::string& strategy, const Budgets& budgets, const Output& out) {
    const System s = load_system(system_path);
    const auto started = std::chrono::steady_clock::now();
    const SolveOutcome outcome = solve_fpe(s, strategy_by_name(strategy), budgets);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    Json report;
    report["strategy"] = strategy;
    report["time_ms"] = ms;
    std::string text;
    switch (outcome.kind) {
        case SolveOutcome::Kind::Exists:
            report["outcome"] = "exists";
            report["method"] = method_name(outcome.method);
            report["witness"] = {{"config", config_to_json(outcome.witness->config)},
                                 {"method", method_name(outcome.witness->method)},
                                 {"verified", outcome.witness->verified}};
            text = "fixed point exists (method " + std::string(method_name(outcome.method)) + ")\nwitness: ";
            for (int v = 1; v <= outcome.witness->config.size(); ++v) text += outcome.witness->config.bit(v) ? '1' : '0';
            text += "\n";
            break;
        case SolveOutcome::Kind::NotExists:
            report["outcome"] = "not_exists";
            report["method"] = method_name(outcome.method);
            text = "no fixed point (method " + std::string(method_name(outcome.method)) + ")\n";
            break;
        case SolveOutcome::Kind::Refused:
            report["outcome"] = "refused";
            report["reasons"] = outcome.reasons;
            text = "refused:\n";
            for (const auto& r : outcome.reasons) text += "  " + r + "\n";
            break;
    }
    out.emit(report, text);
    if (outcome.kind == SolveOutcome::Kind::Exists) return 0;
    return outcome.kind == SolveOutcome::Kind::NotExists ? 1 : 2;
}

int cmd_simulate(const std::string& system_path, const std::string& schedule_path, int sync_steps, const std::string& start,
                 const Output& out) {
    const System s = load_system(system_path);
    Config c = start.empty() ? Config(s.vertex_count()) : config_from_bits(start, s.vertex_count());
    Schedule sched;
    if (!schedule_path.empty()) {
        const Json doc = Json::parse(read_file(schedule_path));
        for (const auto& step : doc.at("steps")) sched.steps.push_back(step.get<std::vector<int>>());
    } else {
        std::vector<int> all;
        for (int v = 1; v <= s.vertex_count(); ++v) all.push_back(v);
        for (int t = 0; t < sync_steps; ++t) sched.steps.push_back(all);
    }
    Json trajectory = Json::array();
    std::string text;
    auto append = [&](const Config& cur) {
        trajectory.push_back(config_to_json(cur));
        for (int v = 1; v <= cur.size(); ++v) text += cur.bit(v) ? '1' : '0';
        text += '\n';
    };
    append(c);
    for (const auto& step : sched.steps) {
        c = global_step(s, step, c);
        append(c);
    }
    const bool fixed = is_fixed_point(s, c);
    Json report;
    report["trajectory"] = std::move(trajectory);
    report["final_is_fixed_point"] = fixed;
    text += fixed ? "reached a fixed point\n" : "final configuration is not a fixed point\n";
    out.emit(report, text);
    return 0;
}

int cmd_reduce(const std::string& kind, const std::string& in_path, const std::string& out_path, const Budgets& budgets,
               const Output& out) {
    Json doc;
    std::string text;
    if (kind == "csp") {
        const System s = load_system(in_path);
        const CSPInstance csp = build_csp(s);
        doc = csp_to_json(csp);
        doc["meta"] = {{"kind", "csp"}, {"variables", csp.num_vars}, {"constraints", csp.constraints.size()}};
        text = "csp: " + std::to_string(csp.num_vars) + " variables, " + std::to_string(csp.constraints.size()) + " constraints\n";
    } else if (kind == "planar3sat") {
        const Cnf h = parse_dimacs(read_file(in_path));
        auto gadget = planar3sat_to_system(h);
        const bool planar = is_planar(gadget.system.graph());
        const int degree = gadget.system.graph().max_degree();
        if (!planar || degree > 3) throw std::logic_error("planar3sat gadget violated its structural guarantees");
        doc = system_to_json(gadget.system);
        doc["meta"] = {{"kind", "planar3sat"}, {"cnf", serialize_dimacs(h)}, {"planar", planar}, {"max_degree", degree}};
        text = "planar 3SAT gadget: " + std::to_string(gadget.system.vertex_count()) + " vertices, max degree " +
               std::to_string(degree) + ", planar\n";
    } else if (kind == "selfdual-lift") {
        const System s = load_system(in_path);
        const System lifted = planar_selfdual_lift(s);
        bool all_selfdual = true;
        for (int v = 1; v <= lifted.vertex_count(); ++v) all_selfdual = all_selfdual && is_self_dual(lifted.function(v));
        const bool planar = is_planar(lifted.graph());
        if (!all_selfdual || !planar) throw std::logic_error("selfdual lift violated its structural guarantees");
        doc = system_to_json(lifted);
        doc["meta"] = {{"kind", "selfdual-lift"}, {"planar", planar}, {"all_selfdual", all_selfdual}};
        text = "self-dual lift: " + std::to_string(lifted.vertex_count()) + " vertices, planar, all functions self-dual\n";
    } else if (kind == "star") {
        const Cnf h = parse_dimacs(read_file(in_path));
        auto star = sat_to_star_system(h);
        const bool vc1 = has_vertex_cover_one(star.system.graph());
        // Self-duality of the center is verifiable only while its table fits.
        bool all_selfdual = true;
        if (star.system.function(star.center).arity() <= 24)
            for (int v = 1; v <= star.system.vertex_count(); ++v)
                all_selfdual = all_selfdual && is_self_dual(star.system.function(v));
        if (!vc1 || !all_selfdual) throw std::logic_error("star reduction violated its structural guarantees");
        doc = system_to_json(star.system);
        doc["meta"] = {{"kind", "star"}, {"cnf", serialize_dimacs(h)}, {"vertex_cover_one", vc1}};
        text = "star system: " + std::to_string(star.system.vertex_count()) + " vertices, vertex cover one\n";
    } else {
        throw input_error("unknown reduction kind '" + kind + "' (csp, planar3sat, selfdual-lift, star)");
    }
    (void)budgets;
    const std::string payload = canonical_json(doc);
    if (!out_path.empty()) {
        write_file(out_path, payload);
        out.emit(Json{{"written", out_path}}, text + "written to " + out_path + "\n");
    } else if (out.format == "json") {
        std::cout << payload;
    } else {
        std::cout << text << payload;
    }
    return 0;
}

int cmd_gen(int n, const std::string& cls_flag, const std::string& repr_flag, std::uint64_t seed, int edge_percent,
            const std::string& out_path, const Output& out) {
    auto named = class_by_name(cls_flag);
    if (!named) throw input_error("unknown class '" + cls_flag + "' (use R0, R1, M, L, D, BF)");
    GenRepr repr = GenRepr::Lookup;
    if (repr_flag == "formula")
        repr = GenRepr::Formula;
    else if (repr_flag == "circuit")
        repr = GenRepr::Circuit;
    else if (repr_flag == "mixed")
        repr = GenRepr::Mixed;
    else if (repr_flag != "lookup")
        throw input_error("unknown repr '" + repr_flag + "' (lookup, formula, circuit, mixed)");
    Rng rng(seed);
    const System s = random_system(rng, {n, edge_percent, *named, repr});
    for (int v = 1; v <= n; ++v)
        if (!in_named_class(s.function(v), *named)) throw std::logic_error("generator produced a function outside the class");
    const std::string payload = serialize_system(s);
    if (!out_path.empty()) {
        write_file(out_path, payload);
        out.emit(Json{{"written", out_path}}, "written to " + out_path + "\n");
    } else {
        std::cout << payload;
    }
    return 0;
}

struct VerifyReport {
    Json sections = Json::array();
    std::string text;
    bool failed = false;

    void section(const std::string& name, const std::string& status, const std::string& detail = "") {
        sections.push_back({{"name", name}, {"status", status}, {"detail", detail}});
        text += name + ": " + status + (detail.empty() ? "" : " (" + detail + ")") + "\n";
        failed = failed || status == "fail";
    }
};

int cmd_verify(const std::string& system_path, const std::string& suite, const std::string& report_path, std::uint64_t seed,
               const Budgets& budgets, const Output& out) {
    const Json doc = Json::parse(read_file(system_path));
    const System s = system_from_json(doc);
    Rng rng(seed);
    VerifyReport vr;
    const bool within_cap = s.vertex_count() <= budgets.brute_force_cap;
    std::vector<Config> fps;
    if (within_cap) fps = enumerate_fixed_points(s, budgets.brute_force_cap);

    if (suite == "all" || suite == "schedule") {
        if (!within_cap) {
            vr.section("schedule-invariance", "skipped", "brute-force cap");
        } else {
            bool ok = true;
            for (const Config& fp : fps)
                for (int t = 0; t < 100 && ok; ++t) ok = run_schedule(s, random_schedule(rng, s.vertex_count()), fp) == fp;
            vr.section("schedule-invariance", ok ? "pass" : "fail");
        }
    }
    if (suite == "all" || suite == "mirroring") {
        bool all_selfdual = true;
        for (int v = 1; v <= s.vertex_count() && all_selfdual; ++v)
            all_selfdual = s.function(v).arity() <= 24 && is_self_dual(s.function(v));
        if (!all_selfdual) {
            vr.section("mirroring", "skipped", "not an all-self-dual system");
        } else if (!within_cap) {
            vr.section("mirroring", "skipped", "brute-force cap");
        } else {
            bool ok = true;
            for (const Config& fp : fps) ok = ok && is_fixed_point(s, fp.complement());
            vr.section("mirroring", ok ? "pass" : "fail");
        }
    }
    if (suite == "all" || suite == "oracle") {
        if (!within_cap) {
            vr.section("oracle-equivalence", "skipped", "brute-force cap");
        } else {
            const SolveOutcome outcome = solve_fpe(s, Strategy::Auto, budgets);
            const bool ok = outcome.kind != SolveOutcome::Kind::Refused && outcome.exists() == !fps.empty();
            vr.section("oracle-equivalence", ok ? "pass" : "fail",
                       std::string("solver=") + (outcome.kind == SolveOutcome::Kind::Refused ? "refused" : method_name(outcome.method)));
        }
    }
    if ((suite == "all" || suite == "gadget") && doc.contains("meta") && doc["meta"].contains("cnf")) {
        if (!within_cap) {
            vr.section("sat-equivalence", "skipped", "brute-force cap");
        } else {
            const Cnf h = parse_dimacs(doc["meta"]["cnf"].get<std::string>());
            const bool sat = cnf_satisfiable(h, budgets.brute_force_cap);
            vr.section("sat-equivalence", sat == !fps.empty() ? "pass" : "fail");
        }
    }
    if (!report_path.empty()) {
        const Json report = Json::parse(read_file(report_path));
        if (report.contains("witness")) {
            const auto& bits = report["witness"]["config"];
            if (static_cast<int>(bits.size()) != s.vertex_count()) {
                vr.section("witness", "fail", "witness length does not match the system");
            } else {
                Config w(s.vertex_count());
                for (int v = 1; v <= s.vertex_count(); ++v) w.set_bit(v, bits[static_cast<std::size_t>(v - 1)].get<int>() != 0);
                const bool ok = is_fixed_point(s, w);
                vr.section("witness", ok ? "pass" : "fail", ok ? "" : "claimed witness is not a fixed point");
            }
        } else {
            vr.section("witness", "skipped", "report carries no witness");
        }
    }
    Json report;
    report["sections"] = vr.sections;
    report["failed"] = vr.failed;
    out.emit(report, vr.text);
    return vr.failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point analysis for boolean dynamical systems"};
    app.require_subcommand(1);
    Output out;
    Budgets budgets;
    try {
        budgets = load_budgets();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    app.add_option("--format", out.format, "output format: text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--budget-brute", budgets.brute_force_cap, "brute-force vertex cap");
    app.add_option("--budget-width", budgets.width_budget, "tree decomposition width budget");
    app.add_option("--budget-degree", budgets.degree_budget, "degree budget for table expansion");

    std::string system_path, cls_flag, graphs_flag = "ALL", repr_flag, strategy = "auto";
    std::string schedule_path, start_bits, kind, in_path, out_path, suite = "all", report_path;
    int sync_steps = 1, gen_n = 6, edge_percent = 35;
    std::uint64_t seed = 0;

    CLI::App* classify = app.add_subcommand("classify", "Post-class, graph-class, and dichotomy analysis");
    classify->add_option("system", system_path, "system document (JSON)");
    classify->add_option("--class", cls_flag, "named function class (R0, R1, M, L, D, BF)");
    classify->add_option("--graphs", graphs_flag, "graph class: ALL, PLANAR, VC1, or a minor-list file");
    classify->add_option("--repr", repr_flag, "representation mode: lookup, formula, circuit, all");

    CLI::App* solve = app.add_subcommand("solve", "decide fixed-point existence");
    solve->add_option("system", system_path, "system document (JSON)")->required();
    solve->add_option("--strategy", strategy, "auto, constant1, constant0, linear, monotone, treewidth, degree, brute");

    CLI::App* simulate = app.add_subcommand("simulate", "run a schedule and print the trajectory");
    simulate->add_option("system", system_path, "system document (JSON)")->required();
    simulate->add_option("--schedule", schedule_path, "schedule document (JSON with steps)");
    simulate->add_option("--sync", sync_steps, "number of synchronous steps");
    simulate->add_option("--start", start_bits, "start configuration as a bit string (default all zeros)");

    CLI::App* reduce = app.add_subcommand("reduce", "run one of the reductions");
    reduce->add_option("--kind", kind, "csp, planar3sat, selfdual-lift, star")->required();
    reduce->add_option("--in", in_path, "input file (system JSON or DIMACS CNF)")->required();
    reduce->add_option("--out", out_path, "output file (defaults to stdout)");

    CLI::App* gen = app.add_subcommand("gen", "generate a random system of a named class");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--class", cls_flag, "function class (R0, R1, M, L, D, BF)")->required();
    gen->add_option("--repr", repr_flag, "lookup, formula, circuit, mixed");
    gen->add_option("--seed", seed, "random seed (required for reproducibility)")->required();
    gen->add_option("--edge-percent", edge_percent, "edge probability in percent");
    gen->add_option("--out", out_path, "output file (defaults to stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suites against an instance");
    verify->add_option("system", system_path, "system document (JSON)")->required();
    verify->add_option("--suite", suite, "schedule, mirroring, oracle, gadget, all");
    verify->add_option("--report", report_path, "solver report whose witness should be checked");
    verify->add_option("--seed", seed, "seed for the randomized checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(system_path, cls_flag, graphs_flag, repr_flag.empty() ? "all" : repr_flag, out);
        if (solve->parsed()) return cmd_solve(system_path, strategy, budgets, out);
        if (simulate->parsed()) return cmd_simulate(system_path, schedule_path, sync_steps, start_bits, out);
        if (reduce->parsed()) return cmd_reduce(kind, in_path, out_path, budgets, out);
        if (gen->parsed()) return cmd_gen(gen_n, cls_flag, repr_flag.empty() ? "lookup" : repr_flag, seed, edge_percent, out_path, out);
        if (verify->parsed()) return cmd_verify(system_path, suite, report_path, seed, budgets, out);
    } catch (const budget_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
