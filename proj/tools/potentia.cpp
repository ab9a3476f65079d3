// potentia: evaluate potentials of atomic charges and run the numerical checks.
//
// Exit codes: 0 pass, 1 check failed, 2 usage or input error.

#include "potentia/checks.hpp"
#include "potentia/grid.hpp"
#include "potentia/io.hpp"
#include "potentia/parallel.hpp"
#include "potentia/potential.hpp"
#include "potentia/treecode.hpp"
#include "potentia/uniqueness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace potentia;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SphereRule parse_rule(int d, const std::string& text)
{
    const auto x = text.find('x');
    try {
        if (x != std::string::npos) {
            const SphereRule rule{std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
            if (rule.polar < 1 || rule.azimuth < 1)
                throw UsageError("node counts must be positive");
            return rule;
        }
        const int n = std::stoi(text);
        if (n < 1)
            throw UsageError("node count must be positive");
        return d == 3 ? SphereRule::from_budget(n) : SphereRule{1, n};
    } catch (const std::logic_error&) {
        throw UsageError("bad node specification '" + text + "'");
    }
}

int node_budget(int d, const SphereRule& rule)
{
    return d == 3 ? rule.size() : rule.azimuth;
}

// Shortest round-trip form, always with a decimal point or exponent.
std::string number(double x)
{
    return nlohmann::json(x).dump();
}

void print_value(const Point& y, const PotentialValue& v)
{
    std::string line;
    for (Eigen::Index k = 0; k < y.size(); ++k)
        line += number(y(k)) + ' ';
    line += v.finite() ? "finite " + number(v.value) : std::string(to_string(v.status));
    std::puts(line.c_str());
}

struct EvalArgs {
    std::string charge_file;
    std::string targets_file;
    std::vector<std::string> points;
    bool treecode = false;
    double theta = 0.5;
};

int run_eval(const EvalArgs& args)
{
    const DiscreteCharge charge = charge_from_json(read_json_file(args.charge_file));
    std::vector<Point> targets;
    if (!args.targets_file.empty())
        targets = points_from_json(read_json_file(args.targets_file), charge.dimension());
    for (const auto& text : args.points) {
        Point y = parse_point(text);
        if (y.size() != charge.dimension())
            throw ParseError("point '" + text + "' does not match d = " + std::to_string(charge.dimension()));
        targets.push_back(std::move(y));
    }
    if (targets.empty())
        throw UsageError("no targets given (use --targets or --point)");

    const std::vector<PotentialValue> values =
        args.treecode ? potential_treecode(charge, targets, args.theta) : potential_batch(charge, targets);
    for (std::size_t i = 0; i < targets.size(); ++i)
        print_value(targets[i], values[i]);
    return exit_pass;
}

struct CheckArgs {
    std::string name;
    std::uint64_t seed = 1;
    std::optional<int> d;
    std::optional<std::string> n;
    std::optional<std::string> nodes;
    std::optional<int> cases;
    std::optional<int> points;
    std::optional<int> samples;
    std::optional<double> tol;
    std::optional<double> h;
    double r = 0.5;
    double mass = 1.0;
    std::string fixture = "point";
    std::string dump_grid;
};

void dump_grid(const std::string& path, const GridFunction& g)
{
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    write_grid_csv(out, g);
}

CheckReport run_named_check(const CheckArgs& a)
{
    if (a.name == "lemma2") {
        const int cases = a.n ? std::stoi(*a.n) : a.cases.value_or(100);
        return check_lemma2(a.seed, cases, a.points.value_or(100), a.tol.value_or(1e-12));
    }
    if (a.name == "asymptotics")
        return check_asymptotics(a.tol.value_or(0.1));
    if (a.name == "poisson-jensen") {
        const int d = a.d.value_or(2);
        const std::string nodes = a.n ? *a.n : a.nodes.value_or(d == 3 ? "2048" : "512");
        return check_poisson_jensen(d, parse_rule(d, nodes), a.cases.value_or(5), a.points.value_or(20), a.seed,
                                    a.tol.value_or(default_poisson_jensen_tolerance(d)));
    }
    if (a.name == "uniqueness") {
        const int d = a.d.value_or(2);
        const std::string default_nodes = d == 1 ? "2" : d == 2 ? "512" : "2048";
        const SphereRule rule = parse_rule(d, a.nodes ? *a.nodes : a.n.value_or(default_nodes));
        const int nodes = node_budget(d, rule);
        CheckReport report = check_uniqueness(d, a.r, a.mass, nodes, a.samples.value_or(1000), a.seed,
                                              a.tol.value_or(default_uniqueness_tolerance(d)));
        if (!a.dump_grid.empty()) {
            const UniquenessInstance inst = uniqueness_fixture(d, a.r, a.mass, nodes);
            dump_grid(a.dump_grid, recover_common_H(inst, inst.window(), a.h.value_or(a.r / 8)).grid);
        }
        return report;
    }
    if (a.name == "riesz-extract") {
        const double h = a.h.value_or(a.fixture == "point" ? 0.02 : 1.0 / 64);
        return check_riesz_extract(a.fixture, h, a.tol.value_or(default_riesz_tolerance(a.fixture)));
    }
    throw UsageError("unknown check '" + a.name + "'");
}

struct DecomposeArgs {
    std::string charge_file;
    std::string plus_file;
    std::string minus_file;
};

void write_json_file(const std::string& path, const nlohmann::ordered_json& doc)
{
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    out << doc.dump() << '\n';
}

int run_decompose(const DecomposeArgs& args)
{
    const DiscreteCharge charge = charge_from_json(read_json_file(args.charge_file));
    const CanonicalPair pair = delta_subharmonic_decompose(charge);
    nlohmann::ordered_json doc;
    doc["plus"] = charge_to_json(pair.p_charge);
    doc["minus"] = charge_to_json(pair.q_charge);
    if (!args.plus_file.empty())
        write_json_file(args.plus_file, doc["plus"]);
    if (!args.minus_file.empty())
        write_json_file(args.minus_file, doc["minus"]);
    std::cout << doc.dump() << '\n';
    return exit_pass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Potentials of atomic charges, Green's functions and uniqueness checks"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: all cores)")->envname("POTENTIA_THREADS");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate the potential of a charge at target points");
    eval->add_option("charge", eval_args.charge_file, "Charge JSON file")->required();
    eval->add_option("--targets", eval_args.targets_file, "JSON file with target points");
    eval->add_option("--point", eval_args.points, "Inline target x1,x2,...");
    eval->add_flag("--treecode", eval_args.treecode, "Use the Barnes-Hut treecode");
    eval->add_option("--theta", eval_args.theta, "Treecode opening parameter in (0, 1)");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Run a named numerical check and print a JSON report");
    check->add_option("name", check_args.name, "lemma2 | asymptotics | poisson-jensen | uniqueness | riesz-extract")
        ->required();
    check->add_option("--seed", check_args.seed, "Random seed");
    check->add_option("--d", check_args.d, "Dimension");
    check->add_option("--n", check_args.n, "Case count (lemma2) or boundary nodes (poisson-jensen)");
    check->add_option("--nodes", check_args.nodes, "Sphere nodes: a count, or POLARxAZIMUTH in d = 3");
    check->add_option("--cases", check_args.cases, "Number of random functions");
    check->add_option("--points", check_args.points, "Evaluation points per case");
    check->add_option("--samples", check_args.samples, "Sample points (uniqueness)");
    check->add_option("--tol", check_args.tol, "Override the default tolerance");
    check->add_option("--spacing", check_args.h, "Grid spacing");
    check->add_option("--r", check_args.r, "Shell radius (uniqueness)");
    check->add_option("--mass", check_args.mass, "Shell mass (uniqueness)");
    check->add_option("--fixture", check_args.fixture, "harmonic | quadratic | point (riesz-extract)");
    check->add_option("--dump-grid", check_args.dump_grid, "Write the grid as CSV");

    DecomposeArgs decompose_args;
    auto* decompose = app.add_subcommand("decompose", "Split a charge into its Jordan pair");
    decompose->add_option("charge", decompose_args.charge_file, "Charge JSON file")->required();
    decompose->add_option("--plus", decompose_args.plus_file, "Also write the positive part here");
    decompose->add_option("--minus", decompose_args.minus_file, "Also write the negative part here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        set_thread_count(threads);
        if (*eval)
            return run_eval(eval_args);
        if (*decompose)
            return run_decompose(decompose_args);
        const CheckReport report = run_named_check(check_args);
        std::cout << report.to_json().dump() << '\n';
        return report.pass() ? exit_pass : exit_fail;
    } catch (const ParseError& e) {
        std::cerr << "potentia: " << e.what() << '\n';
    } catch (const UsageError& e) {
        std::cerr << "potentia: " << e.what() << '\n';
    } catch (const DomainError& e) {
        std::cerr << "potentia: " << e.what() << '\n';
    } catch (const std::logic_error& e) {
        std::cerr << "potentia: bad argument: " << e.what() << '\n';
    }
    return exit_usage;
}
