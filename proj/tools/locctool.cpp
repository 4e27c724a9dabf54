// locctool: batch front end for ensemble construction, synthesis, evaluation,
// simulation and bounds reports. Every report is a JSON document on stdout.
//
// Exit codes: 0 success, 2 domain/precondition/malformed input, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "locc/acceptance.hpp"
#include "locc/bounds.hpp"
#include "locc/serialize.hpp"
#include "locc/synth.hpp"

namespace {

using locc::Json;

constexpr const char* kVersion = "0.3.1";

struct Options {
    double tol = locc::tol::structural;
    std::uint64_t seed = 1;
    std::size_t trials = 100000;
    std::string format = "json";
    bool seed_given = false;
};

// An argument is inline JSON, "-" for stdin, or a file path.
Json load_json(const std::string& arg)
{
    std::string text;
    if (arg == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) {
            throw locc::DomainError("cannot open input \"" + arg + "\"");
        }
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& ex) {
        throw locc::DomainError(std::string("invalid JSON: ") + ex.what());
    }
}

// Accepts a descriptor or any report that carries an "ensemble" field. Random
// descriptors without a seed take --seed.
Json ensemble_descriptor(Json j, const Options& opt)
{
    while (j.is_object() && !j.contains("kind") && j.contains("ensemble")) {
        j = Json(j.at("ensemble"));
    }
    if (j.is_object() && j.contains("kind") && !j.contains("seed")) {
        const auto kind = j.at("kind");
        if (kind == "random_me_triple" || kind == "random_pair") {
            if (!opt.seed_given) {
                throw locc::DomainError("random ensembles need an explicit seed (descriptor field or --seed)");
            }
            j["seed"] = opt.seed;
        }
    }
    return j;
}

Json header(const char* command, Json input)
{
    return Json{{"toolkit_version", kVersion}, {"command", command}, {"input", std::move(input)}};
}

Json cmd_ensemble(const std::string& arg, const Options& opt)
{
    const Json desc = ensemble_descriptor(load_json(arg), opt);
    const locc::StateEnsemble e = locc::ensemble_from_json(desc);
    Json out = header("ensemble", desc);
    out["k"] = e.size();
    out["dims"] = {e.dim_a(), e.dim_b()};
    out["is_orthogonal"] = e.is_orthogonal(opt.tol);
    out["is_maximally_entangled"] = e.is_maximally_entangled(opt.tol);
    out["max_overlap"] = e.max_overlap();
    out["ensemble"] = locc::ensemble_to_json(e);
    return out;
}

Json cmd_synthesize(const std::string& arg, const std::string& method, const std::string& cub_arg,
                    const Options& opt)
{
    const Json desc = ensemble_descriptor(load_json(arg), opt);
    const locc::StateEnsemble e = locc::ensemble_from_json(desc);
    Json out = header("synthesize", desc);
    out["method"] = method;

    locc::OneWayProtocolSpec spec;
    if (method == "prop1") {
        spec = locc::synthesize_three_qutrit_protocol(e);
    } else {
        std::optional<locc::ComplexMatrix> cub;
        if (!cub_arg.empty()) {
            cub = locc::matrix_from_json(load_json(cub_arg));
            out["cub_source"] = "given";
        } else {
            cub = locc::find_cub(locc::pairwise_family(e), locc::default_cub_candidates(e.dim_a()));
            if (!cub) {
                throw locc::PreconditionError("common_unbiased_basis: no default candidate is unbiased to every pairwise eigenbasis");
            }
            out["cub_source"] = "auto";
        }
        spec = locc::synthesize_cub_protocol(e, *cub);
    }
    const locc::LoccProtocol protocol = locc::to_protocol(spec);
    const double success = locc::evaluate(protocol, e).success_probability;
    const bool verified = success >= 1.0 - 1e-9;
    out["verification"] = {{"max_bob_overlap", locc::max_bob_overlap(spec)},
                           {"success_probability", success},
                           {"perfect", verified}};
    out["one_way"] = locc::one_way_to_json(spec);
    out["protocol"] = locc::protocol_to_json(protocol);
    if (!verified) {
        throw locc::NumericalError("synthesized protocol evaluates to success " + std::to_string(success));
    }
    return out;
}

struct Pair {
    Json protocol_input;
    Json ensemble_input;
    locc::LoccProtocol protocol;
    locc::StateEnsemble ensemble;
};

Pair load_pair(const std::string& protocol_arg, const std::string& ensemble_arg, const Options& opt)
{
    const Json ej = ensemble_descriptor(load_json(ensemble_arg), opt);
    locc::StateEnsemble e = locc::ensemble_from_json(ej);
    const Json pj = load_json(protocol_arg);
    locc::LoccProtocol p = locc::protocol_from_json(pj, std::pair{e.dim_a(), e.dim_b()});
    return {pj, ej, std::move(p), std::move(e)};
}

Json cmd_evaluate(const std::string& protocol_arg, const std::string& ensemble_arg, const Options& opt)
{
    const Pair in = load_pair(protocol_arg, ensemble_arg, opt);
    Json out = header("evaluate", {{"protocol", in.protocol_input}, {"ensemble", in.ensemble_input}});
    out["evaluation"] = locc::evaluation_to_json(locc::evaluate(in.protocol, in.ensemble));
    return out;
}

Json cmd_simulate(const std::string& protocol_arg, const std::string& ensemble_arg, const Options& opt)
{
    const Pair in = load_pair(protocol_arg, ensemble_arg, opt);
    Json out = header("simulate", {{"protocol", in.protocol_input}, {"ensemble", in.ensemble_input}});
    const locc::SimulationResult r = locc::simulate(in.protocol, in.ensemble, opt.trials, opt.seed);
    const double exact = locc::evaluate(in.protocol, in.ensemble).success_probability;
    const double se = std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(r.trials));
    out["seed"] = opt.seed;
    out["simulation"] = {{"trials", r.trials},
                         {"successes", r.successes},
                         {"rate", r.rate},
                         {"standard_error", se},
                         {"confidence_95", {r.rate - 1.96 * se, r.rate + 1.96 * se}},
                         {"evaluated_success_probability", exact}};
    return out;
}

Json cmd_bounds(const std::string& arg, const Options& opt)
{
    const Json desc = ensemble_descriptor(load_json(arg), opt);
    const locc::StateEnsemble e = locc::ensemble_from_json(desc);
    Json out = header("bounds", desc);
    out["report"] = locc::bounds_to_json(locc::verdict(e));
    return out;
}

Json cmd_selftest(bool& all_passed)
{
    Json out = header("selftest", nullptr);
    Json results = Json::array();
    all_passed = true;
    for (const auto& c : locc::acceptance::all_criteria()) {
        const auto r = c.run();
        std::cerr << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " -- " << r.detail << "\n";
        results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all_passed = all_passed && r.passed;
    }
    out["criteria"] = results;
    out["passed"] = all_passed;
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LOCC discrimination toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options opt;
    app.add_option("--tol", opt.tol, "tolerance for orthogonality and entanglement predicates")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", opt.seed, "seed for simulation and unseeded random ensembles");
    app.add_option("--trials", opt.trials, "number of Monte-Carlo trials");
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json"}));

    std::string ensemble_arg;
    std::string protocol_arg;
    std::string method = "prop1";
    std::string cub_arg;

    auto* ens = app.add_subcommand("ensemble", "build an ensemble and report its predicates");
    ens->add_option("descriptor", ensemble_arg, "ensemble JSON: inline, file path or -")->required();

    auto* syn = app.add_subcommand("synthesize", "synthesize a perfect one-way protocol");
    syn->add_option("ensemble", ensemble_arg, "ensemble JSON")->required();
    syn->add_option("--method", method, "prop1 or cub")->check(CLI::IsMember({"prop1", "cub"}));
    syn->add_option("--cub", cub_arg, "candidate basis matrix for --method cub (default: search)");

    auto* evl = app.add_subcommand("evaluate", "exact success probability and mutual information");
    evl->add_option("protocol", protocol_arg, "protocol JSON")->required();
    evl->add_option("ensemble", ensemble_arg, "ensemble JSON")->required();

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of the success probability");
    sim->add_option("protocol", protocol_arg, "protocol JSON")->required();
    sim->add_option("ensemble", ensemble_arg, "ensemble JSON")->required();

    auto* bnd = app.add_subcommand("bounds", "upper/lower bounds and perfect-discrimination verdict");
    bnd->add_option("ensemble", ensemble_arg, "ensemble JSON")->required();

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");

    // Global flags are also accepted after the subcommand.
    for (auto* sub : {ens, syn, evl, sim, bnd, self}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    opt.seed_given = seed_opt->count() > 0;

    try {
        Json out;
        int code = 0;
        if (*ens) {
            out = cmd_ensemble(ensemble_arg, opt);
        } else if (*syn) {
            out = cmd_synthesize(ensemble_arg, method, cub_arg, opt);
        } else if (*evl) {
            out = cmd_evaluate(protocol_arg, ensemble_arg, opt);
        } else if (*sim) {
            out = cmd_simulate(protocol_arg, ensemble_arg, opt);
        } else if (*bnd) {
            out = cmd_bounds(ensemble_arg, opt);
        } else {
            bool passed = false;
            out = cmd_selftest(passed);
            code = passed ? 0 : 1;
        }
        std::cout << out.dump(2) << "\n";
        return code;
    } catch (const locc::NumericalError& ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const Json::exception& ex) {
        std::cerr << "error: malformed input: " << ex.what() << "\n";
        return 2;
    } catch (const std::out_of_range& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
