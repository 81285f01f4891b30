#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "torcor/classify.hpp"
#include "torcor/errors.hpp"
#include "torcor/json_io.hpp"
#include "torcor/markov.hpp"
#include "torcor/oracle.hpp"

namespace {

using torcor::Json;
using torcor::to_json;

// Inline JSON when the argument starts with '{' or '[', a file path
// otherwise.
Json load_document(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
        return torcor::parse_text(arg);
    std::ifstream in(arg);
    if (!in) throw torcor::ParseError("cannot read input \"" + arg + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return torcor::parse_text(buf.str());
}

torcor::Correspondence load_correspondence(const std::string& arg) {
    return torcor::parse_correspondence(load_document(arg));
}

torcor::Correspondence single_input(const std::vector<std::string>& inputs) {
    if (inputs.size() != 1)
        throw torcor::ParseError("this command takes exactly one --input");
    return load_correspondence(inputs[0]);
}

// Vector arguments accept JSON ("[1/4, 0]") or a bare comma list ("1/4,0").
Json vector_document(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '[') return torcor::parse_text(arg);
    Json j = Json::array();
    std::string piece;
    std::istringstream in(arg);
    while (std::getline(in, piece, ',')) j.push_back(piece);
    return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

const char* spectrum_label(torcor::SpectrumCase c) {
    switch (c) {
        case torcor::SpectrumCase::PointZeroOnly:
            return "Sp = {0} [spectrum theorem case 1]";
        case torcor::SpectrumCase::FullUnitCircle:
            return "Sp = unit circle [spectrum theorem case 2]";
        case torcor::SpectrumCase::WithinCircleUnionZero:
            return "Sp inside circle union {0} [spectrum theorem case 3]";
        case torcor::SpectrumCase::FullUnitDisk:
            return "Sp = closed unit disk [spectrum theorem cases 4-5]";
    }
    return "";
}

void print_classification(const torcor::ClassificationReport& r) {
    std::cout << "dimension            " << r.dim << "\n";
    std::cout << "morphism             " << to_string(r.morphism) << "\n";
    std::cout << "connected            " << (r.connected ? "yes" : "no") << "\n";
    std::cout << "ergodic              " << (r.ergodic ? "yes" : "no")
              << (r.ergodic ? "  [no root-of-unity eigenvalue]"
                            : "  [root-of-unity eigenvalue present]")
              << "\n";
    std::cout << "kernel orders        |K1| = " << r.kernel_first_order.get_str()
              << ", |K2| = " << r.kernel_second_order.get_str() << "\n";
    std::cout << "nondeterministic     right " << (r.nondeterminism.right ? "yes" : "no")
              << ", left " << (r.nondeterminism.left ? "yes" : "no") << ", total "
              << (r.nondeterminism.total ? "yes" : "no") << "\n";
    if (r.nondeterminism.total)
        std::cout << "                     totally nondeterministic => Sp(V) = {0} "
                     "[spectrum theorem case 1]\n";
    std::cout << "spectrum V           " << to_string(r.spectrum.v) << "  "
              << spectrum_label(r.spectrum.v) << "\n";
    std::cout << "spectrum V*          " << to_string(r.spectrum.v_star) << "  "
              << spectrum_label(r.spectrum.v_star) << "\n";
    std::cout << "automorphism cover   " << (r.cover.possible ? "possible" : "impossible")
              << "  [|det| = 1 and integral invariant factors required]\n";
}

int run_oracle(std::uint64_t seed, long count, bool pretty) {
    const auto report = torcor::oracle::consistency_suite(seed, count);
    if (pretty) {
        for (const auto& c : report.cases) {
            std::cout << (c.pass ? "pass" : "FAIL") << "  seed=" << c.seed << "  "
                      << c.params << "\n";
            if (!c.pass)
                for (const auto& check : c.checks)
                    if (!check.pass)
                        std::cout << "      " << check.name << ": " << check.detail
                                  << "\n";
        }
        std::cout << (report.pass ? "all passed" : "FAILURES") << "  cases="
                  << report.count << "  failures=" << report.failures << "\n";
    } else {
        emit(to_json(report));
    }
    return report.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact algebra, classification and Markov dynamics of finite-to-one "
        "algebraic torus correspondences.\n"
        "Inputs are JSON: {\"m\", \"M\", \"Delta\"} or relation form "
        "{\"A\", \"B\"}, inline or as a file path.\n"
        "Exit codes: 1 malformed input, 2 precondition violation, 3 internal "
        "cap, 4 oracle suite failure."};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    std::string subgroup_arg, char_arg, x0_arg;
    long box = 0, steps = 100, n = 2, kmax = 16, count = 100;
    std::uint64_t seed = 1;
    bool pretty = false;

    auto add_inputs = [&](CLI::App* cmd, int expected) {
        auto* opt = cmd->add_option("--input", inputs,
                                    "correspondence JSON (inline or file path)");
        opt->required()->expected(expected);
    };

    auto* cmd_compose = app.add_subcommand(
        "compose", "compose two correspondences (right factor acts first)");
    add_inputs(cmd_compose, 2);

    auto* cmd_adjoint = app.add_subcommand("adjoint", "adjoint correspondence");
    add_inputs(cmd_adjoint, 1);

    auto* cmd_power = app.add_subcommand("power", "n-fold composition power");
    add_inputs(cmd_power, 1);
    cmd_power->add_option("--n", n, "exponent, at least 1")->required();

    auto* cmd_factor =
        app.add_subcommand("factor", "factor by a finite subgroup of the torus");
    add_inputs(cmd_factor, 1);
    cmd_factor
        ->add_option("--subgroup", subgroup_arg,
                     "carrier lattice JSON of the subgroup (inline or file path)")
        ->required();

    auto* cmd_relation =
        app.add_subcommand("relation", "canonical relation form {A, B} with Ax = By");
    add_inputs(cmd_relation, 1);

    auto* cmd_classify = app.add_subcommand("classify", "full classification report");
    add_inputs(cmd_classify, 1);
    cmd_classify->add_flag("--pretty", pretty, "human-readable dossier");

    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "symbolic spectrum of V and V*");
    add_inputs(cmd_spectrum, 1);
    cmd_spectrum->add_flag("--pretty", pretty, "human-readable verdicts");

    auto* cmd_orbit = app.add_subcommand(
        "orbit", "forward V and backward V* orbit of a character");
    add_inputs(cmd_orbit, 1);
    cmd_orbit
        ->add_option("--char", char_arg, "integer character vector, JSON or comma list")
        ->required();
    cmd_orbit->add_option("--kmax", kmax, "orbit length bound (default 16)");

    auto* cmd_sample =
        app.add_subcommand("sample", "seeded exact trajectory of the Markov process");
    add_inputs(cmd_sample, 1);
    cmd_sample->add_option("--steps", steps, "path length (default 100)");
    cmd_sample->add_option("--seed", seed, "64-bit unsigned seed (default 1)");
    cmd_sample->add_option("--x0", x0_arg,
                           "starting point, rational JSON or comma list (default 0)");

    auto* cmd_stepdist =
        app.add_subcommand("stepdist", "exact one-step distribution from a point");
    add_inputs(cmd_stepdist, 1);
    cmd_stepdist->add_option("--x0", x0_arg,
                             "base point, rational JSON or comma list (default 0)");

    auto* cmd_oracle = app.add_subcommand(
        "oracle", "run the randomized consistency suite; exit 0 iff all cases pass");
    cmd_oracle->add_option("--seed", seed, "64-bit unsigned seed (default 1)");
    cmd_oracle->add_option("--count", count, "number of cases (default 100)");
    cmd_oracle->add_flag("--pretty", pretty, "one line per case");

    auto* cmd_report = app.add_subcommand(
        "report", "combined dossier: forms, character action, classification");
    add_inputs(cmd_report, 1);
    cmd_report->add_option("--box", box, "include the truncated operator at this radius");
    cmd_report->add_option("--n", n, "include kernel growth up to this power");
    cmd_report->add_flag("--pretty", pretty, "human-readable dossier");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*cmd_compose) {
            const auto a = load_correspondence(inputs[0]);
            const auto b = load_correspondence(inputs[1]);
            emit(to_json(a.compose(b)));
        } else if (*cmd_adjoint) {
            emit(to_json(single_input(inputs).adjoint()));
        } else if (*cmd_power) {
            emit(to_json(single_input(inputs).power(static_cast<int>(n))));
        } else if (*cmd_factor) {
            const auto p = single_input(inputs);
            const auto h = torcor::parse_subgroup(load_document(subgroup_arg));
            emit(to_json(p.factor_by(h)));
        } else if (*cmd_relation) {
            emit(relation_json(single_input(inputs)));
        } else if (*cmd_classify) {
            const auto report = torcor::classify(single_input(inputs));
            if (pretty)
                print_classification(report);
            else
                emit(to_json(report));
        } else if (*cmd_spectrum) {
            const auto report = torcor::spectrum_report(single_input(inputs));
            if (pretty) {
                std::cout << "V   " << to_string(report.v) << "  "
                          << spectrum_label(report.v) << "\n";
                std::cout << "V*  " << to_string(report.v_star) << "  "
                          << spectrum_label(report.v_star) << "\n";
            } else {
                emit(to_json(report));
            }
        } else if (*cmd_orbit) {
            const auto p = single_input(inputs);
            const auto character = torcor::parse_int_vector(vector_document(char_arg));
            emit(to_json(torcor::character_orbit(p, character, kmax)));
        } else if (*cmd_sample) {
            const auto p = single_input(inputs);
            torcor::RatVector x0(p.dim(), torcor::Rat(0));
            if (!x0_arg.empty()) x0 = torcor::parse_rat_vector(vector_document(x0_arg));
            emit(to_json(torcor::sample_path(p, x0, steps, seed)));
        } else if (*cmd_stepdist) {
            const auto p = single_input(inputs);
            torcor::RatVector x0(p.dim(), torcor::Rat(0));
            if (!x0_arg.empty()) x0 = torcor::parse_rat_vector(vector_document(x0_arg));
            emit(to_json(torcor::step_distribution(p, x0)));
        } else if (*cmd_oracle) {
            return run_oracle(seed, count, pretty);
        } else if (*cmd_report) {
            const auto p = single_input(inputs);
            const auto report = torcor::classify(p);
            if (pretty) {
                print_classification(report);
            } else {
                Json j;
                j["correspondence"] = to_json(p);
                j["relation"] = relation_json(p);
                const auto action = p.character_action();
                Json ca;
                ca["Q"] = to_json(action.q);
                ca["Lambda"] = to_json(action.lambda);
                j["character_action"] = std::move(ca);
                j["classification"] = to_json(report);
                if (box > 0) j["operator"] = to_json(torcor::operator_matrix(p, box));
                if (cmd_report->count("--n") > 0)
                    j["kernel_growth"] =
                        to_json(torcor::kernel_growth(p, static_cast<int>(n)));
                emit(j);
            }
        }
    } catch (const torcor::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const torcor::CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const torcor::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const torcor::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed input (" << e.what() << ")\n";
        return 1;
    }
    return 0;
}
