// dillscope: edit-distance pseudo-metrics and dill-map classification.
//
// Subcommands: classify, distance, simulate, verify. See README.md.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "dillscope/analysis.hpp"
#include "dillscope/builtins.hpp"
#include "dillscope/io_util.hpp"
#include "dillscope/json_report.hpp"
#include "dillscope/metrics.hpp"
#include "dillscope/ppm.hpp"
#include "dillscope/rule_io.hpp"
#include "dillscope/spec_format.hpp"
#include "dillscope/verify.hpp"

namespace {

using namespace dillscope;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceCap = 3;

struct NamedRule {
    std::string name;
    DillMap map;
};

NamedRule resolve_rule(const std::string& arg) {
    if (is_builtin_rule(arg)) return {arg, builtin_rule(arg)};
    try {
        return {std::filesystem::path(arg).stem().string(), load_rule_file(arg)};
    } catch (const RuleParseError& e) {
        std::cerr << "error: " << arg << ":" << e.line << ": " << e.what() << "\n";
        std::exit(kExitUsage);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitUsage);
    }
}

std::vector<std::uint64_t> parse_lengths(const std::string& text) {
    if (text.rfind("geometric:", 0) == 0) {
        const std::string rest = text.substr(10);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("geometric lengths need two exponents: " + text);
        return geometric_lengths(static_cast<unsigned>(std::stoul(rest.substr(0, comma))),
                                 static_cast<unsigned>(std::stoul(rest.substr(comma + 1))));
    }
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    return out;
}

void emit(const std::string& out_path, const std::string& bytes) {
    if (out_path == "-")
        std::cout << bytes;
    else
        write_file_atomic(out_path, bytes);
}

int cmd_classify(const std::string& rule_arg) {
    NamedRule rule = resolve_rule(rule_arg);
    try {
        std::cout << classification_to_json(classify(rule.map, rule.name)).dump(2) << "\n";
        return kExitOk;
    } catch (const OrbitBlowupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_distance(const std::string& kind_text, const std::string& x_text,
                 const std::string& y_text, std::string lengths_text,
                 const std::string& alphabet_glyphs, const std::string& out_path) {
    const bool weyl = kind_text.rfind("weyl-", 0) == 0;
    const std::string base_kind = weyl ? kind_text.substr(5) : kind_text;
    DistanceKind kind;
    if (base_kind == "hamming")
        kind = DistanceKind::Hamming;
    else if (base_kind == "levenshtein")
        kind = DistanceKind::Levenshtein;
    else {
        std::cerr << "error: unknown distance kind: " << kind_text << "\n";
        return kExitUsage;
    }
    if (lengths_text.empty()) lengths_text = weyl ? "geometric:6,12" : "geometric:6,20";

    try {
        Alphabet alpha(alphabet_glyphs.size(), alphabet_glyphs);
        InfiniteWordSpec x = parse_word_spec(x_text, alpha);
        InfiniteWordSpec y = parse_word_spec(y_text, alpha);
        const auto lengths = parse_lengths(lengths_text);

        DistanceCurve c = weyl ? weyl_curve(kind, x, y, lengths) : curve(kind, x, y, lengths);
        if (!weyl && x.is_eventually_periodic() && y.is_eventually_periodic()) {
            if (kind == DistanceKind::Hamming) {
                c.estimate = besicovitch_exact_periodic(x, y);
                c.estimate_kind = EstimateKind::ExactPeriodic;
            } else {
                c.estimate = feldman_periodic_bounds(x, y).upper;
                c.estimate_kind = EstimateKind::FeketeUpperBound;
            }
        }
        emit(out_path, curve_to_csv(c));
        return kExitOk;
    } catch (const OrbitBlowupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_simulate(const std::string& rule_arg, const std::string& x_text, std::uint64_t steps,
                 std::uint64_t width, const std::string& out_path) {
    NamedRule rule = resolve_rule(rule_arg);
    try {
        InfiniteWordSpec x = parse_word_spec(x_text, rule.map.alphabet());
        if (x.alphabet().size() != rule.map.alphabet().size()) {
            std::cerr << "error: alphabet mismatch between rule and input\n";
            return kExitUsage;
        }
        emit(out_path, render_spacetime_ppm(rule.map, x, steps, width));
        return kExitOk;
    } catch (const OrbitBlowupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_verify(const std::string& which, bool json, const std::string& outdir) {
    std::vector<ExperimentResult> results;
    try {
        results = run_experiments(which, outdir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    bool all_pass = true;
    if (json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) {
            arr.push_back({{"id", r.id}, {"pass", r.pass}, {"detail", r.detail}});
            all_pass &= r.pass;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::printf("%-4s  %-26s  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                        r.detail.c_str());
            all_pass &= r.pass;
        }
    }
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edit-distance pseudo-metrics and dill-map classification"};
    app.require_subcommand(1);

    auto* classify_cmd =
        app.add_subcommand("classify", "classify a rule; JSON report on stdout");
    std::string rule_arg;
    classify_cmd->add_option("rule", rule_arg, "rule file path or built-in name")->required();

    auto* distance_cmd = app.add_subcommand("distance", "sample a pseudo-metric curve to CSV");
    std::string kind_text = "hamming", x_text, y_text, lengths_text, out_path = "-";
    std::string alphabet_glyphs = "01";
    distance_cmd
        ->add_option("--kind", kind_text,
                     "hamming | levenshtein | weyl-hamming | weyl-levenshtein")
        ->default_val("hamming");
    distance_cmd->add_option("--x", x_text, "left word spec, e.g. (01)^inf or fix(fibonacci,0)")
        ->required();
    distance_cmd->add_option("--y", y_text, "right word spec")->required();
    distance_cmd->add_option("--lengths", lengths_text,
                             "comma list or geometric:lo,hi (powers of two)");
    distance_cmd->add_option("--alphabet", alphabet_glyphs, "glyphs for periodic word specs")
        ->default_val("01");
    distance_cmd->add_option("--out", out_path, "output CSV path, or - for stdout")
        ->default_val("-");

    auto* simulate_cmd = app.add_subcommand("simulate", "render a space-time diagram to PPM");
    std::string sim_rule, sim_x, sim_out;
    std::uint64_t steps = 0, width = 0;
    simulate_cmd->add_option("rule", sim_rule, "rule file path or built-in name")->required();
    simulate_cmd->add_option("--x", sim_x, "input word spec")->required();
    simulate_cmd->add_option("--steps", steps, "rows (time steps)")->required();
    simulate_cmd->add_option("--width", width, "columns (letters per row)")->required();
    simulate_cmd->add_option("--out", sim_out, "output PPM path")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the built-in reproduction suite");
    std::string which = "all", outdir = "verify_out";
    bool as_json = false;
    verify_cmd->add_option("id", which, "experiment id, or 'all'")->default_val("all");
    verify_cmd->add_flag("--json", as_json, "machine-readable results");
    verify_cmd->add_option("--outdir", outdir, "artifact directory")->default_val("verify_out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (classify_cmd->parsed()) return cmd_classify(rule_arg);
    if (distance_cmd->parsed())
        return cmd_distance(kind_text, x_text, y_text, lengths_text, alphabet_glyphs, out_path);
    if (simulate_cmd->parsed()) return cmd_simulate(sim_rule, sim_x, steps, width, sim_out);
    if (verify_cmd->parsed()) return cmd_verify(which, as_json, outdir);
    return kExitUsage;
}
