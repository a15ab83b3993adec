// Command-line front end: classify / plot / compare / member / sample over
// the J_n(alpha) + beta I_m family or a raw matrix file.
//
// Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 engine
// disagreement.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hrnr/cli_plot.hpp"
#include "hrnr/json_io.hpp"

namespace {

// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i" and "a,b".
hrnr::complex_t parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw CLI::ConversionError("empty complex literal");

    const auto comma = s.find(',');
    if (comma != std::string::npos) {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    }
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        // split into real part and imaginary coefficient
        std::size_t split = s.size();
        int depth = 0;
        for (std::size_t i = s.size(); i-- > 1;) {
            (void)depth;
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == s.size()) {  // pure imaginary
            if (s.empty() || s == "+") return {0.0, 1.0};
            if (s == "-") return {0.0, -1.0};
            return {0.0, std::stod(s)};
        }
        std::string im = s.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {std::stod(s.substr(0, split)), std::stod(im)};
    }
    return {std::stod(s), 0.0};
}

struct CliOptions {
    std::size_t n = 0;
    long long m = -1;
    std::string k = "1";
    std::string alpha = "0";
    std::string beta = "0";
    std::string mu = "0";
    std::string matrix_file;
    std::string engine = "both";
    std::string format = "json";
    std::string output;
    std::size_t resolution = 3600;
    std::size_t arc_steps = 720;
    double tol = -1.0;
    bool show_sets = false;
};

void add_common(CLI::App* cmd, CliOptions& opt, bool with_model) {
    if (with_model) {
        cmd->add_option("--n", opt.n, "Jordan block size (>= 2)");
        cmd->add_option("--m", opt.m, "scalar block size (>= 0)");
        cmd->add_option("--alpha", opt.alpha, "Jordan eigenvalue, e.g. 0, 1-2i or '-1,-1'");
        cmd->add_option("--beta", opt.beta, "scalar eigenvalue");
        cmd->add_option("--matrix-file", opt.matrix_file, "raw matrix JSON (forces sampler engine)");
    }
    cmd->add_option("--k", opt.k, "rank index, or 'all'");
    cmd->add_option("--engine", opt.engine, "closed | sampler | both");
    cmd->add_option("--resolution", opt.resolution, "support sampling resolution (default 3600)");
    cmd->add_option("--arc-steps", opt.arc_steps, "boundary discretization steps (default 720)");
    cmd->add_option("--format", opt.format, "json | svg");
    cmd->add_option("--output", opt.output, "write output to this path instead of stdout");
    cmd->add_option("--tol", opt.tol, "membership/agreement tolerance override");
    cmd->add_flag("--show-sets", opt.show_sets, "mark the angle sets on plots");
}

hrnr::JobSpec build_spec(const CliOptions& opt) {
    hrnr::JobSpec spec;
    if (!opt.matrix_file.empty()) {
        std::ifstream in(opt.matrix_file);
        if (!in) throw std::invalid_argument("cannot open matrix file: " + opt.matrix_file);
        hrnr::json j;
        in >> j;
        spec.matrix = hrnr::matrix_from_json(j);
    }
    if (opt.n != 0) {
        if (opt.m < 0) throw std::invalid_argument("--m is required with --n");
        spec.model = hrnr::make_model(opt.n, static_cast<std::size_t>(opt.m),
                                      parse_complex(opt.alpha), parse_complex(opt.beta));
    }
    if (opt.k == "all") spec.all_k = true;
    else spec.k = static_cast<std::size_t>(std::stoull(opt.k));
    if (opt.engine == "closed") spec.engine = hrnr::JobSpec::Engine::closed;
    else if (opt.engine == "sampler") spec.engine = hrnr::JobSpec::Engine::sampler;
    else if (opt.engine == "both") spec.engine = hrnr::JobSpec::Engine::both;
    else throw std::invalid_argument("unknown engine: " + opt.engine);
    if (spec.matrix && spec.engine != hrnr::JobSpec::Engine::sampler)
        spec.engine = hrnr::JobSpec::Engine::sampler;
    spec.resolution = opt.resolution;
    spec.arc_steps = opt.arc_steps;
    spec.format = opt.format;
    spec.show_sets = opt.show_sets;
    spec.tol = opt.tol;
    return spec;
}

int emit(const hrnr::CmdResult& result, const std::string& output_path) {
    if (result.code == 2 || result.code == 3) {
        std::cerr << result.output;
        return result.code;
    }
    if (!output_path.empty()) {
        std::ofstream out(output_path);
        if (!out) {
            std::cerr << "cannot write " << output_path << "\n";
            return 3;
        }
        out << result.output;
    } else {
        std::cout << result.output;
    }
    return result.code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher rank numerical ranges of J_n(alpha) + beta I_m"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string mu_text = "0";

    auto* c_classify = app.add_subcommand("classify", "closed-form case of the range");
    add_common(c_classify, opt, true);
    auto* c_plot = app.add_subcommand("plot", "SVG figure with support lines and boundary");
    add_common(c_plot, opt, true);
    auto* c_compare = app.add_subcommand("compare", "cross-validate the two engines");
    add_common(c_compare, opt, true);
    auto* c_member = app.add_subcommand("member", "membership verdict for a point");
    add_common(c_member, opt, true);
    c_member->add_option("--mu", mu_text, "probe point, e.g. 0.5+0.1i");
    auto* c_sample = app.add_subcommand("sample", "sampled support profile as JSON");
    add_common(c_sample, opt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        hrnr::JobSpec spec = build_spec(opt);
        hrnr::CmdResult result;
        if (c_classify->parsed()) result = hrnr::cmd_classify(spec);
        else if (c_plot->parsed()) result = hrnr::cmd_plot(spec);
        else if (c_compare->parsed()) result = hrnr::cmd_compare(spec);
        else if (c_member->parsed()) {
            spec.mu = parse_complex(mu_text);
            result = hrnr::cmd_member(spec);
        } else if (c_sample->parsed()) result = hrnr::cmd_sample(spec);
        return emit(result, opt.output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    }
}
