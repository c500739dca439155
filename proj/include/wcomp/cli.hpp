/**
 * @file cli.hpp
 * @brief Command-line front end over job files and the acceptance battery.
 *
 * Exit codes: 0 when every requested check passes, 1 when a check fails,
 * 2 on malformed input or a domain error raised by a check.
 */

#pragma once

#include "wcomp/acceptance.hpp"
#include "wcomp/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

namespace wcomp::cli {

struct Options {
    std::string input;
    std::optional<int> degree;
    std::optional<int> samples;
    std::optional<std::string> seed;
    std::vector<std::string> tolerances;
    std::string out;
    std::string format = "text";
    unsigned threads = 0;
};

inline std::string read_input(const std::string& path)
{
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SchemaError, "cannot read '" + path + "'", "");
    buf << in.rdbuf();
    return buf.str();
}

/// Verdict checks that apply to a job when it lists none.
inline std::vector<std::string> inferred_classifications(const JobSpec& job)
{
    if (job.space.kind == SpaceType::Dirichlet) {
        if (!job.conjugation) return {"classify_dirichlet_hermitian"};
        if (std::holds_alternative<conj_desc::JCU>(*job.conjugation)) return {"classify_dirichlet_JCU"};
        return {"classify_dirichlet_J"};
    }
    return {"hardy_unitary", "hardy_hermitian"};
}

inline void apply_overrides(std::vector<JobSpec>& jobs, const Options& o)
{
    std::map<std::string, double> tols;
    for (const auto& t : o.tolerances) {
        const auto eq = t.find('=');
        const std::string name = t.substr(0, eq);
        if (eq == std::string::npos || !is_tolerance_key(name))
            throw Error(ErrorKind::SchemaError, "--tol expects NAME=VALUE with a known tolerance name, got '" + t + "'", "--tol");
        try {
            std::size_t used = 0;
            const std::string value = t.substr(eq + 1);
            tols[name] = std::stod(value, &used);
            if (used != value.size() || !(tols[name] >= 0.0)) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw Error(ErrorKind::SchemaError, "invalid tolerance value in '" + t + "'", "--tol");
        }
    }
    std::optional<std::uint64_t> seed;
    if (o.seed) seed = io::parse_seed(io::Json(*o.seed), "--seed");
    if (o.degree && *o.degree < 1) throw Error(ErrorKind::SchemaError, "--degree must be >= 1", "--degree");
    if (o.samples && *o.samples < 1) throw Error(ErrorKind::SchemaError, "--samples must be >= 1", "--samples");
    for (auto& job : jobs) {
        if (o.degree) job.degree_cap = *o.degree;
        if (o.samples) job.sample_count = *o.samples;
        if (seed) job.seed = *seed;
        for (const auto& [k, v] : tols) job.tolerances[k] = v;
    }
}

inline void emit(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorKind::SchemaError, "cannot write '" + o.out + "'", "--out");
    f << text;
}

enum class Mode { Run, Classify, Symmetry, Conjugation, Matrix };

inline int run_jobs(Mode mode, const Options& o, std::ostream& out)
{
    auto jobs = io::parse_batch_text(read_input(o.input));
    apply_overrides(jobs, o);
    for (auto& job : jobs) {
        switch (mode) {
        case Mode::Run: break;
        case Mode::Classify: {
            std::vector<std::string> verdicts;
            for (const auto& c : job.checks)
                if (find_check(c)->kind == CheckKind::Verdict) verdicts.push_back(c);
            job.checks = verdicts.empty() ? inferred_classifications(job) : verdicts;
            break;
        }
        case Mode::Symmetry:
            if (!job.conjugation) job.conjugation = conj_desc::J{};
            job.checks = {"matrix_symmetry", "kernel_symmetry"};
            break;
        case Mode::Conjugation: job.checks = {"conjugation_validity"}; break;
        case Mode::Matrix: job.checks = {"matrix_export"}; break;
        }
    }
    const auto reports = run_batch(jobs, o.threads);
    emit(o, o.format == "json" ? io::report_to_json(reports).dump(2) + "\n" : io::report_to_text(reports), out);
    return exit_code(reports);
}

inline int run_suite(const Options& o, std::ostream& out)
{
    namespace acc = acceptance;
    std::vector<acc::CriterionResult> results;
    for (std::size_t i = 0; i < acc::criteria().size(); ++i) results.push_back(acc::run_criterion(i));
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    std::string text;
    if (o.format == "json") {
        io::Json list = io::Json::array();
        for (const auto& r : results)
            list.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"summary", r.summary}, {"seconds", r.seconds}});
        text = io::Json{{"status", all ? "pass" : "fail"}, {"criteria", std::move(list)}}.dump(2) + "\n";
    } else {
        for (const auto& r : results) text += acc::format_line(r) + "\n";
    }
    emit(o, text, out);
    return all ? 0 : 1;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Weighted composition operator checks on Dirichlet and Hardy spaces of the ball", "wcomp"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub, bool with_input) {
        if (with_input) sub->add_option("jobs", o.input, "Job file (JSON); '-' reads stdin")->required();
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", o.out, "Write output to PATH");
        if (!with_input) return;
        sub->add_option("--degree", o.degree, "Degree cap D of the compressions");
        sub->add_option("--samples", o.samples, "Number of kernel sample pairs");
        sub->add_option("--seed", o.seed, "Sample seed (hexadecimal)");
        sub->add_option("--tol", o.tolerances, "Tolerance override NAME=VALUE (repeatable)");
        sub->add_option("--threads", o.threads, "Worker threads for batches (0 = all cores)");
    };
    const std::vector<std::pair<Mode, CLI::App*>> modes = {
        {Mode::Run, app.add_subcommand("run", "Run the checks listed in each job")},
        {Mode::Classify, app.add_subcommand("classify", "Run the classification predicates")},
        {Mode::Symmetry, app.add_subcommand("check-symmetry", "Matrix and kernel complex-symmetry residuals")},
        {Mode::Conjugation, app.add_subcommand("check-conjugation", "Involution and isometry residuals of the conjugation")},
        {Mode::Matrix, app.add_subcommand("build-matrix", "Export the compression matrix")},
    };
    for (const auto& [mode, sub] : modes) common(sub, true);
    auto* suite = app.add_subcommand("suite", "Run the acceptance battery");
    common(suite, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (suite->parsed()) return run_suite(o, out);
        for (const auto& [mode, sub] : modes)
            if (sub->parsed()) return run_jobs(mode, o, out);
    } catch (const Error& e) {
        err << "error: " << e.what();
        if (!e.path().empty()) err << " at " << e.path();
        err << '\n';
        return 2;
    }
    return 2;
}

}  // namespace wcomp::cli
