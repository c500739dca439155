/**
 * @file job.hpp
 * @brief Batch jobs: schema parsing, canonical serialization, check execution
 *        and report assembly.
 */

#pragma once

#include "wcomp/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace wcomp {

namespace map_desc {

struct Identity {};
struct Linear {
    CMat s;
};
struct Affine {
    CMat a;
    CVec c;
};
struct Lft {
    CMat a;
    CVec b;
    CVec c;
    Complex d;
};
struct Involution {
    CVec a;
};

}  // namespace map_desc

/// A map as written in a job, kept in its input form so serialization round-trips.
using MapDesc = std::variant<map_desc::Identity, map_desc::Linear, map_desc::Affine, map_desc::Lft, map_desc::Involution>;

inline LinearFractionalMap to_map(const MapDesc& m, int dim)
{
    return std::visit(
        [dim](const auto& x) -> LinearFractionalMap {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, map_desc::Identity>) return LinearFractionalMap::identity(dim);
            else if constexpr (std::is_same_v<T, map_desc::Linear>) return LinearFractionalMap::linear(x.s);
            else if constexpr (std::is_same_v<T, map_desc::Affine>) return LinearFractionalMap::affine(x.a, x.c);
            else if constexpr (std::is_same_v<T, map_desc::Lft>) return {x.a, x.b, x.c, x.d};
            else return make_involution(x.a);
        },
        m);
}

namespace conj_desc {

struct J {};
struct JCU {
    CMat u;
};
struct WPhiJ {
    WeightSpec psi;
    MapDesc phi;
};

}  // namespace conj_desc

using ConjDesc = std::variant<conj_desc::J, conj_desc::JCU, conj_desc::WPhiJ>;

inline ConjugationSpec to_conjugation(const ConjDesc& c, int dim)
{
    if (std::holds_alternative<conj_desc::J>(c)) return conjugation::PlainJ{};
    if (const auto* u = std::get_if<conj_desc::JCU>(&c)) return conjugation::JCU{u->u};
    const auto& w = std::get<conj_desc::WPhiJ>(c);
    return conjugation::WPhiJ{w.psi, to_map(w.phi, dim)};
}

enum class CheckKind { Verdict, Residual, Other };

struct CheckInfo {
    const char* name;
    CheckKind kind;
    /// Default pass threshold; negative when the check has none.
    double tolerance;
};

inline constexpr double kResidualTol = 1e-9;
inline constexpr double kJwKernelTol = 1e-10;
inline constexpr double kConjugationProbeTol = 5e-2;

inline const std::vector<CheckInfo>& check_catalogue()
{
    static const std::vector<CheckInfo> checks = {
        {"classify_dirichlet_J", CheckKind::Verdict, -1.0},
        {"classify_dirichlet_JCU", CheckKind::Verdict, -1.0},
        {"classify_dirichlet_hermitian", CheckKind::Verdict, -1.0},
        {"hardy_unitary", CheckKind::Verdict, -1.0},
        {"hardy_hermitian", CheckKind::Verdict, -1.0},
        {"hardy_normality", CheckKind::Verdict, -1.0},
        {"jw_affine", CheckKind::Verdict, kJwKernelTol},
        {"matrix_symmetry", CheckKind::Residual, kResidualTol},
        {"kernel_symmetry", CheckKind::Residual, kResidualTol},
        {"hermitian_residual", CheckKind::Residual, kResidualTol},
        {"kernel_hermitian", CheckKind::Residual, kResidualTol},
        {"unitary_residual", CheckKind::Residual, kResidualTol},
        {"normal_residual", CheckKind::Residual, kResidualTol},
        {"conjugation_validity", CheckKind::Other, kConjugationEnforceTol},
        {"matrix_export", CheckKind::Other, -1.0},
    };
    return checks;
}

inline const CheckInfo* find_check(const std::string& name)
{
    for (const auto& c : check_catalogue())
        if (name == c.name) return &c;
    return nullptr;
}

/// Tolerance keys: every check with a threshold, plus the probe threshold
/// used by conjugation_validity for a degree-mixing conjugation.
inline bool is_tolerance_key(const std::string& name)
{
    if (name == "conjugation_probe") return true;
    const auto* c = find_check(name);
    return c && c->tolerance >= 0.0;
}

inline double default_tolerance(const std::string& name)
{
    if (name == "conjugation_probe") return kConjugationProbeTol;
    const auto* c = find_check(name);
    return c ? c->tolerance : -1.0;
}

inline int default_degree(int dim)
{
    switch (dim) {
    case 1: return 16;
    case 2: return 8;
    case 3: return 6;
    default: return 4;
    }
}

struct JobSpec {
    std::string name;
    SpaceKind space = SpaceKind::hardy(1);
    WeightSpec psi = weight::Constant{1.0};
    MapDesc phi = map_desc::Identity{};
    std::optional<ConjDesc> conjugation;
    std::vector<std::string> checks;
    int degree_cap = 8;
    int sample_count = kDefaultSampleCount;
    std::uint64_t seed = kDefaultSampleSeed;
    std::map<std::string, double> tolerances;
    /// U of the normality family; identity when absent.
    std::optional<CMat> normality_u;

    WeightedCompositionSpec symbols() const { return {space, psi, to_map(phi, space.dim)}; }

    double tolerance(const std::string& check) const
    {
        const auto it = tolerances.find(check);
        return it != tolerances.end() ? it->second : default_tolerance(check);
    }
};

namespace io {

inline std::string hex_seed(std::uint64_t seed)
{
    std::ostringstream os;
    os << "0x" << std::uppercase << std::hex << seed;
    return os.str();
}

inline std::uint64_t parse_seed(const Json& j, const std::string& path)
{
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) return j.get<std::uint64_t>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t used = 0;
        try {
            const auto v = std::stoull(s, &used, 16);
            if (used == s.size() && !s.empty()) return v;
        } catch (const std::exception&) {
        }
    }
    schema_error(path, "expected a hexadecimal string or a non-negative integer");
}

inline Json weight_to_json(const WeightSpec& w)
{
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, weight::Constant>) return {{"kind", "constant"}, {"c", to_json(x.c)}};
            else if constexpr (std::is_same_v<T, weight::KernelPower>)
                return {{"kind", "kernel_power"}, {"a1", to_json(x.a1)}, {"a0", to_json(x.a0)}, {"power", x.power}};
            else return {{"kind", "normalized_kernel"}, {"mu", to_json(x.mu)}, {"a", to_json(x.a)}, {"power", x.power}};
        },
        w);
}

inline std::string parse_kind(const Json& j, const std::string& path)
{
    require_object(j, path);
    const Json& k = require_field(j, "kind", path);
    if (!k.is_string()) schema_error(child(path, "kind"), "expected a string");
    return k.get<std::string>();
}

inline WeightSpec parse_weight(const Json& j, const std::string& path, int dim)
{
    const std::string kind = parse_kind(j, path);
    auto power = [&] {
        const int p = parse_int(require_field(j, "power", path), child(path, "power"));
        if (p < 0) schema_error(child(path, "power"), "must be non-negative");
        return p;
    };
    if (kind == "constant") {
        allow_only(j, {"kind", "c"}, path);
        return weight::Constant{parse_complex(require_field(j, "c", path), child(path, "c"))};
    }
    if (kind == "kernel_power") {
        allow_only(j, {"kind", "a1", "a0", "power"}, path);
        return weight::KernelPower{parse_complex(require_field(j, "a1", path), child(path, "a1")),
                                   parse_vector(require_field(j, "a0", path), child(path, "a0"), dim), power()};
    }
    if (kind == "normalized_kernel") {
        allow_only(j, {"kind", "mu", "a", "power"}, path);
        return weight::NormalizedKernel{parse_complex(require_field(j, "mu", path), child(path, "mu")),
                                        parse_vector(require_field(j, "a", path), child(path, "a"), dim), power()};
    }
    schema_error(child(path, "kind"), "unknown weight kind '" + kind + "'");
}

inline Json map_to_json(const MapDesc& m)
{
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, map_desc::Identity>) return {{"kind", "identity"}};
            else if constexpr (std::is_same_v<T, map_desc::Linear>) return {{"kind", "linear"}, {"S", to_json(x.s)}};
            else if constexpr (std::is_same_v<T, map_desc::Affine>)
                return {{"kind", "affine"}, {"A", to_json(x.a)}, {"c", to_json(x.c)}};
            else if constexpr (std::is_same_v<T, map_desc::Lft>)
                return {{"kind", "lft"}, {"A", to_json(x.a)}, {"B", to_json(x.b)}, {"C", to_json(x.c)}, {"D", to_json(x.d)}};
            else return {{"kind", "involution"}, {"a", to_json(x.a)}};
        },
        m);
}

inline MapDesc parse_map(const Json& j, const std::string& path, int dim)
{
    const std::string kind = parse_kind(j, path);
    auto mat = [&](const char* key) { return parse_matrix(require_field(j, key, path), child(path, key), dim); };
    auto vec = [&](const char* key) { return parse_vector(require_field(j, key, path), child(path, key), dim); };
    if (kind == "identity") {
        allow_only(j, {"kind"}, path);
        return map_desc::Identity{};
    }
    if (kind == "linear") {
        allow_only(j, {"kind", "S"}, path);
        return map_desc::Linear{mat("S")};
    }
    if (kind == "affine") {
        allow_only(j, {"kind", "A", "c"}, path);
        return map_desc::Affine{mat("A"), vec("c")};
    }
    if (kind == "lft") {
        allow_only(j, {"kind", "A", "B", "C", "D"}, path);
        return map_desc::Lft{mat("A"), vec("B"), vec("C"), parse_complex(require_field(j, "D", path), child(path, "D"))};
    }
    if (kind == "involution") {
        allow_only(j, {"kind", "a"}, path);
        return map_desc::Involution{vec("a")};
    }
    schema_error(child(path, "kind"), "unknown map kind '" + kind + "'");
}

inline Json conjugation_to_json(const ConjDesc& c)
{
    if (std::holds_alternative<conj_desc::J>(c)) return {{"kind", "J"}};
    if (const auto* u = std::get_if<conj_desc::JCU>(&c)) return {{"kind", "JCU"}, {"U", to_json(u->u)}};
    const auto& w = std::get<conj_desc::WPhiJ>(c);
    return {{"kind", "WPhiJ"}, {"psi", weight_to_json(w.psi)}, {"phi", map_to_json(w.phi)}};
}

inline ConjDesc parse_conjugation(const Json& j, const std::string& path, int dim)
{
    const std::string kind = parse_kind(j, path);
    if (kind == "J") {
        allow_only(j, {"kind"}, path);
        return conj_desc::J{};
    }
    if (kind == "JCU") {
        allow_only(j, {"kind", "U"}, path);
        return conj_desc::JCU{parse_matrix(require_field(j, "U", path), child(path, "U"), dim)};
    }
    if (kind == "WPhiJ") {
        allow_only(j, {"kind", "psi", "phi"}, path);
        return conj_desc::WPhiJ{parse_weight(require_field(j, "psi", path), child(path, "psi"), dim),
                                parse_map(require_field(j, "phi", path), child(path, "phi"), dim)};
    }
    schema_error(child(path, "kind"), "unknown conjugation kind '" + kind + "'");
}

inline JobSpec parse_job(const Json& j, const std::string& path = "")
{
    require_object(j, path);
    allow_only(j,
               {"name", "space", "psi", "phi", "conjugation", "checks", "degree_cap", "sample_count", "seed", "tolerances",
                "params"},
               path);
    JobSpec job;
    if (const auto it = j.find("name"); it != j.end()) {
        if (!it->is_string()) schema_error(child(path, "name"), "expected a string");
        job.name = it->get<std::string>();
    }

    const std::string sp = child(path, "space");
    const Json& space = require_field(j, "space", path);
    require_object(space, sp);
    allow_only(space, {"kind", "N"}, sp);
    const std::string kind = parse_kind(space, sp);
    const int n = parse_int(require_field(space, "N", sp), child(sp, "N"));
    if (n < 1) schema_error(child(sp, "N"), "must be >= 1");
    if (kind == "dirichlet") job.space = SpaceKind::dirichlet(n);
    else if (kind == "hardy") job.space = SpaceKind::hardy(n);
    else schema_error(child(sp, "kind"), "unknown space '" + kind + "'");

    job.psi = parse_weight(require_field(j, "psi", path), child(path, "psi"), n);
    job.phi = parse_map(require_field(j, "phi", path), child(path, "phi"), n);
    if (const auto it = j.find("conjugation"); it != j.end())
        job.conjugation = parse_conjugation(*it, child(path, "conjugation"), n);

    const Json& checks = require_field(j, "checks", path);
    if (!checks.is_array()) schema_error(child(path, "checks"), "expected an array of check names");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto cp = child(child(path, "checks"), i);
        if (!checks[i].is_string()) schema_error(cp, "expected a check name");
        const auto name = checks[i].get<std::string>();
        if (!find_check(name)) schema_error(cp, "unknown check '" + name + "'");
        job.checks.push_back(name);
    }

    job.degree_cap = default_degree(n);
    if (const auto it = j.find("degree_cap"); it != j.end()) {
        job.degree_cap = parse_int(*it, child(path, "degree_cap"));
        if (job.degree_cap < 1) schema_error(child(path, "degree_cap"), "must be >= 1");
    }
    if (const auto it = j.find("sample_count"); it != j.end()) {
        job.sample_count = parse_int(*it, child(path, "sample_count"));
        if (job.sample_count < 1) schema_error(child(path, "sample_count"), "must be >= 1");
    }
    if (const auto it = j.find("seed"); it != j.end()) job.seed = parse_seed(*it, child(path, "seed"));
    if (const auto it = j.find("tolerances"); it != j.end()) {
        const auto tp = child(path, "tolerances");
        require_object(*it, tp);
        for (const auto& [key, value] : it->items()) {
            if (!is_tolerance_key(key)) schema_error(child(tp, key), "no tolerance named '" + key + "'");
            const double t = parse_real(value, child(tp, key));
            if (!(t >= 0.0)) schema_error(child(tp, key), "must be non-negative");
            job.tolerances[key] = t;
        }
    }
    if (const auto it = j.find("params"); it != j.end()) {
        const auto pp = child(path, "params");
        require_object(*it, pp);
        allow_only(*it, {"U"}, pp);
        if (const auto u = it->find("U"); u != it->end()) job.normality_u = parse_matrix(*u, child(pp, "U"), n);
    }
    return job;
}

inline Json job_to_json(const JobSpec& job)
{
    Json j = {{"space", {{"kind", to_string(job.space.kind)}, {"N", job.space.dim}}},
              {"psi", weight_to_json(job.psi)},
              {"phi", map_to_json(job.phi)},
              {"checks", job.checks},
              {"degree_cap", job.degree_cap},
              {"sample_count", job.sample_count},
              {"seed", hex_seed(job.seed)}};
    if (!job.name.empty()) j["name"] = job.name;
    if (job.conjugation) j["conjugation"] = conjugation_to_json(*job.conjugation);
    if (!job.tolerances.empty()) j["tolerances"] = job.tolerances;
    if (job.normality_u) j["params"] = {{"U", to_json(*job.normality_u)}};
    return j;
}

/// A job file holds one job object, an array of jobs, or {"jobs": [...]}.
inline std::vector<JobSpec> parse_batch(const Json& j)
{
    std::vector<JobSpec> jobs;
    const Json* list = &j;
    std::string base;
    if (j.is_object() && j.contains("jobs")) {
        allow_only(j, {"jobs"}, "");
        list = &j["jobs"];
        base = "/jobs";
        if (!list->is_array()) schema_error(base, "expected an array of jobs");
    }
    if (list->is_array()) {
        if (list->empty()) schema_error(base, "no jobs");
        for (std::size_t i = 0; i < list->size(); ++i) jobs.push_back(parse_job((*list)[i], child(base, i)));
    } else {
        jobs.push_back(parse_job(j));
    }
    return jobs;
}

inline std::vector<JobSpec> parse_batch_text(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what(), "");
    }
    return parse_batch(j);
}

}  // namespace io

enum class CheckStatus { Pass, Fail, Error };

inline const char* to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "error";
    }
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Error;
    std::optional<double> value;
    std::optional<double> tolerance;
    io::Json details = io::Json::object();
    double seconds = 0.0;
};

struct JobReport {
    std::string name;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    CheckStatus status() const
    {
        CheckStatus s = CheckStatus::Pass;
        for (const auto& c : checks) {
            if (c.status == CheckStatus::Error) return CheckStatus::Error;
            if (c.status == CheckStatus::Fail) s = CheckStatus::Fail;
        }
        return s;
    }
};

namespace detail {

inline const ConjDesc& require_conjugation(const JobSpec& job)
{
    if (!job.conjugation) throw Error(ErrorKind::SchemaError, "check requires a conjugation", "/conjugation");
    return *job.conjugation;
}

inline void require_hardy(const JobSpec& job)
{
    if (job.space.kind != SpaceType::Hardy) throw Error(ErrorKind::WrongSpace, "check requires the hardy space");
}

inline void set_residual(CheckResult& r, double value, double tol)
{
    r.value = value;
    r.tolerance = tol;
    r.status = value <= tol ? CheckStatus::Pass : CheckStatus::Fail;
}

inline void set_verdict(CheckResult& r, const Verdict& v)
{
    r.details["verdict"] = io::to_json(v);
    r.status = v.holds ? CheckStatus::Pass : CheckStatus::Fail;
}

/// Per-job lazily built objects shared by the checks.
class JobContext {
public:
    explicit JobContext(const JobSpec& job) : job_(job), w_(job.symbols()) {}

    const WeightedCompositionSpec& symbols() const { return w_; }

    const OperatorCompression& compression()
    {
        if (!t_) t_ = build_compression(w_, job_.degree_cap);
        return *t_;
    }

    const SamplePairs& samples()
    {
        if (!samples_) samples_ = sample_pairs(job_.space.dim, job_.sample_count, job_.seed);
        return *samples_;
    }

    ConjugationSpec conjugation() const { return to_conjugation(require_conjugation(job_), job_.space.dim); }

private:
    const JobSpec& job_;
    WeightedCompositionSpec w_;
    std::optional<OperatorCompression> t_;
    std::optional<SamplePairs> samples_;
};

inline void run_check(const JobSpec& job, JobContext& ctx, CheckResult& r)
{
    const auto& name = r.name;
    const auto& w = ctx.symbols();
    const double tol = job.tolerance(name);

    if (name == "classify_dirichlet_J") return set_verdict(r, classify_dirichlet_J(w));
    if (name == "classify_dirichlet_hermitian") return set_verdict(r, classify_dirichlet_hermitian(w));
    if (name == "classify_dirichlet_JCU") {
        const auto c = ctx.conjugation();
        const auto* jcu = std::get_if<conjugation::JCU>(&c);
        if (!jcu) throw Error(ErrorKind::SchemaError, "classify_dirichlet_JCU needs a JCU conjugation", "/conjugation/kind");
        return set_verdict(r, classify_dirichlet_JCU(w, jcu->u));
    }
    if (name == "hardy_unitary" || name == "hardy_hermitian") {
        require_hardy(job);
        const auto fam = extract_hardy_family(w);
        return set_verdict(r, name == "hardy_unitary" ? hardy_unitary_check(fam.a1, fam.a0, fam.a)
                                                      : hardy_hermitian_check(fam.a1, fam.a0, fam.a));
    }
    if (name == "hardy_normality") {
        require_hardy(job);
        const CMat u = job.normality_u.value_or(CMat::Identity(job.space.dim, job.space.dim));
        const auto fam = extract_normality_family(w, u);
        return set_verdict(r, hardy_normality_check(fam.a1, fam.a0, fam.a, u));
    }
    if (name == "jw_affine") {
        require_hardy(job);
        const auto lin = linear_part(w.phi);
        if (!lin || (w.phi.c() / std::conj(w.phi.d())).norm() > kLinearTol)
            throw Error(ErrorKind::UnsupportedFamily, "jw_affine requires an affine phi", "/phi");
        if (canonical_form(w.psi, job.space.dim).is_constant() == false || eval_weight(w.psi, CVec::Zero(job.space.dim)) != Complex(1.0))
            throw Error(ErrorKind::UnsupportedFamily, "jw_affine requires psi = 1", "/psi");
        const auto res = jw_affine_symmetry_check(lin->s, w.phi.b() / w.phi.d(), ctx.samples());
        set_verdict(r, res.verdict);
        r.details["b"] = io::to_json(res.b);
        if (res.verdict.holds) {
            const double kr = res.verdict.diagnostics.at("kernel residual");
            r.value = kr;
            r.tolerance = tol;
            if (kr > tol) r.status = CheckStatus::Fail;
        }
        return;
    }
    if (name == "matrix_symmetry" || name == "conjugation_validity") {
        const auto c = build_conjugation(ctx.conjugation(), job.space, job.degree_cap);
        const int probe = c.exact ? -1 : kDefaultProbeDegree;
        r.details["conjugation"] = conjugation_name(ctx.conjugation());
        r.details["degree"] = job.degree_cap;
        r.details["probe_degree"] = probe < 0 ? io::Json(nullptr) : io::Json(probe);
        if (name == "matrix_symmetry") return set_residual(r, symmetry_residual_matrix(ctx.compression(), c, probe), tol);
        const auto res = conjugation_residuals(c, probe);
        r.details["involution"] = res.involution;
        r.details["isometry"] = res.isometry;
        return set_residual(r, std::max(res.involution, res.isometry), c.exact ? tol : job.tolerance("conjugation_probe"));
    }
    if (name == "kernel_symmetry") return set_residual(r, kernel_symmetry_residual(w, ctx.conjugation(), ctx.samples()), tol);
    if (name == "kernel_hermitian") return set_residual(r, kernel_hermitian_residual(w, ctx.samples()), tol);
    if (name == "hermitian_residual") return set_residual(r, hermitian_residual(ctx.compression()), tol);
    if (name == "normal_residual") return set_residual(r, normal_residual(ctx.compression()), tol);
    if (name == "unitary_residual") {
        const auto& t = ctx.compression();
        const int probe = t.degree_preserving ? -1 : kDefaultProbeDegree;
        r.details["probe_degree"] = probe < 0 ? io::Json(nullptr) : io::Json(probe);
        return set_residual(r, unitary_residual(t, probe), tol);
    }
    if (name == "matrix_export") {
        r.details["matrix"] = io::export_matrix(ctx.compression());
        r.status = CheckStatus::Pass;
        return;
    }
    throw Error(ErrorKind::SchemaError, "unknown check '" + name + "'", "/checks");
}

}  // namespace detail

/// Runs every listed check; domain errors are recorded against the check
/// rather than aborting the job.
inline JobReport run_job(const JobSpec& job, const std::string& path = "")
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    JobReport report{job.name, {}, 0.0};
    std::optional<detail::JobContext> ctx;
    std::optional<Error> setup_error;
    try {
        ctx.emplace(job);
    } catch (const Error& e) {
        setup_error = e;
    }
    for (std::size_t i = 0; i < job.checks.size(); ++i) {
        CheckResult r;
        r.name = job.checks[i];
        const auto t0 = clock::now();
        try {
            if (setup_error) throw *setup_error;
            detail::run_check(job, *ctx, r);
        } catch (const Error& e) {
            r.status = CheckStatus::Error;
            r.details["error"] = {{"kind", to_string(e.kind())},
                                  {"message", e.what()},
                                  {"path", path + (e.path().empty() ? "/checks/" + std::to_string(i) : e.path())}};
        }
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        report.checks.push_back(std::move(r));
    }
    report.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return report;
}

/// Runs jobs on up to `threads` workers; the result order matches the input.
inline std::vector<JobReport> run_batch(const std::vector<JobSpec>& jobs, unsigned threads = 0)
{
    std::vector<JobReport> out(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) out[i] = run_job(jobs[i], jobs.size() > 1 ? "/jobs/" + std::to_string(i) : "");
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

namespace io {

inline Json to_json(const CheckResult& r, bool timings = true)
{
    Json j = {{"check", r.name}, {"status", to_string(r.status)}};
    j["value"] = r.value ? Json(*r.value) : Json(nullptr);
    j["tolerance"] = r.tolerance ? Json(*r.tolerance) : Json(nullptr);
    for (const auto& [k, v] : r.details.items()) j[k] = v;
    if (timings) j["seconds"] = r.seconds;
    return j;
}

inline Json report_to_json(const std::vector<JobReport>& reports, bool timings = true)
{
    Json jobs = Json::array();
    CheckStatus overall = CheckStatus::Pass;
    for (const auto& rep : reports) {
        Json checks = Json::array();
        for (const auto& c : rep.checks) checks.push_back(to_json(c, timings));
        Json j = {{"name", rep.name}, {"status", to_string(rep.status())}, {"checks", std::move(checks)}};
        if (timings) j["seconds"] = rep.seconds;
        jobs.push_back(std::move(j));
        if (rep.status() == CheckStatus::Error) overall = CheckStatus::Error;
        else if (rep.status() == CheckStatus::Fail && overall == CheckStatus::Pass) overall = CheckStatus::Fail;
    }
    return {{"status", to_string(overall)}, {"jobs", std::move(jobs)}};
}

inline std::string report_to_text(const std::vector<JobReport>& reports)
{
    struct Row {
        std::string job, check, status, value, tolerance, note;
    };
    std::vector<Row> rows{{"job", "check", "status", "value", "tolerance", "note"}};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& rep = reports[i];
        const std::string job = rep.name.empty() ? "#" + std::to_string(i) : rep.name;
        for (const auto& c : rep.checks) {
            std::ostringstream value, tol;
            if (c.value) value << std::scientific << std::setprecision(3) << *c.value;
            if (c.tolerance) tol << std::scientific << std::setprecision(1) << *c.tolerance;
            std::string note;
            if (c.details.contains("error")) note = c.details["error"]["message"].get<std::string>();
            else if (c.details.contains("verdict") && !c.details["verdict"]["witness"].is_null())
                note = "witness: " + c.details["verdict"]["witness"].get<std::string>();
            rows.push_back({job, c.name, to_string(c.status), value.str(), tol.str(), note});
        }
    }
    std::size_t w[5] = {};
    for (const auto& r : rows) {
        w[0] = std::max(w[0], r.job.size());
        w[1] = std::max(w[1], r.check.size());
        w[2] = std::max(w[2], r.status.size());
        w[3] = std::max(w[3], r.value.size());
        w[4] = std::max(w[4], r.tolerance.size());
    }
    std::ostringstream os;
    for (const auto& r : rows) {
        os << std::left << std::setw(static_cast<int>(w[0] + 2)) << r.job << std::setw(static_cast<int>(w[1] + 2)) << r.check
           << std::setw(static_cast<int>(w[2] + 2)) << r.status << std::setw(static_cast<int>(w[3] + 2)) << r.value
           << std::setw(static_cast<int>(w[4] + 2)) << r.tolerance << r.note;
        os << '\n';
    }
    std::string out = os.str();
    // drop trailing padding on rows without a note
    std::string trimmed;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
        line.erase(line.find_last_not_of(' ') + 1);
        trimmed += line + '\n';
    }
    return trimmed;
}

}  // namespace io

inline int exit_code(const std::vector<JobReport>& reports)
{
    int code = 0;
    for (const auto& r : reports) {
        if (r.status() == CheckStatus::Error) return 2;
        if (r.status() == CheckStatus::Fail) code = 1;
    }
    return code;
}

}  // namespace wcomp
