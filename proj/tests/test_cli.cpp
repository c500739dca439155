#include "wcomp/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

using namespace wcomp;
using io::Json;

namespace {

const std::string kData = WCOMP_DATA_DIR;

std::string data_file(const std::string& name) { return kData + "/jobs/" + name; }

Json load(const std::string& path)
{
    std::ifstream in(path);
    return Json::parse(in);
}

Json example_job()
{
    return Json::parse(R"({
        "space": {"kind": "dirichlet", "N": 2},
        "psi": {"kind": "constant", "c": 2},
        "phi": {"kind": "linear", "S": [[[0.3,0],[0.1,0]],[[0.1,0],[0.5,0]]]},
        "conjugation": {"kind": "J"},
        "checks": ["classify_dirichlet_J", "matrix_symmetry"]
    })");
}

std::string schema_path(const Json& j)
{
    try {
        io::parse_batch(j);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SchemaError);
        return e.path();
    }
    ADD_FAILURE() << "no SchemaError";
    return {};
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "wcomp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const CheckResult& check(const JobReport& r, const std::string& name)
{
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST(JobParse, ComplexForms)
{
    EXPECT_EQ(io::parse_complex(Json::parse("[0.5, 0]"), ""), Complex(0.5));
    EXPECT_EQ(io::parse_complex(Json::parse("0.5"), ""), Complex(0.5));
    EXPECT_EQ(io::parse_complex(Json::parse("[0.5, -1.25]"), ""), Complex(0.5, -1.25));
    try {
        io::parse_complex(Json::parse("[1, 2, 3]"), "/x");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.path(), "/x");
    }
}

TEST(JobParse, MatrixIsRowMajor)
{
    const CMat s = io::parse_matrix(Json::parse("[[[0.3,0],[0.1,0]],[[0.1,0],[0.5,0]]]"), "");
    CMat expected(2, 2);
    expected << 0.3, 0.1, 0.1, 0.5;
    EXPECT_EQ(s, expected);
    EXPECT_EQ(io::parse_matrix(Json::parse("[[1, 2], [3, 4]]"), "")(1, 0), Complex(3.0));
}

TEST(JobParse, MissingSpaceNamesPath)
{
    Json j = example_job();
    j.erase("space");
    EXPECT_EQ(schema_path(j), "/space");
}

TEST(JobParse, UnknownFieldsAndChecks)
{
    Json j = example_job();
    j["colour"] = "blue";
    EXPECT_EQ(schema_path(j), "/colour");

    j = example_job();
    j["checks"][1] = "symmetry_please";
    EXPECT_EQ(schema_path(j), "/checks/1");

    j = example_job();
    j["phi"]["T"] = 1;
    EXPECT_EQ(schema_path(j), "/phi/T");

    j = example_job();
    j["tolerances"] = {{"classify_dirichlet_J", 1e-3}};
    EXPECT_EQ(schema_path(j), "/tolerances/classify_dirichlet_J");
}

TEST(JobParse, DimensionAndKindErrors)
{
    Json j = example_job();
    j["phi"]["S"] = Json::parse("[[1, 0, 0], [0, 1, 0]]");
    EXPECT_EQ(schema_path(j), "/phi/S/0");

    j = example_job();
    j["psi"] = {{"kind", "kernel_power"}, {"a1", 1}, {"a0", {0.1}}, {"power", 1}};
    EXPECT_EQ(schema_path(j), "/psi/a0");

    j = example_job();
    j["conjugation"]["kind"] = "K";
    EXPECT_EQ(schema_path(j), "/conjugation/kind");

    j = example_job();
    j["degree_cap"] = 0;
    EXPECT_EQ(schema_path(j), "/degree_cap");

    EXPECT_EQ(schema_path(Json::parse(R"({"jobs": [{}, {}]})")), "/jobs/0/space");
}

TEST(JobParse, SeedForms)
{
    Json j = example_job();
    j["seed"] = "0xb411";
    EXPECT_EQ(io::parse_job(j).seed, 0xB411u);
    j["seed"] = "ff";
    EXPECT_EQ(io::parse_job(j).seed, 0xFFu);
    j["seed"] = 17;
    EXPECT_EQ(io::parse_job(j).seed, 17u);
    j["seed"] = "xyz";
    EXPECT_EQ(schema_path(j), "/seed");
}

TEST(JobParse, DefaultDegreeFollowsDimension)
{
    Json j = example_job();
    EXPECT_EQ(io::parse_job(j).degree_cap, 8);
    j = Json::parse(R"({"space": {"kind": "hardy", "N": 3}, "psi": {"kind": "constant", "c": 1},
                        "phi": {"kind": "identity"}, "checks": []})");
    EXPECT_EQ(io::parse_job(j).degree_cap, 6);
}

TEST(JobSerialize, RoundTripsEverySample)
{
    for (const auto& entry : std::filesystem::directory_iterator(kData + "/jobs")) {
        const auto jobs = io::parse_batch(load(entry.path().string()));
        for (const auto& job : jobs) {
            const Json once = io::job_to_json(job);
            const Json twice = io::job_to_json(io::parse_job(once));
            EXPECT_EQ(once, twice) << entry.path();
        }
    }
}

TEST(JobSerialize, RoundTripPreservesValuesExactly)
{
    Rng rng(7);
    JobSpec job;
    job.space = SpaceKind::hardy(2);
    job.psi = weight::KernelPower{random_complex(rng), random_ball_point(rng, 2, 0.5), 2};
    job.phi = map_desc::Lft{random_complex_matrix(rng, 2, 2), random_ball_point(rng, 2, 0.5), random_ball_point(rng, 2, 0.5),
                            random_complex(rng)};
    job.conjugation = conj_desc::WPhiJ{weight::NormalizedKernel{1.0, random_ball_point(rng, 2, 0.5), 2},
                                       map_desc::Involution{random_ball_point(rng, 2, 0.5)}};
    job.checks = {"kernel_symmetry"};
    job.tolerances["kernel_symmetry"] = 1e-7;
    job.normality_u = random_unitary_symmetric(rng, 2);
    const JobSpec back = io::parse_job(Json::parse(io::job_to_json(job).dump()));
    const auto& a = std::get<map_desc::Lft>(job.phi);
    const auto& b = std::get<map_desc::Lft>(back.phi);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.b, b.b);
    EXPECT_EQ(a.c, b.c);
    EXPECT_EQ(a.d, b.d);
    EXPECT_EQ(*job.normality_u, *back.normality_u);
    EXPECT_EQ(std::get<weight::KernelPower>(job.psi).a0, std::get<weight::KernelPower>(back.psi).a0);
}

TEST(MatrixExport, BitExactRoundTrip)
{
    Rng rng(8);
    const WeightedCompositionSpec w{SpaceKind::hardy(2), weight::KernelPower{random_complex(rng), random_ball_point(rng, 2, 0.5), 2},
                                    LinearFractionalMap(random_complex_matrix(rng, 2, 2, 0.3), random_ball_point(rng, 2, 0.3),
                                                        random_ball_point(rng, 2, 0.3), 1.0)};
    const auto t = build_compression(w, 5);
    const Json j = io::export_matrix(t);
    EXPECT_EQ(j["ordering"], "grlex");
    EXPECT_EQ(j["basis"][1], Json::parse("[1, 0]"));
    const auto back = io::import_matrix(Json::parse(j.dump()));
    EXPECT_EQ(back.degree, 5);
    EXPECT_TRUE(back.space == t.space);
    EXPECT_EQ(back.matrix, t.matrix);
}

TEST(MatrixExport, RejectsWrongEntryCount)
{
    Json j = io::export_matrix(build_compression({SpaceKind::hardy(2), weight::Constant{1.0}, LinearFractionalMap::identity(2)}, 2));
    j["entries"].erase(0);
    try {
        io::import_matrix(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.path(), "/entries");
    }
}

TEST(RunJob, DirichletExample)
{
    const auto report = run_job(io::parse_job(example_job()));
    EXPECT_EQ(report.status(), CheckStatus::Pass);
    EXPECT_EQ(check(report, "classify_dirichlet_J").details["verdict"]["holds"], true);
    EXPECT_LT(*check(report, "matrix_symmetry").value, 1e-12);
}

TEST(RunJob, AffineExample)
{
    const auto report = run_job(io::parse_batch(load(data_file("jw_affine.json"))).at(0));
    const auto& c = check(report, "jw_affine");
    EXPECT_EQ(c.status, CheckStatus::Pass);
    EXPECT_EQ(c.details["verdict"]["holds"], true);
    EXPECT_LT(*c.value, 1e-10);
}

TEST(RunJob, DomainErrorsCarryPaths)
{
    Json j = example_job();
    j["space"]["kind"] = "hardy";
    const auto report = run_job(io::parse_job(j));
    EXPECT_EQ(report.status(), CheckStatus::Error);
    const auto& c = check(report, "classify_dirichlet_J");
    EXPECT_EQ(c.details["error"]["kind"], "WrongSpace");
    EXPECT_EQ(c.details["error"]["path"], "/checks/0");

    j = example_job();
    j.erase("conjugation");
    const auto r2 = run_job(io::parse_job(j));
    EXPECT_EQ(check(r2, "matrix_symmetry").details["error"]["path"], "/conjugation");
}

TEST(RunJob, ToleranceOverride)
{
    Json j = example_job();
    j["phi"]["S"][0][1] = Json::parse("[0.2, 0]");
    j["checks"] = {"matrix_symmetry"};
    EXPECT_EQ(run_job(io::parse_job(j)).status(), CheckStatus::Fail);
    j["tolerances"] = {{"matrix_symmetry", 1.0}};
    EXPECT_EQ(run_job(io::parse_job(j)).status(), CheckStatus::Pass);
}

TEST(RunJob, ReportsAreDeterministic)
{
    const auto jobs = io::parse_batch(load(data_file("batch.json")));
    const Json a = io::report_to_json(run_batch(jobs, 1), false);
    const Json b = io::report_to_json(run_batch(jobs, 4), false);
    EXPECT_EQ(a.dump(), b.dump());
    ASSERT_EQ(a["jobs"].size(), jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) EXPECT_EQ(a["jobs"][i]["name"], jobs[i].name);
}

TEST(RunJob, ExpectedFailuresNameWitnesses)
{
    const auto reports = run_batch(io::parse_batch(load(data_file("expected_failures.json"))));
    ASSERT_EQ(reports.size(), 4u);
    EXPECT_EQ(exit_code(reports), 1);
    const char* witnesses[] = {"S = S^T", "psi constant", "S conj(U) = conj(U) S", "b real"};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(reports[i].status(), CheckStatus::Fail);
        EXPECT_EQ(reports[i].checks[0].details["verdict"]["witness"], witnesses[i]);
    }
}

TEST(Cli, RunSamplesExitCodes)
{
    EXPECT_EQ(invoke({"run", data_file("dirichlet_j.json")}).code, 0);
    EXPECT_EQ(invoke({"run", data_file("batch.json")}).code, 0);
    EXPECT_EQ(invoke({"run", data_file("expected_failures.json")}).code, 1);
    EXPECT_EQ(invoke({"run", data_file("no_such_file.json")}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
}

TEST(Cli, JsonOutput)
{
    const auto r = invoke({"run", data_file("jw_affine.json"), "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["status"], "pass");
    EXPECT_EQ(j["jobs"][0]["checks"][0]["check"], "jw_affine");
    EXPECT_LT(j["jobs"][0]["checks"][0]["value"].get<double>(), 1e-10);
}

TEST(Cli, Overrides)
{
    EXPECT_EQ(invoke({"run", data_file("dirichlet_j.json"), "--tol", "matrix_symmetry=0"}).code, 1);
    EXPECT_EQ(invoke({"run", data_file("dirichlet_j.json"), "--tol", "bogus=1"}).code, 2);
    EXPECT_EQ(invoke({"run", data_file("dirichlet_j.json"), "--tol", "matrix_symmetry=abc"}).code, 2);
    EXPECT_EQ(invoke({"run", data_file("dirichlet_j.json"), "--seed", "zz"}).code, 2);

    const auto r = invoke({"build-matrix", data_file("dirichlet_j.json"), "--degree", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const Json m = Json::parse(r.out)["jobs"][0]["checks"][0]["matrix"];
    EXPECT_EQ(m["D"], 2);
    EXPECT_EQ(m["rows"], 6);
}

TEST(Cli, SubcommandsSelectChecks)
{
    const auto sym = Json::parse(invoke({"check-symmetry", data_file("jw_affine.json"), "--format", "json"}).out);
    EXPECT_EQ(sym["jobs"][0]["checks"].size(), 2u);
    EXPECT_EQ(sym["jobs"][0]["checks"][0]["conjugation"], "J");

    const auto cls = Json::parse(invoke({"classify", data_file("batch.json"), "--format", "json"}).out);
    for (const auto& job : cls["jobs"])
        for (const auto& c : job["checks"]) EXPECT_EQ(find_check(c["check"])->kind, CheckKind::Verdict);

    const auto conj = Json::parse(invoke({"check-conjugation", data_file("batch.json"), "--format", "json"}).out);
    EXPECT_EQ(conj["jobs"][0]["checks"][0]["status"], "pass");
}

TEST(Cli, WritesOutputFile)
{
    const auto path = std::filesystem::temp_directory_path() / "wcomp_cli_test_report.json";
    const auto r = invoke({"run", data_file("dirichlet_j.json"), "--format", "json", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(load(path.string())["status"], "pass");
    std::filesystem::remove(path);
}

TEST(Cli, SuiteReportsEveryCriterion)
{
    const auto r = invoke({"suite", "--format", "json"});
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j["criteria"].size(), 9u);
    EXPECT_EQ(r.code, j["status"] == "pass" ? 0 : 1);
}
