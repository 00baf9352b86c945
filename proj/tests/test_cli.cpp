#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "rieszdec/io.hpp"
#include "rieszdec/report.hpp"
#include "rieszdec/rng.hpp"
#include "rieszdec/spectrum.hpp"

using json = nlohmann::json;
using namespace rieszdec;

namespace {

std::string g_cli;

std::filesystem::path temp_dir() {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("rieszdec-cli-test-" + std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const auto dir = temp_dir();
    const auto out_path = dir / "stdout.txt";
    const auto err_path = dir / "stderr.txt";
    const std::string cmd =
        g_cli + " " + args + " >" + out_path.string() + " 2>" + err_path.string();
    const int status = std::system(cmd.c_str());

    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = io::read_file(out_path);
    r.err = io::read_file(err_path);
    return r;
}

std::filesystem::path write_involution(const std::filesystem::path& dir) {
    const auto path = dir / "involution.json";
    io::write_matrix_file(path, Matrix(2, 2, {5.0, -2.0, 12.0, -5.0}));
    return path;
}

std::filesystem::path write_jordan(const std::filesystem::path& dir) {
    const auto path = dir / "jordan.json";
    io::write_matrix_file(path, Matrix(2, 2, {1.0, 1.0, 0.0, 1.0}));
    return path;
}

} // namespace

TEST_CASE("spectrum report equals the direct library call") {
    const auto dir = temp_dir();
    const auto path = write_involution(dir);
    const auto r = run_cli("spectrum " + path.string());
    REQUIRE(r.exit_code == 0);

    const json parsed = json::parse(r.out);
    CHECK(parsed["command"] == "spectrum");
    CHECK(parsed["input_digest"] == io::read_matrix_file(path).digest);

    const auto report = spectrum_report(io::read_matrix_file(path).matrix);
    json expected = rieszdec::report::to_json(report);
    expected.erase("gap");
    expected["unimodularity"] =
        rieszdec::report::to_json(unimodularity_check(report, 1e-8));
    CHECK(parsed["results"] == expected);
    CHECK(parsed["parameters"]["gap"] == report.gap);
}

TEST_CASE("spectrum of the identity reports one full-multiplicity cluster") {
    const auto dir = temp_dir();
    const auto path = dir / "id.json";
    io::write_matrix_file(path, Matrix::identity(3));
    const auto r = run_cli("spectrum " + path.string());
    REQUIRE(r.exit_code == 0);
    const json parsed = json::parse(r.out);
    REQUIRE(parsed["results"]["clusters"].size() == 1);
    CHECK(parsed["results"]["clusters"][0]["multiplicity"] == 3);
    CHECK(parsed["results"]["clusters"][0]["center"][0] == 1.0);
    // a lone cluster has no neighbor: separation serializes as null
    CHECK(parsed["results"]["clusters"][0]["separation"].is_null());
    CHECK(parsed["results"]["unimodularity"]["pass"] == true);
}

TEST_CASE("reports are byte-identical across runs") {
    const auto dir = temp_dir();
    const auto path = write_involution(dir);
    const auto first = run_cli("spectrum " + path.string());
    const auto second = run_cli("spectrum " + path.string());
    CHECK(first.out == second.out);

    const auto c1 = run_cli("certify " + path.string());
    const auto c2 = run_cli("certify " + path.string());
    CHECK(c1.out == c2.out);
}

TEST_CASE("decompose reports the golden projections and residuals") {
    const auto dir = temp_dir();
    const auto r = run_cli("decompose " + write_involution(dir).string() + " --nodes 64");
    REQUIRE(r.exit_code == 0);
    const json parsed = json::parse(r.out);
    CHECK(parsed["residuals"]["resolution"].get<double>() <= 1e-8);
    CHECK(parsed["residuals"]["orthogonality"].get<double>() <= 1e-8);
    CHECK(parsed["residuals"]["reconstruction"].get<double>() <= 1e-8);
    const auto& projections = parsed["results"]["projections"];
    REQUIRE(projections.size() == 2);
    CHECK(std::abs(projections[0]["matrix"]["entries"][0][0].get<double>() - 3.0) <= 1e-8);
    CHECK(std::abs(projections[1]["matrix"]["entries"][0][0].get<double>() + 2.0) <= 1e-8);
}

TEST_CASE("matrix market input is accepted") {
    const auto dir = temp_dir();
    const auto path = dir / "involution.mtx";
    io::write_file(path,
                   "%%MatrixMarket matrix array complex general\n"
                   "2 2\n5 0\n12 0\n-2 0\n-5 0\n");
    const auto r = run_cli("spectrum " + path.string());
    REQUIRE(r.exit_code == 0);
    const json parsed = json::parse(r.out);
    CHECK(parsed["results"]["eigenvalues"][0][0] == 1.0);
    CHECK(parsed["results"]["eigenvalues"][1][0] == -1.0);
}

TEST_CASE("certify exit codes follow the verdict") {
    const auto dir = temp_dir();
    const auto good = run_cli("certify " + write_involution(dir).string());
    CHECK(good.exit_code == 0);
    CHECK(json::parse(good.out)["verdict"] == "decomposable");

    const auto bad = run_cli("certify " + write_jordan(dir).string());
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.out)["verdict"] == "not-decomposable");
}

TEST_CASE("project emits the golden projection") {
    const auto dir = temp_dir();
    const auto path = write_involution(dir);
    const auto r = run_cli("project " + path.string() + " --center 1 --radius 0.5 --nodes 64");
    REQUIRE(r.exit_code == 0);
    const json parsed = json::parse(r.out);
    const auto& entries = parsed["results"]["projection"]["matrix"]["entries"];
    const Matrix expected(2, 2, {3.0, -1.0, 6.0, -2.0});
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(entries[k][0].get<double>() - expected.entries()[k].real()) <= 1e-8);
        CHECK(std::abs(entries[k][1].get<double>()) <= 1e-8);
    }
    CHECK(parsed["results"]["rank"] == 1);
    CHECK(std::abs(parsed["results"]["trace"][0].get<double>() - 1.0) <= 1e-10);
}

TEST_CASE("parse failures exit 2 with a structured error") {
    const auto dir = temp_dir();
    const auto path = dir / "broken.json";
    io::write_file(path, "{\"rows\": 2, \"cols\": 2, \"entries\": [[1,0]]}");
    const auto r = run_cli("spectrum " + path.string());
    CHECK(r.exit_code == 2);
    const json err = json::parse(r.err);
    CHECK(err["error"]["type"] == "parse");

    const auto missing = run_cli("spectrum " + (dir / "nope.json").string());
    CHECK(missing.exit_code == 2);

    const auto usage = run_cli("spectrum");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("out-of-range flags are rejected as input errors") {
    const auto dir = temp_dir();
    const auto path = write_involution(dir).string();
    CHECK(run_cli("spectrum " + path + " --gap -1").exit_code == 2);
    CHECK(run_cli("decompose " + path + " --nodes 2").exit_code == 2);
    CHECK(run_cli("certify " + path + " --tol 0").exit_code == 2);
    CHECK(run_cli("powerbound " + path + " --horizon 0").exit_code == 2);
    CHECK(run_cli("project " + path + " --center 1 --radius -0.5").exit_code == 2);
}

TEST_CASE("numerical failures exit 3") {
    const auto dir = temp_dir();
    const auto path = dir / "singular.json";
    io::write_matrix_file(path, Matrix::diagonal({Complex(1.0), Complex(0.0)}));
    const auto r = run_cli("certify " + path.string());
    CHECK(r.exit_code == 3);
    CHECK(json::parse(r.err)["error"]["type"] == "numerical");

    // contour node exactly on an eigenvalue
    const auto inv = write_involution(dir);
    const auto touch = run_cli("project " + inv.string() + " --center 0.5 --radius 0.5");
    CHECK(touch.exit_code == 3);
    const json err = json::parse(touch.err);
    CHECK(err["error"]["type"] == "numerical");
    CHECK(err["error"]["node"][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("powerbound reports the growth class") {
    const auto dir = temp_dir();
    const auto r = run_cli("powerbound " + write_jordan(dir).string() + " --horizon 256");
    REQUIRE(r.exit_code == 0);
    const json parsed = json::parse(r.out);
    CHECK(parsed["verdict"] == "polynomial");
    CHECK(std::abs(parsed["results"]["degree_estimate"].get<double>() - 1.0) <= 0.1);
    CHECK(parsed["results"]["norms"].size() == 513);
}

TEST_CASE("generate round-trips through certify and is seed deterministic") {
    const auto dir = temp_dir();
    const auto out = dir / "gen.json";
    const std::string args = "generate --kind power-bounded --n 4 --values 1,-1,i,-i "
                             "--seed 42 --out " + out.string();
    const auto first = run_cli(args);
    REQUIRE(first.exit_code == 0);
    const std::string matrix_bytes = io::read_file(out);
    const std::string truth_bytes = io::read_file(out.string() + ".truth.json");

    const auto cert = run_cli("certify " + out.string());
    CHECK(cert.exit_code == 0);
    CHECK(json::parse(cert.out)["verdict"] == "decomposable");

    const auto second = run_cli(args);
    CHECK(second.out == first.out);
    CHECK(io::read_file(out) == matrix_bytes);
    CHECK(io::read_file(out.string() + ".truth.json") == truth_bytes);

    const auto defective = run_cli("generate --kind defective --n 2 --values 1 --seed 1 --out " +
                                   (dir / "j.json").string());
    REQUIRE(defective.exit_code == 0);
    const auto jcert = run_cli("certify " + (dir / "j.json").string());
    CHECK(jcert.exit_code == 1);

    const auto badkind = run_cli("generate --kind nope --values 1 --out " +
                                 (dir / "x.json").string());
    CHECK(badkind.exit_code == 2);
}

TEST_CASE("selftest passes fresh, fails on unreachable tolerance") {
    const auto dir = temp_dir();
    const auto ok = run_cli("selftest --dir " + (dir / "fresh").string());
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.out)["verdict"] == "pass");

    const auto strict = run_cli("selftest --dir " + (dir / "strict").string() + " --tol 1e-30");
    CHECK(strict.exit_code == 1);
    const json err = json::parse(strict.err);
    const std::string failing = err["error"]["message"].get<std::string>();
    CHECK(failing.find("check failed") != std::string::npos);

    // a corrupted golden file surfaces as a parse failure
    const auto corrupt_dir = dir / "corrupt";
    std::filesystem::create_directories(corrupt_dir);
    io::write_file(corrupt_dir / "involution.json", "{\"rows\": 2,");
    const auto corrupted = run_cli("selftest --dir " + corrupt_dir.string());
    CHECK(corrupted.exit_code == 2);
}

int main(int argc, char** argv) {
    doctest::Context context;
    std::vector<const char*> args;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--cli=", 0) == 0) {
            g_cli = arg.substr(6);
        } else {
            args.push_back(argv[i]);
        }
    }
    if (g_cli.empty()) {
        if (const char* env = std::getenv("RIESZDEC_CLI")) g_cli = env;
    }
    if (g_cli.empty()) g_cli = "./tools/rieszdec";
    context.applyCommandLine(static_cast<int>(args.size()), args.data());
    return context.run();
}
