#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nsfr/cli.hpp"

using namespace nsfr;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir()
{
    fs::path p = fs::temp_directory_path() / "nsfr_cli_test";
    fs::create_directories(p);
    return p;
}

std::string write_config(const std::string& name, const std::string& body)
{
    fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << body;
    return p.string();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("config parsing: defaults, sections, comments")
{
    std::string path = write_config("minimal.cfg",
                                    "# minimal tgv run\n"
                                    "[run]\n"
                                    "case = inviscid_tgv\n"
                                    "relaxation = root\n");
    RunConfig cfg = parse_config(path);
    CHECK(cfg.def.name == "inviscid_tgv");
    CHECK(cfg.def.semi.p == 3);
    CHECK(cfg.def.mesh.n[0] == 8);
    CHECK(cfg.def.cfl == 0.48);
    CHECK(cfg.def.tableau == "ssprk3");
    CHECK(cfg.def.relaxation == "root");
    CHECK(cfg.output_every == 1);
}

TEST_CASE("config validation failures")
{
    CHECK_THROWS_AS(parse_config(write_config("u.cfg",
                                              "case = inviscid_tgv\n"
                                              "quantum = 3\n")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(write_config("b.cfg",
                                              "case = inviscid_tgv\n"
                                              "dt = 0.1\ncfl = 0.4\n")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(write_config("c.cfg",
                                              "case = khi\n"
                                              "correction = c_plus\n")),
                    ConfigError); // no tabulated c_+ at p = 7
    CHECK_THROWS_AS(parse_config(write_config("d.cfg",
                                              "case = inviscid_burgers\n"
                                              "atwood = 0.3\n")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(write_config("e.cfg",
                                              "case = nothing\n")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(write_config("f.cfg",
                                              "case = inviscid_tgv\n"
                                              "p = banana\n")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(write_config("g.cfg", "flux = ec\n")),
                    ConfigError); // missing case
    CHECK_THROWS_AS(parse_config(write_config("h.cfg",
                                              "case = inviscid_tgv\n"
                                              "relaxation = algebraic\n")),
                    ConfigError); // nonquadratic entropy
    CHECK_THROWS_AS(parse_config(write_config("i.cfg",
                                              "case = inviscid_tgv\n"
                                              "case = khi\n")),
                    ConfigError); // duplicate key
    CHECK_THROWS_AS(parse_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("config echo is idempotent under re-resolution")
{
    std::map<std::string, std::string> kv = {
        {"case", "isentropic_vortex"}, {"n_elements", "8"},
        {"correction", "c_hu"},        {"flux", "es"},
        {"t_f", "0.5"}};
    RunConfig cfg = resolve_config(kv);
    auto echo = cfg.echo();
    CHECK(echo.at("flux") == "es");
    CHECK(echo.at("n_elements") == "8");
    RunConfig cfg2 = resolve_config(echo);
    CHECK(cfg2.echo() == echo);
}

TEST_CASE("run: burgers completes with conserved broken-norm energy")
{
    std::string path = write_config("burgers.cfg",
                                    "case = inviscid_burgers\n"
                                    "n_elements = 8\np = 2\n"
                                    "dt = 0.005\nt_f = 0.05\n");
    RunConfig cfg = parse_config(path);
    cfg.out_dir = (scratch_dir() / "burgers_run").string();
    RunSummary sum = run_case(cfg);
    CHECK(sum.exit_code() == 0);
    CHECK(sum.steps == 10);
    // relaxed time lands within O(gamma - 1) dt of the target
    CHECK(sum.t_end == doctest::Approx(0.05).epsilon(1e-4));

    std::string hist = slurp(cfg.out_dir + "/history.csv");
    CHECK(hist.find("# history-schema-v1") == 0);
    CHECK(hist.find("step,t,dt_target,gamma,") != std::string::npos);

    // energy_W column (index 7) is conserved by the algebraic FD scheme
    std::istringstream is(hist);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    double e0 = -1.0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tok;
        for (int i = 0; i < 8; ++i) std::getline(ls, tok, ',');
        const double ew = std::stod(tok);
        if (e0 < 0.0)
            e0 = ew;
        else
            CHECK(std::abs(ew - e0) < 1e-12 * e0);
    }
    CHECK(fs::exists(cfg.out_dir + "/config.echo"));
    CHECK(fs::exists(cfg.out_dir + "/summary.txt"));
}

TEST_CASE("run: determinism of history.csv")
{
    std::map<std::string, std::string> kv = {
        {"case", "inviscid_burgers"}, {"n_elements", "8"}, {"p", "3"},
        {"dt", "0.0025"},             {"t_f", "0.02"}};
    RunConfig a = resolve_config(kv);
    a.out_dir = (scratch_dir() / "det_a").string();
    RunConfig b = resolve_config(kv);
    b.out_dir = (scratch_dir() / "det_b").string();
    run_case(a);
    run_case(b);
    CHECK(slurp(a.out_dir + "/history.csv") == slurp(b.out_dir + "/history.csv"));
}

TEST_CASE("run: vortex reports pressure error norms against the exact state")
{
    std::map<std::string, std::string> kv = {{"case", "isentropic_vortex"},
                                             {"n_elements", "8"},
                                             {"t_f", "0.2"}};
    RunConfig cfg = resolve_config(kv);
    cfg.out_dir = (scratch_dir() / "vortex_run").string();
    RunSummary sum = run_case(cfg);
    CHECK(sum.exit_code() == 0);
    CHECK(sum.has_error_norms);
    CHECK(sum.error.l2 > 0.0);
    CHECK(sum.error.l2 < 1.0);
    std::string txt = slurp(cfg.out_dir + "/summary.txt");
    CHECK(txt.find("error_l2 = ") != std::string::npos);
}

TEST_CASE("run: admissibility abort maps to the instability exit code")
{
    std::map<std::string, std::string> kv = {{"case", "isentropic_vortex"},
                                             {"n_elements", "4"},
                                             {"p", "2"},
                                             {"dt", "5.0"},
                                             {"t_f", "10.0"}};
    RunConfig cfg = resolve_config(kv);
    cfg.out_dir = (scratch_dir() / "abort_run").string();
    RunSummary sum = run_case(cfg);
    CHECK(sum.status == RunStatus::Instability);
    CHECK(sum.exit_code() == 3);
    CHECK(sum.t_end < 10.0);
    CHECK(!sum.abort_reason.empty());
    std::string hist = slurp(cfg.out_dir + "/history.csv");
    CHECK(hist.find("abort") != std::string::npos); // failing step flushed
    std::string txt = slurp(cfg.out_dir + "/summary.txt");
    CHECK(txt.find("status = instability") != std::string::npos);
}

TEST_CASE("field dumps: round trip and constant states")
{
    BurgersModel model;
    CartesianMesh mesh(1, {4, 1, 1}, {0.0, 0.0, 0.0}, {2.0, 1.0, 1.0});
    SemidiscConfig sc;
    sc.p = 3;
    Semidiscretization<BurgersModel> sd(mesh, sc, model);
    GlobalState s = sd.init([](const std::array<double, 3>& x, double* u) {
        u[0] = std::sin(x[0]) + 0.25 * x[0];
    });
    std::string path = (scratch_dir() / "fields.dat").string();
    dump_fields(s, mesh, sd.ops(), path);
    FieldDump fd = load_fields(path);
    CHECK(fd.dim == 1);
    CHECK(fd.p == 3);
    CHECK(fd.n[0] == 4);
    CHECK(fd.n_states == 1);
    CHECK(fd.values.size() == 4u * 4u);

    // bitwise round trip against direct evaluation on the plot grid
    std::vector<double> pts(4);
    for (int k = 0; k < 4; ++k) pts[k] = -1.0 + 2.0 * k / 3; // as dumped
    Eigen::MatrixXd basis = legendre_modal_basis(3, pts);
    for (int e = 0; e < 4; ++e) {
        Eigen::MatrixXd vals = basis * s.u[e];
        for (int k = 0; k < 4; ++k)
            CHECK(fd.values[e * 4 + k][0] == vals(k, 0));
    }

    GlobalState c = sd.init([](const std::array<double, 3>&, double* u) {
        u[0] = 1.5;
    });
    dump_fields(c, mesh, sd.ops(), path);
    FieldDump fc = load_fields(path);
    for (const auto& row : fc.values) CHECK(row[0] == fc.values[0][0]);
}

TEST_CASE("cli entry point: verbs and exit codes")
{
    CHECK(cli_main({"list-cases"}) == 0);
    CHECK(cli_main({"run", "/nonexistent/path.cfg"}) == 2);
    CHECK(cli_main({}) == 1);
    CHECK(cli_main({"frobnicate"}) == 1);
    CHECK(cli_main({"experiment", "unknown-experiment"}) == 2);

    std::ostringstream os;
    dump_operators(2, 1, 0.0, os);
    std::string txt = os.str();
    CHECK(txt.find("mass 3 3") != std::string::npos);
    CHECK(txt.find("k_primary") != std::string::npos);
    CHECK(txt.find("diff_modal_0") != std::string::npos);
}

TEST_CASE("cli run verb honors overrides")
{
    std::string path = write_config("ov.cfg",
                                    "case = inviscid_burgers\n"
                                    "n_elements = 8\n"
                                    "t_f = 0.01\n");
    fs::path out = scratch_dir() / "ov_run";
    int rc = cli_main({"run", path, "--override",
                       "out_dir=" + out.string(), "dt=0.005", "p=2"});
    CHECK(rc == 0);
    std::string echo = slurp((out / "config.echo").string());
    CHECK(echo.find("p = 2") != std::string::npos);
    CHECK(echo.find("dt = 0.005") != std::string::npos);
}
