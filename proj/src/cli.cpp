#include "nsfr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "nsfr/timeintegration.hpp"

namespace nsfr {

namespace {

const std::set<std::string> known_keys = {
    "case",       "flux",     "p",          "n_elements", "solution_nodes",
    "flux_nodes", "correction", "tableau",  "relaxation", "dt",
    "cfl",        "t_f",      "out_dir",    "output_every", "dump_fields",
    "atwood",     "sip_multiplier"};

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& v)
{
    size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: " + v);
    }
    if (pos != v.size())
        throw ConfigError("key '" + key + "': not a number: " + v);
    return x;
}

int to_int(const std::string& key, const std::string& v)
{
    const double x = to_double(key, v);
    const int i = static_cast<int>(x);
    if (x != i) throw ConfigError("key '" + key + "': not an integer: " + v);
    return i;
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false: " + v);
}

QuadratureKind to_nodes(const std::string& key, const std::string& v)
{
    if (v == "gll") return QuadratureKind::GaussLobattoLegendre;
    if (v == "gl") return QuadratureKind::GaussLegendre;
    throw ConfigError("key '" + key + "': expected gll or gl: " + v);
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

std::map<std::string, std::string> read_key_values(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') continue; // section
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno)
                              + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(path + ":" + std::to_string(lineno)
                              + ": expected key = value");
        if (kv.count(key))
            throw ConfigError(path + ":" + std::to_string(lineno)
                              + ": duplicate key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

RunConfig resolve_config(const std::map<std::string, std::string>& kv)
{
    for (const auto& [k, v] : kv) {
        (void)v;
        if (!known_keys.count(k)) throw ConfigError("unknown key '" + k + "'");
    }
    auto it = kv.find("case");
    if (it == kv.end()) throw ConfigError("missing required key 'case'");
    const std::string case_name = it->second;

    RunConfig cfg;
    if (auto a = kv.find("atwood"); a != kv.end()) {
        if (case_name != "khi")
            throw ConfigError("key 'atwood' is only valid for the khi case");
        cfg.atwood = to_double("atwood", a->second);
    }
    try {
        cfg.def = case_name == "khi" ? case_khi(cfg.atwood)
                                     : case_by_name(case_name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    CaseDefinition& def = cfg.def;

    if (kv.count("dt") && kv.count("cfl"))
        throw ConfigError("keys 'dt' and 'cfl' are mutually exclusive");

    if (auto k = kv.find("p"); k != kv.end()) {
        def.semi.p = to_int("p", k->second);
        if (def.semi.p < 1) throw ConfigError("key 'p': must be >= 1");
    }
    if (auto k = kv.find("n_elements"); k != kv.end()) {
        const int n = to_int("n_elements", k->second);
        if (n < 1) throw ConfigError("key 'n_elements': must be >= 1");
        std::array<int, 3> cells = {n, def.dim > 1 ? n : 1,
                                    def.dim > 2 ? n : 1};
        def.mesh = CartesianMesh(def.dim, cells, def.mesh.lo, def.mesh.hi);
    }
    // The vortex time step follows its grid rule unless explicitly set.
    if (def.name == "isentropic_vortex" && !kv.count("dt") && !kv.count("cfl")) {
        const double mach = std::sqrt(2.0 / def.gas.gamma);
        def.dt = def.mesh.dx(0) / (10.0 * mach * (def.semi.p + 1));
    }
    if (auto k = kv.find("flux"); k != kv.end()) {
        if (k->second == "ec")
            def.es_flux = false;
        else if (k->second == "es")
            def.es_flux = true;
        else
            throw ConfigError("key 'flux': expected ec or es");
    }
    if (auto k = kv.find("solution_nodes"); k != kv.end())
        def.semi.solution_nodes = to_nodes("solution_nodes", k->second);
    if (auto k = kv.find("flux_nodes"); k != kv.end())
        def.semi.flux_nodes = to_nodes("flux_nodes", k->second);
    if (auto k = kv.find("correction"); k != kv.end())
        def.correction = k->second;
    if (auto k = kv.find("tableau"); k != kv.end()) def.tableau = k->second;
    if (auto k = kv.find("relaxation"); k != kv.end())
        def.relaxation = k->second;
    if (auto k = kv.find("dt"); k != kv.end()) {
        def.dt = to_double("dt", k->second);
        def.cfl = 0.0;
        if (!(def.dt > 0.0)) throw ConfigError("key 'dt': must be > 0");
    }
    if (auto k = kv.find("cfl"); k != kv.end()) {
        def.cfl = to_double("cfl", k->second);
        def.dt = 0.0;
        if (!(def.cfl > 0.0)) throw ConfigError("key 'cfl': must be > 0");
    }
    if (auto k = kv.find("t_f"); k != kv.end()) {
        def.t_f = to_double("t_f", k->second);
        if (!(def.t_f > 0.0)) throw ConfigError("key 't_f': must be > 0");
    }
    if (auto k = kv.find("sip_multiplier"); k != kv.end())
        def.semi.sip_multiplier = to_double("sip_multiplier", k->second);
    if (auto k = kv.find("out_dir"); k != kv.end()) cfg.out_dir = k->second;
    if (cfg.out_dir.empty()) cfg.out_dir = "out/" + def.name;
    if (auto k = kv.find("output_every"); k != kv.end()) {
        cfg.output_every = to_int("output_every", k->second);
        if (cfg.output_every < 1)
            throw ConfigError("key 'output_every': must be >= 1");
    }
    if (auto k = kv.find("dump_fields"); k != kv.end())
        cfg.dump_fields_flag = to_bool("dump_fields", k->second);

    // Validation of resolved values.
    try {
        (void)case_correction_value(def);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("key 'correction': ") + e.what());
    }
    try {
        (void)tableau_registry(def.tableau);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("key 'tableau': ") + e.what());
    }
    if (def.relaxation != "none" && def.relaxation != "algebraic"
        && def.relaxation != "root")
        throw ConfigError("key 'relaxation': expected none, algebraic, or root");
    if (def.relaxation == "algebraic" && def.model != "burgers")
        throw ConfigError("key 'relaxation': algebraic mode requires a "
                          "quadratic entropy (burgers model)");
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    return resolve_config(read_key_values(path));
}

std::map<std::string, std::string> RunConfig::echo() const
{
    std::map<std::string, std::string> e;
    e["case"] = def.name;
    e["flux"] = def.es_flux ? "es" : "ec";
    e["p"] = std::to_string(def.semi.p);
    e["n_elements"] = std::to_string(def.mesh.n[0]);
    e["solution_nodes"] =
        def.semi.solution_nodes == QuadratureKind::GaussLobattoLegendre
            ? "gll" : "gl";
    e["flux_nodes"] =
        def.semi.flux_nodes == QuadratureKind::GaussLobattoLegendre ? "gll"
                                                                    : "gl";
    e["correction"] = def.correction;
    e["tableau"] = def.tableau;
    e["relaxation"] = def.relaxation;
    if (def.dt > 0.0) e["dt"] = fmt17(def.dt);
    if (def.cfl > 0.0) e["cfl"] = fmt17(def.cfl);
    e["t_f"] = fmt17(def.t_f);
    e["sip_multiplier"] = fmt17(def.semi.sip_multiplier);
    e["out_dir"] = out_dir;
    e["output_every"] = std::to_string(output_every);
    e["dump_fields"] = dump_fields_flag ? "true" : "false";
    if (def.name == "khi") e["atwood"] = fmt17(atwood);
    return e;
}

namespace {

constexpr const char* history_schema = "# history-schema-v1";
constexpr const char* history_columns =
    "step,t,dt_target,gamma,eta_L2,eta_c_cum,energy_L2,energy_W,KE,"
    "enstrophy,solver_iters,solver_branch";

template <class Model>
RunSummary run_impl(const RunConfig& cfg, const Model& model)
{
    const CaseDefinition& def = cfg.def;
    SemidiscConfig semi = def.semi;
    semi.c = case_correction_value(def);
    semi.kappa = semi.c;
    Semidiscretization<Model> sd(def.mesh, semi, model);
    GlobalState state = sd.init(def.initial);

    RelaxationConfig relax;
    relax.mode = def.relaxation == "root"
                     ? RelaxationMode::RootGeneralConvex
                     : def.relaxation == "algebraic"
                           ? RelaxationMode::AlgebraicBrokenSobolev
                           : RelaxationMode::None;
    TimeIntegrator<Model> ti(sd, tableau_registry(def.tableau), relax);

    std::filesystem::create_directories(cfg.out_dir);
    {
        std::ofstream conf(cfg.out_dir + "/config.echo");
        for (const auto& [k, v] : cfg.echo()) conf << k << " = " << v << "\n";
    }
    std::ofstream hist(cfg.out_dir + "/history.csv");
    hist << history_schema << "\n" << history_columns << "\n";

    const bool turb = def.model == "euler" && def.dim >= 2;
    auto write_row = [&](int step, const StepRecord& rec) {
        const double ke = turb ? kinetic_energy(sd, state) : 0.0;
        const double ens = turb ? enstrophy(sd, state, def.viscous) : 0.0;
        hist << step << ',' << fmt17(rec.t_after) << ','
             << fmt17(rec.dt_target) << ',' << fmt17(rec.gamma) << ','
             << fmt17(rec.eta_L2) << ',' << fmt17(rec.eta_c_cum) << ','
             << fmt17(rec.energy_L2) << ',' << fmt17(rec.energy_W) << ','
             << fmt17(ke) << ',' << fmt17(ens) << ',' << rec.solver_iters
             << ',' << rec.solver_branch << "\n";
        hist.flush();
    };

    RunSummary sum;
    sum.t_target = def.t_f;
    {
        StepRecord rec0;
        rec0.t_after = state.t;
        rec0.eta_L2 = sd.entropy(state);
        rec0.eta_c_cum = rec0.eta_L2;
        auto [el2, ew] = energy_norms(sd, state);
        rec0.energy_L2 = el2;
        rec0.energy_W = ew;
        rec0.solver_branch = "init";
        write_row(0, rec0);
    }

    const double eps_end = 1e-12 * std::max(1.0, def.t_f);
    double gamma_sum = 0.0;
    int step = 0;
    while (def.t_f - state.t > eps_end) {
        double dt = def.dt > 0.0 ? def.dt : cfl_adapt(sd, state, def.cfl);
        dt = std::min(dt, def.t_f - state.t);
        StepRecord rec;
        try {
            rec = ti.step(state, dt);
        } catch (const std::runtime_error& err) {
            // flush a marker row for the failing step, then stop
            StepRecord fail;
            fail.t_after = state.t;
            fail.dt_target = dt;
            fail.gamma = std::numeric_limits<double>::quiet_NaN();
            fail.solver_branch = "abort";
            write_row(step + 1, fail);
            sum.status = RunStatus::Instability;
            sum.abort_reason = err.what();
            break;
        }
        ++step;
        gamma_sum += rec.gamma;
        if (step % cfg.output_every == 0 || def.t_f - state.t <= eps_end)
            write_row(step, rec);
    }
    sum.steps = step;
    sum.t_end = state.t;
    if (step > 0) sum.gamma_mean = gamma_sum / step;

    if (def.has_exact() && sum.status == RunStatus::Completed) {
        sum.has_error_norms = true;
        std::function<double(const double*)> field;
        if (def.model == "euler") {
            const int dim = def.dim;
            const double gamma = def.gas.gamma;
            field = [dim, gamma](const double* u) {
                return euler_primitive(u, dim, gamma).p;
            };
        } else {
            field = [](const double* u) { return u[0]; };
        }
        sum.error = error_norms(sd, state, def.exact, state.t, field);
    }

    if (cfg.dump_fields_flag)
        dump_fields(state, def.mesh, sd.ops(), cfg.out_dir + "/fields.dat");

    std::ofstream sf(cfg.out_dir + "/summary.txt");
    sf << "status = "
       << (sum.status == RunStatus::Completed ? "completed" : "instability")
       << "\n";
    if (!sum.abort_reason.empty()) sf << "abort_reason = " << sum.abort_reason
                                      << "\n";
    sf << "t_target = " << fmt17(sum.t_target) << "\n";
    sf << "t_end = " << fmt17(sum.t_end) << "\n";
    sf << "steps = " << sum.steps << "\n";
    sf << "gamma_mean = " << fmt17(sum.gamma_mean) << "\n";
    if (sum.has_error_norms) {
        sf << "error_l1 = " << fmt17(sum.error.l1) << "\n";
        sf << "error_l2 = " << fmt17(sum.error.l2) << "\n";
        sf << "error_linf = " << fmt17(sum.error.linf) << "\n";
    }
    return sum;
}

} // namespace

RunSummary run_case(const RunConfig& cfg)
{
    if (cfg.def.model == "burgers") {
        BurgersModel m;
        m.dim = cfg.def.dim;
        m.nu = cfg.def.nu;
        m.lf_dissipation = cfg.def.es_flux;
        return run_impl(cfg, m);
    }
    EulerModel m;
    m.dim = cfg.def.dim;
    m.gas = cfg.def.gas;
    m.viscous_terms = cfg.def.viscous;
    m.lf_dissipation = cfg.def.es_flux;
    return run_impl(cfg, m);
}

int run_experiment(const std::string& name, const std::string& out_dir)
{
    ExperimentPlan plan = experiment_scripts(name);
    struct Row {
        std::string label;
        double param = 0.0;
        RunSummary sum;
        std::map<std::string, std::string> overrides;
    };
    std::vector<Row> rows;
    for (const ExperimentRun& er : plan.runs) {
        RunConfig cfg = resolve_config(er.overrides);
        cfg.out_dir = out_dir + "/" + er.label;
        std::cout << "[" << plan.name << "] " << er.label << "\n";
        Row row;
        row.label = er.label;
        row.overrides = er.overrides;
        row.sum = run_case(cfg);
        if (er.overrides.count("dt"))
            row.param = std::stod(er.overrides.at("dt"));
        else if (er.overrides.count("n_elements"))
            row.param = std::stod(er.overrides.at("n_elements"));
        else if (er.overrides.count("cfl"))
            row.param = std::stod(er.overrides.at("cfl"));
        rows.push_back(row);
    }
    std::filesystem::create_directories(out_dir);
    if (plan.postprocess == "rate-table") {
        std::ofstream out(out_dir + "/rates.csv");
        out << "# rates-schema-v1\n";
        out << "label,param,error_l2,abs_gamma_mean_minus_1,rate\n";
        std::vector<double> h, err;
        const bool use_error = rows.front().sum.has_error_norms;
        for (const Row& r : rows) {
            // refinement parameter: dt directly, or h = 1/n for grids
            h.push_back(r.overrides.count("n_elements") ? 1.0 / r.param
                                                        : r.param);
            err.push_back(use_error ? r.sum.error.l2
                                    : std::abs(r.sum.gamma_mean - 1.0));
        }
        std::vector<double> rates = convergence_rates(h, err);
        for (size_t i = 0; i < rows.size(); ++i) {
            out << rows[i].label << ',' << fmt17(rows[i].param) << ','
                << (use_error ? fmt17(rows[i].sum.error.l2) : "") << ','
                << fmt17(std::abs(rows[i].sum.gamma_mean - 1.0)) << ','
                << (i > 0 ? fmt17(rates[i - 1]) : "") << "\n";
        }
    } else {
        std::ofstream out(out_dir + "/scan.csv");
        out << "# scan-schema-v1\n";
        out << "label,param,t_end,steps,status\n";
        for (const Row& r : rows)
            out << r.label << ',' << fmt17(r.param) << ','
                << fmt17(r.sum.t_end) << ',' << r.sum.steps << ','
                << (r.sum.status == RunStatus::Completed ? "completed"
                                                         : "instability")
                << "\n";
    }
    return 0;
}

void dump_fields(const GlobalState& state, const CartesianMesh& mesh,
                 const OperatorSet& ops, const std::string& path)
{
    const int p = ops.p();
    const int d = mesh.dim;
    std::vector<double> pts(p + 1);
    for (int k = 0; k <= p; ++k)
        pts[k] = p == 0 ? 0.0 : -1.0 + 2.0 * k / p;
    Eigen::MatrixXd basis = legendre_modal_basis(p, pts);
    const int n1 = p + 1;
    int n_pts = 1;
    for (int a = 0; a < d; ++a) n_pts *= n1;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# fields-v1\n";
    out << d << ' ' << p << ' ' << mesh.n[0] << ' ' << mesh.n[1] << ' '
        << mesh.n[2] << ' ' << state.u[0].cols() << "\n";
    char buf[40];
    for (int e = 0; e < mesh.n_elements(); ++e) {
        Eigen::MatrixXd vals = tensor_apply_cols(basis, state.u[e], d);
        auto origin = mesh.element_origin(e);
        for (int k = 0; k < n_pts; ++k) {
            std::array<double, 3> x = {0.0, 0.0, 0.0};
            int idx = k;
            for (int a = 0; a < d; ++a) {
                x[a] = origin[a] + 0.5 * (pts[idx % n1] + 1.0) * mesh.dx(a);
                idx /= n1;
            }
            for (int a = 0; a < 3; ++a) {
                std::snprintf(buf, sizeof(buf), "%.17g", x[a]);
                out << buf << ' ';
            }
            for (int s = 0; s < state.u[e].cols(); ++s) {
                std::snprintf(buf, sizeof(buf), "%.17g", vals(k, s));
                out << buf << (s + 1 < state.u[e].cols() ? ' ' : '\n');
            }
        }
    }
}

FieldDump load_fields(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    FieldDump fd;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream hs(line);
        hs >> fd.dim >> fd.p >> fd.n[0] >> fd.n[1] >> fd.n[2] >> fd.n_states;
        if (!hs) throw std::runtime_error("bad field dump header");
        break;
    }
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::array<double, 3> x;
        ls >> x[0] >> x[1] >> x[2];
        std::vector<double> v(fd.n_states);
        for (int s = 0; s < fd.n_states; ++s) ls >> v[s];
        if (!ls) throw std::runtime_error("bad field dump row");
        fd.coords.push_back(x);
        fd.values.push_back(v);
    }
    return fd;
}

void dump_operators(int p, int dim, double c, std::ostream& os)
{
    OperatorRequest req;
    req.p = p;
    req.dim = dim;
    req.c = c;
    req.kappa = c;
    OperatorSet ops(req);
    auto print = [&](const char* name, const Eigen::MatrixXd& m) {
        os << name << " " << m.rows() << " " << m.cols() << "\n";
        char buf[40];
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
                os << buf << (j + 1 < m.cols() ? ' ' : '\n');
            }
    };
    os << "p " << p << "\nd " << dim << "\nc " << fmt17(c) << "\n";
    print("mass", ops.mass());
    print("k_primary", ops.k_primary());
    print("mtilde_primary", ops.mtilde_primary());
    for (int a = 0; a < dim; ++a)
        print(("diff_modal_" + std::to_string(a)).c_str(), ops.diff_modal(a));
}

int cli_main(const std::vector<std::string>& args)
{
    auto usage = []() {
        std::cerr << "usage:\n"
                  << "  run <config> [--override key=value ...]\n"
                  << "  experiment <name> [--out dir]\n"
                  << "  list-cases\n"
                  << "  dump-operators <p> <d> <c>\n";
        return 1;
    };
    if (args.empty()) return usage();
    const std::string verb = args[0];
    try {
        if (verb == "list-cases") {
            std::cout << "cases:\n";
            for (const auto& n : case_names()) std::cout << "  " << n << "\n";
            std::cout << "experiments:\n";
            for (const auto& n : experiment_names())
                std::cout << "  " << n << "\n";
            return 0;
        }
        if (verb == "run") {
            if (args.size() < 2) return usage();
            auto kv = read_key_values(args[1]);
            for (size_t i = 2; i < args.size(); ++i) {
                if (args[i] == "--override") continue;
                const auto eq = args[i].find('=');
                if (eq == std::string::npos) return usage();
                kv[args[i].substr(0, eq)] = args[i].substr(eq + 1);
            }
            RunConfig cfg = resolve_config(kv);
            RunSummary sum = run_case(cfg);
            std::cout << "status: "
                      << (sum.status == RunStatus::Completed ? "completed"
                                                             : "instability")
                      << "\nt_end: " << fmt17(sum.t_end)
                      << "\nsteps: " << sum.steps << "\n";
            if (sum.has_error_norms)
                std::cout << "error_l2: " << fmt17(sum.error.l2) << "\n";
            if (!sum.abort_reason.empty())
                std::cout << "abort_reason: " << sum.abort_reason << "\n";
            return sum.exit_code();
        }
        if (verb == "experiment") {
            if (args.size() < 2) return usage();
            std::string out = "out/experiments/" + args[1];
            for (size_t i = 2; i + 1 < args.size(); ++i)
                if (args[i] == "--out") out = args[i + 1];
            return run_experiment(args[1], out);
        }
        if (verb == "dump-operators") {
            if (args.size() != 4) return usage();
            dump_operators(to_int("p", args[1]), to_int("d", args[2]),
                           to_double("c", args[3]), std::cout);
            return 0;
        }
        return usage();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace nsfr
