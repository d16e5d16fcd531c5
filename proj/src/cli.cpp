#include "netgeom/cli.hpp"

#include "netgeom/dynamics.hpp"
#include "netgeom/entropy.hpp"
#include "netgeom/erg.hpp"
#include "netgeom/errors.hpp"
#include "netgeom/ingest.hpp"
#include "netgeom/netcore.hpp"
#include "netgeom/parallel.hpp"
#include "netgeom/rng.hpp"
#include "netgeom/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace netgeom {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v, const char* spec = "%.10g") {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// One emitted report: a header comment carrying the resolved config, a
// schema line and rows.  Cells are pre-rendered so CSV and JSON agree and
// the bytes cannot depend on the worker count.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params; // resolved semantic config
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes; // extra comment lines

    void add_param(const std::string& k, const std::string& v) { params.push_back({k, v}); }

    std::string header_line() const {
        std::string h = std::string("# ") + kToolName + " " + kVersion + " | " + command + " |";
        for (const auto& [k, v] : params) h += " " + k + "=" + v;
        return h;
    }

    void write_csv(std::ostream& os) const {
        os << header_line() << "\n";
        for (const auto& n : notes) os << "# " << n << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << csv_field(row[i]);
            os << "\n";
        }
    }

    void write_json(std::ostream& os) const {
        ordered_json j;
        j["tool"] = kToolName;
        j["version"] = kVersion;
        j["command"] = command;
        ordered_json p = ordered_json::object();
        for (const auto& [k, v] : params) p[k] = v;
        j["params"] = p;
        j["notes"] = notes;
        ordered_json rws = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json r = ordered_json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = row[i];
            rws.push_back(r);
        }
        j["rows"] = rws;
        os << j.dump(2) << "\n";
    }
};

struct OutputOpts {
    std::string format = "csv";
    std::string path; // empty -> stdout
};

void emit(const Report& rep, const OutputOpts& opts, std::ostream& out) {
    std::ostringstream buf;
    if (opts.format == "json")
        rep.write_json(buf);
    else
        rep.write_csv(buf);
    if (opts.path.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(opts.path, std::ios::binary);
        if (!f) throw InputError("cannot open output file: " + opts.path);
        f << buf.str();
    }
}

// Monte Carlo options shared by entropy/sweep/table commands.
struct McOpts {
    std::vector<double> box = {0.5, 10.0};
    std::int64_t samples = 100000;
    int reps = 0; // 0 -> per-command default
    int batches = 100;
    std::string protocol = "faithful";
    double cutoff = 1e308;
    std::uint64_t seed = 0;

    McConfig to_config(int default_reps) const {
        if (box.size() != 2) throw InputError("--box expects a,b");
        McConfig cfg;
        cfg.box = Box{box[0], box[1], 0};
        cfg.samples = samples;
        cfg.realizations = reps > 0 ? reps : default_reps;
        cfg.batches = batches;
        cfg.protocol = protocol_from_string(protocol);
        cfg.overflow_cutoff = cutoff;
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }

    void describe(Report& rep, const McConfig& cfg) const {
        rep.add_param("box", "[" + fmt(cfg.box.a) + "," + fmt(cfg.box.b) + "]");
        rep.add_param("samples", std::to_string(cfg.samples));
        rep.add_param("reps", std::to_string(cfg.realizations));
        rep.add_param("batches", std::to_string(cfg.batches));
        rep.add_param("protocol", to_string(cfg.protocol));
        rep.add_param("cutoff", fmt(cfg.overflow_cutoff, "%.6g"));
        rep.add_param("seed", std::to_string(cfg.seed));
    }
};

void add_mc_flags(CLI::App* cmd, McOpts& mc) {
    cmd->add_option("--box", mc.box, "integration hypercube bounds a,b")->delimiter(',');
    cmd->add_option("--samples", mc.samples, "Monte Carlo samples per realization");
    cmd->add_option("--reps", mc.reps, "realizations to average over");
    cmd->add_option("--batches", mc.batches, "batch count for the MC standard error");
    cmd->add_option("--protocol", mc.protocol, "faithful|logdomain")
        ->check(CLI::IsMember({"faithful", "logdomain"}));
    cmd->add_option("--cutoff", mc.cutoff, "overflow cutoff on sqrt(det g~)");
    cmd->add_option("--seed", mc.seed, "master seed");
}

WeightScheme weight_scheme(double r, double jitter_var) {
    return jitter_var > 0.0 ? WeightScheme::jittered(r, jitter_var)
                            : WeightScheme::constant(r);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Graph load_graph(const std::string& path, bool force_gml,
                 std::vector<ParseDiagnostic>* diags) {
    std::string text = read_file(path);
    bool gml = force_gml || std::filesystem::path(path).extension() == ".gml";
    return gml ? parse_gml(text, diags) : parse_edge_list(text, diags);
}

void report_warnings(const std::vector<ParseDiagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags)
        if (d.severity == ParseDiagnostic::Severity::Warning)
            err << "warning: line " << d.line << ": " << d.message << "\n";
}

std::vector<std::string> sweep_row(const SweepPoint& pt, int n, const McConfig& cfg) {
    double k_over_n = pt.mean_k / n;
    return {std::to_string(n),
            pt.k >= 0 ? std::to_string(pt.k) : "",
            fmt(k_over_n, "%.6g"),
            std::isnan(pt.gamma) ? "" : fmt(pt.gamma, "%.6g"),
            fmt(pt.result.s_tilde),
            fmt(pt.result.std_err),
            fmt(pt.reject_degenerate_frac(), "%.6g"),
            fmt(pt.reject_overflow_frac(), "%.6g"),
            std::to_string(cfg.samples),
            std::to_string(pt.result.realizations)};
}

const std::vector<std::string> kSweepColumns = {
    "n", "k", "k_over_n", "gamma", "s_tilde", "stderr",
    "reject_degenerate_frac", "reject_overflow_frac", "samples", "reps"};

// ---- gen ----------------------------------------------------------------

struct GenOpts {
    int n = 25;
    long k = 0;
    std::vector<int> degrees;
    double gamma = 2.5;
    int d_min = 1;
    int d_max = -1;
    double weight = 1.0;
    double jitter_var = 0.0;
    int max_retries = 1000;
    std::uint64_t seed = 0;
    std::string output;
};

int cmd_gen(const std::string& which, const GenOpts& o, std::ostream& out) {
    Graph g;
    if (which == "er") {
        g = gen_uniform_random_graph(o.n, o.k, o.seed);
    } else if (which == "config") {
        DegreeSequence ds{o.degrees};
        g = gen_configuration_model(ds, o.seed, o.max_retries);
    } else {
        int d_max = o.d_max < 0 ? o.n - 1 : o.d_max;
        DegreeSequence ds;
        bool ok = false;
        for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
            ds = gen_powerlaw_sequence(o.n, o.gamma, o.d_min, d_max,
                                       derive_seed(o.seed, 0, attempt, 21));
            ok = is_graphical(ds);
        }
        if (!ok) throw GenerationError("no graphical power-law sequence found");
        g = gen_configuration_model(ds, derive_seed(o.seed, 0, 0, 22));
    }
    if (o.weight != 1.0 || o.jitter_var > 0.0)
        g = assign_weights(g, weight_scheme(o.weight, o.jitter_var),
                           derive_seed(o.seed, 0, 0, 23));
    std::string text = write_edge_list(g);
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) throw InputError("cannot open output file: " + o.output);
        f << text;
    }
    return 0;
}

// ---- entropy --------------------------------------------------------------

struct EntropyOpts {
    std::string input;
    bool gml = false;
    bool binarize = false;
    double weight = 0.0; // 0 -> keep file weights
    double jitter_var = 0.0;
    McOpts mc;
    OutputOpts output;
};

int cmd_entropy(const EntropyOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<ParseDiagnostic> diags;
    Graph g = load_graph(o.input, o.gml, &diags);
    report_warnings(diags, err);
    if (g.n() < 1) throw InputError("input graph is empty");

    if (o.binarize)
        for (int i = 0; i < g.n(); ++i)
            for (int j = i + 1; j < g.n(); ++j)
                if (g.adj(i, j) > 0.0) g.set_edge(i, j, 1.0);
    if (o.weight > 0.0)
        g = assign_weights(g, weight_scheme(o.weight, o.jitter_var),
                           derive_seed(o.mc.seed, 0, 0, 31));

    McConfig cfg = o.mc.to_config(10);
    Graph shared = g;
    EntropyResult res = normalized_entropy([&shared](int) { return shared; }, cfg);

    Report rep;
    rep.command = "entropy";
    rep.add_param("input", o.input);
    rep.add_param("binarize", o.binarize ? "1" : "0");
    rep.add_param("weight", o.weight > 0.0 ? fmt(o.weight) : "file");
    rep.add_param("jitter_var", fmt(o.jitter_var));
    o.mc.describe(rep, cfg);
    double null_v = null_log_volume(Box{cfg.box.a, cfg.box.b, g.n()});
    rep.notes.push_back("null_log_volume=" + fmt(null_v, "%.12g"));
    rep.columns = kSweepColumns;
    SweepPoint pt;
    pt.k = g.edge_count();
    pt.mean_k = static_cast<double>(pt.k);
    pt.result = res;
    rep.rows.push_back(sweep_row(pt, g.n(), cfg));
    emit(rep, o.output, out);
    return 0;
}

// ---- sweeps ----------------------------------------------------------------

struct SweepErOpts {
    int n = 25;
    long k_from = 0;
    long k_to = -1;
    long k_step = 10;
    double r = 0.2;
    double jitter_var = 0.0;
    McOpts mc;
    OutputOpts output;
};

int cmd_sweep_er(const SweepErOpts& o, std::ostream& out) {
    long k_max = static_cast<long>(o.n) * (o.n - 1) / 2;
    long k_to = o.k_to < 0 ? k_max : o.k_to;
    if (o.k_step < 1) throw InputError("--k-step must be positive");
    std::vector<long> ks;
    for (long k = o.k_from; k <= k_to; k += o.k_step) ks.push_back(k);

    McConfig cfg = o.mc.to_config(100);
    auto points = sweep_er(o.n, ks, weight_scheme(o.r, o.jitter_var), cfg);

    Report rep;
    rep.command = "sweep er";
    rep.add_param("n", std::to_string(o.n));
    rep.add_param("r", fmt(o.r));
    rep.add_param("jitter_var", fmt(o.jitter_var));
    rep.add_param("k_from", std::to_string(o.k_from));
    rep.add_param("k_to", std::to_string(k_to));
    rep.add_param("k_step", std::to_string(o.k_step));
    o.mc.describe(rep, cfg);
    rep.columns = kSweepColumns;
    for (const auto& pt : points) rep.rows.push_back(sweep_row(pt, o.n, cfg));
    emit(rep, o.output, out);
    return 0;
}

struct SweepPlOpts {
    int n = 250;
    std::vector<double> gammas;
    std::vector<double> k_over_n = {0.7, 0.85};
    int d_min = 1;
    int d_max = -1;
    double r = 0.2;
    double jitter_var = 0.0;
    McOpts mc;
    OutputOpts output;
};

int cmd_sweep_powerlaw(const SweepPlOpts& o, std::ostream& out, std::ostream& err) {
    if (o.k_over_n.size() != 2) throw InputError("--k-over-n expects lo,hi");
    std::vector<double> gammas = o.gammas;
    if (gammas.empty())
        for (double g = 1.5; g <= 5.5 + 1e-9; g += 0.5) gammas.push_back(g);

    McConfig cfg = o.mc.to_config(10);
    auto points = sweep_powerlaw(o.n, gammas, weight_scheme(o.r, o.jitter_var),
                                 o.k_over_n[0], o.k_over_n[1], cfg, o.d_min, o.d_max);

    Report rep;
    rep.command = "sweep powerlaw";
    rep.add_param("n", std::to_string(o.n));
    rep.add_param("r", fmt(o.r));
    rep.add_param("jitter_var", fmt(o.jitter_var));
    rep.add_param("k_over_n", "[" + fmt(o.k_over_n[0]) + "," + fmt(o.k_over_n[1]) + "]");
    rep.add_param("d_min", std::to_string(o.d_min));
    rep.add_param("d_max", std::to_string(o.d_max < 0 ? o.n - 1 : o.d_max));
    o.mc.describe(rep, cfg);
    rep.columns = kSweepColumns;
    for (const auto& pt : points) {
        rep.rows.push_back(sweep_row(pt, o.n, cfg));
        if (pt.adjusted_realizations > 0)
            err << "warning: gamma=" << fmt(pt.gamma, "%.4g") << ": "
                << pt.adjusted_realizations
                << " realizations density-adjusted into the k/n band\n";
    }
    emit(rep, o.output, out);
    return 0;
}

// ---- tables ----------------------------------------------------------------

struct TableOpts {
    std::string which;
    std::string data_dir = "data/real";
    bool include_netscience = false;
    bool quick = false;
    double r = 0.2;
    McOpts mc;
    OutputOpts output;
};

EntropyResult config_ensemble_entropy(const std::vector<int>& degrees, const McConfig& cfg,
                                      const WeightScheme& scheme, std::uint64_t salt) {
    DegreeSequence ds{degrees};
    auto ensemble = [&, salt](int r) {
        // dense regular sequences need far more restarts than the default
        // budget (P(simple) ~ exp(-(d^2-1)/4) for d-regular stub matching)
        Graph g = gen_configuration_model(
            ds, derive_seed(cfg.seed, salt, static_cast<std::uint64_t>(r), 41), 200000);
        return assign_weights(g, scheme,
                              derive_seed(cfg.seed, salt, static_cast<std::uint64_t>(r), 42));
    };
    return normalized_entropy(ensemble, cfg);
}

EntropyResult fixed_graph_entropy(const Graph& g, const McConfig& cfg) {
    return normalized_entropy([&g](int) { return g; }, cfg);
}

std::vector<int> hub_sequence(int n, std::vector<int> hubs) {
    std::vector<int> d = std::move(hubs);
    d.resize(static_cast<std::size_t>(n), 2);
    return d;
}

std::string hub_label(const std::vector<int>& hubs) {
    std::string s = "(";
    for (int d : hubs) s += std::to_string(d) + ";";
    s += "2;...;2)";
    return s;
}

int cmd_table(const TableOpts& o, std::ostream& out, std::ostream& err) {
    const int default_reps = o.quick ? 100 : 1000;
    McConfig cfg = o.mc.to_config(default_reps);
    WeightScheme scheme = WeightScheme::constant(o.r);

    Report rep;
    rep.command = "table " + o.which;
    rep.add_param("r", fmt(o.r));
    o.mc.describe(rep, cfg);

    if (o.which == "regular") {
        rep.columns = {"label", "n", "d", "s_tilde", "stderr", "samples", "reps"};
        const int n = 50;
        for (int d : {2, 6}) {
            auto res = config_ensemble_entropy(std::vector<int>(n, d), cfg, scheme,
                                               static_cast<std::uint64_t>(d));
            rep.rows.push_back({"d=" + std::to_string(d), std::to_string(n),
                                std::to_string(d), fmt(res.s_tilde), fmt(res.std_err),
                                std::to_string(cfg.samples),
                                std::to_string(res.realizations)});
        }
    } else if (o.which == "hubs") {
        rep.columns = {"label", "n", "s_tilde", "stderr", "samples", "reps"};
        const int n = 50;
        std::vector<std::vector<int>> families = {
            {},           {8},         {8, 8},   {8, 8, 8}, {8, 8, 8, 8},
            {8, 8, 8, 8, 8}, {10},     {10, 10}, {14}};
        std::uint64_t salt = 100;
        for (const auto& hubs : families) {
            auto res = config_ensemble_entropy(hub_sequence(n, hubs), cfg, scheme, salt++);
            rep.rows.push_back({hubs.empty() ? "(2;...;2)" : hub_label(hubs),
                                std::to_string(n), fmt(res.s_tilde), fmt(res.std_err),
                                std::to_string(cfg.samples),
                                std::to_string(res.realizations)});
        }
    } else if (o.which == "heterogeneity") {
        rep.columns = {"label", "n", "h", "s_tilde", "stderr", "samples", "reps"};
        const int n = 50;
        std::vector<std::vector<int>> hub_sets = {
            {8}, {7, 3}, {6, 4}, {5, 5}, {6, 3, 3}};
        std::uint64_t salt = 200;
        for (const auto& hubs : hub_sets) {
            double h = heterogeneity(hub_fixture_graph(n, hubs));
            auto res = config_ensemble_entropy(hub_sequence(n, hubs), cfg, scheme, salt++);
            rep.rows.push_back({hub_label(hubs), std::to_string(n), fmt(h, "%.6g"),
                                fmt(res.s_tilde), fmt(res.std_err),
                                std::to_string(cfg.samples),
                                std::to_string(res.realizations)});
        }
    } else if (o.which == "erg") {
        rep.columns = {"label", "n", "k", "triangles", "s_tilde", "stderr",
                       "samples", "reps"};
        for (const auto& [name, g] : fixture_graphs()) {
            auto res = fixed_graph_entropy(g, cfg);
            rep.rows.push_back({name, std::to_string(g.n()),
                                std::to_string(g.edge_count()),
                                std::to_string(count_triangles(g)), fmt(res.s_tilde),
                                fmt(res.std_err), std::to_string(cfg.samples),
                                std::to_string(res.realizations)});
        }
    } else if (o.which == "real" || o.which == "randomized") {
        std::vector<std::pair<std::string, std::string>> files = {
            {"lesmis", "lesmis.gml"}, {"dolphins", "dolphins.gml"},
            {"adjnoun", "adjnoun.gml"}};
        if (o.include_netscience) files.push_back({"netscience", "netscience.gml"});
        rep.add_param("data", o.data_dir);

        if (o.which == "real")
            rep.columns = {"network", "n", "k", "s_tilde", "stderr", "samples", "reps"};
        else
            rep.columns = {"network", "n", "k", "s_tilde_real", "stderr_real",
                           "s_tilde_rg", "stderr_rg", "samples", "reps"};

        std::uint64_t salt = 300;
        for (const auto& [name, file] : files) {
            std::string path = o.data_dir + "/" + file;
            if (!std::filesystem::exists(path)) {
                err << "warning: missing dataset " << path << ", row skipped\n";
                continue;
            }
            std::vector<ParseDiagnostic> diags;
            Graph g = load_graph(path, true, &diags);
            report_warnings(diags, err);
            auto real = fixed_graph_entropy(g, cfg);
            if (o.which == "real") {
                rep.rows.push_back({name, std::to_string(g.n()),
                                    std::to_string(g.edge_count()), fmt(real.s_tilde),
                                    fmt(real.std_err), std::to_string(cfg.samples),
                                    std::to_string(real.realizations)});
                if (name == "lesmis") {
                    Graph bin = g;
                    for (int i = 0; i < bin.n(); ++i)
                        for (int j = i + 1; j < bin.n(); ++j)
                            if (bin.adj(i, j) > 0.0) bin.set_edge(i, j, 1.0);
                    auto res_bin = fixed_graph_entropy(bin, cfg);
                    rep.rows.push_back({"lesmis_binarized", std::to_string(bin.n()),
                                        std::to_string(bin.edge_count()),
                                        fmt(res_bin.s_tilde), fmt(res_bin.std_err),
                                        std::to_string(cfg.samples),
                                        std::to_string(res_bin.realizations)});
                }
            } else {
                auto rg_ensemble = [&g, &cfg, salt](int r) {
                    return randomize_preserving_nk(
                        g, derive_seed(cfg.seed, salt, static_cast<std::uint64_t>(r), 43));
                };
                auto rg = normalized_entropy(rg_ensemble, cfg);
                rep.rows.push_back({name, std::to_string(g.n()),
                                    std::to_string(g.edge_count()), fmt(real.s_tilde),
                                    fmt(real.std_err), fmt(rg.s_tilde), fmt(rg.std_err),
                                    std::to_string(cfg.samples),
                                    std::to_string(real.realizations)});
                ++salt;
            }
        }
    } else {
        throw InputError("unknown table: " + o.which);
    }
    emit(rep, o.output, out);
    return 0;
}

// ---- geodesic ----------------------------------------------------------------

struct GeodesicOpts {
    int n = 2;
    std::string init;
    double s_max = 1.0;
    double tol = 1e-8;
    double max_step = 0.0;
    OutputOpts output;
};

ExtendedState read_init_state(const std::string& path, int n) {
    std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        std::istringstream ls(line);
        double v;
        while (ls >> v) values.push_back(v);
    }
    const int dim = sym_dim(n);
    if (static_cast<int>(values.size()) != 2 * dim)
        throw InputError("init file must hold 2*n(n+1)/2 = " + std::to_string(2 * dim) +
                         " numbers (zeta then zeta_dot)");
    ExtendedState st;
    st.zeta = Eigen::Map<Eigen::VectorXd>(values.data(), dim);
    st.zeta_dot = Eigen::Map<Eigen::VectorXd>(values.data() + dim, dim);
    return st;
}

int cmd_geodesic(const GeodesicOpts& o, std::ostream& out, std::ostream& err) {
    ExtendedState init = read_init_state(o.init, o.n);
    Trajectory traj = geodesic_integrate(init, o.n, o.s_max, o.tol, o.max_step);

    std::vector<std::pair<double, double>> st;
    bool have_time = true;
    try {
        st = arc_length_to_time(traj, o.n);
    } catch (const InputError& e) {
        have_time = false;
        err << "warning: " << e.what() << "; time column left empty\n";
    }

    const int dim = sym_dim(o.n);
    TangentState phi0;
    phi0.phi = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(2.0 * dim));
    phi0.phi_dot = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(2.0 * dim));
    std::optional<TangentResult> tangent;
    if (traj.points.size() >= 10) tangent = tangent_dynamics(traj, phi0, o.n);

    Report rep;
    rep.command = "geodesic";
    rep.add_param("n", std::to_string(o.n));
    rep.add_param("init", o.init);
    rep.add_param("smax", fmt(o.s_max));
    rep.add_param("tol", fmt(o.tol, "%.6g"));
    rep.add_param("max_step", fmt(o.max_step));
    if (traj.hit_degeneracy) rep.notes.push_back("trajectory truncated at degeneracy boundary");

    rep.columns = {"s", "t"};
    for (int i = 0; i < dim; ++i) rep.columns.push_back("zeta_" + std::to_string(i + 1));
    rep.columns.push_back("speed");
    rep.columns.push_back("lambda_running");

    for (std::size_t p = 0; p < traj.points.size(); ++p) {
        std::vector<std::string> row;
        row.push_back(fmt(traj.points[p].s, "%.12g"));
        row.push_back(have_time ? fmt(st[p].second, "%.12g") : "");
        for (int i = 0; i < dim; ++i) row.push_back(fmt(traj.points[p].zeta(i), "%.12g"));
        double sp2 = metric_speed_squared(traj.points[p], o.n);
        row.push_back(fmt(sp2 > 0.0 ? std::sqrt(sp2) : 0.0, "%.12g"));
        if (tangent && p > 0 && traj.points[p].s > traj.points.front().s)
            row.push_back(fmt(tangent->log_growth[p] /
                                  (traj.points[p].s - traj.points.front().s),
                              "%.12g"));
        else
            row.push_back("");
        rep.rows.push_back(std::move(row));
    }
    emit(rep, o.output, out);
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"geometric entropy of networks"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = auto)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate graphs as edge-list files");
    gen->fallthrough();
    gen->require_subcommand(1);
    GenOpts go;
    auto add_gen_common = [&](CLI::App* c) {
        c->add_option("--weight", go.weight, "constant edge weight");
        c->add_option("--jitter-var", go.jitter_var, "Gaussian weight jitter variance");
        c->add_option("--seed", go.seed, "seed");
        c->add_option("-o,--output", go.output, "output file (default stdout)");
    };
    auto* gen_er = gen->add_subcommand("er", "uniform random graph G(n,k)");
    gen_er->fallthrough();
    gen_er->add_option("--n", go.n, "nodes")->required();
    gen_er->add_option("--k", go.k, "edges")->required();
    add_gen_common(gen_er);
    auto* gen_cfg = gen->add_subcommand("config", "configuration model");
    gen_cfg->fallthrough();
    gen_cfg->add_option("--degrees", go.degrees, "degree sequence")
        ->required()
        ->delimiter(',');
    gen_cfg->add_option("--max-retries", go.max_retries, "stub-matching restart budget");
    add_gen_common(gen_cfg);
    auto* gen_pl = gen->add_subcommand("powerlaw", "power-law configuration graph");
    gen_pl->fallthrough();
    gen_pl->add_option("--n", go.n, "nodes")->required();
    gen_pl->add_option("--gamma", go.gamma, "exponent")->required();
    gen_pl->add_option("--dmin", go.d_min, "minimum degree");
    gen_pl->add_option("--dmax", go.d_max, "maximum degree (default n-1)");
    add_gen_common(gen_pl);

    // entropy
    EntropyOpts eo;
    auto* entropy = app.add_subcommand("entropy", "normalized entropy of one graph file");
    entropy->fallthrough();
    entropy->add_option("--input", eo.input, "edge-list or GML file")->required();
    entropy->add_flag("--gml", eo.gml, "force GML parsing");
    entropy->add_flag("--binarize", eo.binarize, "set all weights to 1");
    entropy->add_option("--weight", eo.weight, "override all edge weights");
    entropy->add_option("--jitter-var", eo.jitter_var, "jitter variance for --weight");
    add_mc_flags(entropy, eo.mc);
    entropy->add_option("--format", eo.output.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    entropy->add_option("-o,--output", eo.output.path, "output file");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "phase-transition sweeps");
    sweep->fallthrough();
    sweep->require_subcommand(1);
    SweepErOpts seo;
    auto* sweep_er_cmd = sweep->add_subcommand("er", "S~(k) over G(n,k)");
    sweep_er_cmd->fallthrough();
    sweep_er_cmd->add_option("--n", seo.n, "nodes")->required();
    sweep_er_cmd->add_option("--r", seo.r, "edge weight");
    sweep_er_cmd->add_option("--jitter-var", seo.jitter_var, "weight jitter variance");
    sweep_er_cmd->add_option("--k-from", seo.k_from, "first edge count");
    sweep_er_cmd->add_option("--k-to", seo.k_to, "last edge count (default n(n-1)/2)");
    sweep_er_cmd->add_option("--k-step", seo.k_step, "edge count step");
    add_mc_flags(sweep_er_cmd, seo.mc);
    sweep_er_cmd->add_option("--format", seo.output.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_er_cmd->add_option("-o,--output", seo.output.path, "output file");

    SweepPlOpts spo;
    auto* sweep_pl_cmd = sweep->add_subcommand("powerlaw", "S~(gamma) over power-law graphs");
    sweep_pl_cmd->fallthrough();
    sweep_pl_cmd->add_option("--n", spo.n, "nodes")->required();
    sweep_pl_cmd->add_option("--gammas", spo.gammas, "exponent list")->delimiter(',');
    sweep_pl_cmd->add_option("--k-over-n", spo.k_over_n, "density band lo,hi")->delimiter(',');
    sweep_pl_cmd->add_option("--dmin", spo.d_min, "minimum degree");
    sweep_pl_cmd->add_option("--dmax", spo.d_max, "maximum degree (default n-1)");
    sweep_pl_cmd->add_option("--r", spo.r, "edge weight");
    sweep_pl_cmd->add_option("--jitter-var", spo.jitter_var, "weight jitter variance");
    add_mc_flags(sweep_pl_cmd, spo.mc);
    sweep_pl_cmd->add_option("--format", spo.output.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_pl_cmd->add_option("-o,--output", spo.output.path, "output file");

    // table
    TableOpts to;
    auto* table = app.add_subcommand("table", "reproduce the model/real-network tables");
    table->fallthrough();
    table->add_option("which", to.which, "regular|hubs|heterogeneity|erg|real|randomized")
        ->required();
    table->add_option("--data", to.data_dir, "directory with real-network GML files");
    table->add_flag("--include-netscience", to.include_netscience,
                    "include the n=413 network (slow)");
    table->add_flag("--quick", to.quick, "reps default 100 instead of 1000");
    table->add_option("--r", to.r, "edge weight");
    add_mc_flags(table, to.mc);
    table->add_option("--format", to.output.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    table->add_option("-o,--output", to.output.path, "output file");

    // geodesic
    GeodesicOpts geo;
    auto* geod = app.add_subcommand("geodesic", "integrate the extended geodesic flow");
    geod->fallthrough();
    geod->add_option("--n", geo.n, "underlying node count")->required();
    geod->add_option("--init", geo.init, "init file: zeta then zeta_dot")->required();
    geod->add_option("--smax", geo.s_max, "arc length to integrate");
    geod->add_option("--tol", geo.tol, "local error tolerance");
    geod->add_option("--max-step", geo.max_step, "maximum step (default smax/64)");
    geod->add_option("--format", geo.output.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    geod->add_option("-o,--output", geo.output.path, "output file");

    // gibbs
    int gb_n = 0;
    long gb_k = 0;
    auto* gibbs = app.add_subcommand("gibbs", "Gibbs random-graph entropy baseline");
    gibbs->fallthrough();
    gibbs->add_option("--n", gb_n, "nodes")->required();
    gibbs->add_option("--k", gb_k, "edges")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    exec::set_thread_count(threads);
    try {
        if (gen->parsed()) {
            const std::string which = gen_er->parsed() ? "er"
                                      : gen_cfg->parsed() ? "config"
                                                          : "powerlaw";
            return cmd_gen(which, go, out);
        }
        if (entropy->parsed()) return cmd_entropy(eo, out, err);
        if (sweep->parsed()) {
            if (sweep_er_cmd->parsed()) return cmd_sweep_er(seo, out);
            return cmd_sweep_powerlaw(spo, out, err);
        }
        if (table->parsed()) return cmd_table(to, out, err);
        if (geod->parsed()) return cmd_geodesic(geo, out, err);
        if (gibbs->parsed()) {
            Report rep;
            rep.command = "gibbs";
            rep.add_param("n", std::to_string(gb_n));
            rep.add_param("k", std::to_string(gb_k));
            rep.columns = {"n", "k", "gibbs_entropy"};
            rep.rows.push_back({std::to_string(gb_n), std::to_string(gb_k),
                                fmt(gibbs_rg_entropy(gb_n, gb_k), "%.12g")});
            OutputOpts oo;
            emit(rep, oo, out);
            return 0;
        }
        err << "error: no command\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const GenerationError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace netgeom
