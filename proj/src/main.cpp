#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ngt/catalog.hpp"
#include "ngt/errors.hpp"
#include "ngt/growth.hpp"
#include "ngt/scenario.hpp"
#include "ngt/spec_parse.hpp"
#include "ngt/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ngt;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitMeasurement = 3;
constexpr int kExitVerification = 4;

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw MeasurementFailure("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PuncturedFunction load_function(const std::string& spec) {
    if (spec.rfind("catalog:", 0) == 0) return catalog_function(spec.substr(8));
    return parse_function_spec(read_file(spec));
}

std::string safe_name(const PuncturedFunction& f) {
    std::string n = f.name().empty() ? "function" : f.name();
    for (char& c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
    return n;
}

struct CommonOpts {
    std::string function;
    double u_min = 1.0, u_max = 3.0;
    int points = 48;
    int quad_points = 1024;
    std::string out_dir = ".";
    std::vector<std::string> formats{"csv"};
    long seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_function) {
    auto* f = cmd->add_option("--function", o.function, "function spec path or catalog:NAME");
    if (needs_function) f->required();
    cmd->add_option("--u-min", o.u_min, "grid start, u = log log(1/r)");
    cmd->add_option("--u-max", o.u_max, "grid end");
    cmd->add_option("--points", o.points, "grid points");
    cmd->add_option("--quad-points", o.quad_points, "quadrature base points (power of two)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--format", o.formats, "csv, structured, svg")->delimiter(',');
    cmd->add_option("--seed", o.seed, "seed for randomized test points (default 0)");
}

RadiusGrid grid_of(const CommonOpts& o) {
    RadiusGrid g{o.u_min, o.u_max, o.points};
    g.validate();
    return g;
}

QuadratureConfig quad_of(const CommonOpts& o) {
    QuadratureConfig q;
    q.base_points = o.quad_points;
    q.validate();
    return q;
}

bool wants(const CommonOpts& o, const std::string& fmt) {
    for (const auto& f : o.formats)
        if (f == fmt) return true;
    return false;
}

json table_json(const GrowthTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        row["u"] = r.u;
        row["r"] = r.r;
        row["m"] = r.m;
        row["N"] = r.N;
        row["T"] = r.T;
        if (std::isfinite(r.log_M)) row["logM"] = r.log_M;
        if (r.V >= 0) row["V"] = r.V;
        if (std::isfinite(r.N_zeros)) row["N_zeros"] = r.N_zeros;
        if (!r.flags.empty()) row["flags"] = r.flags;
        rows.push_back(row);
    }
    json j;
    j["schema_version"] = 1;
    j["rows"] = rows;
    return j;
}

int cmd_analyze(const CommonOpts& o, bool with_zeros, bool distinct) {
    PuncturedFunction f = load_function(o.function);
    SampleOptions opt;
    opt.with_N_zeros = with_zeros;
    opt.distinct_zeros = distinct;
    GrowthTable t = sample_growth(f, grid_of(o), quad_of(o), opt);
    fs::create_directories(o.out_dir);
    std::string base = (fs::path(o.out_dir) / safe_name(f)).string();
    if (wants(o, "csv")) write_atomic(base + ".csv", t.to_csv());
    if (wants(o, "structured")) {
        json j = table_json(t);
        j["name"] = f.name();
        write_atomic(base + ".json", j.dump(1) + "\n");
    }
    if (wants(o, "svg")) {
        std::vector<std::pair<double, double>> tp, mp;
        for (const auto& r : t.rows) {
            if (!r.ok()) continue;
            tp.push_back({r.u, r.T});
            if (std::isfinite(r.log_M)) mp.push_back({r.u, r.log_M});
        }
        write_atomic(base + "_T.svg", svg_chart("T vs u: " + f.name(), "u", "T", tp));
        if (!mp.empty())
            write_atomic(base + "_logM.svg",
                         svg_chart("log M vs u: " + f.name(), "u", "log M", mp));
    }
    std::cout << "analyze " << f.name() << ": " << t.rows.size() << " rows, " << t.failed
              << " failed\n";
    return 0;
}

Flavor flavor_of(const std::string& s) {
    if (s == "upper") return Flavor::Upper;
    if (s == "lower") return Flavor::Lower;
    throw SchemaError("flavor must be upper|lower");
}

Source source_of(const std::string& s) {
    if (s == "T") return Source::T;
    if (s == "M") return Source::M;
    if (s == "V") return Source::V;
    if (s == "Nz") return Source::N_zeros;
    throw SchemaError("source must be T|M|V|Nz");
}

int cmd_estimate(const CommonOpts& o, const std::string& functional, int p, int q,
                 const std::string& flavor, const std::string& source) {
    PuncturedFunction f = load_function(o.function);
    SampleOptions opt;
    opt.with_N_zeros = source == "Nz";
    GrowthTable t = sample_growth(f, grid_of(o), quad_of(o), opt);
    json j;
    j["schema_version"] = 1;
    j["name"] = f.name();
    j["functional"] = functional;
    j["flavor"] = flavor;
    j["source"] = source;
    if (functional == "order") {
        OrderEstimate e = estimate_order(t, p, q, flavor_of(flavor), source_of(source));
        j["p"] = p;
        j["q"] = q;
        j["value"] = e.value;
        j["ratio"] = e.ratio;
        j["lo"] = e.lo;
        j["hi"] = e.hi;
        j["window"] = e.window;
        j["method"] = "envelope-slope";
        j["negative_growth"] = e.negative_growth;
    } else if (functional == "type") {
        OrderEstimate e = estimate_order(t, p, q, flavor_of(flavor), source_of(source));
        TypeEstimate ty = estimate_type(t, e.value, flavor_of(flavor), source_of(source));
        j["p"] = p;
        j["q"] = q;
        j["order"] = e.value;
        j["order_used"] = ty.order_used;
        j["clamped"] = ty.clamped;
        j["value"] = ty.value;
        j["lo"] = ty.lo;
        j["hi"] = ty.hi;
        j["method"] = "tail-extremum";
    } else if (functional == "delta") {
        DeltaEstimate d = estimate_delta(t);
        j["value"] = d.value;
        j["lo"] = d.lo;
        j["hi"] = d.hi;
        j["method"] = "tail-min m/T";
    } else {
        throw SchemaError("functional must be order|type|delta");
    }
    std::string text = j.dump(1) + "\n";
    std::cout << text;
    if (o.out_dir != ".") {
        fs::create_directories(o.out_dir);
        write_atomic(fs::path(o.out_dir) / (safe_name(f) + "_estimate.json"), text);
    }
    return 0;
}

int cmd_ode(const CommonOpts& o, const std::string& ode_path) {
    OdeSpec ode = parse_ode_spec(read_file(ode_path));
    PuncturedFunction sol = solve_series(ode);
    fs::create_directories(o.out_dir);
    json j;
    j["schema_version"] = 1;
    j["name"] = sol.name();
    json coeffs = json::array();
    for (const auto& c : sol.series().coeffs()) {
        if (c.is_zero()) coeffs.push_back(json::array());
        else coeffs.push_back(json::array({c.log_mag, c.arg}));
    }
    j["coeffs"] = coeffs;
    j["residual_radius"] = sol.series().residual_radius();
    write_atomic(fs::path(o.out_dir) / "solution.json", j.dump(1) + "\n");
    if (wants(o, "csv")) {
        GrowthTable t = sample_growth(sol, grid_of(o), quad_of(o));
        write_atomic(fs::path(o.out_dir) / "solution.csv", t.to_csv());
    }
    std::cout << "ode: solved, " << sol.series().size() << " coefficients\n";
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& which) {
    std::vector<Scenario> scs;
    if (which == "all") scs = builtin_scenarios();
    else {
        std::stringstream ss(which);
        std::string id;
        while (std::getline(ss, id, ',')) scs.push_back(builtin_scenario(id));
    }
    if (o.quad_points != 1024)
        for (auto& sc : scs) sc.quad.base_points = o.quad_points;
    fs::create_directories(o.out_dir);
    bool all_ok = true;
    std::string first_fail;
    for (const auto& sc : scs) {
        Verdict v = run_scenario(sc);
        std::cout << verdict_summary_line(v) << "\n";
        write_atomic(fs::path(o.out_dir) / ("verdict_" + v.id + ".json"), verdict_to_json(v));
        if (!v.matches_design) {
            all_ok = false;
            if (first_fail.empty()) {
                first_fail = v.id;
                for (const auto& c : v.hypothesis_checks)
                    if (!c.pass) { first_fail += ": " + c.name; break; }
                if (first_fail == v.id)
                    for (const auto& c : v.conclusion_checks)
                        if (!c.pass) { first_fail += ": " + c.name; break; }
            }
        }
    }
    if (!all_ok) {
        std::cerr << "verification failed: " << first_fail << "\n";
        return kExitVerification;
    }
    return 0;
}

int cmd_catalog() {
    for (const auto& name : catalog_names()) {
        PuncturedFunction f = catalog_function(name);
        std::cout << name << "  ("
                  << (f.kind() == FunctionKind::Analytic ? "analytic" : "meromorphic")
                  << (f.has_series() ? ", series" : "")
                  << (f.has_closed_form() ? ", closed-form" : "") << ")\n";
    }
    return 0;
}

json error_record(const std::string& kind, const std::string& what) {
    json j;
    j["schema_version"] = 1;
    j["error"] = kind;
    j["what"] = what;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nevanlinna growth theory toolkit for functions on the punctured sphere"};
    app.require_subcommand(1);

    CommonOpts o;
    bool with_zeros = false, distinct = false;
    std::string functional = "order", flavor = "upper", source = "T";
    int p = 1, q = 2;
    std::string ode_path, scenario_ids = "all";

    auto* analyze = app.add_subcommand("analyze", "sample a growth table");
    add_common(analyze, o, true);
    analyze->add_flag("--zeros", with_zeros, "add the N_zeros column");
    analyze->add_flag("--distinct", distinct, "collapse zero multiplicities (needs ledger)");

    auto* estimate = app.add_subcommand("estimate", "estimate an order/type/delta functional");
    add_common(estimate, o, true);
    estimate->add_option("--functional", functional, "order|type|delta");
    estimate->add_option("--order-p", p, "iterated logs on the column");
    estimate->add_option("--order-q", q, "iterated logs on 1/r");
    estimate->add_option("--flavor", flavor, "upper|lower");
    estimate->add_option("--source", source, "T|M|V|Nz");

    auto* ode = app.add_subcommand("ode", "solve a linear ODE by power series");
    add_common(ode, o, false);
    ode->add_option("--ode", ode_path, "ODE document path")->required();

    auto* verify = app.add_subcommand("verify", "run theorem scenarios");
    add_common(verify, o, false);
    verify->add_option("--scenario", scenario_ids, "scenario id list or 'all'");

    app.add_subcommand("catalog", "list built-in functions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand("analyze")) return cmd_analyze(o, with_zeros, distinct);
        if (app.got_subcommand("estimate")) return cmd_estimate(o, functional, p, q, flavor, source);
        if (app.got_subcommand("ode")) return cmd_ode(o, ode_path);
        if (app.got_subcommand("verify")) return cmd_verify(o, scenario_ids);
        if (app.got_subcommand("catalog")) return cmd_catalog();
    } catch (const SchemaError& e) {
        std::cerr << error_record("usage", e.what()).dump() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << error_record("measurement", e.what()).dump() << "\n";
        return kExitMeasurement;
    }
    return kExitUsage;
}
