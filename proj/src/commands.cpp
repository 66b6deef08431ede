#include "stieltjes/commands.hpp"

#include "stieltjes/config.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/gcalculus.hpp"
#include "stieltjes/gmeasure.hpp"
#include "stieltjes/helmholtz.hpp"
#include "stieltjes/solver.hpp"
#include "stieltjes/verify.hpp"
#include "stieltjes/wronskian.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace stieltjes {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Document {
    std::vector<Table> tables;
};

void write_csv(const Document& doc, std::ostream& os) {
    for (const auto& t : doc.tables) {
        if (!t.meta.empty()) {
            os << '#';
            for (const auto& [k, v] : t.meta) os << ' ' << k << '=' << v;
            os << '\n';
        }
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
            os << '\n';
        }
    }
}

// Rows become objects; a re_X, im_X column pair becomes one [re, im] field X.
void write_json(const Document& doc, std::ostream& os) {
    Json out = Json::array();
    for (const auto& t : doc.tables) {
        Json meta = Json::object();
        for (const auto& [k, v] : t.meta) meta[k] = v;
        Json rows = Json::array();
        for (const auto& r : t.rows) {
            Json row = Json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                const std::string& c = t.columns[i];
                if (c.rfind("re_", 0) == 0 && i + 1 < t.columns.size() && t.columns[i + 1] == "im_" + c.substr(3)) {
                    row[c.substr(3)] = {r[i], r[i + 1]};
                    ++i;
                } else {
                    row[c] = r[i];
                }
            }
            rows.push_back(std::move(row));
        }
        out.push_back({{"meta", meta}, {"rows", rows}});
    }
    os << (doc.tables.size() == 1 ? out[0] : out).dump(1) << '\n';
}

void emit(const Document& doc, const CliOptions& opt, std::ostream& out) {
    std::ostringstream buf;
    if (opt.format == "json") write_json(doc, buf);
    else write_csv(doc, buf);
    if (opt.out_path.empty()) {
        out << buf.str();
        return;
    }
    std::ofstream f(opt.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open output file " + opt.out_path);
    f << buf.str();
    f.close();
    if (!f) throw IoError("failed writing output file " + opt.out_path);
}

Json load_config(const CliOptions& opt) {
    if (opt.config_path.empty()) throw ConfigError("--config is required");
    std::ifstream f(opt.config_path);
    if (!f) throw IoError("cannot read config file " + opt.config_path);
    try {
        return Json::parse(f);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

std::size_t grid_size(const CliOptions& opt, const Json& cfg) {
    long long n = static_cast<long long>(opt.grid_n);
    if (!opt.grid_n_given && cfg.is_object() && cfg.contains("grid_n")) n = cfg.at("grid_n").get<long long>();
    if (n < 16) throw ConfigError("grid_n must be at least 16");
    return static_cast<std::size_t>(n);
}

const Json& section(const Json& cfg, const char* key) {
    if (!cfg.is_object() || !cfg.contains(key)) throw ConfigError(std::string("config lacks \"") + key + "\"");
    return cfg.at(key);
}

void push_complex(std::vector<double>& row, Complex z) {
    row.push_back(z.real());
    row.push_back(z.imag());
}

const std::vector<std::string> kSolutionColumns = {"t",      "re_v",      "im_v",      "re_dv",
                                                   "im_dv",  "re_d2v",    "im_d2v",    "residual"};

Table solution_table(const Derivator& d, const SolutionBundle& sol, const ProblemSpec& spec, std::size_t n) {
    Table t;
    t.columns = kSolutionColumns;
    double worst = 0.0;
    for (double x : d.grid(n)) {
        const Complex v = sol.v.value(x), v1 = g_derivative(d, sol.v, x), v2 = g_derivative2(d, sol.v, x);
        const double r = std::abs(v2 + spec.P.value(x) * v1 + spec.Q.value(x) * v - spec.f.value(x));
        worst = std::max(worst, r);
        std::vector<double> row{x};
        push_complex(row, v);
        push_complex(row, v1);
        push_complex(row, v2);
        row.push_back(r);
        t.rows.push_back(std::move(row));
    }
    t.meta = {{"method", method_tag(sol.method)}, {"max_residual", num(worst)}};
    return t;
}

bool real_positive(Complex z) { return z.imag() == 0.0 && z.real() > 0.0; }

}  // namespace

int cmd_integrate(const CliOptions& opt, std::ostream& out) {
    const Json cfg = load_config(opt);
    const std::size_t n = grid_size(opt, cfg);
    const Derivator d = parse_derivator(section(cfg, "derivator"));
    const ParsedFunction f = parse_function(section(cfg, "function"), d);
    const GFunction Phi = cumulative(d, f.fn, n);
    Table t;
    t.columns = {"t", "re_integral", "im_integral"};
    for (double x : d.grid(n)) {
        std::vector<double> row{x};
        push_complex(row, Phi.value(x));
        t.rows.push_back(std::move(row));
    }
    emit({{t}}, opt, out);
    return kExitOk;
}

int cmd_gexp(const CliOptions& opt, std::ostream& out) {
    const Json cfg = load_config(opt);
    const std::size_t n = grid_size(opt, cfg);
    const Derivator d = parse_derivator(section(cfg, "derivator"));
    const ParsedFunction p = parse_function(section(cfg, "p"), d);
    const GFunction e = p.constant ? exp_g(d, *p.constant) : exp_g(d, RegressiveFn::make(d, p.fn), n);
    Table t;
    t.columns = {"t", "re_exp", "im_exp"};
    for (double x : d.grid(n)) {
        std::vector<double> row{x};
        push_complex(row, e.value(x));
        t.rows.push_back(std::move(row));
    }
    emit({{t}}, opt, out);
    return kExitOk;
}

int cmd_solve2(const CliOptions& opt, std::ostream& out) {
    const Json cfg = load_config(opt);
    const std::size_t n = grid_size(opt, cfg);
    const Derivator d = parse_derivator(section(cfg, "derivator"));
    const ParsedProblem pp = parse_problem(section(cfg, "problem"), d);
    const ProblemSpec& spec = pp.spec;
    check_cond_pq(d, spec.P, spec.Q);

    SolutionBundle sol;
    if (pp.P.constant && pp.Q.constant) {
        sol = solve_const_ivp(d, *pp.P.constant, *pp.Q.constant, spec.f, spec.x0, spec.v0, n);
    } else if (pp.Q.constant && *pp.Q.constant == Complex{}) {
        // Q == 0: y1 == 1 and reduction of order.
        const GFunction one = GFunction::constant(1.0);
        const GFunction y2 = second_homogeneous_solution(d, spec.P, spec.Q, one, n);
        sol = solve_ivp(d, spec, {one, y2}, n);
    } else if (pp.P.constant && *pp.P.constant == Complex{} && pp.Q.breaks.size() == 1 &&
               real_positive(pp.Q.fn.value(0.0)) && real_positive(pp.Q.fn.value(d.T()))) {
        // Piecewise Helmholtz form with a single switch at a jump.
        HelmholtzSpec hs;
        hs.w1 = std::sqrt(pp.Q.fn.value(0.0).real());
        hs.w2 = std::sqrt(pp.Q.fn.value(d.T()).real());
        hs.t1 = pp.Q.breaks.front();
        hs.x0 = spec.x0;
        hs.v0 = spec.v0;
        sol = solve_ivp(d, spec, helmholtz_basis(d, hs), n);
    } else {
        throw ConfigError(
            "unsupported coefficients: need constant P and Q, Q == 0, or P == 0 with Q = w^2 switching once");
    }
    emit({{solution_table(d, sol, spec, n)}}, opt, out);
    return kExitOk;
}

int cmd_helmholtz(const CliOptions& opt, std::ostream& out) {
    Json cfg = Json::object();
    if (!opt.config_path.empty()) cfg = load_config(opt);
    const std::size_t n = grid_size(opt, cfg);
    HelmholtzConfig hc = parse_helmholtz(cfg.contains("helmholtz") ? cfg.at("helmholtz") : Json::object());
    if (opt.deltas) hc.deltas = *opt.deltas;
    for (double delta : hc.deltas)
        if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("deltas must be finite and nonnegative");
    if (hc.w1 == 0.0 || hc.w2 == 0.0) throw SingularSystemError("frequencies must be nonzero");

    Document doc;
    for (double delta : hc.deltas) {
        const Derivator d = helmholtz_derivator(hc.T, hc.t1, delta);
        HelmholtzSpec hs;
        hs.w1 = hc.w1;
        hs.w2 = hc.w2;
        hs.x0 = hc.x0;
        hs.v0 = hc.v0;
        hs.f = hc.f.is_null() ? GFunction::constant(0.0) : parse_function(hc.f, d).fn;
        const ProblemSpec spec = helmholtz_problem(HelmholtzSpec{hs.w1, hs.w2, hc.t1, hs.x0, hs.v0, hs.f});
        SolutionBundle sol;
        if (delta > 0.0) {
            hs.t1 = hc.t1;
            sol = helmholtz_solution(d, hs, n);
        } else {
            // Classical problem: transmission basis on the identity derivator.
            const SolutionPair pair{classical_helmholtz(hs.w1, hs.w2, hc.t1, 1.0, 0.0),
                                    classical_helmholtz(hs.w1, hs.w2, hc.t1, 0.0, 1.0)};
            sol = solve_ivp(d, spec, pair, n);
            sol.method = Method::ClosedFormDistinct;
        }
        Table t = solution_table(d, sol, spec, n);
        t.meta.insert(t.meta.begin(), {"delta", num(delta)});
        t.columns.insert(t.columns.begin(), "delta");
        for (auto& row : t.rows) row.insert(row.begin(), delta);
        doc.tables.push_back(std::move(t));
    }
    emit(doc, opt, out);
    return kExitOk;
}

int cmd_wronskian(const CliOptions& opt, std::ostream& out) {
    const Json cfg = load_config(opt);
    const std::size_t n = grid_size(opt, cfg);
    std::optional<Derivator> d;
    SolutionPair pair;
    GFunction P, Q;
    if (cfg.contains("helmholtz")) {
        const HelmholtzConfig hc = parse_helmholtz(cfg.at("helmholtz"));
        double delta = 0.0;
        const auto& ds = opt.deltas ? *opt.deltas : hc.deltas;
        for (double x : ds)
            if (x > 0.0) {
                delta = x;
                break;
            }
        if (!(delta > 0.0)) throw ConfigError("wronskian on the Helmholtz basis needs a positive delta");
        d = helmholtz_derivator(hc.T, hc.t1, delta);
        HelmholtzSpec hs;
        hs.w1 = hc.w1;
        hs.w2 = hc.w2;
        hs.t1 = hc.t1;
        pair = helmholtz_basis(*d, hs);
        P = GFunction::constant(0.0);
        Q = helmholtz_w0_squared(hs);
    } else {
        d = parse_derivator(section(cfg, "derivator"));
        const ParsedProblem pp = parse_problem(section(cfg, "problem"), *d);
        if (!pp.P.constant || !pp.Q.constant)
            throw ConfigError("wronskian needs constant P and Q or a helmholtz section");
        check_cond_pq(*d, pp.P.fn, pp.Q.fn);
        pair = homogeneous_basis_const(*d, *pp.P.constant, *pp.Q.constant);
        P = pp.P.fn;
        Q = pp.Q.fn;
    }
    Table t;
    t.columns = {"t", "re_w", "im_w", "re_w_simplified", "im_w_simplified", "relation_residual"};
    for (double x : d->grid(n)) {
        std::vector<double> row{x};
        push_complex(row, wronskian_g(*d, pair, x));
        push_complex(row, wronskian_simplified(*d, pair, x));
        row.push_back(wronskian_relation_residual(*d, pair, P, Q, x));
        t.rows.push_back(std::move(row));
    }
    const bool indep = independence_test(*d, pair) == Independence::Independent;
    t.meta = {{"independence", indep ? "independent" : "inconclusive"}};
    emit({{t}}, opt, out);
    return kExitOk;
}

int cmd_verify(const CliOptions& opt, std::ostream& out) {
    if (opt.level != "quick" && opt.level != "full") throw ConfigError("--level must be quick or full");
    const VerifyReport rep = run_verify(opt.level == "full" ? VerifyLevel::Full : VerifyLevel::Quick);
    if (opt.format == "json") {
        Json rows = Json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"suite", r.name},
                            {"max_residual", std::isfinite(r.max_residual) ? Json(r.max_residual) : Json("inf")},
                            {"tolerance", r.tolerance},
                            {"status", r.pass ? "pass" : "FAIL"},
                            {"note", r.note}});
        std::ostringstream buf;
        buf << Json{{"passed", rep.passed()}, {"rows", rows}}.dump(1) << '\n';
        if (opt.out_path.empty()) out << buf.str();
        else {
            std::ofstream f(opt.out_path);
            if (!f || !(f << buf.str())) throw IoError("cannot write " + opt.out_path);
        }
    } else {
        std::ostringstream buf;
        buf << "suite,max_residual,tolerance,status,note\n";
        for (const auto& r : rep.rows) {
            std::string note = r.note;
            for (char& c : note)
                if (c == ',' || c == '\n') c = ';';
            buf << r.name << ',' << num(r.max_residual) << ',' << num(r.tolerance) << ','
                << (r.pass ? "pass" : "FAIL") << ',' << note << '\n';
        }
        if (opt.out_path.empty()) out << buf.str();
        else {
            std::ofstream f(opt.out_path);
            if (!f || !(f << buf.str())) throw IoError("cannot write " + opt.out_path);
        }
    }
    return rep.passed() ? kExitOk : kExitVerifyFailed;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stieltjes calculus toolkit: g-integrals, g-exponentials, Wronskians and second-order solvers"};
    app.require_subcommand(1);
    CliOptions opt;
    std::string deltas_text;
    std::string mutation = "none";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON configuration file");
        sub->add_option("--grid-n", opt.grid_n, "grid cells (>= 16)")->each([&](const std::string&) {
            opt.grid_n_given = true;
        });
        sub->add_option("--out", opt.out_path, "output path (default: stdout)");
        sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto* integrate_cmd = app.add_subcommand("integrate", "cumulative g-integral of a function");
    auto* gexp_cmd = app.add_subcommand("gexp", "g-exponential of a coefficient");
    auto* solve_cmd = app.add_subcommand("solve2", "second-order initial value problem");
    auto* helm_cmd = app.add_subcommand("helmholtz", "piecewise Helmholtz sweep over jump sizes");
    auto* wr_cmd = app.add_subcommand("wronskian", "g-Wronskian of a homogeneous basis");
    auto* verify_cmd = app.add_subcommand("verify", "run the identity suites");
    for (auto* s : {integrate_cmd, gexp_cmd, solve_cmd, helm_cmd, wr_cmd, verify_cmd}) common(s);
    helm_cmd->add_option("--delta", deltas_text, "comma-separated jump sizes, 0 for the classical problem");
    wr_cmd->add_option("--delta", deltas_text, "jump size for the Helmholtz basis");
    verify_cmd->add_option("--level", opt.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_option("--inject-mutation", mutation, "deliberate defect for suite sensitivity checks")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream cli_out, cli_err;
        int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!deltas_text.empty()) {
            std::vector<double> ds;
            std::stringstream ss(deltas_text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    ds.push_back(std::stod(item, &used));
                    if (used != item.size()) throw std::invalid_argument(item);
                } catch (const std::exception&) {
                    throw ConfigError("bad --delta entry \"" + item + "\"");
                }
            }
            opt.deltas = ds;
        }
        auto m = parse_mutation(mutation);
        if (!m) throw ConfigError("unknown mutation \"" + mutation + "\"");
        MutationGuard guard(*m);

        if (*integrate_cmd) return cmd_integrate(opt, out);
        if (*gexp_cmd) return cmd_gexp(opt, out);
        if (*solve_cmd) return cmd_solve2(opt, out);
        if (*helm_cmd) return cmd_helmholtz(opt, out);
        if (*wr_cmd) return cmd_wronskian(opt, out);
        if (*verify_cmd) return cmd_verify(opt, out);
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Json::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace stieltjes
