#include "horolab/cli.hpp"

#include "horolab/horolab.hpp"
#include "horolab/parallel.hpp"
#include "horolab/random.hpp"
#include "table.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace horolab::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("not a number: '" + item + "'");
        }
    }
    return out;
}

std::vector<long long> parse_ints(const std::string& s) {
    std::vector<long long> out;
    for (double d : parse_doubles(s)) {
        if (d != std::floor(d))
            throw DomainError("expected integers in '" + s + "'");
        out.push_back(static_cast<long long>(d));
    }
    return out;
}

TorusMatrix parse_xi(const std::string& s, int k) {
    const auto v = parse_doubles(s);
    if (v.size() != std::size_t(2 * k))
        throw DomainError("--xi needs 2k = " + std::to_string(2 * k) + " entries");
    TorusMatrix xi(k);
    for (int i = 0; i < k; ++i)
        xi[i] = {v[2 * i], v[2 * i + 1]};
    return xi;
}

FrequencyMatrix parse_freq(const std::string& s, int k) {
    const auto v = parse_ints(s);
    if (v.size() != std::size_t(2 * k))
        throw DomainError("frequency needs 2k = " + std::to_string(2 * k) + " entries");
    FrequencyMatrix m(k);
    for (int i = 0; i < k; ++i)
        m[i] = {v[2 * i], v[2 * i + 1]};
    return m;
}

Sl2Matrix parse_matrix(const std::string& s) {
    const auto v = parse_doubles(s);
    if (v.size() != 4)
        throw DomainError("--M needs 4 entries a,b,c,d");
    return Sl2Matrix::from_entries(v[0], v[1], v[2], v[3]);
}

IntMatrix2 parse_int_matrix(const std::string& s) {
    const auto v = parse_ints(s);
    if (v.size() != 4)
        throw DomainError("integer matrix needs 4 entries");
    return {v[0], v[1], v[2], v[3]};
}

std::vector<double> parse_schedule(const std::string& s, const char* name) {
    auto v = parse_doubles(s);
    if (v.empty())
        throw DomainError(std::string("--") + name + " needs at least one value");
    return v;
}

LineWeight parse_weight(const std::string& s) {
    if (s == "decay")
        return LineWeight::decay();
    if (s == "bump")
        return LineWeight::bump();
    if (s == "zero")
        return LineWeight::zero();
    throw DomainError("--weight must be decay, bump or zero");
}

Vec4 parse_alpha(const std::string& s) {
    if (s == "golden") {
        const double p = std::numbers::phi;
        return {p / 4, p * p / 4, p * p * p / 4, p * p * p * p / 4};
    }
    const auto v = parse_doubles(s);
    if (v.size() != 4)
        throw DomainError("--alpha needs 4 entries or 'golden'");
    return {v[0], v[1], v[2], v[3]};
}

std::string join_ints(const IntVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

/// Splices `key = value` lines from --config files in front of the command-line flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty())
        return args;
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot read config file " + path);
    std::vector<std::string> extra;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        if (trim(line).empty())
            continue;
        if (eq == std::string::npos)
            throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty())
            throw DomainError(path + ":" + std::to_string(lineno) + ": empty key");
        extra.push_back("--" + key);
        extra.push_back(value);
    }
    auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
    if (sub == args.end())
        return args;
    args.insert(sub + 1, extra.begin(), extra.end());
    return args;
}

struct Common {
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string output;
    std::string format = "csv";
    std::string config;
};

struct Command {
    CLI::App* app = nullptr;
    std::function<Table()> body;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    sub->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--output", c.output, "Output path (default stdout)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--config", c.config, "File of key = value lines; flags override it");
}

RunConfig resolved(const CLI::App* sub) {
    RunConfig cfg;
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help")
            continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            value = res.empty() ? "true" : res.back();
        } else {
            value = opt->get_default_str();
        }
        cfg.emplace_back(opt->get_lnames()[0], value);
    }
    return cfg;
}

struct State {
    Common common;
    // shared numeric parameters
    int k = 1, m = 3, N = 1;
    long long qmax = 20, dmax = 0;
    std::string xi, M = "1,0,0,1", y, T, q, v, r = "1,0,0,1", R = "1,0,0,1", X, alpha = "0,0,0,0", psi, m0, h = "decay",
                                                                     kind = "theorem4", method = "closed";
    double kappa = 1, alpha_exp = 1, c = 0.1, B = 1, rho0 = 2, lambda = 0, rtol = 1e-8;
    long long qq = 1, n = 0, mm = 0, samples = 20;
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    State st;
    CLI::App app{"Numerical experiments for effective equidistribution of horocycle lifts", "horolab"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::vector<Command> commands;
    auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, st.common);
        commands.push_back({sub, {}});
        return sub;
    };

    // delta
    {
        auto* s = add("delta", "Majorant delta_m(y; xi). Columns: y,value,tail,Qmax,Dmax");
        s->add_option("--k", st.k)->capture_default_str();
        s->add_option("--m", st.m)->capture_default_str();
        s->add_option("--xi", st.xi, "k x 2 matrix, row-major, comma separated")->required();
        s->add_option("--y", st.y, "Comma-separated heights in (0, 1]")->required();
        s->add_option("--qmax", st.qmax)->capture_default_str();
        s->add_option("--dmax", st.dmax, "0 = ceil(y^-1/2)")->capture_default_str();
        commands.back().body = [&st] {
            MajorantParams p{st.m, st.k, st.qmax, st.dmax, st.common.jobs};
            const auto xi = parse_xi(st.xi, st.k);
            Table t{{"y", "value", "tail", "Qmax", "Dmax"}, {}};
            for (double y : parse_schedule(st.y, "y")) {
                const auto r = delta_m(p, y, xi);
                t.add({y, r.value, r.tail_bound, r.q_max, r.d_max});
            }
            return t;
        };
    }
    // lfd
    {
        auto* s = add("lfd", "(kappa, alpha)-LFD scan. Columns: result,d,q");
        s->add_option("--psi", st.psi, "Real k-vector")->required();
        s->add_option("--kappa", st.kappa)->capture_default_str();
        s->add_option("--alpha", st.alpha_exp)->capture_default_str();
        s->add_option("--c", st.c)->capture_default_str();
        s->add_option("--dmax", st.dmax)->capture_default_str();
        s->add_option("--qmax", st.qmax)->capture_default_str();
        commands.back().body = [&st] {
            std::vector<long double> psi;
            for (double x : parse_doubles(st.psi))
                psi.push_back(x);
            if (psi.empty())
                throw DomainError("--psi needs at least one entry");
            const long long D = st.dmax > 0 ? st.dmax : 1000;
            const auto w = lfd_test(psi, st.kappa, st.alpha_exp, st.c, D, st.qmax, st.common.jobs);
            Table t{{"result", "d", "q"}, {}};
            if (w)
                t.add({std::string("witness"), w->d, join_ints(w->q)});
            else
                t.add({std::string("pass"), 0LL, std::string()});
            return t;
        };
    }
    // sgq
    {
        auto* s = add("sgq", "Grid gap S_{g,q}(T). Columns: T,value,m,n,capped");
        s->add_option("--k", st.k)->capture_default_str();
        s->add_option("--xi", st.xi)->required();
        s->add_option("--M", st.M)->capture_default_str();
        s->add_option("--q", st.q, "Integer k-vector")->required();
        s->add_option("--T", st.T, "Comma-separated scales >= 1")->required();
        commands.back().body = [&st] {
            const auto g = GroupElement::from_xi(parse_xi(st.xi, st.k), parse_matrix(st.M));
            const auto q = parse_ints(st.q);
            if (q.size() != std::size_t(st.k))
                throw DomainError("--q needs k entries");
            Table t{{"T", "value", "m", "n", "capped"}, {}};
            for (double T : parse_schedule(st.T, "T")) {
                const auto r = s_gq_detail(g, q, T);
                t.add({T, r.value, r.coeffs[0], r.coeffs[1], (long long)r.capped});
            }
            return t;
        };
    }
    // expsum
    {
        auto* s = add("expsum", "Weighted exponential sum against its majorant. Columns: X,lhs_re,lhs_im,rhs,ratio");
        s->add_option("--N", st.N)->capture_default_str();
        s->add_option("--R", st.R, "Coset representative a,b,c,d")->capture_default_str();
        s->add_option("--alpha", st.alpha, "4 reals or 'golden'")->capture_default_str();
        s->add_option("--X", st.X, "Comma-separated X >= 1")->required();
        s->add_option("--B", st.B, "Support radius of the bump weight")->capture_default_str();
        commands.back().body = [&st] {
            const auto cs = make_coset(st.N, parse_int_matrix(st.R));
            const WeightFn w{WeightFn::Kind::bump6_product, st.B, {}};
            const auto Xs = parse_schedule(st.X, "X");
            Table t{{"X", "lhs_re", "lhs_im", "rhs", "ratio"}, {}};
            for (const auto& r : cancellation_report(cs, parse_alpha(st.alpha), Xs, w, st.common.jobs))
                t.add({r.X, r.lhs.real(), r.lhs.imag(), r.rhs, r.ratio});
            return t;
        };
    }
    // kloosterman
    {
        auto* s = add("kloosterman", "Kloosterman sums K(m,n;q). Columns: m,n,q,re,im");
        s->add_option("--m", st.mm)->required();
        s->add_option("--n", st.n)->required();
        s->add_option("--q", st.q, "Comma-separated moduli")->required();
        commands.back().body = [&st] {
            Table t{{"m", "n", "q", "re", "im"}, {}};
            for (long long q : parse_ints(st.q)) {
                if (q < 1)
                    throw DomainError("modulus q must be positive");
                const auto k = kloosterman(st.mm, st.n, q);
                t.add({st.mm, st.n, q, k.real(), k.imag()});
            }
            return t;
        };
    }
    // quadsum
    {
        auto* s = add("quadsum", "Complete quadratic exponential sum S(q, v). Columns: q,N,method,re,im");
        s->add_option("--q", st.q, "Comma-separated q")->required();
        s->add_option("--N", st.N)->capture_default_str();
        s->add_option("--r", st.r, "Class representative mod N")->capture_default_str();
        s->add_option("--v", st.v, "Integer 4-vector")->required();
        s->add_option("--method", st.method)->check(CLI::IsMember({"closed", "brute", "both"}))->capture_default_str();
        commands.back().body = [&st] {
            const auto r = parse_ints(st.r), v = parse_ints(st.v);
            if (r.size() != 4 || v.size() != 4)
                throw DomainError("--r and --v need 4 entries");
            Table t{{"q", "N", "method", "re", "im"}, {}};
            for (long long q : parse_ints(st.q)) {
                const auto cd = make_congruence(q, st.N, {r[0], r[1], r[2], r[3]}, {v[0], v[1], v[2], v[3]});
                if (st.method != "brute") {
                    const auto c = quad_expsum_closed(cd);
                    t.add({q, (long long)st.N, std::string("closed"), c.real(), c.imag()});
                }
                if (st.method != "closed") {
                    const auto b = quad_expsum_bruteforce(cd);
                    t.add({q, (long long)st.N, std::string("brute"), b.real(), b.imag()});
                }
            }
            return t;
        };
    }
    // orbit
    {
        auto* s = add("orbit", "Translate integrals against the majorant. Columns: y,re,im,error,bound,bound_tail,ratio");
        s->add_option("--k", st.k)->capture_default_str();
        s->add_option("--N", st.N)->capture_default_str();
        s->add_option("--m0", st.m0, "Integer k x 2 frequency, row-major")->required();
        s->add_option("--rho0", st.rho0)->capture_default_str();
        s->add_option("--lambda", st.lambda)->capture_default_str();
        s->add_option("--xi", st.xi)->required();
        s->add_option("--M", st.M)->capture_default_str();
        s->add_option("--y", st.y)->required();
        s->add_option("--weight", st.h, "Line weight: decay, bump or zero")->capture_default_str();
        s->add_option("--m", st.m, "Majorant exponent")->capture_default_str();
        s->add_option("--qmax", st.qmax)->capture_default_str();
        s->add_option("--rtol", st.rtol)->capture_default_str();
        commands.back().body = [&st] {
            OrbitExperiment exp;
            exp.f = {st.N, st.k, parse_freq(st.m0, st.k), {st.rho0, st.lambda}};
            exp.h = parse_weight(st.h);
            exp.xi = parse_xi(st.xi, st.k);
            exp.M = parse_matrix(st.M);
            exp.schedule = parse_schedule(st.y, "y");
            exp.quad.rel_tol = st.rtol;
            exp.quad.jobs = st.common.jobs;
            exp.majorant = {st.m, st.k, st.qmax, 0, st.common.jobs};
            validate(exp);
            Table t{{"y", "re", "im", "error", "bound", "bound_tail", "ratio"}, {}};
            for (double y : exp.schedule) {
                const auto e = equidist_error(exp, y);
                t.add({y, e.value.real(), e.value.imag(), e.error, e.bound, e.bound_tail, e.ratio});
            }
            return t;
        };
    }
    // horocycle
    {
        auto* s = add("horocycle", "Zero-frequency horocycle error. Columns: y,error");
        s->add_option("--N", st.N)->capture_default_str();
        s->add_option("--rho0", st.rho0)->capture_default_str();
        s->add_option("--lambda", st.lambda)->capture_default_str();
        s->add_option("--M", st.M)->capture_default_str();
        s->add_option("--y", st.y)->required();
        s->add_option("--weight", st.h, "Line weight: decay, bump or zero")->capture_default_str();
        s->add_option("--rtol", st.rtol)->capture_default_str();
        commands.back().body = [&st] {
            PoincareTestFn f{st.N, 1, {IntRow2{0, 0}}, {st.rho0, st.lambda}};
            validate(f);
            QuadratureOptions q;
            q.rel_tol = st.rtol;
            q.jobs = st.common.jobs;
            const auto ys = parse_schedule(st.y, "y");
            Table t{{"y", "error"}, {}};
            for (const auto& r : horocycle_main_term(f, parse_matrix(st.M), parse_weight(st.h), ys, q))
                t.add({r.y, r.error});
            return t;
        };
    }
    // theorem4
    {
        auto* s = add("theorem4", "Long-orbit bound. Columns: T,term0,series,tail");
        s->add_option("--k", st.k)->capture_default_str();
        s->add_option("--m", st.m)->capture_default_str();
        s->add_option("--xi", st.xi)->required();
        s->add_option("--M", st.M)->capture_default_str();
        s->add_option("--T", st.T)->required();
        s->add_option("--qmax", st.qmax)->capture_default_str();
        s->add_option("--dmax", st.dmax, "0 = ceil(T^1/2)")->capture_default_str();
        commands.back().body = [&st] {
            const auto g = GroupElement::from_xi(parse_xi(st.xi, st.k), parse_matrix(st.M));
            MajorantParams p{st.m, st.k, st.qmax, st.dmax, st.common.jobs};
            Table t{{"T", "term0", "series", "tail"}, {}};
            for (double T : parse_schedule(st.T, "T")) {
                const auto b = theorem4_rhs(g, T, p);
                t.add({T, b.term0, b.series, b.tail});
            }
            return t;
        };
    }
    // verify
    {
        add("verify", "Quick invariant suite; exits 1 on the first failure. Columns: check,status,detail");
        commands.back().body = [] { return Table{}; };
    }
    // sweep
    {
        auto* s = add("sweep", "Seeded random sweeps of decay slopes. Columns: sample,slope,intercept,residual");
        s->add_option("--kind", st.kind, "theorem4 or delta")->check(CLI::IsMember({"theorem4", "delta"}))->capture_default_str();
        s->add_option("--samples", st.samples)->capture_default_str();
        s->add_option("--k", st.k)->capture_default_str();
        s->add_option("--m", st.m)->capture_default_str();
        s->add_option("--T", st.T, "Scales for theorem4 (default 100,1000,10000)");
        s->add_option("--y", st.y, "Heights for delta (default 0.01,0.0001,0.000001)");
        s->add_option("--qmax", st.qmax)->capture_default_str();
        s->add_option("--dmax", st.dmax, "0 = ceil(sqrt(max T)) for theorem4")->capture_default_str();
        commands.back().body = [&st] {
            if (st.samples < 1)
                throw DomainError("--samples must be positive");
            const bool t4 = st.kind == "theorem4";
            const std::string sched = t4 ? (st.T.empty() ? "100,1000,10000" : st.T)
                                         : (st.y.empty() ? "0.01,0.0001,0.000001" : st.y);
            const auto xs = parse_schedule(sched, t4 ? "T" : "y");
            MajorantParams p{st.m, st.k, st.qmax, st.dmax, 1};
            if (t4 && p.d_max == 0)
                p.d_max = static_cast<long long>(std::ceil(std::sqrt(*std::max_element(xs.begin(), xs.end()))));
            std::vector<DecayFit> fits(st.samples);
            parallel_for(std::size_t(st.samples), st.common.jobs, [&](std::size_t i) {
                CounterRng rng(st.common.seed, i);
                TorusMatrix xi(st.k);
                for (auto& r : xi)
                    r = {rng.uniform(), rng.uniform()};
                std::vector<std::pair<double, double>> pts;
                if (t4) {
                    const Sl2Matrix M = iwasawa_compose(
                        {rng.uniform(-1, 1), std::exp(rng.uniform(-1, 1)), rng.uniform(0, 2 * std::numbers::pi)});
                    const auto g = GroupElement::from_xi(xi, M);
                    for (double T : xs)
                        pts.push_back({T, theorem4_rhs(g, T, p).total()});
                } else {
                    for (double y : xs)
                        pts.push_back({y, delta_m(p, y, xi).value});
                }
                fits[i] = decay_fit(pts);
            });
            Table t{{"sample", "slope", "intercept", "residual"}, {}};
            for (std::size_t i = 0; i < fits.size(); ++i)
                t.add({(long long)i, fits[i].slope, fits[i].intercept, fits[i].residual});
            return t;
        };
    }

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    try {
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    const auto it = std::find_if(commands.begin(), commands.end(), [](const Command& c) { return c.app->parsed(); });
    const std::string name = it->app->get_name();
    try {
        Table table;
        int code = 0;
        if (name == "verify") {
            code = run_verify(table);
        } else {
            table = it->body();
        }
        std::ostringstream buf;
        if (st.common.format == "json")
            write_json(buf, table, name, resolved(it->app));
        else
            write_csv(buf, table);
        if (st.common.output.empty()) {
            out << buf.str();
        } else {
            std::ofstream file(st.common.output, std::ios::binary);
            if (!file)
                throw DomainError("cannot write " + st.common.output);
            file << buf.str();
        }
        return code;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NonConvergence& e) {
        err << "non-convergence: " << e.what() << " (estimate " << format_double(e.estimate) << ", error "
            << format_double(e.error) << ")\n";
        return 3;
    } catch (const ResourceGuard& e) {
        err << "resource guard: " << e.what() << '\n';
        return 4;
    }
}

} // namespace horolab::cli
