#include "bolhalf/cli.hpp"

#include "bolhalf/bol_ops.hpp"
#include "bolhalf/errors.hpp"
#include "bolhalf/modular_verify.hpp"
#include "bolhalf/series_io.hpp"
#include "bolhalf/suites.hpp"
#include "bolhalf/thetas.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace bolhalf {

using nlohmann::json;

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("malformed " + what + " '" + s + "'");
    }
}

i64 parse_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("malformed " + what + " '" + s + "'");
    }
}

struct Io {
    RunConfig cfg;
    std::ostream& out;
    std::ostream& err;
    std::string command;
};

json envelope(const Io& io, const std::string& status, int code)
{
    return json{{"schema", kReportSchema}, {"command", io.command}, {"config", io.cfg.to_json()},
                {"status", status}, {"exit_code", code}};
}

void emit_json(const Io& io, const json& j)
{
    if (io.cfg.json_path.empty() || io.cfg.json_path == "-") {
        io.out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(io.cfg.json_path);
    if (!f) throw InvalidArgument("cannot write " + io.cfg.json_path);
    f << j.dump(2) << "\n";
}

void emit_series(const Io& io, const AnySeries& f, const std::string& path)
{
    if (path.empty() || path == "-")
        write_series(io.out, f);
    else
        save_series(path, f);
}

// seeded points x + iy, |x| <= 0.3, y in [0.4, 0.7], where both z and -1/(Mz) stay inside the convergence region
std::vector<Complex> fricke_points(u64 seed, int count)
{
    std::mt19937_64 rng(seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Complex> zs;
    for (int i = 0; i < count; ++i) {
        double x = -0.3 + 0.6 * unit();
        double y = 0.4 + 0.3 * unit();
        zs.emplace_back(Real(x), Real(y));
    }
    return zs;
}

i64 default_prec(const RunConfig& cfg, i64 fallback) { return cfg.prec > 0 ? cfg.prec : fallback; }

// ---- subcommands ---------------------------------------------------------------------------------

struct ThetaArgs {
    std::string kind, chr = "triv:1";
    i64 t = 1;
};

int cmd_theta(const Io& io, const ThetaArgs& a)
{
    ThetaKind kind = parse_theta_kind(a.kind);
    DirichletCharacter psi = make_character(a.chr);
    i64 P = default_prec(io.cfg, 100);
    if (psi.is_gaussian())
        emit_series(io, theta_series<QExact>(kind, psi, a.t, P).series, io.cfg.out_path);
    else
        emit_series(io, theta_series<Complex>(kind, psi, a.t, P).series, io.cfg.out_path);
    return 0;
}

struct DeltaArgs {
    std::string a, k, psi0 = "triv:1", psi1 = "kron:-4", in, chr;
    bool closed_form = false;
};

int cmd_delta(const Io& io, const DeltaArgs& d)
{
    Rational a = parse_rational(d.a);
    HalfWeight k = HalfWeight::parse(d.k);
    ThetaContext ctx = ThetaContext::make(make_character(d.psi0), make_character(d.psi1));
    std::optional<DirichletCharacter> fc;
    if (!d.chr.empty()) fc = make_character(d.chr);
    AnySeries f = load_series(d.in);
    Rational target(default_prec(io.cfg, 100));
    AnySeries g = std::visit(
        [&](const auto& s) -> AnySeries {
            if (d.closed_form) {
                if (a != 0) throw InvalidArgument("--closed-form computes delta_0 only (use --a 0)");
                return delta0_closed_form(s, k, ctx);
            }
            return delta_a(s, k, a, ctx, target, fc ? &*fc : nullptr).series;
        },
        f);
    emit_series(io, g, io.cfg.out_path);
    return 0;
}

struct RcArgs {
    int n = 1;
    std::string k, l, f, g;
};

int cmd_rc(const Io& io, const RcArgs& r)
{
    HalfWeight k = HalfWeight::parse(r.k), l = HalfWeight::parse(r.l);
    AnySeries f = load_series(r.f), g = load_series(r.g);
    if (f.index() != g.index()) {
        f = std::visit([](const auto& s) -> AnySeries { return to_float(s); }, f);
        g = std::visit([](const auto& s) -> AnySeries { return to_float(s); }, g);
    }
    int power = 0;
    AnySeries h = std::visit(
        [&](const auto& s) -> AnySeries {
            using S = std::decay_t<decltype(s)>;
            auto t = rankin_cohen(s, std::get<S>(g), r.n, k, l);
            power = t.two_pi_i_power;
            return t.series;
        },
        f);
    io.err << "factor (2 pi i)^" << power << " omitted from the coefficients\n";
    emit_series(io, h, io.cfg.out_path);
    return 0;
}

struct SelbergArgs {
    int k = 0;
    std::string f, out2;
};

int cmd_selberg(const Io& io, const SelbergArgs& s)
{
    AnySeries f = load_series(s.f);
    std::visit(
        [&](const auto& x) {
            auto [F, S] = selberg_lift(x, s.k);
            io.err << "F: weight " << F.meta.weight.str() << " level " << F.meta.level << "; S: weight "
                   << S.meta.weight.str() << " level " << S.meta.level << "\n";
            emit_series(io, F.series, io.cfg.out_path);
            if (!s.out2.empty()) save_series(s.out2, S.series);
        },
        f);
    return 0;
}

json pairs_json(const ResidualReport& r)
{
    json arr = json::array();
    for (const auto& p : r.pairs)
        arr.push_back(json{{"gamma", p.gamma.str()},
                           {"z", complex_json(p.z)},
                           {"lhs", complex_json(p.lhs)},
                           {"rhs", complex_json(p.rhs)},
                           {"residual", p.residual},
                           {"tail_bound", p.tail_bound},
                           {"admissible", p.admissible},
                           {"note", p.note}});
    return arr;
}

struct VerifyArgs {
    std::string in, meta, against;
    i64 fricke = 0;
    int pairs = 20;
    i64 c_max = 2;
};

int cmd_verify(const Io& io, const VerifyArgs& v)
{
    AnySeries f = load_series(v.in);
    FormMeta meta = parse_meta(v.meta);
    meta.validate();
    if (v.pairs <= 0) throw InvalidArgument("--pairs must be positive");
    PointFunction ev = evaluator_of(f);
    auto gs = sample_gamma0(meta.level, v.c_max, v.pairs, io.cfg.seed);
    auto zs = sample_points(gs, io.cfg.seed);
    auto r = automorphy_residual(ev, meta, gs, zs, io.cfg.tol);
    bool pass = r.max_residual <= io.cfg.tol && r.admissible == v.pairs;
    json j = envelope(io, "", 0);
    j["meta"] = meta_to_string(meta);
    j["pairs"] = pairs_json(r);
    j["summary"] = json{{"max_residual", r.max_residual}, {"admissible", r.admissible}, {"rejected", r.rejected},
                        {"threshold", io.cfg.tol}, {"pass", pass}};
    if (v.fricke > 0) {
        PointFunction h = v.against.empty() ? ev : evaluator_of(load_series(v.against));
        auto fz = fricke_points(io.cfg.seed, 10);
        auto fit = fit_fricke_constant(ev, h, v.fricke, meta.weight, fz);
        json samples = json::array();
        for (const auto& c : fit.samples) samples.push_back(complex_json(c));
        bool fp = fit.spread <= io.cfg.tol;
        j["fricke"] = json{{"M", v.fricke}, {"constant", complex_json(fit.constant)}, {"spread", fit.spread},
                           {"samples", samples}, {"pass", fp}};
        pass = pass && fp;
    }
    j["status"] = pass ? "pass" : "fail";
    j["exit_code"] = pass ? 0 : 1;
    emit_json(io, j);
    return pass ? 0 : 1;
}

json lvalue_json(const LValue& v)
{
    return json{{"value", complex_json(v.value)},   {"quad_error", v.quad_error}, {"tail_bound", v.tail_bound},
                {"rounding", v.rounding},           {"rel_error", v.rel_error()}, {"terms", v.terms},
                {"nodes", v.nodes},                 {"bits", v.bits},
                {"cancellation_digits", v.cancellation_digits}};
}

struct LseriesArgs {
    std::string in, chi = "triv:1", phi = "bump:1,2";
};

int cmd_lseries(const Io& io, const LseriesArgs& a)
{
    AnySeries f = load_series(a.in);
    auto v = lseries_value(f, make_character(a.chi), TestFunction::parse(a.phi), io.cfg.tol);
    std::ostringstream line;
    line << to_string(v.value.re, 30) << " " << to_string(v.value.im, 30) << " rel_error " << format_sci(v.rel_error())
         << "\n";
    if (io.cfg.out_path.empty() || io.cfg.out_path == "-") {
        io.out << line.str();
    } else {
        std::ofstream o(io.cfg.out_path);
        if (!o) throw InvalidArgument("cannot write " + io.cfg.out_path);
        o << line.str();
    }
    if (!io.cfg.json_path.empty()) {
        json j = envelope(io, "pass", 0);
        j["chi"] = a.chi;
        j["phi"] = a.phi;
        j["lvalue"] = lvalue_json(v);
        emit_json(io, j);
    }
    return 0;
}

struct FeArgs {
    std::string f, g, meta, chi = "triv:1", phi = "bump:1,2", g_scale;
    bool fit_scale = false;
    double threshold = 1e-6;
};

int cmd_fe(const Io& io, const FeArgs& a)
{
    AnySeries f = load_series(a.f);
    AnySeries g = a.g.empty() ? f : load_series(a.g);
    FormMeta meta = parse_meta(a.meta);
    json fit_json;
    if (a.fit_scale) {
        // g <- c g with c fitted from f|W_N = c g at seeded points
        auto fit = fit_fricke_constant(evaluator_of(f), evaluator_of(g), meta.level, meta.weight, fricke_points(io.cfg.seed, 10));
        g = std::visit([&](const auto& s) -> AnySeries { return scale(to_float(s), fit.constant); }, g);
        fit_json = json{{"constant", complex_json(fit.constant)}, {"spread", fit.spread}};
    } else if (!a.g_scale.empty()) {
        auto c = a.g_scale.find(',');
        double re = parse_double(trim(a.g_scale.substr(0, c)), "--g-scale");
        double im = c == std::string::npos ? 0.0 : parse_double(trim(a.g_scale.substr(c + 1)), "--g-scale");
        Complex z{Real(re), Real(im)};
        g = std::visit([&](const auto& s) -> AnySeries { return scale(to_float(s), z); }, g);
    }
    auto r = fe_residual(f, g, meta, make_character(a.chi), TestFunction::parse(a.phi), io.cfg.tol);
    bool pass = r.residual <= a.threshold;
    json j = envelope(io, pass ? "pass" : "fail", pass ? 0 : 1);
    j["meta"] = meta_to_string(meta);
    j["chi"] = r.chi;
    j["chi_rhs"] = r.chi_rhs;
    j["phi"] = r.phi;
    j["phi_rhs"] = r.phi_rhs;
    j["lhs"] = lvalue_json(r.lhs);
    j["rhs"] = lvalue_json(r.rhs);
    j["constant"] = complex_json(r.constant);
    j["rhs_scaled"] = complex_json(r.rhs_scaled);
    j["residual"] = r.residual;
    j["error_estimate"] = r.error_estimate;
    j["threshold"] = a.threshold;
    if (!fit_json.is_null()) j["g_scale_fit"] = fit_json;
    emit_json(io, j);
    return pass ? 0 : 1;
}

struct ScArgs {
    std::string params, h, grid = "0.5:5:10", phi, method = "bromwich";
    double threshold = 0; // 0: exploratory, no verdict
};

AlphaMethod parse_method(const std::string& s)
{
    if (s == "automatic") return AlphaMethod::automatic;
    if (s == "derivative") return AlphaMethod::derivative;
    if (s == "abel") return AlphaMethod::abel;
    if (s == "bromwich") return AlphaMethod::bromwich;
    throw InvalidArgument("unknown alpha method '" + s + "' (automatic, derivative, abel, bromwich)");
}

int cmd_sc(const Io& io, const ScArgs& a)
{
    std::string text;
    if (!a.params.empty()) {
        std::ifstream f(a.params);
        if (!f) throw InvalidArgument("cannot read " + a.params);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    std::string phi_spec = "bump:1,2";
    SCParams prm = parse_sc_params(text, phi_spec);
    if (!a.h.empty()) prm.h = HFunction::parse(a.h, prm.k.value());
    if (!a.phi.empty()) phi_spec = a.phi;
    auto ps = parse_grid(a.grid);
    auto rep = sc_residual(prm, TestFunction::parse(phi_spec), ps, parse_method(a.method));
    bool pass = a.threshold <= 0 || rep.max_residual <= a.threshold;
    json samples = json::array();
    for (const auto& s : rep.samples)
        samples.push_back(json{{"p", s.p}, {"lhs", complex_json(s.lhs)}, {"rhs", complex_json(s.rhs)},
                               {"residual", s.residual}});
    json j = envelope(io, a.threshold > 0 ? (pass ? "pass" : "fail") : "exploratory", pass ? 0 : 1);
    j["params"] = json{{"k", prm.k.str()},
                       {"N", prm.N},
                       {"Np", prm.Np},
                       {"D", prm.D},
                       {"chi", prm.chi.label()},
                       {"psi", prm.psi.label()},
                       {"psi_prime", prm.psi_prime.label()},
                       {"lambda", complex_json(prm.lambda)},
                       {"h", prm.h.name},
                       {"phi", phi_spec}};
    j["b"] = complex_json(rep.b);
    j["alpha_method"] = rep.alpha_method;
    j["bromwich_terms"] = rep.bromwich_terms;
    j["bromwich_sigma"] = rep.bromwich_sigma;
    j["t_cap"] = rep.t_cap;
    j["notes"] = rep.notes;
    j["samples"] = samples;
    j["max_residual"] = rep.max_residual;
    if (a.threshold > 0) j["threshold"] = a.threshold;
    emit_json(io, j);
    return pass ? 0 : 1;
}

struct BesselArgs {
    int n = 0, sign = 1;
    std::vector<std::string> z;
    bool dbl = false;
};

int cmd_bessel(const Io& io, const BesselArgs& b)
{
    if (b.sign != 1 && b.sign != -1) throw InvalidArgument("--sign must be +1 or -1");
    if (b.z.empty()) throw InvalidArgument("bessel needs at least one --z value");
    for (const auto& zs : b.z) {
        if (b.dbl) {
            double z = parse_double(zs, "argument");
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", bessel_half(b.n, b.sign, z));
            io.out << zs << " " << buf << "\n";
        } else {
            Real z(zs);
            io.out << zs << " " << to_string(bessel_half_mp(b.n, b.sign, z)) << "\n";
        }
    }
    return 0;
}

int cmd_suite(const Io& io, const std::string& name)
{
    SuiteReport rep = run_suite(name, io.cfg);
    emit_json(io, rep.to_json(io.cfg));
    if (!io.cfg.json_path.empty() && io.cfg.json_path != "-") {
        for (const auto& c : rep.checks)
            io.out << (c.informational ? "INFO " : (c.pass ? "PASS " : "FAIL ")) << c.name << "  value "
                   << format_sci(c.value) << "\n";
        if (!rep.error.empty()) io.out << "ERROR " << rep.error << "\n";
    }
    return rep.exit_code();
}

} // namespace

std::vector<double> parse_grid(const std::string& spec)
{
    std::vector<double> v;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(trim(item));
        if (parts.size() != 3) throw InvalidArgument("grid '" + spec + "' must be lo:hi:count");
        double lo = parse_double(parts[0], "grid bound"), hi = parse_double(parts[1], "grid bound");
        i64 n = parse_int(parts[2], "grid count");
        if (n < 1 || (n == 1 && lo != hi) || hi < lo) throw InvalidArgument("grid '" + spec + "' is empty or reversed");
        for (i64 i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(parse_double(trim(item), "grid point"));
    }
    if (v.empty()) throw InvalidArgument("empty grid");
    return v;
}

SCParams parse_sc_params(const std::string& text, std::string& phi_spec)
{
    SCParams prm;
    std::string h = "one";
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidArgument("SC params line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "k") prm.k = HalfWeight::parse(val);
        else if (key == "N") prm.N = parse_int(val, "N");
        else if (key == "Np") prm.Np = parse_int(val, "Np");
        else if (key == "D") prm.D = parse_int(val, "D");
        else if (key == "chi") prm.chi = make_character(val);
        else if (key == "psi") prm.psi = make_character(val);
        else if (key == "psi_prime") prm.psi_prime = make_character(val);
        else if (key == "h") h = val;
        else if (key == "phi") phi_spec = val;
        else if (key == "lambda") {
            auto c = val.find(',');
            if (c == std::string::npos)
                prm.lambda = parse_double(val, "lambda");
            else
                prm.lambda = cd(parse_double(trim(val.substr(0, c)), "lambda"), parse_double(trim(val.substr(c + 1)), "lambda"));
        } else
            throw InvalidArgument("SC params: unknown key '" + key + "'");
    }
    prm.h = HFunction::parse(h, prm.k.value());
    return prm;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Half-integral weight Bol operators: q-series, modularity checks, L-series laboratory"};
    app.name("bolhalf");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file; command-line flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Io io{RunConfig{}, out, err, ""};
    RunConfig& cfg = io.cfg;
    app.add_option("--json", cfg.json_path, "JSON report path ('-' for stdout)");
    app.add_option("--out", cfg.out_path, "series / value output path (default stdout)");
    app.add_option("--prec", cfg.prec, "truncation precision (0: command default)");
    app.add_option("--bits", cfg.bits, "working precision in bits (>= 64)");
    app.add_option("--tol", cfg.tol, "quadrature / residual tolerance");
    app.add_option("--seed", cfg.seed, "seed for sampled points and inputs");

    std::function<int()> action;

    ThetaArgs ta;
    auto* theta = app.add_subcommand("theta", "theta series theta0, theta1 or psi(n) q^{t n^2}");
    theta->add_option("--kind", ta.kind, "theta0 | theta1 | st")->required();
    theta->add_option("--char", ta.chr, "character spec");
    theta->add_option("--t", ta.t, "dilation for --kind st");
    theta->callback([&] { action = [&] { return cmd_theta(io, ta); }; });

    DeltaArgs da;
    auto* delta = app.add_subcommand("delta", "delta_a^{k-1} of a series");
    delta->add_option("--a", da.a, "rational parameter a")->required();
    delta->add_option("--k", da.k, "weight k, e.g. 5/2")->required();
    delta->add_option("--psi0", da.psi0, "even theta character");
    delta->add_option("--psi1", da.psi1, "odd theta character");
    delta->add_option("--in", da.in, "input series file")->required();
    delta->add_option("--char", da.chr, "character of the input (default trivial)");
    delta->add_flag("--closed-form", da.closed_form, "use the explicit Fourier expansion (a = 0)");
    delta->callback([&] { action = [&] { return cmd_delta(io, da); }; });

    RcArgs ra;
    auto* rc = app.add_subcommand("rc", "Rankin-Cohen bracket [f, g]_n");
    rc->add_option("--n", ra.n, "order")->required();
    rc->add_option("--k", ra.k, "weight of f")->required();
    rc->add_option("--l", ra.l, "weight of g")->required();
    rc->add_option("f", ra.f, "series file f")->required();
    rc->add_option("g", ra.g, "series file g")->required();
    rc->callback([&] { action = [&] { return cmd_rc(io, ra); }; });

    SelbergArgs sa;
    auto* selberg = app.add_subcommand("selberg", "Selberg lift: F = f(4z) theta0 (to --out), S (to --out2)");
    selberg->add_option("--k", sa.k, "even weight of f")->required();
    selberg->add_option("f", sa.f, "series file f")->required();
    selberg->add_option("--out2", sa.out2, "path for S");
    selberg->callback([&] { action = [&] { return cmd_selberg(io, sa); }; });

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "automorphy residuals over sampled Gamma0(N) pairs");
    verify->add_option("--in", va.in, "series file")->required();
    verify->add_option("--meta", va.meta, "'2k,N,charspec,n0'")->required();
    verify->add_option("--fricke", va.fricke, "also fit the W_M constant of f against --against (default f)");
    verify->add_option("--against", va.against, "series file h for the Fricke fit");
    verify->add_option("--pairs", va.pairs, "number of (gamma, z) pairs");
    verify->add_option("--c-max", va.c_max, "largest |c| / N of the sampled gammas");
    verify->callback([&] { action = [&] { return cmd_verify(io, va); }; });

    LseriesArgs la;
    auto* lser = app.add_subcommand("lseries", "twisted L-series value L_f(chi, phi)");
    lser->add_option("--in", la.in, "series file")->required();
    lser->add_option("--chi", la.chi, "twisting character");
    lser->add_option("--phi", la.phi, "test function spec");
    lser->callback([&] { action = [&] { return cmd_lseries(io, la); }; });

    FeArgs fa;
    auto* fe = app.add_subcommand("fe", "functional-equation residual");
    fe->add_option("--f", fa.f, "series file f")->required();
    fe->add_option("--g", fa.g, "series file g = f|W_N (default f)");
    fe->add_option("--meta", fa.meta, "'2k,N,charspec,n0' of f")->required();
    fe->add_option("--chi", fa.chi, "twisting character");
    fe->add_option("--phi", fa.phi, "test function spec");
    fe->add_option("--g-scale", fa.g_scale, "multiply g by re[,im]");
    fe->add_flag("--fit-scale", fa.fit_scale, "multiply g by the constant c fitted from f|W_N = c g");
    fe->add_option("--threshold", fa.threshold, "relative residual bound");
    fe->callback([&] { action = [&] { return cmd_fe(io, fa); }; });

    ScArgs ca;
    auto* sc = app.add_subcommand("sc", "sufficient-condition residual landscape");
    sc->set_help_flag("--help", "print this help message and exit"); // frees --h
    sc->add_option("--params", ca.params, "key=value parameter file");
    sc->add_option("--h", ca.h, "one | zero | ell | shiftpow:c,e");
    sc->add_option("--p-grid", ca.grid, "lo:hi:count or a comma list");
    sc->add_option("--phi", ca.phi, "test function spec");
    sc->add_option("--method", ca.method, "automatic | derivative | abel | bromwich");
    sc->add_option("--threshold", ca.threshold, "assert max residual below this (default: exploratory)");
    sc->callback([&] { action = [&] { return cmd_sc(io, ca); }; });

    BesselArgs ba;
    auto* bessel = app.add_subcommand("bessel", "J_{+-(n+1/2)} from the closed forms");
    bessel->add_option("--n", ba.n, "n >= 0")->required();
    bessel->add_option("--sign", ba.sign, "+1 or -1");
    bessel->add_option("--z", ba.z, "arguments")->required();
    bessel->add_flag("--double", ba.dbl, "double precision evaluation");
    bessel->callback([&] { action = [&] { return cmd_bessel(io, ba); }; });

    std::string suite_name;
    std::string known = "all";
    for (const auto& n : suite_names()) known += ", " + n;
    for (const char* nm : {"suite", "run"}) {
        auto* s = app.add_subcommand(nm, std::string(nm) == "suite" ? "run a named acceptance suite (" + known + ")"
                                                                     : "alias of suite");
        s->add_option("name", suite_name, "suite name")->required();
        s->callback([&] { action = [&] { return cmd_suite(io, suite_name); }; });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    for (auto* s : app.get_subcommands()) io.command = s->get_name();

    try {
        cfg.validate();
        ScopedPrecision sp(cfg.bits);
        return action();
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        if (!cfg.json_path.empty() && io.command != "suite" && io.command != "run") {
            json j = envelope(io, "error", 2);
            j["error"] = e.what();
            try { emit_json(io, j); } catch (const std::exception&) {}
        }
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        if (!cfg.json_path.empty()) {
            json j = envelope(io, "error", 3);
            j["error"] = e.what();
            try { emit_json(io, j); } catch (const std::exception&) {}
        }
        return 3;
    }
}

int run_cli(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace bolhalf
