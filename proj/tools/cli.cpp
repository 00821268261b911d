#include "cli.hpp"

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mmcurve/combinatorics.hpp>
#include <mmcurve/couplings.hpp>
#include <mmcurve/error.hpp>
#include <mmcurve/fat.hpp>
#include <mmcurve/lagrange.hpp>
#include <mmcurve/one_cut.hpp>
#include <mmcurve/sequences.hpp>
#include <mmcurve/series_io.hpp>
#include <mmcurve/suites.hpp>
#include <mmcurve/thin.hpp>

namespace mmcurve::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string couplings;
    int order = 8;
    int degree = -1;
    int nmax = 8;
    int tail = 8;
    int t_order = -1;
    std::string format = "plain";
    bool two_n = false;
    std::string subst;
    std::string method;
    std::string phi;
    std::string suite = "all";
};

// Usage problems detected after CLI11 has accepted the command line.
struct UsageError : Error {
    using Error::Error;
};

class Emitter {
public:
    Emitter(const Options& o, std::ostream& out) : opts_(o), out_(out)
    {
        render_.two_n = o.two_n;
        parse_subst();
    }

    void series(const std::string& name, const PSeries& s)
    {
        PSeries v = substitute(s);
        if (json_mode()) {
            json_[name] = Json::parse(to_json_string(v));
        } else {
            out_ << name << " = " << render_plain(v, render_) << '\n';
        }
    }

    void laurent(const std::string& name, const LSeries& s)
    {
        LSeries v = s.transform([&](const PSeries& c) { return substitute(c); });
        if (json_mode()) {
            Json j;
            j["valid_from"] = v.is_exact() ? Json(nullptr) : Json(v.valid_from());
            Json coeffs = Json::object();
            for (auto it = v.coeffs().rbegin(); it != v.coeffs().rend(); ++it) {
                coeffs[std::to_string(it->first)] = Json::parse(to_json_string(it->second));
            }
            j["coeffs"] = coeffs;
            json_[name] = j;
        } else {
            out_ << name << ":\n" << render_plain(v, "z", render_);
        }
    }

    // A lone series is written as the bare series document so it parses back directly.
    void single(const PSeries& s)
    {
        PSeries v = substitute(s);
        if (json_mode()) {
            out_ << to_json_string(v, 2) << '\n';
        } else {
            out_ << render_plain(v, render_) << '\n';
        }
    }

    void finish()
    {
        if (json_mode() && !json_.empty()) {
            out_ << json_.dump(2) << '\n';
        }
    }

private:
    bool json_mode() const { return opts_.format == "json"; }

    void parse_subst()
    {
        std::stringstream ss(opts_.subst);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) {
                continue;
            }
            auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw UsageError("--subst entry '" + item + "' is not of the form name=p/q");
            }
            subst_.emplace_back(item.substr(0, eq), Rational::parse(item.substr(eq + 1)));
        }
    }

    PSeries substitute(PSeries s) const
    {
        for (const auto& [name, value] : subst_) {
            if (!s.table()->contains(name)) {
                throw UsageError("--subst names '" + name + "', which is not a variable of the output");
            }
            s = ps_substitute(s, name, PSeries::constant(s.table(), value));
        }
        return s;
    }

    const Options& opts_;
    std::ostream& out_;
    RenderOptions render_;
    std::vector<std::pair<std::string, Rational>> subst_;
    Json json_ = Json::object();
};

CouplingFrame frame_of(const Options& o)
{
    return CouplingFrame::parse(o.couplings);
}

int cmd_thin_z(const Options& o, std::ostream& out)
{
    InversionMethod m = o.method == "composition" ? InversionMethod::composition : InversionMethod::fixed_point;
    PSeries z = thin_z_of_v(frame_of(o), o.order, o.degree >= 0 ? o.degree : o.order, m);
    Emitter e(o, out);
    e.single(z);
    return 0;
}

int cmd_thin_curve(const Options& o, std::ostream& out)
{
    ThinDeformation d = thin_deformation(frame_of(o), o.tail, o.degree >= 0 ? o.degree : 6);
    Emitter e(o, out);
    e.series("I0", d.I0);
    e.laurent("Y", d.Y);
    e.finish();
    return 0;
}

int cmd_fat_fn(const Options& o, std::ostream& out)
{
    FatState s = fat_fn_virasoro(frame_of(o), o.nmax, o.degree >= 0 ? o.degree : 6);
    Emitter e(o, out);
    for (int n = 0; n <= s.n_max; ++n) {
        e.series("f" + std::to_string(n), s.f[n]);
    }
    e.finish();
    return 0;
}

int cmd_fat_resolvent(const Options& o, std::ostream& out)
{
    CouplingFrame fr = frame_of(o);
    int degree = o.degree >= 0 ? o.degree : 6;
    FatState s = fat_fn_virasoro(fr, std::max(fr.max_g_index() - 2, 1), degree);
    Emitter e(o, out);
    e.laurent("omega", fat_resolvent_closed(fr, s.f, degree, o.tail));
    e.finish();
    return 0;
}

int cmd_one_cut(const Options& o, std::ostream& out)
{
    CutOptions co;
    co.t_order = o.t_order;
    co.n_max = o.nmax;
    co.degree = o.degree;
    if (co.degree < 0 && (o.method == "h" || co.t_order < 0)) {
        co.degree = 6;
    }
    CouplingFrame fr = frame_of(o);
    CutData cut = o.method == "system" ? solve_one_cut_system(fr, co)
                  : o.method == "even" ? solve_one_cut_even(fr, co)
                                       : solve_one_cut_H(fr, co);
    Emitter e(o, out);
    e.series("b", cut.b);
    e.series("c", cut.c);
    for (const auto& [k, q] : cut.Q) {
        e.series("Q" + std::to_string(k), q);
    }
    for (std::size_t n = 0; n < cut.f.size(); ++n) {
        e.series("f" + std::to_string(n), cut.f[n]);
    }
    e.finish();
    return 0;
}

int cmd_invert(const Options& o, std::ostream& out)
{
    if (o.phi.empty()) {
        throw UsageError("invert needs --phi");
    }
    CouplingFrame fr = thin_frame(frame_of(o));
    TruncationPolicy pol = o.degree >= 0 ? grade_policy(o.degree) : TruncationPolicy{};
    PSeries phi = parse_series(o.phi, fr.table(), pol);
    PSeries w;
    if (o.method == "composition") {
        std::vector<PSeries> J;
        for (int n = 0; n <= std::max(phi.max_exp("w"), 0); ++n) {
            J.push_back(phi.coefficient_of("w", n).rebase(fr.table()) * factorial(n));
        }
        w = invert_composition_formula(J, fr.table(), "v", o.order);
    } else {
        w = invert_fixed_point(InversionProblem{phi, o.order});
    }
    Emitter e(o, out);
    e.single(w);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    std::vector<SuiteResult> results = run_checks(suite_checks(o.suite), worker_count());
    int failed = 0;
    for (const SuiteResult& r : results) {
        failed += r.report.ok ? 0 : 1;
        out << (r.report.ok ? "PASS" : "FAIL") << " [" << (r.criterion < 10 ? "0" : "") << r.criterion << "] "
            << r.name << " (" << r.report.checked << " comparisons)\n";
        if (!r.note.empty()) {
            out << "  note: " << r.note << '\n';
        }
        if (!r.report.detail.empty()) {
            out << "  " << r.report.detail << '\n';
        }
        if (!r.report.warning.empty()) {
            out << "  warning: " << r.report.warning << '\n';
        }
    }
    out << results.size() - failed << "/" << results.size() << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

int cmd_identity_check(const Options& o, std::ostream& out)
{
    bool ok = true;
    for (const IdentityResult& r : identity_checks(o.order)) {
        ok = ok && r.report.ok;
        out << (r.report.ok ? "PASS " : "FAIL ") << r.name << " (through x^" << o.order << ")\n";
        if (!r.note.empty()) {
            out << "  note: " << r.note << '\n';
        }
        if (!r.report.detail.empty()) {
            out << "  " << r.report.detail << '\n';
        }
    }
    return ok ? 0 : 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact series computations for matrix-model spectral curves", "mmcurve"};
    app.require_subcommand(1);

    auto couplings = [&](CLI::App* s) {
        s->add_option("--couplings", o.couplings, "Comma list of gK (symbolic) or gK=p/q (numeric)");
    };
    auto output = [&](CLI::App* s) {
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"plain", "json"}));
        s->add_flag("--two-n", o.two_n, "Group powers of N as (2N)^k");
        s->add_option("--subst", o.subst, "Substitute numbers after the computation, e.g. N=1/2,t=1");
    };
    auto degree = [&](CLI::App* s) {
        s->add_option("--degree", o.degree, "Total coupling degree")->check(CLI::NonNegativeNumber);
    };

    CLI::App* thin_z = app.add_subcommand("thin-z", "Thin coordinate z as a series in v");
    couplings(thin_z);
    thin_z->add_option("--order", o.order, "Highest power of v")->check(CLI::PositiveNumber);
    degree(thin_z);
    thin_z->add_option("--method", o.method, "Inversion method")->check(CLI::IsMember({"fixed", "composition"}));
    output(thin_z);

    CLI::App* thin_curve = app.add_subcommand("thin-curve", "Renormalized I0 and the thin field Y(z)");
    couplings(thin_curve);
    degree(thin_curve);
    thin_curve->add_option("--tail", o.tail, "Deepest negative power of z is -(tail+1)")->check(CLI::NonNegativeNumber);
    output(thin_curve);

    CLI::App* fat_fn = app.add_subcommand("fat-fn", "Fat correlators f_0 .. f_nmax from the loop equations");
    couplings(fat_fn);
    fat_fn->add_option("--nmax", o.nmax, "Largest index n")->check(CLI::PositiveNumber);
    degree(fat_fn);
    output(fat_fn);

    CLI::App* fat_res = app.add_subcommand("fat-resolvent", "Closed-form resolvent expanded in 1/z");
    couplings(fat_res);
    degree(fat_res);
    fat_res->add_option("--tail", o.tail, "Deepest negative power of z is -(tail+1)")->check(CLI::NonNegativeNumber);
    output(fat_res);

    CLI::App* one_cut = app.add_subcommand("one-cut", "Cut endpoints b, c, the factor Q and the f_n");
    couplings(one_cut);
    degree(one_cut);
    one_cut->add_option("--t-order", o.t_order, "Highest power of t")->check(CLI::NonNegativeNumber);
    one_cut->add_option("--nmax", o.nmax, "Largest index n read off the resolvent")->check(CLI::NonNegativeNumber);
    one_cut->add_option("--method", o.method, "Solver")->check(CLI::IsMember({"h", "system", "even"}));
    output(one_cut);

    CLI::App* invert = app.add_subcommand("invert", "Solve w = v*phi(w) for w(v)");
    couplings(invert);
    invert->add_option("--phi", o.phi, "phi as an expression in w, N and the couplings")->required();
    invert->add_option("--order", o.order, "Highest power of v")->check(CLI::PositiveNumber);
    degree(invert);
    invert->add_option("--method", o.method, "Inversion method")->check(CLI::IsMember({"fixed", "composition"}));
    output(invert);

    CLI::App* verify = app.add_subcommand("verify", "Run golden comparison suites");
    verify->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember(suite_names()));

    CLI::App* identity = app.add_subcommand("identity-check", "Check generating-function identities");
    identity->add_option("--order", o.order, "Highest power of x")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*thin_z) return cmd_thin_z(o, out);
        if (*thin_curve) return cmd_thin_curve(o, out);
        if (*fat_fn) return cmd_fat_fn(o, out);
        if (*fat_res) return cmd_fat_resolvent(o, out);
        if (*one_cut) return cmd_one_cut(o, out);
        if (*invert) return cmd_invert(o, out);
        if (*verify) return cmd_verify(o, out);
        if (*identity) {
            if (identity->count("--order") == 0) {
                o.order = 10;
            }
            return cmd_identity_check(o, out);
        }
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace mmcurve::cli
