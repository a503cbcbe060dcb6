#include "kurepa/cli.hpp"

#include <fstream>
#include <iostream>
#include <locale>
#include <regex>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kurepa/kurepa.hpp"
#include "kurepa/left_factorial.hpp"
#include "kurepa/xval.hpp"

namespace kurepa::cli {

namespace {

using json = nlohmann::json;

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw CLI::ValidationError("--format", "expected text, json or csv");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(ComplexValue v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v.real();
    if (v.imag() != 0.0) os << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
    return os.str();
}

struct RangeSpec {
    double lo = 0.0, hi = 0.0;
    int steps = 1;
};

// "a:b:n" with decimal a, b and integer n >= 1.
RangeSpec parse_range(const std::string& text) {
    static const std::regex re(R"(^([^:]+):([^:]+):(\d+)$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw CLI::ValidationError("range", "expected a:b:n, e.g. 0.05:0.95:40");
    RangeSpec r;
    size_t pos = 0;
    r.lo = std::stod(m[1].str(), &pos);
    if (pos != m[1].str().size()) throw CLI::ValidationError("range", "bad lower bound");
    r.hi = std::stod(m[2].str(), &pos);
    if (pos != m[2].str().size()) throw CLI::ValidationError("range", "bad upper bound");
    r.steps = std::stoi(m[3].str());
    if (r.steps < 1) throw CLI::ValidationError("range", "steps must be >= 1");
    return r;
}

json flags_json(EvalFlags f) {
    json a = json::array();
    if (has_flag(f, EvalFlags::NearPole)) a.push_back("NearPole");
    if (has_flag(f, EvalFlags::PrincipalValueUsed)) a.push_back("PrincipalValueUsed");
    if (has_flag(f, EvalFlags::RemovableSingularity)) a.push_back("RemovableSingularity");
    return a;
}

int cmd_eval(const std::string& function, const std::string& z_text, const std::string& method_s,
             double tol, Format format, std::ostream& out, std::ostream& err) {
    const auto z = parse_complex(z_text);
    if (!z) {
        err << "error: cannot parse complex literal '" << z_text
            << "' (expected a, bi, a+bi or a-bi)\n";
        return kExitUsage;
    }
    Method method;
    try {
        method = method_from_name(method_s);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    EvalResult r;
    try {
        r = (function == "K") ? K(*z, method, tol) : K1(*z, method, tol);
    } catch (const PoleError&) {
        const long long n = std::llround(z->real());
        err << function << " has a pole at z = " << fmt(*z)
            << "; the Cauchy principal value is available via: pv " << function << " " << n
            << "  (residues via residue_" << (function == "K" ? "kurepa" : "k1") << ")\n";
        return kExitPole;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    switch (format) {
        case Format::Text:
            out << "value: " << fmt(r.value) << "\n"
                << "method: " << method_name(r.method) << "\n"
                << "abs_error_estimate: " << fmt(r.abs_error_estimate) << "\n"
                << "flags: " << flags_to_string(r.flags) << "\n";
            break;
        case Format::Json: {
            json doc{{"function", function},
                     {"z", {z->real(), z->imag()}},
                     {"value", {r.value.real(), r.value.imag()}},
                     {"method", method_name(r.method)},
                     {"abs_error_estimate", r.abs_error_estimate},
                     {"flags", flags_json(r.flags)}};
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "function,z_re,z_im,value_re,value_im,method,abs_error_estimate,flags\n"
                << function << "," << fmt(z->real()) << "," << fmt(z->imag()) << ","
                << fmt(r.value.real()) << "," << fmt(r.value.imag()) << ","
                << method_name(r.method) << "," << fmt(r.abs_error_estimate) << ","
                << flags_to_string(r.flags) << "\n";
            break;
    }
    return kExitOk;
}

int cmd_pv(const std::string& function, int n, Format format, std::ostream& out) {
    double value;
    if (function == "K") value = pv_kurepa(n);
    else if (function == "K1") value = pv_k1(n);
    else {
        // Gamma: regular value for n >= 1, principal value at the poles.
        value = n >= 1 ? gamma(ComplexValue(n, 0.0)).real() : pv_gamma_at_negative_integer(-n);
    }
    switch (format) {
        case Format::Text: out << fmt(value) << "\n"; break;
        case Format::Json: {
            json doc{{"function", function}, {"n", n}, {"pv", value}};
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "function,n,pv\n" << function << "," << n << "," << fmt(value) << "\n";
            break;
    }
    return kExitOk;
}

int cmd_seq(int n_max, Format format, std::ostream& out, std::ostream& err) {
    if (n_max < 0 || n_max > 10000) {
        err << "error: n_max must be in [0, 10000]\n";
        return kExitUsage;
    }
    const auto seq = left_factorial_sequence(n_max);
    switch (format) {
        case Format::Text:
            for (const auto& v : seq) out << v.str() << "\n";
            break;
        case Format::Json: {
            json values = json::array();
            for (const auto& v : seq) values.push_back(v.str());
            json doc{{"n_max", n_max}, {"values", values}};
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "n,K\n";
            for (size_t n = 0; n < seq.size(); ++n) out << n << "," << seq[n].str() << "\n";
            break;
    }
    return kExitOk;
}

int cmd_const(Format format, std::ostream& out) {
    const double l1 = l1_constant();
    const double ei1 = constants::ei_one();
    struct Row {
        const char* name;
        double value;
    };
    const Row rows[] = {{"L1", l1},
                        {"Ei(1)", ei1},
                        {"Ei(1)/e", ei1 / constants::e},
                        {"euler_gamma", constants::euler_gamma},
                        {"1/e", 1.0 / constants::e}};
    switch (format) {
        case Format::Text:
            for (const Row& r : rows) out << r.name << " = " << fmt(r.value) << "\n";
            break;
        case Format::Json: {
            json doc;
            for (const Row& r : rows) doc[r.name] = r.value;
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "name,value\n";
            for (const Row& r : rows) out << r.name << "," << fmt(r.value) << "\n";
            break;
    }
    return kExitOk;
}

int cmd_grid(const std::string& function, const RangeSpec& re_range, const RangeSpec& im_range,
             double exclusion, const std::string& methods_csv, const std::string& out_path,
             Format format, double tol, std::ostream& out, std::ostream& err) {
    if (format == Format::Text) {
        err << "error: grid output format must be json or csv\n";
        return kExitUsage;
    }
    std::vector<Method> methods;
    std::stringstream ss(methods_csv);
    std::string item;
    try {
        while (std::getline(ss, item, ','))
            if (!item.empty()) methods.push_back(method_from_name(item));
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    xval::GridSpec spec;
    spec.re_min = re_range.lo;
    spec.re_max = re_range.hi;
    spec.re_steps = re_range.steps;
    spec.im_min = im_range.lo;
    spec.im_max = im_range.hi;
    spec.im_steps = im_range.steps;
    spec.pole_exclusion_radius = exclusion;
    xval::SweepReport report;
    try {
        report = xval::grid_sweep(spec, methods,
                                  function == "K" ? xval::GridFunction::K : xval::GridFunction::K1,
                                  tol);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::ofstream file(out_path);
    if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return kExitUsage;
    }
    file << (format == Format::Json ? xval::report_to_json(report) : xval::report_to_csv(report));
    if (!file.good()) {
        err << "error: write to '" << out_path << "' failed\n";
        return kExitUsage;
    }
    double max_diff = 0.0;
    for (const auto& p : report.pairs) max_diff = std::max(max_diff, p.max_abs_diff);
    out << "grid " << function << ": " << report.points.size() << " points, max_abs_diff="
        << fmt(max_diff) << ", residual_max=" << fmt(report.residual_max)
        << ", skipped_points=" << report.skipped_points << " -> " << out_path << "\n";
    return kExitOk;
}

int cmd_selftest(bool quiet, bool corrupt, std::ostream& out) {
    xval::SelfTestOptions opts;
    opts.corrupt_tolerances = corrupt;
    const auto results = xval::run_selftest(opts);
    int failures = 0;
    for (const auto& c : results) {
        if (!c.pass) ++failures;
        if (!quiet) {
            out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  residual=" << fmt(c.residual)
                << " bound=" << fmt(c.bound);
            if (!c.detail.empty()) out << "  (" << c.detail << ")";
            out << "\n";
        }
    }
    if (failures == 0) {
        out << "SELFTEST PASS (" << results.size() << " checks)\n";
        return kExitOk;
    }
    out << "SELFTEST FAIL (" << failures << " of " << results.size() << " checks failed)\n";
    return kExitSelfTest;
}

} // namespace

std::optional<ComplexValue> parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::string num = R"((?:\d+\.?\d*|\.\d+))";
    static const std::regex real_only("^([+-]?" + num + ")$");
    static const std::regex imag_only("^([+-]?" + num + ")i$");
    static const std::regex both("^([+-]?" + num + ")([+-]" + num + ")i$");
    std::smatch m;
    if (std::regex_match(s, m, real_only)) return ComplexValue(std::stod(m[1]), 0.0);
    if (std::regex_match(s, m, imag_only)) return ComplexValue(0.0, std::stod(m[1]));
    if (std::regex_match(s, m, both)) return ComplexValue(std::stod(m[1]), std::stod(m[2]));
    return std::nullopt;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kurepa left-factorial function K(z) and the companion solution K1(z): "
                 "evaluation, principal values, residues, cross-validation sweeps"};
    app.require_subcommand(1);
    app.fallthrough();  // --format may follow the subcommand

    std::string format_s = "text";
    app.add_option("--format", format_s, "output format: text, json or csv")
        ->capture_default_str();

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate K or K1 at a complex point");
    std::string eval_fn, eval_z, eval_method = "auto";
    double eval_tol = kDefaultTol;
    eval->add_option("function", eval_fn, "K or K1")->required()->check(CLI::IsMember({"K", "K1"}));
    eval->add_option("z", eval_z, "complex point: a, bi, a+bi or a-bi")->required();
    eval->add_option("--method", eval_method,
                     "integral, recurrence, series, slavic, incgamma or auto")
        ->capture_default_str();
    eval->add_option("--tol", eval_tol, "absolute tolerance target")->capture_default_str();

    // pv
    auto* pv = app.add_subcommand("pv", "Cauchy principal value at an integer point");
    std::string pv_fn;
    int pv_n = 0;
    pv->add_option("function", pv_fn, "K, K1 or Gamma")
        ->required()
        ->check(CLI::IsMember({"K", "K1", "Gamma"}));
    pv->add_option("n", pv_n, "integer point")->required();

    // seq
    auto* seq = app.add_subcommand("seq", "exact left-factorial sequence K(0)..K(n_max)");
    int seq_n = 0;
    seq->add_option("n_max", seq_n, "0 <= n_max <= 10000")->required();

    // grid
    auto* grid = app.add_subcommand("grid", "evaluate methods over a complex grid, write a report");
    std::string grid_fn, grid_methods = "integral,slavic,incgamma", grid_out;
    std::string grid_re = "0.05:0.95:20", grid_im = "-2:2:20";
    double grid_excl = 0.05, grid_tol = kDefaultTol;
    grid->add_option("function", grid_fn, "K or K1")->required()->check(CLI::IsMember({"K", "K1"}));
    grid->add_option("--re-range", grid_re, "a:b:n sampling of Re z")->capture_default_str();
    grid->add_option("--im-range", grid_im, "a:b:n sampling of Im z")->capture_default_str();
    grid->add_option("--exclusion", grid_excl, "pole exclusion radius")->capture_default_str();
    grid->add_option("--methods", grid_methods, "comma-separated method list")
        ->capture_default_str();
    grid->add_option("--tol", grid_tol, "per-point tolerance")->capture_default_str();
    grid->add_option("--out", grid_out, "output file path")->required();

    // const
    auto* cst = app.add_subcommand("const", "print L1, Ei(1), Ei(1)/e, euler_gamma, 1/e");

    // selftest
    auto* st = app.add_subcommand("selftest", "run the full cross-validation suite");
    bool st_quiet = false, st_corrupt = false;
    st->add_flag("--quiet,-q", st_quiet, "single PASS/FAIL line only");
    st->add_flag("--corrupt-tolerances", st_corrupt)->group("");  // internal test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    Format format;
    try {
        format = parse_format(format_s);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (eval->parsed())
            return cmd_eval(eval_fn, eval_z, eval_method, eval_tol, format, out, err);
        if (pv->parsed()) return cmd_pv(pv_fn, pv_n, format, out);
        if (seq->parsed()) return cmd_seq(seq_n, format, out, err);
        if (grid->parsed())
            return cmd_grid(grid_fn, parse_range(grid_re), parse_range(grid_im), grid_excl,
                            grid_methods, grid_out, format, grid_tol, out, err);
        if (cst->parsed()) return cmd_const(format, out);
        if (st->parsed()) return cmd_selftest(st_quiet, st_corrupt, out);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "error: no subcommand given\n";
    return kExitUsage;
}

} // namespace kurepa::cli
