// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <ostream>
#include <thread>
#include <utility>

#include "astkit/astdist.hpp"
#include "astkit/errors.hpp"
#include "astkit/sinetransform.hpp"
#include "astkit/verify.hpp"

#ifndef ASTKIT_VERSION
#define ASTKIT_VERSION "0.0.0"
#endif

namespace astkit::cli {

namespace ad = astkit::astdist;
namespace st = astkit::sinetransform;

double Grid::at(long i) const
{
    if (steps == 1 || i == 0)
        return min;
    if (i == steps - 1)
        return max;
    return min + (max - min) * (static_cast<double>(i) / static_cast<double>(steps - 1));
}

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

constexpr long kMaxSteps = 10'000'000;

const char* command_name(Command c)
{
    switch (c) {
    case Command::eval_cf:
        return "eval-cf";
    case Command::eval_pdf:
        return "eval-pdf";
    case Command::eval_sin_integral:
        return "eval-sin-integral";
    case Command::eval_limit:
        return "eval-limit";
    case Command::verify:
        return "verify";
    }
    return "";
}

[[noreturn]] void usage(const std::string& flag, const std::string& what)
{
    throw UsageError(flag + ": " + what);
}

void require_finite(const std::string& flag, double v)
{
    if (!std::isfinite(v))
        usage(flag, "must be finite");
}

void validate_dist(const EvalConfig& c)
{
    if (!std::isfinite(c.alpha) || !(c.alpha > 0.0 && c.alpha < 1.0))
        usage("--alpha", "alpha must be in (0,1)");
    if (!std::isfinite(c.nu1) || !(c.nu1 > 0.0))
        usage("--nu1", "nu1 must be finite and > 0");
    if (!std::isfinite(c.nu2) || !(c.nu2 > 0.0))
        usage("--nu2", "nu2 must be finite and > 0");
    if (c.mu)
        require_finite("--mu", *c.mu);
    if (c.sigma && (!std::isfinite(*c.sigma) || !(*c.sigma > 0.0)))
        usage("--sigma", "sigma must be finite and > 0");
}

void validate_grid(const EvalConfig& c, const std::string& prefix)
{
    require_finite("--" + prefix + "-min", c.grid.min);
    require_finite("--" + prefix + "-max", c.grid.max);
    if (c.grid.min > c.grid.max)
        usage("--" + prefix + "-max", "must not be below --" + prefix + "-min");
    if (c.grid.steps < 1 || c.grid.steps > kMaxSteps)
        usage("--steps", "must be in [1, " + std::to_string(kMaxSteps) + "]");
}

int parse_threads(const char* env)
{
    if (env == nullptr || *env == '\0')
        return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(env, &end, 10);
    if (errno != 0 || *end != '\0' || v < 1 || v > 4096)
        usage("ASTKIT_THREADS", "must be a positive integer");
    return static_cast<int>(v);
}

void add_output(CLI::App* sub, EvalConfig& c)
{
    const std::map<std::string, Format> formats = {{"csv", Format::csv}, {"json", Format::json}};
    sub->add_option("--format", c.format, "Output format")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--out", c.out_path, "Write records to this file instead of stdout");
}

void add_dist(CLI::App* sub, EvalConfig& c)
{
    sub->add_option("--alpha", c.alpha, "Skewness in (0,1)")->required();
    sub->add_option("--nu1", c.nu1, "Left tail degrees of freedom")->required();
    sub->add_option("--nu2", c.nu2, "Right tail degrees of freedom")->required();
    sub->add_option("--mu", c.mu, "Location (selects the location-scale form)");
    sub->add_option("--sigma", c.sigma, "Scale (selects the location-scale form)");
}

void add_grid(CLI::App* sub, EvalConfig& c, const std::string& var)
{
    sub->add_option("--" + var + "-min", c.grid.min, "Grid start")->required();
    sub->add_option("--" + var + "-max", c.grid.max, "Grid end (inclusive)")->required();
    sub->add_option("--steps", c.grid.steps, "Number of grid points")->capture_default_str();
}

}  // namespace

EvalConfig parse_args(const std::vector<std::string>& args, const char* threads_env)
{
    EvalConfig c;
    c.grid.steps = 101;
    CLI::App app{"Asymmetric Student-t distribution: characteristic function, density and sine integrals", "astkit"};
    app.require_subcommand(1, 1);

    auto* cf = app.add_subcommand("eval-cf", "Characteristic function on a t grid: rows t, re, im");
    add_dist(cf, c);
    add_grid(cf, c, "t");
    add_output(cf, c);

    auto* pdf = app.add_subcommand("eval-pdf", "Density on an x grid: rows x, pdf");
    add_dist(pdf, c);
    add_grid(pdf, c, "x");
    add_output(pdf, c);

    auto* sine = app.add_subcommand(
        "eval-sin-integral", "int_0^inf sin(a x)/(b^2+x^2)^rho dx on an a grid: rows rho-or-n, a, b, value, warning");
    auto* rho = sine->add_option("--rho", c.rho, "Exponent rho > 0 (integers within 1e-6 use the integer form)");
    auto* n_sine = sine->add_option("--n", c.n, "Integer exponent n >= 1");
    rho->excludes(n_sine);
    sine->add_option("--b", c.b, "Scale b > 0")->capture_default_str();
    add_grid(sine, c, "a");
    add_output(sine, c);

    auto* limit = app.add_subcommand("eval-limit", "Bessel-Struve limit at integer order on an x grid: rows n, x, value");
    limit->add_option("--n", c.n, "Order n >= 1")->required();
    add_grid(limit, c, "x");
    add_output(limit, c);

    auto* verify = app.add_subcommand("verify", "Run the acceptance sweep: rows criterion, check, max_err, tolerance, pass");
    verify->add_option("--tol", c.tol, "Cap on the oracle-comparison tolerances, in [1e-12, 1e-3]")->capture_default_str();
    add_output(verify, c);
    verify->add_option("--perturb", c.perturb)->group("");
    verify->add_option("--perturb-kernel", c.perturb_kernel)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (cf->parsed()) {
        c.command = Command::eval_cf;
        validate_dist(c);
        validate_grid(c, "t");
    } else if (pdf->parsed()) {
        c.command = Command::eval_pdf;
        validate_dist(c);
        validate_grid(c, "x");
    } else if (sine->parsed()) {
        c.command = Command::eval_sin_integral;
        if (!c.rho && !c.n)
            usage("--rho", "one of --rho or --n is required");
        if (c.rho && (!std::isfinite(*c.rho) || !(*c.rho > 0.0)))
            usage("--rho", "rho must be finite and > 0");
        if (c.n && (*c.n < 1 || *c.n > st::kMaxOrder))
            usage("--n", "n must be in [1, " + std::to_string(st::kMaxOrder) + "]");
        if (!std::isfinite(c.b) || !(c.b > 0.0))
            usage("--b", "b must be finite and > 0");
        validate_grid(c, "a");
        if (c.grid.min < 0.0)
            usage("--a-min", "a must be >= 0");
    } else if (limit->parsed()) {
        c.command = Command::eval_limit;
        if (*c.n < 1 || *c.n > st::kMaxOrder)
            usage("--n", "n must be in [1, " + std::to_string(st::kMaxOrder) + "]");
        validate_grid(c, "x");
        if (!(c.grid.min > 0.0))
            usage("--x-min", "x must be > 0");
    } else {
        c.command = Command::verify;
        if (!(c.tol >= 1e-12 && c.tol <= 1e-3))
            usage("--tol", "tol must be in [1e-12, 1e-3]");
        require_finite("--perturb", c.perturb);
        const auto& names = verify::kernel_names();
        if (c.perturb_kernel != "all" && std::find(names.begin(), names.end(), c.perturb_kernel) == names.end())
            usage("--perturb-kernel", "unknown kernel '" + c.perturb_kernel + "'");
    }
    c.threads = parse_threads(threads_env);
    return c;
}

namespace {

using Row = std::vector<double>;

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers; results
/// stay in index order.  The exception of the lowest failing index wins, so
/// failures are reported deterministically.
std::vector<Row> parallel_rows(long count, int threads, const std::function<Row(long)>& fn)
{
    std::vector<Row> rows(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(rows.size());
    std::atomic<long> next{0};
    auto worker = [&] {
        for (long i; (i = next++) < count;) {
            try {
                rows[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    const long n = std::clamp<long>(threads, 1, std::max<long>(count, 1));
    std::vector<std::future<void>> pool;
    for (long i = 1; i < n; ++i)
        pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : pool)
        f.get();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return rows;
}

struct Table {
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<Row> rows;
    long flagged = 0;
};

void add_param(Table& t, const std::string& key, double v) { t.params.emplace_back(key, format_real(v)); }

void add_dist_params(Table& t, const EvalConfig& c)
{
    add_param(t, "alpha", c.alpha);
    add_param(t, "nu1", c.nu1);
    add_param(t, "nu2", c.nu2);
    if (c.loc_scale()) {
        add_param(t, "mu", c.mu.value_or(0.0));
        add_param(t, "sigma", c.sigma.value_or(1.0));
    }
}

void add_grid_params(Table& t, const EvalConfig& c, const std::string& var)
{
    add_param(t, var + "_min", c.grid.min);
    add_param(t, var + "_max", c.grid.max);
    t.params.emplace_back("steps", std::to_string(c.grid.steps));
}

Table eval_cf(const EvalConfig& c)
{
    Table t;
    add_dist_params(t, c);
    add_grid_params(t, c, "t");
    t.columns = {"t", "re", "im"};
    const auto base = ad::make_params(c.alpha, c.nu1, c.nu2);
    const auto ls = ad::make_loc_scale(base, c.mu.value_or(0.0), c.sigma.value_or(1.0));
    std::atomic<long> flagged{0};
    t.rows = parallel_rows(c.grid.steps, c.threads, [&](long i) {
        const double x = c.grid.at(i);
        if (!c.loc_scale()) {
            const auto e = ad::cf_checked(base, x);
            flagged += e.lossy;
            return Row{x, e.value.real(), e.value.imag()};
        }
        flagged += ad::cf_checked(base, ls.sigma * base.b_const() * x).lossy;
        const auto v = ad::cf_loc_scale(ls, x);
        return Row{x, v.real(), v.imag()};
    });
    t.flagged = flagged;
    return t;
}

Table eval_pdf(const EvalConfig& c)
{
    Table t;
    add_dist_params(t, c);
    add_grid_params(t, c, "x");
    t.columns = {"x", "pdf"};
    const auto base = ad::make_params(c.alpha, c.nu1, c.nu2);
    const auto ls = ad::make_loc_scale(base, c.mu.value_or(0.0), c.sigma.value_or(1.0));
    t.rows = parallel_rows(c.grid.steps, c.threads, [&](long i) {
        const double x = c.grid.at(i);
        return Row{x, c.loc_scale() ? ad::pdf_loc_scale(ls, x) : ad::pdf(base, x)};
    });
    return t;
}

Table eval_sine(const EvalConfig& c)
{
    Table t;
    if (c.n)
        t.params.emplace_back("n", std::to_string(*c.n));
    else
        add_param(t, "rho", *c.rho);
    add_param(t, "b", c.b);
    add_grid_params(t, c, "a");
    t.columns = {c.n ? "n" : "rho", "a", "b", "value", "warning"};
    const double order = c.n ? static_cast<double>(*c.n) : *c.rho;
    std::atomic<long> flagged{0};
    t.rows = parallel_rows(c.grid.steps, c.threads, [&](long i) {
        const double a = c.grid.at(i);
        const auto e = c.n ? st::sine_integral_int_checked(*c.n, a, c.b) : st::sine_integral_checked(*c.rho, a, c.b);
        flagged += e.lossy;
        return Row{order, a, c.b, e.value, e.lossy ? 1.0 : 0.0};
    });
    t.flagged = flagged;
    return t;
}

Table eval_limit(const EvalConfig& c)
{
    Table t;
    t.params.emplace_back("n", std::to_string(*c.n));
    add_grid_params(t, c, "x");
    t.columns = {"n", "x", "value"};
    std::atomic<long> flagged{0};
    t.rows = parallel_rows(c.grid.steps, c.threads, [&](long i) {
        const double x = c.grid.at(i);
        const auto e = st::bessel_struve_limit_checked(*c.n, x);
        flagged += e.lossy;
        return Row{static_cast<double>(*c.n), x, e.value};
    });
    t.flagged = flagged;
    return t;
}

void write_table(const EvalConfig& c, const Table& t, std::ostream& out)
{
    if (c.format == Format::json) {
        nlohmann::ordered_json meta;
        meta["command"] = command_name(c.command);
        meta["version"] = ASTKIT_VERSION;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : t.params)
            params[k] = nlohmann::ordered_json::parse(v);
        meta["params"] = params;
        meta["columns"] = t.columns;
        nlohmann::ordered_json doc;
        doc["meta"] = meta;
        doc["rows"] = t.rows;
        out << doc.dump() << '\n';
        return;
    }
    out << "# astkit " << ASTKIT_VERSION << ' ' << command_name(c.command) << '\n';
    for (const auto& [k, v] : t.params)
        out << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "," : "") << format_real(r[i]);
        out << '\n';
    }
}

int run_verify(const EvalConfig& c, std::ostream& out, std::ostream& err)
{
    verify::Kernels k;
    if (c.perturb != 0.0)
        verify::perturb(k, c.perturb_kernel, c.perturb);
    const auto rows = verify::run_all(k, {c.tol, c.threads});
    long failed = 0;
    for (const auto& r : rows)
        failed += !r.pass;

    if (c.format == Format::json) {
        nlohmann::ordered_json meta;
        meta["command"] = "verify";
        meta["version"] = ASTKIT_VERSION;
        meta["params"] = {{"tol", c.tol}};
        if (c.perturb != 0.0) {
            meta["params"]["perturb"] = c.perturb;
            meta["params"]["perturb_kernel"] = c.perturb_kernel;
        }
        meta["columns"] = {"criterion", "check", "max_err", "tolerance", "pass", "points"};
        nlohmann::ordered_json doc;
        doc["meta"] = meta;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows)
            doc["rows"].push_back({r.criterion, r.id, r.max_err, r.tolerance, r.pass, r.points});
        out << doc.dump() << '\n';
    } else {
        out << "# astkit " << ASTKIT_VERSION << " verify\n# tol=" << format_real(c.tol) << '\n';
        if (c.perturb != 0.0)
            out << "# perturb=" << format_real(c.perturb) << "\n# perturb_kernel=" << c.perturb_kernel << '\n';
        out << "criterion,check,max_err,tolerance,pass,points\n";
        for (const auto& r : rows)
            out << r.criterion << ',' << r.id << ',' << format_real(r.max_err) << ',' << format_real(r.tolerance) << ','
                << (r.pass ? "pass" : "fail") << ',' << r.points << '\n';
    }
    err << "verify: " << rows.size() << " checks, " << failed << " failed\n";
    return failed ? kExitVerifyFailed : kExitOk;
}

}  // namespace

int run(const EvalConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        Table t;
        switch (c.command) {
        case Command::verify:
            return run_verify(c, out, err);
        case Command::eval_cf:
            t = eval_cf(c);
            break;
        case Command::eval_pdf:
            t = eval_pdf(c);
            break;
        case Command::eval_sin_integral:
            t = eval_sine(c);
            break;
        case Command::eval_limit:
            t = eval_limit(c);
            break;
        }
        write_table(c, t, out);
        if (t.flagged)
            err << "warning: " << t.flagged << " of " << t.rows.size()
                << " points carry an accuracy-loss flag (estimated error above threshold)\n";
        return kExitOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int main_entry(const std::vector<std::string>& args, const char* threads_env, std::ostream& out, std::ostream& err)
{
    EvalConfig c;
    try {
        c = parse_args(args, threads_env);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }
    if (!c.out_path)
        return run(c, out, err);
    std::ofstream file(*c.out_path);
    if (!file) {
        err << "usage error: --out: cannot open '" << *c.out_path << "' for writing\n";
        return kExitUsage;
    }
    const int status = run(c, file, err);
    file.close();
    if (!file) {
        err << "error: writing '" << *c.out_path << "' failed\n";
        return kExitNumerical;
    }
    return status;
}

}  // namespace astkit::cli
