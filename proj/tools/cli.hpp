// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  parse_args validates everything up front, so run
// only fails on numerical trouble.
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace astkit::cli {

enum class Command { eval_cf, eval_pdf, eval_sin_integral, eval_limit, verify };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitNumerical = 3;

/// Inclusive grid; steps == 1 evaluates at min only.
struct Grid {
    double min = 0.0;
    double max = 0.0;
    long steps = 1;

    double at(long i) const;
};

struct EvalConfig {
    Command command = Command::verify;
    // distribution
    double alpha = 0.5;
    double nu1 = 1.0;
    double nu2 = 1.0;
    std::optional<double> mu;
    std::optional<double> sigma;
    // sine integral and limit
    std::optional<double> rho;
    std::optional<long> n;
    double b = 1.0;

    Grid grid;
    Format format = Format::csv;
    double tol = 1e-6;
    std::optional<std::string> out_path;
    int threads = 1;

    // mutation testing: scale one kernel (or "all") by 1 + perturb
    double perturb = 0.0;
    std::string perturb_kernel = "all";

    bool loc_scale() const { return mu.has_value() || sigma.has_value(); }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown for --help; carries the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments exclude the program name.  `threads_env` is the value of
/// ASTKIT_THREADS, if set.
EvalConfig parse_args(const std::vector<std::string>& args, const char* threads_env = nullptr);

/// Emits records to `out` and diagnostics to `err`; returns the exit status.
int run(const EvalConfig& config, std::ostream& out, std::ostream& err);

/// parse_args then run, with --out handling and the exit-status mapping.
int main_entry(const std::vector<std::string>& args, const char* threads_env, std::ostream& out,
               std::ostream& err);

/// Seventeen significant digits, which round-trips every finite binary64 value.
std::string format_real(double v);

}  // namespace astkit::cli
