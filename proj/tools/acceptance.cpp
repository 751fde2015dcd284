// SPDX-License-Identifier: Apache-2.0
//
// Acceptance report: one PASS/FAIL line per criterion.  Criterion 11 drives
// the installed command-line tool as a subprocess, whose path is baked in at
// build time (or given as the first argument).
#include <sys/wait.h>
#include <unistd.h>

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "astkit/astdist.hpp"
#include "astkit/verify.hpp"

namespace v = astkit::verify;
namespace ad = astkit::astdist;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int exit_status(const std::string& cmd)
{
    const int raw = std::system(cmd.c_str());
    if (raw == -1 || !WIFEXITED(raw))
        return -1;
    return WEXITSTATUS(raw);
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');)
        out.push_back(cell);
    return out;
}

// Re-evaluates every row of an eval-cf CSV and compares bit patterns.
Outcome csv_round_trip(const std::string& cli, const std::filesystem::path& dir)
{
    const auto file = dir / "cf_sweep.csv";
    const std::string cmd = "'" + cli + "' eval-cf --alpha 0.3 --nu1 2.5 --nu2 4 --t-min -10 --t-max 10 --steps 1001" +
                            " --format csv --out '" + file.string() + "' 2>/dev/null";
    if (const int s = exit_status(cmd); s != 0)
        return {false, "eval-cf exited with " + std::to_string(s)};
    const auto p = ad::make_params(0.3, 2.5, 4.0);
    std::ifstream in(file);
    std::string line;
    bool header = false;
    long rows = 0;
    long mismatches = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            header = line == "t,re,im";
            if (!header)
                return {false, "unexpected header '" + line + "'"};
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != 3)
            return {false, "malformed row '" + line + "'"};
        const double t = std::strtod(cells[0].c_str(), nullptr);
        const auto z = ad::cf(p, t);
        const bool same = std::bit_cast<std::uint64_t>(z.real()) ==
                              std::bit_cast<std::uint64_t>(std::strtod(cells[1].c_str(), nullptr)) &&
                          std::bit_cast<std::uint64_t>(z.imag()) ==
                              std::bit_cast<std::uint64_t>(std::strtod(cells[2].c_str(), nullptr));
        mismatches += !same;
        ++rows;
    }
    if (rows != 1001)
        return {false, "expected 1001 rows, read " + std::to_string(rows)};
    return {mismatches == 0, std::to_string(rows) + " rows, " + std::to_string(mismatches) + " bit mismatches"};
}

Outcome criterion_11(const std::string& cli)
{
    Outcome o;
    std::string detail;
    const int ok = exit_status("'" + cli + "' verify --tol 1e-6 >/dev/null 2>&1");
    o.pass = ok == 0;
    detail = "verify exit " + std::to_string(ok);

    int caught = 0;
    for (const auto& k : v::kernel_names()) {
        const int s = exit_status("'" + cli + "' verify --tol 1e-6 --perturb 1e-4 --perturb-kernel " + k +
                                  " >/dev/null 2>&1");
        if (s == 2)
            ++caught;
        else
            detail += "; perturbed " + k + " exit " + std::to_string(s);
    }
    o.pass = o.pass && caught == static_cast<int>(v::kernel_names().size());
    detail += "; perturbed kernels caught " + std::to_string(caught) + "/" + std::to_string(v::kernel_names().size());

    const auto dir = std::filesystem::temp_directory_path() / ("astkit_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const Outcome rt = csv_round_trip(cli, dir);
    std::filesystem::remove_all(dir);
    o.pass = o.pass && rt.pass;
    o.detail = detail + "; csv round trip: " + rt.detail;
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : ASTKIT_CLI_PATH;
    const v::Kernels k;
    const v::Options opts;
    // criterion -> (time limit in seconds, check groups)
    using Group = std::function<std::vector<v::CheckRow>()>;
    const std::vector<std::pair<double, Group>> groups = {
        {30.0, [&] { return v::check_sine_vs_oracle(k, opts); }},
        {0.0, [&] { return v::check_sine_closed_forms(k); }},
        {0.0, [&] { return v::check_limit(k); }},
        {0.0, [&] { return v::check_cf_axioms(k); }},
        {120.0, [&] { return v::check_cf_vs_oracle(k, opts); }},
        {0.0, [&] { return v::check_student_t(k); }},
        {0.0, [&] { return v::check_loc_scale(k); }},
        {0.0, [&] { return v::check_pdf(k); }},
        {0.0, [&] { return v::check_seams(k); }},
    };
    std::map<int, Outcome> results;
    for (const auto& [limit, g] : groups) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rows = g();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& r : rows) {
            if (r.criterion == 0)
                continue;
            auto& o = results[r.criterion];
            o.pass = o.pass && r.pass;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s%s max_err=%.3g tol=%.1g n=%d", o.detail.empty() ? "" : "; ",
                          r.id.c_str(), r.max_err, r.tolerance, r.points);
            o.detail += buf;
        }
        if (limit > 0.0) {
            auto& o = results[rows.front().criterion];
            const bool in_time = secs < limit;
            o.pass = o.pass && in_time;
            char buf[80];
            std::snprintf(buf, sizeof buf, "; runtime %.2fs (limit %.0fs)", secs, limit);
            o.detail += buf;
        }
    }
    results[11] = criterion_11(cli);

    bool all = true;
    for (const auto& [id, o] : results) {
        std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
