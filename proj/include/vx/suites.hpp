// Verification suites and machine-readable reports.
//
// A SuiteConfig bundles an engine configuration, a list of named coordinate
// transitions, sample coefficient functions, a seed, and the suites to run.
// `run_suites` executes the requested suites -- optionally on several worker
// threads, each suite on its own deterministic stream -- and merges the
// records into a single report sorted by check id, so the output is
// byte-identical for a fixed configuration and seed regardless of thread
// count.
#pragma once

#include "vx/chart.hpp"
#include "vx/check.hpp"
#include "vx/engine.hpp"
#include "vx/verma.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vx {

struct SuiteConfig {
    EngineConfig engine;                   // reference engine
    std::vector<std::string> chart_names;  // parallel to `charts`
    std::vector<ChartTransition> charts;
    std::vector<std::string> sample_texts; // reparsed at each dimension in play
    std::uint64_t seed = 42;
    int degree_bound = 4;                  // cap for seeded random states
    std::vector<std::string> suites;       // subset of all_suite_names()
    VermaConfig verma;                     // module used by the "verma" suite
};

/// Canonical suite order: axioms, gluing, cocycle, omega, relations,
/// equivariance, verma.
const std::vector<std::string>& all_suite_names();

/// Parse an engine block {"N": ..., "algebra": ..., "level": ...} on top of
/// the given defaults; `algebra` is "sl2", "sl3", or an inline algebra
/// object, and `level` is an integer or a rational string.
EngineConfig engine_config_from_json_text(const std::string& text,
                                          EngineConfig base = EngineConfig{});

/// Parse a full run configuration (see README for the JSON shape).
/// Throws std::invalid_argument on malformed input, unknown suite names,
/// invalid transitions, or an invalid engine block.
SuiteConfig suite_config_from_json_text(const std::string& text);

/// Parse the samples at a given number of variables, silently dropping the
/// ones that only make sense in higher dimension. Never returns an empty
/// list (the constant 1 is added as a fallback).
std::vector<RatFunc> samples_at(const SuiteConfig& cfg, int n);

/// Run one suite; `name` must come from all_suite_names(). Check ids are
/// returned already prefixed with the suite name.
std::vector<CheckResult> run_suite(const SuiteConfig& cfg, const std::string& name);

struct ReportEntry {
    std::string suite;
    CheckResult check;
};

/// Run every configured suite on up to `jobs` worker threads; results are
/// merged and sorted by check id.
std::vector<ReportEntry> run_suites(const SuiteConfig& cfg, int jobs = 1);

bool report_all_pass(const std::vector<ReportEntry>& entries);

/// Human-readable report: one PASS/FAIL line per check (failures include
/// both printed sides) followed by per-suite and overall summaries.
std::string report_text(const std::vector<ReportEntry>& entries);

/// Machine-readable report: a JSON array of
/// {suite, check_id, ref, pass, lhs, rhs} objects in report order.
std::string report_json(const std::vector<ReportEntry>& entries);

} // namespace vx
