#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "filtcone/checks.hpp"
#include "filtcone/cone.hpp"

namespace filtcone {

enum class Suite { oracle, cone, quasieq, homotopy_diff, tensor, refilter, reassoc, iterated, cone_equiv, all };

const char* to_string(Suite s) noexcept;
/// Throws std::invalid_argument on an unknown name.
Suite parse_suite(const std::string& name);
/// Instance count used when none is given (for iterated: per value of r).
std::size_t default_count(Suite s) noexcept;

struct CampaignConfig {
    Suite suite = Suite::all;
    /// Instances per suite; nullopt means each suite's default. Zero is rejected.
    std::optional<std::size_t> count;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    std::size_t max_generators = 8;
    std::size_t max_r = 5;
};

struct Failure {
    std::string check;
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    ExtendedReal lhs;
    ExtendedReal rhs;
    std::string detail;
};

struct CheckStats {
    std::string name;
    /// Informational checks are counted but never fail a run.
    bool informational = false;
    std::size_t passes = 0;
    std::size_t vacuous = 0;
    std::size_t unmet = 0;
    std::size_t failures = 0;
    /// Least finite rhs - lhs over passing instances.
    double worst_slack = std::numeric_limits<double>::infinity();
};

struct FixtureResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    Suite suite = Suite::cone;
    std::size_t instances = 0;
    std::vector<CheckStats> checks;
    std::vector<Failure> failures;
    std::vector<FixtureResult> fixtures;
    std::map<std::string, double> metrics;

    /// No failures in non-informational checks or fixtures.
    bool ok() const;
    const CheckStats* find(const std::string& name) const;
};

struct DemoConfig {
    std::size_t k = 3;
    double fiber_beta_lo = 0.0;
    double fiber_beta_hi = 2.0;
    double shift_cap = 1.0;
    double tail_beta_cap = 1.0;
    double fixed_beta_cap = 1.0;
    std::size_t trials = 100;
    std::uint64_t seed = 17;
    /// Seeds inter-factor complexes and shifts; these stay fixed across trials.
    std::uint64_t fixture_seed = 2024;
};

struct DemoTrial {
    std::uint64_t seed = 0;
    ExtendedReal rho;
    double max_fiber_beta = 0.0;
    ExtendedReal bound;
    bool passed = false;
};

struct DemoReport {
    DemoConfig config;
    std::size_t stages = 0;
    std::vector<std::string> attachment_labels;  // A_0 .. A_r
    BoundConstants constants;
    double rho_tilde = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::vector<DemoTrial> trials;
    std::size_t passes = 0;
    std::string caveat;

    bool ok() const { return passes == trials.size(); }
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<SuiteReport> suites;
    std::optional<DemoReport> demo;

    bool ok() const;
};

/// Instances run in parallel; the report is assembled in instance order.
CampaignReport run_campaign(const CampaignConfig& config);
/// Single-threaded reference with identical output.
CampaignReport run_campaign_serial(const CampaignConfig& config);

/// The homotopy_diff suite on its own.
SuiteReport homotopy_diff_probe(std::size_t count, std::uint64_t seed, double tolerance = 1e-9);

DemoReport theorem_demo(const DemoConfig& config);
DemoReport theorem_demo_serial(const DemoConfig& config);

/// (A, B) for a configuration, computed without drawing any fiber.
std::pair<double, double> demo_constants(const DemoConfig& config);

}  // namespace filtcone
