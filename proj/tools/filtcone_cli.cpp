#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "filtcone/cone.hpp"
#include "filtcone/invariants.hpp"
#include "filtcone/io.hpp"
#include "filtcone/persistence.hpp"
#include "filtcone/verifier.hpp"

namespace fs = std::filesystem;
using namespace filtcone;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kViolation = 2;
constexpr int kUsage = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FilteredComplex load_valid(const std::string& path)
{
    auto c = io::complex_from_json(io::read_file(path));
    require_valid(c);
    return c;
}

// "-" writes to stdout, any other path to a file, empty does nothing.
void emit(const std::string& out, const io::Json& doc)
{
    if (out.empty()) return;
    if (out == "-") std::cout << doc.dump(2) << '\n';
    else io::write_file(out, doc);
}

std::string bar_text(const Bar& b) { return "[" + format_decimal(b.birth) + ", " + b.death.to_string() + ")"; }

void print_barcode(const Barcode& bc)
{
    if (bc.bars.empty()) std::cout << "(no bars)\n";
    for (const auto& b : bc.bars) std::cout << bar_text(b) << '\n';
}

bool print_checks(const std::vector<NamedCheck>& checks)
{
    bool ok = true;
    for (const auto& c : checks) {
        std::cout << "  " << c.name << ": " << to_string(c.result.outcome) << " (" << c.result.lhs.to_string()
                  << " vs " << c.result.rhs.to_string() << ")\n";
        ok = ok && !c.result.failed();
    }
    return ok;
}

void print_suite(const SuiteReport& s)
{
    std::cout << "suite " << to_string(s.suite) << ": " << s.instances << " instances, " << (s.ok() ? "ok" : "FAILED")
              << '\n';
    for (const auto& c : s.checks) {
        std::cout << "  " << c.name << ": pass " << c.passes << ", vacuous " << c.vacuous << ", unmet " << c.unmet
                  << ", fail " << c.failures;
        if (c.informational) std::cout << " (informational)";
        if (std::isfinite(c.worst_slack)) std::cout << ", worst slack " << format_decimal(c.worst_slack);
        std::cout << '\n';
    }
    for (const auto& f : s.fixtures)
        std::cout << "  fixture " << f.name << ": " << (f.passed ? "pass" : "FAIL " + f.detail) << '\n';
    for (const auto& [k, v] : s.metrics) std::cout << "  " << k << " = " << format_decimal(v) << '\n';
    std::size_t shown = 0;
    for (const auto& f : s.failures) {
        if (shown++ == 10) {
            std::cout << "  ... " << s.failures.size() - 10 << " more failures\n";
            break;
        }
        std::cout << "  failure " << f.check << " instance " << f.instance << " seed " << f.seed << ": "
                  << f.lhs.to_string() << " vs " << f.rhs.to_string() << (f.detail.empty() ? "" : " " + f.detail)
                  << '\n';
    }
}

void print_demo(const DemoReport& d)
{
    std::cout << "demo k=" << d.config.k << ": " << d.stages << " stages, A = " << format_decimal(d.a)
              << ", B = " << format_decimal(d.b) << ", " << d.passes << "/" << d.trials.size() << " trials pass\n";
    std::cout << "  constants a_r = " << format_decimal(d.constants.a) << ", b_r = " << format_decimal(d.constants.b)
              << ", e_r = " << format_decimal(d.constants.e) << '\n';
    std::cout << "  " << d.caveat << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Filtered chain complexes over F2: barcodes, invariants, cones and randomized checks"};
    app.require_subcommand(1);
    std::string out;

    std::string file;
    auto* validate = app.add_subcommand("validate", "Check the complex axioms of a complex file");
    validate->add_option("file", file, "complex JSON")->required();

    auto* bc = app.add_subcommand("barcode", "Print the barcode of a complex");
    bc->add_option("file", file, "complex JSON")->required();
    bc->add_option("--out", out, "write JSON to a file, or - for stdout");

    auto* inv = app.add_subcommand("invariants", "Print sigma+, sigma-, rho and beta");
    inv->add_option("file", file, "complex JSON")->required();
    inv->add_option("--out", out, "write JSON to a file, or - for stdout");

    std::string map_file;
    std::optional<double> shift;
    auto* cone = app.add_subcommand("cone", "Build the filtered mapping cone of a map");
    cone->add_option("--map", map_file, "map JSON")->required();
    cone->add_option("--shift", shift, "cone shift (default: the map's declared shift)");
    cone->add_option("--out", out, "write the cone as JSON to a file, or - for stdout");

    std::string file_b;
    auto* tensor = app.add_subcommand("tensor", "Tensor product of two complexes");
    tensor->add_option("a", file, "first complex JSON")->required();
    tensor->add_option("b", file_b, "second complex JSON")->required();
    tensor->add_option("--out", out, "write the product as JSON to a file, or - for stdout");

    auto* reassoc = app.add_subcommand("reassoc", "Compare [E -> [F -> G]] with [[E -> F] -> G]");
    reassoc->add_option("spec", file, "reassociation spec JSON")->required();
    reassoc->add_option("--out", out, "write JSON to a file, or - for stdout");

    std::string suite_name = "all";
    std::optional<std::size_t> count;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    bool serial = false;
    auto* verify = app.add_subcommand("verify", "Run a randomized verification campaign");
    verify->add_option("--suite", suite_name, "oracle|cone|quasieq|homotopy_diff|tensor|refilter|reassoc|iterated|"
                                              "cone_equiv|all");
    verify->add_option("--count", count, "instances per suite (default: the suite's own count)");
    verify->add_option("--seed", seed, "campaign seed");
    verify->add_option("--tol", tol, "tolerance on finite comparisons");
    verify->add_flag("--serial", serial, "use the single-threaded reference loop");
    verify->add_option("--out", out, "write the JSON report to a file, or - for stdout");

    DemoConfig demo_cfg;
    auto* demo = app.add_subcommand("demo", "Run the synthetic iterated-cone bound demo");
    demo->add_option("--k", demo_cfg.k, "number of fiber factors");
    demo->add_option("--trials", demo_cfg.trials, "number of trials");
    demo->add_option("--seed", demo_cfg.seed, "trial seed");
    demo->add_option("--tail-cap", demo_cfg.tail_beta_cap, "boundary depth cap of the acyclic tail");
    demo->add_option("--fixture-seed", demo_cfg.fixture_seed, "seed of the fixed factors and shifts");
    demo->add_flag("--serial", serial, "use the single-threaded reference loop");
    demo->add_option("--out", out, "write the JSON report to a file, or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    // Human-readable text goes to stderr when stdout carries JSON.
    std::streambuf* saved = nullptr;
    if (out == "-") saved = std::cout.rdbuf(std::cerr.rdbuf());
    auto restore = [&] {
        if (saved) std::cout.rdbuf(saved);
    };

    try {
        int code = kOk;
        io::Json doc;
        if (*validate) {
            const auto c = io::complex_from_json(io::read_file(file));
            const auto report = validate_complex(c);
            if (report.ok()) {
                std::cout << "ok\n";
            } else {
                for (const auto& v : report.violations) std::cerr << v << '\n';
                code = kInvalid;
            }
        } else if (*bc) {
            const auto b = barcode(load_valid(file));
            print_barcode(b);
            doc = {{"barcode", io::to_json(b)}};
        } else if (*inv) {
            const auto p = profile(load_valid(file));
            std::cout << io::profile_line(p) << '\n';
            doc = io::to_json(p);
        } else if (*cone) {
            const auto f = io::map_from_json(io::read_file(map_file), fs::path(map_file).parent_path());
            const auto c = mapping_cone({f, shift.value_or(f.shift)});
            print_barcode(barcode(c));
            std::cout << io::profile_line(profile(c)) << '\n';
            doc = io::to_json(c);
        } else if (*tensor) {
            const auto t = tensor_product(load_valid(file), load_valid(file_b));
            print_barcode(barcode(t));
            std::cout << io::profile_line(profile(t)) << '\n';
            doc = io::to_json(t);
        } else if (*reassoc) {
            const auto spec = io::reassoc_spec_from_json(io::read_file(file), fs::path(file).parent_path());
            const auto r = reassociate(spec.e, spec.inner, spec.g, spec.s_g);
            std::cout << "[E -> [F -> G]]: " << io::profile_line(r.right_profile) << '\n';
            std::cout << "[[E -> F] -> G]: " << io::profile_line(r.left_profile) << '\n';
            std::cout << "g' shift " << format_decimal(r.g_prime_shift) << ", identity shift "
                      << format_decimal(r.identity_shift) << '\n';
            if (!print_checks(r.checks)) code = kViolation;
            doc = io::to_json(r);
        } else if (*verify) {
            CampaignConfig cfg;
            try {
                cfg.suite = parse_suite(suite_name);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (count && *count == 0) throw UsageError("--count must be at least 1");
            if (!(tol > 0)) throw UsageError("--tol must be positive");
            cfg.count = count;
            cfg.seed = seed;
            cfg.tolerance = tol;
            const auto start = std::chrono::steady_clock::now();
            const auto report = serial ? run_campaign_serial(cfg) : run_campaign(cfg);
            const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
            for (const auto& s : report.suites) print_suite(s);
            if (report.demo) print_demo(*report.demo);
            std::cout << (report.ok() ? "all checks passed" : "VIOLATIONS FOUND") << " in " << took.count() << " s\n";
            if (!report.ok()) code = kViolation;
            doc = io::to_json(report);
        } else if (*demo) {
            if (demo_cfg.k == 0) throw UsageError("--k must be at least 1");
            const auto report = serial ? theorem_demo_serial(demo_cfg) : theorem_demo(demo_cfg);
            print_demo(report);
            for (const auto& t : report.trials)
                if (!t.passed)
                    std::cout << "  trial seed " << t.seed << ": rho " << t.rho.to_string() << " > bound "
                              << t.bound.to_string() << '\n';
            if (!report.ok()) code = kViolation;
            doc = io::to_json(report);
        }
        restore();
        emit(out, doc);
        return code;
    } catch (const UsageError& e) {
        restore();
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidInput& e) {
        restore();
        std::cerr << "error: " << e.what() << '\n';
        for (std::size_t i = 1; i < e.violations().size(); ++i) std::cerr << "  " << e.violations()[i] << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        restore();
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
}
