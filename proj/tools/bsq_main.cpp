// bsq: bound-state energies of one-dimensional wells by Bohr-Sommerfeld
// quantization, perturbative series, asymptotic fits and a finite-difference
// Schrodinger oracle.

#include "bsq/errors.hpp"
#include "bsq/job.hpp"
#include "bsq/lj_asymptotics.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitPartial = 4;

void apply_env_tolerance(bsq::QuantizerSettings& settings) {
    if (const char* env = std::getenv("BSQ_SEED_TOLERANCE")) {
        try {
            settings.rootTolerance = std::stod(env);
            settings.validate();
        } catch (const std::exception&) {
            throw bsq::ConfigError("BSQ_SEED_TOLERANCE: not a valid tolerance");
        }
    }
}

int emit(const bsq::JobReport& report, const std::string& csvPath,
         const std::string& plotPath) {
    if (!csvPath.empty()) {
        std::ofstream out(csvPath);
        if (!out)
            throw bsq::ConfigError("cannot open '" + csvPath + "' for writing");
        out << bsq::render_csv(report);
    }
    if (!plotPath.empty()) {
        std::ofstream out(plotPath);
        if (!out)
            throw bsq::ConfigError("cannot open '" + plotPath + "' for writing");
        out << bsq::render_plotdata(report);
    }

    switch (report.config.output) {
    case bsq::OutputMode::csv:
        std::cout << bsq::render_csv(report);
        break;
    case bsq::OutputMode::plotdata:
        std::cout << bsq::render_plotdata(report);
        break;
    case bsq::OutputMode::table:
        std::cout << bsq::render_table(report);
        break;
    }

    if (report.empty()) {
        for (const auto& e : report.errors)
            std::cerr << "error: " << e << '\n';
        return kExitNumeric;
    }
    if (report.partial()) {
        for (const auto& e : report.errors)
            std::cerr << "warning: " << e << '\n';
        return kExitPartial;
    }
    return kExitOk;
}

bsq::PotentialSpec potential_from_flags(const std::string& name, double v0, double a,
                                        double omega, double bigA, double bigB, int k,
                                        const std::string& coeffs, double center,
                                        std::optional<double> searchLo,
                                        std::optional<double> searchHi,
                                        const bsq::Constants& constants) {
    using namespace bsq;
    if (name == "harmonic")
        return {Harmonic{omega}, constants};
    if (name == "poschl_teller")
        return {PoschlTeller{v0, a}, constants};
    if (name == "poschl_teller_trig")
        return {PoschlTellerTrig{v0, a}, constants};
    if (name == "morse")
        return {Morse{v0, a}, constants};
    if (name == "rosen_morse")
        return {RosenMorse{bigA, bigB, a}, constants};
    if (name == "lj")
        return {LJFamily{v0, a, k}, constants};
    if (name == "polynomial") {
        std::vector<double> cs;
        std::istringstream in(coeffs);
        std::string piece;
        while (std::getline(in, piece, ','))
            cs.push_back(std::stod(piece));
        if (searchLo && searchHi)
            return {Polynomial{cs, center, *searchLo, *searchHi}, constants};
        return {Polynomial{cs, center}, constants};
    }
    // anything else is an expression in x
    if (!searchLo || !searchHi)
        throw ConfigError("expression potentials need --search-lo and --search-hi");
    return {ExpressionPotential{parse_expression(name), *searchLo, *searchHi}, constants};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound states of 1D potential wells via Bohr-Sommerfeld quantization"};
    app.require_subcommand(1);

    std::string configPath, csvPath, plotPath;
    bool paperStyle = false;

    CLI::App* run = app.add_subcommand("run", "run a job config file");
    run->add_option("config", configPath, "job config (key=value lines)")->required();
    run->add_option("--csv", csvPath, "also write CSV to this path");
    run->add_option("--plotdata", plotPath, "also write plot data to this path");
    run->add_flag("--paper-style", paperStyle, "scaled-integer table formatting");

    CLI::App* table1 = app.add_subcommand(
        "table1", "LJ(12,6) at hbar*w/V0 = 0.03: perturbative vs direct quantization");
    table1->add_option("--csv", csvPath, "also write CSV to this path");
    table1->add_option("--plotdata", plotPath, "also write plot data to this path");
    table1->add_flag("--paper-style", paperStyle, "scaled-integer table formatting");

    CLI::App* table2 = app.add_subcommand(
        "table2", "LJ(12,6) at hbar*w/V0 = 0.03: interpolating fit vs quantization");
    table2->add_option("--csv", csvPath, "also write CSV to this path");
    table2->add_option("--plotdata", plotPath, "also write plot data to this path");
    table2->add_flag("--paper-style", paperStyle, "scaled-integer table formatting");

    CLI::App* levels = app.add_subcommand("levels", "compute levels of one potential");
    std::string potentialName, methodName = "numericBS", nRange = "0..5", coeffs;
    double v0 = 1.0, aParam = 1.0, omega = 1.0, bigA = 1.0, bigB = 0.0, center = 0.0;
    double hbar = 1.0, mass = 1.0;
    int kParam = 6;
    std::optional<double> searchLo, searchHi;
    levels->add_option("--potential", potentialName,
                       "catalog name (harmonic, poschl_teller, poschl_teller_trig, "
                       "morse, rosen_morse, lj, polynomial) or an expression in x")
        ->required();
    levels->add_option("--method", methodName, "perturbative|numericBS|asymptoticFit|oracle|exactClosedForm");
    levels->add_option("--n", nRange, "level range, e.g. 0..5 or 0,1,4 or all-bound");
    levels->add_option("--v0", v0, "well depth V0");
    levels->add_option("--a", aParam, "length/steepness parameter a");
    levels->add_option("--omega", omega, "harmonic frequency");
    levels->add_option("--A", bigA, "Rosen-Morse A");
    levels->add_option("--B", bigB, "Rosen-Morse B");
    levels->add_option("--k", kParam, "LJ family exponent k");
    levels->add_option("--coeffs", coeffs, "polynomial coefficients c0,c1,...");
    levels->add_option("--center", center, "polynomial expansion center");
    levels->add_option("--search-lo", searchLo, "minimum search interval, lower edge");
    levels->add_option("--search-hi", searchHi, "minimum search interval, upper edge");
    levels->add_option("--hbar", hbar, "Planck constant / 2 pi");
    levels->add_option("--mass", mass, "particle mass");
    levels->add_option("--csv", csvPath, "also write CSV to this path");
    levels->add_option("--plotdata", plotPath, "also write plot data to this path");
    levels->add_flag("--paper-style", paperStyle, "scaled-integer table formatting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        bsq::JobConfig cfg;
        if (run->parsed()) {
            std::ifstream in(configPath);
            if (!in)
                throw bsq::ConfigError("cannot read config file '" + configPath + "'");
            std::ostringstream text;
            text << in.rdbuf();
            cfg = bsq::parse_job_config(text.str());
        } else if (table1->parsed()) {
            cfg = bsq::table1_config();
        } else if (table2->parsed()) {
            cfg = bsq::table2_config();
        } else {
            cfg.potential = potential_from_flags(potentialName, v0, aParam, omega, bigA,
                                                 bigB, kParam, coeffs, center, searchLo,
                                                 searchHi, bsq::Constants(hbar, mass));
            bool known = false;
            for (bsq::Method m : {bsq::Method::perturbative, bsq::Method::numericBS,
                                  bsq::Method::asymptoticFit, bsq::Method::oracle,
                                  bsq::Method::exactClosedForm})
                if (methodName == bsq::method_name(m)) {
                    cfg.methods = {m};
                    known = true;
                }
            if (!known)
                throw bsq::ConfigError("unknown method '" + methodName + "'");
            cfg.reference = cfg.methods.front();
            // reuse the job-config level grammar for --n
            std::ostringstream mini;
            mini << "potential.kind=harmonic\npotential.omega=1\nmethods=numericBS\n"
                 << "levels=" << nRange << "\n";
            cfg.levels = bsq::parse_job_config(mini.str()).levels;
        }
        cfg.paperStyle = cfg.paperStyle || paperStyle;
        apply_env_tolerance(cfg.quantizer);

        const bsq::JobReport report = bsq::run_job(cfg);
        return emit(report, csvPath, plotPath);
    } catch (const bsq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const bsq::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const bsq::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
