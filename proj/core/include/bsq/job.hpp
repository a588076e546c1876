#pragma once

#include "bsq/action.hpp"
#include "bsq/schrodinger.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bsq {

/// Which levels a job computes: an explicit list or everything bound.
struct LevelSelection {
    bool allBound = false;
    std::vector<int> ns;
};

enum class OutputMode { table, csv, plotdata };

struct JobConfig {
    PotentialSpec potential{Harmonic{1.0}, Constants{}};
    std::vector<Method> methods;
    LevelSelection levels;
    OutputMode output = OutputMode::table;
    Method reference = Method::numericBS;
    QuantizerSettings quantizer{};
    std::optional<GridSettings> grid; // oracle override
    bool paperStyle = false;
    int paperScaleDigits = 5; // paper-style prints round(value * 10^digits)
    int plotSamples = 400;
};

/// Parse the flat key=value job format (dotted sections, '#' comments).
/// Grammar documented in the README. Throws ConfigError.
JobConfig parse_job_config(const std::string& text);

struct JobReport {
    struct Row {
        int n = 0;
        Method method = Method::numericBS;
        double energy = 0.0;
        double scaled = 0.0; // energy / energyScale
        std::optional<double> absErr;
        std::optional<double> relErr;
    };
    std::vector<Row> rows;
    std::vector<std::string> errors; // "<method>: <message>", one per failure
    double energyScale = 1.0;
    std::string scaleName;
    PotentialSpec potential{Harmonic{1.0}, Constants{}};
    JobConfig config;

    bool partial() const { return !errors.empty(); }
    bool empty() const { return rows.empty(); }
};

/// Run every requested (method, level) pair; failures are recorded per
/// method and do not stop the other methods.
JobReport run_job(const JobConfig& config);

std::string render_table(const JobReport& report);
std::string render_csv(const JobReport& report);
std::string render_plotdata(const JobReport& report);

/// Built-in reproductions: perturbative vs direct quantization for the
/// LJ(12,6) well at hbar*w/V0 = 0.03 (levels 0..5 and 10), and the
/// interpolating fit vs direct quantization over every bound level.
JobConfig table1_config();
JobConfig table2_config();

/// Natural energy denominator used for the scaled output column.
std::pair<double, std::string> energy_scale(const PotentialSpec& spec);

} // namespace bsq
