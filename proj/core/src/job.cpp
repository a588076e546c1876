#include "bsq/job.hpp"

#include "bsq/errors.hpp"
#include "bsq/lj_asymptotics.hpp"
#include "bsq/well_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace bsq {

namespace {

std::string format_g(double v, int significant = 10) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", significant, v);
    return buf;
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::perturbative, Method::numericBS, Method::asymptoticFit,
                     Method::oracle, Method::exactClosedForm})
        if (name == method_name(m))
            return m;
    throw ConfigError("unknown method '" + name + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

LevelSelection parse_levels(const std::string& v) {
    LevelSelection sel;
    if (v == "all-bound") {
        sel.allBound = true;
        return sel;
    }
    for (const std::string& piece : split(v, ',')) {
        const std::string p = trim(piece);
        const auto dots = p.find("..");
        if (dots == std::string::npos) {
            sel.ns.push_back(to_int("levels", p));
        } else {
            const int lo = to_int("levels", p.substr(0, dots));
            const int hi = to_int("levels", p.substr(dots + 2));
            if (hi < lo)
                throw ConfigError("levels: empty range '" + p + "'");
            for (int n = lo; n <= hi; ++n)
                sel.ns.push_back(n);
        }
    }
    if (sel.ns.empty())
        throw ConfigError("levels: no levels selected");
    return sel;
}

struct RawConfig {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) != 0; }
    std::string get(const std::string& k) const {
        const auto it = kv.find(k);
        if (it == kv.end())
            throw ConfigError("missing required key '" + k + "'");
        return it->second;
    }
    std::string get_or(const std::string& k, const std::string& dflt) const {
        const auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
};

PotentialSpec build_potential(const RawConfig& raw) {
    Constants constants(to_double("constants.hbar", raw.get_or("constants.hbar", "1")),
                        to_double("constants.mass", raw.get_or("constants.mass", "1")));
    const std::string kind = raw.get("potential.kind");

    auto num = [&](const char* key) {
        return to_double(key, raw.get(std::string("potential.") + key));
    };

    if (kind == "harmonic")
        return {Harmonic{num("omega")}, constants};
    if (kind == "poschl_teller")
        return {PoschlTeller{num("v0"), num("a")}, constants};
    if (kind == "poschl_teller_trig")
        return {PoschlTellerTrig{num("v0"), num("a")}, constants};
    if (kind == "morse")
        return {Morse{num("v0"), num("a")}, constants};
    if (kind == "rosen_morse")
        return {RosenMorse{num("A"), num("B"), num("a")}, constants};
    if (kind == "lj")
        return {LJFamily{num("v0"), num("a"),
                         to_int("potential.k", raw.get("potential.k"))},
                constants};
    if (kind == "polynomial") {
        std::vector<double> coeffs;
        for (const std::string& c : split(raw.get("potential.coeffs"), ','))
            coeffs.push_back(to_double("potential.coeffs", trim(c)));
        const double center =
            to_double("potential.center", raw.get_or("potential.center", "0"));
        if (raw.has("potential.search_lo") || raw.has("potential.search_hi"))
            return {Polynomial{coeffs, center, num("search_lo"), num("search_hi")},
                    constants};
        return {Polynomial{coeffs, center}, constants};
    }
    if (kind == "expression") {
        if (!raw.has("potential.search_lo") || !raw.has("potential.search_hi"))
            throw ConfigError("expression potentials need potential.search_lo/search_hi");
        try {
            return {ExpressionPotential{parse_expression(raw.get("potential.expr")),
                                        num("search_lo"), num("search_hi")},
                    constants};
        } catch (const ParseError& e) {
            throw ConfigError(std::string("potential.expr: ") + e.what());
        }
    }
    throw ConfigError("unknown potential.kind '" + kind + "'");
}

} // namespace

std::pair<double, std::string> energy_scale(const PotentialSpec& spec) {
    if (const auto* p = std::get_if<Harmonic>(&spec.kind))
        return {spec.constants.hbar * p->omega, "hbar*omega"};
    if (const auto* p = std::get_if<PoschlTeller>(&spec.kind))
        return {p->v0, "V0"};
    if (const auto* p = std::get_if<PoschlTellerTrig>(&spec.kind))
        return {p->v0, "V0"};
    if (const auto* p = std::get_if<Morse>(&spec.kind))
        return {p->v0, "V0"};
    if (const auto* p = std::get_if<RosenMorse>(&spec.kind))
        return {p->A * p->A, "A^2"};
    if (const auto* p = std::get_if<LJFamily>(&spec.kind))
        return {0.25 * p->v0, "V0/4"};
    return {1.0, "1"};
}

JobConfig parse_job_config(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "line " << lineNo << ": expected key=value, got '" << stripped << "'";
            throw ConfigError(os.str());
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key in config");
        if (!raw.kv.emplace(key, value).second)
            throw ConfigError("duplicate key '" + key + "'");
    }

    JobConfig cfg;
    try {
        cfg.potential = build_potential(raw);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    for (const std::string& m : split(raw.get("methods"), ','))
        cfg.methods.push_back(parse_method(trim(m)));
    if (cfg.methods.empty())
        throw ConfigError("at least one method is required");

    cfg.levels = parse_levels(raw.get("levels"));

    const std::string output = raw.get_or("output", "table");
    if (output == "table")
        cfg.output = OutputMode::table;
    else if (output == "csv")
        cfg.output = OutputMode::csv;
    else if (output == "plotdata")
        cfg.output = OutputMode::plotdata;
    else
        throw ConfigError("unknown output mode '" + output + "'");

    if (raw.has("reference"))
        cfg.reference = parse_method(raw.get("reference"));

    if (raw.has("quantizer.root_tolerance"))
        cfg.quantizer.rootTolerance =
            to_double("quantizer.root_tolerance", raw.get("quantizer.root_tolerance"));
    if (raw.has("quantizer.quadrature_points"))
        cfg.quantizer.quadraturePoints =
            to_int("quantizer.quadrature_points", raw.get("quantizer.quadrature_points"));
    if (raw.has("quantizer.max_bisections"))
        cfg.quantizer.maxBisections =
            to_int("quantizer.max_bisections", raw.get("quantizer.max_bisections"));
    try {
        cfg.quantizer.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (raw.has("grid.points") || raw.has("grid.x_min") || raw.has("grid.x_max")) {
        GridSettings g = GridSettings::defaults_for(cfg.potential);
        if (raw.has("grid.x_min")) g.xMin = to_double("grid.x_min", raw.get("grid.x_min"));
        if (raw.has("grid.x_max")) g.xMax = to_double("grid.x_max", raw.get("grid.x_max"));
        if (raw.has("grid.points")) g.points = to_int("grid.points", raw.get("grid.points"));
        try {
            g.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        cfg.grid = g;
    }

    if (raw.has("paper_style"))
        cfg.paperStyle = raw.get("paper_style") == "true";
    if (raw.has("plot_samples"))
        cfg.plotSamples = to_int("plot_samples", raw.get("plot_samples"));
    return cfg;
}

namespace {

std::vector<int> resolve_levels(const JobConfig& cfg) {
    if (!cfg.levels.allBound) {
        std::vector<int> ns = cfg.levels.ns;
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        return ns;
    }
    const LevelCount lc = level_count(cfg.potential); // throws for unbounded spectra
    if (!lc.finite)
        throw ConfigError("levels = all-bound: this well holds infinitely many levels");
    std::vector<int> ns(lc.count);
    for (int i = 0; i < lc.count; ++i)
        ns[i] = i;
    if (ns.empty())
        throw ConfigError("levels = all-bound: the well holds no bound level");
    return ns;
}

} // namespace

JobReport run_job(const JobConfig& cfg) {
    JobReport report;
    report.potential = cfg.potential;
    report.config = cfg;
    const auto [scale, scaleName] = energy_scale(cfg.potential);
    report.energyScale = scale;
    report.scaleName = scaleName;

    std::vector<int> ns;
    try {
        ns = resolve_levels(cfg);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("levels = all-bound: ") + e.what());
    }

    // per-method level computations; a failure is recorded and skipped
    std::map<std::pair<int, int>, double> values; // (method idx, n) -> energy
    auto record_error = [&](Method m, int n, const std::exception& e) {
        std::ostringstream os;
        os << method_name(m) << ": n = " << n << ": " << e.what();
        report.errors.push_back(os.str());
    };

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        const Method m = cfg.methods[mi];
        switch (m) {
        case Method::perturbative: {
            WellExpansion w;
            try {
                w = expand_well(cfg.potential, 4);
            } catch (const Error& e) {
                report.errors.push_back(std::string(method_name(m)) + ": " + e.what());
                continue;
            }
            for (int n : ns) {
                try {
                    values[{int(mi), n}] = perturbative_energy(w, n);
                } catch (const Error& e) {
                    record_error(m, n, e);
                }
            }
            break;
        }
        case Method::numericBS: {
            for (int n : ns) {
                try {
                    values[{int(mi), n}] = quantize(cfg.potential, n, cfg.quantizer).energy;
                } catch (const Error& e) {
                    record_error(m, n, e);
                }
            }
            break;
        }
        case Method::asymptoticFit: {
            try {
                const auto* lj = std::get_if<LJFamily>(&cfg.potential.kind);
                if (!lj)
                    throw NotApplicableError("asymptoticFit: LJ-family potentials only");
                const WellExpansion w = expand_well(cfg.potential, 4);
                const double hw = cfg.potential.constants.hbar * w.omega / lj->v0;
                const double n0 = n0_plus_half(lj->k, hw);
                const FitCoefficients fit = fit_coefficients(lj->k, hw);
                for (int n : ns) {
                    try {
                        values[{int(mi), n}] =
                            0.25 * lj->v0 * fitted_energy(n, n0, fit);
                    } catch (const Error& e) {
                        record_error(m, n, e);
                    }
                }
            } catch (const Error& e) {
                report.errors.push_back(std::string(method_name(m)) + ": " + e.what());
            }
            break;
        }
        case Method::oracle: {
            try {
                const GridSettings grid =
                    cfg.grid ? *cfg.grid : GridSettings::defaults_for(cfg.potential);
                const int want = *std::max_element(ns.begin(), ns.end()) + 1;
                const OracleLevels sol = solve_bound_states(cfg.potential, grid, want);
                for (int n : ns) {
                    if (n < int(sol.levels.size())) {
                        values[{int(mi), n}] = sol.levels[n].energy;
                    } else {
                        std::ostringstream os;
                        os << method_name(m) << ": n = " << n
                           << ": fewer bound states than requested";
                        report.errors.push_back(os.str());
                    }
                }
            } catch (const Error& e) {
                report.errors.push_back(std::string(method_name(m)) + ": " + e.what());
            }
            break;
        }
        case Method::exactClosedForm: {
            for (int n : ns) {
                try {
                    values[{int(mi), n}] = exact_energy(cfg.potential, n);
                } catch (const Error& e) {
                    record_error(m, n, e);
                }
            }
            break;
        }
        }
    }

    // reference energies by n
    std::map<int, double> ref;
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        if (cfg.methods[mi] != cfg.reference)
            continue;
        for (int n : ns) {
            const auto it = values.find({int(mi), n});
            if (it != values.end())
                ref[n] = it->second;
        }
    }

    const double relFloor = 1e-3 * report.energyScale;
    for (int n : ns) {
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            const auto it = values.find({int(mi), n});
            if (it == values.end())
                continue;
            JobReport::Row row;
            row.n = n;
            row.method = cfg.methods[mi];
            row.energy = it->second;
            row.scaled = it->second / report.energyScale;
            const auto rit = ref.find(n);
            if (rit != ref.end()) {
                row.absErr = std::fabs(row.energy - rit->second);
                row.relErr = *row.absErr / std::max(std::fabs(rit->second), relFloor);
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string render_csv(const JobReport& report) {
    std::string out = "n,method,energy,energy_over_scale,abs_err_vs_reference,"
                      "rel_err_vs_reference\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.n);
        out += ',';
        out += method_name(row.method);
        out += ',';
        out += format_g(row.energy);
        out += ',';
        out += format_g(row.scaled);
        out += ',';
        if (row.absErr)
            out += format_g(*row.absErr);
        out += ',';
        if (row.relErr)
            out += format_g(*row.relErr);
        out += '\n';
    }
    return out;
}

std::string render_table(const JobReport& report) {
    const JobConfig& cfg = report.config;
    std::ostringstream os;
    os << "# potential: " << kind_name(report.potential)
       << "   scale: " << report.scaleName << " = " << format_g(report.energyScale)
       << "\n";
    os << "# values: E / (" << report.scaleName << ")";
    if (cfg.paperStyle)
        os << "  x 10^" << cfg.paperScaleDigits;
    os << "\n";

    os << "n";
    for (Method m : cfg.methods)
        os << '\t' << method_name(m);
    os << '\n';

    std::map<int, std::map<int, double>> byLevel; // n -> method idx -> scaled
    for (const auto& row : report.rows) {
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
            if (cfg.methods[mi] == row.method)
                byLevel[row.n][int(mi)] = row.scaled;
    }
    for (const auto& [n, cells] : byLevel) {
        os << n;
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            os << '\t';
            const auto it = cells.find(int(mi));
            if (it == cells.end()) {
                os << "-";
            } else if (cfg.paperStyle) {
                const double scaled =
                    std::round(it->second * std::pow(10.0, cfg.paperScaleDigits));
                char buf[32];
                std::snprintf(buf, sizeof buf, "%0*ld", cfg.paperScaleDigits,
                              std::lround(scaled));
                os << buf;
            } else {
                os << format_g(it->second);
            }
        }
        os << '\n';
    }
    for (const auto& err : report.errors)
        os << "# error: " << err << '\n';
    return os.str();
}

std::string render_plotdata(const JobReport& report) {
    const PotentialSpec& spec = report.potential;
    const GridSettings grid = report.config.grid
                                  ? *report.config.grid
                                  : GridSettings::defaults_for(spec);
    std::ostringstream os;
    os << "# x V(x)\n";
    const int samples = std::max(report.config.plotSamples, 16);
    for (int i = 0; i <= samples; ++i) {
        const double x = grid.xMin + (grid.xMax - grid.xMin) * i / double(samples);
        try {
            os << format_g(x) << ' ' << format_g(evaluate(spec, x)) << '\n';
        } catch (const DomainError&) {
            // skip samples on a wall
        }
    }
    os << "\n# n method energy xLeft xRight\n";
    for (const auto& row : report.rows) {
        os << row.n << ' ' << method_name(row.method) << ' ' << format_g(row.energy);
        try {
            const auto [xl, xr] = turning_points_numeric(spec, row.energy);
            os << ' ' << format_g(xl) << ' ' << format_g(xr);
        } catch (const Error&) {
            os << " nan nan";
        }
        os << '\n';
    }
    return os.str();
}

JobConfig table1_config() {
    JobConfig cfg;
    cfg.potential = lj_spec_for_ratio(6, 0.03);
    cfg.methods = {Method::perturbative, Method::numericBS};
    cfg.levels.ns = {0, 1, 2, 3, 4, 5, 10};
    cfg.reference = Method::numericBS;
    cfg.paperScaleDigits = 3;
    return cfg;
}

JobConfig table2_config() {
    JobConfig cfg;
    cfg.potential = lj_spec_for_ratio(6, 0.03);
    cfg.methods = {Method::numericBS, Method::asymptoticFit};
    cfg.levels.allBound = true;
    cfg.reference = Method::numericBS;
    cfg.paperScaleDigits = 5;
    return cfg;
}

} // namespace bsq
