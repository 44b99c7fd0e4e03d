#ifndef DDFEM_CONFIG_HPP
#define DDFEM_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "ddfem/errors.hpp"
#include "ddfem/solver.hpp"

namespace ddfem {

// Run description: example preset plus overrides. All quantities are SI
// internally; values may carry a Pa/kPa/MPa suffix in config files.
struct RunConfig {
    std::string example = "2";
    int refinements = 7;
    double youngs = 100e6;  // Pa
    double poisson = 0.15;
    std::vector<double> betas = {-200.0, -50.0, 0.0, 50.0, 200.0};
    double traction = 1e4;  // f_u, Pa
    SolverConfig solver;
    std::string output_dir = "out";

    void validate() const {
        if (!(youngs > 0.0)) throw ValidationError("E", "E must be positive");
        if (!(poisson > -1.0 && poisson < 0.5))
            throw ValidationError("nu", "nu must lie in (-1, 0.5)");
        if (betas.empty()) throw ValidationError("beta", "beta list must be nonempty");
        if (refinements < 1 || refinements > 12)
            throw ValidationError("refinements", "refinements must be in [1, 12]");
        if (!(solver.newton_tol >= 0.0)) throw ValidationError("tol", "tol must be >= 0");
        if (solver.max_newton <= 0)
            throw ValidationError("max_newton", "max_newton must be positive");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline double parse_pressure(const std::string& text, int line) {
    std::string value = trim(text);
    double scale = 1.0;
    auto ends_with = [&](const std::string& suffix) {
        return value.size() > suffix.size() &&
               value.compare(value.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("MPa")) {
        scale = 1e6;
        value = trim(value.substr(0, value.size() - 3));
    } else if (ends_with("kPa")) {
        scale = 1e3;
        value = trim(value.substr(0, value.size() - 3));
    } else if (ends_with("Pa")) {
        value = trim(value.substr(0, value.size() - 2));
    }
    size_t used = 0;
    double parsed;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "cannot parse number '" + text + "'");
    }
    if (used != value.size()) throw ParseError(line, "trailing junk in '" + text + "'");
    return parsed * scale;
}

inline double parse_number(const std::string& text, int line) {
    return parse_pressure(text, line);
}

inline int parse_int(const std::string& text, int line) {
    const double v = parse_number(text, line);
    if (v != std::floor(v)) throw ParseError(line, "expected integer, got '" + text + "'");
    return static_cast<int>(v);
}

inline std::vector<double> parse_list(const std::string& text, int line) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_number(item, line));
    return values;
}

} // namespace detail

// key = value lines, '#' comments, sections [mesh] [material] [solver]
// [bc] [output]. An empty file yields the Example 2 defaults.
inline RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "mesh" && section != "material" && section != "solver" &&
                section != "bc" && section != "output")
                throw ParseError(line_no, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(line_no, "expected key = value");

        if (key == "example") config.example = value;
        else if (key == "refinements") config.refinements = detail::parse_int(value, line_no);
        else if (key == "E") config.youngs = detail::parse_pressure(value, line_no);
        else if (key == "nu") config.poisson = detail::parse_number(value, line_no);
        else if (key == "beta") config.betas = detail::parse_list(value, line_no);
        else if (key == "f_u") config.traction = detail::parse_pressure(value, line_no);
        else if (key == "tol") config.solver.newton_tol = detail::parse_number(value, line_no);
        else if (key == "max_newton") config.solver.max_newton = detail::parse_int(value, line_no);
        else if (key == "max_line_search")
            config.solver.max_line_search = detail::parse_int(value, line_no);
        else if (key == "dir") config.output_dir = value;
        else throw ParseError(line_no, "unknown key '" + key + "'");
    }
    config.validate();
    return config;
}

} // namespace ddfem

#endif
