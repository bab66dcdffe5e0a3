#include "covertaoi/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covertaoi {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

void ScenarioConfig::validate() const {
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("ScenarioConfig: ") + what); };
    if (num_users < 1) fail("num_users must be >= 1");
    if (!(bandwidth_hz > 0)) fail("bandwidth_hz must be > 0");
    if (!(packet_size_bits > 0)) fail("packet_size_bits must be > 0");
    if (!(aoc_s > 0)) fail("aoc_s must be > 0");
    if (!(measurement_time_s > 0) || !(measurement_time_s < aoc_s))
        fail("measurement_time_s must satisfy 0 < delta < tau");
    if (!(covert_budget > 0) || !(covert_budget < 1)) fail("covert_budget must be in (0,1)");
    if (!(user_noise_w > 0)) fail("user_noise_w must be > 0");
    if (!(willie_noise_nominal_w > 0)) fail("willie_noise_nominal_w must be > 0");
    if (!(noise_uncertainty > 1)) fail("noise_uncertainty must be > 1 (linear)");
    if (!(pathloss_exponent > 0)) fail("pathloss_exponent must be > 0");
    if (!(power_budget_w > 0)) fail("power_budget_w must be > 0");
    if (!(area_radius_m > 0)) fail("area_radius_m must be > 0");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "num_users") cfg.num_users = std::stoi(val);
            else if (key == "bandwidth_hz") cfg.bandwidth_hz = std::stod(val);
            else if (key == "packet_size_bits") cfg.packet_size_bits = std::stod(val);
            else if (key == "aoc_s") cfg.aoc_s = std::stod(val);
            else if (key == "measurement_time_s") cfg.measurement_time_s = std::stod(val);
            else if (key == "covert_budget") cfg.covert_budget = std::stod(val);
            else if (key == "user_noise_w") cfg.user_noise_w = std::stod(val);
            else if (key == "user_noise_db") cfg.user_noise_w = db_to_linear(std::stod(val));
            else if (key == "willie_noise_nominal_w") cfg.willie_noise_nominal_w = std::stod(val);
            else if (key == "willie_noise_nominal_db") cfg.willie_noise_nominal_w = db_to_linear(std::stod(val));
            else if (key == "noise_uncertainty") cfg.noise_uncertainty = std::stod(val);
            else if (key == "noise_uncertainty_db") cfg.noise_uncertainty = db_to_linear(std::stod(val));
            else if (key == "pathloss_exponent") cfg.pathloss_exponent = std::stod(val);
            else if (key == "power_budget_w") cfg.power_budget_w = std::stod(val);
            else if (key == "area_radius_m") cfg.area_radius_m = std::stod(val);
            else if (key == "rng_seed") cfg.rng_seed = std::stoull(val);
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace covertaoi
