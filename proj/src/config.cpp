#include "b1lab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace b1lab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(trim(item)));
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
        if (i) out += ',';
        out += buf;
    }
    return out;
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
    auto u = [&](std::size_t& f) { f = static_cast<std::size_t>(std::stoull(value)); };
    auto d = [&](double& f) { f = std::stod(value); };
    if (key == "N") u(N);
    else if (key == "R") u(R);
    else if (key == "M") u(M);
    else if (key == "agrid_radii") agrid_radii = parse_list(value);
    else if (key == "agrid_angles") u(agrid_angles);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "portrait_R") u(portrait_R);
    else if (key == "portrait_M") u(portrait_M);
    else if (key == "search_R") u(search_R);
    else if (key == "search_M") u(search_M);
    else if (key == "winding_M") u(winding_M);
    else if (key == "blowup_lb") d(blowup_lb);
    else if (key == "coeff_growth") d(coeff_growth);
    else if (key == "c_ig") d(c_ig);
    else if (key == "c_cphi") d(c_cphi);
    else if (key == "cap_cphi") d(cap_cphi);
    else if (key == "tol_quad_norm") d(tol_quad_norm);
    else if (key == "tol_quad_oracle") d(tol_quad_oracle);
    else if (key == "tol_lemma1") d(tol_lemma1);
    else if (key == "tol_chain") d(tol_chain);
    else if (key == "tol_sharp") d(tol_sharp);
    else if (key == "tol_sandwich") d(tol_sandwich);
    else if (key == "tol_intertwine") d(tol_intertwine);
    else if (key == "tol_exact") d(tol_exact);
    else if (key == "tol_triangular") d(tol_triangular);
    else if (key == "tol_neumann") d(tol_neumann);
    else if (key == "tol_search_oracle") d(tol_search_oracle);
    else if (key == "essnorm_ratio") d(essnorm_ratio);
    else if (key == "decay_factor") d(decay_factor);
    else if (key == "equivalence_band") d(equivalence_band);
    else if (key == "hardy_cross") d(hardy_cross);
    else throw std::runtime_error("config: unknown key '" + key + "'");
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not key=value");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::string Config::echo() const {
    std::ostringstream out;
    char buf[64];
    auto put = [&](const char* k, double v) {
        std::snprintf(buf, sizeof(buf), "%s=%.17g\n", k, v);
        out << buf;
    };
    out << "N=" << N << "\nR=" << R << "\nM=" << M << "\n";
    out << "agrid_radii=" << join(agrid_radii) << "\n";
    out << "agrid_angles=" << agrid_angles << "\nseed=" << seed << "\n";
    out << "portrait_R=" << portrait_R << "\nportrait_M=" << portrait_M << "\n";
    out << "search_R=" << search_R << "\nsearch_M=" << search_M << "\n";
    out << "winding_M=" << winding_M << "\n";
    put("blowup_lb", blowup_lb);
    put("coeff_growth", coeff_growth);
    put("c_ig", c_ig);
    put("c_cphi", c_cphi);
    put("cap_cphi", cap_cphi);
    put("tol_quad_norm", tol_quad_norm);
    put("tol_quad_oracle", tol_quad_oracle);
    put("tol_lemma1", tol_lemma1);
    put("tol_chain", tol_chain);
    put("tol_sharp", tol_sharp);
    put("tol_sandwich", tol_sandwich);
    put("tol_intertwine", tol_intertwine);
    put("tol_exact", tol_exact);
    put("tol_triangular", tol_triangular);
    put("tol_neumann", tol_neumann);
    put("tol_search_oracle", tol_search_oracle);
    put("essnorm_ratio", essnorm_ratio);
    put("decay_factor", decay_factor);
    put("equivalence_band", equivalence_band);
    put("hardy_cross", hardy_cross);
    return out.str();
}

}  // namespace b1lab
