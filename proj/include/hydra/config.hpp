#pragma once
// Engine configuration: flat key = value files, command line overrides, and
// shape validation before anything runs.

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hydra/scoring.hpp"
#include "hydra/types.hpp"

namespace hydra {

struct EngineConfig {
    // traversal and pruning
    size_t d_max = 3;
    size_t w1 = 100;
    size_t w2 = 20;
    size_t w_max = 3;
    double lambda_sem = 0.7;
    double alpha_cross = 0.7;
    double gamma = 0.80;
    double rho_kg = 1.0;
    double rho_wiki = 0.8;
    double rho_web = 0.7;
    double alpha1 = 1.0 / 3;
    double alpha2 = 1.0 / 3;
    double alpha3 = 1.0 / 3;
    double entity_match = 0.85;        // fusion merge threshold
    double injection_threshold = 0.75;  // text path graph injection floor

    // model settings
    double temperature_explore = 0.4;
    double temperature_decide = 0.0;
    size_t max_tokens = 256;

    // run shape
    uint64_t seed = 0;
    std::string mode = "hydra";  // or "hydra-e" to sample one relation per edge

    // inputs; graph sources fuse in listed order, first file wins ids
    std::vector<std::pair<std::string, std::string>> kg_sources;
    std::string docs_path;
    std::string web_path;
    std::string prompts_dir;
    std::string dataset_path;
    std::string transcript_path;

    PruneConfig prune() const {
        PruneConfig p;
        p.w1 = w1;
        p.w2 = w2;
        p.w_max = w_max;
        p.lambda_sem = lambda_sem;
        p.alpha_cross = alpha_cross;
        p.gamma = gamma;
        p.rho_kg = rho_kg;
        p.rho_wiki = rho_wiki;
        p.rho_web = rho_web;
        p.alpha = {alpha1, alpha2, alpha3};
        return p;
    }

    void validate() const {
        prune().validate();
        if (d_max < 1) throw std::runtime_error("d_max must be at least 1");
        if (mode != "hydra" && mode != "hydra-e")
            throw std::runtime_error("mode must be hydra or hydra-e, got " +
                                     mode);
        auto unit = [](double v, const char* name) {
            if (v < 0.0 || v > 1.0)
                throw std::runtime_error(std::string(name) +
                                         " must lie in [0, 1]");
        };
        unit(gamma, "gamma");
        unit(entity_match, "entity_match");
        unit(injection_threshold, "injection_threshold");
        unit(temperature_explore, "temperature_explore");
        unit(temperature_decide, "temperature_decide");
        if (max_tokens == 0)
            throw std::runtime_error("max_tokens must be positive");
    }

    // Applies one key = value pair; unknown keys are refused so typos
    // surface instead of silently running defaults.
    void apply(const std::string& key, const std::string& value) {
        auto as_size = [&] { return static_cast<size_t>(std::stoull(value)); };
        auto as_double = [&] { return std::stod(value); };
        try {
            if (key == "d_max") d_max = as_size();
            else if (key == "w1") w1 = as_size();
            else if (key == "w2") w2 = as_size();
            else if (key == "w_max") w_max = as_size();
            else if (key == "lambda_sem") lambda_sem = as_double();
            else if (key == "alpha_cross") alpha_cross = as_double();
            else if (key == "gamma") gamma = as_double();
            else if (key == "rho_kg") rho_kg = as_double();
            else if (key == "rho_wiki") rho_wiki = as_double();
            else if (key == "rho_web") rho_web = as_double();
            else if (key == "alpha1") alpha1 = as_double();
            else if (key == "alpha2") alpha2 = as_double();
            else if (key == "alpha3") alpha3 = as_double();
            else if (key == "entity_match") entity_match = as_double();
            else if (key == "injection_threshold")
                injection_threshold = as_double();
            else if (key == "temperature_explore")
                temperature_explore = as_double();
            else if (key == "temperature_decide")
                temperature_decide = as_double();
            else if (key == "max_tokens") max_tokens = as_size();
            else if (key == "seed")
                seed = static_cast<uint64_t>(std::stoull(value));
            else if (key == "mode") mode = value;
            else if (key.rfind("kg.", 0) == 0) {
                std::string name = key.substr(3);
                if (name.empty())
                    throw std::runtime_error("kg source needs a name");
                for (auto& [n, path] : kg_sources) {
                    if (n == name) {
                        path = value;
                        return;
                    }
                }
                kg_sources.emplace_back(name, value);
            }
            else if (key == "docs") docs_path = value;
            else if (key == "web") web_path = value;
            else if (key == "prompts_dir") prompts_dir = value;
            else if (key == "dataset") dataset_path = value;
            else if (key == "transcript") transcript_path = value;
            else
                throw std::runtime_error("unknown config key: " + key);
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("bad value for " + key + ": " + value);
        } catch (const std::out_of_range&) {
            throw std::runtime_error("bad value for " + key + ": " + value);
        }
    }

    static EngineConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config: " + path);
        EngineConfig cfg;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string body = trim(line);
            if (body.empty() || body[0] == '#') continue;
            size_t eq = body.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(path + " line " +
                                         std::to_string(lineno) +
                                         ": expected key = value");
            std::string key = trim(body.substr(0, eq));
            std::string value = trim(body.substr(eq + 1));
            try {
                cfg.apply(key, value);
            } catch (const std::runtime_error& ex) {
                throw std::runtime_error(path + " line " +
                                         std::to_string(lineno) + ": " +
                                         ex.what());
            }
        }
        return cfg;
    }
};

}  // namespace hydra
