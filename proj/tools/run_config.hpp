#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "patchring/config.hpp"
#include "patchring/error.hpp"
#include "patchring/scalar.hpp"

namespace patchring::cli {

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"rings", "split", "intersect", "cartan", "kummer", "certificate"};
    return names;
}

struct RunConfig {
    std::string field = "rationals";
    std::vector<std::string> centers{"0", "1", "2"};
    int precision = 16;
    int i = 2;
    int j = 1;
    int k = 3;
    unsigned q = 2;
    unsigned q_prime = 2;
    std::uint64_t seed = 42;
    std::vector<std::string> suites{"all"};
    std::string output;
    /// Number of random cases per suite; for "certificate" the number of norm-law samples.
    std::map<std::string, int> cases{{"rings", 20},  {"split", 50},  {"intersect", 50},
                                     {"cartan", 6},  {"kummer", 6},  {"certificate", 50}};
    bool tamper_certificate = false;

    /// The requested suites in canonical order, with "all" expanded.
    std::vector<std::string> selected_suites() const
    {
        std::set<std::string> want(suites.begin(), suites.end());
        std::vector<std::string> out;
        for (const auto& s : suite_names())
            if (want.count("all") || want.count(s))
                out.push_back(s);
        return out;
    }
};

inline Scalar parse_rational(const std::string& text)
{
    try {
        mpq_class v(text, 10);
        if (v.get_den() == 0)
            throw config_error("center '" + text + "' has a zero denominator");
        v.canonicalize();
        return Scalar(v);
    } catch (const std::invalid_argument&) {
        throw config_error("center '" + text + "' is not a rational number p/q");
    }
}

/// Rejects unknown suite names, bad precision and bad indices; centers are checked by Configuration.
inline void validate(const RunConfig& rc)
{
    for (const auto& s : rc.suites) {
        bool known = s == "all";
        for (const auto& n : suite_names())
            known = known || s == n;
        if (!known)
            throw config_error("unknown suite '" + s + "'");
    }
    if (rc.suites.empty())
        throw config_error("no suites requested");
    if (rc.precision < 4)
        throw config_error("precision must be at least 4");
    if (rc.centers.empty())
        throw config_error("at least one center is required");
    const int n = static_cast<int>(rc.centers.size());
    if (rc.i < 0 || rc.i >= n || rc.j < 0 || rc.j >= n)
        throw config_error("scenario indices i, j must lie in 0.." + std::to_string(n - 1));
    for (const auto& [name, count] : rc.cases) {
        bool known = false;
        for (const auto& s : suite_names())
            known = known || s == name;
        if (!known)
            throw config_error("unknown suite '" + name + "' in cases");
        if (count < 0)
            throw config_error("case count for '" + name + "' must be non-negative");
    }
}

inline ConfigPtr make_configuration(const RunConfig& rc)
{
    std::vector<Scalar> centers;
    for (const auto& c : rc.centers)
        centers.push_back(parse_rational(c));
    return Configuration::make(FieldDescriptor::parse(rc.field), centers, rc.precision);
}

/// Reads the JSON config file; keys mirror RunConfig, centers are strings "p/q".
inline RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object())
        throw config_error("config file must hold a JSON object");

    RunConfig rc;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "field")
                rc.field = value.get<std::string>();
            else if (key == "centers") {
                rc.centers.clear();
                for (const auto& c : value)
                    rc.centers.push_back(c.is_string() ? c.get<std::string>() : c.dump());
            } else if (key == "precision")
                rc.precision = value.get<int>();
            else if (key == "i")
                rc.i = value.get<int>();
            else if (key == "j")
                rc.j = value.get<int>();
            else if (key == "k")
                rc.k = value.get<int>();
            else if (key == "q")
                rc.q = value.get<unsigned>();
            else if (key == "q_prime")
                rc.q_prime = value.get<unsigned>();
            else if (key == "seed")
                rc.seed = value.get<std::uint64_t>();
            else if (key == "suites")
                rc.suites = value.get<std::vector<std::string>>();
            else if (key == "output")
                rc.output = value.get<std::string>();
            else if (key == "cases")
                for (const auto& [name, count] : value.items())
                    rc.cases[name] = count.get<int>();
            else
                throw config_error("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config value has the wrong type: ") + e.what());
    }
    return rc;
}

inline nlohmann::json to_json(const RunConfig& rc)
{
    return {{"field", rc.field},   {"centers", rc.centers}, {"precision", rc.precision},
            {"i", rc.i},           {"j", rc.j},             {"k", rc.k},
            {"q", rc.q},           {"q_prime", rc.q_prime}, {"seed", rc.seed},
            {"suites", rc.selected_suites()},               {"cases", rc.cases},
            {"tamper_certificate", rc.tamper_certificate}};
}

} // namespace patchring::cli
