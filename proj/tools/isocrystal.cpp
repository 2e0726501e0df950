/*
   Copyright 2026 The isocrystal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end. Flags are folded into the JSON job document, which
// goes through the C library unchanged.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isocrystal/isocrystal.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitAssertion = 1;
constexpr int kExitError = 2;

struct Options {
    std::string input;
    std::string charpoly;
    std::vector<std::string> places;
    std::uint64_t q = 3;
    long long precision = 32;
    int degree_bound = 2;
    std::string format = "json";
    std::string out;
    int jobs = 1;
};

std::vector<std::string> split_places(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& r : raw) {
        std::stringstream ss(r);
        std::string item;
        while (std::getline(ss, item, ','))
            if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
    }
    return out;
}

std::string build_job(const Options& o, const CLI::App& cmd) {
    json job = json::object();
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in) throw std::runtime_error("cannot read job file " + o.input);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            job = json::parse(buf.str());
        } catch (const json::parse_error& e) {
            throw std::runtime_error("job file " + o.input + " is not valid JSON: " + e.what());
        }
        if (!job.is_object()) throw std::runtime_error("job file " + o.input + " must hold a JSON object");
    }
    if (cmd.count("--q") || !job.contains("q")) job["q"] = o.q;
    if (cmd.count("--precision")) job["precision"] = o.precision;
    if (cmd.count("--degree-bound")) job["degree_bound"] = o.degree_bound;
    if (cmd.count("--char")) job["char"] = o.charpoly;
    if (cmd.count("--places")) job["places"] = split_places(o.places);
    return job.dump();
}

int emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(o.out, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "error: cannot write " << o.out << "\n";
        return kExitError;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slopes, Newton polygons and characteristic polynomials of tau-modules and Drinfeld modules"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(isoc_version()));
    Options o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"charpoly", "characteristic polynomial of a Drinfeld module, tau-module or given polynomial"},
        {"newton", "Newton polygons of the characteristic polynomial at places"},
        {"slopes", "slopes of a local isocrystal or a localized Drinfeld motive"},
        {"filtration", "slope filtration with generator series"},
        {"factor", "slope factorization of the characteristic polynomial at a degree-one place"},
        {"drinfeld", "full analysis of a Drinfeld module over a finite field"},
        {"compat", "compatible-system sweep of a Drinfeld family over F_q[xi]"},
    };
    for (const auto& [name, help] : commands) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("input", o.input, "JSON job file")->check(CLI::ExistingFile);
        c->add_option("--q", o.q, "size of the constant field F_q")->capture_default_str();
        c->add_option("--precision", o.precision, "z-adic precision N")->check(CLI::Range(1, 4096))->capture_default_str();
        c->add_option("--places,--place", o.places, "comma separated places: inf or monic irreducible polynomials in t");
        c->add_option("--degree-bound", o.degree_bound, "largest degree of swept points")->check(CLI::Range(1, 4))->capture_default_str();
        c->add_option("--char", o.charpoly, "characteristic polynomial in X with coefficients in F_q[t]");
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table", "csv"}))->capture_default_str();
        c->add_option("--out", o.out, "write output to a file");
        c->add_option("--jobs", o.jobs, "worker threads for the sweep")->check(CLI::Range(1, 256))->capture_default_str();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }
    const CLI::App* cmd = app.get_subcommands().front();
    std::string job;
    try {
        job = build_job(o, *cmd);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    isoc_result* res = nullptr;
    if (isoc_run(cmd->get_name().c_str(), job.c_str(), o.jobs, &res) != ISOC_OK) {
        std::cerr << "error: " << isoc_last_error() << "\n";
        return kExitError;
    }
    const std::string text = o.format == "json" ? isoc_result_json(res) : o.format == "table" ? isoc_result_table(res) : isoc_result_csv(res);
    const int failed = isoc_result_assertions_failed(res);
    isoc_result_free(res);
    if (int rc = emit(o, text); rc != 0) return rc;
    if (failed > 0) {
        std::cerr << failed << " assertion(s) failed\n";
        return kExitAssertion;
    }
    return 0;
}
