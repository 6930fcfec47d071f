// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtomo/cli.hpp"

namespace {

struct RawOptions {
    std::vector<std::string> ineqs;
    int n = 0;
    std::vector<int> shape;
    std::vector<double> q;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::string input;
    std::string output;
    std::string format;
    std::string unitary = "haar";
    bool pad = false;
    int rank = 0;
    std::size_t partners = 20;
    std::string demo;
};

void add_common(CLI::App *sub, RawOptions &o, bool with_ineq) {
    if (with_ineq) {
        sub->add_option("--ineq", o.ineqs,
                        "inequality: sub-tomo, sub-quantum, ssa-tomo, mixed, sumform-a1, nosig (comma list allowed)")
            ->delimiter(',');
    }
    sub->add_option("--N", o.n, "state dimension")->check(CLI::PositiveNumber);
    sub->add_option("--shape", o.shape, "factor dimensions, e.g. 2,2,2")->delimiter(',');
    sub->add_option("--q", o.q, "Tsallis q values (>= 1), comma separated")->delimiter(',');
    sub->add_option("--trials", o.trials, "number of sampled trials");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "pass tolerance on slack / deviation");
    sub->add_option("--input", o.input, "density matrix JSON {\"n\", \"re\", \"im\"}");
    sub->add_option("--output", o.output, "write reports to FILE instead of stdout");
    sub->add_option("--format", o.format, "json | csv (demo also accepts text)");
    sub->add_option("--unitary", o.unitary, "haar | identity")->check(CLI::IsMember({"haar", "identity"}));
    sub->add_option("--rank", o.rank, "rank of sampled states (0 = random per trial)");
    sub->add_option("--partners", o.partners, "partner unitaries per no-signaling check");
    sub->add_flag("--pad", o.pad, "zero-pad the state up to the shape total");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qtomo: tomographic Tsallis entropy inequalities and no-signaling checks"};
    app.require_subcommand(1);
    RawOptions o;

    auto *verify = app.add_subcommand("verify", "check one inequality over sampled or given states");
    add_common(verify, o, true);
    auto *sweep = app.add_subcommand("sweep", "q grid x trials sweep, CSV by default");
    add_common(sweep, o, true);
    auto *nosignal = app.add_subcommand("nosignal", "no-signaling identities on a bipartite shape");
    add_common(nosignal, o, false);
    auto *demo = app.add_subcommand("demo", "spin 5/2 and spin 7/2 reference constructions");
    add_common(demo, o, false);
    demo->add_option("which", o.demo, "j52 | j72")->required()->check(CLI::IsMember({"j52", "j72"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return qtomo::cli::kExitError;
    }

    qtomo::cli::Config config;
    CLI::App *chosen = app.get_subcommands().front();
    config.command = chosen->get_name();
    try {
        for (const auto &name : o.ineqs) config.inequalities.push_back(qtomo::parse_inequality(name));
        if (chosen->count("--format")) config.format = qtomo::cli::parse_format(o.format);
    } catch (const qtomo::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return qtomo::cli::kExitError;
    }
    if (chosen->count("--N")) config.n = o.n;
    config.shape = o.shape;
    config.q = o.q;
    if (chosen->count("--trials")) config.trials = o.trials;
    config.seed = o.seed;
    if (chosen->count("--tol")) config.tolerance = o.tol;
    if (!o.input.empty()) config.input = o.input;
    if (!o.output.empty()) config.output = o.output;
    config.pad = o.pad;
    config.rank = o.rank;
    config.partners = o.partners;
    config.unitaries = o.unitary == "identity" ? qtomo::UnitaryMode::Identity : qtomo::UnitaryMode::Haar;
    config.demo = o.demo;
    return qtomo::cli::run_command(config, std::cout, std::cerr);
}
