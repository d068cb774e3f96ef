#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atcalc/cli_run.hpp"

/* Subcommand layout mirrors atc::run commands one to one.  Each subcommand
   fills the shared RunConfig; the first parsed subcommand wins. */
int main(int argc, char** argv) {
    CLI::App app{"exact calculator for J+ filtered sutured complexes"};
    app.require_subcommand(1);

    atc::RunConfig cfg;

    auto add_common = [&](CLI::App* sub, std::size_t n_inputs) {
        sub->add_option("input", cfg.inputs, "input JSON file(s)")
            ->required()
            ->expected(int(n_inputs));
        sub->add_option("--output", cfg.output, "report format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        return sub;
    };
    auto add_at_opts = [&](CLI::App* sub) {
        sub->add_option("--cap", cfg.cap, "depth cap for the AT search")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--exact", cfg.exact, "resolve undetermined AT over F2[u]");
    };

    add_common(app.add_subcommand("validate", "check a diagram, fixture, or open book"), 1);
    add_common(app.add_subcommand("generators", "list generators with cycle counts"), 1);
    add_common(app.add_subcommand("disks", "tabulate index 1 disks with J+"), 1);
    auto* at = add_common(app.add_subcommand("at", "algebraic torsion of the contact class"), 1);
    add_at_opts(at);
    auto* pages = add_common(app.add_subcommand("pages", "page dimension table E^r_p"), 1);
    pages->add_option("--rmax", cfg.r_max, "largest page index r")->check(CLI::NonNegativeNumber);
    pages->add_option("--pmax", cfg.p_max, "largest filtration level p")
        ->check(CLI::NonNegativeNumber);
    auto* glue = add_common(app.add_subcommand("glue", "verify a gluing: sub super map"), 3);
    add_at_opts(glue);

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    return atc::run(cfg, std::cout);
}
