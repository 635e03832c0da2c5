#include "photonq/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Linear-optics experiments compiled to qubit circuits"};
    // gradcheck exposes --h, so the help flag must not claim -h.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    photonq::SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Print the outcome distribution of a setup");
    sim->add_option("file", sim_args.file, "setup file")->required();
    sim->add_option("--backend", sim_args.backend, "qubit (default) or oracle")
        ->check(CLI::IsMember({"qubit", "oracle"}));
    sim->add_option("--steps", sim_args.steps, "product-formula steps (default: file value)");
    sim->add_option("--sweep", sim_args.sweep, "comma-separated step counts, one CSV each")
        ->delimiter(',');
    sim->add_option("--out", sim_args.out_dir, "directory for CSV output");

    photonq::OptimizeArgs opt_args;
    auto* opt = app.add_subcommand("optimize", "Maximize the setup's objective");
    opt->add_option("file", opt_args.file, "setup file")->required();
    opt->add_option("--seeds", opt_args.seeds, "number of restarts (default: file value)");
    opt->add_option("--max-iters", opt_args.max_iters, "iteration cap (default: file value)");
    opt->add_option("--method", opt_args.method, "bfgs or gradient_ascent")
        ->check(CLI::IsMember({"bfgs", "gradient_ascent"}));
    opt->add_option("--out", opt_args.out_dir, "directory for trace CSVs");

    photonq::GradcheckArgs grad_args;
    auto* grad = app.add_subcommand("gradcheck", "Compare analytic and numeric gradients");
    grad->set_help_flag("--help", "print help and exit");
    grad->add_option("file", grad_args.file, "setup file")->required();
    grad->add_option("--h", grad_args.h, "finite-difference step (default 1e-5)");
    grad->add_option("--tol", grad_args.tol, "failure threshold on |delta| (default 1e-5)");

    photonq::SampleArgs sample_args;
    auto* smp = app.add_subcommand("sample", "Draw measurement shots from the final state");
    smp->add_option("file", sample_args.file, "setup file")->required();
    smp->add_option("--shots", sample_args.shots, "shot count (default: file value)");
    smp->add_option("--seed", sample_args.seed, "sampling seed (default: file value)");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) return photonq::cmd_simulate(sim_args, std::cout, std::cerr);
    if (opt->parsed()) return photonq::cmd_optimize(opt_args, std::cout, std::cerr);
    if (grad->parsed()) return photonq::cmd_gradcheck(grad_args, std::cout, std::cerr);
    if (smp->parsed()) return photonq::cmd_sample(sample_args, std::cout, std::cerr);
    return 2;
}
