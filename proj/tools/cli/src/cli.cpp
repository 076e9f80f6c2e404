#include "phantom/cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "phantom/errors.hpp"

namespace phantom::cli {

namespace {

struct Options {
    RunConfig run;
    ModelArgs model;
    GridArgs grid;
    WalkArgs walk;
    FigureArgs figure;
    std::string format = "csv";
    std::string output;
    std::size_t window = 10;
    std::size_t points = 0;
};

void add_run_options(CLI::App* sub, Options& o)
{
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--precision", o.run.precision, "Binary precision of the float backend in bits")
        ->check(CLI::Range(53u, 100000u));
    sub->add_option("--backend", o.run.backend, "Arithmetic backend")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--seed", o.run.seed, "Seed for random vectors and Monte Carlo");
    sub->add_option("--workers", o.run.workers, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--output,-o", o.output, "Output file (relative paths resolve against $PHANTOM_OUTPUT_DIR)");
}

void add_rate_options(CLI::App* sub, Options& o)
{
    sub->add_option("--q", o.model.q, "Local dimension q (integer >= 2)");
    sub->add_option("--delta", o.model.delta, "Explicit stay weight, e.g. 8/25");
    sub->add_option("--tau", o.model.tau, "Explicit superdiagonal weight");
    sub->add_option("--sigma", o.model.sigma, "Explicit subdiagonal weight");
}

void add_model_options(CLI::App* sub, Options& o, bool with_model)
{
    sub->add_option("--n", o.model.n, "System size")->check(CLI::Range(1, 100000));
    add_rate_options(sub, o);
    sub->add_option("--t-max", o.model.t_max, "Last time step");
    if (with_model)
        sub->add_option("--model", o.model.model, "Model")->check(CLI::IsMember({"obc", "pbc", "markov", "jordan"}));
}

void add_grid_options(CLI::App* sub, Options& o)
{
    sub->add_option("--eps", o.grid.eps, "Pseudospectrum level")->check(CLI::PositiveNumber);
    sub->add_option("--re-min", o.grid.grid.re_min);
    sub->add_option("--re-max", o.grid.grid.re_max);
    sub->add_option("--im-min", o.grid.grid.im_min);
    sub->add_option("--im-max", o.grid.grid.im_max);
    sub->add_option("--points", o.points, "Grid points per axis")->check(CLI::Range(2u, 5001u));
}

std::filesystem::path resolve_output(const std::string& name)
{
    std::filesystem::path p(name);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("PHANTOM_OUTPUT_DIR"); dir && *dir)
            p = std::filesystem::path(dir) / p;
    }
    return p;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Phantom eigenvalue experiments: transfer matrix iteration, spectra and pseudospectra", "phantom"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    auto* obc = app.add_subcommand("obc-otoc", "OTOC series of the open chain");
    add_model_options(obc, o, false);
    obc->add_option("--j", o.model.j, "Target site");
    obc->add_option("--pair", o.model.pair, "Vector pair")->check(CLI::IsMember({"otoc", "random"}));
    obc->add_option("--threshold", o.model.threshold, "Transition threshold for t_c");

    auto* pbc = app.add_subcommand("pbc-otoc", "OTOC series of the periodic chain");
    add_model_options(pbc, o, false);
    pbc->add_option("--j", o.model.j, "Target site");
    pbc->add_option("--pair", o.model.pair, "Vector pair")->check(CLI::IsMember({"otoc", "random"}));
    pbc->add_option("--threshold", o.model.threshold, "Transition threshold for t_c");

    auto* walk = app.add_subcommand("random-walk", "Monte Carlo left-bath absorption against the Catalan sum");
    add_rate_options(walk, o);
    walk->add_option("--m", o.walk.m, "Bulk sites")->check(CLI::Range(1u, 100000u));
    walk->add_option("--trials", o.walk.trials, "Monte Carlo trials")->check(CLI::Range(1ull, 1000000000ull));
    walk->add_option("--t-max", o.walk.t_max, "Last time step");

    auto* jordan = app.add_subcommand("jordan", "Two-diagonal Jordan model with p_k = mu^{-(k-1)}");
    add_model_options(jordan, o, false);
    jordan->add_option("--mu", o.model.mu, "Localization mu");

    auto* rescaled = app.add_subcommand("rescaled", "Open chain with p_k = mu^{-k}, v = e_1");
    add_model_options(rescaled, o, false);
    rescaled->add_option("--mu", o.model.mu, "Localization mu")->required();
    rescaled->add_option("--threshold", o.model.threshold, "Transition threshold for t_c");

    auto* spectrum = app.add_subcommand("spectrum", "Analytic eigenvalues");
    add_model_options(spectrum, o, true);

    auto* pseudo = app.add_subcommand("pseudospectrum", "sigma_min(zI - T) on a grid");
    add_model_options(pseudo, o, true);
    add_grid_options(pseudo, o);
    pseudo->add_option("--mu", o.model.mu, "Rescale the bulk by mu (obc, jordan)");
    pseudo->add_flag("!--direct", o.grid.fourier, "Scan the PBC bulk directly instead of its Fourier blocks");

    auto* rates = app.add_subcommand("rates", "Reference rates, plateau, t_c and ordering verdict");
    add_model_options(rates, o, true);
    rates->add_option("--pair", o.model.pair, "Vector pair")->check(CLI::IsMember({"otoc", "random", "exp"}));
    rates->add_option("--mu", o.model.mu, "Localization mu for exp pairs");
    rates->add_option("--j", o.model.j, "Target site");
    rates->add_option("--threshold", o.model.threshold, "Transition threshold for t_c");
    rates->add_option("--window", o.window, "Plateau window")->check(CLI::Range(5u, 10000u));

    auto* figure = app.add_subcommand("figure", "Dataset behind a figure (1..8)");
    figure->add_option("number", o.figure.number, "Figure number")->required()->check(CLI::Range(1, 8));
    add_model_options(figure, o, false);
    add_grid_options(figure, o);
    figure->add_option("--mu", o.model.mu, "Localization mu (figures 4, 7)");
    figure->add_option("--sizes", o.figure.sizes, "Comma separated system sizes");
    figure->add_option("--js", o.figure.js, "Comma separated target sites (figure 2)");
    figure->add_option("--panel", o.figure.panel, "Panel (figure 4)")->check(CLI::IsMember({"a", "b"}));
    figure->add_option("--threshold", o.model.threshold, "Transition threshold for t_c");
    figure->add_option("--m", o.walk.m, "Bulk sites (figure 5)");
    figure->add_option("--trials", o.walk.trials, "Monte Carlo trials (figure 5)");

    for (auto* sub : {obc, pbc, walk, jordan, rescaled, spectrum, pseudo, rates, figure})
        add_run_options(sub, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }
    if (o.points) {
        o.grid.grid.re_points = o.points;
        o.grid.grid.im_points = o.points;
    }

    Output result;
    try {
        RunConfig& rc = o.run;
        if (*obc) {
            rc.command = "obc-otoc";
            result = series_command(Boundary::obc, parse_pair_kind(o.model.pair), o.model, rc);
        } else if (*pbc) {
            rc.command = "pbc-otoc";
            result = series_command(Boundary::pbc, parse_pair_kind(o.model.pair), o.model, rc);
        } else if (*walk) {
            rc.command = "random-walk";
            result = walk_command(o.walk, o.model, rc);
        } else if (*jordan) {
            rc.command = "jordan";
            o.model.n = jordan->count("--n") ? o.model.n : 30;
            result = jordan_command(o.model, rc);
        } else if (*rescaled) {
            rc.command = "rescaled";
            result = series_command(Boundary::obc, PairKind::exp_localized, o.model, rc);
        } else if (*spectrum) {
            rc.command = "spectrum";
            result = spectrum_command(o.model, rc);
        } else if (*pseudo) {
            rc.command = "pseudospectrum";
            result = pseudospectrum_command(o.model, o.grid, rc);
        } else if (*rates) {
            rc.command = "rates";
            result = rates_command(o.model, o.window, rc);
        } else {
            rc.command = "figure";
            result = figure_command(o.figure, o.model, o.grid, o.walk, rc);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << " (estimate " << e.estimate() << ")\n";
        return ExitCode::numerical;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
        return ExitCode::numerical;
    } catch (const EstimationError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return ExitCode::numerical;
    }

    std::ostringstream text;
    if (o.format == "json")
        write_json(result, text);
    else
        write_csv(result, text);

    if (o.output.empty()) {
        out << text.str();
        return ExitCode::ok;
    }
    const auto path = resolve_output(o.output);
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream file(path, std::ios::binary);
    file << text.str();
    if (!file) {
        err << "error: cannot write " << path.string() << '\n';
        return ExitCode::io_failure;
    }
    return ExitCode::ok;
}

} // namespace phantom::cli
