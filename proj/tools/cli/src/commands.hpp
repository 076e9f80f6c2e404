#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"
#include "phantom/analysis/experiment.hpp"
#include "phantom/spectral/pseudospectrum.hpp"

namespace phantom::cli {

struct RunConfig {
    std::string command;
    std::string backend = "float";
    unsigned precision = 256;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct ModelArgs {
    std::string model = "obc";
    int n = 40;
    std::optional<int> q;
    std::string delta, tau, sigma;
    std::string mu;
    std::optional<int> j;
    std::optional<std::size_t> t_max;
    std::string pair = "otoc";
    std::optional<double> threshold;

    ModelParams params(Boundary b) const;
    ModelParams params() const;
    json to_json() const;
};

struct GridArgs {
    double eps = 1e-5;
    GridSpec grid;
    bool fourier = true;
};

struct WalkArgs {
    std::size_t m = 30;
    std::uint64_t trials = 1000000;
    std::size_t t_max = 20;
};

struct FigureArgs {
    int number = 1;
    std::string sizes;
    std::string js;
    std::string panel = "a";
};

/// Series of one experiment: t, value, excess, lambda_eff.
Output series_command(Boundary b, PairKind kind, const ModelArgs& m, const RunConfig& rc);
Output jordan_command(const ModelArgs& m, const RunConfig& rc);
Output walk_command(const WalkArgs& w, const ModelArgs& m, const RunConfig& rc);
Output spectrum_command(const ModelArgs& m, const RunConfig& rc);
Output pseudospectrum_command(const ModelArgs& m, const GridArgs& g, const RunConfig& rc);
Output rates_command(const ModelArgs& m, std::size_t window, const RunConfig& rc);
Output figure_command(const FigureArgs& f, const ModelArgs& m, const GridArgs& g, const WalkArgs& w,
                      const RunConfig& rc);

// shared helpers

json base_meta(const RunConfig& rc, json config);

struct SeriesData {
    std::vector<double> value;
    std::vector<double> excess;
    RateProfile profile;
};

SeriesData run_series(const Experiment& e, std::size_t t_max, const RunConfig& rc);
json references_json(const References& r);
json optional_number(std::optional<double> x);
std::vector<int> parse_int_list(const std::string& text);

} // namespace phantom::cli
