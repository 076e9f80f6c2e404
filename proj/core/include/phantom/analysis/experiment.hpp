#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "phantom/analysis/rates.hpp"
#include "phantom/transfer/matrix.hpp"
#include "phantom/transfer/vectors.hpp"

namespace phantom {

/// otoc: the physical pair of the model (j = 1 unless set).
/// random_stochastic: physical p with the absorbing component zeroed and a
///   seeded stochastic v.
/// exp_localized: p_k = mu^{-k}, v = e_1.
enum class PairKind { otoc, random_stochastic, exp_localized };

std::string_view pair_kind_name(PairKind k);
PairKind parse_pair_kind(std::string_view name);

struct Experiment {
    ModelParams params;
    PairKind kind = PairKind::otoc;
    std::uint64_t seed = 1;
    TransferMatrix<Rational> matrix;
    VectorPair<Rational> pair;
};

/// Builds the matrix and vector pair. For the Markov walk n is the number of
/// bulk sites; for Jordan it is the dimension.
Experiment make_experiment(const ModelParams& params, PairKind kind, std::uint64_t seed = 1,
                           PbcSinkRule rule = PbcSinkRule::column_stochastic);

/// Analytic lambda_2, lambda_ps and (for exp_localized pairs) lambda(mu).
References reference_rates(const ModelParams& params, PairKind kind);

enum class Ordering { equal_low, equal_high, strict, violated };
std::string_view ordering_name(Ordering o);

/// equal_low / equal_high when lambda_ph is within `tol` of lambda_2 /
/// lambda_ps, strict when strictly between with margin `tol`.
Ordering classify(double lambda_ph, double lambda2, double lambda_ps, double tol = 0.05);

struct ReportOptions {
    std::optional<std::size_t> t_max; ///< default 3n (6n for PBC)
    std::size_t window = 10;
    std::optional<std::size_t> t_lo, t_hi;
    std::optional<double> threshold;
    unsigned precision_bits = 256;
    std::uint64_t seed = 1;
    double tolerance = 0.05;
};

struct CompareReport {
    References references;
    PlateauEstimate plateau;
    std::optional<double> t_c;
    std::optional<double> late_rate;
    Ordering ordering = Ordering::violated;
    std::size_t t_max = 0;
    unsigned precision_bits = 0;
    RateProfile profile;
};

/// Deflated BigFloat run of the experiment. The ordering verdict uses lambda(mu)
/// as the upper reference when it is set.
CompareReport compare_report(const ModelParams& params, PairKind kind, const ReportOptions& opt = {});

} // namespace phantom
