#include <string>

#include "commands.hpp"
#include "phantom/closedform/closedform.hpp"
#include "phantom/errors.hpp"
#include "phantom/spectral/eigen.hpp"

namespace phantom::cli {

namespace {

std::vector<int> sizes_or(const FigureArgs& f, std::vector<int> fallback)
{
    return f.sizes.empty() ? fallback : parse_int_list(f.sizes);
}

ModelArgs with_n(const ModelArgs& m, int n)
{
    ModelArgs out = m;
    out.n = n;
    return out;
}

std::size_t t_max_for(const ModelArgs& m, int n) { return m.t_max.value_or(3 * static_cast<std::size_t>(n)); }

json plateau_or_null(const RateProfile& profile, std::size_t n)
{
    PlateauOptions po;
    po.n = n;
    try {
        return plateau_rate(profile, po).rate;
    } catch (const EstimationError&) {
        return nullptr;
    }
}

Output figure_pbc_sizes(const FigureArgs& f, const ModelArgs& m, const RunConfig& rc)
{
    const double threshold = m.threshold.value_or(0.55);
    Output out;
    out.table.columns = {"t", "n", "otoc_deflated", "lambda_eff", "lambda_2"};
    json derived = json::array();
    for (int n : sizes_or(f, {16, 24, 32, 40})) {
        ModelArgs mn = with_n(m, n);
        ModelParams p = mn.params(Boundary::pbc);
        auto e = make_experiment(p, PairKind::otoc, rc.seed);
        auto d = run_series(e, t_max_for(m, n), rc);
        auto refs = reference_rates(p, PairKind::otoc);
        for (std::size_t t = 0; t < d.excess.size(); ++t)
            out.table.add({t, n, d.excess[t], optional_number(d.profile.at(t)), *refs.lambda2});
        derived.push_back(json{{"n", n},
                               {"lambda_ph", plateau_or_null(d.profile, n)},
                               {"t_c", optional_number(transition_time(d.profile, threshold))},
                               {"late_rate", optional_number(late_rate(d.profile))}});
    }
    out.derived = json{{"threshold", threshold}, {"sizes", derived}};
    return out;
}

Output figure_pbc_panels(const FigureArgs& f, const ModelArgs& m, const RunConfig& rc)
{
    const double threshold = m.threshold.value_or(0.55);
    const int n = m.n;
    std::vector<int> js = f.js.empty() ? std::vector<int>{1, std::max(1, n / 4), std::max(1, n / 2), std::max(1, 3 * n / 4)}
                                       : parse_int_list(f.js);
    Output out;
    out.table.columns = {"panel", "series", "n", "j", "t", "deflated", "lambda_eff"};
    json tcs = json::array();
    for (int j : js) {
        ModelArgs mj = m;
        mj.j = j;
        auto e = make_experiment(mj.params(Boundary::pbc), PairKind::otoc, rc.seed);
        auto d = run_series(e, t_max_for(m, n), rc);
        for (std::size_t t = 0; t < d.excess.size(); ++t)
            out.table.add({"a", "otoc", n, j, t, d.excess[t], optional_number(d.profile.at(t))});
        tcs.push_back(json{{"j", j}, {"t_c", optional_number(transition_time(d.profile, threshold))}});
    }
    for (int size : sizes_or(f, {n, 2 * n})) {
        ModelArgs ms = with_n(m, size);
        ms.j = 1;
        ModelParams p = ms.params(Boundary::pbc);
        for (PairKind kind : {PairKind::otoc, PairKind::random_stochastic}) {
            auto e = make_experiment(p, kind, rc.seed);
            auto d = run_series(e, m.t_max.value_or(2 * static_cast<std::size_t>(n)), rc);
            for (std::size_t t = 0; t < d.excess.size(); ++t)
                out.table.add({"b", std::string(pair_kind_name(kind)), size, 1, t, d.excess[t],
                               optional_number(d.profile.at(t))});
        }
    }
    auto refs = reference_rates(m.params(Boundary::pbc), PairKind::otoc);
    out.derived = json{{"threshold", threshold}, {"t_c", tcs}, {"references", references_json(refs)}};
    return out;
}

Output figure_obc_pairs(const FigureArgs& f, const ModelArgs& m, const RunConfig& rc)
{
    Output out;
    out.table.columns = {"t", "n", "otoc_deflated", "random_deflated", "lambda_2", "lambda_ps"};
    json derived = json::array();
    for (int n : sizes_or(f, {m.n, 2 * m.n})) {
        ModelParams p = with_n(m, n).params(Boundary::obc);
        const std::size_t t_max = t_max_for(m, n);
        auto otoc = run_series(make_experiment(p, PairKind::otoc, rc.seed), t_max, rc);
        auto rnd = run_series(make_experiment(p, PairKind::random_stochastic, rc.seed), t_max, rc);
        auto refs = reference_rates(p, PairKind::otoc);
        for (std::size_t t = 0; t <= t_max; ++t)
            out.table.add({t, n, otoc.excess[t], rnd.excess[t], *refs.lambda2, *refs.lambda_ps});
        derived.push_back(json{{"n", n},
                               {"otoc_lambda_ph", plateau_or_null(otoc.profile, n)},
                               {"random_lambda_ph", plateau_or_null(rnd.profile, n)}});
    }
    out.derived = json{{"sizes", derived}};
    return out;
}

Output figure_rescaled(const FigureArgs& f, const ModelArgs& m, const RunConfig& rc)
{
    ModelArgs args = m;
    if (args.mu.empty())
        args.mu = "27/20";
    Output out;
    if (f.panel == "b") {
        out.table.columns = {"mu", "phi", "re", "im"};
        const Rates<Rational> r = args.params(Boundary::obc).rates();
        for (const char* mu : {"1", "27/20", "2", "3", "4"}) {
            const double mv = to_double(parse_rational(mu));
            auto c = obc_pseudo_curve(r, mv, 361);
            for (std::size_t i = 0; i < c.z.size(); ++i)
                out.table.add({mv, c.phi[i], c.z[i].real(), c.z[i].imag()});
        }
        return out;
    }
    if (f.panel != "a")
        throw DomainError("figure 4: --panel must be a or b");
    out.table.columns = {"t", "n", "deflated", "lambda_eff", "lambda_2", "lambda_mu", "lambda_ps"};
    json derived = json::array();
    for (int n : sizes_or(f, {m.n, 2 * m.n})) {
        ModelParams p = with_n(args, n).params(Boundary::obc);
        auto d = run_series(make_experiment(p, PairKind::exp_localized, rc.seed), t_max_for(m, n), rc);
        auto refs = reference_rates(p, PairKind::exp_localized);
        for (std::size_t t = 0; t < d.excess.size(); ++t)
            out.table.add({t, n, d.excess[t], optional_number(d.profile.at(t)), *refs.lambda2, *refs.lambda_mu,
                           *refs.lambda_ps});
        derived.push_back(json{{"n", n}, {"lambda_ph", plateau_or_null(d.profile, n)}});
    }
    out.derived = json{{"sizes", derived}};
    return out;
}

Output figure_pseudospectra(const FigureArgs& f, const ModelArgs& m, const GridArgs& g, const RunConfig& rc)
{
    const int q = m.q.value_or(2);
    ConjecturedRegion region(q, 101, 181);
    Output out;
    out.table.columns = {"n", "re", "im", "sigma_min", "in_set", "in_conjecture"};
    json derived = json::array();
    for (int n : sizes_or(f, {20, 40})) {
        auto field = pseudospectrum_grid(pbc_fourier_operator(n, q), g.eps, g.grid, rc.workers);
        for (const auto& pt : field.points)
            out.table.add({n, pt.re, pt.im, pt.sigma_min, pt.in_set, region.contains(cplx(pt.re, pt.im))});
        derived.push_back(json{{"n", n}, {"rightmost", optional_number(field.rightmost())}, {"failures", field.failures}});
    }
    out.derived = json{{"eps", g.eps}, {"conjecture_max_real", region.max_real()}, {"sizes", derived}};
    return out;
}

/// Hermitian toy: the bulk T with normalized p_k = mu^{-k} and v = e_1.
Output figure_hermitian(const FigureArgs& f, const ModelArgs& m, const RunConfig& rc)
{
    ModelArgs args = m;
    if (args.delta.empty() && args.tau.empty() && args.sigma.empty() && !args.q) {
        args.delta = "8/25";
        args.tau = "1/5";
        args.sigma = "1/5";
    }
    if (args.mu.empty())
        args.mu = "2/5";
    Output out;
    out.table.columns = {"t", "n", "value", "lambda_eff", "lambda_2"};
    json derived = json::array();
    double lmu = 0.0;
    for (int n : sizes_or(f, {10, 20, 40})) {
        ModelParams p = with_n(args, n).params(Boundary::obc);
        const Rates<Rational> r = p.rates();
        Experiment e{p, PairKind::exp_localized, rc.seed, build_toeplitz(static_cast<std::size_t>(n - 1), r),
                     exp_localized_vectors(static_cast<std::size_t>(n - 1), *p.mu, true)};
        auto d = run_series(e, t_max_for(m, n), rc);
        auto refs = reference_rates(p, PairKind::exp_localized);
        lmu = *refs.lambda_mu;
        for (std::size_t t = 0; t < d.value.size(); ++t)
            out.table.add({t, n, d.value[t], optional_number(d.profile.at(t)), *refs.lambda2});
        derived.push_back(json{{"n", n}, {"o_0", d.value[0]}, {"lambda_ph", plateau_or_null(d.profile, n)}});
    }
    out.derived = json{{"lambda_mu", lmu}, {"sizes", derived}};
    return out;
}

Output figure_hypergeometric(const ModelArgs& m, const RunConfig& rc)
{
    const std::size_t t_max = m.t_max.value_or(100);
    PrecisionScope scope(rc.precision);
    Output out;
    out.table.columns = {"t", "hyp_ratio", "rate", "otoc_excess"};
    for (std::size_t t = 0; t <= t_max; ++t)
        out.table.add({t, to_double(hyp_ratio_q2(t)), to_double(rate_closed_q2(t)),
                       to_double(BigFloat(otoc_closed_q2(t) - 1))});
    return out;
}

} // namespace

Output figure_command(const FigureArgs& f, const ModelArgs& m, const GridArgs& g, const WalkArgs& w,
                      const RunConfig& rc)
{
    Output out;
    switch (f.number) {
    case 1:
        out = figure_pbc_sizes(f, m, rc);
        break;
    case 2:
        out = figure_pbc_panels(f, m, rc);
        break;
    case 3:
        out = figure_obc_pairs(f, m, rc);
        break;
    case 4:
        out = figure_rescaled(f, m, rc);
        break;
    case 5:
        out = walk_command(w, m, rc);
        break;
    case 6:
        out = figure_pseudospectra(f, m, g, rc);
        break;
    case 7:
        out = figure_hermitian(f, m, rc);
        break;
    case 8:
        out = figure_hypergeometric(m, rc);
        break;
    default:
        throw DomainError("figure number must be between 1 and 8");
    }
    json config = m.to_json();
    config["figure"] = f.number;
    if (!f.sizes.empty())
        config["sizes"] = f.sizes;
    if (!f.js.empty())
        config["js"] = f.js;
    if (f.number == 4)
        config["panel"] = f.panel;
    if (f.number == 5) {
        config["m"] = w.m;
        config["trials"] = w.trials;
    }
    if (f.number == 6)
        config["eps"] = g.eps;
    json meta = base_meta(rc, std::move(config));
    if (f.number == 5 || f.number == 6) {
        meta["backend"] = "float";
        meta["precision_bits"] = 53;
    } else if (f.number == 8) {
        meta["backend"] = "float";
        meta["precision_bits"] = effective_bits(rc.precision);
    }
    out.meta = std::move(meta);
    return out;
}

} // namespace phantom::cli
