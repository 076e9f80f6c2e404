#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "phantom/cli/cli.hpp"
#include "phantom/closedform/closedform.hpp"
#include "phantom/errors.hpp"
#include "phantom/spectral/eigen.hpp"
#include "phantom/transfer/walk.hpp"

namespace phantom::cli {

namespace {

std::string rational_text(const Rational& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

bool exact_backend(const RunConfig& rc) { return rc.backend == "rational"; }

Table series_table(const SeriesData& d)
{
    Table t;
    t.columns = {"t", "value", "excess", "lambda_eff"};
    for (std::size_t k = 0; k < d.value.size(); ++k)
        t.add({k, d.value[k], d.excess[k], optional_number(d.profile.at(k))});
    return t;
}

json plateau_json(const RateProfile& profile, std::size_t n)
{
    PlateauOptions po;
    po.n = n;
    try {
        auto p = plateau_rate(profile, po);
        return json{{"lambda_ph", p.rate}, {"t_begin", p.t_begin}, {"t_end", p.t_end}, {"flatness", p.flatness}};
    } catch (const EstimationError&) {
        return nullptr;
    }
}

template <class S>
SeriesData collect(const DecaySeries<S>& s)
{
    SeriesData d;
    d.profile = effective_rate(s);
    for (std::size_t t = 0; t < s.values.size(); ++t) {
        d.excess.push_back(to_double(s.excess(t)));
        d.value.push_back(to_double(s.value(t)));
    }
    return d;
}

} // namespace

ModelParams ModelArgs::params(Boundary b) const
{
    ModelParams p;
    p.boundary = b;
    p.n = n;
    const bool any_rate = !delta.empty() || !tau.empty() || !sigma.empty();
    if (any_rate) {
        if (q)
            throw DomainError("give either --q or --delta/--tau/--sigma, not both");
        if (delta.empty() || sigma.empty() || (tau.empty() && b != Boundary::jordan))
            throw DomainError("explicit rates need --delta, --tau and --sigma");
        Rates<Rational> r{parse_rational(delta), tau.empty() ? Rational(0) : parse_rational(tau), parse_rational(sigma)};
        p.explicit_rates = r;
    } else {
        p.q = q.value_or(2);
        if (*p.q < 2)
            throw DomainError("--q must be an integer >= 2");
    }
    if (!mu.empty())
        p.mu = parse_rational(mu);
    p.j = j;
    p.validate();
    return p;
}

ModelParams ModelArgs::params() const { return params(parse_boundary(model)); }

json ModelArgs::to_json() const
{
    json c = json::object();
    c["model"] = model;
    c["n"] = n;
    if (!delta.empty() || !tau.empty() || !sigma.empty()) {
        c["delta"] = delta;
        c["tau"] = tau;
        c["sigma"] = sigma;
    } else {
        c["q"] = q.value_or(2);
    }
    if (!mu.empty())
        c["mu"] = mu;
    if (j)
        c["j"] = *j;
    if (t_max)
        c["t_max"] = *t_max;
    c["pair"] = pair;
    if (threshold)
        c["threshold"] = *threshold;
    return c;
}

json base_meta(const RunConfig& rc, json config)
{
    json m = json::object();
    m["version"] = std::string(tool_version);
    m["command"] = rc.command;
    m["backend"] = rc.backend;
    m["precision_bits"] = exact_backend(rc) ? 0u : effective_bits(rc.precision);
    m["seed"] = rc.seed;
    m["config"] = std::move(config);
    return m;
}

json optional_number(std::optional<double> x)
{
    if (x)
        return *x;
    return nullptr;
}

json references_json(const References& r)
{
    json j = json::object();
    j["lambda_2"] = optional_number(r.lambda2);
    j["lambda_ps"] = optional_number(r.lambda_ps);
    j["lambda_mu"] = optional_number(r.lambda_mu);
    return j;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size())
                throw DomainError("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw DomainError("not a comma separated integer list: '" + text + "'");
        }
    }
    if (out.empty())
        throw DomainError("empty integer list");
    return out;
}

SeriesData run_series(const Experiment& e, std::size_t t_max, const RunConfig& rc)
{
    if (exact_backend(rc))
        return collect(iterate_series(e.matrix, e.pair, t_max, true));
    PrecisionScope scope(rc.precision);
    auto a = e.matrix.convert<BigFloat>();
    auto pair = e.pair.convert<BigFloat>();
    return collect(iterate_series(a, pair, t_max, true));
}

Output series_command(Boundary b, PairKind kind, const ModelArgs& m, const RunConfig& rc)
{
    ModelParams p = m.params(b);
    Experiment e = make_experiment(p, kind, rc.seed);
    const std::size_t n = static_cast<std::size_t>(p.n);
    const std::size_t t_max = m.t_max.value_or(b == Boundary::pbc ? 6 * n : 3 * n);
    SeriesData d = run_series(e, t_max, rc);

    json config = m.to_json();
    config["model"] = std::string(boundary_name(b));
    config["pair"] = std::string(pair_kind_name(kind));
    config["t_max"] = t_max;
    Output out;
    out.meta = base_meta(rc, std::move(config));
    out.table = series_table(d);
    out.derived = json::object();
    out.derived["references"] = references_json(reference_rates(p, kind));
    out.derived["plateau"] = plateau_json(d.profile, n);
    if (m.threshold)
        out.derived["t_c"] = optional_number(transition_time(d.profile, *m.threshold));
    return out;
}

Output jordan_command(const ModelArgs& m, const RunConfig& rc)
{
    ModelArgs args = m;
    if (args.delta.empty() && args.sigma.empty() && !args.q) {
        args.delta = "3/10";
        args.sigma = "1/2";
    }
    ModelParams p = args.params(Boundary::jordan);
    const Rational mu = p.mu.value_or(Rational(1));
    p.mu = mu;
    const std::size_t n = static_cast<std::size_t>(p.n);
    const std::size_t t_max = m.t_max.value_or(2 * n);
    const Rates<Rational> r = p.rates();
    auto profile = ConvolutionProfile::exponential(mu);
    auto a = build_jordan(n, r.delta, r.sigma);
    auto pair = profile_vectors(profile, n);

    Table t;
    t.columns = {"t", "value", "closed_form", "lambda_eff"};
    std::vector<double> value, closed;
    RateProfile prof;
    if (exact_backend(rc)) {
        auto s = iterate_series(a, pair, t_max, false);
        prof = effective_rate(s);
        for (std::size_t k = 0; k <= t_max; ++k) {
            value.push_back(to_double(s.values[k]));
            closed.push_back(to_double(jordan_closed<Rational>(k, n, r.delta, r.sigma, profile)));
        }
    } else {
        PrecisionScope scope(rc.precision);
        auto s = iterate_series(a.convert<BigFloat>(), pair.convert<BigFloat>(), t_max, false);
        prof = effective_rate(s);
        const BigFloat d(r.delta), sg(r.sigma);
        for (std::size_t k = 0; k <= t_max; ++k) {
            value.push_back(to_double(s.values[k]));
            closed.push_back(to_double(jordan_closed<BigFloat>(k, n, d, sg, profile)));
        }
    }
    for (std::size_t k = 0; k <= t_max; ++k)
        t.add({k, value[k], closed[k], optional_number(prof.at(k))});

    json config = args.to_json();
    config["model"] = "jordan";
    config["mu"] = rational_text(mu);
    config["t_max"] = t_max;
    Output out;
    out.meta = base_meta(rc, std::move(config));
    out.table = std::move(t);
    out.derived = json{{"lambda_mu", to_double(Rational(r.delta + r.sigma / mu))}};
    return out;
}

Output walk_command(const WalkArgs& w, const ModelArgs& m, const RunConfig& rc)
{
    ModelParams p = m.params(Boundary::markov_walk);
    const Rates<Rational> r = p.rates();
    auto est = simulate_walk(w.m, r.convert<double>(), w.t_max, w.trials, rc.seed, rc.workers);
    Table t;
    t.columns = {"t", "r1_mc", "std_error", "r1_exact"};
    for (std::size_t k = 0; k <= w.t_max; ++k)
        t.add({k, est.r1[k], est.std_error[k], to_double(r1_catalan(k, r))});

    json config = m.to_json();
    config["model"] = "markov_walk";
    config.erase("n");
    config.erase("pair");
    config["m"] = w.m;
    config["trials"] = w.trials;
    config["t_max"] = w.t_max;
    Output out;
    out.meta = base_meta(rc, std::move(config));
    out.meta["backend"] = "float";
    out.meta["precision_bits"] = 53;
    out.table = std::move(t);
    return out;
}

Output spectrum_command(const ModelArgs& m, const RunConfig& rc)
{
    ModelParams p = m.params();
    EigenSystem eig;
    if (p.boundary == Boundary::obc)
        eig = obc_eigensystem(p.n, p.rates(), false);
    else if (p.boundary == Boundary::pbc)
        eig = pbc_eigensystem(p.n, p.q.value_or(2), false);
    else
        throw DomainError("spectrum: --model must be obc or pbc");
    Table t;
    t.columns = {"index", "label_a", "label_b", "re", "im"};
    for (std::size_t i = 0; i < eig.size(); ++i) {
        auto z = to_std(eig.eigenvalues[i]);
        t.add({i, eig.labels[i].first, eig.labels[i].second, z.real(), z.imag()});
    }
    json config = m.to_json();
    config.erase("pair");
    Output out;
    out.meta = base_meta(rc, std::move(config));
    out.meta["backend"] = "float";
    out.meta["precision_bits"] = effective_bits(rc.precision);
    out.table = std::move(t);
    auto refs = reference_rates(p, PairKind::otoc);
    out.derived = json{{"lambda_2", optional_number(refs.lambda2)}};
    return out;
}

namespace {

PseudoOperator operator_for(const ModelParams& p, bool fourier)
{
    switch (p.boundary) {
    case Boundary::obc: {
        if (p.mu)
            return pseudo_operator(rescale(build_toeplitz(p.n - 1, p.rates()), *p.mu));
        return pseudo_operator(build_obc(p), true);
    }
    case Boundary::pbc:
        if (p.mu)
            throw DomainError("pseudospectrum: --mu applies to the OBC model only");
        if (fourier)
            return pbc_fourier_operator(p.n, p.q.value_or(2));
        return pseudo_operator(build_pbc(p), true);
    case Boundary::jordan: {
        auto r = p.rates();
        auto a = build_jordan(p.n, r.delta, r.sigma);
        return pseudo_operator(p.mu ? rescale(a, *p.mu) : a);
    }
    default:
        throw DomainError("pseudospectrum: --model must be obc, pbc or jordan");
    }
}

} // namespace

Output pseudospectrum_command(const ModelArgs& m, const GridArgs& g, const RunConfig& rc)
{
    ModelParams p = m.params();
    auto op = operator_for(p, g.fourier);
    auto field = pseudospectrum_grid(op, g.eps, g.grid, rc.workers);
    Table t;
    t.columns = {"re", "im", "sigma_min", "in_set", "converged"};
    for (const auto& pt : field.points)
        t.add({pt.re, pt.im, pt.sigma_min, pt.in_set, pt.converged});

    json config = m.to_json();
    config.erase("pair");
    config["eps"] = g.eps;
    config["grid"] = json{{"re_min", g.grid.re_min}, {"re_max", g.grid.re_max}, {"im_min", g.grid.im_min},
                          {"im_max", g.grid.im_max}, {"re_points", g.grid.re_points},
                          {"im_points", g.grid.im_points}};
    if (p.boundary == Boundary::pbc)
        config["fourier"] = g.fourier;
    Output out;
    out.meta = base_meta(rc, std::move(config));
    out.meta["backend"] = "float";
    out.meta["precision_bits"] = 53;
    out.table = std::move(t);
    out.derived = json{{"rightmost", optional_number(field.rightmost())}, {"failures", field.failures}};
    return out;
}

Output rates_command(const ModelArgs& m, std::size_t window, const RunConfig& rc)
{
    ModelParams p = m.params();
    PairKind kind = parse_pair_kind(m.pair);
    ReportOptions o;
    o.t_max = m.t_max;
    o.window = window;
    o.threshold = m.threshold;
    o.precision_bits = rc.precision;
    o.seed = rc.seed;
    auto rep = compare_report(p, kind, o);

    json report = json::object();
    report["lambda_2"] = optional_number(rep.references.lambda2);
    report["lambda_ps"] = optional_number(rep.references.lambda_ps);
    report["lambda_mu"] = optional_number(rep.references.lambda_mu);
    report["lambda_ph"] = rep.plateau.rate;
    report["plateau_window"] = json{{"t_begin", rep.plateau.t_begin}, {"t_end", rep.plateau.t_end}};
    report["flatness"] = rep.plateau.flatness;
    report["t_c"] = optional_number(rep.t_c);
    report["late_rate"] = optional_number(rep.late_rate);
    report["ordering"] = std::string(ordering_name(rep.ordering));
    report["t_max"] = rep.t_max;

    json config = m.to_json();
    config["window"] = window;
    Output out;
    out.meta = base_meta(rc, std::move(config));
    out.meta["backend"] = "float";
    out.meta["precision_bits"] = rep.precision_bits;
    out.report = std::move(report);
    return out;
}

} // namespace phantom::cli
