#include "phantom/transfer/params.hpp"

#include <string>

#include "phantom/errors.hpp"

namespace phantom {

Rates<Rational> rates_from_q(int q)
{
    if (q < 2)
        throw DomainError("q must be an integer >= 2");
    Rational q2 = Rational(q) * q;
    Rational denom = (1 + q2) * (1 + q2);
    return {Rational(2 * q2 / denom), Rational(1 / denom), Rational(q2 * q2 / denom)};
}

std::string_view boundary_name(Boundary b)
{
    switch (b) {
    case Boundary::obc: return "obc";
    case Boundary::pbc: return "pbc";
    case Boundary::markov_walk: return "markov";
    case Boundary::jordan: return "jordan";
    case Boundary::custom: return "custom";
    }
    return "unknown";
}

Boundary parse_boundary(std::string_view name)
{
    if (name == "obc") return Boundary::obc;
    if (name == "pbc") return Boundary::pbc;
    if (name == "markov" || name == "markov-walk") return Boundary::markov_walk;
    if (name == "jordan") return Boundary::jordan;
    if (name == "custom") return Boundary::custom;
    throw DomainError("unknown model '" + std::string(name) + "'");
}

Rates<Rational> ModelParams::rates() const
{
    if (q)
        return rates_from_q(*q);
    if (explicit_rates)
        return *explicit_rates;
    throw DomainError("model needs either q or explicit rates");
}

void ModelParams::validate() const
{
    if (n < 1)
        throw DomainError("n must be positive");
    Rates<Rational> r = rates();
    if (r.delta < 0 || r.tau < 0 || r.sigma < 0)
        throw DomainError("rates must be non-negative");
    if (mu && *mu <= 0)
        throw DomainError("mu must be positive");
}

} // namespace phantom
