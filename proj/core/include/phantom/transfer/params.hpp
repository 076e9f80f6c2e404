#pragma once

#include <optional>
#include <string_view>

#include "phantom/numerics/scalar.hpp"

namespace phantom {

/// Stay / hop-left / hop-right weights. In matrix form delta is the diagonal,
/// tau the superdiagonal and sigma the subdiagonal.
template <class S>
struct Rates {
    S delta{0};
    S tau{0};
    S sigma{0};

    template <class T>
    Rates<T> convert() const
    {
        if constexpr (std::is_same_v<S, Rational>)
            return {from_rational<T>(delta), from_rational<T>(tau), from_rational<T>(sigma)};
        else
            return {T(delta), T(tau), T(sigma)};
    }
};

/// delta = 2q^2/(1+q^2)^2, tau = 1/(1+q^2)^2, sigma = q^4/(1+q^2)^2.
Rates<Rational> rates_from_q(int q);

enum class Boundary { obc, pbc, markov_walk, jordan, custom };

std::string_view boundary_name(Boundary b);
Boundary parse_boundary(std::string_view name);

struct ModelParams {
    Boundary boundary = Boundary::obc;
    int n = 2;
    std::optional<int> q;
    std::optional<Rates<Rational>> explicit_rates;
    std::optional<Rational> mu;
    std::optional<int> j;

    /// Rates from q when given, otherwise the explicit triple.
    Rates<Rational> rates() const;
    void validate() const;
};

} // namespace phantom
