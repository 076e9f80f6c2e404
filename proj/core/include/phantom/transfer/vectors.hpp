#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "phantom/numerics/scalar.hpp"

namespace phantom {

struct OtocObc { int j = 1; };
struct OtocPbc { int j = 1; bool last_zeroed = false; };
struct ExpLocalized { Rational mu{1}; };
struct RandomStochastic { std::uint64_t seed = 0; };
struct CustomPair {};

using Provenance = std::variant<OtocObc, OtocPbc, ExpLocalized, RandomStochastic, CustomPair>;

std::string provenance_name(const Provenance& p);

/// Row vector p and column vector v; O(t) = p A^t v.
template <class S>
struct VectorPair {
    std::vector<S> p;
    std::vector<S> v;
    Provenance provenance = CustomPair{};

    std::size_t dim() const noexcept { return p.size(); }

    template <class T>
    VectorPair<T> convert() const
    {
        VectorPair<T> out;
        out.provenance = provenance;
        out.p.reserve(p.size());
        out.v.reserve(v.size());
        auto cv = [](const S& x) -> T {
            if constexpr (std::is_same_v<S, Rational>)
                return from_rational<T>(x);
            else
                return T(x);
        };
        for (const auto& x : p)
            out.p.push_back(cv(x));
        for (const auto& x : v)
            out.v.push_back(cv(x));
        return out;
    }
};

/// v = (q^4/(q^4-1), 0, ...), p_k = 1 for k >= ceil(j/2) (1-based), dim n.
VectorPair<Rational> otoc_vectors_obc(int n, int q, int j);

/// Block-structured pair of dim n(n-1)+1. v has q^2, q^4, q^2 at 1-based
/// positions 1, (n-1)^2, (n-1)^2+1. Within block i the p entries k from
/// ((j-i+1) mod (n-1)) to n-1 are 1, with residue 0 read as n-1.
VectorPair<Rational> otoc_vectors_pbc(int n, int q, int j, bool zero_last = false);

/// p_k = mu^{-k} for k = 1..dim, v = e_1. With `normalize` p sums to 1.
VectorPair<Rational> exp_localized_vectors(std::size_t dim, const Rational& mu, bool normalize = false);

/// Positive rationals summing to exactly 1, reproducible from the seed.
std::vector<Rational> random_stochastic_vector(std::size_t dim, std::uint64_t seed);

/// Keeps p and replaces v by random_stochastic_vector(dim, seed).
VectorPair<Rational> with_random_v(std::vector<Rational> p, std::uint64_t seed);

/// p_k = 1 - [k == 1], v = e_2 on a walk with m bulk sites (dim m+2): the
/// walk starts on the first bulk site and p ignores the left bath.
VectorPair<Rational> markov_vectors(std::size_t m, const Rational& v_weight = 1);

} // namespace phantom
