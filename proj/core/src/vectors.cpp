#include "phantom/transfer/vectors.hpp"

#include "phantom/errors.hpp"
#include "phantom/numerics/rng.hpp"

namespace phantom {

std::string provenance_name(const Provenance& p)
{
    struct V {
        std::string operator()(const OtocObc&) const { return "otoc_obc"; }
        std::string operator()(const OtocPbc& o) const { return o.last_zeroed ? "otoc_pbc_last_zeroed" : "otoc_pbc"; }
        std::string operator()(const ExpLocalized&) const { return "exp_localized"; }
        std::string operator()(const RandomStochastic&) const { return "random_stochastic"; }
        std::string operator()(const CustomPair&) const { return "custom"; }
    };
    return std::visit(V{}, p);
}

VectorPair<Rational> otoc_vectors_obc(int n, int q, int j)
{
    if (n < 2)
        throw DomainError("otoc_vectors_obc: n must be >= 2");
    if (q < 2)
        throw DomainError("otoc_vectors_obc: q must be >= 2");
    if (j < 1 || j > 2 * n)
        throw DomainError("otoc_vectors_obc: j must lie in [1, 2n]");
    VectorPair<Rational> out;
    out.provenance = OtocObc{j};
    out.p.assign(n, Rational(0));
    out.v.assign(n, Rational(0));
    Rational q4 = Rational(q) * q * q * q;
    out.v[0] = q4 / (q4 - 1);
    const int threshold = (j + 1) / 2;
    for (int k = 1; k <= n; ++k)
        if (k >= threshold)
            out.p[k - 1] = 1;
    return out;
}

VectorPair<Rational> otoc_vectors_pbc(int n, int q, int j, bool zero_last)
{
    if (n < 3)
        throw DomainError("otoc_vectors_pbc: n must be >= 3");
    if (q < 2)
        throw DomainError("otoc_vectors_pbc: q must be >= 2");
    if (j < 1 || j > n)
        throw DomainError("otoc_vectors_pbc: j must lie in [1, n]");
    const int m = n - 1;
    const std::size_t dim = static_cast<std::size_t>(n) * m + 1;
    VectorPair<Rational> out;
    out.provenance = OtocPbc{j, zero_last};
    out.p.assign(dim, Rational(0));
    out.v.assign(dim, Rational(0));

    Rational q2 = Rational(q) * q;
    out.v[0] = q2;
    out.v[static_cast<std::size_t>(m) * m - 1] = q2 * q2;
    out.v[static_cast<std::size_t>(m) * m] = q2;

    for (int i = 1; i <= n; ++i) {
        int ks = ((j - i + 1) % m + m) % m;
        if (ks == 0)
            ks = m;
        for (int k = ks; k <= m; ++k)
            out.p[static_cast<std::size_t>(m) * (i - 1) + k - 1] = 1;
    }
    out.p[dim - 1] = zero_last ? 0 : 1;
    return out;
}

VectorPair<Rational> exp_localized_vectors(std::size_t dim, const Rational& mu, bool normalize)
{
    if (dim < 1)
        throw DomainError("exp_localized_vectors: dim must be >= 1");
    if (mu <= 0)
        throw DomainError("exp_localized_vectors: mu must be positive");
    VectorPair<Rational> out;
    out.provenance = ExpLocalized{mu};
    out.p.resize(dim);
    out.v.assign(dim, Rational(0));
    out.v[0] = 1;
    Rational inv = 1 / mu;
    Rational w = inv;
    Rational total = 0;
    for (std::size_t k = 0; k < dim; ++k) {
        out.p[k] = w;
        total += w;
        w *= inv;
    }
    if (normalize)
        for (auto& x : out.p)
            x /= total;
    return out;
}

std::vector<Rational> random_stochastic_vector(std::size_t dim, std::uint64_t seed)
{
    if (dim < 1)
        throw DomainError("random_stochastic_vector: dim must be >= 1");
    SplitMix64 g(derive_seed(seed, 0));
    std::vector<BigInt> w(dim);
    BigInt total = 0;
    for (auto& x : w) {
        x = BigInt((g() >> 32) + 1);
        total += x;
    }
    std::vector<Rational> out;
    out.reserve(dim);
    for (const auto& x : w)
        out.emplace_back(x, total);
    return out;
}

VectorPair<Rational> with_random_v(std::vector<Rational> p, std::uint64_t seed)
{
    VectorPair<Rational> out;
    out.provenance = RandomStochastic{seed};
    out.v = random_stochastic_vector(p.size(), seed);
    out.p = std::move(p);
    return out;
}

VectorPair<Rational> markov_vectors(std::size_t m, const Rational& v_weight)
{
    if (m < 1)
        throw DomainError("markov_vectors: need at least one bulk site");
    VectorPair<Rational> out;
    out.p.assign(m + 2, Rational(1));
    out.p[0] = 0;
    out.v.assign(m + 2, Rational(0));
    out.v[1] = v_weight;
    return out;
}

} // namespace phantom
