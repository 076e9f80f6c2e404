#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "phantom/errors.hpp"
#include "phantom/numerics/field.hpp"

namespace phantom {

/// Square band matrix with `lower` sub- and `upper` superdiagonals.
template <class T>
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
        : n_(n), kl_(lower), ku_(upper), data_(n * (lower + upper + 1), T(0))
    {
        if (n == 0)
            throw DomainError("BandedMatrix: empty matrix");
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t lower() const noexcept { return kl_; }
    std::size_t upper() const noexcept { return ku_; }

    bool in_band(std::size_t r, std::size_t c) const noexcept
    {
        return r < n_ && c < n_ && c + kl_ >= r && r + ku_ >= c;
    }

    T& at(std::size_t r, std::size_t c)
    {
        if (!in_band(r, c))
            throw DomainError("BandedMatrix: entry outside band");
        return data_[r * width() + (c + kl_ - r)];
    }
    const T& at(std::size_t r, std::size_t c) const
    {
        if (!in_band(r, c))
            throw DomainError("BandedMatrix: entry outside band");
        return data_[r * width() + (c + kl_ - r)];
    }
    T get(std::size_t r, std::size_t c) const { return in_band(r, c) ? at(r, c) : T(0); }

    std::vector<T> multiply(std::span<const T> x) const
    {
        if (x.size() != n_)
            throw DomainError("BandedMatrix: dimension mismatch");
        std::vector<T> y(n_, T(0));
        for (std::size_t r = 0; r < n_; ++r) {
            std::size_t c0 = r > kl_ ? r - kl_ : 0;
            std::size_t c1 = std::min(n_ - 1, r + ku_);
            for (std::size_t c = c0; c <= c1; ++c)
                y[r] += at(r, c) * x[c];
        }
        return y;
    }

private:
    std::size_t width() const noexcept { return kl_ + ku_ + 1; }

    std::size_t n_, kl_, ku_;
    std::vector<T> data_;
};

/// LU factorization with row partial pivoting in band storage (the layout of
/// LAPACK gbtrf). Exact fields pivot on the first nonzero entry.
template <class T>
class BandedLU {
public:
    explicit BandedLU(const BandedMatrix<T>& a)
        : n_(a.size()), kl_(a.lower()), ku_(a.upper()), w_(2 * kl_ + ku_ + 1),
          lu_(n_ * w_, T(0)), piv_(n_)
    {
        for (std::size_t r = 0; r < n_; ++r) {
            std::size_t c0 = r > kl_ ? r - kl_ : 0;
            std::size_t c1 = std::min(n_ - 1, r + ku_);
            for (std::size_t c = c0; c <= c1; ++c)
                ref(r, c) = a.at(r, c);
        }
        factor();
    }

    std::size_t size() const noexcept { return n_; }
    bool singular() const noexcept { return singular_; }

    /// Ratio of the largest to smallest pivot magnitude (infinite if singular).
    double pivot_ratio() const { return pivot_ratio_; }

    /// Solves A x = b.
    std::vector<T> solve(std::span<const T> b) const
    {
        check(b);
        std::vector<T> x(b.begin(), b.end());
        for (std::size_t k = 0; k < n_; ++k) {
            if (piv_[k] != k)
                std::swap(x[k], x[piv_[k]]);
            std::size_t last = std::min(n_ - 1, k + kl_);
            for (std::size_t i = k + 1; i <= last; ++i)
                x[i] -= cref(i, k) * x[k];
        }
        for (std::size_t ii = n_; ii-- > 0;) {
            std::size_t last = std::min(n_ - 1, ii + kl_ + ku_);
            for (std::size_t j = ii + 1; j <= last; ++j)
                x[ii] -= cref(ii, j) * x[j];
            x[ii] /= cref(ii, ii);
        }
        return x;
    }

    /// Solves A^H x = b.
    std::vector<T> solve_adjoint(std::span<const T> b) const
    {
        check(b);
        using F = FieldTraits<T>;
        std::vector<T> y(b.begin(), b.end());
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t first = i > kl_ + ku_ ? i - kl_ - ku_ : 0;
            for (std::size_t j = first; j < i; ++j)
                y[i] -= F::conj(cref(j, i)) * y[j];
            y[i] /= F::conj(cref(i, i));
        }
        for (std::size_t k = n_; k-- > 0;) {
            std::size_t last = std::min(n_ - 1, k + kl_);
            for (std::size_t i = k + 1; i <= last; ++i)
                y[k] -= F::conj(cref(i, k)) * y[i];
            if (piv_[k] != k)
                std::swap(y[k], y[piv_[k]]);
        }
        return y;
    }

private:
    T& ref(std::size_t r, std::size_t c) { return lu_[r * w_ + (c + kl_ - r)]; }
    const T& cref(std::size_t r, std::size_t c) const { return lu_[r * w_ + (c + kl_ - r)]; }

    void check(std::span<const T> b) const
    {
        if (b.size() != n_)
            throw DomainError("BandedLU: dimension mismatch");
        if (singular_)
            throw NumericalError("BandedLU: matrix is singular", pivot_ratio_);
    }

    void factor()
    {
        using F = FieldTraits<T>;
        double max_pivot = 0.0;
        double min_pivot = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t last_row = std::min(n_ - 1, k + kl_);
            std::size_t p = k;
            if constexpr (F::exact) {
                while (p <= last_row && cref(p, k) == T(0))
                    ++p;
                if (p > last_row)
                    p = k;
            } else {
                auto best = F::magnitude(cref(k, k));
                for (std::size_t i = k + 1; i <= last_row; ++i) {
                    auto m = F::magnitude(cref(i, k));
                    if (m > best) {
                        best = m;
                        p = i;
                    }
                }
            }
            piv_[k] = p;
            std::size_t last_col = std::min(n_ - 1, k + kl_ + ku_);
            if (p != k)
                for (std::size_t j = k; j <= last_col; ++j)
                    std::swap(ref(k, j), ref(p, j));

            const T pivot = cref(k, k);
            double mag = to_double_magnitude(pivot);
            if (pivot == T(0)) {
                singular_ = true;
                continue;
            }
            if (k == 0 || mag > max_pivot)
                max_pivot = mag;
            if (k == 0 || mag < min_pivot)
                min_pivot = mag;
            for (std::size_t i = k + 1; i <= last_row; ++i) {
                if (cref(i, k) == T(0))
                    continue;
                T m = cref(i, k) / pivot;
                ref(i, k) = m;
                for (std::size_t j = k + 1; j <= last_col; ++j)
                    ref(i, j) -= m * cref(k, j);
            }
        }
        pivot_ratio_ = singular_ || min_pivot == 0.0 ? std::numeric_limits<double>::infinity()
                                                     : max_pivot / min_pivot;
    }

    static double to_double_magnitude(const T& x)
    {
        return to_double(FieldTraits<T>::magnitude(x));
    }

    std::size_t n_, kl_, ku_, w_;
    std::vector<T> lu_;
    std::vector<std::size_t> piv_;
    bool singular_ = false;
    double pivot_ratio_ = 0.0;
};

} // namespace phantom
