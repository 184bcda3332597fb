#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace serrin {

namespace detail {

constexpr int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

// Monomials in D variables of total degree <= K, ordered by degree then
// lexicographically, together with the multiplication table of the
// truncated polynomial ring.
template <int D, int K>
struct TaylorLayout {
    static constexpr int size = binomial(D + K, D);
    static constexpr int max_pairs = size * size;

    std::array<std::array<int, D>, size> exps{};
    std::array<int, size> degree{};
    std::array<double, size> factorial_weight{};  // prod_k e_k!
    int pair_count = 0;
    std::array<int, max_pairs> pa{};
    std::array<int, max_pairs> pb{};
    std::array<int, max_pairs> pc{};

    constexpr TaylorLayout() {
        int n = 0;
        for (int deg = 0; deg <= K; ++deg) {
            std::array<int, D> e{};
            enumerate(e, 0, deg, deg, n);
        }
        for (int i = 0; i < size; ++i) {
            double w = 1.0;
            for (int k = 0; k < D; ++k)
                for (int q = 2; q <= exps[i][k]; ++q) w *= q;
            factorial_weight[i] = w;
        }
        for (int a = 0; a < size; ++a) {
            for (int b = 0; b < size; ++b) {
                if (degree[a] + degree[b] > K) continue;
                std::array<int, D> e{};
                for (int k = 0; k < D; ++k) e[k] = exps[a][k] + exps[b][k];
                pa[pair_count] = a;
                pb[pair_count] = b;
                pc[pair_count] = find(e);
                ++pair_count;
            }
        }
    }

    constexpr void enumerate(std::array<int, D>& e, int pos, int left, int deg, int& n) {
        if (pos == D - 1) {
            e[pos] = left;
            exps[n] = e;
            degree[n] = deg;
            ++n;
            return;
        }
        for (int v = left; v >= 0; --v) {
            e[pos] = v;
            enumerate(e, pos + 1, left - v, deg, n);
        }
    }

    constexpr int find(const std::array<int, D>& e) const {
        for (int i = 0; i < size; ++i) {
            bool same = true;
            for (int k = 0; k < D; ++k) same = same && exps[i][k] == e[k];
            if (same) return i;
        }
        return -1;
    }
};

}  // namespace detail

/// Truncated multivariate Taylor polynomial in D variables up to total
/// degree K.  Arithmetic is exact modulo terms of degree > K, so evaluating a
/// smooth expression on seeded variables yields all its partial derivatives
/// up to order K at the seed point.
template <int D, int K>
class Taylor {
public:
    using Layout = detail::TaylorLayout<D, K>;
    static constexpr Layout layout{};
    static constexpr int size = Layout::size;

    std::array<double, size> c{};

    constexpr Taylor() = default;
    constexpr Taylor(double value) { c[0] = value; }

    /// The coordinate function x_i shifted to value x0.
    static constexpr Taylor variable(int i, double x0) {
        Taylor t(x0);
        if constexpr (K >= 1) t.c[1 + i] = 1.0;
        return t;
    }

    double value() const { return c[0]; }

    /// Partial derivative of the represented function at the seed, for the
    /// given multi-index.
    double derivative(const std::array<int, D>& e) const {
        const int idx = layout.find(e);
        return idx < 0 ? 0.0 : c[idx] * layout.factorial_weight[idx];
    }
    double d(int i) const {
        std::array<int, D> e{};
        e[i] = 1;
        return derivative(e);
    }
    double d2(int i, int j) const {
        std::array<int, D> e{};
        e[i] += 1;
        e[j] += 1;
        return derivative(e);
    }

    Taylor& operator+=(const Taylor& o) {
        for (int i = 0; i < size; ++i) c[i] += o.c[i];
        return *this;
    }
    Taylor& operator-=(const Taylor& o) {
        for (int i = 0; i < size; ++i) c[i] -= o.c[i];
        return *this;
    }
    Taylor& operator*=(double s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    Taylor& operator*=(const Taylor& o) {
        *this = *this * o;
        return *this;
    }

    friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
    friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
    friend Taylor operator-(Taylor a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Taylor operator+(Taylor a, double s) {
        a.c[0] += s;
        return a;
    }
    friend Taylor operator+(double s, Taylor a) { return a + s; }
    friend Taylor operator-(Taylor a, double s) {
        a.c[0] -= s;
        return a;
    }
    friend Taylor operator-(double s, const Taylor& a) { return (-a) + s; }
    friend Taylor operator*(Taylor a, double s) { return a *= s; }
    friend Taylor operator*(double s, Taylor a) { return a *= s; }
    friend Taylor operator/(Taylor a, double s) { return a *= (1.0 / s); }

    friend Taylor operator*(const Taylor& a, const Taylor& b) {
        Taylor r(0.0);
        for (int q = 0; q < layout.pair_count; ++q)
            r.c[layout.pc[q]] += a.c[layout.pa[q]] * b.c[layout.pb[q]];
        return r;
    }
    friend Taylor operator/(const Taylor& a, const Taylor& b) { return a * reciprocal(b); }
    friend Taylor operator/(double s, const Taylor& b) { return reciprocal(b) * s; }

    /// f(g) from the derivatives f^(n)(g0)/n!, n = 0..K.
    static Taylor compose(const Taylor& g, const std::array<double, K + 1>& coef) {
        Taylor h = g;
        h.c[0] = 0.0;
        Taylor result(coef[0]);
        Taylor power(1.0);
        for (int n = 1; n <= K; ++n) {
            power = power * h;
            result += power * coef[n];
        }
        return result;
    }

    friend Taylor exp(const Taylor& g) {
        std::array<double, K + 1> coef{};
        double e = std::exp(g.c[0]);
        double fact = 1.0;
        for (int n = 0; n <= K; ++n) {
            if (n > 0) fact *= n;
            coef[n] = e / fact;
        }
        return compose(g, coef);
    }
    friend Taylor log(const Taylor& g) {
        std::array<double, K + 1> coef{};
        coef[0] = std::log(g.c[0]);
        double p = 1.0;
        for (int n = 1; n <= K; ++n) {
            p /= g.c[0];
            coef[n] = ((n % 2 == 1) ? 1.0 : -1.0) * p / n;
        }
        return compose(g, coef);
    }
    friend Taylor reciprocal(const Taylor& g) {
        std::array<double, K + 1> coef{};
        double p = 1.0 / g.c[0];
        for (int n = 0; n <= K; ++n) {
            coef[n] = ((n % 2 == 0) ? 1.0 : -1.0) * p;
            p /= g.c[0];
        }
        return compose(g, coef);
    }
    friend Taylor sqrt(const Taylor& g) {
        std::array<double, K + 1> coef{};
        double s = std::sqrt(g.c[0]);
        double binom = 1.0;
        double p = s;
        for (int n = 0; n <= K; ++n) {
            coef[n] = binom * p;
            binom *= (0.5 - n) / (n + 1);
            p /= g.c[0];
        }
        return compose(g, coef);
    }
};

/// Partial derivative with respect to variable i.  The top-degree
/// coefficients of the result are zero, so the valid order drops by one.
template <int D, int K>
Taylor<D, K> partial(const Taylor<D, K>& f, int i) {
    using T = Taylor<D, K>;
    T r(0.0);
    for (int a = 0; a < T::size; ++a) {
        const auto& e = T::layout.exps[a];
        if (e[i] == 0) continue;
        std::array<int, D> lower = e;
        lower[i] -= 1;
        r.c[T::layout.find(lower)] += f.c[a] * e[i];
    }
    return r;
}

}  // namespace serrin
