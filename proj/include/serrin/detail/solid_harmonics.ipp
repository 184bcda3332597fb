#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace serrin {

template <class T>
void solid_harmonics(int dim, int max_degree, const T* x, std::vector<T>& out) {
    const int L = max_degree;
    out.assign(mode_count(dim, L), T(0.0));
    const double pi = std::numbers::pi;
    if (dim == 2) {
        // (x + i y)^k built up by complex multiplication
        T re(1.0), im(0.0);
        out[0] = T(1.0 / std::sqrt(2.0 * pi));
        const double s = 1.0 / std::sqrt(pi);
        for (int k = 1; k <= L; ++k) {
            T nre = re * x[0] - im * x[1];
            T nim = re * x[1] + im * x[0];
            re = nre;
            im = nim;
            out[mode_index(2, k, k)] = re * s;
            out[mode_index(2, k, -k)] = im * s;
        }
        return;
    }
    if (dim != 3) throw std::invalid_argument("solid_harmonics: dimension must be 2 or 3");

    // Racah-normalized real solid harmonics by the standard three-term
    // recurrence in z, plus the diagonal recurrence for |m| = l.
    const T r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    std::vector<T> S(out.size(), T(0.0));
    auto at = [&](int l, int m) -> T& { return S[mode_index(3, l, m)]; };
    at(0, 0) = T(1.0);
    for (int l = 0; l < L; ++l) {
        const double f = std::sqrt((l == 0 ? 2.0 : 1.0) * (2.0 * l + 1.0) / (2.0 * l + 2.0));
        if (l == 0) {
            at(1, 1) = x[0] * f;
            at(1, -1) = x[1] * f;
        } else {
            at(l + 1, l + 1) = (x[0] * at(l, l) - x[1] * at(l, -l)) * f;
            at(l + 1, -l - 1) = (x[1] * at(l, l) + x[0] * at(l, -l)) * f;
        }
        for (int m = -l; m <= l; ++m) {
            T next = x[2] * at(l, m) * (2.0 * l + 1.0);
            if (l >= 1 && std::abs(m) <= l - 1)
                next -= r2 * at(l - 1, m) * std::sqrt(double(l + m) * double(l - m));
            at(l + 1, m) = next / std::sqrt(double(l + m + 1) * double(l - m + 1));
        }
    }
    for (int l = 0; l <= L; ++l) {
        const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * pi));
        for (int m = -l; m <= l; ++m) out[mode_index(3, l, m)] = at(l, m) * norm;
    }
}

}  // namespace serrin
