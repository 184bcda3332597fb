#pragma once

#include <cmath>
#include <numbers>

namespace serrin {

template <class T>
T ModelManifold::conformal_factor(const T* y) const {
    using std::exp;
    using std::log;
    if (kind_ == ManifoldKind::Flat) return T(0.0);
    T r2(0.0);
    for (int i = 0; i < dim_; ++i) r2 += y[i] * y[i];
    T F = std::numbers::ln2 - log(1.0 + k_ * r2);
    if (kind_ == ManifoldKind::ConformalSphere2D) {
        T d2(0.0);
        for (int i = 0; i < dim_; ++i) d2 += (y[i] - bump_.center[i]) * (y[i] - bump_.center[i]);
        F += bump_.amplitude * exp(d2 * (-0.5 / (bump_.sigma * bump_.sigma)));
    }
    return F;
}

template <class T>
void ModelManifold::conformal_gradient(const T* y, T* out) const {
    using std::exp;
    if (kind_ == ManifoldKind::Flat) {
        for (int i = 0; i < dim_; ++i) out[i] = T(0.0);
        return;
    }
    T r2(0.0);
    for (int i = 0; i < dim_; ++i) r2 += y[i] * y[i];
    const T inv = 1.0 / (1.0 + k_ * r2);
    for (int i = 0; i < dim_; ++i) out[i] = (-2.0 * k_) * y[i] * inv;
    if (kind_ == ManifoldKind::ConformalSphere2D) {
        const double s2 = bump_.sigma * bump_.sigma;
        T d2(0.0);
        for (int i = 0; i < dim_; ++i) d2 += (y[i] - bump_.center[i]) * (y[i] - bump_.center[i]);
        const T g = bump_.amplitude * exp(d2 * (-0.5 / s2)) * (1.0 / s2);
        for (int i = 0; i < dim_; ++i) out[i] -= g * (y[i] - bump_.center[i]);
    }
}

}  // namespace serrin
