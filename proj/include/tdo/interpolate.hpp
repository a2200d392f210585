#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "tdo/errors.hpp"

namespace tdo {

/// Shape-preserving piecewise-cubic interpolant (Fritsch-Carlson PCHIP).
///
/// Passes through every knot and never overshoots between monotone knots,
/// so tabulated I-V data cannot acquire spurious negative-resistance
/// regions from the interpolation itself.
class PchipCurve {
public:
    PchipCurve(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() != y_.size())
            throw ValidationError("pchip: x/y size mismatch");
        if (x_.size() < 2)
            throw ValidationError("pchip: need at least 2 knots");
        for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
            if (!(x_[i] < x_[i + 1]))
                throw ValidationError("pchip: knot abscissae must be strictly increasing");
        }
        compute_derivatives();
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }
    const std::vector<double>& knots_x() const { return x_; }
    const std::vector<double>& knots_y() const { return y_; }

    /// Interpolated value; throws RangeError outside the knot span.
    double value(double x) const {
        check_range(x);
        return eval(x).first;
    }

    /// Interpolated derivative dy/dx; throws RangeError outside the knot span.
    double derivative(double x) const {
        check_range(x);
        return eval(x).second;
    }

    /// Value with end-knot clamping instead of an error; sets *clamped if
    /// the query fell outside the span.
    double value_clamped(double x, bool* clamped = nullptr) const {
        if (x < x_.front()) {
            if (clamped) *clamped = true;
            return y_.front();
        }
        if (x > x_.back()) {
            if (clamped) *clamped = true;
            return y_.back();
        }
        if (clamped) *clamped = false;
        return eval(x).first;
    }

private:
    void check_range(double x) const {
        if (x < x_.front() || x > x_.back()) {
            std::ostringstream os;
            os << "input " << x << " outside valid span [" << x_.front()
               << ", " << x_.back() << "]";
            throw RangeError(os.str());
        }
    }

    void compute_derivatives() {
        const std::size_t n = x_.size();
        d_.assign(n, 0.0);
        if (n == 2) {
            const double s = (y_[1] - y_[0]) / (x_[1] - x_[0]);
            d_[0] = d_[1] = s;
            return;
        }
        std::vector<double> h(n - 1), s(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            s[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        // Interior: weighted harmonic mean when secants agree in sign.
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (s[i - 1] == 0.0 || s[i] == 0.0 || (s[i - 1] > 0) != (s[i] > 0)) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
        }
        d_[0] = edge_derivative(h[0], h[1], s[0], s[1]);
        d_[n - 1] = edge_derivative(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
    }

    static double edge_derivative(double h0, double h1, double s0, double s1) {
        double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (d * s0 <= 0.0)
            d = 0.0;
        else if (s0 * s1 < 0.0 && std::abs(d) > 3.0 * std::abs(s0))
            d = 3.0 * s0;
        return d;
    }

    std::pair<double, double> eval(double x) const {
        // Locate interval [x_i, x_{i+1}].
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (x_[mid] <= x) lo = mid; else hi = mid;
        }
        const double h = x_[lo + 1] - x_[lo];
        const double t = (x - x_[lo]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        const double v = h00 * y_[lo] + h10 * h * d_[lo] + h01 * y_[lo + 1] + h11 * h * d_[lo + 1];
        const double dh00 = (6 * t2 - 6 * t) / h;
        const double dh10 = 3 * t2 - 4 * t + 1;
        const double dh01 = (-6 * t2 + 6 * t) / h;
        const double dh11 = 3 * t2 - 2 * t;
        const double dv = dh00 * y_[lo] + dh10 * d_[lo] + dh01 * y_[lo + 1] + dh11 * d_[lo + 1];
        return {v, dv};
    }

    std::vector<double> x_, y_, d_;
};

} // namespace tdo
