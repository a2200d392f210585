#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tdo/errors.hpp"
#include "tdo/interpolate.hpp"

namespace tdo {

// ===========================================================================
// Tunnel diode DC model
// ===========================================================================

/// Parameters of the analytic I-V form
///   I(V) = Ip * (V/Vp) * exp(1 - V/Vp) + I0 * (exp(V/Vt) - 1)
/// The first term is the tunneling hump peaking at (Vp, Ip); the second is the
/// excess/thermionic current that closes the valley.
struct AnalyticDiodeParams {
    double peak_current_a = 0.0;
    double peak_voltage_v = 0.0;
    double saturation_current_a = 0.0;
    double thermal_voltage_v = 1.0;
};

/// Tunnel-diode DC I-V characteristic, analytic or tabulated.
///
/// Tabulated curves use shape-preserving cubic interpolation so monotone
/// data never acquires a spurious negative-resistance region.
class DiodeModel {
public:
    static DiodeModel analytic(const AnalyticDiodeParams& params,
                               std::string temperature_label = "",
                               double v_min = -0.1, double v_max = 0.5) {
        if (!(params.peak_voltage_v > 0))
            throw ValidationError("diode: peak_voltage_v must be positive");
        if (!(params.thermal_voltage_v > 0))
            throw ValidationError("diode: thermal_voltage_v must be positive");
        if (params.peak_current_a < 0 || params.saturation_current_a < 0)
            throw ValidationError("diode: currents must be non-negative");
        DiodeModel m;
        m.params_ = params;
        m.label_ = std::move(temperature_label);
        m.v_min_ = v_min;
        m.v_max_ = v_max;
        return m;
    }

    static DiodeModel tabulated(std::vector<double> v, std::vector<double> i,
                                std::string temperature_label = "") {
        DiodeModel m;
        m.curve_.emplace(std::move(v), std::move(i));
        m.label_ = std::move(temperature_label);
        m.v_min_ = m.curve_->min_x();
        m.v_max_ = m.curve_->max_x();
        return m;
    }

    /// Default cryogenic BD-6 model. The parameters were solved numerically so
    /// that I(0.1 V) = 10 uA, dV/dI(0.1 V) = -5 kOhm, and the NDR region spans
    /// [0.033, 0.25] V; unit tests verify those properties by evaluation.
    static DiodeModel bd6_cryo() {
        return analytic({2.4860212545e-05, 3.3078512107e-02, 2.4582671730e-08, 0.08}, "22mK");
    }

    /// Room-temperature BD-6 model: 20 uA peak current, qualitatively similar
    /// curve with the valley near 0.3 V.
    static DiodeModel bd6_rt() {
        return analytic({20e-6, 0.06, 3.0266620e-09, 0.05}, "RT");
    }

    bool is_analytic() const { return !curve_.has_value(); }
    const std::string& temperature_label() const { return label_; }
    double v_min() const { return v_min_; }
    double v_max() const { return v_max_; }
    const AnalyticDiodeParams& params() const { return params_; }

    /// DC current at bias v. Throws RangeError outside the validity span.
    double current(double v) const {
        check_range(v);
        if (curve_)
            return curve_->value(v);
        const double x = v / params_.peak_voltage_v;
        return params_.peak_current_a * x * std::exp(1.0 - x) +
               params_.saturation_current_a * std::expm1(v / params_.thermal_voltage_v);
    }

    /// dI/dV at bias v (signed; negative inside the NDR region).
    double conductance(double v) const {
        check_range(v);
        if (curve_)
            return curve_->derivative(v);
        const double x = v / params_.peak_voltage_v;
        return (params_.peak_current_a / params_.peak_voltage_v) * std::exp(1.0 - x) * (1.0 - x) +
               (params_.saturation_current_a / params_.thermal_voltage_v) *
                   std::exp(v / params_.thermal_voltage_v);
    }

    /// dV/dI at bias v. Throws SingularityError near stationary points, where
    /// |dI/dV| falls below min_conductance_s.
    double differential_resistance(double v, double min_conductance_s = 1e-6) const {
        const double g = conductance(v);
        if (std::abs(g) < min_conductance_s) {
            std::ostringstream os;
            os << "dI/dV = " << g << " S at V = " << v
               << " V is below the singularity threshold (stationary point)";
            throw SingularityError(os.str());
        }
        return 1.0 / g;
    }

private:
    void check_range(double v) const {
        if (v < v_min_ || v > v_max_) {
            std::ostringstream os;
            os << "diode bias " << v << " V outside valid span [" << v_min_
               << ", " << v_max_ << "] V";
            throw RangeError(os.str());
        }
    }

    AnalyticDiodeParams params_;
    std::optional<PchipCurve> curve_;
    std::string label_;
    double v_min_ = 0.0, v_max_ = 0.0;
};

inline double diode_current(const DiodeModel& model, double v) { return model.current(v); }

inline double differential_resistance(const DiodeModel& model, double v) {
    return model.differential_resistance(v);
}

// ===========================================================================
// Junction (depletion) capacitance
// ===========================================================================

/// C_TD(V) = C0 * (1 - V/Vd)^(-1/2); valid only below the diffusion potential.
struct JunctionCapParams {
    double c0_f = 5.7e-12; ///< zero-bias capacitance
    double vd_v = 0.5;     ///< diffusion potential
};

inline double junction_capacitance(const JunctionCapParams& p, double v_td) {
    if (p.c0_f < 0)
        throw ValidationError("junction: C0 must be non-negative");
    if (!(p.vd_v > 0))
        throw ValidationError("junction: Vd must be positive");
    if (v_td >= p.vd_v) {
        std::ostringstream os;
        os << "junction bias " << v_td << " V >= diffusion potential " << p.vd_v
           << " V (depletion model diverges)";
        throw DomainError(os.str());
    }
    return p.c0_f / std::sqrt(1.0 - v_td / p.vd_v);
}

// ===========================================================================
// Varactor diode
// ===========================================================================

struct LeakageSample {
    double current_a = 0.0;
    bool clamped = false; ///< query fell outside the leakage table span
};

/// Voltage-controlled capacitance plus a tabulated leakage curve.
///
/// The default capacitance law mirrors the junction model with its own
/// exponent, C_VD(V) = C0v * (1 + V/Vdv)^(-gamma): reverse bias (positive
/// V_VD for this part's orientation) widens the depletion layer and lowers C.
class VaractorModel {
public:
    /// Power-law capacitance over a declared voltage range.
    static VaractorModel power_law(double c0_f, double vd_v, double exponent,
                                   double v_min, double v_max) {
        if (!(c0_f >= 0) || !(vd_v > 0))
            throw ValidationError("varactor: need C0 >= 0 and Vd > 0");
        if (v_min <= -vd_v)
            throw ValidationError("varactor: v_min at or below the power-law pole -Vd");
        VaractorModel m;
        m.c0_f_ = c0_f;
        m.vd_v_ = vd_v;
        m.exponent_ = exponent;
        m.v_min_ = v_min;
        m.v_max_ = v_max;
        return m;
    }

    static VaractorModel tabulated_capacitance(std::vector<double> v, std::vector<double> c) {
        VaractorModel m;
        m.cap_table_.emplace(std::move(v), std::move(c));
        m.v_min_ = m.cap_table_->min_x();
        m.v_max_ = m.cap_table_->max_x();
        for (double cv : m.cap_table_->knots_y())
            if (!(cv > 0))
                throw ValidationError("varactor: tabulated capacitance must be positive");
        return m;
    }

    /// Placeholder for a tank without a varactor: zero capacitance, no leakage.
    static VaractorModel none() {
        VaractorModel m;
        m.c0_f_ = 0.0;
        m.vd_v_ = 1.0;
        m.exponent_ = 0.0;
        m.v_min_ = -100.0;
        m.v_max_ = 100.0;
        return m;
    }

    /// Default MA46H201-like model. (C0v, Vdv, gamma) were fitted so that
    /// C_par + C_VD hits the board totals 7.9/5.8/5.3 pF at V_VD = -1.5/0/5 V
    /// on top of a 4.5 pF board parasitic; the leakage table is synthetic with
    /// exponential turn-on placed so |I| crosses 1 nA at the -1.3 V and 17 V
    /// window edges.
    static VaractorModel ma46h201() {
        VaractorModel m = power_law(1.3e-12, 1.5961189767, 0.3421704321, -1.5, 17.0);
        m.leakage_table_.emplace(
            std::vector<double>{-1.6, -1.5, -1.45, -1.4, -1.35, -1.3, -1.0,
                                0.0, 5.0, 16.0, 17.0, 17.5, 18.0},
            std::vector<double>{-1.6275e-4, -2.981e-6, -4.034e-7, -5.460e-8, -7.389e-9,
                                -1.0e-9, -3.0e-10, 0.0, 1.0e-10, 3.0e-10,
                                1.0e-9, 7.389e-9, 5.460e-8});
        m.window_lo_v_ = -1.3;
        m.window_hi_v_ = 17.0;
        m.leakage_threshold_a_ = 1e-9;
        return m;
    }

    VaractorModel& with_leakage_table(std::vector<double> v, std::vector<double> i,
                                      double window_lo_v, double window_hi_v,
                                      double threshold_a = 1e-9) {
        leakage_table_.emplace(std::move(v), std::move(i));
        window_lo_v_ = window_lo_v;
        window_hi_v_ = window_hi_v;
        leakage_threshold_a_ = threshold_a;
        return *this;
    }

    double v_min() const { return v_min_; }
    double v_max() const { return v_max_; }
    double window_lo_v() const { return window_lo_v_; }
    double window_hi_v() const { return window_hi_v_; }
    double leakage_threshold_a() const { return leakage_threshold_a_; }
    bool has_leakage_table() const { return leakage_table_.has_value(); }

    /// C_VD at the applied varactor bias. Throws RangeError outside the range.
    double capacitance(double v_vd) const {
        if (v_vd < v_min_ || v_vd > v_max_) {
            std::ostringstream os;
            os << "varactor bias " << v_vd << " V outside valid span [" << v_min_
               << ", " << v_max_ << "] V";
            throw RangeError(os.str());
        }
        if (cap_table_)
            return cap_table_->value(v_vd);
        return c0_f_ * std::pow(1.0 + v_vd / vd_v_, -exponent_);
    }

    /// Leakage current; clamps to the last table knot outside the span.
    LeakageSample leakage(double v_vd) const {
        if (!leakage_table_)
            return {0.0, false};
        LeakageSample s;
        s.current_a = leakage_table_->value_clamped(v_vd, &s.clamped);
        return s;
    }

    /// Small-signal leakage conductance dI/dV, used as tank loading.
    double leakage_conductance(double v_vd) const {
        if (!leakage_table_)
            return 0.0;
        const double lo = leakage_table_->min_x(), hi = leakage_table_->max_x();
        const double v = std::clamp(v_vd, lo, hi);
        return leakage_table_->derivative(v);
    }

private:
    double c0_f_ = 0.0, vd_v_ = 1.0, exponent_ = 0.5;
    std::optional<PchipCurve> cap_table_;
    std::optional<PchipCurve> leakage_table_;
    double v_min_ = 0.0, v_max_ = 0.0;
    double window_lo_v_ = 0.0, window_hi_v_ = 0.0;
    double leakage_threshold_a_ = 1e-9;
};

inline double varactor_capacitance(const VaractorModel& m, double v_vd) {
    return m.capacitance(v_vd);
}

inline LeakageSample varactor_leakage(const VaractorModel& m, double v_vd) {
    return m.leakage(v_vd);
}

// ===========================================================================
// Thermal drift
// ===========================================================================

/// Linear frequency drift above an onset temperature, clamped above t_hi.
struct ThermalDriftModel {
    double sensitivity_hz_per_mk = -300.0; ///< sign is configurable; default negative
    double t_lo_mk = 60.0;
    double t_hi_mk = 120.0;
};

struct ThermalShift {
    double shift_hz = 0.0;
    bool extrapolated = false; ///< temperature above t_hi, value clamped
};

inline ThermalShift thermal_shift(const ThermalDriftModel& d, double t_mk) {
    if (t_mk < 0)
        throw DomainError("temperature must be non-negative");
    if (!(d.t_hi_mk > d.t_lo_mk))
        throw ValidationError("thermal drift: need t_hi > t_lo");
    if (t_mk <= d.t_lo_mk)
        return {0.0, false};
    if (t_mk <= d.t_hi_mk)
        return {d.sensitivity_hz_per_mk * (t_mk - d.t_lo_mk), false};
    return {d.sensitivity_hz_per_mk * (d.t_hi_mk - d.t_lo_mk), true};
}

// ===========================================================================
// Diode screening
// ===========================================================================

struct ScreeningReport {
    bool has_ndr = false;
    double ndr_lo_v = 0.0;      ///< maximal NDR interval (longest contiguous run)
    double ndr_hi_v = 0.0;
    double min_didv_s = 0.0;    ///< most negative slope found
    double min_didv_at_v = 0.0;
};

/// Dense dI/dV scan over [v_lo, v_hi] (intersected with the model's span).
inline ScreeningReport screen_diode(const DiodeModel& model, double v_lo, double v_hi,
                                    double step_v = 1e-3) {
    if (!(v_hi > v_lo))
        throw ValidationError("screen_diode: need v_hi > v_lo");
    if (!(step_v > 0))
        throw ValidationError("screen_diode: step must be positive");
    const double lo = std::max(v_lo, model.v_min());
    const double hi = std::min(v_hi, model.v_max());
    if (!(hi > lo))
        throw ValidationError("screen_diode: range does not overlap the model span");

    ScreeningReport report;
    report.min_didv_s = std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step_v)) + 1;
    double best_len = -1.0;
    double run_start = 0.0;
    bool in_run = false;
    double prev_v = lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::min(lo + static_cast<double>(i) * step_v, hi);
        const double g = model.conductance(v);
        if (g < report.min_didv_s) {
            report.min_didv_s = g;
            report.min_didv_at_v = v;
        }
        if (g < 0.0) {
            if (!in_run) {
                in_run = true;
                run_start = v;
            }
        } else if (in_run) {
            in_run = false;
            if (prev_v - run_start > best_len) {
                best_len = prev_v - run_start;
                report.ndr_lo_v = run_start;
                report.ndr_hi_v = prev_v;
            }
        }
        prev_v = v;
    }
    if (in_run && prev_v - run_start > best_len) {
        best_len = prev_v - run_start;
        report.ndr_lo_v = run_start;
        report.ndr_hi_v = prev_v;
    }
    report.has_ndr = best_len >= 0.0;
    return report;
}

// ===========================================================================
// Tabulated-curve CSV loading: header `v,i` or `v,c`, SI units, `#` comments
// ===========================================================================

struct CurveCsv {
    std::string y_name; ///< "i" or "c"
    std::vector<double> v;
    std::vector<double> y;
};

inline CurveCsv load_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open: " + path);
    CurveCsv data;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!have_header) {
            std::string h = line;
            std::transform(h.begin(), h.end(), h.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            h.erase(std::remove(h.begin(), h.end(), ' '), h.end());
            if (h == "v,i" || h == "v,c") {
                data.y_name = h.substr(2);
                have_header = true;
                continue;
            }
            std::ostringstream os;
            os << path << ": line " << lineno << ": expected header 'v,i' or 'v,c', got '"
               << line << "'";
            throw IoError(os.str());
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            std::ostringstream os;
            os << path << ": line " << lineno << ": expected 'v,value', got '" << line << "'";
            throw IoError(os.str());
        }
        char* end = nullptr;
        const std::string vs = line.substr(0, comma), ys = line.substr(comma + 1);
        const double v = std::strtod(vs.c_str(), &end);
        if (end == vs.c_str())
            throw IoError(path + ": line " + std::to_string(lineno) + ": bad voltage");
        const double y = std::strtod(ys.c_str(), &end);
        if (end == ys.c_str())
            throw IoError(path + ": line " + std::to_string(lineno) + ": bad value");
        data.v.push_back(v);
        data.y.push_back(y);
    }
    if (!have_header)
        throw IoError(path + ": missing 'v,i' or 'v,c' header row");
    if (data.v.size() < 2)
        throw IoError(path + ": need at least 2 data rows");
    return data;
}

inline DiodeModel load_diode_csv(const std::string& path, std::string label = "") {
    auto data = load_curve_csv(path);
    if (data.y_name != "i")
        throw IoError(path + ": expected an I-V table with header 'v,i'");
    return DiodeModel::tabulated(std::move(data.v), std::move(data.y), std::move(label));
}

inline VaractorModel load_varactor_capacitance_csv(const std::string& path) {
    auto data = load_curve_csv(path);
    if (data.y_name != "c")
        throw IoError(path + ": expected a C-V table with header 'v,c'");
    return VaractorModel::tabulated_capacitance(std::move(data.v), std::move(data.y));
}

} // namespace tdo
