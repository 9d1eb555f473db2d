#pragma once

#include <string>

#include "qrform/scalar.hpp"

namespace qrform {

enum class Series { GL, SL, O, Sp };

std::string series_name(Series s);
Series series_from_name(const std::string& name);  // gl|sl|o|sp

// A quantum-group selection with its derived constants. q is realized as
// t^(2*t_exp); the exponent is chosen so that the default SL parameter z with
// z^N = q^{-1} lies in Q(t) (no field extension is needed).
class SeriesSpec {
public:
    SeriesSpec() = default;

    Series series() const { return series_; }
    int N() const { return n_; }
    int t_exp() const { return t_exp_; }

    Scalar q() const { return Scalar::t_pow(2 * t_exp_); }
    Scalar q_half_pow(int k) const { return Scalar::t_pow(k * t_exp_); }  // q^(k/2)
    Scalar lambda() const { return q() - q().inv(); }

    bool is_bcd() const { return series_ == Series::O || series_ == Series::Sp; }
    int eps() const;                  // +1 for O, -1 for Sp
    Scalar mu() const;                // eps * q^(N-eps), B/C/D only
    int rho2(int i) const;            // 2*rho_i (integer), 1-based, B/C/D only
    int prime(int i) const { return n_ + 1 - i; }  // i' = N+1-i, 1-based
    Scalar metric_c(int i) const;     // eps_i * q^(-rho_i), 1-based, B/C/D only
    int eps_i(int i) const;           // per-index sign (Sp), 1-based

    bool z_admissible(const Scalar& z) const;
    bool zeta_admissible(const Scalar& zeta) const;
    std::string z_constraint_text() const;
    Scalar default_z() const;

    std::string name() const;  // e.g. "sp4"

    friend SeriesSpec build_series(Series s, int N, int t_exp_override);

private:
    Series series_ = Series::GL;
    int n_ = 0;
    int t_exp_ = 1;
};

// Validates the (series, N) combination; throws InadmissibleParam otherwise.
// t_exp_override = 0 picks the canonical exponent (1, or N/2 resp. N for SL).
SeriesSpec build_series(Series s, int N, int t_exp_override = 0);

}  // namespace qrform
