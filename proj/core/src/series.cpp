#include "qrform/series.hpp"

#include "qrform/errors.hpp"

namespace qrform {

std::string series_name(Series s) {
    switch (s) {
        case Series::GL: return "gl";
        case Series::SL: return "sl";
        case Series::O: return "o";
        case Series::Sp: return "sp";
    }
    return "?";
}

Series series_from_name(const std::string& name) {
    if (name == "gl") return Series::GL;
    if (name == "sl") return Series::SL;
    if (name == "o") return Series::O;
    if (name == "sp") return Series::Sp;
    throw ConfigError("unknown series '" + name + "' (expected gl|sl|o|sp)");
}

int SeriesSpec::eps() const {
    if (series_ == Series::O) return 1;
    if (series_ == Series::Sp) return -1;
    throw InadmissibleParam("eps is defined for the O/Sp series only");
}

Scalar SeriesSpec::mu() const {
    int e = eps();
    return Scalar(e) * q().pow(n_ - e);
}

int SeriesSpec::rho2(int i) const {
    // 2*rho_i for the standard half-integer staircase, 1-based index.
    int n = n_ / 2;
    if (series_ == Series::O) {
        if (n_ % 2 == 1) {
            if (i <= n) return n_ - 2 * i;
            if (i == n + 1) return 0;
            return n_ - 2 * i + 2;
        }
        return i <= n ? n_ - 2 * i : n_ - 2 * i + 2;
    }
    if (series_ == Series::Sp) {
        return i <= n ? n_ - 2 * i + 2 : n_ - 2 * i;
    }
    throw InadmissibleParam("rho is defined for the O/Sp series only");
}

int SeriesSpec::eps_i(int i) const {
    if (series_ == Series::O) return 1;
    if (series_ == Series::Sp) return i <= n_ / 2 ? 1 : -1;
    throw InadmissibleParam("eps_i is defined for the O/Sp series only");
}

Scalar SeriesSpec::metric_c(int i) const {
    // eps_i * q^{-rho_i} = eps_i * t^{-2 rho_i} (t_exp = 1 for O/Sp)
    return Scalar(eps_i(i)) * q_half_pow(-rho2(i));
}

bool SeriesSpec::z_admissible(const Scalar& z) const {
    if (z.is_zero()) return false;
    switch (series_) {
        case Series::GL: return true;
        case Series::SL: return (z.pow(n_) * q()).is_one();
        case Series::O:
        case Series::Sp: return z.pow(2).is_one();
    }
    return false;
}

bool SeriesSpec::zeta_admissible(const Scalar& zeta) const {
    if (zeta.is_zero()) return false;
    switch (series_) {
        case Series::GL: return true;
        case Series::SL: return zeta.pow(n_).is_one();
        case Series::O:
        case Series::Sp: return zeta.pow(2).is_one();
    }
    return false;
}

std::string SeriesSpec::z_constraint_text() const {
    switch (series_) {
        case Series::GL: return "z != 0";
        case Series::SL: return "z^" + std::to_string(n_) + " = q^-1";
        case Series::O:
        case Series::Sp: return "z^2 = 1";
    }
    return "";
}

Scalar SeriesSpec::default_z() const {
    if (series_ == Series::SL) return Scalar::t_pow(-2 * t_exp_ / n_);
    return Scalar(1);
}

std::string SeriesSpec::name() const {
    return series_name(series_) + std::to_string(n_);
}

SeriesSpec build_series(Series s, int N, int t_exp_override) {
    if (N < 2) throw InadmissibleParam("N must be at least 2");
    if (s == Series::Sp && N % 2 != 0)
        throw InadmissibleParam("symplectic series requires even N");
    SeriesSpec spec;
    spec.series_ = s;
    spec.n_ = N;
    if (t_exp_override > 0) {
        spec.t_exp_ = t_exp_override;
    } else if (s == Series::SL) {
        spec.t_exp_ = (N % 2 == 0) ? N / 2 : N;
    } else {
        spec.t_exp_ = 1;
    }
    if (s == Series::SL && (2 * spec.t_exp_) % N != 0)
        throw InadmissibleParam("SL t-exponent must make z^N = q^-1 solvable in Q(t)");
    return spec;
}

}  // namespace qrform
