#pragma once

#include <optional>
#include <string>

#include "qrform/qmatrix.hpp"
#include "qrform/series.hpp"

namespace qrform {

// The standard R-matrix data of a series, with every defining identity
// re-verified at construction time (YBE, braid relation, minimal polynomial,
// inverses, skein element). Entries follow the convention
// r_z(u^i_j ox u^n_m) = z R^{in}_{jm}, stored at row (i,n), column (j,m),
// with Rhat = P.R; the FRT relation then reads Rhat u1 u2 = u1 u2 Rhat.
struct RMatrixBundle {
    SeriesSpec spec;
    QMatrix R;         // N^2 x N^2
    QMatrix Rhat;      // P.R
    QMatrix Rinv;
    QMatrix Rhat_inv;
    QMatrix ehat;      // B/C/D only: I - lambda^{-1}(Rhat - Rhat^{-1})
    QMatrix metric;    // B/C/D only: N x N, C_{ij} = c_i delta_{j,i'}
    Scalar ehat_x;     // B/C/D only: ehat^2 = x ehat
    bool hecke_dependent = false;  // series A: Rhat^{-1} = Rhat - lambda I
    int eigen_directions_rank = 2;  // rank of {Rhat, Rhat^-1, I}; 3 for B/C/D, N > 2
};

struct BuildOptions {
    std::string data_path;          // empty: use default table location
    std::optional<mpq_class> t0;    // numeric pre-check point; exact always runs
};

// Resolved location of the shipped B/C/D entry table.
std::string default_table_path();

// Construct and verify the bundle; throws ConstructionError with the first
// violated identity and a witness entry on any inconsistency.
RMatrixBundle build_rmatrix(const SeriesSpec& spec, const BuildOptions& opts = {});

// M_12 M_23 M_12 - M_23 M_12 M_23 on the three-leg space; zero iff m
// satisfies the braid relation.
QMatrix braid_defect_of(const QMatrix& m, int N);

// The flip P on two legs of dimension N.
QMatrix flip_matrix(int N);

}  // namespace qrform
