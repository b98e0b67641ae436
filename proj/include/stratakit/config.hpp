#pragma once

#include <stdexcept>
#include <string>

namespace stratakit {

/// Central tolerance policy.  Every operation that makes a numeric decision
/// receives one of these explicitly; the defaults are what the CLI and the
/// self-check suite run with.
struct Tolerances {
    double real_snap_rel   = 1e-9;   ///< |Im z| below this (relative) snaps a root to the real axis
    double cluster_rel     = 1e-7;   ///< root clustering radius for multiplicity detection
    double generic_margin  = 1e-7;   ///< "generic within tolerance" relative margin
    double numeric_zero    = 1e-12;  ///< relative threshold treated as an exact zero
    double trace_tol       = 1e-10;  ///< adaptive RK tolerance for trajectory tracing
    double landing_rel     = 1e-6;   ///< landing radius delta = landing_rel * (1 + |root|)
    double quad_tol        = 1e-12;  ///< adaptive quadrature tolerance for path integrals
    double sym_project_rel = 1e-7;   ///< |Re eta| below this times |eta| projects eta to iR
    double period_agree    = 1e-6;   ///< residue vs quadrature relative agreement for the axis period
    double newton_tol      = 1e-9;   ///< residual target for realization
    double fd_step         = 1e-5;   ///< finite-difference step scale for Jacobians
    double locus_band      = 1e-7;   ///< degree-4 locus membership band (relative)

    int root_iter_cap    = 500;      ///< simultaneous-iteration cap for root finding
    int trace_step_cap   = 400000;   ///< RK step budget per trajectory
    int newton_iter_cap  = 60;
    int continuation_cap = 400;
    int seed_attempts    = 64;       ///< randomized fallback budget for stratum seeds
};

/// Base class of everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (CLI exit code 2).
struct InvalidInputError : Error {
    using Error::Error;
};

/// Input lies within tolerance of a bifurcation locus (CLI exit code 3).
struct NotGenericError : Error {
    using Error::Error;
};

/// An iteration, quadrature or tail estimate failed to converge (CLI exit code 4).
struct NumericFailureError : Error {
    using Error::Error;
};

/// Traced data contradicts the combinatorial contract; carries a diagnostic dump.
struct ExtractionError : NumericFailureError {
    using NumericFailureError::NumericFailureError;
};

} // namespace stratakit
