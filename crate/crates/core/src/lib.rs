//! Exact spectral analysis of multi-urn Ehrenfest diffusions.
//!
//! `n` labelled balls move among `r` urns; at each step one ball is picked
//! uniformly and moved according to a [`ShuffleKind`]. The configuration space
//! `B(r, n)` is the homogeneous space `G(r,1,n) / S_n` of the wreath product
//! `Z/r ~ S_n`, and because that pair is a Gelfand pair every distribution of
//! the walk started with all balls in urn 0 is determined by its values on
//! orbit types. The zonal spherical functions diagonalise the walk, which
//! gives closed-form `N`-step distributions, total variation curves and
//! cutoff estimates.
//!
//! Module map:
//!
//! * [`combinatorics`]: compositions, multinomials, symmetric polynomials at roots of unity
//! * [`gelfand`]: the zonal spherical function table
//! * [`shuffles`]: transition kernels and Fourier coefficients
//! * [`spectral`]: distributions, distances, bounds, limits and cutoff
//! * [`oracle`]: brute-force kernel powering and Monte Carlo simulation

pub mod combinatorics;
pub mod error;
pub mod gelfand;
pub mod oracle;
pub mod shuffles;
pub mod spectral;

pub use combinatorics::{
    composition_count, compositions, elementary_symmetric, monomial_symmetric_at_type, multinomial,
    Composition, RootOfUnityMultiset, TypeSpace, ORDERING,
};
pub use error::{Error, Result};
pub use gelfand::{group_element_type, zonal_table, zonal_value, GroupElement, ZonalTable};
pub use oracle::{
    build_kernel, compare_with_spectral, power_distribution, simulate, DenseKernel,
    EmpiricalDistribution, ExactDistribution, KernelPowers, OracleComparison, RNG_ALGORITHM,
};
pub use shuffles::{
    fourier_coefficient, fourier_coefficient_numeric, hamming_distance, transition_probability,
    ShuffleKind, UrnConfiguration,
};
pub use spectral::{
    cutoff_threshold, distribution_after, distribution_after_elementary, limit_distribution,
    tv_distance, tv_upper_bound, CutoffEstimate, MixingPoint, Parity, SpectralProfile,
    SpectralWalk, TypeDistribution, UpperBound,
};

/// Resource caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `|N(r, n)| = C(n + r - 1, r - 1)` accepted for tables and distributions.
    pub max_types: usize,
    /// Largest `r^n` accepted by the brute-force oracle.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_types: 5000,
            max_states: 4096,
        }
    }
}
