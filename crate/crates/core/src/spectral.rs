//! Exact `N`-step distributions by spherical Fourier inversion, total
//! variation distances, the upper bound, limits and the cutoff estimate.
//!
//! A distribution of the walk started at `I_0` is bi-`S_n`-invariant, so it is
//! constant on configurations of the same type. Everything here is stored per
//! type `l` as the mass of a single configuration of that type; sums over
//! `B(r, n)` become sums over types weighted by `C(n; l)`.
//!
//! Per-configuration mass after `N` steps:
//!
//! ```text
//! p_N(l) = r^{-n} * sum_k C(n; k) f_k^N omega_{k,l}
//! ```
//!
//! The `k = (n, 0, ..., 0)` term is exactly `r^{-n}`. The remaining terms give
//! the deviation from uniform directly, which keeps small distances accurate
//! long after the mass itself has converged.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{elementary_symmetric_all, Composition, TypeSpace};
use crate::error::{check_dims, Error, Result};
use crate::gelfand::ZonalTable;
use crate::shuffles::{fourier_coefficient, ShuffleKind};
use crate::Limits;

/// Largest imaginary residue tolerated in a reconstructed per-configuration mass.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;
/// Reconstructed masses in `[-NEGATIVE_TOLERANCE, 0)` are clamped to zero.
pub const NEGATIVE_TOLERANCE: f64 = 1e-12;

/// A probability distribution on `B(r, n)` that is constant on types.
#[derive(Debug, Clone)]
pub struct TypeDistribution {
    space: Arc<TypeSpace>,
    mass: Vec<f64>,
}

impl TypeDistribution {
    /// From per-configuration masses in the space's composition order.
    pub fn from_masses(space: Arc<TypeSpace>, mass: Vec<f64>) -> Result<Self> {
        if mass.len() != space.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} masses, got {}",
                space.len(),
                mass.len()
            )));
        }
        Ok(Self { space, mass })
    }

    /// `pi = r^{-n}` on every configuration.
    pub fn uniform(space: Arc<TypeSpace>) -> Self {
        let mass = vec![1.0 / space.state_count_f64(); space.len()];
        Self { space, mass }
    }

    /// All mass on `I_0`.
    pub fn start(space: Arc<TypeSpace>) -> Self {
        let mut mass = vec![0.0; space.len()];
        mass[space.trivial_index()] = 1.0;
        Self { space, mass }
    }

    pub fn space(&self) -> &Arc<TypeSpace> {
        &self.space
    }

    pub fn r(&self) -> usize {
        self.space.r()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// Per-configuration masses in composition order.
    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    /// Mass of a single configuration of type `l`.
    pub fn mass(&self, l: &Composition) -> Result<f64> {
        Ok(self.mass[self.space.index_of(l)?])
    }

    /// Mass of the whole type class at `index`.
    pub fn class_mass(&self, index: usize) -> f64 {
        self.mass[index] * self.space.multinomial_f64(index)
    }

    /// Total mass over `B(r, n)`.
    pub fn total(&self) -> f64 {
        (0..self.mass.len()).map(|i| self.class_mass(i)).sum()
    }
}

/// `(1/2) sum_x |a(x) - b(x)|` over `B(r, n)`.
pub fn tv_distance(a: &TypeDistribution, b: &TypeDistribution) -> Result<f64> {
    check_dims(a.r(), a.n(), b.r(), b.n())?;
    Ok(0.5
        * a.mass
            .iter()
            .zip(&b.mass)
            .enumerate()
            .map(|(i, (x, y))| a.space.multinomial_f64(i) * (x - y).abs())
            .sum::<f64>())
}

/// The Fourier coefficients `f_k` of a shuffle over `N(r, n)`.
#[derive(Debug, Clone)]
pub struct SpectralProfile {
    shuffle: ShuffleKind,
    space: Arc<TypeSpace>,
    coefficients: Vec<Complex64>,
}

impl SpectralProfile {
    pub fn new(shuffle: ShuffleKind, space: Arc<TypeSpace>) -> Result<Self> {
        shuffle.validate(space.r(), space.n())?;
        let coefficients = space
            .compositions()
            .iter()
            .map(|k| fourier_coefficient(shuffle, k))
            .collect::<Result<_>>()?;
        Ok(Self {
            shuffle,
            space,
            coefficients,
        })
    }

    pub fn shuffle(&self) -> ShuffleKind {
        self.shuffle
    }

    pub fn space(&self) -> &Arc<TypeSpace> {
        &self.space
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `f_k` raised to `steps`.
    fn power(&self, index: usize, steps: u32) -> Complex64 {
        let f = self.coefficients[index];
        if f.im == 0.0 {
            Complex64::new(f.re.powi(steps as i32), 0.0)
        } else {
            f.powu(steps)
        }
    }

    /// `|f_k|^{2 steps}`, with `|f_k|` clamped to 1.
    fn squared_modulus_power(&self, index: usize, steps: u32) -> f64 {
        self.coefficients[index]
            .norm_sqr()
            .min(1.0)
            .powi(steps as i32)
    }

    /// `(1/4) sum_{k nontrivial} C(n; k) |f_k|^{2 steps}` and its square root.
    pub fn upper_bound(&self, steps: u32) -> UpperBound {
        let squared = 0.25
            * (0..self.coefficients.len())
                .filter(|&i| i != self.space.trivial_index())
                .map(|i| self.space.multinomial_f64(i) * self.squared_modulus_power(i, steps))
                .sum::<f64>();
        UpperBound {
            squared,
            value: squared.sqrt(),
        }
    }
}

/// The total variation upper bound, squared and unsquared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub squared: f64,
    pub value: f64,
}

/// One row of a mixing curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixingPoint {
    pub steps: u32,
    pub tv_exact: f64,
    pub tv_bound: f64,
    pub tv_squared: f64,
    pub bound_squared: f64,
}

/// Zonal table and Fourier coefficients of one shuffle, ready to evaluate
/// `p_N` for any `N`.
#[derive(Debug, Clone)]
pub struct SpectralWalk {
    profile: SpectralProfile,
    /// `C(n; k) omega_{k,l} / r^n`, row-major in `k`.
    weighted: Vec<Complex64>,
}

impl SpectralWalk {
    pub fn new(shuffle: ShuffleKind, r: usize, n: usize, limits: &Limits) -> Result<Self> {
        shuffle.validate(r, n)?;
        let space = Arc::new(TypeSpace::new(r, n, limits.max_types)?);
        let table = ZonalTable::build(space)?;
        Self::from_table(shuffle, &table)
    }

    pub fn from_table(shuffle: ShuffleKind, table: &ZonalTable) -> Result<Self> {
        let space = table.space().clone();
        let profile = SpectralProfile::new(shuffle, space.clone())?;
        let m = space.len();
        let states = space.state_count_f64();
        let mut weighted = Vec::with_capacity(m * m);
        for k in 0..m {
            let scale = space.multinomial_f64(k) / states;
            weighted.extend(table.row(k).iter().map(|w| w * scale));
        }
        Ok(Self { profile, weighted })
    }

    pub fn profile(&self) -> &SpectralProfile {
        &self.profile
    }

    pub fn space(&self) -> &Arc<TypeSpace> {
        self.profile.space()
    }

    fn check_steps(steps: u64) -> Result<u32> {
        u32::try_from(steps)
            .ok()
            .filter(|&s| s <= i32::MAX as u32)
            .ok_or_else(|| Error::InvalidArgument(format!("step count {steps} is too large")))
    }

    /// `p_N(l) - r^{-n}` for every type, summing the terms whose index passes `keep`.
    fn deviation_where(&self, steps: u64, keep: impl Fn(usize) -> bool) -> Result<Vec<f64>> {
        let steps = Self::check_steps(steps)?;
        let space = self.space();
        let m = space.len();
        let mut acc = vec![Complex64::new(0.0, 0.0); m];
        for k in (0..m).filter(|&k| k != space.trivial_index() && keep(k)) {
            let fk = self.profile.power(k, steps);
            if fk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (slot, w) in acc.iter_mut().zip(&self.weighted[k * m..(k + 1) * m]) {
                *slot += fk * w;
            }
        }
        let residue = acc.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
        if residue > IMAGINARY_TOLERANCE {
            return Err(Error::ImaginaryResidue(residue));
        }
        Ok(acc.into_iter().map(|v| v.re).collect())
    }

    /// `p_N(l) - r^{-n}` for every type.
    pub fn deviation(&self, steps: u64) -> Result<Vec<f64>> {
        self.deviation_where(steps, |_| true)
    }

    /// The distribution after `steps` shuffles from `I_0`.
    pub fn distribution(&self, steps: u64) -> Result<TypeDistribution> {
        let space = self.space().clone();
        let uniform = 1.0 / space.state_count_f64();
        let mass = self
            .deviation(steps)?
            .into_iter()
            .map(|d| uniform + d)
            .collect();
        finish(space, mass)
    }

    /// `||p_N - pi||_TV`.
    pub fn tv_to_uniform(&self, steps: u64) -> Result<f64> {
        let space = self.space();
        let dev = self.deviation(steps)?;
        Ok(0.5
            * dev
                .iter()
                .enumerate()
                .map(|(l, d)| space.multinomial_f64(l) * d.abs())
                .sum::<f64>())
    }

    /// For `r = 2`: distance from `p_N` to the limit along the parity of `N`.
    pub fn tv_to_parity_limit(&self, steps: u64) -> Result<f64> {
        let space = self.space();
        if space.r() != 2 {
            return Err(Error::InvalidArgument(
                "parity limits exist only for r = 2".into(),
            ));
        }
        // The limit differs from uniform by exactly the k = (0, n) term.
        let sign_index = space.len() - 1;
        let dev = self.deviation_where(steps, |k| k != sign_index)?;
        Ok(0.5
            * dev
                .iter()
                .enumerate()
                .map(|(l, d)| space.multinomial_f64(l) * d.abs())
                .sum::<f64>())
    }

    pub fn upper_bound(&self, steps: u64) -> Result<UpperBound> {
        Ok(self.profile.upper_bound(Self::check_steps(steps)?))
    }

    /// Exact distance to uniform and the bound for every `N` in `range`.
    pub fn mixing_curve(&self, range: std::ops::RangeInclusive<u64>) -> Result<Vec<MixingPoint>> {
        range
            .map(|steps| {
                let tv = self.tv_to_uniform(steps)?;
                let bound = self.upper_bound(steps)?;
                Ok(MixingPoint {
                    steps: steps as u32,
                    tv_exact: tv,
                    tv_bound: bound.value,
                    tv_squared: tv * tv,
                    bound_squared: bound.squared,
                })
            })
            .collect()
    }
}

/// Clamp tiny negative masses and reject genuinely negative ones.
fn finish(space: Arc<TypeSpace>, mut mass: Vec<f64>) -> Result<TypeDistribution> {
    for (i, m) in mass.iter_mut().enumerate() {
        if *m < 0.0 {
            if *m < -NEGATIVE_TOLERANCE {
                return Err(Error::NegativeMass {
                    mass: *m,
                    composition: space.get(i).to_string(),
                });
            }
            *m = 0.0;
        }
    }
    TypeDistribution::from_masses(space, mass)
}

/// Distribution after `steps` shuffles of kind `s`, using default limits.
pub fn distribution_after(
    s: ShuffleKind,
    steps: u64,
    r: usize,
    n: usize,
) -> Result<TypeDistribution> {
    SpectralWalk::new(s, r, n, &Limits::default())?.distribution(steps)
}

/// The any-other distribution through the collapsed sum over `k_0`:
///
/// ```text
/// p_N(l) = r^{-n} sum_{k_0} ((r k_0 - n) / (n (r - 1)))^N e_{n - k_0}(Phi_1, ..., Phi_n)
/// ```
///
/// with `Phi_i = r - 1` for balls in urn 0 and `-1` otherwise.
pub fn distribution_after_elementary(steps: u64, r: usize, n: usize) -> Result<TypeDistribution> {
    ShuffleKind::AnyOther.validate(r, n)?;
    let steps = SpectralWalk::check_steps(steps)?;
    let space = Arc::new(TypeSpace::new(r, n, Limits::default().max_types)?);
    let states = space.state_count_f64();
    let eigen: Vec<f64> = (0..=n)
        .map(|k0| {
            let f = (r as f64 * k0 as f64 - n as f64) / (n as f64 * (r as f64 - 1.0));
            f.powi(steps as i32)
        })
        .collect();
    let mass = space
        .compositions()
        .iter()
        .map(|l| {
            let phi: Vec<Complex64> = l
                .parts()
                .iter()
                .enumerate()
                .flat_map(|(color, &m)| {
                    let v = if color == 0 { r as f64 - 1.0 } else { -1.0 };
                    std::iter::repeat_n(Complex64::new(v, 0.0), m)
                })
                .collect();
            let e = elementary_symmetric_all(&phi);
            let total: Complex64 = (0..=n).map(|k0| e[n - k0] * eigen[k0]).sum();
            total.re / states
        })
        .collect();
    finish(space, mass)
}

/// `sqrt((1/4) sum_{k nontrivial} C(n;k) |f_k|^{2N})`, reported with its square.
pub fn tv_upper_bound(s: ShuffleKind, steps: u64, r: usize, n: usize) -> Result<UpperBound> {
    s.validate(r, n)?;
    let space = Arc::new(TypeSpace::new(r, n, Limits::default().max_types)?);
    let profile = SpectralProfile::new(s, space)?;
    Ok(profile.upper_bound(SpectralWalk::check_steps(steps)?))
}

/// Step count `N(c) = (n (r - 1) / (2 r)) (n log r + c)` and the guarantee
/// that holds there for the any-other shuffle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffEstimate {
    pub r: usize,
    pub n: usize,
    pub c: f64,
    /// Real-valued threshold; callers round up.
    pub steps: f64,
    /// `(1/4) e^{-c}`.
    pub guarantee: f64,
    /// What the guarantee bounds is `TV^2 - offset`: 1/4 for `r = 2`, else 0.
    pub offset: f64,
}

impl CutoffEstimate {
    pub fn steps_ceil(&self) -> u64 {
        self.steps.max(0.0).ceil() as u64
    }

    /// Whether `tv^2 - offset <= guarantee`.
    pub fn holds_for(&self, tv: f64) -> bool {
        tv * tv - self.offset <= self.guarantee
    }
}

pub fn cutoff_threshold(r: usize, n: usize, c: f64) -> Result<CutoffEstimate> {
    if r < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "need r >= 2 and n >= 1, got r={r}, n={n}"
        )));
    }
    if !c.is_finite() {
        return Err(Error::InvalidArgument(format!("c must be finite, got {c}")));
    }
    let (rf, nf) = (r as f64, n as f64);
    Ok(CutoffEstimate {
        r,
        n,
        c,
        steps: nf * (rf - 1.0) / (2.0 * rf) * (nf * rf.ln() + c),
        guarantee: 0.25 * (-c).exp(),
        offset: if r == 2 { 0.25 } else { 0.0 },
    })
}

/// Parity of the step subsequence along which a limit is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(steps: u64) -> Self {
        if steps.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Limit of the any-other walk along the given parity: uniform for `r > 2`;
/// for `r = 2`, `2^{1-n}` on types whose urn-1 count has that parity.
pub fn limit_distribution(r: usize, n: usize, parity: Parity) -> Result<TypeDistribution> {
    let space = Arc::new(TypeSpace::new(r, n, Limits::default().max_types)?);
    if r > 2 {
        return Ok(TypeDistribution::uniform(space));
    }
    let want = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let per_state = 2.0 / space.state_count_f64();
    let mass = space
        .compositions()
        .iter()
        .map(|l| {
            if l.parts()[1] % 2 == want {
                per_state
            } else {
                0.0
            }
        })
        .collect();
    TypeDistribution::from_masses(space, mass)
}
