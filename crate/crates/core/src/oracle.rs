//! Ground truth for the spectral formulas: exact powering of the full
//! transition kernel over all `r^n` configurations, and seeded Monte Carlo.
//!
//! Configurations are indexed in mixed radix, base `r`, ball 0 most
//! significant (see [`UrnConfiguration::index`]).

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::TypeSpace;
use crate::error::{check_dims, Error, Result};
use crate::shuffles::{transition_probability, ShuffleKind, UrnConfiguration};
use crate::spectral::{SpectralWalk, TypeDistribution};
use crate::Limits;

/// Generator used by [`simulate`], recorded in reports.
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha), key = seed_from_u64(seed), stream = trial index";

const TRIALS_PER_TASK: u64 = 4096;

fn state_count(r: usize, n: usize, max_states: usize) -> Result<usize> {
    let count = (r as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > max_states as u128 {
        return Err(Error::CapExceeded {
            what: "configuration",
            count,
            cap: max_states,
        });
    }
    Ok(count as usize)
}

/// The transition matrix of a shuffle on `B(r, n)`.
///
/// Rows are stored sparsely (at most `n (r - 1)` nonzeros each); [`entry`]
/// answers for any pair.
///
/// [`entry`]: DenseKernel::entry
#[derive(Debug, Clone)]
pub struct DenseKernel {
    r: usize,
    n: usize,
    shuffle: ShuffleKind,
    rows: Vec<Vec<(usize, Ratio<u64>)>>,
}

impl DenseKernel {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shuffle(&self) -> ShuffleKind {
        self.shuffle
    }

    pub fn state_count(&self) -> usize {
        self.rows.len()
    }

    /// Nonzero entries of row `b`, by increasing column.
    pub fn row(&self, b: usize) -> &[(usize, Ratio<u64>)] {
        &self.rows[b]
    }

    pub fn entry(&self, b: usize, c: usize) -> Ratio<u64> {
        self.rows[b]
            .binary_search_by_key(&c, |&(col, _)| col)
            .map(|i| self.rows[b][i].1)
            .unwrap_or_else(|_| Ratio::from_integer(0))
    }

    /// Least common denominator of all entries.
    pub fn common_denominator(&self) -> u64 {
        self.rows
            .iter()
            .flatten()
            .fold(1u64, |acc, (_, p)| acc.lcm(p.denom()))
    }
}

/// Assembles the kernel from [`transition_probability`] on every pair at
/// Hamming distance one.
pub fn build_kernel(s: ShuffleKind, r: usize, n: usize, max_states: usize) -> Result<DenseKernel> {
    s.validate(r, n)?;
    let states = state_count(r, n, max_states)?;
    let rows = (0..states)
        .map(|b| {
            let from = UrnConfiguration::from_index(r, n, b)?;
            let mut row = Vec::new();
            for ball in 0..n {
                for shift in 1..r {
                    let mut assignment = from.assignment().to_vec();
                    assignment[ball] = (assignment[ball] + shift) % r;
                    let to = UrnConfiguration::new(r, assignment)?;
                    let p = transition_probability(s, &from, &to)?;
                    if !p.is_zero() {
                        row.push((to.index(), p));
                    }
                }
            }
            row.sort_by_key(|&(c, _)| c);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(DenseKernel {
        r,
        n,
        shuffle: s,
        rows,
    })
}

/// An exact distribution over configurations: `numerators[x] / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution {
    r: usize,
    n: usize,
    denominator: BigUint,
    numerators: Vec<BigUint>,
}

impl ExactDistribution {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn probability(&self, index: usize) -> BigRational {
        BigRational::new(
            self.numerators[index].clone().into(),
            self.denominator.clone().into(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.probability(i).to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Per-type masses, after checking that every configuration of a type
    /// carries exactly the same mass.
    pub fn collapse_to_types(&self, space: Arc<TypeSpace>) -> Result<TypeDistribution> {
        check_dims(space.r(), space.n(), self.r, self.n)?;
        let mut per_type: Vec<Option<&BigUint>> = vec![None; space.len()];
        for (x, num) in self.numerators.iter().enumerate() {
            let ty = UrnConfiguration::from_index(self.r, self.n, x)?.type_of();
            let slot = &mut per_type[space.index_of(&ty)?];
            match slot {
                None => *slot = Some(num),
                Some(seen) if *seen == num => {}
                Some(_) => return Err(Error::NotTypeInvariant(ty.to_string())),
            }
        }
        let mass = per_type
            .into_iter()
            .map(|num| {
                let num = num.cloned().unwrap_or_default();
                BigRational::new(num.into(), self.denominator.clone().into())
                    .to_f64()
                    .unwrap_or(f64::NAN)
            })
            .collect();
        TypeDistribution::from_masses(space, mass)
    }
}

/// The law of the chain after `steps` moves from `I_0`, by repeated sparse
/// vector-kernel products over a common denominator.
pub fn power_distribution(kernel: &DenseKernel, steps: u64) -> ExactDistribution {
    kernel
        .powers()
        .nth(steps as usize)
        .expect("the power sequence is unbounded")
}

/// The laws after 0, 1, 2, ... moves from `I_0`.
#[derive(Debug, Clone)]
pub struct KernelPowers<'a> {
    kernel: &'a DenseKernel,
    /// Entries scaled to integers over `step_denominator`.
    weights: Vec<Vec<(usize, u64)>>,
    step_denominator: u64,
    current: ExactDistribution,
}

impl DenseKernel {
    pub fn powers(&self) -> KernelPowers<'_> {
        let den = self.common_denominator();
        let weights = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, p)| (*c, p.numer() * (den / p.denom())))
                    .collect()
            })
            .collect();
        let mut numerators = vec![BigUint::zero(); self.state_count()];
        numerators[0] = BigUint::from(1u32);
        KernelPowers {
            kernel: self,
            weights,
            step_denominator: den,
            current: ExactDistribution {
                r: self.r,
                n: self.n,
                denominator: BigUint::from(1u32),
                numerators,
            },
        }
    }
}

impl Iterator for KernelPowers<'_> {
    type Item = ExactDistribution;

    fn next(&mut self) -> Option<ExactDistribution> {
        let states = self.kernel.state_count();
        let mut next = vec![BigUint::zero(); states];
        for (b, mass) in self.current.numerators.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for &(c, w) in &self.weights[b] {
                next[c] += mass * w;
            }
        }
        let advanced = ExactDistribution {
            r: self.current.r,
            n: self.current.n,
            denominator: &self.current.denominator * self.step_denominator,
            numerators: next,
        };
        Some(std::mem::replace(&mut self.current, advanced))
    }
}

/// Worst per-configuration disagreement between the spectral distribution and
/// the powered kernel over `N = 0..=max_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleComparison {
    pub max_error: f64,
    pub worst_step: u64,
}

pub fn compare_with_spectral(
    s: ShuffleKind,
    r: usize,
    n: usize,
    max_steps: u64,
    limits: &Limits,
) -> Result<OracleComparison> {
    let kernel = build_kernel(s, r, n, limits.max_states)?;
    let walk = SpectralWalk::new(s, r, n, limits)?;
    let mut worst = OracleComparison {
        max_error: 0.0,
        worst_step: 0,
    };
    for (steps, exact) in (0..=max_steps).zip(kernel.powers()) {
        let exact = exact.collapse_to_types(walk.space().clone())?;
        let spectral = walk.distribution(steps)?;
        let err = exact
            .masses()
            .iter()
            .zip(spectral.masses())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if err > worst.max_error || err.is_nan() {
            worst = OracleComparison {
                max_error: err,
                worst_step: steps,
            };
        }
    }
    Ok(worst)
}

/// Visit counts of the final configuration over independent runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    pub r: usize,
    pub n: usize,
    pub steps: u64,
    pub trials: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
}

impl EmpiricalDistribution {
    pub fn probabilities(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.trials as f64)
            .collect()
    }

    /// Total variation distance to per-configuration probabilities `exact`.
    pub fn tv_to(&self, exact: &[f64]) -> Result<f64> {
        if exact.len() != self.counts.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} probabilities, got {}",
                self.counts.len(),
                exact.len()
            )));
        }
        Ok(0.5
            * self
                .probabilities()
                .iter()
                .zip(exact)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>())
    }
}

fn one_run(s: ShuffleKind, r: usize, n: usize, steps: u64, rng: &mut ChaCha8Rng) -> usize {
    let mut state = vec![0usize; n];
    for _ in 0..steps {
        let ball = rng.random_range(0..n);
        let shift = match s {
            ShuffleKind::AnyOther => rng.random_range(1..r),
            ShuffleKind::CyclicLeft => 1,
            ShuffleKind::CyclicBidirectional => {
                if rng.random::<bool>() {
                    1
                } else {
                    r - 1
                }
            }
        };
        state[ball] = (state[ball] + shift) % r;
    }
    state.iter().fold(0, |acc, &u| acc * r + u)
}

/// Runs `trials` independent chains of `steps` moves from `I_0`.
///
/// Trial `t` draws from its own ChaCha8 stream `t` under a key derived from
/// `seed`, so the counts do not depend on how trials are spread over threads.
pub fn simulate(
    s: ShuffleKind,
    r: usize,
    n: usize,
    steps: u64,
    trials: u64,
    seed: u64,
    max_states: usize,
) -> Result<EmpiricalDistribution> {
    s.validate(r, n)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let states = state_count(r, n, max_states)?;
    let tasks = trials.div_ceil(TRIALS_PER_TASK);
    let counts = (0..tasks)
        .into_par_iter()
        .map(|task| {
            let mut counts = vec![0u64; states];
            let start = task * TRIALS_PER_TASK;
            let end = (start + TRIALS_PER_TASK).min(trials);
            for trial in start..end {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(trial);
                counts[one_run(s, r, n, steps, &mut rng)] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; states],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(EmpiricalDistribution {
        r,
        n,
        steps,
        trials,
        seed,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Composition;

    fn ratio(a: u64, b: u64) -> Ratio<u64> {
        Ratio::new(a, b)
    }

    #[test]
    fn kernel_examples() {
        let k = build_kernel(ShuffleKind::AnyOther, 2, 1, 4096).unwrap();
        assert_eq!(k.entry(0, 0), ratio(0, 1));
        assert_eq!(k.entry(0, 1), ratio(1, 1));
        assert_eq!(k.entry(1, 0), ratio(1, 1));
        assert_eq!(k.entry(1, 1), ratio(0, 1));

        let k = build_kernel(ShuffleKind::CyclicLeft, 3, 1, 4096).unwrap();
        for b in 0..3 {
            for c in 0..3 {
                let expected = if c == (b + 1) % 3 { 1 } else { 0 };
                assert_eq!(k.entry(b, c), ratio(expected, 1));
            }
        }
    }

    #[test]
    fn kernel_rows_sum_to_one_and_support_is_distance_one() {
        for s in ShuffleKind::ALL {
            for r in 2..=4 {
                for n in 1..=4 {
                    let k = build_kernel(s, r, n, 4096).unwrap();
                    for b in 0..k.state_count() {
                        let total: Ratio<u64> = k.row(b).iter().map(|(_, p)| *p).sum();
                        assert_eq!(total, ratio(1, 1));
                        let from = UrnConfiguration::from_index(r, n, b).unwrap();
                        for &(c, _) in k.row(b) {
                            let to = UrnConfiguration::from_index(r, n, c).unwrap();
                            assert_eq!(crate::hamming_distance(&from, &to).unwrap(), 1);
                        }
                    }
                }
            }
        }
    }

    fn negate(r: usize, n: usize, x: usize) -> usize {
        let c = UrnConfiguration::from_index(r, n, x).unwrap();
        let neg = c.assignment().iter().map(|&u| (r - u) % r).collect();
        UrnConfiguration::new(r, neg).unwrap().index()
    }

    #[test]
    fn kernel_symmetries() {
        for r in 2..=4 {
            for n in 1..=3 {
                for s in [ShuffleKind::AnyOther, ShuffleKind::CyclicBidirectional] {
                    let k = build_kernel(s, r, n, 4096).unwrap();
                    for b in 0..k.state_count() {
                        for c in 0..k.state_count() {
                            assert_eq!(k.entry(b, c), k.entry(c, b));
                        }
                    }
                }
                let k = build_kernel(ShuffleKind::CyclicLeft, r, n, 4096).unwrap();
                for b in 0..k.state_count() {
                    for c in 0..k.state_count() {
                        assert_eq!(k.entry(b, c), k.entry(negate(r, n, c), negate(r, n, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_cap() {
        assert!(matches!(
            build_kernel(ShuffleKind::AnyOther, 4, 7, 4096),
            Err(Error::CapExceeded { count: 16384, .. })
        ));
        assert!(build_kernel(ShuffleKind::AnyOther, 4, 6, 4096).is_ok());
    }

    #[test]
    fn power_examples() {
        let k = build_kernel(ShuffleKind::AnyOther, 3, 2, 4096).unwrap();
        let d = power_distribution(&k, 0);
        assert_eq!(d.probability(0), BigRational::from_integer(1.into()));
        assert!((1..d.len()).all(|i| d.probability(i).is_zero()));

        let k = build_kernel(ShuffleKind::AnyOther, 2, 1, 4096).unwrap();
        let d = power_distribution(&k, 2);
        assert_eq!(d.to_f64(), vec![1.0, 0.0]);

        let k = build_kernel(ShuffleKind::AnyOther, 3, 1, 4096).unwrap();
        let d = power_distribution(&k, 2);
        assert_eq!(d.to_f64(), vec![0.5, 0.25, 0.25]);
    }

    #[test]
    fn powers_iterate_one_step_at_a_time() {
        let k = build_kernel(ShuffleKind::CyclicLeft, 3, 2, 4096).unwrap();
        let seq: Vec<_> = k.powers().take(5).collect();
        for (steps, d) in seq.iter().enumerate() {
            assert_eq!(*d, power_distribution(&k, steps as u64));
        }
    }

    #[test]
    fn power_is_type_invariant() {
        for s in ShuffleKind::ALL {
            let k = build_kernel(s, 3, 4, 4096).unwrap();
            let space = Arc::new(TypeSpace::new(3, 4, 100).unwrap());
            for steps in 0..8 {
                let d = power_distribution(&k, steps);
                let collapsed = d.collapse_to_types(space.clone()).unwrap();
                assert!((collapsed.total() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn collapse_detects_non_invariant_input() {
        let space = Arc::new(TypeSpace::new(2, 2, 100).unwrap());
        let d = ExactDistribution {
            r: 2,
            n: 2,
            denominator: BigUint::from(4u32),
            numerators: [1u32, 2, 0, 1].into_iter().map(BigUint::from).collect(),
        };
        assert_eq!(
            d.collapse_to_types(space).unwrap_err(),
            Error::NotTypeInvariant(Composition::new(vec![1, 1]).unwrap().to_string())
        );
    }

    #[test]
    fn simulation_trivial_cases() {
        let e = simulate(ShuffleKind::AnyOther, 3, 2, 0, 100, 1, 4096).unwrap();
        assert_eq!(e.counts[0], 100);
        for seed in [0, 7, 12345] {
            let e = simulate(ShuffleKind::AnyOther, 2, 1, 1, 50, seed, 4096).unwrap();
            assert_eq!(e.counts, vec![0, 50]);
        }
        assert!(simulate(ShuffleKind::AnyOther, 2, 1, 1, 0, 0, 4096).is_err());
    }

    #[test]
    fn simulation_is_reproducible_and_seed_sensitive() {
        let a = simulate(ShuffleKind::CyclicBidirectional, 4, 3, 9, 10_000, 42, 4096).unwrap();
        let b = simulate(ShuffleKind::CyclicBidirectional, 4, 3, 9, 10_000, 42, 4096).unwrap();
        let c = simulate(ShuffleKind::CyclicBidirectional, 4, 3, 9, 10_000, 43, 4096).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.counts, c.counts);
        assert_eq!(a.counts.iter().sum::<u64>(), 10_000);
    }

    #[test]
    fn simulation_error_shrinks_with_trials() {
        let k = build_kernel(ShuffleKind::AnyOther, 3, 3, 4096).unwrap();
        let exact = power_distribution(&k, 10).to_f64();
        let small = simulate(ShuffleKind::AnyOther, 3, 3, 10, 1_000, 9, 4096).unwrap();
        let large = simulate(ShuffleKind::AnyOther, 3, 3, 10, 100_000, 9, 4096).unwrap();
        assert!(large.tv_to(&exact).unwrap() < small.tv_to(&exact).unwrap());
    }
}
