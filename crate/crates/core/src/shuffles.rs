//! Urn configurations, the three one-ball shuffles, and their Fourier coefficients.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{root_of_unity, Composition};
use crate::error::{check_dims, Error, Result};
use crate::gelfand::{zonal_value, GroupElement};

/// A point of `B(r, n)`: `assignment[i]` is the urn holding ball `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UrnConfiguration {
    r: usize,
    assignment: Vec<usize>,
}

impl UrnConfiguration {
    pub fn new(r: usize, assignment: Vec<usize>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("need r >= 2, got {r}")));
        }
        if let Some(&u) = assignment.iter().find(|&&u| u >= r) {
            return Err(Error::InvalidArgument(format!(
                "urn {u} does not exist when r = {r}"
            )));
        }
        Ok(Self { r, assignment })
    }

    /// `I_0`: every ball in urn 0.
    pub fn start(r: usize, n: usize) -> Result<Self> {
        Self::new(r, vec![0; n])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Number of balls in each urn.
    pub fn type_of(&self) -> Composition {
        let mut parts = vec![0; self.r];
        for &u in &self.assignment {
            parts[u] += 1;
        }
        Composition::new(parts).expect("r >= 2")
    }

    /// Mixed-radix index, base `r`, ball 0 most significant.
    pub fn index(&self) -> usize {
        self.assignment.iter().fold(0, |acc, &u| acc * self.r + u)
    }

    pub fn from_index(r: usize, n: usize, mut index: usize) -> Result<Self> {
        let mut assignment = vec![0; n];
        for slot in assignment.iter_mut().rev() {
            *slot = index % r;
            index /= r;
        }
        if index != 0 {
            return Err(Error::InvalidArgument(format!(
                "configuration index out of range for r={r}, n={n}"
            )));
        }
        Self::new(r, assignment)
    }

    /// `x . b = (x_i + b_{sigma^{-1}(i)} mod r)_i`.
    pub fn transformed_by(&self, g: &GroupElement) -> Result<Self> {
        check_dims(self.r, self.n(), g.r(), g.n())?;
        let inv = g.inverse_permutation();
        let assignment = (0..self.n())
            .map(|i| (g.colors()[i] + self.assignment[inv[i]]) % self.r)
            .collect();
        Ok(Self {
            r: self.r,
            assignment,
        })
    }
}

/// Where a picked ball goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShuffleKind {
    /// Uniformly to one of the other `r - 1` urns.
    AnyOther,
    /// From urn `i` to urn `i + 1 mod r`.
    CyclicLeft,
    /// From urn `i` to urn `i + 1` or `i - 1 mod r`, each with probability 1/2.
    #[serde(rename = "cyclic-bidir")]
    CyclicBidirectional,
}

impl ShuffleKind {
    pub const ALL: [ShuffleKind; 3] = [
        ShuffleKind::AnyOther,
        ShuffleKind::CyclicLeft,
        ShuffleKind::CyclicBidirectional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShuffleKind::AnyOther => "any-other",
            ShuffleKind::CyclicLeft => "cyclic-left",
            ShuffleKind::CyclicBidirectional => "cyclic-bidir",
        }
    }

    pub fn validate(self, r: usize, n: usize) -> Result<()> {
        if r < 2 || n < 1 {
            return Err(Error::InvalidArgument(format!(
                "shuffle {self} needs r >= 2 and n >= 1, got r={r}, n={n}"
            )));
        }
        Ok(())
    }

    /// Probability that a ball in urn `from` is moved to urn `to`, given it was picked.
    fn move_probability(self, r: usize, from: usize, to: usize) -> Ratio<u64> {
        let forward = (from + 1) % r == to;
        let backward = (to + 1) % r == from;
        match self {
            ShuffleKind::AnyOther if from != to => Ratio::new(1, r as u64 - 1),
            ShuffleKind::CyclicLeft if forward => Ratio::from_integer(1),
            // For r = 2 both directions land in the same urn.
            ShuffleKind::CyclicBidirectional if forward && backward => Ratio::from_integer(1),
            ShuffleKind::CyclicBidirectional if forward || backward => Ratio::new(1, 2),
            _ => Ratio::from_integer(0),
        }
    }
}

impl fmt::Display for ShuffleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShuffleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShuffleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown shuffle '{s}' (expected any-other, cyclic-left or cyclic-bidir)"
                ))
            })
    }
}

/// `d_r(b, c) = #{i : b_i != c_i}`.
pub fn hamming_distance(b: &UrnConfiguration, c: &UrnConfiguration) -> Result<usize> {
    check_dims(b.r, b.n(), c.r, c.n())?;
    Ok(b.assignment
        .iter()
        .zip(&c.assignment)
        .filter(|(x, y)| x != y)
        .count())
}

/// One-step probability `p(b, c)` of the shuffle, exactly.
pub fn transition_probability(
    s: ShuffleKind,
    b: &UrnConfiguration,
    c: &UrnConfiguration,
) -> Result<Ratio<u64>> {
    check_dims(b.r, b.n(), c.r, c.n())?;
    s.validate(b.r, b.n())?;
    let mut differing = b
        .assignment
        .iter()
        .zip(&c.assignment)
        .filter(|(x, y)| x != y);
    let (Some((&from, &to)), None) = (differing.next(), differing.next()) else {
        return Ok(Ratio::from_integer(0));
    };
    Ok(s.move_probability(b.r, from, to) / b.n() as u64)
}

/// Closed-form `f_k` for the shuffle.
///
/// * any-other: `(r k_0 / n - 1) / (r - 1)`
/// * cyclic-left: `sum_i (k_i / n) xi^{-i}`
/// * cyclic-bidir: `sum_i (k_i / n) (xi^{-i} + xi^{i}) / 2`
pub fn fourier_coefficient(s: ShuffleKind, k: &Composition) -> Result<Complex64> {
    let (r, n) = (k.r(), k.n());
    s.validate(r, n)?;
    if k.is_trivial() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let nf = n as f64;
    let value = match s {
        ShuffleKind::AnyOther => {
            let num = r as f64 * k.parts()[0] as f64 - nf;
            Complex64::new(num / (nf * (r as f64 - 1.0)), 0.0)
        }
        ShuffleKind::CyclicLeft => k
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &ki)| root_of_unity(r, r - i) * (ki as f64 / nf))
            .sum(),
        ShuffleKind::CyclicBidirectional => {
            let re = k
                .parts()
                .iter()
                .enumerate()
                .map(|(i, &ki)| root_of_unity(r, i).re * (ki as f64 / nf))
                .sum();
            Complex64::new(re, 0.0)
        }
    };
    Ok(value)
}

/// `f_k = sum_g nu(g) conj(omega_k(g))`, summed over the one-ball moves out of `I_0`.
pub fn fourier_coefficient_numeric(s: ShuffleKind, k: &Composition) -> Result<Complex64> {
    let (r, n) = (k.r(), k.n());
    s.validate(r, n)?;
    let start = UrnConfiguration::start(r, n)?;
    let mut total = Complex64::new(0.0, 0.0);
    for ball in 0..n {
        for urn in 1..r {
            let mut assignment = vec![0; n];
            assignment[ball] = urn;
            let target = UrnConfiguration::new(r, assignment)?;
            let p = transition_probability(s, &start, &target)?;
            if p == Ratio::from_integer(0) {
                continue;
            }
            let weight = *p.numer() as f64 / *p.denom() as f64;
            total += zonal_value(k, &target.type_of())?.conj() * weight;
        }
    }
    Ok(total)
}
