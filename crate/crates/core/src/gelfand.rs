//! Zonal spherical functions of the Gelfand pair `(G(r,1,n), S_n)`.
//!
//! The value `omega_k(x)` depends on `x = (x_1, ..., x_n; sigma)` only through
//! the type of its colors, so everything here is indexed by pairs of
//! compositions `(k, l)` rather than by group elements.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::combinatorics::{monomial_symmetric_exact, multinomial_f64, Composition, TypeSpace};
use crate::error::{check_dims, Error, Result};

/// An element `(x_1, ..., x_n; sigma)` of the wreath product `Z/r ~ S_n`.
///
/// `permutation[i]` is `sigma(i)`, zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    r: usize,
    colors: Vec<usize>,
    permutation: Vec<usize>,
}

impl GroupElement {
    pub fn new(r: usize, colors: Vec<usize>, permutation: Vec<usize>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("need r >= 2, got {r}")));
        }
        let n = colors.len();
        if permutation.len() != n {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, expected {n}",
                permutation.len()
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::InvalidArgument(format!(
                "color {c} is not a residue mod {r}"
            )));
        }
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(
                    "permutation is not a bijection".into(),
                ));
            }
        }
        Ok(Self {
            r,
            colors,
            permutation,
        })
    }

    /// `(x; id)`.
    pub fn pure_colors(r: usize, colors: Vec<usize>) -> Result<Self> {
        let n = colors.len();
        Self::new(r, colors, (0..n).collect())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// `sigma^{-1}` as a lookup table.
    pub fn inverse_permutation(&self) -> Vec<usize> {
        let mut inv = vec![0; self.permutation.len()];
        for (i, &p) in self.permutation.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }
}

/// The composition `l` with `l_j = #{i : x_i = j}`. Ignores `sigma`.
pub fn group_element_type(g: &GroupElement) -> Composition {
    let mut parts = vec![0; g.r];
    for &c in &g.colors {
        parts[c] += 1;
    }
    Composition::new(parts).expect("r >= 2")
}

/// `omega_{k,l} = m_{lambda(k)}(l) / C(n; k)`. The trivial row is exactly 1.
pub fn zonal_value(k: &Composition, l: &Composition) -> Result<Complex64> {
    check_dims(k.r(), k.n(), l.r(), l.n())?;
    if k.is_trivial() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(monomial_symmetric_exact(k, l)?.scaled(multinomial_f64(k)))
}

/// `omega_k(g)`.
pub fn zonal_at(k: &Composition, g: &GroupElement) -> Result<Complex64> {
    zonal_value(k, &group_element_type(g))
}

/// The matrix `(omega_{k,l})` over `N(r, n) x N(r, n)`, rows `k`, columns `l`,
/// both in the fixed composition ordering.
#[derive(Debug, Clone)]
pub struct ZonalTable {
    space: Arc<TypeSpace>,
    values: Vec<Complex64>,
}

impl ZonalTable {
    /// Builds the table over an existing type space; columns are computed in
    /// parallel and each is independent, so the result does not depend on
    /// scheduling.
    pub fn build(space: Arc<TypeSpace>) -> Result<Self> {
        let m = space.len();
        let columns: Vec<Vec<Complex64>> = (0..m)
            .into_par_iter()
            .map(|li| {
                let column = space.monomial_column(li)?;
                Ok(column
                    .iter()
                    .enumerate()
                    .map(|(ki, counts)| {
                        if ki == space.trivial_index() {
                            Complex64::new(1.0, 0.0)
                        } else {
                            counts.scaled(space.multinomial_f64(ki))
                        }
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        let mut values = vec![Complex64::new(0.0, 0.0); m * m];
        for (li, column) in columns.into_iter().enumerate() {
            for (ki, v) in column.into_iter().enumerate() {
                values[ki * m + li] = v;
            }
        }
        Ok(Self { space, values })
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

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    /// `omega_{k,l}` by indices.
    pub fn get(&self, k_index: usize, l_index: usize) -> Complex64 {
        self.values[k_index * self.space.len() + l_index]
    }

    pub fn row(&self, k_index: usize) -> &[Complex64] {
        let m = self.space.len();
        &self.values[k_index * m..(k_index + 1) * m]
    }

    pub fn value(&self, k: &Composition, l: &Composition) -> Result<Complex64> {
        Ok(self.get(self.space.index_of(k)?, self.space.index_of(l)?))
    }
}

/// Zonal table for `(r, n)`, refusing when `N(r, n)` has more than `max_types` elements.
pub fn zonal_table(r: usize, n: usize, max_types: usize) -> Result<ZonalTable> {
    ZonalTable::build(Arc::new(TypeSpace::new(r, n, max_types)?))
}
