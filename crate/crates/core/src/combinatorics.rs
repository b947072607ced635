//! Compositions, multinomial coefficients and symmetric polynomials evaluated
//! at multisets of roots of unity.
//!
//! A [`Composition`] of `n` into `r` parts plays two roles: as `k` it labels an
//! irreducible constituent of the permutation representation, and as `l` it
//! labels an orbit type of configurations (how many balls sit in each urn).
//!
//! Every composition list produced here uses one ordering: lexicographically
//! decreasing on the parts, so `(n, 0, ..., 0)` always comes first.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};

/// Name of the composition ordering, recorded in emitted artifacts.
pub const ORDERING: &str = "lexicographically decreasing on parts";

/// An ordered tuple of `r` non-negative counts summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "a composition needs at least one part".into(),
            ));
        }
        Ok(Self { parts })
    }

    /// `(n, 0, ..., 0)`: the trivial representation, or the type of the start state.
    pub fn trivial(r: usize, n: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        let mut parts = vec![0; r];
        parts[0] = n;
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts[1..].iter().all(|&p| p == 0)
    }

    /// Number of nonzero entries of the partition `0^{k_0} 1^{k_1} ... (r-1)^{k_{r-1}}`.
    pub fn partition_length(&self) -> usize {
        self.n() - self.parts[0]
    }

    /// `l_j <-> l_{r-j}`: the type obtained by negating every color.
    pub fn negated(&self) -> Self {
        let r = self.r();
        let parts = (0..r).map(|j| self.parts[(r - j) % r]).collect();
        Self { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All compositions of `n` into `r` parts, lexicographically decreasing.
pub fn compositions(r: usize, n: usize) -> Result<Vec<Composition>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut parts = vec![0; r];
    fill(&mut parts, 0, n, &mut out);
    Ok(out)
}

fn fill(parts: &mut [usize], pos: usize, remaining: usize, out: &mut Vec<Composition>) {
    if pos + 1 == parts.len() {
        parts[pos] = remaining;
        out.push(Composition {
            parts: parts.to_vec(),
        });
        return;
    }
    for v in (0..=remaining).rev() {
        parts[pos] = v;
        fill(parts, pos + 1, remaining - v, out);
    }
}

/// `C(n + r - 1, r - 1)`, the size of `N(r, n)`.
pub fn composition_count(r: usize, n: usize) -> Result<u128> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    binomial((n + r - 1) as u128, (r - 1) as u128)
}

fn binomial(top: u128, bottom: u128) -> Result<u128> {
    let bottom = bottom.min(top - bottom);
    let mut acc: u128 = 1;
    for i in 0..bottom {
        // acc * (top - i) is divisible by (i + 1) after the multiplication.
        acc = acc
            .checked_mul(top - i)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i + 1);
    }
    Ok(acc)
}

/// Exact multinomial coefficient `n! / (k_0! ... k_{r-1}!)`.
pub fn multinomial(k: &Composition) -> BigUint {
    let mut acc = BigUint::one();
    let mut total = 0usize;
    for &part in &k.parts {
        for i in 1..=part {
            total += 1;
            acc *= total;
            acc /= i;
        }
    }
    acc
}

/// Multinomial coefficient as `u128`, failing on overflow.
pub fn multinomial_u128(k: &Composition) -> Result<u128> {
    multinomial(k)
        .to_u128()
        .ok_or(Error::Overflow("multinomial coefficient"))
}

/// Multinomial coefficient rounded to the nearest double.
pub fn multinomial_f64(k: &Composition) -> f64 {
    multinomial(k).to_f64().unwrap_or(f64::INFINITY)
}

/// `xi^e` for `xi = exp(2 pi i / r)`. Quarter turns are returned exactly.
pub fn root_of_unity(r: usize, e: usize) -> Complex64 {
    let e = e % r;
    if (4 * e).is_multiple_of(r) {
        return match 4 * e / r {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = TAU * e as f64 / r as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// The evaluation point `(1^{l_0}, xi^{l_1}, ..., (xi^{r-1})^{l_{r-1}})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnityMultiset {
    multiplicities: Composition,
}

impl RootOfUnityMultiset {
    pub fn new(multiplicities: Composition) -> Self {
        Self { multiplicities }
    }

    pub fn multiplicities(&self) -> &Composition {
        &self.multiplicities
    }

    /// The `n` values, grouped by power of `xi`.
    pub fn values(&self) -> Vec<Complex64> {
        let r = self.multiplicities.r();
        self.multiplicities
            .parts
            .iter()
            .enumerate()
            .flat_map(|(j, &m)| std::iter::repeat_n(root_of_unity(r, j), m))
            .collect()
    }
}

/// An element `sum_e counts[e] xi^e` of `Z[xi]` with non-negative coefficients.
///
/// Evaluating a monomial symmetric polynomial at roots of unity produces a sum
/// of powers of `xi`; keeping the count of each power makes the evaluation exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootPowerCounts {
    counts: Vec<u128>,
}

impl RootPowerCounts {
    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    pub fn r(&self) -> usize {
        self.counts.len()
    }

    /// Total number of monomials counted.
    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.scaled(1.0)
    }

    /// The same element of `Z[xi]` with smaller counts.
    ///
    /// For every prime `p | r` the powers `xi^e, xi^{e + r/p}, ...` sum to
    /// zero, so the minimum over each such coset can be subtracted. Large
    /// cancelling counts would otherwise cost absolute accuracy in floating
    /// point.
    pub fn reduced(&self) -> Self {
        let r = self.r();
        let mut counts = self.counts.clone();
        for p in prime_factors(r) {
            let step = r / p;
            for offset in 0..step {
                let coset = (0..p).map(|j| offset + j * step);
                let min = coset.clone().map(|e| counts[e]).min().unwrap_or(0);
                if min > 0 {
                    for e in coset {
                        counts[e] -= min;
                    }
                }
            }
        }
        Self { counts }
    }

    /// `(sum_e counts[e] xi^e) / divisor`, dividing each count before summing.
    pub fn scaled(&self, divisor: f64) -> Complex64 {
        let r = self.r();
        self.reduced()
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| root_of_unity(r, e) * (c as f64 / divisor))
            .sum()
    }
}

fn prime_factors(mut r: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= r {
        if r.is_multiple_of(p) {
            primes.push(p);
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        p += 1;
    }
    if r > 1 {
        primes.push(r);
    }
    primes
}

/// Exact value of `m_{lambda(k)}` at the root-of-unity multiset of type `l`.
///
/// Dynamic programme over the evaluation variables: a state is the
/// sub-composition of exponents already handed out (bounded by `k`), and the
/// payload counts the assignments reaching that state by the power of `xi`
/// they produce.
pub fn monomial_symmetric_exact(k: &Composition, l: &Composition) -> Result<RootPowerCounts> {
    check_dims(k.r(), k.n(), l.r(), l.n())?;
    let r = k.r();
    let radix: Vec<usize> = k.parts.iter().map(|&p| p + 1).collect();
    let mut stride = vec![1usize; r];
    for i in (0..r.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * radix[i + 1];
    }
    let states = stride[0] * radix[0];

    let mut cur = vec![0u128; states * r];
    cur[0] = 1;
    let mut digits = vec![0usize; r];
    for (color, &mult) in l.parts.iter().enumerate() {
        for _ in 0..mult {
            let mut next = vec![0u128; states * r];
            for s in 0..states {
                let src = &cur[s * r..(s + 1) * r];
                if src.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut rem = s;
                for i in 0..r {
                    digits[i] = rem / stride[i];
                    rem %= stride[i];
                }
                for exponent in 0..r {
                    if digits[exponent] == k.parts[exponent] {
                        continue;
                    }
                    let t = s + stride[exponent];
                    let shift = (exponent * color) % r;
                    for (e, &c) in src.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let slot = &mut next[t * r + (e + shift) % r];
                        *slot = slot
                            .checked_add(c)
                            .ok_or(Error::Overflow("monomial symmetric evaluation"))?;
                    }
                }
            }
            cur = next;
        }
    }
    let last = states - 1;
    Ok(RootPowerCounts {
        counts: cur[last * r..(last + 1) * r].to_vec(),
    })
}

/// `m_{lambda(k)}(1^{l_0}, xi^{l_1}, ..., (xi^{r-1})^{l_{r-1}})` as a complex number.
pub fn monomial_symmetric_at_type(k: &Composition, l: &Composition) -> Result<Complex64> {
    Ok(monomial_symmetric_exact(k, l)?.to_complex())
}

/// `e_j(values)` via the product-expansion recurrence. `e_0 = 1`.
pub fn elementary_symmetric(j: usize, values: &[Complex64]) -> Result<Complex64> {
    if j > values.len() {
        return Err(Error::OutOfRange {
            index: j,
            max: values.len(),
        });
    }
    Ok(elementary_symmetric_all(values)[j])
}

/// `[e_0, e_1, ..., e_len]` of `values`.
pub fn elementary_symmetric_all(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); values.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (count, &x) in values.iter().enumerate() {
        for j in (1..=count + 1).rev() {
            let lower = e[j - 1];
            e[j] += x * lower;
        }
    }
    e
}

/// `N(r, n)` with its fixed ordering, an index lookup, and the multinomial of
/// every element. Shared by tables and distributions.
#[derive(Debug, Clone)]
pub struct TypeSpace {
    r: usize,
    n: usize,
    compositions: Vec<Composition>,
    lookup: HashMap<Composition, usize>,
    multinomials: Vec<BigUint>,
    multinomials_f64: Vec<f64>,
    successors: Vec<Vec<usize>>,
}

impl TypeSpace {
    /// Builds `N(r, n)`, refusing when it would hold more than `max_types` elements.
    pub fn new(r: usize, n: usize, max_types: usize) -> Result<Self> {
        if r < 2 || n < 1 {
            return Err(Error::InvalidArgument(format!(
                "need r >= 2 and n >= 1, got r={r}, n={n}"
            )));
        }
        let count = composition_count(r, n)?;
        if count > max_types as u128 {
            return Err(Error::CapExceeded {
                what: "composition",
                count,
                cap: max_types,
            });
        }
        let compositions = compositions(r, n)?;
        let lookup = compositions
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let multinomials: Vec<BigUint> = compositions.iter().map(multinomial).collect();
        let multinomials_f64 = multinomials
            .iter()
            .map(|m| m.to_f64().unwrap_or(f64::INFINITY))
            .collect();
        Ok(Self {
            r,
            n,
            compositions,
            lookup,
            multinomials,
            multinomials_f64,
            successors: successor_tables(r, n)?,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.compositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.compositions.is_empty()
    }

    pub fn compositions(&self) -> &[Composition] {
        &self.compositions
    }

    pub fn get(&self, index: usize) -> &Composition {
        &self.compositions[index]
    }

    pub fn index_of(&self, c: &Composition) -> Result<usize> {
        check_dims(self.r, self.n, c.r(), c.n())?;
        Ok(self.lookup[c])
    }

    /// Index of `(n, 0, ..., 0)`; always 0 under the fixed ordering.
    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn multinomial(&self, index: usize) -> &BigUint {
        &self.multinomials[index]
    }

    pub fn multinomial_f64(&self, index: usize) -> f64 {
        self.multinomials_f64[index]
    }

    /// `r^n` as a double.
    pub fn state_count_f64(&self) -> f64 {
        (self.r as f64).powi(self.n as i32)
    }

    /// `m_{lambda(k)}(l)` for every `k`, with `l = self.get(l_index)`.
    ///
    /// Expands `prod_v (sum_i y_i v^i)` over the `n` evaluation variables `v`
    /// one variable at a time; the coefficient of `y^k` is `m_{lambda(k)}`.
    /// After `t` variables the live monomials are exactly the compositions of
    /// `t`, so level `t` is indexed by `compositions(r, t)`.
    pub fn monomial_column(&self, l_index: usize) -> Result<Vec<RootPowerCounts>> {
        let r = self.r;
        let l = &self.compositions[l_index];
        let mut cur = vec![0u128; r];
        cur[0] = 1;
        let mut degree = 0usize;
        for (color, &mult) in l.parts.iter().enumerate() {
            for _ in 0..mult {
                let succ = &self.successors[degree];
                let width = composition_count(r, degree + 1)? as usize;
                let mut next = vec![0u128; width * r];
                for (s, src) in cur.chunks(r).enumerate() {
                    if src.iter().all(|&c| c == 0) {
                        continue;
                    }
                    for exponent in 0..r {
                        let t = succ[s * r + exponent];
                        let shift = (exponent * color) % r;
                        for (e, &c) in src.iter().enumerate() {
                            let slot = &mut next[t * r + (e + shift) % r];
                            *slot = slot
                                .checked_add(c)
                                .ok_or(Error::Overflow("monomial symmetric evaluation"))?;
                        }
                    }
                }
                cur = next;
                degree += 1;
            }
        }
        Ok(cur
            .chunks(r)
            .map(|c| RootPowerCounts { counts: c.to_vec() })
            .collect())
    }
}

/// `succ[t][s * r + i]` is the index in `compositions(r, t + 1)` of the `s`-th
/// composition of `t` with one added to part `i`.
fn successor_tables(r: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    let mut tables = Vec::with_capacity(n);
    let mut level = compositions(r, 0)?;
    for t in 0..n {
        let next = compositions(r, t + 1)?;
        let lookup: HashMap<&Composition, usize> =
            next.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut table = Vec::with_capacity(level.len() * r);
        let mut probe = Composition { parts: vec![0; r] };
        for comp in &level {
            for i in 0..r {
                probe.parts.copy_from_slice(&comp.parts);
                probe.parts[i] += 1;
                table.push(lookup[&probe]);
            }
        }
        tables.push(table);
        level = next;
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn enumerates_small_cases_in_order() {
        assert_eq!(
            compositions(2, 1).unwrap(),
            vec![comp(&[1, 0]), comp(&[0, 1])]
        );
        assert_eq!(
            compositions(3, 2).unwrap(),
            vec![
                comp(&[2, 0, 0]),
                comp(&[1, 1, 0]),
                comp(&[1, 0, 1]),
                comp(&[0, 2, 0]),
                comp(&[0, 1, 1]),
                comp(&[0, 0, 2]),
            ]
        );
        assert_eq!(compositions(1, 5).unwrap(), vec![comp(&[5])]);
        assert_eq!(compositions(3, 0).unwrap(), vec![comp(&[0, 0, 0])]);
        assert!(compositions(0, 3).is_err());
    }

    #[test]
    fn counts_match_binomial() {
        for r in 1..=5 {
            for n in 0..=8 {
                let list = compositions(r, n).unwrap();
                assert_eq!(list.len() as u128, composition_count(r, n).unwrap());
                let mut sorted = list.clone();
                sorted.sort();
                sorted.reverse();
                assert_eq!(sorted, list, "r={r} n={n}");
                sorted.dedup();
                assert_eq!(sorted.len(), list.len());
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&comp(&[2, 0])), BigUint::from(1u32));
        assert_eq!(multinomial(&comp(&[1, 1, 1])), BigUint::from(6u32));
        assert_eq!(multinomial(&comp(&[2, 1, 1])), BigUint::from(12u32));
        // 60! / (20!)^3 does not fit in 64 bits.
        let big = multinomial(&comp(&[20, 20, 20]));
        assert!(big.to_u64().is_none());
        assert_eq!(big.to_string(), "577831214478475823831865900");
    }

    #[test]
    fn multinomial_overflow_is_reported() {
        let huge = comp(&[60, 60, 60, 60]);
        assert_eq!(
            multinomial_u128(&huge),
            Err(Error::Overflow("multinomial coefficient"))
        );
    }

    #[test]
    fn multinomials_sum_to_power() {
        for r in 1..=5usize {
            for n in 0..=8usize {
                let total: BigUint = compositions(r, n).unwrap().iter().map(multinomial).sum();
                assert_eq!(total, BigUint::from(r).pow(n as u32), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn monomial_small_values() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(
            monomial_symmetric_at_type(&comp(&[1, 1]), &comp(&[1, 1])).unwrap(),
            zero
        );
        assert_eq!(
            monomial_symmetric_at_type(&comp(&[0, 2]), &comp(&[0, 2])).unwrap(),
            one
        );
        for l in compositions(4, 3).unwrap() {
            assert_eq!(
                monomial_symmetric_at_type(&comp(&[3, 0, 0, 0]), &l).unwrap(),
                one
            );
        }
    }

    #[test]
    fn monomial_rejects_mismatch() {
        assert!(monomial_symmetric_at_type(&comp(&[1, 1]), &comp(&[1, 1, 0])).is_err());
        assert!(monomial_symmetric_at_type(&comp(&[2, 1]), &comp(&[1, 1])).is_err());
    }

    #[test]
    fn monomial_at_all_ones_is_multinomial() {
        for r in 2..=4 {
            for n in 1..=6 {
                let ones = Composition::trivial(r, n).unwrap();
                for k in compositions(r, n).unwrap() {
                    let exact = monomial_symmetric_exact(&k, &ones).unwrap();
                    assert_eq!(exact.counts()[0], multinomial_u128(&k).unwrap());
                    assert!(exact.counts()[1..].iter().all(|&c| c == 0));
                }
            }
        }
    }

    #[test]
    fn column_matches_pairwise_evaluation() {
        for r in 2..=4 {
            for n in 1..=5 {
                let space = TypeSpace::new(r, n, 10_000).unwrap();
                for li in 0..space.len() {
                    let column = space.monomial_column(li).unwrap();
                    for (ki, k) in space.compositions().iter().enumerate() {
                        let direct = monomial_symmetric_exact(k, space.get(li)).unwrap();
                        assert_eq!(column[ki], direct, "r={r} n={n} k={k} l={}", space.get(li));
                    }
                }
            }
        }
    }

    /// Brute force: sum over every distinct rearrangement of the exponent
    /// vector, evaluated at the explicit variable list.
    fn monomial_brute(k: &Composition, l: &Composition) -> Complex64 {
        let r = k.r();
        let n = k.n();
        let vars = RootOfUnityMultiset::new(l.clone()).values();
        let mut total = Complex64::new(0.0, 0.0);
        let mut exps = vec![0usize; n];
        loop {
            let mut counts = vec![0usize; r];
            for &e in &exps {
                counts[e] += 1;
            }
            if counts == k.parts() {
                total += vars
                    .iter()
                    .zip(&exps)
                    .map(|(v, &e)| v.powu(e as u32))
                    .product::<Complex64>();
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    return total;
                }
                exps[pos] += 1;
                if exps[pos] < r {
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn monomial_matches_brute_force() {
        for r in 2..=4 {
            for n in 1..=4 {
                for k in compositions(r, n).unwrap() {
                    for l in compositions(r, n).unwrap() {
                        let fast = monomial_symmetric_at_type(&k, &l).unwrap();
                        let slow = monomial_brute(&k, &l);
                        assert!(close(fast, slow, 1e-10), "r={r} n={n} k={k} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_keeps_value_and_shrinks_counts() {
        for (counts, expected) in [
            (vec![5u128, 3, 4], vec![2u128, 0, 1]),
            (vec![5, 3, 4, 7], vec![1, 0, 0, 4]),
            (vec![2, 2, 2, 2, 2, 3], vec![0, 0, 0, 0, 0, 1]),
        ] {
            let c = RootPowerCounts { counts };
            let red = c.reduced();
            assert_eq!(red.counts(), expected.as_slice());
            let direct: Complex64 = c
                .counts()
                .iter()
                .enumerate()
                .map(|(e, &n)| root_of_unity(c.r(), e) * n as f64)
                .sum();
            assert!(close(c.to_complex(), direct, 1e-12));
        }
    }

    #[test]
    fn elementary_small_values() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert_eq!(elementary_symmetric(0, &[c(3.0), c(-7.0)]).unwrap(), c(1.0));
        assert_eq!(elementary_symmetric(0, &[]).unwrap(), c(1.0));
        assert_eq!(
            elementary_symmetric(2, &[c(1.0), c(-1.0)]).unwrap(),
            c(-1.0)
        );
        assert_eq!(
            elementary_symmetric(1, &[c(2.0), c(-1.0), c(-1.0)]).unwrap(),
            c(0.0)
        );
        assert_eq!(
            elementary_symmetric(3, &[c(1.0), c(2.0)]),
            Err(Error::OutOfRange { index: 3, max: 2 })
        );
    }

    #[test]
    fn roots_of_unity_exact_at_quarter_turns() {
        assert_eq!(root_of_unity(4, 1), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(4, 3), Complex64::new(0.0, -1.0));
        assert_eq!(root_of_unity(2, 1), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(8, 6), Complex64::new(0.0, -1.0));
        assert!(close(
            root_of_unity(3, 1).powu(3),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
    }

    #[test]
    fn type_space_cap() {
        assert!(matches!(
            TypeSpace::new(5, 20, 1000),
            Err(Error::CapExceeded { count: 10626, .. })
        ));
        assert!(TypeSpace::new(1, 3, 10).is_err());
        let space = TypeSpace::new(3, 2, 10).unwrap();
        assert_eq!(space.index_of(&comp(&[0, 1, 1])).unwrap(), 4);
        assert!(space.index_of(&comp(&[1, 1])).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn complex_vec() -> impl Strategy<Value = Vec<Complex64>> {
            prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 0..10)
                .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
        }

        proptest! {
            #[test]
            fn elementary_sum_is_product(values in complex_vec()) {
                let sum: Complex64 = elementary_symmetric_all(&values).iter().sum();
                let prod: Complex64 = values.iter().map(|x| Complex64::new(1.0, 0.0) + x).product();
                // sum_j |e_j| <= prod_i (1 + |x_i|), so this is a relative 1e-12.
                let scale: f64 = values.iter().map(|x| 1.0 + x.norm()).product();
                prop_assert!((sum - prod).norm() <= 1e-12 * scale, "sum={sum} prod={prod}");
            }

            #[test]
            fn elementary_e1_is_sum(values in complex_vec()) {
                prop_assume!(!values.is_empty());
                let e1 = elementary_symmetric(1, &values).unwrap();
                let s: Complex64 = values.iter().sum();
                prop_assert!((e1 - s).norm() <= 1e-12);
            }
        }
    }
}
