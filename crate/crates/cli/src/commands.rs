use std::sync::Arc;

use anyhow::Result;
use ehrenfest::{
    compare_with_spectral, cutoff_threshold, fourier_coefficient, fourier_coefficient_numeric,
    simulate, zonal_table, Limits, Parity, ShuffleKind, SpectralWalk, TypeSpace, UrnConfiguration,
    RNG_ALGORITHM,
};
use serde::Serialize;

use crate::output::{emit, json, num, Csv, VERSION};
use crate::{Command, Common, Format};

/// Per-state tolerance for the spectral/oracle comparison.
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-10;
/// Tolerance for closed-form versus summed Fourier coefficients.
pub const COEFFICIENT_TOLERANCE: f64 = 1e-12;

pub enum Outcome {
    Success,
    CheckFailed,
}

pub fn run(command: Command, limits: &Limits) -> Result<Outcome> {
    match command {
        Command::Table(common) => table(&common, limits),
        Command::Fk { common, shuffle } => fk(&common, shuffle.into()),
        Command::Evolve {
            common,
            shuffle,
            steps,
        } => evolve(&common, shuffle.into(), steps, limits),
        Command::Tvd {
            common,
            shuffle,
            n_min,
            n_max,
        } => tvd(&common, shuffle.into(), n_min, n_max, limits),
        Command::Cutoff {
            common,
            c,
            skip_exact,
        } => cutoff(&common, c, skip_exact, limits),
        Command::Verify {
            common,
            shuffle,
            n_steps,
        } => verify(&common, shuffle.into(), n_steps, limits),
        Command::Simulate {
            common,
            shuffle,
            steps,
            trials,
            seed,
        } => simulate_cmd(&common, shuffle.into(), steps, trials, seed, limits),
    }
}

fn invalid(msg: &str) -> anyhow::Error {
    ehrenfest::Error::InvalidArgument(msg.to_string()).into()
}

fn check_dims(common: &Common) -> Result<()> {
    if common.r < 2 || common.n < 1 {
        return Err(ehrenfest::Error::InvalidArgument(format!(
            "need r >= 2 and n >= 1, got r={}, n={}",
            common.r, common.n
        ))
        .into());
    }
    Ok(())
}

fn parts(c: &ehrenfest::Composition) -> Vec<usize> {
    c.parts().to_vec()
}

fn table(common: &Common, limits: &Limits) -> Result<Outcome> {
    check_dims(common)?;
    if common.format == Some(Format::Json) {
        return Err(invalid("table is only available as CSV"));
    }
    let table = zonal_table(common.r, common.n, limits.max_types)?;
    let space = table.space();
    let mut csv = Csv::new("table", common.r, common.n, None);
    csv.comment("rows: k (irreducible), columns: l (orbit type); entry omega_{k,l}");
    let mut header = vec!["k".to_string()];
    for l in space.compositions() {
        header.push(format!("{l}_re"));
        header.push(format!("{l}_im"));
    }
    csv.row(header);
    for (ki, k) in space.compositions().iter().enumerate() {
        let mut row = vec![k.to_string()];
        for w in table.row(ki) {
            row.push(num(w.re));
            row.push(num(w.im));
        }
        csv.row(row);
    }
    emit(&csv.into_string(), common.out.as_deref())?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct CoefficientRow {
    k: Vec<usize>,
    dim: String,
    f_re: f64,
    f_im: f64,
    f_abs: f64,
}

fn fk(common: &Common, shuffle: ShuffleKind) -> Result<Outcome> {
    check_dims(common)?;
    shuffle.validate(common.r, common.n)?;
    let space = TypeSpace::new(common.r, common.n, usize::MAX)?;
    let rows: Vec<CoefficientRow> = space
        .compositions()
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let f = fourier_coefficient(shuffle, k)?;
            Ok(CoefficientRow {
                k: parts(k),
                dim: space.multinomial(i).to_string(),
                f_re: f.re,
                f_im: f.im,
                f_abs: f.norm(),
            })
        })
        .collect::<Result<_>>()?;
    let text = if common.format == Some(Format::Json) {
        json(&rows)?
    } else {
        let mut csv = Csv::new("fk", common.r, common.n, Some(shuffle.name()));
        csv.row(["k", "dim", "f_re", "f_im", "f_abs"]);
        for (k, row) in space.compositions().iter().zip(&rows) {
            csv.row([
                k.to_string(),
                row.dim.clone(),
                num(row.f_re),
                num(row.f_im),
                num(row.f_abs),
            ]);
        }
        csv.into_string()
    };
    emit(&text, common.out.as_deref())?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct TypeMass {
    r#type: Vec<usize>,
    states: String,
    mass_per_state: f64,
    class_mass: f64,
}

#[derive(Serialize)]
struct EvolveReport {
    version: &'static str,
    r: usize,
    n: usize,
    shuffle: &'static str,
    steps: u64,
    ordering: &'static str,
    tv_to_uniform: f64,
    types: Vec<TypeMass>,
}

fn evolve(common: &Common, shuffle: ShuffleKind, steps: u64, limits: &Limits) -> Result<Outcome> {
    check_dims(common)?;
    let walk = SpectralWalk::new(shuffle, common.r, common.n, limits)?;
    let dist = walk.distribution(steps)?;
    let space = walk.space();
    let types: Vec<TypeMass> = space
        .compositions()
        .iter()
        .enumerate()
        .map(|(i, l)| TypeMass {
            r#type: parts(l),
            states: space.multinomial(i).to_string(),
            mass_per_state: dist.masses()[i],
            class_mass: dist.class_mass(i),
        })
        .collect();
    let tv = walk.tv_to_uniform(steps)?;
    let text = if common.format == Some(Format::Json) {
        json(&EvolveReport {
            version: VERSION,
            r: common.r,
            n: common.n,
            shuffle: shuffle.name(),
            steps,
            ordering: ehrenfest::ORDERING,
            tv_to_uniform: tv,
            types,
        })?
    } else {
        let mut csv = Csv::new("evolve", common.r, common.n, Some(shuffle.name()));
        csv.comment(&format!("steps={steps} tv_to_uniform={}", num(tv)));
        csv.row(["type", "states", "mass_per_state", "class_mass"]);
        for (l, t) in space.compositions().iter().zip(&types) {
            csv.row([
                l.to_string(),
                t.states.clone(),
                num(t.mass_per_state),
                num(t.class_mass),
            ]);
        }
        csv.into_string()
    };
    emit(&text, common.out.as_deref())?;
    Ok(Outcome::Success)
}

fn tvd(
    common: &Common,
    shuffle: ShuffleKind,
    n_min: u64,
    n_max: u64,
    limits: &Limits,
) -> Result<Outcome> {
    check_dims(common)?;
    if n_min > n_max {
        return Err(ehrenfest::Error::InvalidArgument(format!(
            "empty step range {n_min}..={n_max}"
        ))
        .into());
    }
    if common.format == Some(Format::Json) {
        return Err(invalid("tvd is only available as CSV"));
    }
    let walk = SpectralWalk::new(shuffle, common.r, common.n, limits)?;
    let curve = walk.mixing_curve(n_min..=n_max)?;
    let two_urns = common.r == 2;
    let mut csv = Csv::new("tvd", common.r, common.n, Some(shuffle.name()));
    csv.comment("tv_* is the distance to the uniform distribution; bound is sqrt((1/4) sum_{k nontrivial} dim V(k) |f_k|^{2N})");
    let mut header = vec!["N", "tv_exact", "tv_bound", "tv_squared", "bound_squared"];
    if two_urns {
        csv.comment(
            "r = 2 is periodic: tv_parity_limit is the distance to the limit along the parity of N",
        );
        header.extend(["parity", "tv_parity_limit"]);
    }
    csv.row(header);
    for p in &curve {
        let mut row = vec![
            p.steps.to_string(),
            num(p.tv_exact),
            num(p.tv_bound),
            num(p.tv_squared),
            num(p.bound_squared),
        ];
        if two_urns {
            let parity = match Parity::of(p.steps as u64) {
                Parity::Even => "even",
                Parity::Odd => "odd",
            };
            row.push(parity.to_string());
            row.push(num(walk.tv_to_parity_limit(p.steps as u64)?));
        }
        csv.row(row);
    }
    emit(&csv.into_string(), common.out.as_deref())?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct CutoffReport {
    version: &'static str,
    r: usize,
    n: usize,
    c: f64,
    steps: f64,
    steps_ceil: u64,
    guarantee: f64,
    offset: f64,
    tv_exact_at_ceil: Option<f64>,
    tv_squared_at_ceil: Option<f64>,
    holds: Option<bool>,
}

fn cutoff(common: &Common, c: f64, skip_exact: bool, limits: &Limits) -> Result<Outcome> {
    check_dims(common)?;
    let est = cutoff_threshold(common.r, common.n, c)?;
    let tv = if skip_exact {
        None
    } else {
        let walk = SpectralWalk::new(ShuffleKind::AnyOther, common.r, common.n, limits)?;
        Some(walk.tv_to_uniform(est.steps_ceil())?)
    };
    let report = CutoffReport {
        version: VERSION,
        r: common.r,
        n: common.n,
        c,
        steps: est.steps,
        steps_ceil: est.steps_ceil(),
        guarantee: est.guarantee,
        offset: est.offset,
        tv_exact_at_ceil: tv,
        tv_squared_at_ceil: tv.map(|t| t * t),
        holds: tv.map(|t| est.holds_for(t)),
    };
    let text = if common.format == Some(Format::Json) {
        json(&report)?
    } else {
        let mut csv = Csv::new(
            "cutoff",
            common.r,
            common.n,
            Some(ShuffleKind::AnyOther.name()),
        );
        csv.comment("guarantee bounds tv_squared - offset at N = steps_ceil");
        csv.row([
            "r",
            "n",
            "c",
            "steps",
            "steps_ceil",
            "guarantee",
            "offset",
            "tv_exact_at_ceil",
            "tv_squared_at_ceil",
            "holds",
        ]);
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        csv.row([
            report.r.to_string(),
            report.n.to_string(),
            num(c),
            num(report.steps),
            report.steps_ceil.to_string(),
            num(report.guarantee),
            num(report.offset),
            opt(report.tv_exact_at_ceil),
            opt(report.tv_squared_at_ceil),
            report.holds.map(|h| h.to_string()).unwrap_or_default(),
        ]);
        csv.into_string()
    };
    emit(&text, common.out.as_deref())?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct VerifyReport {
    version: &'static str,
    r: usize,
    n: usize,
    shuffle: &'static str,
    steps_checked: u64,
    max_error: f64,
    worst_step: u64,
    tolerance: f64,
    fk_max_error: f64,
    fk_tolerance: f64,
    status: &'static str,
}

fn verify(common: &Common, shuffle: ShuffleKind, n_steps: u64, limits: &Limits) -> Result<Outcome> {
    check_dims(common)?;
    if common.format == Some(Format::Csv) {
        return Err(invalid("verify reports are JSON only"));
    }
    let cmp = compare_with_spectral(shuffle, common.r, common.n, n_steps, limits)?;
    let mut fk_max_error = 0.0f64;
    for k in ehrenfest::compositions(common.r, common.n)? {
        let a = fourier_coefficient(shuffle, &k)?;
        let b = fourier_coefficient_numeric(shuffle, &k)?;
        fk_max_error = fk_max_error.max((a - b).norm());
    }
    let pass = cmp.max_error <= DISTRIBUTION_TOLERANCE && fk_max_error <= COEFFICIENT_TOLERANCE;
    let report = VerifyReport {
        version: VERSION,
        r: common.r,
        n: common.n,
        shuffle: shuffle.name(),
        steps_checked: n_steps,
        max_error: cmp.max_error,
        worst_step: cmp.worst_step,
        tolerance: DISTRIBUTION_TOLERANCE,
        fk_max_error,
        fk_tolerance: COEFFICIENT_TOLERANCE,
        status: if pass { "pass" } else { "fail" },
    };
    emit(&json(&report)?, common.out.as_deref())?;
    Ok(if pass {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}

#[derive(Serialize)]
struct SimulatedType {
    r#type: Vec<usize>,
    states: String,
    exact_class_mass: f64,
    empirical_class_mass: f64,
}

#[derive(Serialize)]
struct SimulateReport {
    version: &'static str,
    rng: &'static str,
    seed: u64,
    trials: u64,
    r: usize,
    n: usize,
    shuffle: &'static str,
    steps: u64,
    tv_empirical_vs_exact: f64,
    types: Vec<SimulatedType>,
}

fn simulate_cmd(
    common: &Common,
    shuffle: ShuffleKind,
    steps: u64,
    trials: u64,
    seed: u64,
    limits: &Limits,
) -> Result<Outcome> {
    check_dims(common)?;
    let (r, n) = (common.r, common.n);
    let empirical = simulate(shuffle, r, n, steps, trials, seed, limits.max_states)?;
    let walk = SpectralWalk::new(shuffle, r, n, limits)?;
    let exact = walk.distribution(steps)?;
    let space: &Arc<TypeSpace> = walk.space();
    let mut per_state = vec![0.0; empirical.counts.len()];
    let mut empirical_class = vec![0.0; space.len()];
    for (x, slot) in per_state.iter_mut().enumerate() {
        let ty = space.index_of(&UrnConfiguration::from_index(r, n, x)?.type_of())?;
        *slot = exact.masses()[ty];
        empirical_class[ty] += empirical.counts[x] as f64 / trials as f64;
    }
    let tv = empirical.tv_to(&per_state)?;
    let types = space
        .compositions()
        .iter()
        .enumerate()
        .map(|(i, l)| SimulatedType {
            r#type: parts(l),
            states: space.multinomial(i).to_string(),
            exact_class_mass: exact.class_mass(i),
            empirical_class_mass: empirical_class[i],
        })
        .collect();
    let report = SimulateReport {
        version: VERSION,
        rng: RNG_ALGORITHM,
        seed,
        trials,
        r,
        n,
        shuffle: shuffle.name(),
        steps,
        tv_empirical_vs_exact: tv,
        types,
    };
    let text = if common.format == Some(Format::Csv) {
        let mut csv = Csv::new("simulate", r, n, Some(shuffle.name()));
        csv.comment(&format!(
            "rng={RNG_ALGORITHM} seed={seed} trials={trials} steps={steps}"
        ));
        csv.comment(&format!("tv_empirical_vs_exact={}", num(tv)));
        csv.row(["type", "states", "exact_class_mass", "empirical_class_mass"]);
        for (l, t) in space.compositions().iter().zip(&report.types) {
            csv.row([
                l.to_string(),
                t.states.clone(),
                num(t.exact_class_mass),
                num(t.empirical_class_mass),
            ]);
        }
        csv.into_string()
    } else {
        json(&report)?
    };
    emit(&text, common.out.as_deref())?;
    Ok(Outcome::Success)
}
