//! Brute-force ground truth for differential testing.
//!
//! Instances are built by multiplying sampled linear forms, so the factors
//! are known independently of the closed-form machinery. A grid search over
//! small rational factors gives a second, construction-free factorability
//! verdict.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::factor::{classify_and_factor, FactorKind, Factorization};
use crate::rankcore::MuRank;
use crate::scalar::{ComplexF, QuadExt, Rational, Scalar};
use crate::skewring::{multiply_linear, LinearForm, MuParams, QuadraticForm};
use crate::{Error, Result};

/// Default cap on `|G|^(2n)` for [`grid_search_factor`].
pub const DEFAULT_GRID_CAP: u128 = 10_000_000;

/// `{-2, -1, -1/2, 0, 1/2, 1, 2}`.
pub fn default_grid() -> Vec<Rational> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(p, q)| Rational::new(p, q))
        .collect()
}

/// `{-2, -1, -1/2, 1/2, 1, 2, 3, 1/3}`.
pub fn default_mu_grid() -> Vec<Rational> {
    [(-2, 1), (-1, 1), (-1, 2), (1, 2), (2, 1), (3, 1), (1, 3), (1, 1)]
        .iter()
        .map(|&(p, q)| Rational::new(p, q))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuDist {
    Commutative,
    /// Upper-triangle entries drawn from a list of nonzero rationals.
    Grid(Vec<Rational>),
    /// Upper-triangle entries `e^{i theta}`; complex backend only.
    UnitComplex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffDist {
    Grid(Vec<Rational>),
    /// Real and imaginary parts uniform in `[-radius, radius]`; complex
    /// backend only.
    Complex { radius: f64 },
}

/// How to sample instances. Trial `t` draws from its own ChaCha stream, so
/// instances do not depend on evaluation order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub mu: MuDist,
    pub coeffs: CoeffDist,
    pub seed: u64,
}

impl InstanceSpec {
    /// Rational multipliers and coefficients from the default grids.
    pub fn grid(n: usize, seed: u64) -> Self {
        InstanceSpec {
            n,
            mu: MuDist::Grid(default_mu_grid()),
            coeffs: CoeffDist::Grid(default_grid()),
            seed,
        }
    }

    /// Unit-modulus multipliers and dense complex coefficients.
    pub fn complex(n: usize, seed: u64) -> Self {
        InstanceSpec {
            n,
            mu: MuDist::UnitComplex,
            coeffs: CoeffDist::Complex { radius: 2.0 },
            seed,
        }
    }

    pub fn is_rational(&self) -> bool {
        !matches!(self.mu, MuDist::UnitComplex) && matches!(self.coeffs, CoeffDist::Grid(_))
    }

    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    fn embed<S: Scalar>(z: ComplexF) -> Result<S> {
        S::from_complex(z).ok_or_else(|| {
            Error::Precondition("complex sampling needs the complex backend".into())
        })
    }

    pub fn sample_mu<S: Scalar>(&self, rng: &mut ChaCha8Rng) -> Result<MuParams<S>> {
        let n = self.n;
        let mut upper = Vec::new();
        for _ in 0..n * n.saturating_sub(1) / 2 {
            let v = match &self.mu {
                MuDist::Commutative => S::one(),
                MuDist::Grid(g) => S::from_rational(pick_nonzero(g, rng)?),
                MuDist::UnitComplex => {
                    Self::embed(ComplexF::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))?
                }
            };
            upper.push(v);
        }
        let mut it = upper.into_iter();
        MuParams::from_upper(n, |_, _| it.next().expect("one value per pair"))
    }

    pub fn sample_coeff<S: Scalar>(&self, rng: &mut ChaCha8Rng) -> Result<S> {
        match &self.coeffs {
            CoeffDist::Grid(g) => Ok(S::from_rational(
                g.choose(rng)
                    .ok_or_else(|| Error::Precondition("empty coefficient grid".into()))?,
            )),
            CoeffDist::Complex { radius } => Self::embed(ComplexF::new(
                rng.gen_range(-radius..=*radius),
                rng.gen_range(-radius..=*radius),
            )),
        }
    }

    /// A coefficient that is nonzero (and, for complex draws, not tiny).
    pub fn sample_nonzero<S: Scalar>(&self, rng: &mut ChaCha8Rng) -> Result<S> {
        match &self.coeffs {
            CoeffDist::Grid(g) => Ok(S::from_rational(pick_nonzero(g, rng)?)),
            CoeffDist::Complex { radius } => loop {
                let z = ComplexF::new(
                    rng.gen_range(-radius..=*radius),
                    rng.gen_range(-radius..=*radius),
                );
                if z.norm() > 0.1 * radius {
                    return Self::embed(z);
                }
            },
        }
    }

    /// Linear form whose first nonzero coefficient is 1 and whose other
    /// coefficients come from the grid (so grid search can recover it).
    fn sample_normalized<S: Scalar>(&self, rng: &mut ChaCha8Rng, lead: usize) -> Result<LinearForm<S>> {
        let mut coeffs = vec![S::zero(); self.n];
        coeffs[lead] = S::one();
        for c in coeffs.iter_mut().skip(lead + 1) {
            *c = self.sample_coeff(rng)?;
        }
        Ok(LinearForm::new(coeffs))
    }
}

fn pick_nonzero<'a>(g: &'a [Rational], rng: &mut ChaCha8Rng) -> Result<&'a Rational> {
    let nz: Vec<&Rational> = g.iter().filter(|r| !r.is_zero()).collect();
    nz.choose(rng)
        .copied()
        .ok_or_else(|| Error::Precondition("grid has no nonzero entry".into()))
}

/// Product shapes: which factor contains `z1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductShape {
    /// `(a1 z1 + ...)(b2 z2 + ...)`, `a1 != 0`.
    LeftLead,
    /// `(a2 z2 + ...)(b1 z1 + ...)`, `b1 != 0`.
    RightLead,
    /// `(a1 z1 + ...)(b1 z1 + ...)`, `a1 b1 != 0`.
    BothLead,
}

impl ProductShape {
    pub const ALL: [ProductShape; 3] = [ProductShape::LeftLead, ProductShape::RightLead, ProductShape::BothLead];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Square,
    Product(ProductShape),
    Generic,
}

/// A sampled form with the factors it was built from (empty for generic
/// forms).
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<S> {
    pub kind: InstanceKind,
    pub mu: MuParams<S>,
    pub q: QuadraticForm<S>,
    pub factors: Vec<LinearForm<S>>,
}

/// `Q = L^2` for a random `L`.
pub fn random_square<S: Scalar>(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> Result<Instance<S>> {
    let mu = spec.sample_mu(rng)?;
    let l = LinearForm::new((0..spec.n).map(|_| spec.sample_coeff(rng)).collect::<Result<_>>()?);
    let q = multiply_linear(&l, &l, &mu)?;
    Ok(Instance {
        kind: InstanceKind::Square,
        mu,
        q,
        factors: vec![l],
    })
}

/// `Q = L1 L2` in the requested shape.
pub fn random_product<S: Scalar>(
    spec: &InstanceSpec,
    shape: ProductShape,
    rng: &mut ChaCha8Rng,
) -> Result<Instance<S>> {
    let mu = spec.sample_mu(rng)?;
    let mut draw = |lead: bool| -> Result<LinearForm<S>> {
        let mut coeffs = vec![if lead { spec.sample_nonzero(rng)? } else { S::zero() }];
        for _ in 1..spec.n {
            coeffs.push(spec.sample_coeff(rng)?);
        }
        Ok(LinearForm::new(coeffs))
    };
    let (l1, l2) = match shape {
        ProductShape::LeftLead => (draw(true)?, draw(false)?),
        ProductShape::RightLead => (draw(false)?, draw(true)?),
        ProductShape::BothLead => (draw(true)?, draw(true)?),
    };
    let q = multiply_linear(&l1, &l2, &mu)?;
    Ok(Instance {
        kind: InstanceKind::Product(shape),
        mu,
        q,
        factors: vec![l1, l2],
    })
}

/// Every coefficient drawn independently.
pub fn random_generic<S: Scalar>(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> Result<Instance<S>> {
    let mu = spec.sample_mu(rng)?;
    let mut q = QuadraticForm::zero(spec.n);
    for i in 0..spec.n {
        for j in i..spec.n {
            *q.coeff_mut(i, j) = spec.sample_coeff(rng)?;
        }
    }
    Ok(Instance {
        kind: InstanceKind::Generic,
        mu,
        q,
        factors: Vec::new(),
    })
}

/// Instances whose factors, after scaling the first nonzero coefficient to
/// 1, have every coefficient in the grid. Squares and products are scaled by
/// a nonzero grid value.
pub fn random_grid_closed<S: Scalar>(
    spec: &InstanceSpec,
    kind: InstanceKind,
    rng: &mut ChaCha8Rng,
) -> Result<Instance<S>> {
    if kind == InstanceKind::Generic {
        return random_generic(spec, rng);
    }
    let mu = spec.sample_mu(rng)?;
    let n = spec.n;
    let lead = |rng: &mut ChaCha8Rng, with_z1: bool| {
        if with_z1 {
            0
        } else {
            rng.gen_range(1..n)
        }
    };
    let (l1, l2) = match kind {
        InstanceKind::Square => {
            let k = rng.gen_range(0..n);
            let l = spec.sample_normalized(rng, k)?;
            (l.clone(), l)
        }
        InstanceKind::Product(shape) => {
            let (a, b) = match shape {
                ProductShape::LeftLead => (true, false),
                ProductShape::RightLead => (false, true),
                ProductShape::BothLead => (true, true),
            };
            let k1 = lead(rng, a);
            let l1 = spec.sample_normalized(rng, k1)?;
            let k2 = lead(rng, b);
            (l1, spec.sample_normalized(rng, k2)?)
        }
        InstanceKind::Generic => unreachable!("handled above"),
    };
    let scale: S = spec.sample_nonzero(rng)?;
    let q = multiply_linear(&l1, &l2, &mu)?.scale(&scale);
    let factors = if kind == InstanceKind::Square { vec![l1] } else { vec![l1, l2] };
    Ok(Instance { kind, mu, q, factors })
}

fn rational_coeffs(q: &QuadraticForm<QuadExt>) -> Result<Vec<Rational>> {
    q.iter()
        .map(|(_, c)| {
            c.as_rational()
                .ok_or_else(|| Error::Precondition("grid search needs rational coefficients".into()))
        })
        .collect()
}

/// Search `Q = lambda L1 L2` over factors whose first nonzero coefficient is
/// 1 and whose remaining coefficients lie in `grid`.
///
/// Candidates are screened in double precision and confirmed exactly. The
/// first match in enumeration order is returned.
pub fn grid_search_factor(
    q: &QuadraticForm<QuadExt>,
    mu: &MuParams<QuadExt>,
    grid: &[Rational],
    cap: u128,
) -> Result<Option<Factorization<QuadExt>>> {
    let n = q.n();
    let size = (grid.len() as u128).saturating_pow(2 * n as u32);
    if size > cap {
        return Err(Error::GridTooLarge { candidates: size, cap });
    }
    let qc = rational_coeffs(q)?;
    let Some(lead) = qc.iter().position(|c| !c.is_zero()) else {
        return Ok(Some(Factorization {
            kind: FactorKind::Product,
            prefactor: QuadExt::zero(),
            factors: vec![LinearForm::generator(n, 0), LinearForm::generator(n, 0)],
            provenance: "grid/zero_form".into(),
            signs: None,
            verified: true,
        }));
    };
    let mut mu_r = vec![vec![Rational::one(); n]; n];
    for (i, row) in mu_r.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = mu
                .get(i, j)
                .as_rational()
                .ok_or_else(|| Error::Precondition("grid search needs rational mu".into()))?;
        }
    }
    let vectors = normalized_vectors(n, grid);
    let vf: Vec<Vec<f64>> = vectors.iter().map(|v| v.iter().map(Rational::to_f64).collect()).collect();
    let muf: Vec<Vec<f64>> = mu_r.iter().map(|r| r.iter().map(Rational::to_f64).collect()).collect();
    let qf: Vec<f64> = qc.iter().map(Rational::to_f64).collect();
    let qscale = qf.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    let pairs: Vec<(usize, usize)> = q.iter().map(|(p, _)| p).collect();

    let expand_f = |a: &[f64], b: &[f64], out: &mut [f64]| {
        for (slot, &(i, j)) in out.iter_mut().zip(&pairs) {
            *slot = if i == j { a[i] * b[i] } else { a[i] * b[j] + muf[i][j] * a[j] * b[i] };
        }
    };
    let total = vectors.len() * vectors.len();
    let hit = (0..total).into_par_iter().find_first(|&k| {
        let (a, b) = (&vf[k / vectors.len()], &vf[k % vectors.len()]);
        let mut p = vec![0.0; pairs.len()];
        expand_f(a, b, &mut p);
        if p[lead] == 0.0 {
            return false;
        }
        let lambda = qf[lead] / p[lead];
        if p.iter().zip(&qf).any(|(pv, qv)| (lambda * pv - qv).abs() > 1e-9 * qscale) {
            return false;
        }
        exact_match(&vectors[k / vectors.len()], &vectors[k % vectors.len()], &qc, &mu_r, &pairs, lead)
            .is_some()
    });
    Ok(hit.map(|k| {
        let (a, b) = (&vectors[k / vectors.len()], &vectors[k % vectors.len()]);
        let lambda = exact_match(a, b, &qc, &mu_r, &pairs, lead).expect("confirmed above");
        let to_form = |v: &[Rational]| LinearForm::new(v.iter().map(QuadExt::from_rational).collect());
        Factorization {
            kind: FactorKind::Product,
            prefactor: QuadExt::from_rational(&lambda),
            factors: vec![to_form(a), to_form(b)],
            provenance: "grid_search".into(),
            signs: None,
            verified: true,
        }
    }))
}

fn exact_match(
    a: &[Rational],
    b: &[Rational],
    q: &[Rational],
    mu: &[Vec<Rational>],
    pairs: &[(usize, usize)],
    lead: usize,
) -> Option<Rational> {
    let p: Vec<Rational> = pairs
        .iter()
        .map(|&(i, j)| {
            if i == j {
                &a[i] * &b[i]
            } else {
                &a[i] * &b[j] + &(&mu[i][j] * &a[j]) * &b[i]
            }
        })
        .collect();
    let lambda = q[lead].clone() / p[lead].clone();
    p.iter()
        .zip(q)
        .all(|(pv, qv)| &(&lambda * pv) == qv)
        .then_some(lambda)
}

/// All vectors of length `n` whose first nonzero entry is 1 and whose later
/// entries lie in `grid`.
fn normalized_vectors(n: usize, grid: &[Rational]) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let count = grid.len().pow(tail as u32);
        for mut k in 0..count {
            let mut v = vec![Rational::zero(); n];
            v[lead] = Rational::one();
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = grid[k % grid.len()].clone();
                k /= grid.len();
            }
            out.push(v);
        }
    }
    out
}

/// Options for [`differential_suite`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Also run the grid oracle (rational specs only).
    pub grid_oracle: bool,
    /// Also evaluate every rational instance on the complex backend and
    /// compare verdicts.
    pub compare_backends: bool,
    pub tol: Option<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            grid_oracle: false,
            compare_backends: true,
            tol: None,
        }
    }
}

/// One reproducible disagreement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub trial: u64,
    pub seed: u64,
    pub kind: InstanceKind,
    pub category: String,
    pub detail: String,
    pub mu: Value,
    pub form: Value,
    pub factors: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub trials: u64,
    pub seed: u64,
    pub n: usize,
    /// `"<kind>/<rank>"` -> count.
    pub counts: BTreeMap<String, u64>,
    pub grid_found: u64,
    pub backend_comparisons: u64,
    pub findings: Vec<Finding>,
}

impl SuiteReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }
}

fn kind_label(kind: InstanceKind) -> &'static str {
    match kind {
        InstanceKind::Square => "square",
        InstanceKind::Product(ProductShape::LeftLead) => "product_left_lead",
        InstanceKind::Product(ProductShape::RightLead) => "product_right_lead",
        InstanceKind::Product(ProductShape::BothLead) => "product_both_lead",
        InstanceKind::Generic => "generic",
    }
}

/// Trial `t` cycles through square, the three product shapes and generic.
pub fn trial_kind(t: u64) -> InstanceKind {
    match t % 5 {
        0 => InstanceKind::Square,
        1 => InstanceKind::Product(ProductShape::LeftLead),
        2 => InstanceKind::Product(ProductShape::RightLead),
        3 => InstanceKind::Product(ProductShape::BothLead),
        _ => InstanceKind::Generic,
    }
}

struct TrialOutcome {
    label: String,
    grid_found: bool,
    compared: bool,
    findings: Vec<Finding>,
}

fn run_trial<S: Scalar + Serialize>(
    spec: &InstanceSpec,
    opts: &SuiteOptions,
    t: u64,
) -> Result<(Instance<S>, MuRank, TrialOutcome)> {
    let mut rng = spec.rng(t);
    let kind = trial_kind(t);
    let mut inst: Instance<S> = random_grid_closed_or_dense(spec, kind, &mut rng)?;
    if let Some(tol) = opts.tol {
        inst.q = inst.q.map(|c| c.clone().with_tol(tol));
        inst.mu = inst.mu.map(|c| c.clone().with_tol(tol));
    }
    let check = classify_and_factor(&inst.q, &inst.mu)?;
    let rank = check.report.rank;
    let mut out = TrialOutcome {
        label: format!("{}/{}", kind_label(kind), rank.as_str()),
        grid_found: false,
        compared: false,
        findings: Vec::new(),
    };
    let mut finding = |category: &str, detail: String| {
        out.findings.push(Finding {
            trial: t,
            seed: spec.seed,
            kind,
            category: category.into(),
            detail,
            mu: json!(inst.mu),
            form: json!(inst.q),
            factors: json!(inst.factors),
        })
    };
    if let Some(msg) = &check.inconsistency {
        finding("internal_inconsistency", msg.clone());
    }
    match kind {
        InstanceKind::Square if rank != MuRank::One && !inst.q.is_zero() => {
            finding("square_not_rank_one", format!("rank {rank}"))
        }
        InstanceKind::Product(_) if !rank.at_most_two() => {
            finding("product_rank_above_two", format!("rank {rank}"))
        }
        _ => {}
    }
    Ok((inst, rank, out))
}

fn random_grid_closed_or_dense<S: Scalar>(
    spec: &InstanceSpec,
    kind: InstanceKind,
    rng: &mut ChaCha8Rng,
) -> Result<Instance<S>> {
    if spec.is_rational() {
        random_grid_closed(spec, kind, rng)
    } else {
        match kind {
            InstanceKind::Square => random_square(spec, rng),
            InstanceKind::Product(shape) => random_product(spec, shape, rng),
            InstanceKind::Generic => random_generic(spec, rng),
        }
    }
}

/// Run `trials` instances and cross-check the classifier against the known
/// factors, the factor constructions, and optionally the grid oracle and
/// the complex backend.
///
/// Rational specs run on the exact backend; complex specs on the float
/// backend. Trials run in parallel; the report does not depend on
/// scheduling.
pub fn differential_suite(trials: u64, spec: &InstanceSpec, opts: &SuiteOptions) -> Result<SuiteReport> {
    let outcomes: Vec<Result<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            if spec.is_rational() {
                let (inst, rank, mut out) = run_trial::<QuadExt>(spec, opts, t)?;
                if opts.grid_oracle {
                    let grid = match &spec.coeffs {
                        CoeffDist::Grid(g) => g.clone(),
                        CoeffDist::Complex { .. } => unreachable!("rational spec"),
                    };
                    let found = grid_search_factor(&inst.q, &inst.mu, &grid, DEFAULT_GRID_CAP)?;
                    out.grid_found = found.is_some();
                    let closed = inst.kind != InstanceKind::Generic;
                    let mut push = |category: &str, detail: String| {
                        out.findings.push(Finding {
                            trial: t,
                            seed: spec.seed,
                            kind: inst.kind,
                            category: category.into(),
                            detail,
                            mu: json!(inst.mu),
                            form: json!(inst.q),
                            factors: json!(inst.factors),
                        })
                    };
                    if found.is_some() && !rank.at_most_two() {
                        push("oracle_factor_but_rank_above_two", format!("rank {rank}"));
                    }
                    if found.is_none() && closed {
                        push("oracle_missed_grid_product", "grid search found nothing".into());
                    }
                }
                if opts.compare_backends {
                    let tol = opts.tol.unwrap_or(crate::scalar::DEFAULT_TOL);
                    let qf = inst.q.map(|c| c.to_complex().with_tol(tol));
                    let muf = inst.mu.map(|c| c.to_complex().with_tol(tol));
                    let rf = crate::rankcore::murank(&qf, &muf)?.rank;
                    out.compared = true;
                    if rf != rank {
                        out.findings.push(Finding {
                            trial: t,
                            seed: spec.seed,
                            kind: inst.kind,
                            category: "backend_disagreement".into(),
                            detail: format!("exact rank {rank}, complex rank {rf}"),
                            mu: json!(inst.mu),
                            form: json!(inst.q),
                            factors: json!(inst.factors),
                        });
                    }
                }
                Ok(out)
            } else {
                run_trial::<ComplexF>(spec, opts, t).map(|(_, _, out)| out)
            }
        })
        .collect();
    let mut report = SuiteReport {
        trials,
        seed: spec.seed,
        n: spec.n,
        ..Default::default()
    };
    for o in outcomes {
        let o = o?;
        *report.counts.entry(o.label).or_default() += 1;
        report.grid_found += o.grid_found as u64;
        report.backend_comparisons += o.compared as u64;
        report.findings.extend(o.findings);
    }
    report.findings.sort_by_key(|f| f.trial);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_trial() {
        let spec = InstanceSpec::grid(4, 7);
        let a: Instance<QuadExt> = random_square(&spec, &mut spec.rng(3)).unwrap();
        let b: Instance<QuadExt> = random_square(&spec, &mut spec.rng(3)).unwrap();
        let c: Instance<QuadExt> = random_square(&spec, &mut spec.rng(4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn normalized_vector_count() {
        let g = default_grid();
        assert_eq!(normalized_vectors(4, &g).len(), 343 + 49 + 7 + 1);
        assert!(normalized_vectors(2, &g).iter().all(|v| v[0].is_one() || v[1].is_one()));
    }

    #[test]
    fn grid_cap() {
        let spec = InstanceSpec::grid(4, 1);
        let inst: Instance<QuadExt> = random_square(&spec, &mut spec.rng(0)).unwrap();
        let big: Vec<Rational> = (-10..=10).map(Rational::from).collect();
        assert!(matches!(
            grid_search_factor(&inst.q, &inst.mu, &big, DEFAULT_GRID_CAP),
            Err(Error::GridTooLarge { .. })
        ));
    }

    #[test]
    fn complex_sampling_needs_complex_backend() {
        let spec = InstanceSpec::complex(3, 1);
        assert!(random_square::<QuadExt>(&spec, &mut spec.rng(0)).is_err());
        assert!(random_square::<ComplexF>(&spec, &mut spec.rng(0)).is_ok());
    }
}
