//! Complex matrix models of the calibrated modules and checks of the Hecke,
//! Temperley-Lieb and blob relations they satisfy.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::params::{ConfigError, InversionRule, NumericAssignment, OrbitId, ParamConfig, SpecialPoint};
use crate::tableaux::{box_content, enumerate_std, residue_seq, weyl_act, Shape, StandardTableau, TableauError};

pub type CMat = DMatrix<Complex64>;

pub const DEFAULT_TOL: f64 = 1e-8;
/// Denominators and eigenvalue gaps smaller than this make a seed non-generic.
const SAMPLE_ATTEMPTS: usize = 200;
pub const GENERIC_EPS: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CalibratedError {
    #[error("non-generic seed: tableau {tableau}, index {index}")]
    NonGeneric { tableau: String, index: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("no generic seed found after {0} attempts")]
    SamplingFailed(usize),
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `<x> = x + x^{-1}`.
pub fn bracket(x: Complex64) -> Complex64 {
    x + x.inv()
}

/// Numeric values of `q`, `q0`, `qn` and the orbit bases.
#[derive(Clone, Debug)]
pub struct NumericSeed {
    pub q: Complex64,
    pub q0: Complex64,
    pub qn: Complex64,
    pub theta: Complex64,
    pub values: NumericAssignment,
}

impl NumericSeed {
    /// Takes `q0 = sqrt(-alpha1 alpha2)` and `qn = alpha1 / q0`.
    pub fn from_assignment(cfg: &ParamConfig, values: NumericAssignment) -> Self {
        let a1 = values.res_to_complex(cfg.special(SpecialPoint::Alpha1));
        let a2 = values.res_to_complex(cfg.special(SpecialPoint::Alpha2));
        let theta = values.res_to_complex(cfg.special(SpecialPoint::Theta));
        let q0 = (-a1 * a2).sqrt();
        NumericSeed {
            q: values.q,
            q0,
            qn: a1 / q0,
            theta,
            values,
        }
    }

    pub fn alpha1(&self) -> Complex64 {
        self.q0 * self.qn
    }

    pub fn alpha2(&self) -> Complex64 {
        -self.q0 / self.qn
    }

    /// Random seed: `q` on the unit circle (a primitive `2e`-th root when `e`
    /// is finite) and formal orbit bases on the annulus `0.5 <= |z| <= 2`.
    pub fn sample<R: Rng + ?Sized>(cfg: &ParamConfig, rng: &mut R) -> Result<Self, CalibratedError> {
        let q = sample_q(cfg, rng);
        let mut given = BTreeMap::new();
        for (i, orbit) in cfg.orbits().iter().enumerate().skip(1) {
            let fresh = match orbit.rule {
                InversionRule::Paired(p) => p.0 as usize > i,
                _ => false,
            };
            if fresh {
                let r = 0.5 * 4f64.powf(rng.gen::<f64>());
                let phase = rng.gen::<f64>() * std::f64::consts::TAU;
                given.insert(orbit.name.clone(), Complex64::from_polar(r, phase));
            }
        }
        let values = NumericAssignment::from_bases(cfg, q, &given, 1e-9)?;
        Ok(Self::from_assignment(cfg, values))
    }

    /// Resamples until every module of size `n` can be built.
    pub fn sample_generic<R: Rng + ?Sized>(
        cfg: &ParamConfig,
        n: usize,
        rng: &mut R,
        attempts: usize,
    ) -> Result<Self, CalibratedError> {
        for _ in 0..attempts {
            let seed = Self::sample(cfg, rng)?;
            let ok = crate::tableaux::shapes(n)
                .into_iter()
                .all(|s| build_calibrated(cfg, n, s, &seed).is_ok());
            if ok {
                return Ok(seed);
            }
        }
        Err(CalibratedError::SamplingFailed(attempts))
    }

    /// [`Self::sample_generic`] driven by a ChaCha stream seeded with `seed`.
    pub fn seeded(cfg: &ParamConfig, n: usize, seed: u64) -> Result<Self, CalibratedError> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Self::sample_generic(cfg, n, &mut rng, SAMPLE_ATTEMPTS)
    }
}

fn sample_q<R: Rng + ?Sized>(cfg: &ParamConfig, rng: &mut R) -> Complex64 {
    match cfg.e() {
        Some(e) => {
            let e = e as u64;
            loop {
                let j = rng.gen_range(1..2 * e);
                if gcd(j, e) == 1 {
                    return Complex64::from_polar(1.0, std::f64::consts::PI * j as f64 / e as f64);
                }
            }
        }
        None => loop {
            let q = Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
            let low_order = (1..=64).any(|m| ((q * q).powi(m) - 1.0).norm() < 1e-3);
            if !low_order {
                return q;
            }
        },
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `gamma_1`, the value of the first box of the shape.
pub fn gamma_from_shape(cfg: &ParamConfig, n: usize, shape: Shape, seed: &NumericSeed) -> Complex64 {
    seed.values.res_to_complex(box_content(n, shape, 0, cfg))
}

#[derive(Clone, Debug)]
pub struct CalibratedModule {
    pub n: usize,
    pub shape: Shape,
    pub basis: Vec<StandardTableau>,
    /// `gamma[t][i - 1] = gamma^t_i`.
    pub gamma: Vec<Vec<Complex64>>,
    /// `T_0, T_1, ..., T_n`.
    pub t: Vec<CMat>,
    pub t0v: CMat,
    /// `X_1, ..., X_n`.
    pub x: Vec<CMat>,
    pub q: Complex64,
    pub q0: Complex64,
    pub qn: Complex64,
    /// Largest radicand of an off-diagonal coefficient dropped because the target
    /// tableau is not standard (the product of the two missing entries).
    pub dropped: f64,
}

impl CalibratedModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The quadratic parameter of `T_i`.
    pub fn q_of(&self, i: usize) -> Complex64 {
        if i == self.n {
            self.qn
        } else if i == 0 {
            self.q0
        } else {
            self.q
        }
    }

    pub fn e(&self, i: usize) -> CMat {
        &self.t[i] - self.identity() * self.q_of(i)
    }

    pub fn e0v(&self) -> CMat {
        &self.t0v - self.identity() * self.qn
    }

    fn identity(&self) -> CMat {
        CMat::identity(self.dim(), self.dim())
    }

    fn inverse_of(&self, i: usize) -> CMat {
        let qi = self.q_of(i);
        &self.t[i] + self.identity() * (qi.inv() - qi)
    }
}

pub fn build_calibrated(
    cfg: &ParamConfig,
    n: usize,
    shape: Shape,
    seed: &NumericSeed,
) -> Result<CalibratedModule, CalibratedError> {
    let basis = enumerate_std(n, shape)?;
    let dim = basis.len();
    let index: HashMap<StandardTableau, usize> = basis.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let gamma: Vec<Vec<Complex64>> = basis
        .iter()
        .map(|t| residue_seq(t, cfg).iter().map(|r| seed.values.res_to_complex(*r)).collect())
        .collect();
    let non_generic = |t: usize, index: usize| CalibratedError::NonGeneric {
        tableau: basis[t].to_string(),
        index,
    };
    for (ti, g) in gamma.iter().enumerate() {
        for (i, v) in g.iter().enumerate() {
            if (v - 1.0).norm() < GENERIC_EPS || (v + 1.0).norm() < GENERIC_EPS {
                return Err(non_generic(ti, i + 1));
            }
        }
    }

    let (q, q0, qn) = (seed.q, seed.q0, seed.qn);
    let (big_q0, big_qn) = (q0 - q0.inv(), qn - qn.inv());
    let zero = CMat::zeros(dim, dim);
    let mut dropped: f64 = 0.0;
    let mut t_mats = vec![zero.clone(); n + 1];

    // T_0 and T_0v share their pairs; the off-diagonal sign of T_0v follows T_0.
    let mut t0v = zero.clone();
    for ti in 0..dim {
        let g1 = gamma[ti][0];
        let denom = c(1.0) - g1.powi(-2);
        if denom.norm() < GENERIC_EPS {
            return Err(non_generic(ti, 0));
        }
        let diag = (big_q0 + big_qn * g1.inv()) / denom;
        let diag_v = (big_qn + big_q0 * g1.inv()) / denom;
        t_mats[0][(ti, ti)] = diag;
        t0v[(ti, ti)] = diag_v;
        let radicand = -(diag - q0) * (diag + q0.inv());
        match weyl_act(0, &basis[ti]).standard.map(|u| index[&u]) {
            Some(ui) if ui > ti => {
                let s = radicand.sqrt();
                let mut sv = (-(diag_v - qn) * (diag_v + qn.inv())).sqrt();
                if (sv - s).norm() > (sv + s).norm() {
                    sv = -sv;
                }
                let gu = gamma[ui][0];
                t_mats[0][(ui, ti)] = s;
                t_mats[0][(ti, ui)] = s;
                t0v[(ui, ti)] = g1.inv() * sv;
                t0v[(ti, ui)] = gu.inv() * sv;
            }
            Some(_) => {}
            None => dropped = dropped.max(radicand.norm()),
        }
    }

    for i in 1..n {
        let m = &mut t_mats[i];
        for ti in 0..dim {
            let ratio = gamma[ti][i - 1] / gamma[ti][i];
            let denom = c(1.0) - ratio;
            if denom.norm() < GENERIC_EPS {
                return Err(non_generic(ti, i));
            }
            let diag = (q - q.inv()) / denom;
            m[(ti, ti)] = diag;
            let radicand = -(diag - q) * (diag + q.inv());
            match weyl_act(i, &basis[ti]).standard.map(|u| index[&u]) {
                Some(ui) if ui > ti => {
                    let s = radicand.sqrt();
                    m[(ui, ti)] = s;
                    m[(ti, ui)] = s;
                }
                Some(_) => {}
                None => dropped = dropped.max(radicand.norm()),
            }
        }
    }

    let mut module = CalibratedModule {
        n,
        shape,
        basis,
        gamma,
        t: t_mats,
        t0v,
        x: Vec::with_capacity(n),
        q,
        q0,
        qn,
        dropped,
    };

    // T_n = (T_{n-1} ... T_1) T_0v (T_1^{-1} ... T_{n-1}^{-1}).
    let mut tn = module.t0v.clone();
    for i in 1..n {
        tn = &module.t[i] * tn * module.inverse_of(i);
    }
    module.t[n] = tn;

    let mut x = &module.t0v * &module.t[0];
    module.x.push(x.clone());
    for i in 1..n {
        x = &module.t[i] * x * &module.t[i];
        module.x.push(x.clone());
    }
    Ok(module)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub residuals: BTreeMap<String, f64>,
    pub tol: f64,
    /// Largest generator norm, floored at 1. A relation of degree d is
    /// measured against `scale^d`.
    pub scale: f64,
}

impl RelationReport {
    fn new(tol: f64, scale: f64) -> Self {
        RelationReport {
            residuals: BTreeMap::new(),
            tol,
            scale: scale.max(1.0),
        }
    }

    /// Frobenius norm of the difference, relative to the size of a degree `deg`
    /// word in the generators.
    fn record(&mut self, name: String, deg: i32, lhs: &CMat, rhs: &CMat) {
        self.residuals
            .insert(name, (lhs - rhs).norm() / self.scale.powi(deg));
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn worst(&self) -> Option<(&str, f64)> {
        self.residuals
            .iter()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, v)| (k.as_str(), *v))
    }

    pub fn passed(&self) -> bool {
        self.residuals.values().all(|r| *r < self.tol)
    }

    pub fn merge(&mut self, other: RelationReport) {
        for (k, v) in other.residuals {
            let slot = self.residuals.entry(k).or_insert(0.0);
            *slot = slot.max(v);
        }
    }
}

fn name(i: usize, n: usize) -> String {
    if i == n {
        "Tn".into()
    } else {
        format!("T{i}")
    }
}

pub fn check_hecke_relations(m: &CalibratedModule, tol: f64) -> RelationReport {
    let n = m.n;
    let id = CMat::identity(m.dim(), m.dim());
    let zero = CMat::zeros(m.dim(), m.dim());
    let scale = m.t.iter().chain([&m.t0v]).map(|t| t.norm()).fold(1.0, f64::max);
    let mut rep = RelationReport::new(tol, scale);
    let quad = |t: &CMat, qi: Complex64| (t - &id * qi) * (t + &id * qi.inv());

    for i in 0..=n {
        rep.record(format!("quadratic {}", name(i, n)), 2, &quad(&m.t[i], m.q_of(i)), &zero);
    }
    rep.record("quadratic T0v".into(), 2, &quad(&m.t0v, m.qn), &zero);
    for i in 0..=n {
        for j in i + 2..=n {
            rep.record(
                format!("commute {} {}", name(i, n), name(j, n)),
                2,
                &(&m.t[i] * &m.t[j]),
                &(&m.t[j] * &m.t[i]),
            );
        }
    }
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (&m.t[i], &m.t[i + 1]);
        rep.record(format!("braid T{i} T{}", i + 1), 3, &(a * b * a), &(b * a * b));
    }
    let braid4 = |a: &CMat, b: &CMat| (a * b * a * b, b * a * b * a);
    if n >= 2 {
        let (l, r) = braid4(&m.t[0], &m.t[1]);
        rep.record("braid T0 T1".into(), 4, &l, &r);
        let (l, r) = braid4(&m.t[n], &m.t[n - 1]);
        rep.record(format!("braid Tn T{}", n - 1), 4, &l, &r);
        let (l, r) = braid4(&m.t[1], &m.t0v);
        rep.record("braid T1 T0v".into(), 4, &l, &r);
    }
    for i in 2..n {
        rep.record(format!("commute T0v T{i}"), 2, &(&m.t0v * &m.t[i]), &(&m.t[i] * &m.t0v));
    }
    for i in 0..n {
        for j in i + 1..n {
            rep.record(
                format!("commute X{} X{}", i + 1, j + 1),
                4,
                &(&m.x[i] * &m.x[j]),
                &(&m.x[j] * &m.x[i]),
            );
        }
        let spectrum = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            m.dim(),
            m.gamma.iter().map(|g| g[i]),
        ));
        rep.record(format!("spectrum X{}", i + 1), 2, &m.x[i], &spectrum);
    }
    rep.residuals.insert("dropped coefficients".into(), m.dropped);
    rep
}

pub fn check_tl_relations(m: &CalibratedModule, tol: f64) -> RelationReport {
    let n = m.n;
    let e: Vec<CMat> = (0..=n).map(|i| m.e(i)).collect();
    let scale = e.iter().map(|x| x.norm()).fold(1.0, f64::max);
    let mut rep = RelationReport::new(tol, scale);
    for i in 0..=n {
        let lhs = &e[i] * &e[i];
        rep.record(format!("square e{i}"), 2, &lhs, &(&e[i] * -bracket(m.q_of(i))));
    }
    if n >= 2 {
        let lhs = &e[1] * &e[0] * &e[1];
        rep.record("e1 e0 e1".into(), 3, &lhs, &(&e[1] * bracket(m.q0 / m.q)));
        let lhs = &e[n - 1] * &e[n] * &e[n - 1];
        rep.record("e(n-1) en e(n-1)".into(), 3, &lhs, &(&e[n - 1] * bracket(m.qn / m.q)));
    }
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (&e[i], &e[i + 1]);
        rep.record(format!("e{i} e{} e{i}", i + 1), 3, &(a * b * a), a);
        rep.record(format!("e{} e{i} e{}", i + 1, i + 1), 3, &(b * a * b), b);
    }
    rep
}

/// `(I_0, I_1)`: products of the even-indexed and odd-indexed `e_i`.
pub fn blob_idempotents(m: &CalibratedModule) -> (CMat, CMat) {
    let id = CMat::identity(m.dim(), m.dim());
    let mut i0 = id.clone();
    let mut i1 = id;
    for i in 0..=m.n {
        if i % 2 == 0 {
            i0 *= m.e(i);
        } else {
            i1 *= m.e(i);
        }
    }
    (i0, i1)
}

/// The blob parameter attached to the numeric seed.
pub fn kappa(n: usize, seed: &NumericSeed) -> Complex64 {
    if n.is_multiple_of(2) {
        bracket(seed.theta / seed.q) - bracket(seed.alpha1() / seed.q)
    } else {
        bracket(seed.theta) - bracket(seed.alpha1())
    }
}

/// Relation and blob-quotient reports for one cell module.
#[derive(Clone, Debug)]
pub struct ShapeReport {
    pub shape: Shape,
    pub dim: usize,
    pub relations: RelationReport,
    pub blob: RelationReport,
}

pub fn check_shape(
    cfg: &ParamConfig,
    n: usize,
    shape: Shape,
    seed: &NumericSeed,
    tol: f64,
) -> Result<ShapeReport, CalibratedError> {
    let m = build_calibrated(cfg, n, shape, seed)?;
    let mut relations = check_hecke_relations(&m, tol);
    relations.merge(check_tl_relations(&m, tol));
    Ok(ShapeReport {
        shape,
        dim: m.dim(),
        relations,
        blob: blob_check(&m, seed, tol),
    })
}

pub fn blob_check(m: &CalibratedModule, seed: &NumericSeed, tol: f64) -> RelationReport {
    let scale = (0..=m.n).map(|i| m.e(i).norm()).fold(1.0, f64::max);
    let mut rep = RelationReport::new(tol, scale);
    let (i0, i1) = blob_idempotents(m);
    let (d0, d1) = ((m.n as i32 + 2) / 2, (m.n as i32 + 1) / 2);
    let zero = CMat::zeros(m.dim(), m.dim());
    if m.shape.is_theta() {
        let k = kappa(m.n, seed);
        rep.record("I0 I1 I0".into(), 2 * d0 + d1, &(&i0 * &i1 * &i0), &(&i0 * k));
        rep.record("I1 I0 I1".into(), 2 * d1 + d0, &(&i1 * &i0 * &i1), &(&i1 * k));
    } else {
        rep.record("I0".into(), d0, &i0, &zero);
        rep.record("I1".into(), d1, &i1, &zero);
    }
    rep
}

/// Total of `|Std_n(shape)|^2` over all shapes of size `n`.
pub fn semisimple_dimension(n: usize) -> u64 {
    crate::tableaux::shapes(n)
        .into_iter()
        .map(|s| crate::tableaux::std_count(n, s).pow(2))
        .sum()
}

/// Orbit that numeric seeds leave free, exposed for callers that fix bases by hand.
pub fn free_orbits(cfg: &ParamConfig) -> Vec<OrbitId> {
    cfg.orbits()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(i, o)| matches!(o.rule, InversionRule::Paired(p) if p.0 as usize > *i))
        .map(|(i, _)| OrbitId(i as u16))
        .collect()
}
