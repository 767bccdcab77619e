//! Parameter regimes as exact residue arithmetic.
//!
//! A residue is a point `base(O) * q^exp` of a `q^2`-orbit `O`. The integral
//! orbit `Z` has base `1`; formal orbits are named in the configuration and
//! carry an inversion rule (paired with a partner orbit, or self-inverse about a
//! centre). Exponents are reduced modulo `2e` when `e` is finite.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const INTEGRAL_ORBIT: OrbitId = OrbitId(0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitId(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    pub orbit: OrbitId,
    pub exp: i64,
}

/// The six special points that can decorate a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialPoint {
    Alpha1,
    Alpha2,
    #[serde(rename = "alpha1_inv")]
    Alpha1Inv,
    #[serde(rename = "alpha2_inv")]
    Alpha2Inv,
    Theta,
    #[serde(rename = "theta_inv")]
    ThetaInv,
}

impl SpecialPoint {
    pub const ALL: [SpecialPoint; 6] = [
        SpecialPoint::Alpha1,
        SpecialPoint::Alpha2,
        SpecialPoint::Alpha1Inv,
        SpecialPoint::Alpha2Inv,
        SpecialPoint::Theta,
        SpecialPoint::ThetaInv,
    ];

    pub const ALPHAS: [SpecialPoint; 4] = [
        SpecialPoint::Alpha1,
        SpecialPoint::Alpha2,
        SpecialPoint::Alpha1Inv,
        SpecialPoint::Alpha2Inv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialPoint::Alpha1 => "alpha1",
            SpecialPoint::Alpha2 => "alpha2",
            SpecialPoint::Alpha1Inv => "alpha1_inv",
            SpecialPoint::Alpha2Inv => "alpha2_inv",
            SpecialPoint::Theta => "theta",
            SpecialPoint::ThetaInv => "theta_inv",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn is_alpha(self) -> bool {
        !matches!(self, SpecialPoint::Theta | SpecialPoint::ThetaInv)
    }

    pub fn inverse(self) -> Self {
        match self {
            SpecialPoint::Alpha1 => SpecialPoint::Alpha1Inv,
            SpecialPoint::Alpha2 => SpecialPoint::Alpha2Inv,
            SpecialPoint::Alpha1Inv => SpecialPoint::Alpha1,
            SpecialPoint::Alpha2Inv => SpecialPoint::Alpha2,
            SpecialPoint::Theta => SpecialPoint::ThetaInv,
            SpecialPoint::ThetaInv => SpecialPoint::Theta,
        }
    }
}

impl fmt::Display for SpecialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// ---------------------------------------------------------------------------
// Configuration file schema

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Finite(u32),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralPoint {
    pub integral: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormalPoint {
    pub orbit: String,
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Integral(IntegralPoint),
    Formal(FormalPoint),
}

impl PointSpec {
    pub fn integral(b: i64) -> Self {
        PointSpec::Integral(IntegralPoint { integral: b })
    }

    pub fn formal(orbit: &str, offset: i64) -> Self {
        PointSpec::Formal(FormalPoint {
            orbit: orbit.to_string(),
            offset,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsSpec {
    pub alpha1: PointSpec,
    pub alpha2: PointSpec,
    pub theta: PointSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairedSpec {
    pub paired: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfCenterSpec {
    pub self_center: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InversionSpec {
    Paired(PairedSpec),
    SelfInverse(SelfCenterSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub e: OrderSpec,
    pub points: PointsSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inversions: BTreeMap<String, InversionSpec>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid config JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`e` must be a positive integer or \"infinity\", got {0}")]
    BadOrder(String),
    #[error("orbit name `{0}` is reserved for the integral orbit")]
    ReservedOrbit(String),
    #[error("orbit `{orbit}` is paired with `{first}` and `{second}`")]
    InconsistentPairing {
        orbit: String,
        first: String,
        second: String,
    },
    #[error("orbit `{0}` cannot be paired with itself; use a self_center rule")]
    SelfPairing(String),
    #[error("unknown orbit `{0}`")]
    UnknownOrbit(String),
    #[error("too many orbits")]
    TooManyOrbits,
    #[error("inconsistent numeric assignment: {0}")]
    InconsistentSeed(String),
}

// ---------------------------------------------------------------------------
// Compiled configuration

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversionRule {
    /// `q^b -> q^{-b}`.
    Integral,
    /// `(O, t) -> (O*, -t)`.
    Paired(OrbitId),
    /// `(O, t) -> (O, c - t)`.
    SelfInverse { center: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub name: String,
    pub rule: InversionRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub constraint: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.constraint)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidationPolicy {
    /// Accept self-inverse formal orbits (only meaningful for `e = infinity`).
    pub allow_self_inverse_formal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamConfig {
    e: Option<u32>,
    orbits: Vec<Orbit>,
    alpha1: Residue,
    alpha2: Residue,
    theta: Residue,
    source: ConfigFile,
}

impl ParamConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile = serde_json::from_str(text)?;
        Self::from_file(file)
    }

    pub fn from_file(file: ConfigFile) -> Result<Self, ConfigError> {
        let e = match &file.e {
            OrderSpec::Finite(0) => return Err(ConfigError::BadOrder("0".into())),
            OrderSpec::Finite(e) => Some(*e),
            OrderSpec::Named(s) if s == "infinity" || s == "inf" => None,
            OrderSpec::Named(s) => return Err(ConfigError::BadOrder(s.clone())),
        };

        let mut names: Vec<String> = vec!["Z".to_string()];
        let point_orbit = |spec: &PointSpec, names: &mut Vec<String>| match spec {
            PointSpec::Integral(p) => Ok((INTEGRAL_ORBIT, p.integral)),
            PointSpec::Formal(p) => Ok::<_, ConfigError>((intern(names, &p.orbit)?, p.offset)),
        };
        let (o1, x1) = point_orbit(&file.points.alpha1, &mut names)?;
        let (o2, x2) = point_orbit(&file.points.alpha2, &mut names)?;
        let (o3, x3) = point_orbit(&file.points.theta, &mut names)?;

        let mut declared: BTreeMap<OrbitId, InversionRule> = BTreeMap::new();
        for (name, spec) in &file.inversions {
            let id = intern(&mut names, name)?;
            match spec {
                InversionSpec::SelfInverse(s) => {
                    declared.insert(id, InversionRule::SelfInverse { center: s.self_center });
                }
                InversionSpec::Paired(p) => {
                    if &p.paired == name {
                        return Err(ConfigError::SelfPairing(name.clone()));
                    }
                    let partner = intern(&mut names, &p.paired)?;
                    declared.insert(id, InversionRule::Paired(partner));
                }
            }
        }
        // Pairing is symmetric: fill in undeclared partners and reject contradictions.
        let explicit: Vec<(OrbitId, InversionRule)> = declared.iter().map(|(k, v)| (*k, *v)).collect();
        for (id, rule) in explicit {
            if let InversionRule::Paired(partner) = rule {
                match declared.get(&partner) {
                    None => {
                        declared.insert(partner, InversionRule::Paired(id));
                    }
                    Some(InversionRule::Paired(back)) if *back == id => {}
                    Some(other) => {
                        let second = match other {
                            InversionRule::Paired(b) => names[b.0 as usize].clone(),
                            _ => "itself".to_string(),
                        };
                        return Err(ConfigError::InconsistentPairing {
                            orbit: names[partner.0 as usize].clone(),
                            first: names[id.0 as usize].clone(),
                            second,
                        });
                    }
                }
            }
        }
        // Orbits with no declared rule get an implicit partner `<name>*`.
        let mut idx = 1;
        while idx < names.len() {
            let id = OrbitId(idx as u16);
            if !declared.contains_key(&id) {
                let partner_name = format!("{}*", names[idx]);
                let partner = intern(&mut names, &partner_name)?;
                if declared.contains_key(&partner) {
                    return Err(ConfigError::InconsistentPairing {
                        orbit: partner_name,
                        first: names[idx].clone(),
                        second: "another orbit".into(),
                    });
                }
                declared.insert(id, InversionRule::Paired(partner));
                declared.insert(partner, InversionRule::Paired(id));
            }
            idx += 1;
        }

        let mut orbits = vec![Orbit {
            name: "Z".into(),
            rule: InversionRule::Integral,
        }];
        for (i, name) in names.iter().enumerate().skip(1) {
            orbits.push(Orbit {
                name: name.clone(),
                rule: declared[&OrbitId(i as u16)],
            });
        }

        let mut cfg = ParamConfig {
            e,
            orbits,
            alpha1: Residue { orbit: o1, exp: x1 },
            alpha2: Residue { orbit: o2, exp: x2 },
            theta: Residue { orbit: o3, exp: x3 },
            source: file,
        };
        cfg.alpha1 = cfg.residue(o1, x1);
        cfg.alpha2 = cfg.residue(o2, x2);
        cfg.theta = cfg.residue(o3, x3);
        Ok(cfg)
    }

    pub fn to_file(&self) -> &ConfigFile {
        &self.source
    }

    /// `None` means `e = infinity`.
    pub fn e(&self) -> Option<u32> {
        self.e
    }

    /// `2e`, the period of exponents.
    pub fn modulus(&self) -> Option<i64> {
        self.e.map(|e| 2 * e as i64)
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_id(&self, name: &str) -> Option<OrbitId> {
        self.orbits
            .iter()
            .position(|o| o.name == name)
            .map(|i| OrbitId(i as u16))
    }

    pub fn orbit_name(&self, id: OrbitId) -> &str {
        &self.orbits[id.0 as usize].name
    }

    pub fn rule(&self, id: OrbitId) -> InversionRule {
        self.orbits[id.0 as usize].rule
    }

    pub fn residue(&self, orbit: OrbitId, exp: i64) -> Residue {
        let exp = match self.modulus() {
            Some(m) => exp.rem_euclid(m),
            None => exp,
        };
        Residue { orbit, exp }
    }

    pub fn integral(&self, exp: i64) -> Residue {
        self.residue(INTEGRAL_ORBIT, exp)
    }

    pub fn named_residue(&self, orbit: &str, exp: i64) -> Result<Residue, ConfigError> {
        let id = self
            .orbit_id(orbit)
            .ok_or_else(|| ConfigError::UnknownOrbit(orbit.to_string()))?;
        Ok(self.residue(id, exp))
    }

    /// Multiplies by `q^{2k}`.
    pub fn shift(&self, r: Residue, k: i64) -> Residue {
        self.residue(r.orbit, r.exp + 2 * k)
    }

    pub fn invert(&self, r: Residue) -> Residue {
        match self.rule(r.orbit) {
            InversionRule::Integral => self.residue(r.orbit, -r.exp),
            InversionRule::Paired(p) => self.residue(p, -r.exp),
            InversionRule::SelfInverse { center } => self.residue(r.orbit, center - r.exp),
        }
    }

    pub fn try_invert(&self, r: Residue) -> Result<Residue, ConfigError> {
        if (r.orbit.0 as usize) < self.orbits.len() {
            Ok(self.invert(r))
        } else {
            Err(ConfigError::UnknownOrbit(format!("#{}", r.orbit.0)))
        }
    }

    pub fn is_self_inverse(&self, r: Residue) -> bool {
        self.invert(r) == r
    }

    pub fn special(&self, p: SpecialPoint) -> Residue {
        match p {
            SpecialPoint::Alpha1 => self.alpha1,
            SpecialPoint::Alpha2 => self.alpha2,
            SpecialPoint::Theta => self.theta,
            other => self.invert(self.special(other.inverse())),
        }
    }

    /// Which special point sits at exponent `x` of the lattice through `lattice_base`.
    pub fn marker_label_at(&self, lattice_base: Residue, x: i64) -> Option<SpecialPoint> {
        let here = self.residue(lattice_base.orbit, x);
        SpecialPoint::ALL
            .into_iter()
            .find(|p| self.special(*p) == here)
    }

    /// True when the vertical line through exponent `x` is a hyperplane of the lattice.
    pub fn on_hyperplane(&self, lattice_base: Residue, x: i64) -> bool {
        let twice = match self.rule(lattice_base.orbit) {
            InversionRule::Paired(_) => return false,
            InversionRule::Integral => 2 * x,
            InversionRule::SelfInverse { center } => 2 * x - center,
        };
        match self.modulus() {
            Some(m) => twice.rem_euclid(m) == 0,
            None => twice == 0,
        }
    }

    pub fn has_hyperplanes(&self, lattice_base: Residue) -> bool {
        !matches!(self.rule(lattice_base.orbit), InversionRule::Paired(_))
    }

    pub fn format_residue(&self, r: Residue) -> String {
        if r.orbit == INTEGRAL_ORBIT {
            format!("q^{}", r.exp)
        } else {
            format!("{}:{}", self.orbit_name(r.orbit), r.exp)
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.validate_with(ValidationPolicy::default())
    }

    pub fn validate_with(&self, policy: ValidationPolicy) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut flag = |s: String| out.push(Violation { constraint: s });

        if let Some(e) = self.e {
            if e <= 2 {
                flag(format!("e must exceed 2 (got {e})"));
            }
        }
        for (name, spec) in [
            ("alpha1", &self.source.points.alpha1),
            ("alpha2", &self.source.points.alpha2),
            ("theta", &self.source.points.theta),
        ] {
            if let PointSpec::Formal(p) = spec {
                if p.offset.rem_euclid(2) != 0 {
                    flag(format!("offset of {name} in orbit {} must be even", p.orbit));
                }
            }
        }
        for orbit in self.orbits.iter().skip(1) {
            if let InversionRule::SelfInverse { center } = orbit.rule {
                if !policy.allow_self_inverse_formal {
                    flag(format!(
                        "orbit {} is self-inverse; not permitted by default validation",
                        orbit.name
                    ));
                } else {
                    if self.e.is_some() {
                        flag(format!(
                            "self-inverse formal orbit {} requires e = infinity",
                            orbit.name
                        ));
                    }
                    if center.rem_euclid(2) != 0 {
                        flag(format!("centre of orbit {} must be even", orbit.name));
                    }
                }
            }
        }

        let unit_name = |r: Residue| -> &'static str {
            if r.orbit == INTEGRAL_ORBIT && r.exp == 0 {
                "1"
            } else if r.orbit == INTEGRAL_ORBIT {
                "-1"
            } else {
                "±1"
            }
        };

        let alphas = SpecialPoint::ALPHAS;
        for p in alphas {
            let r = self.special(p);
            if self.is_self_inverse(r) {
                flag(format!("{} equals {}", p.name(), unit_name(r)));
            }
        }
        for (i, a) in alphas.iter().enumerate() {
            for b in &alphas[i + 1..] {
                if self.special(*a) == self.special(*b) {
                    flag(format!("{} equals {}", a.name(), b.name()));
                }
            }
        }
        for a in alphas {
            for k in [1, -1] {
                let shifted = self.shift(self.special(a), k);
                let label = format!("{}*q^{}", a.name(), 2 * k);
                if self.is_self_inverse(shifted) {
                    flag(format!("{label} equals {}", unit_name(shifted)));
                }
                for b in alphas {
                    if shifted == self.special(b) {
                        flag(format!("{label} equals {}", b.name()));
                    }
                }
            }
        }

        let theta = self.theta;
        if self.is_self_inverse(theta) {
            flag(format!("theta equals {}", unit_name(theta)));
        }
        for a in alphas {
            if theta == self.special(a) {
                flag(format!("theta equals {}", a.name()));
            }
        }
        let mut forbidden = vec![(1, "q"), (2, "q^2")];
        if let Some(e) = self.e {
            forbidden.push((e as i64 + 1, "-q"));
            forbidden.push((e as i64 + 2, "-q^2"));
        }
        for (exp, label) in forbidden {
            if theta == self.integral(exp) {
                flag(format!("theta equals {label}"));
            }
        }
        out
    }
}

fn intern(names: &mut Vec<String>, name: &str) -> Result<OrbitId, ConfigError> {
    if name == "Z" {
        return Err(ConfigError::ReservedOrbit(name.to_string()));
    }
    if let Some(i) = names.iter().position(|n| n == name) {
        return Ok(OrbitId(i as u16));
    }
    if names.len() >= u16::MAX as usize {
        return Err(ConfigError::TooManyOrbits);
    }
    names.push(name.to_string());
    Ok(OrbitId((names.len() - 1) as u16))
}

// ---------------------------------------------------------------------------
// Numeric bridge

/// Complex values for `q` and for the base of every orbit.
#[derive(Clone, Debug)]
pub struct NumericAssignment {
    pub q: Complex64,
    bases: Vec<Complex64>,
}

impl NumericAssignment {
    /// Derives orbit bases from the values of the three named points.
    pub fn from_points(
        cfg: &ParamConfig,
        q: Complex64,
        alpha1: Complex64,
        alpha2: Complex64,
        theta: Complex64,
        tol: f64,
    ) -> Result<Self, ConfigError> {
        check_q_order(cfg, q, tol)?;
        let mut bases: Vec<Option<Complex64>> = vec![None; cfg.orbits().len()];
        bases[0] = Some(Complex64::new(1.0, 0.0));
        for (name, r, value) in [
            ("alpha1", cfg.special(SpecialPoint::Alpha1), alpha1),
            ("alpha2", cfg.special(SpecialPoint::Alpha2), alpha2),
            ("theta", cfg.special(SpecialPoint::Theta), theta),
        ] {
            let base = value * q.powi(-(r.exp as i32));
            match bases[r.orbit.0 as usize] {
                Some(old) if (old - base).norm() > tol * (1.0 + old.norm()) => {
                    return Err(ConfigError::InconsistentSeed(format!(
                        "{name} disagrees with the base of orbit {}",
                        cfg.orbit_name(r.orbit)
                    )));
                }
                _ => bases[r.orbit.0 as usize] = Some(base),
            }
        }
        Self::complete(cfg, q, bases, tol)
    }

    /// Uses explicitly given formal orbit bases.
    pub fn from_bases(
        cfg: &ParamConfig,
        q: Complex64,
        given: &BTreeMap<String, Complex64>,
        tol: f64,
    ) -> Result<Self, ConfigError> {
        check_q_order(cfg, q, tol)?;
        let mut bases: Vec<Option<Complex64>> = vec![None; cfg.orbits().len()];
        bases[0] = Some(Complex64::new(1.0, 0.0));
        for (name, value) in given {
            let id = cfg
                .orbit_id(name)
                .ok_or_else(|| ConfigError::UnknownOrbit(name.clone()))?;
            bases[id.0 as usize] = Some(*value);
        }
        Self::complete(cfg, q, bases, tol)
    }

    fn complete(
        cfg: &ParamConfig,
        q: Complex64,
        mut bases: Vec<Option<Complex64>>,
        tol: f64,
    ) -> Result<Self, ConfigError> {
        for i in 1..bases.len() {
            let id = OrbitId(i as u16);
            match cfg.rule(id) {
                InversionRule::Paired(p) => {
                    let j = p.0 as usize;
                    match (bases[i], bases[j]) {
                        (Some(a), Some(b)) if (a * b - 1.0).norm() > tol => {
                            return Err(ConfigError::InconsistentSeed(format!(
                                "bases of {} and {} are not inverse",
                                cfg.orbit_name(id),
                                cfg.orbit_name(p)
                            )));
                        }
                        (Some(a), None) => bases[j] = Some(a.inv()),
                        (None, Some(b)) => bases[i] = Some(b.inv()),
                        _ => {}
                    }
                }
                InversionRule::SelfInverse { center } => {
                    let forced = -q.powf(-(center as f64) / 2.0);
                    match bases[i] {
                        Some(a) if (a * a * q.powi(center as i32) - 1.0).norm() > tol => {
                            return Err(ConfigError::InconsistentSeed(format!(
                                "base of self-inverse orbit {} is inconsistent with its centre",
                                cfg.orbit_name(id)
                            )));
                        }
                        None => bases[i] = Some(forced),
                        _ => {}
                    }
                }
                InversionRule::Integral => {}
            }
        }
        let bases = bases
            .into_iter()
            .map(|b| b.unwrap_or(Complex64::new(1.0, 0.0)))
            .collect();
        Ok(NumericAssignment { q, bases })
    }

    pub fn base(&self, orbit: OrbitId) -> Complex64 {
        self.bases[orbit.0 as usize]
    }

    pub fn res_to_complex(&self, r: Residue) -> Complex64 {
        self.base(r.orbit) * self.q.powi(r.exp as i32)
    }
}

fn check_q_order(cfg: &ParamConfig, q: Complex64, tol: f64) -> Result<(), ConfigError> {
    if q.norm() < tol {
        return Err(ConfigError::InconsistentSeed("q is zero".into()));
    }
    if let Some(e) = cfg.e() {
        let q2 = q * q;
        if (q2.powi(e as i32) - 1.0).norm() > tol {
            return Err(ConfigError::InconsistentSeed(format!("q^(2e) != 1 for e = {e}")));
        }
        for j in 1..e {
            if (q2.powi(j as i32) - 1.0).norm() < tol {
                return Err(ConfigError::InconsistentSeed(format!(
                    "q^2 has order {j}, smaller than e = {e}"
                )));
            }
        }
    }
    Ok(())
}

pub fn res_to_complex(r: Residue, seed: &NumericAssignment) -> Complex64 {
    seed.res_to_complex(r)
}

pub fn validate_config(cfg: &ParamConfig) -> Vec<Violation> {
    cfg.validate()
}

/// Configurations used throughout the tests, examples and benches.
pub mod presets {
    use super::*;

    fn build(e: OrderSpec, a1: PointSpec, a2: PointSpec, th: PointSpec, inv: &[(&str, InversionSpec)]) -> ParamConfig {
        ParamConfig::from_file(ConfigFile {
            e,
            points: PointsSpec {
                alpha1: a1,
                alpha2: a2,
                theta: th,
            },
            inversions: inv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        })
        .expect("preset configs are well formed")
    }

    fn paired(p: &str) -> InversionSpec {
        InversionSpec::Paired(PairedSpec { paired: p.into() })
    }

    /// `e = 5`; `alpha1`, `alpha2`, `theta` at offsets 0, 4, 6 of a formal orbit `A`.
    pub fn e5_formal() -> ParamConfig {
        build(
            OrderSpec::Finite(5),
            PointSpec::formal("A", 0),
            PointSpec::formal("A", 4),
            PointSpec::formal("A", 6),
            &[("A", paired("A*"))],
        )
    }

    /// `e = infinity`, `alpha1 = q^4`, `alpha2 = q^8`, `theta` in its own formal orbit.
    pub fn einf_q4_q8() -> ParamConfig {
        build(
            OrderSpec::Named("infinity".into()),
            PointSpec::integral(4),
            PointSpec::integral(8),
            PointSpec::formal("C", 0),
            &[("C", paired("C*"))],
        )
    }

    /// `e = 14`, `alpha1 = q^8`, `alpha2 = q^4`.
    pub fn e14_q8_q4() -> ParamConfig {
        build(
            OrderSpec::Finite(14),
            PointSpec::integral(8),
            PointSpec::integral(4),
            PointSpec::formal("C", 0),
            &[("C", paired("C*"))],
        )
    }

    /// `e = 14`, `alpha1 = q^4`, `alpha2 = q^8`.
    pub fn e14_q4_q8() -> ParamConfig {
        build(
            OrderSpec::Finite(14),
            PointSpec::integral(4),
            PointSpec::integral(8),
            PointSpec::formal("C", 0),
            &[("C", paired("C*"))],
        )
    }

    /// `e = 7`, `alpha1 = q^4`, `alpha2` and `theta` in separate formal orbits.
    pub fn e7_q4() -> ParamConfig {
        build(
            OrderSpec::Finite(7),
            PointSpec::integral(4),
            PointSpec::formal("B", 0),
            PointSpec::formal("C", 0),
            &[("B", paired("B*")), ("C", paired("C*"))],
        )
    }

    /// Every special point in its own formal orbit; `e = infinity`.
    pub fn generic() -> ParamConfig {
        build(
            OrderSpec::Named("infinity".into()),
            PointSpec::formal("A", 0),
            PointSpec::formal("B", 0),
            PointSpec::formal("C", 0),
            &[("A", paired("A*")), ("B", paired("B*")), ("C", paired("C*"))],
        )
    }
}
