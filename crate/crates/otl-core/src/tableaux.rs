//! Shapes, standard tableaux, residue sequences and the signed-permutation action.
//!
//! A tableau of size `n` is a single row of `n` boxes filled with signed
//! entries whose absolute values are `1..=n`. A standard tableau is determined
//! by its set of negated values, stored here as a bitmask (bit `i - 1` for value
//! `i`); the negatives occupy the leftmost boxes in increasing order, followed
//! by the positives in increasing order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{ParamConfig, Residue, SpecialPoint};

pub const MAX_N: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("shape {shape} is not in Lambda_{n}")]
    ShapeNotAllowed { shape: Shape, n: usize },
    #[error("size {0} is outside the supported range 1..={MAX_N}")]
    BadSize(usize),
    #[error("entries are not a signed permutation of 1..={0}")]
    NotSignedPermutation(usize),
    #[error("filling {0} is not standard for its shape")]
    NotStandard(String),
    #[error("cannot parse shape `{0}`; expected `(k,name)`")]
    BadShape(String),
    #[error("cannot parse tableau `{0}`")]
    BadTableau(String),
}

/// An element `(k, marker)` of the poset of shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub k: u32,
    pub marker: SpecialPoint,
}

impl Shape {
    pub fn new(k: u32, marker: SpecialPoint) -> Self {
        Shape { k, marker }
    }

    pub fn theta() -> Self {
        Shape::new(0, SpecialPoint::Theta)
    }

    pub fn is_theta(&self) -> bool {
        self.k == 0 && self.marker == SpecialPoint::Theta
    }

    pub fn is_allowed(&self, n: usize) -> bool {
        if self.is_theta() {
            return true;
        }
        let k = self.k as usize;
        if k == 0 || k > n || !(n - k).is_multiple_of(2) || !self.marker.is_alpha() {
            return false;
        }
        match k {
            1 => self.marker == SpecialPoint::Alpha1,
            2 => self.marker != SpecialPoint::Alpha1Inv,
            _ => true,
        }
    }

    pub fn check(&self, n: usize) -> Result<(), TableauError> {
        if !(1..=MAX_N).contains(&n) {
            return Err(TableauError::BadSize(n));
        }
        if self.is_allowed(n) {
            Ok(())
        } else {
            Err(TableauError::ShapeNotAllowed { shape: *self, n })
        }
    }

    /// One-based index of the box carrying the bead.
    pub fn bead_box(&self, n: usize) -> usize {
        (n - self.k as usize) / 2 + 1
    }

    /// Largest number of negative entries in a standard tableau.
    pub fn max_negatives(&self, n: usize) -> usize {
        if self.is_theta() {
            n
        } else {
            self.bead_box(n) - 1
        }
    }

    /// Total order refining the partial order by `k`: larger `k` first.
    pub fn display_cmp(&self, other: &Shape) -> Ordering {
        other
            .k
            .cmp(&self.k)
            .then_with(|| self.marker.cmp(&other.marker))
    }

    /// The strict partial order `self < other` (smaller width label).
    pub fn below(&self, other: &Shape) -> bool {
        self.k < other.k
    }
}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Shape {
    fn cmp(&self, other: &Self) -> Ordering {
        self.display_cmp(other)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.marker.name())
    }
}

impl FromStr for Shape {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableauError::BadShape(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (k, name) = inner.split_once(',').ok_or_else(bad)?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let marker = SpecialPoint::from_name(name.trim()).ok_or_else(bad)?;
        if marker == SpecialPoint::ThetaInv {
            return Err(bad());
        }
        Ok(Shape::new(k, marker))
    }
}

/// All shapes of size `n` in display order (descending `k`, marker tie-break).
pub fn shapes(n: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    let mut k = n;
    while k >= 1 {
        for m in SpecialPoint::ALPHAS {
            let s = Shape::new(k as u32, m);
            if s.is_allowed(n) {
                out.push(s);
            }
        }
        if k < 2 {
            break;
        }
        k -= 2;
    }
    out.push(Shape::theta());
    out
}

/// A standard tableau, stored as its set of negated values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    n: u8,
    shape: Shape,
    neg: u32,
}

impl StandardTableau {
    /// Builds the tableau whose negated values are `set` (values in `1..=n`).
    pub fn from_negated_set(n: usize, shape: Shape, set: &[usize]) -> Result<Self, TableauError> {
        let mut mask = 0u32;
        for &v in set {
            if v == 0 || v > n || mask & (1 << (v - 1)) != 0 {
                return Err(TableauError::NotSignedPermutation(n));
            }
            mask |= 1 << (v - 1);
        }
        Self::from_mask(n, shape, mask)
    }

    pub fn from_mask(n: usize, shape: Shape, mask: u32) -> Result<Self, TableauError> {
        shape.check(n)?;
        if n < 32 && mask >> n != 0 {
            return Err(TableauError::NotSignedPermutation(n));
        }
        let t = StandardTableau {
            n: n as u8,
            shape,
            neg: mask,
        };
        if t.negatives_count() > shape.max_negatives(n) {
            return Err(TableauError::NotStandard(t.to_string()));
        }
        Ok(t)
    }

    pub fn from_entries(n: usize, shape: Shape, entries: &[i32]) -> Result<Self, TableauError> {
        shape.check(n)?;
        check_signed_permutation(n, entries)?;
        if !is_standard(n, shape, entries) {
            return Err(TableauError::NotStandard(format!("{entries:?}")));
        }
        let mask = entries
            .iter()
            .filter(|v| **v < 0)
            .fold(0u32, |m, v| m | 1 << (v.unsigned_abs() - 1));
        Self::from_mask(n, shape, mask)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn mask(&self) -> u32 {
        self.neg
    }

    pub fn is_negated(&self, value: usize) -> bool {
        self.neg & (1 << (value - 1)) != 0
    }

    pub fn negatives_count(&self) -> usize {
        self.neg.count_ones() as usize
    }

    pub fn negated_set(&self) -> Vec<usize> {
        (1..=self.n()).filter(|v| self.is_negated(*v)).collect()
    }

    pub fn entries(&self) -> Vec<i32> {
        let n = self.n();
        let mut out: Vec<i32> = (1..=n as i32)
            .rev()
            .filter(|v| self.is_negated(*v as usize))
            .map(|v| -v)
            .collect();
        out.extend((1..=n as i32).filter(|v| !self.is_negated(*v as usize)));
        out
    }

    /// Zero-based box holding the value `+value` or `-value`.
    pub fn box_of(&self, value: usize) -> usize {
        let below = if value >= 2 { (1u32 << (value - 1)) - 1 } else { 0 };
        let above_mask = !(below | 1 << (value - 1)) & full_mask(self.n());
        if self.is_negated(value) {
            (self.neg & above_mask).count_ones() as usize
        } else {
            self.negatives_count() + (!self.neg & below).count_ones() as usize
        }
    }

    pub fn residue_seq(&self, cfg: &ParamConfig) -> Vec<Residue> {
        residue_seq(self, cfg)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.entries().iter().map(|v| v.to_string()).collect();
        write!(f, "{}:[{}]", self.shape, body.join(","))
    }
}

impl FromStr for StandardTableau {
    type Err = TableauError;

    /// Parses `(k,name):[e1,e2,...]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableauError::BadTableau(s.to_string());
        let (shape, body) = s.trim().split_once(":[").ok_or_else(bad)?;
        let shape: Shape = shape.parse()?;
        let body = body.strip_suffix(']').ok_or_else(bad)?;
        let entries: Vec<i32> = body
            .split(',')
            .map(|x| x.trim().parse::<i32>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        StandardTableau::from_entries(entries.len(), shape, &entries)
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_signed_permutation(n: usize, entries: &[i32]) -> Result<(), TableauError> {
    let mut seen = vec![false; n + 1];
    if entries.len() != n {
        return Err(TableauError::NotSignedPermutation(n));
    }
    for v in entries {
        let a = v.unsigned_abs() as usize;
        if a == 0 || a > n || seen[a] {
            return Err(TableauError::NotSignedPermutation(n));
        }
        seen[a] = true;
    }
    Ok(())
}

/// Both standardness conditions: strictly increasing, and negatives only left
/// of the bead unless the shape is `(0,theta)`.
pub fn is_standard(n: usize, shape: Shape, entries: &[i32]) -> bool {
    if check_signed_permutation(n, entries).is_err() || !shape.is_allowed(n) {
        return false;
    }
    if entries.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if shape.is_theta() {
        return true;
    }
    let p = shape.bead_box(n);
    entries.iter().skip(p - 1).all(|v| *v > 0)
}

/// Standard tableaux of a shape, ordered by number of negatives and then
/// lexicographically by the sorted negated-value set.
pub fn enumerate_std(n: usize, shape: Shape) -> Result<Vec<StandardTableau>, TableauError> {
    shape.check(n)?;
    let mut out = Vec::new();
    let mut set = Vec::with_capacity(n);
    for size in 0..=shape.max_negatives(n) {
        push_subsets(n, size, 1, &mut set, &mut |s: &[usize]| {
            let mask = s.iter().fold(0u32, |m, v| m | 1 << (v - 1));
            out.push(StandardTableau {
                n: n as u8,
                shape,
                neg: mask,
            });
        });
    }
    Ok(out)
}

fn push_subsets(n: usize, size: usize, from: usize, set: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if set.len() == size {
        emit(set);
        return;
    }
    let need = size - set.len();
    for v in from..=n + 1 - need {
        set.push(v);
        push_subsets(n, size, v + 1, set, emit);
        set.pop();
    }
}

/// The closed-form count of standard tableaux of a shape.
pub fn std_count(n: usize, shape: Shape) -> u64 {
    (0..=shape.max_negatives(n)).map(|j| binomial(n as u64, j as u64)).sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The distinguished tableau: `1` in the bead box, `-2, -4, ...` to its left,
/// the remaining positive values to its right.
pub fn t_lambda(n: usize, shape: Shape) -> Result<StandardTableau, TableauError> {
    shape.check(n)?;
    let p = shape.bead_box(n);
    let set: Vec<usize> = (1..p).map(|j| 2 * j).collect();
    StandardTableau::from_negated_set(n, shape, &set)
}

/// Content of the zero-based box `b`: the marker shifted by `q^{2(b + 1 - p)}`.
pub fn box_content(n: usize, shape: Shape, b: usize, cfg: &ParamConfig) -> Residue {
    let p = shape.bead_box(n) as i64;
    cfg.shift(cfg.special(shape.marker), b as i64 + 1 - p)
}

pub fn residue_seq(t: &StandardTableau, cfg: &ParamConfig) -> Vec<Residue> {
    let n = t.n();
    let contents: Vec<Residue> = (0..n).map(|b| box_content(n, t.shape, b, cfg)).collect();
    let nneg = t.negatives_count();
    let mut pos_seen = 0;
    let mut neg_seen = 0;
    let mut out = Vec::with_capacity(n);
    for v in 1..=n {
        if t.is_negated(v) {
            out.push(cfg.invert(contents[nneg - 1 - neg_seen]));
            neg_seen += 1;
        } else {
            out.push(contents[nneg + pos_seen]);
            pos_seen += 1;
        }
    }
    out
}

/// Residue sequence of an arbitrary filling laid out in the boxes of `shape`.
pub fn filling_residues(n: usize, shape: Shape, entries: &[i32], cfg: &ParamConfig) -> Vec<Residue> {
    let mut out = vec![cfg.integral(0); n];
    for (b, v) in entries.iter().enumerate() {
        let c = box_content(n, shape, b, cfg);
        let i = v.unsigned_abs() as usize - 1;
        out[i] = if *v > 0 { c } else { cfg.invert(c) };
    }
    out
}

/// Signed permutation generator `s_g` applied to the values of a filling.
pub fn act_on_entries(g: usize, entries: &[i32]) -> Vec<i32> {
    entries
        .iter()
        .map(|&v| {
            let a = v.abs();
            let s = v.signum();
            if g == 0 {
                if a == 1 {
                    -v
                } else {
                    v
                }
            } else if a == g as i32 {
                s * (a + 1)
            } else if a == g as i32 + 1 {
                s * (a - 1)
            } else {
                v
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActedFilling {
    pub entries: Vec<i32>,
    pub standard: Option<StandardTableau>,
}

pub fn weyl_act(g: usize, t: &StandardTableau) -> ActedFilling {
    let entries = act_on_entries(g, &t.entries());
    let standard = StandardTableau::from_entries(t.n(), t.shape(), &entries).ok();
    ActedFilling { entries, standard }
}

/// Standard tableaux of `shape` whose residue sequence equals `target`,
/// found by a depth-first search that prunes on residue prefixes.
pub fn tableaux_with_residues(
    n: usize,
    shape: Shape,
    target: &[Residue],
    cfg: &ParamConfig,
) -> Vec<StandardTableau> {
    let contents: Vec<Residue> = (0..n).map(|b| box_content(n, shape, b, cfg)).collect();
    let inverses: Vec<Residue> = contents.iter().map(|c| cfg.invert(*c)).collect();
    let mut out = Vec::new();
    for nneg in 0..=shape.max_negatives(n) {
        let mut stack: Vec<(usize, usize, u32)> = vec![(0, 0, 0)];
        while let Some((neg_seen, pos_seen, mask)) = stack.pop() {
            let v = neg_seen + pos_seen + 1;
            if v > n {
                out.push(StandardTableau {
                    n: n as u8,
                    shape,
                    neg: mask,
                });
                continue;
            }
            if pos_seen < n - nneg && contents[nneg + pos_seen] == target[v - 1] {
                stack.push((neg_seen, pos_seen + 1, mask));
            }
            if neg_seen < nneg && inverses[nneg - 1 - neg_seen] == target[v - 1] {
                stack.push((neg_seen + 1, pos_seen, mask | 1 << (v - 1)));
            }
        }
    }
    out.sort_by_key(canonical_key);
    out
}

fn canonical_key(t: &StandardTableau) -> (usize, Vec<usize>) {
    (t.negatives_count(), t.negated_set())
}

/// Tableaux of shape `lambda` coloured by `mu`: those sharing the residue
/// sequence of the distinguished tableau of `mu`.
pub fn cstd(n: usize, lambda: Shape, mu: Shape, cfg: &ParamConfig) -> Result<Vec<StandardTableau>, TableauError> {
    lambda.check(n)?;
    let target = residue_seq(&t_lambda(n, mu)?, cfg);
    Ok(tableaux_with_residues(n, lambda, &target, cfg))
}
