//! Lattice paths attached to tableaux: tilings, the two degree functions,
//! reduced words, maximal shapes, ladder tableaux and the path moves that
//! generate residue classes.
//!
//! Coordinates: the marker row is `y = 0` and the path occupies rows
//! `1..=n+1`, so `x(i)` is the horizontal position at row `i + 1`. All `x`
//! values are exponents in the orbit of the lattice base, so the marker of a
//! residue `(O, b)` sits at `(b, 0)`. A step leaving row `y` from `x` has
//! residue `(O, x + y)` when it goes south-east and the inverse of
//! `(O, x - y)` when it goes south-west.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{InversionRule, OrbitId, ParamConfig, Residue};
use crate::tableaux::{
    enumerate_std, residue_seq, shapes, t_lambda, Shape, StandardTableau,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("x({index}) = {x} is not on a hyperplane")]
    NotOnHyperplane { index: usize, x: i64 },
    #[error("reflection index {0} is out of range")]
    BadIndex(usize),
    #[error("translation needs a finite quantum characteristic")]
    InfiniteOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    SE,
    SW,
}

impl Step {
    fn flip(self) -> Step {
        match self {
            Step::SE => Step::SW,
            Step::SW => Step::SE,
        }
    }

    fn dx(self) -> i64 {
        match self {
            Step::SE => 1,
            Step::SW => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathEmbedding {
    pub lattice_base: Residue,
    pub start_x: i64,
    pub steps: Vec<Step>,
}

impl PathEmbedding {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `x(0), ..., x(n)`.
    pub fn xs(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut x = self.start_x;
        out.push(x);
        for s in &self.steps {
            x += s.dx();
            out.push(x);
        }
        out
    }

    pub fn end_x(&self) -> i64 {
        self.start_x + self.steps.iter().map(|s| s.dx()).sum::<i64>()
    }

    pub fn step_residues(&self, cfg: &ParamConfig) -> Vec<Residue> {
        let orbit = self.lattice_base.orbit;
        self.xs()
            .iter()
            .zip(&self.steps)
            .enumerate()
            .map(|(i, (x, s))| {
                let y = i as i64 + 1;
                match s {
                    Step::SE => cfg.residue(orbit, x + y),
                    Step::SW => cfg.invert(cfg.residue(orbit, x - y)),
                }
            })
            .collect()
    }

    /// Canonical key up to translation by the period of the orbit.
    pub fn key(&self, cfg: &ParamConfig) -> PathKey {
        let start = match cfg.modulus() {
            Some(m) => self.start_x.rem_euclid(m),
            None => self.start_x,
        };
        let mask = self
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::SW)
            .fold(0u32, |m, (i, _)| m | 1 << i);
        PathKey {
            orbit: self.lattice_base.orbit,
            start,
            sw_mask: mask,
            n: self.steps.len() as u8,
        }
    }
}

/// A path with the lattice base forgotten: only the orbit matters for residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathKey {
    pub orbit: OrbitId,
    pub start: i64,
    pub sw_mask: u32,
    pub n: u8,
}

impl PathKey {
    pub fn to_path(&self, cfg: &ParamConfig) -> PathEmbedding {
        PathEmbedding {
            lattice_base: cfg.residue(self.orbit, 0),
            start_x: self.start,
            steps: (0..self.n as usize)
                .map(|i| if self.sw_mask >> i & 1 == 1 { Step::SW } else { Step::SE })
                .collect(),
        }
    }
}

pub fn embed(t: &StandardTableau, cfg: &ParamConfig) -> PathEmbedding {
    let n = t.n();
    let shape = t.shape();
    let base = cfg.special(shape.marker);
    let m = shape.bead_box(n) as i64 - 1 - t.negatives_count() as i64;
    PathEmbedding {
        lattice_base: base,
        start_x: base.exp - 1 - 2 * m,
        steps: (1..=n)
            .map(|v| if t.is_negated(v) { Step::SW } else { Step::SE })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tile {
    pub top_y: usize,
    pub top_x: i64,
    pub side: Side,
}

impl Tile {
    /// The generator `s_{top_y}` the tile stands for.
    pub fn generator(&self) -> usize {
        self.top_y
    }

    pub fn content(&self) -> i64 {
        self.top_x + self.top_y as i64
    }
}

/// The tiles filling the region between `t` and the distinguished path of its
/// shape, listed row by row.
pub fn tiling(t: &StandardTableau, cfg: &ParamConfig) -> Vec<Tile> {
    let xt = embed(t, cfg).xs();
    let xl = embed(&distinguished(t), cfg).xs();
    let mut tiles = Vec::new();
    for i in 0..t.n() {
        let (lo, hi) = (xt[i].min(xl[i]), xt[i].max(xl[i]));
        let side = if xt[i] < xl[i] { Side::L } else { Side::R };
        let mut c = lo + 1;
        while c < hi {
            tiles.push(Tile {
                top_y: i,
                top_x: c,
                side,
            });
            c += 2;
        }
    }
    tiles
}

/// Rebuilds `x(0..=n)` of a path from the distinguished path and a tiling.
pub fn path_from_tiling(distinguished_xs: &[i64], tiles: &[Tile]) -> Vec<i64> {
    let mut xs = distinguished_xs.to_vec();
    for tile in tiles {
        match tile.side {
            Side::L => xs[tile.top_y] -= 2,
            Side::R => xs[tile.top_y] += 2,
        }
    }
    xs
}

fn distinguished(t: &StandardTableau) -> StandardTableau {
    t_lambda(t.n(), t.shape()).expect("shape of a standard tableau is allowed")
}

pub fn tile_degree(tile: &Tile, lattice_base: Residue, cfg: &ParamConfig) -> i64 {
    let x = tile.top_x;
    if cfg.on_hyperplane(lattice_base, x) {
        return -2;
    }
    if tile.top_y == 0 {
        return match cfg.marker_label_at(lattice_base, x) {
            Some(p) if p.is_alpha() => 1,
            _ => 0,
        };
    }
    let left = cfg.on_hyperplane(lattice_base, x - 1);
    let right = cfg.on_hyperplane(lattice_base, x + 1);
    if left != right {
        1
    } else {
        0
    }
}

pub fn degree_tiles(t: &StandardTableau, cfg: &ParamConfig) -> i64 {
    let base = cfg.special(t.shape().marker);
    tiling(t, cfg)
        .iter()
        .map(|tile| tile_degree(tile, base, cfg))
        .sum()
}

/// The word `w` with `t = w . T_lambda`, the rightmost letter acting first.
///
/// Tiles are added to the distinguished path in the order of the canonical
/// tiling tableau: left tiles by increasing content, then right tiles by
/// decreasing content.
pub fn reduced_word(t: &StandardTableau, cfg: &ParamConfig) -> Vec<usize> {
    let tiles = tiling(t, cfg);
    let mut xs = embed(&distinguished(t), cfg).xs();
    let (mut left, mut right): (Vec<Tile>, Vec<Tile>) =
        tiles.into_iter().partition(|tile| tile.side == Side::L);
    let mut order = Vec::with_capacity(left.len() + right.len());

    while !left.is_empty() {
        let pick = (0..left.len())
            .filter(|&j| addable(&xs, &left[j], -1))
            .min_by_key(|&j| (left[j].content(), left[j].top_y))
            .expect("left tiles of an admissible tiling can always be added");
        let tile = left.swap_remove(pick);
        xs[tile.top_y] -= 2;
        order.push(tile.top_y);
    }
    while !right.is_empty() {
        let pick = (0..right.len())
            .filter(|&j| addable(&xs, &right[j], 1))
            .max_by_key(|&j| (right[j].content(), right[j].top_y))
            .expect("right tiles of an admissible tiling can always be added");
        let tile = right.swap_remove(pick);
        xs[tile.top_y] += 2;
        order.push(tile.top_y);
    }
    order.reverse();
    order
}

/// Whether the tile can be added to the current path, moving `x(top_y)` by `2 * dir`.
fn addable(xs: &[i64], tile: &Tile, dir: i64) -> bool {
    let (tx, ty) = (tile.top_x, tile.top_y);
    if xs[ty] != tx - dir || xs[ty + 1] != tx {
        return false;
    }
    ty == 0 || xs[ty - 1] == tx
}

/// Applies `word` to `T_lambda`, rightmost letter first, returning every
/// intermediate filling (the last one is the result).
pub fn apply_word(t_lambda_entries: &[i32], word: &[usize]) -> Vec<Vec<i32>> {
    let mut current = t_lambda_entries.to_vec();
    let mut out = Vec::with_capacity(word.len());
    for &g in word.iter().rev() {
        current = crate::tableaux::act_on_entries(g, &current);
        out.push(current.clone());
    }
    out
}

/// Degree of `t` computed from the graded generator degrees along its reduced word.
pub fn degree_klr(t: &StandardTableau, cfg: &ParamConfig) -> i64 {
    let word = reduced_word(t, cfg);
    let mut res = residue_seq(&distinguished(t), cfg);
    let alphas = [
        cfg.special(crate::SpecialPoint::Alpha1),
        cfg.special(crate::SpecialPoint::Alpha2),
    ];
    let mut deg = 0;
    for &g in word.iter().rev() {
        if g == 0 {
            let i1 = res[0];
            if cfg.is_self_inverse(i1) {
                deg -= 2;
            }
            for a in alphas {
                if i1 == a || i1 == cfg.invert(a) {
                    deg += 1;
                }
            }
            res[0] = cfg.invert(i1);
        } else {
            let (a, b) = (res[g - 1], res[g]);
            if a == b {
                deg -= 2;
            } else if b == cfg.shift(a, 1) || b == cfg.shift(a, -1) {
                deg += 1;
            }
            res.swap(g - 1, g);
        }
    }
    deg
}

/// Type C length of a signed permutation given by the images of `1..=n`.
pub fn coxeter_length(w: &[i32]) -> usize {
    let n = w.len();
    let mut len = w.iter().filter(|v| **v < 0).count();
    for i in 0..n {
        for j in i + 1..n {
            if w[i] > w[j] {
                len += 1;
            }
            if w[i] + w[j] < 0 {
                len += 1;
            }
        }
    }
    len
}

/// The signed permutation `w_t` with `w_t(T_lambda[j]) = t[j]` for every box `j`.
pub fn signed_permutation(t: &StandardTableau) -> Vec<i32> {
    let from = distinguished(t).entries();
    let to = t.entries();
    let mut w = vec![0; t.n()];
    for (a, b) in from.iter().zip(&to) {
        w[a.unsigned_abs() as usize - 1] = a.signum() * b;
    }
    w
}

/// The largest shape whose region can hold the path, if any.
pub fn max_shape(p: &PathEmbedding, cfg: &ParamConfig) -> Option<Shape> {
    let negated = sim_transform(p, SimOp::Negate, cfg).expect("negation is always defined");
    let oriented = if p.start_x > p.end_x() { &negated } else { p };
    alpha_shape(oriented, cfg).or_else(|| {
        // The endpoint rule is tied to the orientation of the tableau, which
        // the path alone does not record.
        (meets_theta(p, cfg) || meets_theta(&negated, cfg)).then(Shape::theta)
    })
}

fn alpha_shape(p: &PathEmbedding, cfg: &ParamConfig) -> Option<Shape> {
    let (x0, xn) = (p.start_x, p.end_x());
    let mut x = x0 + 1;
    while x <= xn {
        if let Some(mark) = cfg.marker_label_at(p.lattice_base, x).filter(|m| m.is_alpha()) {
            let shape = Shape::new((xn - x + 1) as u32, mark);
            return shape.is_allowed(p.len()).then_some(shape);
        }
        x += 2;
    }
    None
}

fn meets_theta(p: &PathEmbedding, cfg: &ParamConfig) -> bool {
    let xn = p.end_x();
    let at = if p.len() % 2 == 1 { xn } else { xn + 1 };
    cfg.residue(p.lattice_base.orbit, at) == cfg.special(crate::SpecialPoint::Theta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimOp {
    Negate,
    Translate(i64),
    Reflect(usize),
}

pub fn sim_transform(p: &PathEmbedding, op: SimOp, cfg: &ParamConfig) -> Result<PathEmbedding, PathError> {
    match op {
        SimOp::Negate => {
            let mirror = match cfg.rule(p.lattice_base.orbit) {
                InversionRule::SelfInverse { center } => center,
                _ => 0,
            };
            Ok(PathEmbedding {
                lattice_base: cfg.invert(p.lattice_base),
                start_x: mirror - p.start_x,
                steps: p.steps.iter().map(|s| s.flip()).collect(),
            })
        }
        SimOp::Translate(r) => {
            let e = cfg.e().ok_or(PathError::InfiniteOrder)? as i64;
            Ok(PathEmbedding {
                start_x: p.start_x + 2 * r * e,
                ..p.clone()
            })
        }
        SimOp::Reflect(i) => {
            if i > p.len() {
                return Err(PathError::BadIndex(i));
            }
            let x = p.xs()[i];
            if !cfg.on_hyperplane(p.lattice_base, x) {
                return Err(PathError::NotOnHyperplane { index: i, x });
            }
            let steps = p
                .steps
                .iter()
                .enumerate()
                .map(|(j, s)| if j < i { *s } else { s.flip() })
                .collect();
            Ok(PathEmbedding {
                steps,
                ..p.clone()
            })
        }
    }
}

/// Every standard tableau whose path has the given key.
pub fn tableau_of_path(key: &PathKey, cfg: &ParamConfig) -> Vec<StandardTableau> {
    let n = key.n as usize;
    let nneg = key.sw_mask.count_ones() as usize;
    shapes(n)
        .into_iter()
        .filter_map(|shape| {
            let base = cfg.special(shape.marker);
            if base.orbit != key.orbit || nneg > shape.max_negatives(n) {
                return None;
            }
            let t = StandardTableau::from_mask(n, shape, key.sw_mask).ok()?;
            (embed(&t, cfg).key(cfg) == *key).then_some(t)
        })
        .collect()
}

/// Every standard tableau of size `n`, shapes in display order.
pub fn all_tableaux(n: usize) -> Vec<StandardTableau> {
    shapes(n)
        .into_iter()
        .flat_map(|s| enumerate_std(n, s).expect("listed shapes are allowed"))
        .collect()
}

/// Partition of all standard tableaux of size `n` by residue sequence, in
/// order of first appearance.
pub fn residue_classes(n: usize, cfg: &ParamConfig) -> Vec<Vec<StandardTableau>> {
    let all = all_tableaux(n);
    let seqs: Vec<Vec<Residue>> = all.par_iter().map(|t| residue_seq(t, cfg)).collect();
    let mut index: HashMap<&[Residue], usize> = HashMap::new();
    let mut classes: Vec<Vec<StandardTableau>> = Vec::new();
    for (t, seq) in all.iter().zip(&seqs) {
        let next = classes.len();
        let slot = *index.entry(seq.as_slice()).or_insert(next);
        if slot == next {
            classes.push(Vec::new());
        }
        classes[slot].push(*t);
    }
    classes
}

/// Every standard tableau, of any shape, sharing the residue sequence of `t`.
pub fn residue_class_of(t: &StandardTableau, cfg: &ParamConfig) -> Vec<StandardTableau> {
    let target = residue_seq(t, cfg);
    shapes(t.n())
        .into_iter()
        .flat_map(|s| crate::tableaux::tableaux_with_residues(t.n(), s, &target, cfg))
        .collect()
}

/// Partition of all standard tableaux of size `n` into orbits of the path
/// moves (negation, translation, reflection in hyperplanes).
pub fn sim_classes(n: usize, cfg: &ParamConfig) -> Vec<Vec<StandardTableau>> {
    let all = all_tableaux(n);
    let mut ids: HashMap<PathKey, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();

    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }

    let mut intern = |key: PathKey, parent: &mut Vec<usize>, queue: &mut VecDeque<PathKey>| -> usize {
        *ids.entry(key).or_insert_with(|| {
            parent.push(parent.len());
            queue.push_back(key);
            parent.len() - 1
        })
    };

    let tableau_ids: Vec<usize> = all
        .iter()
        .map(|t| intern(embed(t, cfg).key(cfg), &mut parent, &mut queue))
        .collect();

    while let Some(key) = queue.pop_front() {
        let here = intern(key, &mut parent, &mut queue);
        let path = key.to_path(cfg);
        let mut moves = vec![SimOp::Negate];
        let xs = path.xs();
        moves.extend((0..n).filter(|&i| cfg.on_hyperplane(path.lattice_base, xs[i])).map(SimOp::Reflect));
        for op in moves {
            let image = sim_transform(&path, op, cfg).expect("moves are only taken where defined");
            let there = intern(image.key(cfg), &mut parent, &mut queue);
            let (a, b) = (find(&mut parent, here), find(&mut parent, there));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut by_root: BTreeMap<usize, Vec<StandardTableau>> = BTreeMap::new();
    let mut first_seen: Vec<usize> = Vec::new();
    for (t, id) in all.iter().zip(tableau_ids) {
        let root = find(&mut parent, id);
        let class = by_root.entry(root).or_default();
        if class.is_empty() {
            first_seen.push(root);
        }
        class.push(*t);
    }
    first_seen
        .into_iter()
        .map(|r| by_root.remove(&r).unwrap_or_default())
        .collect()
}

/// `x(n) - x(0)`, the same for every path of a tableau with `N` negatives.
pub fn width(t: &StandardTableau) -> i64 {
    t.n() as i64 - 2 * t.negatives_count() as i64
}

/// Whether `t` is a ladder tableau within its residue class `class`.
pub fn is_ladder(t: &StandardTableau, class: &[StandardTableau], cfg: &ParamConfig) -> bool {
    let widest = class.iter().map(width).max().unwrap_or(i64::MIN);
    width(t) >= widest && max_shape(&embed(t, cfg), cfg) == Some(t.shape())
}

/// All ladder tableaux of size `n`, grouped by residue class (classes without
/// ladder tableaux are omitted).
pub fn ladder_tableaux(n: usize, cfg: &ParamConfig) -> Vec<Vec<StandardTableau>> {
    residue_classes(n, cfg)
        .into_par_iter()
        .map(|class| {
            class
                .iter()
                .filter(|t| is_ladder(t, &class, cfg))
                .copied()
                .collect::<Vec<_>>()
        })
        .filter(|v: &Vec<StandardTableau>| !v.is_empty())
        .collect()
}

/// Text dump of a tableau's path and tiling.
pub struct PathDump<'a> {
    pub tableau: &'a StandardTableau,
    pub cfg: &'a ParamConfig,
}

impl fmt::Display for PathDump<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cfg = self.cfg;
        let p = embed(self.tableau, cfg);
        let xs = p.xs();
        let res = p.step_residues(cfg);
        writeln!(f, "tableau {}", self.tableau)?;
        writeln!(f, "i\tx\tstep\tresidue")?;
        writeln!(f, "0\t{}\t-\t-", xs[0])?;
        for i in 0..p.len() {
            writeln!(
                f,
                "{}\t{}\t{:?}\t{}",
                i + 1,
                xs[i + 1],
                p.steps[i],
                cfg.format_residue(res[i])
            )?;
        }
        writeln!(f, "top_x\ttop_y\tside\tdegree")?;
        for tile in tiling(self.tableau, cfg) {
            writeln!(
                f,
                "{}\t{}\t{:?}\t{}",
                tile.top_x,
                tile.top_y,
                tile.side,
                tile_degree(&tile, p.lattice_base, cfg)
            )?;
        }
        Ok(())
    }
}

pub fn debug_dump(t: &StandardTableau, cfg: &ParamConfig) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}", PathDump { tableau: t, cfg });
    s
}

/// Groups tableaux into sets keyed by residue class, for comparing partitions.
pub fn partition_signature(classes: &[Vec<StandardTableau>]) -> HashSet<Vec<StandardTableau>> {
    classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_by_key(|t| (t.shape(), t.mask()));
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::presets;
    use crate::tableaux::{act_on_entries, box_content, is_standard};
    use crate::SpecialPoint::*;
    use proptest::prelude::*;

    fn configs() -> Vec<ParamConfig> {
        vec![
            presets::e5_formal(),
            presets::einf_q4_q8(),
            presets::e14_q8_q4(),
            presets::e14_q4_q8(),
            presets::e7_q4(),
            presets::generic(),
        ]
    }

    fn tab(shape: Shape, entries: &[i32]) -> StandardTableau {
        StandardTableau::from_entries(entries.len(), shape, entries).unwrap()
    }

    #[test]
    fn step_residues_reproduce_box_contents() {
        for cfg in configs() {
            for n in 1..=10 {
                for t in all_tableaux(n) {
                    let p = embed(&t, &cfg);
                    assert_eq!(p.step_residues(&cfg), residue_seq(&t, &cfg), "{t}");
                    let b = cfg.special(t.shape().marker).exp;
                    let end = if t.shape().is_theta() && n % 2 == 1 {
                        b
                    } else {
                        b - 1 + t.shape().k as i64
                    };
                    assert_eq!(p.end_x(), end);
                }
            }
        }
    }

    #[test]
    fn first_step_of_distinguished_path() {
        let cfg = presets::e14_q4_q8();
        let t = t_lambda(7, Shape::new(3, Alpha2)).unwrap();
        assert_eq!(embed(&t, &cfg).step_residues(&cfg)[0], cfg.special(Alpha2));
        // A box content check from the other side.
        assert_eq!(box_content(7, t.shape(), 2, &cfg), cfg.special(Alpha2));
    }

    /// Walks down to `T_lambda` one length-decreasing generator at a time.
    fn peel(t: &StandardTableau, cfg: &ParamConfig) -> Vec<Tile> {
        let lam = embed(&distinguished(t), cfg).xs();
        let mut cur = *t;
        let mut tiles = Vec::new();
        while signed_permutation(&cur).iter().enumerate().any(|(i, v)| *v != i as i32 + 1) {
            let len = coxeter_length(&signed_permutation(&cur));
            let mut moved = false;
            for g in 0..cur.n() {
                let entries = act_on_entries(g, &cur.entries());
                if !is_standard(cur.n(), cur.shape(), &entries) {
                    continue;
                }
                let next = StandardTableau::from_entries(cur.n(), cur.shape(), &entries).unwrap();
                if coxeter_length(&signed_permutation(&next)) + 1 != len {
                    continue;
                }
                let old = embed(&cur, cfg).xs();
                let new = embed(&next, cfg).xs();
                let top_x = if g == 0 { (old[0] + new[0]) / 2 } else { old[g - 1] };
                let side = if top_x < lam[g] { Side::L } else { Side::R };
                tiles.push(Tile { top_y: g, top_x, side });
                cur = next;
                moved = true;
                break;
            }
            assert!(moved, "no descent found for {cur}");
        }
        tiles.sort();
        tiles
    }

    #[test]
    fn region_tiling_agrees_with_peeling() {
        let cfg = presets::e14_q4_q8();
        for n in 1..=8 {
            for t in all_tableaux(n) {
                let mut region = tiling(&t, &cfg);
                region.sort();
                assert_eq!(region, peel(&t, &cfg), "{t}");
                assert_eq!(region.len(), coxeter_length(&signed_permutation(&t)));
            }
        }
    }

    #[test]
    fn tiling_round_trip() {
        let cfg = presets::e5_formal();
        for n in 1..=10 {
            for t in all_tableaux(n) {
                let lam = embed(&distinguished(&t), &cfg).xs();
                assert_eq!(path_from_tiling(&lam, &tiling(&t, &cfg)), embed(&t, &cfg).xs());
            }
        }
    }

    #[test]
    fn distinguished_has_empty_tiling() {
        let cfg = presets::einf_q4_q8();
        for n in 1..=8 {
            for s in shapes(n) {
                let t = t_lambda(n, s).unwrap();
                assert!(tiling(&t, &cfg).is_empty());
                assert!(reduced_word(&t, &cfg).is_empty());
                assert_eq!(degree_tiles(&t, &cfg), 0);
                assert_eq!(degree_klr(&t, &cfg), 0);
            }
        }
    }

    #[test]
    fn single_top_row_tile() {
        let cfg = presets::einf_q4_q8();
        // T_lambda = [-2, 1]; flipping the sign of 1 is one s_0 tile at the theta marker.
        let t = tab(Shape::theta(), &[-2, -1]);
        let tiles = tiling(&t, &cfg);
        assert_eq!(tiles.len(), 1);
        assert_eq!(tiles[0].top_y, 0);
        assert_eq!(reduced_word(&t, &cfg), vec![0]);
        assert_eq!(degree_klr(&t, &cfg), 0);
        assert_eq!(degree_tiles(&t, &cfg), 0);
    }

    #[test]
    fn alpha_marked_top_tile_has_degree_one() {
        let cfg = presets::e14_q8_q4();
        let base = cfg.special(Alpha1);
        let tile = Tile { top_y: 0, top_x: 4, side: Side::L };
        assert_eq!(tile_degree(&tile, base, &cfg), 1);
        let off = Tile { top_y: 0, top_x: 6, side: Side::L };
        assert_eq!(tile_degree(&off, base, &cfg), 0);
        let wall = Tile { top_y: 0, top_x: 14, side: Side::R };
        assert_eq!(tile_degree(&wall, base, &cfg), -2);
    }

    #[test]
    fn nine_box_pair() {
        let cfg = presets::e14_q8_q4();
        let shape = Shape::new(3, Alpha1);
        let s = tab(shape, &[-6, -4, -2, 1, 3, 5, 7, 8, 9]);
        let t = tab(shape, &[-9, 1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(s, t_lambda(9, shape).unwrap());
        assert_eq!(embed(&s, &cfg).xs()[0], 7);
        assert_eq!(degree_tiles(&s, &cfg), 0);
        assert_eq!(degree_tiles(&t, &cfg), 1);
        assert_eq!(degree_klr(&t, &cfg), 1);
        assert_eq!(max_shape(&embed(&t, &cfg), &cfg), Some(Shape::new(7, Alpha2)));
        assert_eq!(max_shape(&embed(&s, &cfg), &cfg), Some(shape));
    }

    #[test]
    fn nineteen_box_word() {
        let cfg = presets::e14_q4_q8();
        let shape = Shape::new(3, Alpha1);
        let mut entries = vec![-18, -13, -12, -11, -10];
        entries.extend(1..=9);
        entries.extend([14, 15, 16, 17, 19]);
        let t = tab(shape, &entries);
        let word = reduced_word(&t, &cfg);
        assert_eq!(
            word,
            vec![9, 8, 10, 17, 16, 13, 0, 1, 2, 3, 4, 5, 0, 1, 2, 3, 0, 1]
        );
        assert_eq!(coxeter_length(&signed_permutation(&t)), 18);
        let deg = degree_tiles(&t, &cfg);
        assert_eq!(deg, degree_klr(&t, &cfg));
        assert_eq!(deg, -1);
    }

    #[test]
    fn words_rebuild_tableaux_through_standard_fillings() {
        for cfg in [presets::e14_q4_q8(), presets::e5_formal()] {
            for n in 1..=8 {
                for t in all_tableaux(n) {
                    let word = reduced_word(&t, &cfg);
                    assert_eq!(word.len(), coxeter_length(&signed_permutation(&t)));
                    let steps = apply_word(&distinguished(&t).entries(), &word);
                    for f in &steps {
                        assert!(is_standard(n, t.shape(), f), "{t}: {f:?}");
                    }
                    let end = steps.last().cloned().unwrap_or_else(|| distinguished(&t).entries());
                    assert_eq!(end, t.entries());
                }
            }
        }
    }

    #[test]
    fn degree_computations_agree() {
        for cfg in configs() {
            for n in 1..=9 {
                for t in all_tableaux(n) {
                    assert_eq!(degree_tiles(&t, &cfg), degree_klr(&t, &cfg), "{t}");
                }
            }
        }
    }

    #[test]
    fn no_hyperplane_tiles_are_mild() {
        let cfg = presets::generic();
        for n in 1..=8 {
            for t in all_tableaux(n) {
                let base = cfg.special(t.shape().marker);
                for tile in tiling(&t, &cfg) {
                    let d = tile_degree(&tile, base, &cfg);
                    assert!(d == 0 || (d == 1 && tile.top_y == 0));
                }
            }
        }
    }

    /// Breadth-first distances from the identity in the signed permutation group.
    fn bfs_lengths(n: usize) -> HashMap<Vec<i32>, usize> {
        let id: Vec<i32> = (1..=n as i32).collect();
        let mut dist = HashMap::from([(id.clone(), 0)]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for g in 0..n {
                let next = act_on_entries(g, &w);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    #[test]
    fn length_formula_matches_group_walk() {
        for n in 1..=4 {
            let dist = bfs_lengths(n);
            assert_eq!(dist.len(), (1..=n).product::<usize>() << n);
            for (w, d) in &dist {
                assert_eq!(coxeter_length(w), *d, "{w:?}");
            }
        }
        assert_eq!(coxeter_length(&[-1, 2, 3]), 1);
        assert_eq!(coxeter_length(&[1, 2, 3]), 0);
    }

    proptest! {
        #[test]
        fn random_words_are_at_most_their_length(word in prop::collection::vec(0usize..4, 0..10)) {
            let n = 4;
            let dist = bfs_lengths(n);
            let id: Vec<i32> = (1..=n as i32).collect();
            let w = word.iter().rev().fold(id, |acc, g| act_on_entries(*g, &acc));
            let len = coxeter_length(&w);
            prop_assert!(len <= word.len());
            prop_assert_eq!(len, dist[&w]);
            let reduced = (0..word.len()).all(|k| {
                let id: Vec<i32> = (1..=n as i32).collect();
                let prefix = word[k..].iter().rev().fold(id, |acc, g| act_on_entries(*g, &acc));
                coxeter_length(&prefix) == word.len() - k
            });
            prop_assert_eq!(reduced, len == word.len());
        }

        #[test]
        fn negation_is_an_involution(mask in any::<u32>(), start in -20i64..20, n in 1usize..10, cfg_ix in 0usize..6) {
            let cfg = &configs()[cfg_ix];
            let key = PathKey { orbit: cfg.special(Alpha1).orbit, start, sw_mask: mask & ((1 << n) - 1), n: n as u8 };
            let p = key.to_path(cfg);
            let back = sim_transform(&sim_transform(&p, SimOp::Negate, cfg).unwrap(), SimOp::Negate, cfg).unwrap();
            prop_assert_eq!(back.key(cfg), p.key(cfg));
            prop_assert_eq!(sim_transform(&p, SimOp::Negate, cfg).unwrap().step_residues(cfg), p.step_residues(cfg));
        }
    }

    #[test]
    fn reflections_preserve_residues() {
        let cfg = presets::e5_formal();
        let cfg_int = presets::e7_q4();
        for c in [&cfg, &cfg_int] {
            for n in 1..=8 {
                for t in all_tableaux(n) {
                    let p = embed(&t, c);
                    for (i, x) in p.xs().iter().enumerate() {
                        match sim_transform(&p, SimOp::Reflect(i), c) {
                            Ok(r) => assert_eq!(r.step_residues(c), p.step_residues(c)),
                            Err(e) => assert_eq!(e, PathError::NotOnHyperplane { index: i, x: *x }),
                        }
                    }
                }
            }
        }
        let p = embed(&t_lambda(3, Shape::new(3, Alpha1)).unwrap(), &cfg_int);
        let moved = sim_transform(&p, SimOp::Translate(1), &cfg_int).unwrap();
        assert_eq!(moved.start_x, p.start_x + 14);
        assert_eq!(moved.step_residues(&cfg_int), p.step_residues(&cfg_int));
        assert_eq!(
            sim_transform(&p, SimOp::Translate(1), &presets::einf_q4_q8()),
            Err(PathError::InfiniteOrder)
        );
    }

    #[test]
    fn sim_closure_matches_residue_classes() {
        for cfg in [presets::e7_q4(), presets::generic(), presets::e5_formal(), presets::einf_q4_q8()] {
            for n in 1..=7 {
                assert_eq!(
                    partition_signature(&sim_classes(n, &cfg)),
                    partition_signature(&residue_classes(n, &cfg)),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn tableau_of_path_inverts_embed() {
        let cfg = presets::e5_formal();
        for n in 1..=7 {
            for t in all_tableaux(n) {
                assert!(tableau_of_path(&embed(&t, &cfg).key(&cfg), &cfg).contains(&t));
            }
        }
    }

    #[test]
    fn max_shape_of_tableau_paths() {
        for cfg in configs() {
            for n in 1..=8 {
                for t in all_tableaux(n) {
                    let m = max_shape(&embed(&t, &cfg), &cfg);
                    let m = m.unwrap_or_else(|| panic!("no maximal shape for {t}"));
                    if t == distinguished(&t) {
                        assert_eq!(m, t.shape());
                    }
                }
            }
        }
    }

    #[test]
    fn distinguished_tableaux_are_ladders() {
        for cfg in configs() {
            for n in 1..=7 {
                for class in residue_classes(n, &cfg) {
                    for t in &class {
                        if *t == distinguished(t) {
                            assert!(is_ladder(t, &class, &cfg), "{t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eight_ladders_share_a_residue_class() {
        let cfg = presets::e7_q4();
        let shape = Shape::new(15, Alpha1);
        let mut expected = Vec::new();
        for a in [[4, 5], [6, 7]] {
            for b in [15, 16] {
                for c in [24, 25] {
                    let set = [a[0], a[1], b, c];
                    expected.push(StandardTableau::from_negated_set(29, shape, &set).unwrap());
                }
            }
        }
        let class = residue_class_of(&expected[0], &cfg);
        let mut ladders: Vec<StandardTableau> =
            class.iter().filter(|t| is_ladder(t, &class, &cfg)).copied().collect();
        ladders.sort_by_key(|t| t.mask());
        expected.sort_by_key(|t| t.mask());
        assert_eq!(ladders, expected);
    }

    #[test]
    fn dump_lists_every_step_and_tile() {
        let cfg = presets::e14_q8_q4();
        let t = tab(Shape::new(3, Alpha1), &[-9, 1, 2, 3, 4, 5, 6, 7, 8]);
        let text = debug_dump(&t, &cfg);
        assert_eq!(text.lines().count(), 3 + 9 + 1 + tiling(&t, &cfg).len());
    }
}
