//! Graded Delta-matrices, their blocks and the `Delta = N A` factorization.
//!
//! Rows and columns are indexed by shapes in display order (descending `k`,
//! marker tie-break), so every matrix here is lower unitriangular.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::params::ParamConfig;
use crate::paths::{degree_tiles, ladder_tableaux, residue_classes};
use crate::poly::LaurentPoly;
use crate::tableaux::{
    enumerate_std, residue_seq, shapes, t_lambda, tableaux_with_residues, Shape, TableauError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LltError {
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("matrix is not lower unitriangular at ({row}, {col})")]
    NotUnitriangular { row: Shape, col: Shape },
    #[error("shape {0} is not a row of the matrix")]
    UnknownShape(Shape),
}

/// Why a candidate pair `(N, A)` is not the factorization of `Delta`.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorizationViolation {
    #[error("N A differs from Delta at ({row}, {col})")]
    Product { row: Shape, col: Shape },
    #[error("N({row}, {col}) is not in vZ[v]")]
    NotPositive { row: Shape, col: Shape },
    #[error("A({row}, {col}) is not bar-symmetric")]
    NotBarSymmetric { row: Shape, col: Shape },
    #[error("{which} is not unitriangular at ({row}, {col})")]
    NotUnitriangular { which: &'static str, row: Shape, col: Shape },
    #[error("shape lists differ")]
    ShapeMismatch,
}

/// Square matrix of Laurent polynomials with rows and columns labelled by shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    shapes: Vec<Shape>,
    entries: Vec<Vec<LaurentPoly>>,
}

impl GradedMatrix {
    pub fn identity(shapes: Vec<Shape>) -> Self {
        let m = shapes.len();
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                    .collect()
            })
            .collect();
        GradedMatrix { shapes, entries }
    }

    /// Builds a matrix from rows; panics if `entries` is not square of the
    /// size of `shapes`.
    pub fn from_rows(shapes: Vec<Shape>, entries: Vec<Vec<LaurentPoly>>) -> Self {
        assert_eq!(entries.len(), shapes.len());
        assert!(entries.iter().all(|r| r.len() == shapes.len()));
        GradedMatrix { shapes, entries }
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn index_of(&self, shape: Shape) -> Option<usize> {
        self.shapes.iter().position(|s| *s == shape)
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        self.entries[row][col] = value;
    }

    /// Entry `(lambda, mu)`; `None` if either shape is not a label.
    pub fn get(&self, lambda: Shape, mu: Shape) -> Option<&LaurentPoly> {
        Some(self.entry(self.index_of(lambda)?, self.index_of(mu)?))
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    /// The principal submatrix on `keep`, in the order given.
    pub fn submatrix(&self, keep: &[Shape]) -> Result<GradedMatrix, LltError> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|s| self.index_of(*s).ok_or(LltError::UnknownShape(*s)))
            .collect::<Result<_, _>>()?;
        let entries = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        Ok(GradedMatrix { shapes: keep.to_vec(), entries })
    }

    pub fn mul(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.shapes, other.shapes, "shape labels must agree");
        let m = self.len();
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero();
                        for k in 0..m {
                            let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                            if !a.is_zero() && !b.is_zero() {
                                acc += &(a.clone() * b.clone());
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        GradedMatrix { shapes: self.shapes.clone(), entries }
    }

    /// First position violating lower unitriangularity in the stored order.
    pub fn unitriangular_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                let e = &self.entries[i][j];
                let bad = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => !e.is_one(),
                    std::cmp::Ordering::Less => !e.is_zero(),
                    std::cmp::Ordering::Greater => false,
                };
                if bad {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.unitriangular_violation().is_none()
    }

    /// Positions of coefficients that are negative, as `(row, column)` shapes.
    pub fn negative_entries(&self) -> Vec<(Shape, Shape)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.has_nonnegative_coeffs() {
                    out.push((self.shapes[i], self.shapes[j]));
                }
            }
        }
        out
    }
}

/// Tab separated with a header row of shape labels; zero entries print as `0`.
impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.shapes {
            write!(f, "\t{s}")?;
        }
        writeln!(f)?;
        for (s, row) in self.shapes.iter().zip(&self.entries) {
            write!(f, "{s}")?;
            for e in row {
                write!(f, "\t{}", e.to_compact_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Serialize for GradedMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let labels: Vec<String> = self.shapes.iter().map(|s| s.to_string()).collect();
        let mut st = serializer.serialize_struct("GradedMatrix", 2)?;
        st.serialize_field("shapes", &labels)?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

/// `sum v^deg(s)` over the given tableaux.
fn graded_count<'a>(
    tableaux: impl IntoIterator<Item = &'a crate::tableaux::StandardTableau>,
    cfg: &ParamConfig,
) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for t in tableaux {
        acc.add_term(degree_tiles(t, cfg), BigInt::from(1));
    }
    acc
}

/// The graded Delta-matrix: entry `(lambda, mu)` counts the `mu`-coloured
/// standard tableaux of shape `lambda` by degree. With `restrict`, only
/// those shapes are used as labels.
pub fn delta_matrix(
    n: usize,
    cfg: &ParamConfig,
    restrict: Option<&[Shape]>,
) -> Result<GradedMatrix, LltError> {
    let mut labels = match restrict {
        Some(r) => {
            for s in r {
                s.check(n)?;
            }
            r.to_vec()
        }
        None => shapes(n),
    };
    labels.sort();
    labels.dedup();

    let columns: Vec<Vec<LaurentPoly>> = labels
        .par_iter()
        .map(|&mu| -> Result<Vec<LaurentPoly>, LltError> {
            let target = residue_seq(&t_lambda(n, mu)?, cfg);
            let mut col = Vec::with_capacity(labels.len());
            for &lambda in &labels {
                if lambda.k > mu.k {
                    col.push(LaurentPoly::zero());
                    continue;
                }
                let found = tableaux_with_residues(n, lambda, &target, cfg);
                let entry = graded_count(&found, cfg);
                if lambda == mu {
                    assert!(entry.is_one(), "diagonal entry at {mu} is {entry}");
                } else if lambda.k == mu.k {
                    assert!(entry.is_zero(), "same-width entry ({lambda}, {mu}) is {entry}");
                }
                col.push(entry);
            }
            Ok(col)
        })
        .collect::<Result<_, _>>()?;

    let m = labels.len();
    let entries = (0..m)
        .map(|i| (0..m).map(|j| columns[j][i].clone()).collect())
        .collect();
    Ok(GradedMatrix { shapes: labels, entries })
}

/// Connected components of the graph on shapes joined by nonzero entries,
/// each listed in the matrix order and ordered by first member.
pub fn blocks_of(m: &GradedMatrix) -> Vec<Vec<Shape>> {
    let size = m.len();
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for i in 0..size {
        for j in 0..size {
            if i != j && !m.entry(i, j).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Shape>> = BTreeMap::new();
    for i in 0..size {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(m.shapes()[i]);
    }
    groups.into_values().collect()
}

/// Delta-equivalence classes of shapes of size `n`.
pub fn blocks(n: usize, cfg: &ParamConfig) -> Result<Vec<Vec<Shape>>, LltError> {
    Ok(blocks_of(&delta_matrix(n, cfg, None)?))
}

/// The block containing `shape`.
pub fn block_of(n: usize, cfg: &ParamConfig, shape: Shape) -> Result<Vec<Shape>, LltError> {
    shape.check(n)?;
    Ok(blocks(n, cfg)?
        .into_iter()
        .find(|b| b.contains(&shape))
        .expect("every shape lies in a block"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: GradedMatrix,
    pub a: GradedMatrix,
}

/// The unique `Delta = N A` with `N` unitriangular and off-diagonal in
/// `vZ[v]`, and `A` unitriangular with bar-symmetric entries.
///
/// Columns are solved right to left; within a column, rows run downwards
/// from the diagonal so every term of the right-hand side is already known.
pub fn na_factorize(delta: &GradedMatrix) -> Result<Factorization, LltError> {
    if let Some((i, j)) = delta.unitriangular_violation() {
        return Err(LltError::NotUnitriangular {
            row: delta.shapes[i],
            col: delta.shapes[j],
        });
    }
    let m = delta.len();
    let mut n_mat = GradedMatrix::identity(delta.shapes.clone());
    let mut a_mat = GradedMatrix::identity(delta.shapes.clone());
    for j in (0..m).rev() {
        for i in j + 1..m {
            let mut rhs = delta.entries[i][j].clone();
            for v in j + 1..i {
                let (nl, av) = (&n_mat.entries[i][v], &a_mat.entries[v][j]);
                if !nl.is_zero() && !av.is_zero() {
                    rhs -= &(nl.clone() * av.clone());
                }
            }
            let (sym, pos) = rhs.bar_split();
            a_mat.entries[i][j] = sym;
            n_mat.entries[i][j] = pos;
        }
    }
    Ok(Factorization { n: n_mat, a: a_mat })
}

/// Checks the defining conditions of the factorization of `delta`.
pub fn check_factorization(
    delta: &GradedMatrix,
    f: &Factorization,
) -> Result<(), FactorizationViolation> {
    if f.n.shapes != delta.shapes || f.a.shapes != delta.shapes {
        return Err(FactorizationViolation::ShapeMismatch);
    }
    let labels = &delta.shapes;
    for (which, mat) in [("N", &f.n), ("A", &f.a)] {
        if let Some((i, j)) = mat.unitriangular_violation() {
            return Err(FactorizationViolation::NotUnitriangular {
                which,
                row: labels[i],
                col: labels[j],
            });
        }
    }
    for i in 0..delta.len() {
        for j in 0..i {
            if !f.n.entries[i][j].is_strictly_positive() {
                return Err(FactorizationViolation::NotPositive { row: labels[i], col: labels[j] });
            }
            if !f.a.entries[i][j].is_bar_symmetric() {
                return Err(FactorizationViolation::NotBarSymmetric { row: labels[i], col: labels[j] });
            }
        }
    }
    let prod = f.n.mul(&f.a);
    for i in 0..delta.len() {
        for j in 0..delta.len() {
            if prod.entries[i][j] != delta.entries[i][j] {
                return Err(FactorizationViolation::Product { row: labels[i], col: labels[j] });
            }
        }
    }
    Ok(())
}

/// Factorizes block by block and reassembles on the labels of `delta`.
pub fn na_factorize_blocks(delta: &GradedMatrix) -> Result<Factorization, LltError> {
    let parts: Vec<(Vec<Shape>, Factorization)> = blocks_of(delta)
        .into_par_iter()
        .map(|b| {
            let sub = delta.submatrix(&b)?;
            Ok((b, na_factorize(&sub)?))
        })
        .collect::<Result<_, LltError>>()?;
    let mut n_mat = GradedMatrix::identity(delta.shapes.clone());
    let mut a_mat = GradedMatrix::identity(delta.shapes.clone());
    let pos: HashMap<Shape, usize> = delta.shapes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    for (b, f) in parts {
        for (bi, si) in b.iter().enumerate() {
            for (bj, sj) in b.iter().enumerate() {
                n_mat.entries[pos[si]][pos[sj]] = f.n.entries[bi][bj].clone();
                a_mat.entries[pos[si]][pos[sj]] = f.a.entries[bi][bj].clone();
            }
        }
    }
    Ok(Factorization { n: n_mat, a: a_mat })
}

/// The conjectural graded decomposition matrix `N` of size `n`, together
/// with the positions where it has negative coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionMatrix {
    pub conjectural: bool,
    pub n: GradedMatrix,
    pub a: GradedMatrix,
    pub negative_entries: Vec<(String, String)>,
}

impl DecompositionMatrix {
    fn from_factorization(f: Factorization) -> Self {
        let negative_entries = f
            .n
            .negative_entries()
            .into_iter()
            .map(|(r, c)| (r.to_string(), c.to_string()))
            .collect();
        DecompositionMatrix {
            conjectural: true,
            n: f.n,
            a: f.a,
            negative_entries,
        }
    }

    /// Restriction of `N` and `A` to the shapes in `keep`.
    pub fn restrict(&self, keep: &[Shape]) -> Result<DecompositionMatrix, LltError> {
        Ok(Self::from_factorization(Factorization {
            n: self.n.submatrix(keep)?,
            a: self.a.submatrix(keep)?,
        }))
    }
}

pub fn decomposition_matrix(n: usize, cfg: &ParamConfig) -> Result<DecompositionMatrix, LltError> {
    decomposition_from_delta(&delta_matrix(n, cfg, None)?)
}

pub fn decomposition_from_delta(delta: &GradedMatrix) -> Result<DecompositionMatrix, LltError> {
    Ok(DecompositionMatrix::from_factorization(na_factorize_blocks(delta)?))
}

/// `dim_v Delta(lambda)`: standard tableaux of shape `lambda` counted by degree.
pub fn cell_graded_dim(n: usize, shape: Shape, cfg: &ParamConfig) -> Result<LaurentPoly, LltError> {
    let all = enumerate_std(n, shape)?;
    let parts: Vec<LaurentPoly> = all
        .par_chunks(4096)
        .map(|chunk| graded_count(chunk, cfg))
        .collect();
    let mut acc = LaurentPoly::zero();
    for p in &parts {
        acc += p;
    }
    Ok(acc)
}

/// Conjectural graded dimensions of the simple modules, solving
/// `dim_v Delta(lambda) = sum_mu N(lambda, mu) dim_v L(mu)` from the widest
/// shape down.
pub fn simple_graded_dims(
    n: usize,
    cfg: &ParamConfig,
) -> Result<BTreeMap<Shape, LaurentPoly>, LltError> {
    let decomp = decomposition_matrix(n, cfg)?;
    simple_dims_from(n, cfg, &decomp.n)
}

pub fn simple_dims_from(
    n: usize,
    cfg: &ParamConfig,
    n_mat: &GradedMatrix,
) -> Result<BTreeMap<Shape, LaurentPoly>, LltError> {
    let cells: Vec<LaurentPoly> = n_mat
        .shapes
        .iter()
        .map(|s| cell_graded_dim(n, *s, cfg))
        .collect::<Result<_, _>>()?;
    let mut simple: Vec<LaurentPoly> = Vec::with_capacity(n_mat.len());
    for i in 0..n_mat.len() {
        let mut d = cells[i].clone();
        for (j, lj) in simple.iter().enumerate() {
            let nij = &n_mat.entries[i][j];
            if !nij.is_zero() {
                d -= &(nij.clone() * lj.clone());
            }
        }
        simple.push(d);
    }
    Ok(n_mat.shapes.iter().copied().zip(simple).collect())
}

/// Lower bounds on simple dimensions: for each shape, the number of its
/// standard tableaux whose residue class holds a ladder tableau of that shape.
pub fn simple_dim_lower_bounds(n: usize, cfg: &ParamConfig) -> BTreeMap<Shape, u64> {
    let mut out: BTreeMap<Shape, u64> = shapes(n).into_iter().map(|s| (s, 0)).collect();
    let ladders = ladder_tableaux(n, cfg);
    let classes = residue_classes(n, cfg);
    let class_of: HashMap<_, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, class)| class.iter().map(move |t| (*t, c)))
        .collect();
    for group in ladders {
        let class = &classes[class_of[&group[0]]];
        let mut ladder_shapes: Vec<Shape> = group.iter().map(|t| t.shape()).collect();
        ladder_shapes.sort();
        ladder_shapes.dedup();
        for s in ladder_shapes {
            *out.get_mut(&s).expect("listed shape") +=
                class.iter().filter(|t| t.shape() == s).count() as u64;
        }
    }
    out
}
