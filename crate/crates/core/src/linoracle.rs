//! Exact linear algebra over ℚ: the independent oracle for the partition
//! poset.
//!
//! Each edge `{i, j}` of a graph on `1..=n` cuts out the hyperplane
//! `x_i = x_j` in ℚ^n.  Intersections of these hyperplanes form the
//! intersection lattice of the graphic arrangement, and sending a
//! Γ-connected partition to the subspace where all coordinates agree on
//! each block is an order-reversing bijection onto that lattice.  This
//! module computes the lattice by row reduction — no combinatorics — so it
//! can certify the combinatorial poset from the outside.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::partitions::{enumerate_connected_partitions, ConnectedPartition};

/// A linear subspace of ℚ^n, stored as the reduced row echelon form of the
/// system of equations that annihilates it.
///
/// RREF is a canonical form, so derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalSubspace {
    ambient: usize,
    rref: Vec<Vec<BigRational>>,
}

impl RationalSubspace {
    /// The whole space ℚ^n (no equations).
    pub fn ambient(n: usize) -> Self {
        RationalSubspace {
            ambient: n,
            rref: Vec::new(),
        }
    }

    /// The solution set of the given equations (rows of coefficients).
    pub fn from_equations(n: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::InvalidSubset(format!(
                    "equation has {} coefficients, ambient dimension is {n}",
                    r.len()
                )));
            }
        }
        Ok(RationalSubspace {
            ambient: n,
            rref: rref(rows, n),
        })
    }

    /// The subspace where all coordinates within each block of `p` agree:
    /// equations `x_i - x_j = 0` for every pair `i < j` in a common block.
    ///
    /// Coordinates are indexed by the partition's labels, which must lie in
    /// `1..=n` (the apex label 0 gets coordinate 0 when present, in which
    /// case the ambient should be `n + 1` with `n` the largest label).
    pub fn from_partition(p: &ConnectedPartition, n: usize) -> Result<Self> {
        let mut rows = Vec::new();
        for block in p.blocks() {
            for (k, &i) in block.iter().enumerate() {
                for &j in &block[k + 1..] {
                    let mut row = vec![BigRational::zero(); n];
                    let (i, j) = (coord(i, n)?, coord(j, n)?);
                    row[i] = BigRational::one();
                    row[j] = -BigRational::one();
                    rows.push(row);
                }
            }
        }
        RationalSubspace::from_equations(n, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Codimension = rank of the annihilating system.
    pub fn codim(&self) -> usize {
        self.rref.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.rref.len()
    }

    /// Whether `self ⊆ other` as subspaces: every equation of `other` must
    /// already hold on `self`, i.e. reduce to zero against `self`'s rows.
    pub fn contains_in(&self, other: &RationalSubspace) -> bool {
        self.ambient == other.ambient
            && other.rref.iter().all(|row| reduces_to_zero(&self.rref, row))
    }
}

fn coord(label: u32, n: usize) -> Result<usize> {
    let c = label as usize;
    if c >= n {
        return Err(Error::InvalidSubset(format!(
            "label {label} has no coordinate in ambient dimension {n}"
        )));
    }
    Ok(c)
}

/// Reduced row echelon form with leading 1s, zero rows dropped, rows sorted
/// by pivot column.
fn rref(mut rows: Vec<Vec<BigRational>>, n: usize) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for col in 0..n {
        // Eliminate this column against existing pivots, then look for a
        // row with a non-zero entry here.
        let mut found = None;
        for (ri, row) in rows.iter_mut().enumerate() {
            for (p, &pc) in pivot_cols.iter().enumerate() {
                if !row[pc].is_zero() {
                    let f = row[pc].clone();
                    for c in 0..n {
                        let d = &out[p][c] * &f;
                        row[c] -= d;
                    }
                }
            }
            if !row[col].is_zero() {
                found = Some(ri);
                break;
            }
        }
        let Some(ri) = found else { continue };
        let mut pivot_row = rows.swap_remove(ri);
        let lead = pivot_row[col].clone();
        for c in &mut pivot_row {
            *c /= &lead;
        }
        // Back-substitute into the rows already in echelon form.
        for (p, _) in pivot_cols.iter().enumerate() {
            if !out[p][col].is_zero() {
                let f = out[p][col].clone();
                for c in 0..n {
                    let d = &pivot_row[c] * &f;
                    out[p][c] -= d;
                }
            }
        }
        out.push(pivot_row);
        pivot_cols.push(col);
    }
    out
}

/// Whether `row` lies in the row space spanned by the RREF `basis`.
fn reduces_to_zero(basis: &[Vec<BigRational>], row: &[BigRational]) -> bool {
    let mut row = row.to_vec();
    for b in basis {
        // Rows are normalized, so the first non-zero entry is the pivot 1.
        let pivot = b.iter().position(|c| !c.is_zero());
        let Some(pc) = pivot else { continue };
        if !row[pc].is_zero() {
            let f = row[pc].clone();
            for (c, bc) in row.iter_mut().zip(b) {
                let d = bc * &f;
                *c -= d;
            }
        }
    }
    row.iter().all(Zero::is_zero)
}

/// The full intersection lattice of the graphic arrangement of `g` in ℚ^n:
/// every subspace arising as an intersection of edge hyperplanes, the empty
/// intersection (the ambient space) included, each exactly once.
///
/// Brute force by design: sweeps all `2^|E|` edge subsets and deduplicates
/// by canonical form.  Ambient coordinates are `0..n` where `n - 1` is the
/// largest vertex label, so it works for cone graphs too (coordinate 0 is
/// the apex).
pub fn intersection_lattice(g: &Graph) -> Vec<RationalSubspace> {
    let n = ambient_of(g);
    let edges = g.edges();
    let mut seen: BTreeSet<RationalSubspace> = BTreeSet::new();
    for mask in 0u64..(1 << edges.len()) {
        let rows: Vec<Vec<BigRational>> = edges
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &(i, j))| {
                let mut row = vec![BigRational::zero(); n];
                row[i as usize] = BigRational::one();
                row[j as usize] = -BigRational::one();
                row
            })
            .collect();
        seen.insert(RationalSubspace::from_equations(n, rows).expect("rows sized to ambient"));
    }
    seen.into_iter().collect()
}

fn ambient_of(g: &Graph) -> usize {
    *g.labels().last().expect("graphs have vertices") as usize + 1
}

/// Report from [`verify_lattice_iso`]: the two sides being compared and
/// whether the order-reversing bijection checks out.
#[derive(Debug)]
pub struct LatticeIsoReport {
    pub poset_size: usize,
    pub lattice_size: usize,
    pub ok: bool,
    /// Human-readable reason for the first failure, if any.
    pub failure: Option<String>,
}

/// Certify that `π ↦ H_π` is an order-reversing, codimension-preserving
/// bijection from the Γ-connected partition poset onto the intersection
/// lattice computed by exact linear algebra.
pub fn verify_lattice_iso(g: &Graph) -> LatticeIsoReport {
    let n = ambient_of(g);
    let poset = enumerate_connected_partitions(g);
    let lattice = intersection_lattice(g);
    let images: Vec<RationalSubspace> = poset
        .iter()
        .map(|p| RationalSubspace::from_partition(p, n).expect("labels fit the ambient"))
        .collect();

    let fail = |msg: String| LatticeIsoReport {
        poset_size: poset.len(),
        lattice_size: lattice.len(),
        ok: false,
        failure: Some(msg),
    };

    if poset.len() != lattice.len() {
        return fail(format!(
            "poset has {} elements but the lattice has {}",
            poset.len(),
            lattice.len()
        ));
    }
    let image_set: BTreeSet<&RationalSubspace> = images.iter().collect();
    if image_set.len() != images.len() {
        return fail("two partitions map to the same subspace".into());
    }
    let lattice_set: BTreeSet<&RationalSubspace> = lattice.iter().collect();
    if image_set != lattice_set {
        return fail("image of the poset is not the intersection lattice".into());
    }
    for (p, h) in poset.iter().zip(&images) {
        if p.codim() != h.codim() {
            return fail(format!(
                "partition {p} has codim {} but its subspace has codim {}",
                p.codim(),
                h.codim()
            ));
        }
    }
    for (i, p) in poset.iter().enumerate() {
        for (j, q) in poset.iter().enumerate() {
            let refines = p.refines(q);
            let contains = images[j].contains_in(&images[i]);
            if refines != contains {
                return fail(format!(
                    "order mismatch: [{p}] refines [{q}] is {refines}, \
                     H_q ⊆ H_p is {contains}"
                ));
            }
        }
    }
    LatticeIsoReport {
        poset_size: poset.len(),
        lattice_size: lattice.len(),
        ok: true,
        failure: None,
    }
}
