//! Truncated exponential generating functions over exact rational
//! q-polynomials: the admissible-tree series λ(q,t), the bivariate lec
//! series, the two model series Φ built from them, and the composition /
//! reversion machinery that extracts the lec-Eulerian identity.
//!
//! A one-variable series is stored by its cells `c_0..c_N` with the
//! series `Σ c_k t^k / k!`; a two-variable series by cells `c_{n,m}`
//! with `Σ c_{n,m} x^n y^m / (n! m!)`.  Every coefficient is a
//! polynomial in `q` with exact rational scalars; no floating point is
//! involved anywhere.  Binary operations insist on matching truncation
//! orders — mismatches are errors, never silent truncation — and
//! [`Egf1::truncate`] / [`Egf2::truncate`] exist for explicit cuts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::permstats::{eulerian_poly, lec_distribution};
use crate::qpoly::{bigint_to_json, QPoly, QRatPoly};

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn inv_factorial(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), factorial(k))
}

fn rat_poly_json(p: &QRatPoly) -> Value {
    let num: Vec<Value> = p.coeffs().iter().map(|c| bigint_to_json(c.numer())).collect();
    let den: Vec<Value> = p.coeffs().iter().map(|c| bigint_to_json(c.denom())).collect();
    json!({ "q_coeffs_num": num, "q_coeffs_den": den })
}

/// A truncated one-variable exponential generating function
/// `Σ_{k ≤ N} c_k t^k / k!` with q-polynomial cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Egf1 {
    cells: Vec<QRatPoly>,
}

impl Egf1 {
    /// Build from cells `c_0..c_N` (so the order is `cells.len() - 1`).
    pub fn new(cells: Vec<QRatPoly>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Series("a series needs at least the order-0 cell".into()));
        }
        Ok(Egf1 { cells })
    }

    /// The identity series `t`, truncated at `order`.
    pub fn identity(order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::Series("the identity series needs order ≥ 1".into()));
        }
        let mut cells = vec![QRatPoly::zero(); order + 1];
        cells[1] = QRatPoly::from_int(&QPoly::one());
        Ok(Egf1 { cells })
    }

    pub fn order(&self) -> usize {
        self.cells.len() - 1
    }

    /// Cell `c_k`.  Panics if `k` exceeds the truncation order: a cell
    /// beyond the order is unknown, not zero.
    pub fn coeff(&self, k: usize) -> &QRatPoly {
        assert!(
            k < self.cells.len(),
            "cell {k} beyond truncation order {}",
            self.cells.len() - 1
        );
        &self.cells[k]
    }

    /// Explicitly cut the series down to a smaller order.
    pub fn truncate(&self, order: usize) -> Result<Egf1> {
        if order > self.order() {
            return Err(Error::Series(format!(
                "cannot extend order {} to {order}",
                self.order()
            )));
        }
        Egf1::new(self.cells[..=order].to_vec())
    }

    fn to_ordinary(&self) -> Vec<QRatPoly> {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&inv_factorial(k)))
            .collect()
    }

    fn from_ordinary(ord: Vec<QRatPoly>) -> Egf1 {
        let cells = ord
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.scale(&BigRational::from_integer(factorial(k))))
            .collect();
        Egf1 { cells }
    }

    /// Substitute `inner` for the variable: `self(inner(t))`, truncated
    /// to the common order.  The inner series must have zero constant
    /// term and the same order.
    pub fn compose(&self, inner: &Egf1) -> Result<Egf1> {
        let n = self.order();
        check_inner(inner, n, "t")?;
        let f = self.to_ordinary();
        let g = inner.to_ordinary();
        let mut acc = vec![QRatPoly::zero(); n + 1];
        for k in (0..=n).rev() {
            acc = mul_trunc(&acc, &g, n);
            acc[0] = &acc[0] + &f[k];
        }
        Ok(Egf1::from_ordinary(acc))
    }

    /// Compositional inverse by Newton iteration with order doubling:
    /// the result `g` satisfies `self(g(t)) = t` up to the truncation
    /// order.  Requires `c_0 = 0` and `c_1 = 1`.
    pub fn revert(&self) -> Result<Egf1> {
        let n = self.order();
        if n < 1 || !self.cells[0].is_zero() {
            return Err(Error::Series(
                "reversion needs a series with zero constant term".into(),
            ));
        }
        let one = QRatPoly::from_int(&QPoly::one());
        if self.cells[1] != one {
            return Err(Error::Series(format!(
                "reversion needs linear cell 1, got {}",
                self.cells[1]
            )));
        }
        let f = self.to_ordinary();
        let fprime: Vec<QRatPoly> = (0..n)
            .map(|k| f[k + 1].scale(&BigRational::from_integer(BigInt::from(k + 1))))
            .collect();
        let mut t = vec![QRatPoly::zero(); n + 1];
        t[1] = one.clone();
        let mut g = t.clone();
        // Each Newton step doubles the number of correct coefficients,
        // so ⌈log₂ n⌉ + 1 steps always suffice.
        let mut correct = 1usize;
        while correct < n {
            let fg = compose_ordinary(&f, &g, n);
            let numer = sub(&fg, &t);
            let denom = compose_ordinary(&fprime, &g, n);
            let delta = mul_trunc(&numer, &reciprocal(&denom, n)?, n);
            g = sub(&g, &delta);
            correct *= 2;
        }
        Ok(Egf1::from_ordinary(g))
    }

    /// JSON dump: `{"order": N, "cells": {"k": {"q_coeffs_num": [...],
    /// "q_coeffs_den": [...]}}}`.
    pub fn to_json_value(&self) -> Value {
        let mut cells = Map::new();
        for (k, c) in self.cells.iter().enumerate() {
            cells.insert(k.to_string(), rat_poly_json(c));
        }
        json!({ "order": self.order(), "cells": cells })
    }
}

fn check_inner(inner: &Egf1, order: usize, var: &str) -> Result<()> {
    if inner.order() != order {
        return Err(Error::Series(format!(
            "inner series for {var} has order {}, expected {order}",
            inner.order()
        )));
    }
    if !inner.cells[0].is_zero() {
        return Err(Error::Series(format!(
            "inner series for {var} has nonzero constant term {}",
            inner.cells[0]
        )));
    }
    Ok(())
}

fn mul_trunc(a: &[QRatPoly], b: &[QRatPoly], order: usize) -> Vec<QRatPoly> {
    let mut out = vec![QRatPoly::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn sub(a: &[QRatPoly], b: &[QRatPoly]) -> Vec<QRatPoly> {
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    (0..a.len().max(b.len()))
        .map(|k| {
            let av = a.get(k).cloned().unwrap_or_else(QRatPoly::zero);
            let bv = b.get(k).cloned().unwrap_or_else(QRatPoly::zero);
            &av + &bv.scale(&minus_one)
        })
        .collect()
}

fn compose_ordinary(f: &[QRatPoly], g: &[QRatPoly], order: usize) -> Vec<QRatPoly> {
    debug_assert!(g.first().is_none_or(QRatPoly::is_zero));
    let mut acc = vec![QRatPoly::zero(); order + 1];
    for k in (0..f.len()).rev() {
        acc = mul_trunc(&acc, g, order);
        acc[0] = &acc[0] + &f[k];
    }
    acc
}

/// Multiplicative inverse of a power series whose constant term is a
/// nonzero rational (in our uses it is exactly 1).
fn reciprocal(u: &[QRatPoly], order: usize) -> Result<Vec<QRatPoly>> {
    let u0 = u.first().cloned().unwrap_or_else(QRatPoly::zero);
    let Some(c0) = only_constant(&u0) else {
        return Err(Error::Series(format!(
            "cannot invert a series with non-scalar constant term {u0}"
        )));
    };
    if c0.is_zero() {
        return Err(Error::Series(
            "cannot invert a series with zero constant term".into(),
        ));
    }
    let inv0 = c0.recip();
    let mut r = vec![QRatPoly::zero(); order + 1];
    r[0] = QRatPoly::from_coeffs(vec![inv0.clone()]);
    let minus_inv0 = -inv0;
    for k in 1..=order {
        let mut s = QRatPoly::zero();
        for j in 1..=k {
            let uj = u.get(j).cloned().unwrap_or_else(QRatPoly::zero);
            s += &(&uj * &r[k - j]);
        }
        r[k] = s.scale(&minus_inv0);
    }
    Ok(r)
}

fn only_constant(p: &QRatPoly) -> Option<BigRational> {
    match p.coeffs().len() {
        0 => Some(BigRational::zero()),
        1 => Some(p.coeff(0)),
        _ => None,
    }
}

/// A truncated two-variable exponential generating function
/// `Σ_{n ≤ Nx, m ≤ Ny} c_{n,m} x^n y^m / (n! m!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Egf2 {
    cells: Vec<Vec<QRatPoly>>,
}

impl Egf2 {
    /// Build from a full rectangular cell grid `cells[n][m]`.
    pub fn new(cells: Vec<Vec<QRatPoly>>) -> Result<Self> {
        if cells.is_empty() || cells[0].is_empty() {
            return Err(Error::Series("a series needs at least the (0,0) cell".into()));
        }
        let width = cells[0].len();
        if cells.iter().any(|row| row.len() != width) {
            return Err(Error::Series("ragged cell grid".into()));
        }
        Ok(Egf2 { cells })
    }

    /// The truncation orders `(Nx, Ny)`.
    pub fn orders(&self) -> (usize, usize) {
        (self.cells.len() - 1, self.cells[0].len() - 1)
    }

    /// Cell `c_{n,m}`.  Panics beyond the truncation orders.
    pub fn coeff(&self, n: usize, m: usize) -> &QRatPoly {
        let (nx, ny) = self.orders();
        assert!(n <= nx && m <= ny, "cell ({n},{m}) beyond orders ({nx},{ny})");
        &self.cells[n][m]
    }

    /// Explicitly cut the series down to smaller orders.
    pub fn truncate(&self, nx: usize, ny: usize) -> Result<Egf2> {
        let (sx, sy) = self.orders();
        if nx > sx || ny > sy {
            return Err(Error::Series(format!(
                "cannot extend orders ({sx},{sy}) to ({nx},{ny})"
            )));
        }
        Egf2::new(
            self.cells[..=nx]
                .iter()
                .map(|row| row[..=ny].to_vec())
                .collect(),
        )
    }

    /// Substitute one-variable series for both variables:
    /// `self(inner_x(x), inner_y(y))`.  The inner orders must match the
    /// outer orders and both inner series need zero constant term.
    pub fn compose(&self, inner_x: &Egf1, inner_y: &Egf1) -> Result<Egf2> {
        let (nx, ny) = self.orders();
        check_inner(inner_x, nx, "x")?;
        check_inner(inner_y, ny, "y")?;
        let gx_pows = ordinary_powers(&inner_x.to_ordinary(), nx);
        let gy_pows = ordinary_powers(&inner_y.to_ordinary(), ny);
        let mut out = vec![vec![QRatPoly::zero(); ny + 1]; nx + 1];
        for (l1, x_pow) in gx_pows.iter().enumerate() {
            for (l2, y_pow) in gy_pows.iter().enumerate() {
                let c = &self.cells[l1][l2];
                if c.is_zero() {
                    continue;
                }
                let o = c.scale(&(inv_factorial(l1) * inv_factorial(l2)));
                for (a, ga) in x_pow.iter().enumerate() {
                    if ga.is_zero() {
                        continue;
                    }
                    for (b, gb) in y_pow.iter().enumerate() {
                        if gb.is_zero() {
                            continue;
                        }
                        out[a][b] = &out[a][b] + &(&(&o * ga) * gb);
                    }
                }
            }
        }
        for (a, row) in out.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = cell.scale(&BigRational::from_integer(factorial(a) * factorial(b)));
            }
        }
        Egf2::new(out)
    }

    /// JSON dump:
    /// `{"orders": [Nx, Ny], "cells": {"n,m": {"q_coeffs_num": [...],
    /// "q_coeffs_den": [...]}}}`.
    pub fn to_json_value(&self) -> Value {
        let (nx, ny) = self.orders();
        let mut cells = Map::new();
        for n in 0..=nx {
            for m in 0..=ny {
                cells.insert(format!("{n},{m}"), rat_poly_json(&self.cells[n][m]));
            }
        }
        json!({ "orders": [nx, ny], "cells": cells })
    }
}

/// Powers `g^0, g^1, ..., g^order` of an ordinary series, each truncated
/// at `order`.
fn ordinary_powers(g: &[QRatPoly], order: usize) -> Vec<Vec<QRatPoly>> {
    let mut one = vec![QRatPoly::zero(); order + 1];
    one[0] = QRatPoly::from_int(&QPoly::one());
    let mut pows = vec![one];
    for _ in 1..=order {
        let next = mul_trunc(pows.last().expect("non-empty"), g, order);
        pows.push(next);
    }
    pows
}

/// The exponential generating function of admissible trees: cell `c_k`
/// counts admissible trees on `k` labeled leaves weighted by
/// `q^degree`, computed by direct enumeration.
pub fn lambda_series(order: usize) -> Result<Egf1> {
    if order < 1 {
        return Err(Error::Series("lambda needs order ≥ 1".into()));
    }
    let mut cells = vec![QRatPoly::zero()];
    for k in 1..=order {
        let labels: Vec<u32> = (1..=k as u32).collect();
        let mut c = QPoly::zero();
        for t in crate::forests::enumerate_admissible_trees(&labels)? {
            c += &QPoly::one().shift_up(t.degree());
        }
        cells.push(QRatPoly::from_int(&c));
    }
    Egf1::new(cells)
}

/// The bivariate exponential generating function of the lec statistic:
/// cell `(k1, k2)` with `k1, k2 ≥ 1` is `Σ_{σ ∈ S_{k1+k2}} q^{lec(σ)}`,
/// computed by exhaustive permutation sweep; cells on the axes are zero.
pub fn lec_egf(nx: usize, ny: usize) -> Result<Egf2> {
    if nx < 1 || ny < 1 {
        return Err(Error::Series("lec series needs orders ≥ 1".into()));
    }
    let mut by_total: HashMap<usize, QRatPoly> = HashMap::new();
    let mut cells = vec![vec![QRatPoly::zero(); ny + 1]; nx + 1];
    for (k1, row) in cells.iter_mut().enumerate().skip(1) {
        for (k2, cell) in row.iter_mut().enumerate().skip(1) {
            let total = k1 + k2;
            let c = by_total
                .entry(total)
                .or_insert_with(|| QRatPoly::from_int(&lec_distribution(total)));
            *cell = c.clone();
        }
    }
    Egf2::new(cells)
}

/// The toric model series: `Σ_{ℓ1,ℓ2 ≥ 1} (A_{ℓ1+ℓ2}(q)/q) ·
/// λ^{ℓ1}(q,x)/ℓ1! · λ^{ℓ2}(q,y)/ℓ2!`.  Cell `(n, m)` equals the
/// Poincaré polynomial of the toric model of `K_n ⊔ K_m`.
pub fn phi_toric(nx: usize, ny: usize) -> Result<Egf2> {
    let outer = eulerian_outer(nx, ny)?;
    outer.compose(&lambda_series(nx)?, &lambda_series(ny)?)
}

/// The linear model series: the lec series composed with λ in both
/// variables.  Cell `(n, m)` equals the Poincaré polynomial of the
/// linear model of `cone(K_n ⊔ K_m)`, and also the degree series of the
/// special forests of type `(n, m)`.
pub fn phi_hyper(nx: usize, ny: usize) -> Result<Egf2> {
    lec_egf(nx, ny)?.compose(&lambda_series(nx)?, &lambda_series(ny)?)
}

/// The outer series of the toric side: cells `A_{ℓ1+ℓ2}(q)/q` on the
/// positive quadrant, zero on the axes.
fn eulerian_outer(nx: usize, ny: usize) -> Result<Egf2> {
    if nx < 1 || ny < 1 {
        return Err(Error::Series("series orders must be ≥ 1".into()));
    }
    let mut by_total: HashMap<usize, QRatPoly> = HashMap::new();
    let mut cells = vec![vec![QRatPoly::zero(); ny + 1]; nx + 1];
    for (l1, row) in cells.iter_mut().enumerate().skip(1) {
        for (l2, cell) in row.iter_mut().enumerate().skip(1) {
            let total = l1 + l2;
            let c = by_total.entry(total).or_insert_with(|| {
                QRatPoly::from_int(
                    &eulerian_poly(total)
                        .div_q()
                        .expect("Eulerian polynomials have zero constant term"),
                )
            });
            *cell = c.clone();
        }
    }
    Egf2::new(cells)
}

/// Undo the λ substitution in both model series and read off the
/// lec-Eulerian identity: composing `phi_toric` and `phi_hyper` with
/// `revert(λ)` in each variable recovers their outer cells, which are
/// `A_{ℓ1+ℓ2}/q` on the toric side and `Σ_{σ∈S_{ℓ1+ℓ2}} q^{lec(σ)}` on
/// the linear side.  Returns one `(toric, linear)` pair per total
/// `ℓ = 2..=max_total`, checking that every split `(ℓ1, ℓ2)` of the
/// same total yields the same pair.
pub fn extract_lec_identity(max_total: usize) -> Result<Vec<(QPoly, QPoly)>> {
    if max_total < 2 {
        return Err(Error::Series("need max_total ≥ 2".into()));
    }
    let mut out: Vec<Option<(QPoly, QPoly)>> = vec![None; max_total + 1];
    for l1 in 1..max_total {
        for l2 in 1..=max_total - l1 {
            let rx = lambda_series(l1)?.revert()?;
            let ry = lambda_series(l2)?.revert()?;
            let toric = phi_toric(l1, l2)?.compose(&rx, &ry)?;
            let hyper = phi_hyper(l1, l2)?.compose(&rx, &ry)?;
            let pair = (
                toric.coeff(l1, l2).to_int()?,
                hyper.coeff(l1, l2).to_int()?,
            );
            match &out[l1 + l2] {
                None => out[l1 + l2] = Some(pair),
                Some(prev) => {
                    if *prev != pair {
                        return Err(Error::Series(format!(
                            "splits of total {} disagree: ({}, {}) vs ({}, {})",
                            l1 + l2,
                            prev.0,
                            prev.1,
                            pair.0,
                            pair.1
                        )));
                    }
                }
            }
        }
    }
    Ok(out
        .into_iter()
        .skip(2)
        .map(|p| p.expect("every total 2..=max_total has a split"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(coeffs: &[i64]) -> QRatPoly {
        QRatPoly::from_int(&QPoly::from_i64_coeffs(coeffs))
    }

    #[test]
    fn lambda_matches_hand_expansion() {
        let l = lambda_series(5).unwrap();
        assert_eq!(l.coeff(0), &QRatPoly::zero());
        assert_eq!(l.coeff(1), &int_poly(&[1]));
        assert_eq!(l.coeff(2), &QRatPoly::zero());
        assert_eq!(l.coeff(3), &int_poly(&[0, 1]));
        assert_eq!(l.coeff(4), &int_poly(&[0, 1, 1]));
        assert_eq!(l.coeff(5), &int_poly(&[0, 1, 11, 1]));
    }

    #[test]
    fn compose_identities() {
        let l = lambda_series(6).unwrap();
        let t = Egf1::identity(6).unwrap();
        assert_eq!(l.compose(&t).unwrap(), l);
        assert_eq!(t.compose(&l).unwrap(), l);
    }

    #[test]
    fn compose_requires_matching_orders_and_zero_constant() {
        let l5 = lambda_series(5).unwrap();
        let t4 = Egf1::identity(4).unwrap();
        assert!(l5.compose(&t4).is_err());
        let mut cells = vec![QRatPoly::zero(); 6];
        cells[0] = int_poly(&[1]);
        let shifted = Egf1::new(cells).unwrap();
        assert!(l5.compose(&shifted).is_err());
    }

    #[test]
    fn reversion_inverts_lambda() {
        let l = lambda_series(7).unwrap();
        let r = l.revert().unwrap();
        let t = Egf1::identity(7).unwrap();
        assert_eq!(r.compose(&l).unwrap(), t);
        assert_eq!(l.compose(&r).unwrap(), t);
        // Leading correction term: t - q t³/3! + ...
        assert_eq!(r.coeff(3), &int_poly(&[0, -1]));
        // The identity reverts to itself.
        assert_eq!(t.revert().unwrap(), t);
    }

    #[test]
    fn reversion_requires_unit_linear_cell() {
        let mut cells = vec![QRatPoly::zero(); 4];
        cells[1] = int_poly(&[2]);
        assert!(Egf1::new(cells).unwrap().revert().is_err());
    }

    #[test]
    fn lec_cells() {
        let l = lec_egf(2, 2).unwrap();
        assert_eq!(l.coeff(0, 0), &QRatPoly::zero());
        assert_eq!(l.coeff(2, 0), &QRatPoly::zero());
        assert_eq!(l.coeff(1, 1), &int_poly(&[1, 1]));
        assert_eq!(l.coeff(1, 2), l.coeff(2, 1));
        // S_4 swept by lec equals A_4/q — computed, not assumed.
        assert_eq!(
            l.coeff(2, 2).to_int().unwrap(),
            eulerian_poly(4).div_q().unwrap()
        );
    }

    #[test]
    fn phi_cells_match_direct_models() {
        use crate::buildingset::{building_set, cone_building_set, AmbientKind};
        use crate::cohomology::{poincare_hyperplane, poincare_toric};
        use crate::graphs::Graph;
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let pt = phi_toric(n, m).unwrap();
            let ph = phi_hyper(n, m).unwrap();
            assert_eq!(pt, ph, "({n}, {m})");
            let g = Graph::disjoint_complete(n as u32, m as u32).unwrap();
            let amb = AmbientKind::Torus(n + m);
            let direct_t = poincare_toric(&g, &building_set(&g, amb).unwrap()).unwrap();
            assert_eq!(pt.coeff(n, m).to_int().unwrap(), direct_t, "toric ({n}, {m})");
            let direct_h =
                poincare_hyperplane(&g.cone().unwrap(), &cone_building_set(&g).unwrap()).unwrap();
            assert_eq!(ph.coeff(n, m).to_int().unwrap(), direct_h, "hyper ({n}, {m})");
        }
        let pt = phi_toric(2, 1).unwrap();
        assert_eq!(pt.coeff(1, 1).to_int().unwrap(), QPoly::from_i64_coeffs(&[1, 1]));
        assert_eq!(
            pt.coeff(2, 1).to_int().unwrap(),
            QPoly::from_i64_coeffs(&[1, 4, 1])
        );
    }

    #[test]
    fn lec_identity_extraction() {
        let pairs = extract_lec_identity(5).unwrap();
        assert_eq!(pairs.len(), 4); // totals 2..=5
        for (i, (toric, hyper)) in pairs.iter().enumerate() {
            let total = i + 2;
            assert_eq!(toric, hyper, "total {total}");
            assert_eq!(
                toric,
                &eulerian_poly(total).div_q().unwrap(),
                "total {total}"
            );
        }
        assert_eq!(pairs[0].0, QPoly::from_i64_coeffs(&[1, 1]));
        assert_eq!(pairs[1].0, QPoly::from_i64_coeffs(&[1, 4, 1]));
    }

    #[test]
    fn json_dump_shape() {
        let v = phi_toric(1, 1).unwrap().to_json_value();
        assert_eq!(v["orders"], serde_json::json!([1, 1]));
        let cell = &v["cells"]["1,1"];
        assert_eq!(cell["q_coeffs_num"], serde_json::json!([1, 1]));
        assert_eq!(cell["q_coeffs_den"], serde_json::json!([1, 1]));
        let l = lambda_series(3).unwrap().to_json_value();
        assert_eq!(l["order"], serde_json::json!(3));
        assert_eq!(l["cells"]["3"]["q_coeffs_num"], serde_json::json!([0, 1]));
    }

    #[test]
    fn truncation_is_explicit() {
        let l = lambda_series(6).unwrap();
        assert_eq!(l.truncate(4).unwrap(), lambda_series(4).unwrap());
        assert!(l.truncate(7).is_err());
        let p = phi_toric(2, 2).unwrap();
        assert_eq!(p.truncate(1, 1).unwrap(), phi_toric(1, 1).unwrap());
        assert!(p.truncate(3, 2).is_err());
    }
}
