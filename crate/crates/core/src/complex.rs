//! Free based chain complexes over the rings of the tower, the block collapse
//! with explicit homotopy-equivalence witnesses, and base change.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::group_ring::GroupRingElement;
use crate::matrix::{exact_inverse, FieldRank, MatrixInverse, RingMatrix};
use crate::ring::{Fp, Ring};
use crate::tower::{
    identity_basis, rho_fraction_bundle, rho_novikov, rho_r, rho_rational_field, rho_scalar, rho_scalar_bundle,
    NovikovCtx, NovikovElement, RatFn, RatFnCtx, RationalFnR, RepField, RepresentationDescriptor,
};

/// A complex `C_n -> ... -> C_0`. `differentials[i - 1]` is `d_i: C_i -> C_{i-1}`,
/// a `|C_{i-1}| x |C_i|` matrix whose columns are indexed by the degree-i basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedChainComplex<R: Ring> {
    ctx: R::Ctx,
    basis: Vec<Vec<String>>,
    differentials: Vec<RingMatrix<R>>,
}

/// First failure found by [`BasedChainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComplexViolation {
    Shape { degree: usize, expected: (usize, usize), found: (usize, usize) },
    NonZeroSquare { degrees: (usize, usize), source: String, target: String, entry: String },
}

impl fmt::Display for ComplexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexViolation::Shape { degree, expected, found } => write!(
                f,
                "d_{degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            ComplexViolation::NonZeroSquare { degrees, source, target, entry } => write!(
                f,
                "d_{} d_{} is nonzero from {source} to {target}: {entry}",
                degrees.1 + 1,
                degrees.0
            ),
        }
    }
}

impl<R: Ring> BasedChainComplex<R> {
    pub fn new(ctx: R::Ctx, basis: Vec<Vec<String>>, differentials: Vec<RingMatrix<R>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(AlgebraError::Shape("a complex needs at least degree 0".into()));
        }
        if differentials.len() + 1 != basis.len() {
            return Err(AlgebraError::Shape(format!(
                "{} degrees need {} differentials, got {}",
                basis.len(),
                basis.len() - 1,
                differentials.len()
            )));
        }
        let x = BasedChainComplex { ctx, basis, differentials };
        if let Some(v) = x.shape_violation() {
            return Err(AlgebraError::Shape(v.to_string()));
        }
        Ok(x)
    }

    /// Complex with all differentials zero.
    pub fn zero_differentials(ctx: R::Ctx, basis: Vec<Vec<String>>) -> Result<Self> {
        let ds = (1..basis.len()).map(|i| RingMatrix::zeros(ctx.clone(), basis[i - 1].len(), basis[i].len())).collect();
        Self::new(ctx, basis, ds)
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    /// Top degree n.
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[Vec<String>] {
        &self.basis
    }

    pub fn basis_counts(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn differentials(&self) -> &[RingMatrix<R>] {
        &self.differentials
    }

    /// `d_i` for any i; zero matrices outside `1..=n`.
    pub fn differential(&self, i: usize) -> RingMatrix<R> {
        let n = self.top_degree();
        if i == 0 {
            RingMatrix::zeros(self.ctx.clone(), 0, self.basis[0].len())
        } else if i > n {
            RingMatrix::zeros(self.ctx.clone(), self.basis[n].len(), 0)
        } else {
            self.differentials[i - 1].clone()
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.basis.iter().enumerate().map(|(i, b)| if i % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) }).sum()
    }

    fn shape_violation(&self) -> Option<ComplexViolation> {
        for (k, d) in self.differentials.iter().enumerate() {
            let expected = (self.basis[k].len(), self.basis[k + 1].len());
            if (d.rows(), d.cols()) != expected {
                return Some(ComplexViolation::Shape { degree: k + 1, expected, found: (d.rows(), d.cols()) });
            }
        }
        None
    }

    /// Checks shapes and `d_{i-1} d_i = 0`, reporting the first offending pair.
    pub fn validate(&self) -> std::result::Result<(), ComplexViolation> {
        if let Some(v) = self.shape_violation() {
            return Err(v);
        }
        for i in 2..=self.top_degree() {
            let dd = self.differentials[i - 2].mul(&self.differentials[i - 1]).expect("shapes checked");
            if let Some((r, c)) = dd.first_nonzero() {
                return Err(ComplexViolation::NonZeroSquare {
                    degrees: (i, i - 2),
                    source: self.basis[i][c].clone(),
                    target: self.basis[i - 2][r].clone(),
                    entry: dd.get(r, c).render(),
                });
            }
        }
        Ok(())
    }

    /// Entrywise change of rings.
    pub fn map_entries<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> Result<S>) -> Result<BasedChainComplex<S>> {
        let ds = self.differentials.iter().map(|d| d.try_map(ctx.clone(), &f)).collect::<Result<Vec<_>>>()?;
        BasedChainComplex::new(ctx, self.basis.clone(), ds)
    }

    /// Replaces each entry by an m x m block; label `x` becomes `x#1..x#m` when m > 1.
    pub fn map_blocks<S: Ring>(
        &self,
        ctx: S::Ctx,
        m: usize,
        f: impl Fn(&R) -> Result<RingMatrix<S>>,
    ) -> Result<BasedChainComplex<S>> {
        let ds = self.differentials.iter().map(|d| d.expand_blocks(ctx.clone(), m, &f)).collect::<Result<Vec<_>>>()?;
        let basis = self
            .basis
            .iter()
            .map(|b| {
                b.iter()
                    .flat_map(|l| (1..=m).map(move |k| if m == 1 { l.clone() } else { format!("{l}#{k}") }))
                    .collect()
            })
            .collect();
        BasedChainComplex::new(ctx, basis, ds)
    }
}

impl<F: FieldRank> BasedChainComplex<F> {
    /// `dim H_i = dim C_i - rank d_i - rank d_{i+1}`.
    pub fn homology_over_field(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(F::matrix_rank).collect();
        (0..self.basis.len())
            .map(|i| {
                let out = if i == 0 { 0 } else { ranks[i - 1] };
                let inc = ranks.get(i).copied().unwrap_or(0);
                self.basis[i].len() - out - inc
            })
            .collect()
    }
}

/// Which summand of `B_i = D'_i + D_i + C_i` a basis element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    #[serde(rename = "D'")]
    DPrime,
    D,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub labels: Vec<Vec<Block>>,
}

impl BlockPartition {
    pub fn new(labels: Vec<Vec<Block>>) -> Self {
        BlockPartition { labels }
    }

    fn indices(&self, degree: usize, block: Block) -> Vec<usize> {
        self.labels[degree].iter().enumerate().filter(|(_, b)| **b == block).map(|(k, _)| k).collect()
    }
}

/// Chain maps `f: B -> C`, `g: C -> B` and the homotopy `h: B -> B` of degree +1.
/// `f[i]` and `g[i]` act in degree i; `h[i]` maps `B_i -> B_{i+1}` (the last one is empty).
#[derive(Clone, Debug, PartialEq)]
pub struct CollapseWitness<R: Ring> {
    pub f: Vec<RingMatrix<R>>,
    pub g: Vec<RingMatrix<R>>,
    pub h: Vec<RingMatrix<R>>,
    /// True when every block alpha vanishes, so the deformed differential equals d_C.
    pub simple: bool,
}

impl<R: Ring> CollapseWitness<R> {
    /// f = g = identity and h = 0 on B.
    pub fn identity(b: &BasedChainComplex<R>) -> Self {
        let counts = b.basis_counts();
        let ctx = b.ctx().clone();
        let f: Vec<_> = counts.iter().map(|&k| RingMatrix::identity(ctx.clone(), k)).collect();
        let h = (0..counts.len())
            .map(|i| RingMatrix::zeros(ctx.clone(), counts.get(i + 1).copied().unwrap_or(0), counts[i]))
            .collect();
        CollapseWitness { g: f.clone(), f, h, simple: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessIdentity {
    Shape,
    FChainMap,
    GChainMap,
    FgIdentity,
    GfHomotopy,
}

/// First failure found by [`verify_witness`], with the degree and entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessViolation {
    pub identity: WitnessIdentity,
    pub degree: usize,
    pub entry: Option<(usize, usize)>,
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails in degree {}", self.identity, self.degree)?;
        if let Some((r, c)) = self.entry {
            write!(f, " at entry ({r}, {c})")?;
        }
        Ok(())
    }
}

fn first_difference<R: Ring>(a: &RingMatrix<R>, b: &RingMatrix<R>) -> Option<(usize, usize)> {
    (0..a.rows()).flat_map(|i| (0..a.cols()).map(move |j| (i, j))).find(|&(i, j)| a.get(i, j) != b.get(i, j))
}

/// Checks `f d_B = d_C f`, `d_B g = g d_C`, `f g = 1` and `g f = 1 - d_B h - h d_B`.
pub fn verify_witness<R: Ring>(
    b: &BasedChainComplex<R>,
    c: &BasedChainComplex<R>,
    w: &CollapseWitness<R>,
) -> std::result::Result<(), WitnessViolation> {
    let n = b.top_degree();
    let bc = b.basis_counts();
    let cc = c.basis_counts();
    let shape = |degree| WitnessViolation { identity: WitnessIdentity::Shape, degree, entry: None };
    if c.top_degree() != n || w.f.len() != n + 1 || w.g.len() != n + 1 || w.h.len() != n + 1 {
        return Err(shape(0));
    }
    for i in 0..=n {
        let next = bc.get(i + 1).copied().unwrap_or(0);
        if (w.f[i].rows(), w.f[i].cols()) != (cc[i], bc[i])
            || (w.g[i].rows(), w.g[i].cols()) != (bc[i], cc[i])
            || (w.h[i].rows(), w.h[i].cols()) != (next, bc[i])
        {
            return Err(shape(i));
        }
    }
    let check = |identity, degree, lhs: RingMatrix<R>, rhs: RingMatrix<R>| match first_difference(&lhs, &rhs) {
        None => Ok(()),
        Some(e) => Err(WitnessViolation { identity, degree, entry: Some(e) }),
    };
    let mul = |x: &RingMatrix<R>, y: &RingMatrix<R>| x.mul(y).expect("shapes checked");
    for i in 0..=n {
        if i >= 1 {
            let db = b.differential(i);
            let dc = c.differential(i);
            check(WitnessIdentity::FChainMap, i, mul(&w.f[i - 1], &db), mul(&dc, &w.f[i]))?;
            check(WitnessIdentity::GChainMap, i, mul(&db, &w.g[i]), mul(&w.g[i - 1], &dc))?;
        }
        check(WitnessIdentity::FgIdentity, i, mul(&w.f[i], &w.g[i]), RingMatrix::identity(b.ctx().clone(), cc[i]))?;
        let mut rhs = RingMatrix::identity(b.ctx().clone(), bc[i]).sub(&mul(&b.differential(i + 1), &w.h[i])).expect("square");
        if i >= 1 {
            rhs = rhs.sub(&mul(&w.h[i - 1], &b.differential(i))).expect("square");
        }
        check(WitnessIdentity::GfHomotopy, i, mul(&w.g[i], &w.f[i]), rhs)?;
    }
    Ok(())
}

/// Scatters `block` into `target` at the given row and column indices.
fn place<R: Ring>(target: &mut RingMatrix<R>, rows: &[usize], cols: &[usize], block: &RingMatrix<R>) {
    for (a, &r) in rows.iter().enumerate() {
        for (b, &c) in cols.iter().enumerate() {
            target.set(r, c, block.get(a, b).clone());
        }
    }
}

fn invert<R: MatrixInverse>(m: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    if m.rows() == 0 {
        return Ok(m.clone());
    }
    exact_inverse(m)
}

/// Cancels `D'_i` against `D_{i-1}` through the invertible blocks gamma, leaving a
/// complex on C with deformed differential `d_C - beta gamma^-1 alpha`. The
/// witness is verified and `d^2 = 0` on the result is asserted before returning.
pub fn collapse<R: MatrixInverse>(
    b: &BasedChainComplex<R>,
    p: &BlockPartition,
) -> Result<(BasedChainComplex<R>, CollapseWitness<R>)> {
    let n = b.top_degree();
    let ctx = b.ctx().clone();
    if p.labels.len() != n + 1 || p.labels.iter().zip(b.basis()).any(|(l, x)| l.len() != x.len()) {
        return Err(AlgebraError::Shape("block partition does not match the basis".into()));
    }
    let dp: Vec<_> = (0..=n).map(|i| p.indices(i, Block::DPrime)).collect();
    let dd: Vec<_> = (0..=n).map(|i| p.indices(i, Block::D)).collect();
    let cc: Vec<_> = (0..=n).map(|i| p.indices(i, Block::C)).collect();
    for i in 0..=n + 1 {
        let upper = dp.get(i).map_or(0, Vec::len);
        let lower = if i == 0 { 0 } else { dd[i - 1].len() };
        if upper != lower {
            return Err(AlgebraError::Structure(format!(
                "pairing mismatch: |D'_{i}| = {upper} but |D_{}| = {lower}",
                i as i64 - 1
            )));
        }
    }
    let mut gamma_inv = vec![RingMatrix::zeros(ctx.clone(), 0, 0)];
    let mut dhat = Vec::with_capacity(n);
    let mut simple = true;
    for i in 1..=n {
        let d = &b.differentials()[i - 1];
        for &r in &dp[i - 1] {
            for &c in dd[i].iter().chain(&cc[i]) {
                if !d.get(r, c).is_zero_elem() {
                    return Err(AlgebraError::Structure(format!(
                        "d_{i} has nonzero entry {} from {} into D' element {}",
                        d.get(r, c).render(),
                        b.basis()[i][c],
                        b.basis()[i - 1][r]
                    )));
                }
            }
        }
        let gi = invert(&d.submatrix(&dd[i - 1], &dp[i]))?;
        let alpha = d.submatrix(&dd[i - 1], &cc[i]);
        let beta = d.submatrix(&cc[i - 1], &dp[i]);
        simple &= alpha.is_zero();
        let correction = beta.mul(&gi)?.mul(&alpha)?;
        dhat.push(d.submatrix(&cc[i - 1], &cc[i]).sub(&correction)?);
        gamma_inv.push(gi);
    }
    let counts = b.basis_counts();
    let mut f = Vec::with_capacity(n + 1);
    let mut g = Vec::with_capacity(n + 1);
    let mut h = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ci = cc[i].len();
        let local: Vec<usize> = (0..ci).collect();
        let id = RingMatrix::identity(ctx.clone(), ci);
        let mut fi = RingMatrix::zeros(ctx.clone(), ci, counts[i]);
        place(&mut fi, &local, &cc[i], &id);
        let mut gi = RingMatrix::zeros(ctx.clone(), counts[i], ci);
        place(&mut gi, &cc[i], &local, &id);
        let next = counts.get(i + 1).copied().unwrap_or(0);
        let mut hi = RingMatrix::zeros(ctx.clone(), next, counts[i]);
        if i < n {
            let d = &b.differentials()[i];
            let beta = d.submatrix(&cc[i], &dp[i + 1]);
            place(&mut fi, &local, &dd[i], &beta.mul(&gamma_inv[i + 1])?.neg());
            place(&mut hi, &dp[i + 1], &dd[i], &gamma_inv[i + 1]);
        }
        if i >= 1 {
            let alpha = b.differentials()[i - 1].submatrix(&dd[i - 1], &cc[i]);
            place(&mut gi, &dp[i], &local, &gamma_inv[i].mul(&alpha)?.neg());
        }
        f.push(fi);
        g.push(gi);
        h.push(hi);
    }
    let basis = (0..=n).map(|i| cc[i].iter().map(|&k| b.basis()[i][k].clone()).collect()).collect();
    let c = BasedChainComplex::new(ctx, basis, dhat)?;
    if let Err(v) = c.validate() {
        return Err(AlgebraError::InvariantViolation(format!("deformed differential: {v}")));
    }
    let w = CollapseWitness { f, g, h, simple };
    if let Err(v) = verify_witness(b, &c, &w) {
        return Err(AlgebraError::InvariantViolation(format!("collapse witness: {v}")));
    }
    Ok((c, w))
}

/// A complex after base change, tagged by its coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub enum TowerComplex {
    Novikov(BasedChainComplex<NovikovElement>),
    R(BasedChainComplex<RationalFnR>),
    Rational(BasedChainComplex<BigRational>),
    RatFnQ(BasedChainComplex<RatFn<BigRational>>),
    RatFnFp(BasedChainComplex<RatFn<Fp>>),
}

macro_rules! on_tower {
    ($x:expr, $c:ident => $body:expr) => {
        match $x {
            TowerComplex::Novikov($c) => $body,
            TowerComplex::R($c) => $body,
            TowerComplex::Rational($c) => $body,
            TowerComplex::RatFnQ($c) => $body,
            TowerComplex::RatFnFp($c) => $body,
        }
    };
}

impl TowerComplex {
    pub fn ring_name(&self) -> &'static str {
        match self {
            TowerComplex::Novikov(_) => "novikov",
            TowerComplex::R(_) => "R",
            TowerComplex::Rational(_) => "scalar",
            TowerComplex::RatFnQ(_) => "ratfield",
            TowerComplex::RatFnFp(_) => "ratfield_fp",
        }
    }

    pub fn basis_counts(&self) -> Vec<usize> {
        on_tower!(self, c => c.basis_counts())
    }

    pub fn euler_characteristic(&self) -> i64 {
        on_tower!(self, c => c.euler_characteristic())
    }

    pub fn validate(&self) -> std::result::Result<(), ComplexViolation> {
        on_tower!(self, c => c.validate())
    }

    /// Homology dimensions when the coefficient ring is a field.
    pub fn homology_over_field(&self) -> Option<Vec<usize>> {
        match self {
            TowerComplex::Rational(c) => Some(c.homology_over_field()),
            TowerComplex::RatFnQ(c) => Some(c.homology_over_field()),
            TowerComplex::RatFnFp(c) => Some(c.homology_over_field()),
            TowerComplex::Novikov(_) | TowerComplex::R(_) => None,
        }
    }

    /// True when every differential is zero.
    pub fn has_zero_differentials(&self) -> bool {
        on_tower!(self, c => c.differentials().iter().all(|d| d.is_zero()))
    }
}

fn rational_field_change<F: RepField>(
    x: &BasedChainComplex<GroupRingElement>,
    basis: &[crate::group_ring::CohomologyClass],
    characteristic: Option<u64>,
) -> Result<BasedChainComplex<RatFn<F>>> {
    let fctx = F::field_ctx(characteristic)?;
    let ctx = RatFnCtx::new(basis.len(), fctx.clone());
    x.map_entries(ctx, |p| rho_rational_field::<F>(p, basis, &fctx))
}

fn fraction_bundle_change<F: RepField>(
    x: &BasedChainComplex<GroupRingElement>,
    bundle: &crate::tower::MonodromyRep,
    characteristic: Option<u64>,
) -> Result<BasedChainComplex<RatFn<F>>> {
    let fctx = F::field_ctx(characteristic)?;
    let ctx = RatFnCtx::new(*x.ctx(), fctx.clone());
    x.map_blocks(ctx, bundle.dim(), |p| rho_fraction_bundle::<F>(p, bundle, &fctx))
}

/// Applies a representation entrywise (or blockwise for bundle twists).
pub fn base_change(x: &BasedChainComplex<GroupRingElement>, rho: &RepresentationDescriptor) -> Result<TowerComplex> {
    let rank = *x.ctx();
    rho.validate(rank)?;
    Ok(match rho {
        RepresentationDescriptor::Novikov { xi, cutoff } => {
            let ctx = NovikovCtx::new(xi.clone(), cutoff.clone());
            TowerComplex::Novikov(x.map_entries(ctx, |p| rho_novikov(p, xi, cutoff))?)
        }
        RepresentationDescriptor::RationalFnR { xi } => TowerComplex::R(x.map_entries((), |p| rho_r(p, xi))?),
        RepresentationDescriptor::Scalar { a, xi } => TowerComplex::Rational(x.map_entries((), |p| rho_scalar(p, a, xi))?),
        RepresentationDescriptor::RationalField { basis, characteristic } => {
            let basis = if basis.is_empty() { identity_basis(rank) } else { basis.clone() };
            match characteristic {
                None | Some(0) => TowerComplex::RatFnQ(rational_field_change::<BigRational>(x, &basis, None)?),
                Some(_) => TowerComplex::RatFnFp(rational_field_change::<Fp>(x, &basis, *characteristic)?),
            }
        }
        RepresentationDescriptor::ScalarWithBundle { a, xi, bundle } => {
            TowerComplex::Rational(x.map_blocks((), bundle.dim(), |p| rho_scalar_bundle(p, a, xi, bundle))?)
        }
        RepresentationDescriptor::FieldOfFractionsWithBundle { bundle, characteristic } => match characteristic {
            None | Some(0) => TowerComplex::RatFnQ(fraction_bundle_change::<BigRational>(x, bundle, None)?),
            Some(_) => TowerComplex::RatFnFp(fraction_bundle_change::<Fp>(x, bundle, *characteristic)?),
        },
    })
}

/// Euler characteristic, `sum (-1)^i |basis_i|`.
pub fn euler_characteristic<R: Ring>(x: &BasedChainComplex<R>) -> i64 {
    x.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::CohomologyClass;
    use crate::mpoly::LaurentMPoly;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn labels(counts: &[usize]) -> Vec<Vec<String>> {
        counts.iter().enumerate().map(|(i, &k)| (0..k).map(|j| format!("x{i}_{j}")).collect()).collect()
    }

    fn qmat(rows: &[&[i64]]) -> RingMatrix<BigRational> {
        RingMatrix::from_rows((), rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    fn gr(s: &str) -> GroupRingElement {
        GroupRingElement::parse(1, s).unwrap()
    }

    #[test]
    fn validation_reports() {
        let z = BasedChainComplex::<BigRational>::zero_differentials((), labels(&[2, 3, 1])).unwrap();
        assert!(z.validate().is_ok());
        let two = BasedChainComplex::new(1, labels(&[1, 1]), vec![RingMatrix::from_rows(1, vec![vec![gr("1 - t")]]).unwrap()]).unwrap();
        assert!(two.validate().is_ok());
        let bad = BasedChainComplex::new((), labels(&[1, 1, 1]), vec![qmat(&[&[1]]), qmat(&[&[1]])]).unwrap();
        match bad.validate() {
            Err(ComplexViolation::NonZeroSquare { degrees, source, target, .. }) => {
                assert_eq!(degrees, (2, 0));
                assert_eq!((source.as_str(), target.as_str()), ("x2_0", "x0_0"));
            }
            other => panic!("{other:?}"),
        }
        assert!(BasedChainComplex::new((), labels(&[1, 2]), vec![qmat(&[&[1]])]).is_err());
    }

    #[test]
    fn homology_dimensions() {
        let z = BasedChainComplex::<BigRational>::zero_differentials((), labels(&[1, 1])).unwrap();
        assert_eq!(z.homology_over_field(), vec![1, 1]);
        let iso = BasedChainComplex::new((), labels(&[1, 1]), vec![qmat(&[&[1]])]).unwrap();
        assert_eq!(iso.homology_over_field(), vec![0, 0]);
        assert_eq!(iso.euler_characteristic(), 0);
    }

    #[test]
    fn elementary_cancellation() {
        let b = BasedChainComplex::new((), labels(&[1, 1]), vec![qmat(&[&[1]])]).unwrap();
        let p = BlockPartition::new(vec![vec![Block::D], vec![Block::DPrime]]);
        let (c, w) = collapse(&b, &p).unwrap();
        assert_eq!(c.basis_counts(), vec![0, 0]);
        assert!(w.simple);
    }

    #[test]
    fn deformed_differential_over_rational_functions() {
        // rows (y, c'), columns (x, c): gamma = 1 - t, alpha = t, beta = 1, d_C = 2.
        let ctx = RatFnCtx::new(1, ());
        let t = |e: i64, c: i64| {
            let mut p = LaurentMPoly::zero(1, &());
            p.add_term(vec![e], q(c));
            p
        };
        let one_minus_t = t(0, 1).add(&t(1, -1));
        let d = RingMatrix::from_rows(
            ctx.clone(),
            vec![
                vec![RatFn::from_poly(one_minus_t.clone()), RatFn::from_poly(t(1, 1))],
                vec![RatFn::from_poly(t(0, 1)), RatFn::from_poly(t(0, 2))],
            ],
        )
        .unwrap();
        let b = BasedChainComplex::new(ctx, vec![vec!["y".into(), "c'".into()], vec!["x".into(), "c".into()]], vec![d]).unwrap();
        let p = BlockPartition::new(vec![vec![Block::D, Block::C], vec![Block::DPrime, Block::C]]);
        let (c, w) = collapse(&b, &p).unwrap();
        // 2 - t/(1 - t) = (2 - 3t)/(1 - t)
        let expect = RatFn::new(t(0, 2).add(&t(1, -3)), one_minus_t).unwrap();
        assert_eq!(c.differentials()[0].get(0, 0), &expect);
        assert!(!w.simple);
        assert_eq!(c.basis()[1], vec!["c".to_string()]);
    }

    #[test]
    fn perturbed_witness_is_rejected() {
        let b = BasedChainComplex::new((), labels(&[2, 2]), vec![qmat(&[&[1, 3], &[2, 5]])]).unwrap();
        let p = BlockPartition::new(vec![vec![Block::D, Block::C], vec![Block::DPrime, Block::C]]);
        let (c, mut w) = collapse(&b, &p).unwrap();
        assert!(verify_witness(&b, &c, &w).is_ok());
        let bumped = w.f[0].get(0, 0).add(&q(1));
        w.f[0].set(0, 0, bumped);
        assert!(verify_witness(&b, &c, &w).is_err());
        assert!(verify_witness(&b, &b, &CollapseWitness::identity(&b)).is_ok());
    }

    #[test]
    fn first_row_zero_blocks_are_enforced() {
        let b = BasedChainComplex::new((), labels(&[2, 2]), vec![qmat(&[&[1, 0], &[0, 1]])]).unwrap();
        let p = BlockPartition::new(vec![vec![Block::DPrime, Block::D], vec![Block::DPrime, Block::C]]);
        assert!(matches!(collapse(&b, &p), Err(AlgebraError::Structure(_))));
    }

    #[test]
    fn base_change_examples() {
        let x = BasedChainComplex::new(1, labels(&[1, 1]), vec![RingMatrix::from_rows(1, vec![vec![gr("1 - t^-1")]]).unwrap()]).unwrap();
        let xi = CohomologyClass::from_integers(&[1]);
        match base_change(&x, &RepresentationDescriptor::Scalar { a: q(2), xi: xi.clone() }).unwrap() {
            TowerComplex::Rational(c) => assert_eq!(c.differentials()[0].get(0, 0), &BigRational::new(1.into(), 2.into())),
            other => panic!("{other:?}"),
        }
        match base_change(&x, &RepresentationDescriptor::RationalFnR { xi }).unwrap() {
            TowerComplex::R(c) => {
                let e = c.differentials()[0].get(0, 0);
                assert_eq!(e.to_ratfn().eval(&[q(2)]), Some(BigRational::new(1.into(), 2.into())));
            }
            other => panic!("{other:?}"),
        }
    }
}
