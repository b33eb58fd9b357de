//! Representations of Z[H]: scalar evaluation, monomial substitution into a
//! rational-function field, flat-bundle twists, and the descriptor tying them
//! to base change of complexes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::group_ring::{CohomologyClass, ExponentVector, GroupRingElement};
use crate::matrix::{exact_inverse, RingMatrix};
use crate::mpoly::LaurentMPoly;
use crate::ring::{rational_pow, CoeffField, Fp};
use crate::tower::ratfield::{RatFn, RatFnCtx};

/// Monodromy of a flat bundle: commuting invertible m x m matrices, the images
/// of the basis of H.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyRep {
    dim: usize,
    matrices: Vec<RingMatrix<BigRational>>,
    inverses: Vec<RingMatrix<BigRational>>,
}

impl MonodromyRep {
    pub fn new(dim: usize, matrices: Vec<RingMatrix<BigRational>>) -> Result<Self> {
        if dim == 0 {
            return Err(AlgebraError::Precondition("bundle of dimension 0".into()));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(AlgebraError::Shape(format!("monodromy matrix {i} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
        }
        for i in 0..matrices.len() {
            for j in i + 1..matrices.len() {
                if matrices[i].mul(&matrices[j])? != matrices[j].mul(&matrices[i])? {
                    return Err(AlgebraError::Precondition(format!("monodromy matrices {i} and {j} do not commute")));
                }
            }
        }
        let inverses = matrices
            .iter()
            .enumerate()
            .map(|(i, m)| {
                exact_inverse(m).map_err(|_| AlgebraError::Precondition(format!("monodromy matrix {i} is singular")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonodromyRep { dim, matrices, inverses })
    }

    /// Integer matrices, given row-major.
    pub fn from_integer_matrices(dim: usize, matrices: &[Vec<Vec<i64>>]) -> Result<Self> {
        let ms = matrices
            .iter()
            .map(|rows| {
                RingMatrix::from_rows(
                    (),
                    rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, ms)
    }

    /// Line bundle with the given nonzero monodromy values.
    pub fn line_bundle(values: &[BigRational]) -> Result<Self> {
        let ms = values.iter().map(|v| RingMatrix::from_rows((), vec![vec![v.clone()]])).collect::<Result<Vec<_>>>()?;
        Self::new(1, ms)
    }

    /// Trivial bundle of dimension 1 over a rank-r group.
    pub fn trivial(rank: usize) -> Self {
        Self::line_bundle(&vec![BigRational::one(); rank]).expect("trivial bundle")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[RingMatrix<BigRational>] {
        &self.matrices
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(AlgebraError::Dimension(format!("bundle over rank {} used with rank {rank}", self.rank())));
        }
        Ok(())
    }

    /// E(h) = prod E_i^{h_i}.
    pub fn image(&self, h: &ExponentVector) -> RingMatrix<BigRational> {
        let mut acc = RingMatrix::identity((), self.dim);
        for (i, &k) in h.0.iter().enumerate() {
            let base = if k < 0 { &self.inverses[i] } else { &self.matrices[i] };
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(base).expect("square blocks");
            }
        }
        acc
    }
}

/// Selects a target ring for base change.
#[derive(Clone, Debug, PartialEq)]
pub enum RepresentationDescriptor {
    Novikov { xi: CohomologyClass, cutoff: BigRational },
    RationalFnR { xi: CohomologyClass },
    Scalar { a: BigRational, xi: CohomologyClass },
    RationalField { basis: Vec<CohomologyClass>, characteristic: Option<u64> },
    ScalarWithBundle { a: BigRational, xi: CohomologyClass, bundle: MonodromyRep },
    FieldOfFractionsWithBundle { bundle: MonodromyRep, characteristic: Option<u64> },
}

impl RepresentationDescriptor {
    /// Checks the descriptor's own constraints against the rank of H.
    pub fn validate(&self, rank: usize) -> Result<()> {
        match self {
            RepresentationDescriptor::Novikov { xi, .. } => xi.check_rank(rank),
            RepresentationDescriptor::RationalFnR { xi } => {
                xi.check_rank(rank)?;
                xi.integer_weights().map(|_| ())
            }
            RepresentationDescriptor::Scalar { a, xi } => {
                xi.check_rank(rank)?;
                xi.integer_weights()?;
                nonzero(a)
            }
            RepresentationDescriptor::RationalField { basis, characteristic } => {
                check_char(*characteristic)?;
                for c in basis {
                    c.check_rank(rank)?;
                    c.integer_weights()?;
                }
                Ok(())
            }
            RepresentationDescriptor::ScalarWithBundle { a, xi, bundle } => {
                xi.check_rank(rank)?;
                xi.integer_weights()?;
                bundle.check_rank(rank)?;
                nonzero(a)
            }
            RepresentationDescriptor::FieldOfFractionsWithBundle { bundle, characteristic } => {
                check_char(*characteristic)?;
                bundle.check_rank(rank)
            }
        }
    }

    /// Size of the block replacing each entry.
    pub fn block_size(&self) -> usize {
        match self {
            RepresentationDescriptor::ScalarWithBundle { bundle, .. }
            | RepresentationDescriptor::FieldOfFractionsWithBundle { bundle, .. } => bundle.dim(),
            _ => 1,
        }
    }
}

fn nonzero(a: &BigRational) -> Result<()> {
    if a.is_zero() {
        Err(AlgebraError::Precondition("evaluation at a = 0".into()))
    } else {
        Ok(())
    }
}

fn check_char(c: Option<u64>) -> Result<()> {
    match c {
        Some(p) if !crate::ring::is_supported_prime(p) => {
            Err(AlgebraError::Precondition(format!("characteristic {p} is not a supported prime")))
        }
        _ => Ok(()),
    }
}

/// rho_a: h maps to a^xi(h).
pub fn rho_scalar(p: &GroupRingElement, a: &BigRational, xi: &CohomologyClass) -> Result<BigRational> {
    xi.check_rank(p.rank())?;
    let w = xi.integer_weights()?;
    nonzero(a)?;
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        let k: i64 = e.0.iter().zip(&w).map(|(x, y)| x * y).sum();
        acc += rational_pow(a, k) * BigRational::from_integer(c.clone());
    }
    Ok(acc)
}

/// Coefficient fields for the rational-function representations.
pub trait RepField: CoeffField {
    fn field_ctx(characteristic: Option<u64>) -> Result<Self::Ctx>;
}

impl RepField for BigRational {
    fn field_ctx(characteristic: Option<u64>) -> Result<()> {
        match characteristic {
            None | Some(0) => Ok(()),
            Some(p) => Err(AlgebraError::Precondition(format!("characteristic {p} requested for Q"))),
        }
    }
}

impl RepField for Fp {
    fn field_ctx(characteristic: Option<u64>) -> Result<u64> {
        match characteristic {
            Some(p) if crate::ring::is_supported_prime(p) => Ok(p),
            other => Err(AlgebraError::Precondition(format!("prime field needs a supported prime, got {other:?}"))),
        }
    }
}

fn field_int<F: CoeffField>(c: &BigInt, ctx: &F::Ctx) -> F {
    F::from_int(c, ctx)
}

/// Monomial substitution h -> t_1^{xi_1(h)} ... t_n^{xi_n(h)}.
pub fn rho_rational_field<F: CoeffField>(
    p: &GroupRingElement,
    basis: &[CohomologyClass],
    ctx: &F::Ctx,
) -> Result<RatFn<F>> {
    let ws = basis
        .iter()
        .map(|c| {
            c.check_rank(p.rank())?;
            c.integer_weights()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut poly = LaurentMPoly::zero(basis.len(), ctx);
    for (e, c) in p.terms() {
        let exp = ws.iter().map(|w| e.0.iter().zip(w).map(|(x, y)| x * y).sum()).collect();
        poly.add_term(exp, field_int::<F>(c, ctx));
    }
    Ok(RatFn::from_poly(poly))
}

/// The standard basis classes of H, giving k(H) itself.
pub fn identity_basis(rank: usize) -> Vec<CohomologyClass> {
    (0..rank)
        .map(|i| {
            let mut w = vec![0i64; rank];
            w[i] = 1;
            CohomologyClass::from_integers(&w)
        })
        .collect()
}

/// rho_a tensor rho_E: sum n_h h maps to sum n_h a^xi(h) E(h).
pub fn rho_scalar_bundle(
    p: &GroupRingElement,
    a: &BigRational,
    xi: &CohomologyClass,
    e: &MonodromyRep,
) -> Result<RingMatrix<BigRational>> {
    xi.check_rank(p.rank())?;
    e.check_rank(p.rank())?;
    let w = xi.integer_weights()?;
    nonzero(a)?;
    let mut acc = RingMatrix::zeros((), e.dim(), e.dim());
    for (h, c) in p.terms() {
        let k: i64 = h.0.iter().zip(&w).map(|(x, y)| x * y).sum();
        let s = rational_pow(a, k) * BigRational::from_integer(c.clone());
        acc = acc.add(&e.image(h).scale(&s))?;
    }
    Ok(acc)
}

/// k(H) tensor rho_E: sum n_h h maps to sum n_h t^h E(h) over k(t_1..t_r).
pub fn rho_fraction_bundle<F: CoeffField>(
    p: &GroupRingElement,
    e: &MonodromyRep,
    ctx: &F::Ctx,
) -> Result<RingMatrix<RatFn<F>>> {
    e.check_rank(p.rank())?;
    let r = p.rank();
    let m = e.dim();
    let fctx = RatFnCtx::new(r, ctx.clone());
    let mut polys = vec![LaurentMPoly::<F>::zero(r, ctx); m * m];
    for (h, c) in p.terms() {
        let img = e.image(h);
        let cf = field_int::<F>(c, ctx);
        for i in 0..m {
            for j in 0..m {
                let v = img.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let fv = F::from_rational(v, ctx).ok_or_else(|| {
                    AlgebraError::Representation(format!("monodromy entry {v} has no image in the coefficient field"))
                })?;
                polys[i * m + j].add_term(h.0.clone(), fv.mul(&cf));
            }
        }
    }
    RingMatrix::new(fctx, m, m, polys.into_iter().map(RatFn::from_poly).collect())
}

/// The bundle twist at the trivial line bundle: sum n_h E(h) over k.
pub fn rho_bundle_at_one<F: CoeffField>(p: &GroupRingElement, e: &MonodromyRep, ctx: &F::Ctx) -> Result<RingMatrix<F>> {
    e.check_rank(p.rank())?;
    let m = e.dim();
    let mut acc = RingMatrix::zeros(ctx.clone(), m, m);
    for (h, c) in p.terms() {
        let img = e.image(h);
        let cf = field_int::<F>(c, ctx);
        let block = img.try_map(ctx.clone(), |v| {
            F::from_rational(v, ctx).map(|x| x.mul(&cf)).ok_or_else(|| {
                AlgebraError::Representation(format!("monodromy entry {v} has no image in the coefficient field"))
            })
        })?;
        acc = acc.add(&block)?;
    }
    Ok(acc)
}
