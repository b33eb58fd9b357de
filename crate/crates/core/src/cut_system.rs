//! Cut systems: the combinatorial data of a manifold cut open along r
//! hypersurfaces, the chain complex of the thickened cells P_beta(e), and the
//! cascade of r collapses down to the internal cells.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::complex::{base_change, collapse, BasedChainComplex, Block, BlockPartition, CollapseWitness, TowerComplex};
use crate::error::{AlgebraError, Result};
use crate::group_ring::{CohomologyClass, GroupRingElement};
use crate::matrix::{MatrixInverse, RingMatrix};
use crate::ring::Ring;
use crate::tower::RepresentationDescriptor;

/// A proper cell of the stratified part, lying in `N_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataCell {
    pub label: String,
    pub dim: usize,
    /// Sorted subset of `1..=r`.
    pub alpha: Vec<usize>,
}

/// A cell of the interior coming from a zero of the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalCell {
    pub label: String,
    pub dim: usize,
}

/// `<e : e'>_i` for all listed targets e'.
#[derive(Clone, Debug, PartialEq)]
pub struct Incidence {
    pub cell: String,
    pub i: usize,
    pub targets: Vec<(String, GroupRingElement)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutSystem {
    pub r: usize,
    pub xi: CohomologyClass,
    pub strata_cells: Vec<StrataCell>,
    pub internal_cells: Vec<InternalCell>,
    /// Boundaries in N': cell label to its boundary chain.
    pub boundary: BTreeMap<String, Vec<(String, GroupRingElement)>>,
    pub incidence: Vec<Incidence>,
}

/// The generator `P_beta(e)`; beta is empty for internal cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub cell: String,
    pub beta: Vec<usize>,
}

impl GeneratorId {
    pub fn degree(&self, dim: usize) -> usize {
        dim + self.beta.len()
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.beta.iter().map(ToString::to_string).collect();
        write!(f, "P_{{{}}}({})", b.join(","), self.cell)
    }
}

/// Role of a basis element in the cascade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `P_beta(e)` for a strata cell with smallest index `i(e)`.
    Strata { beta: Vec<usize>, first_index: usize },
    Internal,
}

/// The complex of a cut system together with the generator metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct CutComplex {
    pub r: usize,
    pub xi: CohomologyClass,
    pub complex: BasedChainComplex<GroupRingElement>,
    pub generators: Vec<Vec<GeneratorId>>,
    pub kinds: Vec<Vec<GeneratorKind>>,
    /// Internal-cell counts per degree.
    pub internal_counts: Vec<usize>,
}

fn subsets(alpha: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..1u64 << alpha.len())
        .map(|mask| alpha.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &a)| a).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

impl CutSystem {
    /// Checks indices, labels, closure and negativity of incidences.
    pub fn check(&self) -> Result<()> {
        let rank = self.xi.rank();
        let mut seen = HashMap::new();
        for c in &self.strata_cells {
            if c.alpha.is_empty() || c.alpha.iter().any(|&i| i == 0 || i > self.r) || c.alpha.windows(2).any(|w| w[0] >= w[1]) {
                return Err(AlgebraError::Precondition(format!(
                    "cell {} has multi-index {:?}; expected a nonempty increasing subset of 1..={}",
                    c.label, c.alpha, self.r
                )));
            }
            if seen.insert(c.label.clone(), c.dim).is_some() {
                return Err(AlgebraError::Precondition(format!("duplicate cell label {}", c.label)));
            }
        }
        for c in &self.internal_cells {
            if seen.insert(c.label.clone(), c.dim).is_some() {
                return Err(AlgebraError::Precondition(format!("duplicate cell label {}", c.label)));
            }
        }
        let alpha = self.alpha_map();
        for (cell, terms) in &self.boundary {
            let Some(&dim) = seen.get(cell) else {
                return Err(AlgebraError::Precondition(format!("boundary given for unknown cell {cell}")));
            };
            for (target, coef) in terms {
                let Some(&tdim) = seen.get(target) else {
                    return Err(AlgebraError::Precondition(format!("boundary of {cell} names unknown cell {target}")));
                };
                if tdim + 1 != dim {
                    return Err(AlgebraError::Precondition(format!("boundary of {cell} (dim {dim}) hits {target} (dim {tdim})")));
                }
                if coef.rank() != rank {
                    return Err(AlgebraError::Dimension(format!("coefficient of {target} in the boundary of {cell}")));
                }
                if let Some(a) = alpha.get(cell.as_str()) {
                    let ok = alpha.get(target.as_str()).is_some_and(|b| is_subset(a, b));
                    if !ok {
                        return Err(AlgebraError::Closure(format!(
                            "boundary of {cell} meets {target}, whose multi-index does not contain {a:?}"
                        )));
                    }
                }
            }
        }
        for inc in &self.incidence {
            let Some(a) = alpha.get(inc.cell.as_str()) else {
                return Err(AlgebraError::Precondition(format!("incidence for non-strata cell {}", inc.cell)));
            };
            if !a.contains(&inc.i) {
                return Err(AlgebraError::Precondition(format!("incidence index {} not in the multi-index of {}", inc.i, inc.cell)));
            }
            let reduced: Vec<usize> = a.iter().copied().filter(|&x| x != inc.i).collect();
            for (target, coef) in &inc.targets {
                let Some(&tdim) = seen.get(target) else {
                    return Err(AlgebraError::Precondition(format!("incidence of {} names unknown cell {target}", inc.cell)));
                };
                let tb = alpha.get(target.as_str()).cloned().unwrap_or_default();
                if tdim != seen[&inc.cell] || !is_subset(&reduced, &tb) {
                    return Err(AlgebraError::Closure(format!(
                        "incidence <{} : {target}>_{} needs dimension {} and a multi-index containing {reduced:?}",
                        inc.cell, inc.i, seen[&inc.cell]
                    )));
                }
                if !coef.is_xi_negative(&self.xi)? {
                    return Err(AlgebraError::Precondition(format!(
                        "incidence <{} : {target}>_{} = {coef} is not xi-negative",
                        inc.cell, inc.i
                    )));
                }
            }
        }
        Ok(())
    }

    fn alpha_map(&self) -> HashMap<&str, &[usize]> {
        self.strata_cells.iter().map(|c| (c.label.as_str(), c.alpha.as_slice())).collect()
    }

    /// Total generator count `sum_e 2^|alpha(e)| + |internal cells|`.
    pub fn generator_count(&self) -> usize {
        self.strata_cells.iter().map(|c| 1usize << c.alpha.len()).sum::<usize>() + self.internal_cells.len()
    }
}

/// Assembles the differential on the generators `P_beta(e)` and checks `d^2 = 0`.
pub fn build_complex(cs: &CutSystem) -> Result<CutComplex> {
    cs.check()?;
    let rank = cs.xi.rank();
    let mut dims: HashMap<&str, usize> = HashMap::new();
    let mut generators: Vec<(GeneratorId, usize, GeneratorKind)> = Vec::new();
    for c in &cs.strata_cells {
        dims.insert(&c.label, c.dim);
        for beta in subsets(&c.alpha) {
            let deg = c.dim + beta.len();
            let kind = GeneratorKind::Strata { beta: beta.clone(), first_index: c.alpha[0] };
            generators.push((GeneratorId { cell: c.label.clone(), beta }, deg, kind));
        }
    }
    for c in &cs.internal_cells {
        dims.insert(&c.label, c.dim);
        generators.push((GeneratorId { cell: c.label.clone(), beta: vec![] }, c.dim, GeneratorKind::Internal));
    }
    let top = generators.iter().map(|g| g.1).max().unwrap_or(0);
    let mut by_degree: Vec<Vec<GeneratorId>> = vec![Vec::new(); top + 1];
    let mut kinds: Vec<Vec<GeneratorKind>> = vec![Vec::new(); top + 1];
    let mut position: HashMap<GeneratorId, usize> = HashMap::new();
    for (id, deg, kind) in generators {
        position.insert(id.clone(), by_degree[deg].len());
        by_degree[deg].push(id);
        kinds[deg].push(kind);
    }
    let mut internal_counts = vec![0; top + 1];
    for c in &cs.internal_cells {
        internal_counts[c.dim] += 1;
    }
    let mut incidence: HashMap<(&str, usize), &[(String, GroupRingElement)]> = HashMap::new();
    for inc in &cs.incidence {
        if incidence.insert((inc.cell.as_str(), inc.i), &inc.targets).is_some() {
            return Err(AlgebraError::Precondition(format!("incidence for ({}, {}) given twice", inc.cell, inc.i)));
        }
    }
    let one = GroupRingElement::one(rank);
    let mut differentials = Vec::with_capacity(top);
    for deg in 1..=top {
        let mut d = RingMatrix::<GroupRingElement>::zeros(rank, by_degree[deg - 1].len(), by_degree[deg].len());
        for (col, id) in by_degree[deg].iter().enumerate() {
            let mut add = |target: GeneratorId, coef: GroupRingElement| -> Result<()> {
                let row = *position.get(&target).ok_or_else(|| {
                    AlgebraError::Closure(format!("boundary of {id} needs the missing generator {target}"))
                })?;
                let v = d.get(row, col).add(&coef);
                d.set(row, col, v);
                Ok(())
            };
            for (e, c) in cs.boundary.get(&id.cell).into_iter().flatten() {
                add(GeneratorId { cell: e.clone(), beta: id.beta.clone() }, c.clone())?;
            }
            let dim = dims[id.cell.as_str()];
            for (s0, &i) in id.beta.iter().enumerate() {
                let s = s0 + 1;
                let rest: Vec<usize> = id.beta.iter().copied().filter(|&x| x != i).collect();
                let sign = if (dim + s + 1) % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                let targets = incidence.get(&(id.cell.as_str(), i)).copied().unwrap_or(&[]);
                let self_coef = targets
                    .iter()
                    .filter(|(e, _)| *e == id.cell)
                    .fold(GroupRingElement::zero(rank), |acc, (_, c)| acc.add(c));
                add(GeneratorId { cell: id.cell.clone(), beta: rest.clone() }, one.sub(&self_coef).scaled(&sign))?;
                for (e, c) in targets.iter().filter(|(e, _)| *e != id.cell) {
                    add(GeneratorId { cell: e.clone(), beta: rest.clone() }, c.scaled(&-sign.clone()))?;
                }
            }
        }
        differentials.push(d);
    }
    let basis = by_degree.iter().map(|b| b.iter().map(ToString::to_string).collect()).collect();
    let complex = BasedChainComplex::new(rank, basis, differentials)?;
    if let Err(v) = complex.validate() {
        return Err(AlgebraError::Construction(format!("the assembled differential fails d^2 = 0: {v}")));
    }
    Ok(CutComplex { r: cs.r, xi: cs.xi.clone(), complex, generators: by_degree, kinds, internal_counts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CascadeOptions {
    /// Reject inputs where one of the first r - 1 collapses is not simple.
    pub require_simple: bool,
}

impl Default for CascadeOptions {
    fn default() -> Self {
        CascadeOptions { require_simple: true }
    }
}

/// One collapse of the cascade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeStep {
    pub j: usize,
    pub cancelled_pairs: usize,
    pub simple: bool,
}

/// A cascade over a concrete ring, with every witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Cascade<R: Ring> {
    pub complex: BasedChainComplex<R>,
    pub witnesses: Vec<CollapseWitness<R>>,
    pub steps: Vec<CascadeStep>,
}

/// The cascade after base change along a descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct CascadeOutcome {
    pub base: TowerComplex,
    pub final_complex: TowerComplex,
    pub steps: Vec<CascadeStep>,
    pub internal_counts: Vec<usize>,
}

impl CascadeOutcome {
    /// Simplicity of collapses 1..r-1.
    pub fn simple_flags(&self) -> Vec<bool> {
        let n = self.steps.len().saturating_sub(1);
        self.steps[..n].iter().map(|s| s.simple).collect()
    }
}

fn block_of(kind: &GeneratorKind, r: usize, j: usize) -> Block {
    match kind {
        GeneratorKind::Strata { beta, first_index } => {
            let has = beta.contains(first_index);
            if beta.len() == r + 1 - j && has {
                Block::DPrime
            } else if beta.len() == r - j && !has {
                Block::D
            } else {
                Block::C
            }
        }
        GeneratorKind::Internal => Block::C,
    }
}

/// Checks that each gamma block is a signed identity plus a xi-negative matrix
/// under the pairing `P_beta(e) <-> P_{beta - i(e)}(e)`.
fn check_gamma_shape(cc: &CutComplex) -> Result<()> {
    let d = cc.complex.differentials();
    for j in 1..=cc.r {
        for deg in 1..cc.generators.len() {
            for (col, kind) in cc.kinds[deg].iter().enumerate() {
                if block_of(kind, cc.r, j) != Block::DPrime {
                    continue;
                }
                for (row, rkind) in cc.kinds[deg - 1].iter().enumerate() {
                    if block_of(rkind, cc.r, j) != Block::D {
                        continue;
                    }
                    let (src, dst) = (&cc.generators[deg][col], &cc.generators[deg - 1][row]);
                    let paired = src.cell == dst.cell;
                    let entry = d[deg - 1].get(row, col);
                    let negative_part = if paired {
                        let lead = entry.constant_term();
                        let sign = if lead == BigInt::from(-1) { -1 } else { 1 };
                        entry.sub(&GroupRingElement::constant(entry.rank(), sign))
                    } else {
                        entry.clone()
                    };
                    if !negative_part.is_xi_negative(&cc.xi)? {
                        return Err(AlgebraError::Representation(format!(
                            "gamma entry {entry} from {src} to {dst} at step {j} is not of the form (+-1 on the pairing) + xi-negative"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Runs the r collapses over a ring where the gamma blocks can be inverted.
/// `kinds` must describe the basis of `complex` (fanned out for bundle twists).
pub fn cascade_in<R: MatrixInverse>(
    complex: BasedChainComplex<R>,
    kinds: &[Vec<GeneratorKind>],
    r: usize,
    internal_counts: &[usize],
    opts: CascadeOptions,
) -> Result<Cascade<R>> {
    let mut current = complex;
    let mut kinds: Vec<Vec<GeneratorKind>> = kinds.to_vec();
    let mut witnesses = Vec::with_capacity(r);
    let mut steps = Vec::with_capacity(r);
    for j in 1..=r {
        let labels: Vec<Vec<Block>> = kinds.iter().map(|ks| ks.iter().map(|k| block_of(k, r, j)).collect()).collect();
        let cancelled_pairs = labels.iter().flatten().filter(|b| **b == Block::DPrime).count();
        let (next, w) = collapse(&current, &BlockPartition::new(labels.clone()))?;
        if opts.require_simple && j < r && !w.simple {
            return Err(AlgebraError::InvariantViolation(format!("collapse {j} of {r} is not simple")));
        }
        steps.push(CascadeStep { j, cancelled_pairs, simple: w.simple });
        kinds = kinds
            .iter()
            .zip(&labels)
            .map(|(ks, ls)| ks.iter().zip(ls).filter(|(_, l)| **l == Block::C).map(|(k, _)| k.clone()).collect())
            .collect();
        witnesses.push(w);
        current = next;
    }
    let counts = current.basis_counts();
    let top = counts.len().max(internal_counts.len());
    let pad = |v: &[usize]| (0..top).map(|i| v.get(i).copied().unwrap_or(0)).collect::<Vec<_>>();
    if pad(&counts) != pad(internal_counts) {
        return Err(AlgebraError::InvariantViolation(format!(
            "final generator counts {counts:?} differ from the internal-cell counts {internal_counts:?}"
        )));
    }
    Ok(Cascade { complex: current, witnesses, steps })
}

/// Base-changes the cut complex along `rho` and collapses it to the internal cells.
pub fn cascade_collapse(cc: &CutComplex, rho: &RepresentationDescriptor, opts: CascadeOptions) -> Result<CascadeOutcome> {
    check_gamma_shape(cc)?;
    let base = base_change(&cc.complex, rho)?;
    let m = rho.block_size();
    let kinds: Vec<Vec<GeneratorKind>> =
        cc.kinds.iter().map(|ks| ks.iter().flat_map(|k| std::iter::repeat_n(k.clone(), m)).collect()).collect();
    let counts: Vec<usize> = cc.internal_counts.iter().map(|c| c * m).collect();
    let r = cc.r;
    macro_rules! run {
        ($variant:ident, $c:expr) => {{
            let out = cascade_in($c.clone(), &kinds, r, &counts, opts)?;
            (TowerComplex::$variant(out.complex), out.steps)
        }};
    }
    let (final_complex, steps) = match &base {
        TowerComplex::Novikov(c) => run!(Novikov, c),
        TowerComplex::R(c) => run!(R, c),
        TowerComplex::Rational(c) => run!(Rational, c),
        TowerComplex::RatFnQ(c) => run!(RatFnQ, c),
        TowerComplex::RatFnFp(c) => run!(RatFnFp, c),
    };
    Ok(CascadeOutcome { base, final_complex, steps, internal_counts: cc.internal_counts.clone() })
}

/// Small fixtures used by tests, examples and the CLI.
pub mod fixtures {
    use super::*;

    fn gr(rank: usize, s: &str) -> GroupRingElement {
        GroupRingElement::parse(rank, s).expect("fixture polynomial")
    }

    /// One vertex on one hypersurface with self-incidence t^-1.
    pub fn circle() -> CutSystem {
        CutSystem {
            r: 1,
            xi: CohomologyClass::from_integers(&[1]),
            strata_cells: vec![StrataCell { label: "v".into(), dim: 0, alpha: vec![1] }],
            internal_cells: vec![],
            boundary: BTreeMap::new(),
            incidence: vec![Incidence { cell: "v".into(), i: 1, targets: vec![("v".into(), gr(1, "t^-1"))] }],
        }
    }

    /// Two hypersurfaces meeting in a point p, with loops e1 in N_1 and e2 in N_2.
    pub fn torus() -> CutSystem {
        let inc = |cell: &str, i, s| Incidence { cell: cell.into(), i, targets: vec![(cell.into(), gr(2, s))] };
        CutSystem {
            r: 2,
            xi: CohomologyClass::from_integers(&[1, 1]),
            strata_cells: vec![
                StrataCell { label: "p".into(), dim: 0, alpha: vec![1, 2] },
                StrataCell { label: "e1".into(), dim: 1, alpha: vec![1] },
                StrataCell { label: "e2".into(), dim: 1, alpha: vec![2] },
            ],
            internal_cells: vec![],
            boundary: BTreeMap::new(),
            incidence: vec![inc("p", 1, "t1^-1"), inc("p", 2, "t2^-1"), inc("e1", 1, "t1^-1"), inc("e2", 2, "t2^-1")],
        }
    }

    /// The torus data with the loop e2 attached to p by the boundary
    /// `(t1 - 1) p`. Then `P_{2}(e2)` has a boundary component on `P_{2}(p)`,
    /// which lies in `D_1`, so the first collapse is not simple.
    pub fn torus_with_attached_loop() -> CutSystem {
        let mut cs = torus();
        cs.boundary.insert("e2".into(), vec![("p".into(), gr(2, "t1 - 1"))]);
        cs
    }

    /// A circle with one cancelling pair of zeros of index 0 and 1.
    pub fn circle_with_zeros() -> CutSystem {
        CutSystem {
            r: 1,
            xi: CohomologyClass::from_integers(&[1]),
            strata_cells: vec![StrataCell { label: "v".into(), dim: 0, alpha: vec![1] }],
            internal_cells: vec![InternalCell { label: "a".into(), dim: 0 }, InternalCell { label: "b".into(), dim: 1 }],
            boundary: BTreeMap::from([("b".to_string(), vec![("a".to_string(), gr(1, "1")), ("v".to_string(), gr(1, "-1"))])]),
            incidence: vec![Incidence { cell: "v".into(), i: 1, targets: vec![("a".into(), gr(1, "t^-1"))] }],
        }
    }
}
