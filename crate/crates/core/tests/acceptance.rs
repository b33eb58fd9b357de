mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use novikov_core::complex::{base_change, collapse, verify_witness, BasedChainComplex};
use novikov_core::cut_system::{build_complex, cascade_collapse, fixtures, CascadeOptions};
use novikov_core::dirichlet::{is_algebraic_integer, is_dirichlet_unit, AlgebraicNumber, MinimalPolynomialCandidate};
use novikov_core::group_ring::{CohomologyClass, ExponentVector, GroupRingElement};
use novikov_core::invariants::{
    bundle_homology_dims, check_novikov_inequalities, generic_betti_and_jumps, mapping_torus, novikov_numbers, Verdict,
};
use novikov_core::matrix::{invariant_factors_over_r, neumann_inverse, RingMatrix};
use novikov_core::poly::IntPoly;
use novikov_core::tower::{rho_novikov, MonodromyRep, NovikovCtx, NovikovElement, RepresentationDescriptor};

const COLLAPSE_CASES: u64 = 200;
const COLLAPSE_LIMIT: Duration = Duration::from_secs(10);
const NEUMANN_CASES: u64 = 60;
const NEUMANN_MAX_SIZE: usize = 4;
const NEUMANN_MIN_CUTOFF: i64 = -10;
const NEUMANN_LIMIT: Duration = Duration::from_secs(5);
const UDV_CASES: u64 = 100;
const UDV_LIMIT: Duration = Duration::from_secs(30);
const CIRCLE_LIMIT: Duration = Duration::from_secs(1);
const TORUS_LIMIT: Duration = Duration::from_secs(2);
const MAPPING_TORUS_LIMIT: Duration = Duration::from_secs(1);
const JUMP_CASES: u64 = 50;
const JUMP_OFF_ROOT_SAMPLES: usize = 3;
const JUMP_LIMIT: Duration = Duration::from_secs(20);
const DIRICHLET_BOUND: i64 = 3;
const DIRICHLET_MAX_DEGREE: usize = 3;
const DIRICHLET_LIMIT: Duration = Duration::from_secs(5);
const EULER_LIMIT: Duration = Duration::from_secs(20);
const SUITE_LIMIT: Duration = Duration::from_secs(60);

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xi1() -> CohomologyClass {
    CohomologyClass::from_integers(&[1])
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC011);
    let mut simple = 0;
    for case in 0..COLLAPSE_CASES {
        let (b, p) = random_block_complex(&mut rng);
        ensure(b.validate().is_ok(), || format!("case {case}: input fails d^2 = 0"))?;
        let (c, w) = collapse(&b, &p).map_err(|e| format!("case {case}: {e}"))?;
        verify_witness(&b, &c, &w).map_err(|v| format!("case {case}: witness identity fails: {v:?}"))?;
        ensure(c.validate().is_ok(), || format!("case {case}: collapsed differential fails d^2 = 0"))?;
        simple += w.simple as usize;
    }
    Ok(format!("{COLLAPSE_CASES} collapses certified ({simple} simple)"))
}

fn random_negative<R: Rng>(rng: &mut R, xi: &CohomologyClass, terms: usize) -> GroupRingElement {
    let rank = xi.rank();
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(0..=terms) {
        let mut e: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=1)).collect();
        while xi.weight(&ExponentVector(e.clone())).unwrap() >= BigRational::zero() {
            e[0] -= 1;
        }
        out.push((e, rng.gen_range(-3..=3)));
    }
    element_from(rank, out)
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4E55);
    for case in 0..NEUMANN_CASES {
        let rank = rng.gen_range(1..=2);
        let xi = CohomologyClass::new((0..rank).map(|_| q(rng.gen_range(1..=3), rng.gen_range(1..=2))).collect());
        let n = 1 + (case as usize) % NEUMANN_MAX_SIZE;
        let cutoff = BigRational::from_integer(rng.gen_range(NEUMANN_MIN_CUTOFF..=-1).into());
        let data = (0..n * n).map(|_| random_negative(&mut rng, &xi, 2)).collect();
        let a = RingMatrix::new(rank, n, n, data).unwrap();
        let inv = neumann_inverse(&a, &xi, &cutoff).map_err(|e| format!("case {case}: {e}"))?;
        let ctx = NovikovCtx::new(xi.clone(), cutoff.clone());
        let i_plus_a = RingMatrix::<GroupRingElement>::identity(rank, n)
            .add(&a)
            .unwrap()
            .try_map(ctx.clone(), |p| rho_novikov(p, &xi, &cutoff))
            .unwrap();
        let id = RingMatrix::<NovikovElement>::identity(ctx, n);
        ensure(i_plus_a.mul(&inv).unwrap() == id, || format!("case {case}: (I + A) inv != I"))?;
        ensure(inv.mul(&i_plus_a).unwrap() == id, || format!("case {case}: inv (I + A) != I"))?;
    }
    Ok(format!("{NEUMANN_CASES} inverses two-sided, sizes up to {NEUMANN_MAX_SIZE}, cutoffs down to {NEUMANN_MIN_CUTOFF}"))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0D0F);
    let mut torsion_total = 0;
    for case in 0..UDV_CASES {
        let n = 1 + (case as usize) % 4;
        let c = udv_case(&mut rng, n);
        let profile = invariant_factors_over_r(&c.matrix).map_err(|e| format!("case {case}: {e}"))?;
        let nonzero: Vec<&IntPoly> = c.chain.iter().filter(|p| !p.is_zero()).collect();
        let torsion: Vec<&IntPoly> = nonzero.iter().copied().filter(|p| !oracle_r_unit(p)).collect();
        ensure(profile.rank == nonzero.len(), || format!("case {case}: rank {} vs {}", profile.rank, nonzero.len()))?;
        ensure(profile.unit_count == nonzero.len() - torsion.len(), || format!("case {case}: unit count"))?;
        ensure(profile.torsion_factors.len() == torsion.len(), || format!("case {case}: torsion count"))?;
        for (got, want) in profile.torsion_factors.iter().zip(&torsion) {
            ensure(oracle_r_associated(got, want), || format!("case {case}: {got} not associated to {want}"))?;
        }
        torsion_total += torsion.len();
    }
    Ok(format!("{UDV_CASES} profiles match ({torsion_total} torsion factors)"))
}

fn criterion_4() -> Check {
    let cc = build_complex(&fixtures::circle()).map_err(|e| e.to_string())?;
    ensure(cc.complex.validate().is_ok(), || "d^2 != 0".into())?;
    let reps = [
        RepresentationDescriptor::RationalFnR { xi: xi1() },
        RepresentationDescriptor::Novikov { xi: xi1(), cutoff: BigRational::from_integer((-10).into()) },
    ];
    for rho in &reps {
        let out = cascade_collapse(&cc, rho, CascadeOptions::default()).map_err(|e| e.to_string())?;
        ensure(out.final_complex.basis_counts().iter().all(|&k| k == 0), || {
            format!("cascade over {} left {:?}", out.final_complex.ring_name(), out.final_complex.basis_counts())
        })?;
    }
    let nn = novikov_numbers(&cc.complex).map_err(|e| e.to_string())?;
    ensure(nn.b == [0, 0] && nn.q == Some(vec![0, 0]), || format!("novikov numbers {nn:?}"))?;
    Ok("d^2 = 0, zero complex over R and Novikov(-10), b = q = 0".into())
}

fn criterion_5() -> Check {
    let cs = fixtures::torus();
    let cc = build_complex(&cs).map_err(|e| e.to_string())?;
    let total: usize = cc.complex.basis_counts().iter().sum();
    ensure(total == 8, || format!("{total} generators"))?;
    ensure(cc.complex.validate().is_ok(), || "d^2 != 0".into())?;
    ensure(cc.complex.euler_characteristic() == 0, || "chi != 0".into())?;
    let rho = RepresentationDescriptor::RationalField { basis: vec![], characteristic: None };
    let out = cascade_collapse(&cc, &rho, CascadeOptions::default()).map_err(|e| e.to_string())?;
    ensure(out.simple_flags() == [true], || format!("simple flags {:?}", out.simple_flags()))?;
    ensure(out.final_complex.basis_counts().iter().all(|&k| k == 0), || "nonzero final complex".into())?;
    let direct = base_change(&cc.complex, &rho).map_err(|e| e.to_string())?.homology_over_field().unwrap();
    ensure(direct.iter().all(|&k| k == 0), || format!("direct homology {direct:?}"))?;
    ensure(out.final_complex.homology_over_field() == Some(direct.clone()), || "cascade and direct homology differ".into())?;
    Ok(format!("8 generators, chi = 0, first collapse simple, homology {direct:?}"))
}

fn criterion_6() -> Check {
    let point = BasedChainComplex::<BigInt>::zero_differentials((), vec![vec!["x".into()]]).unwrap();
    let two = RingMatrix::from_rows((), vec![vec![BigInt::from(2)]]).unwrap();
    let torus = mapping_torus(&point, &[two]).map_err(|e| e.to_string())?;
    let d = torus.differentials()[0].get(0, 0).clone();
    ensure(d == gr(1, "1 - 2*t"), || format!("differential {d}"))?;
    // A 1x1 complex over R has torsion in degree 0 exactly when the entry is not a unit.
    let (_, p) = novikov_core::poly::laurent_split(&d);
    let expected_q = vec![usize::from(!oracle_r_unit(&p)), 0];
    let nn = novikov_numbers(&torus).map_err(|e| e.to_string())?;
    ensure(nn.b == [0, 0], || format!("b = {:?}", nn.b))?;
    ensure(nn.q.as_ref() == Some(&expected_q) && expected_q == [1, 0], || format!("q = {:?}", nn.q))?;
    let pass = check_novikov_inequalities(&[1, 1], &nn);
    ensure(pass.iter().all(|v| v.verdict == Verdict::Pass), || "c = (1,1) should pass".into())?;
    let fail = check_novikov_inequalities(&[0, 0], &nn);
    ensure(fail.iter().any(|v| v.verdict == Verdict::Fail), || "c = (0,0) should fail".into())?;
    Ok("1 - 2t, b = (0,0), q = (1,0); c = (1,1) passes, c = (0,0) fails".into())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3A3F);
    let bundles = [MonodromyRep::trivial(1), MonodromyRep::from_integer_matrices(2, &[vec![vec![0, 1], vec![1, 0]]]).unwrap()];
    let (mut roots_checked, mut generic_checked) = (0, 0);
    for case in 0..JUMP_CASES {
        let x = split_complex(case);
        let e = &bundles[case as usize % bundles.len()];
        let report = generic_betti_and_jumps(&x, e, &xi1()).map_err(|err| format!("case {case}: {err}"))?;
        let mut all_roots = BTreeSet::new();
        for (i, p) in report.jump_polynomials.iter().enumerate() {
            let Some(p) = p else { continue };
            for root in p.rational_roots() {
                let dims = bundle_homology_dims(&x, &root, e, &xi1()).map_err(|err| err.to_string())?;
                ensure(dims[i] > report.generic_betti[i], || format!("case {case}: no jump in degree {i} at {root}"))?;
                all_roots.insert(root);
                roots_checked += 1;
            }
        }
        let mut samples = 0;
        while samples < JUMP_OFF_ROOT_SAMPLES {
            let a = q(rng.gen_range(-40..=40), rng.gen_range(1..=17));
            let is_root = report.jump_polynomials.iter().flatten().any(|p| p.eval_rational(&a).is_zero());
            if a.is_zero() || is_root || all_roots.contains(&a) {
                continue;
            }
            let dims = bundle_homology_dims(&x, &a, e, &xi1()).map_err(|err| err.to_string())?;
            ensure(dims == report.generic_betti, || format!("case {case}: {dims:?} at {a} vs generic {:?}", report.generic_betti))?;
            samples += 1;
            generic_checked += 1;
        }
    }
    Ok(format!("{JUMP_CASES} complexes, {roots_checked} strict jumps, {generic_checked} generic points"))
}

fn all_polys(degree: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..=degree {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().filter(|c| c[0] != 0 && c[degree] != 0).collect()
}

fn criterion_8() -> Check {
    let (mut checked, mut skipped) = (0, 0);
    for degree in 1..=DIRICHLET_MAX_DEGREE {
        for c in all_polys(degree, DIRICHLET_BOUND) {
            let Ok(candidate) = MinimalPolynomialCandidate::from_i64(&c, false) else {
                skipped += 1;
                continue;
            };
            let x = AlgebraicNumber::Polynomial(candidate.clone());
            let inv = AlgebraicNumber::Polynomial(candidate.reversed());
            let (lead, constant) = (c[0].abs(), c[degree].abs());
            let unit = is_dirichlet_unit(&x).map_err(|e| e.to_string())?;
            ensure(unit == (lead == 1 && constant == 1), || format!("{c:?}: unit = {unit}"))?;
            ensure(is_algebraic_integer(&x).unwrap() == (lead == 1), || format!("{c:?}: integrality"))?;
            ensure(is_dirichlet_unit(&inv).unwrap() == unit, || format!("{c:?}: reversal symmetry"))?;
            ensure(
                unit == (is_algebraic_integer(&x).unwrap() && is_algebraic_integer(&inv).unwrap()),
                || format!("{c:?}: unit is not integral with integral inverse"),
            )?;
            if degree == 1 {
                let root = AlgebraicNumber::Rational(q(-c[1], c[0]));
                ensure(is_dirichlet_unit(&root).unwrap() == unit, || format!("{c:?}: rational form disagrees"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} irreducible primitive polynomials checked, {skipped} rejected as reducible or non-primitive"))
}

fn euler_descriptors() -> Vec<RepresentationDescriptor> {
    vec![
        RepresentationDescriptor::Novikov { xi: xi1(), cutoff: BigRational::from_integer((-6).into()) },
        RepresentationDescriptor::RationalFnR { xi: xi1() },
        RepresentationDescriptor::Scalar { a: q(3, 2), xi: xi1() },
        RepresentationDescriptor::RationalField { basis: vec![], characteristic: None },
        RepresentationDescriptor::RationalField { basis: vec![], characteristic: Some(7) },
        RepresentationDescriptor::ScalarWithBundle {
            a: q(-2, 5),
            xi: xi1(),
            bundle: MonodromyRep::from_integer_matrices(2, &[vec![vec![0, 1], vec![1, 0]]]).unwrap(),
        },
        RepresentationDescriptor::FieldOfFractionsWithBundle { bundle: MonodromyRep::trivial(1), characteristic: None },
    ]
}

fn chi_checks(x: &BasedChainComplex<GroupRingElement>, what: &str) -> std::result::Result<usize, String> {
    let chi = x.euler_characteristic();
    let mut n = 0;
    for rho in euler_descriptors() {
        let y = base_change(x, &rho).map_err(|e| format!("{what}: {e}"))?;
        ensure(y.euler_characteristic() == chi * rho.block_size() as i64, || format!("{what}: chi changes under {rho:?}"))?;
        n += 1;
    }
    Ok(n)
}

fn criterion_9() -> Check {
    let mut checks = 0;
    let relaxed = CascadeOptions { require_simple: false };
    let cut_systems = [
        fixtures::circle(),
        fixtures::circle_with_zeros(),
        fixtures::torus(),
        fixtures::torus_with_attached_loop(),
    ];
    for cs in &cut_systems {
        let cc = build_complex(cs).map_err(|e| e.to_string())?;
        let pushed = novikov_core::invariants::push_forward(&cc.complex, &cs.xi).map_err(|e| e.to_string())?;
        checks += chi_checks(&pushed, "fixture")?;
        let reps = [
            RepresentationDescriptor::RationalFnR { xi: cs.xi.clone() },
            RepresentationDescriptor::RationalField { basis: vec![], characteristic: None },
            RepresentationDescriptor::Novikov { xi: cs.xi.clone(), cutoff: BigRational::from_integer((-6).into()) },
        ];
        for rho in &reps {
            let out = cascade_collapse(&cc, rho, relaxed).map_err(|e| e.to_string())?;
            let chi = cc.complex.euler_characteristic() * rho.block_size() as i64;
            ensure(out.base.euler_characteristic() == chi, || "chi changes under base change".into())?;
            ensure(out.final_complex.euler_characteristic() == chi, || "chi changes under the cascade".into())?;
            checks += 2;
        }
    }
    for seed in 0..20 {
        checks += chi_checks(&split_complex(seed), "split complex")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xE1E1);
    for case in 0..100 {
        let (b, p) = random_block_complex(&mut rng);
        let (c, _) = collapse(&b, &p).map_err(|e| format!("case {case}: {e}"))?;
        ensure(c.euler_characteristic() == b.euler_characteristic(), || format!("case {case}: chi changes under collapse"))?;
        checks += 1;
    }
    let point = BasedChainComplex::<BigInt>::zero_differentials((), vec![vec!["x".into(), "y".into()]]).unwrap();
    let h = RingMatrix::from_rows((), vec![vec![BigInt::from(2), BigInt::one()], vec![BigInt::one(), BigInt::one()]]).unwrap();
    let torus = mapping_torus(&point, &[h]).map_err(|e| e.to_string())?;
    ensure(torus.euler_characteristic() == 0, || "mapping torus chi != 0".into())?;
    checks += chi_checks(&torus, "mapping torus")?;
    Ok(format!("{checks} Euler characteristic checks"))
}

/// Every source file of the workspace, searched for floating-point types.
fn floating_point_audit() -> std::result::Result<usize, String> {
    let crates = Path::new(env!("CARGO_MANIFEST_DIR")).parent().expect("workspace layout");
    let mut stack = vec![crates.to_path_buf()];
    let mut files = 0;
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
            let path = entry.map_err(|e| e.to_string())?.path();
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            if path.is_dir() {
                if name != "target" && name != "tests" {
                    stack.push(path);
                }
            } else if name.ends_with(".rs") {
                let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                for token in text.split(|c: char| !c.is_alphanumeric() && c != '_') {
                    ensure(token != "f32" && token != "f64", || format!("{} uses {token}", path.display()))?;
                }
                files += 1;
            }
        }
    }
    Ok(files)
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Check);
    let criteria: [Criterion; 9] = [
        ("collapse certificates", COLLAPSE_LIMIT, criterion_1),
        ("Neumann inversion", NEUMANN_LIMIT, criterion_2),
        ("invariant factors over R", UDV_LIMIT, criterion_3),
        ("circle end to end", CIRCLE_LIMIT, criterion_4),
        ("torus end to end", TORUS_LIMIT, criterion_5),
        ("degree-2 mapping torus", MAPPING_TORUS_LIMIT, criterion_6),
        ("jump points", JUMP_LIMIT, criterion_7),
        ("Dirichlet table", DIRICHLET_LIMIT, criterion_8),
        ("Euler characteristic conservation", EULER_LIMIT, criterion_9),
    ];
    let suite = Instant::now();
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!("criterion {:>2} {} {name}: {detail} [{elapsed:.2?} of {limit:?}]", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    let audit = floating_point_audit();
    let elapsed = suite.elapsed();
    let (ok, detail) = match audit {
        Ok(files) if elapsed <= SUITE_LIMIT => (true, format!("{files} source files free of floating point")),
        Ok(_) => (false, "suite over the time limit".to_string()),
        Err(e) => (false, e),
    };
    failures += usize::from(!ok);
    println!(
        "criterion 10 {} suite time and exactness: {detail} [{elapsed:.2?} of {SUITE_LIMIT:?}]",
        if ok { "PASS" } else { "FAIL" }
    );
    if failures == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria fail");
        ExitCode::FAILURE
    }
}
