//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

#![allow(clippy::absurd_extreme_comparisons)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;

use tripfact::action::{core, BlockSystem};
use tripfact::catalog::{self, criteria_sweep, embedding_fixtures, Sweep};
use tripfact::lattice::SubgroupLattice;
use tripfact::movement::movement_report;
use tripfact::reduction::{classify_induced, is_primitive_triple, primitivity_report, reduce_to_primitive};
use tripfact::wreath::{
    block_stabiliser_images, embed, verify_embedded_triples, verify_wreath_identities, wreath_product, wreath_triple,
};
use tripfact::{PermGroup, Status, TripleFactorisation};

// Pinned tolerances. Everything else is exact integer or rational arithmetic.
const CATALOG_BUDGET: Duration = Duration::from_secs(60);
const SWEEP_BUDGET: Duration = Duration::from_secs(600);
const MAX_CRITERION_DISAGREEMENTS: usize = 0;
const MAX_BOUND_VIOLATIONS: usize = 0;
const EMBEDDING_SAMPLES: usize = 50;
const EMBEDDING_SEED: u64 = 0;
const MAX_WREATH_ORDER_CHECKED: u128 = 31_104;
const MAX_PRODUCTS: u128 = 10_000_000;

// NOT, TRIVIAL, DEGENERATE, NONDEGENERATE
const SWEEP_COUNTS: &[(&str, [usize; 4])] = &[
    ("s3", [13, 11, 6, 6]),
    ("s4", [561, 59, 118, 162]),
    ("a4", [49, 19, 8, 24]),
    ("d8", [59, 19, 22, 0]),
    ("a5", [2334, 117, 120, 910]),
];

type Outcome = Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn triple(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<TripleFactorisation, String> {
    TripleFactorisation::new(g.clone(), a.clone(), b.clone()).map_err(|e| e.to_string())
}

fn catalog_passes() -> Outcome {
    let start = Instant::now();
    let results = catalog::run_all();
    let elapsed = start.elapsed();
    let failed: Vec<_> = results.iter().filter(|r| !r.pass).map(|r| r.id.clone()).collect();
    check(failed.is_empty(), || format!("failing entries {failed:?}"))?;
    check(elapsed <= CATALOG_BUDGET, || format!("catalog took {elapsed:?}"))?;
    let checks: usize = results.iter().map(|r| r.checks.len()).sum();
    Ok(format!("{} entries, {checks} checks, {:.2?}", results.len(), elapsed))
}

fn sweeps() -> Result<Vec<(&'static str, Sweep)>, String> {
    SWEEP_COUNTS
        .iter()
        .map(|&(name, _)| {
            let g = catalog::group_by_name(name).ok_or("unknown group")?;
            Ok((
                name,
                criteria_sweep(&g, MAX_PRODUCTS).map_err(|e| format!("{name}: {e}"))?,
            ))
        })
        .collect()
}

fn criteria_agree(sweeps: &[(&str, Sweep)], elapsed: Duration) -> Outcome {
    let mut pairs = 0;
    for ((name, sweep), (_, expected)) in sweeps.iter().zip(SWEEP_COUNTS) {
        let bad = sweep.disagreements();
        check(bad.len() <= MAX_CRITERION_DISAGREEMENTS, || {
            format!("{name}: {} disagreements, first {:?}", bad.len(), bad[0])
        })?;
        check(sweep.counts() == *expected, || {
            format!("{name}: counts {:?}, expected {expected:?}", sweep.counts())
        })?;
        for row in &sweep.rows {
            let t = sweep.triple(row).map_err(|e| e.to_string())?;
            let order = t.g().order();
            let trivial = t.a().order() == order || t.b().order() == order;
            let expected = match (trivial, t.ab_order() == order) {
                (true, _) => Status::Trivial,
                (false, true) => Status::Degenerate,
                (false, false) if row.oracle => Status::Nondegenerate,
                _ => Status::NotFactorisation,
            };
            check(row.status == expected, || {
                format!("{name}: {row:?} against |AB| = {}", t.ab_order())
            })?;
        }
        pairs += sweep.rows.len();
    }
    check(elapsed <= SWEEP_BUDGET, || format!("sweeps took {elapsed:?}"))?;
    Ok(format!(
        "{pairs} pairs over S3, S4, A4, D8, A5; geometric = movement = oracle, statuses match |AB|; {elapsed:.2?}"
    ))
}

fn bounds(sweeps: &[(&str, Sweep)]) -> Outcome {
    let mut triples = Vec::new();
    for (_, sweep) in sweeps {
        for row in sweep.rows.iter().filter(|r| r.status == Status::Nondegenerate) {
            triples.push(sweep.triple(row).map_err(|e| e.to_string())?);
        }
    }
    let violations: Vec<String> = triples
        .par_iter()
        .filter_map(|t| {
            let r = match movement_report(t) {
                Ok(r) => r,
                Err(e) => return Some(e.to_string()),
            };
            let order = Ratio::from_integer(r.order_g as i128);
            let omega = Ratio::from_integer(r.omega_b_size as i128);
            let (k, m) = (r.k as i128, r.m as i128);
            let ok = order <= r.bound_general
                && r.bound_general <= Ratio::from_integer(r.bound_plane)
                && omega <= Ratio::new(k * k - m, k - m)
                && r.m >= 1
                && (!r.numeric_equality_general || r.equality_general);
            (!ok).then(|| format!("{t:?}"))
        })
        .collect();
    check(violations.len() <= MAX_BOUND_VIOLATIONS, || {
        format!("{} violations, first {}", violations.len(), violations[0])
    })?;

    let fano = movement_report(&catalog::fano_psl32()).map_err(|e| e.to_string())?;
    check(fano.bound_plane == 168 && fano.order_g == 168, || {
        format!("Fano bound {}", fano.bound_plane)
    })?;
    check(fano.equality_plane && fano.equality_general, || {
        "Fano equality not certified".into()
    })?;
    let cert = fano.certificate.as_ref().ok_or("Fano certificate missing")?;
    check(cert.flag_transitive && cert.is_projective_plane, || format!("{cert:?}"))?;

    let mut others = vec![catalog::a5_cyclic_klein()];
    let (s5, s5c) = catalog::sn_point_stabiliser_transposition(5);
    others.extend([s5, s5c, catalog::a5xs2_quotient().0]);
    others.retain(|t| t.status().unwrap() == Status::Nondegenerate);
    for t in &others {
        let r = movement_report(t).map_err(|e| e.to_string())?;
        check(!r.numeric_equality_plane && !r.equality_plane, || {
            format!("unexpected equality {r:?}")
        })?;
    }
    let a5 = movement_report(&catalog::a5_cyclic_klein()).map_err(|e| e.to_string())?;
    check(a5.bound_plane == 84, || format!("A5 bound {}", a5.bound_plane))?;
    Ok(format!(
        "{} nondegenerate triples within bounds; Fano attains 168 with a certified plane; {} fixtures below",
        triples.len(),
        others.len()
    ))
}

fn embeddings() -> Outcome {
    let fixtures = embedding_fixtures();
    check(fixtures.len() == 20, || format!("{} fixtures", fixtures.len()))?;
    let mut phi_a_checked = 0;
    for f in &fixtures {
        let wc = embed(&f.g, &f.sigma, &f.a, &f.b).map_err(|e| format!("{}: {e}", f.name))?;
        let r = wc
            .verify_embedding(EMBEDDING_SAMPLES, EMBEDDING_SEED)
            .map_err(|e| format!("{}: {e}", f.name))?;
        check(r.psi_bijective && r.law_holds && r.phi_injective, || {
            format!("{}: {r:?}", f.name)
        })?;
        check(r.transversal_in_b != Some(false), || {
            format!("{}: transversal not in B", f.name)
        })?;
        check(wc.phi_a_check != Some(false) && wc.phi_b_check != Some(false), || {
            format!("{}: phi checks", f.name)
        })?;
        if wc.a.same_as(&wc.g.stabiliser(wc.alpha)) {
            check(wc.phi_a_check == Some(true), || format!("{}: phi(A) unchecked", f.name))?;
            phi_a_checked += 1;
        }
    }
    let a5 = PermGroup::alternating(5);
    let a4 = a5.stabiliser(4);
    let w = wreath_product(&a5, &PermGroup::symmetric(4)).map_err(|e| e.to_string())?;
    let b = catalog::split_wreath(&w, &a5, &a4);
    let sigma = BlockSystem::new(w.degree(), w.blocks()).map_err(|e| e.to_string())?;
    let orders: Vec<u128> = block_stabiliser_images(&b, &sigma)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|x| x.order())
        .collect();
    check(orders == [60, 60, 12, 12], || {
        format!("A5 wr S4 block images {orders:?}")
    })?;
    Ok(format!(
        "20 fixtures embed ({phi_a_checked} with phi(A) checked); A5 wr S4 block images {orders:?}"
    ))
}

fn subgroup_pairs(g: &PermGroup) -> Result<Vec<(PermGroup, PermGroup)>, String> {
    let l = SubgroupLattice::new(g).map_err(|e| e.to_string())?;
    let n = l.len();
    Ok((0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (l.get(i).clone(), l.get(j).clone()))
        .collect())
}

fn wreath_checks() -> Outcome {
    let top = PermGroup::symmetric(2);
    let top_pairs = subgroup_pairs(&top)?;
    let mut exhaustive = 0;
    for g0 in [PermGroup::symmetric(2), PermGroup::symmetric(3)] {
        for (a0, b0) in subgroup_pairs(&g0)? {
            for (a1, b1) in &top_pairs {
                let t0 = triple(&g0, &a0, &b0)?;
                let t1 = triple(&top, a1, b1)?;
                let wt = wreath_triple(&t0, &t1).map_err(|e| e.to_string())?;
                let (s0, s1, s) = (t0.status().unwrap(), t1.status().unwrap(), wt.triple.status().unwrap());
                let trivial = (a0.same_as(&g0) && a1.same_as(&top)) || (b0.same_as(&g0) && b1.same_as(&top));
                check((s == Status::Trivial) == trivial, || {
                    format!("triviality rule: {s0} {s1} -> {s}")
                })?;
                if s.is_factorisation() && !trivial {
                    let nd = s0 == Status::Nondegenerate || s1 == Status::Nondegenerate;
                    check((s == Status::Nondegenerate) == nd, || {
                        format!("nondegeneracy rule: {s0} {s1} -> {s}")
                    })?;
                }
                let r = verify_wreath_identities(&wt).map_err(|e| e.to_string())?;
                check(
                    r.product_identity && r.product_identity_enumerated == Some(true),
                    || format!("{r:?}"),
                )?;
                check(r.core_a_identity && r.core_h_of_a_identity, || format!("{r:?}"))?;
                let core_free = core(&g0, &a0).map_err(|e| e.to_string())?.is_trivial();
                check(!core_free || r.core_h_of_a_is_k_hat, || format!("{r:?}"))?;
                check(!r.core_b_identity_applies || r.core_b_identity, || format!("{r:?}"))?;
                exhaustive += 1;
            }
        }
    }

    let mut embedded = 0;
    let mut restrictions = 0;
    let mut hypotheses = 0;
    let mut largest = 0;
    for f in embedding_fixtures() {
        let wc = embed(&f.g, &f.sigma, &f.a, &f.b).map_err(|e| format!("{}: {e}", f.name))?;
        let (t0, t1) = (wc.t0().map_err(|e| e.to_string())?, wc.t1().map_err(|e| e.to_string())?);
        let wt = wreath_triple(&t0, &t1).map_err(|e| format!("{}: {e}", f.name))?;
        if wt.w.order() > MAX_WREATH_ORDER_CHECKED {
            continue;
        }
        let ids = verify_wreath_identities(&wt).map_err(|e| format!("{}: {e}", f.name))?;
        check(ids.product_identity && ids.core_a_identity, || {
            format!("{}: {ids:?}", f.name)
        })?;
        largest = largest.max(wt.w.order());
        let r = verify_embedded_triples(&wc, &wt).map_err(|e| format!("{}: {e}", f.name))?;
        if r.hypotheses_hold {
            hypotheses += 1;
            check(r.part_a_status_match && r.part_b_status_match, || {
                format!("{}: {r:?}", f.name)
            })?;
            check(r.restriction_is_t != Some(false), || format!("{}: restriction", f.name))?;
        }
        if r.restriction_is_t == Some(true) {
            restrictions += 1;
        }
        embedded += 1;
    }
    check(embedded == 20, || {
        format!("only {embedded} fixtures within |W| <= {MAX_WREATH_ORDER_CHECKED}")
    })?;
    check(largest == MAX_WREATH_ORDER_CHECKED, || format!("largest |W| {largest}"))?;

    // induced triples from A < H < G: hypotheses hold whenever T is nondegenerate
    let mut cases = core_free_nondegenerate(&PermGroup::symmetric(4))?
        .into_iter()
        .flat_map(|(t, hs)| hs.into_iter().map(move |h| (t.clone(), h)))
        .collect::<Vec<_>>();
    cases.push((catalog::a5_cyclic_klein(), PermGroup::dihedral(5)));
    let mut part_c = 0;
    for (t, h) in &cases {
        let r = classify_induced(t, h).map_err(|e| e.to_string())?.report.wreath_checks;
        check(r.hypotheses_hold, || format!("{t:?} with H {h:?}"))?;
        check(r.part_a_status_match && r.part_b_status_match, || format!("{r:?}"))?;
        check(
            r.k_hat_is_core_h_of_a && r.n_hat_is_core_w_of_h && r.h_mod_k_order_is_g0,
            || format!("{r:?}"),
        )?;
        check(
            r.part_a_isomorphic != Some(false) && r.part_b_isomorphic != Some(false),
            || format!("{r:?}"),
        )?;
        if let Some(c) = &r.part_c {
            check(c.lift_status == Status::Nondegenerate && c.is_lift, || format!("{c:?}"))?;
            part_c += 1;
        }
        check(r.restriction_is_t != Some(false), || format!("{r:?}"))?;
        if r.restriction_is_t == Some(true) {
            restrictions += 1;
        }
        hypotheses += 1;
    }
    check(hypotheses > 0 && restrictions > 0, || {
        format!("{hypotheses} with hypotheses, {restrictions} restrictions")
    })?;
    Ok(format!(
        "{exhaustive} wreath triples enumerated; {embedded} embedded fixtures up to |W| = {largest}; \
         {hypotheses} nondegenerate core-free embeddings ({part_c} with degenerate T1, {restrictions} restrictions recover T)"
    ))
}

/// Nondegenerate triples of `g` with core-free `A`, each with the proper
/// overgroups `A < H < G`.
fn core_free_nondegenerate(g: &PermGroup) -> Result<Vec<(TripleFactorisation, Vec<PermGroup>)>, String> {
    let lattice = SubgroupLattice::new(g).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for i in 0..lattice.len() {
        if !core(g, lattice.get(i)).map_err(|e| e.to_string())?.is_trivial() {
            continue;
        }
        let hs: Vec<PermGroup> = lattice
            .overgroups(i)
            .into_iter()
            .filter(|&h| h != i && h != lattice.top())
            .map(|h| lattice.get(h).clone())
            .collect();
        for j in 0..lattice.len() {
            let t = triple(g, lattice.get(i), lattice.get(j))?;
            if t.status().unwrap() == Status::Nondegenerate {
                out.push((t, hs.clone()));
            }
        }
    }
    Ok(out)
}

fn reduction() -> Outcome {
    let mut induced = 0;
    let mut reduced = 0;
    let mut candidates = vec![];
    for (t, hs) in core_free_nondegenerate(&PermGroup::symmetric(4))? {
        for h in &hs {
            let r = classify_induced(&t, h).map_err(|e| e.to_string())?.report;
            check(
                r.disjunction_holds && r.t0_matches_quotient && r.t1_matches_quotient,
                || format!("{r:?}"),
            )?;
            induced += 1;
        }
        let trace = reduce_to_primitive(&t).map_err(|e| e.to_string())?;
        check(is_primitive_triple(&trace.output).map_err(|e| e.to_string())?, || {
            format!("{t:?}")
        })?;
        candidates.push(trace.output);
        reduced += 1;
    }

    let t = catalog::a5_cyclic_klein();
    let d10 = PermGroup::dihedral(5);
    let r = classify_induced(&t, &d10).map_err(|e| e.to_string())?.report;
    check(r.disjunction_holds, || format!("A5 with D10: {r:?}"))?;
    induced += 1;
    let trace = reduce_to_primitive(&t).map_err(|e| e.to_string())?;
    check(trace.output.a().order() == 10 && trace.output.g().order() == 60, || {
        "A5 reduction output".into()
    })?;
    check(is_primitive_triple(&trace.output).map_err(|e| e.to_string())?, || {
        "A5 output not primitive".into()
    })?;
    candidates.push(trace.output);

    for c in &candidates {
        let p = primitivity_report(c).map_err(|e| e.to_string())?;
        if p.minimal_normal_in_ab.is_none() {
            return fail("minimal normal cross-check skipped on a primitive candidate");
        }
    }
    Ok(format!(
        "{induced} induced triples satisfy the disjunction; {reduced} S4 reductions and A5 -> (A5, D10, ·) primitive; {} minimal-normal cross-checks",
        candidates.len()
    ))
}

fn run(n: usize, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS criterion {n}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL criterion {n}: {why}");
            false
        }
    }
}

fn main() {
    let mut results = vec![run(1, catalog_passes)];

    let start = Instant::now();
    let swept = catch_unwind(sweeps).unwrap_or_else(|_| Err("sweep panicked".into()));
    let elapsed = start.elapsed();
    match &swept {
        Ok(s) => {
            results.push(run(2, || criteria_agree(s, elapsed)));
            results.push(run(3, || bounds(s)));
        }
        Err(e) => {
            results.push(run(2, || fail(e.clone())));
            results.push(run(3, || fail("no sweep data")));
        }
    }
    results.push(run(4, embeddings));
    results.push(run(5, wreath_checks));
    results.push(run(6, reduction));

    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
