use tripfact::action::core;
use tripfact::lattice::SubgroupLattice;
use tripfact::reduction::{classify_induced, is_primitive_triple, reduce_to_primitive, reduce_with};
use tripfact::{PermGroup, Status, TripleFactorisation};

fn nondegenerate_core_free(g: &PermGroup) -> (SubgroupLattice, Vec<(usize, usize)>) {
    let lattice = SubgroupLattice::new(g).unwrap();
    let mut out = Vec::new();
    for i in 0..lattice.len() {
        if !core(g, lattice.get(i)).unwrap().is_trivial() {
            continue;
        }
        for j in 0..lattice.len() {
            let t = TripleFactorisation::new(g.clone(), lattice.get(i).clone(), lattice.get(j).clone()).unwrap();
            if t.status().unwrap() == Status::Nondegenerate {
                out.push((i, j));
            }
        }
    }
    (lattice, out)
}

#[test]
fn s4_induced_triples() {
    let g = PermGroup::symmetric(4);
    let (lattice, pairs) = nondegenerate_core_free(&g);
    assert!(!pairs.is_empty());
    let mut checked = 0;
    for &(i, j) in &pairs {
        let t = TripleFactorisation::new(g.clone(), lattice.get(i).clone(), lattice.get(j).clone()).unwrap();
        for h in lattice.overgroups(i) {
            if h == i || h == lattice.top() {
                continue;
            }
            let r = classify_induced(&t, lattice.get(h)).unwrap().report;
            assert!(r.disjunction_holds);
            assert!(r.t0_matches_quotient && r.t1_matches_quotient);
            assert_eq!(r.wreath, Status::Nondegenerate);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn s4_reductions_are_primitive() {
    let g = PermGroup::symmetric(4);
    let (lattice, pairs) = nondegenerate_core_free(&g);
    for &(i, j) in &pairs {
        let t = TripleFactorisation::new(g.clone(), lattice.get(i).clone(), lattice.get(j).clone()).unwrap();
        let trace = reduce_to_primitive(&t).unwrap();
        assert!(is_primitive_triple(&trace.output).unwrap());
        assert_eq!(trace.output.status().unwrap(), Status::Nondegenerate);
        let all = reduce_with(&t, true, 400).unwrap();
        assert!(all.chains_examined.unwrap() >= 1);
    }
}
