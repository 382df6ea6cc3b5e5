//! Fixture builders for the worked examples, and the regression runner.

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{BlockSystem, CosetAction};
use crate::constructions::{lifts, quotient, restrict, search_cond_c};
use crate::error::Result;
use crate::factorisation::{
    are_isomorphic, is_triple_factorisation_geometric, is_triple_factorisation_movement, oracle_aba, Status,
    TripleFactorisation,
};
use crate::group::PermGroup;
use crate::lattice::SubgroupLattice;
use crate::movement::movement_report;
use crate::perm::Permutation;
use crate::reduction::{is_primitive_triple, reduce_to_primitive};
use crate::wreath::{block_stabiliser_images, embed, wreath_product, WreathGroup};

fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::cycles1(n, cycles)
}

fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
    PermGroup::new(n, gens.iter().map(|c| p(n, c)).collect()).expect("fixture generators")
}

fn triple(g: PermGroup, a: PermGroup, b: PermGroup) -> TripleFactorisation {
    TripleFactorisation::new(g, a, b).expect("fixture subgroups")
}

/// `⟨(1,2,3,4,5)⟩`.
pub fn c5() -> PermGroup {
    grp(5, &[&[&[1, 2, 3, 4, 5]]])
}

/// The Klein group `⟨(1,3)(2,5), (1,2)(3,5)⟩`.
pub fn klein_135() -> PermGroup {
    grp(5, &[&[&[1, 3], &[2, 5]], &[&[1, 2], &[3, 5]]])
}

/// `(A5, ⟨(1,2,3,4,5)⟩, ⟨(1,3)(2,5), (1,2)(3,5)⟩)`, nondegenerate.
pub fn a5_cyclic_klein() -> TripleFactorisation {
    triple(PermGroup::alternating(5), c5(), klein_135())
}

/// `PSL(3,2)` on the seven points of the Fano plane.
pub fn psl32() -> PermGroup {
    let g = grp(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[3, 5], &[6, 7]]]);
    assert_eq!(g.order(), 168, "PSL(3,2) fixture");
    g
}

/// Lines of the Fano plane preserved by [`psl32`], 0-indexed.
pub fn fano_lines() -> Vec<Vec<usize>> {
    [
        [1, 2, 4],
        [1, 3, 7],
        [1, 5, 6],
        [2, 3, 5],
        [2, 6, 7],
        [3, 4, 6],
        [4, 5, 7],
    ]
    .iter()
    .map(|l| l.iter().map(|x| x - 1).collect())
    .collect()
}

/// `(PSL(3,2), line stabiliser, point stabiliser)` for the flag `(1, {1,2,4})`.
pub fn fano_psl32() -> TripleFactorisation {
    let g = psl32();
    let line = &fano_lines()[0];
    let elems = g.elements().expect("168 elements");
    let stab: Vec<&Permutation> = elems
        .iter()
        .filter(|x| {
            let mut img: Vec<usize> = line.iter().map(|&q| x.apply(q)).collect();
            img.sort_unstable();
            img == *line
        })
        .collect();
    let a = PermGroup::generated_by(7, stab);
    let b = g.stabiliser(0);
    triple(g, a, b)
}

/// `(S_n, G_1, ⟨(1,3)⟩)` and `(S_n, G_1, ⟨(2,3)⟩)`; the second is the
/// conjugate of the first by `(1,2)`.
pub fn sn_point_stabiliser_transposition(n: usize) -> (TripleFactorisation, TripleFactorisation) {
    let g = PermGroup::symmetric(n);
    let a = g.stabiliser(0);
    let b = grp(n, &[&[&[1, 3]]]);
    let x = p(n, &[&[1, 2]]);
    let b2 = b.conjugate(&x);
    (triple(g.clone(), a.clone(), b), triple(g, a, b2))
}

/// `B = ⟨(1,2), (3,4,n)⟩` in `S_n`.
pub fn sn_b(n: usize) -> PermGroup {
    grp(n, &[&[&[1, 2]], &[&[3, 4, n]]])
}

/// `(S_n, G_n, B)` and `(S_n, G_n, B^x)` with `x = (1,2,n)`.
pub fn sn_conjugate_pair(n: usize) -> (TripleFactorisation, TripleFactorisation) {
    let g = PermGroup::symmetric(n);
    let a = g.stabiliser(n - 1);
    let b = sn_b(n);
    let x = p(n, &[&[1, 2, n]]);
    let bx = b.conjugate(&x);
    (triple(g.clone(), a.clone(), b), triple(g, a, bx))
}

/// `G = A5 × Sym({6,7})`, `A = ⟨(1,2,3,4,5)⟩ × Sym({6,7})`, `B` the Klein
/// group of `Alt({1,2,3,4})`; returns the triple and the `A5` factor.
pub fn a5xs2_quotient() -> (TripleFactorisation, PermGroup) {
    let n = PermGroup::alternating(5).map_generators(7, |x| x.extend(7));
    let m = p(7, &[&[6, 7]]);
    let mut gens = n.generators().to_vec();
    gens.push(m.clone());
    let g = PermGroup::new(7, gens).unwrap();
    let a = PermGroup::new(7, vec![p(7, &[&[1, 2, 3, 4, 5]]), m]).unwrap();
    let b = grp(7, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
    (triple(g, a, b), n)
}

/// Catalog triples by identifier; `n` selects the member of the `Sₙ`
/// families and `variant` picks the conjugated triple of a pair.
pub fn triple_by_id(id: &str, n: usize, variant: bool) -> Option<TripleFactorisation> {
    let pick = |(t, t2): (TripleFactorisation, TripleFactorisation)| if variant { t2 } else { t };
    match id {
        "a5-cyclic-klein" => Some(a5_cyclic_klein()),
        "fano-psl32" => Some(fano_psl32()),
        "a5xs2-quotient" => Some(a5xs2_quotient().0),
        "sn-point-stabiliser-transposition" if n >= 3 => Some(pick(sn_point_stabiliser_transposition(n))),
        "sn-conjugate-nonisomorphic" | "sn-restrict-alternating" if n >= 5 => Some(pick(sn_conjugate_pair(n))),
        _ => None,
    }
}

/// Named groups for sweeps.
pub fn group_by_name(name: &str) -> Option<PermGroup> {
    match name {
        "s3" => Some(PermGroup::symmetric(3)),
        "s4" => Some(PermGroup::symmetric(4)),
        "a4" => Some(PermGroup::alternating(4)),
        "d8" => Some(PermGroup::dihedral(4)),
        "a5" => Some(PermGroup::alternating(5)),
        "s5" => Some(PermGroup::symmetric(5)),
        "psl32" => Some(psl32()),
        _ => None,
    }
}

/// An imprimitive group with a block system and subgroups `A`, `B`.
pub struct EmbeddingFixture {
    pub name: String,
    pub g: PermGroup,
    pub sigma: BlockSystem,
    pub a: PermGroup,
    pub b: PermGroup,
}

fn natural_fixture(name: &str, g: PermGroup, blocks: Vec<Vec<usize>>, b: PermGroup) -> EmbeddingFixture {
    let sigma = BlockSystem::new(g.degree(), blocks).expect("fixture blocks");
    let a = g.stabiliser(0);
    EmbeddingFixture {
        name: name.to_string(),
        g,
        sigma,
        a,
        b,
    }
}

/// `G` on `[G:K]`, blocks the cosets of `L ≥ K`, `A` the stabiliser of `K`.
fn coset_fixture(name: &str, g: &PermGroup, k: &PermGroup, l: &PermGroup, b: &PermGroup) -> EmbeddingFixture {
    let action = CosetAction::new(g, k).expect("fixture coset action");
    let image = action.image().clone();
    let block = action.orbit_of(l, 0);
    let sigma = BlockSystem::from_block(&image, &block).expect("fixture block");
    EmbeddingFixture {
        name: name.to_string(),
        a: image.stabiliser(0),
        b: action.image_of(b),
        g: image,
        sigma,
    }
}

fn residues(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|r| (r..n).step_by(m).collect()).collect()
}

fn power(g: &PermGroup, k: u64) -> PermGroup {
    PermGroup::new(g.degree(), vec![g.generators()[0].pow(k)]).unwrap()
}

/// `S₃ ≀ S₄` on 12 points, blocks `{3i, 3i+1, 3i+2}`.
pub fn s3_wr_s4() -> WreathGroup {
    wreath_product(&PermGroup::symmetric(3), &PermGroup::symmetric(4)).expect("S3 wr S4")
}

/// `(X ≀ S₂) × (Y ≀ S₂)` inside `G₀ ≀ S₄`.
pub fn split_wreath(w: &WreathGroup, x: &PermGroup, y: &PermGroup) -> PermGroup {
    let top = grp(4, &[&[&[1, 2]], &[&[3, 4]]]);
    w.subgroup(&[x, x, y, y], &top)
}

/// Twenty imprimitive fixtures: cyclic, dihedral, `S₄`/`A₄` coset actions
/// with blocks, and `S₃ ≀ S₄`.
pub fn embedding_fixtures() -> Vec<EmbeddingFixture> {
    let mut out = Vec::new();
    let c = PermGroup::cyclic;
    out.push(natural_fixture("c4-mod2-full", c(4), residues(4, 2), c(4)));
    out.push(natural_fixture("c4-mod2-square", c(4), residues(4, 2), power(&c(4), 2)));
    out.push(natural_fixture("c6-mod3", c(6), residues(6, 3), power(&c(6), 2)));
    out.push(natural_fixture("c6-mod2", c(6), residues(6, 2), power(&c(6), 3)));
    out.push(natural_fixture("c8-mod4", c(8), residues(8, 4), power(&c(8), 2)));
    out.push(natural_fixture("c9-mod3", c(9), residues(9, 3), c(9)));

    let d = PermGroup::dihedral;
    let rot = |n: usize| PermGroup::new(n, vec![p(n, &[&(1..=n).collect::<Vec<_>>()])]).unwrap();
    out.push(natural_fixture("d8-rotation", d(4), residues(4, 2), rot(4)));
    out.push(natural_fixture(
        "d8-reflection",
        d(4),
        residues(4, 2),
        d(4).stabiliser(1),
    ));
    out.push(natural_fixture("d12-mod3", d(6), residues(6, 3), power(&rot(6), 2)));
    let d12 = d(6);
    let b = PermGroup::new(
        6,
        vec![rot(6).generators()[0].pow(3), d12.stabiliser(0).generators()[0].clone()],
    )
    .unwrap();
    out.push(natural_fixture("d12-mod2", d12, residues(6, 2), b));
    out.push(natural_fixture("d16-mod4", d(8), residues(8, 4), rot(8)));
    let d16 = d(8);
    let b = PermGroup::new(
        8,
        vec![rot(8).generators()[0].pow(2), d16.stabiliser(0).generators()[0].clone()],
    )
    .unwrap();
    out.push(natural_fixture("d16-mod2", d16, residues(8, 2), b));

    let s4 = PermGroup::symmetric(4);
    let triv = PermGroup::trivial(4);
    let c2 = grp(4, &[&[&[1, 2]]]);
    let v4 = grp(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
    let v4b = grp(4, &[&[&[1, 2]], &[&[3, 4]]]);
    let d8 = grp(4, &[&[&[1, 2]], &[&[3, 4]], &[&[1, 3], &[2, 4]]]);
    let c3 = grp(4, &[&[&[1, 2, 3]]]);
    let s3 = s4.stabiliser(3);
    let c4 = grp(4, &[&[&[1, 2, 3, 4]]]);
    out.push(coset_fixture("s4-on-12-v4-blocks", &s4, &c2, &v4b, &c4));
    out.push(coset_fixture("s4-regular-v4-blocks", &s4, &triv, &v4, &s3));
    out.push(coset_fixture("s4-on-8-s3-blocks", &s4, &c3, &s3, &d8));
    out.push(coset_fixture("s4-on-pairs-d8-blocks", &s4, &v4b, &d8, &s3));
    let a4 = PermGroup::alternating(4);
    out.push(coset_fixture("a4-regular-v4-blocks", &a4, &triv, &v4, &c3));

    let w = s3_wr_s4();
    let s3n = PermGroup::symmetric(3);
    let c3n = PermGroup::cyclic(3);
    let blocks = w.blocks();
    out.push(natural_fixture(
        "s3wrs4-split",
        w.group().clone(),
        blocks.clone(),
        split_wreath(&w, &s3n, &c3n),
    ));
    out.push(natural_fixture(
        "s3wrs4-c3wrs4",
        w.group().clone(),
        blocks,
        w.wreath_subgroup(&c3n, &PermGroup::symmetric(4)),
    ));
    let w2 = wreath_product(&s3n, &PermGroup::symmetric(2)).unwrap();
    let b = w2.wreath_subgroup(&c3n, &PermGroup::symmetric(2));
    let a = PermGroup::new(6, vec![w2.base_embed(0, &p(3, &[&[1, 2]]))]).unwrap();
    out.push(EmbeddingFixture {
        name: "s3wrs2-small-a".to_string(),
        sigma: BlockSystem::new(6, w2.blocks()).unwrap(),
        g: w2.group().clone(),
        a,
        b,
    });
    out
}

/// One expected-versus-actual comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn check(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        name: name.into(),
        pass: expected == actual,
        expected,
        actual,
    }
}

pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub run: fn() -> Result<Vec<Check>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogResult {
    pub id: String,
    pub description: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "a5-cyclic-klein",
            description: "(A5, <(1,2,3,4,5)>, V4) and its maximal lift",
            run: run_a5,
        },
        CatalogEntry {
            id: "sn-point-stabiliser-transposition",
            description: "(Sn, G_1, <(1,3)>) factorises, its (1,2)-conjugate does not, n = 5..8",
            run: run_sn_transposition,
        },
        CatalogEntry {
            id: "sn-conjugate-nonisomorphic",
            description: "(Sn, G_n, <(1,2),(3,4,n)>) and its (1,2,n)-conjugate, n = 5..8",
            run: run_sn_conjugates,
        },
        CatalogEntry {
            id: "a5xs2-quotient",
            description: "quotient of the A5 x Sym{6,7} triple by A5",
            run: run_quotient,
        },
        CatalogEntry {
            id: "sn-restrict-alternating",
            description: "restriction to An through condition (c), n = 5..7",
            run: run_restrict,
        },
        CatalogEntry {
            id: "fano-psl32",
            description: "PSL(3,2) on the Fano plane meets the order bound",
            run: run_fano,
        },
        CatalogEntry {
            id: "a5-wr-s4-blocks",
            description: "block images (B ∩ G_{Δi})^{Δi} in A5 wr S4 and S3 wr S4",
            run: run_blocks,
        },
        CatalogEntry {
            id: "a5-reduction",
            description: "reduction of the A5 triple to a primitive one",
            run: run_reduction,
        },
    ]
}

pub fn run_entry(e: &CatalogEntry) -> CatalogResult {
    let (checks, error) = match (e.run)() {
        Ok(checks) => (checks, None),
        Err(err) => (Vec::new(), Some(err.to_string())),
    };
    CatalogResult {
        id: e.id.to_string(),
        description: e.description.to_string(),
        pass: error.is_none() && checks.iter().all(|c| c.pass),
        checks,
        error,
    }
}

pub fn run_all() -> Vec<CatalogResult> {
    entries().par_iter().map(run_entry).collect()
}

/// One ordered pair `(A, B)` of subgroups of a swept group, decided three ways.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub a: usize,
    pub b: usize,
    pub status: Status,
    pub geometric: bool,
    pub movement: bool,
    pub oracle: bool,
}

impl SweepRow {
    pub fn agrees(&self) -> bool {
        self.geometric == self.movement && self.movement == self.oracle && self.oracle == self.status.is_factorisation()
    }
}

pub struct Sweep {
    pub lattice: SubgroupLattice,
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    pub fn triple(&self, row: &SweepRow) -> Result<TripleFactorisation> {
        TripleFactorisation::new(
            self.lattice.group().clone(),
            self.lattice.get(row.a).clone(),
            self.lattice.get(row.b).clone(),
        )
    }

    /// Counts in the order NOT, TRIVIAL, DEGENERATE, NONDEGENERATE.
    pub fn counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for r in &self.rows {
            c[r.status as usize] += 1;
        }
        c
    }

    pub fn disagreements(&self) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| !r.agrees()).collect()
    }
}

/// Every ordered pair of subgroups of `g`, classified by the geometric test,
/// the movement test and literal enumeration of `ABA`.
pub fn criteria_sweep(g: &PermGroup, max_products: u128) -> Result<Sweep> {
    let lattice = SubgroupLattice::new(g)?;
    let n = lattice.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let rows = pairs
        .par_iter()
        .map(|&(a, b)| {
            let t = TripleFactorisation::new(g.clone(), lattice.get(a).clone(), lattice.get(b).clone())?;
            let oracle = oracle_aba(&t, max_products)?.len() as u128 == g.order();
            Ok(SweepRow {
                a,
                b,
                status: t.status()?,
                geometric: is_triple_factorisation_geometric(&t)?,
                movement: is_triple_factorisation_movement(&t)?,
                oracle,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep { lattice, rows })
}

fn run_a5() -> Result<Vec<Check>> {
    let t = a5_cyclic_klein();
    let mut out = vec![check("status", Status::Nondegenerate, t.status()?)];
    let lifts = lifts(&t, true, 400)?;
    out.push(check("maximal lifts", 1, lifts.len()));
    if let Some(l) = lifts.first() {
        out.push(check("|C|", 10, l.c.order()));
        out.push(check("|D|", 12, l.d.order()));
        out.push(check("lift status", Status::Degenerate, l.status));
        let lt = TripleFactorisation::new(t.g().clone(), l.c.clone(), l.d.clone())?;
        out.push(check("|CD|", 60, lt.ab_order()));
    }
    Ok(out)
}

fn run_sn_transposition() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 5..=8 {
        let (t, t2) = sn_point_stabiliser_transposition(n);
        out.push(check(format!("n={n} factorises"), true, t.status()?.is_factorisation()));
        out.push(check(
            format!("n={n} conjugate"),
            Status::NotFactorisation,
            t2.status()?,
        ));
    }
    Ok(out)
}

fn run_sn_conjugates() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 5..=8 {
        let (t, t2) = sn_conjugate_pair(n);
        out.push(check(format!("n={n} T"), Status::Nondegenerate, t.status()?));
        out.push(check(format!("n={n} T^x"), Status::Nondegenerate, t2.status()?));
    }
    let (t, t2) = sn_conjugate_pair(5);
    out.push(check("n=5 isomorphic", false, are_isomorphic(&t, &t2, 120)?));
    Ok(out)
}

fn run_quotient() -> Result<Vec<Check>> {
    let (t, n) = a5xs2_quotient();
    let q = quotient(&t, &n)?;
    Ok(vec![
        check("status", Status::Nondegenerate, t.status()?),
        check("|G/N|", 2, q.quotient.g().order()),
        check("quotient status", Status::Trivial, q.quotient.status()?),
    ])
}

fn run_restrict() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 5..=7 {
        let (t, t2) = sn_conjugate_pair(n);
        let an = PermGroup::alternating(n);
        match search_cond_c(&t, &an, 4)? {
            Some((d, r)) => {
                out.push(check(format!("n={n} condition (c)"), true, r.cond_c_holds));
                let sigmas: Vec<String> = d.sigmas.iter().map(|x| x.to_cycle_string()).collect();
                out.push(check(format!("n={n} sigma"), "(1,2)", sigmas.join(",")));
                let taus: Vec<String> = d.b_tau_gens.iter().map(|x| x.to_cycle_string()).collect();
                out.push(check(format!("n={n} tau"), "(1,2)", taus.join(",")));
                out.push(check(format!("n={n} restricts"), true, r.restricts));
            }
            None => out.push(check(format!("n={n} condition (c)"), true, false)),
        }
        let (_, s2) = restrict(&t2, &an)?;
        out.push(check(
            format!("n={n} conjugate restricted"),
            Status::NotFactorisation,
            s2,
        ));
    }
    Ok(out)
}

fn run_fano() -> Result<Vec<Check>> {
    let t = fano_psl32();
    let r = movement_report(&t)?;
    let mut out = vec![
        check("status", Status::Nondegenerate, t.status()?),
        check("(k, m)", "(3, 2)", format!("({}, {})", r.k, r.m)),
        check("bound", 168, r.bound_plane),
        check("equality", true, r.equality_plane),
    ];
    match &r.certificate {
        Some(c) => {
            out.push(check(
                "design",
                "2-(7,3,1)",
                format!("2-({},{},{})", c.v, c.k, c.lambda),
            ));
            out.push(check("flag-transitive", true, c.flag_transitive));
        }
        None => out.push(check("design", "2-(7,3,1)", "none")),
    }
    Ok(out)
}

fn run_blocks() -> Result<Vec<Check>> {
    let a5 = PermGroup::alternating(5);
    let a4 = grp(5, &[&[&[1, 2, 3]], &[&[2, 3, 4]]]);
    let w = wreath_product(&a5, &PermGroup::symmetric(4))?;
    let b = split_wreath(&w, &a5, &a4);
    let sigma = BlockSystem::new(w.degree(), w.blocks())?;
    let orders: Vec<u128> = block_stabiliser_images(&b, &sigma)?.iter().map(|x| x.order()).collect();
    let mut out = vec![
        check("|A5 wr S4|", 311_040_000u128, w.order()),
        check("A5 wr S4 block images", "[60, 60, 12, 12]", format!("{orders:?}")),
    ];
    let s = s3_wr_s4();
    let b = split_wreath(&s, &PermGroup::symmetric(3), &PermGroup::cyclic(3));
    let sigma = BlockSystem::new(12, s.blocks())?;
    let orders: Vec<u128> = block_stabiliser_images(&b, &sigma)?.iter().map(|x| x.order()).collect();
    out.push(check("|S3 wr S4|", 31104, s.order()));
    out.push(check("S3 wr S4 block images", "[6, 6, 3, 3]", format!("{orders:?}")));
    let wc = embed(s.group(), &sigma, &s.group().stabiliser(0), &b)?;
    out.push(check(
        "S3 wr S4 embedding, phi(A) = A^ ∩ phi(G)",
        "Some(true)",
        format!("{:?}", wc.phi_a_check),
    ));
    Ok(out)
}

fn run_reduction() -> Result<Vec<Check>> {
    let t = a5_cyclic_klein();
    let trace = reduce_to_primitive(&t)?;
    let orders: Vec<u128> = trace.chain.iter().map(|h| h.order()).collect();
    Ok(vec![
        check("chain", "[5, 10, 60]", format!("{orders:?}")),
        check("j", 3, trace.j),
        check("output |A|", 10, trace.output.a().order()),
        check("output primitive", true, is_primitive_triple(&trace.output)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_fixtures_embed() {
        let fixtures = embedding_fixtures();
        assert_eq!(fixtures.len(), 20);
        for f in &fixtures {
            let wc = embed(&f.g, &f.sigma, &f.a, &f.b).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert!(!f.sigma.is_trivial(), "{}", f.name);
            let r = wc.verify_embedding(50, 7).unwrap();
            assert!(r.psi_bijective && r.law_holds && r.phi_injective, "{}", f.name);
        }
    }

    #[test]
    fn catalog_passes() {
        for r in run_all() {
            assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }
}
