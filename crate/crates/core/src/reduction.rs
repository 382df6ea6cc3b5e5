//! Reduction of a nondegenerate triple factorisation to a primitive one.

use std::collections::HashSet;

use serde::Serialize;

use crate::action::{core, is_primitive, BlockSystem, CosetAction};
use crate::constructions::quotient;
use crate::error::{ensure, Error, Result};
use crate::factorisation::{
    are_isomorphic, ProductMembership, Status, TripleFactorisation, TripleReport, DEFAULT_MAX_ISO_ORDER,
};
use crate::group::PermGroup;
use crate::lattice::{SubgroupLattice, DEFAULT_MAX_LATTICE_ORDER};
use crate::perm::Permutation;
use crate::wreath::{embed, verify_embedded_triples, wreath_triple, EmbeddedTripleReport, WreathContext, WreathTriple};

/// `|XY| = |G|`, by order arithmetic.
fn product_is_whole(g: &PermGroup, x: &PermGroup, y: &PermGroup) -> Result<bool> {
    let meet = x.intersection(y)?;
    Ok(x.order() * y.order() == g.order() * meet.order())
}

fn is_maximal(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if h.order() >= g.order() {
        return Ok(false);
    }
    is_primitive(CosetAction::new(g, h)?.image())
}

/// Induced triples `T₀`, `T₁` and `T₀ ≀ T₁` for `A < H < G`.
pub struct InducedTriples {
    pub context: WreathContext,
    pub wreath: WreathTriple,
    pub report: InducedReport,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InducedReport {
    pub t: Status,
    pub t0: Status,
    pub t1: Status,
    pub wreath: Status,
    /// `H ≠ core_H(A)(B∩H)`.
    pub h_not_core_times_b: bool,
    /// `H ⊄ AB`.
    pub h_not_in_ab: bool,
    /// `G ≠ core_G(H)B`.
    pub g_not_core_times_b: bool,
    /// `G ≠ HB`.
    pub g_not_hb: bool,
    /// `T₀` and `T₁` agree with the quotients `T|_H / core_H(A)` and `(G,H,B) / core_G(H)`.
    pub t0_matches_quotient: bool,
    pub t1_matches_quotient: bool,
    /// `(G, A, B̂ ∩ G)` when `T₁` is not nondegenerate.
    pub restricted_lift: Option<Status>,
    /// `T₁` nondegenerate, or `T₀`, `T₀≀T₁` and the restricted lift all nondegenerate.
    pub disjunction_holds: bool,
    pub wreath_checks: EmbeddedTripleReport,
}

fn matches(x: &TripleFactorisation, y: &TripleFactorisation) -> Result<bool> {
    if x.g().order() != y.g().order() || x.a().order() != y.a().order() || x.b().order() != y.b().order() {
        return Ok(false);
    }
    if x.status()? != y.status()? {
        return Ok(false);
    }
    if x.g().order() <= DEFAULT_MAX_ISO_ORDER {
        return are_isomorphic(x, y, DEFAULT_MAX_ISO_ORDER);
    }
    Ok(true)
}

/// Builds `T₀`, `T₁` and `T₀ ≀ T₁` from `A < H < G` through the action on
/// `Ω_A`, and checks their classification against `H` and `B`.
pub fn classify_induced(t: &TripleFactorisation, h: &PermGroup) -> Result<InducedTriples> {
    let (g, a, b) = (t.g(), t.a(), t.b());
    h.check_subgroup_of(g)?;
    if !(a.is_subgroup_of(h) && a.order() < h.order() && h.order() < g.order()) {
        return Err(Error::precondition("need A < H < G"));
    }
    if !core(g, a)?.is_trivial() {
        return Err(Error::precondition("core_G(A) must be trivial"));
    }
    let omega = CosetAction::new(g, a)?;
    let gp = omega.image().clone();
    let ap = gp.stabiliser(0);
    let bp = omega.image_of(b);
    let hp = omega.image_of(h);
    let sigma = BlockSystem::from_block(&gp, &hp.orbit(0))?;
    let wc = embed(&gp, &sigma, &ap, &bp)?;
    let t0 = wc.t0()?;
    let t1 = wc.t1()?;
    let wt = wreath_triple(&t0, &t1)?;

    let status = t.status()?;
    let (s0, s1, sw) = (t0.status()?, t1.status()?, wt.triple.status()?);
    let core_h_a = core(h, a)?;
    let b_cap_h = b.intersection(h)?;
    let h_not_core_times_b = !product_is_whole(h, &core_h_a, &b_cap_h)?;
    let h_not_in_ab = !ProductMembership::new(g, a, b)?.contains_subgroup(h);
    let core_g_h = core(g, h)?;
    let g_not_core_times_b = !product_is_whole(g, &core_g_h, b)?;
    let g_not_hb = !product_is_whole(g, h, b)?;

    let th = TripleFactorisation::new(h.clone(), a.clone(), b_cap_h)?;
    let t0_matches_quotient = matches(&quotient(&th, &core_h_a)?.quotient, &t0)?;
    let lift = TripleFactorisation::new(g.clone(), h.clone(), b.clone())?;
    let t1_matches_quotient = matches(&quotient(&lift, &core_g_h)?.quotient, &t1)?;

    let wreath_checks = verify_embedded_triples(&wc, &wt)?;

    if status.is_factorisation() {
        ensure(s0.is_factorisation(), "T₀ is a triple factorisation", || {
            s0.to_string()
        })?;
        ensure(s1.is_factorisation(), "T₁ is a triple factorisation", || {
            s1.to_string()
        })?;
        ensure(sw.is_factorisation(), "T₀ ≀ T₁ is a triple factorisation", || {
            sw.to_string()
        })?;
        let pairs = [
            (
                "T₀ nontrivial iff H ≠ core_H(A)(B∩H)",
                s0 != Status::Trivial,
                h_not_core_times_b,
            ),
            ("T₀ nondegenerate iff H ⊄ AB", s0 == Status::Nondegenerate, h_not_in_ab),
            (
                "T₁ nontrivial iff G ≠ core_G(H)B",
                s1 != Status::Trivial,
                g_not_core_times_b,
            ),
            ("T₁ nondegenerate iff G ≠ HB", s1 == Status::Nondegenerate, g_not_hb),
            (
                "T₀ ≀ T₁ nontrivial iff H ≠ core_H(A)(B∩H) or G ≠ core_G(H)B",
                sw != Status::Trivial,
                h_not_core_times_b || g_not_core_times_b,
            ),
            (
                "T₀ ≀ T₁ nondegenerate iff H ⊄ AB or G ≠ HB",
                sw == Status::Nondegenerate,
                h_not_in_ab || g_not_hb,
            ),
        ];
        for (what, lhs, rhs) in pairs {
            ensure(lhs == rhs, what, || format!("T₀ {s0}, T₁ {s1}, T₀≀T₁ {sw}"))?;
        }
        ensure(t0_matches_quotient, "T₀ ≅ T|_H / core_H(A)", String::new)?;
        ensure(t1_matches_quotient, "T₁ ≅ (G,H,B) / core_G(H)", String::new)?;
    }
    if status == Status::Nondegenerate {
        ensure(
            sw == Status::Nondegenerate,
            "T nondegenerate gives T₀ ≀ T₁ nondegenerate",
            || sw.to_string(),
        )?;
    }

    let restricted_lift = wreath_checks.part_c.as_ref().map(|c| c.lift_status);
    let disjunction_holds = s1 == Status::Nondegenerate
        || (s0 == Status::Nondegenerate
            && sw == Status::Nondegenerate
            && restricted_lift == Some(Status::Nondegenerate));
    if status == Status::Nondegenerate {
        ensure(
            disjunction_holds,
            "T₁ nondegenerate, or T₀, T₀≀T₁ and (G, A, B̂∩G) nondegenerate",
            || format!("T₀ {s0}, T₁ {s1}, T₀≀T₁ {sw}, lift {restricted_lift:?}"),
        )?;
    }

    let report = InducedReport {
        t: status,
        t0: s0,
        t1: s1,
        wreath: sw,
        h_not_core_times_b,
        h_not_in_ab,
        g_not_core_times_b,
        g_not_hb,
        t0_matches_quotient,
        t1_matches_quotient,
        restricted_lift,
        disjunction_holds,
        wreath_checks,
    };
    Ok(InducedTriples {
        context: wc,
        wreath: wt,
        report,
    })
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    /// `A` is already maximal; the input is primitive.
    AMaximal,
    /// Descent along a maximal chain to `(H, K, BN∩H)` modulo `core_H(K)`.
    ChainDescent,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainLink {
    pub order: u128,
    pub generators: Vec<String>,
    /// Maximal in the next subgroup of the chain.
    pub maximal_in_next: bool,
    /// `|B H_i| = |G|`.
    pub g_eq_b_h: bool,
    /// `|B| |H_i| / |B ∩ H_i|`.
    pub product_order: u128,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub input: TripleFactorisation,
    pub chain: Vec<PermGroup>,
    pub links: Vec<ChainLink>,
    /// 1-based index of `H` in the chain.
    pub j: usize,
    pub selected_h: PermGroup,
    pub selected_k: PermGroup,
    pub output: TripleFactorisation,
    pub branch: Branch,
    /// Number of maximal chains examined, when all chains were requested.
    pub chains_examined: Option<usize>,
    /// Whether every chain gave an isomorphic output.
    pub outputs_isomorphic: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleJson {
    pub report: TripleReport,
    pub degree: usize,
    pub g: Vec<String>,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

impl TripleJson {
    pub fn new(t: &TripleFactorisation) -> Result<Self> {
        Ok(TripleJson {
            report: t.report()?,
            degree: t.g().degree(),
            g: t.g().generator_strings(),
            a: t.a().generator_strings(),
            b: t.b().generator_strings(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionJson {
    pub input: TripleJson,
    pub branch: Branch,
    pub chain: Vec<ChainLink>,
    pub j: usize,
    pub j_minimal_witness: String,
    pub selected_h: Vec<String>,
    pub selected_k: Vec<String>,
    pub output: TripleJson,
    pub output_primitive: PrimitivityReport,
    pub chains_examined: Option<usize>,
    pub outputs_isomorphic: Option<bool>,
}

impl ReductionTrace {
    pub fn to_json(&self) -> Result<ReductionJson> {
        let j = self.j;
        let witness = if j >= 2 {
            let (hj, hk) = (&self.links[j - 1], &self.links[j - 2]);
            format!(
                "|B H_{j}| = {} = |G|, |B H_{}| = {} < |G|",
                hj.product_order,
                j - 1,
                hk.product_order
            )
        } else {
            "A is maximal".to_string()
        };
        Ok(ReductionJson {
            input: TripleJson::new(&self.input)?,
            branch: self.branch,
            chain: self.links.clone(),
            j,
            j_minimal_witness: witness,
            selected_h: self.selected_h.generator_strings(),
            selected_k: self.selected_k.generator_strings(),
            output: TripleJson::new(&self.output)?,
            output_primitive: primitivity_report(&self.output)?,
            chains_examined: self.chains_examined,
            outputs_isomorphic: self.outputs_isomorphic,
        })
    }
}

pub fn reduce_to_primitive(t: &TripleFactorisation) -> Result<ReductionTrace> {
    reduce_with(t, false, DEFAULT_MAX_LATTICE_ORDER)
}

/// With `all_chains`, every maximal chain from `A` to `G` is reduced and the
/// outputs are compared; the trace keeps the first chain.
pub fn reduce_with(t: &TripleFactorisation, all_chains: bool, max_order: u128) -> Result<ReductionTrace> {
    if t.status()? != Status::Nondegenerate {
        return Err(Error::precondition("the triple must be nondegenerate"));
    }
    if !core(t.g(), t.a())?.is_trivial() {
        return Err(Error::precondition("core_G(A) must be trivial"));
    }
    if is_maximal(t.g(), t.a())? {
        let c = core(t.g(), t.b())?;
        ensure(
            c.is_trivial(),
            "A maximal and T nondegenerate give core_G(B) = 1",
            || c.generator_strings().join(""),
        )?;
        let chain = vec![t.a().clone(), t.g().clone()];
        let links = links_of(t, &chain)?;
        let trace = ReductionTrace {
            input: t.clone(),
            chain,
            links,
            j: 2,
            selected_h: t.g().clone(),
            selected_k: t.a().clone(),
            output: t.clone(),
            branch: Branch::AMaximal,
            chains_examined: all_chains.then_some(1),
            outputs_isomorphic: all_chains.then_some(true),
        };
        check_output(&trace)?;
        return Ok(trace);
    }

    let lattice = SubgroupLattice::with_limit(t.g(), max_order)?;
    let ia = lattice.index_of(t.a()).expect("A is a subgroup");
    let top = lattice.top();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    if all_chains {
        let mut stack = vec![vec![ia]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if last == top {
                chains.push(path);
                continue;
            }
            for &next in lattice.maximal_overgroups(last).iter().rev() {
                let mut p = path.clone();
                p.push(next);
                stack.push(p);
            }
        }
    } else {
        let mut path = vec![ia];
        while *path.last().unwrap() != top {
            path.push(lattice.maximal_overgroups(*path.last().unwrap())[0]);
        }
        chains.push(path);
    }

    let mut traces = Vec::new();
    for path in &chains {
        let chain: Vec<PermGroup> = path.iter().map(|&i| lattice.get(i).clone()).collect();
        traces.push(descend(t, chain)?);
    }
    let mut first = traces.remove(0);
    if all_chains {
        first.chains_examined = Some(chains.len());
        let mut same = true;
        for other in &traces {
            if !matches(&first.output, &other.output)? {
                same = false;
            }
        }
        first.outputs_isomorphic = Some(same);
    }
    Ok(first)
}

fn links_of(t: &TripleFactorisation, chain: &[PermGroup]) -> Result<Vec<ChainLink>> {
    let mut links = Vec::with_capacity(chain.len());
    for (i, h) in chain.iter().enumerate() {
        let meet = t.b().intersection(h)?;
        let product_order = t.b().order() * h.order() / meet.order();
        let maximal_in_next = match chain.get(i + 1) {
            Some(next) => is_maximal(next, h)?,
            None => false,
        };
        links.push(ChainLink {
            order: h.order(),
            generators: h.generator_strings(),
            maximal_in_next,
            g_eq_b_h: product_order == t.g().order(),
            product_order,
        });
    }
    Ok(links)
}

fn descend(t: &TripleFactorisation, chain: Vec<PermGroup>) -> Result<ReductionTrace> {
    let links = links_of(t, &chain)?;
    for link in &links[..links.len() - 1] {
        ensure(
            link.maximal_in_next,
            "each chain subgroup is maximal in the next",
            || link.generators.join(""),
        )?;
    }
    let j = links.iter().position(|l| l.g_eq_b_h).expect("H_r = G") + 1;
    ensure(j >= 2, "G ≠ BA", String::new)?;
    let h = chain[j - 1].clone();
    let k = chain[j - 2].clone();
    let n = core(t.g(), &k)?;
    let bn_cap_h = t.b().join(&n).intersection(&h)?;
    let m = core(&h, &k)?;
    let lifted = TripleFactorisation::new(h.clone(), k.clone(), bn_cap_h)?;
    let output = if m.is_trivial() {
        lifted
    } else {
        quotient(&lifted, &m)?.quotient
    };
    let trace = ReductionTrace {
        input: t.clone(),
        chain,
        links,
        j,
        selected_h: h,
        selected_k: k,
        output,
        branch: Branch::ChainDescent,
        chains_examined: None,
        outputs_isomorphic: None,
    };
    check_output(&trace)?;
    Ok(trace)
}

fn check_output(trace: &ReductionTrace) -> Result<()> {
    let r = primitivity_report(&trace.output)?;
    ensure(r.is_primitive, "the reduction output is primitive", || format!("{r:?}"))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PrimitivityReport {
    pub a_maximal: bool,
    pub core_a_trivial: bool,
    pub core_b_trivial: bool,
    pub nondegenerate: bool,
    pub minimal_normal_subgroups: usize,
    /// Some minimal normal subgroup of `G` lies inside the set `AB`; computed
    /// when `A` is maximal and core-free.
    pub minimal_normal_in_ab: Option<bool>,
    pub is_primitive: bool,
}

pub fn is_primitive_triple(t: &TripleFactorisation) -> Result<bool> {
    Ok(primitivity_report(t)?.is_primitive)
}

pub fn primitivity_report(t: &TripleFactorisation) -> Result<PrimitivityReport> {
    let a_maximal = is_maximal(t.g(), t.a())?;
    let core_a_trivial = core(t.g(), t.a())?.is_trivial();
    let core_b_trivial = core(t.g(), t.b())?.is_trivial();
    let nondegenerate = t.status()? == Status::Nondegenerate;
    let (mut count, mut minimal_normal_in_ab) = (0, None);
    if a_maximal && core_a_trivial {
        let mins = minimal_normal_subgroups(t.g())?;
        count = mins.len();
        let pm = ProductMembership::new(t.g(), t.a(), t.b())?;
        let inside = mins.iter().any(|n| pm.contains_subgroup(n));
        ensure(
            nondegenerate != inside,
            "nondegenerate iff AB contains no nontrivial normal subgroup",
            || format!("nondegenerate {nondegenerate}, minimal normal inside AB {inside}"),
        )?;
        minimal_normal_in_ab = Some(inside);
    }
    Ok(PrimitivityReport {
        a_maximal,
        core_a_trivial,
        core_b_trivial,
        nondegenerate,
        minimal_normal_subgroups: count,
        minimal_normal_in_ab,
        is_primitive: a_maximal && core_a_trivial && core_b_trivial && nondegenerate,
    })
}

/// Minimal normal subgroups, as the inclusion-minimal normal closures of
/// elements of prime order (one per conjugacy class).
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let elems = g.elements()?;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut closures: Vec<PermGroup> = Vec::new();
    for x in &elems {
        let o = x.order();
        if o < 2 || (2..o).any(|p| o % p == 0) || seen.contains(x) {
            continue;
        }
        let mut class = vec![x.clone()];
        seen.insert(x.clone());
        let mut i = 0;
        while i < class.len() {
            for s in g.generators() {
                let y = class[i].conjugate_by(s);
                if seen.insert(y.clone()) {
                    class.push(y);
                }
            }
            i += 1;
        }
        let c = PermGroup::new(g.degree(), vec![x.clone()])?.normal_closure_in(g);
        if !closures.iter().any(|d| d.same_as(&c)) {
            closures.push(c);
        }
    }
    let minimal: Vec<PermGroup> = closures
        .iter()
        .filter(|c| !closures.iter().any(|d| d.order() < c.order() && d.is_subgroup_of(c)))
        .cloned()
        .collect();
    Ok(minimal)
}
