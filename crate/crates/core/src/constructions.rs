//! Quotients, lifts, restrictions, and sufficient conditions for restricting
//! to a normal subgroup.

use std::collections::HashSet;

use serde::Serialize;

use crate::action::{kernel_of, CosetAction};
use crate::error::{ceiling, ensure, Error, Result};
use crate::factorisation::{ProductMembership, Status, TripleFactorisation, DEFAULT_MAX_PRODUCTS};
use crate::group::{orbit_under, PermGroup};
use crate::lattice::SubgroupLattice;
use crate::perm::Permutation;

/// A faithful permutation realisation of `G/N`, built from coset actions.
pub struct QuotientMap {
    actions: Vec<CosetAction>,
    degree: usize,
    image: PermGroup,
}

impl QuotientMap {
    /// Combines the coset actions on `[G:H]` for each `H` in turn until the
    /// kernel is exactly `N`. Every `H` must contain `N`; `N` itself is tried
    /// last and always gives a faithful action of `G/N`.
    pub fn new(g: &PermGroup, n: &PermGroup, candidates: &[PermGroup]) -> Result<Self> {
        let mut actions: Vec<CosetAction> = Vec::new();
        let mut tried: Vec<&PermGroup> = Vec::new();
        for h in candidates.iter().chain(std::iter::once(n)) {
            if h.order() == g.order() || tried.iter().any(|t| t.same_as(h)) {
                continue;
            }
            tried.push(h);
            actions.push(CosetAction::new(g, h)?);
            let map = QuotientMap::assemble(g, std::mem::take(&mut actions));
            let kernel = kernel_of(g.degree(), g.generators(), &map.gen_images(g), &map.image);
            if kernel.order() == n.order() {
                return Ok(map);
            }
            actions = map.actions;
        }
        Ok(QuotientMap::assemble(g, actions))
    }

    fn assemble(g: &PermGroup, actions: Vec<CosetAction>) -> Self {
        let degree = actions.iter().map(CosetAction::len).sum::<usize>().max(1);
        let mut map = QuotientMap {
            actions,
            degree,
            image: PermGroup::trivial(degree),
        };
        let images = map.gen_images(g);
        map.image = PermGroup::from_trusted(degree, images);
        map
    }

    fn gen_images(&self, g: &PermGroup) -> Vec<Permutation> {
        g.generators().iter().map(|x| self.map(x)).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Image of an element of `G`.
    pub fn map(&self, x: &Permutation) -> Permutation {
        if self.actions.is_empty() {
            return Permutation::identity(1);
        }
        self.actions
            .iter()
            .map(|a| a.act(x))
            .reduce(|acc, p| acc.disjoint_sum(&p))
            .unwrap()
    }

    pub fn image_of(&self, h: &PermGroup) -> PermGroup {
        h.map_generators(self.degree, |x| self.map(x))
    }

    /// The image of `G`.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }
}

/// `T/N` realised as permutation groups.
pub struct QuotientTriple {
    pub source: TripleFactorisation,
    pub n: PermGroup,
    pub quotient: TripleFactorisation,
    pub map: QuotientMap,
    pub warning: Option<String>,
}

/// The quotient `(G/N, AN/N, BN/N)`.
pub fn quotient(t: &TripleFactorisation, n: &PermGroup) -> Result<QuotientTriple> {
    n.check_subgroup_of(t.g())?;
    n.check_normal_in(t.g())?;
    let an = t.a().join(n);
    let bn = t.b().join(n);
    let map = QuotientMap::new(t.g(), n, &[an.clone(), bn.clone()])?;
    let quotient = TripleFactorisation::new(map.image().clone(), map.image_of(t.a()), map.image_of(t.b()))?;
    ensure(
        quotient.g().order() * n.order() == t.g().order(),
        "|G/N| = |G|/|N|",
        || format!("{} * {} vs {}", quotient.g().order(), n.order(), t.g().order()),
    )?;
    let lift = TripleFactorisation::new(t.g().clone(), an, bn)?;
    let (qs, ls) = (quotient.status()?, lift.status()?);
    ensure(qs == ls, "T/N and the lift (G, AN, BN) have the same status", || {
        format!("quotient {qs}, lift {ls}")
    })?;
    if t.status()?.is_factorisation() {
        ensure(
            qs.is_factorisation(),
            "a quotient of a triple factorisation is one",
            || qs.to_string(),
        )?;
    }
    let warning = n
        .is_trivial()
        .then(|| "N is trivial; the quotient is the triple itself".to_string());
    Ok(QuotientTriple {
        source: t.clone(),
        n: n.clone(),
        quotient,
        map,
        warning,
    })
}

/// The tests relating nondegeneracy of `T` and `T/N`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuotientTests {
    pub source_status: Status,
    pub quotient_status: Status,
    pub n_in_ab: bool,
    /// An element of `N` outside `AB`, when there is one.
    pub n_in_ab_witness: Option<String>,
    pub core_product_contains_n: bool,
    pub delta_misses_some_n_orbit: bool,
    pub quotient_nondegenerate: bool,
}

pub fn quotient_nondegeneracy_tests(t: &TripleFactorisation, n: &PermGroup) -> Result<QuotientTests> {
    let q = quotient(t, n)?;
    let source_status = t.status()?;
    let quotient_status = q.quotient.status()?;
    let quotient_nondegenerate = quotient_status == Status::Nondegenerate;
    let source_nondegenerate = source_status == Status::Nondegenerate;

    let membership = ProductMembership::new(t.g(), t.a(), t.b())?;
    let witness = membership.subgroup_witness(n);
    let n_in_ab = witness.is_none();

    let cores = crate::action::core(t.g(), t.a())?.join(&crate::action::core(t.g(), t.b())?);
    let core_product_contains_n = n.is_subgroup_of(&cores);

    let action = CosetAction::new(t.g(), t.a())?;
    let delta: HashSet<usize> = action.orbit_of(t.b(), 0).into_iter().collect();
    let n_images: Vec<Permutation> = n.generators().iter().map(|x| action.act(x)).collect();
    let delta_misses_some_n_orbit = crate::group::orbits_under(&n_images, action.len())
        .iter()
        .any(|o| o.iter().all(|p| !delta.contains(p)));

    if source_status.is_factorisation() {
        if source_nondegenerate && n_in_ab {
            ensure(
                quotient_nondegenerate,
                "nondegenerate T with N ⊆ AB has nondegenerate T/N",
                || quotient_status.to_string(),
            )?;
        }
        if core_product_contains_n {
            ensure(
                quotient_nondegenerate == source_nondegenerate,
                "N ⊆ core(A)core(B) gives T/N nondegenerate iff T nondegenerate",
                || format!("T {source_status}, T/N {quotient_status}"),
            )?;
        }
        ensure(
            quotient_nondegenerate == delta_misses_some_n_orbit,
            "T/N nondegenerate iff α^B misses some N-orbit",
            || format!("T/N {quotient_status}, misses {delta_misses_some_n_orbit}"),
        )?;
    }
    Ok(QuotientTests {
        source_status,
        quotient_status,
        n_in_ab,
        n_in_ab_witness: witness.map(|w| w.to_cycle_string()),
        core_product_contains_n,
        delta_misses_some_n_orbit,
        quotient_nondegenerate,
    })
}

/// A lift `(G, C, D)` with `A ≤ C` and `B ≤ D`.
#[derive(Clone, Debug)]
pub struct Lift {
    pub c: PermGroup,
    pub d: PermGroup,
    pub status: Status,
}

/// All lifts, or only those with `C` and `D` maximal in `G`.
pub fn lifts(t: &TripleFactorisation, maximal_only: bool, max_order: u128) -> Result<Vec<Lift>> {
    let lattice = SubgroupLattice::with_limit(t.g(), max_order)?;
    let ia = lattice.index_of(t.a()).expect("A is a subgroup");
    let ib = lattice.index_of(t.b()).expect("B is a subgroup");
    let top = lattice.top();
    let pick = |i: usize| -> Vec<usize> {
        lattice
            .overgroups(i)
            .into_iter()
            .filter(|&j| !maximal_only || lattice.is_maximal_in(j, top))
            .collect()
    };
    let factorises = t.status()?.is_factorisation();
    let mut out = Vec::new();
    for c in pick(ia) {
        for d in pick(ib) {
            let lift = TripleFactorisation::new(t.g().clone(), lattice.get(c).clone(), lattice.get(d).clone())?;
            let status = lift.status()?;
            if factorises {
                ensure(
                    status.is_factorisation(),
                    "a lift of a triple factorisation is one",
                    || format!("C = {:?}, D = {:?}", lift.a(), lift.b()),
                )?;
            }
            out.push(Lift {
                c: lift.a().clone(),
                d: lift.b().clone(),
                status,
            });
        }
    }
    Ok(out)
}

/// `T|_H = (H, A∩H, B∩H)`.
#[derive(Clone, Debug)]
pub struct RestrictionData {
    pub source: TripleFactorisation,
    pub h: PermGroup,
    pub restricted: TripleFactorisation,
    /// When `A < H`: whether `H ⊆ AB`, with a witness otherwise.
    pub h_in_ab: Option<bool>,
    pub h_in_ab_witness: Option<String>,
}

pub fn restrict(t: &TripleFactorisation, h: &PermGroup) -> Result<(RestrictionData, Status)> {
    h.check_subgroup_of(t.g())?;
    let restricted = TripleFactorisation::new(h.clone(), t.a().intersection(h)?, t.b().intersection(h)?)?;
    let status = restricted.status()?;
    let a_proper_in_h = t.a().is_subgroup_of(h) && t.a().order() < h.order();
    let (mut h_in_ab, mut h_in_ab_witness) = (None, None);
    if a_proper_in_h {
        let witness = ProductMembership::new(t.g(), t.a(), t.b())?.subgroup_witness(h);
        h_in_ab = Some(witness.is_none());
        h_in_ab_witness = witness.map(|w| w.to_cycle_string());
        if t.status()?.is_factorisation() {
            ensure(status.is_factorisation(), "T restricts to every H > A", || {
                status.to_string()
            })?;
            let b_is_g = t.b().order() == t.g().order();
            ensure(
                (status != Status::Trivial) == !b_is_g,
                "T|_H is nontrivial iff B ≠ G",
                || status.to_string(),
            )?;
            ensure(
                (status == Status::Nondegenerate) == (h_in_ab == Some(false)),
                "T|_H is nondegenerate iff H ⊄ AB",
                || format!("{status}, H ⊆ AB: {h_in_ab:?}"),
            )?;
        }
    }
    Ok((
        RestrictionData {
            source: t.clone(),
            h: h.clone(),
            restricted,
            h_in_ab,
            h_in_ab_witness,
        },
        status,
    ))
}

/// Given `G = ASA`, `H = A(S∩H)A` holds exactly when `A ≤ H`.
pub fn restrict_subset(a: &PermGroup, _s: &HashSet<Permutation>, h: &PermGroup) -> bool {
    a.is_subgroup_of(h)
}

/// Whether `parent = sub · set · sub`, decided by covering the cosets
/// `[parent : sub]` with `sub`-orbits of the cosets `sub·s`.
pub fn double_coset_cover<'a>(
    parent: &PermGroup,
    sub: &PermGroup,
    set: impl IntoIterator<Item = &'a Permutation>,
) -> Result<bool> {
    let action = CosetAction::new(parent, sub)?;
    let images: Vec<Permutation> = sub.generators().iter().map(|x| action.act(x)).collect();
    let mut covered = vec![false; action.len()];
    let mut count = 0;
    for s in set {
        let p = action.coset_of(s);
        if covered[p] {
            continue;
        }
        for q in orbit_under(&images, action.len(), p) {
            if !covered[q] {
                covered[q] = true;
                count += 1;
            }
        }
    }
    Ok(count == action.len())
}

/// Generators `σ_i ∈ A∖A₀` and `τ_j ∈ B∖B₀` relative to a normal subgroup
/// `N` with `G = AN`, where `A₀ = A∩N` and `B₀ = B∩N`.
#[derive(Clone, Debug)]
pub struct SigmaDecomposition {
    pub a0: PermGroup,
    pub sigmas: Vec<Permutation>,
    pub a_sigma: PermGroup,
    pub b0: PermGroup,
    pub b_tau_gens: Vec<Permutation>,
    pub b_tau: PermGroup,
    pub witnesses: SigmaWitnesses,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SigmaWitnesses {
    pub sigmas: Vec<String>,
    pub sigma_normalises_b0: Vec<bool>,
    pub taus: Vec<String>,
}

fn check_an(t: &TripleFactorisation, n: &PermGroup) -> Result<()> {
    n.check_subgroup_of(t.g())?;
    n.check_normal_in(t.g())?;
    let a0 = t.a().intersection(n)?;
    if t.a().order() * n.order() / a0.order() != t.g().order() {
        return Err(Error::precondition("G ≠ AN"));
    }
    Ok(())
}

fn support_key(x: &Permutation) -> (usize, Vec<usize>) {
    let s = x.support();
    (s.len(), s)
}

/// Ordered candidates for `σ`: elements of `A∖A₀`, preferring those that
/// normalise `B₀`, then small support.
fn sigma_candidates(a: &PermGroup, a0: &PermGroup, b0: &PermGroup) -> Result<Vec<Permutation>> {
    let mut c: Vec<Permutation> = a.elements()?.into_iter().filter(|x| !a0.has(x)).collect();
    c.sort_by_cached_key(|x| (!b0.is_normalised_by(x), support_key(x)));
    Ok(c)
}

/// Ordered candidates for `τ`: elements of `B∖B₀`, preferring those in
/// `B₀A`, then small support.
fn tau_candidates(t: &TripleFactorisation, b0: &PermGroup) -> Result<Vec<Permutation>> {
    // x ∈ B₀A iff x⁻¹ ∈ AB₀
    let in_b0a = ProductMembership::new(t.g(), t.a(), b0)?;
    let mut c: Vec<Permutation> = t.b().elements()?.into_iter().filter(|x| !b0.has(x)).collect();
    c.sort_by_cached_key(|x| (!in_b0a.contains(&x.inverse()), support_key(x)));
    Ok(c)
}

fn greedy_generators(base: &PermGroup, target: &PermGroup, candidates: &[Permutation]) -> Vec<Permutation> {
    let mut span = base.clone();
    let mut chosen = Vec::new();
    for x in candidates {
        if span.order() == target.order() {
            break;
        }
        if !span.has(x) {
            chosen.push(x.clone());
            span = span.join(&PermGroup::from_trusted(base.degree(), vec![x.clone()]));
        }
    }
    chosen
}

/// Decomposition with the default choice heuristics.
pub fn sigma_decompose(t: &TripleFactorisation, n: &PermGroup) -> Result<SigmaDecomposition> {
    check_an(t, n)?;
    let a0 = t.a().intersection(n)?;
    let b0 = t.b().intersection(n)?;
    let sigmas = greedy_generators(&a0, t.a(), &sigma_candidates(t.a(), &a0, &b0)?);
    let taus = greedy_generators(&b0, t.b(), &tau_candidates(t, &b0)?);
    sigma_decompose_with(t, n, &sigmas, &taus)
}

/// Decomposition with explicitly chosen `σ`s and `τ`s, validated.
pub fn sigma_decompose_with(
    t: &TripleFactorisation,
    n: &PermGroup,
    sigmas: &[Permutation],
    taus: &[Permutation],
) -> Result<SigmaDecomposition> {
    check_an(t, n)?;
    let a0 = t.a().intersection(n)?;
    let b0 = t.b().intersection(n)?;
    let deg = t.g().degree();
    for s in sigmas {
        if !t.a().has(s) || a0.has(s) {
            return Err(Error::precondition(format!("σ = {s} is not in A∖A₀")));
        }
    }
    for x in taus {
        if !t.b().has(x) || b0.has(x) {
            return Err(Error::precondition(format!("τ = {x} is not in B∖B₀")));
        }
    }
    let a_sigma = PermGroup::from_trusted(deg, sigmas.to_vec());
    let b_tau = PermGroup::from_trusted(deg, taus.to_vec());
    let prod =
        |x: &PermGroup, y: &PermGroup| -> Result<u128> { Ok(x.order() * y.order() / x.intersection(y)?.order()) };
    if prod(&a0, &a_sigma)? != t.a().order() {
        return Err(Error::precondition("the σs together with A₀ do not generate A"));
    }
    if prod(&b0, &b_tau)? != t.b().order() {
        return Err(Error::precondition("the τs together with B₀ do not generate B"));
    }
    ensure(prod(&a_sigma, n)? == t.g().order(), "G = A_σ N", || {
        a_sigma.generator_strings().join("")
    })?;
    let witnesses = SigmaWitnesses {
        sigmas: sigmas.iter().map(Permutation::to_cycle_string).collect(),
        sigma_normalises_b0: sigmas.iter().map(|s| b0.is_normalised_by(s)).collect(),
        taus: taus.iter().map(Permutation::to_cycle_string).collect(),
    };
    Ok(SigmaDecomposition {
        a0,
        sigmas: sigmas.to_vec(),
        a_sigma,
        b0,
        b_tau_gens: taus.to_vec(),
        b_tau,
        witnesses,
    })
}

/// `B_σ A_σ` where `B_σ = ∪_{λ∈A_σ} B^λ`, as an explicit set.
pub fn b_sigma_a_sigma(
    t: &TripleFactorisation,
    d: &SigmaDecomposition,
    max_products: u128,
) -> Result<HashSet<Permutation>> {
    let s = d.a_sigma.order();
    ceiling("|A_σ|²|B| for B_σA_σ", max_products, s * s * t.b().order())?;
    let lambdas = d.a_sigma.elements()?;
    let b = t.b().elements()?;
    let mut b_sigma: HashSet<Permutation> = HashSet::new();
    for l in &lambdas {
        for x in &b {
            b_sigma.insert(x.conjugate_by(l));
        }
    }
    let mut out = HashSet::new();
    for x in &b_sigma {
        for l in &lambdas {
            out.insert(x.compose(l));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RestrictionSufficiency {
    pub cond_a_holds: bool,
    pub cond_b_holds: bool,
    /// An element of `B_σA_σ ∩ N` outside `B₀A₀`.
    pub cond_b_witness: Option<String>,
    pub cond_c_holds: bool,
    pub restricts: bool,
    pub restricted_status: Status,
}

/// Evaluates the sufficient conditions for `T` to restrict to `N`.
pub fn restriction_sufficient(
    t: &TripleFactorisation,
    n: &PermGroup,
    d: &SigmaDecomposition,
) -> Result<RestrictionSufficiency> {
    check_an(t, n)?;
    let s: Vec<Permutation> = b_sigma_a_sigma(t, d, DEFAULT_MAX_PRODUCTS)?
        .into_iter()
        .filter(|x| n.has(x))
        .collect();
    let factorises = t.status()?.is_factorisation();

    let cond_a_holds = double_coset_cover(n, &d.a0, &s)?;
    if factorises {
        ensure(cond_a_holds, "N = A₀(B_σA_σ ∩ N)A₀", || {
            format!("|B_σA_σ ∩ N| = {}", s.len())
        })?;
    }

    // x ∈ B₀A₀ iff x⁻¹ ∈ A₀B₀
    let a0b0 = ProductMembership::new(n, &d.a0, &d.b0)?;
    let mut sorted = s.clone();
    sorted.sort();
    let cond_b_witness = sorted.iter().find(|x| !a0b0.contains(&x.inverse()));
    let cond_b_holds = cond_b_witness.is_none();

    let normalises = d.a_sigma.generators().iter().all(|x| d.b0.is_normalised_by(x));
    let b0a = ProductMembership::new(t.g(), t.a(), &d.b0)?;
    let taus_in_b0a = d.b_tau.elements()?.iter().all(|x| b0a.contains(&x.inverse()));
    let cond_c_holds = normalises && taus_in_b0a;

    let restricted = TripleFactorisation::new(n.clone(), d.a0.clone(), d.b0.clone())?;
    let restricted_status = restricted.status()?;
    let restricts = restricted_status.is_factorisation();
    if factorises {
        if cond_c_holds {
            ensure(cond_b_holds, "condition (c) implies condition (b)", || {
                cond_b_witness.map(|w| w.to_cycle_string()).unwrap_or_default()
            })?;
        }
        if cond_b_holds {
            ensure(restricts, "condition (b) implies T restricts to N", || {
                restricted_status.to_string()
            })?;
        }
    }
    Ok(RestrictionSufficiency {
        cond_a_holds,
        cond_b_holds,
        cond_b_witness: cond_b_witness.map(|w| w.to_cycle_string()),
        cond_c_holds,
        restricts,
        restricted_status,
    })
}

/// Retries generator choices, starting the greedy selection from each of the
/// first `budget` candidates, until condition (c) holds.
pub fn search_cond_c(
    t: &TripleFactorisation,
    n: &PermGroup,
    budget: usize,
) -> Result<Option<(SigmaDecomposition, RestrictionSufficiency)>> {
    check_an(t, n)?;
    let a0 = t.a().intersection(n)?;
    let b0 = t.b().intersection(n)?;
    let sc = sigma_candidates(t.a(), &a0, &b0)?;
    let tc = tau_candidates(t, &b0)?;
    let rotate = |c: &[Permutation], i: usize| -> Vec<Permutation> {
        let mut v = vec![c[i].clone()];
        v.extend(c.iter().filter(|x| **x != c[i]).cloned());
        v
    };
    let si = sc.len().clamp(1, budget.max(1));
    let ti = tc.len().clamp(1, budget.max(1));
    for i in 0..si {
        let sigmas = if sc.is_empty() {
            vec![]
        } else {
            greedy_generators(&a0, t.a(), &rotate(&sc, i))
        };
        for j in 0..ti {
            let taus = if tc.is_empty() {
                vec![]
            } else {
                greedy_generators(&b0, t.b(), &rotate(&tc, j))
            };
            let d = sigma_decompose_with(t, n, &sigmas, &taus)?;
            let r = restriction_sufficient(t, n, &d)?;
            if r.cond_c_holds {
                return Ok(Some((d, r)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::factorisation::product_set;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::cycles1(n, c)
    }

    #[test]
    fn a5xs2_quotient_is_trivial() {
        let (t, n) = catalog::a5xs2_quotient();
        assert_eq!(t.status().unwrap(), Status::Nondegenerate);
        let q = quotient(&t, &n).unwrap();
        assert_eq!(q.quotient.g().order(), 2);
        assert_eq!(q.quotient.a().order(), 2);
        assert!(q.quotient.b().is_trivial());
        assert_eq!(q.quotient.status().unwrap(), Status::Trivial);
        let tests = quotient_nondegeneracy_tests(&t, &n).unwrap();
        assert!(!tests.delta_misses_some_n_orbit);
        assert!(!tests.n_in_ab);
    }

    #[test]
    fn quotient_by_normal_subgroups_of_s4() {
        let s4 = PermGroup::symmetric(4);
        let lat = SubgroupLattice::new(&s4).unwrap();
        let normals: Vec<PermGroup> = lat
            .normal_subgroups()
            .into_iter()
            .map(|i| lat.get(i).clone())
            .filter(|x| !x.is_trivial())
            .collect();
        let mut checked = 0;
        for a in lat.entries() {
            for b in lat.entries() {
                let t = TripleFactorisation::new(s4.clone(), a.group.clone(), b.group.clone()).unwrap();
                if t.status().unwrap() != Status::Nondegenerate {
                    continue;
                }
                for n in &normals {
                    let r = quotient_nondegeneracy_tests(&t, n).unwrap();
                    assert_eq!(r.quotient_nondegenerate, r.delta_misses_some_n_orbit);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn unique_maximal_lift_of_a5_example() {
        let t = catalog::a5_cyclic_klein();
        let l = lifts(&t, true, 400).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].c.order(), 10);
        assert_eq!(l[0].d.order(), 12);
        assert_eq!(l[0].status, Status::Degenerate);
        let all = lifts(&t, false, 400).unwrap();
        assert!(all
            .iter()
            .any(|x| x.c.same_as(t.a()) && x.d.same_as(t.b()) && x.status == Status::Nondegenerate));
    }

    #[test]
    fn restrict_to_a_is_trivial() {
        let t = catalog::a5_cyclic_klein();
        let (r, s) = restrict(&t, t.a()).unwrap();
        assert_eq!(s, Status::Trivial);
        assert!(r.restricted.b().same_as(t.intersection()));
    }

    #[test]
    fn index_two_restriction() {
        for n in 5..=6 {
            let (t, t2) = catalog::sn_conjugate_pair(n);
            let an = PermGroup::alternating(n);
            assert!(restrict(&t, &an).unwrap().1.is_factorisation());
            assert_eq!(restrict(&t2, &an).unwrap().1, Status::NotFactorisation);
        }
    }

    #[test]
    fn restriction_to_overgroups_in_s4() {
        let s4 = PermGroup::symmetric(4);
        let lat = SubgroupLattice::new(&s4).unwrap();
        for ia in 0..lat.len() {
            for ib in 0..lat.len() {
                let t = TripleFactorisation::new(s4.clone(), lat.get(ia).clone(), lat.get(ib).clone()).unwrap();
                if !t.status().unwrap().is_factorisation() {
                    continue;
                }
                for ih in lat.overgroups(ia) {
                    if ih == ia {
                        continue;
                    }
                    let h = lat.get(ih);
                    let (r, status) = restrict(&t, h).unwrap();
                    let ab = product_set(t.a(), t.b(), DEFAULT_MAX_PRODUCTS).unwrap();
                    let inside = h.elements().unwrap().iter().all(|x| ab.contains(x));
                    assert_eq!(r.h_in_ab, Some(inside));
                    assert_eq!(status == Status::Nondegenerate, !inside);
                }
            }
        }
    }

    #[test]
    fn restrict_subset_matches_enumeration() {
        let t = catalog::a5_cyclic_klein();
        let s: HashSet<Permutation> = t.b().element_set().unwrap();
        let lat = SubgroupLattice::new(t.g()).unwrap();
        for i in 0..lat.len() {
            let h = lat.get(i);
            let hs = h.element_set().unwrap();
            let a = t.a().elements().unwrap();
            let mut prod = HashSet::new();
            for x in &a {
                for y in s.iter().filter(|y| hs.contains(y)) {
                    for z in &a {
                        prod.insert(x.compose(y).compose(z));
                    }
                }
            }
            assert_eq!(restrict_subset(t.a(), &s, h), prod == hs);
        }
    }

    #[test]
    fn sigma_decomposition_of_sn_example() {
        for n in 5..=7 {
            let (t, t2) = catalog::sn_conjugate_pair(n);
            let an = PermGroup::alternating(n);
            let d = sigma_decompose(&t, &an).unwrap();
            assert_eq!(d.sigmas, vec![p(n, &[&[1, 2]])]);
            assert_eq!(d.b_tau_gens, vec![p(n, &[&[1, 2]])]);
            assert!(d.b0.same_as(&PermGroup::new(n, vec![p(n, &[&[3, 4, n]])]).unwrap()));
            let r = restriction_sufficient(&t, &an, &d).unwrap();
            assert!(r.cond_a_holds && r.cond_b_holds && r.cond_c_holds && r.restricts);

            let d2 = sigma_decompose(&t2, &an).unwrap();
            let r2 = restriction_sufficient(&t2, &an, &d2).unwrap();
            assert!(r2.cond_a_holds);
            assert!(!r2.cond_b_holds && !r2.cond_c_holds && !r2.restricts);
            assert!(r2.cond_b_witness.is_some());
        }
    }

    #[test]
    fn sigma_decomposition_with_n_equal_g() {
        let t = catalog::a5_cyclic_klein();
        let d = sigma_decompose(&t, t.g()).unwrap();
        assert!(d.a0.same_as(t.a()));
        assert!(d.a_sigma.is_trivial());
    }

    #[test]
    fn cond_a_by_enumeration() {
        let (t, _) = catalog::sn_conjugate_pair(5);
        let an = PermGroup::alternating(5);
        let d = sigma_decompose(&t, &an).unwrap();
        let s: Vec<Permutation> = b_sigma_a_sigma(&t, &d, DEFAULT_MAX_PRODUCTS)
            .unwrap()
            .into_iter()
            .filter(|x| an.has(x))
            .collect();
        let a0 = d.a0.elements().unwrap();
        let mut prod = HashSet::new();
        for x in &a0 {
            for y in &s {
                for z in &a0 {
                    prod.insert(x.compose(y).compose(z));
                }
            }
        }
        assert_eq!(prod.len(), 60);
    }

    #[test]
    fn not_an_rejected() {
        let t = catalog::a5_cyclic_klein();
        assert!(matches!(
            sigma_decompose(&t, &PermGroup::trivial(5)),
            Err(Error::Precondition(_))
        ));
    }
}
