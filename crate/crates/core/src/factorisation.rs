//! Triple factorisations `G = ABA`: classification, both criteria, a
//! brute-force oracle and isomorphism testing.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::action::CosetAction;
use crate::error::{ceiling, Error, Result};
use crate::group::{orbits_under, PermGroup};
use crate::movement::{set_translates, DEFAULT_MAX_TRANSLATES};
use crate::perm::Permutation;

/// Default ceiling on `|A|²|B|` for the product-set oracle.
pub const DEFAULT_MAX_PRODUCTS: u128 = 10_000_000;

/// Default ceiling on `|G|` for isomorphism search.
pub const DEFAULT_MAX_ISO_ORDER: u128 = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    NotFactorisation,
    Trivial,
    Degenerate,
    Nondegenerate,
}

impl Status {
    pub fn is_factorisation(self) -> bool {
        self != Status::NotFactorisation
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::NotFactorisation => "NOT_FACTORISATION",
            Status::Trivial => "TRIVIAL",
            Status::Degenerate => "DEGENERATE",
            Status::Nondegenerate => "NONDEGENERATE",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `A = G` or `B = G`.
    Trivial,
    /// `|A||B|/|A∩B| = |G|`.
    ProductOrder,
    /// `α^B` meets every `A`-orbit on `Ω_A`.
    Geometric,
    /// `β^A` has restricted movement on `Ω_B`.
    Movement,
    /// Literal enumeration of `ABA`.
    Oracle,
}

/// A triple `(G, A, B)` with `A, B ≤ G`. Immutable; the classification is
/// computed once on first request.
pub struct TripleFactorisation {
    g: PermGroup,
    a: PermGroup,
    b: PermGroup,
    a_cap_b: PermGroup,
    status: OnceLock<(Status, Criterion)>,
}

impl Clone for TripleFactorisation {
    fn clone(&self) -> Self {
        TripleFactorisation {
            g: self.g.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            a_cap_b: self.a_cap_b.clone(),
            status: self.status.clone(),
        }
    }
}

impl fmt::Debug for TripleFactorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TripleFactorisation")
            .field("g", &self.g)
            .field("a", &self.a)
            .field("b", &self.b)
            .finish()
    }
}

impl TripleFactorisation {
    pub fn new(g: PermGroup, a: PermGroup, b: PermGroup) -> Result<Self> {
        a.check_subgroup_of(&g)?;
        b.check_subgroup_of(&g)?;
        let a_cap_b = a.intersection(&b)?;
        Ok(TripleFactorisation {
            g,
            a,
            b,
            a_cap_b,
            status: OnceLock::new(),
        })
    }

    pub fn g(&self) -> &PermGroup {
        &self.g
    }

    pub fn a(&self) -> &PermGroup {
        &self.a
    }

    pub fn b(&self) -> &PermGroup {
        &self.b
    }

    /// `A ∩ B`.
    pub fn intersection(&self) -> &PermGroup {
        &self.a_cap_b
    }

    /// `|AB| = |A||B|/|A∩B|`.
    pub fn ab_order(&self) -> u128 {
        self.a.order() * self.b.order() / self.a_cap_b.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.a.order() == self.g.order() || self.b.order() == self.g.order()
    }

    /// `G = AB`.
    pub fn is_product(&self) -> bool {
        self.ab_order() == self.g.order()
    }

    /// The same triple with `A` and `B` swapped.
    pub fn swapped(&self) -> Result<Self> {
        TripleFactorisation::new(self.g.clone(), self.b.clone(), self.a.clone())
    }

    /// `(G, A^x, B^x)`.
    pub fn conjugate(&self, x: &Permutation) -> Result<Self> {
        TripleFactorisation::new(self.g.conjugate(x), self.a.conjugate(x), self.b.conjugate(x))
    }

    pub fn status(&self) -> Result<Status> {
        Ok(self.status_with_criterion()?.0)
    }

    /// The cached classification and the test that decided it.
    pub fn status_with_criterion(&self) -> Result<(Status, Criterion)> {
        if let Some(s) = self.status.get() {
            return Ok(*s);
        }
        let computed = self.classify_with(Criterion::Geometric)?;
        Ok(*self.status.get_or_init(|| computed))
    }

    /// Classifies using a chosen test for `G = ABA` in the nondegenerate range.
    pub fn classify_with(&self, criterion: Criterion) -> Result<(Status, Criterion)> {
        if self.is_trivial() {
            return Ok((Status::Trivial, Criterion::Trivial));
        }
        if self.is_product() {
            return Ok((Status::Degenerate, Criterion::ProductOrder));
        }
        let holds = match criterion {
            Criterion::Trivial | Criterion::ProductOrder | Criterion::Geometric => geometric_criterion(self)?,
            Criterion::Movement => movement_criterion(self)?,
            Criterion::Oracle => oracle_aba(self, DEFAULT_MAX_PRODUCTS)?.len() as u128 == self.g.order(),
        };
        let status = if holds {
            Status::Nondegenerate
        } else {
            Status::NotFactorisation
        };
        let used = match criterion {
            Criterion::Trivial | Criterion::ProductOrder => Criterion::Geometric,
            c => c,
        };
        Ok((status, used))
    }

    pub fn report(&self) -> Result<TripleReport> {
        let (status, criterion_used) = self.status_with_criterion()?;
        Ok(TripleReport {
            status,
            order_g: self.g.order(),
            order_a: self.a.order(),
            order_b: self.b.order(),
            order_a_cap_b: self.a_cap_b.order(),
            order_ab: self.ab_order(),
            criterion_used,
        })
    }
}

/// JSON summary of a classified triple.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TripleReport {
    pub status: Status,
    #[serde(rename = "|G|")]
    pub order_g: u128,
    #[serde(rename = "|A|")]
    pub order_a: u128,
    #[serde(rename = "|B|")]
    pub order_b: u128,
    #[serde(rename = "|A∩B|")]
    pub order_a_cap_b: u128,
    #[serde(rename = "|AB|")]
    pub order_ab: u128,
    pub criterion_used: Criterion,
}

/// Classification of the triple; equivalent to `t.status()`.
pub fn classify(t: &TripleFactorisation) -> Result<Status> {
    t.status()
}

/// `G = ABA` iff `α^B` meets every `A`-orbit on `Ω_A`, where `α = A`.
pub fn is_triple_factorisation_geometric(t: &TripleFactorisation) -> Result<bool> {
    if t.is_trivial() {
        return Ok(true);
    }
    geometric_criterion(t)
}

fn geometric_criterion(t: &TripleFactorisation) -> Result<bool> {
    let action = CosetAction::new(&t.g, &t.a)?;
    let delta: HashSet<usize> = action.orbit_of(&t.b, 0).into_iter().collect();
    let a_gens: Vec<Permutation> = t.a.generators().iter().map(|x| action.act(x)).collect();
    Ok(orbits_under(&a_gens, action.len())
        .iter()
        .all(|orbit| orbit.iter().any(|p| delta.contains(p))))
}

/// `G = ABA` iff every translate of `Γ = β^A` in `Ω_B` meets `Γ`.
pub fn is_triple_factorisation_movement(t: &TripleFactorisation) -> Result<bool> {
    if t.is_trivial() {
        return Ok(true);
    }
    movement_criterion(t)
}

fn movement_criterion(t: &TripleFactorisation) -> Result<bool> {
    let action = CosetAction::new(&t.g, &t.b)?;
    let gamma = action.orbit_of(&t.a, 0);
    let translates = set_translates(action.generator_images(), &gamma, DEFAULT_MAX_TRANSLATES)?;
    let base: HashSet<usize> = translates[0].iter().copied().collect();
    Ok(translates.iter().all(|x| x.iter().any(|p| base.contains(p))))
}

/// Membership in the product set `AB` without materialising it:
/// `x ∈ AB` iff the coset `Ax` lies in the `B`-orbit of `A` on `Ω_A`.
pub struct ProductMembership {
    action: CosetAction,
    in_orbit: Vec<bool>,
}

impl ProductMembership {
    pub fn new(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<Self> {
        let action = CosetAction::new(g, a)?;
        let mut in_orbit = vec![false; action.len()];
        for p in action.orbit_of(b, 0) {
            in_orbit[p] = true;
        }
        Ok(ProductMembership { action, in_orbit })
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.in_orbit[self.action.coset_of(x)]
    }

    /// An element of `h` outside `AB`, or `None` if `h ⊆ AB`.
    pub fn subgroup_witness(&self, h: &PermGroup) -> Option<Permutation> {
        let images: Vec<Permutation> = h.generators().iter().map(|x| self.action.act(x)).collect();
        let mut reached: HashMap<usize, Permutation> = HashMap::new();
        reached.insert(0, h.identity());
        let mut queue = vec![0usize];
        while let Some(p) = queue.pop() {
            let x = reached[&p].clone();
            for (gen, img) in h.generators().iter().zip(&images) {
                let q = img.apply(p);
                if let std::collections::hash_map::Entry::Vacant(e) = reached.entry(q) {
                    let y = x.compose(gen);
                    if !self.in_orbit[q] {
                        return Some(y);
                    }
                    e.insert(y);
                    queue.push(q);
                }
            }
        }
        None
    }

    pub fn contains_subgroup(&self, h: &PermGroup) -> bool {
        self.subgroup_witness(h).is_none()
    }
}

/// The literal product set `ABA`.
pub fn oracle_aba(t: &TripleFactorisation, max_products: u128) -> Result<HashSet<Permutation>> {
    let (a, b) = (t.a.order(), t.b.order());
    ceiling("|A|²|B| for product enumeration", max_products, a * a * b)?;
    let a_elems = t.a.elements()?;
    let b_elems = t.b.elements()?;
    let mut ab: HashSet<Permutation> = HashSet::new();
    for x in &a_elems {
        for y in &b_elems {
            ab.insert(x.compose(y));
        }
    }
    let mut aba: HashSet<Permutation> = HashSet::new();
    let full = t.g.order() as usize;
    for z in &ab {
        for x in &a_elems {
            aba.insert(z.compose(x));
        }
        if aba.len() == full {
            break;
        }
    }
    Ok(aba)
}

/// The product set `AB` of two subgroups.
pub fn product_set(a: &PermGroup, b: &PermGroup, max_products: u128) -> Result<HashSet<Permutation>> {
    ceiling("|A||B| for product enumeration", max_products, a.order() * b.order())?;
    let b_elems = b.elements()?;
    let mut out = HashSet::new();
    for x in a.elements()? {
        for y in &b_elems {
            out.insert(x.compose(y));
        }
    }
    Ok(out)
}

/// For `G` 2-transitive and `A = G_α`: returns `(is_tf, nondegenerate)`,
/// where `is_tf` iff `B` moves `α` and `nondegenerate` iff `B` is moreover
/// intransitive. Cross-checked against [`classify`].
pub fn is_2transitive_factorisation(g: &PermGroup, alpha: usize, b: &PermGroup) -> Result<(bool, bool)> {
    if !g.is_two_transitive() {
        return Err(Error::NotTwoTransitive);
    }
    if alpha >= g.degree() {
        return Err(Error::precondition(format!(
            "point {} is outside the domain",
            alpha + 1
        )));
    }
    let is_tf = b.generators().iter().any(|x| x.apply(alpha) != alpha);
    let nondegenerate = is_tf && !b.is_transitive();
    let t = TripleFactorisation::new(g.clone(), g.stabiliser(alpha), b.clone())?;
    let status = t.status()?;
    if status.is_factorisation() != is_tf || (status == Status::Nondegenerate) != nondegenerate {
        return Err(Error::assertion(
            "2-transitive criterion agrees with classification",
            format!("criterion ({is_tf}, {nondegenerate}), classification {status}"),
        ));
    }
    Ok((is_tf, nondegenerate))
}

/// Whether some isomorphism `G1 → G2` carries `A1` onto `A2` and `B1` onto `B2`.
pub fn are_isomorphic(t1: &TripleFactorisation, t2: &TripleFactorisation, max_order: u128) -> Result<bool> {
    let order = t1.g.order();
    ceiling("group order for isomorphism search", max_order, order.max(t2.g.order()))?;
    if order != t2.g.order()
        || t1.a.order() != t2.a.order()
        || t1.b.order() != t2.b.order()
        || t1.a_cap_b.order() != t2.a_cap_b.order()
    {
        return Ok(false);
    }
    IsoSearch::new(t1, t2)?.run()
}

struct IsoSearch<'a> {
    t1: &'a TripleFactorisation,
    t2: &'a TripleFactorisation,
    gens: Vec<Permutation>,
    candidates: Vec<Vec<Permutation>>,
}

impl<'a> IsoSearch<'a> {
    fn new(t1: &'a TripleFactorisation, t2: &'a TripleFactorisation) -> Result<Self> {
        // generators of A1, then B1, then G1, each only if not already generated
        let mut gens: Vec<Permutation> = Vec::new();
        let mut pools: Vec<&PermGroup> = Vec::new();
        let mut span = PermGroup::trivial(t1.g.degree());
        for (source, pool) in [(&t1.a, &t2.a), (&t1.b, &t2.b), (&t1.g, &t2.g)] {
            for x in source.generators() {
                if !span.has(x) {
                    gens.push(x.clone());
                    pools.push(pool);
                    span = PermGroup::from_trusted(span.degree(), gens.clone());
                }
            }
        }
        let mut cache: HashMap<*const PermGroup, Vec<Permutation>> = HashMap::new();
        let mut candidates = Vec::with_capacity(gens.len());
        for (x, pool) in gens.iter().zip(&pools) {
            let elems = match cache.get(&(*pool as *const _)) {
                Some(e) => e.clone(),
                None => {
                    let e = pool.elements()?;
                    cache.insert(*pool as *const _, e.clone());
                    e
                }
            };
            let ord = x.order();
            let mut c: Vec<Permutation> = elems.into_iter().filter(|y| y.order() == ord).collect();
            // try the element itself first so identical triples resolve at once
            if let Some(pos) = c.iter().position(|y| y == x) {
                c.swap(0, pos);
            }
            candidates.push(c);
        }
        Ok(IsoSearch {
            t1,
            t2,
            gens,
            candidates,
        })
    }

    fn run(&self) -> Result<bool> {
        let mut images = Vec::with_capacity(self.gens.len());
        Ok(self.extend(&mut images))
    }

    fn extend(&self, images: &mut Vec<Permutation>) -> bool {
        let depth = images.len();
        if depth == self.gens.len() {
            return true;
        }
        for cand in &self.candidates[depth] {
            images.push(cand.clone());
            if self.consistent(images) && self.extend(images) {
                return true;
            }
            images.pop();
        }
        false
    }

    /// Builds the map on `⟨gens[..k]⟩` and checks it is a well-defined
    /// injective homomorphism respecting membership in `A` and `B`.
    fn consistent(&self, images: &[Permutation]) -> bool {
        let k = images.len();
        let id1 = self.t1.g.identity();
        let id2 = self.t2.g.identity();
        let mut map: HashMap<Permutation, Permutation> = HashMap::new();
        let mut used: HashSet<Permutation> = HashSet::new();
        map.insert(id1.clone(), id2.clone());
        used.insert(id2);
        let mut queue = vec![id1];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i].clone();
            let fx = map[&x].clone();
            for (s, fs) in self.gens[..k].iter().zip(images) {
                let y = x.compose(s);
                let fy = fx.compose(fs);
                match map.get(&y) {
                    Some(prev) => {
                        if *prev != fy {
                            return false;
                        }
                    }
                    None => {
                        if !used.insert(fy.clone()) {
                            return false;
                        }
                        if self.t1.a.has(&y) != self.t2.a.has(&fy) || self.t1.b.has(&y) != self.t2.b.has(&fy) {
                            return false;
                        }
                        map.insert(y.clone(), fy);
                        queue.push(y);
                    }
                }
            }
            i += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lattice::SubgroupLattice;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::cycles1(n, c)
    }

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|c| p(n, c)).collect()).unwrap()
    }

    #[test]
    fn a5_example_is_nondegenerate() {
        let t = catalog::a5_cyclic_klein();
        assert_eq!(t.status().unwrap(), Status::Nondegenerate);
        assert!(is_triple_factorisation_geometric(&t).unwrap());
        assert!(is_triple_factorisation_movement(&t).unwrap());
        assert_eq!(oracle_aba(&t, DEFAULT_MAX_PRODUCTS).unwrap().len(), 60);
        let r = t.report().unwrap();
        assert_eq!(r.order_a_cap_b, 1);
        assert_eq!(r.criterion_used, Criterion::Geometric);
    }

    #[test]
    fn d10_a4_is_degenerate() {
        let a5 = PermGroup::alternating(5);
        let d10 = grp(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]]);
        let a4 = grp(5, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let t = TripleFactorisation::new(a5, d10, a4).unwrap();
        assert_eq!(t.status().unwrap(), Status::Degenerate);
        assert_eq!(t.ab_order(), 60);
    }

    #[test]
    fn a_equals_b_proper_fails() {
        let s3 = PermGroup::symmetric(3);
        let a = grp(3, &[&[&[1, 2]]]);
        let t = TripleFactorisation::new(s3, a.clone(), a).unwrap();
        assert_eq!(t.status().unwrap(), Status::NotFactorisation);
        assert!(!is_triple_factorisation_geometric(&t).unwrap());
        assert_eq!(oracle_aba(&t, DEFAULT_MAX_PRODUCTS).unwrap().len(), 2);
    }

    #[test]
    fn whole_group_is_trivial() {
        let s4 = PermGroup::symmetric(4);
        let t = TripleFactorisation::new(s4.clone(), s4.clone(), PermGroup::trivial(4)).unwrap();
        assert_eq!(t.status().unwrap(), Status::Trivial);
        assert_eq!(t.report().unwrap().criterion_used, Criterion::Trivial);
    }

    #[test]
    fn s3_degenerate_oracle() {
        let s3 = PermGroup::symmetric(3);
        let t = TripleFactorisation::new(s3, grp(3, &[&[&[1, 2]]]), PermGroup::cyclic(3)).unwrap();
        assert_eq!(t.status().unwrap(), Status::Degenerate);
        assert_eq!(oracle_aba(&t, DEFAULT_MAX_PRODUCTS).unwrap().len(), 6);
        let triv =
            TripleFactorisation::new(PermGroup::symmetric(3), PermGroup::trivial(3), PermGroup::trivial(3)).unwrap();
        let o = oracle_aba(&triv, DEFAULT_MAX_PRODUCTS).unwrap();
        assert_eq!(o.len(), 1);
        assert!(o.contains(&Permutation::identity(3)));
    }

    #[test]
    fn oracle_ceiling() {
        let t = catalog::a5_cyclic_klein();
        assert!(matches!(oracle_aba(&t, 10), Err(Error::CeilingExceeded { .. })));
    }

    #[test]
    fn point_stabiliser_with_transposition() {
        for n in 5..=6 {
            let g = PermGroup::symmetric(n);
            let a = g.stabiliser(0);
            let b = grp(n, &[&[&[1, 3]]]);
            let t = TripleFactorisation::new(g.clone(), a.clone(), b).unwrap();
            assert!(is_triple_factorisation_geometric(&t).unwrap());
            let b2 = grp(n, &[&[&[2, 3]]]);
            let t2 = TripleFactorisation::new(g, a, b2).unwrap();
            assert!(!is_triple_factorisation_geometric(&t2).unwrap());
            assert!(!is_triple_factorisation_movement(&t2).unwrap());
        }
    }

    #[test]
    fn two_transitive_shortcut() {
        let s5 = PermGroup::symmetric(5);
        assert_eq!(
            is_2transitive_factorisation(&s5, 0, &grp(5, &[&[&[1, 3]]])).unwrap(),
            (true, true)
        );
        assert!(!is_2transitive_factorisation(&s5, 0, &grp(5, &[&[&[2, 3]]])).unwrap().0);
        let b = grp(5, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        assert_eq!(
            is_2transitive_factorisation(&s5, 4, &s5.stabiliser(4)).unwrap(),
            (false, false)
        );
        assert_eq!(
            is_2transitive_factorisation(&s5, 4, &PermGroup::symmetric(5)).unwrap(),
            (true, false)
        );
        assert_eq!(is_2transitive_factorisation(&s5, 0, &b).unwrap(), (true, true));
        assert!(matches!(
            is_2transitive_factorisation(&PermGroup::cyclic(5), 0, &b),
            Err(Error::NotTwoTransitive)
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let t = catalog::sn_conjugate_pair(5);
        assert!(are_isomorphic(&t.0, &t.0, DEFAULT_MAX_ISO_ORDER).unwrap());
        assert!(!are_isomorphic(&t.0, &t.1, DEFAULT_MAX_ISO_ORDER).unwrap());
        let x = p(5, &[&[1, 4, 2]]);
        let conj = t.0.conjugate(&x).unwrap();
        assert!(are_isomorphic(&t.0, &conj, DEFAULT_MAX_ISO_ORDER).unwrap());
        let a5 = catalog::a5_cyclic_klein();
        assert!(matches!(
            are_isomorphic(&a5, &a5, 10),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn s4_criteria_agree_with_oracle() {
        let s4 = PermGroup::symmetric(4);
        let lat = SubgroupLattice::new(&s4).unwrap();
        for a in lat.entries() {
            for b in lat.entries() {
                let t = TripleFactorisation::new(s4.clone(), a.group.clone(), b.group.clone()).unwrap();
                let geo = is_triple_factorisation_geometric(&t).unwrap();
                let mov = is_triple_factorisation_movement(&t).unwrap();
                let oracle = oracle_aba(&t, DEFAULT_MAX_PRODUCTS).unwrap().len() == 24;
                assert_eq!(geo, oracle);
                assert_eq!(mov, oracle);
            }
        }
    }

    #[test]
    fn conjugation_preserves_status() {
        let t = catalog::a5_cyclic_klein();
        let x = p(5, &[&[1, 2, 3]]);
        assert_eq!(t.conjugate(&x).unwrap().status().unwrap(), Status::Nondegenerate);
    }
}
