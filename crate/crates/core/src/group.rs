//! Permutation groups given by generators, backed by a stabiliser chain.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::chain::StabChain;
use crate::error::{ceiling, Error, Result};
use crate::perm::Permutation;

/// Default ceiling on explicit element enumeration.
pub const DEFAULT_MAX_ELEMENTS: u128 = 2_000_000;

/// Intersections of subgroups this small are computed by filtering elements.
const FILTER_INTERSECTION_LIMIT: u128 = 5_000;

/// A permutation group on `{0..degree-1}`.
///
/// Immutable after construction; the base and strong generating set is
/// computed once in the constructor.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermGroup {
    /// The group generated by `gens`, all of which must have degree `degree`.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::precondition("degree must be positive"));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let generators: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::new(degree, &generators, &[]);
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    /// Group generated by a nonempty list; the degree is taken from the list.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::precondition("generator list is empty"))?;
        Self::new(degree, gens)
    }

    pub(crate) fn from_trusted(degree: usize, gens: Vec<Permutation>) -> Self {
        Self::new(degree, gens).expect("generators of matching degree")
    }

    /// Builds `⟨elements⟩`, keeping only generators that enlarge the group.
    pub fn generated_by<'a>(degree: usize, elements: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut group = PermGroup::trivial(degree);
        for x in elements {
            if !group.has(x) {
                let mut gens = group.generators.clone();
                gens.push(x.clone());
                group = PermGroup::from_trusted(degree, gens);
            }
        }
        group
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_trusted(degree, Vec::new())
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        PermGroup::from_trusted(n, gens)
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermGroup::from_trusted(n, gens)
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        PermGroup::from_trusted(n, gens)
    }

    /// Dihedral group of order `2n` on `n` points.
    pub fn dihedral(n: usize) -> Self {
        let mut gens = PermGroup::cyclic(n).generators;
        if n >= 3 {
            let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            gens.push(Permutation::from_images(refl).unwrap());
        }
        PermGroup::from_trusted(n, gens)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// Membership test by sifting through the stabiliser chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain.contains(p))
    }

    /// Membership for callers that already know the degrees agree.
    #[inline]
    pub fn has(&self, p: &Permutation) -> bool {
        debug_assert_eq!(p.degree(), self.degree);
        self.chain.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// Equality as sets of permutations.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Fails with a witness unless every generator lies in `parent`.
    pub fn check_subgroup_of(&self, parent: &PermGroup) -> Result<()> {
        if self.degree != parent.degree {
            return Err(Error::DegreeMismatch {
                left: parent.degree,
                right: self.degree,
            });
        }
        match self.generators.iter().find(|g| !parent.has(g)) {
            Some(w) => Err(Error::NotSubgroup {
                witness: w.to_cycle_string(),
            }),
            None => Ok(()),
        }
    }

    /// Fails with a witness conjugate unless `self` is normalised by `parent`.
    pub fn check_normal_in(&self, parent: &PermGroup) -> Result<()> {
        self.check_subgroup_of(parent)?;
        for n in &self.generators {
            for g in &parent.generators {
                let c = n.conjugate_by(g);
                if !self.has(&c) {
                    return Err(Error::NotNormal {
                        witness: c.to_cycle_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        self.check_normal_in(parent).is_ok()
    }

    /// Whether `x` normalises the group.
    pub fn is_normalised_by(&self, x: &Permutation) -> bool {
        self.generators.iter().all(|g| self.has(&g.conjugate_by(x)))
    }

    /// Orbit of `point`, ascending.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_under(&self.generators, self.degree, point)
    }

    /// All orbits, each ascending, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_under(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// 2-transitivity: transitive, and the stabiliser of a point is
    /// transitive on the remaining points.
    pub fn is_two_transitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree <= 1 {
            return true;
        }
        let stab = self.stabiliser(0);
        stab.orbit(1).len() == self.degree - 1
    }

    pub fn stabiliser(&self, point: usize) -> PermGroup {
        self.pointwise_stabiliser(&[point])
    }

    pub fn pointwise_stabiliser(&self, points: &[usize]) -> PermGroup {
        let chain = StabChain::new(self.degree, &self.generators, points);
        let gens = chain.stabiliser_gens(points.len());
        PermGroup::generated_by(self.degree, gens.iter())
    }

    pub fn conjugate(&self, x: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::from_trusted(self.degree, gens)
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().filter(|g| !self.has(g)).cloned());
        PermGroup::from_trusted(self.degree, gens)
    }

    /// Normal closure of `self` in `parent`.
    pub fn normal_closure_in(&self, parent: &PermGroup) -> PermGroup {
        let mut group = self.clone();
        loop {
            let mut extra = None;
            'find: for n in group.generators() {
                for g in parent.generators() {
                    let c = n.conjugate_by(g);
                    if !group.has(&c) {
                        extra = Some(c);
                        break 'find;
                    }
                }
            }
            match extra {
                None => return group,
                Some(c) => {
                    let mut gens = group.generators.clone();
                    gens.push(c);
                    group = PermGroup::from_trusted(self.degree, gens);
                }
            }
        }
    }

    /// Visits every element once.
    pub fn for_each_element(&self, f: impl FnMut(&Permutation)) {
        self.chain.for_each_element(f)
    }

    /// All elements, sorted; fails above `limit`.
    pub fn elements_bounded(&self, limit: u128) -> Result<Vec<Permutation>> {
        ceiling("group order for element enumeration", limit, self.order())?;
        let mut out = Vec::with_capacity(self.order() as usize);
        self.for_each_element(|g| out.push(g.clone()));
        out.sort();
        Ok(out)
    }

    /// All elements, sorted, under the default ceiling.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.elements_bounded(DEFAULT_MAX_ELEMENTS)
    }

    pub fn element_set(&self) -> Result<HashSet<Permutation>> {
        ceiling(
            "group order for element enumeration",
            DEFAULT_MAX_ELEMENTS,
            self.order(),
        )?;
        let mut out = HashSet::with_capacity(self.order() as usize);
        self.for_each_element(|g| {
            out.insert(g.clone());
        });
        Ok(out)
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let idx: Vec<usize> = self
            .chain
            .levels
            .iter()
            .map(|l| rng.gen_range(0..l.orbit.len()))
            .collect();
        self.chain.element_from_indices(&idx)
    }

    /// `self ∩ other`; both must live in a common group of the same degree.
    ///
    /// Small cases filter elements of the smaller group. Otherwise the
    /// intersection is the stabiliser, in `other`, of the trivial coset of
    /// `self` under the right coset action of `⟨self, other⟩` on `self`.
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if self.is_subgroup_of(other) {
            return Ok(self.clone());
        }
        if other.is_subgroup_of(self) {
            return Ok(other.clone());
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        if small.order() <= FILTER_INTERSECTION_LIMIT {
            let mut kept = Vec::new();
            small.for_each_element(|g| {
                if large.has(g) {
                    kept.push(g.clone());
                }
            });
            kept.sort();
            return Ok(PermGroup::generated_by(self.degree, kept.iter()));
        }
        let parent = self.join(other);
        let action = crate::action::CosetAction::new(&parent, large)?;
        Ok(action.stabiliser_of_coset(small, 0))
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let degree = self.degree + other.degree;
        let mut gens: Vec<Permutation> = self.generators.iter().map(|g| g.extend(degree)).collect();
        gens.extend(other.generators.iter().map(|g| g.shifted(self.degree, degree)));
        PermGroup::from_trusted(degree, gens)
    }

    /// Image of the group under a map applied to each generator.
    pub fn map_generators(&self, degree: usize, f: impl Fn(&Permutation) -> Permutation) -> PermGroup {
        let gens = self.generators.iter().map(f).collect();
        PermGroup::from_trusted(degree, gens)
    }

    /// Generators in 1-indexed cycle notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_cycle_string()).collect()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens [{}])",
            self.degree,
            self.order(),
            self.generator_strings().join(", ")
        )
    }
}

/// Orbit of `point` under `gens`, ascending.
pub fn orbit_under(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    let mut out = vec![point];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
                out.push(q);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn orbits_under(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if !seen[p] {
            let orb = orbit_under(gens, degree, p);
            for &q in &orb {
                seen[q] = true;
            }
            out.push(orb);
        }
    }
    out
}
