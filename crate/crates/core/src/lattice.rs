//! Exhaustive subgroup enumeration for small groups.
//!
//! Elements are indexed in sorted order and subgroups are stored as bitsets
//! over those indices. Every subgroup is a join of cyclic subgroups, so the
//! lattice is the closure of the cyclic subgroups under joins.

use std::collections::{HashMap, HashSet};

use crate::error::{ceiling, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default ceiling on `|G|` for lattice enumeration.
pub const DEFAULT_MAX_LATTICE_ORDER: u128 = 400;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

struct Table {
    elements: Vec<Permutation>,
    mul: Vec<u16>,
    identity: usize,
}

impl Table {
    fn new(g: &PermGroup) -> Result<Self> {
        let mut elements = g.elements()?;
        elements.sort();
        let n = elements.len();
        let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[&elements[i].compose(&elements[j])] as u16;
            }
        }
        let identity = index[&g.identity()];
        Ok(Table {
            elements,
            mul,
            identity,
        })
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.elements.len() + j] as usize
    }

    /// Closure of a set of element indices under multiplication.
    fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = Bits::new(self.elements.len());
        bits.set(self.identity);
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            for &s in gens {
                let p = self.mul(members[i], s);
                if !bits.get(p) {
                    bits.set(p);
                    members.push(p);
                }
            }
            i += 1;
        }
        bits
    }
}

/// One subgroup in the lattice.
#[derive(Clone, Debug)]
pub struct LatticeEntry {
    pub group: PermGroup,
    members: Bits,
    order: usize,
}

impl LatticeEntry {
    pub fn order(&self) -> usize {
        self.order
    }
}

/// All subgroups of a group, in canonical order: by order, then by the
/// sorted list of elements.
pub struct SubgroupLattice {
    group: PermGroup,
    table: Table,
    entries: Vec<LatticeEntry>,
    lookup: HashMap<Bits, usize>,
    maximal_in: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn new(g: &PermGroup) -> Result<Self> {
        Self::with_limit(g, DEFAULT_MAX_LATTICE_ORDER)
    }

    pub fn with_limit(g: &PermGroup, max_order: u128) -> Result<Self> {
        ceiling("group order for subgroup enumeration", max_order, g.order())?;
        let table = Table::new(g)?;
        let n = table.elements.len();

        let mut found: HashMap<Bits, Vec<usize>> = HashMap::new();
        let mut cyclic: Vec<(usize, Bits)> = Vec::new();
        for x in 0..n {
            let c = table.closure(&[x]);
            if !found.contains_key(&c) {
                found.insert(c.clone(), if x == table.identity { vec![] } else { vec![x] });
                cyclic.push((x, c));
            }
        }
        let mut queue: Vec<Bits> = found.keys().cloned().collect();
        queue.sort();
        let mut seen: HashSet<Bits> = queue.iter().cloned().collect();
        while let Some(s) = queue.pop() {
            let gens = found[&s].clone();
            for (x, c) in &cyclic {
                if c.is_subset(&s) {
                    continue;
                }
                let mut joined = gens.clone();
                joined.push(*x);
                let j = table.closure(&joined);
                if seen.insert(j.clone()) {
                    found.insert(j.clone(), joined);
                    queue.push(j);
                }
            }
        }

        let mut keyed: Vec<(usize, Vec<usize>, Bits, Vec<usize>)> = found
            .into_iter()
            .map(|(bits, gens)| (bits.count(), bits.ones().collect(), bits, gens))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

        let degree = g.degree();
        let entries: Vec<LatticeEntry> = keyed
            .into_iter()
            .map(|(order, _, members, gens)| {
                let perms = gens.iter().map(|&i| table.elements[i].clone()).collect();
                LatticeEntry {
                    group: PermGroup::from_trusted(degree, perms),
                    members,
                    order,
                }
            })
            .collect();
        let lookup = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.members.clone(), i))
            .collect();

        let s = entries.len();
        let mut maximal_in = vec![Vec::new(); s];
        for (k, big) in entries.iter().enumerate() {
            let below: Vec<usize> = (0..k)
                .filter(|&h| entries[h].order < big.order && entries[h].members.is_subset(&big.members))
                .collect();
            for &h in &below {
                let covered = below.iter().any(|&m| {
                    m != h && entries[m].order > entries[h].order && entries[h].members.is_subset(&entries[m].members)
                });
                if !covered {
                    maximal_in[h].push(k);
                }
            }
        }

        Ok(SubgroupLattice {
            group: g.clone(),
            table,
            entries,
            lookup,
            maximal_in,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LatticeEntry] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &PermGroup {
        &self.entries[i].group
    }

    /// Index of the whole group (always last).
    pub fn top(&self) -> usize {
        self.entries.len() - 1
    }

    /// Lattice index of a subgroup of the parent, if it is one.
    pub fn index_of(&self, h: &PermGroup) -> Option<usize> {
        let mut bits = Bits::new(self.table.elements.len());
        let mut count = 0u128;
        for (i, e) in self.table.elements.iter().enumerate() {
            if e.degree() == h.degree() && h.has(e) {
                bits.set(i);
                count += 1;
            }
        }
        if count != h.order() {
            return None;
        }
        self.lookup.get(&bits).copied()
    }

    /// Whether subgroup `i` is contained in subgroup `j`.
    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        self.entries[i].members.is_subset(&self.entries[j].members)
    }

    /// Whether subgroup `i` is maximal in subgroup `j`.
    pub fn is_maximal_in(&self, i: usize, j: usize) -> bool {
        self.maximal_in[i].contains(&j)
    }

    /// Subgroups in which `i` is maximal, in canonical order.
    pub fn maximal_overgroups(&self, i: usize) -> &[usize] {
        &self.maximal_in[i]
    }

    /// All subgroups containing `i` (including `i`), in canonical order.
    pub fn overgroups(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.is_contained(i, j)).collect()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.entries[i].group.is_normal_in(&self.group)
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_normal(i)).collect()
    }

    /// Elements of subgroup `i`, sorted.
    pub fn elements_of(&self, i: usize) -> Vec<Permutation> {
        self.entries[i]
            .members
            .ones()
            .map(|e| self.table.elements[e].clone())
            .collect()
    }
}

/// All subgroups of `g`, in canonical order.
pub fn subgroups(g: &PermGroup, max_order: u128) -> Result<Vec<PermGroup>> {
    Ok(SubgroupLattice::with_limit(g, max_order)?
        .entries
        .into_iter()
        .map(|e| e.group)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn count(g: &PermGroup) -> usize {
        SubgroupLattice::new(g).unwrap().len()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(count(&PermGroup::symmetric(3)), 6);
        assert_eq!(count(&PermGroup::symmetric(4)), 30);
        assert_eq!(count(&PermGroup::alternating(4)), 10);
        assert_eq!(count(&PermGroup::dihedral(4)), 10);
        assert_eq!(count(&PermGroup::alternating(5)), 59);
        assert_eq!(count(&PermGroup::trivial(3)), 1);
    }

    #[test]
    fn ordering_and_extremes() {
        let lat = SubgroupLattice::new(&PermGroup::symmetric(4)).unwrap();
        assert!(lat.get(0).is_trivial());
        assert!(lat.get(lat.top()).same_as(&PermGroup::symmetric(4)));
        for w in lat.entries().windows(2) {
            assert!(w[0].order() <= w[1].order());
        }
        for e in lat.entries() {
            assert_eq!(e.group.order(), e.order() as u128);
        }
    }

    #[test]
    fn c5_has_unique_maximal_overgroup_d10() {
        let a5 = PermGroup::alternating(5);
        let lat = SubgroupLattice::new(&a5).unwrap();
        let c5 = PermGroup::from_generators(vec![Permutation::cycles1(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        let i = lat.index_of(&c5).unwrap();
        let over = lat.maximal_overgroups(i);
        assert_eq!(over.len(), 1);
        assert_eq!(lat.get(over[0]).order(), 10);
        assert!(lat.is_maximal_in(over[0], lat.top()));
    }

    #[test]
    fn maximal_subgroups_of_s4() {
        let lat = SubgroupLattice::new(&PermGroup::symmetric(4)).unwrap();
        let mut orders: Vec<u128> = (0..lat.len())
            .filter(|&i| lat.is_maximal_in(i, lat.top()))
            .map(|i| lat.get(i).order())
            .collect();
        orders.sort();
        // A4, three D8, four S3
        assert_eq!(orders, vec![6, 6, 6, 6, 8, 8, 8, 12]);
        assert_eq!(lat.normal_subgroups().len(), 4);
    }

    #[test]
    fn ceiling_enforced() {
        let r = SubgroupLattice::new(&PermGroup::symmetric(6));
        assert!(matches!(r, Err(Error::CeilingExceeded { .. })));
    }
}
