//! Right coset actions, cores, and block systems.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::chain::StabChain;
use crate::error::{ceiling, Error, Result};
use crate::group::{orbit_under, PermGroup};
use crate::perm::Permutation;

/// Default ceiling on the number of cosets enumerated.
pub const DEFAULT_MAX_INDEX: u128 = 1_000_000;

/// Stabiliser chain of a group acting simultaneously on its own points and on
/// an auxiliary domain, with the auxiliary points placed first in the base.
///
/// For `source` on `n` points and a homomorphism to `Sym(m)` given by
/// generator images, the combined group acts faithfully on `n + m` points.
/// Pointwise stabilisers of auxiliary points then give kernels and preimages.
fn combined_chain(source_gens: &[Permutation], images: &[Permutation], n: usize, prefix: &[usize]) -> StabChain {
    let m = images.first().map(Permutation::degree).unwrap_or(0);
    let gens: Vec<Permutation> = source_gens.iter().zip(images).map(|(g, x)| g.disjoint_sum(x)).collect();
    let shifted: Vec<usize> = prefix.iter().map(|&p| p + n).collect();
    StabChain::new(n + m, &gens, &shifted)
}

/// Subgroup of `⟨source_gens⟩` fixing every listed point of the image domain.
pub(crate) fn preimage_of_pointwise_stabiliser(
    degree: usize,
    source_gens: &[Permutation],
    images: &[Permutation],
    points: &[usize],
) -> PermGroup {
    if source_gens.is_empty() {
        return PermGroup::trivial(degree);
    }
    let chain = combined_chain(source_gens, images, degree, points);
    let gens: Vec<Permutation> = chain
        .stabiliser_gens(points.len())
        .iter()
        .map(|g| g.truncate(degree))
        .collect();
    PermGroup::generated_by(degree, gens.iter())
}

/// The kernel of a homomorphism given by generator images.
pub(crate) fn kernel_of(
    degree: usize,
    source_gens: &[Permutation],
    images: &[Permutation],
    image: &PermGroup,
) -> PermGroup {
    preimage_of_pointwise_stabiliser(degree, source_gens, images, &image.base())
}

/// Right multiplication action of `G` on the right cosets of `H`.
///
/// Coset index 0 is `H` itself. Each coset `Hx` is represented by the unique
/// element of `Hx` whose images of the base of `H` are lexicographically
/// least, found by descending `H`'s stabiliser chain.
pub struct CosetAction {
    parent: PermGroup,
    subgroup: PermGroup,
    reps: Vec<Permutation>,
    index_of: HashMap<Permutation, usize>,
    gen_images: Vec<Permutation>,
    image: PermGroup,
    kernel: OnceLock<PermGroup>,
}

impl CosetAction {
    pub fn new(parent: &PermGroup, subgroup: &PermGroup) -> Result<Self> {
        Self::with_limit(parent, subgroup, DEFAULT_MAX_INDEX)
    }

    pub fn with_limit(parent: &PermGroup, subgroup: &PermGroup, max_index: u128) -> Result<Self> {
        subgroup.check_subgroup_of(parent)?;
        let index = parent.order() / subgroup.order();
        ceiling("coset index", max_index, index)?;

        let mut action = CosetAction {
            parent: parent.clone(),
            subgroup: subgroup.clone(),
            reps: Vec::with_capacity(index as usize),
            index_of: HashMap::with_capacity(index as usize),
            gen_images: Vec::new(),
            image: PermGroup::trivial(1),
            kernel: OnceLock::new(),
        };
        let id = action.canonical(&parent.identity());
        action.index_of.insert(id.clone(), 0);
        action.reps.push(id);
        let gens = parent.generators().to_vec();
        let mut table: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        let mut i = 0;
        while i < action.reps.len() {
            for (k, g) in gens.iter().enumerate() {
                let c = action.canonical(&action.reps[i].compose(g));
                let next = action.reps.len();
                let j = *action.index_of.entry(c.clone()).or_insert_with(|| next);
                if j == next {
                    action.reps.push(c);
                }
                table[k].push(j);
            }
            i += 1;
        }
        if action.reps.len() as u128 != index {
            return Err(Error::assertion(
                "coset count equals |G|/|H|",
                format!("{} cosets, expected {index}", action.reps.len()),
            ));
        }
        let n = action.reps.len();
        action.gen_images = table
            .into_iter()
            .map(|t| Permutation::from_images(t).expect("coset action is a bijection"))
            .collect();
        action.image = PermGroup::new(n, action.gen_images.clone())?;
        Ok(action)
    }

    /// The canonical representative of the coset `Hx`.
    pub fn canonical(&self, x: &Permutation) -> Permutation {
        let mut y = x.clone();
        for level in &self.subgroup.chain().levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&p| y.apply(p))
                .expect("orbit contains the base point");
            y = level.rep(best).unwrap().compose(&y);
        }
        y
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn point_stabiliser(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// Index of the coset `Hx`.
    pub fn coset_of(&self, x: &Permutation) -> usize {
        self.index_of[&self.canonical(x)]
    }

    /// The permutation of coset indices induced by `x ∈ G`.
    pub fn act(&self, x: &Permutation) -> Permutation {
        let images = self.reps.iter().map(|r| self.coset_of(&r.compose(x))).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// Images of the parent's generators, in order.
    pub fn generator_images(&self) -> &[Permutation] {
        &self.gen_images
    }

    /// The permutation group induced on the cosets.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    /// The image of a subgroup of the parent.
    pub fn image_of(&self, sub: &PermGroup) -> PermGroup {
        sub.map_generators(self.len(), |g| self.act(g))
    }

    /// Orbit of a coset under a subgroup of the parent.
    pub fn orbit_of(&self, sub: &PermGroup, coset: usize) -> Vec<usize> {
        let gens: Vec<Permutation> = sub.generators().iter().map(|g| self.act(g)).collect();
        orbit_under(&gens, self.len(), coset)
    }

    /// Kernel of the action, i.e. the core of the subgroup in the parent.
    pub fn kernel(&self) -> &PermGroup {
        self.kernel.get_or_init(|| {
            kernel_of(
                self.parent.degree(),
                self.parent.generators(),
                &self.gen_images,
                &self.image,
            )
        })
    }

    /// Stabiliser of a coset inside a subgroup of the parent.
    pub fn stabiliser_of_coset(&self, sub: &PermGroup, coset: usize) -> PermGroup {
        let images: Vec<Permutation> = sub.generators().iter().map(|g| self.act(g)).collect();
        preimage_of_pointwise_stabiliser(sub.degree(), sub.generators(), &images, &[coset])
    }
}

/// `core_G(H)`, the largest normal subgroup of `G` inside `H`.
pub fn core(parent: &PermGroup, subgroup: &PermGroup) -> Result<PermGroup> {
    if subgroup.same_as(parent) {
        subgroup.check_subgroup_of(parent)?;
        return Ok(parent.clone());
    }
    Ok(CosetAction::new(parent, subgroup)?.kernel().clone())
}

/// A partition of the points into blocks of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    /// Validates that `blocks` partition `{0..degree-1}` into equal-size cells.
    /// Each block is sorted; block order is preserved.
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::NotBlockSystem("no blocks".into()));
        }
        let size = blocks[0].len();
        let mut block_of = vec![usize::MAX; degree];
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            if b.len() != size || size == 0 {
                return Err(Error::NotBlockSystem("blocks differ in size".into()));
            }
            b.sort_unstable();
            for &p in &b {
                if p >= degree || block_of[p] != usize::MAX {
                    return Err(Error::NotBlockSystem(format!(
                        "point {} is out of range or repeated",
                        p + 1
                    )));
                }
                block_of[p] = i;
            }
            sorted.push(b);
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::NotBlockSystem("blocks do not cover every point".into()));
        }
        Ok(BlockSystem {
            blocks: sorted,
            block_of,
        })
    }

    /// The system generated by the images of one block under `g`.
    pub fn from_block(g: &PermGroup, block: &[usize]) -> Result<Self> {
        let mut first = block.to_vec();
        first.sort_unstable();
        first.dedup();
        let mut blocks = vec![first];
        let mut i = 0;
        while i < blocks.len() {
            for gen in g.generators() {
                let mut img: Vec<usize> = blocks[i].iter().map(|&p| gen.apply(p)).collect();
                img.sort_unstable();
                if !blocks.contains(&img) {
                    blocks.push(img);
                }
            }
            i += 1;
        }
        let system = BlockSystem::new(g.degree(), blocks)?;
        system.check_invariant(g)?;
        Ok(system)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.block_size() == 1 || self.num_blocks() == 1
    }

    /// Reorders blocks so that the one containing `point` comes first; the
    /// remaining blocks are ordered by least point.
    pub fn with_first_block_containing(&self, point: usize) -> BlockSystem {
        let first = self.block_of[point];
        let mut blocks = vec![self.blocks[first].clone()];
        let mut rest: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != first)
            .map(|(_, b)| b.clone())
            .collect();
        rest.sort();
        blocks.extend(rest);
        BlockSystem::new(self.degree(), blocks).expect("reordering preserves validity")
    }

    /// The permutation of blocks induced by `x`, if `x` preserves the system.
    pub fn block_image(&self, x: &Permutation) -> Option<Permutation> {
        let mut images = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let target = self.block_of[x.apply(b[0])];
            if b.iter().any(|&p| self.block_of[x.apply(p)] != target) {
                return None;
            }
            images.push(target);
        }
        Permutation::from_images(images).ok()
    }

    /// Checks that every generator of `g` maps blocks onto blocks.
    pub fn check_invariant(&self, g: &PermGroup) -> Result<()> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: self.degree(),
            });
        }
        for gen in g.generators() {
            if self.block_image(gen).is_none() {
                return Err(Error::NotBlockSystem(format!(
                    "generator {gen} does not permute the blocks"
                )));
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        Some((lo, hi))
    }
}

/// The finest block system of a transitive group in which `a` and `b` share a
/// block, by union-find refinement from the seed pair.
pub fn minimal_block_containing(g: &PermGroup, a: usize, b: usize) -> BlockSystem {
    let n = g.degree();
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if let Some(pair) = uf.union(a, b) {
        queue.push(pair);
    }
    while let Some((x, y)) = queue.pop() {
        for gen in g.generators() {
            if let Some(pair) = uf.union(gen.apply(x), gen.apply(y)) {
                queue.push(pair);
            }
        }
    }
    let mut cells: HashMap<usize, Vec<usize>> = HashMap::new();
    for p in 0..n {
        cells.entry(uf.find(p)).or_default().push(p);
    }
    let mut blocks: Vec<Vec<usize>> = cells.into_values().collect();
    blocks.sort();
    BlockSystem::new(n, blocks).expect("refinement of a transitive group yields a block system")
}

/// All minimal nontrivial block systems; empty iff `g` is primitive.
pub fn minimal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    let systems: Vec<BlockSystem> = (1..n).map(|p| minimal_block_containing(g, 0, p)).collect();
    let mut out: Vec<BlockSystem> = Vec::new();
    for sys in &systems {
        if sys.num_blocks() == 1 {
            continue;
        }
        let block = &sys.blocks()[sys.block_of(0)];
        // minimal iff every seed inside the block regenerates the same block
        let minimal = block.iter().filter(|&&q| q != 0).all(|&q| systems[q - 1] == *sys);
        if minimal && !out.contains(sys) {
            out.push(sys.clone());
        }
    }
    Ok(out)
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    Ok(minimal_block_systems(g)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn c5() -> PermGroup {
        PermGroup::from_generators(vec![Permutation::cycles1(5, &[&[1, 2, 3, 4, 5]])]).unwrap()
    }

    #[test]
    fn natural_action_recovered() {
        let s5 = PermGroup::symmetric(5);
        let h = s5.stabiliser(4);
        let act = CosetAction::new(&s5, &h).unwrap();
        assert_eq!(act.len(), 5);
        assert!(act.kernel().is_trivial());
        assert_eq!(act.image().order(), 120);
    }

    #[test]
    fn sign_action() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let act = CosetAction::new(&s5, &a5).unwrap();
        assert_eq!(act.len(), 2);
        assert!(act.kernel().same_as(&a5));
    }

    #[test]
    fn a5_on_cosets_of_c5() {
        let a5 = PermGroup::alternating(5);
        let act = CosetAction::new(&a5, &c5()).unwrap();
        assert_eq!(act.len(), 12);
        assert!(act.kernel().is_trivial());
        // index 0 is the subgroup itself and its stabiliser is the image of H
        let stab = act.image().stabiliser(0);
        assert!(stab.same_as(&act.image_of(&c5())));
    }

    #[test]
    fn not_a_subgroup_rejected() {
        let a5 = PermGroup::alternating(5);
        let h = PermGroup::from_generators(vec![Permutation::cycles1(5, &[&[1, 2]])]).unwrap();
        assert!(matches!(CosetAction::new(&a5, &h), Err(Error::NotSubgroup { .. })));
    }

    #[test]
    fn index_ceiling() {
        let s6 = PermGroup::symmetric(6);
        let r = CosetAction::with_limit(&s6, &PermGroup::trivial(6), 100);
        assert!(matches!(r, Err(Error::CeilingExceeded { .. })));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let s5 = PermGroup::symmetric(5);
        let h = PermGroup::from_generators(vec![Permutation::cycles1(5, &[&[1, 2], &[3, 4]])]).unwrap();
        let act = CosetAction::new(&s5, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x = s5.random_element(&mut rng);
            let y = s5.random_element(&mut rng);
            assert_eq!(act.act(&x.compose(&y)), act.act(&x).compose(&act.act(&y)));
        }
    }

    fn brute_core(g: &PermGroup, h: &PermGroup) -> HashSet<Permutation> {
        let mut acc = h.element_set().unwrap();
        for x in g.elements().unwrap() {
            let conj: HashSet<Permutation> = h.conjugate(&x).element_set().unwrap();
            acc.retain(|e| conj.contains(e));
        }
        acc
    }

    #[test]
    fn core_matches_conjugate_intersection() {
        let s5 = PermGroup::symmetric(5);
        assert!(core(&s5, &s5.stabiliser(4)).unwrap().is_trivial());
        let a5 = PermGroup::alternating(5);
        assert!(core(&s5, &a5).unwrap().same_as(&a5));

        // A5 x Sym({6,7}) with A = <(1,2,3,4,5)> x M
        let m = Permutation::cycles1(7, &[&[6, 7]]);
        let mut gens: Vec<Permutation> = a5.generators().iter().map(|g| g.extend(7)).collect();
        gens.push(m.clone());
        let g = PermGroup::from_generators(gens).unwrap();
        let a = PermGroup::from_generators(vec![Permutation::cycles1(7, &[&[1, 2, 3, 4, 5]]), m.clone()]).unwrap();
        let c = core(&g, &a).unwrap();
        let brute = brute_core(&g, &a);
        assert_eq!(c.order(), 2);
        assert!(c.has(&m));
        assert_eq!(brute.len(), 2);
        assert!(brute.contains(&m));
    }

    #[test]
    fn primitivity_and_block_systems() {
        assert!(is_primitive(&PermGroup::symmetric(5)).unwrap());
        let c4 = PermGroup::cyclic(4);
        let systems = minimal_block_systems(&c4).unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].blocks(), &[vec![0, 2], vec![1, 3]]);
        let intransitive = PermGroup::from_generators(vec![Permutation::cycles1(4, &[&[1, 2]])]).unwrap();
        assert!(matches!(
            minimal_block_systems(&intransitive),
            Err(Error::NotTransitive)
        ));
    }

    #[test]
    fn a5_on_twelve_cosets_has_six_blocks_of_two() {
        let a5 = PermGroup::alternating(5);
        let act = CosetAction::new(&a5, &c5()).unwrap();
        let systems = minimal_block_systems(act.image()).unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].num_blocks(), 6);
        assert_eq!(systems[0].block_size(), 2);
        // brute force: among 2-subsets {0,p}, exactly one is a block
        let img = act.image();
        let elems = img.elements().unwrap();
        let blocks: Vec<usize> = (1..12)
            .filter(|&p| {
                elems.iter().all(|g| {
                    let (x, y) = (g.apply(0), g.apply(p));
                    let same = (x == 0 || x == p) as u8 + (y == 0 || y == p) as u8;
                    same == 0 || same == 2
                })
            })
            .collect();
        assert_eq!(blocks.len(), 1);
        for sys in &systems {
            sys.check_invariant(img).unwrap();
        }
    }

    #[test]
    fn block_system_validation() {
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![2]]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![1, 2]]).is_err());
        let c4 = PermGroup::cyclic(4);
        let bad = BlockSystem::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(bad.check_invariant(&c4).is_err());
        assert!(BlockSystem::from_block(&c4, &[0, 1]).is_err());
        let good = BlockSystem::from_block(&c4, &[0, 2]).unwrap();
        assert_eq!(good.num_blocks(), 2);
    }
}
