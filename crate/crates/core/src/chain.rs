//! Base and strong generating set via deterministic Schreier–Sims.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    /// Orbit of `base_point` under `gens`, in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[p] = u` with `base_point^u = p`, for orbit points `p`.
    pub transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut level = Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base_point];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.gens {
                let q = g.apply(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().unwrap().compose(g);
                    transversal[q] = Some(u);
                    orbit.push(q);
                }
            }
            i += 1;
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }

    #[inline]
    pub fn rep(&self, p: usize) -> Option<&Permutation> {
        self.transversal[p].as_ref()
    }
}

/// A stabiliser chain `G = G^(0) ≥ G^(1) ≥ ... ≥ G^(k) = 1`.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Builds the chain for `⟨gens⟩`, using `prefix` as the initial base points.
    pub fn new(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.fixes_base(g) {
                let b = g.support()[0];
                chain.levels.push(Level::new(degree, b));
            }
        }
        let bases: Vec<usize> = chain.levels.iter().map(|l| l.base_point).collect();
        for (i, level) in chain.levels.iter_mut().enumerate() {
            level.gens = gens
                .iter()
                .filter(|g| bases[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            level.rebuild(degree);
        }
        chain.complete();
        chain
    }

    fn fixes_base(&self, g: &Permutation) -> bool {
        self.levels.iter().all(|l| g.apply(l.base_point) == l.base_point)
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let p = h.apply(level.base_point);
            match level.rep(p) {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let degree = self.degree;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut found: Option<(Permutation, usize)> = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                let p = self.levels[lvl].orbit[oi];
                for s in &self.levels[lvl].gens {
                    let q = s.apply(p);
                    let up = self.levels[lvl].rep(p).unwrap();
                    let uq = self.levels[lvl].rep(q).unwrap();
                    let schreier = up.compose(s).compose(&uq.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&schreier, lvl + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        found = Some((h, j));
                        break 'scan;
                    }
                }
            }
            match found {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.support()[0];
                        self.levels.push(Level::new(degree, b));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild(degree);
                    }
                    i = j as isize;
                }
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Strong generators of the pointwise stabiliser of the first `depth` base points.
    pub fn stabiliser_gens(&self, depth: usize) -> Vec<Permutation> {
        self.levels.get(depth).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Visits every element exactly once as a product `u_{k-1} ... u_0`.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(chain: &StabChain, depth: usize, acc: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            if depth == 0 {
                f(acc);
                return;
            }
            let level = &chain.levels[depth - 1];
            for &p in &level.orbit {
                let next = acc.compose(level.rep(p).unwrap());
                rec(chain, depth - 1, &next, f);
            }
        }
        let id = Permutation::identity(self.degree);
        rec(self, self.levels.len(), &id, &mut f);
    }

    /// Element from a choice of orbit index per level (used for random sampling).
    pub fn element_from_indices(&self, idx: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for (level, &i) in self.levels.iter().zip(idx).rev() {
            let p = level.orbit[i % level.orbit.len()];
            acc = acc.compose(level.rep(p).unwrap());
        }
        acc
    }
}
