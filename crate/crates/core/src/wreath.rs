//! Imprimitive wreath products, the embedding of an imprimitive group into
//! the wreath product of its block actions, and wreath products of triples.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{core, preimage_of_pointwise_stabiliser, BlockSystem, CosetAction};
use crate::constructions::quotient;
use crate::error::{ceiling, ensure, Error, Result};
use crate::factorisation::{are_isomorphic, ProductMembership, Status, TripleFactorisation, DEFAULT_MAX_ISO_ORDER};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default ceiling on `|G₀|^ℓ |G₁|`.
pub const DEFAULT_MAX_WREATH_ORDER: u128 = 1_000_000_000;

/// Ceiling on `|W|` for checks that enumerate every element of `W`.
pub const DEFAULT_MAX_WREATH_ENUMERATION: u128 = 100_000;

/// `G₀ ≀ G₁` on `Δ × Σ`, with point `(δ, i)` stored as `i·d + δ`.
///
/// The top group acts on `Σ = {0..ℓ-1}` through the first `ℓ` points of its
/// own domain. When that action is not faithful the top group carries extra
/// points, appended after the `d·ℓ` block points.
#[derive(Clone, Debug)]
pub struct WreathGroup {
    g0: PermGroup,
    top: PermGroup,
    d: usize,
    l: usize,
    aux: usize,
    group: PermGroup,
}

impl WreathGroup {
    /// `top` must act on `l + aux` points and preserve `{0..l-1}`.
    pub fn new(g0: &PermGroup, top: &PermGroup, l: usize) -> Result<Self> {
        Self::with_limit(g0, top, l, DEFAULT_MAX_WREATH_ORDER)
    }

    pub fn with_limit(g0: &PermGroup, top: &PermGroup, l: usize, max_order: u128) -> Result<Self> {
        if l == 0 || top.degree() < l {
            return Err(Error::precondition("the top group must act on at least one block"));
        }
        for x in top.generators() {
            if (0..l).any(|i| x.apply(i) >= l) {
                return Err(Error::precondition("the top group must preserve the block indices"));
            }
        }
        let order = g0
            .order()
            .checked_pow(l as u32)
            .and_then(|o| o.checked_mul(top.order()))
            .unwrap_or(u128::MAX);
        ceiling("wreath product order", max_order, order)?;
        let d = g0.degree();
        let aux = top.degree() - l;
        let mut w = WreathGroup {
            g0: g0.clone(),
            top: top.clone(),
            d,
            l,
            aux,
            group: PermGroup::trivial(d * l + aux),
        };
        let mut gens = Vec::new();
        for x in g0.generators() {
            gens.push(w.base_embed(0, x));
        }
        for x in top.generators() {
            gens.push(w.top_embed(x));
        }
        // the top group moves block 0 to every block it reaches; add the base
        // generators of blocks in the other orbits
        let reach = top.orbit(0);
        for i in (0..l).filter(|i| !reach.contains(i)) {
            for x in g0.generators() {
                gens.push(w.base_embed(i, x));
            }
        }
        w.group = PermGroup::new(d * l + aux, gens)?;
        ensure(w.group.order() == order, "|G₀ ≀ G₁| = |G₀|^ℓ |G₁|", || {
            format!("{} vs {order}", w.group.order())
        })?;
        Ok(w)
    }

    pub fn g0(&self) -> &PermGroup {
        &self.g0
    }

    /// The top group, on `ℓ + aux` points.
    pub fn top(&self) -> &PermGroup {
        &self.top
    }

    pub fn block_size(&self) -> usize {
        self.d
    }

    pub fn num_blocks(&self) -> usize {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    /// The block system `{i·d .. i·d+d-1}`, plus singletons are not included;
    /// only meaningful without auxiliary points.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.l).map(|i| (i * self.d..(i + 1) * self.d).collect()).collect()
    }

    /// The base element acting as `h` on block `i` and trivially elsewhere.
    pub fn base_embed(&self, i: usize, h: &Permutation) -> Permutation {
        let mut images: Vec<usize> = (0..self.d * self.l + self.aux).collect();
        for delta in 0..self.d {
            images[i * self.d + delta] = i * self.d + h.apply(delta);
        }
        Permutation::from_images(images).expect("base element")
    }

    /// The top element permuting blocks as `s` does.
    pub fn top_embed(&self, s: &Permutation) -> Permutation {
        let n = self.d * self.l;
        let mut images: Vec<usize> = (0..n + self.aux).collect();
        for i in 0..self.l {
            let j = s.apply(i);
            for delta in 0..self.d {
                images[i * self.d + delta] = j * self.d + delta;
            }
        }
        for k in 0..self.aux {
            images[n + k] = n + s.apply(self.l + k) - self.l;
        }
        Permutation::from_images(images).expect("top element")
    }

    /// Writes `w = f·σ` with `f` the base coordinates and `σ` the top part.
    pub fn decompose(&self, w: &Permutation) -> (Vec<Permutation>, Permutation) {
        let n = self.d * self.l;
        let mut top: Vec<usize> = (0..self.l).map(|i| w.apply(i * self.d) / self.d).collect();
        top.extend((0..self.aux).map(|k| w.apply(n + k) - n + self.l));
        let f = (0..self.l)
            .map(|i| {
                let j = top[i];
                let images = (0..self.d)
                    .map(|delta| w.apply(i * self.d + delta) - j * self.d)
                    .collect();
                Permutation::from_images(images).expect("block coordinate")
            })
            .collect();
        (f, Permutation::from_images(top).expect("top part"))
    }

    /// `⟨base(i, parts[i]) for all i, top(top_part)⟩`.
    pub fn subgroup(&self, parts: &[&PermGroup], top_part: &PermGroup) -> PermGroup {
        let mut gens = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            for x in part.generators() {
                gens.push(self.base_embed(i, x));
            }
        }
        for x in top_part.generators() {
            gens.push(self.top_embed(x));
        }
        PermGroup::from_trusted(self.degree(), gens)
    }

    /// `X ≀ Y` for `X ≤ G₀`, `Y ≤` top.
    pub fn wreath_subgroup(&self, x: &PermGroup, y: &PermGroup) -> PermGroup {
        let parts: Vec<&PermGroup> = (0..self.l).map(|_| x).collect();
        self.subgroup(&parts, y)
    }
}

/// `G₀ ≀ G₁` with `G₁` acting naturally on its points.
pub fn wreath_product(g0: &PermGroup, g1: &PermGroup) -> Result<WreathGroup> {
    WreathGroup::new(g0, g1, g1.degree())
}

/// How a group `G₁` with subgroup `A₁` is realised as the top group acting on
/// `Σ = [G₁ : A₁]`.
enum TopMap {
    /// `G₁` is transitive and `A₁` is the stabiliser of point 0.
    Natural,
    /// Right coset action, with `G₁`'s own points appended when unfaithful.
    Coset { action: Box<CosetAction>, aux: bool },
}

impl TopMap {
    fn new(g1: &PermGroup, a1: &PermGroup) -> Result<Self> {
        if g1.is_transitive() && a1.same_as(&g1.stabiliser(0)) {
            return Ok(TopMap::Natural);
        }
        let action = CosetAction::new(g1, a1)?;
        let aux = !action.kernel().is_trivial();
        Ok(TopMap::Coset {
            action: Box::new(action),
            aux,
        })
    }

    fn map(&self, x: &Permutation) -> Permutation {
        match self {
            TopMap::Natural => x.clone(),
            TopMap::Coset { action, aux } => {
                let s = action.act(x);
                if *aux {
                    s.disjoint_sum(x)
                } else {
                    s
                }
            }
        }
    }

    fn num_blocks(&self, g1: &PermGroup) -> usize {
        match self {
            TopMap::Natural => g1.degree(),
            TopMap::Coset { action, .. } => action.len(),
        }
    }

    fn degree(&self, g1: &PermGroup) -> usize {
        match self {
            TopMap::Natural => g1.degree(),
            TopMap::Coset { action, aux } => action.len() + if *aux { g1.degree() } else { 0 },
        }
    }

    fn image(&self, g1: &PermGroup, h: &PermGroup) -> PermGroup {
        h.map_generators(self.degree(g1), |x| self.map(x))
    }
}

/// `T₀ ≀ T₁ = (W, Â, B̂)` with the subgroups `Ĥ`, `K̂`, `N̂` of `W`.
#[derive(Clone, Debug)]
pub struct WreathTriple {
    pub t0: TripleFactorisation,
    pub t1: TripleFactorisation,
    pub w: WreathGroup,
    /// `A₁`, `B₁` and `core(G₁, ·)` images in the top group.
    pub a1_top: PermGroup,
    pub b1_top: PermGroup,
    /// `(A₀ × G₀^{ℓ−1}) ⋊ A₁`.
    pub a_hat: PermGroup,
    /// `B₀ ≀ B₁`.
    pub b_hat: PermGroup,
    /// `G₀ ≀ A₁`.
    pub h_hat: PermGroup,
    /// `(1 × G₀^{ℓ−1}) ⋊ A₁`.
    pub k_hat: PermGroup,
    /// `G₀^ℓ`.
    pub n_hat: PermGroup,
    pub triple: TripleFactorisation,
    core_a1_top: PermGroup,
    core_b1_top: PermGroup,
}

pub fn wreath_triple(t0: &TripleFactorisation, t1: &TripleFactorisation) -> Result<WreathTriple> {
    let top_map = TopMap::new(t1.g(), t1.a())?;
    let l = top_map.num_blocks(t1.g());
    let top = top_map.image(t1.g(), t1.g());
    let w = WreathGroup::new(t0.g(), &top, l)?;
    let a1_top = top_map.image(t1.g(), t1.a());
    let b1_top = top_map.image(t1.g(), t1.b());
    let core_a1_top = top_map.image(t1.g(), &core(t1.g(), t1.a())?);
    let core_b1_top = top_map.image(t1.g(), &core(t1.g(), t1.b())?);
    ensure(
        a1_top.generators().iter().all(|x| x.apply(0) == 0),
        "A₁ fixes the block of the trivial coset",
        || a1_top.generator_strings().join(""),
    )?;

    let g0 = t0.g();
    let trivial0 = PermGroup::trivial(g0.degree());
    let trivial_top = PermGroup::trivial(top.degree());
    let mut a_parts: Vec<&PermGroup> = vec![g0; l];
    a_parts[0] = t0.a();
    let a_hat = w.subgroup(&a_parts, &a1_top);
    let b_hat = w.wreath_subgroup(t0.b(), &b1_top);
    let h_hat = w.wreath_subgroup(g0, &a1_top);
    let mut k_parts: Vec<&PermGroup> = vec![g0; l];
    k_parts[0] = &trivial0;
    let k_hat = w.subgroup(&k_parts, &a1_top);
    let n_hat = w.wreath_subgroup(g0, &trivial_top);

    let o0 = g0.order();
    ensure(
        a_hat.order() == t0.a().order() * o0.pow(l as u32 - 1) * t1.a().order() / core_kernel_order(&top_map, t1)?,
        "|Â| = |A₀||G₀|^{ℓ−1}|A₁|",
        || a_hat.order().to_string(),
    )?;
    ensure(
        b_hat.order() == t0.b().order().pow(l as u32) * b1_top.order(),
        "|B̂| = |B₀|^ℓ |B₁|",
        || b_hat.order().to_string(),
    )?;

    let triple = TripleFactorisation::new(w.group().clone(), a_hat.clone(), b_hat.clone())?;
    let wt = WreathTriple {
        t0: t0.clone(),
        t1: t1.clone(),
        w,
        a1_top,
        b1_top,
        a_hat,
        b_hat,
        h_hat,
        k_hat,
        n_hat,
        triple,
        core_a1_top,
        core_b1_top,
    };
    wt.check_status_rules()?;
    Ok(wt)
}

/// `|A₁|` divided by its image order in the top group is 1 since the top
/// realisation is faithful; kept explicit so the order identity reads plainly.
fn core_kernel_order(top: &TopMap, t1: &TripleFactorisation) -> Result<u128> {
    let image = top.image(t1.g(), t1.g());
    ensure(image.order() == t1.g().order(), "top realisation is faithful", || {
        image.order().to_string()
    })?;
    Ok(1)
}

impl WreathTriple {
    /// The trivial/nondegenerate rules for wreath products of two triple
    /// factorisations.
    fn check_status_rules(&self) -> Result<()> {
        let (s0, s1) = (self.t0.status()?, self.t1.status()?);
        if !(s0.is_factorisation() && s1.is_factorisation()) {
            return Ok(());
        }
        let s = self.triple.status()?;
        ensure(s.is_factorisation(), "T₀ ≀ T₁ is a triple factorisation", || {
            s.to_string()
        })?;
        let eq = |x: &PermGroup, y: &PermGroup| x.order() == y.order();
        let case_a = eq(self.t0.a(), self.t0.g()) && eq(self.t1.a(), self.t1.g());
        let case_b = eq(self.t0.b(), self.t0.g()) && eq(self.t1.b(), self.t1.g());
        ensure(
            (s == Status::Trivial) == (case_a || case_b),
            "T₀ ≀ T₁ trivial iff (G₀=A₀ and G₁=A₁) or (G₀=B₀ and G₁=B₁)",
            || format!("{s} with T₀ {s0}, T₁ {s1}"),
        )?;
        if s != Status::Trivial {
            ensure(
                (s == Status::Nondegenerate) == (s0 == Status::Nondegenerate || s1 == Status::Nondegenerate),
                "T₀ ≀ T₁ nondegenerate iff a factor is nondegenerate",
                || format!("{s} with T₀ {s0}, T₁ {s1}"),
            )?;
        }
        Ok(())
    }

    /// Whether `w` lies in `(A₀B₀ × G₀^{ℓ−1})(A₁B₁)`.
    fn in_rhs(&self, w: &Permutation, first: &ProductMembership, top: &ProductMembership) -> bool {
        let (f, s) = self.w.decompose(w);
        first.contains(&f[0]) && top.contains(&s)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WreathIdentities {
    /// `ÂB̂ = (A₀B₀ × G₀^{ℓ−1})(A₁B₁)`, checked over every element of `W`.
    pub product_identity: bool,
    /// Also checked by literal product-set enumeration.
    pub product_identity_enumerated: Option<bool>,
    pub core_a_identity: bool,
    pub core_b_identity: bool,
    /// The `B̂` identity needs `core(B₁)` to fix every block or `B₀ = G₀`.
    pub core_b_identity_applies: bool,
    /// `core_Ĥ(Â) = (core(A₀) × G₀^{ℓ−1}) ⋊ A₁`.
    pub core_h_of_a_identity: bool,
    /// `core_Ĥ(Â) = K̂` (when `core(A₀) = 1`).
    pub core_h_of_a_is_k_hat: bool,
}

/// Product-set and core identities for `Â` and `B̂`.
pub fn verify_wreath_identities(wt: &WreathTriple) -> Result<WreathIdentities> {
    let w = wt.w.group();
    ceiling("|W| for element sweep", DEFAULT_MAX_WREATH_ENUMERATION, w.order())?;
    let ab = ProductMembership::new(w, &wt.a_hat, &wt.b_hat)?;
    let first = ProductMembership::new(wt.t0.g(), wt.t0.a(), wt.t0.b())?;
    let top = ProductMembership::new(wt.w.top(), &wt.a1_top, &wt.b1_top)?;
    let mut product_identity = true;
    w.for_each_element(|x| {
        if product_identity && ab.contains(x) != wt.in_rhs(x, &first, &top) {
            product_identity = false;
        }
    });
    let product_identity_enumerated = if wt.a_hat.order() * wt.b_hat.order() <= 2_000_000 {
        let a = wt.a_hat.elements()?;
        let b = wt.b_hat.elements()?;
        let mut lhs: HashSet<Permutation> = HashSet::new();
        for x in &a {
            for y in &b {
                lhs.insert(x.compose(y));
            }
        }
        let mut rhs: HashSet<Permutation> = HashSet::new();
        w.for_each_element(|x| {
            if wt.in_rhs(x, &first, &top) {
                rhs.insert(x.clone());
            }
        });
        Some(lhs == rhs)
    } else {
        None
    };

    let core_a0 = core(wt.t0.g(), wt.t0.a())?;
    let core_b0 = core(wt.t0.g(), wt.t0.b())?;
    let core_a_identity = core(w, &wt.a_hat)?.same_as(&wt.w.wreath_subgroup(&core_a0, &wt.core_a1_top));
    let core_b_identity = core(w, &wt.b_hat)?.same_as(&wt.w.wreath_subgroup(&core_b0, &wt.core_b1_top));
    let l = wt.w.num_blocks();
    let core_b_identity_applies = wt.t0.b().order() == wt.t0.g().order()
        || wt
            .core_b1_top
            .generators()
            .iter()
            .all(|x| (0..l).all(|i| x.apply(i) == i));
    ensure(core_a_identity, "core_W(Â) = core(A₀) ≀ core(A₁)", String::new)?;
    if core_b_identity_applies {
        ensure(core_b_identity, "core_W(B̂) = core(B₀) ≀ core(B₁)", String::new)?;
    }

    let core_h = core(&wt.h_hat, &wt.a_hat)?;
    let mut parts: Vec<&PermGroup> = vec![wt.t0.g(); wt.w.num_blocks()];
    parts[0] = &core_a0;
    let core_h_of_a_identity = core_h.same_as(&wt.w.subgroup(&parts, &wt.a1_top));
    let core_h_of_a_is_k_hat = core_h.same_as(&wt.k_hat);
    if core_a0.is_trivial() {
        ensure(core_h_of_a_is_k_hat, "core_Ĥ(Â) = K̂", || {
            core_h.generator_strings().join("")
        })?;
    }
    Ok(WreathIdentities {
        product_identity,
        product_identity_enumerated,
        core_a_identity,
        core_b_identity,
        core_b_identity_applies,
        core_h_of_a_identity,
        core_h_of_a_is_k_hat,
    })
}

/// The data of an imprimitive group embedded in the wreath product of its
/// block actions.
#[derive(Clone, Debug)]
pub struct WreathContext {
    pub g: PermGroup,
    pub a: PermGroup,
    pub b: PermGroup,
    /// Blocks with `Δ₁ ∋ α` first.
    pub sigma: BlockSystem,
    pub alpha: usize,
    /// Points of `Δ₁`, sorted; local coordinate `δ` is `delta[δ]`.
    pub delta: Vec<usize>,
    /// `G^Σ`.
    pub g1: PermGroup,
    /// `G_Δ^Δ`, in local coordinates.
    pub g0: PermGroup,
    /// `(A ∩ G_Δ)^Δ`.
    pub a0: PermGroup,
    /// `(G₁)_{Δ₁}`.
    pub a1: PermGroup,
    /// `B_Δ^Δ`.
    pub b0: PermGroup,
    /// `B^Σ`.
    pub b1: PermGroup,
    /// `t_i` with `Δ₁^{t_i} = Δ_i`, `t_1 = 1`.
    pub transversal: Vec<Permutation>,
    pub transversal_in_b: bool,
    pub wreath: WreathGroup,
    pub a_hat: PermGroup,
    pub b_hat: PermGroup,
    /// `φ(A) = Â ∩ φ(G)`; `None` when `A` is not the full stabiliser of `α`.
    pub phi_a_check: Option<bool>,
    /// `φ(B) ≤ B₀ ≀ B₁`; `None` when `B₁` is intransitive.
    pub phi_b_check: Option<bool>,
    local: Vec<usize>,
}

/// Builds the embedding `(φ, ψ)` for a transitive `g` with block system `sigma`.
pub fn embed(g: &PermGroup, sigma: &BlockSystem, a: &PermGroup, b: &PermGroup) -> Result<WreathContext> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    sigma.check_invariant(g)?;
    a.check_subgroup_of(g)?;
    b.check_subgroup_of(g)?;
    let n = g.degree();
    let alpha = (0..n)
        .find(|&p| a.generators().iter().all(|x| x.apply(p) == p))
        .unwrap_or(0);
    let alpha_fixed = a.generators().iter().all(|x| x.apply(alpha) == alpha);
    let sigma = sigma.with_first_block_containing(alpha);
    let delta = sigma.blocks()[0].clone();
    let d = delta.len();
    let l = sigma.num_blocks();
    let mut local = vec![0; n];
    for block in sigma.blocks() {
        for (k, &p) in block.iter().enumerate() {
            local[p] = k;
        }
    }

    let block_images = |h: &PermGroup| -> Vec<Permutation> {
        h.generators()
            .iter()
            .map(|x| sigma.block_image(x).expect("block system is invariant"))
            .collect()
    };
    let g1 = PermGroup::new(l, block_images(g))?;
    let b1 = PermGroup::new(l, block_images(b))?;
    let a1 = g1.stabiliser(0);
    let to_local = |x: &Permutation| -> Permutation {
        Permutation::from_images(delta.iter().map(|&p| local[x.apply(p)]).collect()).expect("block stabiliser")
    };
    let induced = |h: &PermGroup| -> PermGroup {
        let stab = preimage_of_pointwise_stabiliser(n, h.generators(), &block_images(h), &[0]);
        stab.map_generators(d, to_local)
    };
    let g0 = induced(g);
    let a0 = induced(a);
    let b0 = induced(b);

    let transversal_in_b = b1.is_transitive();
    let walker = if transversal_in_b { b } else { g };
    let mut transversal: Vec<Option<Permutation>> = vec![None; l];
    transversal[0] = Some(g.identity());
    let mut queue = vec![0];
    while let Some(i) = queue.pop() {
        let t = transversal[i].clone().unwrap();
        for x in walker.generators() {
            let j = sigma.block_of(x.apply(sigma.blocks()[i][0]));
            if transversal[j].is_none() {
                transversal[j] = Some(t.compose(x));
                queue.push(j);
            }
        }
    }
    let transversal: Vec<Permutation> = transversal
        .into_iter()
        .map(|t| t.expect("transitive on blocks"))
        .collect();

    let wreath = wreath_product(&g0, &g1)?;
    let mut a_parts: Vec<&PermGroup> = vec![&g0; l];
    a_parts[0] = &a0;
    let a_hat = wreath.subgroup(&a_parts, &a1);
    let b_hat = wreath.wreath_subgroup(&b0, &b1);

    let mut wc = WreathContext {
        g: g.clone(),
        a: a.clone(),
        b: b.clone(),
        sigma,
        alpha,
        delta,
        g1,
        g0,
        a0,
        a1,
        b0,
        b1,
        transversal,
        transversal_in_b,
        wreath,
        a_hat,
        b_hat,
        phi_a_check: None,
        phi_b_check: None,
        local,
    };
    let report = wc.verify_embedding(50, 0)?;
    ensure(report.psi_bijective, "ψ is a bijection", String::new)?;
    ensure(report.law_holds, "ψ(ω^g) = ψ(ω)^φ(g)", || {
        report.law_witness.clone().unwrap_or_default()
    })?;
    ensure(report.phi_injective, "φ is injective", String::new)?;

    let phi_g = wc.phi_group(g);
    if alpha_fixed && a.same_as(&g.stabiliser(alpha)) {
        let action = CosetAction::new(wc.wreath.group(), &wc.a_hat)?;
        let meet = action.stabiliser_of_coset(&phi_g, 0);
        let ok = meet.same_as(&wc.phi_group(a));
        ensure(ok, "φ(A) = Â ∩ φ(G)", || meet.generator_strings().join(""))?;
        wc.phi_a_check = Some(ok);
    }
    if transversal_in_b {
        let bad = b.generators().iter().map(|x| wc.phi(x)).find(|y| !wc.b_hat.has(y));
        ensure(bad.is_none(), "φ(B) ≤ B₀ ≀ B₁", || {
            bad.map(|y| y.to_string()).unwrap_or_default()
        })?;
        wc.phi_b_check = Some(true);
    }
    Ok(wc)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub psi_bijective: bool,
    pub law_holds: bool,
    pub law_checks: usize,
    pub law_witness: Option<String>,
    pub phi_injective: bool,
    /// For `B₁` transitive: every `t_i ∈ B` and every `f_g` coordinate of
    /// `g ∈ B` lies in `B₀`.
    pub transversal_in_b: Option<bool>,
}

impl WreathContext {
    pub fn block_size(&self) -> usize {
        self.delta.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.sigma.num_blocks()
    }

    /// `ψ(ω) = (ω^{t_i^{-1}}, i)` for `ω ∈ Δ_i`, as a point of `Δ × Σ`.
    pub fn psi(&self, omega: usize) -> usize {
        let i = self.sigma.block_of(omega);
        let back = self.transversal[i].inverse().apply(omega);
        i * self.block_size() + self.local[back]
    }

    /// `f_g(i) = (t_i g t_{i^g}^{-1})^Δ` in local coordinates.
    pub fn f(&self, g: &Permutation, i: usize) -> Permutation {
        let j = self.block_index_image(g, i);
        let h = self.transversal[i].compose(g).compose(&self.transversal[j].inverse());
        Permutation::from_images(self.delta.iter().map(|&p| self.local[h.apply(p)]).collect())
            .expect("coordinate stabilises Δ₁")
    }

    fn block_index_image(&self, g: &Permutation, i: usize) -> usize {
        self.sigma.block_of(g.apply(self.sigma.blocks()[i][0]))
    }

    /// `φ(g) = f_g g^Σ`.
    pub fn phi(&self, g: &Permutation) -> Permutation {
        let d = self.block_size();
        let l = self.num_blocks();
        let mut images = vec![0; d * l];
        for i in 0..l {
            let j = self.block_index_image(g, i);
            let f = self.f(g, i);
            for delta in 0..d {
                images[i * d + delta] = j * d + f.apply(delta);
            }
        }
        Permutation::from_images(images).expect("φ(g) is a permutation")
    }

    pub fn phi_group(&self, h: &PermGroup) -> PermGroup {
        h.map_generators(self.wreath.degree(), |x| self.phi(x))
    }

    /// `T₀ = (G₀, A₀, B₀)`.
    pub fn t0(&self) -> Result<TripleFactorisation> {
        TripleFactorisation::new(self.g0.clone(), self.a0.clone(), self.b0.clone())
    }

    /// `T₁ = (G₁, A₁, B₁)`.
    pub fn t1(&self) -> Result<TripleFactorisation> {
        TripleFactorisation::new(self.g1.clone(), self.a1.clone(), self.b1.clone())
    }

    /// Checks the permutation-embedding law on every point for each generator
    /// and `samples` seeded random elements.
    pub fn verify_embedding(&self, samples: usize, seed: u64) -> Result<EmbeddingReport> {
        let n = self.g.degree();
        let psi: Vec<usize> = (0..n).map(|w| self.psi(w)).collect();
        let psi_bijective = psi.iter().collect::<HashSet<_>>().len() == n && n == self.wreath.degree();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut elems: Vec<Permutation> = self.g.generators().to_vec();
        elems.extend((0..samples).map(|_| self.g.random_element(&mut rng)));
        let mut law_witness = None;
        for x in &elems {
            let px = self.phi(x);
            if let Some(w) = (0..n).find(|&w| psi[x.apply(w)] != px.apply(psi[w])) {
                law_witness = Some(format!("g = {x}, ω = {}", w + 1));
                break;
            }
        }
        let phi_injective = self.phi_group(&self.g).order() == self.g.order();
        let transversal_in_b = if self.transversal_in_b {
            let t_ok = self.transversal.iter().all(|t| self.b.has(t));
            let f_ok = self
                .b
                .generators()
                .iter()
                .all(|x| (0..self.num_blocks()).all(|i| self.b0.has(&self.f(x, i))));
            Some(t_ok && f_ok)
        } else {
            None
        };
        Ok(EmbeddingReport {
            psi_bijective,
            law_holds: law_witness.is_none(),
            law_checks: elems.len(),
            law_witness,
            phi_injective,
            transversal_in_b,
        })
    }
}

/// `(B ∩ G_{Δ_i})^{Δ_i}` for each block, in the local coordinates of `Δ_i`.
pub fn block_stabiliser_images(b: &PermGroup, sigma: &BlockSystem) -> Result<Vec<PermGroup>> {
    sigma.check_invariant(b)?;
    let images: Vec<Permutation> = b
        .generators()
        .iter()
        .map(|x| sigma.block_image(x).expect("invariant"))
        .collect();
    let d = sigma.block_size();
    Ok(sigma
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let stab = preimage_of_pointwise_stabiliser(b.degree(), b.generators(), &images, &[i]);
            stab.map_generators(d, |x| {
                let images = block
                    .iter()
                    .map(|&p| block.binary_search(&x.apply(p)).expect("stabilises the block"))
                    .collect();
                Permutation::from_images(images).unwrap()
            })
        })
        .collect())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EmbeddedTripleReport {
    /// `T` nondegenerate, `core_G(A) = 1`, `A` the stabiliser of `α`.
    pub hypotheses_hold: bool,
    pub k_hat_is_core_h_of_a: bool,
    pub h_mod_k_order_is_g0: bool,
    pub part_a_status_match: bool,
    pub part_a_isomorphic: Option<bool>,
    pub n_hat_is_core_w_of_h: bool,
    pub part_b_status_match: bool,
    pub part_b_isomorphic: Option<bool>,
    pub t1_degenerate: bool,
    pub part_c: Option<PartC>,
    /// `(T₀ ≀ T₁)|_G = T` when `B` is maximal and `B₁` transitive.
    pub restriction_is_t: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PartC {
    pub t0_nondegenerate: bool,
    pub wreath_nondegenerate: bool,
    pub a_part_is_phi_a: bool,
    pub is_lift: bool,
    pub lift_status: Status,
}

fn iso_or_status(x: &TripleFactorisation, y: &TripleFactorisation) -> Result<(bool, Option<bool>)> {
    let status = x.status()? == y.status()?;
    let iso = if x.g().order() <= DEFAULT_MAX_ISO_ORDER && y.g().order() == x.g().order() {
        Some(are_isomorphic(x, y, DEFAULT_MAX_ISO_ORDER)?)
    } else {
        None
    };
    Ok((status, iso))
}

/// Checks the structure of `T₀ ≀ T₁` built from the induced triples of an
/// embedding: the quotients by `K̂` and `N̂` and the restricted lift.
pub fn verify_embedded_triples(wc: &WreathContext, wt: &WreathTriple) -> Result<EmbeddedTripleReport> {
    if !wt.w.group().same_as(wc.wreath.group()) || wt.w.degree() != wc.wreath.degree() {
        return Err(Error::precondition(
            "the wreath triple must be built from this embedding",
        ));
    }
    let t = TripleFactorisation::new(wc.g.clone(), wc.a.clone(), wc.b.clone())?;
    let hypotheses_hold =
        t.status()? == Status::Nondegenerate && core(&wc.g, &wc.a)?.is_trivial() && wc.phi_a_check == Some(true);

    let k_hat_is_core_h_of_a = core(&wt.h_hat, &wt.a_hat)?.same_as(&wt.k_hat);
    let h_mod_k_order_is_g0 = wt.h_hat.order() / wt.k_hat.order() == wt.t0.g().order();
    let restricted = TripleFactorisation::new(wt.h_hat.clone(), wt.a_hat.clone(), wt.b_hat.intersection(&wt.h_hat)?)?;
    let qa = quotient(&restricted, &wt.k_hat)?;
    let (part_a_status_match, part_a_isomorphic) = iso_or_status(&qa.quotient, &wt.t0)?;

    let n_hat_is_core_w_of_h = core(wt.w.group(), &wt.h_hat)?.same_as(&wt.n_hat);
    let qb = quotient(&wt.triple, &wt.n_hat)?;
    let (part_b_status_match, part_b_isomorphic) = iso_or_status(&qb.quotient, &wt.t1)?;

    if hypotheses_hold {
        ensure(
            k_hat_is_core_h_of_a && h_mod_k_order_is_g0 && part_a_status_match && part_a_isomorphic != Some(false),
            "(T₀≀T₁)|_Ĥ / K̂ ≅ T₀",
            || format!("{:?} vs {:?}", qa.quotient.status(), wt.t0.status()),
        )?;
        ensure(
            n_hat_is_core_w_of_h && part_b_status_match && part_b_isomorphic != Some(false),
            "(T₀≀T₁) / N̂ ≅ T₁",
            || format!("{:?} vs {:?}", qb.quotient.status(), wt.t1.status()),
        )?;
    }

    let t1_degenerate = wt.t1.status()? != Status::Nondegenerate;
    let phi_g = wc.phi_group(&wc.g);
    let part_c = if t1_degenerate && wc.transversal_in_b {
        let a_part = wt.a_hat.intersection(&phi_g)?;
        let b_part = wt.b_hat.intersection(&phi_g)?;
        let phi_a = wc.phi_group(&wc.a);
        let phi_b = wc.phi_group(&wc.b);
        let lift = TripleFactorisation::new(phi_g.clone(), a_part.clone(), b_part.clone())?;
        let c = PartC {
            t0_nondegenerate: wt.t0.status()? == Status::Nondegenerate,
            wreath_nondegenerate: wt.triple.status()? == Status::Nondegenerate,
            a_part_is_phi_a: a_part.same_as(&phi_a),
            is_lift: phi_b.is_subgroup_of(&b_part),
            lift_status: lift.status()?,
        };
        if hypotheses_hold {
            ensure(
                c.t0_nondegenerate
                    && c.wreath_nondegenerate
                    && c.a_part_is_phi_a
                    && c.is_lift
                    && c.lift_status == Status::Nondegenerate,
                "T₁ degenerate gives nondegenerate T₀, T₀≀T₁ and restricted lift",
                || format!("{c:?}"),
            )?;
        }
        Some(c)
    } else {
        None
    };

    let b_maximal =
        wc.b.order() < wc.g.order() && crate::action::is_primitive(CosetAction::new(&wc.g, &wc.b)?.image())?;
    let restriction_is_t = if b_maximal && wc.transversal_in_b {
        let b_part = wt.b_hat.intersection(&phi_g)?;
        let a_part = wt.a_hat.intersection(&phi_g)?;
        let ok = b_part.same_as(&wc.phi_group(&wc.b)) && a_part.same_as(&wc.phi_group(&wc.a));
        if hypotheses_hold {
            ensure(ok, "(T₀ ≀ T₁)|_G = T", || b_part.generator_strings().join(""))?;
        }
        Some(ok)
    } else {
        None
    };

    Ok(EmbeddedTripleReport {
        hypotheses_hold,
        k_hat_is_core_h_of_a,
        h_mod_k_order_is_g0,
        part_a_status_match,
        part_a_isomorphic,
        n_hat_is_core_w_of_h,
        part_b_status_match,
        part_b_isomorphic,
        t1_degenerate,
        part_c,
        restriction_is_t,
    })
}
