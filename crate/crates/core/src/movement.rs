//! Movement of a set under a permutation action, the order bounds for
//! nondegenerate triple factorisations, and 2-design certificates.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::action::CosetAction;
use crate::error::{ceiling, ensure, Error, Result};
use crate::factorisation::{Status, TripleFactorisation};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default ceiling on the number of distinct translates of a set.
pub const DEFAULT_MAX_TRANSLATES: u128 = 1_000_000;

/// The distinct images `Γ^x`, each sorted, with `Γ` first.
///
/// Images of `Γ` depend only on the right coset of the setwise stabiliser,
/// so this is an orbit computation on sets rather than a sweep over `G`.
pub fn set_translates(gens: &[Permutation], gamma: &[usize], limit: u128) -> Result<Vec<Vec<usize>>> {
    let mut start = gamma.to_vec();
    start.sort_unstable();
    start.dedup();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(start.clone());
    let mut out = vec![start];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let mut img: Vec<usize> = out[i].iter().map(|&p| g.apply(p)).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                out.push(img);
                ceiling("number of set translates", limit, out.len() as u128)?;
            }
        }
        i += 1;
    }
    Ok(out)
}

fn sorted_difference_len(a: &[usize], b: &[usize]) -> usize {
    let mut j = 0;
    let mut count = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            count += 1;
        }
    }
    count
}

/// `max_x |Γ^x \ Γ|` over the group generated by `gens`.
pub fn move_under(gens: &[Permutation], gamma: &[usize], limit: u128) -> Result<usize> {
    let translates = set_translates(gens, gamma, limit)?;
    let base = &translates[0];
    Ok(translates
        .iter()
        .map(|t| sorted_difference_len(t, base))
        .max()
        .unwrap_or(0))
}

/// Movement of a set of points under the natural action of `g`.
pub fn move_points(g: &PermGroup, gamma: &[usize]) -> Result<usize> {
    check_gamma(gamma, g.degree())?;
    move_under(g.generators(), gamma, DEFAULT_MAX_TRANSLATES)
}

/// Movement of a set of coset indices under a coset action.
pub fn move_cosets(action: &CosetAction, gamma: &[usize]) -> Result<usize> {
    check_gamma(gamma, action.len())?;
    move_under(action.generator_images(), gamma, DEFAULT_MAX_TRANSLATES)
}

fn check_gamma(gamma: &[usize], n: usize) -> Result<()> {
    if gamma.is_empty() {
        return Err(Error::precondition("the moved set must be nonempty"));
    }
    if let Some(&p) = gamma.iter().find(|&&p| p >= n) {
        return Err(Error::precondition(format!("point {} is outside the domain", p + 1)));
    }
    Ok(())
}

fn ratio_as_string<S: Serializer>(r: &Ratio<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A 2-(v,k,λ) design with the flag-transitivity of a given group.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DesignCertificate {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub num_blocks: usize,
    /// 1-indexed point lists.
    pub blocks: Vec<Vec<usize>>,
    pub symmetric: bool,
    pub flag_transitive: bool,
    pub is_projective_plane: bool,
}

/// Checks that `blocks` form a 2-design on `points` points and whether `g`
/// (acting on the same points) is flag-transitive on it.
pub fn verify_design(points: usize, blocks: &[Vec<usize>], g: &PermGroup) -> Result<DesignCertificate> {
    if points < 2 {
        return Err(Error::NotADesign("fewer than two points".into()));
    }
    if blocks.is_empty() {
        return Err(Error::NotADesign("no blocks".into()));
    }
    if g.degree() != points {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: points,
        });
    }
    let mut sorted: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    sorted.sort();
    sorted.dedup();
    let k = sorted[0].len();
    if sorted.iter().any(|b| b.len() != k) {
        return Err(Error::NotADesign("blocks differ in size".into()));
    }
    if sorted.iter().flatten().any(|&p| p >= points) {
        return Err(Error::NotADesign("block point outside the domain".into()));
    }
    let mut cover = vec![0usize; points * points];
    for b in &sorted {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                cover[x * points + y] += 1;
            }
        }
    }
    let lambda = cover[1];
    for x in 0..points {
        for y in x + 1..points {
            if cover[x * points + y] != lambda {
                return Err(Error::NotADesign(format!(
                    "pair {{{},{}}} lies in {} blocks but pair {{1,2}} lies in {lambda}",
                    x + 1,
                    y + 1,
                    cover[x * points + y]
                )));
            }
        }
    }
    if lambda == 0 {
        return Err(Error::NotADesign("no pair is covered".into()));
    }

    let index: HashMap<&Vec<usize>, usize> = sorted.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut block_images: Vec<Vec<usize>> = Vec::new();
    let mut preserved = true;
    for gen in g.generators() {
        let mut imgs = Vec::with_capacity(sorted.len());
        for b in &sorted {
            let mut img: Vec<usize> = b.iter().map(|&p| gen.apply(p)).collect();
            img.sort_unstable();
            match index.get(&img) {
                Some(&j) => imgs.push(j),
                None => {
                    preserved = false;
                    break;
                }
            }
        }
        if !preserved {
            break;
        }
        block_images.push(imgs);
    }
    let flags: usize = sorted.len() * k;
    let flag_transitive = preserved && {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let start = (sorted[0][0], 0);
        seen.insert(start);
        let mut queue = vec![start];
        while let Some((p, b)) = queue.pop() {
            for (gen, imgs) in g.generators().iter().zip(&block_images) {
                let next = (gen.apply(p), imgs[b]);
                if seen.insert(next) {
                    queue.push(next);
                }
            }
        }
        seen.len() == flags
    };
    let symmetric = sorted.len() == points;
    let is_projective_plane = symmetric && lambda == 1 && k >= 3 && points == k * k - k + 1;
    Ok(DesignCertificate {
        v: points,
        k,
        lambda,
        num_blocks: sorted.len(),
        blocks: sorted.iter().map(|b| b.iter().map(|p| p + 1).collect()).collect(),
        symmetric,
        flag_transitive,
        is_projective_plane,
    })
}

/// Movement data and order bounds for a triple factorisation.
#[derive(Clone, Debug, Serialize)]
pub struct MovementReport {
    /// `|β^A| = |A|/|A∩B|`.
    pub k: usize,
    /// `move(β^A)` in `Ω_B`.
    pub m: usize,
    pub omega_b_size: usize,
    pub order_g: u128,
    /// `|B|(k²−m)/(k−m)`.
    #[serde(serialize_with = "ratio_as_string")]
    pub bound_general: Ratio<i128>,
    /// `|B|(k²−k+1)`.
    pub bound_plane: i128,
    pub numeric_equality_general: bool,
    pub numeric_equality_plane: bool,
    /// Numeric equality backed by a verified symmetric design.
    pub equality_general: bool,
    /// Numeric equality backed by a verified flag-transitive projective plane.
    pub equality_plane: bool,
    pub nondegenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DesignCertificate>,
}

/// Builds the movement report for a nontrivial triple factorisation.
pub fn movement_report(t: &TripleFactorisation) -> Result<MovementReport> {
    let status = t.status()?;
    match status {
        Status::NotFactorisation => {
            return Err(Error::precondition("not a triple factorisation"));
        }
        Status::Trivial if t.b().order() == t.g().order() => {
            return Err(Error::precondition("B = G leaves a single coset"));
        }
        _ => {}
    }
    let action = CosetAction::new(t.g(), t.b())?;
    let gamma = action.orbit_of(t.a(), 0);
    let translates = set_translates(action.generator_images(), &gamma, DEFAULT_MAX_TRANSLATES)?;
    let k = gamma.len();
    let m = translates
        .iter()
        .map(|x| sorted_difference_len(x, &translates[0]))
        .max()
        .unwrap_or(0);
    ensure(
        k as u128 == t.a().order() / t.intersection().order(),
        "|β^A| = |A|/|A∩B|",
        || format!("k = {k}"),
    )?;
    ensure(m < k, "a triple factorisation has restricted movement", || {
        format!("m = {m}, k = {k}")
    })?;
    let nondegenerate = status == Status::Nondegenerate;
    ensure(nondegenerate == (m >= 1), "nondegenerate iff move(β^A) ≥ 1", || {
        format!("status {status:?}, m = {m}")
    })?;

    let b = t.b().order() as i128;
    let (ki, mi) = (k as i128, m as i128);
    let bound_general = Ratio::new(b * (ki * ki - mi), ki - mi);
    let bound_plane = b * (ki * ki - ki + 1);
    let order = t.g().order() as i128;
    if nondegenerate {
        ensure(
            Ratio::from_integer(order) <= bound_general && bound_general <= Ratio::from_integer(bound_plane),
            "|G| ≤ bound_general ≤ bound_plane",
            || format!("|G| = {order}, bounds {bound_general}, {bound_plane}"),
        )?;
    }
    let numeric_equality_general = bound_general == Ratio::from_integer(order);
    let numeric_equality_plane = bound_plane == order;

    let certificate = if nondegenerate && (numeric_equality_general || numeric_equality_plane) {
        verify_design(action.len(), &translates, action.image()).ok()
    } else {
        None
    };
    let equality_general = numeric_equality_general
        && certificate
            .as_ref()
            .is_some_and(|c| c.symmetric && c.k == k && c.lambda == k - m && c.flag_transitive);
    let equality_plane = numeric_equality_plane
        && certificate
            .as_ref()
            .is_some_and(|c| c.is_projective_plane && c.flag_transitive);

    Ok(MovementReport {
        k,
        m,
        omega_b_size: action.len(),
        order_g: t.g().order(),
        bound_general,
        bound_plane,
        numeric_equality_general,
        numeric_equality_plane,
        equality_general,
        equality_plane,
        nondegenerate,
        certificate,
    })
}
