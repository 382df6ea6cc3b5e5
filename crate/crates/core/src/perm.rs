//! Permutations of `{0..n-1}` acting on the right.
//!
//! Composition follows the exponent convention `α^{gh} = (α^g)^h`: the
//! product `p * q` applies `p` first and then `q`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection on `{0..degree-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parse(format!(
                    "image list {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::Parse(format!("point {} exceeds degree {degree}", x + 1)));
                }
                if touched[x] {
                    return Err(Error::Parse(format!(
                        "point {} appears twice in a cycle product",
                        x + 1
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Convenience constructor from 1-indexed cycles, as written on paper.
    ///
    /// Panics on malformed input; intended for fixtures.
    pub fn cycles1(degree: usize, cycles: &[&[usize]]) -> Self {
        let zero: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|&x| x - 1).collect()).collect();
        Self::from_cycles(degree, &zero).expect("valid fixture cycles")
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image of `point`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self * other`, i.e. apply `self` then `other`.
    pub fn try_mul(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose(other))
    }

    /// Unchecked product; degrees must agree.
    #[inline]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// Conjugate `x^{-1} self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().compose(self).compose(x)
    }

    /// Element order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Relabels into `degree` points, shifting every point by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }

    /// Restriction to the first `degree` points; those must be invariant.
    pub fn truncate(&self, degree: usize) -> Permutation {
        let images: Vec<u32> = self.images[..degree].to_vec();
        debug_assert!(images.iter().all(|&x| (x as usize) < degree));
        Permutation { images }
    }

    /// Concatenation acting on the disjoint union of the two domains.
    pub fn disjoint_sum(&self, other: &Permutation) -> Permutation {
        let n = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + n));
        Permutation { images }
    }

    /// 1-indexed cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_product_is_three_cycle() {
        let p = Permutation::cycles1(3, &[&[1, 2]]);
        let q = Permutation::cycles1(3, &[&[2, 3]]);
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1  (0-indexed)
        let r = p.try_mul(&q).unwrap();
        assert_eq!(r, Permutation::cycles1(3, &[&[1, 3, 2]]));
        assert_eq!(r.apply(0), 2);
    }

    #[test]
    fn identity_law() {
        let p = Permutation::cycles1(5, &[&[1, 2, 3, 4, 5]]);
        let e = Permutation::identity(5);
        assert_eq!(&p * &e, p);
        assert_eq!(&e * &p, p);
    }

    #[test]
    fn five_cycle_square() {
        let p = Permutation::cycles1(5, &[&[1, 2, 3, 4, 5]]);
        assert_eq!(p.pow(2), Permutation::cycles1(5, &[&[1, 3, 5, 2, 4]]));
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(
            p.try_mul(&q),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn cycle_string_round_trip() {
        let p = Permutation::cycles1(7, &[&[3, 5], &[6, 7]]);
        assert_eq!(p.to_cycle_string(), "(3,5)(6,7)");
        assert_eq!(Permutation::identity(4).to_cycle_string(), "()");
    }

    #[test]
    fn inverse_and_conjugation() {
        let p = Permutation::cycles1(5, &[&[1, 2, 3]]);
        let x = Permutation::cycles1(5, &[&[3, 4]]);
        assert!((&p * &p.inverse()).is_identity());
        assert_eq!(p.conjugate_by(&x), Permutation::cycles1(5, &[&[1, 2, 4]]));
    }
}
