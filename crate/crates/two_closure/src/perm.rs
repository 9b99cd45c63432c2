//! Permutations of `{0, …, degree−1}` stored as image tables.
//!
//! Composition is left-to-right: `α^(pq) = (α^p)^q`. The checked entry
//! point is [`Perm::compose`]; the `*` operator is the unchecked variant
//! for internal code where equal degrees hold by construction.

use std::fmt;
use std::ops::Mul;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree).collect() }
    }

    /// Builds from an image table, checking it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &im in &images {
            if im >= degree {
                return Err(Error::PointOutOfRange { point: im, degree });
            }
            if seen[im] {
                return Err(Error::RepeatedPoint { point: im });
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    /// Parses disjoint-cycle notation, e.g. `"(0 1 2)(3 4)"`. Points left
    /// out are fixed; the empty string and `"()"` are the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::MalformedCycleText(format!(
                    "expected '(' at {rest:?}"
                )));
            }
            let close = rest.find(')').ok_or_else(|| {
                Error::MalformedCycleText(format!("unbalanced '(' in {text:?}"))
            })?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split([' ', ',']).filter(|t| !t.is_empty()) {
                let point: usize = tok.parse().map_err(|_| {
                    Error::MalformedCycleText(format!("bad point {tok:?}"))
                })?;
                if point >= degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if used[point] {
                    return Err(Error::RepeatedPoint { point });
                }
                used[point] = true;
                cycle.push(point);
            }
            for (i, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(i + 1) % cycle.len()];
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image `α^p`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Left-to-right composition: apply `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Perm { images }
    }

    /// `x⁻¹ · self · x`, the relabeling of `self` through `x`.
    pub fn conjugate_by(&self, x: &Perm) -> Result<Perm> {
        if self.degree() != x.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: x.degree(),
            });
        }
        let mut images = vec![0; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[x.apply(i)] = x.apply(im);
        }
        Ok(Perm { images })
    }

    /// Element order: the least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles_with_fixed()
            .into_iter()
            .map(|c| c.len() as u128)
            .fold(1u128, lcm)
    }

    /// Nontrivial cycles, each led by its smallest point, sorted by leader.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut pt = self.apply(start);
            while pt != start {
                seen[pt] = true;
                cycle.push(pt);
                pt = self.apply(pt);
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&p| self.apply(p) != p).collect()
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&p| self.apply(p) != p)
    }

    /// Uniformly random permutation (Fisher–Yates).
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Perm {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            images.swap(i, rng.gen_range(0..=i));
        }
        Perm { images }
    }
}

impl Mul for &Perm {
    type Output = Perm;

    /// Unchecked left-to-right composition; panics on degree mismatch.
    fn mul(self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Perm {
            images: self.images.iter().map(|&im| other.images[im]).collect(),
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}/{}]", self.degree())
    }
}

/// All `degree!` permutations in lexicographic image order. Only sensible
/// for small degrees; the brute-force closure engine caps at 9.
pub fn all_perms(degree: usize) -> impl Iterator<Item = Perm> {
    use itertools::Itertools;
    (0..degree)
        .permutations(degree)
        .map(|images| Perm { images })
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}
