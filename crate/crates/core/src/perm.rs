//! Permutations of `{0, .., d-1}` stored as image vectors.
//!
//! Composition is read left to right throughout the crate: `a.then(&b)` applies
//! `a` first, so `a.then(&b).apply(i) == b.apply(a.apply(i))`. A monodromy tuple
//! `(g_0, .., g_{n-1})` satisfies `g_0.then(g_1)...then(g_{n-1}) == id`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DessinError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Perm {
        Perm((0..d).collect())
    }

    /// Builds a permutation from its image vector, rejecting anything that is
    /// not a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, DessinError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d {
                return Err(DessinError::Malformed(format!(
                    "image {x} out of range for degree {d}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(DessinError::Malformed(format!(
                    "image {x} repeated, not a bijection"
                )));
            }
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `0..d` from disjoint cycles.
    ///
    /// `Perm::from_cycles(3, &[&[0, 1]])` is the transposition `(0 1)`.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Perm, DessinError> {
        let mut images: Vec<usize> = (0..d).collect();
        let mut touched = vec![false; d];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= d || std::mem::replace(&mut touched[x], true) {
                    return Err(DessinError::Malformed(format!(
                        "cycle entry {x} out of range or repeated"
                    )));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// `c^-1 . self . c`, i.e. the permutation `c(i) -> c(self(i))`.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[c.0[i]] = c.0[x];
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// The permutation `0 -> 1 -> .. -> k-1 -> 0` on each block of a partition,
    /// blocks laid out consecutively. One representative per conjugacy class.
    pub fn from_cycle_type(parts: &[usize]) -> Perm {
        let d = parts.iter().sum();
        let mut images = Vec::with_capacity(d);
        let mut offset = 0;
        for &len in parts {
            for k in 0..len {
                images.push(offset + (k + 1) % len);
            }
            offset += len;
        }
        Perm(images)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation, fixed points omitted; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Integer partitions of `d` in reverse lexicographic order, parts decreasing.
pub fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// All `d!` permutations of `0..d` in lexicographic order of image vectors.
pub fn all_perms(d: usize) -> Vec<Perm> {
    use itertools::Itertools;
    (0..d).permutations(d).map(Perm).collect()
}

pub fn factorial(d: usize) -> u128 {
    (1..=d as u128).product()
}
