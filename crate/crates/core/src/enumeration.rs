//! Exhaustive generation of the isomorphism classes of `n`-dessins of degree `d`.
//!
//! The search fixes `g_0` to one representative per cycle type, takes `g_1` up to
//! conjugation by the centralizer of `g_0`, loops over `g_2 .. g_(n-2)` and
//! forces `g_(n-1)` from the product constraint. Classes are deduplicated by
//! exact canonical forms.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dessin::{DessinClass, MonodromyTuple};
use crate::error::DessinError;
use crate::perm::{all_perms, factorial, partitions, Perm};

/// Largest number of candidate tuples [`enumerate`] will scan.
pub const ENUMERATION_BOUND: u128 = 20_000_000;
/// Largest number of labeled tuples [`count_transitive_tuples`] will scan.
pub const COUNT_BOUND: u128 = 20_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationResult {
    pub n: usize,
    pub d: usize,
    /// Sorted by canonical encoding.
    pub classes: Vec<DessinClass>,
    /// Number of labeled valid tuples, `sum d! / |Aut|` over the classes.
    pub marked_count: u128,
}

impl EnumerationResult {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn tuples(&self) -> impl Iterator<Item = &MonodromyTuple> {
        self.classes.iter().map(|c| &c.canonical)
    }
}

fn check_shape(n: usize, d: usize) -> Result<(), DessinError> {
    if n < 3 {
        return Err(DessinError::Malformed(format!("need n >= 3, got {n}")));
    }
    if d == 0 {
        return Err(DessinError::Malformed("degree must be at least 1".into()));
    }
    Ok(())
}

fn candidate_count(n: usize, d: usize) -> Option<u128> {
    let f = factorial(d.min(34));
    let mut total = partitions(d).len() as u128;
    for _ in 0..n - 2 {
        total = total.checked_mul(f)?;
    }
    Some(total)
}

/// The centralizer of `g` in `Sym(d)`, by scanning all of `Sym(d)`.
fn centralizer(g: &Perm, perms: &[Perm]) -> Vec<Perm> {
    perms.iter().filter(|c| c.then(g) == g.then(c)).cloned().collect()
}

/// Whether `g` is the least element of its orbit under conjugation by `group`.
fn is_orbit_minimal(g: &Perm, group: &[Perm]) -> bool {
    group.iter().all(|c| g.conjugate_by(c) >= *g)
}

/// All isomorphism classes of valid `(n, d)` tuples, sorted by canonical encoding.
///
/// Supported while `p(d) * (d!)^(n-2)` stays below [`ENUMERATION_BOUND`];
/// this covers `n = 3, d <= 8` and `n = 4, d <= 5`.
pub fn enumerate(n: usize, d: usize) -> Result<EnumerationResult, DessinError> {
    check_shape(n, d)?;
    match candidate_count(n, d) {
        Some(c) if c <= ENUMERATION_BOUND => {}
        _ => {
            return Err(DessinError::BoundExceeded {
                n,
                d,
                reason: format!("more than {ENUMERATION_BOUND} candidate tuples"),
            })
        }
    }

    let perms = all_perms(d);
    let mut seeds: Vec<(Perm, Perm)> = Vec::new();
    for part in partitions(d) {
        let g0 = Perm::from_cycle_type(&part);
        let cent = centralizer(&g0, &perms);
        seeds.extend(
            perms
                .iter()
                .filter(|g1| is_orbit_minimal(g1, &cent))
                .map(|g1| (g0.clone(), g1.clone())),
        );
    }

    let found: BTreeMap<MonodromyTuple, usize> = seeds
        .par_iter()
        .fold(BTreeMap::new, |mut acc, (g0, g1)| {
            let prefix = g0.then(g1);
            let mut middle = Vec::with_capacity(n - 3);
            extend(n, &perms, g0, g1, &prefix, &mut middle, &mut acc);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        });

    let d_fact = factorial(d);
    let marked_count = found.values().map(|&aut| d_fact / aut as u128).sum();
    let classes = found
        .into_iter()
        .map(|(canonical, automorphisms)| DessinClass {
            genus: canonical.genus().expect("canonical forms are valid"),
            profile: canonical.cycle_profile(),
            normal: automorphisms == d,
            canonical,
            automorphisms,
        })
        .collect();
    Ok(EnumerationResult { n, d, classes, marked_count })
}

fn extend(
    n: usize,
    perms: &[Perm],
    g0: &Perm,
    g1: &Perm,
    prefix: &Perm,
    middle: &mut Vec<Perm>,
    acc: &mut BTreeMap<MonodromyTuple, usize>,
) {
    if middle.len() == n - 3 {
        let mut tuple = Vec::with_capacity(n);
        tuple.push(g0.clone());
        tuple.push(g1.clone());
        tuple.extend(middle.iter().cloned());
        tuple.push(prefix.inverse());
        let t = MonodromyTuple::new(tuple).expect("shape is fixed");
        if t.orbit_size_of_zero() == t.d() {
            let (canonical, aut) = t.canonical_with_automorphisms();
            acc.insert(canonical, aut);
        }
        return;
    }
    for g in perms {
        middle.push(g.clone());
        extend(n, perms, g0, g1, &prefix.then(g), middle, acc);
        middle.pop();
    }
}

/// Number of labeled valid tuples, by direct backtracking over `(g_0, .., g_(n-2))`
/// with the last entry forced. Supported while `(d!)^(n-1)` stays below [`COUNT_BOUND`].
pub fn count_transitive_tuples(n: usize, d: usize) -> Result<u128, DessinError> {
    check_shape(n, d)?;
    let f = factorial(d.min(34));
    let within = (0..n - 1)
        .try_fold(1u128, |acc, _| acc.checked_mul(f))
        .is_some_and(|c| c <= COUNT_BOUND);
    if !within {
        return Err(DessinError::BoundExceeded {
            n,
            d,
            reason: format!("more than {COUNT_BOUND} labeled tuples"),
        });
    }
    let perms = all_perms(d);
    let total = perms
        .par_iter()
        .map(|g0| {
            let mut stack = vec![g0.clone()];
            count_rec(n, &perms, g0, &mut stack)
        })
        .sum();
    Ok(total)
}

fn count_rec(n: usize, perms: &[Perm], prefix: &Perm, stack: &mut Vec<Perm>) -> u128 {
    if stack.len() == n - 1 {
        stack.push(prefix.inverse());
        let transitive = orbit_of_zero(stack) == prefix.degree();
        stack.pop();
        return transitive as u128;
    }
    let mut total = 0;
    for g in perms {
        stack.push(g.clone());
        total += count_rec(n, perms, &prefix.then(g), stack);
        stack.pop();
    }
    total
}

fn orbit_of_zero(gens: &[Perm]) -> usize {
    let d = gens[0].degree();
    let mut seen = vec![false; d];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Number of index-`d` subgroups of the free group of rank `r`, by Hall's recursion
/// `N_d = d (d!)^(r-1) - sum_{i<d} ((d-i)!)^(r-1) N_i`.
pub fn hall_count(r: usize, d: usize) -> Result<BigUint, DessinError> {
    if r == 0 || d == 0 {
        return Err(DessinError::Malformed(format!("need r, d >= 1, got r = {r}, d = {d}")));
    }
    let exp = u32::try_from(r - 1)
        .map_err(|_| DessinError::Malformed(format!("rank {r} too large")))?;
    let mut fact = vec![BigUint::one()];
    for k in 1..=d {
        let next = &fact[k - 1] * BigUint::from(k);
        fact.push(next);
    }
    let mut counts: Vec<BigUint> = vec![BigUint::zero()];
    for k in 1..=d {
        let mut nk = BigUint::from(k) * fact[k].pow(exp);
        for i in 1..k {
            nk -= fact[k - i].pow(exp) * &counts[i];
        }
        counts.push(nk);
    }
    Ok(counts.pop().expect("d >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate(3, 1).unwrap().len(), 1);
        assert_eq!(enumerate(3, 2).unwrap().len(), 3);
        assert_eq!(enumerate(4, 2).unwrap().len(), 7);
    }

    #[test]
    fn hall_examples() {
        assert_eq!(hall_count(2, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(hall_count(2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(hall_count(3, 2).unwrap(), BigUint::from(7u32));
        // index-3 subgroups of F_2: 13
        assert_eq!(hall_count(2, 3).unwrap(), BigUint::from(13u32));
    }

    #[test]
    fn counts_small() {
        assert_eq!(count_transitive_tuples(3, 1).unwrap(), 1);
        assert_eq!(count_transitive_tuples(3, 2).unwrap(), 3);
        assert_eq!(count_transitive_tuples(4, 2).unwrap(), 7);
    }

    #[test]
    fn bounds_are_reported() {
        assert!(matches!(enumerate(3, 12), Err(DessinError::BoundExceeded { .. })));
        assert!(matches!(count_transitive_tuples(4, 7), Err(DessinError::BoundExceeded { .. })));
        assert!(enumerate(2, 1).is_err());
    }
}
