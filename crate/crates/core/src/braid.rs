//! Mapping-class action on monodromy tuples and orbit closure.
//!
//! A [`Generator`] is an endomorphism table together with an optional inverse
//! table. Orbits are computed on canonical forms; a generator without an
//! inverse is still closed correctly because it permutes the finite set of
//! classes of fixed `(n, d)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::dessin::MonodromyTuple;
use crate::error::DessinError;
use crate::words::{EndomorphismTable, FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub forward: EndomorphismTable,
    pub inverse: Option<EndomorphismTable>,
}

impl Generator {
    pub fn new(forward: EndomorphismTable, inverse: Option<EndomorphismTable>) -> Generator {
        Generator { forward, inverse }
    }

    pub fn label(&self) -> String {
        self.forward.label()
    }

    pub fn n(&self) -> usize {
        self.forward.n
    }
}

pub fn evaluate_word(w: &FreeWord, t: &MonodromyTuple) -> Result<crate::perm::Perm, DessinError> {
    t.require_valid()?;
    w.evaluate(t)
}

pub fn apply_endomorphism(
    e: &EndomorphismTable,
    t: &MonodromyTuple,
) -> Result<MonodromyTuple, DessinError> {
    e.apply(t)
}

fn conj(k: usize, p: &FreeWord) -> FreeWord {
    FreeWord::gen(k).conjugated(p)
}

/// Full twist about the points `i..=j`: `x_k -> P x_k P^-1` for `k` in the
/// interval, with `P = x_i .. x_j`; other letters fixed.
pub fn full_twist(n: usize, i: usize, j: usize) -> Result<Generator, DessinError> {
    if !(i < j && j < n) {
        return Err(DessinError::IndexOutOfRange { index: j, n });
    }
    let p = FreeWord::run(i, j);
    let pinv = p.inverse();
    let forward = (0..n)
        .map(|k| if (i..=j).contains(&k) { conj(k, &p) } else { FreeWord::gen(k) })
        .collect();
    let backward = (0..n)
        .map(|k| if (i..=j).contains(&k) { conj(k, &pinv) } else { FreeWord::gen(k) })
        .collect();
    Ok(Generator::new(
        EndomorphismTable::new(format!("T[{i}..{j}]"), forward)?,
        Some(EndomorphismTable::new(format!("T[{i}..{j}]^-1"), backward)?),
    ))
}

/// Full twists about every run of consecutive points `i..=j` with
/// `2 <= j - i + 1 <= max(2, n - 2)`. Each image is a conjugate of the same letter.
pub fn preset_pure_generators(n: usize) -> Vec<Generator> {
    assert!(n >= 3, "need at least three marked points");
    let max_len = 2.max(n - 2);
    let mut out = Vec::new();
    for len in 2..=max_len {
        for i in 0..=n - len {
            out.push(full_twist(n, i, i + len - 1).expect("interval in range"));
        }
    }
    out
}

/// Word-level forms of the two shears generating the pure action for four points.
///
/// `delta_hor` is the full twist about `x0, x1`. `delta_ver` conjugates `x0`
/// by `Q = x1 x2` and `x3` by `x0^-1`; it agrees with the inverse full twist
/// about `x1, x2` up to an inner automorphism.
pub fn preset_gamma2_generators() -> Vec<Generator> {
    let hor = full_twist(4, 0, 1).expect("n = 4");
    let hor = Generator::new(
        rename(hor.forward, "delta_hor"),
        hor.inverse.map(|t| rename(t, "delta_hor^-1")),
    );
    let q = FreeWord::run(1, 2);
    let x0inv = FreeWord::from_letters(vec![Letter::inv(0)]);
    let ver = EndomorphismTable::new(
        "delta_ver",
        vec![conj(0, &q), FreeWord::gen(1), FreeWord::gen(2), conj(3, &x0inv)],
    )
    .expect("n = 4");
    let w = conj(0, &q.inverse());
    let ver_inv = EndomorphismTable::new(
        "delta_ver^-1",
        vec![w.clone(), FreeWord::gen(1), FreeWord::gen(2), conj(3, &w)],
    )
    .expect("n = 4");
    vec![hor, Generator::new(ver, Some(ver_inv))]
}

fn rename(mut t: EndomorphismTable, name: &str) -> EndomorphismTable {
    t.name = Some(name.into());
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitEdge {
    pub from: usize,
    pub generator: String,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    /// Canonical forms of the seeds, sorted.
    pub seeds: Vec<MonodromyTuple>,
    /// Canonical forms in the closure, sorted.
    pub orbit: Vec<MonodromyTuple>,
    /// Edges between indices of `orbit`, sorted; inverse moves carry a `^-1` label.
    pub generator_log: Vec<OrbitEdge>,
}

impl OrbitResult {
    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn contains(&self, t: &MonodromyTuple) -> bool {
        t.canonical_form()
            .map(|c| self.orbit.binary_search(&c).is_ok())
            .unwrap_or(false)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph orbit {\n");
        for (k, t) in self.orbit.iter().enumerate() {
            let seed = self.seeds.binary_search(t).is_ok();
            let _ = writeln!(
                out,
                "  c{k} [label=\"{}\"{}];",
                t,
                if seed { ", shape=box" } else { "" }
            );
        }
        for e in &self.generator_log {
            let _ = writeln!(out, "  c{} -> c{} [label=\"{}\"];", e.from, e.to, e.generator);
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of `seeds` under `gens` and their inverses, on canonical forms.
pub fn braid_orbit<F>(seeds: &[MonodromyTuple], gens: &[F]) -> Result<OrbitResult, DessinError>
where
    F: ClassMove,
{
    let Some(first) = seeds.first() else {
        return Err(DessinError::Malformed("orbit needs at least one seed".into()));
    };
    let (n, d) = (first.n(), first.d());
    let mut canonical_seeds = BTreeSet::new();
    for s in seeds {
        if (s.n(), s.d()) != (n, d) {
            return Err(DessinError::Mismatch("seeds of different (n, d)".into()));
        }
        canonical_seeds.insert(s.canonical_form()?);
    }
    for g in gens {
        if g.arity() != n {
            return Err(DessinError::Mismatch(format!(
                "generator {} acts on n = {}, seeds have n = {n}",
                g.name(),
                g.arity()
            )));
        }
    }

    let mut seen: BTreeSet<MonodromyTuple> = canonical_seeds.clone();
    let mut frontier: Vec<MonodromyTuple> = canonical_seeds.iter().cloned().collect();
    let mut edges: BTreeSet<(MonodromyTuple, String, MonodromyTuple)> = BTreeSet::new();
    while !frontier.is_empty() {
        let images: Vec<Vec<(String, MonodromyTuple)>> = frontier
            .par_iter()
            .map(|t| {
                let mut out = Vec::new();
                for g in gens {
                    for (label, image) in g.moves(t)? {
                        out.push((label, image.canonical_form()?));
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, DessinError>>()?;
        let mut next = Vec::new();
        for (t, outs) in frontier.iter().zip(images) {
            for (label, image) in outs {
                if seen.insert(image.clone()) {
                    next.push(image.clone());
                }
                edges.insert((t.clone(), label, image));
            }
        }
        next.sort();
        frontier = next;
    }

    let orbit: Vec<MonodromyTuple> = seen.into_iter().collect();
    let index: BTreeMap<&MonodromyTuple, usize> =
        orbit.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut generator_log: Vec<OrbitEdge> = edges
        .iter()
        .map(|(a, label, b)| OrbitEdge { from: index[a], generator: label.clone(), to: index[b] })
        .collect();
    generator_log.sort_by(|x, y| (x.from, &x.generator, x.to).cmp(&(y.from, &y.generator, y.to)));
    Ok(OrbitResult {
        seeds: canonical_seeds.into_iter().collect(),
        orbit,
        generator_log,
    })
}

/// Something that maps a tuple to the tuples reached by one move and its inverse.
pub trait ClassMove: Sync {
    fn name(&self) -> String;
    fn arity(&self) -> usize;
    fn moves(&self, t: &MonodromyTuple) -> Result<Vec<(String, MonodromyTuple)>, DessinError>;
}

impl ClassMove for Generator {
    fn name(&self) -> String {
        self.label()
    }

    fn arity(&self) -> usize {
        self.n()
    }

    fn moves(&self, t: &MonodromyTuple) -> Result<Vec<(String, MonodromyTuple)>, DessinError> {
        let mut out = vec![(self.forward.label(), self.forward.apply(t)?)];
        if let Some(inv) = &self.inverse {
            out.push((inv.label(), inv.apply(t)?));
        }
        Ok(out)
    }
}

impl ClassMove for EndomorphismTable {
    fn name(&self) -> String {
        self.label()
    }

    fn arity(&self) -> usize {
        self.n
    }

    fn moves(&self, t: &MonodromyTuple) -> Result<Vec<(String, MonodromyTuple)>, DessinError> {
        Ok(vec![(self.label(), self.apply(t)?)])
    }
}

/// DOT drawing of a dessin: one node per cycle of each `g_nu` (colored by `nu`),
/// one edge per sheet `i` and color `nu`, joining the `nu`-vertex and the
/// `nu+1`-vertex through which sheet `i` passes.
pub fn dessin_to_dot(t: &MonodromyTuple) -> String {
    const PALETTE: [&str; 8] =
        ["black", "white", "gray", "red", "blue", "green", "orange", "purple"];
    let n = t.n();
    let mut vertex_of = vec![vec![0usize; t.d()]; n];
    let mut out = String::from("graph dessin {\n");
    for (nu, g) in t.perms().iter().enumerate() {
        for (c, cycle) in g.cycles().iter().enumerate() {
            for &i in cycle {
                vertex_of[nu][i] = c;
            }
            let _ = writeln!(
                out,
                "  v{nu}_{c} [label=\"{nu}\", style=filled, fillcolor={}, valence={}];",
                PALETTE[nu % PALETTE.len()],
                cycle.len()
            );
        }
    }
    for i in 0..t.d() {
        for nu in 0..n {
            let mu = (nu + 1) % n;
            let _ = writeln!(
                out,
                "  v{nu}_{} -- v{mu}_{} [label=\"{i}\"];",
                vertex_of[nu][i], vertex_of[mu][i]
            );
        }
    }
    out.push_str("}\n");
    out
}
