//! Monodromy tuples: the exact combinatorial form of an `n`-dessin of degree `d`.
//!
//! A tuple holds one permutation `g_nu` of the fiber `{0, .., d-1}` per marked
//! point `P_nu`, `nu` in `Z/nZ`. Valid tuples multiply to the identity
//! (left-to-right, see [`crate::perm`]) and generate a transitive group.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DessinError;
use crate::perm::Perm;
use crate::SCHEMA;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonodromyTuple {
    d: usize,
    perms: Vec<Perm>,
}

/// Outcome of [`MonodromyTuple::validate`]. Only the first violated invariant is reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Diagnostic {
    Ok,
    ProductNotIdentity { product: Vec<usize> },
    Intransitive { orbit_of_zero: usize },
}

impl Diagnostic {
    pub fn is_ok(&self) -> bool {
        matches!(self, Diagnostic::Ok)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Ok => write!(f, "ok"),
            Diagnostic::ProductNotIdentity { product } => {
                write!(f, "product constraint violated: g_0 ... g_(n-1) = {product:?}")
            }
            Diagnostic::Intransitive { orbit_of_zero } => {
                write!(f, "transitivity violated: orbit of 0 has size {orbit_of_zero}")
            }
        }
    }
}

/// Cycle types of the `g_nu`, one partition of `d` per color, parts decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RamificationProfile(pub Vec<Vec<usize>>);

impl RamificationProfile {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Riemann-Hurwitz defect `sum_nu (d - #cycles(g_nu))`.
    pub fn ramification_total(&self) -> usize {
        self.0.iter().map(|p| p.iter().map(|&k| k - 1).sum::<usize>()).sum()
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, part) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, x) in part.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An isomorphism class of dessins together with its basic invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinClass {
    pub canonical: MonodromyTuple,
    pub genus: usize,
    pub profile: RamificationProfile,
    pub normal: bool,
    /// Order of the centralizer of the tuple in `Sym(d)`, i.e. of the deck group.
    pub automorphisms: usize,
}

impl DessinClass {
    pub fn of(t: &MonodromyTuple) -> Result<DessinClass, DessinError> {
        t.require_valid()?;
        let (canonical, automorphisms) = t.canonical_with_automorphisms();
        Ok(DessinClass {
            genus: canonical.genus_unchecked(),
            profile: canonical.cycle_profile(),
            normal: automorphisms == canonical.d,
            canonical,
            automorphisms,
        })
    }
}

impl MonodromyTuple {
    /// Structural constructor: `n >= 3`, `d >= 1`, every entry a bijection of `0..d`.
    /// Does not check the product or transitivity invariants; see [`Self::validate`].
    pub fn new(perms: Vec<Perm>) -> Result<MonodromyTuple, DessinError> {
        if perms.len() < 3 {
            return Err(DessinError::Malformed(format!(
                "need at least 3 marked points, got {}",
                perms.len()
            )));
        }
        let d = perms[0].degree();
        if d == 0 {
            return Err(DessinError::Malformed("degree 0 is not a covering".into()));
        }
        if let Some(bad) = perms.iter().find(|p| p.degree() != d) {
            return Err(DessinError::Malformed(format!(
                "permutations of different degrees {} and {}",
                d,
                bad.degree()
            )));
        }
        Ok(MonodromyTuple { d, perms })
    }

    pub fn from_images(images: Vec<Vec<usize>>) -> Result<MonodromyTuple, DessinError> {
        let perms = images
            .into_iter()
            .map(Perm::from_images)
            .collect::<Result<Vec<_>, _>>()?;
        MonodromyTuple::new(perms)
    }

    /// [`Self::new`] followed by [`Self::validate`].
    pub fn checked(perms: Vec<Perm>) -> Result<MonodromyTuple, DessinError> {
        let t = MonodromyTuple::new(perms)?;
        t.require_valid()?;
        Ok(t)
    }

    /// The degree-1 tuple with `n` marked points.
    pub fn trivial(n: usize) -> MonodromyTuple {
        assert!(n >= 3);
        MonodromyTuple { d: 1, perms: vec![Perm::identity(1); n] }
    }

    pub fn n(&self) -> usize {
        self.perms.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn perm(&self, nu: usize) -> &Perm {
        &self.perms[nu]
    }

    pub fn product(&self) -> Perm {
        self.perms
            .iter()
            .fold(Perm::identity(self.d), |acc, g| acc.then(g))
    }

    /// Size of the orbit of 0 under the generated group.
    pub fn orbit_size_of_zero(&self) -> usize {
        let mut seen = vec![false; self.d];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for g in &self.perms {
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

    pub fn validate(&self) -> Diagnostic {
        let product = self.product();
        if !product.is_identity() {
            return Diagnostic::ProductNotIdentity { product: product.into_images() };
        }
        let orbit = self.orbit_size_of_zero();
        if orbit != self.d {
            return Diagnostic::Intransitive { orbit_of_zero: orbit };
        }
        Diagnostic::Ok
    }

    pub fn require_valid(&self) -> Result<(), DessinError> {
        match self.validate() {
            Diagnostic::Ok => Ok(()),
            diag => Err(DessinError::InvalidTuple(diag)),
        }
    }

    /// Simultaneous relabeling: the tuple `pi^-1 g_nu pi`, where `pi` sends old labels to new ones.
    pub fn relabel(&self, pi: &Perm) -> MonodromyTuple {
        MonodromyTuple {
            d: self.d,
            perms: self.perms.iter().map(|g| g.conjugate_by(pi)).collect(),
        }
    }

    /// Relabeling by breadth-first discovery order from `base`, scanning
    /// `g_0, g_0^-1, g_1, g_1^-1, ..` at each vertex. `None` if not every
    /// point is reached.
    fn bfs_labeling(&self, base: usize, inverses: &[Perm]) -> Option<Perm> {
        const UNSET: usize = usize::MAX;
        let mut label = vec![UNSET; self.d];
        let mut queue = VecDeque::with_capacity(self.d);
        label[base] = 0;
        let mut next = 1;
        queue.push_back(base);
        while let Some(x) = queue.pop_front() {
            for (g, ginv) in self.perms.iter().zip(inverses) {
                for y in [g.apply(x), ginv.apply(x)] {
                    if label[y] == UNSET {
                        label[y] = next;
                        next += 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        (next == self.d).then(|| Perm::from_images(label).expect("bfs labeling is a bijection"))
    }

    /// Canonical representative together with the number of base points that
    /// realize it, which for a transitive tuple is the centralizer order.
    pub fn canonical_with_automorphisms(&self) -> (MonodromyTuple, usize) {
        let inverses: Vec<Perm> = self.perms.iter().map(Perm::inverse).collect();
        let mut best: Option<MonodromyTuple> = None;
        let mut hits = 0;
        for base in 0..self.d {
            let Some(pi) = self.bfs_labeling(base, &inverses) else {
                continue;
            };
            let candidate = self.relabel(&pi);
            match best.as_ref().map(|b| candidate.cmp(b)) {
                None | Some(std::cmp::Ordering::Less) => {
                    best = Some(candidate);
                    hits = 1;
                }
                Some(std::cmp::Ordering::Equal) => hits += 1,
                Some(std::cmp::Ordering::Greater) => {}
            }
        }
        (best.expect("transitive tuple has a labeling"), hits)
    }

    /// Lexicographically least BFS relabeling over all base points.
    pub fn canonical_form(&self) -> Result<MonodromyTuple, DessinError> {
        self.require_valid()?;
        Ok(self.canonical_with_automorphisms().0)
    }

    pub fn is_canonical(&self) -> bool {
        self.validate().is_ok() && self.canonical_with_automorphisms().0 == *self
    }

    pub fn isomorphic(&self, other: &MonodromyTuple) -> Result<bool, DessinError> {
        self.require_valid()?;
        other.require_valid()?;
        if self.n() != other.n() || self.d != other.d {
            return Ok(false);
        }
        Ok(self.canonical_with_automorphisms().0 == other.canonical_with_automorphisms().0)
    }

    pub fn cycle_profile(&self) -> RamificationProfile {
        RamificationProfile(self.perms.iter().map(Perm::cycle_type).collect())
    }

    fn genus_unchecked(&self) -> usize {
        let ramification = self.cycle_profile().ramification_total();
        // 2 - 2g = 2d - ramification
        let twice = ramification + 2;
        assert!(
            twice % 2 == 0 && twice >= 2 * self.d,
            "Riemann-Hurwitz gives a non-integral or negative genus"
        );
        (twice - 2 * self.d) / 2
    }

    /// Genus of the covering surface by Riemann-Hurwitz.
    pub fn genus(&self) -> Result<usize, DessinError> {
        self.require_valid()?;
        Ok(self.genus_unchecked())
    }

    /// Whether the covering is normal (Galois): the deck group acts transitively
    /// on the fiber, equivalently the monodromy group has order exactly `d`.
    pub fn is_normal(&self) -> Result<bool, DessinError> {
        self.require_valid()?;
        Ok(self.canonical_with_automorphisms().1 == self.d)
    }

    /// The tuple of the same dessin with the orientation of the surface reversed.
    ///
    /// `g_0 -> g_0^-1` and `g_nu -> h^-1 g_nu^-1 h` with `h = g_(nu+1) ... g_(n-1)`.
    /// This is exactly involutive on tuples, not only on classes.
    pub fn orientation_reverse(&self) -> Result<MonodromyTuple, DessinError> {
        self.require_valid()?;
        let n = self.n();
        let mut out = vec![Perm::identity(self.d); n];
        let mut h = Perm::identity(self.d);
        for nu in (1..n).rev() {
            out[nu] = self.perms[nu].inverse().conjugate_by(&h);
            h = self.perms[nu].then(&h);
        }
        out[0] = self.perms[0].inverse();
        Ok(MonodromyTuple { d: self.d, perms: out })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n(),
            "d": self.d,
            "perms": self.perms.iter().map(Perm::images).collect::<Vec<_>>(),
        })
    }

    /// Parses `{"n": .., "d": .., "perms": [[..], ..]}`, with an optional
    /// `"schema": "dessinry/1"` field. Structure is checked; the product and
    /// transitivity invariants are not.
    pub fn from_json(text: &str) -> Result<MonodromyTuple, DessinError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| DessinError::Malformed(e.to_string()))?;
        MonodromyTuple::from_json_value(&value)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<MonodromyTuple, DessinError> {
        let raw: RawTuple = serde_json::from_value(value.clone())
            .map_err(|e| DessinError::Malformed(e.to_string()))?;
        raw.try_into()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTuple {
    #[serde(default)]
    schema: Option<String>,
    n: usize,
    d: usize,
    perms: Vec<Vec<usize>>,
}

impl TryFrom<RawTuple> for MonodromyTuple {
    type Error = DessinError;

    fn try_from(raw: RawTuple) -> Result<Self, Self::Error> {
        if let Some(schema) = raw.schema.as_deref() {
            if schema != SCHEMA {
                return Err(DessinError::Malformed(format!("unknown schema {schema:?}")));
            }
        }
        if raw.perms.len() != raw.n {
            return Err(DessinError::Malformed(format!(
                "n = {} but {} permutations given",
                raw.n,
                raw.perms.len()
            )));
        }
        if let Some(p) = raw.perms.iter().find(|p| p.len() != raw.d) {
            return Err(DessinError::Malformed(format!(
                "d = {} but a permutation has {} entries",
                raw.d,
                p.len()
            )));
        }
        MonodromyTuple::from_images(raw.perms)
    }
}

impl Serialize for MonodromyTuple {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonodromyTuple {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawTuple::deserialize(deserializer)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for MonodromyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MonodromyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, g) in self.perms.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}
