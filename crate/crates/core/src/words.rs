//! Words in the free generators `x_0, .., x_(n-1)` and endomorphism tables.
//!
//! Text syntax: letters `x<k>` or `x<k>^-1`, separated by whitespace or `*`;
//! `1` or the empty string is the empty word. Example: `x0 x1 x0^-1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dessin::MonodromyTuple;
use crate::error::DessinError;
use crate::perm::Perm;
use crate::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(index: usize) -> Letter {
        Letter { index, inverse: false }
    }

    pub fn inv(index: usize) -> Letter {
        Letter { index, inverse: true }
    }

    fn flipped(self) -> Letter {
        Letter { index: self.index, inverse: !self.inverse }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn empty() -> FreeWord {
        FreeWord(Vec::new())
    }

    pub fn gen(index: usize) -> FreeWord {
        FreeWord(vec![Letter::gen(index)])
    }

    /// The word `x_i x_(i+1) .. x_j`.
    pub fn run(i: usize, j: usize) -> FreeWord {
        FreeWord((i..=j).map(Letter::gen).collect())
    }

    pub fn from_letters(letters: Vec<Letter>) -> FreeWord {
        FreeWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().map(|l| l.index).max()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.flipped()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        FreeWord(out).reduced()
    }

    /// `w self w^-1`.
    pub fn conjugated(&self, w: &FreeWord) -> FreeWord {
        w.concat(self).concat(&w.inverse())
    }

    /// Free reduction: cancels adjacent `x x^-1` pairs.
    pub fn reduced(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.flipped()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    /// Replaces each `x_k` by `images[k]` and reduces.
    pub fn substitute(&self, images: &[FreeWord]) -> Result<FreeWord, DessinError> {
        let mut out = FreeWord::empty();
        for l in &self.0 {
            let img = images
                .get(l.index)
                .ok_or(DessinError::IndexOutOfRange { index: l.index, n: images.len() })?;
            out = if l.inverse { out.concat(&img.inverse()) } else { out.concat(img) };
        }
        Ok(out)
    }

    /// Substitutes `g_k` for `x_k` and composes left to right.
    pub fn evaluate(&self, t: &MonodromyTuple) -> Result<Perm, DessinError> {
        let n = t.n();
        let mut acc = Perm::identity(t.d());
        for l in &self.0 {
            if l.index >= n {
                return Err(DessinError::IndexOutOfRange { index: l.index, n });
            }
            let g = t.perm(l.index);
            acc = if l.inverse { acc.then(&g.inverse()) } else { acc.then(g) };
        }
        Ok(acc)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.index)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = DessinError;

    fn from_str(s: &str) -> Result<FreeWord, DessinError> {
        let bad = |msg: String| DessinError::Malformed(format!("word {s:?}: {msg}"));
        let mut letters = Vec::new();
        for token in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if token == "1" {
                continue;
            }
            let body = token
                .strip_prefix('x')
                .ok_or_else(|| bad(format!("letter {token:?} does not start with 'x'")))?;
            let (digits, inverse) = match body.split_once('^') {
                None => (body, false),
                Some((digits, "-1")) => (digits, true),
                Some((_, exp)) => return Err(bad(format!("unsupported exponent {exp:?}"))),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(format!("bad generator index in {token:?}")));
            }
            let index = digits.parse().map_err(|_| bad(format!("index {digits:?} too large")))?;
            letters.push(Letter { index, inverse });
        }
        Ok(FreeWord(letters))
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Images of the generators under an endomorphism of the free group on `x_0..x_(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndomorphismTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub images: Vec<FreeWord>,
}

impl EndomorphismTable {
    pub fn new(name: impl Into<String>, images: Vec<FreeWord>) -> Result<Self, DessinError> {
        let table = EndomorphismTable {
            schema: None,
            name: Some(name.into()),
            n: images.len(),
            images,
        };
        table.check()?;
        Ok(table)
    }

    pub fn identity(n: usize) -> EndomorphismTable {
        EndomorphismTable {
            schema: None,
            name: Some("id".into()),
            n,
            images: (0..n).map(FreeWord::gen).collect(),
        }
    }

    /// `x_k -> w x_k w^-1` for every `k`.
    pub fn inner(n: usize, w: &FreeWord) -> Result<EndomorphismTable, DessinError> {
        let images = (0..n).map(|k| FreeWord::gen(k).conjugated(w)).collect();
        EndomorphismTable::new(format!("inner({w})"), images)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "table".into())
    }

    fn check(&self) -> Result<(), DessinError> {
        if self.images.len() != self.n {
            return Err(DessinError::Malformed(format!(
                "n = {} but {} images given",
                self.n,
                self.images.len()
            )));
        }
        for w in &self.images {
            if let Some(index) = w.max_index().filter(|&i| i >= self.n) {
                return Err(DessinError::IndexOutOfRange { index, n: self.n });
            }
        }
        if let Some(schema) = self.schema.as_deref().filter(|s| *s != SCHEMA) {
            return Err(DessinError::Malformed(format!("unknown schema {schema:?}")));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<EndomorphismTable, DessinError> {
        let table: EndomorphismTable =
            serde_json::from_str(text).map_err(|e| DessinError::Malformed(e.to_string()))?;
        table.check()?;
        Ok(table)
    }

    /// Parses either one table or a JSON array of tables.
    pub fn list_from_json(text: &str) -> Result<Vec<EndomorphismTable>, DessinError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| DessinError::Malformed(e.to_string()))?;
        let items = match value {
            serde_json::Value::Array(items) => items,
            other => vec![other],
        };
        items
            .into_iter()
            .map(|v| {
                let table: EndomorphismTable = serde_json::from_value(v)
                    .map_err(|e| DessinError::Malformed(e.to_string()))?;
                table.check()?;
                Ok(table)
            })
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("tables serialize")
    }

    /// Substitution `x_k -> self[k]` with each `x_j` inside replaced by `other[j]`.
    /// On tuples this applies `other` first, then `self`.
    pub fn compose(&self, other: &EndomorphismTable) -> Result<EndomorphismTable, DessinError> {
        if self.n != other.n {
            return Err(DessinError::Mismatch(format!("tables on {} and {} letters", self.n, other.n)));
        }
        let images = self
            .images
            .iter()
            .map(|w| w.substitute(&other.images))
            .collect::<Result<Vec<_>, _>>()?;
        EndomorphismTable::new(format!("{};{}", self.label(), other.label()), images)
    }

    /// `g'_k = evaluate(images[k], t)`; the result must again be a valid tuple.
    pub fn apply(&self, t: &MonodromyTuple) -> Result<MonodromyTuple, DessinError> {
        if self.n != t.n() {
            return Err(DessinError::Mismatch(format!(
                "table on {} letters applied to a tuple with n = {}",
                self.n,
                t.n()
            )));
        }
        t.require_valid()?;
        let perms = self
            .images
            .iter()
            .map(|w| w.evaluate(t))
            .collect::<Result<Vec<_>, _>>()?;
        let out = MonodromyTuple::new(perms)?;
        match out.validate() {
            crate::dessin::Diagnostic::Ok => Ok(out),
            diag => Err(DessinError::InvalidResult(diag)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple() -> MonodromyTuple {
        MonodromyTuple::from_images(vec![vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let w: FreeWord = "x0 x1^-1*x12".parse().unwrap();
        assert_eq!(w.to_string(), "x0 x1^-1 x12");
        assert_eq!("1".parse::<FreeWord>().unwrap(), FreeWord::empty());
        assert_eq!("".parse::<FreeWord>().unwrap().to_string(), "1");
        assert!("y0".parse::<FreeWord>().is_err());
        assert!("x0^2".parse::<FreeWord>().is_err());
        assert!("x".parse::<FreeWord>().is_err());
        assert!("x-1".parse::<FreeWord>().is_err());
    }

    #[test]
    fn evaluation_examples() {
        let t = tuple();
        assert!(FreeWord::empty().evaluate(&t).unwrap().is_identity());
        assert_eq!(FreeWord::gen(0).evaluate(&t).unwrap(), Perm::from_images(vec![1, 0]).unwrap());
        assert!(FreeWord::run(0, 1).evaluate(&t).unwrap().is_identity());
        assert!(matches!(
            FreeWord::gen(3).evaluate(&t),
            Err(DessinError::IndexOutOfRange { index: 3, n: 3 })
        ));
    }

    #[test]
    fn reduction_and_inverse() {
        let w: FreeWord = "x0 x1 x1^-1 x2".parse().unwrap();
        assert_eq!(w.reduced().to_string(), "x0 x2");
        assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn identity_and_inner_tables_preserve_class() {
        let t = tuple();
        assert_eq!(EndomorphismTable::identity(3).apply(&t).unwrap(), t);
        let inner = EndomorphismTable::inner(3, &"x0 x2^-1".parse().unwrap()).unwrap();
        assert!(inner.apply(&t).unwrap().isomorphic(&t).unwrap());
    }

    #[test]
    fn non_preserving_table_is_rejected() {
        let bad = EndomorphismTable::new("bad", vec![FreeWord::gen(0), FreeWord::empty(), FreeWord::empty()]).unwrap();
        assert!(matches!(bad.apply(&tuple()), Err(DessinError::InvalidResult(_))));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"n":3,"images":["x0 x1 x0^-1","x0","x2"]}"#;
        let table = EndomorphismTable::from_json(text).unwrap();
        assert_eq!(serde_json::to_string(&table).unwrap(), text);
        assert!(EndomorphismTable::from_json(r#"{"n":2,"images":["x0 x3","x1"]}"#).is_err());
        assert!(EndomorphismTable::from_json(r#"{"n":2,"images":["x0"]}"#).is_err());
        assert_eq!(EndomorphismTable::list_from_json(&format!("[{text},{text}]")).unwrap().len(), 2);
    }
}
