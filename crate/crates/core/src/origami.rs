//! Bipartite origamis: the square-tiled form of 4-dessins.
//!
//! An origami with `m` white and `m` grey squares is stored as four bijections
//! White -> Grey: `R` (white right edge to grey left edge), `L` (white left to
//! grey right), `U` (white upper to grey upper) and `D` (white lower to grey
//! lower). Horizontal gluings are translations; vertical ones are half-turns.
//!
//! The white square frames its corners as `0` bottom-left, `1` bottom-right,
//! `2` top-right, `3` top-left; the grey square is the mirror image. Walking
//! around the corner of color `nu` gives, left to right on white squares,
//!
//! ```text
//! g0 = L D^-1    g1 = D R^-1    g2 = R U^-1    g3 = U L^-1
//! ```
//!
//! so the product constraint holds by construction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{braid_orbit, ClassMove, OrbitResult};
use crate::dessin::MonodromyTuple;
use crate::error::DessinError;
use crate::perm::Perm;
use crate::SCHEMA;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteOrigami {
    r: Perm,
    l: Perm,
    u: Perm,
    d: Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OrigamiDiagnostic {
    Ok,
    Disconnected { component_of_white_zero: usize, squares: usize },
}

impl OrigamiDiagnostic {
    pub fn is_ok(&self) -> bool {
        matches!(self, OrigamiDiagnostic::Ok)
    }
}

impl fmt::Display for OrigamiDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrigamiDiagnostic::Ok => write!(f, "ok"),
            OrigamiDiagnostic::Disconnected { component_of_white_zero, squares } => write!(
                f,
                "connectivity violated: white square 0 reaches {component_of_white_zero} of {squares} squares"
            ),
        }
    }
}

/// The four shear moves and their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shear {
    Hor,
    Ver,
    HorInv,
    VerInv,
}

impl Shear {
    pub fn inverse(self) -> Shear {
        match self {
            Shear::Hor => Shear::HorInv,
            Shear::Ver => Shear::VerInv,
            Shear::HorInv => Shear::Hor,
            Shear::VerInv => Shear::Ver,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Shear::Hor => "delta_hor",
            Shear::Ver => "delta_ver",
            Shear::HorInv => "delta_hor^-1",
            Shear::VerInv => "delta_ver^-1",
        }
    }
}

impl std::str::FromStr for Shear {
    type Err = DessinError;

    fn from_str(s: &str) -> Result<Shear, DessinError> {
        match s {
            "hor" => Ok(Shear::Hor),
            "ver" => Ok(Shear::Ver),
            "hor-inv" => Ok(Shear::HorInv),
            "ver-inv" => Ok(Shear::VerInv),
            other => Err(DessinError::Malformed(format!("unknown shear {other:?}"))),
        }
    }
}

/// `a ∘ b ∘ c` as maps: apply `c`, then `b`, then `a`.
fn after3(a: &Perm, b: &Perm, c: &Perm) -> Perm {
    c.then(b).then(a)
}

impl BipartiteOrigami {
    /// Checks that the four maps are bijections of the same size `m >= 1`.
    /// Connectivity is checked by [`Self::validate`].
    pub fn new(r: Perm, l: Perm, u: Perm, d: Perm) -> Result<BipartiteOrigami, DessinError> {
        let m = r.degree();
        if m == 0 {
            return Err(DessinError::InvalidOrigami("no squares".into()));
        }
        if [&l, &u, &d].iter().any(|p| p.degree() != m) {
            return Err(DessinError::InvalidOrigami(
                "gluing maps have different numbers of squares".into(),
            ));
        }
        Ok(BipartiteOrigami { r, l, u, d })
    }

    pub fn from_images(
        r: Vec<usize>,
        l: Vec<usize>,
        u: Vec<usize>,
        d: Vec<usize>,
    ) -> Result<BipartiteOrigami, DessinError> {
        let perm = |name: &str, v: Vec<usize>| {
            Perm::from_images(v).map_err(|e| DessinError::InvalidOrigami(format!("{name}: {e}")))
        };
        BipartiteOrigami::new(perm("R", r)?, perm("L", l)?, perm("U", u)?, perm("D", d)?)
    }

    /// One white and one grey square glued into the pillowcase.
    pub fn pillowcase() -> BipartiteOrigami {
        let id = Perm::identity(1);
        BipartiteOrigami { r: id.clone(), l: id.clone(), u: id.clone(), d: id }
    }

    /// The degree-two torus cover of the pillowcase branched at all four corners.
    pub fn chessboard() -> BipartiteOrigami {
        let id = Perm::identity(2);
        let swap = Perm::from_images(vec![1, 0]).expect("transposition");
        BipartiteOrigami { r: id.clone(), l: id, u: swap.clone(), d: swap }
    }

    pub fn m(&self) -> usize {
        self.r.degree()
    }

    pub fn r(&self) -> &Perm {
        &self.r
    }

    pub fn l(&self) -> &Perm {
        &self.l
    }

    pub fn u(&self) -> &Perm {
        &self.u
    }

    pub fn d(&self) -> &Perm {
        &self.d
    }

    pub fn validate(&self) -> OrigamiDiagnostic {
        let m = self.m();
        // whites 0..m, greys m..2m
        let mut seen = vec![false; 2 * m];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            let neighbours: Vec<usize> = if x < m {
                [&self.r, &self.l, &self.u, &self.d].iter().map(|p| m + p.apply(x)).collect()
            } else {
                [&self.r, &self.l, &self.u, &self.d]
                    .iter()
                    .map(|p| p.inverse().apply(x - m))
                    .collect()
            };
            for y in neighbours {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count == 2 * m {
            OrigamiDiagnostic::Ok
        } else {
            OrigamiDiagnostic::Disconnected { component_of_white_zero: count, squares: 2 * m }
        }
    }

    pub fn require_valid(&self) -> Result<(), DessinError> {
        match self.validate() {
            OrigamiDiagnostic::Ok => Ok(()),
            diag => Err(DessinError::InvalidOrigami(diag.to_string())),
        }
    }

    /// Monodromy on the white squares around the corners of colors `0..4`.
    pub fn to_dessin(&self) -> Result<MonodromyTuple, DessinError> {
        self.require_valid()?;
        let g0 = self.l.then(&self.d.inverse());
        let g1 = self.d.then(&self.r.inverse());
        let g2 = self.r.then(&self.u.inverse());
        let g3 = self.u.then(&self.l.inverse());
        MonodromyTuple::new(vec![g0, g1, g2, g3])
    }

    /// The origami with `L = id` whose monodromy is exactly `t`.
    pub fn from_dessin(t: &MonodromyTuple) -> Result<BipartiteOrigami, DessinError> {
        if t.n() != 4 {
            return Err(DessinError::Mismatch(format!("origamis carry 4-dessins, got n = {}", t.n())));
        }
        t.require_valid()?;
        let g = t.perms();
        let l = Perm::identity(t.d());
        let d = g[0].inverse();
        let r = g[0].then(&g[1]).inverse();
        let u = g[0].then(&g[1]).then(&g[2]).inverse();
        Ok(BipartiteOrigami { r, l, u, d })
    }

    /// Representative of the isomorphism class under relabeling white and grey squares.
    pub fn canonical(&self) -> Result<BipartiteOrigami, DessinError> {
        BipartiteOrigami::from_dessin(&self.to_dessin()?.canonical_form()?)
    }

    pub fn isomorphic(&self, other: &BipartiteOrigami) -> Result<bool, DessinError> {
        Ok(self.m() == other.m() && self.canonical()? == other.canonical()?)
    }

    pub fn shear(&self, op: Shear) -> Result<BipartiteOrigami, DessinError> {
        self.require_valid()?;
        let (r, l, u, d) = (&self.r, &self.l, &self.u, &self.d);
        let (ri, li, ui, di) = (r.inverse(), l.inverse(), u.inverse(), d.inverse());
        // New whites are the old greys and vice versa for the horizontal shear.
        let out = match op {
            Shear::Hor => BipartiteOrigami {
                r: li.clone(),
                l: ri.clone(),
                u: after3(&ri, u, &li),
                d: after3(&li, d, &ri),
            },
            Shear::HorInv => BipartiteOrigami {
                r: li.clone(),
                l: ri.clone(),
                u: after3(&li, u, &ri),
                d: after3(&ri, d, &li),
            },
            Shear::Ver => BipartiteOrigami {
                r: after3(&ui, r, &di),
                l: after3(&di, l, &ui),
                u: di.clone(),
                d: ui.clone(),
            },
            Shear::VerInv => BipartiteOrigami {
                r: after3(&di, r, &ui),
                l: after3(&ui, l, &di),
                u: di,
                d: ui,
            },
        };
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    pub fn delta_hor(&self) -> Result<BipartiteOrigami, DessinError> {
        self.shear(Shear::Hor)
    }

    pub fn delta_ver(&self) -> Result<BipartiteOrigami, DessinError> {
        self.shear(Shear::Ver)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m(),
            "R": self.r.images(),
            "L": self.l.images(),
            "U": self.u.images(),
            "D": self.d.images(),
        })
    }

    /// Parses `{"m": .., "R": [..], "L": [..], "U": [..], "D": [..]}`, arrays
    /// indexed by white squares with grey squares as values.
    pub fn from_json(text: &str) -> Result<BipartiteOrigami, DessinError> {
        let raw: RawOrigami =
            serde_json::from_str(text).map_err(|e| DessinError::Malformed(e.to_string()))?;
        if let Some(schema) = raw.schema.as_deref().filter(|s| *s != SCHEMA) {
            return Err(DessinError::Malformed(format!("unknown schema {schema:?}")));
        }
        if [&raw.r, &raw.l, &raw.u, &raw.d].iter().any(|v| v.len() != raw.m) {
            return Err(DessinError::Malformed(format!("m = {} disagrees with array lengths", raw.m)));
        }
        BipartiteOrigami::from_images(raw.r, raw.l, raw.u, raw.d)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrigami {
    #[serde(default)]
    schema: Option<String>,
    m: usize,
    #[serde(rename = "R")]
    r: Vec<usize>,
    #[serde(rename = "L")]
    l: Vec<usize>,
    #[serde(rename = "U")]
    u: Vec<usize>,
    #[serde(rename = "D")]
    d: Vec<usize>,
}

impl fmt::Debug for BipartiteOrigami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Origami(m={}, R={:?}, L={:?}, U={:?}, D={:?})",
            self.m(),
            self.r.images(),
            self.l.images(),
            self.u.images(),
            self.d.images()
        )
    }
}

impl ClassMove for Shear {
    fn name(&self) -> String {
        self.label().into()
    }

    fn arity(&self) -> usize {
        4
    }

    fn moves(&self, t: &MonodromyTuple) -> Result<Vec<(String, MonodromyTuple)>, DessinError> {
        let o = BipartiteOrigami::from_dessin(t)?;
        Ok(vec![(self.label().into(), o.shear(*self)?.to_dessin()?)])
    }
}

/// Closure of the class of `o` under both shears and their inverses, as 4-dessin classes.
pub fn origami_orbit(o: &BipartiteOrigami) -> Result<OrbitResult, DessinError> {
    orbit_of_dessins(&[o.to_dessin()?])
}

pub fn orbit_of_dessins(seeds: &[MonodromyTuple]) -> Result<OrbitResult, DessinError> {
    braid_orbit(seeds, &[Shear::Hor, Shear::Ver, Shear::HorInv, Shear::VerInv])
}

/// A single horizontal row of squares with letters on the unglued edges.
///
/// Neighbouring squares in the row are glued; equal letters on top edges,
/// on bottom edges, or on the two ends of the row mark the remaining pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDiagram {
    /// `W` or `G` per square, left to right.
    pub colors: String,
    pub top: String,
    pub bottom: String,
    pub left: String,
    pub right: String,
}

impl RowDiagram {
    pub fn from_json(text: &str) -> Result<RowDiagram, DessinError> {
        serde_json::from_str(text).map_err(|e| DessinError::Malformed(e.to_string()))
    }

    /// Parses a JSON object mapping names to row diagrams.
    pub fn collection_from_json(text: &str) -> Result<BTreeMap<String, RowDiagram>, DessinError> {
        serde_json::from_str(text).map_err(|e| DessinError::Malformed(e.to_string()))
    }

    pub fn to_origami(&self) -> Result<BipartiteOrigami, DessinError> {
        let bad = |msg: String| DessinError::Malformed(format!("row diagram: {msg}"));
        let colors: Vec<char> = self.colors.chars().filter(|c| !c.is_whitespace()).collect();
        let top: Vec<char> = self.top.chars().filter(|c| !c.is_whitespace()).collect();
        let bottom: Vec<char> = self.bottom.chars().filter(|c| !c.is_whitespace()).collect();
        let k = colors.len();
        if k == 0 || k % 2 != 0 {
            return Err(bad(format!("need an even, positive number of squares, got {k}")));
        }
        if top.len() != k || bottom.len() != k {
            return Err(bad("top and bottom need one letter per square".into()));
        }
        if self.left.trim() != self.right.trim() || self.left.trim().is_empty() {
            return Err(bad("the two ends of the row must carry the same letter".into()));
        }
        let mut white_index = vec![None; k];
        let mut grey_index = vec![None; k];
        let (mut whites, mut greys) = (0, 0);
        for (p, &c) in colors.iter().enumerate() {
            match c {
                'W' | 'w' => {
                    white_index[p] = Some(whites);
                    whites += 1;
                }
                'G' | 'g' => {
                    grey_index[p] = Some(greys);
                    greys += 1;
                }
                other => return Err(bad(format!("unknown color {other:?}"))),
            }
            if p > 0 && colors[p - 1].eq_ignore_ascii_case(&c) {
                return Err(bad("neighbouring squares must have different colors".into()));
            }
        }
        if colors[0].eq_ignore_ascii_case(&colors[k - 1]) {
            return Err(bad("the ends of the row must have different colors".into()));
        }
        let m = whites;
        let mut r = vec![0; m];
        let mut l = vec![0; m];
        for p in 0..k {
            if let Some(w) = white_index[p] {
                r[w] = grey_index[(p + 1) % k].expect("colors alternate");
                l[w] = grey_index[(p + k - 1) % k].expect("colors alternate");
            }
        }
        let pair = |letters: &[char], what: &str| -> Result<Vec<usize>, DessinError> {
            let mut out = vec![usize::MAX; m];
            let mut positions: BTreeMap<char, Vec<usize>> = BTreeMap::new();
            for (p, &c) in letters.iter().enumerate() {
                positions.entry(c).or_default().push(p);
            }
            for (c, ps) in positions {
                let [a, b] = ps[..] else {
                    return Err(bad(format!("{what} letter {c:?} used {} times", ps.len())));
                };
                match (white_index[a], grey_index[b], white_index[b], grey_index[a]) {
                    (Some(w), Some(g), _, _) | (_, _, Some(w), Some(g)) => out[w] = g,
                    _ => return Err(bad(format!("{what} letter {c:?} joins squares of one color"))),
                }
            }
            Ok(out)
        };
        let u = pair(&top, "top")?;
        let d = pair(&bottom, "bottom")?;
        let o = BipartiteOrigami::from_images(r, l, u, d)?;
        Ok(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pillowcase_and_chessboard() {
        assert!(BipartiteOrigami::pillowcase().validate().is_ok());
        assert_eq!(BipartiteOrigami::pillowcase().to_dessin().unwrap(), MonodromyTuple::trivial(4));
        let c = BipartiteOrigami::chessboard();
        assert!(c.validate().is_ok());
        let t = c.to_dessin().unwrap();
        assert!(t.perms().iter().all(|g| g.cycle_type() == vec![2]));
        assert_eq!(t.genus().unwrap(), 1);
    }

    #[test]
    fn disjoint_pillowcases_are_disconnected() {
        let id = vec![0, 1];
        let o = BipartiteOrigami::from_images(id.clone(), id.clone(), id.clone(), id).unwrap();
        assert_eq!(
            o.validate(),
            OrigamiDiagnostic::Disconnected { component_of_white_zero: 2, squares: 4 }
        );
        assert!(o.to_dessin().is_err());
    }

    #[test]
    fn shears_invert_exactly() {
        let o = BipartiteOrigami::from_images(vec![1, 2, 0], vec![0, 1, 2], vec![1, 0, 2], vec![1, 0, 2])
            .unwrap();
        for op in [Shear::Hor, Shear::Ver, Shear::HorInv, Shear::VerInv] {
            assert_eq!(o.shear(op).unwrap().shear(op.inverse()).unwrap(), o);
        }
    }

    #[test]
    fn shears_fix_chessboard_and_pillowcase() {
        for base in [BipartiteOrigami::pillowcase(), BipartiteOrigami::chessboard()] {
            for op in [Shear::Hor, Shear::Ver] {
                assert!(base.shear(op).unwrap().isomorphic(&base).unwrap());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let o = BipartiteOrigami::chessboard();
        let text = o.to_json_value().to_string();
        assert_eq!(BipartiteOrigami::from_json(&text).unwrap(), o);
        assert!(BipartiteOrigami::from_json(r#"{"m":2,"R":[0],"L":[0],"U":[0],"D":[0]}"#).is_err());
        assert!(BipartiteOrigami::from_json(r#"{"m":0,"R":[],"L":[],"U":[],"D":[]}"#).is_err());
    }

    #[test]
    fn row_diagram_rejects_bad_letters() {
        let mut row = RowDiagram {
            colors: "GW".into(),
            top: "aa".into(),
            bottom: "bb".into(),
            left: "g".into(),
            right: "g".into(),
        };
        assert_eq!(row.to_origami().unwrap(), BipartiteOrigami::pillowcase());
        row.top = "ab".into();
        assert!(row.to_origami().is_err());
        row.top = "aa".into();
        row.colors = "WW".into();
        assert!(row.to_origami().is_err());
    }
}
