//! Closed forms of `ap(sqrt n)` at CM points, and their check against direct evaluation.

use super::dd::Dd;
use super::functions::ap;
use super::radical::eval_radical;
use super::{ModularError, ModularValue};

/// The checked-in fixture: one `n | expression` line per row, `#` comments.
pub const TABLE1_FIXTURE: &str = include_str!("../../fixtures/table1.txt");

/// Agreement required between direct evaluation and the closed form.
pub const MATCH_TOL: f64 = 1e-9;
/// Largest imaginary part accepted for a real CM value.
pub const IMAG_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub n: u64,
    pub expression: String,
    pub closed_form: Dd,
}

pub fn parse_table1(text: &str) -> Result<Vec<Table1Row>, ModularError> {
    let mut rows: Vec<Table1Row> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| ModularError::Parse(format!("line {}: {msg}", lineno + 1));
        let (n, expr) = line.split_once('|').ok_or_else(|| bad("expected 'n | expression'"))?;
        let n: u64 = n.trim().parse().map_err(|_| bad("row index is not a positive integer"))?;
        if n == 0 {
            return Err(bad("row index must be positive"));
        }
        if rows.iter().any(|r| r.n == n) {
            return Err(bad("duplicate row"));
        }
        let expression = expr.trim().to_string();
        let closed_form = eval_radical(&expression).map_err(|e| bad(&e.to_string()))?;
        rows.push(Table1Row { n, expression, closed_form });
    }
    Ok(rows)
}

pub fn table1_rows() -> Vec<Table1Row> {
    parse_table1(TABLE1_FIXTURE).expect("checked-in fixture parses")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Check {
    pub n: u64,
    pub computed: ModularValue,
    pub closed_form: Dd,
    /// `|Re ap - closed form|`.
    pub error: f64,
    pub imag: f64,
    pub pass: bool,
}

/// Evaluates `ap(sqrt n)` directly and compares it with the row's closed form.
pub fn check_row(row: &Table1Row, tol: f64) -> Result<Table1Check, ModularError> {
    let t = Dd::from_i64(row.n as i64).sqrt();
    let computed = ap(t, tol)?;
    let error = (computed.re() - row.closed_form).abs().to_f64();
    let imag = computed.im().abs().to_f64();
    let pass = error <= MATCH_TOL && imag <= IMAG_TOL && computed.re().hi > 1.0;
    Ok(Table1Check { n: row.n, computed, closed_form: row.closed_form, error, imag, pass })
}
