//! Regeneration of the three published error tables: the parameter grids,
//! the oracle references and the expansion errors, with CSV and markdown
//! output.

use std::fmt::Write as _;

use crate::asymptotics::{theorem1_series, theorem2_series, theorem3_expsmall, Truncation};
use crate::error::{Error, Result};
use crate::oracle::{direct_sum_with, OracleConfig};
use crate::params::{Params, Regime, SeriesKind};
use crate::real::{PrecisionCtx, Real};

/// Oracle tolerances tried in turn, as multiples of the expansion's error
/// estimate; the last one still resolves the error to 1%.
pub const REFERENCE_FACTORS: [f64; 3] = [1e-6, 1e-4, 1e-2];

/// Corrections shown in the exponentially small table.
pub const J_MAX: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    /// Generic case, μ=3, ν=1/3, γ=1/2, b ∈ {1/2, 1, 2}.
    One,
    /// Double pole γ+ν = -1, b = 1.
    Two,
    /// Exponentially small γ+ν = 0, a = 8, μ = 4.
    Three,
}

impl TableId {
    pub fn from_number(n: u32) -> Result<TableId> {
        match n {
            1 => Ok(TableId::One),
            2 => Ok(TableId::Two),
            3 => Ok(TableId::Three),
            _ => Err(Error::InvalidParams(format!("no table {n}; expected 1, 2 or 3"))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            TableId::One => 1,
            TableId::Two => 2,
            TableId::Three => 3,
        }
    }

    /// Working precision the table needs: the exponentially small values
    /// sit about 18 digits below S itself.
    pub fn default_digits(self) -> u32 {
        match self {
            TableId::Three => 60,
            _ => 50,
        }
    }
}

/// One grid point: parameters as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub column: usize,
    pub a: &'static str,
    pub b: &'static str,
    pub gamma: &'static str,
    pub nu: &'static str,
    pub mu: &'static str,
}

/// Grid in row order (a, then column).
pub fn grid(which: TableId) -> Vec<Cell> {
    let cell = |column, a, b, gamma, nu, mu| Cell { column, a, b, gamma, nu, mu };
    let mut out = Vec::new();
    match which {
        TableId::One => {
            for a in ["2", "4", "6", "8"] {
                for (c, b) in ["1/2", "1", "2"].into_iter().enumerate() {
                    out.push(cell(c, a, b, "1/2", "1/3", "3"));
                }
            }
        }
        TableId::Two => {
            let cols = [("-1", "0", "5/2"), ("-3/4", "-1/4", "5/2"), ("-9/4", "5/4", "1")];
            for a in ["2", "4", "6", "8"] {
                for (c, (g, nu, mu)) in cols.into_iter().enumerate() {
                    out.push(cell(c, a, "1", g, nu, mu));
                }
            }
        }
        TableId::Three => {
            let cols = [("1", "0", "0"), ("3", "0", "0"), ("1", "-1/3", "1/3")];
            for (c, (b, g, nu)) in cols.into_iter().enumerate() {
                out.push(cell(c, "8", b, g, nu, "4"));
            }
        }
    }
    out
}

/// One printed entry.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub table: TableId,
    pub column: usize,
    pub params: Params,
    pub regime: Regime,
    /// k of the last retained term (Tables 1, 2) or j (Table 3).
    pub index: u32,
    /// Oracle value of the tabulated quantity.
    pub reference: Real,
    /// Its asymptotic approximation.
    pub approximation: Real,
    /// Value printed in the value column.
    pub shown: Real,
    /// |approximation - reference| over |reference| (Tables 1, 2) or over
    /// |approximation| (Table 3).
    pub rel_error: Real,
    /// Error estimate of the expansion.
    pub err_est: Real,
    /// Oracle tolerance used, as a multiple of `err_est`.
    pub reference_factor: f64,
    /// Summands taken by the oracle.
    pub oracle_terms: u64,
}

/// S by direct summation to `factor · scale`, trying the factors in turn.
fn reference_sum(p: &Params, scale: &Real, cfg: &OracleConfig) -> Result<(Real, f64, u64)> {
    let mut last = None;
    for f in REFERENCE_FACTORS {
        let tol = scale.abs() * f;
        match direct_sum_with(p, SeriesKind::JSeries, &tol, cfg) {
            Ok(d) => return Ok((d.value, f, d.terms)),
            Err(e @ (Error::Convergence(_) | Error::Precision(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

fn rel(x: &Real, basis: &Real) -> Real {
    ((x - basis) / basis).abs()
}

/// Rows of one cell of Table 1 or 2.
fn algebraic_row(which: TableId, cell: &Cell, p: Params, cfg: &OracleConfig) -> Result<TableRow> {
    let r = match which {
        TableId::One => theorem1_series(&p, Truncation::Optimal)?,
        _ => theorem2_series(&p, Truncation::Optimal)?,
    };
    let (s, factor, terms) = reference_sum(&p, &r.err_est, cfg)?;
    // Table 1 tabulates lead - S, Table 2 S - lead.
    let (reference, approximation) = match which {
        TableId::One => (&r.leading - &s, -r.value.clone()),
        _ => (&s - &r.leading, r.value.clone()),
    };
    let shown = if which == TableId::Two { approximation.clone() } else { reference.clone() };
    Ok(TableRow {
        table: which,
        column: cell.column,
        regime: p.regime(),
        index: r.last_retained_k().unwrap_or(0),
        rel_error: rel(&approximation, &reference),
        reference,
        approximation,
        shown,
        err_est: r.err_est,
        reference_factor: factor,
        oracle_terms: terms,
        params: p,
    })
}

/// Rows j = 0..=J_MAX of one Table 3 column.
fn expsmall_rows(cell: &Cell, p: Params, cfg: &OracleConfig) -> Result<Vec<TableRow>> {
    let r = theorem3_expsmall(&p, J_MAX)?;
    let (s, factor, terms) = reference_sum(&p, &r.err_est, cfg)?;
    let reference = &s - &r.leading;
    let mut partial = Real::zero(p.bits());
    let mut rows = Vec::new();
    for (j, t) in r.terms.iter().enumerate() {
        partial.accumulate(t);
        rows.push(TableRow {
            table: TableId::Three,
            column: cell.column,
            params: p.clone(),
            regime: r.regime,
            index: j as u32,
            reference: reference.clone(),
            approximation: partial.clone(),
            shown: reference.clone(),
            rel_error: rel(&reference, &partial),
            err_est: r.err_est.clone(),
            reference_factor: factor,
            oracle_terms: terms,
        });
    }
    Ok(rows)
}

/// All rows of a table at the given working precision, in grid order.
pub fn compute_table(which: TableId, ctx: &PrecisionCtx, cfg: &OracleConfig) -> Result<Vec<TableRow>> {
    let bits = ctx.bits();
    let mut rows = Vec::new();
    for cell in grid(which) {
        let p = Params::parse(cell.a, cell.b, cell.gamma, cell.nu, cell.mu, bits)?;
        match which {
            TableId::Three => rows.extend(expsmall_rows(&cell, p, cfg)?),
            _ => rows.push(algebraic_row(which, &cell, p, cfg)?),
        }
    }
    Ok(rows)
}

/// x(y) with `sig` significant digits: 1.08383(-03).
pub fn format_compact(x: &Real, sig: usize) -> String {
    let (m, e) = x.to_decimal_parts(sig);
    let sign = if e < 0 { '-' } else { '+' };
    let body = format!("{m}({sign}{:02})", e.abs());
    body.replace("(+", "(")
}

/// xEy with `sig` significant digits: 1.08383E-03.
pub fn format_machine(x: &Real, sig: usize) -> String {
    let (m, e) = x.to_decimal_parts(sig);
    let sign = if e < 0 { '-' } else { '+' };
    format!("{m}E{sign}{:02}", e.abs())
}

/// Significant digits of the value and error columns.
pub const VALUE_DIGITS: usize = 6;
pub const ERROR_DIGITS: usize = 4;

fn label(v: &Real) -> String {
    if v.is_integer() {
        return format!("{}", v.to_f64());
    }
    for q in 2..=12 {
        let num = v * f64::from(q);
        if num.is_integer() {
            return format!("{}/{q}", num.to_f64());
        }
    }
    v.to_sci_string(8)
}

const HEADER: [&str; 13] = [
    "table", "a", "b", "gamma", "nu", "mu", "regime", "index", "value", "value_e", "error", "error_e", "oracle_terms",
];

fn fields(r: &TableRow) -> [String; 13] {
    let p = &r.params;
    [
        r.table.number().to_string(),
        label(&p.a),
        label(&p.b),
        label(&p.gamma),
        label(&p.nu),
        label(&p.mu),
        r.regime.to_string(),
        r.index.to_string(),
        format_compact(&r.shown, VALUE_DIGITS),
        format_machine(&r.shown, VALUE_DIGITS),
        format_compact(&r.rel_error, ERROR_DIGITS),
        format_machine(&r.rel_error, ERROR_DIGITS),
        r.oracle_terms.to_string(),
    ]
}

/// Comma separated, one header line.
pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&fields(r).join(","));
        out.push('\n');
    }
    out
}

/// Markdown pipe table.
pub fn to_markdown(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", HEADER.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(HEADER.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", fields(r).join(" | "));
    }
    out
}
