//! Mathieu–Bessel series S_ν(a,b) = Σ n^γ J_ν(nb/a)/(n²+a²)^μ: direct
//! summation and large-a asymptotic expansions.

pub mod asymptotics;
pub mod error;
pub mod mellin;
pub mod oracle;
pub mod params;
pub mod real;
pub mod special;
pub mod tables;
pub mod variants;
pub mod verify;

pub use asymptotics::{
    optimal_truncate, residue_s1, theorem1_alternative_term, theorem1_series, theorem1_term, theorem2_series,
    theorem3_expsmall, ExpansionReport, Truncation, K_MAX,
};
pub use error::{Error, Result};
pub use mellin::{mellin_h, mellin_h_continued, mellin_q, MellinPoint};
pub use oracle::{direct_sum, direct_sum_with, partial_sum, tail_bound, DirectSum, OracleConfig};
pub use params::{Params, Regime, SeriesKind};
pub use real::{PrecisionCtx, Real};
pub use variants::{alternating_expansion, j_series_expansion, y_series_expansion};
pub use tables::{compute_table, TableId, TableRow};
