//! Flat row types shared by the CSV and JSON outputs, and plain-text tables.

use std::io::Write;

use locuniq_core::flip::FlipCategory;
use locuniq_core::{Summary, TrialRecord};
use serde::Serialize;

/// One experiment summary. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub delta: f64,
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
    pub mean_delta: f64,
    pub stderr_delta: f64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub mean_u_fraction: f64,
    #[serde(rename = "mean_delta_DISAG_YDIFF")]
    pub mean_delta_disag_ydiff: Option<f64>,
    #[serde(rename = "mean_delta_DISAG_MISMATCH")]
    pub mean_delta_disag_mismatch: Option<f64>,
    #[serde(rename = "mean_delta_DISAG_MATCH")]
    pub mean_delta_disag_match: Option<f64>,
    #[serde(rename = "mean_delta_AGREE_MISMATCH")]
    pub mean_delta_agree_mismatch: Option<f64>,
    #[serde(rename = "mean_delta_AGREE_MATCH")]
    pub mean_delta_agree_match: Option<f64>,
    pub m: usize,
    #[serde(rename = "count_DISAG_YDIFF")]
    pub count_disag_ydiff: u64,
    #[serde(rename = "count_DISAG_MISMATCH")]
    pub count_disag_mismatch: u64,
    #[serde(rename = "count_DISAG_MATCH")]
    pub count_disag_match: u64,
    #[serde(rename = "count_AGREE_MISMATCH")]
    pub count_agree_mismatch: u64,
    #[serde(rename = "count_AGREE_MATCH")]
    pub count_agree_match: u64,
    pub delta_neg: u64,
    pub delta_zero: u64,
    pub delta_pos: u64,
    #[serde(rename = "freq_E")]
    pub freq_e: Option<f64>,
    #[serde(rename = "freq_F")]
    pub freq_f: Option<f64>,
    #[serde(rename = "freq_G")]
    pub freq_g: Option<f64>,
    #[serde(rename = "freq_H")]
    pub freq_h: Option<f64>,
    pub stmt_i: Option<f64>,
    pub stmt_ii: Option<f64>,
    pub stmt_iii: Option<f64>,
    pub stmt_iv: Option<f64>,
    pub stmt_v_00: Option<f64>,
    pub stmt_v_01: Option<f64>,
    pub stmt_v_10: Option<f64>,
    pub stmt_v_11: Option<f64>,
    pub bound_numerator: f64,
    pub bound_denominator: f64,
    pub bound_raw: f64,
    pub bound_clamped: Option<f64>,
    pub bound_vacuous: bool,
}

impl From<&Summary> for SummaryRow {
    fn from(s: &Summary) -> Self {
        let mean = |c: FlipCategory| s.category(c).mean_delta;
        let count = |c: FlipCategory| s.category(c).count;
        let st = s.statements;
        let cell = |k: usize| st.and_then(|r| r.stmt_v).map(|v| v[k]);
        Self {
            n: s.n,
            delta: s.delta,
            epsilon: s.epsilon,
            trials: s.trials,
            seed: s.seed,
            mean_delta: s.mean_delta,
            stderr_delta: s.stderr_delta,
            p_hat: s.p_hat,
            ci_lo: s.ci_lo,
            ci_hi: s.ci_hi,
            mean_u_fraction: s.mean_u_fraction,
            mean_delta_disag_ydiff: mean(FlipCategory::DisagYdiff),
            mean_delta_disag_mismatch: mean(FlipCategory::DisagMismatch),
            mean_delta_disag_match: mean(FlipCategory::DisagMatch),
            mean_delta_agree_mismatch: mean(FlipCategory::AgreeMismatch),
            mean_delta_agree_match: mean(FlipCategory::AgreeMatch),
            m: s.m,
            count_disag_ydiff: count(FlipCategory::DisagYdiff),
            count_disag_mismatch: count(FlipCategory::DisagMismatch),
            count_disag_match: count(FlipCategory::DisagMatch),
            count_agree_mismatch: count(FlipCategory::AgreeMismatch),
            count_agree_match: count(FlipCategory::AgreeMatch),
            delta_neg: s.delta_histogram[0],
            delta_zero: s.delta_histogram[1],
            delta_pos: s.delta_histogram[2],
            freq_e: s.events.map(|e| e.e),
            freq_f: s.events.and_then(|e| e.f),
            freq_g: s.events.and_then(|e| e.g),
            freq_h: s.events.and_then(|e| e.h),
            stmt_i: st.and_then(|r| r.stmt_i),
            stmt_ii: st.and_then(|r| r.stmt_ii),
            stmt_iii: st.and_then(|r| r.stmt_iii),
            stmt_iv: st.and_then(|r| r.stmt_iv),
            stmt_v_00: cell(0),
            stmt_v_01: cell(1),
            stmt_v_10: cell(2),
            stmt_v_11: cell(3),
            bound_numerator: s.bound.numerator,
            bound_denominator: s.bound.denominator,
            bound_raw: s.bound.raw,
            bound_clamped: s.bound.clamped,
            bound_vacuous: s.bound.vacuous,
        }
    }
}

/// One Monte Carlo trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub m: usize,
    pub s_star: u32,
    #[serde(rename = "U")]
    pub u: usize,
    pub u_fraction: f64,
    pub t: usize,
    pub delta: i32,
    pub category: &'static str,
    #[serde(rename = "E")]
    pub e: Option<bool>,
    #[serde(rename = "F")]
    pub f: Option<bool>,
    #[serde(rename = "G")]
    pub g: Option<bool>,
    #[serde(rename = "H")]
    pub h: Option<bool>,
}

impl From<&TrialRecord> for TrialRow {
    fn from(r: &TrialRecord) -> Self {
        Self {
            trial: r.trial_index,
            m: r.m,
            s_star: r.s_star,
            u: r.u,
            u_fraction: r.u_fraction,
            t: r.flip.t,
            delta: r.flip.delta,
            category: r.flip.category.name(),
            e: r.events.map(|e| e.e),
            f: r.events.and_then(|e| e.f),
            g: r.events.and_then(|e| e.g),
            h: r.events.and_then(|e| e.h),
        }
    }
}

/// Writes rows as CSV with a header line.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.6}"))
}

/// Human-readable block for one summary.
pub fn summary_table(s: &Summary) -> String {
    let mut t = String::new();
    let push = |t: &mut String, k: &str, v: String| t.push_str(&format!("{k:<22} {v}\n"));
    push(&mut t, "n, m, delta", format!("{}, {}, {}", s.n, s.m, s.delta));
    push(&mut t, "epsilon", s.epsilon.to_string());
    push(&mut t, "trials (seed)", format!("{} ({})", s.trials, s.seed));
    push(&mut t, "mean Delta", format!("{:.6} +- {:.6}", s.mean_delta, s.stderr_delta));
    push(&mut t, "Delta = -1/0/+1", format!("{:?}", s.delta_histogram));
    push(&mut t, "P[U >= m eps]", format!("{:.6} [{:.6}, {:.6}]", s.p_hat, s.ci_lo, s.ci_hi));
    push(&mut t, "mean U/m", format!("{:.6}", s.mean_u_fraction));
    for c in &s.categories {
        push(&mut t, &format!("E[Delta|{}]", c.category), format!("{} (n={})", opt(c.mean_delta), c.count));
    }
    if let Some(e) = &s.events {
        push(&mut t, "freq E", format!("{:.6}", e.e));
        push(&mut t, "freq F / G", format!("{} / {} (n={})", opt(e.f), opt(e.g), e.f_applicable));
        push(&mut t, "freq H", format!("{} (n={})", opt(e.h), e.h_applicable));
    }
    if let Some(r) = &s.statements {
        push(&mut t, "stmt i / ii", format!("{} / {}", opt(r.stmt_i), opt(r.stmt_ii)));
        push(&mut t, "stmt iii / iv", format!("{} / {}", opt(r.stmt_iii), opt(r.stmt_iv)));
        if let Some(v) = r.stmt_v {
            push(&mut t, "stmt v", format!("{:.6} {:.6} {:.6} {:.6}", v[0], v[1], v[2], v[3]));
        }
    }
    let b = &s.bound;
    push(&mut t, "bound", format!("raw={} denominator={} vacuous={}", b.raw, b.denominator, b.vacuous));
    t
}
