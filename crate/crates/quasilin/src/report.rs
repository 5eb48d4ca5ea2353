//! Machine-readable report rendering.
//!
//! Reports are line-oriented and byte-stable for a fixed configuration and
//! seed. Lines starting with `#` are headers or summaries; every other line
//! is one record with tab-separated fields in this exact order:
//!
//! ```text
//! criterion  group  form_a  form_b  theorem  brute  agree  witness  wall_us
//! ```
//!
//! * `criterion` - catalog id, e.g. `LL_LL` or `PAR_LIN12`
//! * `group` - carrier label, e.g. `S3`
//! * `form_a`, `form_b` - form specs as rendered by
//!   [`QuasigroupForm::to_spec`](crate::form::QuasigroupForm::to_spec)
//!   (maps as comma-joined index arrays); `-` when absent
//! * `theorem`, `brute` - `orth` or `nonorth`; `-` when that path did not run
//! * `agree` - `ok` or `MISMATCH`
//! * `witness` - `-`, `cells=(x1,y1)(x2,y2)`, `coll[t=K]=(a,b)`,
//!   `coll=(a,b)`, or `hom=(x,y)`
//! * `wall_us` - integer microseconds when timing collection is enabled,
//!   otherwise `-` so that default reports stay byte-identical across runs
//!
//! Cross-validation reports aggregate: one record per criterion/group sweep
//! with counts in the witness column, and one full-detail record per
//! discrepancy.

use std::fmt::Write as _;

use crate::campaign::{CrossValidationSummary, ParastropheCampaign};
use crate::ortho::Witness;

pub fn verdict_str(orthogonal: bool) -> &'static str {
    if orthogonal {
        "orth"
    } else {
        "nonorth"
    }
}

pub fn witness_str(witness: Option<&Witness>) -> String {
    match witness {
        None => "-".to_string(),
        Some(Witness::Cells { first, second }) => format!(
            "cells=({},{})({},{})",
            first.0, first.1, second.0, second.1
        ),
        Some(Witness::Collision { t: Some(t), a, b }) => format!("coll[t={t}]=({a},{b})"),
        Some(Witness::Collision { t: None, a, b }) => format!("coll=({a},{b})"),
        Some(Witness::NotEndomorphism { x, y }) => format!("hom=({x},{y})"),
    }
}

fn agree_str(theorem: bool, brute: bool) -> &'static str {
    if theorem == brute {
        "ok"
    } else {
        "MISMATCH"
    }
}

/// Renders a parastrophe campaign: header, one record per form, summary.
pub fn render_parastrophe_campaign(c: &ParastropheCampaign, wall_us: Option<u128>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# quasilin parastrophe campaign group={} class={} sigma={}",
        c.group, c.class, c.sigma
    );
    if let Some(s) = c.sampling {
        let _ = writeln!(out, "# sampled size={} seed={}", s.size, s.seed);
    }
    let _ = writeln!(out, "# fields: criterion group form_a form_b theorem brute agree witness wall_us");
    let id = crate::ortho::CriterionId::for_parastrophe(c.class, c.sigma)
        .map(|id| id.name())
        .unwrap_or("?");
    for r in &c.records {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t-\t{}\t{}\t{}\t-\t-",
            id,
            c.group,
            r.form_spec,
            verdict_str(r.theorem),
            verdict_str(r.brute),
            agree_str(r.theorem, r.brute),
        );
    }
    let _ = writeln!(out, "# summary: {}", c.summary_line());
    if let Some(us) = wall_us {
        let _ = writeln!(out, "# wall_us: {us}");
    }
    out
}

/// Renders a cross-validation summary: per-sweep aggregate records plus one
/// detailed record per discrepancy.
pub fn render_cross_validation(s: &CrossValidationSummary, wall_us: Option<u128>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# quasilin cross-validation report");
    let _ = writeln!(out, "# fields: criterion group form_a form_b theorem brute agree witness wall_us");
    for e in &s.entries {
        let _ = writeln!(
            out,
            "{}\t{}\t-\t-\t-\t-\t{}\tinstances={};orthogonal={};mismatches={}\t-",
            e.criterion,
            e.group,
            if e.discrepancies == 0 { "ok" } else { "MISMATCH" },
            e.instances,
            e.orthogonal,
            e.discrepancies,
        );
    }
    for d in &s.discrepancies {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t-\t-",
            d.criterion,
            d.group,
            d.form_a,
            d.form_b.as_deref().unwrap_or("-"),
            verdict_str(d.theorem),
            verdict_str(d.brute),
            agree_str(d.theorem, d.brute),
        );
    }
    let _ = writeln!(out, "# summary: {}", s.summary_line());
    if let Some(us) = wall_us {
        let _ = writeln!(out, "# wall_us: {us}");
    }
    out
}
