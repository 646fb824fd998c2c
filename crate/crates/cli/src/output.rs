//! The `OutputDocument` emitted by every subcommand, and its two renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use groupk_core::{
    classify, compute_ktheory, relator_data, validate, Abelian, Bound, Int, KTheory, Presentation, Rational, Relator,
    Report,
};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

pub const TOOL_VERSION: &str = concat!("groupk ", env!("CARGO_PKG_VERSION"));

/// Integers as JSON numbers when they fit in 64 bits, decimal strings
/// otherwise.
fn int_value(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn bound_value(b: Bound) -> Value {
    match b {
        Bound::Finite(c) => Value::from(c),
        Bound::Unbounded => Value::from("UNBOUNDED"),
    }
}

fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupOut {
    pub rank: usize,
    pub torsion: Vec<Value>,
}

impl From<&Abelian> for GroupOut {
    fn from(g: &Abelian) -> Self {
        GroupOut { rank: g.rank(), torsion: g.invariant_factors().iter().map(int_value).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelatorOut {
    pub root: String,
    pub exponent: usize,
    pub abelianized_root: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PieceOut {
    pub relator: usize,
    pub relator_length: usize,
    pub max_piece_length: usize,
    pub min_piece_count: Value,
    pub metric_ratio: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationOut {
    pub piece_report: Vec<PieceOut>,
    pub c_max: Value,
    pub metric_lambda_star: String,
    pub t_flags: BTreeMap<usize, bool>,
    pub cla: String,
    pub bcc_status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KTheoryOut {
    pub k0: GroupOut,
    pub k1: GroupOut,
    #[serde(rename = "R")]
    pub r: GroupOut,
    pub relative_k0: GroupOut,
    pub relative_k1: GroupOut,
    #[serde(rename = "rank_A")]
    pub rank_a: usize,
    pub conditional: bool,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDocument {
    pub tool_version: String,
    pub presentation_echo: String,
    pub relators: Vec<RelatorOut>,
    pub classification: ClassificationOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ktheory: Option<KTheoryOut>,
}

fn relators_out(p: &Presentation, data: &[Relator]) -> Vec<RelatorOut> {
    data.iter()
        .map(|d| RelatorOut {
            root: p.format_word(&d.root),
            exponent: d.exponent,
            abelianized_root: d.abelianized_root.iter().map(int_value).collect(),
        })
        .collect()
}

fn classification_out(rep: &Report) -> ClassificationOut {
    ClassificationOut {
        piece_report: rep
            .piece_report
            .iter()
            .map(|r| PieceOut {
                relator: r.relator + 1,
                relator_length: r.relator_length,
                max_piece_length: r.max_piece_length,
                min_piece_count: bound_value(r.min_piece_count),
                metric_ratio: ratio_string(&r.metric_ratio),
            })
            .collect(),
        c_max: bound_value(rep.c_max),
        metric_lambda_star: ratio_string(&rep.metric_lambda_star),
        t_flags: rep.t_flags.clone(),
        cla: rep.cla.to_string(),
        bcc_status: rep.bcc_status.to_string(),
    }
}

fn ktheory_out(k: &KTheory) -> KTheoryOut {
    KTheoryOut {
        k0: (&k.k0).into(),
        k1: (&k.k1).into(),
        r: (&k.r).into(),
        relative_k0: (&k.relative_k0).into(),
        relative_k1: (&k.relative_k1).into(),
        rank_a: k.rank_a,
        conditional: k.conditional,
        certificate: k.certificate.to_string(),
    }
}

/// Builds the document for a presentation. Fails when the presentation does
/// not validate.
pub fn build_document(p: &Presentation, q_max: usize, with_ktheory: bool) -> anyhow::Result<OutputDocument> {
    let report = validate(p);
    if !report.ok {
        let msgs: Vec<&str> = report.errors().map(|i| i.message.as_str()).collect();
        anyhow::bail!("invalid presentation: {}", msgs.join("; "));
    }
    let rep = classify::<Int>(p, q_max)?;
    let data = relator_data::<Int>(p)?;
    let ktheory = if with_ktheory { Some(ktheory_out(&compute_ktheory(p, &rep)?)) } else { None };
    Ok(OutputDocument {
        tool_version: TOOL_VERSION.to_string(),
        presentation_echo: p.to_string(),
        relators: relators_out(p, &data),
        classification: classification_out(&rep),
        ktheory,
    })
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `Z^r + Z/d₁ + …`, `0` for the trivial group.
pub fn group_text(g: &GroupOut) -> String {
    let mut parts = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{}", value_text(t))));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> =
        (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "  {}", cells.join("  ").trim_end());
    }
    out
}

pub fn render_text(doc: &OutputDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", doc.tool_version);
    out.push_str("presentation:\n");
    for line in doc.presentation_echo.lines() {
        let _ = writeln!(out, "  {line}");
    }

    if !doc.relators.is_empty() {
        out.push_str("relators:\n");
        let mut rows = vec![vec!["#".into(), "root".into(), "exponent".into(), "abelianized root".into()]];
        for (i, r) in doc.relators.iter().enumerate() {
            let ab: Vec<String> = r.abelianized_root.iter().map(value_text).collect();
            rows.push(vec![
                (i + 1).to_string(),
                r.root.clone(),
                r.exponent.to_string(),
                format!("({})", ab.join(", ")),
            ]);
        }
        out.push_str(&table(&rows));
    }

    let c = &doc.classification;
    out.push_str("classification:\n");
    if !c.piece_report.is_empty() {
        let mut rows = vec![vec!["#".into(), "length".into(), "max piece".into(), "min pieces".into(), "ratio".into()]];
        for p in &c.piece_report {
            rows.push(vec![
                p.relator.to_string(),
                p.relator_length.to_string(),
                p.max_piece_length.to_string(),
                value_text(&p.min_piece_count),
                p.metric_ratio.clone(),
            ]);
        }
        out.push_str(&table(&rows));
    }
    let flags: Vec<String> =
        c.t_flags.iter().map(|(q, ok)| format!("T({q})={}", if *ok { "yes" } else { "no" })).collect();
    let rows = vec![
        vec!["C(p) holds for p <=".to_string(), value_text(&c.c_max)],
        vec!["max piece ratio".to_string(), c.metric_lambda_star.clone()],
        vec!["triangle flags".to_string(), flags.join(" ")],
        vec!["CLA".to_string(), c.cla.clone()],
        vec!["BCC status".to_string(), c.bcc_status.clone()],
    ];
    out.push_str(&table(&rows));

    if let Some(k) = &doc.ktheory {
        out.push_str("ktheory:\n");
        let g = |name: &str, g: &GroupOut| {
            let torsion: Vec<String> = g.torsion.iter().map(value_text).collect();
            vec![
                name.to_string(),
                group_text(g),
                format!("rank {}", g.rank),
                format!("torsion [{}]", torsion.join(", ")),
            ]
        };
        let rows = vec![
            g("K0", &k.k0),
            g("K1", &k.k1),
            g("R", &k.r),
            g("relative K0", &k.relative_k0),
            g("relative K1", &k.relative_k1),
        ];
        out.push_str(&table(&rows));
        let rows = vec![
            vec!["rank A".to_string(), k.rank_a.to_string()],
            vec!["certificate".to_string(), k.certificate.clone()],
            vec!["conditional".to_string(), k.conditional.to_string()],
        ];
        out.push_str(&table(&rows));
    }
    out
}

pub fn render_json(doc: &OutputDocument) -> String {
    serde_json::to_string(doc).expect("document serializes")
}
