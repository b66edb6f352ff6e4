//! The report document: one JSON object per run, plus a human rendering of it.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::baranalysis::{fmt_delta, predict_c, total_via_basics, weeds, BarAnalysis};
use crate::error::Error;
use crate::factorrep::{EquivalenceVerdict, FactorReport, Generic, Reduction};
use crate::jacoracle::{PolarRootRecord, VerificationReport};
use crate::npsolve::Expansion;
use crate::puiseux::fmt_exponent;
use crate::session::Session;
use crate::treemodel::{cover_of, render_tree, Side, Tree};

pub const FORMAT: &str = "polartree-report/1";

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub command: String,
    pub input: Option<InputDoc>,
    pub roots: Option<RootsDoc>,
    pub tree: Option<TreeDoc>,
    pub bars: Option<Vec<BarDoc>>,
    pub predictions: Option<Vec<PredictionDoc>>,
    pub oracle: Option<OracleDoc>,
    pub verification: Option<VerificationDoc>,
    pub factors: Option<FactorsDoc>,
    pub comparison: Option<ComparisonDoc>,
    pub reduction: Option<ReductionDoc>,
    pub generic: Option<GenericDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDoc {
    pub f: String,
    pub g: String,
    pub field: u32,
    pub target: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootsDoc {
    pub f: Vec<RootDoc>,
    pub g: Vec<RootDoc>,
    pub e1: i64,
    pub e2: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDoc {
    pub series: String,
    pub multiplicity: usize,
    pub distinct: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeDoc {
    pub ascii: String,
    pub roots: Vec<NamedRoot>,
    pub trunks: Vec<TrunkDoc>,
    pub e1: i64,
    pub e2: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedRoot {
    pub name: String,
    pub side: &'static str,
    pub series: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrunkDoc {
    pub bar: String,
    pub point: String,
    pub s: usize,
    pub t: usize,
    pub top: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BarDoc {
    pub name: String,
    pub height: String,
    pub lambda: String,
    pub nu_f: String,
    pub nu_g: String,
    pub collinear: bool,
    pub purely_noncollinear: bool,
    pub points: Vec<PointDoc>,
    pub mero: String,
    pub mero_zeros: Vec<(String, usize)>,
    pub m: usize,
    pub m_star: usize,
    pub n: usize,
    pub tau: i64,
    pub mu: i64,
    pub zero_nu: bool,
    /// Collinear points whose cover is empty.
    pub no_cover: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointDoc {
    pub point: String,
    pub kind: &'static str,
    pub p: usize,
    pub q: usize,
    pub delta: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictionDoc {
    pub bar: String,
    pub t: Option<Vec<(String, i64)>>,
    pub t_total: Option<i64>,
    pub c: Vec<(String, i64)>,
    pub weeds: Option<i64>,
    pub via_basics: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleDoc {
    pub jacobian: String,
    pub y_exponent: i64,
    pub k: usize,
    pub total: usize,
    pub coinciding: usize,
    pub records: Vec<RecordDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordDoc {
    pub series: String,
    pub algebraic: Option<String>,
    pub multiplicity: usize,
    pub count: usize,
    pub climbs: Vec<(String, String)>,
    pub departure: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationDoc {
    pub pass: bool,
    pub checks: Vec<CheckDoc>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckDoc {
    pub family: String,
    pub subject: String,
    pub predicted: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorsDoc {
    pub classes: Vec<ClassDoc>,
    pub q_ground: Vec<usize>,
    pub q_ground_order: usize,
    pub total: usize,
    pub coinciding: usize,
    pub partition_complete: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassDoc {
    pub bars: Vec<String>,
    pub height: String,
    pub collinear: bool,
    pub p_group: Vec<usize>,
    pub p_order: usize,
    pub p_truncation: Option<String>,
    pub q_group: Vec<usize>,
    pub q_order: usize,
    pub i_f: String,
    pub i_g: String,
    pub i_f_direct: Option<String>,
    pub i_g_direct: Option<String>,
    pub theorem_i: bool,
    pub addendum: bool,
    pub merle: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonDoc {
    pub level: &'static str,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionDoc {
    pub s: i64,
    pub f_reduced: String,
    pub g_reduced: String,
    pub f: String,
    pub g: String,
    pub e1: i64,
    pub e2: i64,
    pub jacobian_identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericDoc {
    pub c: String,
    pub f: String,
    pub g: String,
    pub m: usize,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            format: FORMAT,
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn input_doc(s: &Session) -> InputDoc {
    InputDoc {
        f: s.f.to_string(),
        g: s.g.to_string(),
        field: s.field.conductor(),
        target: fmt_exponent(&s.target),
    }
}

fn root_docs(e: &Expansion) -> Vec<RootDoc> {
    e.roots
        .iter()
        .map(|r| RootDoc {
            series: r.series.to_string(),
            multiplicity: r.multiplicity,
            distinct: r.distinct,
        })
        .collect()
}

pub fn roots_doc(s: &Session) -> RootsDoc {
    RootsDoc {
        f: root_docs(&s.f_roots),
        g: root_docs(&s.g_roots),
        e1: s.tree.e1,
        e2: s.tree.e2,
    }
}

pub fn tree_doc(tree: &Tree, analyses: &[BarAnalysis]) -> TreeDoc {
    TreeDoc {
        ascii: render_tree(tree, analyses),
        roots: tree
            .roots
            .iter()
            .map(|r| NamedRoot {
                name: r.name.clone(),
                side: match r.side {
                    Side::F => "f",
                    Side::G => "g",
                },
                series: r.series.to_string(),
            })
            .collect(),
        trunks: tree
            .trunks
            .iter()
            .map(|t| TrunkDoc {
                bar: tree.bar(t.bar).name.clone(),
                point: t.point.to_string(),
                s: t.s,
                t: t.t,
                top: tree.bar(t.top).name.clone(),
            })
            .collect(),
        e1: tree.e1,
        e2: tree.e2,
    }
}

pub fn bar_docs(tree: &Tree, analyses: &[BarAnalysis]) -> Vec<BarDoc> {
    analyses
        .iter()
        .map(|a| {
            let bar = tree.bar(a.bar);
            let no_cover = a
                .collinear_points
                .iter()
                .filter(|c| match cover_of(tree, analyses, a.bar, c) {
                    Ok(cover) => cover.is_empty(),
                    Err(Error::NoPostbar | Error::NoCover) => true,
                    Err(_) => false,
                })
                .map(|c| c.to_string())
                .collect();
            BarDoc {
                name: bar.name.clone(),
                height: bar.height.to_string(),
                lambda: bar.lambda.to_string(),
                nu_f: fmt_exponent(&a.nu_f),
                nu_g: fmt_exponent(&a.nu_g),
                collinear: a.collinear,
                purely_noncollinear: a.purely_noncollinear,
                points: a
                    .points
                    .iter()
                    .map(|p| PointDoc {
                        point: p.point.to_string(),
                        kind: if a.is_collinear_point(&p.point) {
                            "collinear"
                        } else {
                            "noncollinear"
                        },
                        p: p.p,
                        q: p.q,
                        delta: fmt_delta(&p.delta),
                    })
                    .collect(),
                mero: a.mero_string(),
                mero_zeros: a.mero_zeros.iter().map(|(z, k)| (z.to_string(), *k)).collect(),
                m: a.m,
                m_star: a.m_star,
                n: a.n,
                tau: a.tau_total,
                mu: a.mu_total,
                zero_nu: a.nu_f.is_zero() || a.nu_g.is_zero(),
                no_cover,
            }
        })
        .collect()
}

pub fn prediction_docs(tree: &Tree, analyses: &[BarAnalysis]) -> Vec<PredictionDoc> {
    analyses
        .iter()
        .map(|a| {
            let c = if a.collinear {
                Vec::new()
            } else {
                a.collinear_points
                    .iter()
                    .filter_map(|z| predict_c(tree, analyses, a.bar, z).ok().map(|n| (z.to_string(), n)))
                    .collect()
            };
            PredictionDoc {
                bar: tree.bar(a.bar).name.clone(),
                t: a.t_total.map(|_| a.t_pred.iter().map(|(p, n)| (p.to_string(), *n)).collect()),
                t_total: a.t_total,
                c,
                weeds: weeds(tree, analyses, a.bar).ok(),
                via_basics: total_via_basics(tree, analyses, a.bar).ok(),
            }
        })
        .collect()
}

fn departure(tree: &Tree, r: &PolarRootRecord) -> String {
    r.placement.departure.describe(tree)
}

pub fn oracle_doc(s: &Session) -> OracleDoc {
    let tree = &s.tree;
    OracleDoc {
        jacobian: s.polar.jacobian.to_string(),
        y_exponent: s.polar.y_exponent,
        k: s.polar.k,
        total: s.polar.total(),
        coinciding: s.polar.coinciding,
        records: s
            .polar
            .records
            .iter()
            .map(|r| RecordDoc {
                series: r.series.to_string(),
                algebraic: r.algebraic.as_ref().map(|(e, p)| format!("root of {p} at y^{}", fmt_exponent(e))),
                multiplicity: r.multiplicity,
                count: r.count,
                climbs: r
                    .placement
                    .climbs
                    .iter()
                    .map(|(b, p)| (tree.bar(*b).name.clone(), p.to_string()))
                    .collect(),
                departure: departure(tree, r),
            })
            .collect(),
    }
}

pub fn verification_doc(rep: &VerificationReport) -> VerificationDoc {
    VerificationDoc {
        pass: rep.pass,
        checks: rep
            .checks
            .iter()
            .map(|c| CheckDoc {
                family: c.family.clone(),
                subject: c.subject.clone(),
                predicted: c.predicted.clone(),
                observed: c.observed.clone(),
                pass: c.pass,
            })
            .collect(),
        notes: rep.notes.clone(),
    }
}

pub fn factors_doc(tree: &Tree, rep: &FactorReport, s: &Session) -> FactorsDoc {
    let opt = |e: &Option<crate::puiseux::Exponent>| e.as_ref().map(fmt_exponent);
    FactorsDoc {
        classes: rep
            .classes
            .iter()
            .map(|c| ClassDoc {
                bars: c.bars.iter().map(|&b| tree.bar(b).name.clone()).collect(),
                height: fmt_exponent(&c.height),
                collinear: c.collinear,
                p_group: c.p_group.clone(),
                p_order: c.p_order,
                p_truncation: c.p_truncation.as_ref().map(|p| p.to_string()),
                q_group: c.q_group.clone(),
                q_order: c.q_order,
                i_f: fmt_exponent(&c.i_f),
                i_g: fmt_exponent(&c.i_g),
                i_f_direct: opt(&c.i_f_direct),
                i_g_direct: opt(&c.i_g_direct),
                theorem_i: c.theorem_i_holds(),
                addendum: c.addendum_holds(),
                merle: opt(&c.merle),
            })
            .collect(),
        q_ground: rep.q_ground.clone(),
        q_ground_order: rep.q_ground_order,
        total: rep.total,
        coinciding: s.polar.coinciding,
        partition_complete: rep.partition_complete(&s.polar),
        notes: rep.notes.clone(),
    }
}

pub fn comparison_doc(v: &EquivalenceVerdict) -> ComparisonDoc {
    ComparisonDoc {
        level: v.level.as_str(),
        witness: v.witness.clone(),
    }
}

pub fn reduction_doc(r: &Reduction) -> ReductionDoc {
    ReductionDoc {
        s: r.s,
        f_reduced: r.f_reduced.to_string(),
        g_reduced: r.g_reduced.to_string(),
        f: r.f.to_string(),
        g: r.g.to_string(),
        e1: r.e1,
        e2: r.e2,
        jacobian_identity: r.jacobian_identity,
    }
}

pub fn generic_doc(g: &Generic) -> GenericDoc {
    GenericDoc {
        c: g.c.to_string(),
        f: g.f.to_string(),
        g: g.g.to_string(),
        m: g.m,
    }
}

/// Human rendering of a report.
pub fn render(rep: &Report) -> String {
    let mut out = String::new();
    if let Some(i) = &rep.input {
        let _ = writeln!(out, "f = {}\ng = {}\nfield Q(zeta_{}), target {}", i.f, i.g, i.field, i.target);
    }
    if let Some(r) = &rep.reduction {
        let _ = writeln!(out, "reduction s = {}: f~ = {}, g~ = {}", r.s, r.f_reduced, r.g_reduced);
        let _ = writeln!(out, "  f = {}, g = {}, E = ({}, {})", r.f, r.g, r.e1, r.e2);
        let _ = writeln!(out, "  Jacobian identity: {}", if r.jacobian_identity { "holds" } else { "fails" });
    }
    if let Some(r) = &rep.roots {
        let _ = writeln!(out, "roots of f (E1 = {}):", r.e1);
        for x in &r.f {
            let _ = writeln!(out, "  {} x{}", x.series, x.multiplicity);
        }
        let _ = writeln!(out, "roots of g (E2 = {}):", r.e2);
        for x in &r.g {
            let _ = writeln!(out, "  {} x{}", x.series, x.multiplicity);
        }
    }
    if let Some(t) = &rep.tree {
        for r in &t.roots {
            let _ = writeln!(out, "{} = {}", r.name, r.series);
        }
        out.push_str(&t.ascii);
    }
    if let Some(bars) = &rep.bars {
        let _ = writeln!(
            out,
            "{:<5} {:>6} {:>6} {:>6}  {:<3} {:<3} {:<3} M_B",
            "bar", "h", "nu_f", "nu_g", "m", "m*", "n"
        );
        for b in bars {
            let _ = write!(
                out,
                "{:<5} {:>6} {:>6} {:>6}  {:<3} {:<3} {:<3} {}",
                b.name, b.height, b.nu_f, b.nu_g, b.m, b.m_star, b.n, b.mero
            );
            if b.collinear {
                out.push_str("  (collinear)");
            }
            for c in &b.no_cover {
                let _ = write!(out, "  [no cover at {c}]");
            }
            out.push('\n');
            for p in &b.points {
                let mark = if p.kind == "collinear" { "∘" } else { "×" };
                let _ = writeln!(out, "      {mark} {} [{},{}] Delta = {}", p.point, p.p, p.q, p.delta);
            }
        }
    }
    if let Some(preds) = &rep.predictions {
        for p in preds {
            if let (Some(t), Some(total)) = (&p.t, p.t_total) {
                let at: Vec<String> = t.iter().map(|(z, n)| format!("{z}:{n}")).collect();
                let _ = writeln!(out, "T({}) = {} [{}]", p.bar, total, at.join(", "));
            }
            for (z, n) in &p.c {
                let _ = writeln!(out, "C({}, {}) = {}", p.bar, z, n);
            }
        }
    }
    if let Some(o) = &rep.oracle {
        let _ = writeln!(out, "J = {}", o.jacobian);
        let _ = writeln!(out, "{} polar root(s), K = {}", o.total, o.k);
        for r in &o.records {
            let climbs: Vec<String> = r.climbs.iter().map(|(b, z)| format!("{b}@{z}")).collect();
            let what = r.algebraic.clone().unwrap_or_else(|| r.series.clone());
            let _ = writeln!(out, "  {} x{}: {} ; {}", what, r.count, climbs.join(" "), r.departure);
        }
    }
    if let Some(f) = &rep.factors {
        for c in &f.classes {
            let _ = write!(
                out,
                "class {{{}}} h={}: P {} Q {} I = ({}, {})",
                c.bars.join(","),
                c.height,
                c.p_order,
                c.q_order,
                c.i_f,
                c.i_g
            );
            if let Some(p) = &c.p_truncation {
                let _ = write!(out, " P^T = {p}");
            }
            if let Some(m) = &c.merle {
                let _ = write!(out, " merle {m}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "ground Q {}; shared with f or g {}; partition {}",
            f.q_ground_order,
            f.coinciding,
            if f.partition_complete { "complete" } else { "incomplete" }
        );
    }
    if let Some(v) = &rep.verification {
        for c in &v.checks {
            let _ = writeln!(
                out,
                "{} {} {}: predicted {}, observed {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.family,
                c.subject,
                c.predicted,
                c.observed
            );
        }
        for n in &v.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "verification {}", if v.pass { "PASS" } else { "FAIL" });
    }
    if let Some(c) = &rep.comparison {
        let _ = writeln!(out, "{}", c.level);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "  {w}");
        }
    }
    if let Some(g) = &rep.generic {
        let _ = writeln!(out, "shear y -> y + ({}) x: m = {}\n  f = {}\n  g = {}", g.c, g.m, g.f, g.g);
    }
    out
}
