//! One analysis run: choose the working field and truncation, expand, build
//! the tree, analyse the bars and run the oracle.

use num_integer::Integer;
use num_rational::Rational64;

use crate::baranalysis::{analyze_tree, BarAnalysis};
use crate::error::{Error, Result};
use crate::exactalg::cyclo::euler_phi;
use crate::exactalg::{BiPoly, CycloField, Field};
use crate::jacoracle::{polar_roots, verify, PolarRoots, VerificationReport};
use crate::npsolve::{expand_roots_counting, Expansion};
use crate::puiseux::{Exponent, PuiseuxSeries};
use crate::treemodel::{build_tree_in, Tree};

/// Largest field degree tried when enlarging the field.
pub const MAX_FIELD_DEGREE: usize = 16;
/// Largest truncation target reached by doubling.
pub const MAX_TARGET: i64 = 256;

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Requested conductor; the working field contains Q(zeta_N).
    pub field: u32,
    /// Fixed truncation target; chosen automatically when absent.
    pub trunc: Option<Exponent>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub field: Field,
    pub f: BiPoly,
    pub g: BiPoly,
    pub f_roots: Expansion,
    pub g_roots: Expansion,
    pub tree: Tree,
    pub analyses: Vec<BarAnalysis>,
    pub polar: PolarRoots,
    pub target: Exponent,
}

impl Session {
    pub fn verify(&self) -> Result<VerificationReport> {
        verify(&self.f, &self.g, &self.tree, &self.analyses, &self.polar)
    }
}

/// Conductors tried in order: multiples of `n` with degree at most MAX_FIELD_DEGREE.
fn larger_fields(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (2..=64u32).map(|k| n * k).filter(|&m| euler_phi(m) <= MAX_FIELD_DEGREE).collect();
    out.sort_by_key(|&m| (euler_phi(m), m));
    out
}

fn base_conductor(requested: u32) -> u32 {
    4u32.lcm(&requested.max(1))
}

fn series_of(exp: &Expansion) -> Result<Vec<PuiseuxSeries>> {
    let mut out = Vec::new();
    for r in &exp.roots {
        if r.multiplicity > 1 {
            return Err(Error::InputViolatesSimplicity(format!("repeated root {}", r.series)));
        }
        for _ in 0..r.distinct {
            out.push(r.series.clone());
        }
    }
    Ok(out)
}

fn positive_part(f: &BiPoly) -> (BiPoly, i64) {
    let e = f.y_valuation();
    (f.shift_y(-e).normalize_laurent(), e)
}

enum Attempt {
    Done(Box<Session>),
    Deeper(Exponent),
    Wider,
}

fn attempt(f0: &BiPoly, g0: &BiPoly, field: &Field, target: Exponent, fixed: bool) -> Result<Attempt> {
    let f = f0.embed(field)?;
    let g = g0.embed(field)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (fs, e1) = positive_part(&f);
    let (gs, e2) = positive_part(&g);
    let fr = expand_roots_counting(&fs, target)?;
    let gr = expand_roots_counting(&gs, target)?;
    if !fr.unresolved.is_empty() || !gr.unresolved.is_empty() {
        return Ok(Attempt::Wider);
    }
    let alpha = series_of(&fr)?;
    let beta = series_of(&gr)?;
    let clustered = fr.roots.iter().chain(&gr.roots).any(|r| r.distinct > 1);
    let deeper = |e: Exponent| {
        if fixed {
            Err(Error::TruncationTooShort(format!("target {e} not reached")))
        } else {
            Ok(Attempt::Deeper(e))
        }
    };
    if clustered {
        return deeper(target * 2);
    }
    let tree = match build_tree_in(field, &alpha, &beta, e1, e2) {
        Ok(t) => t,
        Err(Error::TruncationTooShort(_)) => return deeper(target * 2),
        Err(e) => return Err(e),
    };
    let needed = tree.max_finite_height() + Rational64::from_integer(2);
    if !fixed && target < needed {
        return Ok(Attempt::Deeper(needed.ceil()));
    }
    if tree.ramification > 1 && (field.conductor() as i64) % tree.ramification != 0 {
        return Ok(Attempt::Wider);
    }
    let polar = match polar_roots(&f, &g, &tree, target) {
        Ok(p) => p,
        Err(Error::TruncationTooShort(_) | Error::Indeterminate(_)) => return deeper(target * 2),
        Err(e) => return Err(e),
    };
    let analyses = analyze_tree(&tree)?;
    Ok(Attempt::Done(Box::new(Session {
        field: field.clone(),
        f,
        g,
        f_roots: fr,
        g_roots: gr,
        tree,
        analyses,
        polar,
        target,
    })))
}

/// Run the full pipeline, enlarging the field and deepening the truncation as needed.
pub fn open(f: &BiPoly, g: &BiPoly, opts: &Options) -> Result<Session> {
    let mut n = base_conductor(opts.field.max(f.field().conductor()).max(g.field().conductor()));
    if !n.is_multiple_of(f.field().conductor()) || !n.is_multiple_of(g.field().conductor()) {
        n = n.lcm(&f.field().conductor()).lcm(&g.field().conductor());
    }
    let fixed = opts.trunc.is_some();
    let mut target = opts.trunc.unwrap_or_else(|| Rational64::from_integer(4));
    let mut wider = larger_fields(n).into_iter();
    let mut field = CycloField::new(n);
    loop {
        match attempt(f, g, &field, target, fixed)? {
            Attempt::Done(mut s) => {
                if !s.polar.records.iter().all(|r| r.algebraic.is_none()) {
                    resolve_polar(&mut s, n)?;
                }
                return Ok(*s);
            }
            Attempt::Deeper(t) => {
                if t > Rational64::from_integer(MAX_TARGET) {
                    return Err(Error::TruncationBudgetExceeded(MAX_TARGET as usize));
                }
                target = t;
            }
            Attempt::Wider => match wider.next() {
                Some(m) => field = CycloField::new(m),
                None => {
                    return Err(Error::FieldTooSmall(format!(
                        "no cyclotomic field of degree at most {MAX_FIELD_DEGREE} containing Q(zeta_{n}) splits the roots"
                    )))
                }
            },
        }
    }
}

/// Move to a larger field when the ramification of J calls for more roots of unity.
fn resolve_polar(s: &mut Session, base: u32) -> Result<()> {
    let here = s.field.conductor();
    let d = u32::try_from(s.polar.ramification).unwrap_or(u32::MAX);
    if here.is_multiple_of(d) {
        return Ok(());
    }
    let wanted = here.lcm(&d);
    let Some(m) = larger_fields(base).into_iter().find(|m| m % wanted == 0) else {
        return Ok(());
    };
    if let Ok(Attempt::Done(better)) = attempt(&s.f, &s.g, &CycloField::new(m), s.target, true) {
        *s = *better;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse::parse_expression;

    #[test]
    fn cusp_needs_cube_roots() {
        let k = CycloField::new(4);
        let f = parse_expression("x^3 - y^4", &k, false).unwrap();
        let g = parse_expression("y", &k, false).unwrap();
        let s = open(&f, &g, &Options::default()).unwrap();
        assert_eq!(s.field.conductor() % 3, 0);
        assert_eq!(s.polar.total(), 2);
        let rep = s.verify().unwrap();
        assert!(rep.pass, "{:#?}", rep.failures().collect::<Vec<_>>());
    }
}
