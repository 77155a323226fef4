//! Printed tables and examples, recomputed against the engine.
//!
//! Expected values are stored exactly as printed. A disagreement is a mismatch unless the
//! shipped discrepancy ledger lists it, in which case it is a documented discrepancy.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cycliccode::{count_dual_containing, exponents_of, split_factors, CodeFamily, RepeatedRootCode};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::polyring::Poly;
use crate::quantum::{css, eaqec, qec_mds_scan, singleton_check, steane, Inner};
use crate::wtdist::{brute_distance, distance};

const FIXTURES: &str = include_str!("../data/fixtures.json");
const LEDGER: &str = include_str!("../data/discrepancies.json");

/// Rows with `n` at most this are also checked by direct distance computation.
pub const BRUTE_MAX_N: u64 = 32;

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FieldParams {
    pub p: u64,
    pub m: u32,
    pub r: u32,
    pub s: u32,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TableRow {
    pub generator: String,
    /// Second factor `m(x)` of a Steane pair; the inner code is `<g m>`.
    #[serde(default)]
    pub extra: Option<String>,
    pub code: String,
    #[serde(default)]
    pub outer: Option<String>,
    pub quantum: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct MdsEntry {
    pub code: String,
    pub quantum: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct EaqecFixture {
    pub generator: String,
    pub d: u64,
    pub hull: String,
    pub l: u64,
    pub quantum: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Fixture {
    pub id: String,
    pub title: String,
    pub field: FieldParams,
    #[serde(default)]
    pub factorization: Option<String>,
    /// Root symbol of a product-form factorization, as an element text.
    #[serde(default)]
    pub theta: Option<String>,
    #[serde(default)]
    pub css_count: Option<String>,
    #[serde(default)]
    pub qec_mds: Option<Vec<MdsEntry>>,
    #[serde(default)]
    pub eaqec: Option<EaqecFixture>,
    #[serde(default)]
    pub construction: Option<String>,
    #[serde(default)]
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Discrepancy {
    pub fixture: String,
    pub item: String,
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected_input: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    DocumentedDiscrepancy,
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::DocumentedDiscrepancy => "documented-discrepancy",
            Status::Mismatch => "mismatch",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub item: String,
    pub expected: String,
    pub recomputed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A classical code of a table row: printed and recomputed `[n, k, d]`.
#[derive(Clone, Debug, Serialize)]
pub struct RowOutcome {
    pub item: String,
    pub expected: [u64; 3],
    pub recomputed: Option<[u64; 3]>,
    pub k_match: bool,
    pub d_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_d: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub title: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<RowOutcome>,
}

pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(FIXTURES).expect("embedded fixtures are valid JSON"))
}

pub fn discrepancy_ledger() -> &'static [Discrepancy] {
    static CELL: OnceLock<Vec<Discrepancy>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(LEDGER).expect("embedded ledger is valid JSON"))
}

pub fn fixture(id: &str) -> Result<&'static Fixture> {
    fixtures()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::Precondition(format!("unknown fixture id {id}")))
}

fn ledger_entry(id: &str, item: &str) -> Option<&'static Discrepancy> {
    discrepancy_ledger().iter().find(|d| d.fixture == id && d.item == item)
}

/// Printed parameters `[n,k,d]`, `[[n,k,d]]` or `[[n,k,d;c]]`, with an optional `_{q}` subscript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Printed {
    pub values: Vec<u64>,
    pub subscript: Option<u64>,
}

pub fn parse_printed(text: &str) -> Result<Printed> {
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg} in {text:?}") };
    let (body, sub) = match text.split_once('_') {
        Some((b, s)) => (b, Some(s.trim_matches(|c| c == '{' || c == '}').trim())),
        None => (text, None),
    };
    let inner = body.trim().trim_start_matches('[').trim_end_matches(']');
    let values = inner
        .split([',', ';'])
        .map(|v| v.trim().parse::<u64>().map_err(|_| bad("expected an integer")))
        .collect::<Result<Vec<_>>>()?;
    let subscript = sub.map(|s| s.parse::<u64>().map_err(|_| bad("bad subscript"))).transpose()?;
    Ok(Printed { values, subscript })
}

/// Drops TeX grouping braces so `(x+1)^{17}` reads as `(x+1)^17`.
pub fn plain(text: &str) -> String {
    text.chars().filter(|&c| c != '{' && c != '}').collect()
}

fn nkd(v: [u64; 3]) -> String {
    format!("[{},{},{}]", v[0], v[1], v[2])
}

struct Ctx<'a> {
    fixture: &'a Fixture,
    checks: Vec<Check>,
    rows: Vec<RowOutcome>,
    subscripts: BTreeSet<u64>,
}

impl Ctx<'_> {
    fn push(&mut self, item: String, expected: String, recomputed: String, equal: bool) {
        let entry = ledger_entry(&self.fixture.id, &item);
        let status = match (equal, entry) {
            (true, _) => Status::Match,
            (false, Some(_)) => Status::DocumentedDiscrepancy,
            (false, None) => Status::Mismatch,
        };
        let note = entry.map(|d| d.note.clone());
        self.checks.push(Check { item, expected, recomputed, status, note });
    }

    fn push_err(&mut self, item: String, expected: String, e: &Error) {
        self.push(item, expected, format!("error: {e}"), false);
    }

    fn printed(&mut self, text: &str) -> Result<Printed> {
        let p = parse_printed(text)?;
        if let Some(q) = p.subscript {
            self.subscripts.insert(q);
        }
        Ok(p)
    }

    /// The generator text, replaced by the ledger's corrected input when one exists.
    fn input(&mut self, item: &str, text: &str) -> String {
        match ledger_entry(&self.fixture.id, item).and_then(|d| d.corrected_input.clone()) {
            Some(fixed) => {
                self.push(item.to_string(), text.to_string(), fixed.clone(), false);
                fixed
            }
            None => plain(text),
        }
    }
}

fn family_of(fp: &FieldParams) -> Result<CodeFamily> {
    CodeFamily::new(&FieldSpec::build(fp.p, fp.m)?, fp.r, fp.s)
}

fn code_of(family: &CodeFamily, text: &str) -> Result<RepeatedRootCode> {
    let g = Poly::parse(family.field(), text)?;
    family.code(exponents_of(family, &g)?.0)
}

/// `(factor, exponent)` pairs of a printed product, each factor as a monic polynomial.
fn printed_factors(family: &CodeFamily, fx: &Fixture, text: &str) -> Result<Vec<(Poly, u64)>> {
    let f = family.field();
    if let Some(theta) = &fx.theta {
        let th = Poly::parse(f, theta)?;
        let x = Poly::x(f);
        return Ok((0..family.base_len()).map(|h| (&x - &th.pow(h), family.ps())).collect());
    }
    split_factors(&plain(text))?
        .into_iter()
        .map(|(t, e)| Ok((Poly::parse(f, &t)?.monic(), e)))
        .collect()
}

fn check_factorization(ctx: &mut Ctx<'_>, family: &CodeFamily, text: &str) {
    let all = vec![family.ps(); family.reps().len()];
    let recomputed = family.factored_text(&all);
    match printed_factors(family, ctx.fixture, text) {
        Ok(list) => {
            let mut printed: Vec<String> = list.into_iter().map(|(m, e)| format!("({m})^{e}")).collect();
            let mut ours: Vec<String> = family.minpolys().iter().map(|m| format!("({m})^{}", family.ps())).collect();
            printed.sort();
            ours.sort();
            ctx.push("factorization".into(), text.to_string(), recomputed, printed == ours);
        }
        Err(e) => ctx.push_err("factorization".into(), text.to_string(), &e),
    }
}

fn check_count(ctx: &mut Ctx<'_>, family: &CodeFamily, printed: &str) {
    match count_dual_containing(family) {
        Ok(c) => {
            let c = c.to_string();
            let eq = c == printed;
            ctx.push("count".into(), printed.to_string(), c, eq);
        }
        Err(e) => ctx.push_err("count".into(), printed.to_string(), &e),
    }
}

fn row_outcome(item: &str, expected: &Printed, c: Option<&RepeatedRootCode>) -> Result<RowOutcome> {
    let exp = [expected.values[0], expected.values[1], expected.values[2]];
    let Some(c) = c else {
        return Ok(RowOutcome { item: item.into(), expected: exp, recomputed: None, k_match: false, d_match: false, brute_d: None });
    };
    let got = [c.n(), c.k(), distance(c)?.d];
    let brute_d = if c.n() <= BRUTE_MAX_N { Some(brute_distance(c, BRUTE_MAX_N)?) } else { None };
    Ok(RowOutcome {
        item: item.into(),
        expected: exp,
        recomputed: Some(got),
        k_match: exp[0] == got[0] && exp[1] == got[1],
        d_match: exp[2] == got[2],
        brute_d,
    })
}

fn check_code(ctx: &mut Ctx<'_>, item: String, printed: &str, c: Option<&RepeatedRootCode>) -> Result<()> {
    let expected = ctx.printed(printed)?;
    let row = row_outcome(&item, &expected, c)?;
    let recomputed = match (row.recomputed, row.brute_d) {
        (Some(v), Some(b)) if b != v[2] => format!("{} (direct d = {b})", nkd(v)),
        (Some(v), _) => nkd(v),
        (None, _) => "unavailable".into(),
    };
    let eq = row.k_match && row.d_match;
    ctx.push(item, printed.to_string(), recomputed, eq);
    ctx.rows.push(row);
    Ok(())
}

fn check_quantum(ctx: &mut Ctx<'_>, item: String, printed: &str, got: Result<crate::quantum::QecCode>) -> Result<()> {
    let expected = ctx.printed(printed)?;
    match got {
        Ok(qc) => {
            let slack = singleton_check(&qc)?.slack;
            let eq = expected.values == [qc.n, qc.k, qc.d];
            ctx.push(item, printed.to_string(), format!("{qc} (Singleton slack {slack})"), eq);
        }
        Err(e) => ctx.push_err(item, printed.to_string(), &e),
    }
    Ok(())
}

fn css_table(ctx: &mut Ctx<'_>, family: &CodeFamily) -> Result<()> {
    for (i, row) in ctx.fixture.rows.iter().enumerate() {
        let tag = format!("row{}", i + 1);
        let text = ctx.input(&format!("{tag}.generator"), &row.generator);
        let c = code_of(family, &text);
        if let Err(e) = &c {
            ctx.push_err(format!("{tag}.generator"), row.generator.clone(), e);
        }
        let c = c.ok();
        check_code(ctx, format!("{tag}.code"), &row.code, c.as_ref())?;
        let q = match &c {
            Some(c) => css(c, Inner::Dual),
            None => Err(Error::Precondition("generator unavailable".into())),
        };
        check_quantum(ctx, format!("{tag}.quantum"), &row.quantum, q)?;
    }
    Ok(())
}

fn steane_table(ctx: &mut Ctx<'_>, family: &CodeFamily) -> Result<()> {
    for (i, row) in ctx.fixture.rows.iter().enumerate() {
        let tag = format!("row{}", i + 1);
        let g = ctx.input(&format!("{tag}.generator"), &row.generator);
        let m = ctx.input(&format!("{tag}.extra"), row.extra.as_deref().unwrap_or("1"));
        let inner = code_of(family, &format!("({g})*({m})"));
        let outer = code_of(family, &g);
        for (what, r) in [("extra", &inner), ("generator", &outer)] {
            if let Err(e) = r {
                ctx.push_err(format!("{tag}.{what}"), row.generator.clone(), e);
            }
        }
        let (inner, outer) = (inner.ok(), outer.ok());
        check_code(ctx, format!("{tag}.code"), &row.code, inner.as_ref())?;
        let outer_text = row.outer.clone().unwrap_or_default();
        check_code(ctx, format!("{tag}.outer"), &outer_text, outer.as_ref())?;
        let q = match (&inner, &outer) {
            (Some(c), Some(o)) => steane(c, o),
            _ => Err(Error::Precondition("generator unavailable".into())),
        };
        check_quantum(ctx, format!("{tag}.quantum"), &row.quantum, q)?;
    }
    Ok(())
}

fn check_qec_mds(ctx: &mut Ctx<'_>, family: &CodeFamily, entries: &[MdsEntry]) -> Result<()> {
    let scan = match qec_mds_scan(family) {
        Ok(s) => s,
        Err(e) => {
            ctx.push_err("qec_mds".into(), String::new(), &e);
            return Ok(());
        }
    };
    let mut got_codes = BTreeSet::new();
    let mut got_quantum = BTreeSet::new();
    for qc in &scan {
        // Each scanned code satisfies k = 2 k_C - n with slack zero.
        got_codes.insert(vec![qc.n, (qc.n + qc.k) / 2, qc.d]);
        got_quantum.insert(vec![qc.n, qc.k, qc.d]);
    }
    for (i, e) in entries.iter().enumerate() {
        let code = ctx.printed(&e.code)?;
        let quantum = ctx.printed(&e.quantum)?;
        let found = got_codes.contains(&code.values);
        ctx.push(format!("mds{}.code", i + 1), e.code.clone(), if found { e.code.clone() } else { "absent".into() }, found);
        let found = got_quantum.contains(&quantum.values);
        let shown = if found {
            let count = scan.iter().filter(|q| [q.n, q.k, q.d] == quantum.values[..]).count();
            format!("[[{},{},{}]] x{count} (Singleton slack 0)", quantum.values[0], quantum.values[1], quantum.values[2])
        } else {
            "absent".into()
        };
        ctx.push(format!("mds{}.quantum", i + 1), e.quantum.clone(), shown, found);
    }
    let listed: BTreeSet<Vec<u64>> =
        entries.iter().map(|e| parse_printed(&e.quantum).map(|p| p.values)).collect::<Result<_>>()?;
    let all: Vec<String> = got_quantum.iter().map(|v| format!("[[{},{},{}]]", v[0], v[1], v[2])).collect();
    ctx.push("qec_mds.complete".into(), listed.len().to_string(), all.join(" "), listed == got_quantum);
    Ok(())
}

fn check_eaqec(ctx: &mut Ctx<'_>, family: &CodeFamily, ex: &EaqecFixture) -> Result<()> {
    let c = match code_of(family, &plain(&ex.generator)) {
        Ok(c) => c,
        Err(e) => {
            ctx.push_err("generator".into(), ex.generator.clone(), &e);
            return Ok(());
        }
    };
    let d = distance(&c)?.d;
    ctx.push("d".into(), ex.d.to_string(), d.to_string(), d == ex.d);
    let hull = c.hull();
    match code_of(family, &plain(&ex.hull)) {
        Ok(h) => {
            let eq = h.exps() == hull.exps();
            ctx.push("hull".into(), ex.hull.clone(), family.factored_text(hull.exps()), eq);
        }
        Err(e) => ctx.push_err("hull".into(), ex.hull.clone(), &e),
    }
    ctx.push("l".into(), ex.l.to_string(), hull.k().to_string(), hull.k() == ex.l);
    let expected = ctx.printed(&ex.quantum)?;
    match eaqec(&c) {
        Ok(ea) => {
            let eq = expected.values == [ea.n, ea.k, ea.d, ea.c];
            ctx.push("quantum".into(), ex.quantum.clone(), ea.to_string(), eq);
        }
        Err(e) => ctx.push_err("quantum".into(), ex.quantum.clone(), &e),
    }
    Ok(())
}

/// Recomputes one fixture.
pub fn reproduce(id: &str) -> Result<FixtureReport> {
    let fx = fixture(id)?;
    let family = family_of(&fx.field)?;
    let mut ctx = Ctx { fixture: fx, checks: Vec::new(), rows: Vec::new(), subscripts: BTreeSet::new() };
    if let Some(text) = &fx.factorization {
        check_factorization(&mut ctx, &family, text);
    }
    if let Some(count) = &fx.css_count {
        check_count(&mut ctx, &family, count);
    }
    if let Some(entries) = &fx.qec_mds {
        check_qec_mds(&mut ctx, &family, entries)?;
    }
    if let Some(ex) = &fx.eaqec {
        check_eaqec(&mut ctx, &family, ex)?;
    }
    match fx.construction.as_deref() {
        Some("css") => css_table(&mut ctx, &family)?,
        Some("steane") => steane_table(&mut ctx, &family)?,
        Some(other) => return Err(Error::Precondition(format!("unknown construction {other}"))),
        None => {}
    }
    if !ctx.subscripts.is_empty() {
        let q = family.field().q();
        let printed: Vec<String> = ctx.subscripts.iter().map(|s| s.to_string()).collect();
        let eq = ctx.subscripts.iter().all(|&s| s == q);
        ctx.push("subscript".into(), printed.join(","), q.to_string(), eq);
    }
    let status = ctx.checks.iter().map(|c| c.status).max().unwrap_or(Status::Match);
    Ok(FixtureReport { id: fx.id.clone(), title: fx.title.clone(), status, checks: ctx.checks, rows: ctx.rows })
}

/// Every fixture, in stored order.
pub fn reproduce_all() -> Result<Vec<FixtureReport>> {
    fixtures().iter().map(|f| reproduce(&f.id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_parameters() {
        assert_eq!(parse_printed("[136,133,3]_{17}").unwrap(), Printed { values: vec![136, 133, 3], subscript: Some(17) });
        assert_eq!(parse_printed("[[88,8,11;4]]").unwrap().values, vec![88, 8, 11, 4]);
        assert!(parse_printed("[[88,x]]").is_err());
    }

    #[test]
    fn ids_are_unique_and_ledger_points_at_fixtures() {
        let ids: BTreeSet<&str> = fixtures().iter().map(|f| f.id.as_str()).collect();
        assert_eq!(ids.len(), fixtures().len());
        assert_eq!(ids.len(), 23);
        for d in discrepancy_ledger() {
            assert!(ids.contains(d.fixture.as_str()), "{}", d.fixture);
        }
    }

    #[test]
    fn table_two_codes_match() {
        let rep = reproduce("table2").unwrap();
        assert_eq!(rep.status, Status::DocumentedDiscrepancy);
        assert!(rep.checks.iter().filter(|c| c.item.ends_with(".code")).all(|c| c.status == Status::Match));
        let quantum: Vec<Status> =
            rep.checks.iter().filter(|c| c.item.ends_with(".quantum")).map(|c| c.status).collect();
        assert_eq!(quantum[..6], [Status::Match; 6]);
        assert_eq!(quantum[6], Status::DocumentedDiscrepancy);
    }

    #[test]
    fn example_one_count_is_documented() {
        let rep = reproduce("example1").unwrap();
        let count = rep.checks.iter().find(|c| c.item == "count").unwrap();
        assert_eq!(count.recomputed, "405017091");
        assert_eq!(count.status, Status::DocumentedDiscrepancy);
        assert_eq!(rep.checks.iter().find(|c| c.item == "factorization").unwrap().status, Status::Match);
    }
}
