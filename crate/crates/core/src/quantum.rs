//! Quantum code parameters from repeated-root cyclic codes: CSS, Steane enlargement and
//! entanglement-assisted codes from the hull.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::cycliccode::{enumerate_codes, is_subcode, CodeFamily, RepeatedRootCode};
use crate::error::{Error, Result};
use crate::wtdist::{classify_mds, distance, MdsClass};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Nested pair `C' ⊆ C`.
    Css,
    /// `C^⊥ ⊆ C`.
    CssDualContaining,
    Steane,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Css => "CSS",
            Construction::CssDualContaining => "CSS-selfdual-pair",
            Construction::Steane => "Steane",
        })
    }
}

impl Serialize for Construction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `[[n, k, d]]_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QecCode {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub construction: Construction,
    pub source_generators: Vec<String>,
}

impl fmt::Display for QecCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

/// `[[n, k, d; c]]_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EaqecCode {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub c: u64,
    /// Hull dimension of the source code.
    pub l: u64,
    pub rate: String,
    pub net_rate: String,
    pub source_generators: Vec<String>,
}

impl fmt::Display for EaqecCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{};{}]]", self.n, self.k, self.d, self.c)
    }
}

/// Inner code of a CSS pair.
#[derive(Copy, Clone, Debug)]
pub enum Inner<'a> {
    Dual,
    Code(&'a RepeatedRootCode),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingletonReport {
    pub slack: u64,
    pub is_mds: bool,
}

/// `k <= n - 2d + 2`; a violation is an error, never a report.
pub fn singleton_check(qc: &QecCode) -> Result<SingletonReport> {
    let bound = (qc.n + 2).checked_sub(2 * qc.d);
    match bound.and_then(|b| b.checked_sub(qc.k)) {
        Some(slack) => Ok(SingletonReport { slack, is_mds: slack == 0 }),
        None => Err(Error::SingletonViolation { n: qc.n, k: qc.k, d: qc.d }),
    }
}

/// Entanglement-assisted Singleton slack `n - k + c - 2(d - 1)`, for `d <= (n + 2) / 2`.
pub fn ea_singleton_slack(ea: &EaqecCode) -> Option<i64> {
    (2 * ea.d <= ea.n + 2).then(|| ea.n as i64 - ea.k as i64 + ea.c as i64 - 2 * (ea.d as i64 - 1))
}

/// `n - 2 sum_h w_h j_h` with the closed-form degrees `w_h`.
pub fn css_closed_form_k(c: &RepeatedRootCode) -> i64 {
    2 * c.closed_form_k() as i64 - c.n() as i64
}

/// `n - sum_h w_h max(j_h, p^s - j_{partner(h)})` with the closed-form degrees `w_h`.
pub fn hull_closed_form_l(c: &RepeatedRootCode) -> u64 {
    let fam = c.family();
    let ps = fam.ps();
    let j = c.exps();
    let removed: u64 = fam
        .partners()
        .iter()
        .zip(fam.weights())
        .enumerate()
        .map(|(h, (&p, &w))| w * j[h].max(ps - j[p]))
        .sum();
    c.n() - removed
}

pub fn css(c: &RepeatedRootCode, inner: Inner<'_>) -> Result<QecCode> {
    if c.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    let qc = match inner {
        Inner::Dual => {
            if !c.is_dual_containing() {
                return Err(Error::Precondition("CSS with the dual requires C^⊥ ⊆ C".into()));
            }
            let k = 2 * c.k() - c.n();
            if css_closed_form_k(c) != k as i64 {
                return Err(Error::Inconsistent(format!(
                    "closed-form CSS dimension {} differs from 2k - n = {}",
                    css_closed_form_k(c),
                    k
                )));
            }
            QecCode {
                n: c.n(),
                k,
                d: distance(c)?.d,
                construction: Construction::CssDualContaining,
                source_generators: vec![c.generator_text()],
            }
        }
        Inner::Code(c_inner) => {
            if !is_subcode(c_inner, c)? {
                return Err(Error::Precondition("CSS requires C' ⊆ C".into()));
            }
            if c_inner.k() >= c.k() {
                return Err(Error::Precondition("CSS requires dim C' < dim C".into()));
            }
            let d = distance(c)?.d.min(distance(&c_inner.dual())?.d);
            QecCode {
                n: c.n(),
                k: c.k() - c_inner.k(),
                d,
                construction: Construction::Css,
                source_generators: vec![c.generator_text(), c_inner.generator_text()],
            }
        }
    };
    singleton_check(&qc)?;
    Ok(qc)
}

/// Steane enlargement of `C^⊥ ⊆ C ⊆ C'`: `[[n, k + k' - n, min(d, ceil((q+1) d' / q))]]`.
pub fn steane(c: &RepeatedRootCode, c_outer: &RepeatedRootCode) -> Result<QecCode> {
    if c.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    if !c.is_dual_containing() {
        return Err(Error::Precondition("Steane enlargement requires C^⊥ ⊆ C".into()));
    }
    if !is_subcode(c, c_outer)? {
        return Err(Error::Precondition("Steane enlargement requires C ⊆ C'".into()));
    }
    if c_outer.k() < c.k() + 1 {
        return Err(Error::Precondition("Steane enlargement requires k' ≥ k+1".into()));
    }
    let q = c.family().field().q();
    let d = distance(c)?.d;
    let d_outer = distance(c_outer)?.d;
    let qc = QecCode {
        n: c.n(),
        k: c.k() + c_outer.k() - c.n(),
        d: d.min(((q + 1) * d_outer).div_ceil(q)),
        construction: Construction::Steane,
        source_generators: vec![c.generator_text(), c_outer.generator_text()],
    };
    singleton_check(&qc)?;
    Ok(qc)
}

/// `[[n, k - l, d; n - k - l]]` with `l = dim Hull(C)`.
pub fn eaqec(c: &RepeatedRootCode) -> Result<EaqecCode> {
    if c.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    if c.k() == c.n() {
        return Err(Error::Precondition("EAQEC requires a proper code (its dual is zero)".into()));
    }
    let l = c.hull().k();
    let by_lcm = c.hull_via_lcm()?.k();
    let closed = hull_closed_form_l(c);
    if l != by_lcm || l != closed {
        return Err(Error::Inconsistent(format!("hull dimensions disagree: {l}, lcm {by_lcm}, closed form {closed}")));
    }
    let (n, k) = (c.n(), c.k());
    let (qk, ent) = (k - l, n - k - l);
    let ea = EaqecCode {
        n,
        k: qk,
        d: distance(c)?.d,
        c: ent,
        l,
        rate: format!("{qk}/{n}"),
        net_rate: format!("{}/{n}", qk as i64 - ent as i64),
        source_generators: vec![c.generator_text()],
    };
    if ea_singleton_slack(&ea).is_some_and(|s| s < 0) {
        return Err(Error::SingletonViolation { n: ea.n, k: ea.k, d: ea.d });
    }
    Ok(ea)
}

/// The certified QEC MDS codes: `[[n, n, 1]]` from the full space and `[[n, n-2, 2]]` from each
/// single unit exponent on the MDS-admissible representatives. Sorted by exponent vector.
pub fn qec_mds_scan(family: &CodeFamily) -> Result<Vec<QecCode>> {
    let len = family.reps().len();
    let full = family.code(vec![0; len])?;
    let allowed = crate::wtdist::mds_allowed(&full);
    let mut codes = vec![full];
    for h in (0..len).rev() {
        if allowed[h] {
            let mut exps = vec![0; len];
            exps[h] = 1;
            codes.push(family.code(exps)?);
        }
    }
    codes.sort_by(|a, b| a.exps().cmp(b.exps()));
    let mut out = Vec::with_capacity(codes.len());
    for c in &codes {
        let qc = css(c, Inner::Dual)?;
        if !singleton_check(&qc)?.is_mds {
            return Err(Error::Inconsistent(format!("{qc} from {} is not MDS", c.generator_text())));
        }
        out.push(qc);
    }
    Ok(out)
}

/// Every dual-containing code whose CSS code meets the quantum Singleton bound, by enumeration.
pub fn qec_mds_exhaustive(family: &CodeFamily, budget: u64, jobs: usize) -> Result<Vec<QecCode>> {
    let dc = enumerate_codes(family, &|c| c.is_dual_containing() && !c.is_zero_code(), budget, jobs)?;
    let mut out = Vec::new();
    for c in &dc {
        let qc = css(c, Inner::Dual)?;
        if singleton_check(&qc)?.is_mds {
            if classify_mds(c) == MdsClass::NotMds {
                return Err(Error::Inconsistent(format!("{qc} is MDS but its code is not classified MDS")));
            }
            out.push(qc);
        }
    }
    Ok(out)
}
