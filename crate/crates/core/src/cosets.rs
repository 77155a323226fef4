//! `q`-cyclotomic cosets modulo `2^r` and the closed-form representative families.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{decompose_q, ord_mod, SignDecomposition};

/// Partition of `Z_n` into orbits under multiplication by `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub n: u64,
    pub q: u64,
    /// Sorted cosets, ordered by their minimum.
    pub cosets: Vec<Vec<u64>>,
    /// `rep_of[i]` is the minimum of the coset containing `i`.
    pub rep_of: Vec<u64>,
}

pub fn cyclotomic_cosets(n: u64, q: u64) -> CosetTable {
    let mut rep_of = vec![u64::MAX; n as usize];
    let mut cosets = Vec::new();
    for s in 0..n {
        if rep_of[s as usize] != u64::MAX {
            continue;
        }
        let mut orbit = vec![s];
        let mut cur = (s as u128 * q as u128 % n as u128) as u64;
        while cur != s {
            orbit.push(cur);
            cur = (cur as u128 * q as u128 % n as u128) as u64;
        }
        orbit.sort_unstable();
        for &e in &orbit {
            rep_of[e as usize] = s;
        }
        cosets.push(orbit);
    }
    CosetTable { n, q, cosets, rep_of }
}

impl CosetTable {
    /// Canonical representatives in increasing order.
    pub fn reps(&self) -> Vec<u64> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    pub fn is_rep(&self, s: u64) -> bool {
        s < self.n && self.rep_of[s as usize] == s
    }

    pub fn rep(&self, residue: u64) -> u64 {
        self.rep_of[(residue % self.n) as usize]
    }

    pub fn coset(&self, rep: u64) -> Result<&[u64]> {
        if !self.is_rep(rep) {
            return Err(Error::NotARepresentative(rep));
        }
        Ok(self.cosets.iter().find(|c| c[0] == rep).expect("rep has a coset"))
    }

    pub fn size(&self, rep: u64) -> Result<usize> {
        Ok(self.coset(rep)?.len())
    }

    /// Position of a representative within [`CosetTable::reps`].
    pub fn position(&self, rep: u64) -> Result<usize> {
        self.cosets.iter().position(|c| c[0] == rep).ok_or(Error::NotARepresentative(rep))
    }
}

/// Representative of the coset containing `-rep`.
pub fn negate_rep(t: &CosetTable, rep: u64) -> Result<u64> {
    if !t.is_rep(rep) {
        return Err(Error::NotARepresentative(rep));
    }
    Ok(t.rep((t.n - rep) % t.n))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `0`, `2^{r-1}` and, for `q = 2^a b - 1`, `2^{r-2}`.
    Fixed,
    D,
    O,
    /// Small `r` handled by direct coset computation.
    Direct,
}

/// One element of the structured representative set `T_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepEntry {
    pub kind: FamilyKind,
    /// Family index `i` (0 for fixed and direct entries).
    pub i: u32,
    /// Signed spelling `±3^v` inside the family (0 for fixed and direct entries).
    pub spelling: i64,
    /// `2^{r-i} * spelling mod 2^r`.
    pub residue: u64,
    /// Canonical representative of the residue's coset.
    pub rep: u64,
    /// Canonical representative of the dual partner: `-s` in a paired family, `s` itself otherwise.
    pub partner_rep: u64,
    /// Closed-form degree of the minimal polynomial.
    pub weight: u64,
}

impl RepEntry {
    pub fn self_paired(&self) -> bool {
        self.rep == self.partner_rep
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuredReps {
    pub decomposition: SignDecomposition,
    pub q: u64,
    pub r: u32,
    pub n: u64,
    pub entries: Vec<RepEntry>,
    /// The `E_i` families for `q = 2^a b - 1`, as `(i, residues)`; empty otherwise.
    pub e_families: Vec<(u32, Vec<u64>)>,
}

impl StructuredReps {
    pub fn entry(&self, rep: u64) -> Option<&RepEntry> {
        self.entries.iter().find(|e| e.rep == rep)
    }
}

fn pow3_mod(v: u64, n: u64) -> u64 {
    let mut acc = 1u64 % n;
    for _ in 0..v {
        acc = acc * 3 % n;
    }
    acc
}

/// Assembles `T_n` from the closed-form families.
pub fn structured_reps(q: u64, r: u32) -> Result<StructuredReps> {
    let dec = decompose_q(q)?;
    let n = 1u64 << r;
    let table = cyclotomic_cosets(n, q);
    let (a, sign) = (dec.a, dec.sign);

    if r <= 2 {
        let entries = table
            .reps()
            .into_iter()
            .map(|rep| RepEntry {
                kind: FamilyKind::Direct,
                i: 0,
                spelling: 0,
                residue: rep,
                rep,
                partner_rep: negate_rep(&table, rep).expect("rep"),
                weight: table.size(rep).expect("rep") as u64,
            })
            .collect();
        return Ok(StructuredReps { decomposition: dec, q, r, n, entries, e_families: Vec::new() });
    }

    let mut entries = Vec::new();
    let fixed = |residue: u64, weight: u64| RepEntry {
        kind: FamilyKind::Fixed,
        i: 0,
        spelling: 0,
        residue,
        rep: table.rep(residue),
        partner_rep: table.rep(residue),
        weight,
    };
    entries.push(fixed(0, 1));
    entries.push(fixed(n / 2, 1));
    if sign < 0 {
        entries.push(fixed(n / 4, 2));
    }

    let first = if sign > 0 { 2 } else { 3 };
    for i in first..=r {
        let scale = 1u64 << (r - i);
        // (count of 3^v, paired with negatives, weight)
        let (count, paired, weight) = if sign > 0 {
            if i <= a {
                (1u64 << (i - 2), true, 1)
            } else {
                (1u64 << (a - 2), true, 1u64 << (i - a))
            }
        } else if a == 2 {
            (1, true, 1u64 << (i - 2))
        } else if i <= a {
            (1u64 << (i - 2), false, 2)
        } else {
            (1u64 << (a - 2), true, 1u64 << (i - a))
        };
        let kind = if sign > 0 { FamilyKind::D } else { FamilyKind::O };
        let mut spellings = Vec::new();
        for v in 0..count {
            let t = pow3_mod(v, 1u64 << i) as i64;
            spellings.push(t);
            if paired {
                spellings.push(-t);
            }
        }
        for sp in spellings {
            let residue = (scale as i64 * sp).rem_euclid(n as i64) as u64;
            let partner = if paired { (n - residue) % n } else { residue };
            entries.push(RepEntry {
                kind,
                i,
                spelling: sp,
                residue,
                rep: table.rep(residue),
                partner_rep: table.rep(partner),
                weight,
            });
        }
    }

    let mut e_families = Vec::new();
    if sign < 0 {
        for i in 3..=r {
            let scale = 1u64 << (r - i);
            let spell: Vec<i64> = if a == 2 {
                vec![1, -1]
            } else {
                let count = if i <= a { 1u64 << (i - 2) } else { 1u64 << (a - 1) };
                (0..count).map(|v| pow3_mod(v, 1u64 << i) as i64).collect()
            };
            let res = spell.iter().map(|&sp| (scale as i64 * sp).rem_euclid(n as i64) as u64).collect();
            e_families.push((i, res));
        }
    }

    Ok(StructuredReps { decomposition: dec, q, r, n, entries, e_families })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structured families against a directly computed coset table.
pub fn validate_structured(s: &StructuredReps, t: &CosetTable) -> ValidationReport {
    let mut violations = Vec::new();
    if s.n != t.n || s.q % t.n != t.q % t.n {
        violations.push(format!("parameters differ: n {} vs {}, q {} vs {}", s.n, t.n, s.q, t.q));
        return ValidationReport { violations };
    }

    let mut seen = BTreeSet::new();
    for e in &s.entries {
        let rep = t.rep(e.residue);
        if !seen.insert(rep) {
            violations.push(format!("residue {} repeats coset {}", e.residue, rep));
        }
        if rep != e.rep {
            violations.push(format!("residue {} recorded with rep {}, coset minimum is {}", e.residue, e.rep, rep));
        }
        if let Ok(size) = t.size(rep) {
            if size as u64 != e.weight {
                violations.push(format!("coset {} has size {}, closed form gives {}", rep, size, e.weight));
            }
            match negate_rep(t, rep) {
                Ok(neg) if neg != e.partner_rep => violations.push(format!(
                    "partner of {} is {}, but -{} lies in coset {}",
                    rep, e.partner_rep, rep, neg
                )),
                _ => {}
            }
        }
    }
    for c in &t.cosets {
        if !seen.contains(&c[0]) {
            violations.push(format!("coset {} is not covered", c[0]));
        }
    }

    if !s.e_families.is_empty() {
        let mut e_seen = BTreeSet::new();
        let fixed = [0, s.n / 2, s.n / 4];
        for residue in fixed.iter().copied().chain(s.e_families.iter().flat_map(|(_, v)| v.iter().copied())) {
            if !e_seen.insert(t.rep(residue)) {
                violations.push(format!("E-family residue {} repeats coset {}", residue, t.rep(residue)));
            }
        }
        if e_seen.len() != t.cosets.len() {
            violations.push(format!("E families cover {} of {} cosets", e_seen.len(), t.cosets.len()));
        }
    }

    let d = s.decomposition;
    if d.sign < 0 && d.a >= 3 {
        for i in d.a + 1..=s.r {
            let ord = ord_mod(s.q, 1u64 << i);
            if ord != 1u64 << (i - d.a) {
                violations.push(format!("ord_2^{}(q) = {}, expected {}", i, ord, 1u64 << (i - d.a)));
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::prime_power;

    #[test]
    fn cosets_mod_8() {
        let t = cyclotomic_cosets(8, 17);
        assert_eq!(t.cosets.len(), 8);
        let t = cyclotomic_cosets(8, 13);
        assert_eq!(t.cosets, vec![vec![0], vec![1, 5], vec![2], vec![3, 7], vec![4], vec![6]]);
        let t = cyclotomic_cosets(8, 11);
        assert_eq!(t.cosets, vec![vec![0], vec![1, 3], vec![2, 6], vec![4], vec![5, 7]]);
    }

    #[test]
    fn negation() {
        let t = cyclotomic_cosets(8, 13);
        assert_eq!(negate_rep(&t, 1).unwrap(), 3);
        assert_eq!(negate_rep(&t, 0).unwrap(), 0);
        assert_eq!(negate_rep(&t, 5).unwrap_err(), Error::NotARepresentative(5));
        let t = cyclotomic_cosets(8, 7);
        assert_eq!(negate_rep(&t, 1).unwrap(), 1);
    }

    fn reps_of(s: &StructuredReps) -> BTreeSet<u64> {
        s.entries.iter().map(|e| e.rep).collect()
    }

    #[test]
    fn structured_examples() {
        let s = structured_reps(17, 3).unwrap();
        assert_eq!(reps_of(&s), (0..8).collect());
        let s = structured_reps(11, 3).unwrap();
        assert_eq!(reps_of(&s), [0, 1, 2, 4, 5].into_iter().collect());
        let s = structured_reps(7, 3).unwrap();
        // O_3 = {1, 3}, both self-paired.
        let o3: Vec<_> = s.entries.iter().filter(|e| e.kind == FamilyKind::O).map(|e| e.residue).collect();
        assert_eq!(o3, vec![1, 3]);
        assert!(s.entries.iter().all(|e| e.self_paired()));
        assert_eq!(reps_of(&s), [0, 1, 2, 3, 4].into_iter().collect());
    }

    #[test]
    fn validation_passes_and_fails() {
        for q in [17, 23, 13, 11, 7, 3] {
            let s = structured_reps(q, 3).unwrap();
            let report = validate_structured(&s, &cyclotomic_cosets(8, q));
            assert!(report.passed(), "q={q}: {:?}", report.violations);
        }
        let mut s = structured_reps(17, 3).unwrap();
        s.entries[3].residue = s.entries[2].residue;
        let report = validate_structured(&s, &cyclotomic_cosets(8, 17));
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.contains("repeats coset")));
    }

    #[test]
    fn structured_matches_direct_for_small_prime_powers() {
        for q in (3..200u64).step_by(2).filter(|&q| prime_power(q).is_some()) {
            for r in 1..=6 {
                let s = structured_reps(q, r).unwrap();
                let t = cyclotomic_cosets(1 << r, q);
                let report = validate_structured(&s, &t);
                assert!(report.passed(), "q={q} r={r}: {:?}", report.violations);
            }
        }
    }

    #[test]
    fn negation_is_an_involution() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 31] {
            for r in 1..=6 {
                let t = cyclotomic_cosets(1 << r, q);
                for rep in t.reps() {
                    let neg = negate_rep(&t, rep).unwrap();
                    assert_eq!(negate_rep(&t, neg).unwrap(), rep);
                }
                assert_eq!(negate_rep(&t, 0).unwrap(), 0);
                assert_eq!(negate_rep(&t, 1 << (r - 1)).unwrap(), 1 << (r - 1));
            }
        }
    }
}
