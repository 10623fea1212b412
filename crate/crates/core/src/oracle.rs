//! Brute-force reference enumerators.
//!
//! Neither oracle touches the forest engine. The genus tree only uses
//! [`GapSemigroup`] primitives; the exhaustive scan evaluates the Kunz
//! inequalities coordinate by coordinate on plain `bool` vectors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{self, Scope};
use crate::kunz::KunzVector;
use crate::semigroup::GapSemigroup;

/// Default largest genus the genus-tree oracle will build.
pub const GENUS_TREE_CAP: u32 = 12;
/// Largest genus for the `2^(2g-1)` scan.
pub const KUNZ_SCAN_CAP: u32 = 7;

/// `Sem(0), ..., Sem(g_max)` by the classic descent: the children of `S`
/// are `S \ {x}` for minimal generators `x > F(S)`, starting from `N`.
pub fn oracle_genus_tree(g_max: u32) -> Result<BTreeMap<u32, BTreeSet<GapSemigroup>>> {
    oracle_genus_tree_with_cap(g_max, GENUS_TREE_CAP)
}

pub fn oracle_genus_tree_with_cap(
    g_max: u32,
    cap: u32,
) -> Result<BTreeMap<u32, BTreeSet<GapSemigroup>>> {
    if g_max > cap {
        return Err(Error::OracleCap { genus: g_max, cap });
    }
    let mut levels = BTreeMap::new();
    let mut level = BTreeSet::from([GapSemigroup::naturals()]);
    for genus in 0..=g_max {
        let next: BTreeSet<GapSemigroup> = if genus < g_max {
            let children: Vec<GapSemigroup> = level
                .iter()
                .flat_map(|s| {
                    let f = s.frobenius().unwrap_or(0);
                    s.minimal_generators()
                        .into_iter()
                        .filter(move |&x| x > f)
                        .map(move |x| s.remove_generator(x).expect("minimal generator"))
                })
                .collect();
            let unique: BTreeSet<_> = children.iter().cloned().collect();
            assert_eq!(
                unique.len(),
                children.len(),
                "genus tree produced a duplicate"
            );
            unique
        } else {
            BTreeSet::new()
        };
        levels.insert(genus, level);
        level = next;
    }
    Ok(levels)
}

/// Naive `Kunz(g)` membership: every `x_i + x_j - x_{i+j} >= 0` and weight `g`.
fn naive_kunz(coords: &[bool], genus: usize) -> bool {
    let n = coords.len();
    let x = |i: usize| i32::from(coords[i - 1]);
    for i in 1..=n {
        for j in i..=n {
            if i + j <= n && x(i) + x(j) - x(i + j) < 0 {
                return false;
            }
        }
    }
    coords.iter().filter(|&&b| b).count() == genus
}

/// Every 0/1 vector of length `2g - 1` that passes the Kunz inequalities.
pub fn oracle_kunz_exhaustive(genus: u32) -> Result<BTreeSet<KunzVector>> {
    if genus > KUNZ_SCAN_CAP {
        return Err(Error::OracleCap {
            genus,
            cap: KUNZ_SCAN_CAP,
        });
    }
    if genus == 0 {
        return Err(Error::ZeroGenus);
    }
    let len = 2 * genus as usize - 1;
    let mut out = BTreeSet::new();
    for word in 0u32..1 << len {
        let coords: Vec<bool> = (0..len).map(|k| word >> k & 1 == 1).collect();
        if naive_kunz(&coords, genus as usize) {
            let bits = (word as u128) << 1;
            out.insert(KunzVector::from_raw(genus, bits));
        }
    }
    Ok(out)
}

/// Comparison of the forest engine against the oracles, on canonical gap
/// lists (`"1,2,4,5,7"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub genus: u32,
    pub frobenius: Option<u32>,
    /// From the genus-tree oracle.
    pub expected: BTreeSet<String>,
    /// From the forest engine.
    pub actual: BTreeSet<String>,
    /// From the exhaustive Kunz scan, when the genus allows it.
    pub scanned: Option<BTreeSet<String>>,
    pub missing: BTreeSet<String>,
    pub extra: BTreeSet<String>,
    pub scan_missing: BTreeSet<String>,
    pub scan_extra: BTreeSet<String>,
    /// Forest visits, counting repeats.
    pub visits: u64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
            && self.extra.is_empty()
            && self.scan_missing.is_empty()
            && self.scan_extra.is_empty()
            && self.visits == self.actual.len() as u64
    }

    /// `key=value` lines for CI.
    pub fn key_values(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        line("genus", self.genus.to_string());
        line(
            "frobenius",
            self.frobenius.map_or("*".into(), |f| f.to_string()),
        );
        line("expected", self.expected.len().to_string());
        line("actual", self.actual.len().to_string());
        line("visits", self.visits.to_string());
        line(
            "scanned",
            self.scanned
                .as_ref()
                .map_or("skipped".into(), |s| s.len().to_string()),
        );
        line("missing", self.missing.len().to_string());
        line("extra", self.extra.len().to_string());
        line("scan_missing", self.scan_missing.len().to_string());
        line("scan_extra", self.scan_extra.len().to_string());
        line("pass", self.passed().to_string());
        out
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.frobenius {
            Some(fr) => writeln!(f, "Sem({fr}, {}):", self.genus)?,
            None => writeln!(f, "Sem({}):", self.genus)?,
        }
        writeln!(f, "  genus tree     {}", self.expected.len())?;
        writeln!(
            f,
            "  forest         {} ({} visits)",
            self.actual.len(),
            self.visits
        )?;
        match &self.scanned {
            Some(s) => writeln!(f, "  Kunz scan      {}", s.len())?,
            None => writeln!(f, "  Kunz scan      skipped")?,
        }
        for (label, set) in [
            ("missing from forest", &self.missing),
            ("extra in forest", &self.extra),
            ("missing from scan", &self.scan_missing),
            ("extra in scan", &self.scan_extra),
        ] {
            for gaps in set {
                writeln!(f, "  {label}: {{{gaps}}}")?;
            }
        }
        write!(f, "  {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Checks `Sem(g)`, or `Sem(F, g)` when `frobenius` is given, against both
/// oracles.
pub fn verify(genus: u32, frobenius: Option<u32>) -> Result<OracleReport> {
    let scope = match frobenius {
        Some(f) => Scope::frobenius_genus(f, genus)?,
        None => Scope::genus(genus)?,
    };
    let keep = |s: &GapSemigroup| frobenius.is_none_or(|f| s.frobenius() == Some(u64::from(f)));

    let tree = oracle_genus_tree(genus)?;
    let expected: BTreeSet<String> = tree[&genus]
        .iter()
        .filter(|s| keep(s))
        .map(|s| s.to_string())
        .collect();

    let mut actual = BTreeSet::new();
    let visits = forest::enumerate::<Error, _>(scope, |v| {
        actual.insert(v.node.to_semigroup().to_string());
        Ok(())
    })?;

    let scanned = if genus <= KUNZ_SCAN_CAP {
        Some(
            oracle_kunz_exhaustive(genus)?
                .into_iter()
                .map(|x| x.to_semigroup())
                .filter(|s| keep(s))
                .map(|s| s.to_string())
                .collect::<BTreeSet<_>>(),
        )
    } else {
        None
    };

    let diff = |a: &BTreeSet<String>, b: &BTreeSet<String>| a.difference(b).cloned().collect();
    let (scan_missing, scan_extra) = match &scanned {
        Some(s) => (diff(&expected, s), diff(s, &expected)),
        None => Default::default(),
    };
    Ok(OracleReport {
        genus,
        frobenius,
        missing: diff(&expected, &actual),
        extra: diff(&actual, &expected),
        expected,
        actual,
        scanned,
        scan_missing,
        scan_extra,
        visits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens_of(set: &BTreeSet<GapSemigroup>) -> BTreeSet<Vec<u64>> {
        set.iter().map(|s| s.minimal_generators()).collect()
    }

    #[test]
    fn genus_tree_levels() {
        let tree = oracle_genus_tree(5).unwrap();
        assert_eq!(gens_of(&tree[&0]), BTreeSet::from([vec![1]]));
        assert_eq!(gens_of(&tree[&1]), BTreeSet::from([vec![2, 3]]));
        let five: BTreeSet<Vec<u64>> = [
            &[6, 7, 8, 9, 10, 11][..],
            &[5, 7, 8, 9, 11],
            &[5, 6, 8, 9],
            &[5, 6, 7, 9],
            &[5, 6, 7, 8],
            &[4, 6, 7],
            &[4, 7, 9, 10],
            &[4, 6, 9, 11],
            &[4, 5, 11],
            &[3, 8, 10],
            &[3, 7, 11],
            &[2, 11],
        ]
        .iter()
        .map(|g| g.to_vec())
        .collect();
        assert_eq!(gens_of(&tree[&5]), five);
        assert_eq!(
            oracle_genus_tree(13),
            Err(Error::OracleCap { genus: 13, cap: 12 })
        );
    }

    #[test]
    fn kunz_scan_small() {
        let one = oracle_kunz_exhaustive(1).unwrap();
        assert_eq!(one.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["1"]);
        let two: BTreeSet<_> = oracle_kunz_exhaustive(2)
            .unwrap()
            .iter()
            .map(|x| x.to_semigroup())
            .collect();
        let expected: BTreeSet<_> = [&[2u64, 5][..], &[3, 4, 5]]
            .iter()
            .map(|g| GapSemigroup::from_generators(g).unwrap())
            .collect();
        assert_eq!(two, expected);
        assert_eq!(oracle_kunz_exhaustive(5).unwrap().len(), 12);
        assert_eq!(
            oracle_kunz_exhaustive(8),
            Err(Error::OracleCap { genus: 8, cap: 7 })
        );
    }

    #[test]
    fn verify_examples() {
        let r = verify(5, None).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.actual.len(), 12);
        let r = verify(5, Some(7)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.actual.len(), 4);
        let r = verify(9, None).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.actual.len(), 118);
        assert!(r.scanned.is_none());
        assert!(r.key_values().contains("pass=true"));
    }

    #[test]
    fn report_flags_differences() {
        let mut r = verify(3, None).unwrap();
        r.actual.remove("1,2,3");
        r.missing.insert("1,2,3".into());
        assert!(!r.passed());
        assert!(r.to_string().contains("missing from forest: {1,2,3}"));
        assert!(r.key_values().contains("pass=false"));
    }

    #[test]
    fn oracles_agree_and_counts_grow() {
        let tree = oracle_genus_tree(GENUS_TREE_CAP).unwrap();
        for g in 1..=KUNZ_SCAN_CAP {
            let scanned: BTreeSet<_> = oracle_kunz_exhaustive(g)
                .unwrap()
                .iter()
                .map(|x| x.to_semigroup())
                .collect();
            assert_eq!(scanned, tree[&g], "g = {g}");
        }
        let counts: Vec<usize> = tree.values().map(|l| l.len()).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
    }
}
