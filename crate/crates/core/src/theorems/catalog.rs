//! Smoothness classification of full-support elements in E6 and E7, and its
//! comparison with the transcribed catalog in `data/exceptional_catalog.toml`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{fiber_profile, ordering_label, Fiber, GenDecomposition};
use crate::rootsys::{Family, RootSystem};
use crate::theorems::verify::{decompositions, full_support_elements, OrderingSelection};
use crate::weyl::{CosetContext, WeylElement, Word};

pub const FIXTURE_TOML: &str = include_str!("../../data/exceptional_catalog.toml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionSummary {
    /// positions in the increasing-vertex peak list
    pub ordering: Vec<usize>,
    pub factors: Vec<Word>,
    pub smooth: bool,
    pub fibers: Vec<Fiber>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub word: Word,
    pub length: usize,
    pub peaks: usize,
    pub standard_smooth: bool,
    /// standard ordering first
    pub decompositions: Vec<DecompositionSummary>,
}

impl CatalogEntry {
    pub fn smooth_count(&self) -> usize {
        self.decompositions.iter().filter(|d| d.smooth).count()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub system: String,
    pub node: usize,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn standard_smooth(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.standard_smooth)
    }
}

fn summarize(
    sys: &RootSystem,
    q: &crate::quiver::Quiver,
    d: &GenDecomposition,
) -> Result<DecompositionSummary> {
    Ok(DecompositionSummary {
        ordering: ordering_label(q, &d.peak_order),
        factors: d.factor_words.clone(),
        smooth: d.smooth,
        fibers: if d.smooth {
            fiber_profile(sys, d)?
        } else {
            Vec::new()
        },
    })
}

/// Every full-support element of `W^I` with all of its decompositions.
pub fn classify_exceptional(ctx: &CosetContext) -> Result<Catalog> {
    let t = ctx.sys.system_type();
    if t.family() != Family::E {
        return Err(Error::WrongType {
            expected: "E6 or E7".into(),
            actual: t.to_string(),
        });
    }
    let entries = full_support_elements(ctx)?
        .par_iter()
        .map(|(w, word)| {
            let (q, decomps) = decompositions(&ctx.sys, word, &OrderingSelection::All)?;
            let decompositions = decomps
                .iter()
                .map(|d| summarize(&ctx.sys, &q, d))
                .collect::<Result<Vec<_>>>()?;
            Ok(CatalogEntry {
                word: word.clone(),
                length: w.length(),
                peaks: q.peaks().len(),
                standard_smooth: decompositions[0].smooth,
                decompositions,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog {
        system: t.to_string(),
        node: ctx.excluded_node,
        entries,
    })
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureDecomposition {
    /// `"standard"` or `"other"`
    pub ordering: String,
    pub factors: Vec<String>,
    pub smooth: bool,
    #[serde(default)]
    pub fibers: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureElement {
    pub word: String,
    pub note: String,
    pub peaks: usize,
    pub decompositions: Vec<FixtureDecomposition>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureSystem {
    pub system: String,
    pub node: usize,
    pub elements: Vec<FixtureElement>,
    #[serde(default)]
    pub exceptions: Vec<FixtureElement>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub e6: FixtureSystem,
    pub e7: FixtureSystem,
}

pub fn load_fixture() -> Result<Fixture> {
    toml::from_str(FIXTURE_TOML).map_err(|e| Error::Parse(format!("catalog fixture: {e}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogCheck {
    pub system: String,
    pub expected_standard_smooth: Vec<String>,
    pub found_standard_smooth: Vec<String>,
    pub decompositions_checked: usize,
    pub fibers_checked: usize,
    pub fiber_mismatches: Vec<String>,
    pub problems: Vec<String>,
}

impl CatalogCheck {
    pub fn passed(&self) -> bool {
        self.problems.is_empty() && self.fiber_mismatches.is_empty()
    }
}

fn elements_of(sys: &RootSystem, words: &[Word]) -> Result<Vec<WeylElement>> {
    words
        .iter()
        .map(|w| WeylElement::from_word(sys, w))
        .collect()
}

fn parse_words(words: &[String]) -> Result<Vec<Word>> {
    words.iter().map(|w| w.parse()).collect()
}

/// Checks one fixture element against the computed entry for the same
/// group element.
fn check_element(
    sys: &RootSystem,
    entry: &CatalogEntry,
    fx: &FixtureElement,
    check: &mut CatalogCheck,
) -> Result<()> {
    if entry.peaks != fx.peaks {
        check.problems.push(format!(
            "{}: {} peaks, catalog says {}",
            fx.word, entry.peaks, fx.peaks
        ));
    }
    let computed: Vec<Vec<WeylElement>> = entry
        .decompositions
        .iter()
        .map(|d| elements_of(sys, &d.factors))
        .collect::<Result<_>>()?;
    for fd in &fx.decompositions {
        check.decompositions_checked += 1;
        let target = elements_of(sys, &parse_words(&fd.factors)?)?;
        let found = if fd.ordering == "standard" {
            (computed[0] == target).then_some(0)
        } else {
            computed
                .iter()
                .skip(1)
                .position(|c| *c == target)
                .map(|p| p + 1)
        };
        let Some(idx) = found else {
            check.problems.push(format!(
                "{}: no {} decomposition with factors {:?}; computed {:?}",
                fx.word,
                fd.ordering,
                fd.factors,
                entry
                    .decompositions
                    .iter()
                    .map(|d| d.factors.iter().map(Word::to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            ));
            continue;
        };
        let d = &entry.decompositions[idx];
        if d.smooth != fd.smooth {
            check.problems.push(format!(
                "{}: decomposition {:?} computed smooth={}, catalog says {}",
                fx.word, fd.factors, d.smooth, fd.smooth
            ));
        }
        if fd.smooth {
            check.fibers_checked += 1;
            let got: Vec<(usize, String)> = d
                .fibers
                .iter()
                .map(|f| (f.length, f.support_type.clone()))
                .collect();
            if got != fd.fibers {
                check.fiber_mismatches.push(format!(
                    "{}: fibers {:?}, catalog says {:?}",
                    fx.word, got, fd.fibers
                ));
            }
        }
    }
    let expected_smooth = fx.decompositions.iter().filter(|d| d.smooth).count();
    if entry.smooth_count() != expected_smooth {
        check.problems.push(format!(
            "{}: {} smooth orderings, catalog says {}",
            fx.word,
            entry.smooth_count(),
            expected_smooth
        ));
    }
    Ok(())
}

fn find_entry<'a>(
    sys: &RootSystem,
    catalog: &'a Catalog,
    word: &str,
) -> Result<Option<&'a CatalogEntry>> {
    let w = WeylElement::from_word(sys, &word.parse()?)?;
    for e in &catalog.entries {
        if WeylElement::from_word(sys, &e.word)? == w {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Compares a computed catalog with the fixture for its system: the set of
/// standard-smooth elements, every listed decomposition and its fibers, the
/// number of smooth orderings per element, and the list of elements that are
/// singular for the standard ordering but smooth for another one.
pub fn compare_with_fixture(
    sys: &RootSystem,
    catalog: &Catalog,
    fx: &FixtureSystem,
) -> Result<CatalogCheck> {
    let mut check = CatalogCheck {
        system: fx.system.clone(),
        expected_standard_smooth: fx.elements.iter().map(|e| e.word.clone()).collect(),
        found_standard_smooth: catalog
            .standard_smooth()
            .map(|e| e.word.to_string())
            .collect(),
        decompositions_checked: 0,
        fibers_checked: 0,
        fiber_mismatches: Vec::new(),
        problems: Vec::new(),
    };
    if catalog.system != fx.system || catalog.node != fx.node {
        check.problems.push(format!(
            "catalog for {} node {} compared with fixture for {} node {}",
            catalog.system, catalog.node, fx.system, fx.node
        ));
        return Ok(check);
    }
    let mut matched = Vec::new();
    for fe in &fx.elements {
        match find_entry(sys, catalog, &fe.word)? {
            None => check
                .problems
                .push(format!("{}: not a full-support element", fe.word)),
            Some(entry) => {
                if !entry.standard_smooth {
                    check
                        .problems
                        .push(format!("{}: standard ordering is singular", fe.word));
                }
                matched.push(entry.word.clone());
                check_element(sys, entry, fe, &mut check)?;
            }
        }
    }
    for e in catalog.standard_smooth() {
        if !matched.contains(&e.word) {
            check.problems.push(format!(
                "{}: standard-smooth but not in the catalog",
                e.word
            ));
        }
    }

    let mut matched_exceptions = Vec::new();
    for fe in &fx.exceptions {
        match find_entry(sys, catalog, &fe.word)? {
            None => check
                .problems
                .push(format!("{}: not a full-support element", fe.word)),
            Some(entry) => {
                matched_exceptions.push(entry.word.clone());
                check_element(sys, entry, fe, &mut check)?;
            }
        }
    }
    for e in catalog
        .entries
        .iter()
        .filter(|e| !e.standard_smooth && e.smooth_count() > 0)
    {
        if !matched_exceptions.contains(&e.word) {
            check.problems.push(format!(
                "{}: singular for the standard ordering but smooth for {:?}",
                e.word,
                e.decompositions
                    .iter()
                    .filter(|d| d.smooth)
                    .map(|d| &d.ordering)
                    .collect::<Vec<_>>()
            ));
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_parses() {
        let f = load_fixture().unwrap();
        assert_eq!(f.e6.elements.len(), 7);
        assert_eq!(f.e7.elements.len(), 11);
        assert_eq!(f.e6.exceptions.len(), 1);
        assert!(f.e7.exceptions.is_empty());
    }

    #[test]
    fn rejects_other_types() {
        let ctx = crate::theorems::verify::context("D5".parse().unwrap(), 5).unwrap();
        assert!(matches!(
            classify_exceptional(&ctx),
            Err(Error::WrongType { .. })
        ));
    }
}
