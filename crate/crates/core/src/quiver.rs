//! Quivers of reduced words, their peaks, and the peak-by-peak peeling that
//! turns one minuscule element into a generalised reduced decomposition.
//!
//! Vertices are the positions `1..=k` of the source word. Vertex `i` carries
//! the color `β(i)`, the simple root at position `i`. There is an arrow
//! `i → j` when `⟨β_j^∨, β_i⟩ ≠ 0` and `i < j < s(i)`, where `s(i)` is the
//! next position with the same color (no upper bound if there is none).

use std::fmt::Write as _;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{NodeSet, RootSystem};
use crate::weyl::{stabilizer_index_set, WeylElement, Word};

#[derive(Debug, Clone)]
pub struct Quiver {
    word: Word,
    successors: Vec<Option<usize>>,
    predecessors: Vec<Option<usize>>,
    arrows: Vec<(usize, usize)>,
    /// `reach[i][j]` iff `i R j` (0-based, reflexive)
    reach: Vec<Vec<bool>>,
    peaks: Vec<usize>,
}

/// Serializable snapshot of a quiver.
#[derive(Debug, Clone, Serialize)]
pub struct QuiverView {
    pub word: Word,
    pub k: usize,
    pub colors: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    pub order: Vec<(usize, usize)>,
    pub peaks: Vec<usize>,
}

impl Quiver {
    /// Builds the quiver of a reduced word.
    pub fn build(sys: &RootSystem, word: &Word) -> Result<Self> {
        let element = WeylElement::from_word(sys, word)?;
        if element.length() != word.len() {
            return Err(Error::NonReducedWord {
                word: word.to_string(),
                length: element.length(),
                letters: word.len(),
            });
        }
        let colors = word.letters();
        let k = colors.len();
        let successors: Vec<Option<usize>> = (0..k)
            .map(|i| (i + 1..k).find(|&j| colors[j] == colors[i]).map(|j| j + 1))
            .collect();
        let predecessors: Vec<Option<usize>> = (0..k)
            .map(|i| {
                (0..i)
                    .rev()
                    .find(|&j| colors[j] == colors[i])
                    .map(|j| j + 1)
            })
            .collect();

        let mut arrows = Vec::new();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..k {
            let bound = successors[i].map_or(k, |s| s - 1);
            for j in i + 1..bound {
                if sys.cartan_entry(colors[j], colors[i]) != 0 {
                    arrows.push((i + 1, j + 1));
                    out[i].push(j);
                }
            }
        }

        let mut reach = vec![vec![false; k]; k];
        for i in (0..k).rev() {
            reach[i][i] = true;
            for &j in &out[i] {
                let (head, tail) = reach.split_at_mut(j);
                for (dst, &src) in head[i].iter_mut().zip(tail[0].iter()) {
                    *dst |= src;
                }
            }
        }

        let mut has_incoming = vec![false; k];
        for &(_, j) in &arrows {
            has_incoming[j - 1] = true;
        }
        let peaks = (0..k)
            .filter(|&v| !has_incoming[v])
            .map(|v| v + 1)
            .collect();

        Ok(Quiver {
            word: word.clone(),
            successors,
            predecessors,
            arrows,
            reach,
            peaks,
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if (1..=self.len()).contains(&v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                len: self.len(),
            })
        }
    }

    pub fn color(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.word.letters()[v - 1])
    }

    pub fn colors(&self) -> &[usize] {
        self.word.letters()
    }

    pub fn successor(&self, v: usize) -> Result<Option<usize>> {
        self.check_vertex(v)?;
        Ok(self.successors[v - 1])
    }

    pub fn predecessor(&self, v: usize) -> Result<Option<usize>> {
        self.check_vertex(v)?;
        Ok(self.predecessors[v - 1])
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.arrows.binary_search(&(i, j)).is_ok()
    }

    /// `i R j` in the partial order generated by the arrows (reflexive).
    pub fn related(&self, i: usize, j: usize) -> bool {
        (1..=self.len()).contains(&i) && (1..=self.len()).contains(&j) && self.reach[i - 1][j - 1]
    }

    /// Strict relations `(i, j)` with `i R j`, `i ≠ j`, in lexicographic order.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.reach[i][j])
            .map(|(i, j)| (i + 1, j + 1))
            .collect()
    }

    /// Minimal vertices for `R`, in increasing order.
    pub fn peaks(&self) -> &[usize] {
        &self.peaks
    }

    /// The vertices of `Q_w(A)`: those not above any peak outside `A`.
    pub fn subquiver_vertices(&self, subset: &[usize]) -> Result<Vec<usize>> {
        for &p in subset {
            if !self.peaks.contains(&p) {
                return Err(Error::NotAPeak(p));
            }
        }
        let others: Vec<usize> = self
            .peaks
            .iter()
            .copied()
            .filter(|p| !subset.contains(p))
            .collect();
        Ok((1..=self.len())
            .filter(|&v| others.iter().all(|&p| !self.reach[p - 1][v - 1]))
            .collect())
    }

    pub fn view(&self) -> QuiverView {
        QuiverView {
            word: self.word.clone(),
            k: self.len(),
            colors: self.colors().to_vec(),
            arrows: self.arrows.clone(),
            order: self.order_pairs(),
            peaks: self.peaks.clone(),
        }
    }

    /// Graphviz rendering; vertex and edge order are fixed so the output is
    /// byte-stable.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n    rankdir=TB;\n");
        for (idx, c) in self.colors().iter().enumerate() {
            let v = idx + 1;
            let shape = if self.peaks.contains(&v) {
                ", shape=doublecircle"
            } else {
                ", shape=circle"
            };
            let _ = writeln!(s, "    v{v} [label=\"v{v}:α{c}\"{shape}];");
        }
        for (i, j) in &self.arrows {
            let _ = writeln!(s, "    v{i} -> v{j};");
        }
        s.push_str("}\n");
        s
    }
}

/// Which order to take the peaks in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeakOrdering {
    /// Increasing vertex index.
    Standard,
    /// A permutation of the standard peak list, as 1-based positions in it:
    /// `[2, 1]` takes the second peak first.
    Explicit(Vec<usize>),
}

impl FromStr for PeakOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("standard") {
            return Ok(PeakOrdering::Standard);
        }
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad ordering entry '{t}'")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PeakOrdering::Explicit)
    }
}

impl PeakOrdering {
    /// The peak vertices in the requested order.
    pub fn resolve(&self, q: &Quiver) -> Result<Vec<usize>> {
        let peaks = q.peaks();
        match self {
            PeakOrdering::Standard => Ok(peaks.to_vec()),
            PeakOrdering::Explicit(order) => {
                let bad = || Error::BadPeakOrder {
                    order: order.clone(),
                    peaks: (1..=peaks.len()).collect(),
                };
                if order.len() != peaks.len() || !order.iter().all_unique() {
                    return Err(bad());
                }
                order
                    .iter()
                    .map(|&p| peaks.get(p.wrapping_sub(1)).copied().ok_or_else(bad))
                    .collect()
            }
        }
    }
}

/// Every ordering of the peaks, standard first, then lexicographic in the
/// positions of the standard list.
pub fn all_peak_orders(q: &Quiver) -> Vec<Vec<usize>> {
    let peaks = q.peaks();
    peaks.iter().copied().permutations(peaks.len()).collect()
}

/// Positions of `order` in the standard peak list, 1-based.
pub fn ordering_label(q: &Quiver, order: &[usize]) -> Vec<usize> {
    order
        .iter()
        .map(|v| q.peaks().iter().position(|p| p == v).map_or(0, |i| i + 1))
        .collect()
}

/// A factorization `w = w_1 ... w_m` with additive lengths, produced by
/// peeling single-peak subquivers.
#[derive(Debug, Clone)]
pub struct GenDecomposition {
    pub element: WeylElement,
    pub source_word: Word,
    pub factors: Vec<WeylElement>,
    pub factor_words: Vec<Word>,
    /// vertices of the source quiver making up each factor
    pub factor_vertices: Vec<Vec<usize>>,
    pub peak_order: Vec<usize>,
    /// color of the chosen peak of each factor
    pub peak_colors: Vec<usize>,
    pub good: bool,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub length: usize,
    pub support_type: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub good: bool,
    /// first failing factor index (1-based)
    pub failing_index: Option<usize>,
    pub detail: Option<String>,
}

impl GenDecomposition {
    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// `w_{from} ... w_m` for a 0-based start index.
    pub fn tail_product(&self, sys: &RootSystem, from: usize) -> WeylElement {
        WeylElement::product(sys, &self.factors[from..])
    }

    pub fn factor_supports(&self) -> Vec<NodeSet> {
        self.factor_words
            .iter()
            .map(|w| w.letters().iter().copied().collect())
            .collect()
    }
}

/// Peels the quiver one peak at a time, in `peak_order`. Each factor is the
/// set of remaining vertices not above any later peak, read in source order.
pub fn construction_one(
    sys: &RootSystem,
    q: &Quiver,
    peak_order: &[usize],
) -> Result<GenDecomposition> {
    let mut sorted = peak_order.to_vec();
    sorted.sort_unstable();
    if sorted != q.peaks() {
        return Err(Error::BadPeakOrder {
            order: peak_order.to_vec(),
            peaks: q.peaks().to_vec(),
        });
    }
    let element = WeylElement::from_word(sys, q.word())?;
    let k = q.len();
    let mut taken = vec![false; k + 1];
    let mut factor_vertices = Vec::new();
    for (j, &p) in peak_order.iter().enumerate() {
        let later = &peak_order[j + 1..];
        let verts: Vec<usize> = (1..=k)
            .filter(|&v| !taken[v] && later.iter().all(|&l| !q.related(l, v)))
            .collect();
        if !verts.contains(&p) {
            return Err(Error::Internal(format!(
                "peak {p} was absorbed by an earlier factor"
            )));
        }
        for &v in &verts {
            taken[v] = true;
        }
        factor_vertices.push(verts);
    }
    if taken[1..].iter().any(|t| !t) {
        return Err(Error::Internal("factors do not cover the quiver".into()));
    }

    let mut factor_words = Vec::new();
    let mut factors = Vec::new();
    let mut peak_colors = Vec::new();
    for (verts, &p) in factor_vertices.iter().zip(peak_order) {
        let positions: Vec<usize> = verts.iter().map(|v| v - 1).collect();
        let word = q.word().subword(&positions);
        let fq = Quiver::build(sys, &word).map_err(|e| Error::InternalGoodnessViolation {
            index: factor_words.len() + 1,
            detail: format!("factor word is not reduced: {e}"),
        })?;
        let color = q.color(p)?;
        if fq.peaks().len() != 1 || fq.color(fq.peaks()[0])? != color {
            return Err(Error::Internal(format!(
                "factor {word} does not have a single peak of color {color}"
            )));
        }
        factors.push(WeylElement::from_word(sys, &word)?);
        factor_words.push(word);
        peak_colors.push(color);
    }
    let product = WeylElement::product(sys, &factors);
    let total: usize = factors.iter().map(WeylElement::length).sum();
    if product != element || total != element.length() {
        return Err(Error::Internal(format!(
            "factors of {} do not multiply back with additive lengths",
            q.word()
        )));
    }

    let mut decomp = GenDecomposition {
        element,
        source_word: q.word().clone(),
        factors,
        factor_words,
        factor_vertices,
        peak_order: peak_order.to_vec(),
        peak_colors,
        good: false,
        smooth: false,
    };
    let report = is_good(sys, &decomp);
    if !report.good {
        return Err(Error::InternalGoodnessViolation {
            index: report.failing_index.unwrap_or(0),
            detail: report.detail.unwrap_or_default(),
        });
    }
    decomp.good = true;
    decomp.smooth = is_smooth(sys, &decomp)?;
    Ok(decomp)
}

/// Checks, for each `i < m`,
///
/// ```text
/// I^{w_i} ∩ Supp(w_i) ⊆ I_{w_{i+1} ... w_m}
/// I_{w_i ... w_m} ⊆ w_i^⊥ ∪ Supp(w_i)
/// ```
///
/// and that `w` is a minimal representative for some minuscule maximal
/// parabolic. The upper bound is taken on the tail starting at `w_i`: with
/// the tail starting at `w_{i+1}` it already fails for `(s6 s5, s2 s4 s3 s1)`
/// in `E6`, where `s4` fixes the coset of `s2 s4 s3 s1`.
pub fn is_good(sys: &RootSystem, d: &GenDecomposition) -> GoodnessReport {
    let minuscule = sys
        .minuscule_nodes()
        .iter()
        .any(|r| d.element.is_minimal_in_coset(sys.all_nodes().without(r)));
    if !minuscule {
        return GoodnessReport {
            good: false,
            failing_index: None,
            detail: Some("element is not minuscule".into()),
        };
    }
    let supports = d.factor_supports();
    let tails: Vec<WeylElement> = (0..d.m()).map(|i| d.tail_product(sys, i)).collect();
    for i in 0..d.m().saturating_sub(1) {
        let wi = &d.factors[i];
        let lower = wi.upper_index_set().intersection(&supports[i]);
        let next_stab = stabilizer_index_set(&tails[i + 1]);
        let stab = stabilizer_index_set(&tails[i]);
        let upper = wi.perp_set(sys).union(&supports[i]);
        if !lower.is_subset(&next_stab) {
            return GoodnessReport {
                good: false,
                failing_index: Some(i + 1),
                detail: Some(format!("{lower} ⊄ {next_stab} at factor {}", i + 1)),
            };
        }
        if !stab.is_subset(&upper) {
            return GoodnessReport {
                good: false,
                failing_index: Some(i + 1),
                detail: Some(format!("{stab} ⊄ {upper} at factor {}", i + 1)),
            };
        }
    }
    GoodnessReport {
        good: true,
        failing_index: None,
        detail: None,
    }
}

/// True iff every factor's peak color is a minuscule node of its component
/// of the Dynkin subdiagram on `Supp(w_j)`.
pub fn is_smooth(sys: &RootSystem, d: &GenDecomposition) -> Result<bool> {
    for (support, &color) in d.factor_supports().iter().zip(&d.peak_colors) {
        let comps = sys.subdiagram_components(*support)?;
        let comp = comps
            .iter()
            .find(|c| c.nodes.contains(color))
            .ok_or_else(|| Error::Internal(format!("peak color {color} outside its support")))?;
        if !comp.is_minuscule(color) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(ℓ(w_i), type of Supp(w_i))` for each factor.
pub fn fiber_profile(sys: &RootSystem, d: &GenDecomposition) -> Result<Vec<Fiber>> {
    d.factors
        .iter()
        .zip(d.factor_supports())
        .map(|(f, s)| {
            Ok(Fiber {
                length: f.length(),
                support_type: sys.diagram_type(s)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SystemType;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse::<SystemType>().unwrap()).unwrap()
    }

    fn quiver(s: &RootSystem, w: &str) -> Quiver {
        Quiver::build(s, &w.parse().unwrap()).unwrap()
    }

    #[test]
    fn successors_in_a2() {
        let a2 = sys("A2");
        let q = quiver(&a2, "1 2 1");
        assert_eq!(q.successor(1).unwrap(), Some(3));
        assert_eq!(q.predecessor(3).unwrap(), Some(1));
        assert_eq!(q.successor(2).unwrap(), None);
        assert!(q.successor(4).is_err());
        assert_eq!(q.arrows(), &[(1, 2), (2, 3)]);
        assert_eq!(q.peaks(), &[1]);
    }

    #[test]
    fn rejects_non_reduced() {
        let a2 = sys("A2");
        assert!(matches!(
            Quiver::build(&a2, &"1 1".parse().unwrap()),
            Err(Error::NonReducedWord { .. })
        ));
    }

    #[test]
    fn e6_two_peaks() {
        let e6 = sys("E6");
        let q = quiver(&e6, "6 5 2 4 3 1");
        assert!((1..=6).all(|v| q.successor(v).unwrap().is_none()));
        assert_eq!(q.peaks(), &[1, 3]);
        assert_eq!(q.subquiver_vertices(&[1]).unwrap(), vec![1, 2]);
        assert_eq!(
            q.subquiver_vertices(&[1, 3]).unwrap(),
            vec![1, 2, 3, 4, 5, 6]
        );
        assert!(q.subquiver_vertices(&[]).unwrap().is_empty());
        assert!(matches!(
            q.subquiver_vertices(&[2]),
            Err(Error::NotAPeak(2))
        ));

        let d = construction_one(&e6, &q, &[1, 3]).unwrap();
        let words: Vec<String> = d.factor_words.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["6 5", "2 4 3 1"]);
        assert!(d.good && d.smooth);
        let d = construction_one(&e6, &q, &[3, 1]).unwrap();
        let words: Vec<String> = d.factor_words.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["2", "6 5 4 3 1"]);
        assert!(construction_one(&e6, &q, &[1]).is_err());
    }

    #[test]
    fn e6_reference_successor() {
        let e6 = sys("E6");
        let q = quiver(&e6, "6 5 4 3 2 4 1 3 5 4 6 5 2 4 3 1");
        assert_eq!(q.successor(3).unwrap(), Some(6));
        assert_eq!(q.peaks().len(), 1);
    }

    #[test]
    fn ordering_parse_and_resolve() {
        let e6 = sys("E6");
        let q = quiver(&e6, "6 5 2 4 3 1");
        assert_eq!(PeakOrdering::Standard.resolve(&q).unwrap(), vec![1, 3]);
        let o: PeakOrdering = "2,1".parse().unwrap();
        assert_eq!(o.resolve(&q).unwrap(), vec![3, 1]);
        assert!("1".parse::<PeakOrdering>().unwrap().resolve(&q).is_err());
        assert!("1,1".parse::<PeakOrdering>().unwrap().resolve(&q).is_err());
        assert!("1,3".parse::<PeakOrdering>().unwrap().resolve(&q).is_err());
        assert_eq!(all_peak_orders(&q), vec![vec![1, 3], vec![3, 1]]);
    }

    #[test]
    fn smoothness_and_fibers() {
        let e6 = sys("E6");
        let q = quiver(&e6, "6 1 3 4 5 2 4 3 1");
        let d = construction_one(&e6, &q, q.peaks()).unwrap();
        let words: Vec<String> = d.factor_words.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["6", "1 3 4 5 2 4 3 1"]);
        assert!(d.smooth);
        let fibers = fiber_profile(&e6, &d).unwrap();
        assert_eq!(
            fibers,
            vec![
                Fiber {
                    length: 1,
                    support_type: "A1".into()
                },
                Fiber {
                    length: 8,
                    support_type: "D5".into()
                },
            ]
        );
    }

    #[test]
    fn dot_output() {
        let a1 = sys("A1");
        let dot = quiver(&a1, "1").to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("v1 [label=\"v1:α1\", shape=doublecircle];"));
        assert!(!dot.contains("->"));
    }
}
