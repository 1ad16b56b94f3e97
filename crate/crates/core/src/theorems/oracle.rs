//! Brute-force cross-check of [`stabilizer_weyl_of_point`]: the group
//! generated by the computed reflections is compared, element by element,
//! with the set of `v ∈ W_ambient` satisfying `v u W_F = u W_F`.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{NodeSet, Root, RootSystem, SystemType};
use crate::theorems::subgroup::stabilizer_weyl_of_point;
use crate::weyl::{WeylElement, Word};

/// A word for the reflection `s_β`, built as `s_j s_{β'} s_j` with
/// `β' = s_j β` of smaller height.
pub fn reflection_word(sys: &RootSystem, beta: &Root) -> Result<Word> {
    if !sys.is_root(beta) {
        return Err(Error::NotARoot(beta.coeffs().to_vec()));
    }
    let beta = if beta.is_negative() {
        -beta
    } else {
        beta.clone()
    };
    if let Some(i) = beta.as_simple() {
        return Ok(Word::new(vec![i]));
    }
    let j = (1..=sys.rank())
        .find(|&j| sys.pairing_simple(beta.coeffs(), j) > 0)
        .ok_or_else(|| Error::Internal(format!("no simple root lowers {beta}")))?;
    let inner = reflection_word(sys, &sys.reflect(j, &beta))?;
    let s = Word::new(vec![j]);
    Ok(s.concat(&inner).concat(&s))
}

/// Every element of `W_nodes`.
pub fn parabolic_elements(sys: &RootSystem, nodes: NodeSet) -> Vec<WeylElement> {
    let gens: Vec<WeylElement> = nodes
        .iter()
        .map(|i| WeylElement::simple_reflection(sys, i).expect("node in range"))
        .collect();
    closure(sys, &gens).into_iter().collect()
}

fn closure(sys: &RootSystem, gens: &[WeylElement]) -> HashSet<WeylElement> {
    let id = WeylElement::identity(sys);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(sys, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `x ∈ W_F` iff `x(v) - v ∈ span{α_i : i ∈ F}` for every simple `v`, i.e.
/// the rows of `x - 1` outside `F` vanish.
pub fn in_parabolic(x: &WeylElement, nodes: NodeSet) -> bool {
    let n = x.rank();
    (1..=n)
        .filter(|&i| !nodes.contains(i))
        .all(|i| (1..=n).all(|j| x.entry(i, j) == i32::from(i == j)))
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub system: String,
    pub group_order: usize,
    pub instances: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.instances > 0
    }
}

fn subsets(n: usize) -> impl Iterator<Item = NodeSet> {
    (0u64..1 << n)
        .map(move |bits| NodeSet::from_nodes((1..=n).filter(move |i| bits >> (i - 1) & 1 == 1)))
}

/// Sweeps every `u ∈ W`, every ambient node set and every fixed node set.
pub fn oracle_equivalence(t: SystemType) -> Result<OracleReport> {
    let sys = RootSystem::new(t)?;
    let n = sys.rank();
    let whole = parabolic_elements(&sys, sys.all_nodes());
    let ambients: Vec<(NodeSet, Vec<WeylElement>)> = subsets(n)
        .map(|a| (a, parabolic_elements(&sys, a)))
        .collect();
    let results = whole
        .par_iter()
        .map(|u| {
            let u_inv = u.inverse();
            let mut groups: HashMap<Vec<Root>, HashSet<WeylElement>> = HashMap::new();
            let mut count = 0;
            let mut bad = Vec::new();
            for (ambient, elements) in &ambients {
                for fixed in subsets(n) {
                    let sub = stabilizer_weyl_of_point(&sys, *ambient, u, fixed);
                    let generated = match groups.get(&sub.positive_roots) {
                        Some(g) => g,
                        None => {
                            let gens = sub
                                .positive_roots
                                .iter()
                                .map(|b| WeylElement::from_word(&sys, &reflection_word(&sys, b)?))
                                .collect::<Result<Vec<_>>>()?;
                            groups
                                .entry(sub.positive_roots.clone())
                                .or_insert(closure(&sys, &gens))
                        }
                    };
                    let brute: HashSet<WeylElement> = elements
                        .iter()
                        .filter(|v| in_parabolic(&u_inv.compose(&sys, v).compose(&sys, u), fixed))
                        .cloned()
                        .collect();
                    count += 1;
                    if brute != *generated {
                        bad.push(format!(
                            "{t}: u={} ambient={ambient} fixed={fixed}: brute {} vs generated {}",
                            u.reduced_word(&sys),
                            brute.len(),
                            generated.len()
                        ));
                    }
                }
            }
            Ok((count, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = OracleReport {
        system: t.to_string(),
        group_order: whole.len(),
        instances: 0,
        mismatches: Vec::new(),
    };
    for (c, bad) in results {
        report.instances += c;
        report.mismatches.extend(bad);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_words_reflect() {
        let sys = RootSystem::new("D4".parse().unwrap()).unwrap();
        for b in sys.positive_roots() {
            let w = WeylElement::from_word(&sys, &reflection_word(&sys, b).unwrap()).unwrap();
            assert_eq!(w.apply(b), -b);
            assert_eq!(w.length() % 2, 1);
        }
    }

    #[test]
    fn parabolic_membership() {
        let sys = RootSystem::new("A3".parse().unwrap()).unwrap();
        let all = parabolic_elements(&sys, sys.all_nodes());
        assert_eq!(all.len(), 24);
        let f = NodeSet::from_nodes([1, 3]);
        assert_eq!(all.iter().filter(|x| in_parabolic(x, f)).count(), 4);
    }

    #[test]
    fn a3_sweep() {
        let rep = oracle_equivalence("A3".parse().unwrap()).unwrap();
        assert_eq!(rep.group_order, 24);
        assert_eq!(rep.instances, 24 * 8 * 8);
        assert!(rep.passed(), "{:?}", rep.mismatches);
    }
}
