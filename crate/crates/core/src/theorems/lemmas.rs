//! Direct checks of the commutation identities behind the type A and D
//! arguments, and of the two structural facts about construction 1 that
//! they rely on.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::quiver::all_peak_orders;
use crate::rootsys::{NodeSet, RootSystem, SystemType};
use crate::theorems::normal_form::a_block;
use crate::theorems::verify::{
    context, decompositions, full_support_elements, point_stabilizers, OrderingSelection,
};
use crate::weyl::{d_block, d_longest_block_word, WeylElement, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl LemmaReport {
    fn new(name: &str) -> Self {
        LemmaReport {
            name: name.into(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.checked > 0
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }

    fn merge(&mut self, other: LemmaReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

/// Block parameters in type A: `w' = w_{b_i,a_i} ... w_{b_k,a_k}` with
/// `a` strictly increasing, `b_s = b_i + (s - i)` and `s ≤ b_s ≤ a_s ≤ n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ATuple {
    pub i: usize,
    pub k: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl ATuple {
    pub fn word(&self) -> Word {
        self.a
            .iter()
            .zip(&self.b)
            .fold(Word::empty(), |acc, (&a, &b)| acc.concat(&a_block(b, a)))
    }

    pub fn consecutive(&self) -> bool {
        self.a.windows(2).all(|p| p[1] == p[0] + 1)
    }

    fn label(&self) -> String {
        format!("i={} k={} a={:?} b={:?}", self.i, self.k, self.a, self.b)
    }
}

/// Strictly increasing sequences with entry `t` in `lo[t]..=hi`.
fn increasing_sequences(lo: &[usize], hi: usize) -> Vec<Vec<usize>> {
    fn go(
        lo: &[usize],
        hi: usize,
        t: usize,
        prev: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if t == lo.len() {
            out.push(cur.clone());
            return;
        }
        for v in lo[t].max(prev + 1)..=hi {
            cur.push(v);
            go(lo, hi, t + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lo, hi, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// All admissible type-A tuples with `1 ≤ i < k ≤ n`.
pub fn a_tuples(n: usize) -> Vec<ATuple> {
    let mut out = Vec::new();
    for i in 1..=n {
        for k in i + 1..=n {
            let lo: Vec<usize> = (i..=k).collect();
            for a in increasing_sequences(&lo, n) {
                for bi in i..=a[0] {
                    let b: Vec<usize> = (0..=k - i).map(|t| bi + t).collect();
                    if b.iter().zip(&a).all(|(b, a)| b <= a) {
                        out.push(ATuple {
                            i,
                            k,
                            a: a.clone(),
                            b,
                        });
                    }
                }
            }
        }
    }
    out
}

/// For `x` and `l`, the `j` with `x^{-1} s_l x = s_j`, if any.
fn conjugate_simple_by_inverse(x: &WeylElement, l: usize) -> Option<usize> {
    x.inverse_image_of_simple(l).as_simple()
}

fn conjugate_simple(x: &WeylElement, t: usize) -> Option<usize> {
    x.image_of_simple(t).as_simple()
}

/// Checks `s_l w' = w' s_j` with `j ≠ b_k` and `s_j ≤ w'` for `l` in `ls`.
fn left_to_right(
    sys: &RootSystem,
    t: &ATuple,
    ls: impl Iterator<Item = usize>,
    report: &mut LemmaReport,
) {
    let word = t.word();
    let w = WeylElement::from_word(sys, &word).expect("letters in range");
    let support: NodeSet = word.letters().iter().copied().collect();
    let bk = *t.b.last().expect("nonempty");
    for l in ls {
        let j = conjugate_simple_by_inverse(&w, l);
        let ok = j.is_some_and(|j| {
            let lhs = WeylElement::simple_reflection(sys, l)
                .expect("node")
                .compose(sys, &w);
            let rhs = w.compose(sys, &WeylElement::simple_reflection(sys, j).expect("node"));
            lhs == rhs && j != bk && support.contains(j)
        });
        report.record(ok, || format!("{} l={l} j={j:?}", t.label()));
    }
}

/// Checks `w' s_t = s_l w'` with `l ≠ a_i` and `s_l ≤ w'` for `t` in `ts`.
fn right_to_left(
    sys: &RootSystem,
    t: &ATuple,
    ts: impl Iterator<Item = usize>,
    report: &mut LemmaReport,
) {
    let word = t.word();
    let w = WeylElement::from_word(sys, &word).expect("letters in range");
    let support: NodeSet = word.letters().iter().copied().collect();
    let ai = t.a[0];
    for s in ts {
        let l = conjugate_simple(&w, s);
        let ok = l.is_some_and(|l| {
            let lhs = w.compose(sys, &WeylElement::simple_reflection(sys, s).expect("node"));
            let rhs = WeylElement::simple_reflection(sys, l)
                .expect("node")
                .compose(sys, &w);
            lhs == rhs && l != ai && support.contains(l)
        });
        report.record(ok, || format!("{} t={s} l={l:?}", t.label()));
    }
}

/// The four type-A commutation identities over all tuples in `A_n`,
/// `n ≤ max_rank`.
pub fn type_a_commutations(max_rank: usize) -> Result<Vec<LemmaReport>> {
    let per_rank = (2..=max_rank)
        .into_par_iter()
        .map(|n| {
            let sys = RootSystem::new(SystemType::a(n)?)?;
            let mut reps = [
                LemmaReport::new("left commutation, l < a_i"),
                LemmaReport::new("left commutation, consecutive a"),
                LemmaReport::new("right commutation, t > b_k"),
                LemmaReport::new("right commutation, consecutive a"),
            ];
            for t in a_tuples(n) {
                let (bi, ai, bk, ak) = (t.b[0], t.a[0], *t.b.last().unwrap(), *t.a.last().unwrap());
                left_to_right(&sys, &t, bi..ai, &mut reps[0]);
                if t.consecutive() {
                    left_to_right(&sys, &t, (bi..=ak).filter(|&l| l != ai), &mut reps[1]);
                    right_to_left(&sys, &t, bk + 1..=ak, &mut reps[2]);
                    right_to_left(&sys, &t, (bi..=ak).filter(|&s| s != bk), &mut reps[3]);
                }
            }
            Ok(reps)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = per_rank[0].clone();
    for reps in per_rank.into_iter().skip(1) {
        for (acc, r) in out.iter_mut().zip(reps) {
            acc.merge(r);
        }
    }
    Ok(out.to_vec())
}

/// `s_i v_{l,a} = v_{l,a} s_{i-1}` for `a < i ≤ n-1` (`l` even) or
/// `a < i ≤ n-2` (`l` odd), and `s_n v_{l,a} = v_{l,a} s_{n-2}` for odd `l`.
pub fn type_d_block_commutations(max_rank: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("block shift in type D");
    for n in 4..=max_rank {
        let sys = RootSystem::new(SystemType::d(n)?)?;
        let s = |i: usize| WeylElement::simple_reflection(&sys, i).expect("node");
        for l in 1..=n - 1 {
            for a in 1..=n - 2 {
                let v = WeylElement::from_word(&sys, &d_block(n, l, a).expect("in range"))?;
                let top = if l % 2 == 0 { n - 1 } else { n - 2 };
                let mut pairs: Vec<(usize, usize)> = (a + 1..=top).map(|i| (i, i - 1)).collect();
                if l % 2 == 1 {
                    pairs.push((n, n - 2));
                }
                for (i, j) in pairs {
                    let ok = s(i).compose(&sys, &v) == v.compose(&sys, &s(j));
                    report.record(ok, || format!("D{n} l={l} a={a} i={i}"));
                }
            }
        }
    }
    Ok(report)
}

/// The block word of `w_0^I` at node `n` against the longest element of
/// `W^I` found by enumeration.
pub fn type_d_longest_blocks(min_rank: usize, max_rank: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("longest element block form in type D");
    for n in min_rank..=max_rank {
        let ctx = context(SystemType::d(n)?, n)?;
        let longest = ctx
            .enumerate_minuscule()
            .into_iter()
            .max_by_key(|m| m.element.length())
            .expect("nonempty orbit");
        let word = d_longest_block_word(n);
        let w = ctx.element(&word)?;
        report.record(
            w == longest.element && w.length() == word.len() && word.len() == n * (n - 1) / 2,
            || format!("D{n}: block word {word} vs {}", longest.word),
        );
    }
    Ok(report)
}

fn all_instances(max_a: usize, max_d: usize) -> Vec<(SystemType, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_a {
        out.extend((1..=n).map(|r| (SystemType::a(n).expect("rank"), r)));
    }
    for n in 4..=max_d {
        out.extend([1, n - 1, n].map(|r| (SystemType::d(n).expect("rank"), r)));
    }
    out.extend([(6, 1), (6, 6), (7, 7)].map(|(n, r)| (SystemType::e(n).expect("rank"), r)));
    out
}

/// Every simple reflection fixing the `w_1`-coset also fixes the `w`-coset,
/// for every decomposition produced by construction 1.
pub fn simple_reflections_descend(targets: &[(SystemType, usize)]) -> Result<LemmaReport> {
    let parts = targets
        .par_iter()
        .map(|&(t, r)| {
            let ctx = context(t, r)?;
            let mut rep = LemmaReport::new("");
            for (_, word) in full_support_elements(&ctx)? {
                let (_, decomps) = decompositions(&ctx.sys, &word, &OrderingSelection::All)?;
                for d in &decomps {
                    let (at_w1x1, at_wx) = point_stabilizers(&ctx, d);
                    let simple = at_w1x1.simple_nodes();
                    let ok = simple.is_subset(&at_wx.simple_nodes());
                    rep.record(ok, || {
                        format!("{t} node {r}: {word} factors {:?}", d.factor_words)
                    });
                }
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = LemmaReport::new("simple reflections descend to w");
    parts.into_iter().for_each(|p| report.merge(p));
    Ok(report)
}

/// When the first chosen peak is the `q`-th one in increasing order, the
/// support of the first factor is orthogonal to the supports of the first
/// `q - 1` standard factors.
pub fn first_factor_orthogonality(targets: &[(SystemType, usize)]) -> Result<LemmaReport> {
    let parts = targets
        .par_iter()
        .map(|&(t, r)| {
            let ctx = context(t, r)?;
            let sys = &ctx.sys;
            let mut rep = LemmaReport::new("");
            for (_, word) in full_support_elements(&ctx)? {
                let (q, decomps) = decompositions(sys, &word, &OrderingSelection::All)?;
                let standard = &decomps[0];
                debug_assert_eq!(standard.peak_order, all_peak_orders(&q)[0]);
                for d in decomps.iter().skip(1) {
                    let pos = q
                        .peaks()
                        .iter()
                        .position(|&p| p == d.peak_order[0])
                        .expect("peak");
                    let first = d.factor_supports()[0];
                    let earlier = standard.factor_supports();
                    let ok = earlier[..pos].iter().all(|sup| {
                        first
                            .iter()
                            .all(|e| sup.iter().all(|f| e == f || sys.cartan_entry(e, f) == 0))
                    });
                    rep.record(ok, || {
                        format!("{t} node {r}: {word} ordering {:?}", d.peak_order)
                    });
                }
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = LemmaReport::new("first factor commutes with earlier standard factors");
    parts.into_iter().for_each(|p| report.merge(p));
    Ok(report)
}

/// All lemma oracles with type A up to `max_a` and type D up to `max_d`.
pub fn lemma_oracles(max_a: usize, max_d: usize) -> Result<Vec<LemmaReport>> {
    let targets = all_instances(max_a, max_d);
    let mut out = type_a_commutations(max_a)?;
    out.push(type_d_block_commutations(max_d)?);
    out.push(type_d_longest_blocks(4, max_d.max(8))?);
    out.push(simple_reflections_descend(&targets)?);
    out.push(first_factor_orthogonality(&targets)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_words_are_reduced() {
        let sys = RootSystem::new(SystemType::a(5).unwrap()).unwrap();
        for t in a_tuples(5) {
            let w = t.word();
            assert_eq!(
                WeylElement::from_word(&sys, &w).unwrap().length(),
                w.len(),
                "{}",
                t.label()
            );
        }
    }

    #[test]
    fn d6_block_shift_example() {
        let sys = RootSystem::new(SystemType::d(6).unwrap()).unwrap();
        let v = WeylElement::from_word(&sys, &d_block(6, 2, 3).unwrap()).unwrap();
        let s4 = WeylElement::simple_reflection(&sys, 4).unwrap();
        let s3 = WeylElement::simple_reflection(&sys, 3).unwrap();
        assert_eq!(s4.compose(&sys, &v), v.compose(&sys, &s3));
    }

    #[test]
    fn base_tuple() {
        // b_s = s, k - i = 1
        let sys = RootSystem::new(SystemType::a(3).unwrap()).unwrap();
        let t = ATuple {
            i: 1,
            k: 2,
            a: vec![2, 3],
            b: vec![1, 2],
        };
        let mut rep = LemmaReport::new("base");
        left_to_right(&sys, &t, 1..2, &mut rep);
        assert!(rep.passed(), "{:?}", rep.violations);
    }

    #[test]
    fn small_ranks_pass() {
        for rep in lemma_oracles(4, 5).unwrap() {
            assert!(rep.passed(), "{}: {:?}", rep.name, rep.violations);
        }
    }
}
