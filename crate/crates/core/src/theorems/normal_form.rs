//! Block normal forms of full-support minuscule elements in types A and D,
//! with the peak indexing they induce and the closed-form root vectors
//! attached to the standard decomposition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootSystem};
use crate::weyl::{d_block, d_block_word, swap_fork, CosetContext, WeylElement, Word};

/// Block data of a full-support element.
///
/// Type A (node `r`): `w = w_{1,a_1} ... w_{r,a_r}` with `w_{b,a} = s_a ... s_b`.
/// Type D (node `n`, or `n-1` after exchanging the fork): `w = v_{k,a_k} ... v_{1,a_1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeakIndexData {
    pub a_seq: Vec<usize>,
    /// block indices carrying a peak, ascending
    pub j_set: Vec<usize>,
    /// `j_set` in the standard order (ascending for A, descending for D)
    pub standard_order: Vec<usize>,
    /// vertex of the peak of block `standard_order[t]`
    pub peak_vertices: Vec<usize>,
    /// the blocks in word order
    pub blocks: Vec<Word>,
}

impl PeakIndexData {
    pub fn word(&self) -> Word {
        self.blocks
            .iter()
            .fold(Word::empty(), |acc, b| acc.concat(b))
    }

    pub fn m(&self) -> usize {
        self.j_set.len()
    }
}

fn require_full_support(ctx: &CosetContext, w: &WeylElement) -> Result<()> {
    if !ctx.is_minimal_rep(w) {
        return Err(Error::NotMinimalRep(ctx.parabolic_nodes()));
    }
    let support = w.support(&ctx.sys);
    if support != ctx.sys.all_nodes() {
        return Err(Error::NotFullSupport { support });
    }
    Ok(())
}

fn wrong_type(expected: &str, sys: &RootSystem) -> Error {
    Error::WrongType {
        expected: expected.into(),
        actual: sys.system_type().to_string(),
    }
}

/// `w_{b,a} = s_a s_{a-1} ... s_b`.
pub fn a_block(b: usize, a: usize) -> Word {
    Word::new((b..=a).rev().collect())
}

pub fn type_a_normal_form(ctx: &CosetContext, w: &WeylElement) -> Result<PeakIndexData> {
    let sys = &ctx.sys;
    if sys.system_type().family() != Family::A {
        return Err(wrong_type("A", sys));
    }
    require_full_support(ctx, w)?;
    let n = sys.rank();
    let r = ctx.excluded_node;
    let perm = ctx.as_permutation(w)?;
    let a: Vec<usize> = perm[..r].iter().map(|&x| x - 1).collect();
    let increasing = a.windows(2).all(|p| p[0] < p[1]);
    let bounded = a.iter().enumerate().all(|(i, &ai)| i < ai && ai <= n);
    if !increasing || !bounded {
        return Err(Error::NormalForm(format!(
            "sequence {a:?} read off the permutation is not admissible"
        )));
    }
    let blocks: Vec<Word> = a
        .iter()
        .enumerate()
        .map(|(i, &ai)| a_block(i + 1, ai))
        .collect();
    let data = finish_a(a, blocks);
    let word = data.word();
    let product = ctx.element(&word)?;
    if product != *w || product.length() != word.len() {
        return Err(Error::NormalForm(format!(
            "block word {word} does not reduce to the element"
        )));
    }
    Ok(data)
}

fn finish_a(a: Vec<usize>, blocks: Vec<Word>) -> PeakIndexData {
    let r = a.len();
    let mut j_set = vec![1];
    j_set.extend((2..=r).filter(|&j| a[j - 1] - a[j - 2] >= 2));
    let mut starts = Vec::with_capacity(r);
    let mut pos = 1;
    for b in &blocks {
        starts.push(pos);
        pos += b.len();
    }
    let peak_vertices = j_set.iter().map(|&j| starts[j - 1]).collect();
    PeakIndexData {
        standard_order: j_set.clone(),
        a_seq: a,
        j_set,
        peak_vertices,
        blocks,
    }
}

/// Closed forms for the standard decomposition in type A: with `α = α_{a_1}`,
/// `w_1^{-1}(α) = -Σ_{i=1}^{a_{j_2-1}} α_i` and
/// `w^{-1}(α) = -Σ_{i=1}^{a_{j_2-1}+r+1-j_2} α_i`, where `j_2 = r + 1` when
/// there is a single peak.
pub fn type_a_closed_forms(n: usize, data: &PeakIndexData) -> (usize, Root, Root) {
    let r = data.a_seq.len();
    let j2 = data.j_set.get(1).copied().unwrap_or(r + 1);
    let top = data.a_seq[j2 - 2];
    let alpha = data.a_seq[0];
    (
        alpha,
        -&Root::interval(n, 1, top),
        -&Root::interval(n, 1, top + r + 1 - j2),
    )
}

/// All admissible block sequences `a_1 < ... < a_k` for `D_n` at node `n`
/// with their block words.
pub fn d_block_sequences(n: usize) -> Vec<(Vec<usize>, Word)> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(seq) = stack.pop() {
        if !seq.is_empty() {
            if let Some(word) = d_block_word(n, &seq) {
                out.push((seq.clone(), word));
            }
        }
        let last = seq.last().copied().unwrap_or(0);
        if last >= n - 1 {
            continue;
        }
        for next in last + 1..=n {
            let i = seq.len() + 1;
            if d_block(n, i, next).is_some() {
                let mut s = seq.clone();
                s.push(next);
                stack.push(s);
            }
        }
    }
    out.sort();
    out
}

/// Type D normal form at node `n` or `n-1`. For node `n-1` the blocks are
/// computed for node `n` and then mapped back through the fork exchange.
pub fn type_d_normal_form(ctx: &CosetContext, w: &WeylElement) -> Result<PeakIndexData> {
    let sys = &ctx.sys;
    if sys.system_type().family() != Family::D {
        return Err(wrong_type("D", sys));
    }
    let n = sys.rank();
    let r = ctx.excluded_node;
    if r != n && r != n - 1 {
        return Err(Error::UnsupportedNode {
            node: r,
            supported: format!("{{{}, {n}}}", n - 1),
        });
    }
    require_full_support(ctx, w)?;
    let flip = |word: &Word| {
        if r == n {
            word.clone()
        } else {
            word.map_letters(|i| swap_fork(n, i))
        }
    };
    let target = if r == n {
        w.clone()
    } else {
        WeylElement::from_word(sys, &flip(&w.reduced_word(sys)))?
    };
    let node_n = sys.all_nodes().without(n);
    let mut matches = Vec::new();
    for (seq, word) in d_block_sequences(n) {
        let x = WeylElement::from_word(sys, &word)?;
        if x.length() == word.len() && x.is_minimal_in_coset(node_n) && x == target {
            matches.push(seq);
        }
    }
    let a = match matches.as_slice() {
        [a] => a.clone(),
        _ => {
            return Err(Error::NormalForm(format!(
                "expected one block sequence, found {matches:?}"
            )))
        }
    };
    if a[0] != 1 {
        return Err(Error::NormalForm(format!(
            "block sequence {a:?} does not start at 1"
        )));
    }
    let k = a.len();
    let blocks: Vec<Word> = (1..=k)
        .rev()
        .map(|i| flip(&d_block(n, i, a[i - 1]).expect("admissible")))
        .collect();
    let mut j_set: Vec<usize> = (1..k)
        .filter(|&j| sys.cartan_entry(a[j], a[j - 1]) == 0)
        .collect();
    j_set.push(k);
    let standard_order: Vec<usize> = j_set.iter().rev().copied().collect();
    // block i sits at index k - i of `blocks`
    let mut starts = vec![0; k + 1];
    let mut pos = 1;
    for (idx, b) in blocks.iter().enumerate() {
        starts[k - idx] = pos;
        pos += b.len();
    }
    let peak_vertices = standard_order.iter().map(|&j| starts[j]).collect();
    Ok(PeakIndexData {
        a_seq: a,
        j_set,
        standard_order,
        peak_vertices,
        blocks,
    })
}

/// Root vectors predicted by the case analysis for the standard decomposition
/// in `D_n` at node `n`, for `m ≥ 2`: `α = α_{a_k}` and `r = j_2 + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DCasePrediction {
    pub case: String,
    pub alpha: usize,
    pub w1_inv_alpha: Root,
    pub w_inv_alpha: Root,
}

/// `-(Σ_{lo}^{mid} α_l + 2 Σ_{mid+1}^{n-2} α_l + α_{n-1} + α_n)`.
fn d_long_root(n: usize, lo: usize, mid: usize) -> Root {
    let mut v = vec![0; n];
    for l in lo..=mid {
        v[l - 1] += 1;
    }
    for l in mid + 1..=n - 2 {
        v[l - 1] += 2;
    }
    v[n - 2] += 1;
    v[n - 1] += 1;
    -&Root::new(v)
}

/// The case table for even `k`. Odd `k` is read through the fork exchange
/// `n-1 ↔ n`, applied to the block indices and to the resulting vectors.
/// Returns `None` when there is a single peak.
pub fn d_case_table(n: usize, data: &PeakIndexData) -> Option<DCasePrediction> {
    if data.m() < 2 {
        return None;
    }
    let k = data.a_seq.len();
    // odd k is the even case with the fork nodes exchanged, indices included
    let swapped = !k.is_multiple_of(2);
    let a: Vec<usize> = if swapped {
        data.a_seq.iter().map(|&x| swap_fork(n, x)).collect()
    } else {
        data.a_seq.clone()
    };
    let r = data.standard_order[1] + 1;
    let ar = a[r - 1];
    let ak = a[k - 1];
    let (case, w1, wv) = if r == k {
        let w1 = -&Root::interval(n, ar, n - 1);
        if r == 2 {
            ("r=k, r=2", w1, -&Root::interval(n, a[1] - 1, n))
        } else {
            ("r=k, r>=3", w1, d_long_root(n, ak + 1 - k, n - k))
        }
    } else if r + 1 == k {
        (
            "r=k-1",
            -&Root::interval(n, ar, n),
            d_long_root(n, ak + 1 - k, n - k),
        )
    } else {
        (
            "r<=k-2",
            d_long_root(n, ar, n - (k + 1 - r)),
            d_long_root(n, ak + 1 - k, n - k),
        )
    };
    let fix = |v: Root| {
        if swapped {
            let mut c = v.coeffs().to_vec();
            c.swap(n - 2, n - 1);
            Root::new(c)
        } else {
            v
        }
    };
    Some(DCasePrediction {
        case: case.to_string(),
        alpha: if swapped { swap_fork(n, ak) } else { ak },
        w1_inv_alpha: fix(w1),
        w_inv_alpha: fix(wv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ctx(t: &str, r: usize) -> CosetContext {
        CosetContext::new(Arc::new(RootSystem::new(t.parse().unwrap()).unwrap()), r).unwrap()
    }

    #[test]
    fn a_longest_has_one_peak() {
        let c = ctx("A5", 3);
        let w0 = c.element(&c.reference_word()).unwrap();
        let nf = type_a_normal_form(&c, &w0).unwrap();
        assert_eq!(nf.a_seq, vec![3, 4, 5]);
        assert_eq!(nf.j_set, vec![1]);
    }

    #[test]
    fn a_rejects_partial_support() {
        let c = ctx("A4", 2);
        let w = c.element(&"2".parse().unwrap()).unwrap();
        assert!(matches!(
            type_a_normal_form(&c, &w),
            Err(Error::NotFullSupport { .. })
        ));
        let d = ctx("D4", 4);
        assert!(matches!(
            type_a_normal_form(&d, &w),
            Err(Error::WrongType { .. })
        ));
    }

    #[test]
    fn d_remark_instance() {
        let c = ctx("D8", 8);
        let word: Word = "4 5 6 8 3 4 5 6 7 1 2 3 4 5 6 8".parse().unwrap();
        let w = c.minuscule_from_word(&word).unwrap();
        let nf = type_d_normal_form(&c, &w).unwrap();
        assert_eq!(nf.a_seq, vec![1, 3, 4]);
        assert_eq!(nf.word(), word);
        assert_eq!(nf.j_set, vec![1, 3]);
        assert_eq!(nf.standard_order, vec![3, 1]);
    }

    #[test]
    fn d_longest_block_length() {
        for n in 4..=8 {
            let c = ctx(&format!("D{n}"), n);
            let w0 = c.element(&c.reference_word()).unwrap();
            let nf = type_d_normal_form(&c, &w0).unwrap();
            assert_eq!(nf.word().len(), n * (n - 1) / 2);
            assert_eq!(nf.m(), 1);
        }
    }

    #[test]
    fn d_node_one_unsupported() {
        let c = ctx("D5", 1);
        let w0 = c.element(&c.reference_word()).unwrap();
        assert!(matches!(
            type_d_normal_form(&c, &w0),
            Err(Error::UnsupportedNode { .. })
        ));
    }
}
