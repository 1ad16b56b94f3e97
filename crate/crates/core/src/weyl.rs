//! Weyl group elements acting on the root lattice, reduced words, parabolic
//! index sets and minuscule coset representatives.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, NodeSet, Root, RootSystem};

/// A sequence of simple reflections `s_{i_1} s_{i_2} ... s_{i_k}` (1-based nodes).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Letters at the given 0-based positions, in order.
    pub fn subword(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p]).collect())
    }

    pub fn map_letters(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|&i| f(i)).collect())
    }

    /// Rendering with explicit reflections, e.g. `s6 s5 s2`.
    pub fn to_reflection_string(&self) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts node indices separated by whitespace or commas; a leading `s`
    /// on each letter is tolerated (`"s6 s5 s2"`).
    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim_start_matches(['s', 'S'])
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad letter '{t}' in word")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// An element of the Weyl group, stored as its integer matrix on the root
/// lattice together with the inverse matrix and the length.
#[derive(Clone)]
pub struct WeylElement {
    rank: usize,
    /// row-major; column `j` holds the coordinates of `w(α_j)`
    action: Vec<i32>,
    inverse: Vec<i32>,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(len {}, {:?})", self.length, self.action)
    }
}

fn identity_matrix(n: usize) -> Vec<i32> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn mat_apply(n: usize, m: &[i32], v: &[i32]) -> Vec<i32> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum())
        .collect()
}

impl WeylElement {
    pub fn identity(sys: &RootSystem) -> Self {
        let n = sys.rank();
        WeylElement {
            rank: n,
            action: identity_matrix(n),
            inverse: identity_matrix(n),
            length: 0,
        }
    }

    pub fn simple_reflection(sys: &RootSystem, i: usize) -> Result<Self> {
        Self::from_word(sys, &Word(vec![i]))
    }

    /// The product `s_{i_1} ... s_{i_k}`.
    pub fn from_word(sys: &RootSystem, word: &Word) -> Result<Self> {
        let n = sys.rank();
        let c = sys.cartan();
        let mut m = identity_matrix(n);
        let mut inv = identity_matrix(n);
        for &i in word.letters() {
            sys.check_node(i)?;
            let i = i - 1;
            // m <- m * s_i : column j becomes col_j - C[i][j] col_i
            let col_i: Vec<i32> = (0..n).map(|row| m[row * n + i]).collect();
            for j in 0..n {
                let cij = c[i][j];
                if cij == 0 {
                    continue;
                }
                for row in 0..n {
                    m[row * n + j] -= cij * col_i[row];
                }
            }
            // inv <- s_i * inv : row i becomes row_i - sum_j C[i][j] row_j
            let mut new_row = vec![0; n];
            for (j, &cij) in c[i].iter().enumerate() {
                if cij == 0 {
                    continue;
                }
                for col in 0..n {
                    new_row[col] -= cij * inv[j * n + col];
                }
            }
            for col in 0..n {
                inv[i * n + col] += new_row[col];
            }
        }
        Ok(Self::from_parts(sys, m, inv))
    }

    fn from_parts(sys: &RootSystem, action: Vec<i32>, inverse: Vec<i32>) -> Self {
        let n = sys.rank();
        let length = sys
            .positive_roots()
            .iter()
            .filter(|b| {
                let img = mat_apply(n, &action, b.coeffs());
                img.iter().all(|&x| x <= 0)
            })
            .count();
        WeylElement {
            rank: n,
            action,
            inverse,
            length,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Matrix entry: coefficient of `α_i` in `w(α_j)` (1-based).
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.action[(i - 1) * self.rank + (j - 1)]
    }

    pub fn matrix(&self) -> &[i32] {
        &self.action
    }

    pub fn apply(&self, v: &Root) -> Root {
        Root::new(mat_apply(self.rank, &self.action, v.coeffs()))
    }

    pub fn apply_inverse(&self, v: &Root) -> Root {
        Root::new(mat_apply(self.rank, &self.inverse, v.coeffs()))
    }

    /// `w(α_i)`.
    pub fn image_of_simple(&self, i: usize) -> Root {
        let n = self.rank;
        Root::new((0..n).map(|r| self.action[r * n + (i - 1)]).collect())
    }

    /// `w^{-1}(α_i)`.
    pub fn inverse_image_of_simple(&self, i: usize) -> Root {
        let n = self.rank;
        Root::new((0..n).map(|r| self.inverse[r * n + (i - 1)]).collect())
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            rank: self.rank,
            action: self.inverse.clone(),
            inverse: self.action.clone(),
            length: self.length,
        }
    }

    /// `self * other`.
    pub fn compose(&self, sys: &RootSystem, other: &WeylElement) -> WeylElement {
        let n = self.rank;
        let action = mat_mul(n, &self.action, &other.action);
        let inverse = mat_mul(n, &other.inverse, &self.inverse);
        Self::from_parts(sys, action, inverse)
    }

    pub fn product<'a, I>(sys: &RootSystem, factors: I) -> WeylElement
    where
        I: IntoIterator<Item = &'a WeylElement>,
    {
        factors
            .into_iter()
            .fold(WeylElement::identity(sys), |acc, f| acc.compose(sys, f))
    }

    /// Nodes `i` with `ℓ(s_i w) < ℓ(w)`, i.e. `w^{-1}(α_i) < 0`.
    pub fn left_descents(&self) -> NodeSet {
        let n = self.rank;
        (1..=n)
            .filter(|&i| (0..n).any(|r| self.inverse[r * n + (i - 1)] < 0))
            .collect()
    }

    /// Nodes `i` with `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i) < 0`.
    pub fn right_descents(&self) -> NodeSet {
        let n = self.rank;
        (1..=n)
            .filter(|&i| (0..n).any(|r| self.action[r * n + (i - 1)] < 0))
            .collect()
    }

    /// Reduced word chosen by repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self, sys: &RootSystem) -> Word {
        let mut letters = Vec::with_capacity(self.length);
        let mut cur = self.clone();
        while let Some(i) = cur.left_descents().iter().next() {
            letters.push(i);
            let si = WeylElement::simple_reflection(sys, i).expect("descent is a valid node");
            cur = si.compose(sys, &cur);
        }
        Word(letters)
    }

    pub fn support(&self, sys: &RootSystem) -> NodeSet {
        self.reduced_word(sys).letters().iter().copied().collect()
    }

    /// `I^w = {α ∈ S : w(α) > 0}`.
    pub fn upper_index_set(&self) -> NodeSet {
        NodeSet::full(self.rank).difference(&self.right_descents())
    }

    /// `w^⊥ = {α ∈ S : s_α w s_α = w}`.
    pub fn perp_set(&self, sys: &RootSystem) -> NodeSet {
        (1..=self.rank)
            .filter(|&i| {
                let si = WeylElement::simple_reflection(sys, i).expect("valid node");
                si.compose(sys, self).compose(sys, &si) == *self
            })
            .collect()
    }

    /// Whether `w(α) > 0` for every `α` in `nodes`.
    pub fn is_minimal_in_coset(&self, nodes: NodeSet) -> bool {
        nodes.is_subset(&self.upper_index_set())
    }
}

/// The parabolic quotient `W / W_I` for `I = S \ {α_r}` with `r` minuscule.
#[derive(Debug, Clone)]
pub struct CosetContext {
    pub sys: Arc<RootSystem>,
    pub excluded_node: usize,
    /// `ϖ_r` in fundamental-weight coordinates (Dynkin labels)
    pub minuscule_weight: Vec<i32>,
}

/// An element of `W^I` as produced by the orbit enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinusculeElement {
    pub element: WeylElement,
    /// reduced word read off the orbit search
    pub word: Word,
    /// `w(ϖ_r)` in Dynkin labels
    pub weight: Vec<i32>,
}

impl CosetContext {
    pub fn new(sys: Arc<RootSystem>, node: usize) -> Result<Self> {
        sys.check_node(node)?;
        if !sys.minuscule_nodes().contains(node) {
            return Err(Error::NotMinusculeNode {
                system: sys.system_type().to_string(),
                node,
            });
        }
        let mut weight = vec![0; sys.rank()];
        weight[node - 1] = 1;
        Ok(CosetContext {
            sys,
            excluded_node: node,
            minuscule_weight: weight,
        })
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    /// `I = S \ {α_r}`.
    pub fn parabolic_nodes(&self) -> NodeSet {
        self.sys.all_nodes().without(self.excluded_node)
    }

    pub fn is_minimal_rep(&self, w: &WeylElement) -> bool {
        w.is_minimal_in_coset(self.parabolic_nodes())
    }

    pub fn element(&self, word: &Word) -> Result<WeylElement> {
        WeylElement::from_word(&self.sys, word)
    }

    /// Parses a word and checks that it is reduced and lies in `W^I`.
    pub fn minuscule_from_word(&self, word: &Word) -> Result<WeylElement> {
        let w = self.element(word)?;
        if w.length() != word.len() {
            return Err(Error::NonReducedWord {
                word: word.to_string(),
                length: w.length(),
                letters: word.len(),
            });
        }
        if !self.is_minimal_rep(&w) {
            return Err(Error::NotMinimalRep(self.parabolic_nodes()));
        }
        Ok(w)
    }

    /// `I_w = {α : s_α w < w} ∪ {α : w^{-1}(α) ∈ R_{I^w}}`, for `w ∈ W^I`.
    pub fn stabilizer_index_set(&self, w: &WeylElement) -> Result<NodeSet> {
        if !self.is_minimal_rep(w) {
            return Err(Error::NotMinimalRep(self.parabolic_nodes()));
        }
        Ok(stabilizer_index_set(w))
    }

    /// All of `W^I`, by breadth-first search on the orbit of `ϖ_r`. Each
    /// element's word is built by left multiplication along the search path,
    /// trying nodes in increasing order; the first path found is kept.
    pub fn enumerate_minuscule(&self) -> Vec<MinusculeElement> {
        let sys = &self.sys;
        let n = sys.rank();
        let mut seen: HashMap<Vec<i32>, usize> = HashMap::new();
        let mut out: Vec<(Vec<i32>, Word)> = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(self.minuscule_weight.clone(), 0);
        out.push((self.minuscule_weight.clone(), Word::empty()));
        queue.push_back(0usize);
        while let Some(idx) = queue.pop_front() {
            let (weight, word) = out[idx].clone();
            for i in 1..=n {
                if weight[i - 1] != 1 {
                    continue;
                }
                // s_i λ = λ - ⟨λ, α_i^∨⟩ α_i, and α_i has Dynkin labels C[i][*]
                let next: Vec<i32> = (0..n).map(|j| weight[j] - sys.cartan()[i - 1][j]).collect();
                if seen.contains_key(&next) {
                    continue;
                }
                let mut letters = vec![i];
                letters.extend_from_slice(word.letters());
                seen.insert(next.clone(), out.len());
                queue.push_back(out.len());
                out.push((next, Word(letters)));
            }
        }
        out.into_iter()
            .map(|(weight, word)| {
                let element = WeylElement::from_word(sys, &word).expect("valid letters");
                debug_assert_eq!(element.length(), word.len());
                MinusculeElement {
                    element,
                    word,
                    weight,
                }
            })
            .collect()
    }

    /// A fixed reduced word for the longest element `w_0^I` of `W^I`. Every
    /// element of `W^I` has a unique reduced subexpression in it, and that
    /// subexpression is the word used to build quivers.
    pub fn reference_word(&self) -> Word {
        let t = self.sys.system_type();
        let n = t.rank();
        let r = self.excluded_node;
        match t.family() {
            Family::A => {
                // w_{1, n-r+1} w_{2, n-r+2} ... w_{r, n}, with w_{b,a} = s_a ... s_b
                let mut letters = Vec::new();
                for b in 1..=r {
                    let a = n - r + b;
                    letters.extend((b..=a).rev());
                }
                Word(letters)
            }
            Family::D if r == 1 => {
                let mut letters: Vec<usize> = (1..=n - 2).collect();
                letters.push(n);
                letters.push(n - 1);
                letters.extend((1..=n - 2).rev());
                Word(letters)
            }
            Family::D => {
                let w = d_longest_block_word(n);
                if r == n {
                    w
                } else {
                    w.map_letters(|i| swap_fork(n, i))
                }
            }
            Family::E if n == 6 => {
                let w = Word(vec![6, 5, 4, 3, 2, 4, 1, 3, 5, 4, 6, 5, 2, 4, 3, 1]);
                if r == 1 {
                    w
                } else {
                    w.map_letters(e6_automorphism)
                }
            }
            Family::E => Word(vec![
                7, 6, 5, 4, 2, 3, 1, 4, 5, 3, 4, 6, 5, 2, 4, 3, 7, 6, 5, 4, 1, 3, 2, 4, 5, 6, 7,
            ]),
        }
    }

    /// The reduced subexpression of [`Self::reference_word`] representing `w`.
    pub fn standard_word(&self, w: &WeylElement) -> Result<Word> {
        let sys = &self.sys;
        if !self.is_minimal_rep(w) {
            return Err(Error::NotMinimalRep(self.parabolic_nodes()));
        }
        let reference = self.reference_word();
        let mut z = WeylElement::from_word(sys, &reference)?;
        let mut keep: Vec<bool> = vec![true; reference.len()];
        let w_inv = w.inverse();
        while z.length() > w.length() {
            let u = z.compose(sys, &w_inv);
            let c = u.left_descents().iter().next().ok_or_else(|| {
                Error::Internal(format!("no descent left while reducing to {w:?}"))
            })?;
            let pos = (0..reference.len())
                .find(|&p| keep[p] && reference.letters()[p] == c)
                .ok_or_else(|| {
                    Error::Internal(format!("letter {c} missing from reference word"))
                })?;
            keep[pos] = false;
            z = WeylElement::simple_reflection(sys, c)?.compose(sys, &z);
        }
        let positions: Vec<usize> = (0..reference.len()).filter(|&p| keep[p]).collect();
        let word = reference.subword(&positions);
        let check = WeylElement::from_word(sys, &word)?;
        if check != *w || check.length() != word.len() {
            return Err(Error::Internal(format!(
                "subexpression {word} of the reference word does not represent the element"
            )));
        }
        Ok(word)
    }

    /// The permutation of `{1, ..., n+1}` realised by `w` in type `A_n`,
    /// returned as the list `(w(1), ..., w(n+1))`.
    pub fn as_permutation(&self, w: &WeylElement) -> Result<Vec<usize>> {
        as_permutation(&self.sys, w)
    }
}

/// `I_w` computed from `I^w`; see [`CosetContext::stabilizer_index_set`].
pub fn stabilizer_index_set(w: &WeylElement) -> NodeSet {
    let upper = w.upper_index_set();
    (1..=w.rank())
        .filter(|&i| {
            let pre = w.inverse_image_of_simple(i);
            pre.is_negative() || pre.support().is_subset(&upper)
        })
        .collect()
}

pub fn as_permutation(sys: &RootSystem, w: &WeylElement) -> Result<Vec<usize>> {
    let t = sys.system_type();
    if t.family() != Family::A {
        return Err(Error::WrongType {
            expected: "A".into(),
            actual: t.to_string(),
        });
    }
    let n = t.rank();
    let word = w.reduced_word(sys);
    // w(j) = s_{i_1}( ... s_{i_k}(j))
    Ok((1..=n + 1)
        .map(|j| {
            word.letters().iter().rev().fold(j, |x, &i| {
                if x == i {
                    i + 1
                } else if x == i + 1 {
                    i
                } else {
                    x
                }
            })
        })
        .collect())
}

/// Exchanges the two fork nodes `n-1` and `n` of `D_n`.
pub fn swap_fork(n: usize, i: usize) -> usize {
    if i == n {
        n - 1
    } else if i == n - 1 {
        n
    } else {
        i
    }
}

/// The diagram automorphism of `E6` exchanging nodes 1 and 6.
pub fn e6_automorphism(i: usize) -> usize {
    match i {
        1 => 6,
        3 => 5,
        5 => 3,
        6 => 1,
        other => other,
    }
}

/// The type-D block `v_{i,a}` for the parabolic at node `n`, as a word.
///
/// For `1 ≤ a ≤ n-2` this is `s_a ... s_{n-2} s_n` when `i` is odd and
/// `s_a ... s_{n-2} s_{n-1}` when `i` is even; the short blocks are
/// `v_{i,n} = s_n` (`i` odd) and `v_{i,n-1} = s_{n-1}` (`i` even).
/// Returns `None` for combinations outside that range.
pub fn d_block(n: usize, i: usize, a: usize) -> Option<Word> {
    let odd = i % 2 == 1;
    if (1..=n - 2).contains(&a) {
        let mut letters: Vec<usize> = (a..=n - 2).collect();
        letters.push(if odd { n } else { n - 1 });
        Some(Word(letters))
    } else if odd && a == n {
        Some(Word(vec![n]))
    } else if !odd && a == n - 1 {
        Some(Word(vec![n - 1]))
    } else {
        None
    }
}

/// `v_{k,a_k} ... v_{1,a_1}` as one word; `None` if some block is undefined.
pub fn d_block_word(n: usize, a: &[usize]) -> Option<Word> {
    let mut letters = Vec::new();
    for (idx, &ai) in a.iter().enumerate().rev() {
        letters.extend_from_slice(d_block(n, idx + 1, ai)?.letters());
    }
    Some(Word(letters))
}

/// The block word of `w_0^I` in `D_n`, parabolic at node `n`: the blocks
/// `v_{n-1, ·}` (a single fork reflection), `v_{n-2,n-2}`, ..., `v_{1,1}`.
pub fn d_longest_block_word(n: usize) -> Word {
    let mut a: Vec<usize> = (1..=n - 2).collect();
    a.push(if (n - 1) % 2 == 1 { n } else { n - 1 });
    d_block_word(n, &a).expect("blocks are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SystemType;

    fn sys(s: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(s.parse::<SystemType>().unwrap()).unwrap())
    }

    fn w(s: &RootSystem, word: &str) -> WeylElement {
        WeylElement::from_word(s, &word.parse().unwrap()).unwrap()
    }

    #[test]
    fn word_parsing() {
        let word: Word = "6 5 2 4 3 1".parse().unwrap();
        assert_eq!(word.letters(), &[6, 5, 2, 4, 3, 1]);
        assert_eq!(word.to_string(), "6 5 2 4 3 1");
        let word: Word = "s1,s2 s1".parse().unwrap();
        assert_eq!(word.letters(), &[1, 2, 1]);
        assert!("1 x".parse::<Word>().is_err());
    }

    #[test]
    fn basic_lengths() {
        let a2 = sys("A2");
        assert_eq!(w(&a2, "1 2 1").length(), 3);
        assert_eq!(w(&a2, "").length(), 0);
        assert_eq!(w(&a2, "1 1").length(), 0);
        assert_eq!(w(&a2, "1 2 1"), w(&a2, "2 1 2"));
        let e6 = sys("E6");
        assert_eq!(w(&e6, "6 5 2 4 3 1").length(), 6);
        assert!(WeylElement::from_word(&e6, &Word::new(vec![7])).is_err());
    }

    #[test]
    fn reduced_word_is_smallest_descent_first() {
        let a2 = sys("A2");
        assert_eq!(w(&a2, "2 1 2").reduced_word(&a2).letters(), &[1, 2, 1]);
        assert!(WeylElement::identity(&a2).reduced_word(&a2).is_empty());
    }

    #[test]
    fn inverse_and_compose() {
        let d5 = sys("D5");
        let x = w(&d5, "1 2 3 5 4 3");
        let y = w(&d5, "4 2 5");
        let xy = x.compose(&d5, &y);
        assert_eq!(xy, w(&d5, "1 2 3 5 4 3 4 2 5"));
        assert!(x.compose(&d5, &x.inverse()).is_identity());
        let r = Root::new(vec![0, 1, 1, 1, 0]);
        assert_eq!(x.apply_inverse(&x.apply(&r)), r);
    }

    #[test]
    fn index_sets() {
        let a3 = sys("A3");
        assert_eq!(
            WeylElement::identity(&a3).upper_index_set().to_vec(),
            vec![1, 2, 3]
        );
        assert_eq!(w(&a3, "2").upper_index_set().to_vec(), vec![1, 3]);
        assert_eq!(w(&a3, "1").perp_set(&a3).to_vec(), vec![1, 3]);
        let ctx = CosetContext::new(a3.clone(), 2).unwrap();
        assert_eq!(
            ctx.stabilizer_index_set(&w(&a3, "2")).unwrap().to_vec(),
            vec![2]
        );
        assert_eq!(
            ctx.stabilizer_index_set(&WeylElement::identity(&a3))
                .unwrap()
                .to_vec(),
            vec![1, 2, 3]
        );
        assert!(ctx.stabilizer_index_set(&w(&a3, "1")).is_err());

        let a4 = sys("A4");
        assert_eq!(w(&a4, "2 3").support(&a4).to_vec(), vec![2, 3]);
        assert_eq!(w(&a4, "2 3").perp_set(&a4).to_vec(), Vec::<usize>::new());
    }

    #[test]
    fn e6_longest_minimal_rep() {
        let e6 = sys("E6");
        let ctx = CosetContext::new(e6.clone(), 1).unwrap();
        let w0 = ctx.element(&ctx.reference_word()).unwrap();
        assert_eq!(w0.length(), 16);
        assert_eq!(w0.upper_index_set().to_vec(), vec![2, 3, 4, 5, 6]);
        assert_eq!(ctx.stabilizer_index_set(&w0).unwrap(), e6.all_nodes());
    }

    #[test]
    fn orbit_sizes() {
        for (t, r, count) in [
            ("E6", 1, 27),
            ("E6", 6, 27),
            ("E7", 7, 56),
            ("D5", 5, 16),
            ("D5", 1, 10),
        ] {
            let ctx = CosetContext::new(sys(t), r).unwrap();
            assert_eq!(ctx.enumerate_minuscule().len(), count, "{t} node {r}");
        }
        assert!(CosetContext::new(sys("E7"), 1).is_err());
    }

    #[test]
    fn reference_words_are_longest() {
        for t in ["A1", "A4", "A6", "D4", "D5", "D6", "D7", "E6", "E7"] {
            let s = sys(t);
            for r in s.minuscule_nodes().iter() {
                let ctx = CosetContext::new(s.clone(), r).unwrap();
                let all = ctx.enumerate_minuscule();
                let longest = all.iter().max_by_key(|m| m.element.length()).unwrap();
                let w0 = ctx.minuscule_from_word(&ctx.reference_word()).unwrap();
                assert_eq!(w0, longest.element, "{t} node {r}");
            }
        }
    }

    #[test]
    fn standard_words_are_subexpressions() {
        let e6 = sys("E6");
        let ctx = CosetContext::new(e6.clone(), 1).unwrap();
        let x = w(&e6, "6 5 2 4 3 1");
        assert_eq!(
            ctx.standard_word(&x).unwrap().letters(),
            &[6, 5, 2, 4, 3, 1]
        );
        for m in ctx.enumerate_minuscule() {
            let sw = ctx.standard_word(&m.element).unwrap();
            assert_eq!(ctx.element(&sw).unwrap(), m.element);
        }
    }

    #[test]
    fn permutations() {
        let a2 = sys("A2");
        let ctx = CosetContext::new(a2.clone(), 1).unwrap();
        assert_eq!(
            ctx.as_permutation(&WeylElement::identity(&a2)).unwrap(),
            vec![1, 2, 3]
        );
        assert_eq!(ctx.as_permutation(&w(&a2, "1")).unwrap(), vec![2, 1, 3]);
        let d4 = sys("D4");
        assert!(as_permutation(&d4, &WeylElement::identity(&d4)).is_err());
    }

    #[test]
    fn d_blocks() {
        assert_eq!(d_block(6, 1, 3).unwrap().letters(), &[3, 4, 6]);
        assert_eq!(d_block(6, 2, 3).unwrap().letters(), &[3, 4, 5]);
        assert_eq!(d_block(6, 1, 6).unwrap().letters(), &[6]);
        assert_eq!(d_block(6, 2, 5).unwrap().letters(), &[5]);
        assert!(d_block(6, 1, 5).is_none());
        assert_eq!(d_longest_block_word(4).len(), 6);
    }
}
