//! Simply-laced root systems in simple-root coordinates.
//!
//! Nodes are numbered 1..=rank following Bourbaki:
//!
//! ```text
//! A_n:  1 - 2 - 3 - ... - n
//!
//! D_n:                    n-1
//!                        /
//!       1 - 2 - ... - (n-2)
//!                        \
//!                         n
//!
//! E_n:  1 - 3 - 4 - 5 - ... - n
//!               |
//!               2
//! ```

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank the bitset-based [`NodeSet`] can address.
pub const MAX_RANK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SystemType {
    family: Family,
    rank: usize,
}

impl SystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=MAX_RANK).contains(&rank),
            Family::D => (4..=MAX_RANK).contains(&rank),
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(SystemType { family, rank })
        } else {
            Err(Error::InvalidRank { family, rank })
        }
    }

    pub fn a(rank: usize) -> Result<Self> {
        Self::new(Family::A, rank)
    }

    pub fn d(rank: usize) -> Result<Self> {
        Self::new(Family::D, rank)
    }

    pub fn e(rank: usize) -> Result<Self> {
        Self::new(Family::E, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nodes whose fundamental weight is minuscule.
    pub fn minuscule_nodes(&self) -> NodeSet {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => NodeSet::full(n),
            (Family::D, _) => NodeSet::from_nodes([1, n - 1, n]),
            (Family::E, 6) => NodeSet::from_nodes([1, 6]),
            (Family::E, 7) => NodeSet::from_nodes([7]),
            (Family::E, _) => NodeSet::empty(),
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
        }
    }

    /// Edges of the Dynkin diagram, each listed once with `i < j`.
    pub fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                edges.push((n - 2, n));
                edges
            }
            Family::E => {
                let mut edges = vec![(1, 3), (2, 4)];
                edges.extend((3..n).map(|i| (i, i + 1)));
                edges
            }
        }
    }
}

impl fmt::Display for SystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SystemType {
    type Err = Error;

    /// Parses `A4`, `D5`, `E6` (an optional `_` is accepted: `D_5`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::Parse(format!("unknown system type '{s}'"))),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad rank in system type '{s}'")))?;
        SystemType::new(family, rank)
    }
}

/// A set of Dynkin nodes (1-based), stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u64);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(0)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        let mut s = NodeSet::empty();
        for i in nodes {
            s.insert(i);
        }
        s
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, node: usize) {
        debug_assert!((1..=MAX_RANK).contains(&node));
        self.0 |= 1 << (node - 1);
    }

    pub fn remove(&mut self, node: usize) {
        self.0 &= !(1 << (node - 1));
    }

    pub fn with(mut self, node: usize) -> Self {
        self.insert(node);
        self
    }

    pub fn without(mut self, node: usize) -> Self {
        self.remove(node);
        self
    }

    pub fn contains(&self, node: usize) -> bool {
        (1..=MAX_RANK).contains(&node) && self.0 & (1 << (node - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (1..=MAX_RANK).filter(move |&i| bits & (1 << (i - 1)) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::from_nodes(iter)
    }
}

impl Serialize for NodeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nodes = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = nodes.iter().find(|&&i| !(1..=MAX_RANK).contains(&i)) {
            return Err(serde::de::Error::custom(format!("node {bad} out of range")));
        }
        Ok(NodeSet::from_nodes(nodes))
    }
}

/// An integer vector in simple-root coordinates. Used for roots, and
/// occasionally for arbitrary elements of the root lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        Root(vec![0; rank])
    }

    /// The simple root `α_i` (1-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Root(v)
    }

    /// `Σ_{i=lo}^{hi} α_i`, empty when `lo > hi`.
    pub fn interval(rank: usize, lo: usize, hi: usize) -> Self {
        let mut v = vec![0; rank];
        for i in lo..=hi {
            v[i - 1] = 1;
        }
        Root(v)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> NodeSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// If this is `±α_i`, returns `i`.
    pub fn as_simple(&self) -> Option<usize> {
        let support = self.support();
        if support.len() == 1 {
            let i = support.iter().next().unwrap();
            if self.0[i - 1].abs() == 1 {
                return Some(i);
            }
        }
        None
    }

    pub fn scaled(&self, k: i32) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match c.abs() {
                1 => write!(f, "α{}", i + 1)?,
                k => write!(f, "{k}α{}", i + 1)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

/// `a ≤ b` in the dominance order: `b - a` is a nonnegative combination of
/// simple roots.
pub fn root_leq(a: &[i32], b: &[i32]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| y - x >= 0)
}

/// A connected component of a Dynkin subdiagram, with its relabeling onto the
/// standard numbering of its type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub system_type: SystemType,
    pub nodes: NodeSet,
    /// original node -> standard node of `system_type`
    pub relabel: BTreeMap<usize, usize>,
}

impl Component {
    pub fn standard_label(&self, node: usize) -> Option<usize> {
        self.relabel.get(&node).copied()
    }

    pub fn is_minuscule(&self, node: usize) -> bool {
        self.standard_label(node)
            .is_some_and(|k| self.system_type.minuscule_nodes().contains(k))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    system_type: SystemType,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Root>,
    roots: HashSet<Root>,
    minuscule_nodes: NodeSet,
}

impl RootSystem {
    /// Builds the full root system. Roots are generated as the orbit of the
    /// simple roots under the simple reflections; the resulting count is
    /// checked against the closed form.
    pub fn new(system_type: SystemType) -> Result<Self> {
        let n = system_type.rank();
        let mut cartan = vec![vec![0; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in system_type.dynkin_edges() {
            cartan[i - 1][j - 1] = -1;
            cartan[j - 1][i - 1] = -1;
        }

        let mut roots = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 1..=n {
            let a = Root::simple(n, i);
            roots.insert(a.clone());
            queue.push_back(a);
        }
        while let Some(r) = queue.pop_front() {
            for i in 1..=n {
                let image = reflect_with(&cartan, i, &r);
                if roots.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }

        let mut positive_roots: Vec<Root> =
            roots.iter().filter(|r| r.is_positive()).cloned().collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));

        if positive_roots.len() != system_type.positive_root_count()
            || roots.len() != 2 * positive_roots.len()
        {
            return Err(Error::Internal(format!(
                "{system_type}: generated {} positive roots, expected {}",
                positive_roots.len(),
                system_type.positive_root_count()
            )));
        }

        Ok(RootSystem {
            system_type,
            cartan,
            positive_roots,
            roots,
            minuscule_nodes: system_type.minuscule_nodes(),
        })
    }

    pub fn system_type(&self) -> SystemType {
        self.system_type
    }

    pub fn rank(&self) -> usize {
        self.system_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Cartan entry for 1-based nodes.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i32 {
        self.cartan[i - 1][j - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn minuscule_nodes(&self) -> NodeSet {
        self.minuscule_nodes
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.rank())
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.roots.contains(v)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(Error::BadNodeIndex {
                index: i,
                rank: self.rank(),
            })
        }
    }

    /// `⟨v, α_i^∨⟩` for any lattice vector `v`.
    pub fn pairing_simple(&self, v: &[i32], i: usize) -> i32 {
        self.cartan[i - 1].iter().zip(v).map(|(c, x)| c * x).sum()
    }

    /// `⟨with, coroot_of^∨⟩`.
    pub fn pairing(&self, coroot_of: &Root, with: &Root) -> Result<i32> {
        for r in [coroot_of, with] {
            if !self.is_root(r) {
                return Err(Error::NotARoot(r.coeffs().to_vec()));
            }
        }
        Ok(self.bilinear(coroot_of.coeffs(), with.coeffs()))
    }

    /// The symmetric form with `(α_i, α_j) = cartan[i][j]`.
    pub fn bilinear(&self, a: &[i32], b: &[i32]) -> i32 {
        let mut total = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            total += ai * self.pairing_simple(b, i + 1);
        }
        total
    }

    /// `s_i(v)`.
    pub fn reflect(&self, i: usize, v: &Root) -> Root {
        reflect_with(&self.cartan, i, v)
    }

    /// `s_β(v)` for a root `β`.
    pub fn reflect_root(&self, beta: &Root, v: &Root) -> Root {
        let k = self.bilinear(beta.coeffs(), v.coeffs());
        v - &beta.scaled(k)
    }

    /// Positive roots supported on `nodes`.
    pub fn positive_roots_in(&self, nodes: NodeSet) -> impl Iterator<Item = &Root> + '_ {
        self.positive_roots
            .iter()
            .filter(move |r| r.support().is_subset(&nodes))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i - 1][j - 1] != 0
    }

    /// Connected components of the induced subdiagram on `nodes`, each
    /// classified and relabeled onto its standard numbering.
    pub fn subdiagram_components(&self, nodes: NodeSet) -> Result<Vec<Component>> {
        let mut seen = NodeSet::empty();
        let mut out = Vec::new();
        for start in nodes.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = NodeSet::empty().with(start);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in nodes.iter() {
                    if !comp.contains(j) && self.adjacent(i, j) {
                        comp.insert(j);
                        stack.push(j);
                    }
                }
            }
            seen = seen.union(&comp);
            out.push(self.classify_connected(comp)?);
        }
        Ok(out)
    }

    fn neighbours(&self, i: usize, within: NodeSet) -> Vec<usize> {
        within.iter().filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Walks from `start` away from `from` along a path, returning the visited
    /// nodes (excluding `from`).
    fn arm(&self, from: usize, start: usize, within: NodeSet) -> Vec<usize> {
        let mut arm = vec![start];
        let (mut prev, mut cur) = (from, start);
        loop {
            let next: Vec<_> = self
                .neighbours(cur, within)
                .into_iter()
                .filter(|&j| j != prev)
                .collect();
            match next.as_slice() {
                [j] => {
                    arm.push(*j);
                    prev = cur;
                    cur = *j;
                }
                _ => return arm,
            }
        }
    }

    fn classify_connected(&self, comp: NodeSet) -> Result<Component> {
        let m = comp.len();
        let degrees: BTreeMap<usize, usize> = comp
            .iter()
            .map(|i| (i, self.neighbours(i, comp).len()))
            .collect();
        let edges: usize = degrees.values().sum::<usize>() / 2;
        if edges + 1 != m {
            return Err(Error::UnclassifiableDiagram(comp));
        }
        let branch: Vec<usize> = degrees
            .iter()
            .filter(|(_, &d)| d >= 3)
            .map(|(&i, _)| i)
            .collect();
        let mut relabel = BTreeMap::new();

        if branch.is_empty() {
            // A path; number it from the endpoint with the smaller index.
            let start = degrees
                .iter()
                .find(|(_, &d)| d <= 1)
                .map(|(&i, _)| i)
                .ok_or(Error::UnclassifiableDiagram(comp))?;
            let path = if m == 1 {
                vec![start]
            } else {
                self.arm(0, start, comp)
            };
            for (k, &i) in path.iter().enumerate() {
                relabel.insert(i, k + 1);
            }
            return Ok(Component {
                system_type: SystemType::a(m)?,
                nodes: comp,
                relabel,
            });
        }

        if branch.len() != 1 || degrees[&branch[0]] != 3 {
            return Err(Error::UnclassifiableDiagram(comp));
        }
        let b = branch[0];
        let mut arms: Vec<Vec<usize>> = self
            .neighbours(b, comp)
            .into_iter()
            .map(|j| self.arm(b, j, comp))
            .collect();
        // Shortest arms first; ties broken by the smallest node they contain.
        arms.sort_by_key(|a| (a.len(), a.iter().min().copied()));
        let lens: Vec<usize> = arms.iter().map(Vec::len).collect();

        let system_type = match lens.as_slice() {
            [1, 1, c] => {
                let n = c + 3;
                // Long arm numbered 1.. towards the branch node n-2; the two
                // short arms become n-1 and n.
                for (k, &i) in arms[2].iter().rev().enumerate() {
                    relabel.insert(i, k + 1);
                }
                relabel.insert(b, n - 2);
                relabel.insert(arms[0][0], n - 1);
                relabel.insert(arms[1][0], n);
                SystemType::d(n)?
            }
            [1, 2, c @ 2..=4] => {
                relabel.insert(b, 4);
                relabel.insert(arms[0][0], 2);
                relabel.insert(arms[1][0], 3);
                relabel.insert(arms[1][1], 1);
                for (k, &i) in arms[2].iter().enumerate() {
                    relabel.insert(i, 5 + k);
                }
                SystemType::e(4 + c)?
            }
            _ => return Err(Error::UnclassifiableDiagram(comp)),
        };
        Ok(Component {
            system_type,
            nodes: comp,
            relabel,
        })
    }

    /// Type descriptor of the subdiagram on `nodes`, e.g. `D5` or `A1×A2`.
    pub fn diagram_type(&self, nodes: NodeSet) -> Result<String> {
        if nodes.is_empty() {
            return Ok("∅".to_string());
        }
        let comps = self.subdiagram_components(nodes)?;
        Ok(comps
            .iter()
            .map(|c| c.system_type.to_string())
            .collect::<Vec<_>>()
            .join("×"))
    }
}

fn reflect_with(cartan: &[Vec<i32>], i: usize, v: &Root) -> Root {
    let k: i32 = cartan[i - 1]
        .iter()
        .zip(v.coeffs())
        .map(|(c, x)| c * x)
        .sum();
    let mut out = v.clone();
    out.0[i - 1] -= k;
    out
}

pub fn build_root_system(t: SystemType) -> Result<RootSystem> {
    RootSystem::new(t)
}
