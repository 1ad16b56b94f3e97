//! Reflection subgroups described by their positive roots, and the test of
//! whether such a group is generated by the simple reflections it contains.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{NodeSet, Root, RootSystem, SystemType};
use crate::weyl::WeylElement;

/// Element cap for the breadth-first closure of a parabolic subgroup.
pub const CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionSubgroup {
    pub ambient_nodes: NodeSet,
    /// sorted in the order of `RootSystem::positive_roots`
    pub positive_roots: Vec<Root>,
}

impl ReflectionSubgroup {
    pub fn contains(&self, beta: &Root) -> bool {
        self.positive_roots.contains(beta)
    }

    /// Nodes `i` with `α_i` in the group.
    pub fn simple_nodes(&self) -> NodeSet {
        self.positive_roots
            .iter()
            .filter_map(|r| r.as_simple().filter(|_| r.is_positive()))
            .collect()
    }

    pub fn is_subset(&self, other: &ReflectionSubgroup) -> bool {
        self.positive_roots.iter().all(|r| other.contains(r))
    }

    /// Whether `β + γ ∈ R` implies `β + γ` is in the set, for `β, γ` in it.
    pub fn is_closed(&self, sys: &RootSystem) -> bool {
        let set: HashSet<&Root> = self.positive_roots.iter().collect();
        self.positive_roots.iter().all(|b| {
            self.positive_roots.iter().all(|g| {
                let s = b + g;
                !sys.is_root(&s) || set.contains(&s)
            })
        })
    }
}

/// `{β ∈ R^+ : Supp(β) ⊆ ambient, u^{-1}(β) ∈ R_fixed}`: the reflections of
/// `W_ambient` fixing the coset `u W_fixed`.
pub fn stabilizer_weyl_of_point(
    sys: &RootSystem,
    ambient: NodeSet,
    u: &WeylElement,
    fixed_nodes: NodeSet,
) -> ReflectionSubgroup {
    let positive_roots = sys
        .positive_roots_in(ambient)
        .filter(|b| u.apply_inverse(b).support().is_subset(&fixed_nodes))
        .cloned()
        .collect();
    ReflectionSubgroup {
        ambient_nodes: ambient,
        positive_roots,
    }
}

/// The orbit of the regular vector `2ρ` under a parabolic subgroup `W_K`.
/// Since `2ρ` has trivial stabilizer, `x ∈ W_K` iff `x(2ρ)` lies in the orbit.
#[derive(Debug)]
pub struct ParabolicOrbit {
    pub nodes: NodeSet,
    rho2: Vec<i32>,
    orbit: HashSet<Vec<i32>>,
}

impl ParabolicOrbit {
    pub fn new(sys: &RootSystem, nodes: NodeSet, cap: usize) -> Result<Self> {
        let n = sys.rank();
        let mut rho2 = vec![0; n];
        for r in sys.positive_roots() {
            for (acc, c) in rho2.iter_mut().zip(r.coeffs()) {
                *acc += c;
            }
        }
        let mut orbit = HashSet::new();
        let mut queue = VecDeque::new();
        orbit.insert(rho2.clone());
        queue.push_back(rho2.clone());
        while let Some(x) = queue.pop_front() {
            for k in nodes.iter() {
                let c = sys.pairing_simple(&x, k);
                let mut y = x.clone();
                y[k - 1] -= c;
                if orbit.insert(y.clone()) {
                    if orbit.len() > cap {
                        return Err(Error::ClosureCapExceeded(cap));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(ParabolicOrbit { nodes, rho2, orbit })
    }

    /// `|W_K|`.
    pub fn order(&self) -> usize {
        self.orbit.len()
    }

    pub fn contains_reflection(&self, sys: &RootSystem, beta: &Root) -> bool {
        let k = sys.bilinear(&self.rho2, beta.coeffs());
        let image: Vec<i32> = self
            .rho2
            .iter()
            .zip(beta.coeffs())
            .map(|(x, b)| x - k * b)
            .collect();
        self.orbit.contains(&image)
    }
}

type OrbitKey = (SystemType, NodeSet);

fn orbit_cache() -> &'static Mutex<HashMap<OrbitKey, Arc<ParabolicOrbit>>> {
    static CACHE: OnceLock<Mutex<HashMap<OrbitKey, Arc<ParabolicOrbit>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized [`ParabolicOrbit`] for `(system, nodes)`.
pub fn parabolic_orbit(sys: &RootSystem, nodes: NodeSet) -> Result<Arc<ParabolicOrbit>> {
    let key = (sys.system_type(), nodes);
    if let Some(o) = orbit_cache().lock().expect("cache lock").get(&key) {
        return Ok(o.clone());
    }
    let orbit = Arc::new(ParabolicOrbit::new(sys, nodes, CLOSURE_CAP)?);
    orbit_cache()
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert_with(|| orbit.clone());
    Ok(orbit)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGeneration {
    pub generated: bool,
    /// nodes whose simple reflections lie in the group
    pub simple_nodes: NodeSet,
    /// reflections of the group outside the subgroup generated by those
    pub missing: Vec<Root>,
}

/// Decides whether the group is generated by the simple reflections it
/// contains, by closing those reflections up and testing every `s_β`.
pub fn simple_generation(sys: &RootSystem, group: &ReflectionSubgroup) -> Result<SimpleGeneration> {
    let simple_nodes = group.simple_nodes();
    let orbit = parabolic_orbit(sys, simple_nodes)?;
    let missing: Vec<Root> = group
        .positive_roots
        .iter()
        .filter(|b| !orbit.contains_reflection(sys, b))
        .cloned()
        .collect();
    Ok(SimpleGeneration {
        generated: missing.is_empty(),
        simple_nodes,
        missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn identity_stabilizes_everything() {
        let a3 = sys("A3");
        let all = a3.all_nodes();
        let g = stabilizer_weyl_of_point(&a3, all, &WeylElement::identity(&a3), all);
        assert_eq!(g.positive_roots.len(), 6);
        assert!(g.is_closed(&a3));
        assert!(simple_generation(&a3, &g).unwrap().generated);
    }

    #[test]
    fn parabolic_orders() {
        let e7 = sys("E7");
        assert_eq!(
            ParabolicOrbit::new(&e7, NodeSet::full(6), CLOSURE_CAP)
                .unwrap()
                .order(),
            51840
        );
        let d5 = sys("D5");
        assert_eq!(
            ParabolicOrbit::new(&d5, d5.all_nodes(), CLOSURE_CAP)
                .unwrap()
                .order(),
            1920
        );
        assert!(matches!(
            ParabolicOrbit::new(&d5, d5.all_nodes(), 100),
            Err(Error::ClosureCapExceeded(100))
        ));
    }

    #[test]
    fn reflection_membership_matches_support() {
        for t in ["A4", "D5", "E6"] {
            let s = sys(t);
            for bits in [0b101u64, 0b1101, 0b11110] {
                let nodes =
                    NodeSet::from_nodes((1..=s.rank()).filter(|i| bits >> (i - 1) & 1 == 1));
                let orbit = ParabolicOrbit::new(&s, nodes, CLOSURE_CAP).unwrap();
                for b in s.positive_roots() {
                    assert_eq!(
                        orbit.contains_reflection(&s, b),
                        b.support().is_subset(&nodes)
                    );
                }
            }
        }
    }
}
