//! Randomized check that the colored quiver of a minuscule element does not
//! depend on the reduced word: words related by commutation moves must give
//! quivers that agree under the induced vertex bijection.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::quiver::Quiver;
use crate::rootsys::{RootSystem, SystemType};
use crate::weyl::{CosetContext, MinusculeElement, Word};

/// Applies `moves` random swaps of adjacent commuting letters. Returns the
/// new word and `perm`, where old position `i` (0-based) moved to `perm[i]`.
pub fn shuffle_commuting<R: Rng>(
    sys: &RootSystem,
    word: &Word,
    moves: usize,
    rng: &mut R,
) -> (Word, Vec<usize>) {
    let mut letters = word.letters().to_vec();
    // origin[p] = old position now sitting at p
    let mut origin: Vec<usize> = (0..letters.len()).collect();
    for _ in 0..moves {
        let swappable: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&p| {
                letters[p] != letters[p + 1] && sys.cartan_entry(letters[p], letters[p + 1]) == 0
            })
            .collect();
        let Some(&p) = swappable.choose(rng) else {
            break;
        };
        letters.swap(p, p + 1);
        origin.swap(p, p + 1);
    }
    let mut perm = vec![0; origin.len()];
    for (p, &o) in origin.iter().enumerate() {
        perm[o] = p;
    }
    (Word::new(letters), perm)
}

/// Whether `perm` (0-based, old → new) carries colors, arrows, the order
/// and the peaks of `a` onto those of `b`.
pub fn isomorphic_under(a: &Quiver, b: &Quiver, perm: &[usize]) -> bool {
    if a.len() != b.len() || perm.len() != a.len() {
        return false;
    }
    let map = |v: usize| perm[v - 1] + 1;
    let colors = (1..=a.len()).all(|v| a.colors()[v - 1] == b.colors()[map(v) - 1]);
    let mut arrows: Vec<(usize, usize)> =
        a.arrows().iter().map(|&(i, j)| (map(i), map(j))).collect();
    arrows.sort_unstable();
    let mut order: Vec<(usize, usize)> = a
        .order_pairs()
        .into_iter()
        .map(|(i, j)| (map(i), map(j)))
        .collect();
    order.sort_unstable();
    let mut peaks: Vec<usize> = a.peaks().iter().map(|&p| map(p)).collect();
    peaks.sort_unstable();
    colors && arrows == b.arrows() && order == b.order_pairs() && peaks == b.peaks()
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub system: String,
    pub pairs: usize,
    /// pairs where at least one move changed the word
    pub nontrivial: usize,
    pub failures: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.pairs > 0
    }
}

/// Draws `pairs` random elements of `W^I` (over all minuscule nodes, with at
/// least two letters), scrambles their words and compares the quivers.
pub fn quiver_invariance(t: SystemType, pairs: usize, seed: u64) -> Result<InvarianceReport> {
    let sys = std::sync::Arc::new(RootSystem::new(t)?);
    let mut pool: Vec<MinusculeElement> = Vec::new();
    for r in sys.minuscule_nodes().iter() {
        let ctx = CosetContext::new(sys.clone(), r)?;
        pool.extend(
            ctx.enumerate_minuscule()
                .into_iter()
                .filter(|m| m.word.len() >= 2),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = InvarianceReport {
        system: t.to_string(),
        pairs: 0,
        nontrivial: 0,
        failures: Vec::new(),
    };
    for _ in 0..pairs {
        let m = pool.choose(&mut rng).expect("nonempty pool");
        let moves = rng.gen_range(1..=3 * m.word.len());
        let (scrambled, perm) = shuffle_commuting(&sys, &m.word, moves, &mut rng);
        let a = Quiver::build(&sys, &m.word)?;
        let b = Quiver::build(&sys, &scrambled)?;
        report.pairs += 1;
        if scrambled != m.word {
            report.nontrivial += 1;
        }
        if !isomorphic_under(&a, &b, &perm) {
            report.failures.push(format!("{} vs {}", m.word, scrambled));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_bijection() {
        let sys = RootSystem::new("A3".parse().unwrap()).unwrap();
        let w: Word = "2 1 3 2".parse().unwrap();
        let q = Quiver::build(&sys, &w).unwrap();
        assert!(isomorphic_under(&q, &q, &[0, 1, 2, 3]));
        assert!(!isomorphic_under(&q, &q, &[0, 2, 1, 3]));
    }

    #[test]
    fn swap_tracks_positions() {
        let sys = RootSystem::new("A3".parse().unwrap()).unwrap();
        let w: Word = "1 3".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (s, perm) = shuffle_commuting(&sys, &w, 1, &mut rng);
        assert_eq!(s.to_string(), "3 1");
        assert_eq!(perm, vec![1, 0]);
    }
}
