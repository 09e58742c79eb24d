//! Knotoid diagrams from signed Gauss words.
//!
//! A Gauss word lists the crossings met along the knotoid from tail to
//! head, each twice, once as the over passage. Passage `k` lies between
//! arcs `k` and `k + 1`. Together with a sign per crossing this fixes the
//! slot order of every crossing; the word is realizable on the sphere
//! exactly when face tracing then finds `n + 1` faces.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{LinkoidDiagram, Sign, StarPlacement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// Builds the diagram of a signed Gauss word, starred at the tail.
pub fn from_gauss(word: &[Passage], signs: &[Sign]) -> Result<LinkoidDiagram> {
    let n = signs.len();
    if word.len() != 2 * n {
        return Err(Error::Malformed(format!(
            "a word for {n} crossings has {} passages, found {}",
            2 * n,
            word.len()
        )));
    }
    let mut slots = vec![[usize::MAX; 4]; n];
    let mut seen = vec![[false; 2]; n];
    for (k, p) in word.iter().enumerate() {
        if p.crossing >= n || std::mem::replace(&mut seen[p.crossing][usize::from(p.over)], true) {
            return Err(Error::Malformed(format!("passage {k} repeats or is out of range")));
        }
        let s = &mut slots[p.crossing];
        match (p.over, signs[p.crossing]) {
            (false, _) => (s[0], s[2]) = (k, k + 1),
            (true, Sign::Positive) => (s[3], s[1]) = (k, k + 1),
            (true, Sign::Negative) => (s[1], s[3]) = (k, k + 1),
        }
    }
    let crossings = slots
        .into_iter()
        .enumerate()
        .map(|(c, s)| (c as i64 + 1, s))
        .collect();
    LinkoidDiagram::new(crossings, Vec::new(), StarPlacement::Tail)
}

/// Gauss words whose labels first occur in increasing order.
fn words(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, word: &mut Vec<usize>, count: &mut [u8], next: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == 2 * n {
            out.push(word.clone());
            return;
        }
        for c in 0..next.min(n) {
            if count[c] == 1 {
                count[c] = 2;
                word.push(c);
                go(n, word, count, next, out);
                word.pop();
                count[c] = 1;
            }
        }
        if next < n {
            count[next] = 1;
            word.push(next);
            go(n, word, count, next + 1, out);
            word.pop();
            count[next] = 0;
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![0; n], 0, &mut out);
    out
}

/// Every knotoid diagram with `n` crossings up to relabeling, as realizable
/// signed Gauss words, in a fixed order.
pub fn all_knotoid_diagrams(n: usize) -> Vec<LinkoidDiagram> {
    let mut out = Vec::new();
    for word in words(n) {
        for over_mask in 0u32..1 << n {
            for sign_mask in 0u32..1 << n {
                let mut first = vec![true; n];
                let passages: Vec<Passage> = word
                    .iter()
                    .map(|&c| {
                        let is_first = std::mem::replace(&mut first[c], false);
                        Passage { crossing: c, over: ((over_mask >> c) & 1 == 1) == is_first }
                    })
                    .collect();
                let signs: Vec<Sign> = (0..n)
                    .map(|c| if (sign_mask >> c) & 1 == 1 { Sign::Negative } else { Sign::Positive })
                    .collect();
                if let Ok(d) = from_gauss(&passages, &signs) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// A random realizable knotoid diagram with `n` crossings, or `None` when
/// `attempts` random words all fail to be realizable.
pub fn random_knotoid<R: Rng + ?Sized>(rng: &mut R, n: usize, attempts: usize) -> Option<LinkoidDiagram> {
    for _ in 0..attempts {
        let mut word: Vec<usize> = (0..n).flat_map(|c| [c, c]).collect();
        word.shuffle(rng);
        let over: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let mut first = vec![true; n];
        let passages: Vec<Passage> = word
            .iter()
            .map(|&c| {
                let is_first = std::mem::replace(&mut first[c], false);
                Passage { crossing: c, over: over[c] == is_first }
            })
            .collect();
        let signs: Vec<Sign> = (0..n)
            .map(|_| if rng.gen() { Sign::Positive } else { Sign::Negative })
            .collect();
        if let Ok(d) = from_gauss(&passages, &signs) {
            return Some(d);
        }
    }
    None
}
