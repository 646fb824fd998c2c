//! Dehn's algorithm on cyclic words.
//!
//! A step replaces a subword `u` of the cyclic word with `r = u·v` in the
//! symmetrized relator set and `|u| > |r|/2` by `v⁻¹`. Reaching the empty word
//! proves triviality; a nonempty fixed point proves nontriviality only when
//! the presentation carries a `C′(1/6)` certificate.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::freewords::{cyclic_reduce, symmetrize, Word};
use crate::presentation::Presentation;
use crate::smallcancel::check_metric;

/// One rewrite: at cyclic `position` the first `matched` letters of
/// `relator` were replaced by the inverse of its remaining letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnStep {
    pub position: usize,
    pub relator: Word,
    pub matched: usize,
    pub result: Word,
}

fn cyclic_match(w: &Word, start: usize, r: &Word) -> usize {
    let n = w.len();
    let cap = n.min(r.len());
    let wl = w.letters();
    r.letters()[..cap].iter().enumerate().take_while(|(k, l)| wl[(start + k) % n] == **l).count()
}

/// One Dehn rewrite on the cyclically reduced word `w`, or `None` when no
/// majority subword of an element of `sym` occurs. Positions are scanned left
/// to right; at each position the longest match wins, ties going to the
/// first element of `sym` in its sorted order.
pub fn dehn_step(w: &Word, sym: &BTreeSet<Word>) -> Option<DehnStep> {
    let n = w.len();
    for position in 0..n {
        let mut best: Option<(&Word, usize)> = None;
        for r in sym {
            let matched = cyclic_match(w, position, r);
            if 2 * matched > r.len() && best.is_none_or(|(_, m)| matched > m) {
                best = Some((r, matched));
            }
        }
        if let Some((r, matched)) = best {
            let rotated = w.rotate(position);
            let rest = Word::new(rotated.letters()[matched..].iter().copied());
            let tail = Word::new(r.letters()[matched..].iter().copied());
            let (result, _) = cyclic_reduce(&tail.inverse().mul(&rest));
            debug_assert!(result.len() < n);
            return Some(DehnStep { position, relator: r.clone(), matched, result });
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Trivial => "TRIVIAL",
            Verdict::Nontrivial => "NONTRIVIAL",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict plus the rewrite trace that produced it. `start` is the cyclic
/// reduction of the queried word; the final word is the last step's result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriState {
    pub value: Verdict,
    pub start: Word,
    pub steps: Vec<DehnStep>,
}

impl TriState {
    pub fn final_word(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }
}

/// Reusable word-problem oracle for one presentation.
#[derive(Debug, Clone)]
pub struct DehnSolver {
    sym: BTreeSet<Word>,
    certified: bool,
}

impl DehnSolver {
    pub fn new(p: &Presentation) -> Self {
        let sym = symmetrize(p.cyclically_reduced().relators());
        let sixth = Ratio::new(BigInt::from(1), BigInt::from(6));
        let certified = check_metric(&sym, &sixth).expect("1/6 is positive");
        DehnSolver { sym, certified }
    }

    /// Whether the presentation satisfies `C′(1/6)`, making NONTRIVIAL
    /// verdicts sound.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn symmetrized(&self) -> &BTreeSet<Word> {
        &self.sym
    }

    pub fn is_trivial(&self, w: &Word) -> TriState {
        let (start, _) = cyclic_reduce(w);
        let mut steps: Vec<DehnStep> = Vec::new();
        let mut current = start.clone();
        while !current.is_empty() {
            match dehn_step(&current, &self.sym) {
                Some(step) => {
                    current = step.result.clone();
                    steps.push(step);
                }
                None => break,
            }
        }
        let value = if current.is_empty() {
            Verdict::Trivial
        } else if self.certified {
            Verdict::Nontrivial
        } else {
            Verdict::Unknown
        };
        TriState { value, start, steps }
    }
}

pub fn is_trivial(w: &Word, p: &Presentation) -> TriState {
    DehnSolver::new(p).is_trivial(w)
}
