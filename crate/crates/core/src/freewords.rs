//! Words in a free group and the word-level operations the rest of the crate
//! is built on: free and cyclic reduction, inversion, maximal roots,
//! abelianization and symmetrization.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::scalar::IntScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("maximal root of the empty word is undefined")]
    EmptyWord,
    #[error("generator index {index} out of range for {n} generators")]
    GeneratorOutOfRange { index: usize, n: usize },
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    /// `false` for the inverse of the generator.
    pub positive: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, positive: true }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, positive: false }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, positive: !self.positive }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.positive != other.positive
    }
}

/// A freely reduced word. The letter sequence is only reachable through
/// constructors that reduce, so a `Word` never contains `x x⁻¹`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from arbitrary letters, freely reducing them.
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        free_reduce(letters)
    }

    /// Builds a word from `(generator, sign)` pairs, `sign` being `±1`.
    pub fn from_signed(pairs: &[(usize, i8)]) -> Self {
        Word::new(pairs.iter().map(|&(g, s)| Letter { generator: g, positive: s > 0 }))
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![Letter::pos(g)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Largest generator index plus one, or 0 for the empty word.
    pub fn generator_bound(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        invert(self)
    }

    /// Freely reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// `self^e` for any integer `e`; negative powers invert.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let reps = e.unsigned_abs() as usize;
        free_reduce(std::iter::repeat_n(base.letters.iter().copied(), reps).flatten())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || !l.cancels(f),
            _ => true,
        }
    }

    /// Cyclic shift starting at position `i`. Only meaningful for cyclically
    /// reduced words, where every rotation is again freely reduced.
    pub fn rotate(&self, i: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let i = i % self.len();
        let mut letters = Vec::with_capacity(self.len());
        letters.extend_from_slice(&self.letters[i..]);
        letters.extend_from_slice(&self.letters[..i]);
        Word::new(letters)
    }

    /// Applies a map on generator indices; the map must be injective for the
    /// result to be the image under a free-group isomorphism.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::new(self.letters.iter().map(|l| Letter { generator: f(l.generator), positive: l.positive }))
    }

    /// Renders the word with the given generator names, e.g. `a b^-1`.
    /// Runs of the same letter are written as powers.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name =
                self.names.get(letters[i].generator).cloned().unwrap_or_else(|| format!("x{}", letters[i].generator));
            let run = (j - i) as i64 * letters[i].sign();
            if run == 1 {
                f.write_str(&name)?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Unique freely reduced form of a letter sequence.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word { letters: stack }
}

pub fn invert(w: &Word) -> Word {
    Word { letters: w.letters.iter().rev().map(|l| l.inverse()).collect() }
}

/// Splits `w` as `conjugator · core · conjugator⁻¹` with `core` cyclically
/// reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let letters = w.letters();
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo].cancels(letters[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    (Word { letters: letters[lo..hi].to_vec() }, Word { letters: letters[..lo].to_vec() })
}

/// Decomposes a nonempty word as `root^d` with `d` maximal, so that `root` is
/// not a proper power.
pub fn maximal_root(w: &Word) -> Result<(Word, usize), WordError> {
    let len = w.len();
    if len == 0 {
        return Err(WordError::EmptyWord);
    }
    let letters = w.letters();
    for e in (1..=len).rev() {
        if !len.is_multiple_of(e) {
            continue;
        }
        let period = len / e;
        if (period..len).all(|i| letters[i] == letters[i - period]) {
            return Ok((Word { letters: letters[..period].to_vec() }, e));
        }
    }
    unreachable!("e = 1 always matches")
}

/// Image of `w` in `ℤⁿ`: the signed letter count per generator.
pub fn abelianize<T: IntScalar>(w: &Word, n: usize) -> Result<Vec<T>, WordError> {
    let mut counts = vec![0i64; n];
    for l in w.letters() {
        let slot = counts.get_mut(l.generator).ok_or(WordError::GeneratorOutOfRange { index: l.generator, n })?;
        *slot += l.sign();
    }
    Ok(counts.into_iter().map(T::from_i64_exact).collect())
}

/// Per-relator root data `rᵢ = (rᵢ′)^{dᵢ}` together with its abelianization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorData<T> {
    pub index: usize,
    pub root: Word,
    pub exponent: usize,
    pub abelianized_root: Vec<T>,
    pub abelianized_relator: Vec<T>,
}

pub fn relator_data<T: IntScalar>(p: &Presentation) -> Result<Vec<RelatorData<T>>, WordError> {
    let n = p.generator_count();
    p.relators()
        .iter()
        .enumerate()
        .map(|(index, r)| {
            let (root, exponent) = maximal_root(r)?;
            let abelianized_root: Vec<T> = abelianize(&root, n)?;
            let d = T::from_usize_exact(exponent);
            let abelianized_relator = abelianized_root.iter().map(|x| x.clone() * d.clone()).collect();
            Ok(RelatorData { index, root, exponent, abelianized_root, abelianized_relator })
        })
        .collect()
}

/// All cyclic permutations of the relators and their inverses, deduplicated.
/// Relators are expected to be cyclically reduced.
pub fn symmetrize<'a, I: IntoIterator<Item = &'a Word>>(relators: I) -> BTreeSet<Word> {
    let mut sym = BTreeSet::new();
    for r in relators {
        if r.is_empty() {
            continue;
        }
        let inv = r.inverse();
        for i in 0..r.len() {
            sym.insert(r.rotate(i));
            sym.insert(inv.rotate(i));
        }
    }
    sym
}
