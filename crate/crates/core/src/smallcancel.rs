//! Pieces of a symmetrized relator set and the small-cancellation conditions
//! `C(p)`, `C′(λ)` and `T(q)`, plus the eligibility verdicts built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::freewords::{symmetrize, Word};
use crate::presentation::Presentation;
use crate::scalar::IntScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmallCancelError {
    #[error("metric bound must be positive, got {0}")]
    NonPositiveLambda(String),
    #[error("T(q) requires q >= 3, got {0}")]
    TriangleTooSmall(usize),
    #[error("q_max must be at least 4, got {0}")]
    QMaxTooSmall(usize),
}

/// A count that may be infinite. `Finite(_) < Unbounded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(usize),
    Unbounded,
}

impl Bound {
    /// Whether `p ≤ self`.
    pub fn at_least(self, p: usize) -> bool {
        match self {
            Bound::Finite(c) => p <= c,
            Bound::Unbounded => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(c) => write!(f, "{c}"),
            Bound::Unbounded => f.write_str("UNBOUNDED"),
        }
    }
}

fn lcp(a: &[crate::freewords::Letter], b: &[crate::freewords::Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// For every element of a symmetrized set, the length of its longest common
/// prefix with any *other* element. In lexicographic order the maximum is
/// always attained at a neighbour.
fn longest_shared_prefix(sym: &BTreeSet<Word>) -> BTreeMap<&Word, usize> {
    let words: Vec<&Word> = sym.iter().collect();
    let mut out = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        let prev = i.checked_sub(1).map_or(0, |j| lcp(words[j].letters(), w.letters()));
        let next = words.get(i + 1).map_or(0, |x| lcp(x.letters(), w.letters()));
        out.insert(*w, prev.max(next));
    }
    out
}

/// All pieces: nonempty common prefixes of two distinct elements of `sym`.
pub fn pieces(sym: &BTreeSet<Word>) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for (w, len) in longest_shared_prefix(sym) {
        for l in 1..=len {
            out.insert(Word::new(w.letters()[..l].iter().copied()));
        }
    }
    out
}

/// Fewest pieces whose concatenation is exactly `w`; `reach[i]` is the
/// longest piece starting at position `i`.
fn min_piece_decomposition(reach: &[usize]) -> Bound {
    let len = reach.len();
    let mut dist: Vec<Option<usize>> = vec![None; len + 1];
    dist[0] = Some(0);
    for i in 0..len {
        let Some(di) = dist[i] else { continue };
        for dj in &mut dist[i + 1..=(i + reach[i]).min(len)] {
            if dj.is_none_or(|d| di + 1 < d) {
                *dj = Some(di + 1);
            }
        }
    }
    dist[len].map_or(Bound::Unbounded, Bound::Finite)
}

fn reach_vector(w: &Word, shared: &BTreeMap<&Word, usize>) -> Vec<usize> {
    (0..w.len()).map(|i| shared.get(&w.rotate(i)).copied().unwrap_or(0)).collect()
}

/// Whether every piece `u` of every `r ∈ sym` satisfies `|u| < λ·|r|`
/// (strict, exact).
pub fn check_metric<T: IntScalar>(sym: &BTreeSet<Word>, lambda: &Ratio<T>) -> Result<bool, SmallCancelError> {
    if *lambda <= Ratio::zero() {
        return Err(SmallCancelError::NonPositiveLambda(lambda.to_string()));
    }
    let shared = longest_shared_prefix(sym);
    Ok(shared.iter().all(|(w, &piece)| {
        Ratio::from_integer(T::from_usize_exact(piece)) < lambda.clone() * T::from_usize_exact(w.len())
    }))
}

/// Largest `p` for which `C(p)` holds: the fewest pieces any element of `sym`
/// decomposes into, or `Unbounded` when no element is a product of pieces.
pub fn check_nonmetric(sym: &BTreeSet<Word>) -> Bound {
    let shared = longest_shared_prefix(sym);
    sym.iter().map(|w| min_piece_decomposition(&reach_vector(w, &shared))).min().unwrap_or(Bound::Unbounded)
}

/// Bit-packed adjacency of the cancellation digraph: `r → s` when the last
/// letter of `r` cancels the first letter of `s` and `s ≠ r⁻¹`.
struct Digraph {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl Digraph {
    fn cancellation(sym: &BTreeSet<Word>) -> Self {
        let words: Vec<&Word> = sym.iter().collect();
        let n = words.len();
        let blocks = n.div_ceil(64);
        let mut rows = vec![vec![0u64; blocks]; n];
        for (i, r) in words.iter().enumerate() {
            let (Some(last), inv) = (r.last(), r.inverse()) else { continue };
            for (j, s) in words.iter().enumerate() {
                if s.first().is_some_and(|f| f.cancels(last)) && **s != inv {
                    rows[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        Digraph { n, rows }
    }

    fn has(row: &[u64], j: usize) -> bool {
        row[j / 64] >> (j % 64) & 1 == 1
    }

    /// Rows of `walks · self`, where `walks` has the same shape.
    fn step(&self, walks: &[Vec<u64>]) -> Vec<Vec<u64>> {
        walks
            .iter()
            .map(|row| {
                let mut out = vec![0u64; row.len()];
                for k in (0..self.n).filter(|&k| Self::has(row, k)) {
                    for (o, m) in out.iter_mut().zip(&self.rows[k]) {
                        *o |= m;
                    }
                }
                out
            })
            .collect()
    }
}

/// Shortest closed walk of length `h` with `3 ≤ h ≤ max_len` in the
/// cancellation digraph, if any.
pub fn shortest_cancellation_cycle(sym: &BTreeSet<Word>, max_len: usize) -> Option<usize> {
    let g = Digraph::cancellation(sym);
    let mut walks = g.rows.clone();
    for h in 2..=max_len {
        walks = g.step(&walks);
        if h >= 3 && (0..g.n).any(|i| Digraph::has(&walks[i], i)) {
            return Some(h);
        }
    }
    None
}

/// `T(q)`: no cyclic sequence `r₁,…,r_h` in `sym`, `3 ≤ h < q`, with
/// `rᵢ₊₁ ≠ rᵢ⁻¹` in which every product `rᵢ·rᵢ₊₁` has cancellation.
pub fn check_triangle(sym: &BTreeSet<Word>, q: usize) -> Result<bool, SmallCancelError> {
    if q < 3 {
        return Err(SmallCancelError::TriangleTooSmall(q));
    }
    Ok(q == 3 || shortest_cancellation_cycle(sym, q - 1).is_none())
}

/// Piece data for one relator's symmetrized class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorPieces<T: IntScalar> {
    pub relator: usize,
    pub relator_length: usize,
    pub max_piece_length: usize,
    pub min_piece_count: Bound,
    pub metric_ratio: Ratio<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaVerdict {
    YesOneRelator,
    YesC6,
    YesC4T4,
    YesC3T6,
    Unknown,
}

impl ClaVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaVerdict::YesOneRelator => "YES_ONE_RELATOR",
            ClaVerdict::YesC6 => "YES_C6",
            ClaVerdict::YesC4T4 => "YES_C4T4",
            ClaVerdict::YesC3T6 => "YES_C3T6",
            ClaVerdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BccStatus {
    KnownOneRelator,
    KnownC7,
    KnownC14T4,
    Conditional,
}

impl BccStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BccStatus::KnownOneRelator => "KNOWN_ONE_RELATOR",
            BccStatus::KnownC7 => "KNOWN_C7",
            BccStatus::KnownC14T4 => "KNOWN_C14T4",
            BccStatus::Conditional => "CONDITIONAL",
        }
    }

    pub fn is_known(self) -> bool {
        self != BccStatus::Conditional
    }
}

impl fmt::Display for ClaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for BccStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCancellationReport<T: IntScalar> {
    pub piece_report: Vec<RelatorPieces<T>>,
    /// Largest `p` with `C(p)`.
    pub c_max: Bound,
    /// Largest piece-to-relator ratio; `C′(λ)` holds exactly for `λ` above it.
    pub metric_lambda_star: Ratio<T>,
    pub t_flags: BTreeMap<usize, bool>,
    pub cla: ClaVerdict,
    pub bcc_status: BccStatus,
}

impl<T: IntScalar> SmallCancellationReport<T> {
    pub fn satisfies_c(&self, p: usize) -> bool {
        self.c_max.at_least(p)
    }

    /// `C′(λ)` from the stored maximal ratio.
    pub fn satisfies_metric(&self, lambda: &Ratio<T>) -> bool {
        self.metric_lambda_star < *lambda
    }
}

fn ratio<T: IntScalar>(num: usize, den: usize) -> Ratio<T> {
    Ratio::new(T::from_usize_exact(num), T::from_usize_exact(den))
}

/// Per-relator piece data over the whole symmetrized set of `p`.
pub fn piece_report<T: IntScalar>(p: &Presentation) -> Vec<RelatorPieces<T>> {
    let sym = symmetrize(p.relators());
    let shared = longest_shared_prefix(&sym);
    p.relators()
        .iter()
        .enumerate()
        .map(|(relator, r)| {
            let len = r.len();
            let mut max_piece = 0;
            let mut count = Bound::Unbounded;
            for w in [r.clone(), r.inverse()] {
                for i in 0..len {
                    let reach = reach_vector(&w.rotate(i), &shared);
                    max_piece = max_piece.max(reach[0]);
                    count = count.min(min_piece_decomposition(&reach));
                }
            }
            let metric_ratio = if len == 0 { Ratio::zero() } else { ratio(max_piece, len) };
            RelatorPieces {
                relator,
                relator_length: len,
                max_piece_length: max_piece,
                min_piece_count: count,
                metric_ratio,
            }
        })
        .collect()
}

/// Decides the small-cancellation conditions for `p` and derives the
/// asphericity and Baum–Connes verdicts. `T(q)` flags are reported for
/// `3 ≤ q ≤ q_max`.
pub fn classify<T: IntScalar>(p: &Presentation, q_max: usize) -> Result<SmallCancellationReport<T>, SmallCancelError> {
    if q_max < 4 {
        return Err(SmallCancelError::QMaxTooSmall(q_max));
    }
    let sym = symmetrize(p.relators());
    let piece_report = piece_report::<T>(p);
    let c_max = check_nonmetric(&sym);
    let metric_lambda_star = piece_report.iter().map(|r| r.metric_ratio.clone()).max().unwrap_or_else(Ratio::zero);

    let cycle = shortest_cancellation_cycle(&sym, q_max.max(6) - 1);
    let t = |q: usize| cycle.is_none_or(|h| h >= q);
    let t_flags = (3..=q_max).map(|q| (q, t(q))).collect();

    let k = p.relator_count();
    let cla = if k == 1 {
        ClaVerdict::YesOneRelator
    } else if c_max.at_least(6) {
        ClaVerdict::YesC6
    } else if c_max.at_least(4) && t(4) {
        ClaVerdict::YesC4T4
    } else if c_max.at_least(3) && t(6) {
        ClaVerdict::YesC3T6
    } else {
        ClaVerdict::Unknown
    };
    let quarter = ratio::<T>(1, 4);
    let bcc_status = if k == 1 {
        BccStatus::KnownOneRelator
    } else if c_max.at_least(7) {
        BccStatus::KnownC7
    } else if check_metric(&sym, &quarter)? && t(4) {
        BccStatus::KnownC14T4
    } else {
        BccStatus::Conditional
    };
    Ok(SmallCancellationReport { piece_report, c_max, metric_lambda_star, t_flags, cla, bcc_status })
}
