//! K-theory of the reduced group C*-algebra of a Cohen–Lyndon aspherical
//! presentation `⟨s₁,…,sₙ | r₁,…,r_k⟩` with `rᵢ = (rᵢ′)^{dᵢ}`:
//!
//! ```text
//! K₀ ≅ R ⊕ ker(⊕ᵢ⟨rᵢ′⟩ → ℤⁿ)        K₁ ≅ ℤⁿ / Σᵢ ℤ·π(rᵢ′)
//! ```
//!
//! where `R` is `⊕ᵢ R(ℤ/dᵢ)` with the regular-representation classes of all
//! blocks identified. The map `⊕ᵢ⟨rᵢ′⟩ → ℤⁿ` is the `n×k` matrix `A` whose
//! columns are the abelianized roots.

use thiserror::Error;

use crate::freewords::{relator_data, RelatorData, WordError};
use crate::intlinalg::{
    cokernel, direct_sum, kernel_basis, quotient_lattice, smith_normal_form, AbelianGroup, IntMatrix, LinalgError,
};
use crate::presentation::{validate, Presentation, ValidationReport};
use crate::scalar::IntScalar;
use crate::smallcancel::{classify, BccStatus, ClaVerdict, SmallCancelError, SmallCancellationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("presentation failed validation: {}", .0.issues.iter().map(|i| i.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(ValidationReport),
    #[error("operation needs at least one relator")]
    NoRelators,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    SmallCancel(#[from] SmallCancelError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// Which hypothesis backs the K-theory interpretation of the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    OneRelator,
    C6,
    C4T4,
    C3T6,
    NotCertified,
    FreeGroup,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::OneRelator => "ONE_RELATOR",
            Certificate::C6 => "C6",
            Certificate::C4T4 => "C4T4",
            Certificate::C3T6 => "C3T6",
            Certificate::NotCertified => "NOT_CERTIFIED",
            Certificate::FreeGroup => "FREE_GROUP",
        }
    }

    fn from_verdict(cla: ClaVerdict) -> Self {
        match cla {
            ClaVerdict::YesOneRelator => Certificate::OneRelator,
            ClaVerdict::YesC6 => Certificate::C6,
            ClaVerdict::YesC4T4 => Certificate::C4T4,
            ClaVerdict::YesC3T6 => Certificate::C3T6,
            ClaVerdict::Unknown => Certificate::NotCertified,
        }
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Representation ring of `ℤ/d` in the character basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepRingBlock<T> {
    pub relator: usize,
    pub order: usize,
    /// Class of the regular representation: the sum of all characters.
    pub regular_class: Vec<T>,
}

impl<T: IntScalar> RepRingBlock<T> {
    pub fn new(relator: usize, order: usize) -> Self {
        RepRingBlock { relator, order, regular_class: vec![T::one(); order] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTheoryResult<T: IntScalar> {
    pub k0: AbelianGroup<T>,
    pub k1: AbelianGroup<T>,
    pub r: AbelianGroup<T>,
    /// Relations presenting `r` on the character basis of `⊕ᵢ R(ℤ/dᵢ)`.
    pub r_presentation: IntMatrix<T>,
    /// `ker(⊕ᵢ⟨rᵢ′⟩ → ℤⁿ)`, always free.
    pub ker_term: AbelianGroup<T>,
    pub kernel_basis: IntMatrix<T>,
    pub relative_k0: AbelianGroup<T>,
    pub relative_k1: AbelianGroup<T>,
    pub a_matrix: IntMatrix<T>,
    pub rank_a: usize,
    pub relators: Vec<RelatorData<T>>,
    pub eligibility: SmallCancellationReport<T>,
    pub certificate: Certificate,
    /// True when Baum–Connes for the group is assumed rather than known.
    pub conditional: bool,
}

/// Columns are the abelianized maximal roots of the relators.
pub fn build_a<T: IntScalar>(p: &Presentation) -> Result<IntMatrix<T>, KTheoryError> {
    if p.relator_count() == 0 {
        return Err(KTheoryError::NoRelators);
    }
    let data = relator_data::<T>(p)?;
    a_from_data(p.generator_count(), &data)
}

fn a_from_data<T: IntScalar>(n: usize, data: &[RelatorData<T>]) -> Result<IntMatrix<T>, KTheoryError> {
    let cols: Vec<Vec<T>> = data.iter().map(|d| d.abelianized_root.clone()).collect();
    Ok(IntMatrix::from_columns(n, &cols)?)
}

/// Quotient of `⊕ᵢ R(ℤ/dᵢ)` by the differences of consecutive regular
/// classes, with the relation matrix used to present it.
pub fn compute_r<T: IntScalar>(blocks: &[RepRingBlock<T>]) -> Result<(AbelianGroup<T>, IntMatrix<T>), KTheoryError> {
    if blocks.is_empty() {
        return Err(KTheoryError::NoRelators);
    }
    let ambient: usize = blocks.iter().map(|b| b.order).sum();
    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.order;
            Some(o)
        })
        .collect();
    let gens: Vec<Vec<T>> = (0..blocks.len() - 1)
        .map(|i| {
            let mut v = vec![T::zero(); ambient];
            for (slot, x) in v[offsets[i]..].iter_mut().zip(&blocks[i].regular_class) {
                *slot = x.clone();
            }
            for (slot, x) in v[offsets[i + 1]..].iter_mut().zip(&blocks[i + 1].regular_class) {
                *slot = slot.clone() - x.clone();
            }
            v
        })
        .collect();
    let relations = IntMatrix::from_columns(ambient, &gens)?;
    let snf = smith_normal_form(&relations);
    if snf.rank != gens.len() || snf.diagonal().iter().any(|d| !d.is_one()) {
        return Err(KTheoryError::Inconsistent(format!(
            "regular-class relations have SNF diagonal {:?}, expected {} unit pivots",
            snf.diagonal(),
            gens.len()
        )));
    }
    let r = quotient_lattice(ambient, &relations)?;
    Ok((r, relations))
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), KTheoryError> {
    if cond {
        Ok(())
    } else {
        Err(KTheoryError::Inconsistent(what()))
    }
}

/// Evaluates the K-theory formulas for a validated presentation.
///
/// Presentations without an asphericity certificate are still computed and
/// tagged `NOT_CERTIFIED`. A presentation with no relators is the free group
/// and short-circuits to `K₀ = ℤ`, `K₁ = ℤⁿ`.
pub fn compute_ktheory<T: IntScalar>(
    p: &Presentation,
    report: &SmallCancellationReport<T>,
) -> Result<KTheoryResult<T>, KTheoryError> {
    let validation = validate(p);
    if !validation.ok {
        return Err(KTheoryError::Invalid(validation));
    }
    let n = p.generator_count();
    let k = p.relator_count();
    let conditional = report.bcc_status == BccStatus::Conditional;

    if k == 0 {
        return Ok(KTheoryResult {
            k0: AbelianGroup::free(1),
            k1: AbelianGroup::free(n),
            r: AbelianGroup::free(1),
            r_presentation: IntMatrix::zeros(1, 0),
            ker_term: AbelianGroup::trivial(),
            kernel_basis: IntMatrix::zeros(0, 0),
            relative_k0: AbelianGroup::free(1),
            relative_k1: AbelianGroup::free(n),
            a_matrix: IntMatrix::zeros(n, 0),
            rank_a: 0,
            relators: Vec::new(),
            eligibility: report.clone(),
            certificate: Certificate::FreeGroup,
            conditional,
        });
    }

    let relators = relator_data::<T>(p)?;
    let a = a_from_data(n, &relators)?;
    let rank_a = smith_normal_form(&a).rank;
    let k1 = cokernel(&a);
    let kernel = kernel_basis(&a);
    let ker_term = AbelianGroup::free(kernel.cols());

    let blocks: Vec<RepRingBlock<T>> = relators.iter().map(|d| RepRingBlock::new(d.index, d.exponent)).collect();
    let (r, r_presentation) = compute_r(&blocks)?;
    let k0 = direct_sum(&r, &ker_term);
    let relative_k0 = ker_term.clone();
    let relative_k1 = direct_sum(&k1, &AbelianGroup::free(k - 1));

    let sum_d: usize = relators.iter().map(|d| d.exponent).sum();
    check(kernel.cols() == k - rank_a, || format!("kernel rank {} != k - rank(A) = {}", kernel.cols(), k - rank_a))?;
    check(k0.rank() == sum_d + 1 - rank_a, || {
        format!("rank K0 = {} but sum(d) + 1 - rank(A) = {}", k0.rank(), sum_d + 1 - rank_a)
    })?;
    check(k0.is_free(), || format!("K0 = {k0} has torsion"))?;
    check(k1.rank() == n - rank_a, || format!("rank K1 = {} but n - rank(A) = {}", k1.rank(), n - rank_a))?;

    // Abelianization of the quotient group: adding the relator images to the
    // root images must not change the cokernel.
    let relator_cols: Vec<Vec<T>> = relators.iter().map(|d| d.abelianized_relator.clone()).collect();
    let widened = a.hconcat(&IntMatrix::from_columns(n, &relator_cols)?)?;
    let quotient_ab = cokernel(&widened);
    check(quotient_ab == k1, || format!("coker[A | pi(r)] = {quotient_ab} differs from K1 = {k1}"))?;

    if relators.iter().all(|d| d.abelianized_relator.iter().all(|x| x.is_zero())) {
        check(k1 == AbelianGroup::free(n) && ker_term == AbelianGroup::free(k), || {
            format!("relators abelianize to zero but K1 = {k1}, ker = {ker_term}")
        })?;
    }

    Ok(KTheoryResult {
        k0,
        k1,
        r,
        r_presentation,
        ker_term,
        kernel_basis: kernel,
        relative_k0,
        relative_k1,
        a_matrix: a,
        rank_a,
        relators,
        eligibility: report.clone(),
        certificate: Certificate::from_verdict(report.cla),
        conditional,
    })
}

/// Classification followed by the K-theory computation.
pub fn analyze<T: IntScalar>(p: &Presentation, q_max: usize) -> Result<KTheoryResult<T>, KTheoryError> {
    let report = classify::<T>(p, q_max)?;
    compute_ktheory(p, &report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use num_bigint::BigInt;

    type G = AbelianGroup<BigInt>;

    fn run(text: &str) -> KTheoryResult<BigInt> {
        analyze(&parse_presentation(text).unwrap(), 8).unwrap()
    }

    fn col(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn build_a_examples() {
        let a = build_a::<BigInt>(&parse_presentation("gens: a b; rels: [a,b]").unwrap()).unwrap();
        assert_eq!((a.rows(), a.cols()), (2, 1));
        assert!(a.is_zero());
        let a = build_a::<BigInt>(&parse_presentation("gens: a b; rels: a^2 b^-3").unwrap()).unwrap();
        assert_eq!(a.columns(), vec![col(&[2, -3])]);
        let a = build_a::<BigInt>(&parse_presentation("gens: a b; rels: (a b)^3").unwrap()).unwrap();
        assert_eq!(a.columns(), vec![col(&[1, 1])]);
        let free = parse_presentation("gens: a b; rels: ;").unwrap();
        assert_eq!(build_a::<BigInt>(&free), Err(KTheoryError::NoRelators));
    }

    #[test]
    fn compute_r_examples() {
        let (r, m) = compute_r(&[RepRingBlock::<BigInt>::new(0, 5)]).unwrap();
        assert_eq!(r, G::free(5));
        assert_eq!(m.cols(), 0);
        let (r, _) = compute_r(&[RepRingBlock::<BigInt>::new(0, 1), RepRingBlock::new(1, 1)]).unwrap();
        assert_eq!(r, G::free(1));
        let (r, m) = compute_r(&[RepRingBlock::<BigInt>::new(0, 2), RepRingBlock::new(1, 3)]).unwrap();
        assert_eq!(m.columns(), vec![col(&[1, 1, -1, -1, -1])]);
        assert_eq!(r, G::free(4));
        assert_eq!(compute_r::<BigInt>(&[]), Err(KTheoryError::NoRelators));
    }

    #[test]
    fn cyclic_group() {
        let res = run("gens: a; rels: a^6");
        assert_eq!(res.k0, G::free(6));
        assert!(res.k1.is_trivial());
        assert_eq!(res.certificate, Certificate::OneRelator);
        assert!(!res.conditional);
    }

    #[test]
    fn torus() {
        let res = run("gens: a b; rels: [a,b]");
        assert_eq!(res.r, G::free(1));
        assert_eq!(res.ker_term, G::free(1));
        assert_eq!(res.k0, G::free(2));
        assert_eq!(res.k1, G::free(2));
        assert_eq!(res.relative_k0, G::free(1));
        assert_eq!(res.relative_k1, G::free(2));
    }

    #[test]
    fn trefoil() {
        let res = run("gens: a b; rels: a^2 b^-3");
        assert_eq!(res.k0, G::free(1));
        assert_eq!(res.k1, G::free(1));
        assert_eq!(res.rank_a, 1);
    }

    #[test]
    fn torsion_one_relator() {
        let res = run("gens: a b; rels: (a b)^3");
        assert_eq!(res.k0, G::free(3));
        assert_eq!(res.k1, G::free(1));
    }

    #[test]
    fn genus_two() {
        let res = run("gens: a b c d; rels: [a,b][c,d]");
        assert_eq!(res.k0, G::free(2));
        assert_eq!(res.k1, G::free(4));
    }

    #[test]
    fn torsion_in_k1() {
        // Roots a²b² and b give A = [[2,0],[2,1]]: K₁ = ℤ/2, relative K₁ = ℤ ⊕ ℤ/2.
        let res = run("gens: a b; rels: a^2 b^2, b");
        assert_eq!(res.k1, G::new(0, col(&[2])));
        assert_eq!(res.relative_k1, G::new(1, col(&[2])));
    }

    #[test]
    fn powers_use_the_root() {
        // a² has root a, so A = identity and K₁ vanishes; R = ℤ² ⊕ ℤ / ℤ.
        let res = run("gens: a b; rels: a^2, b");
        assert!(res.k1.is_trivial());
        assert_eq!(res.k0, G::free(2));
    }

    #[test]
    fn free_group_short_circuit() {
        let res = run("gens: a b; rels: ;");
        assert_eq!(res.certificate, Certificate::FreeGroup);
        assert_eq!(res.k0, G::free(1));
        assert_eq!(res.k1, G::free(2));
    }

    #[test]
    fn not_certified_still_computes() {
        let res = run("gens: a b; rels: a b, a b^-1");
        assert_eq!(res.certificate, Certificate::NotCertified);
        assert!(res.conditional);
        // A = [[1,1],[1,-1]], det −2: K₁ = ℤ/2, ker = 0, R = ℤ.
        assert_eq!(res.k1, G::new(0, col(&[2])));
        assert_eq!(res.k0, G::free(1));
    }

    #[test]
    fn invalid_presentation_is_rejected() {
        let p = parse_presentation("gens: a; rels: a^3, a^3").unwrap();
        assert!(matches!(analyze::<BigInt>(&p, 8), Err(KTheoryError::Invalid(_))));
    }

    #[test]
    fn fixed_width_scalars_agree() {
        let p = parse_presentation("gens: a b; rels: a^2 b^-3, (a b)^5").unwrap();
        let big = analyze::<BigInt>(&p, 8).unwrap();
        let small = analyze::<i64>(&p, 8).unwrap();
        assert_eq!(big.k0.rank(), small.k0.rank());
        assert_eq!(big.k1.rank(), small.k1.rank());
        let small_t: Vec<BigInt> = small.k1.invariant_factors().iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(big.k1.invariant_factors(), &small_t[..]);
    }
}
