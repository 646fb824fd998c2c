//! Exact K-theory of reduced group C*-algebras for Cohen–Lyndon aspherical
//! presentations.
//!
//! The pipeline is: parse a presentation ([`presentation`]), extract relator
//! roots and abelianizations ([`freewords`]), certify asphericity and
//! Baum–Connes status through small-cancellation conditions
//! ([`smallcancel`]), and evaluate `K₀`, `K₁` with exact integer linear
//! algebra ([`intlinalg`], [`ktheory`]). [`dehn`] solves the word problem for
//! `C′(1/6)` presentations and is used to cross-check group identities.
//!
//! The numeric modules are generic over [`IntScalar`]; the aliases below fix
//! the scalar to arbitrary-precision integers.
//!
//! ```
//! use groupk_core::{analyze, parse_presentation, Abelian};
//!
//! let torus = parse_presentation("gens: a b; rels: [a,b]").unwrap();
//! let k = analyze::<groupk_core::Int>(&torus, 8).unwrap();
//! assert_eq!(k.k0, Abelian::free(2));
//! assert_eq!(k.k1, Abelian::free(2));
//! ```

pub mod dehn;
pub mod freewords;
pub mod intlinalg;
pub mod ktheory;
pub mod presentation;
pub mod scalar;
pub mod smallcancel;

pub use dehn::{dehn_step, is_trivial, DehnSolver, DehnStep, TriState, Verdict};
pub use freewords::{
    abelianize, cyclic_reduce, free_reduce, invert, maximal_root, relator_data, symmetrize, Letter, Word, WordError,
};
pub use intlinalg::{
    cokernel, direct_sum, kernel_basis, quotient_lattice, rank, smith_normal_form, AbelianGroup, IntMatrix,
    LinalgError, SmithForm,
};
pub use ktheory::{
    analyze, build_a, compute_ktheory, compute_r, Certificate, KTheoryError, KTheoryResult, RepRingBlock,
};
pub use presentation::{
    format_presentation, parse_presentation, parse_word, validate, Generator, Issue, ParseError, Presentation,
    PresentationError, Severity, ValidationReport,
};
pub use scalar::IntScalar;
pub use smallcancel::{
    check_metric, check_nonmetric, check_triangle, classify, piece_report, pieces, BccStatus, Bound, ClaVerdict,
    RelatorPieces, SmallCancelError, SmallCancellationReport,
};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type Matrix = IntMatrix<Int>;
pub type Abelian = AbelianGroup<Int>;
pub type Smith = SmithForm<Int>;
pub type Relator = freewords::RelatorData<Int>;
pub type Report = SmallCancellationReport<Int>;
pub type KTheory = KTheoryResult<Int>;
