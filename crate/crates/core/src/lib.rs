//! Generalised digit systems `(R, X, N)` over `R = E[x]/(P)`.
//!
//! Coefficient rings `E` are the integers, the Gaussian integers and
//! `F_p[y]`. Elements of `R` have a unique canonical form even when `P` is
//! not monic, so the backward division map `T(A) = (A - D(A))/X` can be
//! iterated exactly. On top of that sit decision procedures for the finite
//! and periodic expansion properties: witness-set closure, shift radix
//! systems, product systems and a finite-field criterion.

pub mod digits;
pub mod error;
pub mod ffds;
pub mod parse;
pub mod poly;
pub mod product;
pub mod quotient;
pub mod rings;
pub mod srs;
pub mod witness;

pub use digits::{DigitSequence, DigitSystem, Expansion, ExpandFailure, SequenceClass, ZeroCycle};
pub use error::{Error, ParseError, Result, Violation};
pub use poly::Poly;
pub use quotient::{QuotElem, QuotientRing};
pub use rings::{CoeffRing, FpPoly, FpPolyRing, Gaussian, GaussianIntegers, Integers, RingDescriptor};
pub use witness::{decide_fep, decide_pep, Answer, Certificate, DecideOptions, Property, Verdict};
