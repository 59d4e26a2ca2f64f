//! Polynomial-time decoders for character codes over finite fields.
//!
//! Codewords are the functions `alpha -> chi(g(alpha))` (quadratic or `m`-th
//! power residue character) or `alpha -> Tr(g(alpha))` (dual-BCH and its odd
//! characteristic analogue), evaluated over all of `F_q`. The decoders
//! interpolate a high-multiplicity identity through a linear system, then
//! read the message off factor multiplicities or leading coefficients.

pub mod codes;
pub mod decode_dbch;
pub mod decode_qr;
pub mod diag;
pub mod error;
pub mod factor;
pub mod field;
pub mod linsolve;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod pseudo;
pub mod system;

pub use codes::{Alphabet, Validation, Word};
pub use diag::{Decoded, Diagnostics};
pub use error::{DecodeFailure, Error, FailureKind, Result};
pub use factor::{factor_poly, is_irreducible, Factorization};
pub use field::{Fe, Field, FieldCtx, FieldSpec};
pub use linsolve::MatrixFq;
pub use params::{DecoderParams, Family, Mode, Overrides, Resolved};
pub use poly::Poly;
pub use pseudo::PseudoPoly;
