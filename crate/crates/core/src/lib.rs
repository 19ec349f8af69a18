//! Exact, desk-scale computation of tensor-triangular invariants of finite EI
//! categories.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`], [`linalg`]: exact scalars and dense linear algebra.
//! * [`fincat`]: finite categories, EI detection, isomorphism classes, convexity.
//! * [`groupact`]: permutation groups, G-posets and transporter categories.
//! * [`catmod`]: the category algebra and its modules as functors.
//! * [`dcat`]: bounded complexes, cohomology, Künneth, cones, supports.
//! * [`ttspec`]: Balmer spectra, the subset/ideal classification, presheaf sections.
//! * [`gorcm`]: skew group algebras, Gorenstein verification, CM spectra.
//! * [`cohom`]: simplicial cohomology of order complexes and `Ext` via resolutions.
//!
//! Every algorithm is generic over [`Field`]; the aliases below cover the
//! fields used in practice.

pub mod catmod;
pub mod cohom;
pub mod dcat;
pub mod error;
pub mod field;
pub mod fincat;
pub mod fixtures;
pub mod gorcm;
pub mod groupact;
pub mod linalg;
pub mod ttspec;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type Q = num_rational::BigRational;

pub type Matrix<F> = linalg::Matrix<F>;
pub type ModuleF2 = catmod::FunctorModule<F2>;
pub type ComplexF2 = dcat::BoundedComplex<F2>;

/// Runs `$body` with `$F` bound to the field type matching a runtime
/// [`FieldSpec`]. Supported: the rationals and primes below 32.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $F:ident => $body:expr) => {{
        match $spec {
            $crate::FieldSpec::Rational => {
                type $F = $crate::Q;
                Ok($body)
            }
            $crate::FieldSpec::Prime(2) => {
                type $F = $crate::Fp<2>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(3) => {
                type $F = $crate::Fp<3>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(5) => {
                type $F = $crate::Fp<5>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(7) => {
                type $F = $crate::Fp<7>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(11) => {
                type $F = $crate::Fp<11>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(13) => {
                type $F = $crate::Fp<13>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(17) => {
                type $F = $crate::Fp<17>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(19) => {
                type $F = $crate::Fp<19>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(23) => {
                type $F = $crate::Fp<23>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(29) => {
                type $F = $crate::Fp<29>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(31) => {
                type $F = $crate::Fp<31>;
                Ok($body)
            }
            $crate::FieldSpec::Prime(p) => Err($crate::Error::UnsupportedScale(format!(
                "characteristic {p} is not compiled in (supported: 0 and primes below 32)"
            ))),
        }
    }};
}
