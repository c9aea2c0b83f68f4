//! Counting rational points of bounded height on weighted projective spaces
//! over global function fields.
//!
//! Two independent routes to the counts A_d(w):
//!
//! * [`enumeration`] lists or counts points of P(w) over F_q(t) directly, by
//!   w-primitive polynomial representatives modulo the F_q^× action.
//! * [`zeta`] builds the weighted divisor zeta function Z_w(X, t) in closed
//!   form, divides by the curve zeta function Z(X, t), and extracts A_d as
//!   exact power-series coefficients. The same module evaluates the
//!   asymptotic main term sum_u a_u q^{d|u|}.
//!
//! Base curves ([`curves`]) are the projective line and elliptic curves in
//! short Weierstrass form.
//!
//! ```
//! use wps_core::enumeration::{count_points, EnumOptions};
//! use wps_core::{height_zeta, CurveModel, Field, WeightVector};
//!
//! let f2 = Field::prime(2).unwrap();
//! let w = WeightVector::new(vec![1, 2]).unwrap();
//! let hz = height_zeta(&CurveModel::genus0(&f2), &w).unwrap();
//! let counted = count_points(&f2, &w, 2, &EnumOptions::default()).unwrap();
//! assert_eq!(counted, hz.ad_exact(2).unwrap());
//! assert_eq!(counted.to_string(), "168");
//! ```

pub mod curves;
pub mod enumeration;
pub mod error;
pub mod finite_field;
pub mod function_field;
pub mod polynomials;
pub mod ratfun;
pub mod weights;
pub mod zeta;

pub use curves::{ClassRep, CurveKind, CurveModel, EcPoint, ZetaData};
pub use enumeration::{EnumOptions, NormalizedPoint};
pub use error::{Error, Result};
pub use finite_field::{Field, FieldElement, FieldOp};
pub use function_field::{Divisor, Place, RationalFunction};
pub use polynomials::{EnumerateMode, Factorization, Poly};
pub use ratfun::{QPoly, RatFuncQ, Rational};
pub use weights::{Subset, WeightVector};
pub use zeta::{height_zeta, ErrorTerms, WeightedZeta};
