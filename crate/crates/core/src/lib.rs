//! Exact invariants of two-bridge knots and their cyclic branched covers.
//!
//! The crate is organised around the data it manipulates:
//!
//! * [`twobridge`]: continued fractions, mirrors, Seifert matrices and the
//!   Alexander-resultant oracle for `|H1|` of cyclic branched covers.
//! * [`words`]: free-group words with affine exponents and power blocks.
//! * [`presentations`]: the genus-one and genus-two cyclic presentations,
//!   abelianization and Smith normal form.
//! * [`goeritz`]: Goeritz matrices, the `A`/`L` block families and their
//!   closed-form determinant tables.
//! * [`qacert`]: skein certificate trees, generator and verifier.
//! * [`loelim`]: sign-pattern elimination for left-orderability.
//! * [`cli`]: the command-line front end.
//!
//! Start with the runnable programs under `examples/`.

pub mod cli;
pub mod error;
pub mod goeritz;
pub mod linalg;
pub mod loelim;
pub mod poly;
pub mod presentations;
pub mod qacert;
pub mod twobridge;
pub mod words;

pub use error::{Error, Result};

/// Order of a finitely generated abelian group: finite or infinite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(num_bigint::BigInt),
    Infinite,
}

impl Order {
    pub fn finite(n: i64) -> Order {
        Order::Finite(n.into())
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "INFINITE"),
        }
    }
}
