//! Finite systems with negation maps and surpassing relations, and the
//! module theory built on top of them: symmetrization, congruences,
//! kernels and cokernels, chain complexes with several exactness notions,
//! homology, connecting maps, and semiexact kernel/cokernel verification.
//!
//! Every carrier in this crate is finite and explicitly enumerated, so all
//! quantified axioms are decided by exhaustive search. Structures are
//! immutable after construction and safe to share across threads.

pub mod bits;
pub mod congruence;
pub mod diagrams;
pub mod fixtures;
pub mod homology;
pub mod module;
pub mod morphism;
pub mod semiexact;
pub mod symmetrize;
pub mod system;

pub use system::{Element, GroundSystem, SystemKind, SystemReport};

/// Enumeration bounds for the exhaustive machinery.
///
/// Operations that materialize carriers or pair relations check these
/// limits and fail with [`Error::Bound`] instead of allocating without
/// limit.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    /// Largest module carrier that may be enumerated element by element.
    pub max_elements: usize,
    /// Largest pair relation, measured in bits of its incidence matrix.
    pub max_pair_bits: u64,
    /// Cap on congruence-lattice and homomorphism-set enumerations.
    pub max_enumeration: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_elements: 1_000_000,
            max_pair_bits: 10_000_000,
            max_enumeration: 200_000,
        }
    }
}

impl Bounds {
    pub fn check_elements(&self, n: usize, what: &str) -> Result<()> {
        if n > self.max_elements {
            return Err(Error::Bound(format!(
                "{what}: {n} elements exceeds bound {}",
                self.max_elements
            )));
        }
        Ok(())
    }

    pub fn check_pair_bits(&self, n: usize, what: &str) -> Result<()> {
        let bits = (n as u64).saturating_mul(n as u64);
        if bits > self.max_pair_bits {
            return Err(Error::Bound(format!(
                "{what}: {bits} pair bits exceeds bound {}",
                self.max_pair_bits
            )));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element belongs to a different system")]
    CrossSystem,
    #[error("element belongs to a different module")]
    CrossModule,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("enumeration bound exceeded: {0}")]
    Bound(String),
    #[error("operation requires a free module")]
    NotFree,
    #[error("relation is not a congruence")]
    NotACongruence,
    #[error("morphism is not a homomorphism")]
    NotAHomomorphism,
    #[error("system has no signed decomposition")]
    NoSignedDecomposition,
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("f-minimality condition does not hold: {0}")]
    MinimalityAbsent(String),
    #[error("empty supremum set for kernel element {0}")]
    SupEmpty(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
