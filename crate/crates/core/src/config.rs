use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded generator used by every randomized routine.
pub type Prng = ChaCha8Rng;

pub fn prng(seed: u64) -> Prng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Work limits. Exceeding any of them is reported as [`crate::Error::CapExceeded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest field size `p^n` that may be materialized.
    pub field_size: u64,
    /// Largest reduced enveloping algebra dimension `p^dim L`.
    pub env_dim: u64,
    /// Largest characteristic accepted by the restricted machinery.
    pub max_p: u32,
    /// Largest number of vectors enumerated exhaustively.
    pub enumeration: u64,
    /// Largest relative extension degree tried when searching for splitting fields.
    pub ext_degree: u32,
    pub meataxe_iterations: usize,
    /// Largest dimension of a constructed p-envelope.
    pub envelope_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_size: 1 << 20,
            env_dim: 1 << 13,
            max_p: 7,
            enumeration: 1 << 16,
            ext_degree: 12,
            meataxe_iterations: 200,
            envelope_dim: 64,
        }
    }
}
