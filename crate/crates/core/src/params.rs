/// Seed and desk-scale caps shared by every computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    /// Seed for all randomized subroutines (random elements, module splitting).
    pub seed: u64,
    pub max_degree: usize,
    /// Largest group order the brute-force lattice routines will enumerate.
    pub max_order: u64,
    /// Largest number of normal subgroups a lattice may hold.
    pub max_lattice: usize,
    /// Largest |H/K| enumerated by `centralizer_section`.
    pub max_section: usize,
    /// Largest index [G:H] for coset actions (`core`).
    pub max_index: usize,
    pub max_module_dim: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            seed: 0,
            max_degree: 1000,
            max_order: 1_000_000,
            max_lattice: 1000,
            max_section: 100_000,
            max_index: 100_000,
            max_module_dim: 200,
        }
    }
}

impl Params {
    pub fn with_seed(seed: u64) -> Self {
        Params {
            seed,
            ..Params::default()
        }
    }

    /// Derives an independent stream seed for a named subroutine call.
    pub(crate) fn stream(&self, tag: u64) -> u64 {
        // splitmix64 finalizer
        let mut z = self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}
