/// Limits for the searches that are not guaranteed to stop quickly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Node cap for enumerations of reduced representatives and cyclic orbits.
    pub node_cap: usize,
    /// Steps granted to each worker of a race.
    pub race_steps: u64,
    /// Homomorphisms tried by a witness search.
    pub hom_tries: u64,
    /// Largest permutation degree used by hom searches.
    pub max_degree: usize,
    /// Hard cap on the order of any finite group that gets enumerated.
    pub order_cap: usize,
    /// Seed for the randomized part of hom searches.
    pub seed: u64,
}

pub const BUDGET_ENV: &str = "RAAGKIT_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Budget {
            node_cap: 200_000,
            race_steps: 4_000,
            hom_tries: 20_000,
            max_degree: 8,
            order_cap: 1_000_000,
            seed: 0,
        }
    }
}

impl Budget {
    /// Defaults, with the step counts replaced by `RAAGKIT_BUDGET` when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(n) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            b = b.with_steps(n);
        }
        b
    }

    pub fn with_steps(mut self, n: u64) -> Self {
        self.race_steps = n;
        self.hom_tries = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}
