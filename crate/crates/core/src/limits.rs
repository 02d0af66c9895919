/// Environment variable overriding the enumeration ceiling.
pub const CEILING_ENV: &str = "TORSIONLAB_CEILING";

/// Enumeration gates shared by every exhaustive search in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of candidates any single enumeration may visit.
    pub ceiling: u64,
    /// Open sets of a Hom set are scanned as unions of cosets of its
    /// smallest basic neighbourhood, at most this many cosets.
    pub open_set_cosets: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ceiling: 1 << 20,
            open_set_cosets: 12,
        }
    }
}

impl Limits {
    pub fn with_ceiling(ceiling: u64) -> Limits {
        Limits {
            ceiling,
            ..Limits::default()
        }
    }

    /// Defaults, with the ceiling taken from `TORSIONLAB_CEILING` when set.
    pub fn from_env() -> Limits {
        let mut limits = Limits::default();
        if let Some(c) = std::env::var(CEILING_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            limits.ceiling = c;
        }
        limits
    }

    pub(crate) fn check(&self, what: &'static str, estimate: u64) -> crate::Result<()> {
        if estimate > self.ceiling {
            return Err(crate::Error::CeilingExceeded {
                what,
                estimate,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }
}
