use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_elements`].
pub const MAX_ELEMENTS_ENV: &str = "HPOLY_MAX_ELEMENTS";

/// Enumeration caps.
///
/// These are configuration rather than constants: the defaults refuse the full
/// `E8` Weyl group but allow all groups of rank at most 7.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group, quotient or subset of `W` that may be materialised.
    pub max_elements: u64,
    /// Largest `n` for which `S_n` is enumerated by [`crate::hpoly::eulerian`].
    pub max_eulerian_n: usize,
    /// Largest `n` for the face-lattice sum of [`crate::hpoly::permutahedron_h`].
    pub max_permutahedron_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 10_000_000,
            max_eulerian_n: 12,
            max_permutahedron_n: 10,
        }
    }
}

impl Limits {
    /// Default limits, with `max_elements` taken from `HPOLY_MAX_ELEMENTS` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MAX_ELEMENTS_ENV) {
            limits.max_elements = raw.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{MAX_ELEMENTS_ENV}={raw:?} is not an integer"))
            })?;
        }
        Ok(limits)
    }

    /// Applies `key = value` lines. Blank lines and `#` comments are ignored.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let value = value.trim();
            let bad = || {
                Error::InvalidParameter(format!(
                    "config line {}: {value:?} is not an integer",
                    lineno + 1
                ))
            };
            match key.trim() {
                "max_elements" => self.max_elements = value.parse().map_err(|_| bad())?,
                "max_eulerian_n" => self.max_eulerian_n = value.parse().map_err(|_| bad())?,
                "max_permutahedron_n" => {
                    self.max_permutahedron_n = value.parse().map_err(|_| bad())?
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "config line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub(crate) fn check(&self, what: impl FnOnce() -> String, size: u128) -> Result<()> {
        if size > self.max_elements as u128 {
            return Err(Error::CapExceeded {
                what: what(),
                size,
                cap: self.max_elements,
            });
        }
        Ok(())
    }
}
