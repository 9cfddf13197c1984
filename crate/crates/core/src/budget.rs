use crate::error::{Error, Result};

/// Hard ceiling imposed by the 64-bit mask kernels.
pub const MASK_LIMIT: usize = 63;

/// Enumeration limits for the exhaustive kernels.
///
/// Exceeding a limit is always reported as [`Error::BudgetExceeded`]; no
/// kernel silently truncates its search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum vertex count for hypergraph toughness and completeness.
    pub toughness_vertices: usize,
    /// Maximum `|Y|` for Y-toughness.
    pub y_vertices: usize,
    /// Maximum `|X| + |Y|` for the `3^|V|` barrier scan.
    pub criterion_vertices: usize,
    /// Maximum `|A ∩ X|` for which the neighbourhood clause is checked over all subsets.
    pub structure_subsets: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            toughness_vertices: 20,
            y_vertices: 20,
            criterion_vertices: 18,
            structure_subsets: 20,
        }
    }
}

impl Budget {
    /// Parses an override string such as `24` (applies to every vertex
    /// limit) or `toughness=22,criterion=16`.
    ///
    /// Recognised keys: `toughness`, `y`, `criterion`, `structure`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidSpec(format!("budget override: {msg}"));
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                None => {
                    let v = parse_limit(part).map_err(bad)?;
                    self.toughness_vertices = v;
                    self.y_vertices = v;
                    self.criterion_vertices = v;
                }
                Some((key, value)) => {
                    let v = parse_limit(value.trim()).map_err(bad)?;
                    match key.trim() {
                        "toughness" => self.toughness_vertices = v,
                        "y" => self.y_vertices = v,
                        "criterion" => self.criterion_vertices = v,
                        "structure" => self.structure_subsets = v,
                        other => return Err(bad(format!("unknown key `{other}`"))),
                    }
                }
            }
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, size: usize, limit: usize) -> Result<()> {
        let limit = limit.min(MASK_LIMIT);
        if size > limit {
            Err(Error::BudgetExceeded { what, size, limit })
        } else {
            Ok(())
        }
    }
}

fn parse_limit(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let b = Budget::default().with_overrides("24").unwrap();
        assert_eq!(b.toughness_vertices, 24);
        assert_eq!(b.criterion_vertices, 24);
        assert_eq!(b.structure_subsets, 20);

        let b = Budget::default()
            .with_overrides("criterion=12, structure=4")
            .unwrap();
        assert_eq!(b.criterion_vertices, 12);
        assert_eq!(b.structure_subsets, 4);
        assert_eq!(b.toughness_vertices, 20);

        assert!(Budget::default().with_overrides("foo=3").is_err());
        assert!(Budget::default().with_overrides("x").is_err());
    }

    #[test]
    fn mask_ceiling_applies() {
        assert!(Budget::check("n", 63, 1000).is_ok());
        assert!(matches!(
            Budget::check("n", 64, 1000),
            Err(Error::BudgetExceeded { limit: 63, .. })
        ));
    }
}
