use super::LawId;
use crate::error::{Error, Result};

use LawId::*;

/// Named law profiles accepted wherever a law list is expected.
///
/// | alias | laws |
/// |---|---|
/// | `prelie-bialg` | PRE_LIE, PRE_LIE_CO, PRE_LIE_BIALG |
/// | `nij-prelie-bialg` | PRE_LIE, NIJENHUIS, PRE_LIE_CO, CO_NIJENHUIS, PRE_LIE_BIALG, ADMISSIBLE_S, ADMISSIBLE_NSTAR |
/// | `quasitriangular` | PRE_LIE, SYMMETRIC_TENSOR, S_EQUATION |
/// | `dual-quasitriangular` | PRE_LIE_CO, SYMMETRIC_FORM, CO_S_EQUATION |
/// | `pseudo-hessian` | PRE_LIE, SYMMETRIC_FORM, PSEUDO_HESSIAN |
/// | `nij-prelie` | PRE_LIE, NIJENHUIS |
/// | `nij-prelie-co` | PRE_LIE_CO, CO_NIJENHUIS |
/// | `lie-bialg` | LIE_BIALG |
/// | `nij-lie-bialg` | NIJ_LIE_BIALG |
/// | `o-operator` | O_OPERATOR |
pub const PROFILES: &[(&str, &[LawId])] = &[
    ("prelie-bialg", &[PRE_LIE, PRE_LIE_CO, PRE_LIE_BIALG]),
    (
        "nij-prelie-bialg",
        &[PRE_LIE, NIJENHUIS, PRE_LIE_CO, CO_NIJENHUIS, PRE_LIE_BIALG, ADMISSIBLE_S, ADMISSIBLE_NSTAR],
    ),
    ("quasitriangular", &[PRE_LIE, SYMMETRIC_TENSOR, S_EQUATION]),
    ("dual-quasitriangular", &[PRE_LIE_CO, SYMMETRIC_FORM, CO_S_EQUATION]),
    ("pseudo-hessian", &[PRE_LIE, SYMMETRIC_FORM, PSEUDO_HESSIAN]),
    ("nij-prelie", &[PRE_LIE, NIJENHUIS]),
    ("nij-prelie-co", &[PRE_LIE_CO, CO_NIJENHUIS]),
    ("lie-bialg", &[LIE_BIALG]),
    ("nij-lie-bialg", &[NIJ_LIE_BIALG]),
    ("o-operator", &[O_OPERATOR]),
];

/// Parse a comma-separated list of profile aliases and law names.
///
/// Aliases are expanded in place; a law listed twice is kept once, at its
/// first position.
pub fn parse_profile(text: &str) -> Result<Vec<LawId>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let key = item.to_ascii_lowercase().replace('_', "-");
        let laws: Vec<LawId> = if let Some((_, laws)) = PROFILES.iter().find(|(name, _)| *name == key) {
            laws.to_vec()
        } else if let Some(law) = LawId::parse(item) {
            vec![law]
        } else {
            return Err(Error::InvalidDescriptor(format!("unknown law or profile `{item}`")));
        };
        for law in laws {
            if !out.contains(&law) {
                out.push(law);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidDescriptor("empty law profile".into()));
    }
    Ok(out)
}
