//! The built-in code family and external code declarations.
//!
//! The built-in registry is ordered by block length: `uncoded` (n = 1), the
//! Steane code, then the 17-qubit 4.8.8 color code's punctured descendants and
//! the base code itself. Every parameter is recomputed from the matrices and
//! compared against the published label; a mismatch is a fatal error.

use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::css::{CodeError, CssCode};
use crate::gf2::{BinaryMatrix, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("code {id}: {source}")]
    Code { id: String, source: CodeError },
    #[error("code {id}: matrix literal: {source}")]
    Literal { id: String, source: Gf2Error },
    #[error("code {id}: recomputed {found} disagrees with label {expected}")]
    LabelMismatch {
        id: String,
        expected: String,
        found: String,
    },
    #[error("duplicate code id {0}")]
    DuplicateId(String),
    #[error("codes are not ordered by block length at {0}")]
    Unordered(String),
    #[error("code declaration file: {0}")]
    Parse(String),
}

/// Hamming [7,4] parity check, used for both blocks of the Steane code.
pub const STEANE_H: &str = "
1010101
0110011
0001111";

/// `H1 = H2` of the [[17,1,5/5]] color code.
pub const BASE_17_H: &str = "
11011010101000010
01100011001100110
00111000000000100
00010000000001110
00001110010011101
00000101000110000
00000011111011010
00000001010100001";

pub const PUNCT_13_H1: &str = "
1110000000100
0100000001110
0011101011101
0001010110000
0000011100001";

pub const PUNCT_13_H2: &str = "
0110100000010
1000110100110
1110000000100
0100000001110
0011101011101
0001010110000
0000111011010";

pub const PUNCT_8_H1: &str = "
11100100
01001110
00111101
00000001";

pub const PUNCT_8_H2: &str = "
01110010
01001110
11100100";

/// Ids selectable with [`crate::reliability::CodeFamily::Punctured`]: the
/// uncoded baseline and every code sharing the base code's stabilizers.
pub const PUNCTURED_FAMILY: [&str; 4] = ["uncoded", "punct-8", "punct-13", "base-17"];

struct Builtin {
    id: &'static str,
    n: usize,
    dx: usize,
    dz: usize,
    h1: &'static str,
    h2: &'static str,
}

const BUILTINS: [Builtin; 5] = [
    Builtin {
        id: "uncoded",
        n: 1,
        dx: 1,
        dz: 1,
        h1: "",
        h2: "",
    },
    Builtin {
        id: "steane-7",
        n: 7,
        dx: 3,
        dz: 3,
        h1: STEANE_H,
        h2: STEANE_H,
    },
    Builtin {
        id: "punct-8",
        n: 8,
        dx: 3,
        dz: 3,
        h1: PUNCT_8_H1,
        h2: PUNCT_8_H2,
    },
    Builtin {
        id: "punct-13",
        n: 13,
        dx: 3,
        dz: 5,
        h1: PUNCT_13_H1,
        h2: PUNCT_13_H2,
    },
    Builtin {
        id: "base-17",
        n: 17,
        dx: 5,
        dz: 5,
        h1: BASE_17_H,
        h2: BASE_17_H,
    },
];

fn literal(id: &str, text: &str, n: usize) -> Result<BinaryMatrix, RegistryError> {
    let m =
        BinaryMatrix::parse_with_cols(text, Some(n)).map_err(|source| RegistryError::Literal {
            id: id.to_string(),
            source,
        })?;
    Ok(m)
}

/// Builds a code from matrices and checks the recomputed `[[n,1,dX/dZ]]` against a label.
pub fn labeled_code(
    id: &str,
    h1: BinaryMatrix,
    h2: BinaryMatrix,
    n: usize,
    dx: usize,
    dz: usize,
) -> Result<CssCode, RegistryError> {
    let code = CssCode::new(id, h1, h2).map_err(|source| RegistryError::Code {
        id: id.to_string(),
        source,
    })?;
    let expected = format!("[[{n},1,{dx}/{dz}]]");
    if code.parameters() != expected {
        return Err(RegistryError::LabelMismatch {
            id: id.to_string(),
            expected,
            found: code.parameters(),
        });
    }
    Ok(code)
}

/// An ordered collection of codes, shortest block length first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeRegistry {
    codes: Vec<CssCode>,
}

impl CodeRegistry {
    /// Checks id uniqueness and ordering by `n`.
    pub fn new(codes: Vec<CssCode>) -> Result<Self, RegistryError> {
        for (i, c) in codes.iter().enumerate() {
            if codes[..i].iter().any(|o| o.id() == c.id()) {
                return Err(RegistryError::DuplicateId(c.id().to_string()));
            }
            if i > 0 && codes[i - 1].n() > c.n() {
                return Err(RegistryError::Unordered(c.id().to_string()));
            }
        }
        Ok(Self { codes })
    }

    pub fn try_builtin() -> Result<Self, RegistryError> {
        let codes = BUILTINS
            .iter()
            .map(|b| {
                let h1 = literal(b.id, b.h1, b.n)?;
                let h2 = literal(b.id, b.h2, b.n)?;
                labeled_code(b.id, h1, h2, b.n, b.dx, b.dz)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(codes)
    }

    pub fn codes(&self) -> &[CssCode] {
        &self.codes
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CssCode> {
        self.codes.iter()
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CssCode> {
        self.codes.iter().find(|c| c.id() == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.codes.iter().map(CssCode::id).collect()
    }

    /// The sub-registry containing only `ids`, in registry order.
    pub fn subset(&self, ids: &[&str]) -> Self {
        Self {
            codes: self
                .codes
                .iter()
                .filter(|c| ids.contains(&c.id()))
                .cloned()
                .collect(),
        }
    }

    /// First registry code whose stabilizer row spaces equal `code`'s.
    pub fn find_equivalent(&self, code: &CssCode) -> Option<&CssCode> {
        self.codes
            .iter()
            .find(|c| c.n() == code.n() && c.same_stabilizers(code))
    }
}

impl<'a> IntoIterator for &'a CodeRegistry {
    type Item = &'a CssCode;
    type IntoIter = std::slice::Iter<'a, CssCode>;

    fn into_iter(self) -> Self::IntoIter {
        self.codes.iter()
    }
}

/// The built-in registry, constructed once per process.
///
/// # Panics
///
/// Panics if a built-in matrix fails validation; that is a transcription bug.
pub fn builtin_registry() -> &'static CodeRegistry {
    static REGISTRY: OnceLock<CodeRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| CodeRegistry::try_builtin().expect("built-in code registry is invalid"))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeclarationFile {
    #[serde(default)]
    code: Vec<Declaration>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Declaration {
    id: String,
    n: usize,
    #[serde(rename = "dX")]
    dx: usize,
    #[serde(rename = "dZ")]
    dz: usize,
    #[serde(default)]
    h1: String,
    #[serde(default)]
    h2: String,
}

/// Parses a TOML file of `[[code]]` tables with keys `id`, `n`, `dX`, `dZ`, `h1`, `h2`
/// (matrices in the row-literal format).
///
/// Declared distances are kept as claims and not recomputed; the syndrome
/// oracle is what audits them.
pub fn parse_declarations(text: &str) -> Result<CodeRegistry, RegistryError> {
    let file: DeclarationFile =
        toml::from_str(text).map_err(|e| RegistryError::Parse(e.message().to_string()))?;
    let mut codes = Vec::with_capacity(file.code.len());
    for d in file.code {
        let h1 = literal(&d.id, &d.h1, d.n)?;
        let h2 = literal(&d.id, &d.h2, d.n)?;
        let code =
            CssCode::with_claimed_distances(&d.id, h1, h2, d.dx, d.dz).map_err(|source| {
                RegistryError::Code {
                    id: d.id.clone(),
                    source,
                }
            })?;
        codes.push(code);
    }
    CodeRegistry::new(codes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_order_and_labels() {
        let reg = builtin_registry();
        assert_eq!(
            reg.ids(),
            ["uncoded", "steane-7", "punct-8", "punct-13", "base-17"]
        );
        let params: Vec<_> = reg.iter().map(CssCode::parameters).collect();
        assert_eq!(
            params,
            [
                "[[1,1,1/1]]",
                "[[7,1,3/3]]",
                "[[8,1,3/3]]",
                "[[13,1,3/5]]",
                "[[17,1,5/5]]"
            ]
        );
    }

    #[test]
    fn radii() {
        let reg = builtin_registry();
        let t: Vec<_> = reg.iter().map(|c| (c.tx(), c.tz())).collect();
        assert_eq!(t, [(0, 0), (1, 1), (1, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn wrong_label_is_fatal() {
        let h: BinaryMatrix = STEANE_H.parse().unwrap();
        let err = labeled_code("steane-7", h.clone(), h, 7, 5, 3).unwrap_err();
        assert!(matches!(err, RegistryError::LabelMismatch { .. }));
    }

    #[test]
    fn duplicate_and_order_checks() {
        let reg = builtin_registry();
        let mut codes = reg.codes().to_vec();
        codes.push(codes[0].clone());
        assert_eq!(
            CodeRegistry::new(codes),
            Err(RegistryError::DuplicateId("uncoded".into()))
        );
        let mut codes = reg.codes().to_vec();
        codes.swap(0, 4);
        assert!(matches!(
            CodeRegistry::new(codes),
            Err(RegistryError::Unordered(_))
        ));
    }

    #[test]
    fn declarations_keep_claims() {
        let text = format!(
            "[[code]]\nid = \"claimed\"\nn = 7\ndX = 5\ndZ = 5\nh1 = \"\"\"{STEANE_H}\"\"\"\nh2 = \"\"\"{STEANE_H}\"\"\"\n"
        );
        let reg = parse_declarations(&text).unwrap();
        let c = reg.get("claimed").unwrap();
        assert_eq!((c.dx(), c.dz(), c.k()), (5, 5, 1));
    }

    #[test]
    fn declaration_errors() {
        assert!(matches!(
            parse_declarations("[[code]]\nid = 3"),
            Err(RegistryError::Parse(_))
        ));
        let ragged = "[[code]]\nid = \"r\"\nn = 3\ndX = 1\ndZ = 1\nh1 = \"101\\n11\"\n";
        assert!(matches!(
            parse_declarations(ragged),
            Err(RegistryError::Literal { .. })
        ));
    }

    #[test]
    fn find_equivalent_uses_row_space() {
        let reg = builtin_registry();
        let base = reg.get("base-17").unwrap();
        let h1 = base.h1().rref().matrix;
        let alt = CssCode::new("alt", h1, base.h2().clone()).unwrap();
        assert_eq!(reg.find_equivalent(&alt).map(CssCode::id), Some("base-17"));
    }
}
