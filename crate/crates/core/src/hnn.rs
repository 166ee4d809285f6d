//! Knot complements presented by splitting along a Seifert surface.
//!
//! The data is a finitely generated free-by-relators base group `B` (the
//! surface complement), two tuples of words `u_i`, `v_i` generating the
//! subgroups `U` and `V` (push-offs of a spanning-surface basis on either
//! side), and the gluing `u_i -> v_i` induced by the meridian. A fibered
//! knot admits such a splitting with `U = B`, in which case the `v`-words
//! are the monodromy images of the generators.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::poly::IntPoly;
use crate::words::{Word, WordError};

/// Generators are single letters, so ranks beyond the alphabet are rejected.
pub const MAX_BASE_RANK: usize = 26;

#[derive(Debug, Error)]
pub enum HnnError {
    #[error("knot file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("knot file {path}: {message}")]
    File { path: String, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("u has {u} words but v has {v}")]
    WordCountMismatch { u: usize, v: usize },
    #[error("base rank {0} exceeds the {MAX_BASE_RANK}-letter alphabet")]
    RankTooLarge(usize),
    #[error("alexander determinant requires a free base (no relators)")]
    AlexanderNeedsFreeBase,
    #[error("alexander determinant requires square exponent matrices ({rows} words, rank {cols})")]
    AlexanderNonSquare { rows: usize, cols: usize },
}

/// One knot presentation. `genus_hint` and `fibered_hint` are catalog
/// metadata; no computation trusts them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnnSystem {
    pub name: String,
    pub base_rank: usize,
    pub relators: Vec<Word>,
    pub u_words: Vec<Word>,
    pub v_words: Vec<Word>,
    pub genus_hint: Option<usize>,
    pub fibered_hint: Option<bool>,
}

impl HnnSystem {
    pub fn new(
        name: impl Into<String>,
        base_rank: usize,
        relators: Vec<Word>,
        u_words: Vec<Word>,
        v_words: Vec<Word>,
        genus_hint: Option<usize>,
        fibered_hint: Option<bool>,
    ) -> Result<Self, HnnError> {
        if base_rank > MAX_BASE_RANK {
            return Err(HnnError::RankTooLarge(base_rank));
        }
        if u_words.len() != v_words.len() {
            return Err(HnnError::WordCountMismatch {
                u: u_words.len(),
                v: v_words.len(),
            });
        }
        for word in relators.iter().chain(&u_words).chain(&v_words) {
            if let Some(max) = word.max_generator() {
                if max >= base_rank {
                    return Err(WordError::GeneratorOutOfRange {
                        index: max,
                        rank: base_rank,
                    }
                    .into());
                }
            }
        }
        Ok(HnnSystem {
            name: name.into(),
            base_rank,
            relators,
            u_words,
            v_words,
            genus_hint,
            fibered_hint,
        })
    }

    fn from_strs(
        name: &str,
        base_rank: usize,
        u: &[&str],
        v: &[&str],
        genus_hint: Option<usize>,
        fibered_hint: Option<bool>,
    ) -> Result<Self, HnnError> {
        let parse_all = |texts: &[&str]| -> Result<Vec<Word>, WordError> {
            texts.iter().map(|t| Word::parse(t, base_rank)).collect()
        };
        HnnSystem::new(
            name,
            base_rank,
            Vec::new(),
            parse_all(u)?,
            parse_all(v)?,
            genus_hint,
            fibered_hint,
        )
    }

    /// Number of entries in a vertex tuple of the shift graph.
    pub fn tuple_len(&self) -> usize {
        self.u_words.len()
    }

    /// Parses the line-oriented knot format:
    ///
    /// ```text
    /// # twist knot, plumbing framings (-1, -2)
    /// name 5_2
    /// base_rank 2
    /// u Ab, BB
    /// v A, BBa
    /// genus 1
    /// ```
    ///
    /// Keys may appear in any order, at most once each. `relators`, `u`,
    /// `v`, and `genus` are optional; `name` and `base_rank` are required.
    pub fn parse(text: &str) -> Result<Self, HnnError> {
        let mut name: Option<String> = None;
        let mut base_rank: Option<usize> = None;
        let mut relators: Option<(usize, String)> = None;
        let mut u: Option<(usize, String)> = None;
        let mut v: Option<(usize, String)> = None;
        let mut genus: Option<usize> = None;

        let bad = |line: usize, message: String| HnnError::Parse { line, message };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            let dup = |field: &str| bad(line_no, format!("duplicate key {field:?}"));
            match key {
                "name" => {
                    if name.replace(rest.to_string()).is_some() {
                        return Err(dup("name"));
                    }
                    if rest.is_empty() {
                        return Err(bad(line_no, "empty name".into()));
                    }
                }
                "base_rank" => {
                    let value: usize = rest
                        .parse()
                        .map_err(|_| bad(line_no, format!("unreadable base_rank {rest:?}")))?;
                    if base_rank.replace(value).is_some() {
                        return Err(dup("base_rank"));
                    }
                }
                "relators" => {
                    if relators.replace((line_no, rest.to_string())).is_some() {
                        return Err(dup("relators"));
                    }
                }
                "u" => {
                    if u.replace((line_no, rest.to_string())).is_some() {
                        return Err(dup("u"));
                    }
                }
                "v" => {
                    if v.replace((line_no, rest.to_string())).is_some() {
                        return Err(dup("v"));
                    }
                }
                "genus" => {
                    let value: usize = rest
                        .parse()
                        .map_err(|_| bad(line_no, format!("unreadable genus {rest:?}")))?;
                    if value == 0 {
                        return Err(bad(line_no, "genus must be positive".into()));
                    }
                    if genus.replace(value).is_some() {
                        return Err(dup("genus"));
                    }
                }
                other => return Err(bad(line_no, format!("unknown key {other:?}"))),
            }
        }

        let name = name.ok_or_else(|| bad(0, "missing required key \"name\"".into()))?;
        let base_rank =
            base_rank.ok_or_else(|| bad(0, "missing required key \"base_rank\"".into()))?;
        let parse_list = |entry: Option<(usize, String)>| -> Result<Vec<Word>, HnnError> {
            let (line_no, text) = match entry {
                Some(pair) => pair,
                None => return Ok(Vec::new()),
            };
            if text.is_empty() {
                return Ok(Vec::new());
            }
            text.split(',')
                .map(|token| {
                    let token = token.trim();
                    if token.is_empty() {
                        return Err(bad(line_no, "empty word in list".into()));
                    }
                    Word::parse(token, base_rank)
                        .map_err(|e| bad(line_no, format!("bad word {token:?}: {e}")))
                })
                .collect()
        };
        HnnSystem::new(
            name,
            base_rank,
            parse_list(relators)?,
            parse_list(u)?,
            parse_list(v)?,
            genus,
            None,
        )
    }

    pub fn load(path: &Path) -> Result<Self, HnnError> {
        let text = std::fs::read_to_string(path).map_err(|e| HnnError::File {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        HnnSystem::parse(&text).map_err(|e| HnnError::File {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    /// `det(t * E_U - E_V)` over the exponent-sum matrices of the two word
    /// tuples, normalized so the lowest coefficient is positive and the
    /// constant term is nonzero. For a rank-zero system the determinant of
    /// the empty matrix is 1.
    pub fn alexander_poly(&self) -> Result<IntPoly, HnnError> {
        if !self.relators.is_empty() {
            return Err(HnnError::AlexanderNeedsFreeBase);
        }
        if self.u_words.len() != self.base_rank {
            return Err(HnnError::AlexanderNonSquare {
                rows: self.u_words.len(),
                cols: self.base_rank,
            });
        }
        let n = self.base_rank;
        let mut matrix: Vec<Vec<IntPoly>> = Vec::with_capacity(n);
        for (uw, vw) in self.u_words.iter().zip(&self.v_words) {
            let eu = uw.abelianized_exponents(n)?;
            let ev = vw.abelianized_exponents(n)?;
            matrix.push(
                eu.iter()
                    .zip(&ev)
                    .map(|(&a, &b)| &IntPoly::monomial(a, 1) - &IntPoly::constant(b))
                    .collect(),
            );
        }
        Ok(poly_det(&matrix).normalize_units())
    }
}

impl fmt::Display for HnnSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.name, self.base_rank)
    }
}

/// Laplace expansion along the first column; fine for the word-tuple sizes
/// that occur in practice.
fn poly_det(matrix: &[Vec<IntPoly>]) -> IntPoly {
    let n = matrix.len();
    if n == 0 {
        return IntPoly::one();
    }
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut det = IntPoly::zero();
    for row in 0..n {
        if matrix[row][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<IntPoly>> = matrix
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != row)
            .map(|(_, cells)| cells[1..].to_vec())
            .collect();
        let term = &matrix[row][0] * &poly_det(&minor);
        det = if row % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
    }
    det
}

/// The built-in knots: the unknot, both fibered genus-1 knots, and the two
/// smallest nonfibered genus-1 twist knots.
pub struct KnotCatalog {
    entries: BTreeMap<String, HnnSystem>,
}

impl KnotCatalog {
    pub fn get(&self, name: &str) -> Option<&HnnSystem> {
        self.entries.get(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &HnnSystem> {
        self.entries.values()
    }
}

/// Builds the catalog and checks every entry against its expected Alexander
/// polynomial (the unit-normalized determinant above), so a bad edit to the
/// word data fails fast.
pub fn builtin_catalog() -> KnotCatalog {
    let raw: Vec<(HnnSystem, Vec<i64>)> = vec![
        (
            HnnSystem::from_strs("unknot", 0, &[], &[], None, Some(true)).unwrap(),
            vec![1],
        ),
        (
            HnnSystem::from_strs("trefoil", 2, &["a", "b"], &["b", "bA"], Some(1), Some(true))
                .unwrap(),
            vec![1, -1, 1],
        ),
        (
            HnnSystem::from_strs(
                "figure-eight",
                2,
                &["a", "b"],
                &["ab", "bab"],
                Some(1),
                Some(true),
            )
            .unwrap(),
            vec![1, -3, 1],
        ),
        (
            HnnSystem::from_strs("5_2", 2, &["Ab", "BB"], &["A", "BBa"], Some(1), Some(false))
                .unwrap(),
            vec![2, -3, 2],
        ),
        (
            HnnSystem::from_strs("6_1", 2, &["ab", "BB"], &["a", "BBa"], Some(1), Some(false))
                .unwrap(),
            vec![2, -5, 2],
        ),
    ];
    let mut entries = BTreeMap::new();
    for (system, expected) in raw {
        let poly = system
            .alexander_poly()
            .expect("catalog entries are free-base and square");
        assert_eq!(
            poly.coeffs(),
            expected.as_slice(),
            "catalog entry {} fails its Alexander check",
            system.name
        );
        entries.insert(system.name.clone(), system);
    }
    KnotCatalog { entries }
}
