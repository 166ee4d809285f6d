//! Freely reduced words over a finite alphabet.
//!
//! Text form: lowercase `a`..`z` are generators 0..25, uppercase letters are
//! their inverses. Words are reduced on construction, so `abBA` parses to the
//! empty word and stays empty through every operation.

use std::fmt;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement, GroupError};

#[derive(Debug, Error)]
pub enum WordError {
    #[error("illegal character {0:?} in word (expected ascii letters)")]
    IllegalCharacter(char),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("assignment has {assigned} images but the word uses generator {index}")]
    RankMismatch { assigned: usize, index: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One letter: a generator index with an orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    /// Parses the compact text form, rejecting characters outside the ascii
    /// alphabet and generator indices at or beyond `rank`.
    pub fn parse(text: &str, rank: usize) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(text.len());
        for c in text.chars() {
            let (gen, inverse) = if c.is_ascii_lowercase() {
                ((c as u8 - b'a') as usize, false)
            } else if c.is_ascii_uppercase() {
                ((c as u8 - b'A') as usize, true)
            } else {
                return Err(WordError::IllegalCharacter(c));
            };
            if gen >= rank {
                return Err(WordError::GeneratorOutOfRange { index: gen, rank });
            }
            letters.push(Letter { gen, inverse });
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Product in the free group (reduces across the seam).
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    /// Image of the word under the homomorphism sending generator `i` to
    /// `assignment[i]`.
    pub fn evaluate(
        &self,
        assignment: &[GroupElement],
        group: &FiniteGroup,
    ) -> Result<GroupElement, WordError> {
        let mut acc = group.identity();
        for letter in &self.letters {
            let image = assignment.get(letter.gen).ok_or(WordError::RankMismatch {
                assigned: assignment.len(),
                index: letter.gen,
            })?;
            let factor = if letter.inverse {
                group.inverse(image)?
            } else {
                image.clone()
            };
            acc = group.compose(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// Exponent sum of each generator, as a length-`rank` vector.
    pub fn abelianized_exponents(&self, rank: usize) -> Result<Vec<i64>, WordError> {
        let mut out = vec![0i64; rank];
        for letter in &self.letters {
            if letter.gen >= rank {
                return Err(WordError::GeneratorOutOfRange {
                    index: letter.gen,
                    rank,
                });
            }
            out[letter.gen] += if letter.inverse { -1 } else { 1 };
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.letters {
            let base = if letter.inverse { b'A' } else { b'a' };
            write!(f, "{}", (base + letter.gen as u8) as char)?;
        }
        Ok(())
    }
}
