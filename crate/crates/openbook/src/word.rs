//! Freely reduced words in the free group on the inner-hole generators.
//!
//! A letter is a signed generator index: `+1` exponent for `x_i`, `-1` for
//! its inverse. Words are kept reduced at all times, so two words are equal
//! in the free group iff they are equal as sequences.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::mcg::McgError;

/// Hard cap on word length; substitution past this aborts with an error
/// instead of silently truncating.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// One signed letter `x_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "X{}", self.gen)
        } else {
            write!(f, "x{}", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(gen: usize) -> Self {
        FreeWord { letters: vec![Letter::new(gen)] }
    }

    /// Reduces an arbitrary letter sequence. Reduction is confluent, so the
    /// result does not depend on cancellation order.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    /// Ascending product of plain generators, one letter per index.
    pub fn ascending<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        FreeWord::from_letters(gens.into_iter().map(Letter::new))
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

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    /// `self · w · self⁻¹`.
    pub fn conjugate(&self, w: &FreeWord) -> FreeWord {
        self.concat(w).concat(&self.inverse())
    }

    /// Commutator `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        self.concat(other).concat(&self.inverse()).concat(&other.inverse())
    }

    /// Largest generator index occurring in the word.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Net exponent of generator `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    /// Rewrites every letter through `images` (index = generator) and reduces.
    /// Fails with `WordTooLong` if the result would exceed `cap` letters, or
    /// if the substitution appends more than four times that many letters in
    /// total — cancellation-heavy blowups burn time long before they burn
    /// memory.
    pub fn substitute(&self, images: &[FreeWord], cap: usize) -> Result<FreeWord, McgError> {
        let mut out: Vec<Letter> = Vec::new();
        let work_cap = cap.saturating_mul(4);
        let mut work = 0usize;
        for l in &self.letters {
            let image = &images[l.gen];
            work += image.letters.len();
            if work > work_cap {
                return Err(McgError::WordTooLong { cap });
            }
            if l.inverse {
                for im in image.letters.iter().rev() {
                    push_reduced(&mut out, im.inv());
                }
            } else {
                for &im in image.letters.iter() {
                    push_reduced(&mut out, im);
                }
            }
            if out.len() > cap {
                return Err(McgError::WordTooLong { cap });
            }
        }
        Ok(FreeWord { letters: out })
    }

    /// Parses tokens like `x3` / `X3` (uppercase = inverse).
    pub fn parse_token(tok: &str) -> Option<Letter> {
        let mut chars = tok.chars();
        let head = chars.next()?;
        let inverse = match head {
            'x' => false,
            'X' => true,
            _ => return None,
        };
        let gen: usize = chars.as_str().parse().ok()?;
        Some(Letter { gen, inverse })
    }

    pub fn to_tokens(&self) -> Vec<String> {
        self.letters.iter().map(|l| l.to_string()).collect()
    }

    /// Dotted single-string form, e.g. `x0.x1.X0`; empty word prints as `1`.
    pub fn dotted(&self) -> String {
        if self.letters.is_empty() {
            "1".to_string()
        } else {
            self.to_tokens().join(".")
        }
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(&top) if top.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dotted())
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_tokens().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let tokens: Vec<String> = Vec::deserialize(deserializer)?;
        let mut letters = Vec::with_capacity(tokens.len());
        for t in &tokens {
            let l = FreeWord::parse_token(t)
                .ok_or_else(|| serde::de::Error::custom(format!("bad word token `{t}`")))?;
            letters.push(l);
        }
        Ok(FreeWord::from_letters(letters))
    }
}
