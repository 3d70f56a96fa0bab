//! Braid words and their closures.
//!
//! Knots enter the state sum as braid closures. A word is written
//! `"s: w1 w2 ..."` where `s` is the strand count and each letter `w` is a
//! nonzero integer with `|w| < s` (sign = crossing sign). The closure must be
//! a single component for the colored Jones computation; [`BraidWord::parse`]
//! enforces that, while [`BraidWord::new`] also admits link closures so that
//! [`closure_components`] can be queried on anything.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A braid word: strand count plus signed generator letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: u32,
    pub letters: Vec<i32>,
}

impl BraidWord {
    /// Build a word, validating only letter ranges (the closure may be a link).
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("strand count must be at least 1".into()));
        }
        for &w in &letters {
            if w == 0 || w.unsigned_abs() >= strands {
                return Err(Error::Parse(format!(
                    "letter {w} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse `"s: w1 w2 ..."`; rejects closures with more than one component.
    pub fn parse(text: &str) -> Result<Self> {
        let (head, tail) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in braid word {text:?}")))?;
        let strands: u32 = head
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count {head:?}")))?;
        let mut letters = Vec::new();
        for tok in tail.split_whitespace() {
            let w: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
            letters.push(w);
        }
        let braid = Self::new(strands, letters)?;
        let comps = braid.closure_components();
        if comps != 1 {
            return Err(Error::LinkNotKnot { components: comps });
        }
        Ok(braid)
    }

    /// Inverse of [`parse`](Self::parse) on valid words.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}:", self.strands);
        for w in &self.letters {
            s.push(' ');
            s.push_str(&w.to_string());
        }
        s
    }

    pub fn crossings(&self) -> usize {
        self.letters.len()
    }

    /// Crossing excess `c = max(0, crossings - 2)`: every growth bound is
    /// stated in terms of it (a knot diagram needs at least two crossings).
    pub fn crossing_excess(&self) -> u32 {
        self.letters.len().saturating_sub(2) as u32
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&w| i64::from(w.signum())).sum()
    }

    /// The mirror word (all crossing signs flipped).
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|w| -w).collect(),
        }
    }

    /// Bottom position `j` is connected to top position `perm[j]`.
    pub fn closure_permutation(&self) -> Vec<usize> {
        let s = self.strands as usize;
        let mut perm: Vec<usize> = (0..s).collect();
        for &w in &self.letters {
            let i = (w.unsigned_abs() - 1) as usize;
            // perm maps bottom position -> current position; swap at i, i+1.
            for p in perm.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        perm
    }

    /// Number of cycles of the closure permutation = closure components.
    pub fn closure_components(&self) -> usize {
        let perm = self.closure_permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = perm[at];
            }
        }
        cycles
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }
}

/// Free-function form of [`BraidWord::closure_components`].
pub fn closure_components(b: &BraidWord) -> usize {
    b.closure_components()
}
