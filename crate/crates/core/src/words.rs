//! Reduced words over a free alphabet, their evaluation on matrix tuples,
//! and the brute-force relation search.
//!
//! A nonempty reduced word evaluating to the identity is an explicit
//! relation — a *proof* of non-freeness. The search runs shortest-first
//! (then lexicographic), so the first witness found is canonical. Absence
//! of a witness up to a length bound proves nothing.

use crate::int::Int;
use crate::mat2::Mat2;
use alloc::vec::Vec;
use core::fmt;

/// One letter: a generator index (0-based) and whether it is inverted.
/// Letter order for lexicographic purposes: a < a^-1 < b < b^-1 < ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Letter {
        Letter { gen, inverse }
    }

    pub fn inverse_letter(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn index(self) -> u32 {
        self.gen * 2 + self.inverse as u32
    }

    fn from_index(i: u32) -> Letter {
        Letter {
            gen: i / 2,
            inverse: i % 2 == 1,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gen < 26 {
            write!(f, "{}", (b'a' + self.gen as u8) as char)?;
        } else {
            write!(f, "g{}", self.gen + 1)?;
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A reduced word: no letter adjacent to its own inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotReduced {
    /// Position of the first cancelling adjacent pair.
    pub at: usize,
}

impl fmt::Display for NotReduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "word is not reduced: letters {} and {} cancel", self.at, self.at + 1)
    }
}

impl core::error::Error for NotReduced {}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word, NotReduced> {
        for (i, pair) in letters.windows(2).enumerate() {
            if pair[0].cancels(pair[1]) {
                return Err(NotReduced { at: i });
            }
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Left-to-right product of the letters on `tuple`; the empty word is
    /// the identity. Letter indices must lie within the tuple.
    pub fn evaluate(&self, tuple: &[Mat2]) -> Mat2 {
        let mut acc = Mat2::identity();
        for l in &self.0 {
            let m = &tuple[l.gen as usize];
            acc = if l.inverse {
                acc.mul(&m.inverse())
            } else {
                acc.mul(m)
            };
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All reduced words of length 1..=max_len over s generators, shortest
/// first, lexicographic within a length. The count at length exactly l is
/// 2s * (2s-1)^(l-1).
pub fn reduced_words(s: u32, max_len: u32) -> ReducedWords {
    assert!(s >= 1 && max_len >= 1);
    ReducedWords {
        s,
        max_len,
        len: 0,
        current: Vec::new(),
    }
}

pub struct ReducedWords {
    s: u32,
    max_len: u32,
    len: u32,
    current: Vec<Letter>, // empty means: start the next length
}

impl ReducedWords {
    /// Smallest letter extending `prev` without cancellation.
    fn first_after(&self, prev: Option<Letter>) -> Letter {
        for i in 0..2 * self.s {
            let l = Letter::from_index(i);
            if prev.map_or(true, |p| !l.cancels(p)) {
                return l;
            }
        }
        unreachable!("s >= 1 always leaves a non-cancelling letter")
    }

    /// Odometer step within the current length; false when exhausted.
    fn advance(&mut self) -> bool {
        let top = 2 * self.s - 1;
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            let prev = if pos == 0 {
                None
            } else {
                Some(self.current[pos - 1])
            };
            // Next letter at `pos` skipping the one cancelling `prev`.
            let mut idx = self.current[pos].index();
            loop {
                if idx == top {
                    break; // wrapped; carry to the left
                }
                idx += 1;
                let l = Letter::from_index(idx);
                if prev.map_or(true, |p| !l.cancels(p)) {
                    self.current[pos] = l;
                    // Refill everything to the right with minimal letters.
                    for p in pos + 1..self.current.len() {
                        let prev = self.current[p - 1];
                        self.current[p] = self.first_after(Some(prev));
                    }
                    return true;
                }
            }
        }
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.current.is_empty() || !self.advance() {
            // Start the next length with its lexicographically first word.
            if self.len >= self.max_len {
                self.len = self.max_len + 1; // stay exhausted
                return None;
            }
            self.len += 1;
            self.current.clear();
            for i in 0..self.len {
                let prev = if i == 0 {
                    None
                } else {
                    Some(self.current[i as usize - 1])
                };
                let l = self.first_after(prev);
                self.current.push(l);
            }
        }
        Some(Word(self.current.clone()))
    }
}

/// An explicit relation: a nonempty reduced word whose product is I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWitness {
    pub word: Word,
    pub product: Mat2,
}

/// Result of a bounded relation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    /// The shortest witness (lexicographically first among shortest), or
    /// None when no reduced word of length <= max_len evaluates to I.
    /// None is NOT a freeness proof.
    pub witness: Option<RelationWitness>,
    pub max_len: u32,
    /// Prefix products evaluated during the search (deterministic).
    pub checked_words: u64,
}

/// Shortest-first search for a relation among reduced words of length
/// 1..=max_len. Iterative deepening over a depth-first prefix walk with
/// product sharing: at depth t only one new multiplication happens.
///
/// Subtrees are pruned by exact height: a prefix P completable to the
/// identity within r more letters must satisfy P = W^-1 with |W| <= r, and
/// any product of r generators of height <= X has height <= 2^(r-1) X^r;
/// prefixes above that bound are skipped. The bound is exact arithmetic on
/// [`Int`], so no witness is ever lost.
pub fn find_relation(tuple: &[Mat2], max_len: u32) -> RelationReport {
    assert!(max_len >= 1);
    let s = tuple.len();
    if s == 0 {
        return RelationReport {
            witness: None,
            max_len,
            checked_words: 0,
        };
    }
    let gens: Vec<Mat2> = tuple.to_vec();
    let invs: Vec<Mat2> = tuple.iter().map(Mat2::inverse).collect();
    let x = tuple
        .iter()
        .map(|m| m.height().max(Int::ONE))
        .max()
        .expect("nonempty");
    // bound[r] = 2^(r-1) * x^r for r >= 1; bound[0] = 1 (P itself must be I).
    let mut bound = Vec::with_capacity(max_len as usize + 1);
    bound.push(Int::ONE);
    for r in 1..=max_len {
        bound.push(&Int::from(2i64).pow(r - 1) * &x.pow(r));
    }

    let mut checked: u64 = 0;
    let letters: Vec<Letter> = (0..2 * s as u32).map(Letter::from_index).collect();
    for len in 1..=max_len {
        // Depth-first over reduced words of exactly `len` letters, in
        // lexicographic order, with an explicit product stack.
        let mut word: Vec<Letter> = Vec::with_capacity(len as usize);
        let mut prods: Vec<Mat2> = Vec::with_capacity(len as usize);
        // next_idx[t]: next letter index to try at depth t.
        let mut next_idx: Vec<u32> = alloc::vec![0; len as usize];
        loop {
            let depth = word.len();
            debug_assert!((depth as u32) < len, "leaves are never pushed");
            let prev = word.last().copied();
            let mut advanced = false;
            while (next_idx[depth] as usize) < letters.len() {
                let l = letters[next_idx[depth] as usize];
                next_idx[depth] += 1;
                if prev.is_some_and(|p| l.cancels(p)) {
                    continue;
                }
                let base = prods.last().cloned().unwrap_or_else(Mat2::identity);
                let m = if l.inverse {
                    &invs[l.gen as usize]
                } else {
                    &gens[l.gen as usize]
                };
                let p = base.mul(m);
                checked += 1;
                let t = depth as u32 + 1;
                if t == len {
                    if p.is_identity() {
                        let w = Word(word.iter().copied().chain([l]).collect());
                        return RelationReport {
                            witness: Some(RelationWitness { word: w, product: p }),
                            max_len,
                            checked_words: checked,
                        };
                    }
                    continue; // stay at this depth, try the next letter
                }
                // Descend unless no completion can reach the identity.
                let remaining = len - t;
                if p.height() > bound[remaining as usize] {
                    continue;
                }
                word.push(l);
                prods.push(p);
                next_idx[depth + 1] = 0;
                advanced = true;
                break;
            }
            if !advanced {
                if depth == 0 {
                    break; // this length exhausted
                }
                word.pop();
                prods.pop();
            }
        }
    }
    RelationReport {
        witness: None,
        max_len,
        checked_words: checked,
    }
}
