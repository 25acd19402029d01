//! Free-group arithmetic: freely reduced words and automorphisms given by
//! basis images together with explicitly supplied inverse images.
//!
//! Composition is functional throughout the crate: `compose(f, g)` acts by
//! `g` first, then `f`, so `compose(f, g).apply(w) == f.apply(g.apply(w))`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the number of letters in any word produced by the engine.
pub const DEFAULT_MAX_LEN: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: u32, rank: u32 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("word length {len} exceeds cap {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("expected {expected} basis images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("supplied inverse images do not invert the images on x{generator}")]
    NotInverse { generator: u32 },
    #[error("generator index must be positive")]
    ZeroIndex,
}

/// One letter `x_i^{±1}`; generator indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u32, sign: i8) -> Self {
        debug_assert!(generator > 0);
        Letter {
            generator,
            inverse: sign < 0,
        }
    }

    pub fn pos(generator: u32) -> Self {
        Letter::new(generator, 1)
    }

    pub fn neg(generator: u32) -> Self {
        Letter::new(generator, -1)
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

/// Freely reduce an arbitrary letter sequence.
pub fn reduce(letters: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        reduce(letters)
    }

    /// Build from signed indices: `[1, -2]` is `x1 x2^-1`.
    pub fn from_signed(indices: &[i32]) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 {
                return Err(WordError::ZeroIndex);
            }
            letters.push(Letter::new(i.unsigned_abs(), if i < 0 { -1 } else { 1 }));
        }
        Ok(reduce(&letters))
    }

    pub fn generator(i: u32) -> Self {
        Word(vec![Letter::pos(i)])
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

    pub fn to_signed(&self) -> Vec<i32> {
        self.0
            .iter()
            .map(|l| l.generator as i32 * l.sign() as i32)
            .collect()
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Exponent sum of each generator `1..=rank`.
    pub fn exponent_sums(&self, rank: u32) -> Vec<i64> {
        let mut v = vec![0i64; rank as usize];
        for l in &self.0 {
            if let Some(slot) = v.get_mut(l.generator as usize - 1) {
                *slot += l.sign() as i64;
            }
        }
        v
    }

    /// Cyclically reduced core of the word.
    pub fn cyclic_core(&self) -> &[Letter] {
        let w = &self.0;
        let (mut lo, mut hi) = (0usize, w.len());
        while hi - lo >= 2 && w[lo].cancels(w[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        &w[lo..hi]
    }

    /// True iff the word is a conjugate of `x_i` (or of `x_i^-1` when `sign < 0`).
    pub fn is_conjugate_of_generator(&self, i: u32, sign: i8) -> bool {
        self.cyclic_core() == [Letter::new(i, sign)]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if l.inverse {
                write!(f, "x{}^-1", l.generator)?;
            } else {
                write!(f, "x{}", l.generator)?;
            }
        }
        Ok(())
    }
}

/// Automorphism of the free group of rank `rank`, stored with its inverse.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FreeAutomorphism {
    rank: u32,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

fn check_len(w: &Word, cap: usize) -> Result<(), WordError> {
    if w.len() > cap {
        Err(WordError::TooLong { len: w.len(), cap })
    } else {
        Ok(())
    }
}

/// Substitute images into `w` without checking the rank; images are indexed from 0.
fn substitute(images: &[Word], w: &Word, cap: usize) -> Result<Word, WordError> {
    let mut out: Vec<Letter> = Vec::new();
    for l in w.letters() {
        let img = &images[l.generator as usize - 1];
        if l.inverse {
            for &m in img.letters().iter().rev() {
                push_reduced(&mut out, m.inv());
            }
        } else {
            for &m in img.letters() {
                push_reduced(&mut out, m);
            }
        }
        if out.len() > cap {
            return Err(WordError::TooLong { len: out.len(), cap });
        }
    }
    Ok(Word(out))
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(&top) if top.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl FreeAutomorphism {
    /// Construct from images and explicit inverse images; both inverse
    /// checks are run before the value is returned.
    pub fn new(rank: u32, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self, WordError> {
        for list in [&images, &inverse_images] {
            if list.len() != rank as usize {
                return Err(WordError::ImageCount {
                    expected: rank as usize,
                    got: list.len(),
                });
            }
            for w in list.iter() {
                if w.max_generator() > rank {
                    return Err(WordError::IndexOutOfRange {
                        index: w.max_generator(),
                        rank,
                    });
                }
                check_len(w, DEFAULT_MAX_LEN)?;
            }
        }
        let phi = FreeAutomorphism {
            rank,
            images,
            inverse_images,
        };
        phi.check_inverse()?;
        Ok(phi)
    }

    pub fn identity(rank: u32) -> Self {
        let images: Vec<Word> = (1..=rank).map(Word::generator).collect();
        FreeAutomorphism {
            rank,
            inverse_images: images.clone(),
            images,
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn image(&self, i: u32) -> &Word {
        &self.images[i as usize - 1]
    }

    pub fn inverse(&self) -> Self {
        FreeAutomorphism {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// Both `φ∘φ⁻¹` and `φ⁻¹∘φ` fix every basis generator.
    pub fn check_inverse(&self) -> Result<(), WordError> {
        for i in 1..=self.rank {
            let x = Word::generator(i);
            let there = substitute(&self.images, &x, DEFAULT_MAX_LEN)?;
            let back = substitute(&self.inverse_images, &there, DEFAULT_MAX_LEN)?;
            let other = substitute(&self.inverse_images, &x, DEFAULT_MAX_LEN)?;
            let fwd = substitute(&self.images, &other, DEFAULT_MAX_LEN)?;
            if back != x || fwd != x {
                return Err(WordError::NotInverse { generator: i });
            }
        }
        Ok(())
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        if w.max_generator() > self.rank {
            return Err(WordError::IndexOutOfRange {
                index: w.max_generator(),
                rank: self.rank,
            });
        }
        substitute(&self.images, w, DEFAULT_MAX_LEN)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let images = other
            .images
            .iter()
            .map(|w| substitute(&self.images, w, DEFAULT_MAX_LEN))
            .collect::<Result<Vec<_>, _>>()?;
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| substitute(&other.inverse_images, w, DEFAULT_MAX_LEN))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FreeAutomorphism {
            rank: self.rank,
            images,
            inverse_images,
        })
    }

    /// Compose a chain functionally: `chain[0] ∘ chain[1] ∘ …`.
    pub fn compose_all<'a, I>(rank: u32, chain: I) -> Result<FreeAutomorphism, WordError>
    where
        I: IntoIterator<Item = &'a FreeAutomorphism>,
    {
        let mut acc = FreeAutomorphism::identity(rank);
        for phi in chain {
            acc = acc.compose(phi)?;
        }
        Ok(acc)
    }

    /// `c ∘ self ∘ c⁻¹`.
    pub fn conjugate_by(&self, c: &FreeAutomorphism) -> Result<FreeAutomorphism, WordError> {
        c.compose(self)?.compose(&c.inverse())
    }

    pub fn equals(&self, other: &FreeAutomorphism) -> Result<bool, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(self.images == other.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i as u32 + 1))
    }

    /// Action on the abelianization `Z^rank`: column `j` holds the exponent
    /// sums of the image of `x_j`.
    pub fn abelianized(&self) -> Vec<Vec<i64>> {
        let r = self.rank as usize;
        let mut m = vec![vec![0i64; r]; r];
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_sums(self.rank).into_iter().enumerate() {
                m[i][j] = e;
            }
        }
        m
    }
}

impl PartialEq for FreeAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.images == other.images
    }
}

impl Eq for FreeAutomorphism {}
