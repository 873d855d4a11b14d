//! Words in a free group.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A word over generators `0..rank`. Products built through the methods
/// here are always freely reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

/// Stack-based free reduction.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.0.len());
    for &l in &w.0 {
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

    pub fn gen(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    /// Unreduced word from raw letters.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Compact notation: `a`..`z` are generators 0..25, upper case marks an
    /// inverse, and `1` (or the empty string) is the identity. The result is
    /// not reduced.
    pub fn parse(text: &str) -> Option<Word> {
        if text == "1" {
            return Some(Word::identity());
        }
        text.chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Some(Letter::new(c as usize - 'a' as usize, false))
                } else if c.is_ascii_uppercase() {
                    Some(Letter::new(c as usize - 'A' as usize, true))
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
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

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn reduced(&self) -> Word {
        free_reduce(self)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        free_reduce(&Word(letters))
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        free_reduce(&Word(letters))
    }

    /// `c w c⁻¹`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| if l.inverse { -1 } else { 1 }).sum()
    }

    /// Splits a reduced word as `s core s⁻¹` with `core` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let w = free_reduce(self);
        let n = w.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && w.0[k].cancels(w.0[n - 1 - k]) {
            k += 1;
        }
        (Word(w.0[..k].to_vec()), Word(w.0[k..n - k].to_vec()))
    }

    /// Shortest `r` with `self = r^m`, for a cyclically reduced word.
    pub fn root(&self) -> Word {
        let n = self.0.len();
        for p in 1..=n {
            if n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return Word(self.0[..p].to_vec());
            }
        }
        self.clone()
    }

    /// Formats with one name per generator, e.g. `a b^-1`; `1` when empty.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                let name = names.get(l.gen).cloned().unwrap_or_else(|| format!("x{}", l.gen));
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            let c = if l.gen < 26 {
                let base = if l.inverse { b'A' } else { b'a' };
                ((base + l.gen as u8) as char).to_string()
            } else if l.inverse {
                format!("[x{}^-1]", l.gen)
            } else {
                format!("[x{}]", l.gen)
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
