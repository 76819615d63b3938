use std::fmt;

use crate::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Self { generator, exponent: 1 }
    }

    pub fn inv(generator: usize) -> Self {
        Self { generator, exponent: -1 }
    }

    pub fn inverse(self) -> Self {
        Self { generator: self.generator, exponent: -self.exponent }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.exponent == -other.exponent
    }
}

/// Freely reduced word in a free group. Every constructor reduces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            debug_assert!(l.exponent == 1 || l.exponent == -1);
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Self { letters: out }
    }

    pub fn gen(generator: usize) -> Self {
        Self { letters: vec![Letter::gen(generator)] }
    }

    pub fn gen_inv(generator: usize) -> Self {
        Self { letters: vec![Letter::inv(generator)] }
    }

    /// `x_i^n`
    pub fn power_of(generator: usize, n: i64) -> Self {
        let l = if n >= 0 { Letter::gen(generator) } else { Letter::inv(generator) };
        Self { letters: vec![l; n.unsigned_abs() as usize] }
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
        Self { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Self::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Image under the endomorphism `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in &self.letters {
            let img = &images[l.generator];
            if l.exponent > 0 {
                out.extend_from_slice(&img.letters);
            } else {
                out.extend(img.letters.iter().rev().map(|x| x.inverse()));
            }
        }
        Word::new(out)
    }

    /// Exponent sum of each generator (the image in the abelianization).
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut v = vec![0; num_generators];
        for l in &self.letters {
            v[l.generator] += l.exponent as i64;
        }
        v
    }

    /// Parse the letter form: lowercase is a generator, uppercase its inverse.
    /// `1` or an empty string is the empty word.
    pub fn parse(text: &str, names: &[char]) -> Result<Self> {
        Self::parse_at(text, names, 1, 1)
    }

    pub(crate) fn parse_at(text: &str, names: &[char], line: usize, column: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            let lower = ch.to_ascii_lowercase();
            let Some(g) = names.iter().position(|&n| n == lower) else {
                return Err(Error::Parse {
                    line,
                    column: column + i,
                    message: format!("unknown generator '{ch}'"),
                });
            };
            letters.push(if ch.is_ascii_lowercase() { Letter::gen(g) } else { Letter::inv(g) });
        }
        Ok(Word::new(letters))
    }

    /// Letter form using the given generator names.
    pub fn to_text(&self, names: &[char]) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|l| {
                let c = names[l.generator];
                if l.exponent > 0 {
                    c
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exponent > 0 {
                write!(f, "x{}", l.generator)?;
            } else {
                write!(f, "x{}^-1", l.generator)?;
            }
        }
        Ok(())
    }
}

/// Default single-letter names `a, b, c, …`.
pub fn default_names(count: usize) -> Result<Vec<char>> {
    if count > 26 {
        return Err(Error::InvalidInput(format!("{count} generators cannot be written in letter form")));
    }
    Ok((0..count).map(|i| (b'a' + i as u8) as char).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const XY: [char; 2] = ['x', 'y'];

    #[test]
    fn reduction_and_text() {
        let w = Word::parse("xyYXy", &XY).unwrap();
        assert_eq!(w.to_text(&XY), "y");
        assert_eq!(Word::parse("xX", &XY).unwrap(), Word::empty());
        assert_eq!(Word::empty().to_text(&XY), "1");
        let err = Word::parse("xq", &XY).unwrap_err();
        assert_eq!(err, Error::Parse { line: 1, column: 2, message: "unknown generator 'q'".into() });
    }

    #[test]
    fn substitution() {
        let w = Word::parse("xY", &XY).unwrap();
        let images = [Word::parse("y", &XY).unwrap(), Word::parse("Xy", &XY).unwrap()];
        assert_eq!(w.substitute(&images).to_text(&XY), "x");
    }

    fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, prop::bool::ANY), 0..max_len)
            .prop_map(|v| Word::new(v.into_iter().map(|(g, s)| if s { Letter::gen(g) } else { Letter::inv(g) })))
    }

    proptest! {
        #[test]
        fn word_times_inverse_is_empty(w in arb_word(3, 16)) {
            prop_assert!(w.concat(&w.inverse()).is_empty());
            prop_assert!(w.inverse().concat(&w).is_empty());
        }

        #[test]
        fn reduced_form_has_no_cancelling_pairs(w in arb_word(2, 24)) {
            for pair in w.letters().windows(2) {
                prop_assert!(!(pair[0].generator == pair[1].generator && pair[0].exponent == -pair[1].exponent));
            }
            let again = Word::new(w.letters().iter().copied());
            prop_assert_eq!(again, w);
        }
    }
}
