//! Free differential calculus in the integral group ring of a free group.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::word::Word;

/// Finite ℤ-linear combination of reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoxElement {
    terms: BTreeMap<Word, i64>,
}

impl FoxElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FoxElement) -> FoxElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FoxElement) -> FoxElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &FoxElement) -> FoxElement {
        let mut out = FoxElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    /// Image under the augmentation-compatible abelianization `x_j ↦ t^{φ(x_j)}`:
    /// returns exponent → coefficient.
    pub fn abelianize(&self, phi: &[i64]) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (w, c) in self.terms() {
            let e: i64 = w.letters().iter().map(|l| phi[l.generator] * l.exponent as i64).sum();
            *out.entry(e).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

/// `∂w/∂x_j`, determined by `∂(uv) = ∂u + u·∂v`, `∂x_j = 1`, `∂x_j⁻¹ = −x_j⁻¹`.
pub fn fox_derivative(w: &Word, j: usize) -> FoxElement {
    let mut out = FoxElement::zero();
    let mut prefix: Vec<super::word::Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l.generator == j {
            if l.exponent > 0 {
                out.add_term(Word::new(prefix.iter().copied()), 1);
            } else {
                out.add_term(Word::new(prefix.iter().copied().chain([l])), -1);
            }
        }
        prefix.push(l);
    }
    out
}
