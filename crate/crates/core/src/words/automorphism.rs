//! Automorphisms of free groups and their mapping tori.

use rand::Rng;

use super::presentation::{PhiClass, Presentation};
use super::word::{Letter, Word};
use crate::{Error, Result};

/// An automorphism `h` of the free group `F(x₀ … x_{k−1})`, stored with a
/// verified inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

/// Elementary Nielsen automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NielsenMove {
    /// `x_i ↦ x_i x_j^ε`
    RightMultiply { i: usize, j: usize, inverse: bool },
    /// `x_i ↦ x_j^ε x_i`
    LeftMultiply { i: usize, j: usize, inverse: bool },
    /// `x_i ↦ x_i⁻¹`
    Invert { i: usize },
    /// `x_i ↔ x_j`
    Swap { i: usize, j: usize },
}

impl NielsenMove {
    fn apply_to(self, tuple: &mut [Word]) {
        match self {
            NielsenMove::RightMultiply { i, j, inverse } => {
                let f = if inverse { tuple[j].inverse() } else { tuple[j].clone() };
                tuple[i] = tuple[i].concat(&f);
            }
            NielsenMove::LeftMultiply { i, j, inverse } => {
                let f = if inverse { tuple[j].inverse() } else { tuple[j].clone() };
                tuple[i] = f.concat(&tuple[i]);
            }
            NielsenMove::Invert { i } => tuple[i] = tuple[i].inverse(),
            NielsenMove::Swap { i, j } => tuple.swap(i, j),
        }
    }

    fn inverse(self) -> Self {
        match self {
            NielsenMove::RightMultiply { i, j, inverse } => NielsenMove::RightMultiply { i, j, inverse: !inverse },
            NielsenMove::LeftMultiply { i, j, inverse } => NielsenMove::LeftMultiply { i, j, inverse: !inverse },
            m => m,
        }
    }

    fn is_valid(self, rank: usize) -> bool {
        match self {
            NielsenMove::RightMultiply { i, j, .. } | NielsenMove::LeftMultiply { i, j, .. } => {
                i < rank && j < rank && i != j
            }
            NielsenMove::Invert { i } => i < rank,
            NielsenMove::Swap { i, j } => i < rank && j < rank,
        }
    }
}

fn identity_images(rank: usize) -> Vec<Word> {
    (0..rank).map(Word::gen).collect()
}

fn check_images(rank: usize, images: &[Word], what: &str) -> Result<()> {
    if images.len() != rank {
        return Err(Error::InvalidInput(format!("{} {what} given for rank {rank}", images.len())));
    }
    if images.iter().any(|w| w.max_generator().is_some_and(|g| g >= rank)) {
        return Err(Error::InvalidInput(format!("{what} use generators beyond rank {rank}")));
    }
    Ok(())
}

impl FreeAutomorphism {
    /// Accepts `h` together with a claimed inverse; both compositions must be
    /// the identity on generators.
    pub fn new(rank: usize, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        check_images(rank, &images, "images")?;
        check_images(rank, &inverse_images, "inverse images")?;
        let id = identity_images(rank);
        let left: Vec<Word> = inverse_images.iter().map(|w| w.substitute(&images)).collect();
        let right: Vec<Word> = images.iter().map(|w| w.substitute(&inverse_images)).collect();
        if left != id || right != id {
            return Err(Error::NotInvertible("the supplied inverse does not compose to the identity".into()));
        }
        Ok(Self { rank, images, inverse_images })
    }

    /// Finds the inverse by length-reducing Nielsen moves on the image tuple.
    /// Fails if the reduction stalls before reaching a signed permutation of
    /// the generators, which is always the case for non-surjective maps.
    pub fn from_images(rank: usize, images: Vec<Word>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        check_images(rank, &images, "images")?;
        // invariant: current[i] = h(preimage[i])
        let mut current = images.clone();
        let mut preimage = identity_images(rank);
        let total = |t: &[Word]| t.iter().map(Word::len).sum::<usize>();
        loop {
            let len = total(&current);
            let mut best: Option<(usize, NielsenMove)> = None;
            for i in 0..rank {
                for j in 0..rank {
                    if i == j {
                        continue;
                    }
                    for inverse in [false, true] {
                        for mv in [
                            NielsenMove::RightMultiply { i, j, inverse },
                            NielsenMove::LeftMultiply { i, j, inverse },
                        ] {
                            let mut trial = current.clone();
                            mv.apply_to(&mut trial);
                            let l = total(&trial);
                            if l < best.map_or(len, |b| b.0) {
                                best = Some((l, mv));
                            }
                        }
                    }
                }
            }
            match best {
                Some((_, mv)) => {
                    mv.apply_to(&mut current);
                    mv.apply_to(&mut preimage);
                }
                None => break,
            }
        }
        let mut inverse_images = vec![Word::empty(); rank];
        let mut hit = vec![false; rank];
        for (u, v) in current.iter().zip(&preimage) {
            let [l] = u.letters() else {
                return Err(Error::NotInvertible(format!("Nielsen reduction stalled at image {u}")));
            };
            if std::mem::replace(&mut hit[l.generator], true) {
                return Err(Error::NotInvertible(format!("images do not generate x{}", l.generator)));
            }
            inverse_images[l.generator] = if l.exponent > 0 { v.clone() } else { v.inverse() };
        }
        Self::new(rank, images, inverse_images)
    }

    /// `h = e₁ ∘ e₂ ∘ … ∘ e_m` built from elementary moves, inverse tracked alongside.
    pub fn from_nielsen_moves(rank: usize, moves: &[NielsenMove]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        let mut h = Self { rank, images: identity_images(rank), inverse_images: identity_images(rank) };
        for &mv in moves {
            if !mv.is_valid(rank) {
                return Err(Error::InvalidInput(format!("{mv:?} is not a move in rank {rank}")));
            }
            h.compose_move(mv);
        }
        Ok(h)
    }

    // h ← h ∘ e, h⁻¹ ← e⁻¹ ∘ h⁻¹
    fn compose_move(&mut self, mv: NielsenMove) {
        mv.apply_to(&mut self.images);
        let mut e_inv = identity_images(self.rank);
        mv.inverse().apply_to(&mut e_inv);
        for w in &mut self.inverse_images {
            *w = w.substitute(&e_inv);
        }
    }

    /// Seeded random automorphism: a random walk of Nielsen moves keeping every
    /// image at most `max_len` letters long. The walk restarts if it ends at
    /// the identity and a nontrivial move exists.
    pub fn random<R: Rng + ?Sized>(rank: usize, max_len: usize, steps: usize, rng: &mut R) -> Result<Self> {
        if rank == 0 || max_len == 0 {
            return Err(Error::InvalidInput("rank and max_len must be positive".into()));
        }
        loop {
            let mut h = Self::from_nielsen_moves(rank, &[])?;
            for _ in 0..steps {
                let i = rng.gen_range(0..rank);
                let mv = if rank == 1 {
                    if rng.gen_bool(0.5) {
                        continue;
                    }
                    NielsenMove::Invert { i }
                } else {
                    let mut j = rng.gen_range(0..rank - 1);
                    if j >= i {
                        j += 1;
                    }
                    let inverse = rng.gen_bool(0.5);
                    match rng.gen_range(0..8) {
                        0..=2 => NielsenMove::RightMultiply { i, j, inverse },
                        3..=5 => NielsenMove::LeftMultiply { i, j, inverse },
                        6 => NielsenMove::Invert { i },
                        _ => NielsenMove::Swap { i, j },
                    }
                };
                let mut trial = h.images.clone();
                mv.apply_to(&mut trial);
                if trial.iter().all(|w| w.len() <= max_len) {
                    h.compose_move(mv);
                }
            }
            if !h.is_identity() || steps == 0 {
                return Ok(h);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn is_identity(&self) -> bool {
        self.images == identity_images(self.rank)
    }

    pub fn inverse(&self) -> Self {
        Self { rank: self.rank, images: self.inverse_images.clone(), inverse_images: self.images.clone() }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// Integer matrix of `h` on `H₁(F) = ℤ^k`; column `c` holds the exponent
    /// sums of `h(x_c)`.
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.exponent_sums(self.rank)).collect();
        (0..self.rank).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
    }
}

/// `⟨x₀ … x_{k−1}, t | t x_i t⁻¹ h(x_i)⁻¹⟩` with `φ(t) = 1`, `φ(x_i) = 0`.
/// The stable letter `t` is the last generator.
pub fn mapping_torus(h: &FreeAutomorphism) -> Result<(Presentation, PhiClass)> {
    let k = h.rank();
    let t = k;
    let relators = (0..k)
        .map(|i| {
            let mut letters = vec![Letter::gen(t), Letter::gen(i), Letter::inv(t)];
            letters.extend(h.images()[i].inverse().letters().iter().copied());
            Word::new(letters)
        })
        .collect();
    let names = if k < 20 {
        "abcdefghijklmnopqrs".chars().take(k).chain(['t']).collect()
    } else {
        Vec::new()
    };
    let pres = Presentation::with_names(k + 1, relators, "mapping torus", names)?;
    let mut values = vec![0; k + 1];
    values[t] = 1;
    Ok((pres, PhiClass::new(values)?))
}
