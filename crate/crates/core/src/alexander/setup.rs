use serde::{Deserialize, Serialize};

use crate::groups::Hom;
use crate::laurent::{CoeffRing, Coefficient, LaurentPoly, PolyMatrix};
use crate::words::{fox_derivative, phi_of_word, FoxElement, PhiClass, Presentation, Word};
use crate::{Error, Result};

/// Topological data the group presentation does not carry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldMeta {
    /// `b₃(N)`: 1 for closed manifolds, 0 with nonempty boundary.
    pub b3: u8,
    pub closed: bool,
    /// A known Thurston norm `‖φ‖_T`.
    pub norm_hint: Option<u64>,
    pub label: String,
}

impl ManifoldMeta {
    pub fn new(b3: u8, closed: bool, norm_hint: Option<u64>, label: impl Into<String>) -> Result<Self> {
        if b3 > 1 || closed != (b3 == 1) {
            return Err(Error::InvalidInput(format!("b3 = {b3} is inconsistent with closed = {closed}")));
        }
        Ok(Self { b3, closed, norm_hint, label: label.into() })
    }

    /// Exterior of a knot in `S³`; boundary is a torus.
    pub fn knot_exterior(label: impl Into<String>) -> Self {
        Self { b3: 0, closed: false, norm_hint: None, label: label.into() }
    }

    /// Mapping torus of a bounded surface with free fundamental group.
    pub fn free_mapping_torus(label: impl Into<String>) -> Self {
        Self { b3: 0, closed: false, norm_hint: None, label: label.into() }
    }

    pub fn with_norm(mut self, norm: u64) -> Self {
        self.norm_hint = Some(norm);
        self
    }
}

/// A triple `(π, φ, α)` together with the manifold data.
#[derive(Clone, Debug)]
pub struct TwistedSetup<'a> {
    pub pres: &'a Presentation,
    pub phi: &'a PhiClass,
    pub alpha: Hom,
    pub meta: &'a ManifoldMeta,
}

impl<'a> TwistedSetup<'a> {
    /// Validates that `φ` vanishes on the relators and that `α` respects them.
    pub fn new(pres: &'a Presentation, phi: &'a PhiClass, alpha: Hom, meta: &'a ManifoldMeta) -> Result<Self> {
        phi.validate(pres)?;
        if alpha.images().len() != pres.num_generators() {
            return Err(Error::InvalidInput("hom and presentation disagree on the generator count".into()));
        }
        if let Some(i) = pres.relators().iter().position(|r| alpha.evaluate(r) != 0) {
            return Err(Error::InvalidInput(format!("relator {i} is not in the kernel of the hom")));
        }
        Ok(Self { pres, phi, alpha, meta })
    }

    pub fn group_order(&self) -> usize {
        self.alpha.target().order()
    }

    /// Index `[G : im α]`.
    pub fn image_index(&self) -> usize {
        self.group_order() / self.alpha.image().len()
    }

    /// Smallest generator with `φ ≠ 0`.
    pub fn pivot(&self) -> Result<usize> {
        self.phi
            .values()
            .iter()
            .position(|&v| v != 0)
            .ok_or_else(|| Error::Precondition("phi must be nontrivial".into()))
    }

    /// `t^{φ(g)}` times the matrix of left multiplication by `α(g)` on `ℤ[G]`:
    /// column `h` has its single entry in row `α(g)·h`.
    pub fn tensor_block<C: Coefficient>(&self, ring: &C::Ring, g: &Word) -> PolyMatrix<C> {
        let n = self.group_order();
        let a = self.alpha.evaluate(g);
        let e = phi_of_word(self.phi, g);
        let mut m = PolyMatrix::zeros(ring, n, n);
        let group = self.alpha.target();
        for h in 0..n {
            m[(group.mul(a, h), h)] = LaurentPoly::t_power(ring, e);
        }
        m
    }

    fn add_fox_block<C: Coefficient>(
        &self,
        ring: &C::Ring,
        m: &mut PolyMatrix<C>,
        d: &FoxElement,
        row0: usize,
        col0: usize,
    ) {
        let group = self.alpha.target();
        let one = LaurentPoly::one(ring);
        for (w, c) in d.terms() {
            let a = self.alpha.evaluate(w);
            let e = phi_of_word(self.phi, w);
            let c = ring.int(c);
            for h in 0..group.order() {
                m[(row0 + group.mul(a, h), col0 + h)].add_scaled_shifted(&one, &c, e);
            }
        }
    }

    /// The boundary `∂₂` in row-vector form: the `(#relators·|G|) × (#gens·|G|)`
    /// matrix whose block `(i, j)` is the image of `∂r_i/∂x_j`.
    pub fn fox_matrix<C: Coefficient>(&self, ring: &C::Ring) -> PolyMatrix<C> {
        let n = self.group_order();
        let k = self.pres.num_generators();
        let rels = self.pres.relators();
        let mut m = PolyMatrix::zeros(ring, rels.len() * n, k * n);
        for (i, r) in rels.iter().enumerate() {
            for j in 0..k {
                let d = fox_derivative(r, j);
                self.add_fox_block(ring, &mut m, &d, i * n, j * n);
            }
        }
        m
    }

    /// The boundary `∂₁` in row-vector form: the column of blocks
    /// `tensor_block(x_j) − I`.
    pub fn boundary_one<C: Coefficient>(&self, ring: &C::Ring) -> PolyMatrix<C> {
        let n = self.group_order();
        let k = self.pres.num_generators();
        let mut m = PolyMatrix::zeros(ring, k * n, n);
        for j in 0..k {
            let block = self.tensor_block::<C>(ring, &Word::gen(j));
            for r in 0..n {
                for c in 0..n {
                    let mut e = block[(r, c)].clone();
                    if r == c {
                        e = &e - &LaurentPoly::one(ring);
                    }
                    m[(j * n + r, c)] = e;
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group_by_name;
    use crate::laurent::{Integers, ZMatrix, ZPoly};

    fn trefoil() -> (Presentation, PhiClass) {
        Presentation::parse("gens: 2\nnames: xy\nrel: xyxYXY\n").unwrap()
    }

    #[test]
    fn trivial_group_blocks() {
        let (p, phi) = trefoil();
        let meta = ManifoldMeta::knot_exterior("3_1");
        let s = TwistedSetup::new(&p, &phi, Hom::trivial(&p), &meta).unwrap();
        let id: ZMatrix = s.tensor_block(&Integers, &Word::empty());
        assert_eq!(id, ZMatrix::identity(&Integers, 1));
        let f: ZMatrix = s.fox_matrix(&Integers);
        assert_eq!((f.rows(), f.cols()), (1, 2));
        assert_eq!(f[(0, 0)], ZPoly::from_i64s(&Integers, 0, &[1, -1, 1]));
    }

    #[test]
    fn cyclic_block_and_chain_identity() {
        let (p, phi) = trefoil();
        let meta = ManifoldMeta::knot_exterior("3_1");
        let z2 = group_by_name("Z2").unwrap();
        let s = TwistedSetup::new(&p, &phi, Hom::new(&p, z2, vec![1, 1]).unwrap(), &meta).unwrap();
        let b: ZMatrix = s.tensor_block(&Integers, &Word::gen(0));
        let t = ZPoly::t_power(&Integers, 1);
        let z = ZPoly::zero(&Integers);
        assert_eq!(b, ZMatrix::from_rows(&Integers, vec![vec![z.clone(), t.clone()], vec![t, z]]).unwrap());
        let f: ZMatrix = s.fox_matrix(&Integers);
        let d1: ZMatrix = s.boundary_one(&Integers);
        assert!(f.mul(&d1).unwrap().is_zero());
    }

    #[test]
    fn torsion_relator_geometric_sum() {
        let p = Presentation::new(1, vec![Word::power_of(0, 3)], "").unwrap();
        let phi = PhiClass::constant_one(1);
        let meta = ManifoldMeta::knot_exterior("");
        let s = TwistedSetup { pres: &p, phi: &phi, alpha: Hom::trivial(&p), meta: &meta };
        let f: ZMatrix = s.fox_matrix(&Integers);
        assert_eq!(f[(0, 0)], ZPoly::from_i64s(&Integers, 0, &[1, 1, 1]));
    }

    #[test]
    fn meta_validation() {
        assert!(ManifoldMeta::new(1, false, None, "").is_err());
        assert!(ManifoldMeta::new(0, false, Some(1), "").is_ok());
    }
}
