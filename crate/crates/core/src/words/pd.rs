//! Planar-diagram codes and the Wirtinger presentation of a knot exterior.
//!
//! A crossing `[i, j, k, l]` lists the four edge labels counterclockwise,
//! starting from the incoming under-edge `i`; `k` is the outgoing under-edge
//! and `j`, `l` belong to the over-strand. Edges are labelled `1..=2n`
//! consecutively along the knot's orientation, so the over-strand runs from
//! `l` to `j` exactly when `j = l + 1` (cyclically). That crossing is positive;
//! the opposite direction is negative. This is the convention of the Rolfsen
//! table PD codes in common knot software.

use serde::{Deserialize, Serialize};

use super::presentation::{PhiClass, Presentation};
use super::word::{Letter, Word};
use crate::{Error, Result};

/// A PD code of a classical knot diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
}

impl PdCode {
    /// Validates that the labels are exactly `1..=2n`, each appearing twice.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self> {
        let n_edges = 2 * crossings.len();
        let mut seen = vec![0usize; n_edges + 1];
        for (ci, c) in crossings.iter().enumerate() {
            for &label in c {
                if label == 0 || label as usize > n_edges {
                    return Err(Error::MalformedPd(format!(
                        "crossing {ci} uses arc label {label}; labels must lie in 1..={n_edges}"
                    )));
                }
                seen[label as usize] += 1;
            }
        }
        let bad = |over: bool| seen.iter().enumerate().skip(1).find(|&(_, &c)| if over { c > 2 } else { c < 2 });
        if let Some((label, &count)) = bad(true).or_else(|| bad(false)) {
            let plural = if count == 1 { "" } else { "s" };
            return Err(Error::MalformedPd(format!("arc {label} appears {count} time{plural}, expected exactly 2")));
        }
        Ok(Self { crossings })
    }

    /// JSON array of 4-tuples, e.g. `[[1,5,2,4],[3,1,4,6],[5,3,6,2]]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let crossings: Vec<[u32; 4]> =
            serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: format!("PD code must be a JSON array of 4-tuples: {e}"),
            })?;
        Self::new(crossings)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    /// Number of edge labels (`2n`).
    pub fn num_arcs(&self) -> usize {
        2 * self.crossings.len()
    }

    fn successor(&self, label: u32) -> u32 {
        if label as usize == self.num_arcs() {
            1
        } else {
            label + 1
        }
    }

    fn is_positive(&self, c: &[u32; 4]) -> bool {
        let [i, j, k, l] = *c;
        i == j || k == l || j == self.successor(l)
    }

    /// Mirror image: every crossing changes over/under.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| {
                // the former over-strand becomes the under-strand; list it from
                // its incoming edge
                if b == self.successor(d) {
                    [d, a, b, c]
                } else {
                    [b, c, d, a]
                }
            })
            .collect();
        Self { crossings }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Wirtinger presentation of the knot exterior: one generator per over-arc,
/// one relator `x_over^ε x_in x_over^−ε x_out⁻¹` per crossing (ε the crossing
/// sign) with the last crossing's relator dropped, and `φ ≡ 1`.
pub fn wirtinger(pd: &PdCode) -> Result<(Presentation, PhiClass)> {
    if pd.crossings.is_empty() {
        let pres = Presentation::new(1, Vec::new(), "unknot")?;
        return Ok((pres, PhiClass::constant_one(1)));
    }
    let n_edges = pd.num_arcs();
    let mut uf = UnionFind((0..=n_edges).collect());
    for &[_, j, _, l] in &pd.crossings {
        uf.union(j as usize, l as usize);
    }
    // arcs numbered by their smallest edge label
    let mut arc_of_root = vec![usize::MAX; n_edges + 1];
    let mut arc_of_edge = vec![0usize; n_edges + 1];
    let mut num_arcs = 0;
    for (e, arc) in arc_of_edge.iter_mut().enumerate().skip(1) {
        let r = uf.find(e);
        if arc_of_root[r] == usize::MAX {
            arc_of_root[r] = num_arcs;
            num_arcs += 1;
        }
        *arc = arc_of_root[r];
    }
    let mut relators = Vec::with_capacity(pd.crossings.len());
    for c in &pd.crossings[..pd.crossings.len() - 1] {
        let [i, j, k, _] = *c;
        let under_in = arc_of_edge[i as usize];
        let under_out = arc_of_edge[k as usize];
        let over = arc_of_edge[j as usize];
        let (pre, post) = if pd.is_positive(c) {
            (Letter::gen(over), Letter::inv(over))
        } else {
            (Letter::inv(over), Letter::gen(over))
        };
        relators.push(Word::new([pre, Letter::gen(under_in), post, Letter::inv(under_out)]));
    }
    let pres = Presentation::new(num_arcs, relators, "")?;
    Ok((pres, PhiClass::constant_one(num_arcs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL: &str = "[[1,5,2,4],[3,1,4,6],[5,3,6,2]]";
    const FIGURE_EIGHT: &str = "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]";

    #[test]
    fn trefoil_wirtinger_shape() {
        let (p, phi) = wirtinger(&PdCode::from_json(TREFOIL).unwrap()).unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.deficiency(), 1);
        assert_eq!(phi.values(), &[1, 1, 1]);
        assert!(phi.is_primitive());
        for r in p.relators() {
            assert_eq!(r.len(), 4);
            let l = r.letters();
            assert_eq!(l[0].generator, l[2].generator);
            assert_eq!(l[0].exponent, -l[2].exponent);
            assert_eq!((l[1].exponent, l[3].exponent), (1, -1));
        }
        phi.validate(&p).unwrap();
    }

    #[test]
    fn figure_eight_wirtinger_shape() {
        let (p, phi) = wirtinger(&PdCode::from_json(FIGURE_EIGHT).unwrap()).unwrap();
        assert_eq!(p.num_generators(), 4);
        assert_eq!(p.relators().len(), 3);
        phi.validate(&p).unwrap();
    }

    #[test]
    fn zero_crossing_unknot() {
        let (p, phi) = wirtinger(&PdCode::from_json("[]").unwrap()).unwrap();
        assert!(p.is_infinite_cyclic_free());
        assert_eq!(phi.values(), &[1]);
    }

    #[test]
    fn malformed_codes_name_the_arc() {
        let err = PdCode::from_json("[[1,5,2,4],[3,1,4,6],[5,3,6,5]]").unwrap_err();
        assert_eq!(err, Error::MalformedPd("arc 5 appears 3 times, expected exactly 2".into()));
        let err = PdCode::from_json("[[1,5,2,4],[3,1,4,6],[5,3,6,9]]").unwrap_err();
        assert!(matches!(err, Error::MalformedPd(m) if m.contains("label 9")));
        assert!(matches!(PdCode::from_json("[[1,2,3]]"), Err(Error::Parse { .. })));
    }

    #[test]
    fn mirror_flips_every_sign() {
        let pd = PdCode::from_json(TREFOIL).unwrap();
        let m = pd.mirror();
        PdCode::new(m.crossings().to_vec()).unwrap();
        for (a, b) in pd.crossings().iter().zip(m.crossings()) {
            assert_ne!(pd.is_positive(a), m.is_positive(b));
        }
        assert_eq!(m.mirror(), pd);
    }
}
