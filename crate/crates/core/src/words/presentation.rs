use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::word::{default_names, Word};
use crate::{Error, Result};

/// Finite presentation `⟨x₀ … x_{k−1} | r₀, r₁, …⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    num_generators: usize,
    relators: Vec<Word>,
    label: String,
    names: Vec<char>,
}

impl Presentation {
    /// Relators are freely reduced; empty relators are dropped.
    pub fn new(num_generators: usize, relators: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        let names = default_names(num_generators).unwrap_or_default();
        Self::with_names(num_generators, relators, label, names)
    }

    pub fn with_names(
        num_generators: usize,
        relators: Vec<Word>,
        label: impl Into<String>,
        names: Vec<char>,
    ) -> Result<Self> {
        if num_generators == 0 {
            return Err(Error::InvalidInput("a presentation needs at least one generator".into()));
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= num_generators {
                    return Err(Error::InvalidInput(format!(
                        "relator {i} uses generator {g} but only {num_generators} exist"
                    )));
                }
            }
        }
        if !names.is_empty() {
            if names.len() != num_generators {
                return Err(Error::InvalidInput(format!(
                    "{} names given for {num_generators} generators",
                    names.len()
                )));
            }
            let mut sorted = names.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != names.len() || names.iter().any(|c| !c.is_ascii_lowercase()) {
                return Err(Error::InvalidInput("generator names must be distinct lowercase letters".into()));
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Self { num_generators, relators, label: label.into(), names })
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    /// Single-letter generator names; empty when there are more than 26 generators.
    pub fn names(&self) -> &[char] {
        &self.names
    }

    /// `#generators − #relators`.
    pub fn deficiency(&self) -> i64 {
        self.num_generators as i64 - self.relators.len() as i64
    }

    /// `⟨x | ⟩`: the group of `S¹×D²` and `S¹×S²`.
    pub fn is_infinite_cyclic_free(&self) -> bool {
        self.num_generators == 1 && self.relators.is_empty()
    }

    /// The unique primitive class (up to sign, first nonzero value positive)
    /// when the abelianization has free rank one.
    pub fn infer_phi(&self) -> Result<PhiClass> {
        let kernel = integer_kernel(&self.exponent_matrix(), self.num_generators);
        if kernel.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "first Betti number is {}, so phi must be given explicitly",
                kernel.len()
            )));
        }
        PhiClass::new(kernel.into_iter().next().unwrap())
    }

    fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums(self.num_generators)).collect()
    }

    /// Parse the text format:
    ///
    /// ```text
    /// # comment
    /// gens: 2
    /// names: xy          (optional; defaults to a, b, c, …)
    /// rel: xyxYXY
    /// phi: 1 1           (optional when b₁ = 1)
    /// label: trefoil     (optional)
    /// ```
    ///
    /// Returns the presentation and the class, inferred when `phi:` is absent.
    pub fn parse(text: &str) -> Result<(Self, PhiClass)> {
        let mut gens: Option<usize> = None;
        let mut names: Option<Vec<char>> = None;
        let mut rel_lines: Vec<(usize, usize, String)> = Vec::new();
        let mut phi: Option<(usize, Vec<i64>)> = None;
        let mut label = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some(colon) = line.find(':') else {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    message: "expected 'key: value'".into(),
                });
            };
            let key = line[..colon].trim();
            let value = &line[colon + 1..];
            let value_col = colon + 2 + (value.len() - value.trim_start().len());
            match key {
                "gens" => {
                    let k = value.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        column: value_col,
                        message: format!("bad generator count '{}'", value.trim()),
                    })?;
                    gens = Some(k);
                }
                "names" => {
                    names = Some(value.trim().chars().filter(|c| !c.is_whitespace()).collect());
                }
                "rel" => rel_lines.push((line_no, value_col, value.trim().to_string())),
                "phi" => {
                    let mut vals = Vec::new();
                    let mut col = value_col;
                    for tok in value.split_whitespace() {
                        let v = tok.parse::<i64>().map_err(|_| Error::Parse {
                            line: line_no,
                            column: col,
                            message: format!("bad phi value '{tok}'"),
                        })?;
                        vals.push(v);
                        col += tok.len() + 1;
                    }
                    phi = Some((line_no, vals));
                }
                "label" => label = value.trim().to_string(),
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        let k = gens.ok_or(Error::Parse { line: 1, column: 1, message: "missing 'gens:' line".into() })?;
        let names = match names {
            Some(n) => n,
            None => default_names(k)?,
        };
        if names.len() != k {
            return Err(Error::InvalidInput(format!("{} names given for {k} generators", names.len())));
        }
        let mut relators = Vec::new();
        for (line, col, text) in rel_lines {
            relators.push(Word::parse_at(&text, &names, line, col)?);
        }
        let pres = Self::with_names(k, relators, label, names)?;
        let phi = match phi {
            Some((line, vals)) => {
                if vals.len() != k {
                    return Err(Error::Parse {
                        line,
                        column: 1,
                        message: format!("phi has {} values for {k} generators", vals.len()),
                    });
                }
                let phi = PhiClass::new(vals)?;
                phi.validate(&pres)?;
                phi
            }
            None => pres.infer_phi()?,
        };
        Ok((pres, phi))
    }

    /// Text form accepted by [`Presentation::parse`].
    pub fn to_text(&self, phi: Option<&PhiClass>) -> Result<String> {
        let names = if self.names.is_empty() { default_names(self.num_generators)? } else { self.names.clone() };
        let mut out = String::new();
        if !self.label.is_empty() {
            writeln!(out, "label: {}", self.label).unwrap();
        }
        writeln!(out, "gens: {}", self.num_generators).unwrap();
        writeln!(out, "names: {}", names.iter().collect::<String>()).unwrap();
        for r in &self.relators {
            writeln!(out, "rel: {}", r.to_text(&names)).unwrap();
        }
        if let Some(phi) = phi {
            let vals: Vec<String> = phi.values.iter().map(i64::to_string).collect();
            writeln!(out, "phi: {}", vals.join(" ")).unwrap();
        }
        Ok(out)
    }
}

/// A class `φ ∈ Hom(π, ℤ)` given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiClass {
    values: Vec<i64>,
    primitive: bool,
}

impl PhiClass {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.iter().all(|&v| v == 0) {
            return Err(Error::Precondition("phi must be nontrivial".into()));
        }
        let g = values.iter().fold(0i64, |acc, &v| acc.gcd(&v));
        Ok(Self { primitive: g == 1, values })
    }

    /// `φ ≡ 1` on `k` generators.
    pub fn constant_one(k: usize) -> Self {
        Self { values: vec![1; k], primitive: true }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Checks the generator count and that every relator maps to zero.
    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        if self.values.len() != pres.num_generators() {
            return Err(Error::InvalidInput(format!(
                "phi has {} values for {} generators",
                self.values.len(),
                pres.num_generators()
            )));
        }
        for (i, r) in pres.relators().iter().enumerate() {
            let v = phi_of_word(self, r);
            if v != 0 {
                return Err(Error::InvalidInput(format!("phi does not vanish on relator {i} (value {v})")));
            }
        }
        Ok(())
    }
}

/// `φ(w)`: signed sum of the generator values along `w`.
pub fn phi_of_word(phi: &PhiClass, w: &Word) -> i64 {
    w.letters().iter().map(|l| phi.values[l.generator] * l.exponent as i64).sum()
}

/// Primitive integer basis of `{v : M v = 0}` when the kernel has rank ≤ 1,
/// or a list with the kernel rank's length otherwise (vectors unspecified).
fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let pivot_row = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                *x = &*x * &a - y * &b;
            }
            let g = m[i].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return vec![Vec::new(); free.len()];
    }
    let f = free[0];
    let mut scale = BigInt::one();
    for (i, &c) in pivots.iter().enumerate() {
        scale = scale.lcm(&m[i][c]);
    }
    let mut v = vec![BigInt::zero(); cols];
    v[f] = scale.clone();
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = -(&m[i][f] * &scale) / &m[i][c];
    }
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let first_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let out = v
        .into_iter()
        .map(|x| {
            let y = x / &g;
            let y = if first_negative { -y } else { y };
            y.to_i64().expect("phi value fits in i64")
        })
        .collect();
    vec![out]
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "label: trefoil\ngens: 2\nnames: xy\nrel: xyxYXY\nphi: 1 1\n";

    #[test]
    fn parse_and_print_round_trip() {
        let (p, phi) = Presentation::parse(TREFOIL).unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.deficiency(), 1);
        assert_eq!(p.label(), "trefoil");
        assert_eq!(phi.values(), &[1, 1]);
        let text = p.to_text(Some(&phi)).unwrap();
        let (p2, phi2) = Presentation::parse(&text).unwrap();
        assert_eq!(p, p2);
        assert_eq!(phi, phi2);
    }

    #[test]
    fn phi_inferred_from_abelianization() {
        let (_, phi) = Presentation::parse("gens: 2\nnames: xy\nrel: xyxYXY\n").unwrap();
        assert_eq!(phi.values(), &[1, 1]);
        let (_, phi) = Presentation::parse("gens: 3\nnames: xyt\nrel: txTY\nrel: tyTYx\n").unwrap();
        assert_eq!(phi.values(), &[0, 0, 1]);
        assert!(phi.is_primitive());
        assert!(Presentation::parse("gens: 2\n").is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Presentation::parse("gens: 2\nrel: abq\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, column: 8, message: "unknown generator 'q'".into() });
        let err = Presentation::parse("gens: x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 7, .. }));
        assert!(Presentation::parse("gens: 2\nrel: ab\nphi: 1 1\n").is_err());
    }

    #[test]
    fn phi_values() {
        let names = ['x', 'y'];
        let phi = PhiClass::constant_one(2);
        assert_eq!(phi_of_word(&phi, &Word::parse("xyX", &names).unwrap()), 1);
        assert_eq!(phi_of_word(&phi, &Word::empty()), 0);
        let phi = PhiClass::new(vec![2, 4]).unwrap();
        assert!(!phi.is_primitive());
        assert!(PhiClass::new(vec![0, 0]).is_err());
    }

    #[test]
    fn empty_relators_dropped_and_indices_checked() {
        let p = Presentation::new(1, vec![Word::empty()], "").unwrap();
        assert!(p.relators().is_empty());
        assert!(p.is_infinite_cyclic_free());
        assert!(Presentation::new(1, vec![Word::gen(3)], "").is_err());
    }
}
