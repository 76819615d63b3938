use std::collections::HashSet;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::group::FiniteGroup;
use crate::words::{PhiClass, Presentation, Word};
use crate::{Error, Result};

/// A homomorphism `α: π → G`, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
    surjective: bool,
}

impl Hom {
    /// Checks that every relator maps to the identity.
    pub fn new(pres: &Presentation, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.len() != pres.num_generators() || images.iter().any(|&a| a >= target.order()) {
            return Err(Error::InvalidInput(format!(
                "{} images for {} generators into {}",
                images.len(),
                pres.num_generators(),
                target.name()
            )));
        }
        if let Some(i) = pres.relators().iter().position(|r| evaluate(&target, &images, r) != 0) {
            return Err(Error::InvalidInput(format!("relator {i} does not map to the identity in {}", target.name())));
        }
        Ok(Self::unchecked(target, images))
    }

    fn unchecked(target: Arc<FiniteGroup>, images: Vec<usize>) -> Self {
        let surjective = target.generated_subgroup(&images).len() == target.order();
        Self { target, images, surjective }
    }

    /// The map to the trivial group.
    pub fn trivial(pres: &Presentation) -> Self {
        let target = Arc::new(FiniteGroup::cyclic(1).expect("trivial group"));
        Self::unchecked(target, vec![0; pres.num_generators()])
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn evaluate(&self, w: &Word) -> usize {
        evaluate(&self.target, &self.images, w)
    }

    /// Sorted element set of `im α`.
    pub fn image(&self) -> Vec<usize> {
        self.target.generated_subgroup(&self.images)
    }

    /// `g α g⁻¹`.
    pub fn conjugated(&self, g: usize) -> Self {
        let images = self.images.iter().map(|&a| self.target.conjugate(g, a)).collect();
        Self { target: self.target.clone(), images, surjective: self.surjective }
    }

    /// Image names, e.g. `["(1 2)", "(2 3)"]`.
    pub fn image_names(&self) -> Vec<String> {
        self.images.iter().map(|&a| self.target.element_name(a).to_string()).collect()
    }
}

impl Serialize for Hom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct HomJson<'a> {
            group: &'a str,
            images: Vec<String>,
        }
        HomJson { group: self.target.name(), images: self.image_names() }.serialize(s)
    }
}

fn evaluate(g: &FiniteGroup, images: &[usize], w: &Word) -> usize {
    w.letters().iter().fold(0, |acc, l| {
        let a = images[l.generator];
        g.mul(acc, if l.exponent > 0 { a } else { g.inv(a) })
    })
}

/// Relators bucketed by the largest generator they use, so each is checked as
/// soon as its generators are assigned.
fn relator_schedule(pres: &Presentation) -> Vec<Vec<&Word>> {
    let mut schedule = vec![Vec::new(); pres.num_generators()];
    for r in pres.relators() {
        if let Some(m) = r.max_generator() {
            schedule[m].push(r);
        }
    }
    schedule
}

fn backtrack(
    g: &FiniteGroup,
    schedule: &[Vec<&Word>],
    first_choices: &[usize],
    tuple: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let depth = tuple.len();
    if depth == schedule.len() {
        visit(tuple);
        return;
    }
    let all: Vec<usize>;
    let choices = if depth == 0 {
        first_choices
    } else {
        all = (0..g.order()).collect();
        &all
    };
    for &a in choices {
        tuple.push(a);
        if schedule[depth].iter().all(|r| evaluate(g, tuple, r) == 0) {
            backtrack(g, schedule, first_choices, tuple, visit);
        }
        tuple.pop();
    }
}

fn is_conjugacy_minimal(g: &FiniteGroup, tuple: &[usize]) -> bool {
    (1..g.order()).all(|c| {
        let conj = tuple.iter().map(|&a| g.conjugate(c, a));
        conj.cmp(tuple.iter().copied()) != std::cmp::Ordering::Less
    })
}

/// Every homomorphism `π → G` without deduplication, in lexicographic order of
/// the image tuple.
pub fn enumerate_homs_raw(pres: &Presentation, target: &Arc<FiniteGroup>, surjective_only: bool) -> Vec<Hom> {
    let schedule = relator_schedule(pres);
    let first: Vec<usize> = (0..target.order()).collect();
    let mut out = Vec::new();
    backtrack(target, &schedule, &first, &mut Vec::new(), &mut |t| {
        let h = Hom::unchecked(target.clone(), t.to_vec());
        if h.surjective || !surjective_only {
            out.push(h);
        }
    });
    out
}

/// Homomorphisms `π → G` up to post-composition with inner automorphisms of
/// `G`. Each class is represented by its lexicographically smallest conjugate
/// tuple; the list is in lexicographic order.
pub fn enumerate_homs(pres: &Presentation, target: &Arc<FiniteGroup>, surjective_only: bool) -> Vec<Hom> {
    let schedule = relator_schedule(pres);
    let first: Vec<usize> = (0..target.order()).filter(|&a| target.class_minimum(a) == a).collect();
    let mut out = Vec::new();
    backtrack(target, &schedule, &first, &mut Vec::new(), &mut |t| {
        if !is_conjugacy_minimal(target, t) {
            return;
        }
        let h = Hom::unchecked(target.clone(), t.to_vec());
        if h.surjective || !surjective_only {
            out.push(h);
        }
    });
    out
}

/// Surjections `π → G` up to post-composition with all automorphisms of `G`,
/// that is one per normal subgroup `ker α` with quotient `G`. Each class keeps
/// its first representative from [`enumerate_homs`].
pub fn surjections_up_to_automorphism(pres: &Presentation, target: &Arc<FiniteGroup>) -> Vec<Hom> {
    let mut seen = HashSet::new();
    enumerate_homs(pres, target, true)
        .into_iter()
        .filter(|h| seen.insert(target.cayley_key(h.images())))
        .collect()
}

/// `div φ_α`: the positive generator of `φ(ker α) ⊆ ℤ`.
///
/// Breadth-first search over `im α` along `g → g·α(x_j)` assigns each element a
/// potential; `φ(ker α)` is generated by the defects of the remaining edges.
pub fn div_phi_alpha(pres: &Presentation, phi: &PhiClass, alpha: &Hom) -> Result<u64> {
    phi.validate(pres)?;
    let g = alpha.target();
    let mut potential: Vec<Option<i64>> = vec![None; g.order()];
    potential[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0]);
    let mut div: i64 = 0;
    while let Some(x) = queue.pop_front() {
        let px = potential[x].unwrap();
        for (j, &a) in alpha.images().iter().enumerate() {
            let y = g.mul(x, a);
            let py = px + phi.values()[j];
            match potential[y] {
                None => {
                    potential[y] = Some(py);
                    queue.push_back(y);
                }
                Some(q) => div = div.gcd(&(py - q)),
            }
        }
    }
    if div == 0 {
        return Err(Error::Inconsistent(format!(
            "phi vanishes on the kernel of the map to {}",
            g.name()
        )));
    }
    Ok(div as u64)
}

/// Decomposition of `G` into double cosets `C g H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCosetDecomp {
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl DoubleCosetDecomp {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Representatives are the smallest element of each double coset.
pub fn double_cosets(g: &FiniteGroup, c: &[usize], h: &[usize]) -> Result<DoubleCosetDecomp> {
    for (name, s) in [("C", c), ("H", h)] {
        if !g.is_subgroup(s) {
            return Err(Error::NotSubgroup(format!("{name} is not a subgroup of {}", g.name())));
        }
    }
    let mut owner = vec![false; g.order()];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for x in 0..g.order() {
        if owner[x] {
            continue;
        }
        let mut size = 0;
        for &a in c {
            for &b in h {
                let y = g.mul(g.mul(a, x), b);
                if !owner[y] {
                    owner[y] = true;
                    size += 1;
                }
            }
        }
        representatives.push(x);
        sizes.push(size);
    }
    Ok(DoubleCosetDecomp { representatives, sizes })
}

/// Whether `im(β ∘ ι) = im β`, where `ι` sends the generators of `A` to the
/// given words in the generators of `B`.
pub fn image_equal(inclusion: &[Word], beta: &Hom) -> bool {
    let composed: Vec<usize> = inclusion.iter().map(|w| beta.evaluate(w)).collect();
    beta.target().generated_subgroup(&composed) == beta.image()
}
