//! Oracles shared by the integration tests. They are written against plain
//! integer vectors and brute force, and use the engine only for inputs
//! (presentations, group tables) and for the value under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use fibercert::groups::FiniteGroup;
use fibercert::words::{FreeAutomorphism, PdCode, PhiClass, Presentation, Word};
use fibercert::{Fp, LaurentPoly, ZPoly};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Polynomial in `t` with ascending integer coefficients.
pub type IPoly = Vec<i64>;

pub fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

pub fn load_pd(name: &str) -> PdCode {
    let text = std::fs::read_to_string(data_path(&format!("knots/{name}.pd"))).unwrap();
    PdCode::from_json(&text).unwrap()
}

fn trim(mut p: IPoly) -> IPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn padd(a: &[i64], b: &[i64]) -> IPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

pub fn pneg(a: &[i64]) -> IPoly {
    a.iter().map(|x| -x).collect()
}

pub fn pmul(a: &[i64], b: &[i64]) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Strips powers of `t` and makes the top coefficient positive.
pub fn pnormalize(p: &[i64]) -> IPoly {
    let p = trim(p.to_vec());
    let Some(low) = p.iter().position(|&c| c != 0) else { return Vec::new() };
    let sign = if *p.last().unwrap() < 0 { -1 } else { 1 };
    p[low..].iter().map(|c| c * sign).collect()
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<IPoly>]) -> IPoly {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut acc = Vec::new();
    for j in 0..n {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<IPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, e)| e.clone()).collect()).collect();
        let term = pmul(&m[0][j], &cofactor_det(&minor));
        acc = if j % 2 == 0 { padd(&acc, &term) } else { padd(&acc, &pneg(&term)) };
    }
    acc
}

/// Ascending coefficients of a normalized engine polynomial over ℤ.
pub fn engine_coeffs(p: &ZPoly) -> IPoly {
    p.normalized().coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

/// `(lowest exponent, ascending coefficients)` of an engine polynomial.
pub fn engine_raw(p: &LaurentPoly<BigInt>) -> (i64, IPoly) {
    (p.low_exponent(), p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect())
}

pub fn fp_coeffs(p: &LaurentPoly<Fp>) -> Vec<u32> {
    p.normalized().coeffs().iter().map(|c| c.value()).collect()
}

/// Alexander polynomial from the classical Alexander matrix of a PD code: each
/// crossing contributes `1 − t` on the over arc and `t`, `−1` on the incoming
/// and outgoing under arcs (swapped at negative crossings); delete one row
/// and one column and take the determinant.
pub fn alexander_oracle(pd: &[[u32; 4]]) -> IPoly {
    let n = pd.len();
    if n == 0 {
        return pnormalize(&cofactor_det(&[]));
    }
    let edges = 2 * n as u32;
    let mut parent: Vec<u32> = (0..=edges).collect();
    fn root(parent: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        parent[x as usize] = r;
        r
    }
    for &[_, j, _, l] in pd {
        let (a, b) = (root(&mut parent, j), root(&mut parent, l));
        parent[a.max(b) as usize] = a.min(b);
    }
    let roots: BTreeSet<u32> = (1..=edges).map(|e| root(&mut parent, e)).collect();
    let arc = |parent: &mut Vec<u32>, e: u32| roots.iter().position(|&r| r == root(parent, e)).unwrap();
    let mut m = vec![vec![Vec::new(); roots.len()]; n];
    for (c, &[i, j, k, l]) in pd.iter().enumerate() {
        let (j, l) = (j as i64, l as i64);
        let positive = j - l == 1 || l - j > 1;
        let (over, incoming, outgoing) = (arc(&mut parent, j as u32), arc(&mut parent, i), arc(&mut parent, k));
        let (t_in, t_out) = if positive { (vec![0, 1], vec![-1]) } else { (vec![-1], vec![0, 1]) };
        m[c][over] = padd(&m[c][over], &[1, -1]);
        m[c][incoming] = padd(&m[c][incoming], &t_in);
        m[c][outgoing] = padd(&m[c][outgoing], &t_out);
    }
    let minor: Vec<Vec<IPoly>> = m[..n - 1].iter().map(|row| row[..roots.len() - 1].to_vec()).collect();
    pnormalize(&cofactor_det(&minor))
}

/// `det(t·I − A)`.
pub fn char_poly_oracle(a: &[Vec<i64>]) -> IPoly {
    let n = a.len();
    let m: Vec<Vec<IPoly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { trim(vec![-a[i][j], 1]) } else { trim(vec![-a[i][j]]) }).collect())
        .collect();
    cofactor_det(&m)
}

/// Abelianization of `h`, counted directly from the letters of its images:
/// column `c` holds the exponent sums of `h(x_c)`.
pub fn abelianization_oracle(h: &FreeAutomorphism) -> Vec<Vec<i64>> {
    let k = h.rank();
    let mut a = vec![vec![0; k]; k];
    for (c, w) in h.images().iter().enumerate() {
        for l in w.letters() {
            a[l.generator][c] += l.exponent as i64;
        }
    }
    a
}

/// Seeded random automorphisms cycling through ranks `1..=max_rank`.
pub fn random_automorphisms(seed: u64, count: usize, max_rank: usize, max_len: usize) -> Vec<FreeAutomorphism> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let rank = 1 + i % max_rank;
            FreeAutomorphism::random(rank, max_len, 4 * rank, &mut rng).unwrap()
        })
        .collect()
}

pub fn eval_word(g: &FiniteGroup, images: &[usize], w: &Word) -> usize {
    w.letters().iter().fold(g.identity(), |acc, l| {
        let x = images[l.generator];
        g.mul(acc, if l.exponent > 0 { x } else { g.inv(x) })
    })
}

/// Closure of `gens` under multiplication.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Every tuple in `G^k` satisfying the relators.
pub fn brute_force_homs(pres: &Presentation, g: &FiniteGroup) -> Vec<Vec<usize>> {
    let k = pres.num_generators();
    let n = g.order();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; k];
    loop {
        if pres.relators().iter().all(|r| eval_word(g, &tuple, r) == g.identity()) {
            out.push(tuple.clone());
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// Number of surjective tuples up to simultaneous conjugation.
pub fn brute_force_surjection_classes(pres: &Presentation, g: &FiniteGroup) -> usize {
    let mut classes = HashSet::new();
    for t in brute_force_homs(pres, g) {
        if closure(g, &t).len() != g.order() {
            continue;
        }
        let canonical = (0..g.order())
            .map(|c| t.iter().map(|&a| g.mul(g.mul(c, a), g.inv(c))).collect::<Vec<_>>())
            .min()
            .unwrap();
        classes.insert(canonical);
    }
    classes.len()
}

/// `div φ_α` as `N / #{z : (1, z) ∈ H}` where `H ⊆ im α × ℤ/N` is generated by
/// the pairs `(α(x_j), φ(x_j))` and `N = |G|`, a multiple of `div`.
pub fn div_oracle(g: &FiniteGroup, images: &[usize], phi: &PhiClass) -> u64 {
    let n = g.order() as i64;
    let gens: Vec<(usize, i64)> = images.iter().zip(phi.values()).map(|(&a, &v)| (a, v.rem_euclid(n))).collect();
    let mut seen = HashSet::from([(g.identity(), 0i64)]);
    let mut queue = VecDeque::from([(g.identity(), 0i64)]);
    while let Some((x, z)) = queue.pop_front() {
        for &(a, v) in &gens {
            let y = (g.mul(x, a), (z + v) % n);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let fiber = seen.iter().filter(|(x, _)| *x == g.identity()).count() as i64;
    (n / fiber) as u64
}

/// All subgroups, found by testing every subset for closure.
pub fn brute_force_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 12, "subset search is exponential");
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.contains(&g.identity()) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&g.mul(a, b)))))
        .collect()
}

/// The double cosets `C g H` as sorted element lists.
pub fn brute_force_double_cosets(g: &FiniteGroup, c: &[usize], h: &[usize]) -> BTreeSet<Vec<usize>> {
    (0..g.order())
        .map(|x| {
            let coset: BTreeSet<usize> = c.iter().flat_map(|&a| h.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(g.mul(a, x), b)).collect();
            coset.into_iter().collect()
        })
        .collect()
}
