use std::sync::Arc;

use super::group::FiniteGroup;
use crate::laurent::is_prime;
use crate::{Error, Result};

/// Largest group order the catalog will build.
pub const MAX_CATALOG_ORDER: usize = 64;

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let transposition: Vec<usize> = (0..n).map(|x| if x < 2 { 1 - x } else { x }).collect();
    let cycle: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    FiniteGroup::from_permutations(format!("S{n}"), n, &[transposition, cycle])
}

fn alternating_four() -> Result<FiniteGroup> {
    FiniteGroup::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// Symmetries of the regular `n`-gon; `D2` is the Klein four-group.
fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 2 {
        return FiniteGroup::from_permutations("D2", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]);
    }
    let rotation: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
    FiniteGroup::from_permutations(format!("D{n}"), n, &[rotation, reflection])
}

/// Affine maps `x ↦ a·x + b` of `ℤ/q` with `a` of multiplicative order `p`.
fn semidirect(q: usize, p: usize) -> Result<FiniteGroup> {
    let a = (2..q)
        .find(|&a| {
            let mut x = 1;
            for _ in 0..p {
                x = x * a % q;
            }
            x == 1 && a != 1
        })
        .ok_or_else(|| Error::InvalidInput(format!("{p} does not divide {q} - 1")))?;
    let translation: Vec<usize> = (0..q).map(|x| (x + 1) % q).collect();
    let scaling: Vec<usize> = (0..q).map(|x| x * a % q).collect();
    FiniteGroup::from_permutations(format!("Z{q}:Z{p}"), q, &[translation, scaling])
}

/// Every catalog group of order at most `max_order`, one per isomorphism class,
/// sorted by `(order, name)`. When constructions coincide the first family in
/// the order cyclic, symmetric, `A4`, dihedral, semidirect keeps its name.
pub fn catalog(max_order: usize) -> Result<Vec<Arc<FiniteGroup>>> {
    if max_order == 0 {
        return Err(Error::InvalidInput("max_order must be at least 1".into()));
    }
    if max_order > MAX_CATALOG_ORDER {
        return Err(Error::OrderTooLarge(max_order));
    }
    let mut groups: Vec<FiniteGroup> = Vec::new();
    let mut add = |g: FiniteGroup| {
        if !groups.iter().any(|h| h.is_isomorphic(&g)) {
            groups.push(g);
        }
    };
    for n in 1..=max_order {
        add(FiniteGroup::cyclic(n)?);
    }
    let mut n = 3;
    let mut fact = 6;
    while fact <= max_order {
        add(symmetric(n)?);
        n += 1;
        fact *= n;
    }
    if max_order >= 12 {
        add(alternating_four()?);
    }
    for n in 2..=max_order / 2 {
        add(dihedral(n)?);
    }
    for q in (3..=max_order).filter(|&q| is_prime(q as u64)) {
        for p in (2..q).filter(|&p| is_prime(p as u64) && (q - 1) % p == 0 && p * q <= max_order) {
            add(semidirect(q, p)?);
        }
    }
    groups.sort_by(|a, b| (a.order(), a.name()).cmp(&(b.order(), b.name())));
    Ok(groups.into_iter().map(Arc::new).collect())
}

/// Looks a group up by catalog name; `trivial` names `Z1`.
pub fn group_by_name(name: &str) -> Result<Arc<FiniteGroup>> {
    let wanted = if name.eq_ignore_ascii_case("trivial") { "Z1" } else { name };
    let built = if let Some(n) = wanted.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
        Some(FiniteGroup::cyclic(n)?)
    } else if let Some(n) = wanted.strip_prefix('S').and_then(|s| s.parse::<usize>().ok()) {
        (3..=5).contains(&n).then(|| symmetric(n)).transpose()?
    } else if wanted == "A4" {
        Some(alternating_four()?)
    } else if let Some(n) = wanted.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
        (n >= 2).then(|| dihedral(n)).transpose()?
    } else if let Some((q, p)) = wanted.split_once(':') {
        let q = q.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok());
        let p = p.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok());
        match (q, p) {
            (Some(q), Some(p)) if is_prime(q as u64) && is_prime(p as u64) && (q - 1) % p == 0 => {
                Some(semidirect(q, p)?)
            }
            _ => None,
        }
    } else {
        None
    };
    let group = built.ok_or_else(|| Error::InvalidInput(format!("unknown group '{name}'")))?;
    if group.order() > MAX_CATALOG_ORDER {
        return Err(Error::OrderTooLarge(group.order()));
    }
    Ok(Arc::new(group))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(max: usize) -> Vec<String> {
        catalog(max).unwrap().iter().map(|g| g.name().to_string()).collect()
    }

    #[test]
    fn small_catalog() {
        assert_eq!(names(6), ["Z1", "Z2", "Z3", "D2", "Z4", "Z5", "S3", "Z6"]);
    }

    #[test]
    fn order_24_catalog() {
        let n = names(24);
        for g in ["S4", "A4", "Z7:Z3", "D12", "D4", "Z24"] {
            assert!(n.iter().any(|x| x == g), "{g} missing from {n:?}");
        }
        assert!(!n.iter().any(|x| x == "D3" || x == "Z3:Z2"));
        let groups = catalog(24).unwrap();
        for w in groups.windows(2) {
            assert!((w[0].order(), w[0].name()) < (w[1].order(), w[1].name()));
        }
        for (i, a) in groups.iter().enumerate() {
            for b in &groups[i + 1..] {
                assert!(!a.is_isomorphic(b), "{} ≅ {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn refuses_large_orders() {
        assert_eq!(catalog(65).unwrap_err(), Error::OrderTooLarge(65));
        assert!(catalog(64).is_ok());
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(group_by_name("trivial").unwrap().order(), 1);
        assert_eq!(group_by_name("Z7:Z3").unwrap().order(), 21);
        assert_eq!(group_by_name("D2").unwrap().order(), 4);
        assert!(group_by_name("Q8").is_err());
    }
}
