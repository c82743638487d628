//! Independent oracles and fixtures shared by the integration suites.
#![allow(dead_code)]

pub mod props;

use std::collections::HashSet;

use modcat::builtin::{cyclic, dihedral, direct, semidirect};
use modcat::format::named_omega;
use modcat::{coboundary, combine, Cochain, Group, PointedCategory, Subgroup, QZ};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn klein() -> Group {
    direct(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap()
}

pub fn s3() -> Group {
    let a = cyclic(3).unwrap();
    let b = cyclic(2).unwrap();
    semidirect(&a, &b, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
}

pub fn random_cochain(domain: &Subgroup, degree: usize, den: i64, rng: &mut ChaCha8Rng) -> Cochain {
    let slots = domain.order().pow(degree as u32);
    let values: Vec<QZ> = (0..slots).map(|_| QZ::new(rng.gen_range(0..den), den)).collect();
    let members = domain.members().to_vec();
    let h = members.len();
    Cochain::from_fn(domain, degree, |args| {
        let flat = args
            .iter()
            .fold(0, |acc, &a| acc * h + members.iter().position(|&m| m == a).unwrap());
        values[flat]
    })
}

/// `ω + dκ` for a random normalized 2-cochain `κ`.
pub fn twisted(cat: &PointedCategory, den: i64, seed: u64) -> (PointedCategory, Cochain) {
    let full = Subgroup::full(cat.group());
    let kappa = random_cochain(&full, 2, den, &mut rng(seed));
    let omega = combine(cat.omega(), &coboundary(&kappa), (1, 1)).unwrap();
    (PointedCategory::new(cat.group(), omega).unwrap(), kappa)
}

/// `Σ_k ω(c, c^k, c)`: a complete invariant of `H³(⟨c⟩, Q/Z)`.
pub fn cyclic_invariant(omega: &Cochain, c: usize) -> QZ {
    let g = omega.parent();
    let mut sum = QZ::ZERO;
    let mut p = g.identity();
    loop {
        sum += omega.get(&[c, p, c]);
        p = g.mul(p, c);
        if p == g.identity() {
            break;
        }
    }
    sum
}

/// Whether `ω|_H` is a coboundary, decided without linear algebra when possible:
/// zero restriction or a cyclic `H` with vanishing invariant means yes; a cyclic
/// subgroup with nonzero invariant means no.
pub fn admissible_oracle(cat: &PointedCategory, h: &Subgroup) -> Option<bool> {
    let omega = cat.omega();
    let members = h.members();
    let zero = members.iter().all(|&a| {
        members
            .iter()
            .all(|&b| members.iter().all(|&c| omega.get(&[a, b, c]).is_zero()))
    });
    if zero {
        return Some(true);
    }
    if members.iter().any(|&c| !cyclic_invariant(omega, c).is_zero()) {
        return Some(false);
    }
    if members.iter().any(|&c| cat.group().element_order(c) == h.order()) {
        return Some(true);
    }
    None
}

/// Every `1/den`-valued normalized `n`-cochain on `domain`.
pub fn all_cochains(domain: &Subgroup, degree: usize, den: i64) -> Vec<Cochain> {
    let e = domain.parent().identity();
    let members = domain.members().to_vec();
    let mut slots: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..degree {
        slots = slots
            .into_iter()
            .flat_map(|t| {
                members.iter().filter(|&&m| m != e).map(move |&m| {
                    let mut t = t.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    let total = (den as u64).pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut c = Cochain::zero(domain, degree);
            for s in &slots {
                c.set(s, QZ::new((code % den as u64) as i64, den)).unwrap();
                code /= den as u64;
            }
            c
        })
        .collect()
}

/// `{df : f a 1/den-valued (n−1)-cochain}` as value sequences.
pub fn brute_coboundaries(domain: &Subgroup, degree: usize, den: i64) -> HashSet<Vec<QZ>> {
    all_cochains(domain, degree - 1, den)
        .iter()
        .map(|f| coboundary(f).value_sequence().to_vec())
        .collect()
}

/// All 2-cocycles on `Z_n` with values in `(1/n)Z/Z`. A cocycle is fixed by
/// its column `ψ(a^x, a)` via `ψ(a^x, a^{y+1}) = ψ(a^x, a^y) − ψ(a^y, a) + ψ(a^{x+y}, a)`,
/// so every column is tried and kept when the result is a cocycle.
pub fn cyclic_cocycles(n: usize) -> Vec<Cochain> {
    let g = cyclic(n).unwrap();
    let mut out = Vec::new();
    let total = (n as u64).pow(n as u32 - 1);
    for mut code in 0..total {
        let mut col = vec![QZ::ZERO; n];
        for c in col.iter_mut().skip(1) {
            *c = QZ::new((code % n as u64) as i64, n as i64);
            code /= n as u64;
        }
        let mut psi = vec![vec![QZ::ZERO; n]; n];
        for x in 1..n {
            psi[x][1] = col[x];
            for y in 1..n - 1 {
                psi[x][y + 1] = psi[x][y] - col[y] + col[(x + y) % n];
            }
        }
        let c = Cochain::on_group(&g, 2, |t| psi[t[0]][t[1]]);
        if c.is_normalized() && coboundary(&c).is_zero() {
            out.push(c);
        }
    }
    out
}

/// Categories with `|G| ≤ 8` used by the exhaustive property suites.
pub fn sample_categories() -> Vec<(String, PointedCategory)> {
    let kp = modcat::kp_category().unwrap().category;
    let mut out = vec![
        ("kp".to_string(), kp.clone()),
        ("kp+dκ".to_string(), twisted(&kp, 8, 7).0),
    ];
    let z4 = cyclic(4).unwrap();
    for q in [1, 2] {
        let w = named_omega(&format!("cyclic:4:{q}"), &z4).unwrap();
        out.push((format!("Z4,q={q}"), PointedCategory::new(&z4, w).unwrap()));
    }
    // pull back the generator of H³(Z₂) along the sign map S₃ → Z₂
    let s3 = s3();
    let sign = |x: usize| x / 3;
    let w = Cochain::on_group(&s3, 3, |t| {
        if sign(t[0]) * sign(t[1]) * sign(t[2]) == 1 {
            QZ::HALF
        } else {
            QZ::ZERO
        }
    });
    out.push(("S3,sign*".to_string(), PointedCategory::new(&s3, w).unwrap()));
    out.push((
        "D8,trivial".to_string(),
        PointedCategory::trivial(&dihedral(8).unwrap()),
    ));
    out.push(("V4,trivial".to_string(), PointedCategory::trivial(&klein())));
    out
}

pub fn divisor_count(n: usize) -> usize {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count()
}

/// Classification for trivial `ω` done directly: labels `(H, [ψ])` up to
/// `(H, ψ) ↦ (^{g⁻¹}H, ψᵍ)`, with classes compared by brute-force coboundary
/// sets. Only for groups whose subgroups all have order ≤ 4.
pub fn brute_trivial_classes(g: &Group) -> usize {
    let subs = modcat::subgroups(g);
    // (subgroup index, cocycle) for every 1/|H|-valued 2-cocycle
    let mut labels: Vec<(usize, Cochain, HashSet<Vec<QZ>>)> = Vec::new();
    for (k, h) in subs.iter().enumerate() {
        assert!(h.order() <= 4, "brute force only for tiny subgroups");
        let den = h.order() as i64;
        let b = brute_coboundaries(h, 2, den * den);
        let mut seen: Vec<Cochain> = Vec::new();
        for c in all_cochains(h, 2, den) {
            if !coboundary(&c).is_zero() {
                continue;
            }
            let new_class = seen.iter().all(|s| {
                let d = combine(&c, s, (1, -1)).unwrap();
                !b.contains(d.value_sequence())
            });
            if new_class {
                seen.push(c);
            }
        }
        for c in seen {
            labels.push((k, c, b.clone()));
        }
    }
    // union labels related by conjugation
    let n = labels.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        for x in g.elements() {
            let moved = modcat::conjugate_cochain(&labels[i].1, x);
            for j in 0..n {
                if subs[labels[j].0] != *moved.domain() {
                    continue;
                }
                let d = combine(&moved, &labels[j].1, (1, -1)).unwrap();
                if labels[j].2.contains(d.value_sequence()) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}
