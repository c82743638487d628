//! Exhaustive structural checks; each returns a description of the first failure.

use modcat::cochain::MAX_DEGREE;
use modcat::{
    alpha_g, classify, coboundary, combine, conjugate_cochain, enumerate_pairs, equivalent_pairs, is_cohomologous,
    restrict, solve_coboundary, validate_pair, AlgebraPair, Cochain, Group, PointedCategory, Subgroup,
};

use super::{random_cochain, rng, twisted};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `d∘d = 0` on random cochains of every degree that stays in range.
pub fn d_squared(groups: &[Group], seed: u64) -> Check {
    let mut r = rng(seed);
    for g in groups {
        for sub in modcat::subgroups(g) {
            for degree in 0..MAX_DEGREE - 1 {
                for den in [2, 6, 8] {
                    let f = random_cochain(&sub, degree, den, &mut r);
                    ensure(coboundary(&coboundary(&f)).is_zero(), || {
                        format!("ddf ≠ 0 for degree {degree} on {:?}", sub.members())
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// `dΩ_g = ω − ω^g`.
pub fn omega_coboundary(cat: &PointedCategory) -> Check {
    for g in cat.group().elements() {
        let lhs = coboundary(cat.big_omega(g));
        let rhs = combine(cat.omega(), &conjugate_cochain(cat.omega(), g), (1, -1)).unwrap();
        ensure(lhs == rhs, || format!("dΩ_{g} ≠ ω − ω^{g}"))?;
        ensure(cat.big_omega(g).is_normalized(), || format!("Ω_{g} not normalized"))?;
    }
    ensure(cat.big_omega(cat.group().identity()).is_zero(), || "Ω_e ≠ 0".into())
}

/// `Ω_{g₁g₂} = Ω_{g₁}^{g₂} + Ω_{g₂} + dγ(g₁, g₂)`.
pub fn omega_product(cat: &PointedCategory) -> Check {
    let grp = cat.group();
    for g1 in grp.elements() {
        for g2 in grp.elements() {
            let gamma = cat.gamma(g1, g2);
            ensure(gamma.is_normalized(), || format!("γ({g1},{g2}) not normalized"))?;
            let rhs = combine(
                &combine(&conjugate_cochain(cat.big_omega(g1), g2), cat.big_omega(g2), (1, 1)).unwrap(),
                &coboundary(&gamma),
                (1, 1),
            )
            .unwrap();
            ensure(*cat.big_omega(grp.mul(g1, g2)) == rhs, || {
                format!("Ω product rule fails at ({g1},{g2})")
            })?;
        }
    }
    Ok(())
}

/// The five-term identity `… = Ω_g(x, y) + dθ_g(x, y)`, pointwise.
pub fn theta_identity(cat: &PointedCategory) -> Check {
    let grp = cat.group();
    let w = |a, b, c| cat.w(a, b, c);
    for g in grp.elements() {
        let dtheta = coboundary(&cat.theta(g));
        let om = cat.big_omega(g);
        for x in grp.elements() {
            for y in grp.elements() {
                let (gx, gy) = (grp.conj(g, x), grp.conj(g, y));
                let (xi, yi) = (grp.inv(x), grp.inv(y));
                let lhs = w(y, yi, xi) - w(x, y, grp.mul(yi, xi)) + w(gx, gy, g) + w(gx, grp.mul(gy, g), yi)
                    - w(grp.mul(grp.mul(gx, gy), g), yi, xi);
                let rhs = om.get(&[x, y]) + dtheta.get(&[x, y]);
                ensure(lhs == rhs, || format!("θ identity fails at g={g}, x={x}, y={y}"))?;
            }
        }
    }
    Ok(())
}

/// `ξ(h'⁻¹, h⁻¹) + ξ(h, h') = df(h, h') + ω(h', h'⁻¹, h⁻¹) − ω(h, h', h'⁻¹h⁻¹)`, `f(h) = ξ(h, h⁻¹)`.
pub fn xi_inverse(cat: &PointedCategory) -> Check {
    let grp = cat.group();
    for pair in enumerate_pairs(cat).map_err(|e| e.to_string())? {
        let xi = pair.psi();
        let l = pair.subgroup();
        let f = Cochain::from_fn(l, 1, |t| xi.get(&[t[0], grp.inv(t[0])]));
        let df = coboundary(&f);
        for &h in l.members() {
            for &h2 in l.members() {
                let (hi, h2i) = (grp.inv(h), grp.inv(h2));
                let lhs = xi.get(&[h2i, hi]) + xi.get(&[h, h2]);
                let rhs = df.get(&[h, h2]) + cat.w(h2, h2i, hi) - cat.w(h, h2, grp.mul(h2i, hi));
                ensure(lhs == rhs, || {
                    format!("ξ relation fails at ({h},{h2}) on {:?}", l.members())
                })?;
            }
        }
    }
    Ok(())
}

/// `(−ξ + ψᵍ + Ω_g)` restricted to `^{g⁻¹}(H ∩ ᵍL)`.
fn criterion_cocycle(a: &AlgebraPair, b: &AlgebraPair, g: usize, on: &Subgroup) -> Cochain {
    let cat = a.category();
    let psi_g = restrict(&conjugate_cochain(a.psi(), g), on).unwrap();
    let xi = restrict(b.psi(), on).unwrap();
    let om = restrict(cat.big_omega(g), on).unwrap();
    combine(&combine(&psi_g, &xi, (1, -1)).unwrap(), &om, (1, 1)).unwrap()
}

/// `α_g` is a cocycle, and `α_g^g` is cohomologous to `(−ξ + ψᵍ + Ω_g)` on `^{g⁻¹}H ∩ L`.
pub fn alpha_criterion(cat: &PointedCategory) -> Check {
    let pairs = enumerate_pairs(cat).map_err(|e| e.to_string())?;
    for a in &pairs {
        for b in &pairs {
            for g in cat.group().elements() {
                let alpha = alpha_g(a, b, g).map_err(|e| e.to_string())?;
                ensure(coboundary(&alpha).is_zero(), || format!("α_{g} not a cocycle"))?;
                let moved = conjugate_cochain(&alpha, g);
                let rhs = criterion_cocycle(a, b, g, moved.domain());
                ensure(is_cohomologous(&moved, &rhs).unwrap().is_some(), || {
                    format!(
                        "α_{g}^g ≢ −ξ + ψ^g + Ω_g for H={:?}, L={:?}",
                        a.subgroup().members(),
                        b.subgroup().members()
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// `^g(H, ψ)` is a valid label and equivalent to `(H, ψ)`.
pub fn conjugate_pairs(cat: &PointedCategory) -> Check {
    for a in enumerate_pairs(cat).map_err(|e| e.to_string())? {
        for g in cat.group().elements() {
            let c = modcat::conjugate_pair(&a, g).map_err(|e| e.to_string())?;
            ensure(equivalent_pairs(&c, &a).unwrap().is_some(), || {
                format!("^{g}(H, ψ) not equivalent to (H, ψ) for H={:?}", a.subgroup().members())
            })?;
        }
    }
    Ok(())
}

/// Every returned witness satisfies `df = target` exactly.
pub fn witness_round_trips(groups: &[Group], seed: u64) -> Check {
    let mut r = rng(seed);
    for g in groups {
        for sub in modcat::subgroups(g) {
            for degree in 1..=2 {
                for den in [2, 4, 6, 8] {
                    let target = coboundary(&random_cochain(&sub, degree, den, &mut r));
                    let f = solve_coboundary(&target)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("d(f) reported unsolvable on {:?}", sub.members()))?;
                    ensure(coboundary(&f) == target, || "witness does not round-trip".into())?;
                }
            }
        }
    }
    Ok(())
}

/// Reflexive, symmetric, transitive; equivalent labels have equal rank.
pub fn equivalence_axioms(cat: &PointedCategory) -> Check {
    let pairs = enumerate_pairs(cat).map_err(|e| e.to_string())?;
    let n = pairs.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if let Some(w) = equivalent_pairs(&pairs[i], &pairs[j]).map_err(|e| e.to_string())? {
                ensure(w.verify(&pairs[i], &pairs[j]), || format!("witness {i}→{j} fails"))?;
                ensure(pairs[i].rank() == pairs[j].rank(), || {
                    format!("ranks differ for {i}~{j}")
                })?;
                rel[i][j] = true;
            }
        }
    }
    for i in 0..n {
        let w = equivalent_pairs(&pairs[i], &pairs[i]).unwrap().unwrap();
        ensure(w.g == cat.group().identity() && w.f.is_zero(), || {
            format!("reflexive witness for {i} not trivial")
        })?;
        for j in 0..n {
            ensure(rel[i][j] == rel[j][i], || format!("symmetry fails for ({i},{j})"))?;
            for k in 0..n {
                ensure(!(rel[i][j] && rel[j][k]) || rel[i][k], || {
                    format!("transitivity fails for ({i},{j},{k})")
                })?;
            }
        }
    }
    Ok(())
}

/// `ω ↦ ω + dκ` with `ψ ↦ ψ + κ|_H` preserves labels, equivalences and the class count.
pub fn twist_invariance(cat: &PointedCategory, seed: u64) -> Check {
    let (twist, kappa) = twisted(cat, 12, seed);
    let pairs = enumerate_pairs(cat).map_err(|e| e.to_string())?;
    let moved: Vec<AlgebraPair> = pairs
        .iter()
        .map(|p| {
            let k = restrict(&kappa, p.subgroup()).unwrap();
            validate_pair(&twist, p.subgroup(), combine(p.psi(), &k, (1, 1)).unwrap())
        })
        .collect::<Result<_, _>>()
        .map_err(|e| format!("shifted label invalid: {e}"))?;
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let before = equivalent_pairs(&pairs[i], &pairs[j]).unwrap().is_some();
            let after = equivalent_pairs(&moved[i], &moved[j]).unwrap().is_some();
            ensure(before == after, || {
                format!("equivalence of ({i},{j}) changed under twist")
            })?;
        }
    }
    let (a, b) = (
        classify(cat).unwrap().class_count(),
        classify(&twist).unwrap().class_count(),
    );
    ensure(a == b, || format!("class count {a} became {b} under twist"))
}

/// For trivial `ω`: classes are orbits of `(H, [ψ]) ↦ (^{g⁻¹}H, [ψᵍ])`.
pub fn trivial_reduction(g: &Group) -> Check {
    let cat = PointedCategory::trivial(g);
    let subs = modcat::subgroups(g);
    let mut labels: Vec<(Subgroup, Cochain)> = Vec::new();
    for h in &subs {
        for r in modcat::h2_representatives(h).unwrap() {
            labels.push((h.clone(), r));
        }
    }
    let n = labels.len();
    let mut orbit_of: Vec<Option<usize>> = vec![None; n];
    let mut orbits = 0;
    for i in 0..n {
        if orbit_of[i].is_some() {
            continue;
        }
        for x in g.elements() {
            let moved = conjugate_cochain(&labels[i].1, x);
            for j in 0..n {
                if labels[j].0 == *moved.domain() && is_cohomologous(&moved, &labels[j].1).unwrap().is_some() {
                    orbit_of[j] = Some(orbits);
                }
            }
        }
        orbits += 1;
    }
    let classes = classify(&cat).unwrap().class_count();
    ensure(classes == orbits, || {
        format!("classify gives {classes}, orbit count {orbits}")
    })
}
