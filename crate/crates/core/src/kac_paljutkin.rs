//! The Kac–Paljutkin fixture: `G = (Z₂×Z₂) ⋊ Z₂ ≅ D₈` with `x ▷ z = z`,
//! `x ▷ t = zt`, and a 3-cocycle `ω` assembled from `τ` and `σ`.
//!
//! Element `z^i t^j x^n` sits at index `4n + 2j + i`.

use crate::builtin::{cyclic, direct, semidirect};
use crate::cochain::{is_cocycle, restrict, Cochain};
use crate::cohomology;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::pointed::PointedCategory;
use crate::qz::QZ;

pub const NAMES: [&str; 8] = ["e", "z", "t", "zt", "x", "zx", "tx", "ztx"];

/// `τ_{x^n}(z^i t^j, z^{i'} t^{j'}) = (−1)^{n j i'}`.
pub fn kp_tau(n: u8, _i: u8, j: u8, i2: u8, _j2: u8) -> QZ {
    if (n & j & i2) & 1 == 1 {
        QZ::HALF
    } else {
        QZ::ZERO
    }
}

/// `σ_{z^i t^j}(x^n, x^{n'}) = (√−1)^{j ⌊(n + n')/2⌋}`.
pub fn kp_sigma(_i: u8, j: u8, n: u8, n2: u8) -> QZ {
    QZ::new((j as i64) * ((n + n2) as i64 / 2), 4)
}

#[derive(Clone, Debug)]
pub struct KPData {
    pub category: PointedCategory,
    /// The normal Klein subgroup `{e, z, t, zt}`.
    pub l: Subgroup,
    /// The generator `x` of the complement.
    pub x: usize,
    /// The nontrivial class of `H²(L, Q/Z)`.
    pub xi_nontrivial: Cochain,
}

/// `(i, j, n)` for the element `z^i t^j x^n`.
fn coords(a: usize) -> (u8, u8, u8) {
    ((a & 1) as u8, ((a >> 1) & 1) as u8, ((a >> 2) & 1) as u8)
}

/// `x^n ▷ z^i t^j`.
fn act(n: u8, i: u8, j: u8) -> (u8, u8) {
    if n == 1 {
        (i ^ j, j)
    } else {
        (i, j)
    }
}

pub fn kp_group() -> Result<Group> {
    let z2 = cyclic(2)?;
    let klein = direct(&z2, &z2)?;
    // x swaps t and zt
    let g = semidirect(&klein, &z2, &[vec![0, 1, 2, 3], vec![0, 1, 3, 2]])?;
    Group::from_table(8, g.table_rows(), NAMES.iter().map(|s| s.to_string()).collect())
}

/// `ω(z^i t^j x^n, z^{i'} t^{j'} x^{n'}, z^{i''} t^{j''} x^{n''})
///   = τ_{x^n}(z^{i'} t^{j'}, x^{n'} ▷ z^{i''} t^{j''}) + σ_{z^{i''} t^{j''}}(x^n, x^{n'})`.
pub fn kp_omega(group: &Group) -> Cochain {
    Cochain::on_group(group, 3, |t| {
        let (_, _, n) = coords(t[0]);
        let (i1, j1, n1) = coords(t[1]);
        let (i2, j2, _) = coords(t[2]);
        let (ai, aj) = act(n1, i2, j2);
        kp_tau(n, i1, j1, ai, aj) + kp_sigma(i2, j2, n, n1)
    })
}

pub fn kp_category() -> Result<KPData> {
    let broken = |m: &str| Error::InternalInvariantBroken(format!("Kac–Paljutkin fixture: {m}"));
    let group = kp_group()?;
    let omega = kp_omega(&group);
    if !is_cocycle(&omega) {
        return Err(broken("ω is not a cocycle"));
    }
    let category = PointedCategory::new(&group, omega).map_err(|e| broken(&e.to_string()))?;
    let l = Subgroup::new(&group, [0, 1, 2, 3])?;
    if !restrict(category.omega(), &l)?.is_zero() {
        return Err(broken("ω|_L is not zero"));
    }
    let reps = cohomology::h2_representatives(&l)?;
    let [zero, xi] = <[Cochain; 2]>::try_from(reps).map_err(|r| broken(&format!("|H²(L)| = {}", r.len())))?;
    if !zero.is_zero() {
        return Err(broken("first H² representative is not zero"));
    }
    Ok(KPData {
        category,
        l,
        x: 4,
        xi_nontrivial: xi,
    })
}
