//! Structure constants of the pointed category `C(G, ω)`: the 2-cochains
//! `Ω_g`, the 1-cochains `γ(g₁, g₂)`, algebra pairs `(H, ψ)`, their
//! conjugates, and the double-coset cocycles `α_g`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cochain::{coboundary, combine, conjugate_cochain, is_cocycle, restrict, Cochain};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::qz::QZ;

struct CategoryData {
    group: Group,
    omega: Cochain,
    big_omega: Vec<OnceLock<Cochain>>,
}

/// `C(G, ω)` for a normalized 3-cocycle `ω` on `G`. Cheap to clone.
#[derive(Clone)]
pub struct PointedCategory(Arc<CategoryData>);

impl PointedCategory {
    pub fn new(group: &Group, omega: Cochain) -> Result<PointedCategory> {
        if omega.degree() != 3 {
            return Err(Error::DegreeMismatch {
                left: omega.degree(),
                right: 3,
            });
        }
        if !omega.domain().is_full() || !omega.parent().same_as(group) {
            return Err(Error::GroupMismatch);
        }
        if !omega.is_normalized() {
            return Err(Error::NotACocycle("omega is not normalized".into()));
        }
        if let Some((t, v)) = coboundary(&omega).nonzero_entries().next() {
            return Err(Error::NotACocycle(format!("dω{t:?} = {v}")));
        }
        Ok(Self::new_unchecked(group, omega))
    }

    fn new_unchecked(group: &Group, omega: Cochain) -> PointedCategory {
        PointedCategory(Arc::new(CategoryData {
            group: group.clone(),
            omega,
            big_omega: (0..group.order()).map(|_| OnceLock::new()).collect(),
        }))
    }

    /// `C(G, 1)`.
    pub fn trivial(group: &Group) -> PointedCategory {
        Self::new_unchecked(group, Cochain::zero(&Subgroup::full(group), 3))
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }

    pub fn omega(&self) -> &Cochain {
        &self.0.omega
    }

    #[inline]
    pub fn w(&self, a: usize, b: usize, c: usize) -> QZ {
        self.0.omega.get(&[a, b, c])
    }

    /// Same group table and same `ω`.
    pub fn same_as(&self, other: &PointedCategory) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.group().same_as(other.group()) && self.omega().value_sequence() == other.omega().value_sequence())
    }

    /// `Ω_g(a, b) = ω(ᵍa, ᵍb, g) + ω(g, a, b) − ω(ᵍa, g, b)` on `G`. Memoized.
    pub fn big_omega(&self, g: usize) -> &Cochain {
        self.0.big_omega[g].get_or_init(|| {
            let grp = self.group();
            Cochain::on_group(grp, 2, |t| {
                let (a, b) = (t[0], t[1]);
                let (ga, gb) = (grp.conj(g, a), grp.conj(g, b));
                self.w(ga, gb, g) + self.w(g, a, b) - self.w(ga, g, b)
            })
        })
    }

    /// `γ(g₁, g₂)(h) = ω(g₁, g₂, h) + ω(^{g₁g₂}h, g₁, g₂) − ω(g₁, ^{g₂}h, g₂)`.
    pub fn gamma(&self, g1: usize, g2: usize) -> Cochain {
        let grp = self.group();
        let g12 = grp.mul(g1, g2);
        Cochain::on_group(grp, 1, |t| {
            let h = t[0];
            self.w(g1, g2, h) + self.w(grp.conj(g12, h), g1, g2) - self.w(g1, grp.conj(g2, h), g2)
        })
    }

    /// `θ_g(x) = −ω(g, x, x⁻¹)`.
    pub fn theta(&self, g: usize) -> Cochain {
        let grp = self.group();
        Cochain::on_group(grp, 1, |t| -self.w(g, t[0], grp.inv(t[0])))
    }
}

impl fmt::Debug for PointedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointedCategory")
            .field("group", self.group())
            .field("omega", self.omega())
            .finish()
    }
}

pub fn big_omega(cat: &PointedCategory, g: usize) -> Cochain {
    cat.big_omega(g).clone()
}

pub fn gamma_cochain(cat: &PointedCategory, g1: usize, g2: usize) -> Cochain {
    cat.gamma(g1, g2)
}

/// A label `(H, ψ)` with `dψ = ω|_H`.
#[derive(Clone)]
pub struct AlgebraPair {
    category: PointedCategory,
    psi: Cochain,
}

impl AlgebraPair {
    pub fn category(&self) -> &PointedCategory {
        &self.category
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.psi.domain()
    }

    pub fn psi(&self) -> &Cochain {
        &self.psi
    }

    /// Rank of the module category: `[G : H]`.
    pub fn rank(&self) -> usize {
        self.subgroup().index()
    }
}

impl PartialEq for AlgebraPair {
    fn eq(&self, other: &Self) -> bool {
        self.category.same_as(&other.category)
            && self.subgroup() == other.subgroup()
            && self.psi.value_sequence() == other.psi.value_sequence()
    }
}

impl Eq for AlgebraPair {}

impl fmt::Debug for AlgebraPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraPair")
            .field("subgroup", &self.subgroup().members())
            .field("psi", &self.psi)
            .finish()
    }
}

/// Checks `dψ = ω|_H`.
pub fn validate_pair(cat: &PointedCategory, subgroup: &Subgroup, psi: Cochain) -> Result<AlgebraPair> {
    if psi.degree() != 2 {
        return Err(Error::DegreeMismatch {
            left: psi.degree(),
            right: 2,
        });
    }
    if !subgroup.parent().same_as(cat.group()) || psi.domain() != subgroup {
        return Err(Error::GroupMismatch);
    }
    if !psi.is_normalized() {
        let e = cat.group().identity();
        let at = psi
            .nonzero_entries()
            .find(|(a, _)| a.contains(&e))
            .map(|(a, _)| a)
            .unwrap_or_default();
        return Err(Error::NotNormalized(at));
    }
    let restricted = restrict(cat.omega(), subgroup)?;
    let diff = combine(&coboundary(&psi), &restricted, (1, -1))?;
    if let Some((triple, _)) = diff.nonzero_entries().next() {
        return Err(Error::NotCompatible { triple });
    }
    Ok(AlgebraPair {
        category: cat.clone(),
        psi,
    })
}

/// `^g(H, ψ) = (ᵍH, ψ^{g⁻¹} + Ω_{g⁻¹}|_{ᵍH})`.
pub fn conjugate_pair(pair: &AlgebraPair, g: usize) -> Result<AlgebraPair> {
    let cat = pair.category();
    let ginv = cat.group().inv(g);
    let moved = conjugate_cochain(pair.psi(), ginv);
    let twist = restrict(cat.big_omega(ginv), moved.domain())?;
    let psi = combine(&moved, &twist, (1, 1))?;
    let target = moved.domain().clone();
    validate_pair(cat, &target, psi)
        .map_err(|e| Error::InternalInvariantBroken(format!("conjugate pair by {g} fails validation: {e}")))
}

/// The cocycle `α_g` on `H ∩ ᵍL` for pairs `(H, ψ)` and `(L, ξ)`, with
/// `c = ^{g⁻¹}(−)`:
///
/// `α_g(x, y) = ψ(x, y) − ξ(cx, cy) + ω(x, y, g) + ω(x, yg, c(y⁻¹))
///   − ω(xyg, c(y⁻¹), c(x⁻¹)) + du_g(x, y) + ω(cy, c(y⁻¹), c(x⁻¹))
///   − ω(cx, cy, c(y⁻¹x⁻¹))`, where `u_g(x) = ω(xg, cx, c(x⁻¹))`.
pub fn alpha_g(psi_pair: &AlgebraPair, xi_pair: &AlgebraPair, g: usize) -> Result<Cochain> {
    let cat = psi_pair.category();
    if !cat.same_as(xi_pair.category()) {
        return Err(Error::CategoryMismatch);
    }
    let grp = cat.group();
    let domain = psi_pair.subgroup().intersection(&xi_pair.subgroup().conjugate(g))?;
    let ginv = grp.inv(g);
    let c = |h: usize| grp.conj(ginv, h);
    let w = |a, b, d| cat.w(a, b, d);
    let (psi, xi) = (psi_pair.psi(), xi_pair.psi());
    let u = |x: usize| w(grp.mul(x, g), c(x), c(grp.inv(x)));
    let alpha = Cochain::from_fn(&domain, 2, |t| {
        let (x, y) = (t[0], t[1]);
        let (xi_x, yi) = (grp.inv(x), grp.inv(y));
        let xy = grp.mul(x, y);
        let du = u(y) - u(xy) + u(x);
        psi.get(&[x, y]) - xi.get(&[c(x), c(y)]) + w(x, y, g) + w(x, grp.mul(y, g), c(yi))
            - w(grp.mul(xy, g), c(yi), c(xi_x))
            + du
            + w(c(y), c(yi), c(xi_x))
            - w(c(x), c(y), c(grp.mul(yi, xi_x)))
    });
    if !is_cocycle(&alpha) {
        return Err(Error::InternalInvariantBroken(format!(
            "alpha_{g} is not a cocycle on {:?}",
            domain.members()
        )));
    }
    Ok(alpha)
}
