//! Normalized Q/Z-valued cochains on (sub)groups and the bar-complex coboundary.
//!
//! Cochains are indexed by tuples of *parent* element indices in the public
//! API. Internally values are stored densely over all tuples of the domain's
//! local indexing; entries with an identity argument are kept at zero.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::qz::QZ;

/// Highest cochain degree the crate works with (coboundaries of 3-cochains).
pub const MAX_DEGREE: usize = 4;

#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    domain: Subgroup,
    degree: usize,
    values: Vec<QZ>,
}

/// Iterates all `len`-tuples over `0..base` in lexicographic order.
pub(crate) struct Tuples {
    base: usize,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

impl Tuples {
    pub(crate) fn new(base: usize, len: usize) -> Self {
        Tuples {
            base,
            current: vec![0; len],
            started: false,
            done: base == 0 && len > 0,
        }
    }

    pub(crate) fn next_tuple(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        for k in (0..self.current.len()).rev() {
            self.current[k] += 1;
            if self.current[k] < self.base {
                return Some(&self.current);
            }
            self.current[k] = 0;
        }
        self.done = true;
        None
    }
}

impl Cochain {
    pub fn zero(domain: &Subgroup, degree: usize) -> Cochain {
        assert!(degree <= MAX_DEGREE, "degree {degree} above {MAX_DEGREE}");
        let len = domain.order().pow(degree as u32);
        Cochain {
            domain: domain.clone(),
            degree,
            values: vec![QZ::ZERO; len],
        }
    }

    /// Builds a cochain from its values on non-identity tuples of parent indices.
    pub fn from_fn(domain: &Subgroup, degree: usize, f: impl Fn(&[usize]) -> QZ) -> Cochain {
        let members = domain.members().to_vec();
        let mut args = vec![0; degree];
        Self::from_local_fn(domain, degree, |local| {
            for (a, &l) in args.iter_mut().zip(local) {
                *a = members[l];
            }
            f(&args)
        })
    }

    pub(crate) fn from_local_fn(domain: &Subgroup, degree: usize, mut f: impl FnMut(&[usize]) -> QZ) -> Cochain {
        let mut c = Cochain::zero(domain, degree);
        let e = domain.as_group().identity();
        let mut tuples = Tuples::new(domain.order(), degree);
        let mut idx = 0;
        while let Some(t) = tuples.next_tuple() {
            if !t.contains(&e) {
                c.values[idx] = f(t);
            }
            idx += 1;
        }
        c
    }

    /// A cochain on the whole of `group`.
    pub fn on_group(group: &Group, degree: usize, f: impl Fn(&[usize]) -> QZ) -> Cochain {
        Cochain::from_fn(&Subgroup::full(group), degree, f)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn parent(&self) -> &Group {
        self.domain.parent()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn flat_local(&self, local: &[usize]) -> usize {
        let h = self.domain.order();
        local.iter().fold(0, |acc, &x| acc * h + x)
    }

    /// Value at a tuple of local indices.
    #[inline]
    pub(crate) fn at_local(&self, local: &[usize]) -> QZ {
        self.values[self.flat_local(local)]
    }

    fn to_local(&self, args: &[usize]) -> Option<Vec<usize>> {
        if args.len() != self.degree {
            return None;
        }
        args.iter().map(|&a| self.domain.local_index(a)).collect()
    }

    /// Value at a tuple of parent indices. Panics if an argument is outside the domain.
    pub fn get(&self, args: &[usize]) -> QZ {
        self.try_get(args)
            .unwrap_or_else(|| panic!("{args:?} is not a {}-tuple in {:?}", self.degree, self.domain))
    }

    pub fn try_get(&self, args: &[usize]) -> Option<QZ> {
        self.to_local(args).map(|l| self.at_local(&l))
    }

    /// Sets a value; identity slots only accept zero.
    pub fn set(&mut self, args: &[usize], value: QZ) -> Result<()> {
        let local = self
            .to_local(args)
            .ok_or_else(|| Error::NotASubgroup(format!("{args:?} not in domain {:?}", self.domain)))?;
        let e = self.domain.parent().identity();
        if args.contains(&e) {
            return if value.is_zero() {
                Ok(())
            } else {
                Err(Error::NotNormalized(args.to_vec()))
            };
        }
        let i = self.flat_local(&local);
        self.values[i] = value;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn is_normalized(&self) -> bool {
        self.nonzero_entries()
            .all(|(args, _)| !args.contains(&self.parent().identity()))
    }

    /// Values in lexicographic tuple order (the order used for tie-breaking).
    pub fn value_sequence(&self) -> &[QZ] {
        &self.values
    }

    /// Nonzero values keyed by parent-index tuples, in lexicographic order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Vec<usize>, QZ)> + '_ {
        let members = self.domain.members();
        let h = self.domain.order();
        let degree = self.degree;
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(mut i, &v)| {
                let mut args = vec![0; degree];
                for slot in args.iter_mut().rev() {
                    *slot = members[i % h];
                    i /= h;
                }
                (args, v)
            })
    }

    /// Least common multiple of all value denominators.
    pub fn denominator_lcm(&self) -> u64 {
        use num_integer::Integer;
        self.values.iter().fold(1u64, |acc, v| acc.lcm(&(v.den() as u64)))
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if self.domain != other.domain {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.nonzero_entries().map(|(a, v)| format!("{a:?}={v}")).collect();
        write!(
            f,
            "Cochain(deg {}, on {:?}, {{{}}})",
            self.degree,
            self.domain,
            entries.join(", ")
        )
    }
}

/// `(df)(g₁,…,g_{n+1}) = f(g₂,…) + Σᵢ (−1)ⁱ f(…,gᵢg_{i+1},…) + (−1)^{n+1} f(g₁,…,g_n)`,
/// with trivial action on the coefficients.
pub fn coboundary(f: &Cochain) -> Cochain {
    let n = f.degree;
    assert!(n < MAX_DEGREE, "coboundary of a degree-{n} cochain is out of range");
    let local = f.domain.as_group().clone();
    let mut scratch = vec![0usize; n];
    Cochain::from_local_fn(&f.domain, n + 1, |t| {
        let mut acc = f.at_local(&t[1..]);
        for i in 0..n {
            scratch[..i].copy_from_slice(&t[..i]);
            scratch[i] = local.mul(t[i], t[i + 1]);
            scratch[i + 1..].copy_from_slice(&t[i + 2..]);
            let v = f.at_local(&scratch);
            if i % 2 == 0 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        let last = f.at_local(&t[..n]);
        if n.is_multiple_of(2) {
            acc - last
        } else {
            acc + last
        }
    })
}

/// Pointwise `signs.0 · f + signs.1 · g`.
pub fn combine(f: &Cochain, g: &Cochain, signs: (i64, i64)) -> Result<Cochain> {
    f.check_compatible(g)?;
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(&a, &b)| a.scale(signs.0) + b.scale(signs.1))
        .collect();
    Ok(Cochain {
        domain: f.domain.clone(),
        degree: f.degree,
        values,
    })
}

/// Restriction to a subgroup of the cochain's domain, reindexed to it.
pub fn restrict(f: &Cochain, subgroup: &Subgroup) -> Result<Cochain> {
    if !subgroup.is_subgroup_of(&f.domain) {
        return Err(Error::NotASubgroup(format!(
            "{subgroup:?} is not contained in {:?}",
            f.domain
        )));
    }
    Ok(Cochain::from_fn(subgroup, f.degree, |args| f.get(args)))
}

/// `f^g(h₁,…,h_n) = f(^g h₁,…,^g h_n)`, a cochain on `^{g⁻¹}H` for `f` on `H`.
pub fn conjugate_cochain(f: &Cochain, g: usize) -> Cochain {
    let parent = f.parent().clone();
    let target = f.domain.conjugate(parent.inv(g));
    let mut conj_args = vec![0; f.degree];
    let members = target.members().to_vec();
    Cochain::from_local_fn(&target, f.degree, |local| {
        for (c, &l) in conj_args.iter_mut().zip(local) {
            *c = parent.conj(g, members[l]);
        }
        f.get(&conj_args)
    })
}

pub fn is_cocycle(f: &Cochain) -> bool {
    coboundary(f).is_zero()
}
