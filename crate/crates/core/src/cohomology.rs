//! Coboundary triviality and H² representatives over Q/Z.
//!
//! A degree-`n` target `b` with value denominators dividing `N` on a group of
//! order `h` is a coboundary iff `A·F ≡ b·M (mod M)` is solvable, where `A` is
//! the integer matrix of `d^{n−1}` and `M = lcm(N, h)·h`: every nonzero
//! invariant factor of `A` divides `h`, so a solution with denominators
//! dividing `N·h` exists whenever any does.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use sha2::{Digest, Sha256};

use crate::cochain::{coboundary, combine, is_cocycle, Cochain, Tuples};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::qz::QZ;
use crate::snf::Snf;

/// Integer matrix of `dⁿ` on normalized cochains of a group.
#[derive(Clone, Debug)]
pub struct CoboundaryMatrix {
    group: Group,
    degree: usize,
    row_tuples: Vec<Vec<usize>>,
    col_tuples: Vec<Vec<usize>>,
    /// Sparse rows: `(column, coefficient)`, columns ascending.
    entries: Vec<Vec<(u32, i64)>>,
}

fn non_identity_tuples(order: usize, identity: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut it = Tuples::new(order, len);
    while let Some(t) = it.next_tuple() {
        if !t.contains(&identity) {
            out.push(t.to_vec());
        }
    }
    out
}

fn flat(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * base + x)
}

impl CoboundaryMatrix {
    /// Matrix of `dⁿ : Cⁿ → Cⁿ⁺¹` in local indices of `group`.
    pub fn new(group: &Group, degree: usize) -> CoboundaryMatrix {
        let (h, e) = (group.order(), group.identity());
        let col_tuples = non_identity_tuples(h, e, degree);
        let row_tuples = non_identity_tuples(h, e, degree + 1);
        let mut col_of = vec![u32::MAX; h.pow(degree as u32)];
        for (j, t) in col_tuples.iter().enumerate() {
            col_of[flat(t, h)] = j as u32;
        }
        let mut scratch = vec![0usize; degree];
        let entries = row_tuples
            .iter()
            .map(|t| {
                let mut row: Vec<(u32, i64)> = Vec::with_capacity(degree + 2);
                let mut push = |args: &[usize], sign: i64| {
                    let c = col_of[flat(args, h)];
                    if c != u32::MAX {
                        row.push((c, sign));
                    }
                };
                push(&t[1..], 1);
                for i in 0..degree {
                    scratch[..i].copy_from_slice(&t[..i]);
                    scratch[i] = group.mul(t[i], t[i + 1]);
                    scratch[i + 1..].copy_from_slice(&t[i + 2..]);
                    push(&scratch, if i % 2 == 0 { -1 } else { 1 });
                }
                push(&t[..degree], if degree.is_multiple_of(2) { -1 } else { 1 });
                row.sort_unstable_by_key(|&(c, _)| c);
                let mut merged: Vec<(u32, i64)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|&(_, v)| v != 0);
                merged
            })
            .collect();
        CoboundaryMatrix {
            group: group.clone(),
            degree,
            row_tuples,
            col_tuples,
            entries,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> usize {
        self.row_tuples.len()
    }

    pub fn cols(&self) -> usize {
        self.col_tuples.len()
    }

    pub fn row_tuple(&self, i: usize) -> &[usize] {
        &self.row_tuples[i]
    }

    pub fn col_tuple(&self, j: usize) -> &[usize] {
        &self.col_tuples[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i]
            .binary_search_by_key(&(j as u32), |&(c, _)| c)
            .map_or(0, |k| self.entries[i][k].1)
    }

    /// Applies the matrix to a cochain on the full `group`.
    pub fn apply(&self, f: &Cochain) -> Cochain {
        assert_eq!(f.degree(), self.degree);
        let x: Vec<QZ> = self.col_tuples.iter().map(|t| f.at_local(t)).collect();
        let domain = f.domain().clone();
        let h = self.group.order();
        let mut values = vec![QZ::ZERO; h.pow(self.degree as u32 + 1)];
        for (t, row) in self.row_tuples.iter().zip(&self.entries) {
            values[flat(t, h)] = row.iter().map(|&(c, v)| x[c as usize].scale(v)).sum();
        }
        Cochain::from_local_fn(&domain, self.degree + 1, |t| values[flat(t, h)])
    }
}

struct Factorization {
    matrix: CoboundaryMatrix,
    snf: Snf,
}

type CacheKey = (Vec<usize>, usize, u64);

/// Outcome of a coboundary query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `df = target`.
    Witness(Cochain),
    /// The target is not a coboundary; `row` is the first obstructing row of
    /// the transformed system and `tuple` its (parent-index) row label.
    Obstructed { row: usize, tuple: Vec<usize> },
}

impl Solution {
    pub fn witness(self) -> Option<Cochain> {
        match self {
            Solution::Witness(f) => Some(f),
            Solution::Obstructed { .. } => None,
        }
    }
}

/// Caches factorizations per (group table, matrix degree, modulus).
/// Construction of an entry is serialized by the write lock; lookups are shared.
pub struct CohomologySolver {
    cache: RwLock<HashMap<CacheKey, Arc<Factorization>>>,
    cache_dir: Option<PathBuf>,
}

impl Default for CohomologySolver {
    fn default() -> Self {
        CohomologySolver::new()
    }
}

/// Process-wide solver; honours `MODCAT_CACHE_DIR` for an on-disk cache.
pub fn global() -> &'static CohomologySolver {
    static SOLVER: OnceLock<CohomologySolver> = OnceLock::new();
    SOLVER.get_or_init(|| {
        let dir = std::env::var_os("MODCAT_CACHE_DIR").map(PathBuf::from);
        CohomologySolver::with_cache_dir(dir)
    })
}

impl CohomologySolver {
    pub fn new() -> CohomologySolver {
        CohomologySolver::with_cache_dir(None)
    }

    pub fn with_cache_dir(cache_dir: Option<PathBuf>) -> CohomologySolver {
        CohomologySolver {
            cache: RwLock::new(HashMap::new()),
            cache_dir,
        }
    }

    fn disk_path(&self, key: &CacheKey) -> Option<PathBuf> {
        let dir = self.cache_dir.as_ref()?;
        let digest = Sha256::digest(serde_json::to_vec(key).ok()?);
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Some(dir.join(format!("snf-{name}.json")))
    }

    fn factorization(&self, group: &Group, degree: usize, modulus: u64) -> Arc<Factorization> {
        let key: CacheKey = (group.flat_table().to_vec(), degree, modulus);
        if let Some(f) = self.cache.read().expect("solver cache poisoned").get(&key) {
            return f.clone();
        }
        let mut cache = self.cache.write().expect("solver cache poisoned");
        if let Some(f) = cache.get(&key) {
            return f.clone();
        }
        let matrix = CoboundaryMatrix::new(group, degree);
        let path = self.disk_path(&key);
        let from_disk = path
            .as_ref()
            .and_then(|p| std::fs::read(p).ok())
            .and_then(|bytes| serde_json::from_slice::<Snf>(&bytes).ok())
            .filter(|s| s.shape() == (matrix.rows(), matrix.cols()) && s.modulus() == modulus);
        let snf = match from_disk {
            Some(s) => {
                log::debug!(
                    "loaded SNF for degree {degree}, |G| = {}, M = {modulus} from disk",
                    group.order()
                );
                s
            }
            None => {
                log::debug!(
                    "factoring {}x{} coboundary matrix (degree {degree}) mod {modulus}",
                    matrix.rows(),
                    matrix.cols()
                );
                let s = Snf::compute(matrix.rows(), matrix.cols(), modulus, |i, j| matrix.entry(i, j));
                if let Some(p) = &path {
                    let written = serde_json::to_vec(&s)
                        .map_err(|e| e.to_string())
                        .and_then(|bytes| std::fs::write(p, bytes).map_err(|e| e.to_string()));
                    if let Err(e) = written {
                        log::warn!("could not write SNF cache {}: {e}", p.display());
                    }
                }
                s
            }
        };
        let f = Arc::new(Factorization { matrix, snf });
        cache.insert(key, f.clone());
        f
    }

    /// Decides whether `target` is a coboundary, with a verified witness.
    pub fn solve(&self, target: &Cochain) -> Result<Solution> {
        let n = target.degree();
        if !(1..=3).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        if !target.is_normalized() {
            let at = target
                .nonzero_entries()
                .find(|(a, _)| a.contains(&target.parent().identity()))
                .map(|(a, _)| a)
                .unwrap_or_default();
            return Err(Error::NotNormalized(at));
        }
        let domain = target.domain();
        if target.is_zero() {
            return Ok(Solution::Witness(Cochain::zero(domain, n - 1)));
        }
        let h = domain.order() as u64;
        let modulus = target.denominator_lcm().lcm(&h) * h;
        let fac = self.factorization(domain.as_group(), n - 1, modulus);
        let rhs: Vec<u64> = fac
            .matrix
            .row_tuples
            .iter()
            .map(|t| {
                target
                    .at_local(t)
                    .to_residue(modulus)
                    .expect("modulus covers denominators")
            })
            .collect();
        match fac.snf.solve(&rhs) {
            Ok(x) => {
                let h = domain.order();
                let mut values = vec![QZ::ZERO; h.pow(n as u32 - 1)];
                for (t, &r) in fac.matrix.col_tuples.iter().zip(&x) {
                    values[flat(t, h)] = QZ::from_residue(r, modulus);
                }
                let f = Cochain::from_local_fn(domain, n - 1, |t| values[flat(t, h)]);
                if &coboundary(&f) != target {
                    return Err(Error::InternalInvariantBroken(format!(
                        "solver witness fails df = target on {domain:?}"
                    )));
                }
                Ok(Solution::Witness(f))
            }
            Err(row) => {
                let members = domain.members();
                // transformed rows past the matrix rows cannot occur; label by the nearest row tuple
                let local = fac.matrix.row_tuples.get(row).cloned().unwrap_or_default();
                let tuple = local.iter().map(|&l| members[l]).collect();
                log::debug!("target is not a coboundary: obstruction in transformed row {row}");
                Ok(Solution::Obstructed { row, tuple })
            }
        }
    }

    pub fn solve_coboundary(&self, target: &Cochain) -> Result<Option<Cochain>> {
        Ok(self.solve(target)?.witness())
    }

    pub fn is_cohomologous(&self, a: &Cochain, b: &Cochain) -> Result<Option<Cochain>> {
        let diff = combine(a, b, (1, -1))?;
        self.solve_coboundary(&diff)
    }

    /// Order of `H²(H, Q/Z)`.
    pub fn h2_order(&self, domain: &Subgroup) -> u64 {
        self.h2_factors(domain).iter().product()
    }

    /// Nontrivial invariant factors of `H²(H, Q/Z)`.
    pub fn h2_factors(&self, domain: &Subgroup) -> Vec<u64> {
        let h = domain.order() as u64;
        if h == 1 {
            return Vec::new();
        }
        let fac = self.factorization(domain.as_group(), 2, h * h);
        fac.snf.diagonal().iter().copied().filter(|&d| d > 1).collect()
    }

    /// One normalized 2-cocycle per class of `H²(H, Q/Z)`, zero first.
    pub fn h2_representatives(&self, domain: &Subgroup) -> Result<Vec<Cochain>> {
        let h = domain.order();
        if h == 1 {
            return Ok(vec![Cochain::zero(domain, 2)]);
        }
        let modulus = (h * h) as u64;
        let fac = self.factorization(domain.as_group(), 2, modulus);
        let diag = fac.snf.diagonal();
        let factors: Vec<(usize, u64)> = diag
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d > 1)
            .map(|(i, &d)| (i, d))
            .collect();
        if let Some(&(_, d)) = factors.iter().find(|&&(_, d)| !(h as u64).is_multiple_of(d)) {
            return Err(Error::InternalInvariantBroken(format!(
                "invariant factor {d} does not divide |H| = {h}"
            )));
        }
        let total: u64 = factors.iter().map(|&(_, d)| d).product();
        let mut reps = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; factors.len()];
        for _ in 0..total {
            let mut y = vec![0u64; fac.matrix.cols()];
            for (&(i, d), &a) in factors.iter().zip(&digits) {
                y[i] = a * (modulus / d);
            }
            let x = fac.snf.apply_right(&y);
            let mut values = vec![QZ::ZERO; h * h];
            for (t, &r) in fac.matrix.col_tuples.iter().zip(&x) {
                values[flat(t, h)] = QZ::from_residue(r, modulus);
            }
            reps.push(Cochain::from_local_fn(domain, 2, |t| values[flat(t, h)]));
            // lexicographic increment of the digit tuple
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                if digits[k] < factors[k].1 {
                    break;
                }
                digits[k] = 0;
            }
        }
        for (i, r) in reps.iter().enumerate() {
            if !is_cocycle(r) {
                return Err(Error::InternalInvariantBroken(format!(
                    "representative {i} is not a cocycle"
                )));
            }
            for s in &reps[..i] {
                if self.is_cohomologous(r, s)?.is_some() {
                    return Err(Error::InternalInvariantBroken(format!(
                        "representative {i} repeats an earlier class"
                    )));
                }
            }
        }
        Ok(reps)
    }
}

/// `f` with `df = target`, if the class of `target` is trivial.
pub fn solve_coboundary(target: &Cochain) -> Result<Option<Cochain>> {
    global().solve_coboundary(target)
}

pub fn is_cohomologous(a: &Cochain, b: &Cochain) -> Result<Option<Cochain>> {
    global().is_cohomologous(a, b)
}

pub fn h2_representatives(domain: &Subgroup) -> Result<Vec<Cochain>> {
    global().h2_representatives(domain)
}
