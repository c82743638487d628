//! Classification of module categories over `C(G, ω)`: enumerate the
//! labels `(H, ψ)` and partition them by the equivalence criterion
//! `H = ᵍL` and `[(−ξ + ψᵍ + Ω_g)|_L] = 0`.

use rayon::prelude::*;

use crate::cochain::{coboundary, combine, conjugate_cochain, restrict, Cochain};
use crate::cohomology;
use crate::error::{Error, Result};
use crate::group::{subgroups, Subgroup};
use crate::pointed::{validate_pair, AlgebraPair, PointedCategory};

pub const DEFAULT_MAX_ORDER: usize = 16;

/// Evidence that `(H, ψ) ~ (L, ξ)`: `H = ᵍL` and `df = (−ξ + ψᵍ + Ω_g)|_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub g: usize,
    /// 1-cochain on `L`.
    pub f: Cochain,
}

/// `(−ξ + ψᵍ + Ω_g)|_L`, or `None` when `H ≠ ᵍL`.
pub fn equivalence_target(a: &AlgebraPair, b: &AlgebraPair, g: usize) -> Result<Option<Cochain>> {
    let cat = a.category();
    if !cat.same_as(b.category()) {
        return Err(Error::CategoryMismatch);
    }
    let l = b.subgroup();
    if l.conjugate(g) != *a.subgroup() {
        return Ok(None);
    }
    let psi_g = conjugate_cochain(a.psi(), g);
    let omega_g = restrict(cat.big_omega(g), l)?;
    let t = combine(&combine(&psi_g, b.psi(), (1, -1))?, &omega_g, (1, 1))?;
    Ok(Some(t))
}

impl EquivalenceWitness {
    pub fn verify(&self, a: &AlgebraPair, b: &AlgebraPair) -> bool {
        if self.g >= a.category().group().order() || self.f.degree() != 1 || self.f.domain() != b.subgroup() {
            return false;
        }
        match equivalence_target(a, b, self.g) {
            Ok(Some(t)) => coboundary(&self.f) == t,
            _ => false,
        }
    }
}

/// First `g` (in index order) witnessing `a ~ b`, if any.
pub fn equivalent_pairs(a: &AlgebraPair, b: &AlgebraPair) -> Result<Option<EquivalenceWitness>> {
    for g in a.category().group().elements() {
        if let Some(target) = equivalence_target(a, b, g)? {
            if let Some(f) = cohomology::solve_coboundary(&target)? {
                return Ok(Some(EquivalenceWitness { g, f }));
            }
        }
    }
    Ok(None)
}

/// Subgroups on which `ω` restricts to a coboundary, each with one `ψ₀`, `dψ₀ = ω|_H`.
pub fn admissible_subgroups(cat: &PointedCategory) -> Result<Vec<(Subgroup, Cochain)>> {
    let mut out = Vec::new();
    for h in subgroups(cat.group()) {
        let target = restrict(cat.omega(), &h)?;
        if let Some(psi0) = cohomology::solve_coboundary(&target)? {
            out.push((h, psi0));
        }
    }
    Ok(out)
}

/// All labels `(H, ψ₀ + r)`, `r` running over `H²(H, Q/Z)` representatives.
pub fn enumerate_pairs(cat: &PointedCategory) -> Result<Vec<AlgebraPair>> {
    let mut pairs = Vec::new();
    for (h, psi0) in admissible_subgroups(cat)? {
        for r in cohomology::h2_representatives(&h)? {
            pairs.push(validate_pair(cat, &h, combine(&psi0, &r, (1, 1))?)?);
        }
    }
    Ok(pairs)
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Refuse groups larger than this.
    pub max_order: usize,
    /// Worker threads for pair comparisons; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_order: DEFAULT_MAX_ORDER,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    /// Index into the report's pairs.
    pub representative: usize,
    /// Ascending pair indices, representative included.
    pub members: Vec<usize>,
    /// `(member, witness from member to representative)` for every other member.
    pub witnesses: Vec<(usize, EquivalenceWitness)>,
}

impl PairClass {
    pub fn rank(&self, pairs: &[AlgebraPair]) -> usize {
        pairs[self.representative].rank()
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub category: PointedCategory,
    pub pairs: Vec<AlgebraPair>,
    pub classes: Vec<PairClass>,
}

impl ClassificationReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing pair `i`.
    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&i))
    }

    /// Re-checks every pair, the partition, and every witness.
    pub fn verify(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InternalInvariantBroken(m));
        for (i, p) in self.pairs.iter().enumerate() {
            if !p.category().same_as(&self.category) {
                return Err(Error::CategoryMismatch);
            }
            validate_pair(&self.category, p.subgroup(), p.psi().clone())
                .map_err(|e| Error::InternalInvariantBroken(format!("pair {i}: {e}")))?;
        }
        let mut seen = vec![false; self.pairs.len()];
        for (k, class) in self.classes.iter().enumerate() {
            if !class.members.contains(&class.representative) {
                return bad(format!("class {k} does not contain its representative"));
            }
            for &m in &class.members {
                if m >= seen.len() || std::mem::replace(&mut seen[m], true) {
                    return bad(format!("pair {m} is listed twice or out of range"));
                }
            }
            let mut covered: Vec<usize> = class.witnesses.iter().map(|(m, _)| *m).collect();
            covered.push(class.representative);
            covered.sort_unstable();
            if covered != class.members {
                return bad(format!("class {k} witnesses do not cover its members"));
            }
            let rep = &self.pairs[class.representative];
            for (m, w) in &class.witnesses {
                if !w.verify(&self.pairs[*m], rep) {
                    return bad(format!("witness from pair {m} to {} fails", class.representative));
                }
            }
        }
        if let Some(m) = seen.iter().position(|s| !s) {
            return bad(format!("pair {m} is in no class"));
        }
        Ok(())
    }
}

pub fn classify(cat: &PointedCategory) -> Result<ClassificationReport> {
    classify_with(cat, &ClassifyOptions::default())
}

pub fn classify_with(cat: &PointedCategory, options: &ClassifyOptions) -> Result<ClassificationReport> {
    let order = cat.group().order();
    if order > options.max_order {
        return Err(Error::SizeLimitExceeded {
            order,
            limit: options.max_order,
        });
    }
    match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InternalInvariantBroken(format!("thread pool: {e}")))?
            .install(|| run(cat)),
        None => run(cat),
    }
}

fn canonical_key(p: &AlgebraPair) -> (&[usize], &[crate::qz::QZ]) {
    (p.subgroup().members(), p.psi().value_sequence())
}

fn run(cat: &PointedCategory) -> Result<ClassificationReport> {
    let pairs = enumerate_pairs(cat)?;
    log::info!("{} labels to classify", pairs.len());
    let grp = cat.group();
    let conjugate = |a: &Subgroup, b: &Subgroup| grp.elements().any(|g| b.conjugate(g) == *a);

    // Grow classes one label at a time. The relation is an equivalence, so a
    // label joins at most one existing class, found by testing its first member.
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        let hit = blocks
            .par_iter()
            .enumerate()
            .filter(|(_, b)| {
                let q = &pairs[b[0]];
                q.subgroup().order() == p.subgroup().order() && conjugate(p.subgroup(), q.subgroup())
            })
            .map(|(k, b)| equivalent_pairs(p, &pairs[b[0]]).map(|w| w.map(|_| k)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect::<Vec<_>>();
        match hit.as_slice() {
            [] => blocks.push(vec![i]),
            [k] => blocks[*k].push(i),
            _ => {
                return Err(Error::InternalInvariantBroken(format!(
                    "label {i} is equivalent to several classes"
                )))
            }
        }
    }

    let classes = blocks
        .into_par_iter()
        .map(|members| {
            let rep = *members
                .iter()
                .min_by(|&&a, &&b| canonical_key(&pairs[a]).cmp(&canonical_key(&pairs[b])))
                .expect("blocks are nonempty");
            let witnesses = members
                .iter()
                .filter(|&&m| m != rep)
                .map(|&m| {
                    let w = equivalent_pairs(&pairs[m], &pairs[rep])?
                        .ok_or_else(|| Error::InternalInvariantBroken(format!("no witness from label {m} to {rep}")))?;
                    Ok((m, w))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PairClass {
                representative: rep,
                members,
                witnesses,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut classes = classes;
    classes.sort_by_key(|c| c.representative);

    let report = ClassificationReport {
        category: cat.clone(),
        pairs,
        classes,
    };
    report.verify()?;
    Ok(report)
}
