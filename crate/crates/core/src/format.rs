//! JSON interchange for groups, cochains and classification reports, plus
//! the named builtin groups and 3-cocycles.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::builtin::{builtin_group, cyclic, GroupSpec};
use crate::classify::{ClassificationReport, EquivalenceWitness, PairClass};
use crate::cochain::{is_cocycle, Cochain, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::kac_paljutkin::{kp_group, kp_omega};
use crate::pointed::{validate_pair, PointedCategory};
use crate::qz::QZ;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &Group) -> GroupJson {
        GroupJson {
            order: g.order(),
            names: g.names().to_vec(),
            table: g.table_rows(),
        }
    }

    pub fn to_group(&self) -> Result<Group> {
        Group::from_table(self.order, self.table.clone(), self.names.clone())
    }
}

/// A group given by builtin name or inline table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupJson),
}

impl GroupRef {
    pub fn resolve(&self) -> Result<Group> {
        match self {
            GroupRef::Name(n) => named_group(n),
            GroupRef::Inline(j) => j.to_group(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub args: Vec<usize>,
    pub val: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub group: GroupRef,
    /// Members of the domain subgroup; the whole group when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    pub degree: usize,
    pub values: Vec<ValueJson>,
}

/// `kp`, `cyclic:n`, `dihedral:n`, `klein`, `direct(A,B)`.
pub fn named_group(name: &str) -> Result<Group> {
    match name.trim() {
        "kp" => kp_group(),
        other => builtin_group(&other.parse::<GroupSpec>()?),
    }
}

pub fn values_json(c: &Cochain) -> Vec<ValueJson> {
    c.nonzero_entries()
        .map(|(args, v)| ValueJson {
            args,
            val: v.to_string(),
        })
        .collect()
}

pub fn cochain_to_json(c: &Cochain, group: GroupRef) -> CochainJson {
    CochainJson {
        group,
        subgroup: (!c.domain().is_full()).then(|| c.domain().members().to_vec()),
        degree: c.degree(),
        values: values_json(c),
    }
}

/// Reads `values` into a cochain on `domain`, rejecting out-of-domain
/// arguments, duplicates, malformed values and nonzero identity slots.
pub fn cochain_from_values(domain: &Subgroup, degree: usize, values: &[ValueJson]) -> Result<Cochain> {
    if degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(degree));
    }
    let mut c = Cochain::zero(domain, degree);
    let mut seen = std::collections::BTreeSet::new();
    for v in values {
        if v.args.len() != degree {
            return Err(Error::Parse(format!("{:?} is not a {degree}-tuple", v.args)));
        }
        if let Some(a) = v.args.iter().find(|&&a| !domain.contains(a)) {
            return Err(Error::Parse(format!(
                "argument {a} of {:?} is outside the domain",
                v.args
            )));
        }
        if !seen.insert(v.args.clone()) {
            return Err(Error::Parse(format!("duplicate entry for {:?}", v.args)));
        }
        let val: QZ = v.val.parse()?;
        c.set(&v.args, val).map_err(|e| match e {
            Error::NotNormalized(t) => Error::Parse(format!("nonzero value at identity slot {t:?}")),
            e => e,
        })?;
    }
    Ok(c)
}

pub fn cochain_from_json(j: &CochainJson, group: &Group) -> Result<Cochain> {
    let domain = match &j.subgroup {
        Some(m) => Subgroup::new(group, m.iter().copied())?,
        None => Subgroup::full(group),
    };
    cochain_from_values(&domain, j.degree, &j.values)
}

/// Parses a cochain document, resolving its embedded group.
pub fn parse_cochain(text: &str) -> Result<Cochain> {
    let j: CochainJson = serde_json::from_str(text)?;
    let g = j.group.resolve()?;
    cochain_from_json(&j, &g)
}

/// `trivial`, `kp` (on the Kac–Paljutkin group), or `cyclic:n:q` on `Z_n`:
/// `ω(a^i, a^j, a^k) = q·i·⌊(j + k)/n⌋ / n`.
pub fn named_omega(name: &str, group: &Group) -> Result<Cochain> {
    let full = Subgroup::full(group);
    let name = name.trim();
    let omega = if name == "trivial" {
        Cochain::zero(&full, 3)
    } else if name == "kp" {
        if group.table_rows() != kp_group()?.table_rows() {
            return Err(Error::Parse("omega `kp` needs the group `kp`".into()));
        }
        kp_omega(group)
    } else if let Some(rest) = name.strip_prefix("cyclic:") {
        let (n, q) = rest
            .split_once(':')
            .and_then(|(n, q)| Some((n.parse::<usize>().ok()?, q.parse::<i64>().ok()?)))
            .ok_or_else(|| Error::Parse(format!("expected cyclic:n:q, got {name:?}")))?;
        if n == 0 || group.table_rows() != cyclic(n)?.table_rows() {
            return Err(Error::Parse(format!("omega {name:?} needs the group cyclic:{n}")));
        }
        Cochain::on_group(group, 3, |t| {
            let (i, j, k) = (t[0] as i64, t[1] as i64, t[2] as i64);
            QZ::new(q * i * ((j + k) / n as i64), n as i64)
        })
    } else {
        return Err(Error::Parse(format!("unknown omega {name:?}")));
    };
    if !is_cocycle(&omega) {
        return Err(Error::NotACocycle(format!("builtin omega {name:?}")));
    }
    Ok(omega)
}

/// Hex SHA-256 of the group table and the nonzero values of `ω`.
pub fn omega_hash(omega: &Cochain) -> String {
    #[derive(Serialize)]
    struct Canon<'a> {
        table: Vec<Vec<usize>>,
        subgroup: &'a [usize],
        degree: usize,
        values: Vec<ValueJson>,
    }
    let canon = Canon {
        table: omega.parent().table_rows(),
        subgroup: omega.domain().members(),
        degree: omega.degree(),
        values: values_json(omega),
    };
    let bytes = serde_json::to_vec(&canon).expect("serializable");
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaJson {
    pub sha256: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub subgroup: Vec<usize>,
    pub rank: usize,
    pub psi: Vec<ValueJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub from: usize,
    pub g: usize,
    pub f: Vec<ValueJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub representative: usize,
    pub members: Vec<usize>,
    pub rank: usize,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub group: GroupJson,
    pub omega: OmegaJson,
    pub pairs: Vec<PairJson>,
    pub classes: Vec<ClassJson>,
    pub class_count: usize,
    pub metadata: serde_json::Map<String, serde_json::Value>,
}

pub const DUAL_NOTE: &str = "pairs (H, psi) label indecomposable module categories over C(G, omega); \
the same classes label module categories over any group-theoretical category C(G, omega, H', psi') \
through the dual correspondence (not computed here)";

pub fn report_to_json(report: &ClassificationReport, omega_source: &str) -> ReportJson {
    let cat = &report.category;
    let pairs = report
        .pairs
        .iter()
        .map(|p| PairJson {
            subgroup: p.subgroup().members().to_vec(),
            rank: p.rank(),
            psi: values_json(p.psi()),
        })
        .collect();
    let classes = report
        .classes
        .iter()
        .map(|c| ClassJson {
            representative: c.representative,
            members: c.members.clone(),
            rank: c.rank(&report.pairs),
            witnesses: c
                .witnesses
                .iter()
                .map(|(from, w)| WitnessJson {
                    from: *from,
                    g: w.g,
                    f: values_json(&w.f),
                })
                .collect(),
        })
        .collect();
    let mut metadata = serde_json::Map::new();
    metadata.insert("group_order".into(), cat.group().order().into());
    metadata.insert("pair_count".into(), report.pairs.len().into());
    metadata.insert("note".into(), DUAL_NOTE.into());
    ReportJson {
        group: GroupJson::from_group(cat.group()),
        omega: OmegaJson {
            sha256: omega_hash(cat.omega()),
            source: omega_source.to_string(),
        },
        pairs,
        classes,
        class_count: report.class_count(),
        metadata,
    }
}

/// Rebuilds a report against `cat` and re-verifies every pair and witness.
pub fn report_from_json(j: &ReportJson, cat: &PointedCategory) -> Result<ClassificationReport> {
    if GroupJson::from_group(cat.group()).table != j.group.table {
        return Err(Error::CategoryMismatch);
    }
    if omega_hash(cat.omega()) != j.omega.sha256 {
        return Err(Error::CategoryMismatch);
    }
    let group = cat.group();
    let pairs = j
        .pairs
        .iter()
        .map(|p| {
            let h = Subgroup::new(group, p.subgroup.iter().copied())?;
            let psi = cochain_from_values(&h, 2, &p.psi)?;
            validate_pair(cat, &h, psi)
        })
        .collect::<Result<Vec<_>>>()?;
    let classes = j
        .classes
        .iter()
        .map(|c| {
            let rep = pairs
                .get(c.representative)
                .ok_or_else(|| Error::Parse(format!("representative {} out of range", c.representative)))?;
            let witnesses = c
                .witnesses
                .iter()
                .map(|w| {
                    let f = cochain_from_values(rep.subgroup(), 1, &w.f)?;
                    Ok((w.from, EquivalenceWitness { g: w.g, f }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PairClass {
                representative: c.representative,
                members: c.members.clone(),
                witnesses,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if j.class_count != classes.len() {
        return Err(Error::Parse("class_count disagrees with classes".into()));
    }
    let report = ClassificationReport {
        category: cat.clone(),
        pairs,
        classes,
    };
    report.verify()?;
    Ok(report)
}
