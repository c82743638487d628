//! Built-in group families: cyclic, dihedral, direct and semidirect products.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// `Z_n`, elements `a^k` at index `k`.
    Cyclic(usize),
    /// Dihedral group of order `n` (`n` even): `r^k s^f` at index `k + (n/2) f`.
    Dihedral(usize),
    /// `A × B`, pair `(a, b)` at index `a + |A| b`.
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    /// `N ⋊ C` with `action[c][n] = c ▷ n`; pair `(n, c)` at index `n + |N| c`.
    Semidirect {
        normal: Box<GroupSpec>,
        complement: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
}

pub fn builtin_group(spec: &GroupSpec) -> Result<Group> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Direct(a, b) => direct(&builtin_group(a)?, &builtin_group(b)?),
        GroupSpec::Semidirect {
            normal,
            complement,
            action,
        } => semidirect(&builtin_group(normal)?, &builtin_group(complement)?, action),
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{}", superscript(k)),
    }
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::BadDimensions("cyclic group of order 0".into()));
    }
    let names = (0..n)
        .map(|k| if k == 0 { "e".to_string() } else { power_name("a", k) })
        .collect();
    Group::from_fn(names, |i, j| (i + j) % n)
}

pub fn dihedral(n: usize) -> Result<Group> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::BadDimensions(format!(
            "dihedral group order must be even and positive, got {n}"
        )));
    }
    let m = n / 2;
    let names = (0..n)
        .map(|i| {
            let (k, f) = (i % m, i / m);
            let s = format!("{}{}", power_name("r", k), if f == 1 { "s" } else { "" });
            if s.is_empty() {
                "e".to_string()
            } else {
                s
            }
        })
        .collect();
    Group::from_fn(names, |a, b| {
        let (ka, fa) = (a % m, a / m);
        let (kb, fb) = (b % m, b / m);
        let k = if fa == 0 { (ka + kb) % m } else { (ka + m - kb) % m };
        k + m * ((fa + fb) % 2)
    })
}

pub fn direct(a: &Group, b: &Group) -> Result<Group> {
    let trivial: Vec<Vec<usize>> = vec![(0..a.order()).collect(); b.order()];
    semidirect(a, b, &trivial)
}

/// `N ⋊ C` with law `(n, c)(n', c') = (n · (c ▷ n'), c c')`.
pub fn semidirect(normal: &Group, complement: &Group, action: &[Vec<usize>]) -> Result<Group> {
    let (nn, nc) = (normal.order(), complement.order());
    if action.len() != nc || action.iter().any(|row| row.len() != nn) {
        return Err(Error::BadDimensions(format!("action must be {nc}x{nn}")));
    }
    for (c, row) in action.iter().enumerate() {
        let mut seen = vec![false; nn];
        for &x in row {
            if x >= nn || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAnAction(format!(
                    "{} does not act bijectively",
                    complement.name(c)
                )));
            }
        }
        for x in 0..nn {
            for y in 0..nn {
                if row[normal.mul(x, y)] != normal.mul(row[x], row[y]) {
                    return Err(Error::NotAnAction(format!(
                        "{} ▷ (-) is not a homomorphism at ({x}, {y})",
                        complement.name(c)
                    )));
                }
            }
        }
    }
    for x in 0..nn {
        if action[complement.identity()][x] != x {
            return Err(Error::NotAnAction("identity acts nontrivially".into()));
        }
        for c in 0..nc {
            for d in 0..nc {
                if action[complement.mul(c, d)][x] != action[c][action[d][x]] {
                    return Err(Error::NotAnAction(format!(
                        "action is not compatible with the product at ({c}, {d})"
                    )));
                }
            }
        }
    }
    let names = (0..nn * nc)
        .map(|i| format!("({},{})", normal.name(i % nn), complement.name(i / nn)))
        .collect();
    Group::from_fn(names, |a, b| {
        let (n1, c1) = (a % nn, a / nn);
        let (n2, c2) = (b % nn, b / nn);
        normal.mul(n1, action[c1][n2]) + nn * complement.mul(c1, c2)
    })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Direct(a, b) => write!(f, "direct({a},{b})"),
            GroupSpec::Semidirect { normal, complement, .. } => {
                write!(f, "semidirect({normal},{complement},<action>)")
            }
        }
    }
}

/// Parses `cyclic:n`, `dihedral:n`, `klein` and `direct(A,B)`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown group spec {s:?}"));
        if s == "klein" {
            return Ok(GroupSpec::Direct(
                Box::new(GroupSpec::Cyclic(2)),
                Box::new(GroupSpec::Cyclic(2)),
            ));
        }
        if let Some(n) = s.strip_prefix("cyclic:") {
            return n.trim().parse().map(GroupSpec::Cyclic).map_err(|_| bad());
        }
        if let Some(n) = s.strip_prefix("dihedral:") {
            return n.trim().parse().map(GroupSpec::Dihedral).map_err(|_| bad());
        }
        if let Some(inner) = s.strip_prefix("direct(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0usize;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                    ',' if depth == 0 => {
                        let a = inner[..i].parse()?;
                        let b = inner[i + 1..].parse()?;
                        return Ok(GroupSpec::Direct(Box::new(a), Box::new(b)));
                    }
                    _ => {}
                }
            }
        }
        Err(bad())
    }
}
