//! Loading groups, cocycles, subgroups and `(H, ψ)` labels from the command line.

use std::fs;
use std::path::Path;

use modcat::format::{
    cochain_from_json, cochain_from_values, named_group, named_omega, CochainJson, GroupJson, ValueJson,
};
use modcat::{validate_pair, AlgebraPair, Cochain, Group, PointedCategory, Subgroup};
use serde_json::Value;

use crate::CliError;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))
}

/// `builtin:<spec>` or a path to a `{order, names, table}` document.
pub fn load_group(arg: &str) -> Result<Group, CliError> {
    if let Some(spec) = arg.strip_prefix("builtin:") {
        return Ok(named_group(spec)?);
    }
    if !Path::new(arg).exists() {
        return Err(CliError::Input(format!(
            "{arg:?} is neither builtin:<spec> nor an existing file"
        )));
    }
    let j: GroupJson = serde_json::from_str(&read(arg)?).map_err(modcat::Error::from)?;
    Ok(j.to_group()?)
}

fn check_same_group(j: &CochainJson, group: &Group) -> Result<(), CliError> {
    let theirs = j.group.resolve()?;
    if theirs.table_rows() != group.table_rows() {
        return Err(CliError::Input("cochain file refers to a different group".into()));
    }
    Ok(())
}

/// A cochain document whose group must coincide with `group`.
pub fn load_cochain(path: &str, group: &Group) -> Result<Cochain, CliError> {
    let j: CochainJson = serde_json::from_str(&read(path)?).map_err(modcat::Error::from)?;
    check_same_group(&j, group)?;
    Ok(cochain_from_json(&j, group)?)
}

/// The 3-cochain named by `--omega`, without the cocycle check for files.
pub fn load_omega(arg: Option<&str>, group_arg: &str, group: &Group) -> Result<(Cochain, String), CliError> {
    let name = match arg {
        Some(a) => a.to_string(),
        None if group_arg.trim() == "builtin:kp" => "kp".to_string(),
        None => "trivial".to_string(),
    };
    if let Some(path) = name.strip_prefix('@') {
        let omega = load_cochain(path, group)?;
        if omega.degree() != 3 || !omega.domain().is_full() {
            return Err(CliError::Input("omega must be a 3-cochain on the whole group".into()));
        }
        return Ok((omega, format!("file:{path}")));
    }
    Ok((named_omega(&name, group)?, name))
}

pub fn load_category(
    omega_arg: Option<&str>,
    group_arg: &str,
    group: &Group,
) -> Result<(PointedCategory, String), CliError> {
    let (omega, source) = load_omega(omega_arg, group_arg, group)?;
    Ok((PointedCategory::new(group, omega)?, source))
}

/// An element by index or by name.
pub fn element(group: &Group, token: &str) -> Result<usize, CliError> {
    let token = token.trim();
    if let Some(i) = group.index_of(token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < group.order() => Ok(i),
        _ => Err(CliError::Input(format!(
            "no element {token:?} in a group of order {}",
            group.order()
        ))),
    }
}

/// `full`, `trivial`, or `[a, b, …]` with elements by index or name.
pub fn subgroup(group: &Group, arg: &str) -> Result<Subgroup, CliError> {
    match arg.trim() {
        "full" => Ok(Subgroup::full(group)),
        "trivial" => Ok(Subgroup::trivial(group)),
        s => {
            let inner = s
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| CliError::Input(format!("expected [elements], got {s:?}")))?;
            let members = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| element(group, t))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Subgroup::new(group, members)?)
        }
    }
}

/// `ψ` from `zero` or `@file`, where the file holds a cochain document or a bare value list.
fn psi(group: &Group, h: &Subgroup, arg: &str) -> Result<Cochain, CliError> {
    let arg = arg.trim();
    if arg == "zero" {
        return Ok(Cochain::zero(h, 2));
    }
    let path = arg
        .strip_prefix('@')
        .ok_or_else(|| CliError::Input(format!("psi must be `zero` or `@file`, got {arg:?}")))?;
    let doc: Value = serde_json::from_str(&read(path)?).map_err(modcat::Error::from)?;
    let values: Vec<ValueJson> = if doc.is_array() {
        serde_json::from_value(doc).map_err(modcat::Error::from)?
    } else {
        let j: CochainJson = serde_json::from_value(doc).map_err(modcat::Error::from)?;
        check_same_group(&j, group)?;
        if j.degree != 2 {
            return Err(CliError::Input(format!("psi must have degree 2, got {}", j.degree)));
        }
        if let Some(m) = &j.subgroup {
            if Subgroup::new(group, m.iter().copied())? != *h {
                return Err(CliError::Input("psi file is defined on a different subgroup".into()));
            }
        }
        j.values
    };
    Ok(cochain_from_values(h, 2, &values)?)
}

/// `full:zero`, `full:@file`, or `H=[…];psi=zero|@file`.
pub fn pair(cat: &PointedCategory, arg: &str) -> Result<AlgebraPair, CliError> {
    let group = cat.group();
    let (h, psi_arg) = if let Some((h, p)) = arg.split_once(';') {
        let h = h
            .trim()
            .strip_prefix("H=")
            .ok_or_else(|| CliError::Input(format!("expected H=[…], got {h:?}")))?;
        let p = p
            .trim()
            .strip_prefix("psi=")
            .ok_or_else(|| CliError::Input(format!("expected psi=…, got {p:?}")))?;
        (subgroup(group, h)?, p)
    } else {
        let (h, p) = arg
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("cannot read pair {arg:?}")))?;
        (subgroup(group, h)?, p)
    };
    let psi = psi(group, &h, psi_arg)?;
    Ok(validate_pair(cat, &h, psi)?)
}
