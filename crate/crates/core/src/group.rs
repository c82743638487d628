//! Finite groups given by multiplication tables, and their subgroups.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

struct GroupData {
    order: usize,
    /// Row-major: `table[i * order + j]` is the index of `g_i * g_j`.
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

/// A finite group stored as an explicit multiplication table.
///
/// Cheap to clone; all clones share the same table.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl Group {
    /// Validates `table` as a group law and computes identity and inverses.
    pub fn from_table(order: usize, table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Group> {
        if order == 0 {
            return Err(Error::BadDimensions("order must be positive".into()));
        }
        if table.len() != order || table.iter().any(|row| row.len() != order) {
            return Err(Error::BadDimensions(format!("table must be {order}x{order}")));
        }
        if names.len() != order {
            return Err(Error::BadDimensions(format!(
                "expected {order} names, got {}",
                names.len()
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != order {
            return Err(Error::BadDimensions("element names must be distinct".into()));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&x| x >= order) {
            return Err(Error::BadDimensions(format!("table entry {bad} out of range")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;

        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }

        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAGroup(format!("associativity fails for ({a}, {b}, {c})")));
                    }
                }
            }
        }

        Ok(Group(Arc::new(GroupData {
            order,
            table: flat,
            identity,
            inverse,
            names,
        })))
    }

    /// Builds a group from a multiplication function on `0..order`.
    pub fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Group> {
        let order = names.len();
        let table = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        Group::from_table(order, table, names)
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }

    /// `^g x = g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.0.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.0.table.chunks(self.0.order).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn flat_table(&self) -> &[usize] {
        &self.0.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Same table (names are cosmetic and ignored).
    pub fn same_as(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.table == other.0.table
    }

    /// Relabels elements: element `i` of `self` becomes element `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Group> {
        let n = self.order();
        if perm.len() != n || perm.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::BadDimensions("relabeling must be a permutation".into()));
        }
        let mut back = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            back[p] = i;
        }
        let names = back.iter().map(|&i| self.name(i).to_string()).collect();
        Group::from_fn(names, |a, b| perm[self.mul(back[a], back[b])])
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("names", &self.0.names)
            .finish()
    }
}

struct SubgroupData {
    parent: Group,
    members: Vec<usize>,
    /// The subgroup as a group in its own right, indexed by position in `members`.
    local: Group,
    position: Vec<Option<usize>>,
}

/// A subgroup of a parent group, in canonical form (sorted members).
///
/// Two subgroups are equal iff they have the same parent table and the same
/// member sequence. The ordering is canonical: by size, then lexicographic.
#[derive(Clone)]
pub struct Subgroup(Arc<SubgroupData>);

impl Subgroup {
    /// Checks closure; `members` may be given in any order.
    pub fn new(parent: &Group, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::NotASubgroup(format!("element {bad} out of range")));
        }
        if !set.contains(&parent.identity()) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed: {a}*{b}")));
                }
            }
        }
        Ok(Self::from_sorted_unchecked(parent, set.into_iter().collect()))
    }

    fn from_sorted_unchecked(parent: &Group, members: Vec<usize>) -> Subgroup {
        let mut position = vec![None; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = Some(i);
        }
        let n = members.len();
        let table: Vec<usize> = members
            .iter()
            .flat_map(|&a| members.iter().map(move |&b| (a, b)))
            .map(|(a, b)| position[parent.mul(a, b)].expect("closed subgroup"))
            .collect();
        let local_identity = position[parent.identity()].expect("identity in subgroup");
        let inverse = members
            .iter()
            .map(|&a| position[parent.inv(a)].expect("closed under inverse"))
            .collect();
        let names = members.iter().map(|&m| parent.name(m).to_string()).collect();
        let local = Group(Arc::new(GroupData {
            order: n,
            table,
            identity: local_identity,
            inverse,
            names,
        }));
        Subgroup(Arc::new(SubgroupData {
            parent: parent.clone(),
            members,
            local,
            position,
        }))
    }

    pub fn full(parent: &Group) -> Subgroup {
        Self::from_sorted_unchecked(parent, parent.elements().collect())
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Self::from_sorted_unchecked(parent, vec![parent.identity()])
    }

    /// The subgroup generated by `generators`.
    pub fn generated_by(parent: &Group, generators: &[usize]) -> Subgroup {
        let mut seen = vec![false; parent.order()];
        let mut queue = VecDeque::from([parent.identity()]);
        seen[parent.identity()] = true;
        while let Some(x) = queue.pop_front() {
            for &s in generators {
                let y = parent.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let members = (0..parent.order()).filter(|&i| seen[i]).collect();
        Self::from_sorted_unchecked(parent, members)
    }

    pub fn parent(&self) -> &Group {
        &self.0.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.0.members
    }

    pub fn order(&self) -> usize {
        self.0.members.len()
    }

    /// `[G : H]`.
    pub fn index(&self) -> usize {
        self.parent().order() / self.order()
    }

    pub fn as_group(&self) -> &Group {
        &self.0.local
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.position.get(x).is_some_and(|p| p.is_some())
    }

    /// Position of parent element `x` in `members()`.
    #[inline]
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.0.position.get(x).copied().flatten()
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent().order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent().same_as(other.parent()) && self.members().iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.parent().same_as(other.parent()) {
            return Err(Error::GroupMismatch);
        }
        let members = self.members().iter().copied().filter(|&x| other.contains(x)).collect();
        Ok(Self::from_sorted_unchecked(self.parent(), members))
    }

    /// `^g H = { g h g⁻¹ : h ∈ H }`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let parent = self.parent();
        let mut members: Vec<usize> = self.members().iter().map(|&h| parent.conj(g, h)).collect();
        members.sort_unstable();
        Self::from_sorted_unchecked(parent, members)
    }

    pub fn is_normal(&self) -> bool {
        self.parent().elements().all(|g| self.conjugate(g) == *self)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.members() == other.members() && self.parent().same_as(other.parent()))
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), self.members()).cmp(&(other.order(), other.members()))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members())
    }
}

/// `^g L`, as a free function mirroring [`Subgroup::conjugate`].
pub fn conjugate_subgroup(subgroup: &Subgroup, g: usize) -> Subgroup {
    subgroup.conjugate(g)
}

/// All subgroups of `group` in canonical order (size, then member sequence).
///
/// Breadth-first: every subgroup is reached from the trivial one by adjoining
/// one element at a time, so closing each known subgroup under each extra
/// element enumerates them all.
pub fn subgroups(group: &Group) -> Vec<Subgroup> {
    let trivial = Subgroup::trivial(group);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([trivial.members().to_vec()]);
    let mut queue = VecDeque::from([trivial]);
    while let Some(sub) = queue.pop_front() {
        for g in group.elements() {
            if sub.contains(g) {
                continue;
            }
            let mut gens = sub.members().to_vec();
            gens.push(g);
            let bigger = Subgroup::generated_by(group, &gens);
            if found.insert(bigger.members().to_vec()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut all: Vec<Subgroup> = found
        .into_iter()
        .map(|m| Subgroup::from_sorted_unchecked(group, m))
        .collect();
    all.sort();
    all
}

/// Partition of `subgroups(group)` into conjugacy classes. Each block is in
/// canonical order, so its first entry is the representative; blocks are
/// ordered by representative.
pub fn subgroup_conjugacy_classes(group: &Group) -> Vec<Vec<Subgroup>> {
    let all = subgroups(group);
    let mut assigned = vec![false; all.len()];
    let mut classes = Vec::new();
    for i in 0..all.len() {
        if assigned[i] {
            continue;
        }
        let orbit: BTreeSet<Subgroup> = group.elements().map(|g| all[i].conjugate(g)).collect();
        for (j, s) in all.iter().enumerate() {
            if orbit.contains(s) {
                assigned[j] = true;
            }
        }
        classes.push(orbit.into_iter().collect());
    }
    classes
}
