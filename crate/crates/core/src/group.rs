//! Finite groups: symmetric groups and explicit Cayley tables.
//!
//! Composition is left-to-right everywhere: `(g * h)(i) = h(g(i))`, i.e.
//! `g` acts first. Permutations are 0-indexed image arrays internally and
//! render in cycle notation on the symbols `1..N`.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use thiserror::Error;

/// Largest symmetric-group degree the crate will enumerate.
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

/// Largest Cayley-table order accepted; keeps the O(n^3) associativity
/// check and the closure routines at desk scale.
pub const MAX_CAYLEY_ORDER: usize = 360;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("element does not belong to this group")]
    Mismatch,
    #[error("symmetric group degree {0} is outside 1..={MAX_SYMMETRIC_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("invalid permutation image array: {0:?}")]
    InvalidPermutation(Vec<u8>),
    #[error("invalid cayley table: {0}")]
    InvalidCayley(String),
    #[error("cayley table file {path}: {message}")]
    CayleyFile { path: String, message: String },
    #[error("subgroup is not contained in the claimed ambient subgroup")]
    NotContained,
}

/// A group element handle: an image array for permutations, an index into
/// the table for Cayley groups. The derived lexicographic order is the fixed
/// total order used for coset representatives and deterministic listings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Perm(Vec<u8>),
    Index(u32),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(images) => write_cycles(f, images),
            GroupElement::Index(i) => write!(f, "g{i}"),
        }
    }
}

fn write_cycles(f: &mut fmt::Formatter<'_>, images: &[u8]) -> fmt::Result {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut wrote = false;
    for start in 0..n {
        if seen[start] || images[start] as usize == start {
            seen[start] = true;
            continue;
        }
        write!(f, "(")?;
        let mut at = start;
        let mut first = true;
        while !seen[at] {
            seen[at] = true;
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", at + 1)?;
            first = false;
            at = images[at] as usize;
        }
        write!(f, ")")?;
        wrote = true;
    }
    if !wrote {
        write!(f, "()")?;
    }
    Ok(())
}

/// Validated multiplication table with precomputed inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    identity: u32,
    /// Row-major: `table[g * order + h]` is the product `g * h`
    /// (apply `g` first).
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl CayleyTable {
    fn lookup(&self, g: u32, h: u32) -> u32 {
        self.table[g as usize * self.order + h as usize]
    }
}

/// A finite group the shift machinery can enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteGroup {
    Symmetric { degree: usize },
    Cayley(CayleyTable),
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteGroup::Symmetric { degree } => write!(f, "S{degree}"),
            FiniteGroup::Cayley(t) => write!(f, "cayley[{}]", t.order),
        }
    }
}

impl FiniteGroup {
    pub fn symmetric(degree: usize) -> Result<Self, GroupError> {
        if degree == 0 || degree > MAX_SYMMETRIC_DEGREE {
            return Err(GroupError::DegreeOutOfRange(degree));
        }
        Ok(FiniteGroup::Symmetric { degree })
    }

    /// Builds a Cayley group from a raw table, checking the group axioms:
    /// Latin square rows/columns, a two-sided identity, and associativity
    /// (cubic scan, affordable for orders up to [`MAX_CAYLEY_ORDER`]).
    pub fn from_cayley_table(identity: usize, rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = rows.len();
        let bad = |m: String| Err(GroupError::InvalidCayley(m));
        if n == 0 {
            return bad("empty table".into());
        }
        if n > MAX_CAYLEY_ORDER {
            return bad(format!("order {n} exceeds limit {MAX_CAYLEY_ORDER}"));
        }
        if identity >= n {
            return bad(format!("identity index {identity} out of range"));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            for &v in row {
                if v >= n {
                    return bad(format!("entry {v} in row {i} out of range"));
                }
                table.push(v as u32);
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j] as usize;
                let c = table[j * n + i] as usize;
                if row_seen[r] {
                    return bad(format!("row {i} repeats entry {r}"));
                }
                if col_seen[c] {
                    return bad(format!("column {i} repeats entry {c}"));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for g in 0..n {
            if table[identity * n + g] as usize != g || table[g * n + identity] as usize != g {
                return bad(format!("index {identity} is not a two-sided identity"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let mut inverses = vec![0u32; n];
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g * n + h] as usize == identity)
                .expect("latin square row contains the identity");
            inverses[g] = inv as u32;
        }
        Ok(FiniteGroup::Cayley(CayleyTable {
            order: n,
            identity: identity as u32,
            table,
            inverses,
        }))
    }

    /// Parses the line-oriented Cayley table format:
    ///
    /// ```text
    /// order 4
    /// identity 0
    /// 0 1 2 3
    /// 1 2 3 0
    /// 2 3 0 1
    /// 3 0 1 2
    /// ```
    pub fn parse_cayley(text: &str) -> Result<Self, GroupError> {
        let bad = |m: String| Err(GroupError::InvalidCayley(m));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let order_line = match lines.next() {
            Some(l) => l.trim(),
            None => return bad("missing 'order' line".into()),
        };
        let order: usize = match order_line.strip_prefix("order ") {
            Some(rest) => match rest.trim().parse() {
                Ok(v) => v,
                Err(_) => return bad(format!("unreadable order {rest:?}")),
            },
            None => return bad(format!("expected 'order <n>', got {order_line:?}")),
        };
        let id_line = match lines.next() {
            Some(l) => l.trim(),
            None => return bad("missing 'identity' line".into()),
        };
        let identity: usize = match id_line.strip_prefix("identity ") {
            Some(rest) => match rest.trim().parse() {
                Ok(v) => v,
                Err(_) => return bad(format!("unreadable identity {rest:?}")),
            },
            None => return bad(format!("expected 'identity <i>', got {id_line:?}")),
        };
        let mut rows = Vec::with_capacity(order);
        for _ in 0..order {
            let line = match lines.next() {
                Some(l) => l,
                None => return bad(format!("expected {order} table rows")),
            };
            let row: Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse::<usize>).collect();
            match row {
                Ok(r) => rows.push(r),
                Err(_) => return bad(format!("unreadable table row {line:?}")),
            }
        }
        if lines.next().is_some() {
            return bad("trailing content after table rows".into());
        }
        Self::from_cayley_table(identity, rows)
    }

    pub fn load_cayley(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::CayleyFile {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse_cayley(&text).map_err(|e| GroupError::CayleyFile {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn order(&self) -> u64 {
        match self {
            FiniteGroup::Symmetric { degree } => (1..=*degree as u64).product(),
            FiniteGroup::Cayley(t) => t.order as u64,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            FiniteGroup::Symmetric { degree } => GroupElement::Perm((0..*degree as u8).collect()),
            FiniteGroup::Cayley(t) => GroupElement::Index(t.identity),
        }
    }

    /// All elements in the fixed total order (lexicographic image arrays for
    /// permutations, index order for tables).
    pub fn elements(&self) -> Vec<GroupElement> {
        match self {
            FiniteGroup::Symmetric { degree } => {
                let mut out = Vec::with_capacity(self.order() as usize);
                let mut current: Vec<u8> = (0..*degree as u8).collect();
                loop {
                    out.push(GroupElement::Perm(current.clone()));
                    if !next_permutation(&mut current) {
                        break;
                    }
                }
                out
            }
            FiniteGroup::Cayley(t) => (0..t.order as u32).map(GroupElement::Index).collect(),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (FiniteGroup::Symmetric { degree }, GroupElement::Perm(images)) => {
                images.len() == *degree && {
                    let mut seen = vec![false; *degree];
                    images.iter().all(|&i| {
                        let i = i as usize;
                        i < *degree && !std::mem::replace(&mut seen[i], true)
                    })
                }
            }
            (FiniteGroup::Cayley(t), GroupElement::Index(i)) => (*i as usize) < t.order,
            _ => false,
        }
    }

    /// Left-to-right product: `g` first, then `h`.
    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        if !self.contains(g) || !self.contains(h) {
            return Err(GroupError::Mismatch);
        }
        Ok(match (self, g, h) {
            (FiniteGroup::Symmetric { .. }, GroupElement::Perm(a), GroupElement::Perm(b)) => {
                GroupElement::Perm(a.iter().map(|&i| b[i as usize]).collect())
            }
            (FiniteGroup::Cayley(t), GroupElement::Index(a), GroupElement::Index(b)) => {
                GroupElement::Index(t.lookup(*a, *b))
            }
            _ => unreachable!("containment already checked"),
        })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        if !self.contains(g) {
            return Err(GroupError::Mismatch);
        }
        Ok(match (self, g) {
            (FiniteGroup::Symmetric { degree }, GroupElement::Perm(images)) => {
                let mut inv = vec![0u8; *degree];
                for (i, &img) in images.iter().enumerate() {
                    inv[img as usize] = i as u8;
                }
                GroupElement::Perm(inv)
            }
            (FiniteGroup::Cayley(t), GroupElement::Index(i)) => {
                GroupElement::Index(t.inverses[*i as usize])
            }
            _ => unreachable!("containment already checked"),
        })
    }

    /// `g` raised to an integer power (negative exponents via the inverse).
    pub fn power(&self, g: &GroupElement, n: i64) -> Result<GroupElement, GroupError> {
        let base = if n < 0 { self.inverse(g)? } else { g.clone() };
        let mut out = self.identity();
        for _ in 0..n.unsigned_abs() {
            out = self.compose(&out, &base)?;
        }
        Ok(out)
    }

    /// Least `r >= 1` with `g^r` the identity.
    pub fn element_order(&self, g: &GroupElement) -> Result<usize, GroupError> {
        if !self.contains(g) {
            return Err(GroupError::Mismatch);
        }
        let id = self.identity();
        let mut acc = g.clone();
        let mut r = 1usize;
        while acc != id {
            acc = self.compose(&acc, g)?;
            r += 1;
        }
        Ok(r)
    }

    /// Number of solutions of `g^r = id`; equivalently the number of
    /// homomorphisms from the cyclic group of order `r` into this group.
    pub fn elements_of_order_dividing(&self, r: u64) -> u64 {
        let id = self.identity();
        self.elements()
            .iter()
            .filter(|g| self.power_u64(g, r) == id)
            .count() as u64
    }

    fn power_u64(&self, g: &GroupElement, mut n: u64) -> GroupElement {
        let mut base = g.clone();
        let mut out = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                out = self.compose(&out, &base).expect("validated elements");
            }
            n >>= 1;
            if n > 0 {
                base = self.compose(&base, &base).expect("validated elements");
            }
        }
        out
    }

    /// Smallest subgroup containing `generators`; the result is sorted under
    /// the fixed element order. Empty input yields the trivial subgroup.
    pub fn subgroup_closure(&self, generators: &[GroupElement]) -> Result<Subgroup, GroupError> {
        for g in generators {
            if !self.contains(g) {
                return Err(GroupError::Mismatch);
            }
        }
        let mut seen: HashSet<GroupElement> = HashSet::new();
        seen.insert(self.identity());
        let mut frontier: Vec<GroupElement> = vec![self.identity()];
        while let Some(g) = frontier.pop() {
            for gen in generators {
                let next = self.compose(&g, gen)?;
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut elements: Vec<GroupElement> = seen.into_iter().collect();
        elements.sort();
        Ok(Subgroup { elements })
    }

    /// Representatives of the right cosets `H g` of `h` inside `k`, one per
    /// coset: the smallest member, listed in increasing order.
    pub fn right_cosets(
        &self,
        h: &Subgroup,
        k: &Subgroup,
    ) -> Result<Vec<GroupElement>, GroupError> {
        if !h.is_subset_of(k) {
            return Err(GroupError::NotContained);
        }
        let mut reps: Vec<GroupElement> = Vec::new();
        let mut assigned: HashSet<GroupElement> = HashSet::new();
        for g in k.elements() {
            if assigned.contains(g) {
                continue;
            }
            let mut coset: Vec<GroupElement> = Vec::with_capacity(h.order());
            for member in h.elements() {
                coset.push(self.compose(member, g)?);
            }
            let rep = coset.iter().min().expect("nonempty coset").clone();
            assigned.extend(coset);
            reps.push(rep);
        }
        reps.sort();
        debug_assert_eq!(reps.len() * h.order(), k.order());
        Ok(reps)
    }
}

/// Lexicographic successor in place; false when `perm` was the last one.
fn next_permutation(perm: &mut [u8]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// A subgroup materialized as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }
}
