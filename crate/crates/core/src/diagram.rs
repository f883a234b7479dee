//! Abstract syntax of Euler diagrams.
//!
//! A unitary diagram is stored as its contour labels, the zones that are drawn
//! and the subset of those zones that is shaded. Zones are identified by the
//! set of contours they lie inside; the out-set is always implicit. Missing
//! zones are never stored, they are whatever the contour powerset has that the
//! diagram does not.
//!
//! Compound diagrams are binary trees so that the nesting of conjunctions is
//! preserved: several tactics select the innermost conjunction and behave
//! differently on flat and deep trees.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid contour label `{0}`")]
    InvalidLabel(String),
    #[error("zone {zone} uses a contour the diagram does not declare")]
    UndeclaredContour { zone: Zone },
    #[error("shaded zone {zone} is not among the diagram's zones")]
    ShadedNotPresent { zone: Zone },
    #[error("the background zone () must be present")]
    MissingBackground,
    #[error("invalid path `{0}`")]
    InvalidPath(Path),
    #[error("implication nodes may only appear at the root of a goal")]
    NestedImplication,
}

/// Name of a contour, `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ContourLabel(String);

impl ContourLabel {
    pub fn new(name: impl Into<String>) -> Result<Self, DiagramError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(ContourLabel(name))
        } else {
            Err(DiagramError::InvalidLabel(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ContourLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse a list of names into labels. Mostly a convenience for tests and bindings.
pub fn labels<I, S>(names: I) -> Result<BTreeSet<ContourLabel>, DiagramError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    names.into_iter().map(ContourLabel::new).collect()
}

/// A zone, identified by the contours it is inside.
///
/// Zones order by the size of their in-set first and lexicographically after
/// that, so `() < (A) < (B) < (A B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Zone {
    in_set: BTreeSet<ContourLabel>,
}

impl Zone {
    pub fn background() -> Self {
        Zone::default()
    }

    pub fn new(in_set: BTreeSet<ContourLabel>) -> Self {
        Zone { in_set }
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, DiagramError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Zone::new(labels(names)?))
    }

    pub fn in_set(&self) -> &BTreeSet<ContourLabel> {
        &self.in_set
    }

    pub fn is_background(&self) -> bool {
        self.in_set.is_empty()
    }

    pub fn contains(&self, c: &ContourLabel) -> bool {
        self.in_set.contains(c)
    }

    pub fn with(&self, c: &ContourLabel) -> Zone {
        let mut in_set = self.in_set.clone();
        in_set.insert(c.clone());
        Zone { in_set }
    }

    pub fn without(&self, c: &ContourLabel) -> Zone {
        let mut in_set = self.in_set.clone();
        in_set.remove(c);
        Zone { in_set }
    }

    /// The part of the in-set that lies in `contours`.
    pub fn restrict(&self, contours: &BTreeSet<ContourLabel>) -> Zone {
        Zone {
            in_set: self.in_set.intersection(contours).cloned().collect(),
        }
    }
}

impl Ord for Zone {
    fn cmp(&self, other: &Self) -> Ordering {
        self.in_set
            .len()
            .cmp(&other.in_set.len())
            .then_with(|| self.in_set.cmp(&other.in_set))
    }
}

impl PartialOrd for Zone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.in_set.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// All `2^n` zones over `contours`, in zone order.
pub fn venn_zones(contours: &BTreeSet<ContourLabel>) -> BTreeSet<Zone> {
    let labels: Vec<&ContourLabel> = contours.iter().collect();
    assert!(labels.len() < 32, "too many contours for a Venn expansion");
    (0u32..(1 << labels.len()))
        .map(|mask| {
            Zone::new(
                labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, c)| (*c).clone())
                    .collect(),
            )
        })
        .collect()
}

/// A single Euler diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UnitaryDiagram {
    contours: BTreeSet<ContourLabel>,
    zones: BTreeSet<Zone>,
    shaded: BTreeSet<Zone>,
}

impl UnitaryDiagram {
    pub fn new(
        contours: BTreeSet<ContourLabel>,
        zones: BTreeSet<Zone>,
        shaded: BTreeSet<Zone>,
    ) -> Result<Self, DiagramError> {
        if let Some(zone) = zones.iter().find(|z| !z.in_set.is_subset(&contours)) {
            return Err(DiagramError::UndeclaredContour { zone: zone.clone() });
        }
        if let Some(zone) = shaded.iter().find(|z| !zones.contains(*z)) {
            return Err(DiagramError::ShadedNotPresent { zone: zone.clone() });
        }
        if !zones.contains(&Zone::background()) {
            return Err(DiagramError::MissingBackground);
        }
        Ok(UnitaryDiagram {
            contours,
            zones,
            shaded,
        })
    }

    /// The unshaded Venn-form diagram over `contours`.
    pub fn venn(contours: BTreeSet<ContourLabel>) -> Self {
        let zones = venn_zones(&contours);
        UnitaryDiagram {
            contours,
            zones,
            shaded: BTreeSet::new(),
        }
    }

    pub fn contours(&self) -> &BTreeSet<ContourLabel> {
        &self.contours
    }

    pub fn zones(&self) -> &BTreeSet<Zone> {
        &self.zones
    }

    pub fn shaded(&self) -> &BTreeSet<Zone> {
        &self.shaded
    }

    pub fn is_shaded(&self, z: &Zone) -> bool {
        self.shaded.contains(z)
    }

    pub fn is_present(&self, z: &Zone) -> bool {
        self.zones.contains(z)
    }

    /// Zones that are shaded or missing, i.e. denote the empty set.
    pub fn is_empty_zone(&self, z: &Zone) -> bool {
        !self.zones.contains(z) || self.shaded.contains(z)
    }

    pub fn missing_zones(&self) -> BTreeSet<Zone> {
        venn_zones(&self.contours)
            .into_iter()
            .filter(|z| !self.zones.contains(z))
            .collect()
    }

    pub fn is_venn_form(&self) -> bool {
        self.zones.len() == 1usize << self.contours.len()
    }
}

/// Structural invariants are already enforced by the constructor, so this
/// only exists for the free-function surface.
pub fn missing_zones(d: &UnitaryDiagram) -> BTreeSet<Zone> {
    d.missing_zones()
}

pub fn is_venn_form(d: &UnitaryDiagram) -> bool {
    d.is_venn_form()
}

/// One step of a [`Path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// Address of a subtree; the empty path is the whole diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Path(Vec<Direction>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn new(steps: Vec<Direction>) -> Self {
        Path(steps)
    }

    pub fn steps(&self) -> &[Direction] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, d: Direction) -> Path {
        let mut steps = self.0.clone();
        steps.push(d);
        Path(steps)
    }

    pub fn left(&self) -> Path {
        self.child(Direction::Left)
    }

    pub fn right(&self) -> Path {
        self.child(Direction::Right)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            f.write_str(match d {
                Direction::Left => "L",
                Direction::Right => "R",
            })?;
        }
        Ok(())
    }
}

/// A conjunction tree of unitary diagrams, optionally under one implication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CompoundDiagram {
    Unitary(UnitaryDiagram),
    Conjunction(Box<CompoundDiagram>, Box<CompoundDiagram>),
    Implication(Box<CompoundDiagram>, Box<CompoundDiagram>),
}

impl From<UnitaryDiagram> for CompoundDiagram {
    fn from(u: UnitaryDiagram) -> Self {
        CompoundDiagram::Unitary(u)
    }
}

impl CompoundDiagram {
    pub fn conj(left: impl Into<CompoundDiagram>, right: impl Into<CompoundDiagram>) -> Self {
        CompoundDiagram::Conjunction(Box::new(left.into()), Box::new(right.into()))
    }

    pub fn implies(
        antecedent: impl Into<CompoundDiagram>,
        consequent: impl Into<CompoundDiagram>,
    ) -> Self {
        CompoundDiagram::Implication(Box::new(antecedent.into()), Box::new(consequent.into()))
    }

    pub fn as_unitary(&self) -> Option<&UnitaryDiagram> {
        match self {
            CompoundDiagram::Unitary(u) => Some(u),
            _ => None,
        }
    }

    pub fn is_unitary(&self) -> bool {
        matches!(self, CompoundDiagram::Unitary(_))
    }

    /// Both children, if this is a conjunction of two unitary diagrams.
    pub fn as_unitary_pair(&self) -> Option<(&UnitaryDiagram, &UnitaryDiagram)> {
        match self {
            CompoundDiagram::Conjunction(l, r) => Some((l.as_unitary()?, r.as_unitary()?)),
            _ => None,
        }
    }

    pub fn has_implication(&self) -> bool {
        match self {
            CompoundDiagram::Unitary(_) => false,
            CompoundDiagram::Conjunction(l, r) => l.has_implication() || r.has_implication(),
            CompoundDiagram::Implication(..) => true,
        }
    }

    /// Implications may only sit at the root.
    pub fn validate(&self) -> Result<(), DiagramError> {
        match self {
            CompoundDiagram::Implication(a, c) if !a.has_implication() && !c.has_implication() => {
                Ok(())
            }
            d if !d.has_implication() => Ok(()),
            _ => Err(DiagramError::NestedImplication),
        }
    }

    /// Unitary leaves, left to right.
    pub fn unitaries(&self) -> Vec<&UnitaryDiagram> {
        let mut out = Vec::new();
        self.collect_unitaries(&mut out);
        out
    }

    fn collect_unitaries<'a>(&'a self, out: &mut Vec<&'a UnitaryDiagram>) {
        match self {
            CompoundDiagram::Unitary(u) => out.push(u),
            CompoundDiagram::Conjunction(l, r) | CompoundDiagram::Implication(l, r) => {
                l.collect_unitaries(out);
                r.collect_unitaries(out);
            }
        }
    }

    /// Paths of the unitary leaves, left to right.
    pub fn unitary_paths(&self) -> Vec<Path> {
        self.subtrees()
            .into_iter()
            .filter(|(_, d)| d.is_unitary())
            .map(|(p, _)| p)
            .collect()
    }

    /// Every subtree with its path, in pre-order (node before children, left before right).
    pub fn subtrees(&self) -> Vec<(Path, &CompoundDiagram)> {
        let mut out = Vec::new();
        self.collect_subtrees(Path::root(), &mut out);
        out
    }

    fn collect_subtrees<'a>(&'a self, here: Path, out: &mut Vec<(Path, &'a CompoundDiagram)>) {
        out.push((here.clone(), self));
        if let CompoundDiagram::Conjunction(l, r) | CompoundDiagram::Implication(l, r) = self {
            l.collect_subtrees(here.left(), out);
            r.collect_subtrees(here.right(), out);
        }
    }

    /// Union of all contour sets in the tree.
    pub fn contours(&self) -> BTreeSet<ContourLabel> {
        self.unitaries()
            .into_iter()
            .flat_map(|u| u.contours().iter().cloned())
            .collect()
    }

    pub fn subdiagram_at(&self, path: &Path) -> Result<&CompoundDiagram, DiagramError> {
        let mut node = self;
        for step in path.steps() {
            node = match (node, step) {
                (CompoundDiagram::Conjunction(l, _), Direction::Left)
                | (CompoundDiagram::Implication(l, _), Direction::Left) => l,
                (CompoundDiagram::Conjunction(_, r), Direction::Right)
                | (CompoundDiagram::Implication(_, r), Direction::Right) => r,
                (CompoundDiagram::Unitary(_), _) => {
                    return Err(DiagramError::InvalidPath(path.clone()))
                }
            };
        }
        Ok(node)
    }

    pub fn replace_at(
        &self,
        path: &Path,
        replacement: CompoundDiagram,
    ) -> Result<CompoundDiagram, DiagramError> {
        fn go(
            node: &CompoundDiagram,
            steps: &[Direction],
            replacement: CompoundDiagram,
        ) -> Option<CompoundDiagram> {
            let Some((first, rest)) = steps.split_first() else {
                return Some(replacement);
            };
            let rebuild = |l: CompoundDiagram, r: CompoundDiagram| match node {
                CompoundDiagram::Conjunction(..) => CompoundDiagram::conj(l, r),
                _ => CompoundDiagram::implies(l, r),
            };
            match node {
                CompoundDiagram::Unitary(_) => None,
                CompoundDiagram::Conjunction(l, r) | CompoundDiagram::Implication(l, r) => {
                    Some(match first {
                        Direction::Left => rebuild(go(l, rest, replacement)?, (**r).clone()),
                        Direction::Right => rebuild((**l).clone(), go(r, rest, replacement)?),
                    })
                }
            }
        }
        go(self, path.steps(), replacement).ok_or_else(|| DiagramError::InvalidPath(path.clone()))
    }

    /// Paths of conjunctions whose children are both unitary, innermost-leftmost first.
    ///
    /// Post-order, so a conjunction deeper in the left subtree is found before
    /// anything to its right or above it.
    pub fn unitary_conjunctions(&self) -> Vec<Path> {
        fn go(node: &CompoundDiagram, here: Path, out: &mut Vec<Path>) {
            if let CompoundDiagram::Conjunction(l, r) | CompoundDiagram::Implication(l, r) = node {
                go(l, here.left(), out);
                go(r, here.right(), out);
                if node.as_unitary_pair().is_some() {
                    out.push(here);
                }
            }
        }
        let mut out = Vec::new();
        go(self, Path::root(), &mut out);
        out
    }
}

/// Canonical form. Collections inside unitary diagrams are kept sorted by
/// construction, so this is the identity on the tree and exists to make the
/// canonical form explicit at call sites.
pub fn normalize(d: &CompoundDiagram) -> CompoundDiagram {
    d.clone()
}

/// Structural equality up to the ordering of contours and zones.
pub fn diagram_equal(a: &CompoundDiagram, b: &CompoundDiagram) -> bool {
    normalize(a) == normalize(b)
}

pub fn subdiagram_at<'a>(
    d: &'a CompoundDiagram,
    p: &Path,
) -> Result<&'a CompoundDiagram, DiagramError> {
    d.subdiagram_at(p)
}

pub fn replace_at(
    d: &CompoundDiagram,
    p: &Path,
    r: CompoundDiagram,
) -> Result<CompoundDiagram, DiagramError> {
    d.replace_at(p, r)
}
