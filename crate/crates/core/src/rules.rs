//! The nine inference rules.
//!
//! Every rule is a total function with an explicit precondition. Rules are
//! applied inside the antecedent of a goal, so a rule that produces a weaker
//! diagram (erase contour, erase shading) is still sound when read backwards:
//! if the weaker antecedent proves the consequent, so does the original.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::diagram::{
    diagram_equal, venn_zones, CompoundDiagram, ContourLabel, DiagramError, Path, UnitaryDiagram,
    Zone,
};
use crate::semantics::{cells_of_zone, empty_cells, equivalent, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("contour {0} is not in the diagram")]
    ContourAbsent(ContourLabel),
    #[error("contour {0} is already in the diagram")]
    ContourAlreadyPresent(ContourLabel),
    #[error("zone {0} is not shaded")]
    ZoneNotShaded(Zone),
    #[error("zone {0} is not missing")]
    ZoneNotMissing(Zone),
    #[error("the background zone cannot be removed")]
    BackgroundZoneProtected,
    #[error("the conjuncts do not have the same zones")]
    ZoneSetMismatch,
    #[error("contour {0} cannot be copied")]
    ContourNotCopyable(ContourLabel),
    #[error("zone {0} is not an unshaded zone of the target diagram")]
    InvalidTarget(Zone),
    #[error("zone {0} is not forced empty by the conjunction")]
    NotForcedEmpty(Zone),
    #[error("the conjuncts differ")]
    ConjunctsDiffer,
    #[error("{rule} needs {expected} at the target path")]
    WrongTarget { rule: RuleKind, expected: &'static str },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl RuleError {
    /// Stable machine-readable code, used by the service and scripts.
    pub fn code(&self) -> &'static str {
        match self {
            RuleError::ContourAbsent(_) => "contour-absent",
            RuleError::ContourAlreadyPresent(_) => "contour-already-present",
            RuleError::ZoneNotShaded(_) => "zone-not-shaded",
            RuleError::ZoneNotMissing(_) => "zone-not-missing",
            RuleError::BackgroundZoneProtected => "background-zone-protected",
            RuleError::ZoneSetMismatch => "zone-set-mismatch",
            RuleError::ContourNotCopyable(_) => "contour-not-copyable",
            RuleError::InvalidTarget(_) => "invalid-target",
            RuleError::NotForcedEmpty(_) => "not-forced-empty",
            RuleError::ConjunctsDiffer => "conjuncts-differ",
            RuleError::WrongTarget { .. } => "wrong-target",
            RuleError::Diagram(DiagramError::InvalidPath(_)) => "invalid-path",
            RuleError::Diagram(_) => "malformed-diagram",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    EraseContour,
    EraseShading,
    IntroduceContour,
    IntroduceShadedZone,
    RemoveShadedZone,
    Combine,
    CopyContour,
    CopyShading,
    Idempotency,
}

impl RuleKind {
    pub const ALL: [RuleKind; 9] = [
        RuleKind::EraseContour,
        RuleKind::EraseShading,
        RuleKind::IntroduceContour,
        RuleKind::IntroduceShadedZone,
        RuleKind::RemoveShadedZone,
        RuleKind::Combine,
        RuleKind::CopyContour,
        RuleKind::CopyShading,
        RuleKind::Idempotency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::EraseContour => "erase_contour",
            RuleKind::EraseShading => "erase_shading",
            RuleKind::IntroduceContour => "introduce_contour",
            RuleKind::IntroduceShadedZone => "introduce_shaded_zone",
            RuleKind::RemoveShadedZone => "remove_shaded_zone",
            RuleKind::Combine => "combine",
            RuleKind::CopyContour => "copy_contour",
            RuleKind::CopyShading => "copy_shading",
            RuleKind::Idempotency => "idempotency",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleKind> {
        RuleKind::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Rules that keep the diagram's meaning; the two erase rules lose information.
    pub fn is_equivalence(self) -> bool {
        !matches!(self, RuleKind::EraseContour | RuleKind::EraseShading)
    }

    /// Rules 1-5 act on one unitary diagram, the rest on a conjunction.
    pub fn targets_unitary(self) -> bool {
        matches!(
            self,
            RuleKind::EraseContour
                | RuleKind::EraseShading
                | RuleKind::IntroduceContour
                | RuleKind::IntroduceShadedZone
                | RuleKind::RemoveShadedZone
        )
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which conjunct a copy rule reads from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CopyDirection {
    LeftToRight,
    RightToLeft,
}

impl CopyDirection {
    pub fn name(self) -> &'static str {
        match self {
            CopyDirection::LeftToRight => "left_to_right",
            CopyDirection::RightToLeft => "right_to_left",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "left_to_right" => Some(CopyDirection::LeftToRight),
            "right_to_left" => Some(CopyDirection::RightToLeft),
            _ => None,
        }
    }

    /// `(source, destination)` out of `(left, right)`.
    pub fn split<T>(self, left: T, right: T) -> (T, T) {
        match self {
            CopyDirection::LeftToRight => (left, right),
            CopyDirection::RightToLeft => (right, left),
        }
    }
}

/// A rule together with its arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    EraseContour(ContourLabel),
    EraseShading(Zone),
    IntroduceContour(ContourLabel),
    IntroduceShadedZone(Zone),
    RemoveShadedZone(Zone),
    Combine,
    CopyContour(CopyDirection, ContourLabel),
    CopyShading(CopyDirection, BTreeSet<Zone>),
    Idempotency,
}

impl Rule {
    pub fn kind(&self) -> RuleKind {
        match self {
            Rule::EraseContour(_) => RuleKind::EraseContour,
            Rule::EraseShading(_) => RuleKind::EraseShading,
            Rule::IntroduceContour(_) => RuleKind::IntroduceContour,
            Rule::IntroduceShadedZone(_) => RuleKind::IntroduceShadedZone,
            Rule::RemoveShadedZone(_) => RuleKind::RemoveShadedZone,
            Rule::Combine => RuleKind::Combine,
            Rule::CopyContour(..) => RuleKind::CopyContour,
            Rule::CopyShading(..) => RuleKind::CopyShading,
            Rule::Idempotency => RuleKind::Idempotency,
        }
    }

    /// Rewrite `target`, the subtree the rule is aimed at.
    pub fn apply(&self, target: &CompoundDiagram) -> Result<CompoundDiagram, RuleError> {
        let kind = self.kind();
        if kind.targets_unitary() {
            let d = target.as_unitary().ok_or(RuleError::WrongTarget {
                rule: kind,
                expected: "a unitary diagram",
            })?;
            let out = match self {
                Rule::EraseContour(c) => erase_contour(d, c)?,
                Rule::EraseShading(z) => erase_shading(d, z)?,
                Rule::IntroduceContour(c) => introduce_contour(d, c)?,
                Rule::IntroduceShadedZone(z) => introduce_shaded_zone(d, z)?,
                Rule::RemoveShadedZone(z) => remove_shaded_zone(d, z)?,
                _ => unreachable!(),
            };
            return Ok(out.into());
        }
        if let Rule::Idempotency = self {
            return match target {
                CompoundDiagram::Conjunction(l, r) => idempotency(l, r),
                _ => Err(RuleError::WrongTarget {
                    rule: kind,
                    expected: "a conjunction",
                }),
            };
        }
        let (left, right) = target.as_unitary_pair().ok_or(RuleError::WrongTarget {
            rule: kind,
            expected: "a conjunction of two unitary diagrams",
        })?;
        Ok(match self {
            Rule::Combine => combine(left, right)?.into(),
            Rule::CopyContour(dir, c) => {
                let (src, dst) = dir.split(left, right);
                let copied = copy_contour(src, dst, c)?;
                rebuild_pair(*dir, src, copied)
            }
            Rule::CopyShading(dir, zones) => {
                let (src, dst) = dir.split(left, right);
                let copied = copy_shading(src, dst, zones)?;
                rebuild_pair(*dir, src, copied)
            }
            _ => unreachable!(),
        })
    }
}

fn rebuild_pair(dir: CopyDirection, src: &UnitaryDiagram, dst: UnitaryDiagram) -> CompoundDiagram {
    match dir {
        CopyDirection::LeftToRight => CompoundDiagram::conj(src.clone(), dst),
        CopyDirection::RightToLeft => CompoundDiagram::conj(dst, src.clone()),
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().name())?;
        match self {
            Rule::EraseContour(c) | Rule::IntroduceContour(c) => write!(f, " {c}"),
            Rule::EraseShading(z) | Rule::IntroduceShadedZone(z) | Rule::RemoveShadedZone(z) => {
                write!(f, " {z}")
            }
            Rule::CopyContour(dir, c) => write!(f, " {} {c}", dir.name()),
            Rule::CopyShading(dir, zones) => {
                write!(f, " {}", dir.name())?;
                zones.iter().try_for_each(|z| write!(f, " {z}"))
            }
            Rule::Combine | Rule::Idempotency => Ok(()),
        }
    }
}

/// The argument part of a rule, as supplied by a chooser or a client.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleArg {
    None,
    Contour(ContourLabel),
    Zone(Zone),
    CopyContour(CopyDirection, ContourLabel),
    CopyShading(CopyDirection, BTreeSet<Zone>),
}

impl Rule {
    /// Pair a rule kind with its argument; `None` if the shapes don't match.
    pub fn build(kind: RuleKind, arg: RuleArg) -> Option<Rule> {
        Some(match (kind, arg) {
            (RuleKind::EraseContour, RuleArg::Contour(c)) => Rule::EraseContour(c),
            (RuleKind::EraseShading, RuleArg::Zone(z)) => Rule::EraseShading(z),
            (RuleKind::IntroduceContour, RuleArg::Contour(c)) => Rule::IntroduceContour(c),
            (RuleKind::IntroduceShadedZone, RuleArg::Zone(z)) => Rule::IntroduceShadedZone(z),
            (RuleKind::RemoveShadedZone, RuleArg::Zone(z)) => Rule::RemoveShadedZone(z),
            (RuleKind::Combine, RuleArg::None) => Rule::Combine,
            (RuleKind::CopyContour, RuleArg::CopyContour(d, c)) => Rule::CopyContour(d, c),
            (RuleKind::CopyShading, RuleArg::CopyShading(d, zs)) => Rule::CopyShading(d, zs),
            (RuleKind::Idempotency, RuleArg::None) => Rule::Idempotency,
            _ => return None,
        })
    }

    pub fn arg(&self) -> RuleArg {
        match self {
            Rule::EraseContour(c) | Rule::IntroduceContour(c) => RuleArg::Contour(c.clone()),
            Rule::EraseShading(z) | Rule::IntroduceShadedZone(z) | Rule::RemoveShadedZone(z) => {
                RuleArg::Zone(z.clone())
            }
            Rule::CopyContour(d, c) => RuleArg::CopyContour(*d, c.clone()),
            Rule::CopyShading(d, zs) => RuleArg::CopyShading(*d, zs.clone()),
            Rule::Combine | Rule::Idempotency => RuleArg::None,
        }
    }
}

/// A rule aimed at a subtree of one goal's antecedent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleApplication {
    pub goal_index: usize,
    /// Relative to the antecedent of the goal.
    pub path: Path,
    pub rule: Rule,
}

fn build(
    contours: BTreeSet<ContourLabel>,
    zones: BTreeSet<Zone>,
    shaded: BTreeSet<Zone>,
) -> UnitaryDiagram {
    UnitaryDiagram::new(contours, zones, shaded).expect("rule output is well-formed")
}

/// Rule 1. Each pair `z`, `z+c` merges; the merged zone is shaded only if both
/// halves denote the empty set and at least one of them is drawn.
pub fn erase_contour(d: &UnitaryDiagram, c: &ContourLabel) -> Result<UnitaryDiagram, RuleError> {
    if !d.contours().contains(c) {
        return Err(RuleError::ContourAbsent(c.clone()));
    }
    let mut contours = d.contours().clone();
    contours.remove(c);
    let mut zones = BTreeSet::new();
    let mut shaded = BTreeSet::new();
    for z in venn_zones(&contours) {
        let outside = z.clone();
        let inside = z.with(c);
        if !d.is_present(&outside) && !d.is_present(&inside) {
            continue;
        }
        if d.is_empty_zone(&outside) && d.is_empty_zone(&inside) {
            shaded.insert(z.clone());
        }
        zones.insert(z);
    }
    Ok(build(contours, zones, shaded))
}

/// Rule 2.
pub fn erase_shading(d: &UnitaryDiagram, z: &Zone) -> Result<UnitaryDiagram, RuleError> {
    if !d.is_shaded(z) {
        return Err(RuleError::ZoneNotShaded(z.clone()));
    }
    let mut shaded = d.shaded().clone();
    shaded.remove(z);
    Ok(build(d.contours().clone(), d.zones().clone(), shaded))
}

/// Rule 3. The new contour splits every drawn zone in two.
pub fn introduce_contour(d: &UnitaryDiagram, c: &ContourLabel) -> Result<UnitaryDiagram, RuleError> {
    if d.contours().contains(c) {
        return Err(RuleError::ContourAlreadyPresent(c.clone()));
    }
    let mut contours = d.contours().clone();
    contours.insert(c.clone());
    let split = |zs: &BTreeSet<Zone>| -> BTreeSet<Zone> {
        zs.iter().flat_map(|z| [z.clone(), z.with(c)]).collect()
    };
    Ok(build(contours, split(d.zones()), split(d.shaded())))
}

/// Rule 4.
pub fn introduce_shaded_zone(d: &UnitaryDiagram, z: &Zone) -> Result<UnitaryDiagram, RuleError> {
    if d.is_present(z) || !z.in_set().is_subset(d.contours()) {
        return Err(RuleError::ZoneNotMissing(z.clone()));
    }
    let mut zones = d.zones().clone();
    let mut shaded = d.shaded().clone();
    zones.insert(z.clone());
    shaded.insert(z.clone());
    Ok(build(d.contours().clone(), zones, shaded))
}

/// Rule 5.
pub fn remove_shaded_zone(d: &UnitaryDiagram, z: &Zone) -> Result<UnitaryDiagram, RuleError> {
    if !d.is_shaded(z) {
        return Err(RuleError::ZoneNotShaded(z.clone()));
    }
    if z.is_background() {
        return Err(RuleError::BackgroundZoneProtected);
    }
    let mut zones = d.zones().clone();
    let mut shaded = d.shaded().clone();
    zones.remove(z);
    shaded.remove(z);
    Ok(build(d.contours().clone(), zones, shaded))
}

/// Rule 6.
pub fn combine(left: &UnitaryDiagram, right: &UnitaryDiagram) -> Result<UnitaryDiagram, RuleError> {
    if left.zones() != right.zones() || left.contours() != right.contours() {
        return Err(RuleError::ZoneSetMismatch);
    }
    let shaded = left.shaded().union(right.shaded()).cloned().collect();
    Ok(build(left.contours().clone(), left.zones().clone(), shaded))
}

/// Rule 7. Copies `c` from `src` into `dst`, placing it relative to the
/// contours the two diagrams share the way `src` places it.
///
/// For each footprint `s` on the shared contours, `src` either has drawn zones
/// with that footprint inside `c`, outside `c`, both or neither. A `dst` zone
/// with footprint `s` is kept outside `c`, moved inside, or split accordingly.
/// The result is checked against the entailment oracle before it is accepted.
pub fn copy_contour(
    src: &UnitaryDiagram,
    dst: &UnitaryDiagram,
    c: &ContourLabel,
) -> Result<UnitaryDiagram, RuleError> {
    if !src.contours().contains(c) || dst.contours().contains(c) {
        return Err(RuleError::ContourNotCopyable(c.clone()));
    }
    let shared: BTreeSet<ContourLabel> =
        src.contours().intersection(dst.contours()).cloned().collect();
    let covers = |s: &Zone| src.zones().iter().any(|z| z.contains(c) && z.restrict(&shared) == *s);
    let avoids = |s: &Zone| src.zones().iter().any(|z| !z.contains(c) && z.restrict(&shared) == *s);

    let mut contours = dst.contours().clone();
    contours.insert(c.clone());
    let mut zones = BTreeSet::new();
    let mut shaded = BTreeSet::new();
    for z in dst.zones() {
        let s = z.restrict(&shared);
        let (inside, outside) = match (covers(&s), avoids(&s)) {
            (true, false) => (true, false),
            (false, true) => (false, true),
            _ => (true, true),
        };
        for (keep, zone) in [(outside, z.clone()), (inside, z.with(c))] {
            if keep {
                if dst.is_shaded(z) {
                    shaded.insert(zone.clone());
                }
                zones.insert(zone);
            }
        }
    }
    let result = UnitaryDiagram::new(contours, zones, shaded)
        .map_err(|_| RuleError::ContourNotCopyable(c.clone()))?;
    let before = CompoundDiagram::conj(src.clone(), dst.clone());
    let after = CompoundDiagram::conj(src.clone(), result.clone());
    if equivalent(&before, &after).unwrap_or(false) {
        Ok(result)
    } else {
        Err(RuleError::ContourNotCopyable(c.clone()))
    }
}

/// Unshaded zones of `dst` whose every cell is forced empty by `src ∧ dst`.
pub fn copy_shading_targets(src: &UnitaryDiagram, dst: &UnitaryDiagram) -> BTreeSet<Zone> {
    let v = Vocabulary::new(src.contours().union(dst.contours()).cloned().collect());
    let forced = empty_cells(&CompoundDiagram::conj(src.clone(), dst.clone()), &v)
        .expect("conjunction of unitaries");
    dst.zones()
        .iter()
        .filter(|z| !dst.is_shaded(z))
        .filter(|z| {
            cells_of_zone(z, dst.contours(), &v)
                .expect("zone within vocabulary")
                .iter()
                .all(|cell| forced.contains(cell))
        })
        .cloned()
        .collect()
}

/// Rule 8. Shades `targets` in `dst`; each must be provably empty in `src ∧ dst`.
pub fn copy_shading(
    src: &UnitaryDiagram,
    dst: &UnitaryDiagram,
    targets: &BTreeSet<Zone>,
) -> Result<UnitaryDiagram, RuleError> {
    if let Some(z) = targets.iter().find(|z| !dst.is_present(z) || dst.is_shaded(z)) {
        return Err(RuleError::InvalidTarget(z.clone()));
    }
    let allowed = copy_shading_targets(src, dst);
    if let Some(z) = targets.iter().find(|z| !allowed.contains(*z)) {
        return Err(RuleError::NotForcedEmpty(z.clone()));
    }
    let shaded = dst.shaded().union(targets).cloned().collect();
    Ok(build(dst.contours().clone(), dst.zones().clone(), shaded))
}

/// Idempotency: `d ∧ d` becomes `d`.
pub fn idempotency(
    left: &CompoundDiagram,
    right: &CompoundDiagram,
) -> Result<CompoundDiagram, RuleError> {
    if diagram_equal(left, right) {
        Ok(left.clone())
    } else {
        Err(RuleError::ConjunctsDiffer)
    }
}

/// Every argument instance for which `kind` applies to `target`.
///
/// Introduce contour is offered for the labels of `context` the target lacks.
/// Copy shading is offered with its maximal target set per direction; any
/// non-empty subset of that set is also accepted.
pub fn applicable_instances(
    kind: RuleKind,
    target: &CompoundDiagram,
    context: &BTreeSet<ContourLabel>,
) -> Vec<Rule> {
    let candidates: Vec<Rule> = match (kind, target) {
        (RuleKind::EraseContour, CompoundDiagram::Unitary(d)) => {
            d.contours().iter().cloned().map(Rule::EraseContour).collect()
        }
        (RuleKind::EraseShading, CompoundDiagram::Unitary(d)) => {
            d.shaded().iter().cloned().map(Rule::EraseShading).collect()
        }
        (RuleKind::RemoveShadedZone, CompoundDiagram::Unitary(d)) => {
            d.shaded().iter().cloned().map(Rule::RemoveShadedZone).collect()
        }
        (RuleKind::IntroduceShadedZone, CompoundDiagram::Unitary(d)) => {
            d.missing_zones().into_iter().map(Rule::IntroduceShadedZone).collect()
        }
        (RuleKind::IntroduceContour, CompoundDiagram::Unitary(d)) => context
            .difference(d.contours())
            .cloned()
            .map(Rule::IntroduceContour)
            .collect(),
        (RuleKind::Combine, _) => vec![Rule::Combine],
        (RuleKind::Idempotency, CompoundDiagram::Conjunction(..)) => vec![Rule::Idempotency],
        (RuleKind::CopyContour, _) => match target.as_unitary_pair() {
            Some((l, r)) => [CopyDirection::LeftToRight, CopyDirection::RightToLeft]
                .into_iter()
                .flat_map(|dir| {
                    let (src, dst) = dir.split(l, r);
                    src.contours()
                        .difference(dst.contours())
                        .cloned()
                        .map(move |c| Rule::CopyContour(dir, c))
                        .collect::<Vec<_>>()
                })
                .collect(),
            None => Vec::new(),
        },
        (RuleKind::CopyShading, _) => match target.as_unitary_pair() {
            Some((l, r)) => [CopyDirection::LeftToRight, CopyDirection::RightToLeft]
                .into_iter()
                .filter_map(|dir| {
                    let (src, dst) = dir.split(l, r);
                    let targets = copy_shading_targets(src, dst);
                    (!targets.is_empty()).then(|| Rule::CopyShading(dir, targets))
                })
                .collect(),
            None => Vec::new(),
        },
        _ => Vec::new(),
    };
    candidates
        .into_iter()
        .filter(|rule| rule.apply(target).is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::labels;
    use crate::semantics::entails;

    fn z(names: &[&str]) -> Zone {
        Zone::from_names(names.iter().copied()).unwrap()
    }

    fn l(name: &str) -> ContourLabel {
        ContourLabel::new(name).unwrap()
    }

    fn u(contours: &[&str], zones: &[&[&str]], shaded: &[&[&str]]) -> UnitaryDiagram {
        UnitaryDiagram::new(
            labels(contours.iter().copied()).unwrap(),
            zones.iter().map(|n| z(n)).collect(),
            shaded.iter().map(|n| z(n)).collect(),
        )
        .unwrap()
    }

    const VENN_AB: &[&[&str]] = &[&[], &["A"], &["B"], &["A", "B"]];

    fn cd(d: &UnitaryDiagram) -> CompoundDiagram {
        d.clone().into()
    }

    #[test]
    fn erase_contour_drops_half_shading() {
        let d = u(&["A", "B"], VENN_AB, &[&["A"]]);
        let out = erase_contour(&d, &l("B")).unwrap();
        assert_eq!(out, u(&["A"], &[&[], &["A"]], &[]));
        assert!(entails(&cd(&d), &cd(&out)).unwrap());
    }

    #[test]
    fn erase_contour_keeps_full_shading() {
        let d = u(&["A", "B"], VENN_AB, &[&["A"], &["A", "B"]]);
        let out = erase_contour(&d, &l("B")).unwrap();
        assert_eq!(out.shaded(), &[z(&["A"])].into());
        // Restricted to {A} nothing is lost: the result says exactly "A is empty".
        assert!(equivalent(&cd(&out), &cd(&u(&["A"], &[&[]], &[]))).unwrap());
    }

    #[test]
    fn erase_contour_shaded_and_missing_merge_to_shaded() {
        let d = u(&["A", "B"], &[&[], &["B"], &["A", "B"]], &[&["A", "B"]]);
        let out = erase_contour(&d, &l("B")).unwrap();
        assert_eq!(out, u(&["A"], &[&[], &["A"]], &[&["A"]]));
        assert!(entails(&cd(&d), &cd(&out)).unwrap());
    }

    #[test]
    fn erase_last_contour() {
        let d = u(&["A"], &[&[], &["A"]], &[]);
        assert_eq!(erase_contour(&d, &l("A")).unwrap(), u(&[], &[&[]], &[]));
        assert_eq!(
            erase_contour(&d, &l("B")),
            Err(RuleError::ContourAbsent(l("B")))
        );
    }

    #[test]
    fn erase_shading_cases() {
        let d = u(&["A", "B"], VENN_AB, &[&["A"], &["A", "B"]]);
        assert_eq!(
            erase_shading(&d, &z(&["A", "B"])).unwrap().shaded(),
            &[z(&["A"])].into()
        );
        let d = u(&["A", "B"], VENN_AB, &[&["A"]]);
        assert!(erase_shading(&d, &z(&["A"])).unwrap().shaded().is_empty());
        assert_eq!(
            erase_shading(&d, &z(&["B"])),
            Err(RuleError::ZoneNotShaded(z(&["B"])))
        );
    }

    #[test]
    fn introduce_contour_splits_every_zone() {
        let d = u(&["A"], &[&[], &["A"]], &[&["A"]]);
        let out = introduce_contour(&d, &l("B")).unwrap();
        assert_eq!(out, u(&["A", "B"], VENN_AB, &[&["A"], &["A", "B"]]));
        assert_eq!(out.zones().len(), 2 * d.zones().len());
        assert!(equivalent(&cd(&d), &cd(&out)).unwrap());
        assert_eq!(
            introduce_contour(&d, &l("A")),
            Err(RuleError::ContourAlreadyPresent(l("A")))
        );
        assert_eq!(erase_contour(&out, &l("B")).unwrap(), d);
    }

    #[test]
    fn introduce_and_remove_shaded_zone() {
        let d1 = u(&["A", "B", "C"], &[&[], &["A"], &["B"], &["C"]], &[&["A"]]);
        let out = introduce_shaded_zone(&d1, &z(&["A", "B"])).unwrap();
        assert_eq!(out.zones().len(), 5);
        assert!(out.is_shaded(&z(&["A", "B"])));
        assert!(equivalent(&cd(&d1), &cd(&out)).unwrap());
        assert_eq!(remove_shaded_zone(&out, &z(&["A", "B"])).unwrap(), d1);
        assert_eq!(
            introduce_shaded_zone(&d1, &z(&["A"])),
            Err(RuleError::ZoneNotMissing(z(&["A"])))
        );

        let mut all = d1.clone();
        for m in d1.missing_zones() {
            all = introduce_shaded_zone(&all, &m).unwrap();
        }
        assert!(all.is_venn_form());
    }

    #[test]
    fn background_cannot_be_removed() {
        let d = u(&["A"], &[&[], &["A"]], &[&[]]);
        assert_eq!(
            remove_shaded_zone(&d, &z(&[])),
            Err(RuleError::BackgroundZoneProtected)
        );
    }

    #[test]
    fn combine_unions_shading() {
        let a = u(&["A", "B"], VENN_AB, &[&["A"]]);
        let none = u(&["A", "B"], VENN_AB, &[]);
        let ab = u(&["A", "B"], VENN_AB, &[&["A", "B"]]);
        assert_eq!(combine(&a, &none).unwrap().shaded(), &[z(&["A"])].into());
        assert_eq!(
            combine(&a, &ab).unwrap().shaded(),
            &[z(&["A"]), z(&["A", "B"])].into()
        );
        let other = u(&["A", "B"], &[&[], &["A"]], &[]);
        assert_eq!(combine(&a, &other), Err(RuleError::ZoneSetMismatch));
    }

    #[test]
    fn copy_contour_places_b_inside_a() {
        let src = u(&["A", "B"], &[&[], &["A"], &["A", "B"]], &[]);
        let dst = u(&["A"], &[&[], &["A"]], &[]);
        let out = copy_contour(&src, &dst, &l("B")).unwrap();
        assert_eq!(out, u(&["A", "B"], &[&[], &["A"], &["A", "B"]], &[]));
        assert_eq!(
            copy_contour(&src, &out, &l("B")),
            Err(RuleError::ContourNotCopyable(l("B")))
        );
    }

    #[test]
    fn copy_contour_preserves_disjointness() {
        // C inside B, and D disjoint from B: copying D next to C keeps it out of B.
        let c_in_b = u(&["B", "C"], &[&[], &["B"], &["B", "C"]], &[]);
        let d_off_b = u(&["B", "D"], &[&[], &["B"], &["D"]], &[]);
        let out = copy_contour(&d_off_b, &c_in_b, &l("D")).unwrap();
        assert_eq!(
            out,
            u(&["B", "C", "D"], &[&[], &["B"], &["D"], &["B", "C"]], &[])
        );
        let before = CompoundDiagram::conj(c_in_b.clone(), d_off_b.clone());
        let after = CompoundDiagram::conj(out, d_off_b);
        assert!(equivalent(&before, &after).unwrap());
    }

    #[test]
    fn copy_shading_two_zones() {
        let src = u(&["A", "B"], VENN_AB, &[&["B"], &["A", "B"]]);
        let dst = u(&["B", "C"], &[&[], &["B"], &["C"], &["B", "C"]], &[]);
        let targets: BTreeSet<Zone> = [z(&["B"]), z(&["B", "C"])].into();
        assert_eq!(copy_shading_targets(&src, &dst), targets);
        let out = copy_shading(&src, &dst, &targets).unwrap();
        assert_eq!(out.shaded(), &targets);
        assert_eq!(copy_shading(&src, &dst, &BTreeSet::new()).unwrap(), dst);
        assert_eq!(
            copy_shading(&src, &dst, &[z(&["C"])].into()),
            Err(RuleError::NotForcedEmpty(z(&["C"])))
        );
    }

    #[test]
    fn idempotency_cases() {
        let a = cd(&u(&["A"], &[&[], &["A"]], &[]));
        let b = cd(&u(&["B"], &[&[], &["B"]], &[]));
        assert_eq!(idempotency(&a, &a).unwrap(), a);
        assert_eq!(idempotency(&a, &b), Err(RuleError::ConjunctsDiffer));
    }

    #[test]
    fn apply_checks_target_kind() {
        let a = u(&["A"], &[&[], &["A"]], &[]);
        let conj = CompoundDiagram::conj(a.clone(), a.clone());
        assert!(matches!(
            Rule::EraseContour(l("A")).apply(&conj),
            Err(RuleError::WrongTarget { .. })
        ));
        assert!(matches!(
            Rule::Combine.apply(&cd(&a)),
            Err(RuleError::WrongTarget { .. })
        ));
        assert_eq!(Rule::Combine.apply(&conj).unwrap(), cd(&a));
    }

    #[test]
    fn rule_names_roundtrip() {
        for kind in RuleKind::ALL {
            assert_eq!(RuleKind::from_name(kind.name()), Some(kind));
        }
        let rule = Rule::CopyContour(CopyDirection::RightToLeft, l("A"));
        assert_eq!(Rule::build(rule.kind(), rule.arg()), Some(rule));
        assert_eq!(Rule::build(RuleKind::Combine, RuleArg::Contour(l("A"))), None);
    }
}
