//! Entailment for the conjunctive Euler fragment.
//!
//! Without spiders the only thing a diagram can say is that some regions are
//! empty. Every such statement is a union of atomic Venn cells over a shared
//! vocabulary, so a diagram is fully described by the set of cells it forces
//! empty, and `a` entails `b` exactly when `b`'s forced cells are among `a`'s.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diagram::{venn_zones, CompoundDiagram, ContourLabel, UnitaryDiagram, Zone};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("contours are not covered by the vocabulary")]
    VocabularyMismatch,
    #[error("implication node inside a conjunctive diagram")]
    ImplicationNodePresent,
    #[error("goal is not an implication between conjunctive diagrams")]
    MalformedGoal,
}

/// The labels every diagram under consideration is interpreted over.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    labels: BTreeSet<ContourLabel>,
}

impl Vocabulary {
    pub fn new(labels: BTreeSet<ContourLabel>) -> Self {
        Vocabulary { labels }
    }

    pub fn of(diagrams: &[&CompoundDiagram]) -> Self {
        Vocabulary {
            labels: diagrams.iter().flat_map(|d| d.contours()).collect(),
        }
    }

    pub fn labels(&self) -> &BTreeSet<ContourLabel> {
        &self.labels
    }

    pub fn with(&self, extra: ContourLabel) -> Self {
        let mut labels = self.labels.clone();
        labels.insert(extra);
        Vocabulary { labels }
    }

    /// Every cell of the vocabulary.
    pub fn cells(&self) -> BTreeSet<Cell> {
        venn_zones(&self.labels).into_iter().map(Cell).collect()
    }
}

/// An atomic region over a vocabulary, written as its in-set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(pub Zone);

impl Cell {
    pub fn in_set(&self) -> &BTreeSet<ContourLabel> {
        self.0.in_set()
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The cells of `v` that lie in zone `z` of a diagram over `d_contours`.
pub fn cells_of_zone(
    z: &Zone,
    d_contours: &BTreeSet<ContourLabel>,
    v: &Vocabulary,
) -> Result<BTreeSet<Cell>, SemanticsError> {
    if !z.in_set().is_subset(d_contours) || !d_contours.is_subset(&v.labels) {
        return Err(SemanticsError::VocabularyMismatch);
    }
    let free: BTreeSet<ContourLabel> = v.labels.difference(d_contours).cloned().collect();
    Ok(venn_zones(&free)
        .into_iter()
        .map(|extra| {
            Cell(Zone::new(
                z.in_set().union(extra.in_set()).cloned().collect(),
            ))
        })
        .collect())
}

fn unitary_empty_cells(
    u: &UnitaryDiagram,
    v: &Vocabulary,
    out: &mut BTreeSet<Cell>,
) -> Result<(), SemanticsError> {
    for z in u.shaded().iter().cloned().chain(u.missing_zones()) {
        out.extend(cells_of_zone(&z, u.contours(), v)?);
    }
    Ok(())
}

/// Cells that `d` forces to be empty.
pub fn empty_cells(d: &CompoundDiagram, v: &Vocabulary) -> Result<BTreeSet<Cell>, SemanticsError> {
    if d.has_implication() {
        return Err(SemanticsError::ImplicationNodePresent);
    }
    let mut out = BTreeSet::new();
    for u in d.unitaries() {
        unitary_empty_cells(u, v, &mut out)?;
    }
    Ok(out)
}

/// Cells forced empty by `conclusion` but not by `premise`, over their joint vocabulary.
///
/// Empty exactly when the premise entails the conclusion. Otherwise any
/// returned cell is a witness: the model where every cell the premise leaves
/// open is inhabited satisfies the premise but not the conclusion.
pub fn unforced_cells(
    premise: &CompoundDiagram,
    conclusion: &CompoundDiagram,
) -> Result<BTreeSet<Cell>, SemanticsError> {
    let v = Vocabulary::of(&[premise, conclusion]);
    let have = empty_cells(premise, &v)?;
    let need = empty_cells(conclusion, &v)?;
    Ok(need.difference(&have).cloned().collect())
}

pub fn entails(premise: &CompoundDiagram, conclusion: &CompoundDiagram) -> Result<bool, SemanticsError> {
    Ok(unforced_cells(premise, conclusion)?.is_empty())
}

pub fn equivalent(a: &CompoundDiagram, b: &CompoundDiagram) -> Result<bool, SemanticsError> {
    Ok(entails(a, b)? && entails(b, a)?)
}

/// Whether an implication goal holds.
pub fn goal_valid(goal: &CompoundDiagram) -> Result<bool, SemanticsError> {
    match goal {
        CompoundDiagram::Implication(a, c) if !a.has_implication() && !c.has_implication() => {
            entails(a, c)
        }
        _ => Err(SemanticsError::MalformedGoal),
    }
}
