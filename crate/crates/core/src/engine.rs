//! Backward proof machinery.
//!
//! A proof is a list of proof states, each a list of subgoals. Rules rewrite a
//! subtree of one subgoal's antecedent; a subgoal whose antecedent is a single
//! diagram equal to its consequent can be discharged. The proof is finished
//! once no subgoals remain.

use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{diagram_equal, CompoundDiagram, DiagramError};
use crate::rules::{RuleApplication, RuleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("subgoal index {index} out of range ({len} subgoals)")]
    BadIndex { index: usize, len: usize },
    #[error("state index {index} out of range ({len} states)")]
    BadStateIndex { index: usize, len: usize },
    #[error("subgoal {0} is not a trivial implication")]
    NotTrivial(usize),
    #[error("malformed goal: {0}")]
    MalformedGoal(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

impl EngineError {
    pub fn code(&self) -> &'static str {
        match self {
            EngineError::BadIndex { .. } | EngineError::BadStateIndex { .. } => "bad-index",
            EngineError::NotTrivial(_) => "not-trivial",
            EngineError::MalformedGoal(_) => "malformed-goal",
            EngineError::Rule(e) => e.code(),
        }
    }
}

/// An implication still to be proved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgoal {
    antecedent: CompoundDiagram,
    consequent: CompoundDiagram,
}

impl Subgoal {
    pub fn new(antecedent: CompoundDiagram, consequent: CompoundDiagram) -> Result<Self, EngineError> {
        if antecedent.has_implication() || consequent.has_implication() {
            return Err(EngineError::MalformedGoal(
                DiagramError::NestedImplication.to_string(),
            ));
        }
        Ok(Subgoal {
            antecedent,
            consequent,
        })
    }

    pub fn from_goal(goal: CompoundDiagram) -> Result<Self, EngineError> {
        match goal {
            CompoundDiagram::Implication(a, c) => Subgoal::new(*a, *c),
            _ => Err(EngineError::MalformedGoal("goal is not an implication".into())),
        }
    }

    pub fn antecedent(&self) -> &CompoundDiagram {
        &self.antecedent
    }

    pub fn consequent(&self) -> &CompoundDiagram {
        &self.consequent
    }

    pub fn to_goal(&self) -> CompoundDiagram {
        CompoundDiagram::implies(self.antecedent.clone(), self.consequent.clone())
    }

    /// `A -> A` with `A` unitary.
    pub fn is_trivial(&self) -> bool {
        self.antecedent.is_unitary() && diagram_equal(&self.antecedent, &self.consequent)
    }

    /// The shape tactics accept: a unitary consequent.
    pub fn is_tactic_form(&self) -> bool {
        self.consequent.is_unitary()
    }

    pub(crate) fn with_antecedent(&self, antecedent: CompoundDiagram) -> Subgoal {
        Subgoal {
            antecedent,
            consequent: self.consequent.clone(),
        }
    }
}

/// The open subgoals; a subgoal's position is its index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ProofState {
    subgoals: Vec<Subgoal>,
}

impl ProofState {
    pub fn new(subgoals: Vec<Subgoal>) -> Self {
        ProofState { subgoals }
    }

    pub fn subgoals(&self) -> &[Subgoal] {
        &self.subgoals
    }

    pub fn subgoal(&self, index: usize) -> Result<&Subgoal, EngineError> {
        self.subgoals.get(index).ok_or(EngineError::BadIndex {
            index,
            len: self.subgoals.len(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.subgoals.is_empty()
    }

    pub fn apply_rule(&self, app: &RuleApplication) -> Result<ProofState, EngineError> {
        let goal = self.subgoal(app.goal_index)?;
        let target = goal
            .antecedent()
            .subdiagram_at(&app.path)
            .map_err(RuleError::from)?;
        let rewritten = app.rule.apply(target)?;
        let antecedent = goal
            .antecedent()
            .replace_at(&app.path, rewritten)
            .map_err(RuleError::from)?;
        let mut subgoals = self.subgoals.clone();
        subgoals[app.goal_index] = goal.with_antecedent(antecedent);
        Ok(ProofState { subgoals })
    }

    pub fn discharge(&self, index: usize) -> Result<ProofState, EngineError> {
        if !self.subgoal(index)?.is_trivial() {
            return Err(EngineError::NotTrivial(index));
        }
        let mut subgoals = self.subgoals.clone();
        subgoals.remove(index);
        Ok(ProofState { subgoals })
    }

    pub fn apply_step(&self, step: &StepRecord) -> Result<ProofState, EngineError> {
        match &step.kind {
            StepKind::Rule(app) => self.apply_rule(app),
            StepKind::Discharge(index) => self.discharge(*index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StepKind {
    Rule(RuleApplication),
    Discharge(usize),
}

/// One transition of a proof, with the tactic that produced it, if any.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepRecord {
    pub kind: StepKind,
    pub provenance: Option<String>,
}

impl StepRecord {
    pub fn rule(app: RuleApplication) -> Self {
        StepRecord {
            kind: StepKind::Rule(app),
            provenance: None,
        }
    }

    pub fn discharge(index: usize) -> Self {
        StepRecord {
            kind: StepKind::Discharge(index),
            provenance: None,
        }
    }

    pub fn by(mut self, tactic: impl Into<String>) -> Self {
        self.provenance = Some(tactic.into());
        self
    }
}

/// A replayable proof: `steps[i]` turns `states[i]` into `states[i + 1]`.
///
/// States are shared, so cloning a proof or extending it is cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    states: Vec<Arc<ProofState>>,
    steps: Vec<StepRecord>,
}

impl Proof {
    pub fn new(theorem: Subgoal) -> Self {
        Proof::from_state(ProofState::new(vec![theorem]))
    }

    pub fn from_state(initial: ProofState) -> Self {
        Proof {
            states: vec![Arc::new(initial)],
            steps: Vec::new(),
        }
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = &ProofState> + '_ {
        self.states.iter().map(|s| s.as_ref())
    }

    pub fn state(&self, index: usize) -> Option<&ProofState> {
        self.states.get(index).map(|s| s.as_ref())
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> &ProofState {
        &self.states[0]
    }

    pub fn current(&self) -> &ProofState {
        self.states.last().expect("a proof has at least one state")
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_finished(&self) -> bool {
        self.current().is_empty()
    }

    pub fn apply_step(&self, step: StepRecord) -> Result<Proof, EngineError> {
        let next = self.current().apply_step(&step)?;
        let mut proof = self.clone();
        proof.states.push(Arc::new(next));
        proof.steps.push(step);
        Ok(proof)
    }

    pub fn apply_rule(&self, app: RuleApplication) -> Result<Proof, EngineError> {
        self.apply_step(StepRecord::rule(app))
    }

    pub fn discharge_trivial(&self, goal_index: usize) -> Result<Proof, EngineError> {
        self.apply_step(StepRecord::discharge(goal_index))
    }

    /// Apply steps in order; on failure, the index of the offending step.
    pub fn extend<I>(&self, steps: I) -> Result<Proof, (usize, EngineError)>
    where
        I: IntoIterator<Item = StepRecord>,
    {
        let mut proof = self.clone();
        for (i, step) in steps.into_iter().enumerate() {
            proof = proof.apply_step(step).map_err(|e| (i, e))?;
        }
        Ok(proof)
    }

    /// Drop everything after state `state_index`.
    pub fn undo_to(&self, state_index: usize) -> Result<Proof, EngineError> {
        if state_index >= self.states.len() {
            return Err(EngineError::BadStateIndex {
                index: state_index,
                len: self.states.len(),
            });
        }
        Ok(Proof {
            states: self.states[..=state_index].to_vec(),
            steps: self.steps[..state_index].to_vec(),
        })
    }

    /// Re-run every step from the initial state.
    pub fn replay(&self) -> Result<Proof, (usize, EngineError)> {
        Proof::from_state(self.initial().clone()).extend(self.steps.iter().cloned())
    }
}

pub fn new_proof(theorem: Subgoal) -> Proof {
    Proof::new(theorem)
}

pub fn is_finished(p: &Proof) -> bool {
    p.is_finished()
}
