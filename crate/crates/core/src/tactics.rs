//! Tactics and tacticals.
//!
//! A tactic takes the index of a subgoal and the result accumulated so far
//! (the rule applications made during the current invocation together with the
//! proof state they lead to) and returns an extended result, or `None` if it
//! does not apply. Only the rule-level primitive [`rule_step`] ever adds to the
//! accumulated result; everything else is built from it with tacticals.
//!
//! Tactics only accept subgoals whose consequent is a single unitary diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{CompoundDiagram, Path, UnitaryDiagram, Zone};
use crate::engine::{Proof, ProofState, StepKind, StepRecord, Subgoal};
use crate::rules::{
    copy_contour, copy_shading_targets, CopyDirection, Rule, RuleApplication, RuleArg, RuleKind,
};

/// Cooperative cancellation, checked before every rule step.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }
}

/// The steps applied during one tactic invocation and the state they lead to.
#[derive(Debug, Clone)]
pub struct TacticResult {
    pub applied: Vec<StepRecord>,
    pub state: ProofState,
    cancel: Option<CancelToken>,
}

impl TacticResult {
    pub fn start(state: ProofState) -> Self {
        TacticResult {
            applied: Vec::new(),
            state,
            cancel: None,
        }
    }

    pub fn with_cancel(mut self, token: CancelToken) -> Self {
        self.cancel = Some(token);
        self
    }

    fn cancelled(&self) -> bool {
        self.cancel.as_ref().is_some_and(|t| t.is_cancelled())
    }

    fn subgoal(&self, index: usize) -> Option<&Subgoal> {
        self.state.subgoals().get(index)
    }

    fn antecedent(&self, index: usize) -> Option<&CompoundDiagram> {
        self.subgoal(index)
            .filter(|g| g.is_tactic_form())
            .map(|g| g.antecedent())
    }

    fn unitary_at(&self, index: usize, path: &Path) -> Option<&UnitaryDiagram> {
        self.antecedent(index)?.subdiagram_at(path).ok()?.as_unitary()
    }

    fn pair_at(&self, index: usize, path: &Path) -> Option<(&UnitaryDiagram, &UnitaryDiagram)> {
        self.antecedent(index)?.subdiagram_at(path).ok()?.as_unitary_pair()
    }
}

impl PartialEq for TacticResult {
    fn eq(&self, other: &Self) -> bool {
        self.applied == other.applied && self.state == other.state
    }
}

type TacticFn = dyn Fn(usize, &TacticResult) -> Option<TacticResult> + Send + Sync;

#[derive(Clone)]
pub struct Tactic(Arc<TacticFn>);

impl Tactic {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(usize, &TacticResult) -> Option<TacticResult> + Send + Sync + 'static,
    {
        Tactic(Arc::new(f))
    }

    pub fn apply(&self, index: usize, acc: &TacticResult) -> Option<TacticResult> {
        (self.0)(index, acc)
    }
}

impl fmt::Debug for Tactic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Tactic(..)")
    }
}

pub type DiagramPredicate = Arc<dyn Fn(&CompoundDiagram) -> bool + Send + Sync>;
pub type Chooser = Arc<dyn Fn(&CompoundDiagram) -> Option<RuleArg> + Send + Sync>;
pub type GoalPredicate = Arc<dyn Fn(&ProofState, usize) -> bool + Send + Sync>;

/// The rule-level primitive: apply one rule at `path` inside the antecedent of subgoal `index`.
pub fn rule_step(acc: &TacticResult, index: usize, path: Path, rule: Rule) -> Option<TacticResult> {
    let app = RuleApplication {
        goal_index: index,
        path,
        rule,
    };
    push(acc, StepRecord::rule(app))
}

fn push(acc: &TacticResult, step: StepRecord) -> Option<TacticResult> {
    if acc.cancelled() {
        return None;
    }
    let state = acc.state.apply_step(&step).ok()?;
    let mut applied = acc.applied.clone();
    applied.push(step);
    Some(TacticResult {
        applied,
        state,
        cancel: acc.cancel.clone(),
    })
}

/// Apply `kind` to the first antecedent subtree (pre-order, left to right)
/// satisfying `pred`, with the argument `choose` picks for it.
pub fn rule_tactic(kind: RuleKind, pred: DiagramPredicate, choose: Chooser) -> Tactic {
    Tactic::new(move |index, acc| {
        let antecedent = acc.antecedent(index)?;
        let (path, target) = antecedent.subtrees().into_iter().find(|(_, d)| pred(d))?;
        let rule = Rule::build(kind, choose(target)?)?;
        rule_step(acc, index, path, rule)
    })
}

// ---------------------------------------------------------------------------
// Tacticals

pub fn id() -> Tactic {
    Tactic::new(|_, acc| Some(acc.clone()))
}

pub fn fail() -> Tactic {
    Tactic::new(|_, _| None)
}

pub fn then(a: Tactic, b: Tactic) -> Tactic {
    Tactic::new(move |index, acc| {
        let mid = a.apply(index, acc)?;
        b.apply(index, &mid)
    })
}

pub fn orelse(a: Tactic, b: Tactic) -> Tactic {
    Tactic::new(move |index, acc| a.apply(index, acc).or_else(|| b.apply(index, acc)))
}

/// Apply `t` until it fails. Never fails itself; an iteration that applies no
/// rule ends the loop as well, since repeating it would change nothing.
pub fn repeat(t: Tactic) -> Tactic {
    Tactic::new(move |index, acc| {
        let mut acc = acc.clone();
        while let Some(next) = t.apply(index, &acc) {
            if next.applied.len() == acc.applied.len() {
                break;
            }
            acc = next;
        }
        Some(acc)
    })
}

pub fn cond(p: GoalPredicate, a: Tactic, b: Tactic) -> Tactic {
    Tactic::new(move |index, acc| {
        if p(&acc.state, index) {
            a.apply(index, acc)
        } else {
            b.apply(index, acc)
        }
    })
}

/// Apply `t` until `p` holds. Fails if `t` fails, or stops making progress,
/// while `p` is still false.
pub fn depth_first(p: GoalPredicate, t: Tactic) -> Tactic {
    Tactic::new(move |index, acc| {
        let mut acc = acc.clone();
        loop {
            if p(&acc.state, index) {
                return Some(acc);
            }
            let next = t.apply(index, &acc)?;
            if next.applied.len() == acc.applied.len() {
                return None;
            }
            acc = next;
        }
    })
}

pub fn antecedent_is_unitary() -> GoalPredicate {
    Arc::new(|state: &ProofState, index| {
        state
            .subgoals()
            .get(index)
            .is_some_and(|g| g.antecedent().is_unitary())
    })
}

/// Remove the subgoal if it is a trivial implication.
pub fn discharge() -> Tactic {
    Tactic::new(|index, acc| push(acc, StepRecord::discharge(index)))
}

// ---------------------------------------------------------------------------
// Low-level tactics

fn intro_zones_in(acc: &TacticResult, index: usize, paths: &[Path]) -> Option<TacticResult> {
    let mut acc = acc.clone();
    for path in paths {
        for zone in acc.unitary_at(index, path)?.missing_zones() {
            acc = rule_step(&acc, index, path.clone(), Rule::IntroduceShadedZone(zone))?;
        }
    }
    Some(acc)
}

fn intro_contours_in(acc: &TacticResult, index: usize, paths: &[Path]) -> Option<TacticResult> {
    let mut union = BTreeSet::new();
    for path in paths {
        union.extend(acc.unitary_at(index, path)?.contours().iter().cloned());
    }
    let mut acc = acc.clone();
    for path in paths {
        let lacking: Vec<_> = union
            .difference(acc.unitary_at(index, path)?.contours())
            .cloned()
            .collect();
        for c in lacking {
            acc = rule_step(&acc, index, path.clone(), Rule::IntroduceContour(c))?;
        }
    }
    Some(acc)
}

fn deepest_pair(acc: &TacticResult, index: usize) -> Option<Path> {
    acc.antecedent(index)?.unitary_conjunctions().into_iter().next()
}

/// Tactic 1: every antecedent diagram into Venn form.
pub fn intro_all_shaded_zones() -> Tactic {
    Tactic::new(|index, acc| {
        let paths = acc.antecedent(index)?.unitary_paths();
        intro_zones_in(acc, index, &paths)
    })
}

/// Tactic 2: Venn form for the innermost-leftmost conjunction of two unitary diagrams.
pub fn intro_all_shaded_zones_deepest() -> Tactic {
    Tactic::new(|index, acc| {
        let pair = deepest_pair(acc, index)?;
        intro_zones_in(acc, index, &[pair.left(), pair.right()])
    })
}

/// Tactic 3: every antecedent diagram gets every contour of the antecedent.
pub fn intro_all_contours() -> Tactic {
    Tactic::new(|index, acc| {
        let paths = acc.antecedent(index)?.unitary_paths();
        intro_contours_in(acc, index, &paths)
    })
}

/// Tactic 4: Tactic 3 restricted to the innermost-leftmost unitary pair.
pub fn intro_all_contours_deepest() -> Tactic {
    Tactic::new(|index, acc| {
        let pair = deepest_pair(acc, index)?;
        intro_contours_in(acc, index, &[pair.left(), pair.right()])
    })
}

/// Tactic 5: combine unitary pairs with equal zone sets until none is left.
pub fn combine_all() -> Tactic {
    Tactic::new(|index, acc| {
        let combinable = |acc: &TacticResult| -> Option<Path> {
            acc.antecedent(index)?
                .unitary_conjunctions()
                .into_iter()
                .find(|p| {
                    acc.pair_at(index, p)
                        .is_some_and(|(l, r)| l.zones() == r.zones() && l.contours() == r.contours())
                })
        };
        let mut acc = rule_step(acc, index, combinable(acc)?, Rule::Combine)?;
        while let Some(path) = combinable(&acc) {
            acc = rule_step(&acc, index, path, Rule::Combine)?;
        }
        Some(acc)
    })
}

/// Missing zones of `dst` that `src` shows to be empty, grouped by their
/// footprint on `src`'s contours, smallest group first.
///
/// A group is offered only if the matching region of `src` is drawn and
/// entirely shaded, so introducing it lines `dst` up with `src`.
fn shading_groups(src: &UnitaryDiagram, dst: &UnitaryDiagram) -> Vec<BTreeSet<Zone>> {
    let shared: BTreeSet<_> = src.contours().intersection(dst.contours()).cloned().collect();
    let mut groups: BTreeMap<Zone, BTreeSet<Zone>> = BTreeMap::new();
    for z in dst.missing_zones() {
        groups.entry(z.restrict(src.contours())).or_default().insert(z);
    }
    let mut out: Vec<(Zone, BTreeSet<Zone>)> = groups
        .into_iter()
        .filter(|(key, _)| {
            let region: Vec<&Zone> = src
                .zones()
                .iter()
                .filter(|w| w.restrict(&shared) == *key)
                .collect();
            !region.is_empty() && region.iter().all(|w| src.is_shaded(w))
        })
        .collect();
    out.sort_by(|(ka, ga), (kb, gb)| ga.len().cmp(&gb.len()).then_with(|| ka.cmp(kb)));
    out.into_iter().map(|(_, g)| g).collect()
}

const DIRECTIONS: [CopyDirection; 2] = [CopyDirection::LeftToRight, CopyDirection::RightToLeft];

fn admits_shading_copy(l: &UnitaryDiagram, r: &UnitaryDiagram) -> bool {
    DIRECTIONS.iter().any(|dir| {
        let (src, dst) = dir.split(l, r);
        !copy_shading_targets(src, dst).is_empty() || !shading_groups(src, dst).is_empty()
    })
}

fn admits_contour_copy(l: &UnitaryDiagram, r: &UnitaryDiagram) -> bool {
    DIRECTIONS.iter().any(|dir| {
        let (src, dst) = dir.split(l, r);
        src.contours()
            .difference(dst.contours())
            .any(|c| copy_contour(src, dst, c).is_ok())
    })
}

fn first_pair_where(
    acc: &TacticResult,
    index: usize,
    admits: fn(&UnitaryDiagram, &UnitaryDiagram) -> bool,
) -> Option<Path> {
    acc.antecedent(index)?
        .unitary_conjunctions()
        .into_iter()
        .find(|p| acc.pair_at(index, p).is_some_and(|(l, r)| admits(l, r)))
}

fn prepare_copy_shading_at(acc: &TacticResult, index: usize, pair: &Path) -> Option<TacticResult> {
    let mut acc = acc.clone();
    for dir in DIRECTIONS {
        let (l, r) = acc.pair_at(index, pair)?;
        let (src, dst) = dir.split(l, r);
        let Some(group) = shading_groups(src, dst).into_iter().next() else {
            continue;
        };
        let dst_path = match dir {
            CopyDirection::LeftToRight => pair.right(),
            CopyDirection::RightToLeft => pair.left(),
        };
        for zone in group {
            acc = rule_step(&acc, index, dst_path.clone(), Rule::IntroduceShadedZone(zone))?;
        }
    }
    Some(acc)
}

fn prepare_copy_contours_at(acc: &TacticResult, index: usize, pair: &Path) -> Option<TacticResult> {
    let mut acc = acc.clone();
    for side in [pair.left(), pair.right()] {
        let shaded: Vec<Zone> = acc
            .unitary_at(index, &side)?
            .shaded()
            .iter()
            .filter(|z| !z.is_background())
            .cloned()
            .collect();
        for zone in shaded {
            acc = rule_step(&acc, index, side.clone(), Rule::RemoveShadedZone(zone))?;
        }
    }
    Some(acc)
}

fn idempotency_if_equal(acc: TacticResult, index: usize, pair: &Path) -> Option<TacticResult> {
    match acc.pair_at(index, pair) {
        Some((l, r)) if l == r => rule_step(&acc, index, pair.clone(), Rule::Idempotency),
        _ => Some(acc),
    }
}

/// Tactic 6: in the first conjunction that admits copying shading, introduce
/// the smallest group of missing zones in each direction that the other
/// conjunct shades.
pub fn prepare_copy_shading() -> Tactic {
    Tactic::new(|index, acc| {
        let pair = first_pair_where(acc, index, admits_shading_copy)?;
        prepare_copy_shading_at(acc, index, &pair)
    })
}

/// Tactic 7: in the first conjunction that admits copying a contour, turn the
/// shaded zones of both conjuncts into missing zones.
pub fn prepare_copy_contours() -> Tactic {
    Tactic::new(|index, acc| {
        let pair = first_pair_where(acc, index, admits_contour_copy)?;
        prepare_copy_contours_at(acc, index, &pair)
    })
}

/// Tactic 8: turn a unitary antecedent into the consequent.
///
/// Introduces the consequent's extra contours, erases the antecedent's extra
/// contours, introduces zones the consequent draws, erases shading the
/// consequent lacks, and removes shaded zones the consequent leaves out.
/// Succeeds only if that yields the consequent.
pub fn match_conclusion() -> Tactic {
    Tactic::new(|index, acc| {
        let goal = acc.subgoal(index).filter(|g| g.is_tactic_form())?;
        let target = goal.consequent().as_unitary()?.clone();
        let root = Path::root();
        let mut acc = acc.clone();
        let current = |acc: &TacticResult| acc.unitary_at(index, &root).cloned();

        let ante = current(&acc)?;
        for c in target.contours().difference(ante.contours()) {
            acc = rule_step(&acc, index, root.clone(), Rule::IntroduceContour(c.clone()))?;
        }
        let ante = current(&acc)?;
        for c in ante.contours().difference(target.contours()) {
            acc = rule_step(&acc, index, root.clone(), Rule::EraseContour(c.clone()))?;
        }
        let ante = current(&acc)?;
        for z in target.zones().difference(ante.zones()) {
            acc = rule_step(&acc, index, root.clone(), Rule::IntroduceShadedZone(z.clone()))?;
        }
        let ante = current(&acc)?;
        for z in ante.shaded() {
            if target.is_present(z) && !target.is_shaded(z) {
                acc = rule_step(&acc, index, root.clone(), Rule::EraseShading(z.clone()))?;
            }
        }
        let ante = current(&acc)?;
        for z in ante.shaded() {
            if !target.is_present(z) {
                acc = rule_step(&acc, index, root.clone(), Rule::RemoveShadedZone(z.clone()))?;
            }
        }
        (current(&acc)? == target).then_some(acc)
    })
}

// ---------------------------------------------------------------------------
// High-level tactics

/// Tactic 9: in the first conjunction where a contour can be copied, clear
/// shading (Tactic 7), copy every copyable contour alternating directions, and
/// drop one conjunct if they end up identical.
pub fn copy_contours() -> Tactic {
    Tactic::new(|index, acc| {
        let pair = first_pair_where(acc, index, admits_contour_copy)?;
        let mut acc = prepare_copy_contours_at(acc, index, &pair)?;
        let mut copied = 0;
        loop {
            let mut progressed = false;
            for dir in DIRECTIONS {
                let (l, r) = acc.pair_at(index, &pair)?;
                let (src, dst) = dir.split(l, r);
                let next = src
                    .contours()
                    .difference(dst.contours())
                    .find(|c| copy_contour(src, dst, c).is_ok())
                    .cloned();
                if let Some(c) = next {
                    acc = rule_step(&acc, index, pair.clone(), Rule::CopyContour(dir, c))?;
                    progressed = true;
                    copied += 1;
                }
            }
            if !progressed {
                break;
            }
        }
        if copied == 0 {
            return None;
        }
        idempotency_if_equal(acc, index, &pair)
    })
}

/// Tactic 10: in the first conjunction that admits copying shading, prepare
/// (Tactic 6), copy all provably empty zones' shading in both directions, and
/// drop one conjunct if they end up identical.
pub fn propagate_shading() -> Tactic {
    Tactic::new(|index, acc| {
        let pair = first_pair_where(acc, index, admits_shading_copy)?;
        let mut acc = prepare_copy_shading_at(acc, index, &pair)?;
        for dir in DIRECTIONS {
            let (l, r) = acc.pair_at(index, &pair)?;
            let (src, dst) = dir.split(l, r);
            let targets = copy_shading_targets(src, dst);
            if !targets.is_empty() {
                acc = rule_step(&acc, index, pair.clone(), Rule::CopyShading(dir, targets))?;
            }
        }
        idempotency_if_equal(acc, index, &pair)
    })
}

/// Tactic 11: Venn form everywhere, equalise contours, combine, match.
pub fn venn_breadth() -> Tactic {
    then(
        intro_all_shaded_zones(),
        then(
            intro_all_contours(),
            then(repeat(combine_all()), then(match_conclusion(), discharge())),
        ),
    )
}

/// Tactic 12: Venn form, equalise and combine one innermost pair at a time, then match.
pub fn venn_depth() -> Tactic {
    then(
        depth_first(
            antecedent_is_unitary(),
            then(
                intro_all_shaded_zones_deepest(),
                then(intro_all_contours_deepest(), combine_all()),
            ),
        ),
        then(match_conclusion(), discharge()),
    )
}

/// Tactic 13: copy shading, else contours, until one diagram is left, then match.
pub fn copy_shading_and_contours() -> Tactic {
    then(
        depth_first(
            antecedent_is_unitary(),
            orelse(propagate_shading(), copy_contours()),
        ),
        then(match_conclusion(), discharge()),
    )
}

// ---------------------------------------------------------------------------
// Registry

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TacticLevel {
    Low,
    High,
}

impl TacticLevel {
    pub fn name(self) -> &'static str {
        match self {
            TacticLevel::Low => "low",
            TacticLevel::High => "high",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TacticInfo {
    pub name: &'static str,
    pub title: &'static str,
    pub level: TacticLevel,
    build: fn() -> Tactic,
}

impl TacticInfo {
    pub fn tactic(&self) -> Tactic {
        (self.build)()
    }
}

const REGISTRY: &[TacticInfo] = &[
    TacticInfo {
        name: "venn_breadth",
        title: "Venn (Breadth)",
        level: TacticLevel::High,
        build: venn_breadth,
    },
    TacticInfo {
        name: "venn_depth",
        title: "Venn (Depth)",
        level: TacticLevel::High,
        build: venn_depth,
    },
    TacticInfo {
        name: "copy_shading_and_contours",
        title: "Copy Shading And Contours",
        level: TacticLevel::High,
        build: copy_shading_and_contours,
    },
    TacticInfo {
        name: "copy_contours",
        title: "Copy Contours",
        level: TacticLevel::High,
        build: copy_contours,
    },
    TacticInfo {
        name: "propagate_shading",
        title: "Propagate Shading",
        level: TacticLevel::High,
        build: propagate_shading,
    },
    TacticInfo {
        name: "intro_all_shaded_zones",
        title: "Introduce All Shaded Zones",
        level: TacticLevel::Low,
        build: intro_all_shaded_zones,
    },
    TacticInfo {
        name: "intro_all_shaded_zones_deepest",
        title: "Introduce All Shaded Zones (Deepest)",
        level: TacticLevel::Low,
        build: intro_all_shaded_zones_deepest,
    },
    TacticInfo {
        name: "intro_all_contours",
        title: "Introduce All Contours",
        level: TacticLevel::Low,
        build: intro_all_contours,
    },
    TacticInfo {
        name: "intro_all_contours_deepest",
        title: "Introduce All Contours (Deepest)",
        level: TacticLevel::Low,
        build: intro_all_contours_deepest,
    },
    TacticInfo {
        name: "combine_all",
        title: "Combine All Diagrams",
        level: TacticLevel::Low,
        build: combine_all,
    },
    TacticInfo {
        name: "prepare_copy_shading",
        title: "Prepare for Copy Shading",
        level: TacticLevel::Low,
        build: prepare_copy_shading,
    },
    TacticInfo {
        name: "prepare_copy_contours",
        title: "Prepare for Copy Contours",
        level: TacticLevel::Low,
        build: prepare_copy_contours,
    },
    TacticInfo {
        name: "match_conclusion",
        title: "Match Conclusion",
        level: TacticLevel::Low,
        build: match_conclusion,
    },
];

pub fn registry() -> &'static [TacticInfo] {
    REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static TacticInfo> {
    REGISTRY.iter().find(|t| t.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TacticError {
    #[error("unknown tactic `{0}`")]
    Unknown(String),
    #[error("tactic `{0}` does not apply")]
    Failed(String),
    #[error("tactic `{0}` was cancelled")]
    Cancelled(String),
}

impl TacticError {
    pub fn code(&self) -> &'static str {
        match self {
            TacticError::Unknown(_) => "unknown-tactic",
            TacticError::Failed(_) => "tactic-failed",
            TacticError::Cancelled(_) => "cancelled",
        }
    }
}

/// Run a registered tactic on subgoal `index` of the current state and append
/// its steps to `proof`, each tagged with the tactic's name.
pub fn apply_tactic(proof: &Proof, name: &str, index: usize) -> Result<Proof, TacticError> {
    apply_tactic_with(proof, name, index, &CancelToken::new())
}

pub fn apply_tactic_with(
    proof: &Proof,
    name: &str,
    index: usize,
    cancel: &CancelToken,
) -> Result<Proof, TacticError> {
    let info = lookup(name).ok_or_else(|| TacticError::Unknown(name.to_string()))?;
    let start = TacticResult::start(proof.current().clone()).with_cancel(cancel.clone());
    let result = info.tactic().apply(index, &start);
    if cancel.is_cancelled() {
        return Err(TacticError::Cancelled(name.to_string()));
    }
    let result = result.ok_or_else(|| TacticError::Failed(name.to_string()))?;
    let steps = result.applied.into_iter().map(|s| s.by(name));
    // Every step was already checked against the rules on the way in.
    Ok(proof
        .extend(steps)
        .expect("tactic steps replay on the state they were produced from"))
}

/// Whether `name` succeeds on subgoal `index` of `state`, without keeping the result.
pub fn probe(name: &str, state: &ProofState, index: usize) -> bool {
    lookup(name)
        .and_then(|info| info.tactic().apply(index, &TacticResult::start(state.clone())))
        .is_some()
}

/// The rule applications recorded in `result`, ignoring discharges.
pub fn rule_applications(result: &TacticResult) -> impl Iterator<Item = &RuleApplication> {
    result.applied.iter().filter_map(|s| match &s.kind {
        StepKind::Rule(app) => Some(app),
        StepKind::Discharge(_) => None,
    })
}
