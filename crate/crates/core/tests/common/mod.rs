//! Helpers shared by the integration tests: diagram generators, benchmark
//! theorems and a model-checking oracle written independently of the
//! library's semantics module.
#![allow(dead_code)]

use std::collections::BTreeSet;

use euler_tactics::diagram::{labels, CompoundDiagram, ContourLabel, UnitaryDiagram, Zone};
use euler_tactics::engine::Subgoal;
use euler_tactics::textio::parse_theorem;
use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------------------
// Oracle
//
// A model assigns each cell (subset of the vocabulary) emptiness or not. A
// unitary diagram holds in a model iff every inhabited cell falls, when cut
// down to the diagram's contours, into a drawn and unshaded zone.

pub type Cell = BTreeSet<String>;

pub fn names(set: &BTreeSet<ContourLabel>) -> BTreeSet<String> {
    set.iter().map(|c| c.as_str().to_string()).collect()
}

pub fn all_cells(vocab: &BTreeSet<String>) -> Vec<Cell> {
    let v: Vec<&String> = vocab.iter().collect();
    (0..1u32 << v.len())
        .map(|mask| {
            (0..v.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| v[i].clone())
                .collect()
        })
        .collect()
}

fn zone_names(z: &Zone) -> BTreeSet<String> {
    names(z.in_set())
}

pub fn cell_allowed(d: &UnitaryDiagram, cell: &Cell) -> bool {
    let own = names(d.contours());
    let proj: BTreeSet<String> = cell.intersection(&own).cloned().collect();
    d.zones()
        .iter()
        .any(|z| zone_names(z) == proj && !d.shaded().contains(z))
}

pub fn holds(d: &CompoundDiagram, inhabited: &[&Cell]) -> bool {
    match d {
        CompoundDiagram::Unitary(u) => inhabited.iter().all(|c| cell_allowed(u, c)),
        CompoundDiagram::Conjunction(l, r) => holds(l, inhabited) && holds(r, inhabited),
        CompoundDiagram::Implication(a, c) => !holds(a, inhabited) || holds(c, inhabited),
    }
}

pub fn vocab_of(ds: &[&CompoundDiagram]) -> BTreeSet<String> {
    ds.iter().flat_map(|d| names(&d.contours())).collect()
}

/// Enumerate every model over `vocab` (at most 3 labels keeps this at 256).
pub fn entails_brute(p: &CompoundDiagram, c: &CompoundDiagram, vocab: &BTreeSet<String>) -> bool {
    let cells = all_cells(vocab);
    assert!(cells.len() <= 16, "brute force is for small vocabularies");
    (0..1u32 << cells.len()).all(|mask| {
        let inhabited: Vec<&Cell> = cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| c)
            .collect();
        !holds(p, &inhabited) || holds(c, &inhabited)
    })
}

/// Satisfaction is preserved by emptying cells, so `p` entails `c` iff `c`
/// holds in the largest model of `p`. Linear in the number of cells.
pub fn entails_max_model(p: &CompoundDiagram, c: &CompoundDiagram) -> bool {
    let vocab = vocab_of(&[p, c]);
    let cells = all_cells(&vocab);
    let largest: Vec<&Cell> = cells.iter().filter(|cell| holds(p, &[cell])).collect();
    holds(c, &largest)
}

pub fn equivalent_max_model(a: &CompoundDiagram, b: &CompoundDiagram) -> bool {
    entails_max_model(a, b) && entails_max_model(b, a)
}

// ---------------------------------------------------------------------------
// Generators

pub fn label(s: &str) -> ContourLabel {
    ContourLabel::new(s).unwrap()
}

pub fn zone(names: &[&str]) -> Zone {
    Zone::from_names(names.iter().copied()).unwrap()
}

fn subsets<T: Clone + Ord>(items: &[T]) -> Vec<BTreeSet<T>> {
    (0..1usize << items.len())
        .map(|mask| {
            (0..items.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| items[i].clone())
                .collect()
        })
        .collect()
}

/// Every unitary diagram whose contours are a subset of `pool`.
pub fn all_unitaries(pool: &[&str]) -> Vec<UnitaryDiagram> {
    let mut out = Vec::new();
    for contours in subsets(&pool.iter().map(|s| label(s)).collect::<Vec<_>>()) {
        let others: Vec<Zone> = euler_tactics::diagram::venn_zones(&contours)
            .into_iter()
            .filter(|z| !z.is_background())
            .collect();
        for mut zones in subsets(&others) {
            zones.insert(Zone::background());
            let zs: Vec<Zone> = zones.iter().cloned().collect();
            for shaded in subsets(&zs) {
                out.push(UnitaryDiagram::new(contours.clone(), zones.clone(), shaded).unwrap());
            }
        }
    }
    out
}

/// A random unitary over a random subset of `pool` (at least `min` contours).
pub fn random_unitary(rng: &mut impl Rng, pool: &[&str], min: usize) -> UnitaryDiagram {
    let mut chosen: Vec<&str> = pool.to_vec();
    chosen.shuffle(rng);
    let n = rng.gen_range(min..=pool.len());
    let contours = labels(chosen[..n].iter().copied()).unwrap();
    let mut zones = BTreeSet::from([Zone::background()]);
    for z in euler_tactics::diagram::venn_zones(&contours) {
        if rng.gen_bool(0.6) {
            zones.insert(z);
        }
    }
    let shaded = zones.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
    UnitaryDiagram::new(contours, zones, shaded).unwrap()
}

/// A random conjunction tree with `leaves` unitary leaves.
pub fn random_tree(rng: &mut impl Rng, pool: &[&str], leaves: usize) -> CompoundDiagram {
    if leaves <= 1 {
        return random_unitary(rng, pool, 0).into();
    }
    let left = rng.gen_range(1..leaves);
    CompoundDiagram::conj(
        random_tree(rng, pool, left),
        random_tree(rng, pool, leaves - left),
    )
}

// ---------------------------------------------------------------------------
// Benchmark theorems

pub const C_SUB_B: &str = "{contours: B C; zones: () (B) (B C); shaded:}";
pub const D_OFF_B: &str = "{contours: B D; zones: () (B) (D); shaded:}";
pub const E_SUB_A: &str = "{contours: A E; zones: () (A) (A E); shaded:}";
pub const A_OFF_E: &str = "{contours: A E; zones: () (A) (E); shaded:}";
pub const CDE_EMPTY_E: &str = "{contours: C D E; zones: () (C) (D) (E); shaded: (E)}";

pub fn t_flat_text() -> String {
    format!("(({C_SUB_B} & {D_OFF_B}) & ({E_SUB_A} & {A_OFF_E})) |- {CDE_EMPTY_E}")
}

pub fn t_deep_text() -> String {
    format!("(({C_SUB_B} & ({E_SUB_A} & {D_OFF_B})) & {A_OFF_E}) |- {CDE_EMPTY_E}")
}

pub fn t_flat() -> Subgoal {
    parse_theorem(&t_flat_text()).unwrap()
}

pub fn t_deep() -> Subgoal {
    parse_theorem(&t_deep_text()).unwrap()
}

fn subset(a: &str, b: &str) -> String {
    let (x, y) = if a < b { (a, b) } else { (b, a) };
    let both = format!("({x} {y})");
    format!("{{contours: {x} {y}; zones: () ({b}) {both}; shaded:}}")
}

fn disjoint(a: &str, b: &str) -> String {
    let (x, y) = if a < b { (a, b) } else { (b, a) };
    format!("{{contours: {x} {y}; zones: () ({x}) ({y}); shaded:}}")
}

fn empty(a: &str) -> String {
    format!("{{contours: {a}; zones: () ({a}); shaded: ({a})}}")
}

/// A corpus of valid theorems, as (name, text).
pub fn valid_corpus() -> Vec<(&'static str, String)> {
    vec![
        ("t_flat", t_flat_text()),
        ("t_deep", t_deep_text()),
        (
            "subset_chain",
            format!("({} & {}) |- {}", subset("A", "B"), subset("B", "C"), subset("A", "C")),
        ),
        (
            "subset_disjoint",
            format!("({} & {}) |- {}", subset("A", "B"), disjoint("B", "C"), disjoint("A", "C")),
        ),
        (
            "empty_from_subset_disjoint",
            format!("({} & {}) |- {}", subset("A", "B"), disjoint("A", "B"), empty("A")),
        ),
        (
            "weaken_shading",
            format!("{} |- {{contours: A; zones: () (A); shaded:}}", empty("A")),
        ),
        (
            "drop_contour",
            format!("{} |- {{contours: B; zones: () (B); shaded:}}", subset("A", "B")),
        ),
        (
            "reflexive",
            format!("{} |- {}", subset("A", "B"), subset("A", "B")),
        ),
        (
            "conjunct_left",
            format!("({} & {}) |- {}", subset("A", "B"), disjoint("C", "D"), subset("A", "B")),
        ),
        (
            "long_chain",
            format!(
                "(({} & {}) & {}) |- {}",
                subset("A", "B"),
                subset("B", "C"),
                subset("C", "D"),
                subset("A", "D")
            ),
        ),
        (
            "both_empty",
            format!(
                "({} & {}) |- {{contours: A B; zones: (); shaded:}}",
                empty("A"),
                empty("B")
            ),
        ),
    ]
}

/// Theorems whose antecedent does not entail the consequent.
pub fn invalid_corpus() -> Vec<(&'static str, String)> {
    vec![
        (
            "unshaded_not_empty",
            format!("{{contours: A; zones: () (A); shaded:}} |- {}", empty("A")),
        ),
        (
            "converse_subset",
            format!("{} |- {}", subset("A", "B"), subset("B", "A")),
        ),
        (
            "subset_not_transitive_backwards",
            format!("({} & {}) |- {}", subset("A", "B"), subset("A", "C"), subset("B", "C")),
        ),
        (
            "subset_not_disjoint",
            format!("{} |- {}", subset("A", "B"), disjoint("A", "B")),
        ),
        (
            "fresh_contour",
            format!("{} |- {}", subset("A", "B"), empty("C")),
        ),
        (
            "t_flat_wrong_shading",
            format!("(({C_SUB_B} & {D_OFF_B}) & ({E_SUB_A} & {A_OFF_E})) |- {}", empty("C")),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Rule-level tactics for law checking

use euler_tactics::rules::{applicable_instances, RuleKind};
use euler_tactics::tactics::{rule_tactic, Tactic};
use std::sync::Arc;

/// Apply the `pick`-th instance of `kind` at the first subtree that has one.
pub fn rule_level(kind: RuleKind, pick: usize) -> Tactic {
    let ctx = || labels(["A", "B", "C", "D"]).unwrap();
    rule_tactic(
        kind,
        Arc::new(move |d| !applicable_instances(kind, d, &ctx()).is_empty()),
        Arc::new(move |d| {
            let found = applicable_instances(kind, d, &ctx());
            found.get(pick % found.len().max(1)).map(|r| r.arg())
        }),
    )
}

pub fn random_rule_level(rng: &mut impl Rng) -> Tactic {
    let kind = RuleKind::ALL[rng.gen_range(0..RuleKind::ALL.len())];
    rule_level(kind, rng.gen_range(0..4))
}
